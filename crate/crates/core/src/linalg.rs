//! Exact sparse linear algebra over the rationals.
//!
//! Vectors are sparse maps from coordinate index to coefficient. The central
//! structure is [`Echelon`], an incrementally built echelon basis: each
//! stored vector has a distinct pivot (its smallest coordinate, normalized
//! to 1), and inserting a vector reduces it against the stored ones. Each
//! stored vector remembers how it was formed from the inserted vectors, which
//! yields kernels, solutions and infeasibility certificates deterministically.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::rational::Rational;

pub type SparseVector = BTreeMap<usize, Rational>;

/// `acc += s · v`, dropping cancelled entries.
pub fn axpy(acc: &mut SparseVector, s: &Rational, v: &SparseVector) {
    if s.is_zero() {
        return;
    }
    for (k, x) in v {
        let e = acc.entry(*k).or_insert_with(Rational::zero);
        *e += s * x;
        if e.is_zero() {
            acc.remove(k);
        }
    }
}

pub fn dot(a: &SparseVector, b: &SparseVector) -> Rational {
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    small
        .iter()
        .filter_map(|(k, x)| large.get(k).map(|y| x * y))
        .fold(Rational::zero(), |s, t| s + t)
}

fn scale(v: &SparseVector, s: &Rational) -> SparseVector {
    v.iter().map(|(k, x)| (*k, x * s)).collect()
}

#[derive(Clone, Debug, Default)]
struct Row {
    vector: SparseVector,
    /// The stored vector as a combination of inserted vectors.
    combination: SparseVector,
}

/// Outcome of inserting a vector into an [`Echelon`].
#[derive(Clone, Debug, PartialEq)]
pub enum Insertion {
    /// The vector was independent; it is stored with this pivot.
    Pivot(usize),
    /// The vector was dependent: the combination of inserted vectors
    /// (including the new one, with coefficient 1) that vanishes.
    Relation(SparseVector),
}

#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, Row>,
    inserted: usize,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Number of vectors inserted so far (the next insertion gets this index).
    pub fn inserted(&self) -> usize {
        self.inserted
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Reduce `v` by the stored rows. Returns the residual and the
    /// combination `c` of inserted vectors with `v - Σ c_k v_k = residual`.
    pub fn reduce(&self, v: &SparseVector) -> (SparseVector, SparseVector) {
        let mut residual = v.clone();
        let mut used = SparseVector::new();
        let mut floor = 0usize;
        loop {
            let next = residual
                .range(floor..)
                .find(|(k, _)| self.rows.contains_key(k))
                .map(|(k, x)| (*k, x.clone()));
            let Some((p, x)) = next else { break };
            let row = &self.rows[&p];
            axpy(&mut residual, &-x.clone(), &row.vector);
            axpy(&mut used, &x, &row.combination);
            floor = p + 1;
        }
        (residual, used)
    }

    pub fn contains(&self, v: &SparseVector) -> bool {
        self.reduce(v).0.is_empty()
    }

    pub fn insert(&mut self, v: &SparseVector) -> Insertion {
        let index = self.inserted;
        self.inserted += 1;
        let (residual, used) = self.reduce(v);
        let mut combination = scale(&used, &-Rational::one());
        combination.insert(index, Rational::one());
        match residual.iter().next() {
            None => Insertion::Relation(combination),
            Some((&p, lead)) => {
                let inv = lead.recip();
                self.rows.insert(
                    p,
                    Row {
                        vector: scale(&residual, &inv),
                        combination: scale(&combination, &inv),
                    },
                );
                Insertion::Pivot(p)
            }
        }
    }
}

/// A sparse matrix stored by columns.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SparseRationalMatrix {
    pub rows: usize,
    pub columns: Vec<SparseVector>,
}

/// A left null vector `y` with `yᵀ M = 0` and `yᵀ b ≠ 0`, proving `M x = b`
/// has no solution.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub y: SparseVector,
    pub pairing: Rational,
}

impl SparseRationalMatrix {
    pub fn new(rows: usize, columns: Vec<SparseVector>) -> Self {
        SparseRationalMatrix { rows, columns }
    }

    pub fn from_dense(rows: &[Vec<Rational>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let columns = (0..ncols)
            .map(|j| {
                (0..nrows)
                    .filter(|i| !rows[*i][j].is_zero())
                    .map(|i| (i, rows[i][j].clone()))
                    .collect()
            })
            .collect();
        SparseRationalMatrix { rows: nrows, columns }
    }

    pub fn ncols(&self) -> usize {
        self.columns.len()
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(BTreeMap::len).sum()
    }

    pub fn transpose(&self) -> SparseRationalMatrix {
        let mut columns = vec![SparseVector::new(); self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, x) in col {
                columns[*i].insert(j, x.clone());
            }
        }
        SparseRationalMatrix {
            rows: self.ncols(),
            columns,
        }
    }

    pub fn apply(&self, x: &SparseVector) -> SparseVector {
        let mut out = SparseVector::new();
        for (j, s) in x {
            axpy(&mut out, s, &self.columns[*j]);
        }
        out
    }

    fn column_echelon(&self) -> (Echelon, Vec<SparseVector>) {
        let mut ech = Echelon::new();
        let mut relations = Vec::new();
        for col in &self.columns {
            if let Insertion::Relation(r) = ech.insert(col) {
                relations.push(r);
            }
        }
        (ech, relations)
    }

    pub fn rank(&self) -> usize {
        self.column_echelon().0.rank()
    }

    /// A basis of `{x : M x = 0}`; vector `k` has its last nonzero entry equal
    /// to 1 at the `k`-th dependent column.
    pub fn kernel(&self) -> Vec<SparseVector> {
        self.column_echelon().1
    }

    /// Reduced row echelon form of the rows, with pivots chosen at the
    /// smallest available column. Returns the nonzero rows.
    pub fn rref(&self) -> Vec<SparseVector> {
        let t = self.transpose();
        let mut ech = Echelon::new();
        for row in &t.columns {
            ech.insert(row);
        }
        let pivots: Vec<usize> = ech.pivots().collect();
        let mut rows: Vec<SparseVector> = pivots.iter().map(|p| ech.rows[p].vector.clone()).collect();
        // back-substitute so each pivot column is a unit vector
        for a in (0..rows.len()).rev() {
            for b in 0..a {
                if let Some(x) = rows[b].get(&pivots[a]).cloned() {
                    let ra = rows[a].clone();
                    axpy(&mut rows[b], &-x, &ra);
                }
            }
        }
        rows
    }

    /// Solve `M x = b`, or return a certificate of infeasibility.
    pub fn solve(&self, b: &SparseVector) -> Result<SparseVector, Certificate> {
        let (ech, _) = self.column_echelon();
        let (residual, used) = ech.reduce(b);
        if residual.is_empty() {
            return Ok(used);
        }
        // b lies outside the column span, so some left null vector pairs
        // nontrivially with it.
        let left_null = self.transpose().kernel();
        for y in left_null {
            let pairing = dot(&y, b);
            if !pairing.is_zero() {
                return Err(Certificate { y, pairing });
            }
        }
        unreachable!("a vector outside the column span must pair with the left kernel")
    }

    /// Check a certificate exactly.
    pub fn verify_certificate(&self, b: &SparseVector, cert: &Certificate) -> bool {
        self.columns.iter().all(|c| dot(&cert.y, c).is_zero())
            && dot(&cert.y, b) == cert.pairing
            && !cert.pairing.is_zero()
    }
}
