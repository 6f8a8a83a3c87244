//! Text format for cochains.
//!
//! ```text
//! # comment
//! 3 1 trivial 2
//! J[0,1,1] J[0,1,1] J[2,1,1] : l2^2 - l1^2
//! ```
//!
//! The header is `q N module level_bound`, optionally followed by `reduced`.
//! Each further line gives the value on one tuple: the generators, `:`, and a
//! polynomial in `l1..lq` (and `d` for free modules). Free modules name the
//! component: `J[0,1,2] : e1 : l1*d`. A `0`-cochain uses an empty tuple.

use crate::algebra::{AlgebraDescriptor, GeneratorIndex};
use crate::grammar::parse_poly;
use crate::modules::{ModuleDescriptor, ModuleElement};
use crate::poly::Var;

use super::{Cochain, CochainError};

pub fn write_cochain(c: &Cochain) -> String {
    let mut out = format!("{} {} {} {}", c.q, c.rank(), c.module, c.level_bound);
    if c.reduced {
        out.push_str(" reduced");
    }
    out.push('\n');
    for (t, v) in c.values() {
        for (k, p) in v.components.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let line = if c.module.is_free() {
                format!("{t} : e{} : {p}", k + 1)
            } else {
                format!("{t} : {p}")
            };
            out.push_str(line.trim_start());
            out.push('\n');
        }
    }
    out
}

fn perr(line: usize, column: usize, message: impl Into<String>) -> CochainError {
    CochainError::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn parse_generator(tok: &str, line: usize, column: usize) -> Result<GeneratorIndex, CochainError> {
    let inner = tok
        .strip_prefix("J[")
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| perr(line, column, format!("expected J[n,j,k], found `{tok}`")))?;
    let nums: Result<Vec<usize>, _> = inner.split(',').map(|s| s.trim().parse::<usize>()).collect();
    match nums.map_err(|_| perr(line, column, format!("bad generator `{tok}`")))?.as_slice() {
        [n] => Ok(GeneratorIndex::gc1(*n)),
        [n, j, k] => Ok(GeneratorIndex::new(*n, *j, *k)),
        _ => Err(perr(line, column, format!("bad generator `{tok}`"))),
    }
}

pub fn parse_cochain(text: &str) -> Result<Cochain, CochainError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
    let (hline, header) = lines.next().ok_or_else(|| perr(1, 1, "missing header"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() < 4 || fields.len() > 5 {
        return Err(perr(hline, 1, "header must be `q N module level_bound [reduced]`"));
    }
    let num = |i: usize, what: &str| -> Result<usize, CochainError> {
        fields[i]
            .parse()
            .map_err(|_| perr(hline, column_of(header, fields[i]), format!("bad {what} `{}`", fields[i])))
    };
    let q = num(0, "degree")?;
    let n = num(1, "N")?;
    let module = ModuleDescriptor::parse(fields[2]).map_err(|e| perr(hline, column_of(header, fields[2]), e.to_string()))?;
    let level_bound = num(3, "level bound")?;
    let reduced = match fields.get(4) {
        None | Some(&"basic") => false,
        Some(&"reduced") => true,
        Some(other) => return Err(perr(hline, column_of(header, other), format!("unknown flag `{other}`"))),
    };
    let mut c = Cochain::zero(q, AlgebraDescriptor::gc(n), module.clone(), reduced, level_bound)
        .map_err(|e| perr(hline, 1, e.to_string()))?;
    let parts_expected = if module.is_free() { 3 } else { 2 };
    for (ln, line) in lines {
        let parts: Vec<&str> = line.splitn(parts_expected, ':').collect();
        if parts.len() != parts_expected {
            return Err(perr(ln, line.chars().count() + 1, "expected `tuple : value`"));
        }
        let mut gens = Vec::new();
        for tok in parts[0].split_whitespace() {
            gens.push(parse_generator(tok, ln, column_of(line, tok))?);
        }
        let mut component = 0;
        if module.is_free() {
            let tok = parts[1].trim();
            component = tok
                .strip_prefix('e')
                .and_then(|s| s.parse::<usize>().ok())
                .filter(|k| *k >= 1 && *k <= module.rank())
                .ok_or_else(|| perr(ln, column_of(line, tok), format!("bad component `{tok}`")))?
                - 1;
        }
        let poly_text = parts[parts_expected - 1];
        let offset = line.chars().count() - poly_text.chars().count();
        let p = parse_poly(poly_text).map_err(|e| perr(ln, offset + e.column, e.message))?;
        for v in p.variables() {
            let ok = match v {
                Var::Lambda(i) => (i as usize) <= q,
                Var::Partial => module.is_free(),
                _ => false,
            };
            if !ok {
                return Err(perr(ln, offset + 1, format!("variable `{v}` not allowed in a {q}-cochain")));
            }
        }
        let value = ModuleElement::basis(module.rank(), component, p);
        c.insert(&gens, value).map_err(|e| perr(ln, 1, e.to_string()))?;
    }
    c.level_bound = level_bound.max(c.level_bound);
    Ok(c)
}

fn column_of(line: &str, part: &str) -> usize {
    let start = part.as_ptr() as usize - line.as_ptr() as usize;
    line[..start].chars().count() + 1
}
