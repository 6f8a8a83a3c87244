//! The subcommands: each builds a [`Report`] from a resolved configuration.

use anyhow::{bail, Context, Result};
use rand_chacha::ChaCha8Rng;

use gcn_core::algebra::axiom_residuals;
use gcn_core::cochain::{differential, parse_cochain, reduced_differential, write_cochain};
use gcn_core::engine::{
    builtin_cocycle, cohomology_dim, find_primitive, verify_cocycle, PrimitiveResult, TruncationSpec,
};
use gcn_core::modules::check_module_axioms;
use gcn_core::properties::{
    d_squared, delta_commutation, leibniz_d_squared, partial_commutation, summarize, tau0_residual,
    tau1_residual, tau2_residual, tau_twisted_exact_residual, tau_twisted_residual,
};
use gcn_core::random::{random_cochain, random_leibniz_cochain, rng_from_seed, RandomShape};
use gcn_core::{AlgebraDescriptor, Cochain, ModuleDescriptor};

use crate::report::{Check, Report, RunConfig};

/// Residual listings kept in a report.
const MAX_LISTED: usize = 20;

pub fn axioms(cfg: RunConfig, module: &ModuleDescriptor, extended: bool, corrupt: bool) -> Result<Report> {
    let mut alg = if extended {
        AlgebraDescriptor::gc_extended(cfg.n)
    } else {
        AlgebraDescriptor::gc(cfg.n)
    };
    if corrupt {
        alg = alg.corrupt();
    }
    let level = cfg.level;
    let mut report = Report::new(cfg);
    let residuals = axiom_residuals(&alg, level)?;
    let families: &[&str] = if extended {
        &["skew-symmetry", "jacobi", "central"]
    } else {
        &["skew-symmetry", "jacobi"]
    };
    for family in families {
        let bad: Vec<_> = residuals.iter().filter(|r| r.check == *family).collect();
        let detail = match bad.first() {
            None => format!("all residuals zero up to total level {level}"),
            Some(r) => format!("{} nonzero, first on {}: {}", bad.len(), r.generators, r.value),
        };
        report.push(Check::new(format!("bracket {family}"), bad.is_empty(), detail));
    }
    for r in residuals.iter().take(MAX_LISTED) {
        report.note(format!("{} on {}: {}", r.check, r.generators, r.value));
    }
    let module_residuals = check_module_axioms(module, report.config.n, level)?;
    let detail = match module_residuals.first() {
        None => format!("all residuals zero up to level {level}"),
        Some(r) => format!("{} nonzero, first {} on {}: {}", module_residuals.len(), r.check, r.context, r.value),
    };
    report.push(Check::new(format!("module axioms ({module})"), module_residuals.is_empty(), detail));
    for r in module_residuals.iter().take(MAX_LISTED) {
        report.note(format!("{} on {}: {}", r.check, r.context, r.value));
    }
    Ok(report)
}

pub fn cohomology(cfg: RunConfig, module: &ModuleDescriptor, qs: std::ops::RangeInclusive<usize>) -> Result<Report> {
    let mut report = Report::new(cfg);
    let c = &report.config;
    let specs: Vec<_> = qs
        .map(|q| TruncationSpec::new(q, c.n, c.level, module.clone(), c.reduced).with_margin(c.margin))
        .collect();
    for spec in specs {
        report.cohomology.push(cohomology_dim(&spec)?);
    }
    Ok(report)
}

/// Where the cochain to verify comes from.
pub enum Source {
    Builtin(String),
    File(std::path::PathBuf),
}

pub fn load(source: &Source, n: usize, level: usize) -> Result<Cochain> {
    Ok(match source {
        Source::Builtin(name) => builtin_cocycle(name, n, level)?,
        Source::File(path) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            parse_cochain(&text).with_context(|| format!("parsing {}", path.display()))?
        }
    })
}

pub fn verify(cfg: RunConfig, c: &Cochain) -> Result<Report> {
    let level = cfg.level;
    let margin = cfg.margin;
    let mut report = Report::new(cfg);
    let check = verify_cocycle(c, level)?;
    let (count, first) = summarize(&check.residual);
    let detail = match first {
        None => format!("dγ = 0 on every canonical tuple of level ≤ {level}"),
        Some(f) => format!("{count} nonzero value(s) of dγ up to level {level}, first {f}"),
    };
    let cocycle = check.is_cocycle();
    report.push(Check::new("cocycle", cocycle, detail));
    if c.q == 0 {
        report.note("a 0-cochain has no primitive");
        return Ok(report);
    }
    let spec = TruncationSpec::new(c.q - 1, c.rank(), level, c.module.clone(), c.reduced).with_margin(margin);
    match find_primitive(&c.restrict(level), &spec)? {
        PrimitiveResult::Found(phi) => {
            let dphi = if c.reduced {
                reduced_differential(&phi, level)?
            } else {
                differential(&phi, level)?
            };
            let exact = dphi == c.restrict(level);
            report.push(Check::new(
                "primitive",
                exact,
                format!("found φ on {} tuple(s) with dφ = γ up to level {level}", phi.support_len()),
            ));
            if cocycle {
                report.note(format!("class: coboundary at truncation L = {level}"));
            }
        }
        PrimitiveResult::Infeasible(cert) => {
            report.push(Check::new(
                "infeasibility certificate",
                cert.verified,
                format!(
                    "no primitive at L = {level}: functional with {} entries kills every coboundary, pairs to {} with γ",
                    cert.entries.len(),
                    cert.pairing
                ),
            ));
            for (coord, x) in cert.entries.iter().take(MAX_LISTED) {
                report.note(format!("certificate {coord} ↦ {x}"));
            }
            if cocycle {
                report.note(format!("class: nontrivial at truncation L = {level}"));
            }
        }
    }
    Ok(report)
}

/// Seeded residual checks: each draws `count` cochains from its own stream.
struct Suite {
    seed: u64,
    streams: u64,
    count: usize,
}

impl Suite {
    fn rng(&mut self) -> ChaCha8Rng {
        self.streams += 1;
        rng_from_seed(self.seed.wrapping_mul(1_000_003).wrapping_add(self.streams))
    }

    fn run(
        &mut self,
        report: &mut Report,
        name: &str,
        mut case: impl FnMut(&mut ChaCha8Rng, usize) -> Result<Option<String>>,
    ) -> Result<()> {
        let mut rng = self.rng();
        let mut failures = Vec::new();
        for i in 0..self.count {
            if let Some(f) = case(&mut rng, i)? {
                failures.push(f);
            }
        }
        let detail = match failures.first() {
            None => format!("exact on {} seeded cochains", self.count),
            Some(f) => format!("{} of {} failed, first: {f}", failures.len(), self.count),
        };
        report.push(Check::new(name, failures.is_empty(), detail));
        Ok(())
    }
}

fn first_nonzero(c: &Cochain) -> Option<String> {
    summarize(c).1
}

pub fn properties(cfg: RunConfig, module: &ModuleDescriptor, count: usize) -> Result<Report> {
    let (n, level, seed) = (cfg.n, cfg.level, cfg.seed);
    if module.is_free() && module.rank() != n {
        bail!("module {module} needs --N {}", module.rank());
    }
    let mut report = Report::new(cfg);
    let mut suite = Suite { seed, streams: 0, count };
    let shape = |q: usize, reduced: bool| RandomShape::new(q, n, module.clone(), reduced, level).with_degrees(-1..=1);

    suite.run(&mut report, "d² = 0 (basic)", |rng, i| {
        let c = random_cochain(rng, &shape(i % 3, false))?;
        Ok(first_nonzero(&d_squared(&c, level + 1)?))
    })?;
    suite.run(&mut report, "d² = 0 (reduced)", |rng, i| {
        let c = random_cochain(rng, &shape(i % 3, true))?;
        Ok(first_nonzero(&d_squared(&c, level + 1)?))
    })?;
    suite.run(&mut report, "d_L² = 0", |rng, i| {
        let c = random_leibniz_cochain(rng, &shape(i % 3, false))?;
        let r = leibniz_d_squared(&c, level)?;
        let first = r.values().next().map(|(t, v)| {
            let parts: Vec<String> = v.components.iter().map(|p| p.to_string()).collect();
            format!("{t} : {}", parts.join(", "))
        });
        Ok(first)
    })?;
    suite.run(&mut report, "Δ commutes with d", |rng, i| {
        let c = random_cochain(rng, &shape(i % 3, false))?;
        Ok(first_nonzero(&delta_commutation(&c, level + 1)?))
    })?;
    suite.run(&mut report, "∂ commutes with d", |rng, i| {
        let c = random_cochain(rng, &shape(i % 3, false))?;
        Ok(first_nonzero(&partial_commutation(&c, level + 1)?))
    })?;

    match module {
        ModuleDescriptor::Trivial => {
            suite.run(&mut report, "degree homotopy (dτ₁ + τ₁d)γ = pγ", |rng, i| {
                let p = (i % 5) as i64 - 2;
                let c = random_cochain(rng, &shape(i % 3, false).with_degrees([p]))?;
                Ok(first_nonzero(&tau1_residual(&c, p)?).map(|f| format!("p = {p}: {f}")))
            })?;
            if n >= 2 {
                suite.run(&mut report, "weight homotopy (dτ₂ + τ₂d)γ = wγ", |rng, i| {
                    let c = random_cochain(rng, &shape(1 + i % 2, false))?;
                    Ok(first_nonzero(&tau2_residual(&c)?))
                })?;
            }
        }
        ModuleDescriptor::TwistedScalar { .. } => {
            suite.run(&mut report, "twisted homotopy (dτ + τd)γ = (Σλ)γ", |rng, i| {
                let c = random_cochain(rng, &shape(i % 3, false))?;
                Ok(first_nonzero(&tau_twisted_exact_residual(&c)?))
            })?;
            suite.run(&mut report, "twisted congruence (dτ + τd)γ ≡ −aγ", |rng, i| {
                let c = random_cochain(rng, &shape(i % 3, false))?;
                Ok(first_nonzero(&tau_twisted_residual(&c)?))
            })?;
        }
        _ => {
            suite.run(&mut report, "free contraction (dτ₀ + τ₀d)γ = γ", |rng, i| {
                let c = random_cochain(rng, &shape(i % 3, true).with_degrees(-2..=1))?;
                Ok(first_nonzero(&tau0_residual(&c)?))
            })?;
        }
    }
    Ok(report)
}

/// A seeded random cochain, or its coboundary, in the text format.
pub fn sample(cfg: &RunConfig, module: &ModuleDescriptor, q: usize, coboundary: bool) -> Result<String> {
    let shape = RandomShape::new(q, cfg.n, module.clone(), cfg.reduced, cfg.level).with_degrees([0]);
    let c = random_cochain(&mut rng_from_seed(cfg.seed), &shape)?;
    let c = if !coboundary {
        c
    } else if cfg.reduced {
        reduced_differential(&c, cfg.level)?
    } else {
        differential(&c, cfg.level)?
    };
    Ok(write_cochain(&c))
}
