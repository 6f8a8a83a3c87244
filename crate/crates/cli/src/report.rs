//! Reports shared by every subcommand, rendered as JSON or aligned text.

use serde::Serialize;

use gcn_core::engine::CohomologyReport;

/// The resolved run configuration, echoed in every report.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub command: &'static str,
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "L")]
    pub level: usize,
    pub margin: usize,
    pub module: String,
    pub reduced: bool,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub config: RunConfig,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub cohomology: Vec<CohomologyReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub passed: bool,
}

impl Report {
    pub fn new(config: RunConfig) -> Self {
        Report {
            config,
            checks: Vec::new(),
            cohomology: Vec::new(),
            notes: Vec::new(),
            passed: true,
        }
    }

    pub fn push(&mut self, check: Check) {
        self.passed &= check.passed;
        self.checks.push(check);
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let c = &self.config;
        let mut out = format!(
            "gcn {}  N={} L={} margin={} module={}{} seed={}\n",
            c.command,
            c.n,
            c.level,
            c.margin,
            c.module,
            if c.reduced { " reduced" } else { "" },
            c.seed
        );
        if let Some(src) = &c.source {
            out.push_str(&format!("source: {src}\n"));
        }
        if !self.cohomology.is_empty() {
            out.push_str(&format!(
                "{:>3} {:>10} {:>9} {:>5} {:>10}\n",
                "q", "dim_kernel", "dim_image", "dim_H", "stabilized"
            ));
            for r in &self.cohomology {
                out.push_str(&format!(
                    "{:>3} {:>10} {:>9} {:>5} {:>10}\n",
                    r.q,
                    r.dim_kernel,
                    r.dim_image,
                    r.dim_h,
                    if r.stabilized { "yes" } else { "no" }
                ));
            }
        }
        let width = self.checks.iter().map(|c| c.name.chars().count()).max().unwrap_or(0);
        for check in &self.checks {
            let pad = width - check.name.chars().count();
            out.push_str(&format!(
                "[{}] {}{}  {}\n",
                if check.passed { "PASS" } else { "FAIL" },
                check.name,
                " ".repeat(pad),
                check.detail
            ));
        }
        for n in &self.notes {
            out.push_str(&format!("note: {n}\n"));
        }
        out.push_str(if self.passed { "result: PASS\n" } else { "result: FAIL\n" });
        out
    }
}
