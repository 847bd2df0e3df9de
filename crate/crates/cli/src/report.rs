//! Text and JSON renderings of command results.

use std::fmt::Write;

use border_basis::{Check, Computation, Field, OrderIdeal, VerificationReport};
use serde::Serialize;

#[derive(Serialize)]
pub struct CheckDoc {
    pub passed: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl From<&Check> for CheckDoc {
    fn from(c: &Check) -> Self {
        CheckDoc {
            passed: c.passed,
            detail: c.detail.clone(),
        }
    }
}

#[derive(Serialize)]
pub struct VerificationDoc {
    pub passed: bool,
    pub form: CheckDoc,
    pub membership: CheckDoc,
    pub admissibility: CheckDoc,
}

impl From<&VerificationReport> for VerificationDoc {
    fn from(r: &VerificationReport) -> Self {
        VerificationDoc {
            passed: r.passed(),
            form: (&r.form).into(),
            membership: (&r.membership).into(),
            admissibility: (&r.admissibility).into(),
        }
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BasisDoc {
    pub n: usize,
    pub field: String,
    pub d: usize,
    pub order_ideal: Vec<String>,
    pub border: Vec<String>,
    pub generators: Vec<String>,
    pub score: Option<i64>,
    pub verification: VerificationDoc,
}

pub fn strings<T: ToString>(items: impl IntoIterator<Item = T>) -> Vec<String> {
    items.into_iter().map(|t| t.to_string()).collect()
}

impl BasisDoc {
    pub fn new(n: usize, field: Field, c: &Computation, report: &VerificationReport) -> Self {
        BasisDoc {
            n,
            field: field.to_string(),
            d: c.dimension,
            order_ideal: strings(c.basis.order_ideal().iter()),
            border: strings(c.basis.border()),
            generators: strings(c.basis.polynomials()),
            score: c.score,
            verification: report.into(),
        }
    }

    pub fn text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "n: {}", self.n).unwrap();
        writeln!(s, "field: {}", self.field).unwrap();
        writeln!(s, "d: {}", self.d).unwrap();
        writeln!(s, "order ideal: {}", self.order_ideal.join(", ")).unwrap();
        writeln!(s, "border: {}", self.border.join(", ")).unwrap();
        if let Some(score) = self.score {
            writeln!(s, "score: {score}").unwrap();
        }
        writeln!(s, "generators:").unwrap();
        for (b, g) in self.border.iter().zip(&self.generators) {
            writeln!(s, "  [{b}] {g}").unwrap();
        }
        s.push_str(&verification_text(&self.verification));
        s
    }
}

pub fn verification_text(v: &VerificationDoc) -> String {
    let mut s = String::from("verification:\n");
    for (name, c) in [
        ("form", &v.form),
        ("membership", &v.membership),
        ("admissibility", &v.admissibility),
    ] {
        let verdict = if c.passed { "pass" } else { "fail" };
        if c.detail.is_empty() {
            writeln!(s, "  {name}: {verdict}").unwrap();
        } else {
            writeln!(s, "  {name}: {verdict} ({})", c.detail).unwrap();
        }
    }
    s
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EnumerationDoc {
    pub n: usize,
    pub field: String,
    pub d: usize,
    pub count: usize,
    pub order_ideals: Vec<Vec<String>>,
}

impl EnumerationDoc {
    pub fn new(n: usize, field: Field, d: usize, all: &[OrderIdeal]) -> Self {
        EnumerationDoc {
            n,
            field: field.to_string(),
            d,
            count: all.len(),
            order_ideals: all.iter().map(|o| strings(o.iter())).collect(),
        }
    }

    pub fn text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "n: {}", self.n).unwrap();
        writeln!(s, "field: {}", self.field).unwrap();
        writeln!(s, "d: {}", self.d).unwrap();
        writeln!(s, "count: {}", self.count).unwrap();
        for o in &self.order_ideals {
            writeln!(s, "{{{}}}", o.join(", ")).unwrap();
        }
        s
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CliqueDoc {
    pub n: usize,
    pub k: usize,
    pub has_clique: bool,
    pub witness: Vec<usize>,
    pub score: i64,
    pub order_ideal: Vec<String>,
}

impl CliqueDoc {
    pub fn text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "n: {}", self.n).unwrap();
        writeln!(s, "k: {}", self.k).unwrap();
        writeln!(s, "clique: {}", if self.has_clique { "YES" } else { "NO" }).unwrap();
        writeln!(s, "witness: {}", strings(&self.witness).join(" ")).unwrap();
        writeln!(s, "score: {}", self.score).unwrap();
        writeln!(s, "order ideal: {}", self.order_ideal.join(", ")).unwrap();
        s
    }
}

pub fn json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}
