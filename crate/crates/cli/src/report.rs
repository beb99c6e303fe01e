use std::collections::BTreeMap;

use ckh_core::colored::Certificate;
use ckh_core::homology::{grading_key, groups_to_csv, groups_to_json, groups_to_table, BigradedGroups, LaurentPoly};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

/// Grading conventions of every report, so outputs from different builds
/// can be compared.
pub const CONVENTIONS: &str =
    "cohomological; crossing 0-smoothing (a,b)(c,d) at (-1/2,-1/2), 1-smoothing at (1/2,1/2); Z[x]/(x^2); shift (hq)^(r c(c-1)/2)";

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

pub struct EulerCheck {
    pub euler: LaurentPoly,
    pub bracket: Option<LaurentPoly>,
}

pub type ModPDims = BTreeMap<(i32, i32), usize>;

/// Everything a subcommand prints.
pub struct Report {
    pub command: &'static str,
    pub input_sha256: String,
    pub settings: Map<String, Value>,
    pub groups: BigradedGroups,
    pub certificates: Vec<Certificate>,
    /// Prime and dimension per doubled bidegree.
    pub mod_p: Option<(u64, ModPDims)>,
    pub euler: Option<EulerCheck>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(command: &'static str, input: &[u8]) -> Self {
        Report {
            command,
            input_sha256: sha256_hex(input),
            settings: Map::new(),
            groups: BigradedGroups::new(),
            certificates: vec![],
            mod_p: None,
            euler: None,
            notes: vec![],
        }
    }

    pub fn set(&mut self, key: &str, v: impl Into<Value>) {
        self.settings.insert(key.into(), v.into());
    }

    pub fn metadata(&self) -> Value {
        json!({
            "tool": "ckh",
            "version": env!("CARGO_PKG_VERSION"),
            "command": self.command,
            "input_sha256": self.input_sha256,
            "conventions": CONVENTIONS,
            "settings": Value::Object(self.settings.clone()),
        })
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "groups": groups_to_json(&self.groups),
            "certificates": self.certificates.iter().map(Certificate::to_json).collect::<Vec<_>>(),
            "metadata": self.metadata(),
        });
        if let Some((p, dims)) = &self.mod_p {
            let mut by_j: BTreeMap<i32, Map<String, Value>> = BTreeMap::new();
            for (&(h2, q2), &d) in dims {
                by_j.entry(q2).or_default().insert(grading_key(h2), d.into());
            }
            let dims: Map<String, Value> =
                by_j.into_iter().map(|(q2, m)| (grading_key(q2), Value::Object(m))).collect();
            v["mod_p"] = json!({ "p": p, "dims": dims });
        }
        if let Some(e) = &self.euler {
            v["euler"] = json!({
                "polynomial": e.euler.to_string(),
                "bracket": e.bracket.as_ref().map(|b| b.to_string()),
                "agrees": e.bracket.as_ref().map(|b| *b == e.euler),
            });
        }
        if !self.notes.is_empty() {
            v["notes"] = json!(self.notes);
        }
        v
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(&self.to_json()).unwrap() + "\n",
            Format::Csv => groups_to_csv(&self.groups),
            Format::Table => self.to_table(),
        }
    }

    fn to_table(&self) -> String {
        let mut s = groups_to_table(&self.groups);
        if let Some((p, dims)) = &self.mod_p {
            s.push_str(&format!("\nmod {p} dimensions (j: i=dim ...)\n"));
            let mut by_j: BTreeMap<i32, Vec<String>> = BTreeMap::new();
            for (&(h2, q2), &d) in dims {
                by_j.entry(q2).or_default().push(format!("{}={d}", grading_key(h2)));
            }
            for (q2, cells) in by_j.iter().rev() {
                s.push_str(&format!("{:>6}: {}\n", grading_key(*q2), cells.join(" ")));
            }
        }
        if let Some(e) = &self.euler {
            s.push_str(&format!("\nEuler: {}\n", e.euler));
            if let Some(b) = &e.bracket {
                let verdict = if *b == e.euler { "ok" } else { "MISMATCH" };
                s.push_str(&format!("bracket: {b} ({verdict})\n"));
            }
        }
        if let Some(summary) = certificate_summary(&self.certificates) {
            s.push_str(&format!("\n{summary}\n"));
        }
        for n in &self.notes {
            s.push_str(n);
            s.push('\n');
        }
        s
    }
}

fn certificate_summary(certs: &[Certificate]) -> Option<String> {
    let first = certs.first()?;
    let last = certs.last()?;
    let v = last.to_json();
    let mut s = format!(
        "{} at r={} for j in {}..{}",
        v["method"].as_str().unwrap_or(""),
        last.r,
        grading_key(first.j2),
        grading_key(last.j2)
    );
    if let (Some(b), Some(q)) = (last.b2, last.q0_2) {
        s.push_str(&format!(" (B={}, Q0={})", grading_key(b), grading_key(q)));
    }
    Some(s)
}
