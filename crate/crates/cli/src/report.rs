//! Report types. Every report prints as text or JSON and parses back.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use catcoh::fibration::FibrationReport;
use catcoh::int::{serde_int, Int};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategorySummary {
    pub objects: usize,
    pub morphisms: usize,
    /// `None` when the nerve is unbounded
    pub nerve_dimension: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidateReport {
    pub kind: String,
    pub categories: BTreeMap<String, CategorySummary>,
    pub system: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeReport {
    pub degree: usize,
    pub group: String,
    pub rank: usize,
    #[serde(with = "serde_int::vec")]
    pub torsion: Vec<Int>,
    /// chains indexing the cochain coordinates
    pub basis: Vec<String>,
    /// cocycles representing the generators of the group, in order
    #[serde(with = "serde_int::vec2")]
    pub generators: Vec<Vec<Int>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyReport {
    pub relative_to: Option<String>,
    pub top_degree: usize,
    pub truncated: bool,
    pub degrees: Vec<DegreeReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CupLengthReport {
    pub value: usize,
    pub lower_bound_only: bool,
    pub restricted_to_kernel: bool,
    /// `[degree, generator index]` of the factors of a longest product
    pub witness: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub property: String,
    pub holds: bool,
    pub details: FibrationReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceReport {
    pub objects: Vec<String>,
    pub morphisms: Vec<String>,
    /// the section on morphisms of the piece
    pub section: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SecatReport {
    pub kind: String,
    pub value: Option<usize>,
    pub display: String,
    pub pieces: Vec<PieceReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SvarcReport {
    pub cup_length: usize,
    pub cup_length_lower_bound_only: bool,
    pub genus: Option<usize>,
    pub genus_display: String,
    /// homotopic recomputation, when small enough; "infinite" or a number
    pub homotopic_genus: Option<String>,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExampleCheck {
    pub label: String,
    pub expected: String,
    pub actual: String,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExampleReport {
    pub name: String,
    pub checks: Vec<ExampleCheck>,
    pub ok: bool,
}

/// Text rendering of a report.
pub trait Render {
    fn render(&self) -> String;
}

fn fmt_vec(v: &[Int]) -> String {
    format!("({})", v.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
}

impl Render for ValidateReport {
    fn render(&self) -> String {
        let mut s = format!("valid {}\n", self.kind);
        for (name, c) in &self.categories {
            let dim = c.nerve_dimension.map_or_else(|| "unbounded".to_string(), |d| d.to_string());
            let _ = writeln!(s, "  {name}: {} objects, {} morphisms, nerve dimension {dim}", c.objects, c.morphisms);
        }
        if let Some(sys) = &self.system {
            let _ = writeln!(s, "  system: {sys}");
        }
        s
    }
}

impl Render for CohomologyReport {
    fn render(&self) -> String {
        let mut s = String::new();
        let rel = self.relative_to.as_ref().map(|u| format!(", relative to {u}")).unwrap_or_default();
        for d in &self.degrees {
            let _ = writeln!(s, "H^{}{rel} = {}", d.degree, d.group);
            for g in &d.generators {
                let _ = writeln!(s, "  generator {} on {}", fmt_vec(g), d.basis.join(" "));
            }
        }
        if self.truncated {
            let _ = writeln!(s, "(computed through degree {}; higher degrees not computed)", self.top_degree);
        }
        s
    }
}

impl Render for CupLengthReport {
    fn render(&self) -> String {
        let scope = if self.restricted_to_kernel { " of the kernel" } else { "" };
        let bound = if self.lower_bound_only { ">= " } else { "" };
        format!("cup-length{scope} = {bound}{}\n", self.value)
    }
}

impl Render for CheckReport {
    fn render(&self) -> String {
        let mut s = format!("{}: {}\n", self.property, if self.holds { "yes" } else { "no" });
        let (fib, opfib) = match self.property.as_str() {
            "fibration" => (true, false),
            "opfibration" => (false, true),
            "bifibration" => (true, true),
            _ => (false, false),
        };
        if fib {
            for w in &self.details.fibration_witnesses {
                let _ = writeln!(s, "  no Cartesian lift of {} at {}", w.arrow, w.object);
            }
        }
        if opfib {
            for w in &self.details.opfibration_witnesses {
                let _ = writeln!(s, "  no op-Cartesian lift of {} at {}", w.arrow, w.object);
            }
        }
        if self.property == "covering" {
            if let Some(w) = &self.details.covering_witness {
                let _ = writeln!(s, "  {w}");
            }
        }
        s
    }
}

impl Render for SecatReport {
    fn render(&self) -> String {
        let label = if self.kind == "strict" { "sc" } else { "Sg" };
        let mut s = format!("{label} = {}\n", self.display);
        for (i, p) in self.pieces.iter().enumerate() {
            let _ = writeln!(
                s,
                "  piece {i}: objects {{{}}} morphisms {{{}}}",
                p.objects.join(", "),
                p.morphisms.join(", ")
            );
            let sec: Vec<String> = p.section.iter().map(|(k, v)| format!("{k} -> {v}")).collect();
            let _ = writeln!(s, "    section: {}", sec.join(", "));
        }
        s
    }
}

impl Render for SvarcReport {
    fn render(&self) -> String {
        let bound = if self.cup_length_lower_bound_only { ">= " } else { "" };
        let mut s = format!("cpl(ker P*) = {bound}{}\nSg(P) = {}\n", self.cup_length, self.genus_display);
        if let Some(h) = &self.homotopic_genus {
            let _ = writeln!(s, "homotopic recomputation: {h}");
        }
        let _ = writeln!(s, "bound holds: {}", if self.holds { "yes" } else { "no" });
        s
    }
}

impl Render for ExampleReport {
    fn render(&self) -> String {
        let mut s = format!("{}\n", self.name);
        for c in &self.checks {
            let mark = if c.ok { "ok  " } else { "FAIL" };
            let _ = writeln!(s, "  [{mark}] {}: {}", c.label, c.actual);
            if !c.ok {
                let _ = writeln!(s, "         expected {}", c.expected);
            }
        }
        s
    }
}
