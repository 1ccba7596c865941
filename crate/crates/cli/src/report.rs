//! Serialized shapes of everything the binary prints. Rationals are always
//! `"num/den"` strings (bare integers when the denominator is 1).

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use shintani_core::shintani::{ShintaniPoint, ShintaniSet};
use shintani_core::theorem_two::hecke_chi;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Rho {
    pub a: u64,
    pub b: u64,
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub d: u64,
    pub p: u64,
    pub methods: Vec<&'static str>,
    pub h: BTreeMap<&'static str, u64>,
    pub ell: u64,
    pub rho: Rho,
    #[serde(rename = "C")]
    pub c: i64,
    #[serde(rename = "D")]
    pub d_const: i64,
    pub cycle_count: u64,
    pub crosscheck: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_us: Option<BTreeMap<&'static str, u64>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Table1Row {
    pub p: u64,
    pub rho: Rho,
    #[serde(rename = "C")]
    pub c: i64,
    #[serde(rename = "D")]
    pub d_const: i64,
    pub first_summand: i64,
    pub second_summand: i64,
    pub last_summand: i64,
    pub h: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Table2Row {
    pub p: u64,
    pub expansion: String,
    pub ell: u64,
    pub h: u64,
}

#[derive(Debug, Serialize)]
pub struct Table<R> {
    pub d: u64,
    pub which: &'static str,
    pub rows: Vec<R>,
}

#[derive(Debug, Serialize)]
pub struct PointOut {
    pub r1: String,
    pub r2: String,
}

impl From<&ShintaniPoint> for PointOut {
    fn from(r: &ShintaniPoint) -> Self {
        PointOut { r1: r.r1().to_string(), r2: r.r2().to_string() }
    }
}

#[derive(Debug, Serialize)]
pub struct SetEntry {
    pub r1: String,
    pub r2: String,
    pub pi: [u64; 2],
    pub chi: i8,
}

impl SetEntry {
    pub fn new(set: &ShintaniSet, r: &ShintaniPoint) -> Self {
        let z = set.pi_map(r);
        SetEntry { r1: r.r1().to_string(), r2: r.r2().to_string(), pi: [z.x, z.y], chi: hecke_chi(set, r).value() }
    }
}

#[derive(Debug, Serialize)]
pub struct CycleOut {
    pub rep: PointOut,
    pub chi: i8,
    pub contribution: String,
    pub points: Vec<PointOut>,
}

#[derive(Debug, Serialize)]
pub struct KernelOut {
    pub index: i64,
    pub r1: String,
    pub r2: String,
}

#[derive(Debug, Serialize)]
#[serde(tag = "what", rename_all = "kebab-case")]
pub enum Dump {
    ShintaniSet { d: u64, p: u64, size: usize, points: Vec<SetEntry> },
    Cycles { d: u64, p: u64, length: u64, cycles: Vec<CycleOut>, trivial: Vec<PointOut> },
    Kernel { d: u64, p: u64, kernel: Vec<KernelOut> },
    EpsExpand { d: u64, alpha: String, expansion: String },
}

#[derive(Debug, Serialize)]
pub struct ErrorReport {
    pub error: &'static str,
    pub message: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<&'static str>,
}

/// Tab-separated rendering with a header row.
pub trait Tsv {
    const HEADER: &'static str;
    fn line(&self, out: &mut String);
}

impl Tsv for Table1Row {
    const HEADER: &'static str = "p\trho\tC\tD\tfirst_summand\tsecond_summand\tlast_summand\th";
    fn line(&self, out: &mut String) {
        let _ = writeln!(
            out,
            "{}\t{},{}\t{}\t{}\t{}\t{}\t{}\t{}",
            self.p, self.rho.a, self.rho.b, self.c, self.d_const, self.first_summand, self.second_summand,
            self.last_summand, self.h
        );
    }
}

impl Tsv for Table2Row {
    const HEADER: &'static str = "p\texpansion\tell\th";
    fn line(&self, out: &mut String) {
        let _ = writeln!(out, "{}\t{}\t{}\t{}", self.p, self.expansion, self.ell, self.h);
    }
}

pub fn tsv<R: Tsv>(rows: &[R]) -> String {
    let mut out = String::new();
    out.push_str(R::HEADER);
    out.push('\n');
    for r in rows {
        r.line(&mut out);
    }
    out
}

impl RunReport {
    pub fn tsv(&self) -> String {
        let mut out = String::from("d\tp\tmethod\th\tell\trho\tC\tD\tcycle_count\n");
        for (m, h) in &self.h {
            let _ = writeln!(
                out,
                "{}\t{}\t{m}\t{h}\t{}\t{},{}\t{}\t{}\t{}",
                self.d, self.p, self.ell, self.rho.a, self.rho.b, self.c, self.d_const, self.cycle_count
            );
        }
        out
    }
}

impl Dump {
    pub fn tsv(&self) -> String {
        let mut out = String::new();
        match self {
            Dump::ShintaniSet { points, .. } => {
                out.push_str("r1\tr2\tpi_x\tpi_y\tchi\n");
                for e in points {
                    let _ = writeln!(out, "{}\t{}\t{}\t{}\t{}", e.r1, e.r2, e.pi[0], e.pi[1], e.chi);
                }
            }
            Dump::Cycles { cycles, .. } => {
                out.push_str("rep_r1\trep_r2\tchi\tcontribution\tlength\n");
                for c in cycles {
                    let _ = writeln!(
                        out,
                        "{}\t{}\t{}\t{}\t{}",
                        c.rep.r1,
                        c.rep.r2,
                        c.chi,
                        c.contribution,
                        c.points.len()
                    );
                }
            }
            Dump::Kernel { kernel, .. } => {
                out.push_str("index\tr1\tr2\n");
                for k in kernel {
                    let _ = writeln!(out, "{}\t{}\t{}", k.index, k.r1, k.r2);
                }
            }
            Dump::EpsExpand { alpha, expansion, .. } => {
                out.push_str("alpha\texpansion\n");
                let _ = writeln!(out, "{alpha}\t{expansion}");
            }
        }
        out
    }
}
