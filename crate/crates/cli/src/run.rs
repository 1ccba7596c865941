use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use shintani_core::arith::is_prime;
use shintani_core::expansion::{default_max_digits, eps_expand, inv_p_expansion};
use shintani_core::field::{eligibility, FieldContext, QuadRat};
use shintani_core::oracle::class_number_direct;
use shintani_core::residue::Generator;
use shintani_core::shintani::ShintaniSet;
use shintani_core::theorem_one::{class_number_thm1, Thm1Result};
use shintani_core::theorem_two::class_number_thm2;
use shintani_core::Error;

use crate::report::{
    CycleOut, Dump, ErrorReport, KernelOut, PointOut, Rho, RunReport, SetEntry, Table1Row, Table2Row,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Method {
    Thm1,
    Thm2,
    Direct,
    All,
}

impl Method {
    fn names(self) -> Vec<&'static str> {
        match self {
            Method::Thm1 => vec!["thm1"],
            Method::Thm2 => vec!["thm2"],
            Method::Direct => vec!["direct"],
            Method::All => vec!["thm1", "thm2", "direct"],
        }
    }
}

/// Everything that ends the process early, with its exit status.
#[derive(Debug)]
pub enum Failure {
    /// Ineligible or otherwise unusable input: exit 2.
    Input(Error),
    /// Two methods disagreed or an exactness assertion fired: exit 3.
    Mismatch(String),
    /// A hand-parsed flag value was malformed: exit 4.
    Parse(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Mismatch(_) => 3,
            Failure::Parse(_) => 4,
        }
    }

    pub fn report(&self) -> ErrorReport {
        match self {
            Failure::Input(e) => ErrorReport {
                error: e.code(),
                message: e.to_string(),
                failures: match e {
                    Error::Ineligible(r) => r.codes(),
                    _ => Vec::new(),
                },
            },
            Failure::Mismatch(m) => {
                ErrorReport { error: "INTERNAL_INCONSISTENCY", message: m.clone(), failures: Vec::new() }
            }
            Failure::Parse(m) => ErrorReport { error: "PARSE_ERROR", message: m.clone(), failures: Vec::new() },
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(e) => write!(f, "{e}"),
            Failure::Mismatch(m) => write!(f, "cross-check failed: {m}"),
            Failure::Parse(m) => write!(f, "parse error: {m}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NonIntegralResult(_) | Error::InternalInconsistency(_) => Failure::Mismatch(e.to_string()),
            other => Failure::Input(other),
        }
    }
}

pub type Outcome<T> = std::result::Result<T, Failure>;

/// `"a,b"`.
pub fn parse_rho(s: &str) -> Outcome<Rho> {
    let bad = || Failure::Parse(format!("expected rho as a,b with non-negative integers, got {s:?}"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    Ok(Rho { a: a.trim().parse().map_err(|_| bad())?, b: b.trim().parse().map_err(|_| bad())? })
}

/// `"p:a,b"`.
pub fn parse_pinned(s: &str) -> Outcome<(u64, Rho)> {
    let (p, rho) = s
        .split_once(':')
        .ok_or_else(|| Failure::Parse(format!("expected p:a,b, got {s:?}")))?;
    let p = p.trim().parse().map_err(|_| Failure::Parse(format!("bad prime in {s:?}")))?;
    Ok((p, parse_rho(rho)?))
}

/// `"num/den"` or an integer.
pub fn parse_alpha(s: &str) -> Outcome<BigRational> {
    let bad = || Failure::Parse(format!("expected alpha as num/den, got {s:?}"));
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    let n: BigInt = n.trim().parse().map_err(|_| bad())?;
    let d: BigInt = d.trim().parse().map_err(|_| bad())?;
    if d == BigInt::from(0) {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

fn to_i64(x: &BigInt) -> Outcome<i64> {
    x.to_i64().ok_or_else(|| Failure::Input(Error::TooLarge(format!("{x}"))))
}

fn generator(set: &ShintaniSet, rho: Option<Rho>) -> Outcome<Generator> {
    let res = set.residue_field();
    Ok(match rho {
        Some(r) => res.generator_from(r.a, r.b)?,
        None => res.find_generator()?,
    })
}

fn agree(d: u64, p: u64, hs: &BTreeMap<&'static str, u64>) -> Outcome<()> {
    let mut vals = hs.values();
    if let Some(first) = vals.next() {
        if vals.any(|h| h != first) {
            return Err(Failure::Mismatch(format!("class numbers differ for d = {d}, p = {p}: {hs:?}")));
        }
    }
    Ok(())
}

pub struct ClassnumOptions {
    pub method: Method,
    pub rho: Option<Rho>,
    pub crosscheck: bool,
    pub timing: bool,
}

pub fn classnum(d: u64, p: u64, opts: &ClassnumOptions) -> Outcome<RunReport> {
    let field = FieldContext::new(d)?;
    let set = ShintaniSet::new(&field, p)?;
    let rho = generator(&set, opts.rho)?;
    let methods = opts.method.names();
    let run: Vec<&'static str> = if opts.crosscheck { Method::All.names() } else { methods.clone() };

    let mut all = BTreeMap::new();
    let mut timing = BTreeMap::new();
    let mut thm1: Option<Thm1Result> = None;
    for m in &run {
        let start = Instant::now();
        let h = match *m {
            "thm1" => {
                let r = class_number_thm1(&field, &set, &rho)?;
                let h = r.h;
                thm1 = Some(r);
                h
            }
            "thm2" => class_number_thm2(&set)?.h,
            _ => class_number_direct(&field, p)?,
        };
        timing.insert(*m, start.elapsed().as_micros() as u64);
        all.insert(*m, h);
    }
    agree(d, p, &all)?;

    let params = match thm1 {
        Some(r) => r.params,
        None => shintani_core::theorem_one::cd_constants(&field, &rho),
    };
    let ell = set.residue_field().element_order(set.eps_residue())?;
    let nontrivial = set.t() as u64 * (p * p - 1);
    Ok(RunReport {
        d,
        p,
        h: all.into_iter().filter(|(m, _)| methods.contains(m)).collect(),
        methods,
        ell,
        rho: Rho { a: rho.a(), b: rho.b() },
        c: to_i64(&params.c)?,
        d_const: to_i64(&params.d)?,
        cycle_count: nontrivial / ell,
        crosscheck: opts.crosscheck,
        timing_us: opts.timing.then_some(timing),
    })
}

/// Eligible primes `7 ≤ p ≤ pmax` for `field`.
pub fn eligible_primes(field: &FieldContext, pmax: u64) -> Vec<u64> {
    (7..=pmax).filter(|&p| is_prime(p) && eligibility(field, p).eligible()).collect()
}

pub fn table1_row(field: &FieldContext, p: u64, rho: Option<Rho>, crosscheck: bool) -> Outcome<Table1Row> {
    let set = ShintaniSet::new(field, p)?;
    let g = generator(&set, rho)?;
    let r = class_number_thm1(field, &set, &g)?;
    if crosscheck {
        let hs = BTreeMap::from([
            ("thm1", r.h),
            ("thm2", class_number_thm2(&set)?.h),
            ("direct", class_number_direct(field, p)?),
        ]);
        agree(field.d(), p, &hs)?;
    }
    let s = |i: usize| r.summands[i] as i64;
    Ok(Table1Row {
        p,
        rho: Rho { a: g.a(), b: g.b() },
        c: to_i64(&r.params.c)?,
        d_const: to_i64(&r.params.d)?,
        first_summand: s(0),
        second_summand: s(1),
        last_summand: s(r.summands.len() - 1),
        h: r.h,
    })
}

pub fn table2_row(field: &FieldContext, p: u64, max_digits: Option<usize>, crosscheck: bool) -> Outcome<Table2Row> {
    let set = ShintaniSet::new(field, p)?;
    let r = class_number_thm2(&set)?;
    let e = inv_p_expansion(field, p, max_digits.unwrap_or_else(|| default_max_digits(field, p)))?;
    if e.period.len() as u64 != r.ell {
        return Err(Failure::Mismatch(format!("period {} vs cycle length {}", e.period.len(), r.ell)));
    }
    if crosscheck {
        let g = set.residue_field().find_generator()?;
        let hs = BTreeMap::from([
            ("thm1", class_number_thm1(field, &set, &g)?.h),
            ("thm2", r.h),
            ("direct", class_number_direct(field, p)?),
        ]);
        agree(field.d(), p, &hs)?;
    }
    Ok(Table2Row { p, expansion: e.to_string(), ell: r.ell, h: r.h })
}

/// Runs `f` over `items` on `jobs` threads; results keep the input order.
pub fn parallel_map<T, R, F>(items: &[T], jobs: usize, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync,
{
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<R>>> = Mutex::new((0..items.len()).map(|_| None).collect());
    std::thread::scope(|scope| {
        for _ in 0..jobs.clamp(1, items.len().max(1)) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= items.len() {
                    break;
                }
                let r = f(&items[i]);
                slots.lock().unwrap()[i] = Some(r);
            });
        }
    });
    slots.into_inner().unwrap().into_iter().map(|r| r.expect("every slot filled")).collect()
}

pub enum What {
    ShintaniSet,
    Cycles,
    Kernel,
    EpsExpand(String),
}

pub fn parse_what(s: &str) -> Outcome<What> {
    match s {
        "shintani-set" => Ok(What::ShintaniSet),
        "cycles" => Ok(What::Cycles),
        "kernel" => Ok(What::Kernel),
        _ => match s.strip_prefix("eps-expand:") {
            Some(alpha) => Ok(What::EpsExpand(alpha.to_string())),
            None => Err(Failure::Parse(format!("unknown --what {s:?}"))),
        },
    }
}

fn require_p(p: Option<u64>) -> Outcome<u64> {
    p.ok_or_else(|| Failure::Parse("--p is required for this dump".into()))
}

pub fn inspect(d: u64, p: Option<u64>, what: &What, max_digits: Option<usize>) -> Outcome<Dump> {
    let field = FieldContext::new(d)?;
    match what {
        What::EpsExpand(alpha) => {
            let a = parse_alpha(alpha)?;
            let max = max_digits.unwrap_or_else(|| {
                let den = a.denom().to_u64().unwrap_or(u64::MAX);
                default_max_digits(&field, den.max(2))
            });
            let e = eps_expand(&field, &QuadRat::new(a.clone(), BigRational::from_integer(0.into())), max)?;
            Ok(Dump::EpsExpand { d, alpha: a.to_string(), expansion: e.to_string() })
        }
        What::ShintaniSet => {
            let p = require_p(p)?;
            let set = ShintaniSet::new(&field, p)?;
            let points: Vec<SetEntry> = set.enumerate().iter().map(|r| SetEntry::new(&set, r)).collect();
            Ok(Dump::ShintaniSet { d, p, size: points.len(), points })
        }
        What::Kernel => {
            let p = require_p(p)?;
            let set = ShintaniSet::new(&field, p)?;
            let kernel = set
                .kernel_elements()
                .iter()
                .map(|k| KernelOut { index: k.index, r1: k.point.r1().to_string(), r2: k.point.r2().to_string() })
                .collect();
            Ok(Dump::Kernel { d, p, kernel })
        }
        What::Cycles => {
            let p = require_p(p)?;
            let set = ShintaniSet::new(&field, p)?;
            let r = class_number_thm2(&set)?;
            let mut kernel: Vec<_> = set.kernel_elements().into_iter().map(|k| k.point).collect();
            kernel.sort();
            let trivial = kernel.iter().map(PointOut::from).collect();
            let cycles = r
                .cycles
                .iter()
                .map(|c| CycleOut {
                    rep: PointOut::from(&c.cycle.rep),
                    chi: c.chi.value(),
                    contribution: c.signed_sum.to_string(),
                    points: c.cycle.points.iter().map(PointOut::from).collect(),
                })
                .collect();
            Ok(Dump::Cycles { d, p, length: r.ell, cycles, trivial })
        }
    }
}
