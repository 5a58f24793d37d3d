//! Verification sweeps: which pairs to run, and running them.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::report::{PairRecord, VerifyReport};
use super::resolve::{resolve_pair, PairOutcome, ResolveError, Routes};
use crate::field::Field;
use crate::oracle::{self, Options};
use crate::sl2::ModuleParams;

/// Which pairs a sweep covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    /// Every unordered pair of the universe. Over GF(3) the sweep also
    /// pairs every dual of a three-dimensional module with every module.
    All,
    /// Pairs classified into one table (`1` for the theorem clauses).
    Table(u8),
    /// A seeded random sample of this many pairs.
    Sample(usize),
}

impl Scope {
    pub fn parse(text: &str) -> Result<Scope, String> {
        if text == "all" {
            return Ok(Scope::All);
        }
        if let Some(n) = text.strip_prefix("table:") {
            return match n.parse::<u8>() {
                Ok(n @ 1..=5) => Ok(Scope::Table(n)),
                _ => Err(format!("table number must be 1 to 5, got {n:?}")),
            };
        }
        if let Some(n) = text.strip_prefix("sample:") {
            return n
                .parse::<usize>()
                .map(Scope::Sample)
                .map_err(|_| format!("sample size must be a number, got {n:?}"));
        }
        Err(format!("unknown scope {text:?} (expected all, table:N or sample:M)"))
    }

    pub fn label(&self) -> String {
        match self {
            Scope::All => "all".into(),
            Scope::Table(n) => format!("table:{n}"),
            Scope::Sample(m) => format!("sample:{m}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub degree: u32,
    pub scope: Scope,
    pub seed: u64,
    pub jobs: Option<usize>,
    pub options: Options,
    pub cap: u32,
    pub timings: bool,
}

/// The default scope for a field: everything over GF(3), a sample of
/// 10^4 pairs (plus the row hitting set) over GF(9).
pub fn default_scope(degree: u32) -> Scope {
    if degree == 1 {
        Scope::All
    } else {
        Scope::Sample(10_000)
    }
}

/// `1`, `2`, every admissible `T(b,c,d)` and every `Tt(b,1/b,0)`, in
/// encoding order.
pub fn universe(f: &Field) -> Vec<ModuleParams> {
    let mut out = vec![ModuleParams::One, ModuleParams::Two];
    for b in f.elements() {
        for c in f.elements() {
            for d in f.elements() {
                let p = ModuleParams::T(b, c, d);
                if p.check_admissible(f).is_ok() {
                    out.push(p);
                }
            }
        }
    }
    for b in f.nonzero() {
        out.push(ModuleParams::tt_canonical(f, b).expect("b is nonzero"));
    }
    out
}

fn unordered_pairs(u: &[ModuleParams]) -> Vec<(ModuleParams, ModuleParams)> {
    let mut out = Vec::with_capacity(u.len() * (u.len() + 1) / 2);
    for i in 0..u.len() {
        for j in i..u.len() {
            out.push((u[i].clone(), u[j].clone()));
        }
    }
    out
}

fn dual_pairs(u: &[ModuleParams]) -> Vec<(ModuleParams, ModuleParams)> {
    let mut out = Vec::new();
    for x in u.iter().filter(|x| x.dim() == 3) {
        for y in u {
            out.push((ModuleParams::Dual(Box::new(x.clone())), y.clone()));
        }
    }
    out
}

/// `n` pairs drawn uniformly from the universe. A three-dimensional factor
/// is replaced by its dual with probability 1/8.
pub fn sample_pairs(u: &[ModuleParams], n: usize, seed: u64) -> Vec<(ModuleParams, ModuleParams)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pick = |rng: &mut ChaCha8Rng| {
        let p = u[rng.gen_range(0..u.len())].clone();
        if p.dim() == 3 && rng.gen_ratio(1, 8) {
            ModuleParams::Dual(Box::new(p))
        } else {
            p
        }
    };
    (0..n)
        .map(|_| {
            let l = pick(&mut rng);
            let r = pick(&mut rng);
            (l, r)
        })
        .collect()
}

/// For every table row that some unordered pair of the universe falls
/// under, the first such pair in encoding order, preferring pairs whose
/// prediction evaluates without an extension.
pub fn hitting_set(f: &Field, opts: Options) -> Vec<(ModuleParams, ModuleParams)> {
    let u = universe(f);
    let found: Vec<BTreeMap<String, (bool, usize, usize)>> = (0..u.len())
        .into_par_iter()
        .map(|i| {
            let mut best: BTreeMap<String, (bool, usize, usize)> = BTreeMap::new();
            for j in i..u.len() {
                let Ok(e) = oracle::evaluate(f, &u[i], &u[j], opts) else {
                    continue;
                };
                let entry = (e.descriptor.is_err(), i, j);
                let slot = best.entry(e.case.key()).or_insert(entry);
                if entry < *slot {
                    *slot = entry;
                }
            }
            best
        })
        .collect();
    let mut best: BTreeMap<String, (bool, usize, usize)> = BTreeMap::new();
    for m in found {
        for (k, v) in m {
            let slot = best.entry(k).or_insert(v);
            if v < *slot {
                *slot = v;
            }
        }
    }
    best.into_values()
        .map(|(_, i, j)| (u[i].clone(), u[j].clone()))
        .collect()
}

/// The pairs a sweep runs, in a fixed order.
pub fn select_pairs(f: &Field, cfg: &VerifyConfig) -> Vec<(ModuleParams, ModuleParams)> {
    let u = universe(f);
    let mut pairs = match cfg.scope {
        Scope::All => {
            let mut p = unordered_pairs(&u);
            if f.degree() == 1 {
                p.extend(dual_pairs(&u));
            }
            p
        }
        Scope::Table(_) => {
            if f.degree() == 1 {
                let mut p = unordered_pairs(&u);
                p.extend(dual_pairs(&u));
                p
            } else {
                sample_pairs(&u, 10_000, cfg.seed)
            }
        }
        Scope::Sample(n) => sample_pairs(&u, n, cfg.seed),
    };
    if f.degree() > 1 && cfg.scope != Scope::All {
        let mut hits = hitting_set(f, cfg.options);
        hits.append(&mut pairs);
        pairs = hits;
    }
    if let Scope::Table(n) = cfg.scope {
        pairs.retain(|(l, r)| {
            oracle::classify(f, l, r, cfg.options)
                .map(|c| c.table.number() == n)
                .unwrap_or(false)
        });
    }
    pairs
}

fn record(base: &Field, l: &ModuleParams, r: &ModuleParams, out: &PairOutcome, timings: bool) -> PairRecord {
    let f = &out.field;
    let (case, typos, oracle, oracle_pretty, oracle_error) = match &out.evaluation {
        Some(e) => {
            let (o, p, err) = match &e.descriptor {
                Ok(d) => (Some(d.to_json(f)), Some(d.pretty(f)), None),
                Err(x) => (None, None, Some(x.to_string())),
            };
            (
                Some(e.case.key()),
                e.typos.iter().map(|t| t.id().to_string()).collect(),
                o,
                p,
                err,
            )
        }
        None => (None, Vec::new(), None, None, None),
    };
    let (engine, engine_pretty, engine_error) = match &out.engine {
        Some(Ok(d)) => (Some(d.to_json(f)), Some(d.pretty(f)), None),
        Some(Err(e)) => (None, None, Some(e.to_string())),
        None => (None, None, None),
    };
    let cubes = out.cubes.as_ref();
    PairRecord {
        left: l.format(base),
        right: r.format(base),
        field: base.degree(),
        resolved_field: f.degree(),
        case,
        typos,
        engine,
        engine_pretty,
        engine_error,
        oracle,
        oracle_pretty,
        oracle_error,
        matched: out.matched(),
        scalars_ok: cubes.and_then(|c| c.scalars_ok),
        scalar_typos: cubes
            .and_then(|c| c.predicted.as_ref())
            .map(|p| p.typos.iter().map(|t| t.id().to_string()).collect())
            .unwrap_or_default(),
        extremal_ok: cubes.and_then(|c| c.extremal_ok),
        symmetric: out.symmetric,
        unresolved: out.unresolved,
        wall_ms: timings.then_some(out.elapsed_ms),
    }
}

fn error_record(base: &Field, l: &ModuleParams, r: &ModuleParams, e: &ResolveError) -> PairRecord {
    PairRecord {
        left: l.format(base),
        right: r.format(base),
        field: base.degree(),
        resolved_field: base.degree(),
        engine_error: Some(e.to_string()),
        oracle_error: Some(e.to_string()),
        ..PairRecord::default()
    }
}

/// Runs both routes on the given pairs. Records come back in input order
/// whatever the number of workers.
pub fn run_pairs(base: &Field, pairs: &[(ModuleParams, ModuleParams)], cfg: &VerifyConfig) -> Vec<PairRecord> {
    let one = |(l, r): &(ModuleParams, ModuleParams)| match resolve_pair(base, l, r, Routes::BOTH, cfg.options, cfg.cap)
    {
        Ok(out) => record(base, l, r, &out, cfg.timings),
        Err(e) => error_record(base, l, r, &e),
    };
    let go = || pairs.par_iter().map(one).collect::<Vec<_>>();
    match cfg.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .expect("thread pool")
            .install(go),
        None => go(),
    }
}

/// A complete sweep.
pub fn verify(cfg: &VerifyConfig) -> Result<VerifyReport, crate::field::FieldError> {
    let start = Instant::now();
    let base = Field::gf(cfg.degree)?;
    let pairs = match cfg.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .expect("thread pool")
            .install(|| select_pairs(&base, cfg)),
        None => select_pairs(&base, cfg),
    };
    let records = run_pairs(&base, &pairs, cfg);
    let mut report = VerifyReport {
        field: cfg.degree,
        scope: cfg.scope.label(),
        seed: cfg.seed,
        paper_literal: cfg.options.paper_literal,
        extension_cap: cfg.cap,
        records,
        total_ms: cfg.timings.then(|| start.elapsed().as_secs_f64() * 1e3),
        ..VerifyReport::default()
    };
    report.tally();
    Ok(report)
}
