//! Exhaustive verification campaigns over enumerated matroids, chirotopes and
//! positive MacPhersonians, producing machine-readable reports.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::chirotope::Chirotope;
use crate::enumerate::{enumerate_chirotopes, enumerate_matroids, enumerate_positroids};
use crate::io::{chirotope_to_json, matroid_to_json};
use crate::macp::build_macphersonian_plus;
use crate::matroid::Matroid;
use crate::poset::Part;
use crate::positroid::{
    component_partition_check, da_silva_criterion, indicator_chirotope, is_positroid, necklace_criterion,
    ComponentPartition, NonCrossingPartition,
};
use crate::subset::Subset;

/// Default bound on `n` above which campaigns warn; `POSITROID_MAX_N` overrides it.
pub const DEFAULT_SOFT_MAX_N: usize = 6;

pub fn soft_max_n() -> usize {
    std::env::var("POSITROID_MAX_N")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_SOFT_MAX_N)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown theorem \"{0}\" (expected one of: {list})", list = Theorem::ALL.iter().map(|t| t.id()).collect::<Vec<_>>().join(", "))]
pub struct UnknownTheorem(pub String);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Theorem {
    /// Positively oriented matroids are positroids.
    Main,
    /// Indicator chirotope, circuit/cocircuit criterion, interval criterion
    /// and necklace criterion agree.
    DaSilva,
    /// Positroid components form a non-crossing partition, and direct sums
    /// along non-crossing partitions are positroids.
    NonCrossing,
    /// Positroids are closed under duality, restriction and contraction.
    Closure,
    /// Positive orientability is invariant under cyclic rotation.
    Rotate,
    /// Restriction preserves positive orientability and does not depend on
    /// the completion.
    Restrict,
    /// Oriented-matroid connectivity equals matroid connectivity.
    Connected,
    /// The positive MacPhersonian with a bottom is graded, thin, Eulerian,
    /// with sphere and ball Euler characteristics.
    Poset,
    /// Specialization on indicator chirotopes equals basis containment.
    Isomorphism,
}

impl Theorem {
    pub const ALL: [Theorem; 9] = [
        Theorem::Main,
        Theorem::DaSilva,
        Theorem::NonCrossing,
        Theorem::Closure,
        Theorem::Rotate,
        Theorem::Restrict,
        Theorem::Connected,
        Theorem::Poset,
        Theorem::Isomorphism,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Theorem::Main => "main-5.1",
            Theorem::DaSilva => "dasilva-5.2",
            Theorem::NonCrossing => "noncrossing-3.7",
            Theorem::Closure => "closure-3.5",
            Theorem::Rotate => "rotate-4.10",
            Theorem::Restrict => "restrict-4.12",
            Theorem::Connected => "connected-4.13",
            Theorem::Poset => "poset-6.6",
            Theorem::Isomorphism => "isomorphism-6.13",
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Theorem {
    type Err = UnknownTheorem;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Theorem::ALL
            .into_iter()
            .find(|t| t.id() == s)
            .ok_or_else(|| UnknownTheorem(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct VerifyOptions {
    pub n_max: usize,
    /// Restrict to a single rank.
    pub k: Option<usize>,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
    /// Test-only: negate the criterion under test so the harness must report
    /// counterexamples.
    pub inject_fault: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Parameters {
    pub n_max: usize,
    pub k: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub theorem: String,
    pub parameters: Parameters,
    pub instances_checked: u64,
    pub counterexamples: Vec<Value>,
    pub wall_time_ms: u64,
    pub pass: bool,
}

impl VerificationReport {
    /// Combines the reports of two shards of the same campaign.
    pub fn merge(mut self, other: VerificationReport) -> VerificationReport {
        debug_assert_eq!(self.theorem, other.theorem);
        self.instances_checked += other.instances_checked;
        self.counterexamples.extend(other.counterexamples);
        self.wall_time_ms = self.wall_time_ms.max(other.wall_time_ms);
        self.pass = self.counterexamples.is_empty();
        self
    }
}

/// Runs one campaign to completion.
pub fn verify(theorem: Theorem, opts: VerifyOptions) -> VerificationReport {
    let start = Instant::now();
    let run = || run_campaign(theorem, &opts);
    let (instances, counterexamples) = match opts.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .expect("thread pool")
            .install(run),
        None => run(),
    };
    VerificationReport {
        theorem: theorem.id().to_string(),
        parameters: Parameters { n_max: opts.n_max, k: opts.k },
        instances_checked: instances,
        pass: counterexamples.is_empty(),
        counterexamples,
        wall_time_ms: start.elapsed().as_millis() as u64,
    }
}

type Outcome = (u64, Vec<Value>);

fn run_campaign(theorem: Theorem, opts: &VerifyOptions) -> Outcome {
    match theorem {
        Theorem::Main => over(&matroids(opts), |m| check_main(m, opts.inject_fault)),
        Theorem::DaSilva => over(&matroids(opts), |m| check_equivalence(m, opts.inject_fault)),
        Theorem::NonCrossing => {
            let (a, mut ca) = over(&positroids(opts), |m| check_components(m, opts.inject_fault));
            let (b, cb) = noncrossing_sums(opts);
            ca.extend(cb);
            (a + b, ca)
        }
        Theorem::Closure => over(&positroids(opts), |m| check_closure(m, opts.inject_fault)),
        Theorem::Rotate => over(&chirotopes(opts), |c| check_rotation(c, opts.inject_fault)),
        Theorem::Restrict => over(&chirotopes(opts), |c| check_restriction(c, opts.inject_fault)),
        Theorem::Connected => over(&chirotopes(opts), |c| check_connectivity(c, opts.inject_fault)),
        Theorem::Poset => over(&poset_shapes(opts), |&(k, n)| check_poset(k, n, opts.inject_fault)),
        Theorem::Isomorphism => over(&poset_shapes(opts), |&(k, n)| check_isomorphism(k, n, opts.inject_fault)),
    }
}

/// Checks every item in parallel; counterexamples keep input order.
fn over<T: Sync>(items: &[T], check: impl Fn(&T) -> Option<Value> + Sync + Send) -> Outcome {
    let found: Vec<Value> = items.par_iter().filter_map(check).collect();
    (items.len() as u64, found)
}

fn ranks(n: usize, k: Option<usize>) -> Vec<usize> {
    match k {
        Some(k) if k <= n => vec![k],
        Some(_) => vec![],
        None => (0..=n).collect(),
    }
}

fn matroids(opts: &VerifyOptions) -> Vec<Matroid> {
    let shapes: Vec<(usize, usize)> =
        (0..=opts.n_max).flat_map(|n| ranks(n, opts.k).into_iter().map(move |k| (n, k))).collect();
    shapes.par_iter().flat_map_iter(|&(n, k)| enumerate_matroids(n, k)).collect()
}

fn positroids(opts: &VerifyOptions) -> Vec<Matroid> {
    let shapes: Vec<(usize, usize)> =
        (0..=opts.n_max).flat_map(|n| ranks(n, opts.k).into_iter().map(move |k| (n, k))).collect();
    shapes.par_iter().flat_map_iter(|&(n, k)| enumerate_positroids(n, k)).collect()
}

fn chirotopes(opts: &VerifyOptions) -> Vec<Chirotope> {
    let shapes: Vec<(usize, usize)> =
        (0..=opts.n_max).flat_map(|n| ranks(n, opts.k).into_iter().map(move |k| (n, k))).collect();
    shapes.par_iter().flat_map_iter(|&(n, k)| enumerate_chirotopes(n, k)).collect()
}

fn poset_shapes(opts: &VerifyOptions) -> Vec<(usize, usize)> {
    (1..=opts.n_max).flat_map(|n| ranks(n, opts.k).into_iter().map(move |k| (k, n))).collect()
}

fn check_main(m: &Matroid, fault: bool) -> Option<Value> {
    let oriented = indicator_chirotope(m).is_ok();
    let verdict = is_positroid(m);
    let positroid = verdict.is_positroid != fault;
    (oriented && !positroid).then(|| {
        json!({
            "matroid": matroid_to_json(m),
            "indicator_chirotope": "valid",
            "is_positroid": positroid,
            "certificate": verdict.certificate,
        })
    })
}

fn check_equivalence(m: &Matroid, fault: bool) -> Option<Value> {
    let indicator = indicator_chirotope(m);
    let da_silva = da_silva_criterion(m);
    let verdict = is_positroid(m);
    let necklace = necklace_criterion(m) != fault;
    let values = [indicator.is_ok(), da_silva.holds, verdict.is_positroid, necklace];
    (!values.iter().all(|&v| v == values[0])).then(|| {
        json!({
            "matroid": matroid_to_json(m),
            "indicator_chirotope": indicator.err(),
            "da_silva": da_silva,
            "is_positroid": verdict,
            "necklace_criterion": necklace,
        })
    })
}

fn check_components(m: &Matroid, fault: bool) -> Option<Value> {
    let partition = component_partition_check(m);
    let noncrossing = matches!(partition, ComponentPartition::NonCrossing { .. }) != fault;
    (!noncrossing).then(|| json!({ "matroid": matroid_to_json(m), "components": partition }))
}

/// Direct sums of connected positroids along every non-crossing partition.
fn noncrossing_sums(opts: &VerifyOptions) -> Outcome {
    let mut connected: Vec<Vec<Matroid>> = vec![Vec::new()];
    for m in 1..=opts.n_max {
        connected.push(
            (0..=m)
                .flat_map(|k| enumerate_positroids(m, k))
                .filter(Matroid::is_connected)
                .collect(),
        );
    }
    let mut jobs: Vec<(usize, Vec<Subset>)> = Vec::new();
    for n in 1..=opts.n_max {
        for p in NonCrossingPartition::all(n) {
            jobs.push((n, p.blocks));
        }
    }
    let results: Vec<Outcome> = jobs
        .par_iter()
        .map(|(n, blocks)| {
            let mut checked = 0u64;
            let mut found = Vec::new();
            let choices: Vec<&Vec<Matroid>> = blocks.iter().map(|b| &connected[b.len()]).collect();
            let mut idx = vec![0usize; blocks.len()];
            if choices.iter().any(|c| c.is_empty()) {
                return (0, found);
            }
            loop {
                let sum = blocks
                    .iter()
                    .zip(&idx)
                    .zip(&choices)
                    .map(|((&b, &i), c)| c[i].embedded(*n, b))
                    .reduce(|a, b| a.direct_sum(&b).expect("blocks are disjoint"))
                    .expect("partitions are nonempty");
                if opts.k.is_none_or(|k| k == sum.rank()) {
                    checked += 1;
                    let verdict = is_positroid(&sum);
                    if verdict.is_positroid == opts.inject_fault {
                        found.push(json!({
                            "partition": blocks,
                            "direct_sum": matroid_to_json(&sum),
                            "is_positroid": verdict,
                        }));
                    }
                }
                let mut pos = 0;
                loop {
                    if pos == idx.len() {
                        return (checked, found);
                    }
                    idx[pos] += 1;
                    if idx[pos] < choices[pos].len() {
                        break;
                    }
                    idx[pos] = 0;
                    pos += 1;
                }
            }
        })
        .collect();
    results.into_iter().fold((0, Vec::new()), |(a, mut va), (b, vb)| {
        va.extend(vb);
        (a + b, va)
    })
}

fn check_closure(m: &Matroid, fault: bool) -> Option<Value> {
    let ok = |x: &Matroid| is_positroid(&x.reindexed()).is_positroid != fault;
    let dual = m.dual();
    if !ok(&dual) {
        return Some(json!({ "matroid": matroid_to_json(m), "operation": "dual", "result": matroid_to_json(&dual) }));
    }
    for s in m.ground().subsets() {
        let r = m.restrict(s).expect("subset of ground");
        if !ok(&r) {
            return Some(json!({
                "matroid": matroid_to_json(m), "operation": "restrict", "set": s, "result": matroid_to_json(&r),
            }));
        }
        let c = m.contract(s).expect("subset of ground");
        if !ok(&c) {
            return Some(json!({
                "matroid": matroid_to_json(m), "operation": "contract", "set": s, "result": matroid_to_json(&c),
            }));
        }
    }
    None
}

fn check_rotation(chi: &Chirotope, fault: bool) -> Option<Value> {
    let base = chi.is_positively_orientable();
    for i in chi.ground().iter() {
        let rotated = chi.rotate(i).is_positively_orientable() != fault;
        if rotated != base {
            return Some(json!({
                "chirotope": chirotope_to_json(chi),
                "positively_orientable": base,
                "rotation": i,
                "rotated_positively_orientable": rotated,
            }));
        }
    }
    None
}

fn check_restriction(chi: &Chirotope, fault: bool) -> Option<Value> {
    let base = chi.is_positively_orientable();
    let m = chi.underlying_matroid();
    for s in chi.ground().subsets() {
        let r = chi.restrict(s).expect("subset of ground");
        if base && (r.is_positively_orientable() == fault) {
            return Some(json!({
                "chirotope": chirotope_to_json(chi),
                "set": s,
                "restriction": chirotope_to_json(&r),
                "failure": "restriction of a positively oriented matroid is not positively oriented",
            }));
        }
        // Every spanning completion gives the same chirotope up to sign.
        let need = chi.rank() - m.rank_of(s);
        for comp in chi.ground().difference(s).k_subsets(need) {
            if let Some(other) = chi.restrict_with_completion(s, &comp.to_vec()) {
                if other != r {
                    return Some(json!({
                        "chirotope": chirotope_to_json(chi),
                        "set": s,
                        "completion": comp,
                        "failure": "restriction depends on the completion",
                    }));
                }
            }
        }
    }
    None
}

/// Components from signed circuits: elements sharing a circuit support are
/// joined; elements in no circuit stay alone.
pub fn signed_circuit_components(chi: &Chirotope) -> Vec<Subset> {
    let mut comps: Vec<Subset> = chi.ground().iter().map(Subset::singleton).collect();
    for c in chi.signed_circuits() {
        let support = c.support();
        let (touching, rest): (Vec<Subset>, Vec<Subset>) = comps.into_iter().partition(|b| !b.is_disjoint(support));
        comps = rest;
        comps.push(touching.into_iter().fold(Subset::EMPTY, Subset::union));
    }
    comps.sort_by_key(|b| b.first());
    comps
}

fn check_connectivity(chi: &Chirotope, fault: bool) -> Option<Value> {
    let by_matroid = chi.underlying_matroid().connected_components();
    let by_circuits = signed_circuit_components(chi);
    let direct = chi.is_connected();
    let from_circuits = (by_circuits.len() <= 1) != fault;
    (direct != from_circuits || by_matroid != by_circuits).then(|| {
        json!({
            "chirotope": chirotope_to_json(chi),
            "om_is_connected": direct,
            "signed_circuit_connected": from_circuits,
            "matroid_components": by_matroid,
            "signed_circuit_components": by_circuits,
        })
    })
}

/// Poset diagnostics for one shape; `None` when every check passes.
pub fn check_poset(k: usize, n: usize, fault: bool) -> Option<Value> {
    let mac = build_macphersonian_plus(k, n);
    let p = &mac.poset;
    let diag = p.diagnostics();
    let mut failures: Vec<Value> = Vec::new();
    if !diag.graded {
        failures.push(json!("not graded"));
    }
    if !diag.thin {
        failures.push(json!("not thin"));
    }
    if diag.eulerian == fault {
        failures.push(json!("not Eulerian"));
    }
    match mac.unique_top() {
        None => failures.push(json!("no unique uniform top")),
        Some(top) => {
            let len = p.length(0, top).expect("bottom is below top");
            if len != k * (n - k) + 1 {
                failures.push(json!({ "top_length": len, "expected": k * (n - k) + 1 }));
            }
        }
    }
    for x in 1..p.len() {
        for y in 1..p.len() {
            if p.lt(x, y) && mac.matroids[x - 1].bases().len() >= mac.matroids[y - 1].bases().len() {
                failures.push(json!({ "basis_count_not_monotone": [p.labels()[x], p.labels()[y]] }));
            }
        }
        let l = p.length(0, x).expect("bottom is below everything") as i64;
        let expected = if l % 2 == 0 { 1 } else { -1 };
        let chi = p.order_complex_euler(Part::Open(0, x)).expect("comparable");
        if chi != expected {
            failures.push(json!({ "open_interval": p.labels()[x], "euler": chi, "expected": expected }));
        }
    }
    let whole = p.order_complex_euler(Part::Whole).expect("whole poset");
    if whole != 0 {
        failures.push(json!({ "whole_euler": whole, "expected": 0 }));
    }
    (!failures.is_empty()).then(|| json!({ "k": k, "n": n, "diagnostics": diag, "failures": failures }))
}

/// Specialization versus basis containment for one shape.
pub fn check_isomorphism(k: usize, n: usize, fault: bool) -> Option<Value> {
    let mac = build_macphersonian_plus(k, n);
    let mismatch = if fault { Some((1, 1)) } else { mac.containment_mismatch() };
    mismatch.map(|(x, y)| {
        json!({
            "k": k,
            "n": n,
            "lower": matroid_to_json(&mac.matroids[x - 1]),
            "upper": matroid_to_json(&mac.matroids[y - 1]),
            "specializes": mac.poset.leq(x, y),
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts(n_max: usize) -> VerifyOptions {
        VerifyOptions { n_max, ..Default::default() }
    }

    #[test]
    fn theorem_ids_round_trip() {
        for t in Theorem::ALL {
            assert_eq!(t.id().parse::<Theorem>().unwrap(), t);
        }
        assert_eq!("nope".parse::<Theorem>().unwrap_err(), UnknownTheorem("nope".into()));
    }

    #[test]
    fn small_campaigns_pass() {
        for t in Theorem::ALL {
            let r = verify(t, opts(4));
            assert!(r.pass, "{t}: {:?}", r.counterexamples);
            assert!(r.instances_checked > 0, "{t}");
        }
    }

    #[test]
    fn fault_injection_is_detected() {
        for t in Theorem::ALL {
            let r = verify(t, VerifyOptions { n_max: 3, inject_fault: true, ..Default::default() });
            assert!(!r.pass, "{t}");
            assert!(!r.counterexamples.is_empty());
        }
    }

    #[test]
    fn single_rank_and_jobs() {
        let r = verify(Theorem::Main, VerifyOptions { n_max: 4, k: Some(2), jobs: Some(2), inject_fault: false });
        assert!(r.pass);
        let all: u64 = (0..=4).map(|n| enumerate_matroids(n, 2).len() as u64).sum();
        assert_eq!(r.instances_checked, all);
    }

    #[test]
    fn merge_is_associative() {
        let a = verify(Theorem::Main, VerifyOptions { n_max: 3, inject_fault: true, ..Default::default() });
        let b = verify(Theorem::Main, opts(2));
        let c = verify(Theorem::Main, VerifyOptions { n_max: 2, inject_fault: true, ..Default::default() });
        let left = a.clone().merge(b.clone()).merge(c.clone());
        let right = a.merge(b.merge(c));
        assert_eq!(left.instances_checked, right.instances_checked);
        assert_eq!(left.counterexamples, right.counterexamples);
        assert_eq!(left.pass, right.pass);
    }

    #[test]
    fn circuit_components_example() {
        let m = Matroid::from_bases(4, [[1, 3], [1, 4], [2, 3], [2, 4]].map(Subset::from_elems)).unwrap();
        let chi = Chirotope::indicator(&m).unwrap();
        assert_eq!(
            signed_circuit_components(&chi),
            vec![Subset::from_elems([1, 2]), Subset::from_elems([3, 4])]
        );
    }
}
