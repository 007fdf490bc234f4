//! Exhaustive verification suites over the oracle, run shard-parallel.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num_bigint::BigInt;
use unicell_core::count::{
    beta_bipartite, epsilon_identity, epsilon_via_r, epsilon_walsh, hz_formula_check, hz_recurrence_check,
    pairings, xi_precubic,
};
use unicell_core::oracle::{self, check_trisections, shard_count, Oracle, OracleError, TrisectionCensus};
use unicell_core::surgery::{lambda, xi};
use unicell_core::trisect::trisections;
use unicell_core::{MarkedTrisection, MarkedVertices, UnicellularMap};

use crate::format::{parse_map, serialize, serialize_canonical};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Census,
    Trisection,
    Roundtrip,
    HzRecurrence,
    HzFormula,
    Bipartite,
    Precubic,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Census,
        Suite::Trisection,
        Suite::Roundtrip,
        Suite::HzRecurrence,
        Suite::HzFormula,
        Suite::Bipartite,
        Suite::Precubic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Census => "census",
            Suite::Trisection => "trisection",
            Suite::Roundtrip => "roundtrip",
            Suite::HzRecurrence => "hz-recurrence",
            Suite::HzFormula => "hz-formula",
            Suite::Bipartite => "bipartite",
            Suite::Precubic => "precubic",
        }
    }

    /// Whether the suite walks the oracle (and so is bounded by it).
    pub fn enumerates(self) -> bool {
        !matches!(self, Suite::HzRecurrence | Suite::HzFormula)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub max_edges: usize,
    /// Maps visited for each `n` in `1..=max_edges`; empty for formula-only suites.
    pub maps_per_size: Vec<u64>,
    /// One line per failure, a map line where one exists.
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {} n<={}", self.suite, self.max_edges)?;
        if !self.maps_per_size.is_empty() {
            write!(f, " ({} maps)", self.maps_per_size.iter().join("+"))?;
        }
        for failure in &self.failures {
            write!(f, "\n  {failure}")?;
        }
        Ok(())
    }
}

/// Runs `visit` over every map with `n` edges on `workers` threads, one
/// accumulator per thread, merged in shard order.
pub fn sharded<T: Send>(
    oracle: &Oracle,
    n: usize,
    workers: usize,
    init: impl Fn() -> T + Sync,
    visit: impl Fn(&mut T, &UnicellularMap) + Sync,
) -> Result<(Vec<T>, u64), OracleError> {
    oracle.check(n)?;
    let shards = shard_count(n);
    let workers = workers.clamp(1, shards);
    let results: Vec<Result<(T, u64), OracleError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let (init, visit) = (&init, &visit);
                scope.spawn(move || {
                    let mut acc = init();
                    let mut visited = 0;
                    for shard in (w..shards).step_by(workers) {
                        visited += oracle.enumerate_shard(n, shard, |m| visit(&mut acc, m))?;
                    }
                    Ok((acc, visited))
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    let mut accs = Vec::with_capacity(workers);
    let mut total = 0;
    for r in results {
        let (acc, visited) = r?;
        accs.push(acc);
        total += visited;
    }
    Ok((accs, total))
}

pub fn run_suite(suite: Suite, max_edges: usize, workers: usize, oracle: &Oracle) -> Result<SuiteReport, OracleError> {
    let mut report = SuiteReport {
        suite,
        max_edges,
        maps_per_size: Vec::new(),
        failures: Vec::new(),
    };
    match suite {
        Suite::HzRecurrence => {
            for n in 2..=max_edges as u64 {
                for g in 0..=(n / 2) as u32 {
                    if !hz_recurrence_check(g, n) {
                        report.failures.push(format!("recurrence fails at g={g} n={n}"));
                    }
                }
            }
            return Ok(report);
        }
        Suite::HzFormula => {
            for n in 1..=max_edges as u64 {
                if !hz_formula_check(n) {
                    report.failures.push(format!("formula fails at n={n}"));
                }
            }
            return Ok(report);
        }
        _ => {}
    }
    if max_edges > oracle.max_edges() {
        return Err(OracleError::SizeBound {
            edges: max_edges,
            bound: oracle.max_edges(),
        });
    }
    for n in 1..=max_edges {
        let visited = match suite {
            Suite::Census => census_size(oracle, n, workers, &mut report.failures)?,
            Suite::Trisection => trisection_size(oracle, n, workers, &mut report.failures)?,
            Suite::Roundtrip => roundtrip_size(oracle, n, workers, &mut report.failures)?,
            Suite::Bipartite => bipartite_size(oracle, n, workers, &mut report.failures)?,
            Suite::Precubic => precubic_size(oracle, n, workers, &mut report.failures)?,
            Suite::HzRecurrence | Suite::HzFormula => unreachable!("handled above"),
        };
        report.maps_per_size.push(visited);
    }
    Ok(report)
}

fn genus_counts(oracle: &Oracle, n: usize, workers: usize, keep: impl Fn(&UnicellularMap) -> bool + Sync) -> Result<(Vec<u64>, u64), OracleError> {
    let (parts, visited) = sharded(oracle, n, workers, || vec![0u64; n / 2 + 1], |acc, m| {
        if keep(m) {
            acc[m.genus()] += 1;
        }
    })?;
    let mut counts = vec![0u64; n / 2 + 1];
    for part in parts {
        for (c, p) in counts.iter_mut().zip(part) {
            *c += p;
        }
    }
    Ok((counts, visited))
}

fn census_size(oracle: &Oracle, n: usize, workers: usize, failures: &mut Vec<String>) -> Result<u64, OracleError> {
    let (counts, visited) = genus_counts(oracle, n, workers, |_| true)?;
    let (g_n, n_u) = (n as u32, n as u64);
    for g in 0..=g_n / 2 {
        let found = BigInt::from(counts[g as usize]);
        let routes = [
            ("identity", epsilon_identity(g, n_u)),
            ("walsh", epsilon_walsh(g, n_u)),
            ("polynomial", epsilon_via_r(g, n_u)),
        ];
        for (route, value) in routes {
            if value != found {
                failures.push(format!("g={g} n={n}: oracle {found}, {route} {value}"));
            }
        }
    }
    if BigInt::from(visited) != pairings(n_u) {
        failures.push(format!("n={n}: visited {visited} maps, expected {}", pairings(n_u)));
    }
    Ok(visited)
}

fn trisection_size(oracle: &Oracle, n: usize, workers: usize, failures: &mut Vec<String>) -> Result<u64, OracleError> {
    let (parts, visited) = sharded(oracle, n, workers, TrisectionCensus::default, |acc, m| {
        check_trisections(m, acc)
    })?;
    let mut merged = TrisectionCensus::default();
    for part in parts {
        merged.merge(part);
    }
    for (m, violation) in merged.violations {
        failures.push(format!("{} {violation:?}", serialize_canonical(&m)));
    }
    Ok(visited)
}

// serialization, and Λ/Ξ both ways, on one map
fn roundtrip_map(m: &UnicellularMap, out: &mut Vec<String>) {
    let line = serialize(m);
    if parse_map(&line).as_ref() != Ok(m) {
        out.push(format!("{line} serialization"));
    }
    if parse_map(&serialize_canonical(m)).as_ref() != Ok(&m.canonicalize()) {
        out.push(format!("{line} canonical serialization"));
    }
    for tau in trisections(m) {
        let mt = MarkedTrisection::new(m.clone(), tau).expect("listed trisection");
        let ok = xi(&mt).and_then(|mv| lambda(&mv)).is_ok_and(|back| back == mt);
        if !ok {
            out.push(format!("{line} lambda(xi(tau={tau}))"));
        }
    }
    let mins = m.vertex_mins();
    for k in (3..=mins.len()).step_by(2) {
        for marks in mins.iter().copied().combinations(k) {
            let mv = MarkedVertices::new(m.clone(), &marks).expect("distinct vertices");
            let ok = lambda(&mv).and_then(|mt| xi(&mt)).is_ok_and(|back| back == mv);
            if !ok {
                out.push(format!("{line} xi(lambda(marks={}))", marks.iter().join(",")));
            }
        }
    }
}

fn roundtrip_size(oracle: &Oracle, n: usize, workers: usize, failures: &mut Vec<String>) -> Result<u64, OracleError> {
    let (parts, visited) = sharded(oracle, n, workers, Vec::new, |acc, m| roundtrip_map(m, acc))?;
    failures.extend(parts.into_iter().flatten());
    Ok(visited)
}

fn bipartite_size(oracle: &Oracle, n: usize, workers: usize, failures: &mut Vec<String>) -> Result<u64, OracleError> {
    let (parts, visited) = sharded(oracle, n, workers, BTreeMap::new, |acc, m| {
        if let Some((white, black)) = oracle::bipartition(m) {
            *acc.entry((m.genus(), white, black)).or_insert(0u64) += 1;
        }
    })?;
    let mut counts: BTreeMap<(usize, usize, usize), u64> = BTreeMap::new();
    for part in parts {
        for (key, c) in part {
            *counts.entry(key).or_insert(0) += c;
        }
    }
    // every (g, i, j) with i + j + 2g − 1 = n, populated or not
    for g in 0..=n / 2 {
        for i in 1..=n + 1 - 2 * g {
            let Some(j) = (n + 1).checked_sub(2 * g + i).filter(|&j| j >= 1) else {
                continue;
            };
            let found = counts.get(&(g, i, j)).copied().unwrap_or(0);
            let predicted = beta_bipartite(g as u32, i as u64, j as u64);
            if predicted != BigInt::from(found) {
                failures.push(format!("g={g} i={i} j={j}: oracle {found}, recursion {predicted}"));
            }
        }
    }
    for (&(g, i, j), &c) in &counts {
        if i + j + 2 * g != n + 1 {
            failures.push(format!("g={g} i={i} j={j}: {c} maps with the wrong edge count"));
        }
    }
    Ok(visited)
}

fn precubic_size(oracle: &Oracle, n: usize, workers: usize, failures: &mut Vec<String>) -> Result<u64, OracleError> {
    let (counts, visited) = genus_counts(oracle, n, workers, oracle::is_precubic)?;
    for (g, &found) in counts.iter().enumerate() {
        let predicted = xi_precubic(g as u32, n as u64);
        if predicted != BigInt::from(found) {
            failures.push(format!("g={g} n={n}: oracle {found}, formula {predicted}"));
        }
    }
    Ok(visited)
}
