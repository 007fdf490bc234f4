//! Exhaustive enumeration of rooted unicellular maps with few edges.
//!
//! With the face fixed to `(0, 1, …, 2n−1)` and the root at 0, rooted maps are
//! exactly the fixed-point-free involutions `alpha` on `2n` points, so each map
//! is visited once and no isomorphism test is needed. The `(2n−1)!!` pairings
//! split into `2n−1` shards by the partner of half-edge 0.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use itertools::Itertools;
use num_bigint::BigInt;

use crate::count::GenusCensus;
use crate::map::UnicellularMap;
use crate::perm::Permutation;
use crate::surgery::{slice3, MarkedTrisection, MarkedVertices, PsiInput};
use crate::trisect::{down_step_count, trisection_frame, trisections, TrisectionKind};

/// Largest edge count enumerated without opting in: `15!! = 2 027 025` maps.
pub const DEFAULT_MAX_EDGES: usize = 8;
/// Largest edge count accepted at all: `17!! = 34 459 425` maps.
pub const EXTENDED_MAX_EDGES: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleError {
    NoEdges,
    SizeBound { edges: usize, bound: usize },
    ShardOutOfRange { shard: usize, shards: usize },
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::NoEdges => f.write_str("enumeration needs at least one edge"),
            OracleError::SizeBound { edges, bound } => {
                write!(f, "{edges} edges exceeds the enumeration bound of {bound}")
            }
            OracleError::ShardOutOfRange { shard, shards } => {
                write!(f, "shard {shard} out of range, there are {shards}")
            }
        }
    }
}

impl core::error::Error for OracleError {}

/// Size limit for exhaustive runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Oracle {
    max_edges: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Self {
            max_edges: DEFAULT_MAX_EDGES,
        }
    }
}

impl Oracle {
    /// Accepts up to [`EXTENDED_MAX_EDGES`].
    pub fn extended() -> Self {
        Self {
            max_edges: EXTENDED_MAX_EDGES,
        }
    }

    /// Bound clamped to [`EXTENDED_MAX_EDGES`].
    pub fn with_max_edges(max_edges: usize) -> Self {
        Self {
            max_edges: max_edges.min(EXTENDED_MAX_EDGES),
        }
    }

    pub fn max_edges(&self) -> usize {
        self.max_edges
    }

    pub fn check(&self, n: usize) -> Result<(), OracleError> {
        if n == 0 {
            Err(OracleError::NoEdges)
        } else if n > self.max_edges {
            Err(OracleError::SizeBound {
                edges: n,
                bound: self.max_edges,
            })
        } else {
            Ok(())
        }
    }

    /// Visits every rooted map with `n` edges; returns the number visited.
    pub fn enumerate_maps(&self, n: usize, mut visit: impl FnMut(&UnicellularMap)) -> Result<u64, OracleError> {
        self.check(n)?;
        let mut count = 0;
        for shard in 0..shard_count(n) {
            count += enumerate_shard_unchecked(n, shard, &mut visit);
        }
        Ok(count)
    }

    /// Visits the maps in which half-edge 0 is paired with `shard + 1`.
    pub fn enumerate_shard(
        &self,
        n: usize,
        shard: usize,
        mut visit: impl FnMut(&UnicellularMap),
    ) -> Result<u64, OracleError> {
        self.check(n)?;
        let shards = shard_count(n);
        if shard >= shards {
            return Err(OracleError::ShardOutOfRange { shard, shards });
        }
        Ok(enumerate_shard_unchecked(n, shard, &mut visit))
    }
}

/// `2n − 1`, one shard per partner of half-edge 0.
pub fn shard_count(n: usize) -> usize {
    2 * n - 1
}

/// [`Oracle::enumerate_maps`] with the default bound.
pub fn enumerate_maps(n: usize, visit: impl FnMut(&UnicellularMap)) -> Result<u64, OracleError> {
    Oracle::default().enumerate_maps(n, visit)
}

const UNPAIRED: usize = usize::MAX;

fn enumerate_shard_unchecked(n: usize, shard: usize, visit: &mut impl FnMut(&UnicellularMap)) -> u64 {
    let mut images = vec![UNPAIRED; 2 * n];
    images[0] = shard + 1;
    images[shard + 1] = 0;
    complete(&mut images, 1, visit)
}

// pairs the smallest unpaired half-edge at or after `from` with each larger free one
fn complete(images: &mut [usize], from: usize, visit: &mut impl FnMut(&UnicellularMap)) -> u64 {
    let Some(first) = (from..images.len()).find(|&h| images[h] == UNPAIRED) else {
        let alpha = Permutation::from_images_unchecked(images.to_vec());
        let map = UnicellularMap::from_pairing(alpha).expect("complete pairing");
        visit(&map);
        return 1;
    };
    let mut count = 0;
    for partner in first + 1..images.len() {
        if images[partner] != UNPAIRED {
            continue;
        }
        images[first] = partner;
        images[partner] = first;
        count += complete(images, first + 1, visit);
        images[first] = UNPAIRED;
        images[partner] = UNPAIRED;
    }
    count
}

fn genus_census(n: usize, counts: &[u64]) -> GenusCensus {
    GenusCensus::from_counts(n as u64, counts.iter().map(|&c| BigInt::from(c)).collect())
}

/// Maps with `n` edges counted by genus.
pub fn census(oracle: &Oracle, n: usize) -> Result<GenusCensus, OracleError> {
    let mut counts = vec![0u64; n / 2 + 1];
    oracle.enumerate_maps(n, |m| counts[m.genus()] += 1)?;
    Ok(genus_census(n, &counts))
}

/// [`census`] restricted to one shard; shard censuses add up to the full one.
pub fn census_shard(oracle: &Oracle, n: usize, shard: usize) -> Result<GenusCensus, OracleError> {
    let mut counts = vec![0u64; n / 2 + 1];
    oracle.enumerate_shard(n, shard, |m| counts[m.genus()] += 1)?;
    Ok(genus_census(n, &counts))
}

/// Vertex colours when `m` is bipartite with the root vertex white: `(white, black)`.
pub fn bipartition(m: &UnicellularMap) -> Option<(usize, usize)> {
    const UNSEEN: u8 = 2;
    let mut colour = vec![UNSEEN; m.half_edge_count()];
    let root = m.vertex_min(m.root());
    colour[root] = 0;
    let mut stack = vec![root];
    let (mut white, mut black) = (1, 0);
    while let Some(v) = stack.pop() {
        for h in m.vertex_of(v) {
            let w = m.vertex_min(m.alpha().apply(h));
            if colour[w] == UNSEEN {
                colour[w] = 1 - colour[v];
                if colour[w] == 0 {
                    white += 1;
                } else {
                    black += 1;
                }
                stack.push(w);
            } else if colour[w] == colour[v] {
                return None;
            }
        }
    }
    Some((white, black))
}

/// Bipartite maps with `n` edges, keyed by `(genus, white, black)`.
pub fn bipartite_census(oracle: &Oracle, n: usize) -> Result<BTreeMap<(usize, usize, usize), u64>, OracleError> {
    let mut counts = BTreeMap::new();
    oracle.enumerate_maps(n, |m| {
        if let Some((white, black)) = bipartition(m) {
            *counts.entry((m.genus(), white, black)).or_insert(0) += 1;
        }
    })?;
    Ok(counts)
}

/// Every vertex has degree 1 or 3.
pub fn is_precubic(m: &UnicellularMap) -> bool {
    m.vertex_mins().into_iter().all(|v| matches!(m.degree(v), 1 | 3))
}

/// Precubic maps with `n` edges counted by genus.
pub fn precubic_census(oracle: &Oracle, n: usize) -> Result<GenusCensus, OracleError> {
    let mut counts = vec![0u64; n / 2 + 1];
    oracle.enumerate_maps(n, |m| {
        if is_precubic(m) {
            counts[m.genus()] += 1;
        }
    })?;
    Ok(genus_census(n, &counts))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Violation {
    /// Trisection count differs from twice the genus.
    TrisectionCount { found: usize },
    /// Down-step count differs from `n + 1`.
    DownStepCount { found: usize },
    /// A type II trisection in a genus 1 map.
    TypeIIAtGenusOne { tau: usize },
    /// The frame could not be computed.
    Frame { tau: usize },
    /// Slicing at the frame disagrees with the type.
    KindMismatch { tau: usize },
}

/// Trisection statistics over all maps with `n` edges.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TrisectionCensus {
    pub maps: u64,
    /// `(type I, type II)` counts indexed by genus.
    pub by_genus: Vec<(u64, u64)>,
    pub violations: Vec<(UnicellularMap, Violation)>,
}

impl TrisectionCensus {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn merge(&mut self, other: TrisectionCensus) {
        self.maps += other.maps;
        if self.by_genus.len() < other.by_genus.len() {
            self.by_genus.resize(other.by_genus.len(), (0, 0));
        }
        for (mine, theirs) in self.by_genus.iter_mut().zip(other.by_genus) {
            mine.0 += theirs.0;
            mine.1 += theirs.1;
        }
        self.violations.extend(other.violations);
    }
}

/// Checks one map: trisection and down-step counts, genus 1 type, and
/// agreement of each type with what slicing at its frame produces.
pub fn check_trisections(m: &UnicellularMap, out: &mut TrisectionCensus) {
    let g = m.genus();
    if out.by_genus.len() <= g {
        out.by_genus.resize(g + 1, (0, 0));
    }
    out.maps += 1;
    let tris = trisections(m);
    if tris.len() != 2 * g {
        out.violations.push((m.clone(), Violation::TrisectionCount { found: tris.len() }));
    }
    let down = down_step_count(m);
    if down != m.edge_count() + 1 {
        out.violations.push((m.clone(), Violation::DownStepCount { found: down }));
    }
    for tau in tris {
        let Ok(frame) = trisection_frame(m, tau) else {
            out.violations.push((m.clone(), Violation::Frame { tau }));
            continue;
        };
        match frame.kind {
            TrisectionKind::TypeI => out.by_genus[g].0 += 1,
            TrisectionKind::TypeII => {
                out.by_genus[g].1 += 1;
                if g == 1 {
                    out.violations.push((m.clone(), Violation::TypeIIAtGenusOne { tau }));
                }
            }
        }
        let agrees = match slice3(m, frame.b1, frame.b2, frame.b3) {
            Ok(sliced) => {
                let all_minimal = [frame.b1, frame.b2, frame.b3].iter().all(|&b| sliced.vertex_min(b) == b);
                let b3_minimal = sliced.vertex_min(frame.b3) == frame.b3;
                match frame.kind {
                    TrisectionKind::TypeI => all_minimal,
                    TrisectionKind::TypeII => !b3_minimal,
                }
            }
            Err(_) => false,
        };
        if !agrees {
            out.violations.push((m.clone(), Violation::KindMismatch { tau }));
        }
    }
}

pub fn trisection_census(oracle: &Oracle, n: usize) -> Result<TrisectionCensus, OracleError> {
    let mut out = TrisectionCensus::default();
    oracle.enumerate_maps(n, |m| check_trisections(m, &mut out))?;
    Ok(out)
}

pub fn trisection_census_shard(oracle: &Oracle, n: usize, shard: usize) -> Result<TrisectionCensus, OracleError> {
    let mut out = TrisectionCensus::default();
    oracle.enumerate_shard(n, shard, |m| check_trisections(m, &mut out))?;
    Ok(out)
}

/// Every canonical map of genus `g` with `n` edges.
pub fn maps_of_genus(oracle: &Oracle, g: usize, n: usize) -> Result<Vec<UnicellularMap>, OracleError> {
    let mut maps = Vec::new();
    oracle.enumerate_maps(n, |m| {
        if m.genus() == g {
            maps.push(m.clone());
        }
    })?;
    Ok(maps)
}

/// Genus `g` maps with `k` distinct marked vertices.
pub fn marked_vertex_domain(oracle: &Oracle, g: usize, n: usize, k: usize) -> Result<Vec<MarkedVertices>, OracleError> {
    let mut out = Vec::new();
    for m in maps_of_genus(oracle, g, n)? {
        for marks in m.vertex_mins().into_iter().combinations(k) {
            out.push(MarkedVertices::new(m.clone(), &marks).expect("distinct vertex minima"));
        }
    }
    Ok(out)
}

/// Genus `g` maps with two vertices and a trisection, ordered as [`PsiInput`] requires.
pub fn psi_domain(oracle: &Oracle, g: usize, n: usize) -> Result<Vec<PsiInput>, OracleError> {
    let mut out = Vec::new();
    for m in maps_of_genus(oracle, g, n)? {
        let mins = m.vertex_mins();
        for tau in trisections(&m) {
            let cap = m.rank(m.vertex_min(tau));
            let below: Vec<usize> = mins.iter().copied().filter(|&v| m.rank(v) < cap).collect();
            for pair in below.iter().combinations(2) {
                let input = PsiInput::new(m.clone(), *pair[0], *pair[1], tau).expect("ordered below V(tau)");
                out.push(input);
            }
        }
    }
    Ok(out)
}

/// Genus `g` maps with a distinguished trisection.
pub fn marked_trisections(oracle: &Oracle, g: usize, n: usize) -> Result<Vec<MarkedTrisection>, OracleError> {
    let mut out = Vec::new();
    for m in maps_of_genus(oracle, g, n)? {
        for tau in trisections(&m) {
            out.push(MarkedTrisection::new(m.clone(), tau).expect("listed trisection"));
        }
    }
    Ok(out)
}
