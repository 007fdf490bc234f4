//! Rooted unicellular maps as permutation triples.
//!
//! A map of size `n` lives on the half-edges `0..2n`. `alpha` pairs the two
//! sides of each edge, `sigma` lists the half-edges around each vertex in
//! counterclockwise order, and the face is `gamma = alpha ∘ sigma`
//! (apply `sigma` first). The map is unicellular when `gamma` is a single
//! cycle; the tour of that cycle starting at the root gives the total order
//! on half-edges used by every other module.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MapError {
    /// A map needs at least one edge.
    Empty,
    LengthMismatch { expected: usize, found: usize },
    RootOutOfRange { root: usize, half_edges: usize },
    NotBijection,
    /// `alpha` has a fixed point or is not self-inverse.
    NotInvolution,
    /// `alpha ∘ sigma` has more than one cycle.
    MultiFace { faces: usize },
    HalfEdgeOutOfRange { half_edge: usize, half_edges: usize },
}

impl fmt::Display for MapError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapError::Empty => write!(f, "a map needs at least one edge"),
            MapError::LengthMismatch { expected, found } => {
                write!(f, "expected {expected} half-edges, found {found}")
            }
            MapError::RootOutOfRange { root, half_edges } => {
                write!(f, "root {root} out of range for {half_edges} half-edges")
            }
            MapError::NotBijection => write!(f, "not a permutation"),
            MapError::NotInvolution => write!(f, "alpha is not a fixed-point-free involution"),
            MapError::MultiFace { faces } => {
                write!(f, "alpha∘sigma has {faces} cycles, expected a single face")
            }
            MapError::HalfEdgeOutOfRange { half_edge, half_edges } => {
                write!(f, "half-edge {half_edge} out of range for {half_edges} half-edges")
            }
        }
    }
}

impl core::error::Error for MapError {}

/// Position of every half-edge along the face tour, starting from the root.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TourRank {
    rank: Vec<usize>,
    tour: Vec<usize>,
}

impl TourRank {
    fn from_face(face: &Permutation, root: usize) -> Result<Self, MapError> {
        let len = face.len();
        let mut rank = vec![usize::MAX; len];
        let mut tour = Vec::with_capacity(len);
        let mut h = root;
        loop {
            rank[h] = tour.len();
            tour.push(h);
            h = face.apply(h);
            if h == root {
                break;
            }
        }
        if tour.len() != len {
            return Err(MapError::MultiFace {
                faces: face.cycle_count(),
            });
        }
        Ok(Self { rank, tour })
    }

    #[inline]
    pub fn rank(&self, h: usize) -> usize {
        self.rank[h]
    }

    /// The half-edge visited at position `pos` of the tour.
    #[inline]
    pub fn at(&self, pos: usize) -> usize {
        self.tour[pos]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.rank
    }

    /// Half-edges in tour order.
    pub fn tour(&self) -> &[usize] {
        &self.tour
    }
}

/// A validated rooted unicellular map.
///
/// Immutable once built. Equality is equality of the labelled triples; use
/// [`UnicellularMap::canonicalize`] to compare rooted maps up to relabelling.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UnicellularMap {
    alpha: Permutation,
    sigma: Permutation,
    root: usize,
    order: TourRank,
    // half-edge -> rank-minimal half-edge of its vertex
    vertex_min: Vec<usize>,
    vertex_count: usize,
}

impl UnicellularMap {
    /// Validates `(alpha, sigma, root)` as a rooted unicellular map with `n` edges.
    pub fn new(n: usize, alpha: Permutation, sigma: Permutation, root: usize) -> Result<Self, MapError> {
        if n == 0 {
            return Err(MapError::Empty);
        }
        let half_edges = 2 * n;
        for len in [alpha.len(), sigma.len()] {
            if len != half_edges {
                return Err(MapError::LengthMismatch {
                    expected: half_edges,
                    found: len,
                });
            }
        }
        if root >= half_edges {
            return Err(MapError::RootOutOfRange { root, half_edges });
        }
        if !alpha.is_fixed_point_free_involution() {
            return Err(MapError::NotInvolution);
        }
        Self::assemble(alpha, sigma, root)
    }

    /// Builds the map whose face is the canonical tour `(0, 1, …, 2n−1)` rooted
    /// at 0, i.e. the polygon gluing described by the pairing `alpha`.
    pub fn from_pairing(alpha: Permutation) -> Result<Self, MapError> {
        let half_edges = alpha.len();
        if half_edges == 0 || half_edges % 2 == 1 {
            return Err(MapError::Empty);
        }
        if !alpha.is_fixed_point_free_involution() {
            return Err(MapError::NotInvolution);
        }
        // sigma = alpha ∘ gamma, gamma(h) = h + 1
        let sigma = Permutation::from_images_unchecked(
            (0..half_edges).map(|h| alpha.apply((h + 1) % half_edges)).collect(),
        );
        let order = TourRank {
            rank: (0..half_edges).collect(),
            tour: (0..half_edges).collect(),
        };
        Ok(Self::with_order(alpha, sigma, 0, order))
    }

    // alpha is known to be a fixed-point-free involution of the right size
    pub(crate) fn assemble(alpha: Permutation, sigma: Permutation, root: usize) -> Result<Self, MapError> {
        let face = alpha.after(&sigma);
        let order = TourRank::from_face(&face, root)?;
        Ok(Self::with_order(alpha, sigma, root, order))
    }

    fn with_order(alpha: Permutation, sigma: Permutation, root: usize, order: TourRank) -> Self {
        let half_edges = alpha.len();
        let mut vertex_min = vec![usize::MAX; half_edges];
        let mut vertex_count = 0;
        // Walking the tour in order, the first unseen half-edge of a vertex is its minimum.
        for &start in order.tour() {
            if vertex_min[start] != usize::MAX {
                continue;
            }
            vertex_count += 1;
            let mut h = start;
            loop {
                vertex_min[h] = start;
                h = sigma.apply(h);
                if h == start {
                    break;
                }
            }
        }
        debug_assert!(vertex_count <= half_edges / 2 + 1);
        debug_assert_eq!((half_edges / 2 + 1 - vertex_count) % 2, 0);
        Self {
            alpha,
            sigma,
            root,
            order,
            vertex_min,
            vertex_count,
        }
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.alpha.len() / 2
    }

    #[inline]
    pub fn half_edge_count(&self) -> usize {
        self.alpha.len()
    }

    pub fn alpha(&self) -> &Permutation {
        &self.alpha
    }

    pub fn sigma(&self) -> &Permutation {
        &self.sigma
    }

    #[inline]
    pub fn root(&self) -> usize {
        self.root
    }

    /// The face permutation `alpha ∘ sigma`.
    pub fn face(&self) -> Permutation {
        self.alpha.after(&self.sigma)
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// `(n + 1 − v) / 2`.
    #[inline]
    pub fn genus(&self) -> usize {
        (self.edge_count() + 1 - self.vertex_count) / 2
    }

    pub fn tour_rank(&self) -> &TourRank {
        &self.order
    }

    #[inline]
    pub fn rank(&self, h: usize) -> usize {
        self.order.rank(h)
    }

    pub fn check_half_edge(&self, h: usize) -> Result<(), MapError> {
        if h < self.half_edge_count() {
            Ok(())
        } else {
            Err(MapError::HalfEdgeOutOfRange {
                half_edge: h,
                half_edges: self.half_edge_count(),
            })
        }
    }

    /// The minimal half-edge (in tour order) of the vertex containing `h`.
    /// Vertices are named by this half-edge throughout the crate.
    #[inline]
    pub fn vertex_min(&self, h: usize) -> usize {
        self.vertex_min[h]
    }

    #[inline]
    pub fn same_vertex(&self, a: usize, b: usize) -> bool {
        self.vertex_min[a] == self.vertex_min[b]
    }

    /// The rotation of the vertex containing `h`, starting at its minimum.
    pub fn vertex_of(&self, h: usize) -> Vec<usize> {
        self.sigma.cycle_from(self.vertex_min[h])
    }

    pub fn degree(&self, h: usize) -> usize {
        self.sigma.cycle_from(h).len()
    }

    /// Minimal half-edges of all vertices, in tour order.
    pub fn vertex_mins(&self) -> Vec<usize> {
        self.order
            .tour()
            .iter()
            .copied()
            .filter(|&h| self.vertex_min[h] == h)
            .collect()
    }

    /// Relabels half-edges by tour rank: the root becomes 0 and the face
    /// becomes `(0, 1, …, 2n−1)`.
    pub fn canonicalize(&self) -> UnicellularMap {
        let alpha = self.alpha.relabel(self.order.ranks());
        Self::from_pairing(alpha).expect("relabelling preserves the involution")
    }

    pub fn is_canonical(&self) -> bool {
        self.root == 0 && self.order.tour().iter().enumerate().all(|(i, &h)| i == h)
    }

    /// Pairs `(i, alpha(i))` with `i < alpha(i)`, ordered by `i`.
    pub fn edge_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.half_edge_count())
            .filter_map(|h| {
                let partner = self.alpha.apply(h);
                (h < partner).then_some((h, partner))
            })
            .collect()
    }
}

impl fmt::Debug for UnicellularMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("UnicellularMap")
            .field("n", &self.edge_count())
            .field("root", &self.root)
            .field("alpha", &self.alpha)
            .field("sigma", &self.sigma)
            .finish()
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    pub fn alpha2() -> Permutation {
        Permutation::from_images(vec![1, 0, 3, 2]).unwrap()
    }

    /// alpha=(0 1)(2 3), sigma=(0)(2)(1 3): a path with three vertices.
    pub fn path_tree() -> UnicellularMap {
        let sigma = Permutation::from_cycles(4, &[vec![1, 3]]).unwrap();
        UnicellularMap::new(2, alpha2(), sigma, 0).unwrap()
    }

    /// alpha=(0 1)(2 3), sigma=(0 2)(1)(3).
    pub fn star_tree() -> UnicellularMap {
        let sigma = Permutation::from_cycles(4, &[vec![0, 2]]).unwrap();
        UnicellularMap::new(2, alpha2(), sigma, 0).unwrap()
    }

    /// alpha=(0 1)(2 3), sigma=(0 3 1 2): the genus-one map with two edges.
    pub fn torus2() -> UnicellularMap {
        let sigma = Permutation::from_cycles(4, &[vec![0, 3, 1, 2]]).unwrap();
        UnicellularMap::new(2, alpha2(), sigma, 0).unwrap()
    }
}
