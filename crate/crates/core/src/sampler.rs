//! Exact uniform sampling of rooted unicellular maps of given genus and size.
//!
//! A genus `g` map with a distinguished trisection is the image under
//! [`lambda`] of a unique genus `p < g` map with `2g − 2p + 1` marked vertices.
//! Drawing `p` with weight `C(n+1−2p, 2g−2p+1)·ε_p(n)`, a uniform genus `p`
//! map and a uniform vertex subset therefore gives a uniform marked map, and
//! forgetting the mark gives a uniform map since every genus `g` map has
//! exactly `2g` trisections.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, RandBigInt};
use num_traits::Zero;
use rand::seq::{index, SliceRandom};
use rand::Rng;

use crate::count::{binomial, epsilon_identity_table};
use crate::map::UnicellularMap;
use crate::perm::Permutation;
use crate::surgery::{lambda, MarkedTrisection, MarkedVertices};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleError {
    NoEdges,
    /// `n + 1 − 2g < 1`: no map of this genus has `n` edges.
    GenusTooLarge { genus: usize, edges: usize },
    /// Genus 0 maps have no trisection to mark.
    NoTrisection,
}

impl fmt::Display for SampleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SampleError::NoEdges => f.write_str("edge count must be positive"),
            SampleError::GenusTooLarge { .. } => f.write_str("genus too large for edge count"),
            SampleError::NoTrisection => f.write_str("plane trees have no trisection"),
        }
    }
}

impl core::error::Error for SampleError {}

fn check(g: usize, n: usize) -> Result<(), SampleError> {
    if n == 0 {
        return Err(SampleError::NoEdges);
    }
    if n + 1 < 2 * g + 1 {
        return Err(SampleError::GenusTooLarge { genus: g, edges: n });
    }
    Ok(())
}

/// Uniform rooted plane tree with `n` edges, in canonical form.
///
/// A uniform arrangement of `n` up-steps and `n + 1` down-steps has exactly
/// one cyclic shift that is a Dyck path followed by a down-step (cycle
/// lemma); matching its steps gives a uniform non-crossing pairing.
pub fn sample_plane_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<UnicellularMap, SampleError> {
    check(0, n)?;
    let mut steps: Vec<i32> = core::iter::repeat_n(1, n).chain(core::iter::repeat_n(-1, n + 1)).collect();
    steps.shuffle(rng);
    // start right after the first position where the prefix sum is minimal
    let mut height = 0;
    let mut lowest = 0;
    let mut start = 0;
    for (i, &s) in steps.iter().enumerate() {
        height += s;
        if height < lowest {
            lowest = height;
            start = i + 1;
        }
    }
    let mut images = alloc::vec![0; 2 * n];
    let mut open = Vec::with_capacity(n);
    for pos in 0..2 * n {
        if steps[(start + pos) % steps.len()] == 1 {
            open.push(pos);
        } else {
            let partner = open.pop().expect("Dyck path never dips below zero");
            images[pos] = partner;
            images[partner] = pos;
        }
    }
    let alpha = Permutation::from_images_unchecked(images);
    Ok(UnicellularMap::from_pairing(alpha).expect("non-crossing pairing"))
}

/// Uniform map of genus `g` with `n` edges and a uniform trisection, in canonical form.
pub fn sample_marked<R: Rng + ?Sized>(g: usize, n: usize, rng: &mut R) -> Result<MarkedTrisection, SampleError> {
    check(g, n)?;
    if g == 0 {
        return Err(SampleError::NoTrisection);
    }
    let eps = epsilon_identity_table(g as u32, n as u64);
    let weights: Vec<BigInt> = (0..g)
        .map(|p| binomial((n + 1 - 2 * p) as i64, (2 * g - 2 * p + 1) as i64) * &eps[p])
        .collect();
    let total: BigInt = weights.iter().sum();
    debug_assert_eq!(total, &eps[g] * (2 * g));
    let mut draw = rng.gen_bigint_range(&BigInt::zero(), &total);
    let p = weights
        .iter()
        .position(|w| {
            if draw < *w {
                true
            } else {
                draw -= w;
                false
            }
        })
        .expect("draw below the total weight");

    let base = sample_map(p, n, rng)?;
    let mins = base.vertex_mins();
    let k = 2 * (g - p) + 1;
    let marks: Vec<usize> = index::sample(rng, mins.len(), k).into_iter().map(|i| mins[i]).collect();
    let mv = MarkedVertices::new(base, &marks).expect("distinct vertex minima");
    let mt = lambda(&mv).expect("any odd set of at least three vertices can be glued");
    let tau = mt.map().rank(mt.tau());
    let canonical = mt.map().canonicalize();
    Ok(MarkedTrisection::new(canonical, tau).expect("relabelling keeps trisections"))
}

/// Uniform map of genus `g` with `n` edges, in canonical form.
pub fn sample_map<R: Rng + ?Sized>(g: usize, n: usize, rng: &mut R) -> Result<UnicellularMap, SampleError> {
    if g == 0 {
        return sample_plane_tree(n, rng);
    }
    Ok(sample_marked(g, n, rng)?.into_map())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeMap;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn single_edge_tree() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..10 {
            let t = sample_plane_tree(1, &mut rng).unwrap();
            assert_eq!(t.alpha().images(), &[1, 0]);
        }
    }

    #[test]
    fn unique_torus() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut taus = BTreeMap::new();
        for _ in 0..200 {
            let mt = sample_marked(1, 2, &mut rng).unwrap();
            assert_eq!(mt.map().alpha().images(), &[2, 3, 0, 1]);
            *taus.entry(mt.tau()).or_insert(0) += 1;
        }
        assert_eq!(taus.keys().copied().collect::<Vec<_>>(), alloc::vec![2, 3]);
    }

    #[test]
    fn all_plane_trees_reached() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut seen = BTreeMap::new();
        for _ in 0..500 {
            let t = sample_plane_tree(3, &mut rng).unwrap();
            assert_eq!(t.genus(), 0);
            *seen.entry(t.alpha().images().to_vec()).or_insert(0) += 1;
        }
        assert_eq!(seen.len(), 5);
    }

    #[test]
    fn requested_genus() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (g, n) in [(1, 5), (2, 6), (3, 7), (2, 9)] {
            let m = sample_map(g, n, &mut rng).unwrap();
            assert_eq!((m.genus(), m.edge_count()), (g, n));
            assert!(m.is_canonical());
        }
    }

    #[test]
    fn errors() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert_eq!(
            sample_map(3, 2, &mut rng),
            Err(SampleError::GenusTooLarge { genus: 3, edges: 2 })
        );
        assert_eq!(sample_map(0, 0, &mut rng), Err(SampleError::NoEdges));
        assert_eq!(sample_marked(0, 3, &mut rng).unwrap_err(), SampleError::NoTrisection);
    }
}
