use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use unicell_core::sampler::{sample_map, sample_marked};
use unicell_core::surgery::{glue3, slice3};
use unicell_core::trisect::{down_step_count, step_kind, trisection_frame, trisections};
use unicell_core::{Permutation, StepKind, UnicellularMap};

/// A canonical map from a shuffled pairing, then relabelled and re-rooted.
fn arb_map(max_edges: usize) -> impl Strategy<Value = UnicellularMap> {
    (1..=max_edges)
        .prop_flat_map(|n| {
            let points: Vec<usize> = (0..2 * n).collect();
            (
                Just(points.clone()).prop_shuffle(),
                Just(points).prop_shuffle(),
                0..2 * n,
            )
        })
        .prop_map(|(pairing, relabel, root)| {
            let mut images = vec![0; pairing.len()];
            for pair in pairing.chunks(2) {
                images[pair[0]] = pair[1];
                images[pair[1]] = pair[0];
            }
            let canonical = UnicellularMap::from_pairing(Permutation::from_images(images).unwrap()).unwrap();
            let alpha = canonical.alpha().relabel(&relabel);
            let sigma = canonical.sigma().relabel(&relabel);
            let m = UnicellularMap::new(canonical.edge_count(), alpha, sigma, relabel[0]).unwrap();
            // rerooting along the face keeps the same unrooted map
            let face = m.face();
            let mut r = m.root();
            for _ in 0..root {
                r = face.apply(r);
            }
            UnicellularMap::new(m.edge_count(), m.alpha().clone(), m.sigma().clone(), r).unwrap()
        })
}

fn degrees(m: &UnicellularMap) -> Vec<usize> {
    let mut d: Vec<usize> = m.vertex_mins().into_iter().map(|v| m.degree(v)).collect();
    d.sort_unstable();
    d
}

proptest! {
    #[test]
    fn canonical_form_is_stable(m in arb_map(9)) {
        let c = m.canonicalize();
        prop_assert!(c.is_canonical());
        prop_assert_eq!(c.canonicalize(), c.clone());
        prop_assert_eq!(c.genus(), m.genus());
        prop_assert_eq!(degrees(&c), degrees(&m));
        prop_assert_eq!(trisections(&c).len(), trisections(&m).len());
    }

    #[test]
    fn step_counts(m in arb_map(9)) {
        let g = m.genus();
        prop_assert_eq!(trisections(&m).len(), 2 * g);
        prop_assert_eq!(down_step_count(&m), m.edge_count() + 1);
        let up = (0..m.half_edge_count()).filter(|&h| step_kind(&m, h) == StepKind::UpStep).count();
        prop_assert_eq!(down_step_count(&m) - up, 2);
    }

    #[test]
    fn frames_are_ordered(m in arb_map(9)) {
        for tau in trisections(&m) {
            let f = trisection_frame(&m, tau).unwrap();
            prop_assert_eq!(m.sigma().apply(tau), f.b3);
            prop_assert_eq!(m.vertex_min(tau), f.b1);
            prop_assert!(m.rank(f.b1) < m.rank(f.b3) && m.rank(f.b3) < m.rank(f.b2));
        }
    }

    #[test]
    fn gluing_keeps_the_tour_before_the_first_mark(m in arb_map(9), picks in prop::collection::vec(any::<prop::sample::Index>(), 3)) {
        let mins = m.vertex_mins();
        if mins.len() < 3 {
            return Ok(());
        }
        let start = picks[0].index(mins.len());
        let mut chosen: Vec<usize> = (0..3)
            .map(|i| {
                let vertex = m.vertex_of(mins[(start + i) % mins.len()]);
                vertex[picks[i].index(vertex.len())]
            })
            .collect();
        chosen.sort_by_key(|&h| m.rank(h));
        let glued = glue3(&m, chosen[0], chosen[1], chosen[2]).unwrap();
        prop_assert_eq!(glued.genus(), m.genus() + 1);
        for &w in &m.tour_rank().tour()[..=m.rank(chosen[0])] {
            prop_assert_eq!(glued.rank(w), m.rank(w));
        }
        prop_assert_eq!(slice3(&glued, chosen[0], chosen[1], chosen[2]).unwrap(), m);
    }

    #[test]
    fn samples_are_valid_and_reproducible(seed in any::<u64>(), n in 1usize..12, g in 0usize..4) {
        prop_assume!(2 * g <= n);
        let a = sample_map(g, n, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        let b = sample_map(g, n, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        prop_assert_eq!((a.genus(), a.edge_count()), (g, n));
        prop_assert_eq!(a, b);
        if g > 0 {
            let mt = sample_marked(g, n, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
            prop_assert!(trisections(mt.map()).contains(&mt.tau()));
        }
    }
}
