//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//!
//! Run with `cargo test -p unicell --test acceptance`.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use itertools::Itertools;
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{ChiSquared, ContinuousCDF};
use unicell::verify::{run_suite, Suite};
use unicell::{parse_map, serialize, serialize_canonical};
use unicell_core::count::{
    beta_bipartite, binomial, catalan, epsilon_identity, r_leading_ratio_error, r_polynomial_value, scheme_count,
    xi_precubic,
};
use unicell_core::oracle::{self, marked_trisections, marked_vertex_domain, psi_domain, Oracle};
use unicell_core::sampler::sample_map;
use unicell_core::surgery::{glue3, phi, phi_inv, psi, psi_inv, slice3};
use unicell_core::{ExactRational, Permutation, TrisectionKind, UnicellularMap};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn suite(suite: Suite, max_edges: usize, workers: usize) -> Result<String, String> {
    let report = run_suite(suite, max_edges, workers, &Oracle::default()).map_err(|e| e.to_string())?;
    if report.passed() {
        Ok(report.to_string())
    } else {
        Err(report.to_string())
    }
}

fn census_agreement() -> Outcome {
    let start = Instant::now();
    // single worker: the time limit is for a single-threaded run
    let line = suite(Suite::Census, 7, 1)?;
    let elapsed = start.elapsed();
    let four = oracle::census(&Oracle::default(), 4).map_err(|e| e.to_string())?;
    let expected: Vec<BigInt> = [14, 70, 21].map(BigInt::from).to_vec();
    ensure(four.counts == expected, || format!("n=4 census {:?}", four.counts))?;
    ensure(four.total() == BigInt::from(105), || "n=4 total is not 105".into())?;
    ensure(elapsed < Duration::from_secs(120), || format!("took {elapsed:?}"))?;
    Ok(format!("{line}; n=4 (14, 70, 21); {:.1}s single-threaded", elapsed.as_secs_f64()))
}

fn trisection_lemma() -> Outcome {
    suite(Suite::Trisection, 6, 4)
}

fn all_maps(n: usize) -> Vec<UnicellularMap> {
    let mut maps = Vec::new();
    oracle::enumerate_maps(n, |m| maps.push(m.clone())).expect("within bound");
    maps
}

fn bijection_round_trips() -> Outcome {
    let o = Oracle::default();
    let err = |e: &dyn std::fmt::Display| e.to_string();
    let mut checked = BTreeMap::new();
    for n in 1..=5 {
        for m in all_maps(n) {
            for t in m.tour_rank().tour().iter().copied().combinations(3) {
                if m.same_vertex(t[0], t[1]) || m.same_vertex(t[1], t[2]) || m.same_vertex(t[0], t[2]) {
                    continue;
                }
                let glued = glue3(&m, t[0], t[1], t[2]).map_err(|e| err(&e))?;
                let back = slice3(&glued, t[0], t[1], t[2]).map_err(|e| err(&e))?;
                ensure(back == m, || format!("slice3(glue3) differs on {} at {t:?}", serialize(&m)))?;
                *checked.entry("slice3∘glue3").or_insert(0) += 1;
            }
        }
        for g in 0..=n / 2 {
            for mv in marked_vertex_domain(&o, g, n, 3).map_err(|e| err(&e))? {
                let marks: [usize; 3] = mv.marks().try_into().expect("three marks");
                let mt = phi(mv.map(), marks).map_err(|e| err(&e))?;
                ensure(phi_inv(&mt).as_ref() == Ok(&mv), || format!("phi_inv(phi) differs on {}", serialize(mv.map())))?;
                *checked.entry("Φ⁻¹∘Φ").or_insert(0) += 1;
            }
            for input in psi_domain(&o, g, n).map_err(|e| err(&e))? {
                let mt = psi(&input).map_err(|e| err(&e))?;
                ensure(psi_inv(&mt).as_ref() == Ok(&input), || format!("psi_inv(psi) differs on {}", serialize(input.map())))?;
                *checked.entry("Ψ⁻¹∘Ψ").or_insert(0) += 1;
            }
        }
    }
    // Λ/Ξ both ways, plus serialization, on every map
    let line = suite(Suite::Roundtrip, 5, 4)?;
    let d2 = marked_trisections(&o, 2, 4).map_err(|e| err(&e))?;
    let type_i = d2.iter().filter(|mt| mt.kind() == TrisectionKind::TypeI).count();
    let type_ii = d2.len() - type_i;
    ensure((type_i, type_ii) == (70, 14), || format!("|D^I_2(4)|={type_i}, |D^II_2(4)|={type_ii}"))?;
    let counts = checked.iter().map(|(k, v)| format!("{k} {v}")).join(", ");
    Ok(format!("{counts}; {line}; |D^I_2(4)|=70, |D^II_2(4)|=14"))
}

fn identity_instances() -> Outcome {
    for n in 1..=12u64 {
        let lhs = epsilon_identity(1, n) * 2;
        let rhs = binomial(n as i64 + 1, 3) * catalan(n);
        ensure(lhs == rhs, || format!("2·ε_1({n}) = {lhs}, C(n+1,3)·Cat(n) = {rhs}"))?;
    }
    ensure(epsilon_identity(2, 4) * 4 == BigInt::from(84), || "4·ε_2(4) ≠ 84".into())?;
    ensure(epsilon_identity(2, 5) == BigInt::from(483), || "ε_2(5) ≠ 483".into())?;
    Ok("2·ε_1(n) = C(n+1,3)·Cat(n) for n ≤ 12; 4·ε_2(4) = 84; ε_2(5) = 483".into())
}

fn harer_zagier() -> Outcome {
    let a = suite(Suite::HzRecurrence, 12, 1)?;
    let b = suite(Suite::HzFormula, 12, 1)?;
    Ok(format!("{a}; {b}"))
}

fn r_properties() -> Outcome {
    for g in 1..=6u32 {
        for k in -1..=(2 * g as i64 - 1) {
            let value = r_polynomial_value(g, &BigInt::from(k));
            ensure(value == ExactRational::from_integer(BigInt::from(0)), || format!("R_{g}({k}) = {value}"))?;
        }
    }
    let mut worst: f64 = 0.0;
    for g in 1..=4 {
        let e = r_leading_ratio_error(g, 10_000);
        ensure(e < 0.05, || format!("g={g}: |ratio − 1| = {e}"))?;
        worst = worst.max(e);
    }
    Ok(format!("R_g(k)=0 for k=−1..2g−1, g ≤ 6; max |R_g(10^4)·12^g·g!/n^3g − 1| = {worst:.5} for g ≤ 4"))
}

fn bipartite() -> Outcome {
    let line = suite(Suite::Bipartite, 6, 4)?;
    let cell = oracle::bipartite_census(&Oracle::default(), 4).map_err(|e| e.to_string())?;
    let found = cell.get(&(1, 1, 2)).copied().unwrap_or(0);
    let predicted = beta_bipartite(1, 1, 2);
    ensure(BigInt::from(found) == predicted, || format!("(1,1,2): oracle {found}, recursion {predicted}"))?;
    Ok(format!(
        "{line}; cell (1,1,2): oracle {found} = recursion {predicted}, so S_1(1,2)·β_0(1,2) = 5/2 is not β_1(1,2)"
    ))
}

fn precubic() -> Outcome {
    let o = Oracle::default();
    for n in [3usize, 5, 7] {
        let c = oracle::precubic_census(&o, n).map_err(|e| e.to_string())?;
        for g in 0..=n / 2 {
            let formula = xi_precubic(g as u32, n as u64);
            ensure(c.get(g as u32) == formula, || format!("n={n} g={g}: oracle {}, formula {formula}", c.get(g as u32)))?;
        }
    }
    ensure(xi_precubic(1, 3) == BigInt::from(1) && xi_precubic(1, 5) == BigInt::from(10), || "ξ_1 values".into())?;
    ensure(scheme_count(1) == BigInt::from(1) && scheme_count(2) == BigInt::from(105), || "scheme counts".into())?;
    for g in 1..=4u32 {
        ensure(scheme_count(g) == xi_precubic(g, 6 * g as u64 - 3), || format!("scheme_count({g}) ≠ ξ_g(6g−3)"))?;
    }
    Ok("oracle = ξ_g(n) for n ∈ {3,5,7}; ξ_1(3)=1, ξ_1(5)=10; schemes 1, 105; scheme_count(g)=ξ_g(6g−3), g ≤ 4".into())
}

fn sampler_uniformity() -> Outcome {
    let start = Instant::now();
    let o = Oracle::default();
    let mut summary = Vec::new();
    for (g, n, seed) in [(1usize, 3usize, 1u64), (1, 4, 2), (2, 4, 3)] {
        let fiber: BTreeMap<Vec<usize>, usize> = oracle::maps_of_genus(&o, g, n)
            .map_err(|e| e.to_string())?
            .iter()
            .enumerate()
            .map(|(i, m)| (m.alpha().images().to_vec(), i))
            .collect();
        let samples = 1000 * fiber.len();
        let mut observed = vec![0u64; fiber.len()];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let m = sample_map(g, n, &mut rng).map_err(|e| e.to_string())?;
            ensure((m.genus(), m.edge_count()) == (g, n), || format!("sample {} has the wrong size", serialize(&m)))?;
            let &slot = fiber.get(m.alpha().images()).ok_or_else(|| format!("sample {} not in the fiber", serialize(&m)))?;
            observed[slot] += 1;
        }
        let expected = 1000.0;
        let stat: f64 = observed.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
        let dist = ChiSquared::new((fiber.len() - 1) as f64).map_err(|e| e.to_string())?;
        let p = dist.sf(stat);
        ensure(p > 0.001, || format!("(g,n)=({g},{n}): chi2={stat:.2}, p={p:.5}"))?;
        summary.push(format!("({g},{n}) {samples} samples p={p:.3}"));
    }
    let render = || {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        (0..200)
            .map(|_| serialize(&sample_map(2, 6, &mut rng).expect("valid size")))
            .join("\n")
    };
    ensure(render() == render(), || "fixed seed did not reproduce the same output".into())?;
    let via_cli = |_: ()| {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let args = ["unicell", "sample", "--genus", "2", "--edges", "5", "--count", "50", "--seed", "5"];
        let code = unicell::cli::run(args, &mut std::io::empty(), &mut out, &mut err);
        (code, out)
    };
    let (a, b) = (via_cli(()), via_cli(()));
    ensure(a.0 == 0 && a == b, || "CLI sampling is not byte-identical across runs".into())?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!("{}; reproducible; {:.1}s", summary.join(", "), elapsed.as_secs_f64()))
}

fn random_map(rng: &mut ChaCha8Rng) -> UnicellularMap {
    let n = rng.gen_range(1..=12);
    let mut points: Vec<usize> = (0..2 * n).collect();
    points.shuffle(rng);
    let mut images = vec![0; 2 * n];
    for pair in points.chunks(2) {
        images[pair[0]] = pair[1];
        images[pair[1]] = pair[0];
    }
    let c = UnicellularMap::from_pairing(Permutation::from_images(images).expect("pairing")).expect("pairing");
    let mut relabel: Vec<usize> = (0..2 * n).collect();
    relabel.shuffle(rng);
    let (alpha, sigma) = (c.alpha().relabel(&relabel), c.sigma().relabel(&relabel));
    UnicellularMap::new(n, alpha, sigma, relabel[rng.gen_range(0..2 * n)]).expect("relabelled map")
}

fn serialization() -> Outcome {
    let check = |m: &UnicellularMap| -> Result<(), String> {
        let line = serialize(m);
        ensure(parse_map(&line).as_ref() == Ok(m), || format!("full form fails on {line}"))?;
        let short = serialize_canonical(m);
        ensure(parse_map(&short).as_ref() == Ok(&m.canonicalize()), || format!("short form fails on {line}"))
    };
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..10_000 {
        check(&random_map(&mut rng))?;
    }
    let mut exhaustive = 0;
    for n in 1..=4 {
        for m in all_maps(n) {
            check(&m)?;
            exhaustive += 1;
        }
    }
    Ok(format!("10000 random maps and {exhaustive} maps with n ≤ 4, both line forms"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("census agreement", census_agreement),
        ("trisection lemma", trisection_lemma),
        ("bijection round trips", bijection_round_trips),
        ("identity instances", identity_instances),
        ("Harer-Zagier", harer_zagier),
        ("R_g properties", r_properties),
        ("bipartite", bipartite),
        ("precubic", precubic),
        ("sampler uniformity", sampler_uniformity),
        ("serialization", serialization),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} {name}: PASS [{secs:.1}s] {}", i + 1, detail.replace('\n', " ")),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL [{secs:.1}s] {}", i + 1, detail.replace('\n', " | "));
            }
        }
    }
    println!("acceptance: {} of 10 criteria passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
