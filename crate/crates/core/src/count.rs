//! Exact enumeration of unicellular maps.
//!
//! `epsilon_*(g, n)` is the number of rooted unicellular maps of genus `g`
//! with `n` edges. Three independent routes are provided:
//!
//! * [`epsilon_identity`]: the genus recursion
//!   `2g·ε_g(n) = Σ_{p<g} C(n+1−2p, 2g−2p+1)·ε_p(n)`;
//! * [`epsilon_walsh`]: the sum over integer partitions of `g`;
//! * [`epsilon_via_r`]: `R_g(n)·Cat(n)` with `R_g` summed over genus chains.
//!
//! All arithmetic is exact. Divisions that the formulas only guarantee for the
//! full sum go through rationals and are checked for integrality at the end.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::poly::Polynomial;
use crate::{ExactInt, ExactRational};

fn int(n: i64) -> ExactInt {
    BigInt::from(n)
}

fn exact_div(num: ExactInt, den: &ExactInt) -> ExactInt {
    let (q, r) = num.div_rem(den);
    assert!(r.is_zero(), "non-integral count: remainder {r} dividing by {den}");
    q
}

fn into_integer(q: ExactRational) -> ExactInt {
    assert!(q.is_integer(), "non-integral count {q}");
    q.to_integer()
}

pub fn factorial(n: u64) -> ExactInt {
    (1..=n).fold(ExactInt::one(), |acc, k| acc * k)
}

/// `C(a, b)` read combinatorially: 0 when `b < 0` or `a < b` (including negative `a`).
pub fn binomial(a: i64, b: i64) -> ExactInt {
    if b < 0 || a < b {
        return ExactInt::zero();
    }
    binomial_poly(&int(a), b as u64)
}

/// `C(x, k) = x(x−1)…(x−k+1)/k!` for any integer `x` (the polynomial reading).
pub fn binomial_poly(x: &ExactInt, k: u64) -> ExactInt {
    let mut acc = ExactInt::one();
    for j in 0..k {
        acc = acc * (x - j) / (j + 1);
    }
    acc
}

pub fn catalan(n: u64) -> ExactInt {
    binomial(2 * n as i64, n as i64) / (n + 1)
}

/// `(2n − 1)!!`, the number of pairings of `2n` points.
pub fn pairings(n: u64) -> ExactInt {
    (1..=n).fold(ExactInt::one(), |acc, k| acc * (2 * k - 1))
}

/// `ε_p(n)` for every `p ≤ g` by the genus recursion.
pub fn epsilon_identity_table(g: u32, n: u64) -> Vec<ExactInt> {
    let mut table: Vec<ExactInt> = Vec::with_capacity(g as usize + 1);
    table.push(catalan(n));
    for h in 1..=g as i64 {
        let sum = (0..h).fold(ExactInt::zero(), |acc, p| {
            acc + binomial(n as i64 + 1 - 2 * p, 2 * h - 2 * p + 1) * &table[p as usize]
        });
        table.push(exact_div(sum, &int(2 * h)));
    }
    table
}

pub fn epsilon_identity(g: u32, n: u64) -> ExactInt {
    if n + 1 < 2 * g as u64 + 1 {
        return ExactInt::zero();
    }
    epsilon_identity_table(g, n).pop().expect("table has g + 1 entries")
}

/// A partition of the genus, as part multiplicities: `multiplicities[i − 1]`
/// is the number of parts equal to `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenusPartition {
    multiplicities: Vec<u32>,
}

impl GenusPartition {
    pub fn multiplicity(&self, part: u32) -> u32 {
        self.multiplicities.get(part as usize - 1).copied().unwrap_or(0)
    }

    /// Number of parts.
    pub fn length(&self) -> u32 {
        self.multiplicities.iter().sum()
    }

    /// Sum of the parts.
    pub fn weight(&self) -> u32 {
        self.multiplicities
            .iter()
            .enumerate()
            .map(|(i, &c)| (i as u32 + 1) * c)
            .sum()
    }
}

/// All partitions of `g` (one empty partition for `g = 0`).
pub fn partitions(g: u32) -> Vec<GenusPartition> {
    fn go(rest: u32, max_part: u32, parts: &mut Vec<u32>, out: &mut Vec<GenusPartition>, g: u32) {
        if rest == 0 {
            let mut multiplicities = vec![0; g as usize];
            for &p in parts.iter() {
                multiplicities[p as usize - 1] += 1;
            }
            out.push(GenusPartition { multiplicities });
            return;
        }
        for part in (1..=max_part.min(rest)).rev() {
            parts.push(part);
            go(rest - part, part, parts, out, g);
            parts.pop();
        }
    }
    let mut out = Vec::new();
    go(g, g, &mut Vec::new(), &mut out, g);
    out
}

/// Sum over partitions `γ ⊢ g` of
/// `(n+1)n…(n+2−2g−l(γ)) / (2^{2g} Π c_i! (2i+1)^{c_i})`, times `Cat(n)`.
pub fn epsilon_walsh(g: u32, n: u64) -> ExactInt {
    let n = n as i64;
    let g64 = g as i64;
    let mut sum = ExactRational::zero();
    for partition in partitions(g) {
        let length = partition.length() as i64;
        let mut numerator = ExactInt::one();
        for k in 0..2 * g64 + length {
            numerator *= n + 1 - k;
        }
        let mut denominator = ExactInt::one() << (2 * g as usize);
        for part in 1..=g {
            let c = partition.multiplicity(part);
            denominator *= factorial(c as u64) * int(2 * part as i64 + 1).pow(c);
        }
        sum += ExactRational::new(numerator, denominator);
    }
    into_integer(sum * ExactRational::from_integer(catalan(n as u64)))
}

/// Strictly increasing chains `0 = g_0 < g_1 < … < g_r = g`.
fn genus_chains(g: u32) -> Vec<Vec<u32>> {
    if g == 0 {
        return vec![vec![0]];
    }
    // each subset of {1, …, g−1} gives the interior of one chain
    (0..1u64 << (g - 1))
        .map(|mask| {
            let mut chain = vec![0];
            chain.extend((1..g).filter(|&k| mask >> (k - 1) & 1 == 1));
            chain.push(g);
            chain
        })
        .collect()
}

/// `R_g(x) = Σ_chains Π_i (1/2g_i)·C(x+1−2g_{i−1}, 2(g_i−g_{i−1})+1)` at an integer `x`.
pub fn r_polynomial_value(g: u32, x: &ExactInt) -> ExactRational {
    genus_chains(g)
        .into_iter()
        .map(|chain| {
            chain.windows(2).fold(ExactRational::one(), |acc, w| {
                let (lo, hi) = (w[0] as i64, w[1] as i64);
                let top = x + 1 - 2 * lo;
                let choose = binomial_poly(&top, (2 * (hi - lo) + 1) as u64);
                acc * ExactRational::new(choose, int(2 * hi))
            })
        })
        .fold(ExactRational::zero(), |acc, term| acc + term)
}

/// `R_g` as an explicit polynomial (degree `3g`).
pub fn r_polynomial(g: u32) -> Polynomial {
    let mut total = Polynomial::zero();
    for chain in genus_chains(g) {
        let mut term = Polynomial::constant(ExactRational::one());
        for w in chain.windows(2) {
            let (lo, hi) = (w[0] as i64, w[1] as i64);
            let factor = Polynomial::binomial(1 - 2 * lo, (2 * (hi - lo) + 1) as usize)
                .scale(&ExactRational::new(BigInt::one(), int(2 * hi)));
            term = &term * &factor;
        }
        total = &total + &term;
    }
    total
}

pub fn epsilon_via_r(g: u32, n: u64) -> ExactInt {
    let r = r_polynomial_value(g, &int(n as i64));
    into_integer(r * ExactRational::from_integer(catalan(n)))
}

/// Exact counts by genus for one edge count: the coefficient vector of
/// `F_n(x) = Σ_g ε_g(n) x^{n+1−2g}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenusCensus {
    pub n: u64,
    /// `counts[g]`, for `g = 0..=n/2`.
    pub counts: Vec<ExactInt>,
}

impl GenusCensus {
    pub fn from_counts(n: u64, counts: Vec<ExactInt>) -> Self {
        Self { n, counts }
    }

    /// Census computed with the genus recursion.
    pub fn from_identity(n: u64) -> Self {
        let max_genus = (n / 2) as u32;
        Self {
            n,
            counts: epsilon_identity_table(max_genus, n),
        }
    }

    pub fn get(&self, g: u32) -> ExactInt {
        self.counts.get(g as usize).cloned().unwrap_or_else(ExactInt::zero)
    }

    pub fn total(&self) -> ExactInt {
        self.counts.iter().sum()
    }

    /// `F_n(y)`: the count of genus `g` on `y^{n+1−2g}`.
    pub fn vertex_polynomial(&self) -> Polynomial {
        let mut coeffs = vec![ExactRational::zero(); self.n as usize + 2];
        for (g, count) in self.counts.iter().enumerate() {
            if let Some(deg) = (self.n as usize + 1).checked_sub(2 * g) {
                coeffs[deg] += ExactRational::from_integer(count.clone());
            }
        }
        Polynomial::from_coeffs(coeffs)
    }
}

/// Checks `(n+1)ε_g(n) = 2(2n−1)ε_g(n−1) + (2n−1)(n−1)(2n−3)ε_{g−1}(n−2)`.
pub fn hz_recurrence_check(g: u32, n: u64) -> bool {
    assert!(n >= 2, "recurrence needs n ≥ 2");
    let eps = |g: Option<u32>, n: u64| g.map_or_else(ExactInt::zero, |g| epsilon_identity(g, n));
    let n_i = n as i64;
    let lhs = eps(Some(g), n) * (n_i + 1);
    let rhs = eps(Some(g), n - 1) * (2 * (2 * n_i - 1))
        + eps(g.checked_sub(1), n - 2) * ((2 * n_i - 1) * (n_i - 1) * (2 * n_i - 3));
    lhs == rhs
}

/// `(2n)!/(2^n n!) Σ_{i≥1} 2^{i−1} C(n, i−1) C(y, i)` as a polynomial in `y`.
pub fn harer_zagier_rhs(n: u64) -> Polynomial {
    let prefactor = ExactRational::new(factorial(2 * n), (ExactInt::one() << n as usize) * factorial(n));
    let mut sum = Polynomial::zero();
    for i in 1..=n as i64 + 1 {
        let weight = (ExactInt::one() << (i - 1) as usize) * binomial(n as i64, i - 1);
        let term = Polynomial::binomial(0, i as usize).scale(&ExactRational::from_integer(weight));
        sum = &sum + &term;
    }
    sum.scale(&prefactor)
}

/// Compares `Σ_g ε_g(n) y^{n+1−2g}` with [`harer_zagier_rhs`] coefficientwise.
pub fn hz_formula_check(n: u64) -> bool {
    GenusCensus::from_identity(n).vertex_polynomial() == harer_zagier_rhs(n)
}

/// Bipartite plane trees with `i` white and `j` black vertices:
/// `((i+j−1)/(ij))·C(i+j−2, i−1)²`.
pub fn beta_plane(i: u64, j: u64) -> ExactInt {
    if i == 0 || j == 0 {
        return ExactInt::zero();
    }
    let c = binomial((i + j - 2) as i64, (i - 1) as i64);
    exact_div(c.pow(2) * (i + j - 1), &int((i * j) as i64))
}

/// `β_g(i, j)`: rooted bipartite unicellular maps of genus `g` with `i` white
/// (root side) and `j` black vertices, via the two-colour genus recursion.
pub fn beta_bipartite(g: u32, i: u64, j: u64) -> ExactInt {
    let mut memo = BTreeMap::new();
    beta_memo(g, i, j, &mut memo)
}

fn beta_memo(g: u32, i: u64, j: u64, memo: &mut BTreeMap<(u32, u64, u64), ExactInt>) -> ExactInt {
    if g == 0 {
        return beta_plane(i, j);
    }
    if i == 0 || j == 0 {
        return ExactInt::zero();
    }
    if let Some(v) = memo.get(&(g, i, j)) {
        return v.clone();
    }
    let mut sum = ExactInt::zero();
    for p in 0..g {
        let shift = 2 * (g - p) as u64;
        let k = shift as i64 + 1;
        sum += binomial((i + shift) as i64, k) * beta_memo(p, i + shift, j, memo);
        sum += binomial((j + shift) as i64, k) * beta_memo(p, i, j + shift, memo);
    }
    let value = exact_div(sum, &int(2 * g as i64));
    memo.insert((g, i, j), value.clone());
    value
}

/// The ratio recursion `S_g(i, j) = (1/2g) Σ_p [C(i+2g−2p, 2g−2p+1) S_p(i+2g−2p, j)
/// + C(j+2g−2p, 2g−2p+1) S_p(i, j+2g−2p)]` with `S_0 = 1`, evaluated as printed.
///
/// Diagnostic only: `S_g(i, j)·β_0(i, j)` does not equal `β_g(i, j)` in
/// general (e.g. `(g, i, j) = (1, 1, 2)` gives 5/2 against 5), because the
/// recursion drops the ratio `β_0(i', j')/β_0(i, j)` between shifted arguments.
pub fn s_polynomial_value(g: u32, i: i64, j: i64) -> ExactRational {
    if g == 0 {
        return ExactRational::one();
    }
    let mut sum = ExactRational::zero();
    for p in 0..g {
        let shift = 2 * (g - p) as i64;
        let k = (shift + 1) as u64;
        sum += ExactRational::from_integer(binomial_poly(&int(i + shift), k)) * s_polynomial_value(p, i + shift, j);
        sum += ExactRational::from_integer(binomial_poly(&int(j + shift), k)) * s_polynomial_value(p, i, j + shift);
    }
    sum / ExactRational::from_integer(int(2 * g as i64))
}

/// Precubic (all degrees 1 or 3) unicellular maps of genus `g` with `n = 2m+1`
/// edges: `(4m+2)(2m)! / (12^g g! (m+2−3g)! m!)`. Zero for even `n`.
pub fn xi_precubic(g: u32, n: u64) -> ExactInt {
    if n.is_multiple_of(2) {
        return ExactInt::zero();
    }
    let m = (n - 1) / 2;
    let Some(free) = (m + 2).checked_sub(3 * g as u64) else {
        return ExactInt::zero();
    };
    let numerator = factorial(2 * m) * (4 * m + 2);
    let denominator = int(12).pow(g) * factorial(g as u64) * factorial(free) * factorial(m);
    exact_div(numerator, &denominator)
}

/// Rooted unicellular maps of genus `g ≥ 1` with every vertex of degree 3:
/// `2(6g−3)! / (12^g g! (3g−2)!)`.
pub fn scheme_count(g: u32) -> ExactInt {
    if g == 0 {
        return ExactInt::zero();
    }
    let g64 = g as u64;
    let denominator = int(12).pow(g) * factorial(g64) * factorial(3 * g64 - 2);
    exact_div(factorial(6 * g64 - 3) * 2u32, &denominator)
}

/// `|R_g(n)·12^g·g!/n^{3g} − 1|` as a float, for the leading-order check.
pub fn r_leading_ratio_error(g: u32, n: u64) -> f64 {
    let r = r_polynomial_value(g, &int(n as i64));
    let scale = ExactRational::new(int(12).pow(g) * factorial(g as u64), int(n as i64).pow(3 * g));
    let ratio = r * scale - ExactRational::one();
    let ratio = ratio.abs();
    // exact numerator and denominator can be large; shrink before converting
    let (num, den) = (ratio.numer().clone(), ratio.denom().clone());
    let shift = den.bits().saturating_sub(60);
    let num = (num >> shift as usize).to_f64().unwrap_or(f64::INFINITY);
    let den = (den >> shift as usize).to_f64().unwrap_or(f64::INFINITY);
    num / den
}
