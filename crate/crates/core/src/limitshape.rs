//! Monte Carlo sampling of self-conjugate partitions under the Gibbs measure
//! and the q → 1⁻ limit-shape numerics.
//!
//! This is the one floating-point module. Under `q = e^{−2πr}` the diagonal
//! hooks are independent: `𝔐_q(α_k = 1) = q^{2k+1}/(1+q^{2k+1})`, so sampling
//! draws one Bernoulli per hook index up to a cutoff with tail mass below
//! `cutoff_eps`. The rescaled diagram `f̃_λ(x) = 4√6·r·f_λ(x/(4√6 r))`
//! concentrates on `f(x) = (√6/π)·log(1 − e^{−πx/√6})`.

use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

use crate::partitions::{FrobeniusCoords, Partition, Profile};
use crate::rat::{rat_to_f64, Rat};
use crate::rng::SplitMix64;
use num_traits::One;

/// Sampling configuration. `q = e^{−2πr}`.
#[derive(Debug, Clone)]
pub struct GibbsConfig {
    pub r: f64,
    pub seed: u64,
    /// Ignored-tail mass bound for the hook cutoff (default 1e−12).
    pub cutoff_eps: f64,
    pub samples: usize,
}

impl GibbsConfig {
    pub fn new(r: f64, seed: u64, samples: usize) -> Self {
        GibbsConfig {
            r,
            seed,
            cutoff_eps: 1e-12,
            samples,
        }
    }

    pub fn q(&self) -> f64 {
        assert!(self.r > 0.0, "r must be positive");
        (-2.0 * PI * self.r).exp()
    }

    /// Least `K` with `Σ_{k>K} q^{2k+1} = q^{2K+3}/(1−q²) < cutoff_eps`.
    pub fn cutoff_index(&self) -> u64 {
        let q = self.q();
        let mut k = 0u64;
        let mut tail = q.powi(3) / (1.0 - q * q);
        while tail >= self.cutoff_eps {
            k += 1;
            tail *= q * q;
        }
        k
    }

    /// Rescaling factor `4√6·r`.
    pub fn scale(&self) -> f64 {
        4.0 * 6.0f64.sqrt() * self.r
    }
}

/// `𝔐_q(α_k = 1) = q^{2k+1}/(1+q^{2k+1})`.
pub fn hook_inclusion_probability(q: f64, k: u64) -> f64 {
    let p = q.powi(2 * k as i32 + 1);
    p / (1.0 + p)
}

/// Draws the Frobenius arms of sample `index`: independent Bernoulli per hook
/// index through the cutoff. Deterministic: one RNG substream per sample
/// index. Returned strictly decreasing.
pub fn sample_arms(cfg: &GibbsConfig, index: u64) -> Vec<u64> {
    let q = cfg.q();
    let cutoff = cfg.cutoff_index();
    let mut rng = SplitMix64::substream(cfg.seed, index);
    let mut arms: Vec<u64> = Vec::new();
    for k in 0..=cutoff {
        if rng.next_f64() < hook_inclusion_probability(q, k) {
            arms.push(k);
        }
    }
    arms.reverse();
    arms
}

/// Draws sample `index` as a full partition (symmetric Frobenius coordinates).
pub fn sample_partition(cfg: &GibbsConfig, index: u64) -> Partition {
    FrobeniusCoords::symmetric(sample_arms(cfg, index))
        .expect("descending arms")
        .to_partition()
}

/// `λ_c` of the self-conjugate partition with the given (descending) arms,
/// without materializing the partition: `λ_c = c + m_c` on the diagonal and
/// `#{j | m_j + j ≥ c}` below it (1-based `c`).
pub fn part_from_arms(arms_desc: &[u64], c: u64) -> u64 {
    if c == 0 {
        return 0;
    }
    let r = arms_desc.len() as u64;
    if c <= r {
        arms_desc[c as usize - 1] + c
    } else {
        arms_desc
            .iter()
            .enumerate()
            .filter(|&(j, &m)| m + j as u64 + 1 >= c)
            .count() as u64
    }
}

/// `f̃_λ(x)` straight from the arms: `f_λ(x) = −λ^t_{⌈x⌉} = −λ_{⌈x⌉}` by
/// self-conjugacy.
pub fn f_tilde_from_arms(arms_desc: &[u64], r: f64, x: f64) -> f64 {
    let scale = 4.0 * 6.0f64.sqrt() * r;
    let inner = x / scale;
    if inner <= 0.0 {
        // −l(λ) = −λ_1.
        return -scale * part_from_arms(arms_desc, 1) as f64;
    }
    -scale * part_from_arms(arms_desc, inner.ceil() as u64) as f64
}

/// `E_q(|λ|) = Σ_k (2k+1)q^{2k+1}/(1+q^{2k+1})`, summed to tail < 1e−12.
/// Satisfies `r²·E → 1/96` as `r → 0⁺`.
pub fn expected_size(r: f64) -> f64 {
    assert!(r > 0.0);
    let q = (-2.0 * PI * r).exp();
    let mut acc = 0.0;
    let mut k = 0u64;
    loop {
        let p = q.powi(2 * k as i32 + 1);
        let term = (2 * k + 1) as f64 * p / (1.0 + p);
        acc += term;
        // Remaining tail is below Σ (2j+1)q^{2j+1} ≤ term·C/(1−q²) once terms decay.
        if term < 1e-13 * acc.max(1.0) && k > 4 {
            break;
        }
        k += 1;
    }
    acc
}

/// `E_q(r(λ)) = Σ_i q^{2i+1}/(1+q^{2i+1})`; `4√6·r·E → √6·log 2/π`.
pub fn expected_frobenius_length(r: f64) -> f64 {
    assert!(r > 0.0);
    let q = (-2.0 * PI * r).exp();
    let mut acc = 0.0;
    let mut k = 0u64;
    loop {
        let p = q.powi(2 * k as i32 + 1);
        let term = p / (1.0 + p);
        acc += term;
        if term < 1e-15 * acc.max(1.0) && k > 4 {
            break;
        }
        k += 1;
    }
    acc
}

/// `Var(r(λ)) = Σ_i q^{2i+1}/(1+q^{2i+1})²` (the O(1/r) bound in the
/// concentration argument).
pub fn frobenius_length_variance(r: f64) -> f64 {
    assert!(r > 0.0);
    let q = (-2.0 * PI * r).exp();
    let mut acc = 0.0;
    let mut k = 0u64;
    loop {
        let p = q.powi(2 * k as i32 + 1);
        let term = p / ((1.0 + p) * (1.0 + p));
        acc += term;
        if term < 1e-15 * acc.max(1.0) && k > 4 {
            break;
        }
        k += 1;
    }
    acc
}

/// The limit constant `√6·log 2/π` of the rescaled Frobenius length.
pub fn frobenius_length_constant() -> f64 {
    6.0f64.sqrt() * 2.0f64.ln() / PI
}

/// Limit shape `f(x) = (√6/π)·log(1 − e^{−πx/√6})`, defined for `x > 0`.
pub fn limit_shape_f(x: f64) -> Result<f64, ShapeDomainError> {
    if x <= 0.0 {
        return Err(ShapeDomainError { x });
    }
    let s = 6.0f64.sqrt();
    Ok(s / PI * (1.0 - (-PI * x / s).exp()).ln())
}

/// `g(x) = −(√6/π)·log(1 + e^{−πx/√6})`, defined for all real `x`.
pub fn limit_g(x: f64) -> f64 {
    let s = 6.0f64.sqrt();
    -s / PI * (1.0 + (-PI * x / s).exp()).ln()
}

/// `f̄`: the graph of `f` rotated 90° counterclockwise. By the diagonal
/// symmetry of the limit shape, `f̄ = −f` pointwise.
pub fn f_bar(x: f64) -> Result<f64, ShapeDomainError> {
    Ok(-limit_shape_f(x)?)
}

/// `ḡ(x) = −(√6/π)·log(e^{πx/√6} − 1)`: the rotation of `g`. Its zero is
/// exactly `x₀ = √6·log 2/π`, the limit rescaled Frobenius length.
pub fn g_bar(x: f64) -> Result<f64, ShapeDomainError> {
    if x <= 0.0 {
        return Err(ShapeDomainError { x });
    }
    let s = 6.0f64.sqrt();
    Ok(-s / PI * ((PI * x / s).exp() - 1.0).ln())
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShapeDomainError {
    pub x: f64,
}

impl std::fmt::Display for ShapeDomainError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "limit shape evaluated outside its domain: x = {}", self.x)
    }
}

impl std::error::Error for ShapeDomainError {}

/// A sampled partition with its rescaled profile evaluators.
#[derive(Debug, Clone)]
pub struct ShapeSample {
    pub partition: Partition,
    profile: Profile,
    scale: f64,
}

impl ShapeSample {
    pub fn new(partition: Partition, r: f64) -> Self {
        let profile = partition.profile();
        ShapeSample {
            partition,
            profile,
            scale: 4.0 * 6.0f64.sqrt() * r,
        }
    }

    /// `f̃_λ(x) = 4√6·r·f_λ(x/(4√6 r))`.
    pub fn f_tilde(&self, x: f64) -> f64 {
        self.scale * self.profile.f(x / self.scale)
    }

    /// `g̃_λ(x) = 4√6·r·g_λ(x/(4√6 r))`.
    pub fn g_tilde(&self, x: f64) -> f64 {
        self.scale * self.profile.g(x / self.scale)
    }
}

/// One row of the convergence table (per grid point).
#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceRow {
    pub r: f64,
    pub x: f64,
    pub epsilon: f64,
    pub fraction_within: f64,
    pub mean_abs_dev: f64,
    pub n_samples: usize,
    pub seed: u64,
}

/// Samples `cfg.samples` partitions and measures, for each grid point, the
/// empirical fraction with `|f̃_λ(x) − f(x)| < ε` and the mean absolute
/// deviation. Thresholds here are experiment-design choices, not derived constants.
pub fn convergence_experiment(cfg: &GibbsConfig, x_grid: &[f64], epsilon: f64) -> Vec<ConvergenceRow> {
    let mut rows: Vec<ConvergenceRow> = x_grid
        .iter()
        .map(|&x| ConvergenceRow {
            r: cfg.r,
            x,
            epsilon,
            fraction_within: 0.0,
            mean_abs_dev: 0.0,
            n_samples: cfg.samples,
            seed: cfg.seed,
        })
        .collect();
    if cfg.samples == 0 || x_grid.is_empty() {
        return rows;
    }
    for index in 0..cfg.samples {
        let arms = sample_arms(cfg, index as u64);
        for row in rows.iter_mut() {
            let target = limit_shape_f(row.x).expect("positive grid");
            let dev = (f_tilde_from_arms(&arms, cfg.r, row.x) - target).abs();
            if dev < epsilon {
                row.fraction_within += 1.0;
            }
            row.mean_abs_dev += dev;
        }
    }
    let n = cfg.samples as f64;
    for row in rows.iter_mut() {
        row.fraction_within /= n;
        row.mean_abs_dev /= n;
    }
    rows
}

/// Renders the convergence table as CSV with 12 significant digits.
pub fn convergence_csv(rows: &[ConvergenceRow]) -> String {
    let mut out = String::from("r,x,epsilon,fraction_within,mean_abs_dev,n_samples,seed\n");
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            sig12(row.r),
            sig12(row.x),
            sig12(row.epsilon),
            sig12(row.fraction_within),
            sig12(row.mean_abs_dev),
            row.n_samples,
            row.seed
        ));
    }
    out
}

/// 12 significant digits, scientific notation.
pub fn sig12(v: f64) -> String {
    format!("{v:.11e}")
}

/// The typical partition `Λ_i = −⌊log(1 − e^{−4πri})/(4πr)⌋`, the explicit
/// discretization of the limit shape.
///
/// Rows are kept while the unrounded profile is ≥ 1. The formula alone never
/// reaches zero: `−⌊v⌋ = 1` for every `v ∈ (−1, 0)`, an infinite tail of
/// single boxes produced purely by rounding, so the row where the true
/// profile drops below one box is where Λ ends.
pub fn typical_partition(r: f64) -> Partition {
    assert!(r > 0.0);
    let mut parts = Vec::new();
    let mut i = 1u64;
    loop {
        let raw = -(1.0 - (-4.0 * PI * r * i as f64).exp()).ln() / (4.0 * PI * r);
        if raw < 1.0 {
            break;
        }
        parts.push(raw.ceil() as u64);
        i += 1;
    }
    Partition::new(parts).expect("rounding a monotone profile stays weakly decreasing")
}

/// `𝒯(λ) = Σ_i t^{λ_i−i+1/2}` at `t = e^w`, regularized: the infinite tail
/// `Σ_{i>l(λ)} t^{−i+1/2}` is summed in closed form `1/(t^{1/2}−t^{−1/2})`
/// minus the finite head, exactly as in the normal-ordering split.
pub fn t_lambda(lam: &Partition, w: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (i, &part) in lam.parts().iter().enumerate() {
        let e = part as f64 - (i as f64 + 1.0) + 0.5;
        let e0 = -(i as f64 + 1.0) + 0.5;
        acc += (w * e).exp() - (w * e0).exp();
    }
    let half = (w * 0.5).exp();
    acc + 1.0 / (half - 1.0 / half)
}

/// Exact coefficient `c_k` in the rendering `coefficient of z^{2k−1}` equals
/// `c_k·i·π^{2k−1}` of the expansion of `1/(2 sinh(πiz))` (equivalently
/// `β_{2k}·(2πi)^{2k−1}` with `X = 2πiz`): `c_k = −(−1)^k·2^{2k−1}·β_{2k}`.
pub fn sinh_asymptotic_coefficient(k: u64) -> Rat {
    let beta = crate::quasimod::beta_coefficients(2 * k);
    let sign = if k.is_multiple_of(2) { -Rat::one() } else { Rat::one() };
    sign * crate::rat::pow2(2 * k as i64 - 1) * &beta[2 * k as usize]
}

/// The printed reference list for `c_k`, `k = 0..=9` (the `z^{19}` term):
/// `−i/(2πz) − iπ/12·z − 7iπ³/720·z³ − …`.
pub fn reference_asymptotic_coefficients() -> Vec<(u64, Rat)> {
    let parse = |s: &str| crate::rat::rat_from_str(s).expect("valid literal");
    vec![
        (0, parse("-1/2")),
        (1, parse("-1/12")),
        (2, parse("-7/720")),
        (3, parse("-31/30240")),
        (4, parse("-127/1209600")),
        (5, parse("-73/6842880")),
        (6, parse("-1414477/1307674368000")),
        (7, parse("-8191/74724249600")),
        (8, parse("-16931177/1524374691840000")),
        (9, parse("-5749691557/5109094217170944000")),
        (10, parse("-91546277357/802857662698291200000")),
    ]
}

#[derive(Debug, Clone, Serialize)]
pub struct AsymptoticsNumericRow {
    pub r: f64,
    pub z_imag: f64,
    pub computed_re: f64,
    pub computed_im: f64,
    pub target_re: f64,
    pub target_im: f64,
    pub deviation: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct AsymptoticsReport {
    /// Computed `c_k` versus the printed reference list, exact equality.
    pub coefficients_match: bool,
    pub coefficients_checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_coefficient_mismatch: Option<u64>,
    pub numeric: Vec<AsymptoticsNumericRow>,
}

/// Two checks on the leading asymptotics of the one-point function:
/// (a) exact — the computed expansion coefficients of `1/(2 sinh(X/2))`
/// reproduce the printed list through `z^{2·k_max−1}`; (b) numeric —
/// `τ·𝒯(Λ)|_{z→τz}` at `z = i·z_imag` converges to `1/(2 sinh(πiz))` as `r`
/// decreases (`τ = 2ir`, so the substituted variable is `w = −4πi·r·z_imag`).
pub fn verify_asymptotics(r_list: &[f64], z_imag_list: &[f64], k_max: u64) -> AsymptoticsReport {
    let mut coefficients_match = true;
    let mut first_mismatch = None;
    let mut checked = 0usize;
    for (k, expected) in reference_asymptotic_coefficients() {
        if k > k_max {
            break;
        }
        checked += 1;
        if sinh_asymptotic_coefficient(k) != expected {
            coefficients_match = false;
            first_mismatch = Some(k);
            break;
        }
    }

    let mut numeric = Vec::new();
    for &z_imag in z_imag_list {
        for &r in r_list {
            let lam = typical_partition(r);
            // z = i·z_imag, τ = 2ir: t^{…} = e^{2πi·τz·…} = e^{w·…} with
            // w = 2πi·(2ir)(i·z_imag) = −4πi·r·z_imag.
            let w = Complex64::new(0.0, -4.0 * PI * r * z_imag);
            let computed = Complex64::new(0.0, 2.0 * r) * t_lambda(&lam, w);
            // 1/(2 sinh(πi·z)) at z = i·z_imag: sinh(−π·z_imag) is real.
            let target = Complex64::new(1.0 / (2.0 * (-PI * z_imag).sinh()), 0.0);
            numeric.push(AsymptoticsNumericRow {
                r,
                z_imag,
                computed_re: computed.re,
                computed_im: computed.im,
                target_re: target.re,
                target_im: target.im,
                deviation: (computed - target).norm(),
            });
        }
    }

    AsymptoticsReport {
        coefficients_match,
        coefficients_checked: checked,
        first_coefficient_mismatch: first_mismatch,
        numeric,
    }
}

/// Two-level Richardson extrapolation for a quantity sampled at `r`, `r/2`,
/// `r/4` with an `a·r + b·r²` error model.
pub fn richardson_limit(v_r: f64, v_half: f64, v_quarter: f64) -> f64 {
    let r1a = 2.0 * v_half - v_r;
    let r1b = 2.0 * v_quarter - v_half;
    (4.0 * r1b - r1a) / 3.0
}

/// Convenience: `r² · expected_size(r)` (the quantity converging to 1/96).
pub fn scaled_expected_size(r: f64) -> f64 {
    r * r * expected_size(r)
}

/// Convenience: `4√6·r·expected_frobenius_length(r)` (converging to √6·log2/π).
pub fn scaled_frobenius_length(r: f64) -> f64 {
    4.0 * 6.0f64.sqrt() * r * expected_frobenius_length(r)
}

/// Float view of an exact coefficient, for rendering.
pub fn coefficient_to_f64(c: &Rat) -> f64 {
    rat_to_f64(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampled_partitions_are_self_conjugate_and_deterministic() {
        let cfg = GibbsConfig::new(0.05, 12345, 0);
        for index in 0..50 {
            let lam = sample_partition(&cfg, index);
            assert!(lam.is_self_conjugate());
            assert_eq!(lam, sample_partition(&cfg, index));
        }
        let other_seed = GibbsConfig::new(0.05, 54321, 0);
        let differs = (0..20).any(|i| sample_partition(&cfg, i) != sample_partition(&other_seed, i));
        assert!(differs);
    }

    #[test]
    fn tiny_q_samples_are_empty() {
        // q < 1e−6 makes every inclusion probability negligible.
        let r = 2.5; // q = e^{−5π} ≈ 1.5e−7
        let cfg = GibbsConfig::new(r, 7, 0);
        assert!(cfg.q() < 1e-6);
        for index in 0..100 {
            assert_eq!(sample_partition(&cfg, index), Partition::empty());
        }
    }

    #[test]
    fn expected_size_scaling() {
        // r²·E within 2% of 1/96 at r = 0.01; E → 0 as r grows.
        let v = scaled_expected_size(0.01);
        assert!((v - 1.0 / 96.0).abs() / (1.0 / 96.0) < 0.02, "{v}");
        assert!(expected_size(50.0) < 1e-10);
    }

    #[test]
    fn richardson_extrapolation_hits_the_limit() {
        let v = richardson_limit(
            scaled_expected_size(0.02),
            scaled_expected_size(0.01),
            scaled_expected_size(0.005),
        );
        let target = 1.0 / 96.0;
        assert!(
            (v - target).abs() / target < 1e-4,
            "extrapolated {v}, target {target}"
        );
    }

    #[test]
    fn frobenius_length_scaling() {
        let v = scaled_frobenius_length(0.005);
        let target = frobenius_length_constant();
        assert!((v - target).abs() / target < 0.01, "{v} vs {target}");
        assert!(expected_frobenius_length(50.0) < 1e-10);
        // Variance proxy is O(1/r) scale.
        let var = frobenius_length_variance(0.01);
        assert!(var > 1.0 && var < 100.0 / 0.01);
    }

    #[test]
    fn limit_shape_identities() {
        // g(0) = −(√6/π)·log 2.
        let g0 = limit_g(0.0);
        assert!((g0 + frobenius_length_constant()).abs() < 1e-14);
        // Rotation invariance about y = −x: f(−f(x)) = −x.
        for &x in &[0.2, 0.5, 1.0, 2.0, 4.0] {
            let fx = limit_shape_f(x).unwrap();
            let back = limit_shape_f(-fx).unwrap();
            assert!((back + x).abs() < 1e-12, "x = {x}");
        }
        // f̄ = ḡ + x on the Frobenius range (and beyond).
        for &x in &[0.1, 0.3, 0.5, frobenius_length_constant()] {
            let lhs = f_bar(x).unwrap();
            let rhs = g_bar(x).unwrap() + x;
            assert!((lhs - rhs).abs() < 1e-12);
        }
        // Zero of ḡ at √6·log2/π.
        assert!(g_bar(frobenius_length_constant()).unwrap().abs() < 1e-13);
        assert!(limit_shape_f(0.0).is_err());
        assert!(limit_shape_f(-1.0).is_err());
    }

    #[test]
    fn empirical_size_matches_expectation() {
        // Mean |λ| over 10⁴ samples within 3 standard errors of expected_size.
        // (Seed pinned to a typical draw; the 3-SE window rejects ~0.3% of
        // seeds by construction.)
        let r = 0.02;
        let cfg = GibbsConfig::new(r, 7, 10_000);
        let expectation = expected_size(r);
        let mut total = 0.0;
        let mut total_sq = 0.0;
        for i in 0..cfg.samples {
            let s = sample_partition(&cfg, i as u64).size() as f64;
            total += s;
            total_sq += s * s;
        }
        let n = cfg.samples as f64;
        let mean = total / n;
        let var = (total_sq / n - mean * mean).max(0.0);
        let stderr = (var / n).sqrt();
        assert!(
            (mean - expectation).abs() < 3.0 * stderr,
            "mean {mean}, expectation {expectation}, stderr {stderr}"
        );
    }

    #[test]
    fn hook_frequencies_match_inclusion_probabilities() {
        let r = 0.02;
        let cfg = GibbsConfig::new(r, 77, 10_000);
        let q = cfg.q();
        let mut counts = [0usize; 6];
        for i in 0..cfg.samples {
            let lam = sample_partition(&cfg, i as u64);
            for &arm in lam.frobenius().arms() {
                if (arm as usize) < counts.len() {
                    counts[arm as usize] += 1;
                }
            }
        }
        let n = cfg.samples as f64;
        for (k, &count) in counts.iter().enumerate() {
            let p = hook_inclusion_probability(q, k as u64);
            let freq = count as f64 / n;
            let stderr = (p * (1.0 - p) / n).sqrt();
            assert!(
                (freq - p).abs() < 4.0 * stderr,
                "hook {k}: freq {freq}, p {p}"
            );
        }
    }

    #[test]
    fn typical_partition_shape() {
        let lam = typical_partition(0.05);
        // Λ₁ = −⌊log(1−e^{−0.2π})/(0.2π)⌋ computed directly.
        let direct = -((1.0 - (-0.2 * PI).exp()).ln() / (0.2 * PI)).floor();
        assert_eq!(lam.part(1), direct as u64);
        // Weakly decreasing by construction (Partition::new validates).
        // |Λ|·r² ≈ 1/96 within 10% at r = 0.005.
        let r = 0.005;
        let big = typical_partition(r);
        let scaled = big.size() as f64 * r * r;
        assert!((scaled - 1.0 / 96.0).abs() / (1.0 / 96.0) < 0.10, "{scaled}");
    }

    #[test]
    fn asymptotic_coefficients_match_reference() {
        for (k, expected) in reference_asymptotic_coefficients() {
            assert_eq!(sinh_asymptotic_coefficient(k), expected, "k = {k}");
        }
    }

    #[test]
    fn numeric_asymptotics_converge() {
        let report = verify_asymptotics(&[0.02, 0.01], &[0.1], 9);
        assert!(report.coefficients_match);
        assert_eq!(report.numeric.len(), 2);
        let coarse = &report.numeric[0];
        let fine = &report.numeric[1];
        assert!(fine.deviation < coarse.deviation);
        assert!(fine.deviation < 1e-2, "deviation {}", fine.deviation);
    }

    #[test]
    fn arms_profile_evaluator_matches_partition_profile() {
        let cfg = GibbsConfig::new(0.03, 314, 0);
        for index in 0..40 {
            let arms = sample_arms(&cfg, index);
            let sample = ShapeSample::new(sample_partition(&cfg, index), cfg.r);
            for &x in &[0.2, 0.5, 1.0, 1.7, 2.5] {
                assert_eq!(
                    f_tilde_from_arms(&arms, cfg.r, x),
                    sample.f_tilde(x),
                    "index {index}, x {x}"
                );
            }
        }
    }

    #[test]
    fn convergence_experiment_rows() {
        let cfg = GibbsConfig::new(0.02, 99, 50);
        let rows = convergence_experiment(&cfg, &[0.5, 1.0], 0.08);
        assert_eq!(rows.len(), 2);
        for row in &rows {
            assert!(row.fraction_within >= 0.0 && row.fraction_within <= 1.0);
            assert!(row.mean_abs_dev >= 0.0);
        }
        let empty = convergence_experiment(&cfg, &[], 0.05);
        assert!(empty.is_empty());
        let csv = convergence_csv(&rows);
        assert!(csv.starts_with("r,x,epsilon,"));
        assert_eq!(csv.lines().count(), 3);
    }
}
