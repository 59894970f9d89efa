//! Eisenstein series, the `Q_ℓ` moment functions, q-brackets, and
//! quasimodular decomposition over Γ(2).
//!
//! Everything here is integer-graded in `q = e^{πiτ}` (so `e^{πinτ} ↦ q^n` and
//! `e^{2πinτ} ↦ q^{2n}`); conversions from the quarter-graded world check
//! divisibility and error loudly. `ζ(1−ℓ)` is always realized as `−B_ℓ/ℓ`, so
//! no analytic machinery enters.
//!
//! The three routes to a bracket `⟨Q_{ℓ₁}···Q_{ℓₙ}⟩` are implemented
//! independently and must agree:
//! - [`bracket_bruteforce`]: the defining sum over self-conjugate partitions,
//! - [`bracket_closed`]: the `log⟨M(s)⟩ = Σ_μ M_μ Π s_{2μ_i}` machinery with
//!   `M_μ = −(2^{2l−2|μ|}/|Aut μ|)·D^{l−1} 𝔾_{2|μ|−2l+2}`,
//! - [`extract_brackets_from_npoint`]: reading X-coefficients of the expanded
//!   n-point function.

use std::collections::BTreeSet;
use std::fmt;

use crate::correlation::{npoint, zs_series};
use crate::partitions::{self_conjugate_hook_sets, Partition};
use crate::rat::{factorial, rat, rat_int, rat_pow, Rat};
use crate::report::{Failure, IdentityReport, ReportSet};
use crate::series::xseries::{expand_u_in_x, sinh_half_reciprocal_head};
use crate::series::{QSeries, SeriesError, XSeries};
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuasimodError {
    /// Bernoulli numbers are requested at even indices only.
    OddBernoulliIndex(u64),
    /// Eisenstein weights must be even and ≥ 2.
    BadWeight(u64),
    Series(SeriesError),
}

impl fmt::Display for QuasimodError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuasimodError::OddBernoulliIndex(l) => {
                write!(f, "odd Bernoulli index {l} is not used anywhere")
            }
            QuasimodError::BadWeight(l) => write!(f, "weight {l} must be even and >= 2"),
            QuasimodError::Series(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for QuasimodError {}

impl From<SeriesError> for QuasimodError {
    fn from(e: SeriesError) -> Self {
        QuasimodError::Series(e)
    }
}

// ---- Bernoulli and β ------------------------------------------------------

/// `B_0..B_max` by the defining recurrence `Σ_{j≤m} C(m+1,j)·B_j = 0`
/// (convention `B_1 = −1/2`).
pub fn bernoulli_table(max: u64) -> Vec<Rat> {
    let mut b: Vec<Rat> = Vec::with_capacity(max as usize + 1);
    for m in 0..=max {
        if m == 0 {
            b.push(Rat::one());
            continue;
        }
        let mut acc = Rat::zero();
        let mut binom = Rat::one(); // C(m+1, 0)
        for (j, bj) in b.iter().enumerate() {
            acc += &binom * bj;
            // C(m+1, j+1) = C(m+1, j)·(m+1−j)/(j+1)
            binom *= rat(m as i64 + 1 - j as i64, j as i64 + 1);
        }
        b.push(-acc / rat_int(m as i64 + 1));
    }
    b
}

/// Exact `B_ℓ` for even `ℓ` (the only indices the formulas use).
pub fn bernoulli(l: u64) -> Result<Rat, QuasimodError> {
    if !l.is_multiple_of(2) {
        return Err(QuasimodError::OddBernoulliIndex(l));
    }
    Ok(bernoulli_table(l).pop().expect("table is non-empty"))
}

/// `ζ(1−ℓ) = −B_ℓ/ℓ` for even `ℓ ≥ 2`.
fn zeta_one_minus(l: u64, bern: &[Rat]) -> Rat {
    -&bern[l as usize] / rat_int(l as i64)
}

/// `β_0..β_max` from `Σ β_ℓ x^ℓ = (x/2)/sinh(x/2)`:
/// `β_{2n} = (2^{1−2n} − 1)·B_{2n}/(2n)!`, odd entries zero.
pub fn beta_coefficients(max: u64) -> Vec<Rat> {
    let bern = bernoulli_table(max);
    (0..=max)
        .map(|l| {
            if l % 2 != 0 {
                Rat::zero()
            } else {
                let scale = crate::rat::pow2(1 - l as i64) - Rat::one();
                scale * &bern[l as usize] / factorial(l)
            }
        })
        .collect()
}

// ---- Eisenstein series -----------------------------------------------------

/// The Eisenstein family: `G_ℓ` for Γ(1) plus the Γ(2) members
/// `G^{(1,0)}, G^{(0,1)}, G^{(1,1)}` and the combination `𝔾_ℓ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EisKind {
    G,
    G10,
    G01,
    G11,
    BbG,
}

impl EisKind {
    pub fn label(self) -> &'static str {
        match self {
            EisKind::G => "G",
            EisKind::G10 => "G10",
            EisKind::G01 => "G01",
            EisKind::G11 => "G11",
            EisKind::BbG => "bbG",
        }
    }
}

/// An exact divisor-sum truncation, integer-graded in `q = e^{πiτ}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EisensteinSeries {
    pub kind: EisKind,
    pub weight: u64,
    pub data: QSeries<Rat>,
}

/// Builds the requested Eisenstein series through integer q-order `order`.
pub fn eisenstein(kind: EisKind, weight: u64, order: i64) -> Result<EisensteinSeries, QuasimodError> {
    if !weight.is_multiple_of(2) || weight < 2 {
        return Err(QuasimodError::BadWeight(weight));
    }
    let bern = bernoulli_table(weight);
    let l = weight as i64;
    let mut s = QSeries::zero(order);
    match kind {
        EisKind::G => {
            // −B_ℓ/(2ℓ) + Σ_n Σ_{d|n} (n/d)^{ℓ−1} e^{2πinτ}
            s.add_term(0, -&bern[weight as usize] / rat_int(2 * l));
            for n in 1..=(order / 2) {
                let mut c = Rat::zero();
                for d in divisors(n) {
                    c += rat_pow(&rat_int(n / d), l - 1);
                }
                s.add_term(2 * n, c);
            }
        }
        EisKind::G10 => {
            for n in 1..=order {
                let mut c = Rat::zero();
                for d in divisors(n) {
                    if d % 2 == 1 {
                        c += rat_pow(&rat_int(n / d), l - 1);
                    }
                }
                s.add_term(n, c);
            }
        }
        EisKind::G01 => {
            s.add_term(
                0,
                (crate::rat::pow2(l) - Rat::one()) * zeta_one_minus(weight, &bern) / rat_int(2),
            );
            for n in 1..=order {
                let mut c = Rat::zero();
                for d in divisors(n) {
                    if d % 2 == 0 {
                        let sign = if (n / d) % 2 == 0 { 1 } else { -1 };
                        c += rat_int(sign) * rat_pow(&rat_int(n / d), l - 1);
                    }
                }
                s.add_term(n, c);
            }
        }
        EisKind::G11 => {
            for n in 1..=order {
                let mut c = Rat::zero();
                for d in divisors(n) {
                    if d % 2 == 1 {
                        let sign = if (n / d) % 2 == 0 { 1 } else { -1 };
                        c += rat_int(sign) * rat_pow(&rat_int(n / d), l - 1);
                    }
                }
                s.add_term(n, c);
            }
        }
        EisKind::BbG => {
            // (1−2^{ℓ−1})ζ(1−ℓ)/2 + Σ_n Σ_{d|n, d odd} (−1)^n d^{ℓ−1} e^{πinτ}
            s.add_term(
                0,
                (Rat::one() - crate::rat::pow2(l - 1)) * zeta_one_minus(weight, &bern)
                    / rat_int(2),
            );
            for n in 1..=order {
                let sign = if n % 2 == 0 { 1 } else { -1 };
                let mut c = Rat::zero();
                for d in divisors(n) {
                    if d % 2 == 1 {
                        c += rat_pow(&rat_int(d), l - 1);
                    }
                }
                s.add_term(n, rat_int(sign) * c);
            }
        }
    }
    Ok(EisensteinSeries {
        kind,
        weight,
        data: s,
    })
}

fn divisors(n: i64) -> Vec<i64> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out
}

/// `D = (1/πi)·∂_τ`, acting as `q^n ↦ n·q^n` on integer-graded series.
pub fn tau_derivative(s: &QSeries<Rat>) -> QSeries<Rat> {
    let mut out = QSeries::zero(s.order());
    for (n, c) in s.terms() {
        out.add_term(*n, c * rat_int(*n));
    }
    out
}

/// Checks `G_ℓ = (G^{(1,0)} + G^{(0,1)} + G^{(1,1)})/(2^ℓ−1)` and
/// `𝔾_ℓ = (1−2^{ℓ−1})·G_ℓ + G^{(1,1)}_ℓ` coefficient-exactly for
/// `ℓ = 2, 4, …, l_max`.
pub fn verify_eisenstein_identities(order: i64, l_max: u64) -> ReportSet {
    let mut reports = Vec::new();
    let mut l = 2u64;
    while l <= l_max {
        let g = eisenstein(EisKind::G, l, order).expect("valid weight");
        let g10 = eisenstein(EisKind::G10, l, order).expect("valid weight");
        let g01 = eisenstein(EisKind::G01, l, order).expect("valid weight");
        let g11 = eisenstein(EisKind::G11, l, order).expect("valid weight");
        let bbg = eisenstein(EisKind::BbG, l, order).expect("valid weight");

        let lhs1 = g.data.scale(&(crate::rat::pow2(l as i64) - Rat::one()));
        let rhs1 = g10.data.add(&g01.data).add(&g11.data);
        reports.push(compare_scalar(
            &format!("eisenstein_level_split_l{l}"),
            &lhs1,
            &rhs1,
        ));

        let coeff = Rat::one() - crate::rat::pow2(l as i64 - 1);
        let rhs2 = g.data.scale(&coeff).add(&g11.data);
        reports.push(compare_scalar(
            &format!("bbg_combination_l{l}"),
            &bbg.data,
            &rhs2,
        ));
        l += 2;
    }
    ReportSet::new(reports)
}

fn compare_scalar(name: &str, lhs: &QSeries<Rat>, rhs: &QSeries<Rat>) -> IdentityReport {
    let order = lhs.order().min(rhs.order());
    let diff = lhs.truncate(order).sub(&rhs.truncate(order));
    match diff.terms().iter().next() {
        None => IdentityReport::pass(name, order),
        Some((k, c)) => IdentityReport::fail(
            name,
            order,
            Failure {
                q_exponent: *k,
                detail: "scalar series mismatch".into(),
                lhs: crate::rat::rat_to_string(c),
                rhs: "0".into(),
            },
        ),
    }
}

// ---- Q_ℓ, P_ℓ, and brackets -------------------------------------------------

/// `P_ℓ(λ) = Σ_i [(m_i+1/2)^ℓ − (−n_i−1/2)^ℓ]` over the Frobenius coordinates.
pub fn p_function(l: u64, lam: &Partition) -> Rat {
    let fc = lam.frobenius();
    let mut acc = Rat::zero();
    for (m, n) in fc.arms().iter().zip(fc.legs()) {
        acc += rat_pow(&rat(2 * *m as i64 + 1, 2), l as i64)
            - rat_pow(&rat(-(2 * *n as i64 + 1), 2), l as i64);
    }
    acc
}

/// `Q_ℓ(λ) = P_{ℓ−1}(λ)/(ℓ−1)! + β_ℓ` for `ℓ ≥ 1`, and `Q_0 = 1`.
pub fn q_function(l: u64, lam: &Partition) -> Rat {
    if l == 0 {
        return Rat::one();
    }
    let beta = beta_coefficients(l);
    p_function(l - 1, lam) / factorial(l - 1) + &beta[l as usize]
}

/// `Q_ℓ` on a self-conjugate hook set `{h_i = 2m_i+1}`: `P_ℓ` vanishes at even
/// `ℓ` and is `2Σ(h_i/2)^ℓ` at odd `ℓ`.
fn q_on_hooks(l: u64, hooks: &[u64], beta: &[Rat]) -> Rat {
    if l == 0 {
        return Rat::one();
    }
    let mut acc = beta[l as usize].clone();
    if l.is_multiple_of(2) {
        let mut p = Rat::zero();
        for &h in hooks {
            p += rat_pow(&rat(h as i64, 2), l as i64 - 1);
        }
        acc += p * rat_int(2) / factorial(l - 1);
    }
    acc
}

/// One bracket series with the method that produced it.
#[derive(Debug, Clone)]
pub struct BracketResult {
    pub indices: Vec<u64>,
    pub weight: u64,
    pub method: String,
    /// Integer-graded in `q = e^{πiτ}`.
    pub series: QSeries<Rat>,
}

impl BracketResult {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "indices": self.indices,
            "weight": self.weight,
            "method": self.method,
            "series": crate::series::json::scalar_series_to_json(
                &self.series,
                crate::series::json::QUnit::Integer,
            ),
        })
    }
}

/// `⟨Q_{ℓ₁}···Q_{ℓₙ}⟩ = Z_s^{-1}·Σ_λ Π_j Q_{ℓ_j}(λ)·q^{|λ|}` by direct
/// enumeration of self-conjugate partitions of size ≤ `order`.
pub fn bracket_bruteforce(indices: &[u64], order: i64) -> BracketResult {
    let l_max = indices.iter().copied().max().unwrap_or(0);
    let beta = beta_coefficients(l_max.max(1));
    let mut raw = QSeries::zero(order);
    for hooks in self_conjugate_hook_sets(order.max(0) as u64) {
        let size: i64 = hooks.iter().map(|&h| h as i64).sum();
        let mut prod = Rat::one();
        for &l in indices {
            prod *= q_on_hooks(l, &hooks, &beta);
        }
        raw.add_term(size, prod);
    }
    let zs_inv = zs_series(4 * order)
        .inverse()
        .expect("unit constant term")
        .to_integer_grading()
        .expect("Z_s is integer graded");
    BracketResult {
        indices: indices.to_vec(),
        weight: indices.iter().sum(),
        method: "bruteforce".into(),
        series: raw.mul_scalar_series(&zs_inv),
    }
}

/// `M_ν = −(2^{2l(ν)−2|ν|}/|Aut ν|)·D^{l(ν)−1}·𝔾_{2|ν|−2l(ν)+2}` as a series.
fn m_mu_series(nu: &[u64], order: i64) -> QSeries<Rat> {
    let l = nu.len() as i64;
    let size: u64 = nu.iter().sum();
    let weight = 2 * size - 2 * l as u64 + 2;
    let mut series = eisenstein(EisKind::BbG, weight, order)
        .expect("weight is even and >= 2")
        .data;
    for _ in 1..l {
        series = tau_derivative(&series);
    }
    let scale = -crate::rat::pow2(2 * l - 2 * size as i64) / aut_order(nu);
    series.scale(&scale)
}

/// `|Aut(μ)| = Π_i m_i(μ)!` for a partition given as a sorted multiset.
fn aut_order(mu: &[u64]) -> Rat {
    let mut acc = Rat::one();
    let mut run = 1u64;
    for w in mu.windows(2) {
        if w[0] == w[1] {
            run += 1;
            acc *= rat_int(run as i64);
        } else {
            run = 1;
        }
    }
    acc
}

/// All multiset partitions of `values` (sorted desc) into unordered blocks.
fn multiset_partitions(values: &[u64]) -> Vec<Vec<Vec<u64>>> {
    fn rec(values: &[u64], out: &mut BTreeSet<Vec<Vec<u64>>>) {
        if values.is_empty() {
            out.insert(Vec::new());
            return;
        }
        let first = values[0];
        let rest = &values[1..];
        // Choose the sub-multiset of `rest` joining `first` in its block.
        let subsets = 1usize << rest.len();
        for mask in 0..subsets {
            let mut block = vec![first];
            let mut remainder = Vec::new();
            for (i, &v) in rest.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    block.push(v);
                } else {
                    remainder.push(v);
                }
            }
            block.sort_unstable_by(|a, b| b.cmp(a));
            let mut tails = BTreeSet::new();
            rec(&remainder, &mut tails);
            for tail in tails {
                let mut partition = tail;
                partition.push(block.clone());
                partition.sort();
                out.insert(partition);
            }
        }
    }
    let mut out = BTreeSet::new();
    rec(values, &mut out);
    out.into_iter().collect()
}

/// Closed-form bracket `⟨Π_j Q_{2μ_j}⟩` for a partition `μ` of positive
/// integers (indices are `2μ_j`), via the exponential of `Σ_ν M_ν Π s_{2ν_i}`:
/// the coefficient of `Π_j s_{2μ_j}` is `Σ_{multiset partitions} Π M_block /
/// Π mult(block)!` and converts to the bracket by `·|Aut μ|/Π(2μ_j−1)!`.
pub fn bracket_closed(mu: &[u64], order: i64) -> BracketResult {
    assert!(mu.iter().all(|&m| m > 0), "mu must have positive parts");
    let mut mu_sorted = mu.to_vec();
    mu_sorted.sort_unstable_by(|a, b| b.cmp(a));

    let mut coeff: QSeries<Rat> = QSeries::zero(order);
    for partition in multiset_partitions(&mu_sorted) {
        let mut term = QSeries::one(order);
        for block in &partition {
            term = term.mul(&m_mu_series(block, order));
        }
        // Divide by Π mult! over repeated blocks.
        let mut mult_factor = Rat::one();
        let mut i = 0;
        while i < partition.len() {
            let mut j = i + 1;
            let mut run = 1i64;
            while j < partition.len() && partition[j] == partition[i] {
                run += 1;
                mult_factor *= rat_int(run);
                j += 1;
            }
            i = j;
        }
        coeff = coeff.add(&term.scale(&mult_factor.recip()));
    }

    let mut scale = aut_order(&mu_sorted);
    for &m in &mu_sorted {
        scale /= factorial(2 * m - 1);
    }
    let indices: Vec<u64> = mu_sorted.iter().map(|&m| 2 * m).collect();
    BracketResult {
        weight: indices.iter().sum(),
        indices,
        method: "closed".into(),
        series: coeff.scale(&scale),
    }
}

/// Expands the regularized n-point series in `X_j = 2πi z_j`, divides by each
/// `2 sinh(X_j/2)` via the exact Laurent head, and reads the coefficient of
/// `Π X_j^{ℓ_j−1}` for every non-decreasing even tuple with `ℓ_j ≤ l_max`.
pub fn extract_brackets_from_npoint(
    n: usize,
    l_max: u64,
    order: i64,
) -> Result<Vec<BracketResult>, QuasimodError> {
    let x = npoint_x_expansion(n, l_max, order)?;
    let tuples = even_tuples(n, l_max);
    let mut out = Vec::new();
    for indices in tuples {
        let exps: Vec<i64> = indices.iter().map(|&l| l as i64 - 1).collect();
        out.push(BracketResult {
            weight: indices.iter().sum(),
            indices,
            method: "extracted".into(),
            series: x.coeff(&exps),
        });
    }
    Ok(out)
}

/// The full expansion `G(t₁,…,tₙ) = Σ ⟨ΠQ⟩·ΠX_j^{ℓ_j−1}` as an [`XSeries`].
pub fn npoint_x_expansion(n: usize, l_max: u64, order: i64) -> Result<XSeries, QuasimodError> {
    let np = npoint(n, order);
    let mut x = expand_u_in_x(np.reg(), n, l_max as i64)?;
    let head = sinh_half_reciprocal_head(l_max as i64);
    for var in 0..n {
        x = x.mul_univariate_head(var, &head);
    }
    Ok(x)
}

fn even_tuples(n: usize, l_max: u64) -> Vec<Vec<u64>> {
    fn rec(n: usize, min: u64, l_max: u64, acc: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if acc.len() == n {
            out.push(acc.clone());
            return;
        }
        let mut l = min;
        while l <= l_max {
            acc.push(l);
            rec(n, l, l_max, acc, out);
            acc.pop();
            l += 2;
        }
    }
    let mut out = Vec::new();
    rec(n, 2, l_max, &mut Vec::new(), &mut out);
    out
}

// ---- Eisenstein form of G ---------------------------------------------------

/// Verifies `G(t) = X^{-1}·exp(Σ_{ℓ even} 2(G_ℓ − G^{(1,1)}_ℓ)·X^ℓ/ℓ!)` as an
/// X-series comparison through `X^{l_max−1}` and q-order `order`, plus the
/// Bernoulli identity `exp(Σ B_ℓ/ℓ·X^ℓ/ℓ!) = 2 sinh(X/2)/X` through `X^10`.
pub fn verify_eisenstein_form_of_g(l_max: u64, order: i64) -> ReportSet {
    let mut reports = Vec::new();

    // Left side: extraction from the n-point function.
    let lhs = npoint_x_expansion(1, l_max, order).expect("integer-graded reg");

    // Right side: X^{-1}·exp(Σ 2(G_ℓ − G11_ℓ)X^ℓ/ℓ!).
    let mut arg = XSeries::zero(1, l_max as i64, order);
    let mut l = 2u64;
    while l <= l_max {
        let g = eisenstein(EisKind::G, l, order).expect("valid weight");
        let g11 = eisenstein(EisKind::G11, l, order).expect("valid weight");
        let coeff = g
            .data
            .sub(&g11.data)
            .scale(&(rat_int(2) / factorial(l)));
        arg.add_term(&[l as i64], coeff);
        l += 2;
    }
    let rhs = arg.exp().mul_univariate_head(0, &[(-1, Rat::one())]);

    let mut failure = None;
    'outer: for e in -1..=(l_max as i64 - 1) {
        let a = lhs.coeff(&[e]);
        let b = rhs.coeff(&[e]);
        let ord = a.order().min(b.order()).min(order);
        let diff = a.truncate(ord).sub(&b.truncate(ord));
        if let Some((k, c)) = diff.terms().iter().next() {
            failure = Some(Failure {
                q_exponent: *k,
                detail: format!("X-exponent {e} (l = {})", e + 1),
                lhs: crate::rat::rat_to_string(c),
                rhs: "0".into(),
            });
            break 'outer;
        }
    }
    reports.push(match failure {
        None => IdentityReport::pass("eisenstein_form_of_G", order),
        Some(f) => IdentityReport::fail("eisenstein_form_of_G", order, f),
    });

    // Bernoulli identity through X^10.
    let x_order = 10i64;
    let bern = bernoulli_table(x_order as u64);
    let mut arg = XSeries::zero(1, x_order, 0);
    let mut l = 2i64;
    while l <= x_order {
        arg.add_term(
            &[l],
            QSeries::monomial(0, &bern[l as usize] / rat_int(l) / factorial(l as u64), 0),
        );
        l += 2;
    }
    let exp_side = arg.exp();
    // 2 sinh(X/2)/X = Σ X^{2j}/(4^j (2j+1)!)
    let mut sinh_side = XSeries::zero(1, x_order, 0);
    let mut j = 0i64;
    while 2 * j <= x_order {
        let c = (crate::rat::pow2(2 * j) * factorial(2 * j as u64 + 1)).recip();
        sinh_side.add_term(&[2 * j], QSeries::monomial(0, c, 0));
        j += 1;
    }
    let mut bern_failure = None;
    for e in 0..=x_order {
        let d = exp_side.coeff(&[e]).sub(&sinh_side.coeff(&[e]));
        if let Some((_, c)) = d.terms().iter().next() {
            bern_failure = Some(Failure {
                q_exponent: 0,
                detail: format!("X-exponent {e}"),
                lhs: crate::rat::rat_to_string(c),
                rhs: "0".into(),
            });
            break;
        }
    }
    reports.push(match bern_failure {
        None => IdentityReport::pass("bernoulli_sinh_identity", x_order),
        Some(f) => IdentityReport::fail("bernoulli_sinh_identity", x_order, f),
    });

    ReportSet::new(reports)
}

// ---- quasimodular decomposition ---------------------------------------------

/// A successful decomposition into weight-w monomials in the generators
/// `{G₂, G₂^{(1,0)}, G₂^{(1,1)}}`.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub weight: u64,
    /// Exponent triples `(a, b, c)`: the monomial `G₂^a·(G₂^{(1,0)})^b·(G₂^{(1,1)})^c`.
    pub basis: Vec<[u32; 3]>,
    pub coeffs: Vec<Rat>,
    pub order_checked: i64,
    /// False when the monomial basis was rank-deficient on this q-range and
    /// free coefficients were set to zero.
    pub unique: bool,
}

impl Decomposition {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "weight": self.weight,
            "basis": self.basis.iter().map(|m| serde_json::json!({
                "g2": m[0], "g2_10": m[1], "g2_11": m[2],
            })).collect::<Vec<_>>(),
            "coeffs": self.coeffs.iter().map(crate::rat::rat_to_string).collect::<Vec<_>>(),
            "order_checked": self.order_checked,
            "unique": self.unique,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecomposeError {
    /// No linear combination matches: the series is not quasimodular of this
    /// weight on the checked range.
    NoSolution { first_mismatch_exponent: i64 },
    /// Weight must be even (and the series integer-graded).
    BadWeight(u64),
}

impl fmt::Display for DecomposeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecomposeError::NoSolution {
                first_mismatch_exponent,
            } => write!(
                f,
                "no weight-matched combination: first residual at q^{first_mismatch_exponent}"
            ),
            DecomposeError::BadWeight(w) => write!(f, "weight {w} must be even"),
        }
    }
}

impl std::error::Error for DecomposeError {}

/// Solves for `s` as a rational combination of the weight-`weight` monomials
/// in `{G₂, G₂^{(1,0)}, G₂^{(1,1)}}`, requiring the residual to vanish for all
/// exponents `0..=order` (the system is overdetermined when
/// `order + 1 > #monomials`).
pub fn decompose_quasimodular(
    s: &QSeries<Rat>,
    weight: u64,
    order: i64,
) -> Result<Decomposition, DecomposeError> {
    if !weight.is_multiple_of(2) {
        return Err(DecomposeError::BadWeight(weight));
    }
    let order = order.min(s.order());
    let half = (weight / 2) as u32;
    let mut basis_exps: Vec<[u32; 3]> = Vec::new();
    for a in 0..=half {
        for b in 0..=(half - a) {
            basis_exps.push([a, b, half - a - b]);
        }
    }
    let gens: Vec<QSeries<Rat>> = if weight == 0 {
        Vec::new()
    } else {
        vec![
            eisenstein(EisKind::G, 2, order).expect("weight 2").data,
            eisenstein(EisKind::G10, 2, order).expect("weight 2").data,
            eisenstein(EisKind::G11, 2, order).expect("weight 2").data,
        ]
    };
    let monomials: Vec<QSeries<Rat>> = basis_exps
        .iter()
        .map(|&[a, b, c]| {
            let mut m = QSeries::one(order);
            for _ in 0..a {
                m = m.mul(&gens[0]);
            }
            for _ in 0..b {
                m = m.mul(&gens[1]);
            }
            for _ in 0..c {
                m = m.mul(&gens[2]);
            }
            m
        })
        .collect();

    // Augmented system over exponents 0..=order.
    let rows = (order + 1) as usize;
    let cols = monomials.len();
    let mut matrix: Vec<Vec<Rat>> = (0..rows)
        .map(|k| {
            let mut row: Vec<Rat> = monomials.iter().map(|m| m.coeff(k as i64)).collect();
            row.push(s.coeff(k as i64));
            row
        })
        .collect();

    // Gaussian elimination with column pivoting.
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
    let mut pivot_row = 0usize;
    for col in 0..cols {
        let Some(r) = (pivot_row..rows).find(|&r| !matrix[r][col].is_zero()) else {
            continue;
        };
        matrix.swap(pivot_row, r);
        let inv = matrix[pivot_row][col].recip();
        for v in matrix[pivot_row][col..=cols].iter_mut() {
            *v = &*v * &inv;
        }
        let pivot_values = matrix[pivot_row].clone();
        for (r, row) in matrix.iter_mut().enumerate() {
            if r != pivot_row && !row[col].is_zero() {
                let factor = row[col].clone();
                for (v, p) in row[col..=cols].iter_mut().zip(&pivot_values[col..=cols]) {
                    *v = &*v - &factor * p;
                }
            }
        }
        pivot_of_col[col] = Some(pivot_row);
        pivot_row += 1;
        if pivot_row == rows {
            break;
        }
    }
    let rank = pivot_row;

    // Solution with free variables at zero.
    let mut coeffs = vec![Rat::zero(); cols];
    for (col, pivot) in pivot_of_col.iter().enumerate() {
        if let Some(r) = pivot {
            coeffs[col] = matrix[*r][cols].clone();
        }
    }

    // Exact residual verification against the original data.
    for k in 0..=order {
        let mut acc = Rat::zero();
        for (c, m) in coeffs.iter().zip(&monomials) {
            if !c.is_zero() {
                acc += c * m.coeff(k);
            }
        }
        if acc != s.coeff(k) {
            return Err(DecomposeError::NoSolution {
                first_mismatch_exponent: k,
            });
        }
    }

    Ok(Decomposition {
        weight,
        basis: basis_exps,
        coeffs,
        order_checked: order,
        unique: rank == cols,
    })
}
