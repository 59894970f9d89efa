//! Jacobi theta series `Θ₁(t;q) = Σ (−1)^n q^{(n+1/2)²} t^{n+1/2}` and
//! `Θ₃(t;q) = Σ q^{n²} t^n`, their triple products, logarithmic derivatives,
//! and the cross-multiplied closed formulas for the one- and two-point
//! functions.
//!
//! In the quarter grading a Θ₁ term sits at quarter-exponent `(2n+1)²` with
//! u-exponent `2n+1`; a Θ₃ term at `4n²` with u-exponent `2n`. The q-shift
//! `t ↦ q²t` moves a term with u-exponent `a` up by `4a` quarter units, so the
//! sum forms give the exact shift laws
//!
//! ```text
//! qt·Θ₁(q²t;q) = −Θ₁(t;q)          qt·Θ₁'(q²t;q) = Θ₁(t;q) − Θ₁'(t;q)
//! qt·Θ₃(q²t;q) =  Θ₃(t;q)          qt·Θ₃'(q²t;q) = Θ₃'(t;q) − Θ₃(t;q)
//! ```
//!
//! (`Θ'` is `t·∂/∂t`.) Every verifier here clears denominators first and then
//! compares Laurent-polynomial coefficients exactly; no rational-function
//! arithmetic is used anywhere.

use std::fmt;

use crate::correlation::npoint;
use crate::rat::{rat, Rat};
use crate::report::{Failure, IdentityReport, ReportSet};
use crate::series::{product_expand, LaurentPoly, ProductFactor, QSeries};
use num_traits::One;

/// Which classical theta function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThetaKind {
    One,
    Three,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ThetaError {
    /// The reduced form divides out `q^{1/4}(u − u^{-1})`, which only Θ₁ has.
    ReducedKindThree,
}

impl fmt::Display for ThetaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ThetaError::ReducedKindThree => {
                write!(f, "only theta_1 has a reduced form")
            }
        }
    }
}

impl std::error::Error for ThetaError {}

/// A truncated theta series with single-variable Laurent coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaSeries {
    kind: ThetaKind,
    reduced: bool,
    data: QSeries<LaurentPoly>,
}

impl ThetaSeries {
    pub fn kind(&self) -> ThetaKind {
        self.kind
    }

    pub fn reduced(&self) -> bool {
        self.reduced
    }

    pub fn data(&self) -> &QSeries<LaurentPoly> {
        &self.data
    }
}

/// Builds a theta series to the given quarter order. With `reduced` (kind 1
/// only) returns `q^{-1/4}·Θ₁/(u−u^{-1})` computed from the triple product
/// `Π(1−q^{2m})(1−q^{2m}t)(1−q^{2m}/t)`.
pub fn theta_series(
    kind: ThetaKind,
    order_quarter: i64,
    reduced: bool,
) -> Result<ThetaSeries, ThetaError> {
    let data = match (kind, reduced) {
        (ThetaKind::One, false) => theta1_sum(order_quarter),
        (ThetaKind::One, true) => theta1_reduced_product(order_quarter),
        (ThetaKind::Three, false) => theta3_sum(order_quarter),
        (ThetaKind::Three, true) => return Err(ThetaError::ReducedKindThree),
    };
    Ok(ThetaSeries {
        kind,
        reduced,
        data,
    })
}

pub(crate) fn theta1_sum(order: i64) -> QSeries<LaurentPoly> {
    let mut s = QSeries::zero(order);
    let mut n = 0i64;
    loop {
        let a = 2 * n + 1;
        if a * a > order {
            break;
        }
        let sign = if n.rem_euclid(2) == 0 {
            Rat::one()
        } else {
            -Rat::one()
        };
        // Indices n and −(n+1) give u-exponents ±(2n+1) at the same
        // q-exponent with opposite signs.
        s.add_term(a * a, LaurentPoly::monomial(&[a], sign.clone()));
        s.add_term(a * a, LaurentPoly::monomial(&[-a], -sign));
        n += 1;
    }
    s
}

pub(crate) fn theta3_sum(order: i64) -> QSeries<LaurentPoly> {
    let mut s = QSeries::zero(order);
    s.add_term(0, LaurentPoly::one());
    let mut n = 1i64;
    while 4 * n * n <= order {
        s.add_term(4 * n * n, LaurentPoly::monomial(&[2 * n], Rat::one()));
        s.add_term(4 * n * n, LaurentPoly::monomial(&[-2 * n], Rat::one()));
        n += 1;
    }
    s
}

/// `Π_{m≥1} (1−q^{2m})(1−q^{2m}u²)(1−q^{2m}u^{-2})`, integer-graded.
pub(crate) fn theta1_reduced_product(order: i64) -> QSeries<LaurentPoly> {
    let mut acc: QSeries<LaurentPoly> = QSeries::one(order);
    let mut m = 1i64;
    while 8 * m <= order {
        for exps in [vec![0], vec![2], vec![-2]] {
            let factor = QSeries::from_terms(
                [
                    (0, LaurentPoly::one()),
                    (8 * m, LaurentPoly::monomial(&exps, -Rat::one())),
                ],
                order,
            );
            acc = acc.mul(&factor);
        }
        m += 1;
    }
    acc
}

/// `Π_{m≥1} (1−q^{2m})(1+q^{2m−1}u²)(1+q^{2m−1}u^{-2})`: triple product of Θ₃.
fn theta3_product(order: i64) -> QSeries<LaurentPoly> {
    let mut acc: QSeries<LaurentPoly> = QSeries::one(order);
    let mut m = 1i64;
    while 4 * (2 * m - 1) <= order {
        let mut factors = vec![(8 * m, vec![0], -Rat::one())];
        factors.push((4 * (2 * m - 1), vec![2], Rat::one()));
        factors.push((4 * (2 * m - 1), vec![-2], Rat::one()));
        for (k, exps, sign) in factors {
            if k > order {
                continue;
            }
            let factor = QSeries::from_terms(
                [
                    (0, LaurentPoly::one()),
                    (k, LaurentPoly::monomial(&exps, sign)),
                ],
                order,
            );
            acc = acc.mul(&factor);
        }
        m += 1;
    }
    acc
}

/// `t ∂/∂t` applied coefficient-wise (multiplies a `u^a`-term by `a/2`).
pub fn theta_prime(series: &QSeries<LaurentPoly>) -> QSeries<LaurentPoly> {
    series.map_coeffs(|p| p.t_log_derivative(0))
}

/// `Θ(q²t)` rebuilt exactly from the sum form: each term moves up by
/// `4·(u-exponent)` quarter units. `derivative` shifts `Θ'` instead.
fn theta_shifted(kind: ThetaKind, order: i64, derivative: bool) -> QSeries<LaurentPoly> {
    let mut s = QSeries::zero(order);
    let bound = (order.max(4) as f64).sqrt() as i64 + 4;
    for n in -(bound + 2)..=bound {
        let a = match kind {
            ThetaKind::One => 2 * n + 1,
            ThetaKind::Three => 2 * n,
        };
        let k = a * a + 4 * a;
        if k > order {
            continue;
        }
        let mut c = match kind {
            ThetaKind::One => {
                if n.rem_euclid(2) == 0 {
                    Rat::one()
                } else {
                    -Rat::one()
                }
            }
            ThetaKind::Three => Rat::one(),
        };
        if derivative {
            c *= rat(a, 2);
        }
        if !num_traits::Zero::is_zero(&c) {
            s.add_term(k, LaurentPoly::monomial(&[a], c));
        }
    }
    s
}

/// Logarithmic-derivative package: `Θ`, `Θ' = t∂_t Θ`, and the geometric-series
/// form of the ratio with its pole cleared.
///
/// For kind 1 the `cleared_ratio` is `(u²−1)·Θ₁'/Θ₁ =
/// (u²+1)/2 + (u²−1)·Σ_{m,j≥1} q^{2mj}(t^{-j} − t^{j})`; for kind 3 it is
/// `Θ₃'/Θ₃ = Σ_{m,j≥1} (−1)^{j−1} q^{(2m−1)j}(t^{j} − t^{-j})` (pole-free).
pub struct ThetaLogDerivative {
    pub kind: ThetaKind,
    pub theta: QSeries<LaurentPoly>,
    pub theta_prime: QSeries<LaurentPoly>,
    pub cleared_ratio: QSeries<LaurentPoly>,
}

pub fn theta_log_derivative(kind: ThetaKind, order_quarter: i64) -> ThetaLogDerivative {
    let order = order_quarter;
    let theta = match kind {
        ThetaKind::One => theta1_sum(order),
        ThetaKind::Three => theta3_sum(order),
    };
    let prime = theta_prime(&theta);
    let cleared = match kind {
        ThetaKind::One => {
            let mut s = QSeries::zero(order);
            let half = rat(1, 2);
            s.add_term(0, LaurentPoly::monomial(&[2], half.clone()));
            s.add_term(0, LaurentPoly::constant(half));
            let u2m1 = LaurentPoly::var_pow(0, 2).sub(&LaurentPoly::one());
            let mut m = 1i64;
            while 8 * m <= order {
                let mut j = 1i64;
                while 8 * m * j <= order {
                    let inner = LaurentPoly::var_pow(0, -2 * j)
                        .sub(&LaurentPoly::var_pow(0, 2 * j));
                    s.add_term(8 * m * j, u2m1.mul(&inner));
                    j += 1;
                }
                m += 1;
            }
            s
        }
        ThetaKind::Three => {
            let mut s = QSeries::zero(order);
            let mut m = 1i64;
            while 4 * (2 * m - 1) <= order {
                let mut j = 1i64;
                while 4 * (2 * m - 1) * j <= order {
                    let sign = if j % 2 == 1 { Rat::one() } else { -Rat::one() };
                    let inner = LaurentPoly::var_pow(0, 2 * j)
                        .sub(&LaurentPoly::var_pow(0, -2 * j))
                        .scale_rat(&sign);
                    s.add_term(4 * (2 * m - 1) * j, inner);
                    j += 1;
                }
                m += 1;
            }
            s
        }
    };
    ThetaLogDerivative {
        kind,
        theta,
        theta_prime: prime,
        cleared_ratio: cleared,
    }
}

/// `q^{1/4}·Π (1−q^{2m})²/(1+q^{2m−1})²`: the prefactor of the closed formulas.
pub fn prefactor_series(order_quarter: i64) -> QSeries<Rat> {
    prefactor_integer_part(order_quarter).shift_q(1)
}

/// The prefactor without its `q^{1/4}`: `Π (1−q^{2m})²/(1+q^{2m−1})²`.
pub fn prefactor_integer_part(order_quarter: i64) -> QSeries<Rat> {
    let numerator = product_expand(&[ProductFactor::new(2, 0, -1, 2)], order_quarter);
    let denominator = product_expand(&[ProductFactor::new(2, -1, 1, 2)], order_quarter);
    numerator.mul(&denominator.inverse().expect("constant term 1"))
}

fn compare_series(
    name: &str,
    lhs: &QSeries<LaurentPoly>,
    rhs: &QSeries<LaurentPoly>,
    order: i64,
) -> IdentityReport {
    let order = order.min(lhs.order()).min(rhs.order());
    let diff = lhs.truncate(order).sub(&rhs.truncate(order));
    match diff.terms().iter().next() {
        None => IdentityReport::pass(name, order),
        Some((k, poly)) => {
            let (exps, c) = poly.terms().iter().next().expect("nonzero poly");
            IdentityReport::fail(
                name,
                order,
                Failure {
                    q_exponent: *k,
                    detail: format!("u-exponents {exps:?}"),
                    lhs: crate::rat::rat_to_string(c),
                    rhs: "0".into(),
                },
            )
        }
    }
}

/// Verifies, coefficient-exactly through the quarter order: both triple
/// products, the q-shift laws, the derivative shift laws, both inversion
/// symmetries, and the cleared log-derivative expansions.
pub fn verify_theta_identities(order_quarter: i64) -> ReportSet {
    verify_theta_identities_inner(order_quarter, false)
}

/// Same checks with one Θ₁ coefficient deliberately corrupted; exercises the
/// failure paths and the CLI exit-code contract.
pub fn verify_theta_identities_corrupted(order_quarter: i64) -> ReportSet {
    verify_theta_identities_inner(order_quarter, true)
}

fn verify_theta_identities_inner(order: i64, corrupt: bool) -> ReportSet {
    let mut theta1 = theta1_sum(order);
    if corrupt {
        theta1.add_term(1, LaurentPoly::monomial(&[3], rat(1, 7)));
    }
    let theta3 = theta3_sum(order);
    let u_minus_inv = LaurentPoly::var_pow(0, 1).sub(&LaurentPoly::var_pow(0, -1));
    let qt = |s: &QSeries<LaurentPoly>| s.shift_q(4).mul_coeff(&LaurentPoly::var_pow(0, 2));

    let mut reports = Vec::new();

    let tp1 = theta1_reduced_product(order)
        .mul_coeff(&u_minus_inv)
        .shift_q(1);
    reports.push(compare_series("theta1_triple_product", &theta1, &tp1, order));
    reports.push(compare_series(
        "theta3_triple_product",
        &theta3,
        &theta3_product(order),
        order,
    ));

    let sh1 = theta_shifted(ThetaKind::One, order, false);
    reports.push(compare_series(
        "theta1_q_shift",
        &qt(&sh1),
        &theta1.neg(),
        order,
    ));
    let sh3 = theta_shifted(ThetaKind::Three, order, false);
    reports.push(compare_series("theta3_q_shift", &qt(&sh3), &theta3, order));

    let sh1d = theta_shifted(ThetaKind::One, order, true);
    reports.push(compare_series(
        "theta1_derivative_q_shift",
        &qt(&sh1d),
        &theta1.sub(&theta_prime(&theta1)),
        order,
    ));
    let sh3d = theta_shifted(ThetaKind::Three, order, true);
    reports.push(compare_series(
        "theta3_derivative_q_shift",
        &qt(&sh3d),
        &theta_prime(&theta3).sub(&theta3),
        order,
    ));

    reports.push(compare_series(
        "theta1_inversion_antisymmetry",
        &theta1.map_coeffs(|p| p.invert_all_vars()),
        &theta1.neg(),
        order,
    ));
    reports.push(compare_series(
        "theta3_inversion_symmetry",
        &theta3.map_coeffs(|p| p.invert_all_vars()),
        &theta3,
        order,
    ));

    let ld1 = theta_log_derivative(ThetaKind::One, order);
    let u2m1 = LaurentPoly::var_pow(0, 2).sub(&LaurentPoly::one());
    reports.push(compare_series(
        "theta1_log_derivative_cleared",
        &ld1.cleared_ratio.mul(&theta1),
        &theta_prime(&theta1).mul_coeff(&u2m1),
        order,
    ));
    let ld3 = theta_log_derivative(ThetaKind::Three, order);
    reports.push(compare_series(
        "theta3_log_derivative_cleared",
        &ld3.cleared_ratio.mul(&theta3),
        &theta_prime(&theta3),
        order,
    ));

    ReportSet::new(reports)
}

/// Cross-multiplied one-point closed formula
/// `G(t)·Θ₁(t) = q^{1/4}·Π(1−q^{2m})²/(1+q^{2m−1})²·Θ₃(t)`, cleared to
/// `reg₁·Θ₁ʳᵉᵈ = [Π(1−q^{2m})²/(1+q^{2m−1})²]·Θ₃` with `reg₁ = G·(u−u^{-1})`.
pub fn verify_onepoint(order_int: i64) -> IdentityReport {
    let order = 4 * order_int;
    let reg = npoint(1, order_int);
    let lhs = reg.reg().mul(&theta1_reduced_product(order));
    let rhs = theta3_sum(order).mul_scalar_series(&prefactor_integer_part(order));
    compare_series("onepoint_closed_formula", &lhs, &rhs, order)
}

/// Cross-multiplied two-point closed formula, all denominators cleared by
/// `Θ₁(t₁t₂)Θ₁(t₁/t₂)Θ₁(t₁)Θ₁(t₂)` and the `t₂/t₁` arguments folded into
/// `t₁/t₂` by the inversion symmetries:
///
/// ```text
/// reg₂·q^{1/2}·TP₁(t₁)·TP₁(t₂)·Θ₁(w)·Θ₁(v)
///   = pref·[ Θ₃'(w)·Θ₁(v)·Θ₁(t₁)·Θ₁(t₂)
///          − Θ₁'(t₁)·Θ₃(v)·Θ₁(w)·Θ₁(t₂)
///          + Θ₁'(t₂)·Θ₃(v)·Θ₁(w)·Θ₁(t₁) ]
/// ```
///
/// with `w = t₁t₂`, `v = t₁/t₂`, `TP₁ = Θ₁/(q^{1/4}(u−u^{-1}))`, compound
/// arguments realized by exponent-vector substitution.
pub fn verify_twopoint(order_int: i64) -> IdentityReport {
    let order = 4 * order_int;
    let reg2 = npoint(2, order_int);

    let to_var = |s: &QSeries<LaurentPoly>, image: Vec<i64>| -> QSeries<LaurentPoly> {
        s.map_coeffs(|p| p.map_monomials(std::slice::from_ref(&image)))
    };

    let theta1 = theta1_sum(order);
    let theta3 = theta3_sum(order);
    let theta1p = theta_prime(&theta1);
    let theta3p = theta_prime(&theta3);
    let tp1 = theta1_reduced_product(order);

    let t1 = vec![1, 0];
    let t2 = vec![0, 1];
    let w = vec![1, 1];
    let v = vec![1, -1];

    let lhs = reg2
        .reg()
        .mul(&to_var(&tp1, t1.clone()))
        .mul(&to_var(&tp1, t2.clone()))
        .mul(&to_var(&theta1, w.clone()))
        .mul(&to_var(&theta1, v.clone()))
        .shift_q(2);

    let pref = prefactor_series(order);
    let term_a = to_var(&theta3p, w.clone())
        .mul(&to_var(&theta1, v.clone()))
        .mul(&to_var(&theta1, t1.clone()))
        .mul(&to_var(&theta1, t2.clone()));
    let term_b = to_var(&theta1p, t1.clone())
        .mul(&to_var(&theta3, v.clone()))
        .mul(&to_var(&theta1, w.clone()))
        .mul(&to_var(&theta1, t2));
    let term_c = to_var(&theta1p, vec![0, 1])
        .mul(&to_var(&theta3, v))
        .mul(&to_var(&theta1, w))
        .mul(&to_var(&theta1, t1));
    let rhs = term_a.sub(&term_b).add(&term_c).mul_scalar_series(&pref);

    compare_series("twopoint_closed_formula", &lhs, &rhs, 4 * order_int)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_int;

    #[test]
    fn theta_sum_forms_leading_terms() {
        // Θ₁ = q^{1/4}(u − u^{-1}) − q^{9/4}(u³ − u^{-3}) + …
        let t1 = theta1_sum(30);
        let d = LaurentPoly::var_pow(0, 1).sub(&LaurentPoly::var_pow(0, -1));
        assert_eq!(t1.coeff(1), d);
        let d3 = LaurentPoly::var_pow(0, 3).sub(&LaurentPoly::var_pow(0, -3));
        assert_eq!(t1.coeff(9), d3.neg());
        assert_eq!(
            t1.coeff(25),
            LaurentPoly::var_pow(0, 5).sub(&LaurentPoly::var_pow(0, -5))
        );
        // Θ₃ = 1 + q(u² + u^{-2}) + q⁴(u⁴ + u^{-4}) + …
        let t3 = theta3_sum(30);
        assert_eq!(t3.coeff(0), LaurentPoly::one());
        assert_eq!(
            t3.coeff(4),
            LaurentPoly::var_pow(0, 2).add(&LaurentPoly::var_pow(0, -2))
        );
        assert_eq!(
            t3.coeff(16),
            LaurentPoly::var_pow(0, 4).add(&LaurentPoly::var_pow(0, -4))
        );
    }

    #[test]
    fn reduced_form_times_factor_recovers_theta1() {
        let order = 60;
        let reduced = theta_series(ThetaKind::One, order, true).unwrap();
        let d = LaurentPoly::var_pow(0, 1).sub(&LaurentPoly::var_pow(0, -1));
        let rebuilt = reduced.data().mul_coeff(&d).shift_q(1);
        let direct = theta1_sum(order);
        let n = rebuilt.order().min(order);
        assert_eq!(rebuilt.truncate(n), direct.truncate(n));
        assert!(theta_series(ThetaKind::Three, order, true).is_err());
    }

    #[test]
    fn all_identities_pass_through_order_100() {
        let set = verify_theta_identities(100);
        for report in &set.reports {
            assert!(
                report.passed(),
                "{}: {:?}",
                report.identity,
                report.first_failure
            );
        }
    }

    #[test]
    fn corrupted_series_fails() {
        let set = verify_theta_identities_corrupted(40);
        assert!(!set.passed());
        let failing = set.first_failure().unwrap();
        assert!(failing.first_failure.is_some());
    }

    #[test]
    fn log_derivative_examples() {
        // Θ₃'/Θ₃ constant term is 0; q¹ coefficient is t − t^{-1} = u² − u^{-2}.
        let ld = theta_log_derivative(ThetaKind::Three, 40);
        assert!(num_traits::Zero::is_zero(&ld.cleared_ratio.coeff(0)));
        let expected = LaurentPoly::var_pow(0, 2).sub(&LaurentPoly::var_pow(0, -2));
        assert_eq!(ld.cleared_ratio.coeff(4), expected);
    }

    #[test]
    fn prefactor_leading_terms() {
        // Starts at q^{1/4}; the q⁰ term vanishes by the grading.
        let p = prefactor_series(60);
        assert_eq!(p.coeff(0), rat_int(0));
        assert_eq!(p.coeff(1), rat_int(1));
        assert_eq!(p.coeff(5), rat_int(-2));
        // Oracle: multiplying back by Π(1+q^{2m-1})² recovers q^{1/4}·Π(1−q^{2m})².
        let back = p.mul(&product_expand(&[ProductFactor::new(2, -1, 1, 2)], 60));
        let target = product_expand(&[ProductFactor::new(2, 0, -1, 2)], 60).shift_q(1);
        let n = back.order().min(target.order());
        assert_eq!(back.truncate(n), target.truncate(n));
    }

    #[test]
    fn prefactor_square_consistency() {
        // pref² · Π(1+q^{2m−1})⁴ = q^{1/2} Π(1−q^{2m})⁴.
        let order = 80;
        let p = prefactor_series(order);
        let lhs = p
            .mul(&p)
            .mul(&product_expand(&[ProductFactor::new(2, -1, 1, 4)], order));
        let rhs = product_expand(&[ProductFactor::new(2, 0, -1, 4)], order).shift_q(2);
        let n = lhs.order().min(rhs.order());
        assert_eq!(lhs.truncate(n), rhs.truncate(n));
    }

    #[test]
    fn onepoint_closed_formula_small() {
        let report = verify_onepoint(6);
        assert!(report.passed(), "{:?}", report.first_failure);
    }

    #[test]
    fn twopoint_closed_formula_small() {
        let report = verify_twopoint(3);
        assert!(report.passed(), "{:?}", report.first_failure);
    }

    #[test]
    fn twopoint_cleared_sides_are_swap_symmetric() {
        // The cleared identity is symmetric under (u₁, u₂) exchange up to the
        // v ↦ 1/v antisymmetries cancelling; verify on the assembled LHS.
        let order = 12;
        let reg2 = npoint(2, order / 4);
        let to_var = |s: &QSeries<LaurentPoly>, image: Vec<i64>| -> QSeries<LaurentPoly> {
            s.map_coeffs(|p| p.map_monomials(&[image.clone()]))
        };
        let theta1 = theta1_sum(order);
        let tp1 = theta1_reduced_product(order);
        let lhs = reg2
            .reg()
            .mul(&to_var(&tp1, vec![1, 0]))
            .mul(&to_var(&tp1, vec![0, 1]))
            .mul(&to_var(&theta1, vec![1, 1]))
            .mul(&to_var(&theta1, vec![1, -1]));
        let swapped = lhs.map_coeffs(|p| p.map_monomials(&[vec![0, 1], vec![1, 0]]));
        // All factors are swap-symmetric except Θ₁(t₁/t₂), which flips sign;
        // both sides of the cleared identity transform the same way, so the
        // identity is swap-invariant. Assert the antisymmetry on the LHS.
        let n = lhs.order().min(swapped.order());
        assert_eq!(lhs.truncate(n).neg(), swapped.truncate(n));
        // And the corresponding RHS assembly transforms identically.
        let theta3 = theta3_sum(order);
        let term_b = to_var(&theta_prime(&theta1), vec![1, 0])
            .mul(&to_var(&theta3, vec![1, -1]))
            .mul(&to_var(&theta1, vec![1, 1]))
            .mul(&to_var(&theta1, vec![0, 1]));
        let term_c = to_var(&theta_prime(&theta1), vec![0, 1])
            .mul(&to_var(&theta3, vec![1, -1]))
            .mul(&to_var(&theta1, vec![1, 1]))
            .mul(&to_var(&theta1, vec![1, 0]));
        let swapped_b = term_b.map_coeffs(|p| p.map_monomials(&[vec![0, 1], vec![1, 0]]));
        let m = term_c.order().min(swapped_b.order());
        assert_eq!(swapped_b.truncate(m), term_c.truncate(m));
    }

    #[test]
    fn onepoint_sides_agree_at_rational_points() {
        // Evaluation oracle: both cleared sides agree per q-order at u = 5/3.
        let order = 24;
        let reg = npoint(1, order / 4);
        let lhs = reg.reg().mul(&theta1_reduced_product(order));
        let rhs = theta3_sum(order).mul_scalar_series(&prefactor_integer_part(order));
        let point = [rat(5, 3)];
        for k in 0..=order.min(lhs.order()).min(rhs.order()) {
            assert_eq!(lhs.coeff(k).eval(&point), rhs.coeff(k).eval(&point));
        }
    }
}
