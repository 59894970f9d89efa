//! Truncated Laurent series in the formal variables `X_j = 2πi·z_j`.
//!
//! All powers of `π` and `i` are absorbed into the `X_j`, so coefficients are
//! exact rational q-series (integer-graded). Exponents are allowed down to −1:
//! that Laurent head comes from expanding `1/(u_j − u_j^{-1}) = 1/(2 sinh(X_j/2))`,
//! and multiplying by it costs one certified degree in its variable — orders
//! are tracked per variable.

use std::collections::BTreeMap;

use super::{LaurentPoly, QSeries, SeriesError};
use crate::rat::{rat, rat_int, Rat};
use num_traits::{One, Zero};

/// Multivariate truncated X-series with integer-graded rational q-series
/// coefficients. Exponent vectors have fixed length `nvars`; component `j` is
/// certified through `x_orders[j]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XSeries {
    nvars: usize,
    x_orders: Vec<i64>,
    q_order: i64,
    terms: BTreeMap<Vec<i64>, QSeries<Rat>>,
}

impl XSeries {
    pub fn zero(nvars: usize, x_order: i64, q_order: i64) -> Self {
        XSeries {
            nvars,
            x_orders: vec![x_order; nvars],
            q_order,
            terms: BTreeMap::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Certified X-degree of each variable.
    pub fn x_orders(&self) -> &[i64] {
        &self.x_orders
    }

    /// Certified q-order (integer units) of every coefficient series.
    pub fn q_order(&self) -> i64 {
        self.q_order
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, QSeries<Rat>> {
        &self.terms
    }

    /// Coefficient q-series of `Π X_j^{exps[j]}`. Panics when a component is
    /// beyond its certified order.
    pub fn coeff(&self, exps: &[i64]) -> QSeries<Rat> {
        assert_eq!(exps.len(), self.nvars);
        assert!(
            exps.iter().zip(&self.x_orders).all(|(e, o)| e <= o),
            "X-exponent {exps:?} beyond certified orders {:?}",
            self.x_orders
        );
        self.terms
            .get(exps)
            .cloned()
            .unwrap_or_else(|| QSeries::zero(self.q_order))
    }

    fn within(&self, exps: &[i64]) -> bool {
        exps.iter().zip(&self.x_orders).all(|(e, o)| e <= o)
    }

    pub fn add_term(&mut self, exps: &[i64], series: QSeries<Rat>) {
        assert_eq!(exps.len(), self.nvars);
        if !self.within(exps) || series.is_zero() {
            return;
        }
        let truncated = series.truncate(self.q_order);
        match self.terms.entry(exps.to_vec()) {
            std::collections::btree_map::Entry::Vacant(v) => {
                if !truncated.is_zero() {
                    v.insert(truncated);
                }
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().add(&truncated);
                if sum.is_zero() {
                    o.remove();
                } else {
                    o.insert(sum);
                }
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = XSeries {
            nvars: self.nvars,
            x_orders: self
                .x_orders
                .iter()
                .zip(&rhs.x_orders)
                .map(|(a, b)| *a.min(b))
                .collect(),
            q_order: self.q_order.min(rhs.q_order),
            terms: BTreeMap::new(),
        };
        for (e, s) in &self.terms {
            out.add_term(e, s.clone());
        }
        for (e, s) in &rhs.terms {
            out.add_term(e, s.clone());
        }
        out
    }

    pub fn scale(&self, s: &Rat) -> Self {
        let mut out = XSeries {
            nvars: self.nvars,
            x_orders: self.x_orders.clone(),
            q_order: self.q_order,
            terms: BTreeMap::new(),
        };
        for (e, c) in &self.terms {
            out.add_term(e, c.scale(s));
        }
        out
    }

    /// Smallest stored exponent of variable `var` (0 when no terms).
    fn min_exp(&self, var: usize) -> i64 {
        self.terms
            .keys()
            .map(|e| e[var])
            .min()
            .unwrap_or(0)
            .min(0)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.nvars, rhs.nvars);
        // Negative exponents pull information from above the truncation, so
        // each variable's certified order shrinks by the partner's most
        // negative exponent in that variable.
        let x_orders: Vec<i64> = (0..self.nvars)
            .map(|j| {
                (self.x_orders[j] + rhs.min_exp(j)).min(rhs.x_orders[j] + self.min_exp(j))
            })
            .collect();
        let mut out = XSeries {
            nvars: self.nvars,
            x_orders,
            q_order: self.q_order.min(rhs.q_order),
            terms: BTreeMap::new(),
        };
        for (ea, sa) in &self.terms {
            for (eb, sb) in &rhs.terms {
                let e: Vec<i64> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                if !out.within(&e) {
                    continue;
                }
                out.add_term(&e, sa.mul(sb));
            }
        }
        out
    }

    /// Multiplies by a univariate Laurent head `Σ head[(e, c)] X_var^e`
    /// (a finite exact list; the sinh head starts at `X^{-1}` and costs one
    /// certified degree in its variable).
    pub fn mul_univariate_head(&self, var: usize, head: &[(i64, Rat)]) -> Self {
        let head_min = head.iter().map(|(e, _)| *e).min().unwrap_or(0).min(0);
        let mut x_orders = self.x_orders.clone();
        x_orders[var] += head_min;
        let mut out = XSeries {
            nvars: self.nvars,
            x_orders,
            q_order: self.q_order,
            terms: BTreeMap::new(),
        };
        for (e, s) in &self.terms {
            for (he, hc) in head {
                let mut exps = e.clone();
                exps[var] += he;
                if !out.within(&exps) {
                    continue;
                }
                out.add_term(&exps, s.scale(hc));
            }
        }
        out
    }

    /// exp of a series with no constant (all-zero exponent) term; the
    /// expansion terminates because every term raises some X-degree.
    pub fn exp(&self) -> Self {
        let zero_key = vec![0i64; self.nvars];
        assert!(
            !self.terms.contains_key(&zero_key),
            "exp requires vanishing X-constant term"
        );
        assert!(
            self.terms
                .keys()
                .all(|e| e.iter().all(|&x| x >= 0) && e.iter().any(|&x| x > 0)),
            "exp requires positive X-degrees"
        );
        let mut out = XSeries {
            nvars: self.nvars,
            x_orders: self.x_orders.clone(),
            q_order: self.q_order,
            terms: BTreeMap::new(),
        };
        out.add_term(&zero_key, QSeries::one(self.q_order));
        let mut power = out.clone();
        let mut k = 1u64;
        loop {
            power = power.mul(self);
            if power.terms.is_empty() {
                break;
            }
            out = out.add(&power.scale(&crate::rat::factorial(k).recip()));
            k += 1;
        }
        out
    }
}

/// Expands a Laurent-coefficient q-series into an [`XSeries`] by substituting
/// `u_j^a ↦ exp(a·X_j/2) = Σ_k (a/2)^k X_j^k / k!`, truncated at `x_order` per
/// variable. The q-grading must be integer (reduced from quarter units).
pub fn expand_u_in_x(
    s: &QSeries<LaurentPoly>,
    nvars: usize,
    x_order: i64,
) -> Result<XSeries, SeriesError> {
    let int = s.to_integer_grading()?;
    let mut out = XSeries::zero(nvars, x_order, int.order());
    // Cache of exponential coefficient columns (a/2)^k/k!.
    let mut cache: BTreeMap<i64, Vec<Rat>> = BTreeMap::new();
    let mut exp_column = |a: i64| -> Vec<Rat> {
        cache
            .entry(a)
            .or_insert_with(|| {
                let half = rat(a, 2);
                let mut col = Vec::with_capacity(x_order as usize + 1);
                let mut cur = Rat::one();
                for k in 0..=x_order {
                    col.push(cur.clone());
                    cur = &cur * &half / rat_int(k + 1);
                }
                col
            })
            .clone()
    };
    for (k, poly) in int.terms() {
        for (exps, c) in poly.terms() {
            // Tensor the per-variable exponential columns.
            let mut acc: Vec<(Vec<i64>, Rat)> = vec![(Vec::new(), c.clone())];
            for j in 0..nvars {
                let a = exps.get(j).copied().unwrap_or(0);
                let col = exp_column(a);
                let mut next = Vec::with_capacity(acc.len() * col.len());
                for (e, coeff) in &acc {
                    for (deg, w) in col.iter().enumerate() {
                        if w.is_zero() {
                            if deg > 0 {
                                break; // a = 0: only the constant survives
                            }
                            continue;
                        }
                        let mut e2 = e.clone();
                        e2.push(deg as i64);
                        next.push((e2, coeff * w));
                    }
                }
                acc = next;
            }
            for (e, coeff) in acc {
                out.add_term(&e, QSeries::monomial(*k, coeff, int.order()));
            }
        }
    }
    Ok(out)
}

/// Laurent head of `1/(2 sinh(X/2))` through `X^{x_order}`: the pairs
/// `(ℓ − 1, β_ℓ)` where `Σ β_ℓ x^ℓ = (x/2)/sinh(x/2)`.
///
/// Computed by direct series inversion of `2 sinh(X/2)/X`, independently of
/// the Bernoulli closed form used elsewhere.
pub fn sinh_half_reciprocal_head(x_order: i64) -> Vec<(i64, Rat)> {
    let n = (x_order + 1).max(1) as usize;
    // T(X) = 2 sinh(X/2)/X = Σ_j X^{2j} / (4^j (2j+1)!)
    let mut t = vec![Rat::zero(); n + 1];
    let mut j = 0usize;
    while 2 * j <= n {
        let denom = crate::rat::pow2(2 * j as i64) * crate::rat::factorial(2 * j as u64 + 1);
        t[2 * j] = denom.recip();
        j += 1;
    }
    // Invert the power series T (constant term 1).
    let mut inv = vec![Rat::zero(); n + 1];
    inv[0] = Rat::one();
    for k in 1..=n {
        let mut acc = Rat::zero();
        for i in 1..=k {
            if !t[i].is_zero() {
                acc += &t[i] * &inv[k - i];
            }
        }
        inv[k] = -acc;
    }
    inv.into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (k as i64 - 1, c))
        .filter(|(e, _)| *e <= x_order)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::LaurentPoly;

    #[test]
    fn expands_two_sinh_half() {
        // u − u^{-1} = 2 sinh(X/2) = X + X³/24 + X⁵/1920 + …
        let p = LaurentPoly::var_pow(0, 1).sub(&LaurentPoly::var_pow(0, -1));
        let s = QSeries::monomial(0, p, 40);
        let x = expand_u_in_x(&s, 1, 6).unwrap();
        assert_eq!(x.coeff(&[1]).coeff(0), rat_int(1));
        assert_eq!(x.coeff(&[3]).coeff(0), rat(1, 24));
        assert_eq!(x.coeff(&[5]).coeff(0), rat(1, 1920));
        assert!(x.coeff(&[0]).is_zero());
        assert!(x.coeff(&[2]).is_zero());
        // Constant 1 expands to 1.
        let one = QSeries::monomial(0, LaurentPoly::one(), 40);
        let xo = expand_u_in_x(&one, 1, 4).unwrap();
        assert_eq!(xo.coeff(&[0]).coeff(0), rat_int(1));
        assert_eq!(xo.terms().len(), 1);
    }

    #[test]
    fn sinh_reciprocal_head_matches_inversion_oracle() {
        // 1/(2 sinh(X/2)) = X^{-1} − X/24 + 7X³/5760 − …
        let head = sinh_half_reciprocal_head(5);
        let get = |e: i64| {
            head.iter()
                .find(|(he, _)| *he == e)
                .map(|(_, c)| c.clone())
                .unwrap_or_else(Rat::zero)
        };
        assert_eq!(get(-1), rat_int(1));
        assert_eq!(get(1), rat(-1, 24));
        assert_eq!(get(3), rat(7, 5760));
        assert!(get(0).is_zero());
        assert!(get(2).is_zero());
    }

    #[test]
    fn expansion_of_inverse_powers_multiply_to_one() {
        // expand(u^a) · expand(u^{-a}) = 1 through the X-order.
        for a in [1i64, 2, 5] {
            let pa = QSeries::monomial(0, LaurentPoly::var_pow(0, a), 20);
            let pb = QSeries::monomial(0, LaurentPoly::var_pow(0, -a), 20);
            let xa = expand_u_in_x(&pa, 1, 8).unwrap();
            let xb = expand_u_in_x(&pb, 1, 8).unwrap();
            let prod = xa.mul(&xb);
            for e in 0..=8i64 {
                let c = prod.coeff(&[e]).coeff(0);
                if e == 0 {
                    assert_eq!(c, rat_int(1));
                } else {
                    assert!(c.is_zero(), "X^{e} coefficient should vanish");
                }
            }
        }
    }

    #[test]
    fn exp_of_pure_positive_series_terminates() {
        // exp(X) through X⁴.
        let mut arg = XSeries::zero(1, 4, 0);
        arg.add_term(&[1], QSeries::one(0));
        let e = arg.exp();
        assert_eq!(e.coeff(&[0]).coeff(0), rat_int(1));
        assert_eq!(e.coeff(&[2]).coeff(0), rat(1, 2));
        assert_eq!(e.coeff(&[4]).coeff(0), rat(1, 24));
    }

    #[test]
    fn head_multiplication_reduces_certified_order_per_variable() {
        let p = LaurentPoly::monomial(&[1, 1], Rat::one());
        let s = QSeries::monomial(0, p, 8);
        let x = expand_u_in_x(&s, 2, 4).unwrap();
        let head = sinh_half_reciprocal_head(4);
        let y = x.mul_univariate_head(0, &head);
        assert_eq!(y.x_orders(), &[3, 4]);
        let z = y.mul_univariate_head(1, &head);
        assert_eq!(z.x_orders(), &[3, 3]);
    }
}
