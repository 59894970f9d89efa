//! Sparse multivariate Laurent polynomials in `u_j = t_j^{1/2}`.
//!
//! Exponent vectors are stored with trailing zeros trimmed, so the same value
//! embeds into any number of variables; `nvars` is contextual (serialization
//! pads). Coefficients are exact rationals.

use std::collections::BTreeMap;

use super::{Coeff, QSeries};
use crate::rat::{rat_pow, Rat};
use num_traits::{One, Zero};

/// Sparse Laurent polynomial: exponent vector ↦ nonzero rational coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    terms: BTreeMap<Vec<i64>, Rat>,
}

fn trim(mut exps: Vec<i64>) -> Vec<i64> {
    while exps.last() == Some(&0) {
        exps.pop();
    }
    exps
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = Self::zero();
        p.add_term(&[], c);
        p
    }

    /// `c · Π u_j^{exps[j]}`.
    pub fn monomial(exps: &[i64], c: Rat) -> Self {
        let mut p = Self::zero();
        p.add_term(exps, c);
        p
    }

    /// `u_var^e` in a single variable slot.
    pub fn var_pow(var: usize, e: i64) -> Self {
        let mut exps = vec![0; var + 1];
        exps[var] = e;
        Self::monomial(&exps, Rat::one())
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, Rat> {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Smallest variable count that covers every stored exponent.
    pub fn width(&self) -> usize {
        self.terms.keys().map(|k| k.len()).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, exps: &[i64], c: Rat) {
        if c.is_zero() {
            return;
        }
        let key = trim(exps.to_vec());
        let entry = self.terms.entry(key);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    o.insert(sum);
                }
            }
        }
    }

    pub fn coeff(&self, exps: &[i64]) -> Rat {
        self.terms
            .get(&trim(exps.to_vec()))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let mut e = vec![0i64; ea.len().max(eb.len())];
                for (i, v) in ea.iter().enumerate() {
                    e[i] += v;
                }
                for (i, v) in eb.iter().enumerate() {
                    e[i] += v;
                }
                out.add_term(&e, ca * cb);
            }
        }
        out
    }

    pub fn scale_rat(&self, s: &Rat) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect(),
        }
    }

    /// Exact evaluation at nonzero rational coordinates. `point` must cover
    /// every variable that actually occurs.
    pub fn eval(&self, point: &[Rat]) -> Rat {
        let mut acc = Rat::zero();
        for (exps, c) in &self.terms {
            let mut term = c.clone();
            for (j, &e) in exps.iter().enumerate() {
                if e != 0 {
                    term *= rat_pow(&point[j], e);
                }
            }
            acc += term;
        }
        acc
    }

    /// Ring homomorphism `u_j ↦ Π_i u_i^{images[j][i]}` (pure monomial images,
    /// no q content). Variables past `images.len()` must not occur.
    pub fn map_monomials(&self, images: &[Vec<i64>]) -> Self {
        let mut out = Self::zero();
        for (exps, c) in &self.terms {
            let mut e: Vec<i64> = Vec::new();
            for (j, &a) in exps.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                for (i, &im) in images[j].iter().enumerate() {
                    if e.len() <= i {
                        e.resize(i + 1, 0);
                    }
                    e[i] += a * im;
                }
            }
            out.add_term(&e, c.clone());
        }
        out
    }

    /// `u_j ↦ u_j^{-1}` for every variable.
    pub fn invert_all_vars(&self) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (trim(e.iter().map(|x| -x).collect()), c.clone()))
                .collect(),
        }
    }

    /// Applies `t_var ∂/∂t_var`, i.e. multiplies each term by `exps[var]/2`.
    pub fn t_log_derivative(&self, var: usize) -> Self {
        let mut out = Self::zero();
        for (exps, c) in &self.terms {
            let a = exps.get(var).copied().unwrap_or(0);
            if a != 0 {
                out.add_term(exps, c * crate::rat::rat(a, 2));
            }
        }
        out
    }

    /// Observed exponent range of `u_var`, or `None` for the zero polynomial.
    pub fn exp_range(&self, var: usize) -> Option<(i64, i64)> {
        let mut range: Option<(i64, i64)> = None;
        for exps in self.terms.keys() {
            let a = exps.get(var).copied().unwrap_or(0);
            range = Some(match range {
                None => (a, a),
                Some((lo, hi)) => (lo.min(a), hi.max(a)),
            });
        }
        range
    }

    /// Exact division by `(u_var − u_var^{-1})`; `None` if not divisible.
    pub fn div_u_minus_inv(&self, var: usize) -> Option<Self> {
        if self.terms.is_empty() {
            return Some(Self::zero());
        }
        // p / (u − u^{-1}) = (p·u) / (u² − 1). Group p·u by the u_var exponent,
        // with layer coefficients Laurent polys in the remaining variables,
        // then peel (u² − 1) multiples from the top layer down.
        let mut layers: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let a = e.get(var).copied().unwrap_or(0) + 1;
            let mut rest = e.clone();
            if rest.len() <= var {
                rest.resize(var + 1, 0);
            }
            rest[var] = 0;
            layers
                .entry(a)
                .or_insert_with(LaurentPoly::zero)
                .add_term(&rest, c.clone());
        }
        let a_min = *layers.keys().next().unwrap();
        let a_max = *layers.keys().next_back().unwrap();
        let mut quot = Self::zero();
        let mut top = a_max;
        while top >= a_min + 2 {
            let layer = layers.remove(&top).unwrap_or_else(LaurentPoly::zero);
            if !layer.is_zero() {
                // u^top·layer = (u²−1)·u^{top−2}·layer + u^{top−2}·layer
                for (rest, c) in layer.terms() {
                    let mut e = rest.clone();
                    if e.len() <= var {
                        e.resize(var + 1, 0);
                    }
                    e[var] = top - 2;
                    quot.add_term(&e, c.clone());
                }
                layers
                    .entry(top - 2)
                    .or_insert_with(LaurentPoly::zero)
                    .add_term_poly(&layer);
            }
            top -= 1;
        }
        // Exactness: the two lowest layers must have fully cancelled.
        if layers.values().all(|p| p.is_zero()) {
            Some(quot)
        } else {
            None
        }
    }

    fn add_term_poly(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(e, c.clone());
        }
    }
}

impl std::ops::Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        LaurentPoly::add(&self, &rhs)
    }
}

impl std::ops::Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        LaurentPoly::mul(&self, &rhs)
    }
}

impl Zero for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for LaurentPoly {
    fn one() -> Self {
        LaurentPoly::one()
    }
}

impl Coeff for LaurentPoly {
    fn add_ref(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn neg_ref(&self) -> Self {
        self.neg()
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn scale(&self, s: &Rat) -> Self {
        self.scale_rat(s)
    }
    fn invert(&self) -> Option<Self> {
        // Only monomials are units in the Laurent ring.
        if self.terms.len() != 1 {
            return None;
        }
        let (exps, c) = self.terms.iter().next().unwrap();
        Some(LaurentPoly::monomial(
            &exps.iter().map(|e| -e).collect::<Vec<_>>(),
            c.recip(),
        ))
    }
}

/// Substitutes `u_var ↦ q^{shift/4} · Π u_i^{image[i]}` in a Laurent-coefficient
/// series, adding `shift · (u_var-power)` to each quarter-exponent.
///
/// When `shift ≠ 0` the certified order is reduced by the worst displacement of
/// the observed `u_var`-exponent range; this assumes coefficients beyond the
/// certified order do not exceed that observed range.
pub fn substitute_monomial(
    s: &QSeries<LaurentPoly>,
    var: usize,
    image: &[i64],
    shift: i64,
) -> QSeries<LaurentPoly> {
    let mut amin = 0i64;
    let mut amax = 0i64;
    for poly in s.terms().values() {
        if let Some((lo, hi)) = poly.exp_range(var) {
            amin = amin.min(lo);
            amax = amax.max(hi);
        }
    }
    let displacement = 0.min(shift * amin).min(shift * amax);
    let order = s.order() + displacement;
    let mut out = QSeries::zero(order);
    for (k, poly) in s.terms() {
        for (exps, c) in poly.terms() {
            let a = exps.get(var).copied().unwrap_or(0);
            let mut e: Vec<i64> = exps.clone();
            if e.len() <= var {
                e.resize(var + 1, 0);
            }
            e[var] = 0;
            for (i, &im) in image.iter().enumerate() {
                if e.len() <= i {
                    e.resize(i + 1, 0);
                }
                e[i] += a * im;
            }
            out.add_term(k + shift * a, LaurentPoly::monomial(&e, c.clone()));
        }
    }
    out
}
