//! Integer partitions, Frobenius coordinates, and diagram profiles.
//!
//! A partition is a weakly decreasing list of positive parts. Self-conjugate
//! partitions are the ones fixed by transposing the Young diagram; they are in
//! bijection with sets of distinct odd hook lengths `{2m_i + 1}` read off the
//! main diagonal, which is what the enumerator walks.

use std::collections::BTreeMap;
use std::fmt;

/// Invalid constructor input for [`Partition`] or [`FrobeniusCoords`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PartitionError {
    /// Parts must be positive and weakly decreasing.
    NotWeaklyDecreasing,
    /// Frobenius arm/leg lists must be strictly decreasing.
    NotStrictlyDecreasing,
    /// Frobenius arm and leg lists must have equal length.
    LengthMismatch,
    /// Operation requires arms = legs (a self-conjugate partition).
    NotSelfConjugate,
}

impl fmt::Display for PartitionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PartitionError::NotWeaklyDecreasing => {
                write!(f, "parts must be positive and weakly decreasing")
            }
            PartitionError::NotStrictlyDecreasing => {
                write!(f, "Frobenius coordinates must be strictly decreasing")
            }
            PartitionError::LengthMismatch => {
                write!(f, "arm and leg lists must have equal length")
            }
            PartitionError::NotSelfConjugate => {
                write!(f, "operation requires arms = legs")
            }
        }
    }
}

impl std::error::Error for PartitionError {}

/// A partition: weakly decreasing positive parts. Immutable value type.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u64>,
}

impl Partition {
    /// Validates and wraps a part list. The empty list is the empty partition.
    pub fn new(parts: Vec<u64>) -> Result<Self, PartitionError> {
        for w in parts.windows(2) {
            if w[0] < w[1] {
                return Err(PartitionError::NotWeaklyDecreasing);
            }
        }
        if parts.last().is_some_and(|&p| p == 0) {
            return Err(PartitionError::NotWeaklyDecreasing);
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    /// `λ_i` with the convention `λ_i = 0` for `i > l(λ)`; `i` is 1-based.
    pub fn part(&self, i: usize) -> u64 {
        if i == 0 || i > self.parts.len() {
            0
        } else {
            self.parts[i - 1]
        }
    }

    /// `|λ|`, the sum of parts.
    pub fn size(&self) -> u64 {
        self.parts.iter().sum()
    }

    /// `l(λ)`, the number of parts.
    pub fn length(&self) -> usize {
        self.parts.len()
    }

    /// Conjugate partition: `λ^t_k = #{i | λ_i ≥ k}`.
    pub fn conjugate(&self) -> Partition {
        let width = self.part(1) as usize;
        let mut cols = Vec::with_capacity(width);
        for k in 1..=width {
            cols.push(self.parts.iter().take_while(|&&p| p as usize >= k).count() as u64);
        }
        Partition { parts: cols }
    }

    pub fn is_self_conjugate(&self) -> bool {
        *self == self.conjugate()
    }

    /// Frobenius coordinates `(m_1,…,m_r | n_1,…,n_r)` with `m_i = λ_i − i`,
    /// `n_i = λ^t_i − i`, and `r = max{i | λ_i ≥ i}`.
    pub fn frobenius(&self) -> FrobeniusCoords {
        let conj = self.conjugate();
        let mut arms = Vec::new();
        let mut legs = Vec::new();
        for i in 1.. {
            let p = self.part(i);
            if p < i as u64 {
                break;
            }
            arms.push(p - i as u64);
            legs.push(conj.part(i) - i as u64);
        }
        FrobeniusCoords { arms, legs }
    }

    /// Multiplicities, diagonal indicators, and the step functions `f_λ`, `g_λ`.
    pub fn profile(&self) -> Profile {
        let mut mult = BTreeMap::new();
        for &p in &self.parts {
            *mult.entry(p).or_insert(0u64) += 1;
        }
        let alpha: Vec<u64> = self
            .parts
            .iter()
            .enumerate()
            .filter(|&(i, &p)| p >= (i + 1) as u64)
            .map(|(i, &p)| p - (i + 1) as u64)
            .collect();
        Profile {
            mult,
            alpha,
            conjugate_parts: self.conjugate().parts,
            length: self.parts.len() as u64,
        }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Frobenius coordinates: strictly decreasing arms `m_i` and legs `n_i` of
/// equal length. `arms == legs` exactly for self-conjugate partitions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FrobeniusCoords {
    arms: Vec<u64>,
    legs: Vec<u64>,
}

impl FrobeniusCoords {
    pub fn new(arms: Vec<u64>, legs: Vec<u64>) -> Result<Self, PartitionError> {
        if arms.len() != legs.len() {
            return Err(PartitionError::LengthMismatch);
        }
        for list in [&arms, &legs] {
            for w in list.windows(2) {
                if w[0] <= w[1] {
                    return Err(PartitionError::NotStrictlyDecreasing);
                }
            }
        }
        Ok(FrobeniusCoords { arms, legs })
    }

    /// Symmetric coordinates `(m | m)`, i.e. a self-conjugate partition.
    pub fn symmetric(arms: Vec<u64>) -> Result<Self, PartitionError> {
        FrobeniusCoords::new(arms.clone(), arms)
    }

    pub fn arms(&self) -> &[u64] {
        &self.arms
    }

    pub fn legs(&self) -> &[u64] {
        &self.legs
    }

    /// Frobenius length `r(λ)`.
    pub fn rank(&self) -> usize {
        self.arms.len()
    }

    pub fn is_symmetric(&self) -> bool {
        self.arms == self.legs
    }

    /// `Σ (m_i + n_i + 1)`, the size of the underlying partition.
    pub fn size(&self) -> u64 {
        self.arms
            .iter()
            .zip(&self.legs)
            .map(|(m, n)| m + n + 1)
            .sum()
    }

    /// Diagonal hook lengths `m_i + n_i + 1`; odd and distinct when symmetric.
    pub fn hooks(&self) -> Vec<u64> {
        self.arms
            .iter()
            .zip(&self.legs)
            .map(|(m, n)| m + n + 1)
            .collect()
    }

    /// Inverse of [`Partition::frobenius`]: rows on the diagonal have
    /// `λ_i = i + m_i`; a row below the diagonal is as long as the number of
    /// diagonal columns whose leg reaches it (`λ_i = #{j | j + n_j ≥ i}`,
    /// 0-based).
    pub fn to_partition(&self) -> Partition {
        let r = self.rank();
        let mut len = r;
        for (j, &n) in self.legs.iter().enumerate() {
            len = len.max(j + 1 + n as usize);
        }
        let mut parts = vec![0u64; len];
        for (i, part) in parts.iter_mut().enumerate() {
            if i < r {
                *part = i as u64 + 1 + self.arms[i];
            } else {
                *part = self
                    .legs
                    .iter()
                    .enumerate()
                    .filter(|&(j, &n)| j + n as usize >= i)
                    .count() as u64;
            }
        }
        Partition { parts }
    }
}

/// Diagram profile data: part multiplicities `m_k(λ)`, the diagonal indicator
/// support `{k | α_k(λ) = 1}`, and evaluators for the boundary step functions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Profile {
    mult: BTreeMap<u64, u64>,
    alpha: Vec<u64>,
    conjugate_parts: Vec<u64>,
    length: u64,
}

impl Profile {
    /// `m_k(λ)`: number of parts equal to `k`.
    pub fn mult(&self, k: u64) -> u64 {
        self.mult.get(&k).copied().unwrap_or(0)
    }

    pub fn mult_map(&self) -> &BTreeMap<u64, u64> {
        &self.mult
    }

    /// `α_k(λ) = 1` iff `λ_i − i = k` for some `i` (k ≥ 0). The support equals
    /// the Frobenius arm set.
    pub fn alpha(&self, k: u64) -> bool {
        self.alpha.contains(&k)
    }

    /// Sorted (decreasing) support of `α`.
    pub fn alpha_support(&self) -> &[u64] {
        &self.alpha
    }

    /// `f_λ(x) = −Σ_{k ≥ x} m_k(λ) = −#{i | λ_i ≥ x}`: lower boundary of the
    /// Young diagram. Zero for `x > λ_1`, equal to `−l(λ)` for `x ≤ 0`.
    pub fn f(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return -(self.length as f64);
        }
        let threshold = x.ceil() as u64;
        -(self
            .conjugate_parts
            .get(threshold as usize - 1)
            .copied()
            .unwrap_or(0) as f64)
    }

    /// `g_λ(x) = −Σ_{k ≥ x} α_k(λ) = −#{arms m_i ≥ x}`.
    pub fn g(&self, x: f64) -> f64 {
        let count = if x <= 0.0 {
            self.alpha.len()
        } else {
            let threshold = x.ceil() as u64;
            self.alpha.iter().filter(|&&m| m >= threshold).count()
        };
        -(count as f64)
    }

    /// Step breakpoints of `f_λ`: pairs `(k, f_λ on (k−1, k])` for `k = 1..=λ_1`.
    pub fn f_steps(&self) -> Vec<(u64, i64)> {
        self.conjugate_parts
            .iter()
            .enumerate()
            .map(|(k, &c)| (k as u64 + 1, -(c as i64)))
            .collect()
    }

    /// Step breakpoints of `g_λ`: pairs `(k, g_λ on (k−1, k])` for `k = 1..`.
    pub fn g_steps(&self) -> Vec<(u64, i64)> {
        let top = self.alpha.first().copied().unwrap_or(0);
        (1..=top + u64::from(!self.alpha.is_empty()))
            .map(|k| (k, -(self.alpha.iter().filter(|&&m| m >= k).count() as i64)))
            .collect()
    }
}

/// All self-conjugate partitions of size ≤ `max_size`, enumerated as subsets
/// of distinct odd hook lengths (never by filtering all partitions).
///
/// Ordered by size, then lexicographically by hook set within a size.
pub fn enumerate_self_conjugate(max_size: u64) -> Vec<Partition> {
    let mut by_size: Vec<Vec<Partition>> = vec![Vec::new(); max_size as usize + 1];
    let mut hooks: Vec<u64> = Vec::new();
    collect_hook_sets(max_size, 1, 0, &mut hooks, &mut by_size);
    by_size.into_iter().flatten().collect()
}

/// Self-conjugate partitions of size exactly `n`.
pub fn self_conjugate_of_size(n: u64) -> Vec<Partition> {
    enumerate_self_conjugate(n)
        .into_iter()
        .filter(|p| p.size() == n)
        .collect()
}

/// The same enumeration as [`enumerate_self_conjugate`], but as raw hook sets
/// `{2m_i+1}` (sorted decreasing). This is the representation the correlation
/// and bracket machinery consumes; the hook sum is the partition size.
pub fn self_conjugate_hook_sets(max_size: u64) -> Vec<Vec<u64>> {
    fn rec(max_size: u64, next_odd: u64, total: u64, hooks: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        let mut sorted = hooks.clone();
        sorted.reverse();
        out.push(sorted);
        let mut h = next_odd;
        while total + h <= max_size {
            hooks.push(h);
            rec(max_size, h + 2, total + h, hooks, out);
            hooks.pop();
            h += 2;
        }
    }
    let mut out = Vec::new();
    rec(max_size, 1, 0, &mut Vec::new(), &mut out);
    out
}

fn collect_hook_sets(
    max_size: u64,
    next_odd: u64,
    total: u64,
    hooks: &mut Vec<u64>,
    out: &mut Vec<Vec<Partition>>,
) {
    out[total as usize].push(hook_set_to_partition(hooks));
    let mut h = next_odd;
    while total + h <= max_size {
        hooks.push(h);
        collect_hook_sets(max_size, h + 2, total + h, hooks, out);
        hooks.pop();
        h += 2;
    }
}

/// Maps a set of distinct odd hooks `{2m_i+1}` to the self-conjugate partition
/// with symmetric Frobenius coordinates `(m | m)`.
pub fn hook_set_to_partition(hooks: &[u64]) -> Partition {
    let mut arms: Vec<u64> = hooks.iter().map(|h| (h - 1) / 2).collect();
    arms.sort_unstable_by(|a, b| b.cmp(a));
    FrobeniusCoords::symmetric(arms)
        .expect("distinct hooks give strictly decreasing arms")
        .to_partition()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u64]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn conjugate_of_worked_diagram() {
        // (8,4,4,2,1) transposes to (5,4,3,3,1,1,1,1).
        assert_eq!(p(&[8, 4, 4, 2, 1]).conjugate(), p(&[5, 4, 3, 3, 1, 1, 1, 1]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        // Column counts of (5,3,2,1,1) read off the diagram by hand.
        assert_eq!(p(&[5, 3, 2, 1, 1]).conjugate(), p(&[5, 3, 2, 1, 1]));
    }

    #[test]
    fn self_conjugacy_matches_both_definitions() {
        assert!(p(&[5, 3, 2, 1, 1]).is_self_conjugate());
        assert!(Partition::empty().is_self_conjugate());
        for parts in [vec![2, 1], vec![3, 1], vec![4, 2]] {
            let lam = Partition::new(parts).unwrap();
            let by_conj = lam.conjugate() == lam;
            let by_frob = lam.frobenius().is_symmetric();
            assert_eq!(by_conj, by_frob, "definitions disagree for {lam}");
        }
    }

    #[test]
    fn frobenius_of_worked_examples() {
        let fc = p(&[5, 3, 2, 1, 1]).frobenius();
        assert_eq!(fc.arms(), &[4, 1]);
        assert_eq!(fc.legs(), &[4, 1]);

        let fc = p(&[8, 4, 4, 2, 1]).frobenius();
        assert_eq!(fc.arms(), &[7, 2, 1]);
        assert_eq!(fc.legs(), &[4, 2, 0]);

        let fc = Partition::empty().frobenius();
        assert_eq!(fc.rank(), 0);
    }

    #[test]
    fn from_frobenius_inverts() {
        let hook = FrobeniusCoords::new(vec![4], vec![4]).unwrap();
        assert_eq!(hook.to_partition(), p(&[5, 1, 1, 1, 1]));
        assert_eq!(
            FrobeniusCoords::new(vec![], vec![]).unwrap().to_partition(),
            Partition::empty()
        );
        let fc = FrobeniusCoords::new(vec![4, 1], vec![4, 1]).unwrap();
        assert_eq!(fc.to_partition(), p(&[5, 3, 2, 1, 1]));
        // Round trips both ways, including an asymmetric shape.
        for parts in [vec![8, 4, 4, 2, 1], vec![5, 3, 2, 1, 1], vec![6, 6, 3]] {
            let lam = Partition::new(parts).unwrap();
            assert_eq!(lam.frobenius().to_partition(), lam);
        }
    }

    #[test]
    fn frobenius_rejects_bad_input() {
        assert_eq!(
            FrobeniusCoords::new(vec![2, 2], vec![1, 0]),
            Err(PartitionError::NotStrictlyDecreasing)
        );
        assert_eq!(
            FrobeniusCoords::new(vec![2], vec![1, 0]),
            Err(PartitionError::LengthMismatch)
        );
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
    }

    #[test]
    fn size_identity_via_hooks() {
        for n in 0..=30u64 {
            for lam in super::self_conjugate_of_size(n) {
                assert_eq!(lam.frobenius().size(), n);
            }
        }
        let lam = p(&[8, 4, 4, 2, 1]);
        assert_eq!(lam.frobenius().size(), lam.size());
    }

    /// Brute-force oracle: all partitions of n by descent recursion.
    fn all_partitions(n: u64) -> Vec<Partition> {
        fn rec(remaining: u64, max_part: u64, acc: &mut Vec<u64>, out: &mut Vec<Partition>) {
            if remaining == 0 {
                out.push(Partition::new(acc.clone()).unwrap());
                return;
            }
            let top = remaining.min(max_part);
            for next in (1..=top).rev() {
                acc.push(next);
                rec(remaining - next, next, acc, out);
                acc.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n.max(1), &mut Vec::new(), &mut out);
        out
    }

    #[test]
    fn enumeration_matches_conjugation_filter() {
        // Oracle 1: filter all partitions through is_self_conjugate.
        for n in 0..=22u64 {
            let filtered = all_partitions(n)
                .into_iter()
                .filter(|lam| lam.is_self_conjugate())
                .count();
            assert_eq!(
                super::self_conjugate_of_size(n).len(),
                filtered,
                "count mismatch at n = {n}"
            );
        }
    }

    #[test]
    fn enumeration_matches_distinct_odd_parts_count() {
        // Oracle 2: DP count of partitions into distinct odd parts, n ≤ 40.
        let n_max = 40usize;
        let mut dp = vec![0u64; n_max + 1];
        dp[0] = 1;
        let mut part = 1usize;
        while part <= n_max {
            for total in (part..=n_max).rev() {
                dp[total] += dp[total - part];
            }
            part += 2;
        }
        let all = enumerate_self_conjugate(n_max as u64);
        for (n, expected) in dp.iter().enumerate() {
            let count = all.iter().filter(|lam| lam.size() == n as u64).count() as u64;
            assert_eq!(count, *expected, "count mismatch at n = {n}");
        }
        // Spot values from the hook-set bijection worked by hand.
        assert_eq!(dp[1], 1);
        assert_eq!(dp[8], 2); // {1,7}, {3,5}
        assert_eq!(dp[9], 2); // {9}, {1,3,5}
    }

    #[test]
    fn enumeration_yields_unique_valid_members() {
        let all = enumerate_self_conjugate(16);
        for lam in &all {
            assert!(lam.is_self_conjugate());
            assert!(lam.size() <= 16);
        }
        let mut dedup = all.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), all.len());
    }

    #[test]
    fn profile_of_worked_example() {
        // λ = (5,3,2,1,1): the figure's step data.
        let prof = p(&[5, 3, 2, 1, 1]).profile();
        assert_eq!(prof.alpha_support(), &[4, 1]);
        assert_eq!(prof.mult(1), 2);
        assert_eq!(prof.mult(5), 1);
        assert_eq!(
            prof.f_steps(),
            vec![(1, -5), (2, -3), (3, -2), (4, -1), (5, -1)]
        );
        assert_eq!(prof.g_steps(), vec![(1, -2), (2, -1), (3, -1), (4, -1), (5, 0)]);
        assert_eq!(prof.f(0.5), -5.0);
        assert_eq!(prof.f(5.5), 0.0);
        assert_eq!(prof.g(0.5), -2.0);

        let empty = Partition::empty().profile();
        assert!(empty.mult_map().is_empty());
        assert_eq!(empty.f(1.0), 0.0);

        let one = p(&[1]).profile();
        assert_eq!(one.mult(1), 1);
        assert_eq!(one.alpha_support(), &[0]);
    }

    #[test]
    fn hook_sets_agree_with_enumeration() {
        let sets = self_conjugate_hook_sets(20);
        let parts = enumerate_self_conjugate(20);
        assert_eq!(sets.len(), parts.len());
        for hooks in &sets {
            let lam = hook_set_to_partition(hooks);
            assert_eq!(lam.frobenius().hooks(), *hooks);
            assert_eq!(lam.size(), hooks.iter().sum::<u64>());
        }
    }

    #[test]
    fn conjugation_is_an_involution() {
        for n in 0..=14u64 {
            for lam in all_partitions(n) {
                assert_eq!(lam.conjugate().conjugate(), lam);
            }
        }
    }
}
