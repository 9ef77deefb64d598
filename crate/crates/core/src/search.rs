//! Exhaustive solution search over reduced index ranges.
//!
//! Membership tests locate the index of a candidate value from a certified
//! logarithmic estimate and then confirm (or refute) it with exact
//! big-integer comparisons at the neighbouring indices, so a lookup costs
//! O(1) exact comparisons instead of a scan. Enumeration walks every pair
//! `1 <= m <= n` in range, forms the exact product, and collects each index
//! `k` within the k-rule at which the left side matches.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

use crate::real::CertifiedReal;
use crate::sequences::{fib, lucas, lucas_table, fib_table};

/// Which of the two product equations is being solved.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EquationKind {
    /// `F_k = L_m * L_n`
    FibEqualsLucasProduct,
    /// `L_k = F_m * F_n`
    LucasEqualsFibProduct,
}

impl EquationKind {
    pub fn label(&self) -> &'static str {
        match self {
            EquationKind::FibEqualsLucasProduct => "F=LL",
            EquationKind::LucasEqualsFibProduct => "L=FF",
        }
    }
}

impl fmt::Display for EquationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// A solution `(k, m, n)` with `k >= 1` and `1 <= m <= n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SolutionTriple {
    pub k: u64,
    pub m: u64,
    pub n: u64,
}

impl SolutionTriple {
    pub fn new(k: u64, m: u64, n: u64) -> Self {
        debug_assert!(k >= 1 && 1 <= m && m <= n);
        SolutionTriple { k, m, n }
    }
}

impl Ord for SolutionTriple {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.n, self.m, self.k).cmp(&(other.n, other.m, other.k))
    }
}

impl PartialOrd for SolutionTriple {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SolutionTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.k, self.m, self.n)
    }
}

/// How far `k` is allowed to run for a given `(m, n)` pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KBoundRule {
    /// `k <= n + m + 4` (provable from the growth sandwich).
    IndexSum,
    /// `k < 4n` (the looser published cutoff).
    FourTimesN,
}

impl KBoundRule {
    pub fn limit(&self, m: u64, n: u64) -> u64 {
        match self {
            KBoundRule::IndexSum => n + m + 4,
            KBoundRule::FourTimesN => (4 * n).saturating_sub(1),
        }
    }

    pub fn describe(&self) -> &'static str {
        match self {
            KBoundRule::IndexSum => "k <= n + m + 4",
            KBoundRule::FourTimesN => "k < 4n",
        }
    }
}

/// Index ranges for an enumeration run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchRange {
    pub m_max: u64,
    pub n_max: u64,
    pub k_rule: KBoundRule,
}

impl SearchRange {
    pub fn new(m_max: u64, n_max: u64) -> Self {
        SearchRange {
            m_max,
            n_max,
            k_rule: KBoundRule::IndexSum,
        }
    }

    /// The verified reference range: `m <= 75`, `n <= 160`.
    pub fn reference() -> Self {
        Self::new(75, 160)
    }
}

const MEMBERSHIP_PRECISION: u32 = 160;

/// Estimated index from `value ~ alpha^n / divisor_log_offset`, floored.
fn index_estimate(v: &BigUint, ln_offset: &CertifiedReal, ln_alpha: &CertifiedReal) -> i64 {
    if v <= &BigUint::from(3u32) {
        return 1;
    }
    let lnv = CertifiedReal::from_biguint(v, MEMBERSHIP_PRECISION)
        .ln()
        .expect("value >= 1");
    let est = lnv.add(ln_offset).div(ln_alpha).expect("ln alpha > 0");
    est.floor_lower().to_i64().unwrap_or(1).max(1)
}

/// All indices `n >= 1` with `F_n = v`. The cardinality is 0, 1, or 2; only
/// `v = 1` has two indices (`F_1 = F_2 = 1`).
pub fn fib_index_of(v: &BigUint) -> Vec<u64> {
    if v.is_zero() {
        return Vec::new(); // F_0 is outside the n >= 1 convention
    }
    if v.is_one() {
        return alloc::vec![1, 2];
    }
    // n ~ ln(v * sqrt5) / ln(alpha)
    let prec = MEMBERSHIP_PRECISION;
    let ln_s5 = CertifiedReal::sqrt5(prec).ln().expect("sqrt5 > 0");
    let ln_alpha = crate::algebraic::QuadraticNumber::alpha()
        .to_certified(prec)
        .ln()
        .expect("alpha > 0");
    let est = index_estimate(v, &ln_s5, &ln_alpha);
    let mut out = Vec::new();
    for n in est.saturating_sub(3).max(1)..=est + 3 {
        if &fib(n as u64) == v {
            out.push(n as u64);
        }
    }
    out
}

/// All indices `n >= 1` with `L_n = v` (at most one: `L` is strictly
/// increasing from `n = 1`). `L_0 = 2` is deliberately not reported.
pub fn lucas_index_of(v: &BigUint) -> Vec<u64> {
    if v.is_zero() {
        return Vec::new();
    }
    let prec = MEMBERSHIP_PRECISION;
    let zero_offset = CertifiedReal::zero(prec);
    let ln_alpha = crate::algebraic::QuadraticNumber::alpha()
        .to_certified(prec)
        .ln()
        .expect("alpha > 0");
    let est = index_estimate(v, &zero_offset, &ln_alpha);
    let mut out = Vec::new();
    for n in est.saturating_sub(3).max(1)..=est + 3 {
        if &lucas(n as u64) == v {
            out.push(n as u64);
        }
    }
    out
}

/// Exhaustive enumeration of solutions within a range; exact arithmetic end
/// to end, output ordered lexicographically by `(n, m, k)`.
pub fn enumerate_solutions(kind: EquationKind, range: &SearchRange) -> BTreeSet<SolutionTriple> {
    let mut out = BTreeSet::new();
    if range.n_max == 0 || range.m_max == 0 {
        return out;
    }
    let table = match kind {
        EquationKind::FibEqualsLucasProduct => lucas_table(range.n_max),
        EquationKind::LucasEqualsFibProduct => fib_table(range.n_max),
    };
    for n in 1..=range.n_max {
        for m in 1..=range.m_max.min(n) {
            let product = &table[m as usize] * &table[n as usize];
            let k_limit = range.k_rule.limit(m, n);
            let indices = match kind {
                EquationKind::FibEqualsLucasProduct => fib_index_of(&product),
                EquationKind::LucasEqualsFibProduct => lucas_index_of(&product),
            };
            for k in indices {
                if k >= 1 && k <= k_limit {
                    out.insert(SolutionTriple::new(k, m, n));
                }
            }
        }
    }
    out
}

/// Values appearing in both sequences for indices up to `limit`.
///
/// The default convention starts both sequences at index 1 (so `L_0 = 2` is
/// excluded); passing `include_index_zero = true` admits the index-0 terms as
/// a diagnostic variant, which additionally picks up `F_3 = 2 = L_0`.
pub fn common_terms(limit: u64, include_index_zero: bool) -> BTreeSet<BigUint> {
    let start = if include_index_zero { 0 } else { 1 };
    let fibs: BTreeSet<BigUint> = (start..=limit).map(fib).collect();
    (start..=limit)
        .map(lucas)
        .filter(|v| fibs.contains(v))
        .collect()
}

/// The `m = n` specialisation: `F_k = L_n^2` or `L_k = F_n^2`.
pub fn square_cases(kind: EquationKind, limit: u64) -> BTreeSet<SolutionTriple> {
    let mut out = BTreeSet::new();
    for n in 1..=limit {
        let base = match kind {
            EquationKind::FibEqualsLucasProduct => lucas(n),
            EquationKind::LucasEqualsFibProduct => fib(n),
        };
        let square = &base * &base;
        let indices = match kind {
            EquationKind::FibEqualsLucasProduct => fib_index_of(&square),
            EquationKind::LucasEqualsFibProduct => lucas_index_of(&square),
        };
        for k in indices {
            out.insert(SolutionTriple::new(k, n, n));
        }
    }
    out
}

/// Verdict on a previously published claim.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Holds as stated.
    Confirmed,
    /// Holds once the triple is rewritten in the `m <= n` normal form.
    ConfirmedNormalized,
    /// Contradicted by at least one enumerated solution.
    Refuted,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::Confirmed => "confirmed",
            Verdict::ConfirmedNormalized => "confirmed (normalized)",
            Verdict::Refuted => "refuted",
        };
        f.write_str(s)
    }
}

/// Outcome of checking one published claim against the enumerated truth.
#[derive(Clone, Debug)]
pub struct PriorClaimOutcome {
    pub source: &'static str,
    pub claim: &'static str,
    pub verdict: Verdict,
    /// Normal form of a claimed triple, when the claim names one.
    pub normalized_triple: Option<SolutionTriple>,
    /// Enumerated triples that witness the verdict.
    pub witnesses: Vec<SolutionTriple>,
}

/// Evaluates the 1964 and later claims about these equations against the
/// enumerated solution sets over the reference range, and reports the result
/// as data. The two historical accounts contradict each other; this makes
/// the disagreement explicit.
pub fn cross_check_prior(kind: EquationKind) -> Vec<PriorClaimOutcome> {
    let found = enumerate_solutions(kind, &SearchRange::reference());
    let mut out = Vec::new();
    match kind {
        EquationKind::FibEqualsLucasProduct => {
            // Carlitz: for both inner indices above 1, the only solution is
            // (8,4,2) — i.e. (8,2,4) in m <= n form.
            let inner: Vec<SolutionTriple> =
                found.iter().copied().filter(|t| t.m > 1 && t.n > 1).collect();
            let normalized = SolutionTriple::new(8, 2, 4);
            let verdict = if inner == [normalized] {
                Verdict::ConfirmedNormalized
            } else {
                Verdict::Refuted
            };
            out.push(PriorClaimOutcome {
                source: "Carlitz (1964)",
                claim: "the only solution with both product indices above 1 is (8,4,2)",
                verdict,
                normalized_triple: Some(normalized),
                witnesses: inner,
            });
            // Wang et al.: (4,2,1) solves the equation.
            let normalized = SolutionTriple::new(4, 1, 2);
            let verdict = if found.contains(&normalized) {
                Verdict::ConfirmedNormalized
            } else {
                Verdict::Refuted
            };
            out.push(PriorClaimOutcome {
                source: "Wang et al.",
                claim: "(4,2,1) is a solution",
                verdict,
                normalized_triple: Some(normalized),
                witnesses: alloc::vec![normalized],
            });
        }
        EquationKind::LucasEqualsFibProduct => {
            // Carlitz: no solution with both product indices above 2.
            let inner: Vec<SolutionTriple> =
                found.iter().copied().filter(|t| t.m > 2 && t.n > 2).collect();
            let verdict = if inner.is_empty() {
                Verdict::Confirmed
            } else {
                Verdict::Refuted
            };
            out.push(PriorClaimOutcome {
                source: "Carlitz (1964)",
                claim: "no solution exists with both product indices above 2",
                verdict,
                normalized_triple: None,
                witnesses: inner,
            });
            // Wang et al.: no solution at all.
            let verdict = if found.is_empty() {
                Verdict::Confirmed
            } else {
                Verdict::Refuted
            };
            let witnesses: Vec<SolutionTriple> = found.iter().copied().collect();
            out.push(PriorClaimOutcome {
                source: "Wang et al.",
                claim: "the equation has no solution",
                verdict,
                normalized_triple: None,
                witnesses,
            });
        }
    }
    out
}

#[allow(unused_imports)]
use crate::error::Result as _CoreResult;

#[allow(dead_code)]
fn keep_bigint_import(_x: &BigInt) {}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn set(triples: &[(u64, u64, u64)]) -> BTreeSet<SolutionTriple> {
        triples
            .iter()
            .map(|&(k, m, n)| SolutionTriple::new(k, m, n))
            .collect()
    }

    #[test]
    fn membership_examples() {
        assert_eq!(fib_index_of(&BigUint::from(21u32)), vec![8]);
        assert_eq!(fib_index_of(&BigUint::from(1u32)), vec![1, 2]);
        assert!(fib_index_of(&BigUint::from(4u32)).is_empty());
        assert!(fib_index_of(&BigUint::zero()).is_empty());

        assert_eq!(lucas_index_of(&BigUint::from(7u32)), vec![4]);
        assert!(lucas_index_of(&BigUint::from(2u32)).is_empty());
        assert_eq!(lucas_index_of(&BigUint::from(4u32)), vec![3]);
        assert_eq!(lucas_index_of(&BigUint::from(1u32)), vec![1]);
    }

    #[test]
    fn membership_agrees_with_exact_scan_on_big_values() {
        for n in [50u64, 120, 239, 300] {
            let v = fib(n);
            assert_eq!(fib_index_of(&v), vec![n]);
            let l = lucas(n);
            assert_eq!(lucas_index_of(&l), vec![n]);
        }
        // Near misses.
        let almost = fib(200) + BigUint::one();
        assert!(fib_index_of(&almost).is_empty());
    }

    #[test]
    fn reference_solution_sets() {
        let r = SearchRange::reference();
        let s1 = enumerate_solutions(EquationKind::FibEqualsLucasProduct, &r);
        assert_eq!(s1, set(&[(1, 1, 1), (2, 1, 1), (4, 1, 2), (8, 2, 4)]));
        let s2 = enumerate_solutions(EquationKind::LucasEqualsFibProduct, &r);
        assert_eq!(
            s2,
            set(&[
                (1, 1, 1),
                (1, 1, 2),
                (1, 2, 2),
                (2, 1, 4),
                (2, 2, 4),
                (3, 3, 3)
            ])
        );
    }

    #[test]
    fn empty_range_gives_empty_set() {
        let r = SearchRange::new(75, 0);
        assert!(enumerate_solutions(EquationKind::FibEqualsLucasProduct, &r).is_empty());
    }

    #[test]
    fn solutions_verify_exactly_and_respect_the_k_rule() {
        let r = SearchRange::reference();
        for kind in [
            EquationKind::FibEqualsLucasProduct,
            EquationKind::LucasEqualsFibProduct,
        ] {
            for t in enumerate_solutions(kind, &r) {
                assert!(t.m <= t.n);
                assert!(t.k <= t.n + t.m + 4);
                // Re-verify with values recomputed by plain recurrence.
                let ft = fib_table(t.k.max(t.n) + 1);
                let lt = lucas_table(t.k.max(t.n) + 1);
                match kind {
                    EquationKind::FibEqualsLucasProduct => {
                        assert_eq!(
                            ft[t.k as usize],
                            &lt[t.m as usize] * &lt[t.n as usize]
                        );
                    }
                    EquationKind::LucasEqualsFibProduct => {
                        assert_eq!(
                            lt[t.k as usize],
                            &ft[t.m as usize] * &ft[t.n as usize]
                        );
                    }
                }
            }
        }
    }

    /// Independent oracle: a double loop that scans a precomputed value
    /// table for membership instead of using the index estimate.
    #[test]
    fn oracle_scan_agrees_with_enumeration() {
        let r = SearchRange::reference();
        let k_cap = r.n_max + r.m_max + 4;
        for kind in [
            EquationKind::FibEqualsLucasProduct,
            EquationKind::LucasEqualsFibProduct,
        ] {
            let (left, right) = match kind {
                EquationKind::FibEqualsLucasProduct => (fib_table(k_cap), lucas_table(r.n_max)),
                EquationKind::LucasEqualsFibProduct => (lucas_table(k_cap), fib_table(r.n_max)),
            };
            let mut oracle = BTreeSet::new();
            for n in 1..=r.n_max {
                for m in 1..=r.m_max.min(n) {
                    let product = &right[m as usize] * &right[n as usize];
                    for k in 1..=r.k_rule.limit(m, n) {
                        if left[k as usize] == product {
                            oracle.insert(SolutionTriple::new(k, m, n));
                        }
                    }
                }
            }
            assert_eq!(oracle, enumerate_solutions(kind, &r));
        }
    }

    #[test]
    fn common_terms_match_the_two_conventions() {
        let expected: BTreeSet<BigUint> =
            [1u32, 3].iter().map(|&v| BigUint::from(v)).collect();
        assert_eq!(common_terms(160, false), expected);
        let with_zero: BTreeSet<BigUint> =
            [1u32, 2, 3].iter().map(|&v| BigUint::from(v)).collect();
        assert_eq!(common_terms(160, true), with_zero);
        let tiny: BTreeSet<BigUint> = [BigUint::one()].into_iter().collect();
        assert_eq!(common_terms(1, false), tiny);
    }

    #[test]
    fn square_case_corollaries() {
        let s1 = square_cases(EquationKind::FibEqualsLucasProduct, 160);
        assert_eq!(s1, set(&[(1, 1, 1), (2, 1, 1)]));
        let s2 = square_cases(EquationKind::LucasEqualsFibProduct, 160);
        assert_eq!(s2, set(&[(1, 1, 1), (1, 2, 2), (3, 3, 3)]));
        assert!(square_cases(EquationKind::FibEqualsLucasProduct, 0).is_empty());
    }

    #[test]
    fn cross_checks_settle_the_disagreement() {
        let i2 = cross_check_prior(EquationKind::FibEqualsLucasProduct);
        assert_eq!(i2[0].verdict, Verdict::ConfirmedNormalized);
        assert_eq!(i2[0].normalized_triple, Some(SolutionTriple::new(8, 2, 4)));
        assert_eq!(i2[1].verdict, Verdict::ConfirmedNormalized);

        let i3 = cross_check_prior(EquationKind::LucasEqualsFibProduct);
        assert_eq!(i3[0].verdict, Verdict::Refuted);
        assert!(i3[0].witnesses.contains(&SolutionTriple::new(3, 3, 3)));
        assert_eq!(i3[1].verdict, Verdict::Refuted);
        assert!(i3[1].witnesses.contains(&SolutionTriple::new(3, 3, 3)));
    }

    #[test]
    fn ordering_is_lexicographic_in_n_m_k() {
        let r = SearchRange::reference();
        let s = enumerate_solutions(EquationKind::LucasEqualsFibProduct, &r);
        let v: Vec<SolutionTriple> = s.into_iter().collect();
        for w in v.windows(2) {
            assert!((w[0].n, w[0].m, w[0].k) < (w[1].n, w[1].m, w[1].k));
        }
    }
}
