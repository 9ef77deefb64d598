//! Continued fractions, the Dujella-Petho reduction step, and the small
//! linear forms it consumes.
//!
//! Partial quotients are produced by interval refinement: a quotient is
//! accepted only when the whole enclosure floors to the same integer, and
//! the scan restarts at doubled precision otherwise. The reduction step
//! scans convergent denominators `q > 6M` of `tau` and accepts the first one
//! whose `epsilon = ||mu q|| - M ||tau q||` is certified positive; a
//! certified non-positive value moves the scan to the next convergent
//! instead of aborting.

use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};

use crate::algebraic::QuadraticNumber;
use crate::error::{Error, Result};
use crate::expr::RealExpr;
use crate::real::{refine, CertifiedReal, Precision};
use crate::search::EquationKind;

/// Partial quotients and convergents of a continued-fraction expansion.
///
/// The first quotient may be any integer; later ones are at least 1. The
/// convergent pairs `(p_i, q_i)` satisfy the standard recurrences and the
/// determinant identity `p_i q_{i-1} - p_{i-1} q_i = (-1)^(i-1)`.
#[derive(Clone, Debug)]
pub struct CFExpansion {
    pub quotients: Vec<BigInt>,
    pub convergents: Vec<(BigInt, BigInt)>,
}

impl CFExpansion {
    pub fn len(&self) -> usize {
        self.quotients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quotients.is_empty()
    }

    pub fn denominator(&self, i: usize) -> &BigInt {
        &self.convergents[i].1
    }
}

fn cf_expand_at(x: &RealExpr, count: usize, prec: u32) -> Result<CFExpansion> {
    let mut v = x.eval(prec)?;
    let mut quotients = Vec::with_capacity(count);
    let mut convergents = Vec::with_capacity(count);
    let (mut p_prev, mut q_prev) = (BigInt::one(), BigInt::zero());
    let (mut p, mut q) = (BigInt::zero(), BigInt::one());
    for i in 0..count {
        let a = v.try_floor().ok_or(Error::Indeterminate { op: "cf_expand" })?;
        if i > 0 && a < BigInt::one() {
            // A later quotient below 1 means the previous inversion was fed
            // an uncertified fractional part.
            return Err(Error::Indeterminate { op: "cf_expand" });
        }
        let p_new = &a * &p + &p_prev;
        let q_new = &a * &q + &q_prev;
        quotients.push(a.clone());
        convergents.push((p_new.clone(), q_new.clone()));
        p_prev = p;
        q_prev = q;
        p = p_new;
        q = q_new;
        if i + 1 < count {
            let frac = v.sub(&CertifiedReal::from_int(a, prec));
            v = frac.recip().map_err(|_| Error::Indeterminate { op: "cf_expand" })?;
        }
    }
    Ok(CFExpansion {
        quotients,
        convergents,
    })
}

/// First `count` partial quotients and convergents of `x`, certified by
/// interval refinement. Precision escalates automatically; exhausting the
/// cap signals that `x` may be rational (or simply too close to one).
pub fn cf_expand(x: &RealExpr, count: usize, policy: Precision) -> Result<CFExpansion> {
    refine(policy, "cf_expand", |prec| cf_expand_at(x, count, prec))
}

/// Distance from `x` to the nearest integer, in `[0, 1/2]`.
///
/// Requires the enclosure to certify which integer is nearest (an exact
/// half-integer point is fine: the distance is then exactly 1/2). An
/// enclosure spanning a rounding boundary reports `Indeterminate`.
pub fn nearest_int_distance(x: &CertifiedReal) -> Result<CertifiedReal> {
    let r = x.try_round().ok_or(Error::Indeterminate {
        op: "nearest_int_distance",
    })?;
    let prec = x.precision();
    let d = x.sub(&CertifiedReal::from_int(r, prec)).abs();
    // try_round certifies x - r in [-1/2, 1/2); clamp the upper endpoint so
    // outward rounding cannot push the enclosure past 1/2.
    Ok(d.min_with(&CertifiedReal::half(prec)))
}

/// Inputs of one reduction: the inequality `0 < m tau - n + mu < A B^-k`
/// restricted to `m <= m_limit`.
#[derive(Clone, Debug)]
pub struct ReductionInstance {
    pub tau: RealExpr,
    pub mu: RealExpr,
    pub a_const: RealExpr,
    pub b_base: RealExpr,
    pub m_limit: BigUint,
    /// Convergents tried past the first eligible one before giving up.
    pub max_attempts: u32,
}

impl ReductionInstance {
    pub fn new(
        tau: RealExpr,
        mu: RealExpr,
        a_const: RealExpr,
        b_base: RealExpr,
        m_limit: BigUint,
    ) -> Self {
        ReductionInstance {
            tau,
            mu,
            a_const,
            b_base,
            m_limit,
            max_attempts: 24,
        }
    }
}

/// What happened at one convergent during the scan.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AttemptOutcome {
    /// `epsilon > 0` certified; the reduction concluded here.
    EpsilonPositive,
    /// `epsilon <= 0` certified; the scan moved on.
    EpsilonNonPositive,
    /// Sign not certifiable even at the precision cap; skipped.
    Uncertain,
}

#[derive(Clone, Debug)]
pub struct ReductionAttempt {
    pub convergent_index: usize,
    pub q: BigUint,
    pub outcome: AttemptOutcome,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReductionStatus {
    Reduced,
    Inconclusive,
}

/// Outcome of [`dp_reduce`].
#[derive(Clone, Debug)]
pub struct ReductionResult {
    pub status: ReductionStatus,
    pub q: Option<BigUint>,
    pub epsilon: Option<CertifiedReal>,
    /// `ceil(ln(A q / epsilon) / ln B)`: no solution has `k` at or above it.
    pub k_bound: Option<BigUint>,
    pub attempts: Vec<ReductionAttempt>,
    pub precision_used: u32,
}

fn dp_attempt(inst: &ReductionInstance, prec: u32, at_cap: bool) -> Result<ReductionResult> {
    let six_m = BigInt::from(&inst.m_limit * 6u32);
    let m_big = BigInt::from(inst.m_limit.clone());

    // Enough quotients to push q past 6M plus the attempt window: the
    // denominators grow at least as fast as the Fibonacci numbers.
    let count = (six_m.bits() as usize) * 3 / 2 + inst.max_attempts as usize + 8;
    let cf = cf_expand_at(&inst.tau, count, prec)?;

    let tau_v = inst.tau.eval(prec)?;
    let mu_v = inst.mu.eval(prec)?;
    let a_v = inst.a_const.eval(prec)?;
    let b_v = inst.b_base.eval(prec)?;
    if !a_v.is_certainly_positive() {
        return Err(Error::OutOfDomain {
            op: "dp_reduce",
            detail: "A must be positive",
        });
    }
    if b_v.try_gt(&CertifiedReal::one(prec)) != Some(true) {
        return Err(Error::OutOfDomain {
            op: "dp_reduce",
            detail: "B must exceed 1",
        });
    }

    let mut attempts = Vec::new();
    let mut tried = 0u32;
    for (i, (_, q)) in cf.convergents.iter().enumerate() {
        if q <= &six_m {
            continue;
        }
        if tried >= inst.max_attempts {
            break;
        }
        tried += 1;
        let q_nat = q.magnitude().clone();
        let tau_dist = nearest_int_distance(&tau_v.mul_int(q));
        let mu_dist = nearest_int_distance(&mu_v.mul_int(q));
        let (tau_dist, mu_dist) = match (tau_dist, mu_dist) {
            (Ok(t), Ok(m)) => (t, m),
            _ if at_cap => {
                attempts.push(ReductionAttempt {
                    convergent_index: i,
                    q: q_nat,
                    outcome: AttemptOutcome::Uncertain,
                });
                continue;
            }
            _ => return Err(Error::Indeterminate { op: "dp_reduce" }),
        };
        let epsilon = mu_dist.sub(&tau_dist.mul_int(&m_big));
        match epsilon.try_sign() {
            Some(Sign::Plus) => {
                attempts.push(ReductionAttempt {
                    convergent_index: i,
                    q: q_nat.clone(),
                    outcome: AttemptOutcome::EpsilonPositive,
                });
                // k >= ln(A q / eps) / ln B has no solutions; publish the
                // ceiling of the upper enclosure, which is safe on both
                // rounding sides.
                let ratio = a_v.mul_int(q).div(&epsilon)?;
                let k_real = ratio.ln()?.div(&b_v.ln()?)?;
                let k_bound = k_real.ceil_upper().max(BigInt::one());
                return Ok(ReductionResult {
                    status: ReductionStatus::Reduced,
                    q: Some(q_nat),
                    epsilon: Some(epsilon),
                    k_bound: Some(k_bound.magnitude().clone()),
                    attempts,
                    precision_used: prec,
                });
            }
            Some(_) => {
                attempts.push(ReductionAttempt {
                    convergent_index: i,
                    q: q_nat,
                    outcome: AttemptOutcome::EpsilonNonPositive,
                });
            }
            None if at_cap => {
                attempts.push(ReductionAttempt {
                    convergent_index: i,
                    q: q_nat,
                    outcome: AttemptOutcome::Uncertain,
                });
            }
            None => return Err(Error::Indeterminate { op: "dp_reduce" }),
        }
    }
    Ok(ReductionResult {
        status: ReductionStatus::Inconclusive,
        q: None,
        epsilon: None,
        k_bound: None,
        attempts,
        precision_used: prec,
    })
}

/// Runs the reduction scan, escalating precision on uncertified signs.
///
/// The convergent order is deterministic, so identical instances return
/// identical results, including the convergent finally chosen.
pub fn dp_reduce(inst: &ReductionInstance, policy: Precision) -> Result<ReductionResult> {
    let mut bits = policy.start.max(8).min(policy.cap);
    loop {
        let at_cap = bits >= policy.cap;
        match dp_attempt(inst, bits, at_cap) {
            Err(Error::Indeterminate { .. }) if !at_cap => {
                bits = bits.saturating_mul(2).min(policy.cap);
            }
            Err(Error::Indeterminate { op }) => {
                return Err(Error::PrecisionExhausted {
                    op,
                    cap_bits: policy.cap,
                })
            }
            other => return other,
        }
    }
}

/// Certified truth of `|x| < 2 |e^x - 1|` for `x` in `(-1/2, 1/2)`, `x != 0`.
///
/// This is the bridge that converts a bound on `|e^Gamma - 1|` into a bound
/// on `|Gamma|` in the reduction stage.
pub fn exp_bridge_holds(x: &CertifiedReal) -> Result<bool> {
    let prec = x.precision();
    let half = CertifiedReal::half(prec);
    let inside = x.abs().try_lt(&half);
    if inside == Some(false) {
        return Err(Error::OutOfDomain {
            op: "exp_bridge_holds",
            detail: "argument must lie strictly inside (-1/2, 1/2)",
        });
    }
    if inside.is_none() {
        return Err(Error::Indeterminate {
            op: "exp_bridge_holds",
        });
    }
    match x.try_sign() {
        Some(Sign::NoSign) => {
            return Err(Error::OutOfDomain {
                op: "exp_bridge_holds",
                detail: "both sides vanish at x = 0",
            })
        }
        None => {
            return Err(Error::Indeterminate {
                op: "exp_bridge_holds",
            })
        }
        _ => {}
    }
    let one = CertifiedReal::one(prec);
    let rhs = x.exp()?.sub(&one).abs().mul_pow2(1);
    x.abs().try_lt(&rhs).ok_or(Error::Indeterminate {
        op: "exp_bridge_holds",
    })
}

/// The small linear form attached to a candidate triple, next to the decay
/// envelope `8 / alpha^(2m)` that a true solution must respect.
///
/// For `F_k = L_m L_n` the form is `|sqrt5 * alpha^((n+m)-k) - 1|`; for
/// `L_k = F_m F_n` it is `|alpha^((n+m)-k)/5 - 1|`. Both come from replacing
/// each side by its dominant Binet term; the residual is computed exactly in
/// the field and only enclosed at the end.
pub fn linear_form_residual(
    k: u64,
    m: u64,
    n: u64,
    kind: EquationKind,
    prec: u32,
) -> Result<(CertifiedReal, CertifiedReal)> {
    if k < 1 || m < 1 || n < 1 {
        return Err(Error::OutOfDomain {
            op: "linear_form_residual",
            detail: "indices must be at least 1",
        });
    }
    let alpha = QuadraticNumber::alpha();
    let t = (n + m) as i64 - k as i64;
    let power = alpha.pow(t)?;
    let form = match kind {
        EquationKind::FibEqualsLucasProduct => QuadraticNumber::sqrt5().mul(&power),
        EquationKind::LucasEqualsFibProduct => power.div(&QuadraticNumber::from_int(5))?,
    };
    let residual = form.sub(&QuadraticNumber::one()).to_certified(prec).abs();
    let envelope = QuadraticNumber::from_int(8)
        .div(&alpha.pow(2 * m as i64)?)?
        .to_certified(prec);
    Ok((residual, envelope))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::fib;
    use alloc::vec;
    use num_traits::ToPrimitive;

    fn expr_sqrt(n: u32) -> RealExpr {
        RealExpr::SqrtInt(BigUint::from(n))
    }

    #[test]
    fn golden_ratio_expansion_is_all_ones() {
        let cf = cf_expand(&RealExpr::alpha(), 200, Precision::default()).unwrap();
        assert_eq!(cf.len(), 200);
        for a in &cf.quotients {
            assert_eq!(a, &BigInt::one());
        }
        // Convergent denominators are the Fibonacci numbers F_1, F_2, ...
        for (i, (_, q)) in cf.convergents.iter().enumerate() {
            assert_eq!(q.magnitude(), &fib(i as u64 + 1), "q_{i}");
        }
    }

    #[test]
    fn sqrt2_expansion() {
        let cf = cf_expand(&expr_sqrt(2), 5, Precision::default()).unwrap();
        let expected: Vec<BigInt> = vec![1, 2, 2, 2, 2].into_iter().map(BigInt::from).collect();
        assert_eq!(cf.quotients, expected);
    }

    #[test]
    fn convergent_invariants() {
        for x in [expr_sqrt(2), expr_sqrt(3), RealExpr::alpha()] {
            let cf = cf_expand(&x, 30, Precision::default()).unwrap();
            for i in 1..cf.len() {
                let (ref p1, ref q1) = cf.convergents[i];
                let (ref p0, ref q0) = cf.convergents[i - 1];
                // Determinant alternates between +1 and -1.
                let det = p1 * q0 - p0 * q1;
                assert!(det.magnitude().is_one(), "index {i}");
                assert!(q1 >= q0);
                if i >= 2 {
                    assert!(q1 > q0);
                    let (ref p_2, ref q_2) = cf.convergents[i - 2];
                    let a = &cf.quotients[i];
                    assert_eq!(p1, &(a * p0 + p_2));
                    assert_eq!(q1, &(a * q0 + q_2));
                }
            }
        }
    }

    #[test]
    fn best_approximation_property() {
        let prec = 512;
        let x = expr_sqrt(2).eval(prec).unwrap();
        let cf = cf_expand(&expr_sqrt(2), 20, Precision::default()).unwrap();
        for i in 0..19 {
            let (ref p, ref q) = cf.convergents[i];
            let (_, ref q_next) = cf.convergents[i + 1];
            let diff = x
                .sub(&CertifiedReal::from_ratio(p.clone(), q.clone(), prec))
                .abs();
            let limit = CertifiedReal::from_ratio(BigInt::one(), q * q_next, prec);
            assert_eq!(diff.try_lt(&limit), Some(true), "convergent {i}");
        }
    }

    #[test]
    fn distance_examples() {
        let x = CertifiedReal::from_ratio(13, 4, 128); // 3.25
        let d = nearest_int_distance(&x).unwrap();
        assert!((d.to_f64() - 0.25).abs() < 1e-20);

        let y = CertifiedReal::from_ratio(-1, 10, 128);
        let dy = nearest_int_distance(&y).unwrap();
        assert!((dy.to_f64() - 0.1).abs() < 1e-15);

        // Exact half-integer point: the distance is exactly 1/2.
        let h = CertifiedReal::from_ratio(5, 2, 128);
        let dh = nearest_int_distance(&h).unwrap();
        assert!((dh.to_f64() - 0.5).abs() < 1e-20);
    }

    #[test]
    fn convergent_distance_is_small() {
        // ||q_i tau|| < 1/q_{i+1} for every convergent denominator.
        let cf = cf_expand(&expr_sqrt(2), 25, Precision::default()).unwrap();
        let prec = 512;
        let tau = expr_sqrt(2).eval(prec).unwrap();
        for i in 5..24 {
            let q = cf.denominator(i);
            let q_next = cf.denominator(i + 1);
            let d = nearest_int_distance(&tau.mul_int(q)).unwrap();
            let limit = CertifiedReal::from_ratio(BigInt::one(), q_next.clone(), prec);
            assert_eq!(d.try_lt(&limit), Some(true), "index {i}");
        }
    }

    /// Brute force over every m <= M: no m may land inside the forbidden
    /// strip `(0, A B^-k_bound)` after subtracting the nearest integer.
    fn oracle_confirms(inst: &ReductionInstance, k_bound: &BigUint, prec: u32) -> bool {
        let tau = inst.tau.eval(prec).unwrap();
        let mu = inst.mu.eval(prec).unwrap();
        let a = inst.a_const.eval(prec).unwrap();
        let b = inst.b_base.eval(prec).unwrap();
        let kb = k_bound.to_i64().expect("small k bound in tests");
        let threshold = a.mul(&b.powi(-kb).unwrap());
        let m_max = inst.m_limit.to_u64().unwrap();
        for m in 1..=m_max {
            let x = tau.mul_int(&BigInt::from(m)).add(&mu);
            let fl = x.try_floor().expect("floor certifiable in oracle");
            let frac = x.sub(&CertifiedReal::from_int(fl, prec));
            // Violation would need 0 < frac < threshold.
            if frac.try_ge(&threshold) != Some(true) {
                return false;
            }
        }
        true
    }

    #[test]
    fn synthetic_reduction_confirmed_by_brute_force() {
        let inst = ReductionInstance::new(
            expr_sqrt(2),
            expr_sqrt(3),
            RealExpr::integer(10),
            RealExpr::integer(2),
            BigUint::from(1000u32),
        );
        let r = dp_reduce(&inst, Precision::default()).unwrap();
        assert_eq!(r.status, ReductionStatus::Reduced);
        let q = r.q.unwrap();
        assert!(q > BigUint::from(6000u32));
        let kb = r.k_bound.unwrap();
        assert!(oracle_confirms(&inst, &kb, 256));
    }

    #[test]
    fn nonpositive_epsilon_moves_to_the_next_convergent() {
        // mu = 3/13860 makes ||mu q|| = 0 at the first eligible convergent
        // denominator of sqrt2 (13860), forcing a certified epsilon < 0
        // there and a success on the next one.
        let inst = ReductionInstance::new(
            expr_sqrt(2),
            RealExpr::ratio(3, 13860),
            RealExpr::integer(10),
            RealExpr::integer(2),
            BigUint::from(1000u32),
        );
        let r = dp_reduce(&inst, Precision::default()).unwrap();
        assert_eq!(r.status, ReductionStatus::Reduced);
        assert_eq!(r.attempts[0].outcome, AttemptOutcome::EpsilonNonPositive);
        assert_eq!(r.attempts[0].q, BigUint::from(13860u32));
        assert_eq!(
            r.attempts.last().unwrap().outcome,
            AttemptOutcome::EpsilonPositive
        );
        let kb = r.k_bound.unwrap();
        assert!(oracle_confirms(&inst, &kb, 256));
    }

    #[test]
    fn reduction_is_deterministic() {
        let inst = ReductionInstance::new(
            expr_sqrt(3),
            expr_sqrt(5),
            RealExpr::integer(34),
            RealExpr::integer(2),
            BigUint::from(5000u32),
        );
        let r1 = dp_reduce(&inst, Precision::default()).unwrap();
        let r2 = dp_reduce(&inst, Precision::default()).unwrap();
        assert_eq!(r1.q, r2.q);
        assert_eq!(r1.k_bound, r2.k_bound);
        assert_eq!(r1.attempts.len(), r2.attempts.len());
    }

    #[test]
    fn bridge_inequality() {
        let x = CertifiedReal::from_ratio(1, 10, 192);
        assert!(exp_bridge_holds(&x).unwrap());
        let y = CertifiedReal::from_ratio(-2, 5, 192);
        assert!(exp_bridge_holds(&y).unwrap());
        let z = CertifiedReal::zero(192);
        assert!(matches!(
            exp_bridge_holds(&z),
            Err(Error::OutOfDomain { .. })
        ));
        let w = CertifiedReal::from_ratio(3, 5, 192);
        assert!(matches!(
            exp_bridge_holds(&w),
            Err(Error::OutOfDomain { .. })
        ));
    }

    #[test]
    fn bridge_holds_across_the_domain() {
        // 10^3 sample points in (-1/2, 1/2) excluding 0.
        for i in 1..=500i64 {
            for s in [-1i64, 1] {
                let x = CertifiedReal::from_ratio(s * i, 1001, 192);
                assert!(exp_bridge_holds(&x).unwrap(), "x = {}/1001", s * i);
            }
        }
    }

    #[test]
    fn residuals_at_known_solutions() {
        let prec = 192;
        for (k, m, n) in [(8u64, 2u64, 4u64), (4, 1, 2), (1, 1, 1), (2, 1, 1)] {
            let (res, env) =
                linear_form_residual(k, m, n, EquationKind::FibEqualsLucasProduct, prec).unwrap();
            assert_eq!(res.try_lt(&env), Some(true), "triple ({k},{m},{n})");
        }
        for (k, m, n) in [
            (1u64, 1u64, 1u64),
            (1, 1, 2),
            (1, 2, 2),
            (2, 1, 4),
            (2, 2, 4),
            (3, 3, 3),
        ] {
            let (res, env) =
                linear_form_residual(k, m, n, EquationKind::LucasEqualsFibProduct, prec).unwrap();
            assert_eq!(res.try_lt(&env), Some(true), "triple ({k},{m},{n})");
        }
    }

    #[test]
    fn residual_at_a_non_solution_is_large() {
        // (20, 2, 4) misses the F=LL equation; alpha^-14 sqrt5 sits near 0,
        // so the residual is within rounding of 1 (about 0.9973).
        let (res, _) =
            linear_form_residual(20, 2, 4, EquationKind::FibEqualsLucasProduct, 192).unwrap();
        let nine_tenths = CertifiedReal::from_ratio(9, 10, 192);
        assert_eq!(res.try_gt(&nine_tenths), Some(true));
        assert!((res.to_f64() - 0.99734).abs() < 1e-3);
    }
}
