//! The acceptance checklist.
//!
//! Every check this pipeline must satisfy, runnable as a library call so the
//! CLI `verify` command and the acceptance test target execute the same
//! code. Each item returns a pass/fail outcome with the computed values in
//! the detail string; nothing is asserted here, callers decide what a
//! failure means. Hard errors (precision exhaustion at a configured cap)
//! abort the run instead of masquerading as check failures.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive};

use crate::algebraic::QuadraticNumber;
use crate::bounds::{
    self, chain_upper_lower, eliminate_inner, int_within_relative, matveev_coefficient,
    solve_growth_bound, within_relative, GrowthBound,
};
use crate::error::{Error, Result};
use crate::expr::RealExpr;
use crate::real::{refine, CertifiedReal, Precision};
use crate::reduction::{
    cf_expand, dp_reduce, nearest_int_distance, ReductionInstance, ReductionStatus,
};
use crate::reference::{
    self, expected_solutions, EPSILON_CASE1_THOUSANDTHS, EPSILON_CASE2_THOUSANDTHS, RANGE_M_MAX,
    RANGE_N_MAX,
};
use crate::search::{
    common_terms, cross_check_prior, enumerate_solutions, square_cases, EquationKind, SearchRange,
    SolutionTriple, Verdict,
};
use crate::sequences::{binet_round, fib, fib_table, growth_bounds_hold, lucas, SequenceKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    /// Passed against the subset of the expectation visible in a narrowed
    /// range; not a failure.
    RangeLimited,
}

impl CheckStatus {
    pub fn passed(&self) -> bool {
        !matches!(self, CheckStatus::Fail)
    }

    pub fn label(&self) -> &'static str {
        match self {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => "FAIL",
            CheckStatus::RangeLimited => "PASS (range-limited)",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub id: &'static str,
    pub name: &'static str,
    pub status: CheckStatus,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub m_max: u64,
    pub n_max: u64,
    pub precision: Precision,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            m_max: RANGE_M_MAX,
            n_max: RANGE_N_MAX,
            precision: Precision::default(),
        }
    }
}

fn triples_string(set: &BTreeSet<SolutionTriple>) -> String {
    let mut s = String::new();
    for (i, t) in set.iter().enumerate() {
        if i > 0 {
            s.push_str(", ");
        }
        s.push_str(&t.to_string());
    }
    s
}

fn solution_set_check(
    id: &'static str,
    name: &'static str,
    kind: EquationKind,
    cfg: &VerifyConfig,
) -> CheckOutcome {
    let range = SearchRange::new(cfg.m_max, cfg.n_max);
    let found = enumerate_solutions(kind, &range);
    let expected: BTreeSet<SolutionTriple> = expected_solutions(kind)
        .into_iter()
        .filter(|t| t.m <= cfg.m_max && t.n <= cfg.n_max)
        .collect();
    let full_range = cfg.m_max >= RANGE_M_MAX && cfg.n_max >= RANGE_N_MAX;
    let ok = found == expected;
    let status = if !ok {
        CheckStatus::Fail
    } else if full_range {
        CheckStatus::Pass
    } else {
        CheckStatus::RangeLimited
    };
    let mut detail = format!("found {{{}}}", triples_string(&found));
    if !ok {
        detail.push_str(&format!(", expected {{{}}}", triples_string(&expected)));
    }
    if !full_range {
        detail.push_str(&format!(
            " over the narrowed range m <= {}, n <= {}",
            cfg.m_max, cfg.n_max
        ));
    }
    CheckOutcome {
        id,
        name,
        status,
        detail,
    }
}

fn standard_a_values(kind: EquationKind, prec: u32) -> Result<[CertifiedReal; 3]> {
    let a1 = bounds::a_value(&QuadraticNumber::alpha(), 2, prec)?;
    let a2 = bounds::a_value(&QuadraticNumber::beta_abs(), 2, prec)?;
    let a3 = match kind {
        EquationKind::FibEqualsLucasProduct => {
            bounds::a_value(&QuadraticNumber::sqrt5(), 2, prec)?
        }
        EquationKind::LucasEqualsFibProduct => {
            bounds::a_value(&QuadraticNumber::from_int(5), 2, prec)?
        }
    };
    Ok([a1, a2, a3])
}

fn check_matveev_band(cfg: &VerifyConfig) -> Result<CheckOutcome> {
    let c1 = refine(cfg.precision, "matveev_reference_check", |prec| {
        let a = standard_a_values(EquationKind::FibEqualsLucasProduct, prec)?;
        let c = matveev_coefficient(2, &a, prec)?;
        let lo = CertifiedReal::from_int(BigInt::from(358u32) * BigInt::from(10u32).pow(9), prec);
        let hi = CertifiedReal::from_int(BigInt::from(365u32) * BigInt::from(10u32).pow(9), prec);
        match (c.try_ge(&lo), c.try_le(&hi)) {
            (Some(a), Some(b)) => Ok((c, a && b)),
            _ => Err(Error::Indeterminate {
                op: "matveev_reference_check",
            }),
        }
    })?;
    let (value, in_band) = c1;
    Ok(CheckOutcome {
        id: "3",
        name: "first Matveev coefficient in [3.58e11, 3.65e11]",
        status: if in_band {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        },
        detail: format!("computed {}", value.decimal(6)),
    })
}

fn check_matveev_per_m(cfg: &VerifyConfig) -> Result<CheckOutcome> {
    let (value, ok) = refine(cfg.precision, "matveev_per_m_check", |prec| {
        let la = QuadraticNumber::alpha().to_certified(prec).ln()?;
        let a1 = bounds::a_value(&QuadraticNumber::alpha(), 2, prec)?;
        let a2 = bounds::a_value(&QuadraticNumber::beta_abs(), 2, prec)?;
        let six = la.mul_int(&BigInt::from(6));
        let c = matveev_coefficient(2, &[a1, a2, six], prec)?;
        match within_relative(&c, 649, 9, 1, 100) {
            Some(b) => Ok((c, b)),
            None => Err(Error::Indeterminate {
                op: "matveev_per_m_check",
            }),
        }
    })?;
    Ok(CheckOutcome {
        id: "4",
        name: "per-m Matveev coefficient within 1% of 6.49e11",
        status: if ok { CheckStatus::Pass } else { CheckStatus::Fail },
        detail: format!("computed {}", value.decimal(6)),
    })
}

fn check_chained_coefficients(cfg: &VerifyConfig) -> Result<CheckOutcome> {
    let rep = bounds::derive_index_bounds(EquationKind::FibEqualsLucasProduct, cfg.precision)?;
    let mc = rep.step("m_linear_coefficient").unwrap().value.clone();
    let sq = rep.step("squared_coefficient").unwrap().value.clone();
    let ok_m = within_relative(&mc, 377, 9, 1, 100) == Some(true);
    let ok_sq = within_relative(&sq, 245, 21, 2, 100) == Some(true);
    Ok(CheckOutcome {
        id: "5",
        name: "chained coefficients within 1% of 3.77e11 and 2% of 2.45e23",
        status: if ok_m && ok_sq {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        },
        detail: format!("m multiplier {}, squared {}", mc.decimal(6), sq.decimal(6)),
    })
}

fn check_growth_solver(cfg: &VerifyConfig) -> Result<(CheckOutcome, CheckOutcome)> {
    let prec = cfg.precision.start;
    // 6a: the recorded squared coefficient 2.45e23 solves to ~2.18e27.
    let rate = QuadraticNumber::alpha().to_certified(prec).ln()?;
    let gb = GrowthBound {
        coeff: CertifiedReal::from_int(BigInt::from(245u32) * BigInt::from(10u32).pow(21), prec),
        arg_scale: 4,
        power: 2,
        rate: rate.clone(),
        log_k: CertifiedReal::from_int(33, prec).ln()?,
    };
    let solved = solve_growth_bound(&gb, cfg.precision)?;
    let ok_a = int_within_relative(&solved.bound, 218, 25, 2, 100) && solved.iterations < 20;
    let a = CheckOutcome {
        id: "6a",
        name: "growth solver reproduces n < 2.18e27 within 2%",
        status: if ok_a { CheckStatus::Pass } else { CheckStatus::Fail },
        detail: format!(
            "solved n = {} in {} iterations",
            crate::real::CertifiedReal::from_biguint(&solved.bound, 64).decimal(6),
            solved.iterations
        ),
    };

    // 6b: the second equation's chain built around the recorded multiplier
    // 7.52e11 (its other constants recomputed, since no record of them
    // exists) against the recorded n < 2.25e27.
    let two_ln_alpha = rate.mul_pow2(1);
    let m_inner = chain_upper_lower(
        CertifiedReal::from_int(BigInt::from(752u32) * BigInt::from(10u32).pow(9), prec)
            .mul(&two_ln_alpha),
        4,
        CertifiedReal::from_int(8, prec).ln()?,
        two_ln_alpha,
    )?;
    let la = QuadraticNumber::alpha().to_certified(prec).ln()?;
    let a1 = bounds::a_value(&QuadraticNumber::alpha(), 2, prec)?;
    let a2 = bounds::a_value(&QuadraticNumber::beta_abs(), 2, prec)?;
    let six = la.mul_int(&BigInt::from(6));
    let c2_per_m = matveev_coefficient(2, &[a1, a2, six], prec)?;
    let (gb_n, _) = eliminate_inner(
        &c2_per_m,
        &m_inner,
        CertifiedReal::from_int(33, prec).ln()?,
        rate,
    )?;
    let solved_b = solve_growth_bound(&gb_n, cfg.precision)?;
    let ok_b = int_within_relative(&solved_b.bound, 225, 25, 2, 100);
    let b = CheckOutcome {
        id: "6b",
        name: "second-equation chain reproduces n < 2.25e27 within 2%",
        status: if ok_b { CheckStatus::Pass } else { CheckStatus::Fail },
        detail: format!(
            "solved n = {} from the recorded 7.52e11 multiplier; recorded bound 2.25e27",
            crate::real::CertifiedReal::from_biguint(&solved_b.bound, 64).decimal(6)
        ),
    };
    Ok((a, b))
}

/// Deterministic 64-bit generator for the randomized reduction check.
struct SplitMix64(u64);

impl SplitMix64 {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }
}

fn random_nonsquare(rng: &mut SplitMix64) -> u64 {
    loop {
        let d = 2 + rng.below(96);
        let is_square = (1..=d).take_while(|r| r * r <= d).any(|r| r * r == d);
        if !is_square {
            return d;
        }
    }
}

/// Brute force over every m <= M: confirms that no `m` puts the fractional
/// part of `m tau + mu` inside `(0, A B^-k_bound)`.
fn reduction_oracle_confirms(
    inst: &ReductionInstance,
    k_bound: &BigUint,
    prec: u32,
) -> Result<bool> {
    let tau = inst.tau.eval(prec)?;
    let mu = inst.mu.eval(prec)?;
    let a = inst.a_const.eval(prec)?;
    let b = inst.b_base.eval(prec)?;
    let kb = match k_bound.to_i64() {
        Some(v) => v,
        None => return Ok(true), // threshold underflows every enclosure
    };
    let threshold = a.mul(&b.powi(-kb)?);
    let m_max = inst.m_limit.to_u64().unwrap_or(0);
    let mut x = mu.clone();
    for m in 1..=m_max {
        x = x.add(&tau);
        let fl = match x.try_floor() {
            Some(f) => f,
            None => return Err(Error::Indeterminate {
                op: "reduction_oracle",
            }),
        };
        let frac = x.sub(&CertifiedReal::from_int(fl, prec));
        match frac.try_ge(&threshold) {
            Some(true) => {}
            Some(false) => {
                // A certified violation of the published bound.
                let _ = m;
                return Ok(false);
            }
            None => return Err(Error::Indeterminate {
                op: "reduction_oracle",
            }),
        }
    }
    Ok(true)
}

fn check_reduction_soundness(cfg: &VerifyConfig) -> Result<CheckOutcome> {
    let mut rng = SplitMix64(0x5eed_f1b0_0001_2357);
    let mut reduced = 0u32;
    let mut violations = 0u32;
    let mut inconclusive = 0u32;
    for _ in 0..100 {
        let tau = RealExpr::SqrtInt(BigUint::from(random_nonsquare(&mut rng)));
        let mu = if rng.below(2) == 0 {
            RealExpr::SqrtInt(BigUint::from(random_nonsquare(&mut rng)))
        } else {
            RealExpr::ratio(1 + rng.below(997) as i64, 1 + rng.below(993) as i64)
        };
        let a_const = RealExpr::integer(1 + rng.below(50) as i64);
        let b_base = match rng.below(3) {
            0 => RealExpr::integer(2),
            1 => RealExpr::integer(3),
            _ => RealExpr::ratio(3, 2),
        };
        let m_limit = BigUint::from(100 + rng.below(9900));
        let inst = ReductionInstance::new(tau, mu, a_const, b_base, m_limit);
        let r = dp_reduce(&inst, cfg.precision)?;
        match r.status {
            ReductionStatus::Reduced => {
                reduced += 1;
                let kb = r.k_bound.as_ref().unwrap();
                let confirmed = refine(cfg.precision, "reduction_oracle", |prec| {
                    reduction_oracle_confirms(&inst, kb, prec)
                })?;
                if !confirmed {
                    violations += 1;
                }
            }
            ReductionStatus::Inconclusive => inconclusive += 1,
        }
    }
    let ok = violations == 0 && reduced >= 80;
    Ok(CheckOutcome {
        id: "7",
        name: "randomized reductions confirmed by brute force",
        status: if ok { CheckStatus::Pass } else { CheckStatus::Fail },
        detail: format!(
            "{reduced} reduced, {inconclusive} inconclusive, {violations} oracle violations"
        ),
    })
}

/// One candidate `(tau, mu)` evaluated against the recorded reduction
/// fixtures.
#[derive(Clone, Debug)]
pub struct FixtureCandidate {
    pub tau_label: String,
    pub mu_label: String,
    /// Midpoint and radius of the computed epsilon, when its sign certified.
    pub epsilon: Option<(String, String)>,
    /// Certified sign of epsilon: -1, 0, or 1.
    pub epsilon_sign: Option<i8>,
    /// Whether epsilon is certified above the recorded 0.486 threshold.
    pub reproduces_case1_threshold: Option<bool>,
    /// Whether epsilon is certified above the recorded 0.034 threshold.
    pub reproduces_case2_threshold: Option<bool>,
    /// Whether the recorded q47 appears among the candidate's convergent
    /// denominators.
    pub q47_in_expansion: Option<bool>,
}

/// Fixture evaluation: the recorded q and M, the exact `q > 6M` comparison,
/// a diagnosis of the ratio printed for the reduction stage (it collapses to
/// an exact rational), and per-candidate epsilon rows. Fixture thresholds
/// are reported, never asserted.
#[derive(Clone, Debug)]
pub struct FixtureEvaluation {
    pub q_decimal: String,
    pub six_m_decimal: String,
    pub q_exceeds_6m: bool,
    pub degenerate_ratio: bool,
    pub degeneracy_note: String,
    pub candidates: Vec<FixtureCandidate>,
}

/// Built-in candidate pairs tried by the fixture report. They are probes,
/// not ground truth: each row records what the candidate reproduces.
pub fn fixture_candidates() -> Vec<(String, RealExpr, String, RealExpr)> {
    let ln = |e: RealExpr| RealExpr::ln_of(e);
    let five = RealExpr::integer(5);
    let mu_std = RealExpr::div_of(ln(RealExpr::sqrt5()), ln(RealExpr::alpha()));
    alloc::vec![
        (
            "log(sqrt5)/log(alpha)".to_string(),
            RealExpr::div_of(ln(RealExpr::sqrt5()), ln(RealExpr::alpha())),
            "log(sqrt5)/log(alpha)".to_string(),
            mu_std.clone(),
        ),
        (
            "log(alpha)/log(sqrt5)".to_string(),
            RealExpr::div_of(ln(RealExpr::alpha()), ln(RealExpr::sqrt5())),
            "log(sqrt5)/log(alpha)".to_string(),
            mu_std.clone(),
        ),
        (
            "log(alpha)/log(5)".to_string(),
            RealExpr::div_of(ln(RealExpr::alpha()), ln(five.clone())),
            "log(sqrt5)/log(alpha)".to_string(),
            mu_std.clone(),
        ),
        (
            "log(5)/log(alpha)".to_string(),
            RealExpr::div_of(ln(five), ln(RealExpr::alpha())),
            "log(sqrt5)/log(alpha)".to_string(),
            mu_std,
        ),
    ]
}

fn eval_candidate(
    tau_label: String,
    tau: &RealExpr,
    mu_label: String,
    mu: &RealExpr,
    policy: Precision,
) -> FixtureCandidate {
    let q = reference::reduction_q47();
    let q_int = BigInt::from(q.clone());
    let m_int = BigInt::from(reference::reduction_m_limit());

    let eps = refine(policy, "fixture_epsilon", |prec| {
        let tau_v = tau.eval(prec)?;
        let mu_v = mu.eval(prec)?;
        let td = nearest_int_distance(&tau_v.mul_int(&q_int))?;
        let md = nearest_int_distance(&mu_v.mul_int(&q_int))?;
        let eps = md.sub(&td.mul_int(&m_int));
        if eps.try_sign().is_none() {
            return Err(Error::Indeterminate {
                op: "fixture_epsilon",
            });
        }
        Ok(eps)
    });

    let (epsilon, epsilon_sign, rep1, rep2) = match eps {
        Ok(e) => {
            let sign = e.try_sign().map(|s| match s {
                num_bigint::Sign::Plus => 1i8,
                num_bigint::Sign::Minus => -1,
                num_bigint::Sign::NoSign => 0,
            });
            let thr1 = CertifiedReal::from_ratio(EPSILON_CASE1_THOUSANDTHS as i64, 1000, 128);
            let thr2 = CertifiedReal::from_ratio(EPSILON_CASE2_THOUSANDTHS as i64, 1000, 128);
            (
                Some((e.decimal(6), e.radius_decimal(2))),
                sign,
                e.try_gt(&thr1),
                e.try_gt(&thr2),
            )
        }
        Err(_) => (None, None, None, None),
    };

    // Does the recorded q47 show up in the candidate's own expansion?
    let q47_in_expansion = cf_expand(tau, 70, policy).ok().map(|cf| {
        cf.convergents
            .iter()
            .any(|(_, cq)| cq.magnitude() == &q)
    });

    FixtureCandidate {
        tau_label,
        mu_label,
        epsilon,
        epsilon_sign,
        reproduces_case1_threshold: rep1,
        reproduces_case2_threshold: rep2,
        q47_in_expansion,
    }
}

/// Evaluates the recorded reduction fixtures.
pub fn evaluate_reduction_fixture(policy: Precision) -> FixtureEvaluation {
    let q = reference::reduction_q47();
    let six_m = reference::reduction_m_limit() * 6u32;
    let q_exceeds_6m = q > six_m;

    // The ratio printed for the reduction stage divides two logarithms whose
    // arguments multiply to 1 exactly (alpha * |beta| = 1 in the field), so
    // it is exactly -1: rational, and no convergent of it can reach q47.
    let degenerate = QuadraticNumber::alpha()
        .mul(&QuadraticNumber::beta_abs())
        .is_one();
    let note = if degenerate {
        "alpha * |beta| = 1 exactly, so log(alpha)/log(|beta|) = -1 is rational \
         and the convergent fixture cannot arise from it; candidates below are \
         probes for a corrected pair"
    } else {
        "unexpected: alpha * |beta| != 1"
    };

    let mut candidates = Vec::new();
    for (tl, tau, ml, mu) in fixture_candidates() {
        candidates.push(eval_candidate(tl, &tau, ml, &mu, policy));
    }

    FixtureEvaluation {
        q_decimal: q.to_string(),
        six_m_decimal: six_m.to_string(),
        q_exceeds_6m,
        degenerate_ratio: degenerate,
        degeneracy_note: String::from(note),
        candidates,
    }
}

fn check_fixture_handling(cfg: &VerifyConfig) -> Result<CheckOutcome> {
    let eval = evaluate_reduction_fixture(cfg.precision);
    let mut ok = eval.q_exceeds_6m && eval.degenerate_ratio;
    // The machinery must certify an epsilon sign for at least one candidate
    // and must report threshold flags as data (their truth is not asserted).
    let mut certified_rows = 0;
    for c in &eval.candidates {
        if c.epsilon_sign.is_some() {
            certified_rows += 1;
            if c.reproduces_case1_threshold.is_none() || c.reproduces_case2_threshold.is_none() {
                ok = false;
            }
        }
    }
    if certified_rows == 0 {
        ok = false;
    }
    let reproduced: Vec<&FixtureCandidate> = eval
        .candidates
        .iter()
        .filter(|c| c.reproduces_case1_threshold == Some(true) || c.q47_in_expansion == Some(true))
        .collect();
    Ok(CheckOutcome {
        id: "8",
        name: "reduction fixtures evaluated, never asserted",
        status: if ok { CheckStatus::Pass } else { CheckStatus::Fail },
        detail: format!(
            "q > 6M exact: {}; degenerate printed ratio: {}; {} candidate rows with certified epsilon sign; {} candidate(s) reproduce a fixture",
            eval.q_exceeds_6m,
            eval.degenerate_ratio,
            certified_rows,
            reproduced.len()
        ),
    })
}

fn check_growth_inequalities(cfg: &VerifyConfig) -> Result<CheckOutcome> {
    for n in 1..=1000u64 {
        if !growth_bounds_hold(n, SequenceKind::Fibonacci, cfg.precision)? {
            return Ok(CheckOutcome {
                id: "9",
                name: "growth inequalities hold across the table",
                status: CheckStatus::Fail,
                detail: format!("Fibonacci chain fails at n = {n}"),
            });
        }
    }
    for n in 0..=1000u64 {
        if !growth_bounds_hold(n, SequenceKind::Lucas, cfg.precision)? {
            return Ok(CheckOutcome {
                id: "9",
                name: "growth inequalities hold across the table",
                status: CheckStatus::Fail,
                detail: format!("Lucas chain fails at n = {n}"),
            });
        }
    }
    Ok(CheckOutcome {
        id: "9",
        name: "growth inequalities hold across the table",
        status: CheckStatus::Pass,
        detail: String::from(
            "Fibonacci 1..=1000 and Lucas 0..=1000 certified (second Lucas pair from n = 1)",
        ),
    })
}

fn check_identities(cfg: &VerifyConfig) -> Result<CheckOutcome> {
    let ft = fib_table(1001);
    for n in 0..=1000u64 {
        let b = binet_round(n, cfg.precision)?;
        if b != ft[n as usize] {
            return Ok(CheckOutcome {
                id: "10",
                name: "rounding and recurrence identities",
                status: CheckStatus::Fail,
                detail: format!("rounded power mismatch at n = {n}"),
            });
        }
        if n >= 1 && n < 1000 {
            let l = lucas(n);
            if l != &ft[n as usize - 1] + &ft[n as usize + 1] {
                return Ok(CheckOutcome {
                    id: "10",
                    name: "rounding and recurrence identities",
                    status: CheckStatus::Fail,
                    detail: format!("L_n != F_(n-1) + F_(n+1) at n = {n}"),
                });
            }
        }
    }
    let cf = cf_expand(&RealExpr::alpha(), 200, cfg.precision)?;
    for (i, a) in cf.quotients.iter().enumerate() {
        if !a.is_one() {
            return Ok(CheckOutcome {
                id: "10",
                name: "rounding and recurrence identities",
                status: CheckStatus::Fail,
                detail: format!("golden-ratio quotient {i} is {a}, not 1"),
            });
        }
    }
    for (i, (_, q)) in cf.convergents.iter().enumerate() {
        if q.magnitude() != &fib(i as u64 + 1) {
            return Ok(CheckOutcome {
                id: "10",
                name: "rounding and recurrence identities",
                status: CheckStatus::Fail,
                detail: format!("golden-ratio convergent denominator {i} mismatch"),
            });
        }
    }
    Ok(CheckOutcome {
        id: "10",
        name: "rounding and recurrence identities",
        status: CheckStatus::Pass,
        detail: String::from(
            "rounded powers equal the exact values to n = 1000; golden-ratio expansion all ones with Fibonacci denominators",
        ),
    })
}

fn check_corollaries() -> CheckOutcome {
    let expected: BTreeSet<BigUint> = [1u32, 3].iter().map(|&v| BigUint::from(v)).collect();
    let common = common_terms(160, false);
    let ok_common = common == expected;

    let sq1 = square_cases(EquationKind::FibEqualsLucasProduct, 160);
    let exp1: BTreeSet<SolutionTriple> = [(1, 1, 1), (2, 1, 1)]
        .iter()
        .map(|&(k, m, n)| SolutionTriple::new(k, m, n))
        .collect();
    let sq2 = square_cases(EquationKind::LucasEqualsFibProduct, 160);
    let exp2: BTreeSet<SolutionTriple> = [(1, 1, 1), (1, 2, 2), (3, 3, 3)]
        .iter()
        .map(|&(k, m, n)| SolutionTriple::new(k, m, n))
        .collect();
    let ok = ok_common && sq1 == exp1 && sq2 == exp2;
    CheckOutcome {
        id: "11",
        name: "common terms and square cases",
        status: if ok { CheckStatus::Pass } else { CheckStatus::Fail },
        detail: format!(
            "common terms {:?}; square cases {{{}}} and {{{}}}",
            common.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            triples_string(&sq1),
            triples_string(&sq2)
        ),
    }
}

fn check_cross_checks() -> CheckOutcome {
    let i2 = cross_check_prior(EquationKind::FibEqualsLucasProduct);
    let i3 = cross_check_prior(EquationKind::LucasEqualsFibProduct);
    let carlitz_normalized = i2
        .iter()
        .any(|c| {
            c.source.starts_with("Carlitz")
                && c.verdict == Verdict::ConfirmedNormalized
                && c.normalized_triple == Some(SolutionTriple::new(8, 2, 4))
        });
    let wang_refuted = i3.iter().any(|c| {
        c.source.starts_with("Wang")
            && c.verdict == Verdict::Refuted
            && c.witnesses.contains(&SolutionTriple::new(3, 3, 3))
    });
    let ok = carlitz_normalized && wang_refuted;
    CheckOutcome {
        id: "12",
        name: "published claims settled",
        status: if ok { CheckStatus::Pass } else { CheckStatus::Fail },
        detail: format!(
            "(8,4,2) normalized to (8,2,4): {carlitz_normalized}; no-solution claim refuted by (3,3,3): {wang_refuted}"
        ),
    }
}

/// Runs the whole checklist in order. A hard `Err` means the run could not
/// decide a check at the configured precision cap (or an internal failure),
/// not that a check failed.
pub fn run_all(cfg: &VerifyConfig) -> Result<Vec<CheckOutcome>> {
    let mut out = Vec::new();
    out.push(solution_set_check(
        "1",
        "solution set of F_k = L_m L_n",
        EquationKind::FibEqualsLucasProduct,
        cfg,
    ));
    out.push(solution_set_check(
        "2",
        "solution set of L_k = F_m F_n",
        EquationKind::LucasEqualsFibProduct,
        cfg,
    ));
    out.push(check_matveev_band(cfg)?);
    out.push(check_matveev_per_m(cfg)?);
    out.push(check_chained_coefficients(cfg)?);
    let (a, b) = check_growth_solver(cfg)?;
    out.push(a);
    out.push(b);
    out.push(check_reduction_soundness(cfg)?);
    out.push(check_fixture_handling(cfg)?);
    out.push(check_growth_inequalities(cfg)?);
    out.push(check_identities(cfg)?);
    out.push(check_corollaries());
    out.push(check_cross_checks());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_candidates_have_labels() {
        assert_eq!(fixture_candidates().len(), 4);
    }

    #[test]
    fn fixture_evaluation_reports_the_exact_facts() {
        let eval = evaluate_reduction_fixture(Precision::default());
        assert!(eval.q_exceeds_6m);
        assert!(eval.degenerate_ratio);
        assert_eq!(eval.candidates.len(), 4);
        // Every candidate with a certified sign also carries threshold flags.
        for c in &eval.candidates {
            if c.epsilon_sign.is_some() {
                assert!(c.reproduces_case1_threshold.is_some());
                assert!(c.reproduces_case2_threshold.is_some());
            }
        }
    }
}
