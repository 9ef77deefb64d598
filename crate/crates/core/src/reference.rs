//! Recorded reference values.
//!
//! Everything this pipeline is expected to reproduce is pinned here once, as
//! data, so reports can always print a recomputed column next to a recorded
//! one and drift in either direction becomes visible. Values the pipeline
//! cannot regenerate from its own inputs (the reduction-stage convergent and
//! epsilon thresholds) are fixtures: they are evaluated and reported, never
//! asserted.

use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::Num;

use crate::search::{EquationKind, SolutionTriple};

/// A recorded constant: an exact `mantissa * 10^pow10` with a display form.
#[derive(Clone, Copy, Debug)]
pub struct RefConstant {
    pub key: &'static str,
    pub description: &'static str,
    pub mantissa: u64,
    pub pow10: u32,
    pub display: &'static str,
}

/// Constants the bound chains are compared against, by equation.
pub const FLL_CONSTANTS: &[RefConstant] = &[
    RefConstant {
        key: "stage1_matveev",
        description: "three-log coefficient, first product equation",
        mantissa: 362,
        pow10: 9,
        display: "3.62e11",
    },
    RefConstant {
        key: "m_linear_coefficient",
        description: "m bound multiplier on (1 + ln 4n)",
        mantissa: 377,
        pow10: 9,
        display: "3.77e11",
    },
    RefConstant {
        key: "stage2_matveev_per_m",
        description: "per-m coefficient of the second instance",
        mantissa: 649,
        pow10: 9,
        display: "6.49e11",
    },
    RefConstant {
        key: "squared_coefficient",
        description: "multiplier on (1 + ln 4n)^2",
        mantissa: 245,
        pow10: 21,
        display: "2.45e23",
    },
    RefConstant {
        key: "n_bound",
        description: "explicit bound on n",
        mantissa: 218,
        pow10: 25,
        display: "2.18e27",
    },
];

pub const LFF_CONSTANTS: &[RefConstant] = &[
    RefConstant {
        key: "m_linear_coefficient",
        description: "m bound multiplier on (1 + ln 4n)",
        mantissa: 752,
        pow10: 9,
        display: "7.52e11",
    },
    RefConstant {
        key: "n_bound",
        description: "explicit bound on n",
        mantissa: 225,
        pow10: 25,
        display: "2.25e27",
    },
];

pub fn constants_for(kind: EquationKind) -> &'static [RefConstant] {
    match kind {
        EquationKind::FibEqualsLucasProduct => FLL_CONSTANTS,
        EquationKind::LucasEqualsFibProduct => LFF_CONSTANTS,
    }
}

/// The recorded convergent used by the reduction stage.
pub const REDUCTION_P47_DECIMAL: &str = "13949911361108065346183311454";
pub const REDUCTION_Q47_DECIMAL: &str = "92134223612043233793615516979";

pub fn reduction_q47() -> BigUint {
    BigUint::from_str_radix(REDUCTION_Q47_DECIMAL, 10).unwrap()
}

pub fn reduction_p47() -> BigUint {
    BigUint::from_str_radix(REDUCTION_P47_DECIMAL, 10).unwrap()
}

/// The recorded cutoff `M = 9.1e27`, exactly.
pub fn reduction_m_limit() -> BigUint {
    BigUint::from(91u32) * BigUint::from(10u32).pow(26)
}

/// Recorded epsilon thresholds: `eps > 0.486` (first case, A = 34,
/// B = alpha^2) and `eps > 0.034` (second case, A = 138, B = alpha). Stored
/// as exact rationals `num/1000`.
pub const EPSILON_CASE1_THOUSANDTHS: u32 = 486;
pub const EPSILON_CASE2_THOUSANDTHS: u32 = 34;

/// Reduction outcomes recorded for the two cases: `m <= 73` and `n <= 160`.
pub const REDUCED_M_CASE1: u64 = 73;
pub const REDUCED_N_CASE2: u64 = 160;

/// The verified search window (union over both equations).
pub const RANGE_M_MAX: u64 = 75;
pub const RANGE_N_MAX: u64 = 160;

/// The recorded per-equation windows behind that union.
pub const LFF_RANGE_M_MAX: u64 = 75;
pub const LFF_RANGE_N_MAX: u64 = 153;

/// Expected solution sets over the reference range.
pub fn expected_solutions(kind: EquationKind) -> Vec<SolutionTriple> {
    let raw: &[(u64, u64, u64)] = match kind {
        EquationKind::FibEqualsLucasProduct => &[(1, 1, 1), (2, 1, 1), (4, 1, 2), (8, 2, 4)],
        EquationKind::LucasEqualsFibProduct => &[
            (1, 1, 1),
            (1, 1, 2),
            (1, 2, 2),
            (2, 1, 4),
            (2, 2, 4),
            (3, 3, 3),
        ],
    };
    raw.iter()
        .map(|&(k, m, n)| SolutionTriple::new(k, m, n))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_parse_and_relate() {
        let q = reduction_q47();
        let m = reduction_m_limit();
        assert!(q > &m * 6u32);
        assert!(reduction_p47() < q);
    }

    #[test]
    fn expected_sets_have_the_recorded_sizes() {
        assert_eq!(
            expected_solutions(EquationKind::FibEqualsLucasProduct).len(),
            4
        );
        assert_eq!(
            expected_solutions(EquationKind::LucasEqualsFibProduct).len(),
            6
        );
    }
}
