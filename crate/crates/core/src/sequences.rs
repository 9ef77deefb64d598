//! Exact Fibonacci and Lucas arithmetic.
//!
//! Values come from the fast-doubling identities
//! `F_2k = F_k (2 F_{k+1} - F_k)` and `F_{2k+1} = F_k^2 + F_{k+1}^2`, which
//! cost `O(log n)` big-integer multiplications; Lucas values ride along via
//! `L_n = 2 F_{n+1} - F_n`. The growth checks compare the exact integer
//! against certified enclosures of golden-ratio powers.

use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::algebraic::QuadraticNumber;
use crate::error::{Error, Result};
use crate::real::{refine, CertifiedReal, Precision};

/// `(F_n, F_{n+1})` by fast doubling.
pub fn fib_pair(n: u64) -> (BigUint, BigUint) {
    let mut a = BigUint::zero(); // F_k
    let mut b = BigUint::one(); // F_{k+1}
    if n == 0 {
        return (a, b);
    }
    let bits = 64 - n.leading_zeros();
    for i in (0..bits).rev() {
        let c = &a * (&(&b << 1u32) - &a); // F_2k
        let d = &a * &a + &b * &b; // F_2k+1
        if (n >> i) & 1 == 1 {
            a = d.clone();
            b = c + d;
        } else {
            a = c;
            b = d;
        }
    }
    (a, b)
}

/// `F_n`, exactly.
pub fn fib(n: u64) -> BigUint {
    fib_pair(n).0
}

/// `L_n`, exactly, via `L_n = 2 F_{n+1} - F_n`.
pub fn lucas(n: u64) -> BigUint {
    let (f, f1) = fib_pair(n);
    (f1 << 1u32) - f
}

/// Table `F_0 ..= F_max` by plain recurrence iteration.
pub fn fib_table(max: u64) -> Vec<BigUint> {
    let mut t = Vec::with_capacity(max as usize + 1);
    let (mut a, mut b) = (BigUint::zero(), BigUint::one());
    for _ in 0..=max {
        t.push(a.clone());
        let next = &a + &b;
        a = b;
        b = next;
    }
    t
}

/// Table `L_0 ..= L_max` by plain recurrence iteration.
pub fn lucas_table(max: u64) -> Vec<BigUint> {
    let mut t = Vec::with_capacity(max as usize + 1);
    let (mut a, mut b) = (BigUint::from(2u32), BigUint::one());
    for _ in 0..=max {
        t.push(a.clone());
        let next = &a + &b;
        a = b;
        b = next;
    }
    t
}

/// Nearest integer to `alpha^n / sqrt5`, certified by interval refinement.
///
/// Must equal `fib(n)`; the power is computed exactly in `Q(sqrt5)` and only
/// the final rounding decision goes through the certified layer. Fails with
/// a precision error when the rounding cannot be certified at the cap.
pub fn binet_round(n: u64, policy: Precision) -> Result<BigUint> {
    let alpha_n = QuadraticNumber::alpha().pow(n as i64)?;
    refine(policy, "binet_round", |prec| {
        let v = alpha_n
            .to_certified(prec)
            .div(&CertifiedReal::sqrt5(prec))?;
        match v.try_round() {
            Some(r) => Ok(r.magnitude().clone()),
            None => Err(Error::Indeterminate { op: "binet_round" }),
        }
    })
}

/// Which sequence a growth check applies to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SequenceKind {
    Fibonacci,
    Lucas,
}

/// Certified check of the power-of-alpha sandwich inequalities.
///
/// Fibonacci (`n >= 1`): `alpha^(n-2) <= F_n <= alpha^(n-1)` and the same
/// chain restated through negative powers of `|beta|`. Lucas (`n >= 0`):
/// `alpha^(n-1) <= L_n <= 2 alpha^n`; the `|beta|` restatement
/// `|beta|^-(n-1) <= L_n <= |beta|^-(n+1)` is checked from `n >= 1` because
/// `L_0 = 2` exceeds `alpha`, so its upper half is false at `n = 0`.
///
/// The index-0 Fibonacci case is rejected outright: `F_0 = 0` sits below
/// every positive lower bound.
pub fn growth_bounds_hold(n: u64, which: SequenceKind, policy: Precision) -> Result<bool> {
    if which == SequenceKind::Fibonacci && n == 0 {
        return Err(Error::OutOfDomain {
            op: "growth_bounds_hold",
            detail: "Fibonacci bounds require n >= 1",
        });
    }
    let value = BigInt::from(match which {
        SequenceKind::Fibonacci => fib(n),
        SequenceKind::Lucas => lucas(n),
    });
    let alpha = QuadraticNumber::alpha();
    let babs = QuadraticNumber::beta_abs();
    let ni = n as i64;

    // (lower power base, lower exponent, upper power base, upper exponent, upper scale)
    let mut chains: Vec<(&QuadraticNumber, i64, &QuadraticNumber, i64, u32)> = Vec::new();
    match which {
        SequenceKind::Fibonacci => {
            chains.push((&alpha, ni - 2, &alpha, ni - 1, 1));
            chains.push((&babs, -(ni - 2), &babs, -(ni - 1), 1));
        }
        SequenceKind::Lucas => {
            chains.push((&alpha, ni - 1, &alpha, ni, 2));
            if n >= 1 {
                chains.push((&babs, -(ni - 1), &babs, -(ni + 1), 1));
            }
        }
    }

    refine(policy, "growth_bounds_hold", |prec| {
        let v = CertifiedReal::from_int(value.clone(), prec);
        for (lb, le, ub, ue, scale) in &chains {
            let lower = lb.pow(*le)?.to_certified(prec);
            let upper = ub
                .pow(*ue)?
                .to_certified(prec)
                .mul_int(&BigInt::from(*scale));
            match lower.try_le(&v) {
                Some(true) => {}
                Some(false) => return Ok(false),
                None => return Err(Error::Indeterminate {
                    op: "growth_bounds_hold",
                }),
            }
            match v.try_le(&upper) {
                Some(true) => {}
                Some(false) => return Ok(false),
                None => return Err(Error::Indeterminate {
                    op: "growth_bounds_hold",
                }),
            }
        }
        Ok(true)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn initial_values() {
        assert_eq!(fib(0), BigUint::zero());
        assert_eq!(fib(1), BigUint::one());
        assert_eq!(fib(8), BigUint::from(21u32));
        assert_eq!(fib(10), BigUint::from(55u32));
        assert_eq!(lucas(0), BigUint::from(2u32));
        assert_eq!(lucas(1), BigUint::one());
        assert_eq!(lucas(4), BigUint::from(7u32));
    }

    #[test]
    fn doubling_agrees_with_recurrence_up_to_1000() {
        let ft = fib_table(1000);
        let lt = lucas_table(1000);
        for n in 0..=1000u64 {
            assert_eq!(fib(n), ft[n as usize], "F_{n}");
            assert_eq!(lucas(n), lt[n as usize], "L_{n}");
        }
    }

    #[test]
    fn classic_identities() {
        let ft = fib_table(2001);
        for n in 1..=1000u64 {
            let i = n as usize;
            assert_eq!(lucas(n), &ft[i - 1] + &ft[i + 1]);
            assert_eq!(fib(2 * n), &ft[i] * &lucas(n));
        }
    }

    #[test]
    fn monotone_from_the_small_indices() {
        for n in 2..200u64 {
            assert!(fib(n) < fib(n + 1));
        }
        for n in 1..200u64 {
            assert!(lucas(n) < lucas(n + 1));
        }
    }

    #[test]
    fn binet_rounding_matches_exact_values() {
        let p = Precision::default();
        assert_eq!(binet_round(0, p).unwrap(), BigUint::zero());
        assert_eq!(binet_round(10, p).unwrap(), BigUint::from(55u32));
        assert_eq!(binet_round(100, p).unwrap(), fib(100));
    }

    #[test]
    fn binet_rounding_exhausts_at_tiny_precision() {
        let r = binet_round(100, Precision::fixed(8));
        assert!(matches!(r, Err(Error::PrecisionExhausted { .. })));
    }

    #[test]
    fn growth_bounds_examples() {
        let p = Precision::default();
        assert!(growth_bounds_hold(1, SequenceKind::Fibonacci, p).unwrap());
        assert!(growth_bounds_hold(10, SequenceKind::Lucas, p).unwrap());
        assert!(growth_bounds_hold(0, SequenceKind::Lucas, p).unwrap());
        assert!(growth_bounds_hold(0, SequenceKind::Fibonacci, p).is_err());
    }

    /// The |beta| chains recomputed through the interval layer alone, with
    /// no exact field powers: an independent route to the same inequality.
    #[test]
    fn beta_chains_via_plain_interval_powers() {
        let prec = 320;
        let s5 = CertifiedReal::sqrt5(prec);
        let one = CertifiedReal::one(prec);
        let babs = s5.sub(&one).div_int(&BigInt::from(2));
        for n in 1..=200i64 {
            let f = CertifiedReal::from_biguint(&fib(n as u64), prec);
            let lower = babs.powi(-(n - 2)).unwrap();
            let upper = babs.powi(-(n - 1)).unwrap();
            assert_eq!(lower.try_le(&f), Some(true), "P3 lower at {n}");
            assert_eq!(f.try_le(&upper), Some(true), "P3 upper at {n}");
            let l = CertifiedReal::from_biguint(&lucas(n as u64), prec);
            let llo = babs.powi(-(n - 1)).unwrap();
            let lhi = babs.powi(-(n + 1)).unwrap();
            assert_eq!(llo.try_le(&l), Some(true), "P4 lower at {n}");
            assert_eq!(l.try_le(&lhi), Some(true), "P4 upper at {n}");
        }
    }

    proptest! {
        #[test]
        fn pair_is_consistent(n in 0u64..4000) {
            let (f, f1) = fib_pair(n);
            prop_assert_eq!(f1, fib(n + 1));
            prop_assert_eq!(f, fib(n));
        }

        #[test]
        fn addition_formula(m in 0u64..500, n in 1u64..500) {
            // F_{m+n} = F_m F_{n+1} + F_{m-1} F_n for m >= 1
            prop_assume!(m >= 1);
            let lhs = fib(m + n);
            let rhs = fib(m) * fib(n + 1) + fib(m - 1) * fib(n);
            prop_assert_eq!(lhs, rhs);
        }
    }
}
