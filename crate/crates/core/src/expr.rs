//! Re-evaluable real expressions.
//!
//! Certified decisions sometimes need more precision than the caller guessed,
//! so inputs that must survive escalation are kept as expression trees and
//! re-evaluated at whatever precision the decision loop asks for. This is the
//! carrier for reduction inputs like `tau` and `mu`, and for user-supplied
//! candidates coming from the CLI.

use alloc::boxed::Box;

use num_bigint::{BigInt, BigUint};

use crate::algebraic::QuadraticNumber;
use crate::error::{Error, Result};
use crate::real::CertifiedReal;

#[derive(Clone, Debug)]
pub enum RealExpr {
    /// Exact rational `num/den`.
    Rational(BigInt, BigInt),
    /// Exact element of `Q(sqrt 5)`.
    Quadratic(QuadraticNumber),
    /// `sqrt(n)` for a natural n.
    SqrtInt(BigUint),
    Add(Box<RealExpr>, Box<RealExpr>),
    Sub(Box<RealExpr>, Box<RealExpr>),
    Mul(Box<RealExpr>, Box<RealExpr>),
    Div(Box<RealExpr>, Box<RealExpr>),
    Neg(Box<RealExpr>),
    Abs(Box<RealExpr>),
    Ln(Box<RealExpr>),
    Exp(Box<RealExpr>),
    Sqrt(Box<RealExpr>),
    PowI(Box<RealExpr>, i64),
}

impl RealExpr {
    pub fn integer(v: impl Into<BigInt>) -> Self {
        RealExpr::Rational(v.into(), BigInt::from(1))
    }

    pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        RealExpr::Rational(num.into(), den.into())
    }

    pub fn alpha() -> Self {
        RealExpr::Quadratic(QuadraticNumber::alpha())
    }

    pub fn beta_abs() -> Self {
        RealExpr::Quadratic(QuadraticNumber::beta_abs())
    }

    pub fn sqrt5() -> Self {
        RealExpr::Quadratic(QuadraticNumber::sqrt5())
    }

    pub fn ln_of(e: RealExpr) -> Self {
        RealExpr::Ln(Box::new(e))
    }

    pub fn div_of(a: RealExpr, b: RealExpr) -> Self {
        RealExpr::Div(Box::new(a), Box::new(b))
    }

    pub fn mul_of(a: RealExpr, b: RealExpr) -> Self {
        RealExpr::Mul(Box::new(a), Box::new(b))
    }

    /// Evaluates to an enclosure at the given working precision.
    pub fn eval(&self, prec: u32) -> Result<CertifiedReal> {
        match self {
            RealExpr::Rational(n, d) => {
                if num_traits::Zero::is_zero(d) {
                    return Err(Error::ZeroInput {
                        op: "RealExpr::Rational",
                    });
                }
                Ok(CertifiedReal::from_ratio(n.clone(), d.clone(), prec))
            }
            RealExpr::Quadratic(q) => Ok(q.to_certified(prec)),
            RealExpr::SqrtInt(n) => Ok(CertifiedReal::sqrt_int(n, prec)),
            RealExpr::Add(a, b) => Ok(a.eval(prec)?.add(&b.eval(prec)?)),
            RealExpr::Sub(a, b) => Ok(a.eval(prec)?.sub(&b.eval(prec)?)),
            RealExpr::Mul(a, b) => Ok(a.eval(prec)?.mul(&b.eval(prec)?)),
            RealExpr::Div(a, b) => a.eval(prec)?.div(&b.eval(prec)?),
            RealExpr::Neg(a) => Ok(a.eval(prec)?.neg()),
            RealExpr::Abs(a) => Ok(a.eval(prec)?.abs()),
            RealExpr::Ln(a) => a.eval(prec)?.ln(),
            RealExpr::Exp(a) => a.eval(prec)?.exp(),
            RealExpr::Sqrt(a) => a.eval(prec)?.sqrt(),
            RealExpr::PowI(a, k) => a.eval(prec)?.powi(*k),
        }
    }
}
