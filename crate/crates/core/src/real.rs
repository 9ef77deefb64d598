//! Certified dyadic interval arithmetic.
//!
//! A [`CertifiedReal`] is a closed interval `[lo, hi] * 2^exp` with
//! arbitrary-precision integer endpoints. Every operation returns an interval
//! that contains the exact image of its inputs; directed rounding happens
//! only when a mantissa outgrows the working precision. Comparisons and
//! integer roundings answer `None`/`Indeterminate` unless the whole interval
//! agrees, so callers escalate precision (see [`refine`]) instead of trusting
//! a lucky rounding.
//!
//! The elementary functions (`sqrt`, `ln`, `exp`) are computed from scratch
//! with explicit truncation-error enclosures: `ln` through the atanh series
//! after mantissa reduction into `[1, 2)`, `exp` through the Taylor series
//! after halving the argument below `1/4`, square roots through integer
//! square roots of shifted mantissas.

use alloc::string::{String, ToString};
use core::cmp::Ordering;
use core::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Extra mantissa bits kept beyond the requested precision.
const GUARD_BITS: u32 = 32;

/// Default starting precision for certified evaluations, in bits.
pub const DEFAULT_PRECISION: u32 = 256;

/// Hard ceiling for precision escalation, in bits.
pub const PRECISION_CAP: u32 = 16384;

/// A precision ladder: evaluations start at `start` bits and double up to
/// `cap` until a decision certifies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Precision {
    pub start: u32,
    pub cap: u32,
}

impl Default for Precision {
    fn default() -> Self {
        Precision {
            start: DEFAULT_PRECISION,
            cap: PRECISION_CAP,
        }
    }
}

impl Precision {
    pub fn new(start: u32, cap: u32) -> Self {
        Precision {
            start: start.min(cap),
            cap,
        }
    }

    /// A ladder that never escalates.
    pub fn fixed(bits: u32) -> Self {
        Precision {
            start: bits,
            cap: bits,
        }
    }
}

/// Runs `f` at increasing precision until it stops reporting
/// [`Error::Indeterminate`], doubling from `policy.start` up to `policy.cap`.
pub fn refine<T>(
    policy: Precision,
    op: &'static str,
    mut f: impl FnMut(u32) -> Result<T>,
) -> Result<T> {
    let mut bits = policy.start.max(8).min(policy.cap);
    loop {
        match f(bits) {
            Err(Error::Indeterminate { .. }) if bits < policy.cap => {
                bits = bits.saturating_mul(2).min(policy.cap);
            }
            Err(Error::Indeterminate { .. }) => {
                return Err(Error::PrecisionExhausted {
                    op,
                    cap_bits: policy.cap,
                })
            }
            other => return other,
        }
    }
}

fn shr_floor(x: &BigInt, k: u64) -> BigInt {
    // BigInt shift-right rounds toward negative infinity (pinned by a test).
    x >> k as usize
}

fn shr_ceil(x: &BigInt, k: u64) -> BigInt {
    -(&(-x) >> k as usize)
}

/// Floor of `m * 2^e` as an integer.
fn dyadic_floor(m: &BigInt, e: i64) -> BigInt {
    if e >= 0 {
        m << e as usize
    } else {
        shr_floor(m, (-e) as u64)
    }
}

/// Ceiling of `m * 2^e` as an integer.
fn dyadic_ceil(m: &BigInt, e: i64) -> BigInt {
    if e >= 0 {
        m << e as usize
    } else {
        shr_ceil(m, (-e) as u64)
    }
}

/// Interval `[lo, hi] * 2^exp` with a working precision in bits.
#[derive(Clone, Debug)]
pub struct CertifiedReal {
    lo: BigInt,
    hi: BigInt,
    exp: i64,
    prec: u32,
}

impl CertifiedReal {
    fn raw(lo: BigInt, hi: BigInt, exp: i64, prec: u32) -> Self {
        debug_assert!(lo <= hi);
        let mut v = CertifiedReal { lo, hi, exp, prec };
        v.normalize();
        v
    }

    /// Rounds the endpoints outward so the mantissas stay within
    /// `prec + GUARD_BITS` bits.
    fn normalize(&mut self) {
        let limit = (self.prec + GUARD_BITS) as u64;
        let bits = self.lo.magnitude().bits().max(self.hi.magnitude().bits());
        if bits > limit {
            let s = bits - limit;
            self.lo = shr_floor(&self.lo, s);
            self.hi = shr_ceil(&self.hi, s);
            self.exp += s as i64;
        }
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    /// Re-rounds to a new working precision (never tightens the interval).
    pub fn with_precision(&self, prec: u32) -> Self {
        Self::raw(self.lo.clone(), self.hi.clone(), self.exp, prec)
    }

    pub fn from_int(v: impl Into<BigInt>, prec: u32) -> Self {
        let v = v.into();
        Self::raw(v.clone(), v, 0, prec)
    }

    pub fn from_biguint(v: &BigUint, prec: u32) -> Self {
        Self::from_int(BigInt::from(v.clone()), prec)
    }

    /// Exact dyadic point `m * 2^e`.
    pub fn from_dyadic(m: impl Into<BigInt>, e: i64, prec: u32) -> Self {
        let m = m.into();
        Self::raw(m.clone(), m, e, prec)
    }

    /// Tight enclosure of the rational `num / den` (`den != 0`).
    pub fn from_ratio(num: impl Into<BigInt>, den: impl Into<BigInt>, prec: u32) -> Self {
        let mut num = num.into();
        let mut den = den.into();
        assert!(!den.is_zero(), "from_ratio: zero denominator");
        if den.sign() == Sign::Minus {
            num = -num;
            den = -den;
        }
        let t = (prec + GUARD_BITS) as usize;
        let scaled = num << t;
        let lo = scaled.div_floor(&den);
        let hi = {
            let neg = (-&scaled).div_floor(&den);
            -neg
        };
        Self::raw(lo, hi, -(t as i64), prec)
    }

    pub fn zero(prec: u32) -> Self {
        Self::from_int(0, prec)
    }

    pub fn one(prec: u32) -> Self {
        Self::from_int(1, prec)
    }

    /// Exact 1/2.
    pub fn half(prec: u32) -> Self {
        Self::from_dyadic(1, -1, prec)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    /// Midpoint as a dyadic `(mantissa, exponent)` pair.
    pub fn midpoint(&self) -> (BigInt, i64) {
        (&self.lo + &self.hi, self.exp - 1)
    }

    /// Radius as a dyadic `(mantissa, exponent)` pair.
    pub fn radius(&self) -> (BigInt, i64) {
        (&self.hi - &self.lo, self.exp - 1)
    }

    /// Lower endpoint as a dyadic pair.
    pub fn lower(&self) -> (BigInt, i64) {
        (self.lo.clone(), self.exp)
    }

    /// Upper endpoint as a dyadic pair.
    pub fn upper(&self) -> (BigInt, i64) {
        (self.hi.clone(), self.exp)
    }

    fn align(a: &Self, b: &Self) -> (BigInt, BigInt, BigInt, BigInt, i64) {
        let e = a.exp.min(b.exp);
        let sa = (a.exp - e) as usize;
        let sb = (b.exp - e) as usize;
        (
            &a.lo << sa,
            &a.hi << sa,
            &b.lo << sb,
            &b.hi << sb,
            e,
        )
    }

    pub fn neg(&self) -> Self {
        Self::raw(-&self.hi, -&self.lo, self.exp, self.prec)
    }

    pub fn abs(&self) -> Self {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            self.neg()
        } else {
            let m = (-&self.lo).max(self.hi.clone());
            Self::raw(BigInt::zero(), m, self.exp, self.prec)
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let (alo, ahi, blo, bhi, e) = Self::align(self, other);
        Self::raw(alo + blo, ahi + bhi, e, self.prec.max(other.prec))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let c = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Self::raw(lo, hi, self.exp + other.exp, self.prec.max(other.prec))
    }

    /// Exact scaling by `2^k`.
    pub fn mul_pow2(&self, k: i64) -> Self {
        let mut v = self.clone();
        v.exp += k;
        v
    }

    /// Exact multiplication by an integer.
    pub fn mul_int(&self, k: &BigInt) -> Self {
        let (a, b) = (&self.lo * k, &self.hi * k);
        let (lo, hi) = if k.is_negative() { (b, a) } else { (a, b) };
        Self::raw(lo, hi, self.exp, self.prec)
    }

    /// Division by a non-zero integer, with outward rounding.
    pub fn div_int(&self, k: &BigInt) -> Self {
        assert!(!k.is_zero());
        let (num_lo, num_hi) = if k.is_negative() {
            (-&self.hi, -&self.lo)
        } else {
            (self.lo.clone(), self.hi.clone())
        };
        let d = k.abs();
        let t = (self.prec + GUARD_BITS) as usize;
        let lo = (num_lo << t).div_floor(&d);
        let hi = -((-(num_hi << t)).div_floor(&d));
        Self::raw(lo, hi, self.exp - t as i64, self.prec)
    }

    /// Certified sign of the value, `None` when the interval straddles zero.
    pub fn try_sign(&self) -> Option<Sign> {
        if self.lo.is_positive() {
            Some(Sign::Plus)
        } else if self.hi.is_negative() {
            Some(Sign::Minus)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Sign::NoSign)
        } else {
            None
        }
    }

    pub fn is_certainly_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_certainly_negative(&self) -> bool {
        self.hi.is_negative()
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// Reciprocal; requires the interval to exclude zero.
    pub fn recip(&self) -> Result<Self> {
        if self.contains_zero() {
            return Err(Error::Indeterminate { op: "recip" });
        }
        if self.hi.is_negative() {
            return Ok(self.neg().recip()?.neg());
        }
        // 0 < lo <= hi
        let t = (self.prec + GUARD_BITS) as u64 + self.hi.magnitude().bits();
        let one = BigInt::one() << t as usize;
        let lo = one.div_floor(&self.hi);
        let hi = -((-&one).div_floor(&self.lo));
        Ok(Self::raw(lo, hi, -(t as i64) - self.exp, self.prec))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.recip()?))
    }

    /// Endpoint-wise max (an enclosure of `max(x, y)`).
    pub fn max_with(&self, other: &Self) -> Self {
        let (alo, ahi, blo, bhi, e) = Self::align(self, other);
        Self::raw(alo.max(blo), ahi.max(bhi), e, self.prec.max(other.prec))
    }

    /// Endpoint-wise min.
    pub fn min_with(&self, other: &Self) -> Self {
        let (alo, ahi, blo, bhi, e) = Self::align(self, other);
        Self::raw(alo.min(blo), ahi.min(bhi), e, self.prec.max(other.prec))
    }

    /// Hull spanning from `lo_of`'s lower endpoint to `hi_of`'s upper one.
    pub fn from_endpoints(lo_of: &Self, hi_of: &Self) -> Self {
        let (alo, _, _, bhi, e) = Self::align(lo_of, hi_of);
        let prec = lo_of.prec.max(hi_of.prec);
        debug_assert!(alo <= bhi);
        Self::raw(alo, bhi, e, prec)
    }

    pub fn try_cmp(&self, other: &Self) -> Option<Ordering> {
        let (alo, ahi, blo, bhi, _) = Self::align(self, other);
        if ahi < blo {
            Some(Ordering::Less)
        } else if alo > bhi {
            Some(Ordering::Greater)
        } else if alo == ahi && blo == bhi && alo == blo {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    /// `Some(true)` iff the value is certainly `<=` other, `Some(false)` iff
    /// certainly `>`, `None` when the intervals overlap ambiguously.
    pub fn try_le(&self, other: &Self) -> Option<bool> {
        let (alo, ahi, blo, bhi, _) = Self::align(self, other);
        if ahi <= blo {
            Some(true)
        } else if alo > bhi {
            Some(false)
        } else {
            None
        }
    }

    pub fn try_lt(&self, other: &Self) -> Option<bool> {
        let (alo, ahi, blo, bhi, _) = Self::align(self, other);
        if ahi < blo {
            Some(true)
        } else if alo >= bhi {
            Some(false)
        } else {
            None
        }
    }

    pub fn try_ge(&self, other: &Self) -> Option<bool> {
        other.try_le(self)
    }

    pub fn try_gt(&self, other: &Self) -> Option<bool> {
        other.try_lt(self)
    }

    /// Certified floor; `None` when the interval spans an integer boundary.
    pub fn try_floor(&self) -> Option<BigInt> {
        let f_lo = dyadic_floor(&self.lo, self.exp);
        let f_hi = dyadic_floor(&self.hi, self.exp);
        if f_lo == f_hi {
            Some(f_lo)
        } else {
            None
        }
    }

    /// Ceiling of the upper endpoint (always defined).
    pub fn ceil_upper(&self) -> BigInt {
        dyadic_ceil(&self.hi, self.exp)
    }

    /// Floor of the lower endpoint (always defined).
    pub fn floor_lower(&self) -> BigInt {
        dyadic_floor(&self.lo, self.exp)
    }

    /// Certified round-to-nearest (half-up); `None` when undecidable.
    pub fn try_round(&self) -> Option<BigInt> {
        self.add(&Self::half(self.prec)).try_floor()
    }

    /// Enclosure of `sqrt(value)`. The lower endpoint is clamped to zero when
    /// rounding pushed it slightly negative; a certainly-negative interval is
    /// out of domain.
    pub fn sqrt(&self) -> Result<Self> {
        if self.hi.is_negative() {
            return Err(Error::OutOfDomain {
                op: "sqrt",
                detail: "negative argument",
            });
        }
        let lo_m = if self.lo.is_negative() {
            BigInt::zero()
        } else {
            self.lo.clone()
        };
        let (rlo, elo) = sqrt_dyadic(lo_m.magnitude(), self.exp, self.prec, false);
        let (rhi, ehi) = sqrt_dyadic(self.hi.magnitude(), self.exp, self.prec, true);
        let a = Self::raw(rlo.clone(), rlo, elo, self.prec);
        let b = Self::raw(rhi.clone(), rhi, ehi, self.prec);
        Ok(Self::from_endpoints(&a, &b))
    }

    /// Enclosure of `ln(value)`; the interval must be certainly positive.
    pub fn ln(&self) -> Result<Self> {
        if !self.hi.is_positive() {
            return Err(Error::OutOfDomain {
                op: "ln",
                detail: "non-positive argument",
            });
        }
        if !self.lo.is_positive() {
            return Err(Error::Indeterminate { op: "ln" });
        }
        let a = ln_point(&self.lo, self.exp, self.prec)?;
        let b = ln_point(&self.hi, self.exp, self.prec)?;
        Ok(Self::from_endpoints(&a, &b))
    }

    /// Enclosure of `exp(value)`.
    pub fn exp(&self) -> Result<Self> {
        let a = exp_point(&self.lo, self.exp, self.prec)?;
        let b = exp_point(&self.hi, self.exp, self.prec)?;
        Ok(Self::from_endpoints(&a, &b))
    }

    /// Integer power, via binary exponentiation; negative powers require the
    /// interval to exclude zero.
    pub fn powi(&self, k: i64) -> Result<Self> {
        if k < 0 {
            return self.recip()?.powi(-k);
        }
        let mut result = Self::one(self.prec);
        let mut base = self.clone();
        let mut e = k as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(result)
    }

    /// Enclosure of `sqrt(n)` for a natural `n`.
    pub fn sqrt_int(n: &BigUint, prec: u32) -> Self {
        let (rlo, elo) = sqrt_dyadic(n, 0, prec, false);
        let (rhi, ehi) = sqrt_dyadic(n, 0, prec, true);
        let a = Self::raw(rlo.clone(), rlo, elo, prec);
        let b = Self::raw(rhi.clone(), rhi, ehi, prec);
        Self::from_endpoints(&a, &b)
    }

    /// Enclosure of `sqrt(5)`.
    pub fn sqrt5(prec: u32) -> Self {
        Self::sqrt_int(&BigUint::from(5u32), prec)
    }

    /// Enclosure of `ln(2)` via `2 * atanh(1/3)`.
    pub fn ln2(prec: u32) -> Self {
        atanh_ratio(&BigInt::one(), &BigInt::from(3), prec).mul_pow2(1)
    }

    /// Approximate midpoint as `f64` (display/estimation only).
    pub fn to_f64(&self) -> f64 {
        let (m, e) = self.midpoint();
        dyadic_to_f64(&m, e)
    }

    /// Approximate radius as `f64` (display only).
    pub fn radius_f64(&self) -> f64 {
        let (m, e) = self.radius();
        dyadic_to_f64(&m, e)
    }

    /// Scientific-notation rendering of the midpoint.
    pub fn decimal(&self, sig_digits: usize) -> String {
        let (m, e) = self.midpoint();
        dyadic_decimal(&m, e, sig_digits)
    }

    /// Scientific-notation rendering of the radius.
    pub fn radius_decimal(&self, sig_digits: usize) -> String {
        let (m, e) = self.radius();
        dyadic_decimal(&m, e, sig_digits)
    }
}

impl fmt::Display for CertifiedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (± {})", self.decimal(8), self.radius_decimal(2))
    }
}

/// Directed square root of `m * 2^e` as a dyadic pair.
fn sqrt_dyadic(m: &BigUint, e: i64, prec: u32, round_up: bool) -> (BigInt, i64) {
    if m.is_zero() {
        return (BigInt::zero(), 0);
    }
    let (m2, e2) = if e % 2 != 0 {
        (m << 1usize, e - 1)
    } else {
        (m.clone(), e)
    };
    let t = (prec + GUARD_BITS) as i64;
    let shifted = &m2 << (2 * t) as usize;
    let mut r = shifted.sqrt();
    if round_up && &r * &r != shifted {
        r += 1u32;
    }
    (BigInt::from(r), e2 / 2 - t)
}

/// Enclosure of `atanh(num/den)` for `0 <= num/den <= 1/3`.
fn atanh_ratio(num: &BigInt, den: &BigInt, prec: u32) -> CertifiedReal {
    let wp = prec + GUARD_BITS;
    let z = CertifiedReal::from_ratio(num.clone(), den.clone(), wp);
    if num.is_zero() {
        return CertifiedReal::zero(prec);
    }
    let zz = z.mul(&z);
    let mut sum = z.clone();
    let mut pow = z; // z^(2i+1)
    let threshold = -((wp as i64) + 8);
    for i in 1u32..(16 * wp + 64) {
        pow = pow.mul(&zz);
        sum = sum.add(&pow.div_int(&BigInt::from(2 * i + 1)));
        let (hm, he) = pow.upper();
        let mag = hm.magnitude().bits() as i64 + he;
        if mag < threshold {
            // Tail sum_{j>i} z^(2j+1)/(2j+1) <= z^(2i+3) / (1 - z^2)
            // and z <= 1/3 gives 1/(1-z^2) <= 9/8.
            let tail = pow.mul(&zz).abs();
            let (tm, te) = tail.upper();
            let bound = CertifiedReal::from_dyadic(&tm * 9, te, wp).div_int(&BigInt::from(8));
            let (bm, be) = bound.upper();
            let pad = CertifiedReal::raw(BigInt::zero(), bm, be, wp);
            return sum.add(&pad).with_precision(prec);
        }
    }
    // Unreachable for z <= 1/3; widen defensively rather than lie.
    let one = CertifiedReal::one(prec);
    CertifiedReal::from_endpoints(&sum.sub(&one), &sum.add(&one))
}

/// Enclosure of `ln(m * 2^e)` for `m > 0`.
fn ln_point(m: &BigInt, e: i64, prec: u32) -> Result<CertifiedReal> {
    debug_assert!(m.is_positive());
    let wp = prec + GUARD_BITS;
    let bl = m.magnitude().bits() as i64;
    let k = e + bl - 1;
    let half_pow = BigInt::one() << (bl - 1) as usize;
    // f = m / 2^(bl-1) in [1, 2); ln f = 2 atanh((f-1)/(f+1)), argument < 1/3.
    let num = m - &half_pow;
    let den = m + &half_pow;
    let frac_part = atanh_ratio(&num, &den, wp).mul_pow2(1);
    let k_part = CertifiedReal::ln2(wp).mul_int(&BigInt::from(k));
    Ok(k_part.add(&frac_part).with_precision(prec))
}

/// Enclosure of `exp(m * 2^e)`.
fn exp_point(m: &BigInt, e: i64, prec: u32) -> Result<CertifiedReal> {
    let wp = prec + GUARD_BITS;
    if m.is_zero() {
        return Ok(CertifiedReal::one(prec));
    }
    let mag_bits = m.magnitude().bits() as i64 + e;
    if mag_bits > 22 {
        return Err(Error::OutOfDomain {
            op: "exp",
            detail: "argument magnitude too large",
        });
    }
    // Halve until |r| <= 1/4, then square back.
    let j = (mag_bits + 2).max(0) as u32;
    let r = CertifiedReal::from_dyadic(m.clone(), e - j as i64, wp);
    let mut sum = CertifiedReal::one(wp);
    let mut term = CertifiedReal::one(wp);
    let threshold = -((wp as i64) + 8);
    let mut done = false;
    for i in 1u32..(4 * wp + 64) {
        term = term.mul(&r).div_int(&BigInt::from(i));
        sum = sum.add(&term);
        let (tm, te) = term.abs().upper();
        let mag = tm.magnitude().bits() as i64 + te;
        if mag < threshold {
            // Tail <= |term| * (|r|/(1-|r|)) <= |term| / 3 for |r| <= 1/4.
            let bound = term.abs().div_int(&BigInt::from(3));
            let (bm, be) = bound.upper();
            let pad = CertifiedReal::raw(-bm.clone(), bm, be, wp);
            sum = sum.add(&pad);
            done = true;
            break;
        }
    }
    if !done {
        return Err(Error::NonConvergence {
            op: "exp",
            iterations: 4 * wp + 64,
        });
    }
    for _ in 0..j {
        sum = sum.mul(&sum);
    }
    Ok(sum.with_precision(prec))
}

fn pow2_f64(e: i64) -> f64 {
    if e < -1074 {
        0.0
    } else if e > 1023 {
        f64::INFINITY
    } else if e >= -1022 {
        f64::from_bits(((e + 1023) as u64) << 52)
    } else {
        // Subnormal range.
        f64::from_bits(1u64 << (e + 1074) as u64)
    }
}

fn dyadic_to_f64(m: &BigInt, e: i64) -> f64 {
    if m.is_zero() {
        return 0.0;
    }
    let neg = m.is_negative();
    let mag = m.magnitude();
    let bits = mag.bits();
    let (top, shift) = if bits > 53 {
        let s = bits - 53;
        ((mag >> s as usize).to_u64().unwrap(), s as i64)
    } else {
        (mag.to_u64().unwrap(), 0)
    };
    let v = top as f64 * pow2_f64(e + shift);
    if neg {
        -v
    } else {
        v
    }
}

/// Renders `m * 2^e` in scientific notation with `sig` significant digits.
pub(crate) fn dyadic_decimal(m: &BigInt, e: i64, sig: usize) -> String {
    use alloc::format;
    let sig = sig.max(1);
    if m.is_zero() {
        return String::from("0");
    }
    let neg = m.is_negative();
    let mag = m.magnitude().clone();
    let bits = mag.bits() as i64 + e; // value in [2^(bits-1), 2^bits)
    // Initial estimate of the decimal exponent, corrected below.
    let mut d_exp = ((bits - 1) * 30103).div_euclid(100000);
    loop {
        // digits = round(value / 10^(d_exp - sig + 1))
        let scale = d_exp - sig as i64 + 1;
        let (num, den) = decimal_scaled(&mag, e, scale);
        let digits = (&num + (&den >> 1usize)).div_floor(&den);
        let lo_lim = BigUint::from(10u32).pow(sig as u32 - 1);
        let hi_lim = BigUint::from(10u32).pow(sig as u32);
        let dmag = digits.magnitude().clone();
        if dmag < lo_lim {
            d_exp -= 1;
            continue;
        }
        if dmag >= hi_lim {
            d_exp += 1;
            continue;
        }
        let s = dmag.to_string();
        let mut out = String::new();
        if neg {
            out.push('-');
        }
        out.push_str(&s[..1]);
        if sig > 1 {
            out.push('.');
            out.push_str(&s[1..]);
        }
        out.push_str(&format!("e{}", d_exp));
        return out;
    }
}

/// Returns `(num, den)` with `mag * 2^e / 10^scale = num / den`.
fn decimal_scaled(mag: &BigUint, e: i64, scale: i64) -> (BigInt, BigInt) {
    let mut num = BigInt::from(mag.clone());
    let mut den = BigInt::one();
    if e >= 0 {
        num <<= e as usize;
    } else {
        den <<= (-e) as usize;
    }
    if scale >= 0 {
        den *= BigInt::from(10u32).pow(scale as u32);
    } else {
        num *= BigInt::from(10u32).pow((-scale) as u32);
    }
    (num, den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn approx(x: &CertifiedReal) -> f64 {
        x.to_f64()
    }

    #[test]
    fn bigint_shift_right_is_floor() {
        assert_eq!(BigInt::from(-3) >> 1usize, BigInt::from(-2));
        assert_eq!(BigInt::from(3) >> 1usize, BigInt::from(1));
        assert_eq!(shr_ceil(&BigInt::from(-3), 1), BigInt::from(-1));
        assert_eq!(shr_ceil(&BigInt::from(3), 1), BigInt::from(2));
    }

    #[test]
    fn ratio_roundtrip_and_width() {
        let x = CertifiedReal::from_ratio(1, 3, 128);
        assert!(x.radius_f64() < 1e-35);
        assert!((approx(&x) - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn sqrt5_squares_back() {
        let s = CertifiedReal::sqrt5(256);
        let five = CertifiedReal::from_int(5, 256);
        let sq = s.mul(&s);
        // 5 must lie inside the square of the enclosure.
        assert!(sq.try_le(&five) != Some(false) || sq.try_ge(&five) != Some(false));
        assert!((approx(&s) - 5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn ln_known_values() {
        let two = CertifiedReal::from_int(2, 256);
        let l2 = two.ln().unwrap();
        assert!((approx(&l2) - core::f64::consts::LN_2).abs() < 1e-15);
        assert!(l2.radius_f64() < 1e-60);

        let e33 = CertifiedReal::from_int(33, 256).ln().unwrap();
        assert!((approx(&e33) - 33f64.ln()).abs() < 1e-13);
    }

    #[test]
    fn exp_known_values() {
        let x = CertifiedReal::from_ratio(1, 10, 256);
        let v = x.exp().unwrap();
        assert!((approx(&v) - 0.1f64.exp()).abs() < 1e-15);

        let y = CertifiedReal::from_int(-3, 256);
        let w = y.exp().unwrap();
        assert!((approx(&w) - (-3f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn floor_and_round_certify() {
        let x = CertifiedReal::from_ratio(13, 4, 64);
        assert_eq!(x.try_floor(), Some(BigInt::from(3)));
        assert_eq!(x.try_round(), Some(BigInt::from(3)));
        let y = CertifiedReal::from_ratio(7, 2, 64); // exactly 3.5
        assert_eq!(y.try_round(), Some(BigInt::from(4))); // half-up on a point
        let z = CertifiedReal::from_ratio(-1, 10, 64);
        assert_eq!(z.try_floor(), Some(BigInt::from(-1)));
        assert_eq!(z.try_round(), Some(BigInt::from(0)));
    }

    #[test]
    fn recip_excludes_zero() {
        let x = CertifiedReal::from_endpoints(
            &CertifiedReal::from_int(-1, 64),
            &CertifiedReal::from_int(1, 64),
        );
        assert!(matches!(x.recip(), Err(Error::Indeterminate { .. })));
        let y = CertifiedReal::from_int(-4, 64).recip().unwrap();
        assert!((approx(&y) + 0.25).abs() < 1e-15);
    }

    #[test]
    fn decimal_rendering() {
        let x = CertifiedReal::from_int(362, 64).mul_int(&BigInt::from(10u64.pow(9)));
        assert_eq!(x.decimal(3), "3.62e11");
        let y = CertifiedReal::from_ratio(1, 8, 64);
        assert_eq!(y.decimal(3), "1.25e-1");
        let z = CertifiedReal::from_int(-55, 64);
        assert_eq!(z.decimal(2), "-5.5e1");
    }

    #[test]
    fn refine_escalates_to_cap() {
        let mut seen = Vec::new();
        let r: Result<()> = refine(Precision::new(16, 64), "probe", |p| {
            seen.push(p);
            Err(Error::Indeterminate { op: "probe" })
        });
        assert_eq!(seen, [16, 32, 64]);
        assert!(matches!(r, Err(Error::PrecisionExhausted { cap_bits: 64, .. })));
    }

    proptest! {
        #[test]
        fn interval_contains_rational_ops(
            an in -1000i64..1000, ad in 1i64..1000,
            bn in -1000i64..1000, bd in 1i64..1000,
        ) {
            let a = CertifiedReal::from_ratio(an, ad, 96);
            let b = CertifiedReal::from_ratio(bn, bd, 96);
            // Evaluate in f64 (the oracle) and check containment loosely.
            let fa = an as f64 / ad as f64;
            let fb = bn as f64 / bd as f64;
            let sum = a.add(&b);
            prop_assert!((approx(&sum) - (fa + fb)).abs() < 1e-9);
            let prod = a.mul(&b);
            prop_assert!((approx(&prod) - (fa * fb)).abs() < 1e-6);
        }

        #[test]
        fn exp_ln_roundtrip_contains(n in 1i64..5000, d in 1i64..5000) {
            let x = CertifiedReal::from_ratio(n, d, 192);
            let back = x.ln().unwrap().exp().unwrap();
            // The roundtrip interval must contain the original value.
            let lo_ok = back.try_le(&x) != Some(false);
            let hi_ok = back.try_ge(&x) != Some(false);
            prop_assert!(lo_ok && hi_ok);
        }

        #[test]
        fn sqrt_squares_contain(n in 0i64..100000) {
            let x = CertifiedReal::from_int(n, 128);
            let r = x.sqrt().unwrap();
            let sq = r.mul(&r);
            prop_assert!(sq.try_le(&x) != Some(false));
            prop_assert!(sq.try_ge(&x) != Some(false));
        }
    }
}
