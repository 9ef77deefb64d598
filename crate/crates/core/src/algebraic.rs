//! Exact arithmetic in the real quadratic field `Q(sqrt 5)`.
//!
//! A [`QuadraticNumber`] is stored in the canonical form `(a + b*sqrt5)/c`
//! with `c > 0` and `gcd(a, b, c) = 1`, which makes equality structural.
//! Heights and embeddings are emitted as [`CertifiedReal`] enclosures; sign
//! questions (positivity under the embedding `sqrt5 -> +2.236...`) are
//! decided exactly on the integer coefficients.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::real::CertifiedReal;

/// Element of `Q(sqrt 5)` in canonical form `(a + b*sqrt5)/c`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticNumber {
    a: BigInt,
    b: BigInt,
    c: BigInt,
}

impl QuadraticNumber {
    /// Builds `(a + b*sqrt5)/c`, canonicalising sign and content.
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>) -> Result<Self> {
        let (mut a, mut b, mut c) = (a.into(), b.into(), c.into());
        if c.is_zero() {
            return Err(Error::ZeroInput {
                op: "QuadraticNumber::new (denominator)",
            });
        }
        if c.is_negative() {
            a = -a;
            b = -b;
            c = -c;
        }
        let g = a.gcd(&b).gcd(&c);
        if g > BigInt::one() {
            a /= &g;
            b /= &g;
            c /= &g;
        }
        Ok(QuadraticNumber { a, b, c })
    }

    fn make(a: BigInt, b: BigInt, c: BigInt) -> Self {
        Self::new(a, b, c).expect("non-zero denominator")
    }

    pub fn from_int(v: impl Into<BigInt>) -> Self {
        Self::make(v.into(), BigInt::zero(), BigInt::one())
    }

    pub fn from_ratio(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Self> {
        Self::new(p, BigInt::zero(), q)
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// The golden ratio `(1 + sqrt5)/2`.
    pub fn alpha() -> Self {
        Self::make(BigInt::one(), BigInt::one(), BigInt::from(2))
    }

    /// The conjugate root `(1 - sqrt5)/2` (negative).
    pub fn beta() -> Self {
        Self::make(BigInt::one(), BigInt::from(-1), BigInt::from(2))
    }

    /// `|beta| = (sqrt5 - 1)/2 = 1/alpha`.
    pub fn beta_abs() -> Self {
        Self::make(BigInt::from(-1), BigInt::one(), BigInt::from(2))
    }

    pub fn sqrt5() -> Self {
        Self::make(BigInt::zero(), BigInt::one(), BigInt::one())
    }

    pub fn coefficients(&self) -> (&BigInt, &BigInt, &BigInt) {
        (&self.a, &self.b, &self.c)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero() && self.c.is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Degree of the element over `Q` (1 for rationals, 2 otherwise).
    pub fn degree(&self) -> u32 {
        if self.b.is_zero() {
            1
        } else {
            2
        }
    }

    pub fn conjugate(&self) -> Self {
        Self::make(self.a.clone(), -&self.b, self.c.clone())
    }

    pub fn neg(&self) -> Self {
        Self::make(-&self.a, -&self.b, self.c.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::make(
            &self.a * &other.c + &other.a * &self.c,
            &self.b * &other.c + &other.b * &self.c,
            &self.c * &other.c,
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let a = &self.a * &other.a + BigInt::from(5) * &self.b * &other.b;
        let b = &self.a * &other.b + &self.b * &other.a;
        Self::make(a, b, &self.c * &other.c)
    }

    /// Field norm `x * conj(x)` as a reduced rational `(num, den)`, `den > 0`.
    pub fn norm(&self) -> (BigInt, BigInt) {
        let num = &self.a * &self.a - BigInt::from(5) * &self.b * &self.b;
        let den = &self.c * &self.c;
        let g = num.gcd(&den);
        if g > BigInt::one() {
            (num / &g, den / g)
        } else {
            (num, den)
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroInput {
                op: "QuadraticNumber::inverse",
            });
        }
        // 1/x = c * (a - b*sqrt5) / (a^2 - 5 b^2)
        let d = &self.a * &self.a - BigInt::from(5) * &self.b * &self.b;
        Self::new(&self.c * &self.a, -(&self.c * &self.b), d)
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inverse()?))
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        if k < 0 {
            return self.inverse()?.pow(-k);
        }
        let mut result = Self::one();
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

    /// Exact sign under the embedding `sqrt5 -> +2.236...`.
    pub fn sign(&self) -> Ordering {
        let a = &self.a;
        let b = &self.b;
        if b.is_zero() {
            return a.cmp(&BigInt::zero());
        }
        if a.is_zero() {
            return b.cmp(&BigInt::zero());
        }
        match (a.is_positive(), b.is_positive()) {
            (true, true) => Ordering::Greater,
            (false, false) => Ordering::Less,
            (true, false) | (false, true) => {
                // Compare a^2 against 5 b^2; the larger magnitude wins.
                let aa = a * a;
                let bb = BigInt::from(5) * b * b;
                if aa > bb {
                    a.cmp(&BigInt::zero())
                } else {
                    b.cmp(&BigInt::zero())
                }
                // aa == bb is impossible: sqrt5 is irrational.
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == Ordering::Greater
    }

    /// Exact comparison of two field elements.
    pub fn cmp_exact(&self, other: &Self) -> Ordering {
        self.sub(other).sign()
    }

    /// Interval enclosure of the element under the real embedding.
    pub fn to_certified(&self, prec: u32) -> CertifiedReal {
        let s5 = CertifiedReal::sqrt5(prec + 8);
        CertifiedReal::from_int(self.a.clone(), prec + 8)
            .add(&s5.mul_int(&self.b))
            .div_int(&self.c)
            .with_precision(prec)
    }
}

impl fmt::Display for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            if self.c.is_one() {
                write!(f, "{}", self.a)
            } else {
                write!(f, "{}/{}", self.a, self.c)
            }
        } else if self.c.is_one() {
            write!(f, "{} + {}*sqrt5", self.a, self.b)
        } else {
            write!(f, "({} + {}*sqrt5)/{}", self.a, self.b, self.c)
        }
    }
}

/// Primitive integer polynomial, coefficients from the leading term down.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntegerPolynomial {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficients `a_0 .. a_d`, leading first, `a_0 > 0`, content 1.
    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn leading(&self) -> &BigInt {
        &self.coeffs[0]
    }
}

impl fmt::Display for IntegerPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.degree();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = d - i;
            if first {
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = if first && c.is_negative() {
                c.clone()
            } else {
                c.abs()
            };
            match p {
                0 => write!(f, "{mag}")?,
                1 if mag.is_one() => write!(f, "x")?,
                1 => write!(f, "{mag}*x")?,
                _ if mag.is_one() => write!(f, "x^{p}")?,
                _ => write!(f, "{mag}*x^{p}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Primitive minimal polynomial with positive leading coefficient.
///
/// Degree 1 exactly when the element is rational; otherwise the quadratic
/// `c^2 X^2 - 2ac X + (a^2 - 5 b^2)` reduced to its primitive part.
pub fn minimal_polynomial(x: &QuadraticNumber) -> Result<IntegerPolynomial> {
    if x.is_zero() {
        return Err(Error::ZeroInput {
            op: "minimal_polynomial",
        });
    }
    let (a, b, c) = x.coefficients();
    if b.is_zero() {
        let g = a.gcd(c);
        return Ok(IntegerPolynomial {
            coeffs: vec![c / &g, -(a / &g)],
        });
    }
    let c0 = c * c;
    let c1 = BigInt::from(-2) * a * c;
    let c2 = a * a - BigInt::from(5) * b * b;
    let g = c0.gcd(&c1).gcd(&c2);
    Ok(IntegerPolynomial {
        coeffs: vec![c0 / &g, c1 / &g, c2 / g],
    })
}

/// Contribution `ln(max(|v|, 1))` as a certified enclosure.
fn log_plus(v: &CertifiedReal) -> Result<CertifiedReal> {
    let one = CertifiedReal::one(v.precision());
    let a = v.abs();
    match a.try_le(&one) {
        Some(true) => Ok(CertifiedReal::zero(v.precision())),
        Some(false) => a.ln(),
        None => {
            // Straddles 1: max(|v|,1) lies in [1, hi], so ln lies in [0, ln hi].
            let (hm, he) = a.upper();
            let hi_point = CertifiedReal::from_dyadic(hm, he, v.precision());
            let upper = hi_point.ln()?;
            Ok(CertifiedReal::from_endpoints(
                &CertifiedReal::zero(v.precision()),
                &upper,
            ))
        }
    }
}

/// Logarithmic (Weil) height of a non-zero element, as a certified enclosure.
///
/// For a rational `p/q` in lowest terms this is `ln(max(|p|, q))`; for a
/// quadratic element it averages the leading coefficient of the minimal
/// polynomial and the conjugate embeddings.
pub fn log_height(x: &QuadraticNumber, prec: u32) -> Result<CertifiedReal> {
    if x.is_zero() {
        return Err(Error::ZeroInput { op: "log_height" });
    }
    let wp = prec + 8;
    let (a, b, c) = x.coefficients();
    if b.is_zero() {
        let g = a.gcd(c);
        let p = (a / &g).abs();
        let q = (c / g).abs();
        let m = p.max(q);
        if m.is_one() {
            return Ok(CertifiedReal::zero(prec));
        }
        return CertifiedReal::from_int(m, wp).ln().map(|v| v.with_precision(prec));
    }
    let poly = minimal_polynomial(x)?;
    let lead = CertifiedReal::from_int(poly.leading().clone(), wp);
    let t0 = lead.ln()?;
    let t1 = log_plus(&x.to_certified(wp))?;
    let t2 = log_plus(&x.conjugate().to_certified(wp))?;
    Ok(t0
        .add(&t1)
        .add(&t2)
        .div_int(&BigInt::from(2))
        .with_precision(prec))
}

/// Smallest possible height of a non-torsion element of `Q(sqrt 5)`, as an
/// exact rational lower bound: `0.24 < h(alpha) = (ln alpha)/2 ~ 0.2406`.
/// Units are `±alpha^k`, so a positive unit other than 1 has height at least
/// `h(alpha)`; a non-unit has a finite place and height at least `(ln 4)/2`.
const HEIGHT_FLOOR_NUM: u32 = 6;
const HEIGHT_FLOOR_DEN: u32 = 25;

fn ceil_scaled_u64(v: &CertifiedReal) -> u64 {
    // ceil(hi(v) * 25 / 6), clamped into u64.
    let (m, e) = v.upper();
    let scaled = m * BigInt::from(HEIGHT_FLOOR_DEN);
    let den = BigInt::from(HEIGHT_FLOOR_NUM);
    let q = if e >= 0 {
        let num = scaled << e as usize;
        -((-num).div_floor(&den))
    } else {
        -((-scaled).div_floor(&(den << (-e) as usize)))
    };
    if q.is_negative() {
        0
    } else {
        q.min(BigInt::from(u64::MAX)).to_u64().unwrap_or(u64::MAX)
    }
}

/// Decides whether `x^u * y^v = 1` has a solution with `(u, v) != (0, 0)`.
///
/// Both inputs must be positive under the real embedding and different from
/// 1. Candidate exponents are bounded through the height floor of the field
/// (a relation forces `|u| <= h(y)/h_min` and `|v| <= h(x)/h_min`) and each
/// candidate is checked by exact field arithmetic, so the answer is exact.
pub fn multiplicatively_dependent(x: &QuadraticNumber, y: &QuadraticNumber) -> Result<bool> {
    if !x.is_positive() || !y.is_positive() {
        return Err(Error::OutOfDomain {
            op: "multiplicatively_dependent",
            detail: "inputs must be positive under the real embedding",
        });
    }
    if x.is_one() || y.is_one() {
        return Err(Error::OutOfDomain {
            op: "multiplicatively_dependent",
            detail: "inputs must differ from 1",
        });
    }
    let hx = log_height(x, 96)?;
    let hy = log_height(y, 96)?;
    let u_max = ceil_scaled_u64(&hy) + 1;
    let v_max = ceil_scaled_u64(&hx) + 1;
    if u_max.saturating_mul(v_max) > 4_000_000 {
        return Err(Error::OutOfDomain {
            op: "multiplicatively_dependent",
            detail: "height bound too large for exponent enumeration",
        });
    }
    for u in 1..=u_max {
        let xu = x.pow(u as i64)?;
        let mut yv = y.clone();
        for _v in 1..=v_max {
            if xu.mul(&yv).is_one() || xu == yv {
                return Ok(true);
            }
            yv = yv.mul(y);
        }
    }
    Ok(false)
}

/// A product `prod bases[i] ^ exponents[i]` of positive field elements.
#[derive(Clone, Debug)]
pub struct ProductForm {
    bases: Vec<QuadraticNumber>,
    exponents: Vec<i64>,
}

impl ProductForm {
    pub fn new(bases: Vec<QuadraticNumber>, exponents: Vec<i64>) -> Result<Self> {
        if bases.len() != exponents.len() || bases.is_empty() {
            return Err(Error::OutOfDomain {
                op: "ProductForm::new",
                detail: "bases and exponents must have equal non-zero length",
            });
        }
        for b in &bases {
            if !b.is_positive() {
                return Err(Error::OutOfDomain {
                    op: "ProductForm::new",
                    detail: "all bases must be positive under the real embedding",
                });
            }
        }
        Ok(ProductForm { bases, exponents })
    }

    pub fn bases(&self) -> &[QuadraticNumber] {
        &self.bases
    }

    pub fn exponents(&self) -> &[i64] {
        &self.exponents
    }
}

/// Exact test for `prod bases[i]^exponents[i] = 1`, i.e. for the vanishing of
/// the associated linear form in logarithms. Never touches floating point.
pub fn product_equals_one(form: &ProductForm) -> Result<bool> {
    let mut acc = QuadraticNumber::one();
    for (b, &e) in form.bases.iter().zip(form.exponents.iter()) {
        acc = acc.mul(&b.pow(e)?);
    }
    Ok(acc.is_one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonical_form_is_unique() {
        let x = QuadraticNumber::new(2, 2, 4).unwrap();
        let y = QuadraticNumber::new(1, 1, 2).unwrap();
        assert_eq!(x, y);
        let z = QuadraticNumber::new(-1, -1, -2).unwrap();
        assert_eq!(z, y);
    }

    #[test]
    fn alpha_satisfies_its_polynomial() {
        let a = QuadraticNumber::alpha();
        let lhs = a.mul(&a);
        let rhs = a.add(&QuadraticNumber::one());
        assert_eq!(lhs, rhs);
        // alpha * beta = -1, so alpha * |beta| = 1.
        assert!(a.mul(&QuadraticNumber::beta_abs()).is_one());
    }

    #[test]
    fn minimal_polynomials() {
        let a = minimal_polynomial(&QuadraticNumber::alpha()).unwrap();
        assert_eq!(
            a.coefficients(),
            &[BigInt::from(1), BigInt::from(-1), BigInt::from(-1)]
        );
        let s = minimal_polynomial(&QuadraticNumber::new(0, 3, 1).unwrap()).unwrap();
        assert_eq!(
            s.coefficients(),
            &[BigInt::from(1), BigInt::from(0), BigInt::from(-45)]
        );
        let r = minimal_polynomial(&QuadraticNumber::from_int(7)).unwrap();
        assert_eq!(r.coefficients(), &[BigInt::from(1), BigInt::from(-7)]);
        assert!(minimal_polynomial(&QuadraticNumber::zero()).is_err());
    }

    #[test]
    fn heights_match_closed_forms() {
        let prec = 192;
        let h_alpha = log_height(&QuadraticNumber::alpha(), prec).unwrap();
        let expected = 0.5 * ((1.0 + 5f64.sqrt()) / 2.0).ln();
        assert!((h_alpha.to_f64() - expected).abs() < 1e-12);

        let h_s5 = log_height(&QuadraticNumber::sqrt5(), prec).unwrap();
        assert!((h_s5.to_f64() - 5f64.sqrt().ln()).abs() < 1e-12);

        // 3*sqrt5 has minimal polynomial x^2 - 45 and conjugates +-3*sqrt5.
        let h_3s5 = log_height(&QuadraticNumber::new(0, 3, 1).unwrap(), prec).unwrap();
        assert!((h_3s5.to_f64() - (3.0 * 5f64.sqrt()).ln()).abs() < 1e-12);

        // Rational: h(3/2) = ln 3.
        let h_r = log_height(&QuadraticNumber::from_ratio(3, 2).unwrap(), prec).unwrap();
        assert!((h_r.to_f64() - 3f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn height_of_unit_and_inverse_agree() {
        let prec = 160;
        let a = QuadraticNumber::alpha();
        let inv = a.inverse().unwrap();
        let h1 = log_height(&a, prec).unwrap();
        let h2 = log_height(&inv, prec).unwrap();
        assert!((h1.to_f64() - h2.to_f64()).abs() < 1e-20);
        // h(alpha) + h(|beta|) = 2 h(alpha) since |beta| = 1/alpha.
        let h_babs = log_height(&QuadraticNumber::beta_abs(), prec).unwrap();
        let sum = h1.add(&h_babs);
        let twice = h1.mul_int(&BigInt::from(2));
        assert!(sum.try_le(&twice) != Some(false));
        assert!(sum.try_ge(&twice) != Some(false));
    }

    #[test]
    fn dependence_detects_the_degenerate_pair() {
        let a = QuadraticNumber::alpha();
        let babs = QuadraticNumber::beta_abs();
        assert!(multiplicatively_dependent(&a, &babs).unwrap());
        assert!(multiplicatively_dependent(&a, &a).unwrap());
        assert!(!multiplicatively_dependent(&a, &QuadraticNumber::sqrt5()).unwrap());
        // sqrt5^2 = 5.
        assert!(
            multiplicatively_dependent(&QuadraticNumber::sqrt5(), &QuadraticNumber::from_int(5))
                .unwrap()
        );
        assert!(multiplicatively_dependent(&QuadraticNumber::beta(), &a).is_err());
    }

    #[test]
    fn product_form_decides_vanishing() {
        let a = QuadraticNumber::alpha();
        let babs = QuadraticNumber::beta_abs();
        let s5 = QuadraticNumber::sqrt5();

        let dep = ProductForm::new(vec![a.clone(), babs.clone()], vec![1, 1]).unwrap();
        assert!(product_equals_one(&dep).unwrap());

        // The linear form for the solution (k,m,n) = (8,2,4):
        // alpha^-8 * |beta|^(4+2) * sqrt5, which is not 1.
        let lam = ProductForm::new(
            vec![a.clone(), babs.clone(), s5.clone()],
            vec![-8, 6, 1],
        )
        .unwrap();
        assert!(!product_equals_one(&lam).unwrap());

        let trivial = ProductForm::new(vec![a, s5], vec![0, 0]).unwrap();
        assert!(product_equals_one(&trivial).unwrap());
    }

    #[test]
    fn conjugation_is_an_involution() {
        let x = QuadraticNumber::new(3, -2, 7).unwrap();
        assert_eq!(x.conjugate().conjugate(), x);
        let r = QuadraticNumber::from_ratio(9, 4).unwrap();
        assert_eq!(r.conjugate(), r);
    }

    #[test]
    fn embedding_sign_is_exact() {
        // 7 - 3*sqrt5 ~ 0.29 > 0; 2 - sqrt5 ~ -0.23 < 0.
        assert!(QuadraticNumber::new(7, -3, 1).unwrap().is_positive());
        assert!(!QuadraticNumber::new(2, -1, 1).unwrap().is_positive());
        assert!(QuadraticNumber::beta_abs().is_positive());
        assert!(!QuadraticNumber::beta().is_positive());
    }

    proptest! {
        #[test]
        fn height_subadditive_on_products(
            a1 in -9i64..9, b1 in -9i64..9, c1 in 1i64..9,
            a2 in -9i64..9, b2 in -9i64..9, c2 in 1i64..9,
        ) {
            let x = QuadraticNumber::new(a1, b1, c1).unwrap();
            let y = QuadraticNumber::new(a2, b2, c2).unwrap();
            prop_assume!(!x.is_zero() && !y.is_zero());
            let prec = 128;
            let hx = log_height(&x, prec).unwrap();
            let hy = log_height(&y, prec).unwrap();
            let hxy = log_height(&x.mul(&y), prec).unwrap();
            // h(xy) <= h(x) + h(y) must not be certifiably violated.
            prop_assert!(hxy.try_le(&hx.add(&hy)) != Some(false));
        }

        #[test]
        fn field_inverse_roundtrips(a in -20i64..20, b in -20i64..20, c in 1i64..20) {
            let x = QuadraticNumber::new(a, b, c).unwrap();
            prop_assume!(!x.is_zero());
            prop_assert!(x.mul(&x.inverse().unwrap()).is_one());
        }
    }
}
