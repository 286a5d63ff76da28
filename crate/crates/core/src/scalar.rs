//! Complex scalars in two flavours: double precision and exact rational.
//!
//! Every container in this crate is generic over [`Scalar`]. `Complex64`
//! is the numeric mode; [`RatComplex`] (a pair of `BigRational`s) is the
//! exact mode used for golden forms and bit-exact serialization.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Coefficient field for polynomials, algebra elements and chains.
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// True when arithmetic carries no rounding; exact modes skip all
    /// magnitude-based pruning.
    const EXACT: bool;

    fn from_int(n: i64) -> Self;

    /// Exact real rational `num/den`. Panics if `den == 0`.
    fn from_ratio(num: i64, den: i64) -> Self;

    /// Embed an exact rational-complex value into this field.
    fn from_rat(value: &RatComplex) -> Self;

    /// `self / rhs`; `None` iff `rhs` is zero.
    fn checked_div(&self, rhs: &Self) -> Option<Self>;

    /// Principal square root (argument in (-pi, pi]). `None` when the root
    /// is not representable in this field (rational mode, non-square).
    fn try_sqrt(&self) -> Option<Self>;

    /// Complex exponential. `None` when not representable exactly
    /// (rational mode with a nonzero argument).
    fn try_exp(&self) -> Option<Self>;

    /// Modulus as `f64`, for tolerance checks and reports.
    fn abs_approx(&self) -> f64;

    fn to_c64(&self) -> Complex64;
}

impl Scalar for Complex64 {
    const EXACT: bool = false;

    fn from_int(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Complex64::new(num as f64 / den as f64, 0.0)
    }

    fn from_rat(value: &RatComplex) -> Self {
        value.to_c64()
    }

    fn checked_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            None
        } else {
            Some(self / rhs)
        }
    }

    fn try_sqrt(&self) -> Option<Self> {
        Some(self.sqrt())
    }

    fn try_exp(&self) -> Option<Self> {
        Some(self.exp())
    }

    fn abs_approx(&self) -> f64 {
        self.norm()
    }

    fn to_c64(&self) -> Complex64 {
        *self
    }
}

/// Exact complex number with rational real and imaginary parts.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct RatComplex {
    pub re: BigRational,
    pub im: BigRational,
}

impl RatComplex {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        RatComplex { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        RatComplex::new(
            BigRational::from_integer(re.into()),
            BigRational::from_integer(im.into()),
        )
    }

    /// Exact embedding of finite doubles (every finite double is dyadic).
    pub fn from_f64(re: f64, im: f64) -> Option<Self> {
        Some(RatComplex::new(
            BigRational::from_float(re)?,
            BigRational::from_float(im)?,
        ))
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }
}

impl fmt::Display for RatComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}{}i", self.re, self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl Add for RatComplex {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        RatComplex::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for RatComplex {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        RatComplex::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Mul for RatComplex {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let re = &self.re * &rhs.re - &self.im * &rhs.im;
        let im = &self.re * &rhs.im + &self.im * &rhs.re;
        RatComplex::new(re, im)
    }
}

impl Neg for RatComplex {
    type Output = Self;
    fn neg(self) -> Self {
        RatComplex::new(-self.re, -self.im)
    }
}

impl Zero for RatComplex {
    fn zero() -> Self {
        RatComplex::default()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for RatComplex {
    fn one() -> Self {
        RatComplex::new(BigRational::one(), BigRational::zero())
    }
}

/// Exact square root of a nonnegative rational, if it is a perfect square.
fn sqrt_exact_nonneg(q: &BigRational) -> Option<BigRational> {
    debug_assert!(!q.is_negative());
    let sn = q.numer().sqrt();
    if &(&sn * &sn) != q.numer() {
        return None;
    }
    let sd = q.denom().sqrt();
    if &(&sd * &sd) != q.denom() {
        return None;
    }
    Some(BigRational::new(sn, sd))
}

fn rat_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        if q.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

impl Scalar for RatComplex {
    const EXACT: bool = true;

    fn from_int(n: i64) -> Self {
        RatComplex::from_ints(n, 0)
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        RatComplex::new(
            BigRational::new(num.into(), den.into()),
            BigRational::zero(),
        )
    }

    fn from_rat(value: &RatComplex) -> Self {
        value.clone()
    }

    fn checked_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        let n = rhs.norm_sqr();
        let re = (&self.re * &rhs.re + &self.im * &rhs.im) / &n;
        let im = (&self.im * &rhs.re - &self.re * &rhs.im) / &n;
        Some(RatComplex::new(re, im))
    }

    // Principal branch, matching Complex64::sqrt: Re >= 0, and for purely
    // negative reals the root is +i*sqrt(|a|).
    fn try_sqrt(&self) -> Option<Self> {
        let two = BigRational::from_integer(2.into());
        if self.im.is_zero() {
            if self.re.is_negative() {
                let d = sqrt_exact_nonneg(&-self.re.clone())?;
                Some(RatComplex::new(BigRational::zero(), d))
            } else {
                let c = sqrt_exact_nonneg(&self.re)?;
                Some(RatComplex::new(c, BigRational::zero()))
            }
        } else {
            // w = c + di with c = sqrt((a + |z|)/2) > 0 and d = b/(2c).
            let r = sqrt_exact_nonneg(&self.norm_sqr())?;
            let c_sq = (&self.re + &r) / &two;
            let c = sqrt_exact_nonneg(&c_sq)?;
            if c.is_zero() {
                return None;
            }
            let d = &self.im / (&two * &c);
            Some(RatComplex::new(c, d))
        }
    }

    fn try_exp(&self) -> Option<Self> {
        if self.is_zero() {
            Some(RatComplex::one())
        } else {
            None
        }
    }

    fn abs_approx(&self) -> f64 {
        Complex64::new(rat_to_f64(&self.re), rat_to_f64(&self.im)).norm()
    }

    fn to_c64(&self) -> Complex64 {
        Complex64::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }
}

/// `n!` as a big integer.
pub fn factorial_big(n: usize) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    acc
}
