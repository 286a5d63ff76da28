//! Arithmetic in the commutative algebra with basis `{1, rho, ..., rho^(n-1)}`
//! and `rho^n = 0`, over complex scalars.
//!
//! Elements are fixed-order coefficient vectors; multiplication is the
//! Cauchy convolution truncated at the nilpotency order. The exponential
//! splits off the scalar part and sums the finite nilpotent series.

use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Error, PartialEq)]
pub enum AlgebraError {
    #[error("order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("element must have at least one coefficient")]
    Empty,
    #[error("exact exponential needs a vanishing scalar part")]
    ExactExpUnsupported,
}

/// Element of the order-`n` nilpotent algebra: `coeffs[r]` multiplies `rho^r`.
#[derive(Clone, Debug, PartialEq)]
pub struct NilElement<S: Scalar> {
    coeffs: Vec<S>,
}

impl<S: Scalar> NilElement<S> {
    pub fn from_coeffs(coeffs: Vec<S>) -> Result<Self, AlgebraError> {
        if coeffs.is_empty() {
            return Err(AlgebraError::Empty);
        }
        Ok(NilElement { coeffs })
    }

    pub fn zero(order: usize) -> Self {
        assert!(order > 0, "order must be positive");
        NilElement {
            coeffs: vec![S::zero(); order],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut e = Self::zero(order);
        e.coeffs[0] = S::one();
        e
    }

    /// The generator `rho`. At order 1 the generator is already zero.
    pub fn rho(order: usize) -> Self {
        let mut e = Self::zero(order);
        if order > 1 {
            e.coeffs[1] = S::one();
        }
        e
    }

    /// `c * 1`.
    pub fn scalar(order: usize, c: S) -> Self {
        let mut e = Self::zero(order);
        e.coeffs[0] = c;
        e
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|c| c.abs_approx())
            .fold(0.0, f64::max)
    }

    fn check_order(&self, rhs: &Self) -> Result<(), AlgebraError> {
        if self.order() != rhs.order() {
            Err(AlgebraError::OrderMismatch {
                left: self.order(),
                right: rhs.order(),
            })
        } else {
            Ok(())
        }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        self.check_order(rhs)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        Ok(NilElement { coeffs })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        self.check_order(rhs)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a.clone() - b.clone())
            .collect();
        Ok(NilElement { coeffs })
    }

    pub fn neg(&self) -> Self {
        NilElement {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        NilElement {
            coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    /// Truncated Cauchy convolution; terms past `rho^(n-1)` vanish.
    pub fn mul(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        self.check_order(rhs)?;
        let n = self.order();
        let mut coeffs = vec![S::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if i + j >= n {
                    break;
                }
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        Ok(NilElement { coeffs })
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..exp {
            acc = acc.mul(self).expect("equal orders");
        }
        acc
    }

    /// Exponential: with `a = a0*1 + nu` (nu nilpotent) this is
    /// `exp(a0) * sum_{r<n} nu^r / r!`. The nilpotent sum terminates, so no
    /// convergence tolerance is involved; the scalar factor uses the field's
    /// own exponential and fails only in exact mode with `a0 != 0`.
    pub fn exp(&self) -> Result<Self, AlgebraError> {
        let n = self.order();
        let scalar_factor = self.coeffs[0]
            .try_exp()
            .ok_or(AlgebraError::ExactExpUnsupported)?;
        let mut nilpotent = self.clone();
        nilpotent.coeffs[0] = S::zero();

        let mut acc = Self::one(n);
        let mut term = Self::one(n);
        for r in 1..n {
            term = term.mul(&nilpotent).expect("equal orders");
            term = term.scale(&S::from_ratio(1, r as i64));
            acc = acc.add(&term).expect("equal orders");
        }
        Ok(acc.scale(&scalar_factor))
    }
}

/// The four direction vectors of a characteristic basis, all of one order.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisVectors<S: Scalar> {
    pub e0: NilElement<S>,
    pub e1: NilElement<S>,
    pub e2: NilElement<S>,
    pub e3: NilElement<S>,
}

impl<S: Scalar> BasisVectors<S> {
    pub fn new(
        e0: NilElement<S>,
        e1: NilElement<S>,
        e2: NilElement<S>,
        e3: NilElement<S>,
    ) -> Result<Self, AlgebraError> {
        e0.check_order(&e1)?;
        e0.check_order(&e2)?;
        e0.check_order(&e3)?;
        Ok(BasisVectors { e0, e1, e2, e3 })
    }

    pub fn order(&self) -> usize {
        self.e0.order()
    }
}

/// `e0^2 - e1^2 - e2^2 - e3^2 + mass*1`. The zero element certifies that the
/// basis solves the characteristic equation.
pub fn char_residual<S: Scalar>(basis: &BasisVectors<S>, mass: &S) -> NilElement<S> {
    let sq = |e: &NilElement<S>| e.mul(e).expect("equal orders");
    let mut acc = sq(&basis.e0);
    acc = acc.sub(&sq(&basis.e1)).expect("equal orders");
    acc = acc.sub(&sq(&basis.e2)).expect("equal orders");
    acc = acc.sub(&sq(&basis.e3)).expect("equal orders");
    acc.add(&NilElement::scalar(basis.order(), mass.clone()))
        .expect("equal orders")
}
