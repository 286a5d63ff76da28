//! Sparse multivariate polynomials over [`Scalar`] coefficients.
//!
//! Two variable universes are used throughout the crate: the space
//! variables `x0..x3` (always four of them) and the chain variables
//! `xi1..xiR`. Terms live in a `BTreeMap` keyed by graded-lexicographic
//! monomials, so iteration order, serialization and rendering are
//! canonical.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use thiserror::Error;

use crate::scalar::Scalar;

/// Relative magnitude below which float coefficients are pruned.
const REL_PRUNE: f64 = 1e-14;

#[derive(Debug, Error, PartialEq)]
pub enum PolyError {
    #[error("variable count mismatch: {left} vs {right}")]
    NvarsMismatch { left: usize, right: usize },
    #[error("variable index {var} out of range for {nvars} variables")]
    VarOutOfRange { var: usize, nvars: usize },
    #[error("evaluation point has {got} coordinates, expected {expected}")]
    PointLength { expected: usize, got: usize },
    #[error("substitution needs {expected} linear forms, got {got}")]
    FormsLength { expected: usize, got: usize },
}

/// Exponent vector with graded-lexicographic ordering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, rhs: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        // graded, with the lexicographic tie-break reversed so that terms
        // in earlier variables sort (and render) first within a degree
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial; no stored coefficient is zero.
#[derive(Clone, Debug, PartialEq)]
pub struct SparsePoly<S: Scalar> {
    nvars: usize,
    terms: BTreeMap<Monomial, S>,
}

impl<S: Scalar> SparsePoly<S> {
    pub fn new_zero(nvars: usize) -> Self {
        SparsePoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: S) -> Self {
        let mut p = Self::new_zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial(vec![0; nvars]), c);
        }
        p
    }

    /// The single variable `var` (zero-based) with coefficient one.
    pub fn var(nvars: usize, var: usize) -> Result<Self, PolyError> {
        if var >= nvars {
            return Err(PolyError::VarOutOfRange { var, nvars });
        }
        let mut e = vec![0; nvars];
        e[var] = 1;
        Self::monomial(nvars, e, S::one())
    }

    pub fn monomial(nvars: usize, exps: Vec<u32>, coeff: S) -> Result<Self, PolyError> {
        if exps.len() != nvars {
            return Err(PolyError::NvarsMismatch {
                left: exps.len(),
                right: nvars,
            });
        }
        let mut p = Self::new_zero(nvars);
        if !coeff.is_zero() {
            p.terms.insert(Monomial(exps), coeff);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &S)> {
        self.terms.iter()
    }

    /// Coefficient of the given exponent vector (zero if absent).
    pub fn coeff(&self, exps: &[u32]) -> S {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_else(S::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(Monomial::total_degree)
            .max()
            .unwrap_or(0)
    }

    pub fn max_abs(&self) -> f64 {
        self.terms
            .values()
            .map(|c| c.abs_approx())
            .fold(0.0, f64::max)
    }

    /// Largest coefficient difference against `other`, over the union of
    /// monomials.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst = 0.0f64;
        for (m, c) in &self.terms {
            let d = (c.clone() - other.coeff(m.exps())).abs_approx();
            worst = worst.max(d);
        }
        for (m, c) in &other.terms {
            if !self.terms.contains_key(m) {
                worst = worst.max(c.abs_approx());
            }
        }
        worst
    }

    /// Drop zero coefficients; in float mode, drop coefficients smaller
    /// than `REL_PRUNE` times the largest magnitude in the polynomial.
    fn normalize(mut self) -> Self {
        if S::EXACT {
            self.terms.retain(|_, c| !c.is_zero());
        } else {
            let max = self.max_abs();
            let cut = REL_PRUNE * max;
            self.terms.retain(|_, c| {
                let a = c.abs_approx();
                a > cut && a > 0.0
            });
        }
        self
    }

    fn check_nvars(&self, rhs: &Self) -> Result<(), PolyError> {
        if self.nvars != rhs.nvars {
            Err(PolyError::NvarsMismatch {
                left: self.nvars,
                right: rhs.nvars,
            })
        } else {
            Ok(())
        }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, PolyError> {
        self.check_nvars(rhs)?;
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            match terms.get_mut(m) {
                Some(acc) => *acc = acc.clone() + c.clone(),
                None => {
                    terms.insert(m.clone(), c.clone());
                }
            }
        }
        Ok(SparsePoly {
            nvars: self.nvars,
            terms,
        }
        .normalize())
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, PolyError> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        SparsePoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        SparsePoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a.clone() * c.clone()))
                .collect(),
        }
        .normalize()
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, PolyError> {
        self.check_nvars(rhs)?;
        let mut terms: BTreeMap<Monomial, S> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m = ma.mul(mb);
                let c = ca.clone() * cb.clone();
                match terms.get_mut(&m) {
                    Some(acc) => *acc = acc.clone() + c,
                    None => {
                        terms.insert(m, c);
                    }
                }
            }
        }
        Ok(SparsePoly {
            nvars: self.nvars,
            terms,
        }
        .normalize())
    }

    /// Formal partial derivative with respect to variable `var`.
    pub fn diff(&self, var: usize) -> Result<Self, PolyError> {
        if var >= self.nvars {
            return Err(PolyError::VarOutOfRange {
                var,
                nvars: self.nvars,
            });
        }
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[var] = e - 1;
            terms.insert(Monomial(exps), c.clone() * S::from_int(e as i64));
        }
        Ok(SparsePoly {
            nvars: self.nvars,
            terms,
        }
        .normalize())
    }

    /// Direct sum of monomial evaluations (exact in rational mode).
    pub fn eval(&self, point: &[S]) -> Result<S, PolyError> {
        if point.len() != self.nvars {
            return Err(PolyError::PointLength {
                expected: self.nvars,
                got: point.len(),
            });
        }
        // power table per variable up to the largest exponent used
        let mut max_exp = vec![0u32; self.nvars];
        for m in self.terms.keys() {
            for (j, &e) in m.0.iter().enumerate() {
                max_exp[j] = max_exp[j].max(e);
            }
        }
        let pows: Vec<Vec<S>> = point
            .iter()
            .zip(&max_exp)
            .map(|(x, &top)| {
                let mut col = Vec::with_capacity(top as usize + 1);
                col.push(S::one());
                for e in 1..=top {
                    let prev = col[(e - 1) as usize].clone();
                    col.push(prev * x.clone());
                }
                col
            })
            .collect();
        let mut acc = S::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (j, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t * pows[j][e as usize].clone();
                }
            }
            acc = acc + t;
        }
        Ok(acc)
    }

    /// Substitute each variable by a degree-one polynomial in `x0..x3`,
    /// expanding into the four-variable space universe.
    pub fn substitute_linear(&self, forms: &[LinearForm<S>]) -> Result<SparsePoly<S>, PolyError> {
        if forms.len() != self.nvars {
            return Err(PolyError::FormsLength {
                expected: self.nvars,
                got: forms.len(),
            });
        }
        let form_polys: Vec<SparsePoly<S>> = forms.iter().map(LinearForm::to_poly).collect();
        // lazily grown power cache per substituted variable
        let mut pow_cache: Vec<Vec<SparsePoly<S>>> = (0..self.nvars)
            .map(|_| vec![SparsePoly::constant(4, S::one())])
            .collect();
        let mut acc = SparsePoly::new_zero(4);
        for (m, c) in &self.terms {
            let mut prod = SparsePoly::constant(4, c.clone());
            for (j, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while pow_cache[j].len() <= e as usize {
                    let next = pow_cache[j]
                        .last()
                        .expect("cache seeded with degree zero")
                        .mul(&form_polys[j])?;
                    pow_cache[j].push(next);
                }
                prod = prod.mul(&pow_cache[j][e as usize])?;
            }
            acc = acc.add(&prod)?;
        }
        Ok(acc)
    }

    /// Convert coefficients into another scalar field.
    pub fn map_scalars<T: Scalar>(&self, f: impl Fn(&S) -> T) -> SparsePoly<T> {
        SparsePoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), f(c))).collect(),
        }
        .normalize()
    }
}

/// Complex linear form `k*x0 + m*x1 + g*x2 + d*x3`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearForm<S: Scalar> {
    pub k: S,
    pub m: S,
    pub g: S,
    pub d: S,
}

impl<S: Scalar> LinearForm<S> {
    pub fn new(k: S, m: S, g: S, d: S) -> Self {
        LinearForm { k, m, g, d }
    }

    pub fn coeff(&self, var: usize) -> &S {
        match var {
            0 => &self.k,
            1 => &self.m,
            2 => &self.g,
            3 => &self.d,
            _ => panic!("linear forms have four coefficients"),
        }
    }

    pub fn to_poly(&self) -> SparsePoly<S> {
        let mut p = SparsePoly::new_zero(4);
        for var in 0..4 {
            let c = self.coeff(var);
            if !c.is_zero() {
                let mut e = vec![0u32; 4];
                e[var] = 1;
                p.terms.insert(Monomial(e), c.clone());
            }
        }
        p
    }

    pub fn eval(&self, point: &[S; 4]) -> S {
        point.iter().enumerate().fold(S::zero(), |acc, (var, x)| {
            acc + self.coeff(var).clone() * x.clone()
        })
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> LinearForm<T> {
        LinearForm {
            k: f(&self.k),
            m: f(&self.m),
            g: f(&self.g),
            d: f(&self.d),
        }
    }
}
