//! The characteristic system: given a mass parameter and arbitrary complex
//! direction rows `(m_r, g_r, d_r)`, solve for the time-direction chain
//! `k_0, k_1, ..., k_R`.
//!
//! The first equation `k0^2 - m0^2 - g0^2 - d0^2 + mass = 0` is quadratic;
//! every later one is linear in `k_r` once the earlier entries are known.
//! A solved chain, packed into basis vectors at order `R+1`, makes
//! [`char_residual`](crate::nilalgebra::char_residual) vanish.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::nilalgebra::{BasisVectors, NilElement};
use crate::scalar::Scalar;

#[derive(Debug, Error, PartialEq)]
pub enum CharSysError {
    #[error("k0 = 0: the characteristic chain is degenerate")]
    DegenerateK0,
    #[error("the radicand has no exact rational square root; use float mode")]
    ExactSqrtUnavailable,
    #[error("direction table has {have} rows, need at least {need}")]
    TableTooShort { need: usize, have: usize },
    #[error("rows[{row}].{field} must be zero in dimension {dim}")]
    DimConstraint {
        row: usize,
        field: &'static str,
        dim: u8,
    },
    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("chain prefix must hold k_0..k_(r-1): expected {expected} entries, got {got}")]
    ChainPrefix { expected: usize, got: usize },
}

/// Sign choice for the square root defining `k0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn apply<S: Scalar>(self, v: S) -> S {
        match self {
            Branch::Plus => v,
            Branch::Minus => -v,
        }
    }
}

impl std::fmt::Display for Branch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Branch::Plus => write!(f, "plus"),
            Branch::Minus => write!(f, "minus"),
        }
    }
}

/// Space dimension of the wave operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub enum Dim {
    Two,
    Three,
    Four,
}

impl Dim {
    pub fn n_coords(self) -> usize {
        match self {
            Dim::Two => 2,
            Dim::Three => 3,
            Dim::Four => 4,
        }
    }
}

impl From<Dim> for u8 {
    fn from(d: Dim) -> u8 {
        d.n_coords() as u8
    }
}

impl TryFrom<u8> for Dim {
    type Error = String;
    fn try_from(v: u8) -> Result<Self, String> {
        match v {
            2 => Ok(Dim::Two),
            3 => Ok(Dim::Three),
            4 => Ok(Dim::Four),
            other => Err(format!("dim must be 2, 3 or 4, got {other}")),
        }
    }
}

/// One row of free directions.
#[derive(Clone, Debug, PartialEq)]
pub struct DirectionRow<S: Scalar> {
    pub m: S,
    pub g: S,
    pub d: S,
}

impl<S: Scalar> DirectionRow<S> {
    pub fn new(m: S, g: S, d: S) -> Self {
        DirectionRow { m, g, d }
    }

    pub fn zero() -> Self {
        DirectionRow {
            m: S::zero(),
            g: S::zero(),
            d: S::zero(),
        }
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> DirectionRow<T> {
        DirectionRow {
            m: f(&self.m),
            g: f(&self.g),
            d: f(&self.d),
        }
    }
}

/// Free directions for every chain index, plus the dimension they live in.
#[derive(Clone, Debug, PartialEq)]
pub struct DirectionTable<S: Scalar> {
    pub dim: Dim,
    pub rows: Vec<DirectionRow<S>>,
}

impl<S: Scalar> DirectionTable<S> {
    pub fn new(dim: Dim, rows: Vec<DirectionRow<S>>) -> Self {
        DirectionTable { dim, rows }
    }

    /// Lower dimensions are cut out of the four-dimensional table by
    /// forcing the unused direction coefficients to zero.
    pub fn validate(&self) -> Result<(), CharSysError> {
        for (row, r) in self.rows.iter().enumerate() {
            if self.dim.n_coords() < 4 && !r.d.is_zero() {
                return Err(CharSysError::DimConstraint {
                    row,
                    field: "d",
                    dim: self.dim.into(),
                });
            }
            if self.dim.n_coords() < 3 && !r.g.is_zero() {
                return Err(CharSysError::DimConstraint {
                    row,
                    field: "g",
                    dim: self.dim.into(),
                });
            }
        }
        Ok(())
    }

    fn column(&self, pick: impl Fn(&DirectionRow<S>) -> &S, upto: usize) -> Vec<S> {
        self.rows[..=upto].iter().map(|r| pick(r).clone()).collect()
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T + Copy) -> DirectionTable<T> {
        DirectionTable {
            dim: self.dim,
            rows: self.rows.iter().map(|r| r.map(f)).collect(),
        }
    }
}

/// `B_r = sum_{i+j=r} c_i c_j`, the `rho^r` coefficient of the square of
/// `sum c_i rho^i`.
pub fn conv_b<S: Scalar>(c: &[S], r: usize) -> Result<S, CharSysError> {
    if r >= c.len() {
        return Err(CharSysError::IndexOutOfRange {
            index: r,
            len: c.len(),
        });
    }
    let mut acc = S::zero();
    for i in 0..=r {
        acc = acc + c[i].clone() * c[r - i].clone();
    }
    Ok(acc)
}

/// Outcome of the quadratic step: `k0` together with a degeneracy flag.
/// A zero `k0` is still usable when no later entries are required.
#[derive(Clone, Debug, PartialEq)]
pub struct K0Solution<S: Scalar> {
    pub value: S,
    pub degenerate: bool,
}

/// Solve `k0^2 - m0^2 - g0^2 - d0^2 + mass = 0`: the radicand is
/// `m0^2 + g0^2 + d0^2 - mass` and the sign follows `branch`.
pub fn solve_k0<S: Scalar>(
    mass: &S,
    row0: &DirectionRow<S>,
    branch: Branch,
) -> Result<K0Solution<S>, CharSysError> {
    let radicand = row0.m.clone() * row0.m.clone()
        + row0.g.clone() * row0.g.clone()
        + row0.d.clone() * row0.d.clone()
        - mass.clone();
    let degenerate = radicand.is_zero();
    let root = radicand
        .try_sqrt()
        .ok_or(CharSysError::ExactSqrtUnavailable)?;
    Ok(K0Solution {
        value: branch.apply(root),
        degenerate,
    })
}

/// Solve the linear equation for `k_r`, `r >= 1`:
/// `k_r = (B_r(m) + B_r(g) + B_r(d) - S_r(k)) / (2 k0)` where `S_r` sums
/// the products `k_i k_j` with `i + j = r` and `i, j >= 1`.
pub fn solve_kr<S: Scalar>(
    r: usize,
    k_partial: &[S],
    table: &DirectionTable<S>,
) -> Result<S, CharSysError> {
    if r == 0 || k_partial.len() != r {
        return Err(CharSysError::ChainPrefix {
            expected: r,
            got: k_partial.len(),
        });
    }
    if table.rows.len() <= r {
        return Err(CharSysError::TableTooShort {
            need: r + 1,
            have: table.rows.len(),
        });
    }
    let k0 = &k_partial[0];
    if k0.is_zero() {
        return Err(CharSysError::DegenerateK0);
    }
    let b_m = conv_b(&table.column(|row| &row.m, r), r)?;
    let b_g = conv_b(&table.column(|row| &row.g, r), r)?;
    let b_d = conv_b(&table.column(|row| &row.d, r), r)?;
    let mut s_r = S::zero();
    for i in 1..r {
        s_r = s_r + k_partial[i].clone() * k_partial[r - i].clone();
    }
    let numerator = b_m + b_g + b_d - s_r;
    numerator
        .checked_div(&(S::from_int(2) * k0.clone()))
        .ok_or(CharSysError::DegenerateK0)
}

/// The solved chain; building basis vectors from it at order `R+1` makes
/// the characteristic residual vanish.
#[derive(Clone, Debug, PartialEq)]
pub struct KChain<S: Scalar> {
    pub branch: Branch,
    pub k: Vec<S>,
}

impl<S: Scalar> KChain<S> {
    pub fn r_max(&self) -> usize {
        self.k.len() - 1
    }

    /// Pack the chain and the direction columns into basis vectors at
    /// order `k.len()`.
    pub fn to_basis(&self, table: &DirectionTable<S>) -> Result<BasisVectors<S>, CharSysError> {
        let n = self.k.len();
        if table.rows.len() < n {
            return Err(CharSysError::TableTooShort {
                need: n,
                have: table.rows.len(),
            });
        }
        let elem = |col: Vec<S>| NilElement::from_coeffs(col).expect("n >= 1");
        Ok(BasisVectors::new(
            elem(self.k.clone()),
            elem(table.column(|row| &row.m, n - 1)),
            elem(table.column(|row| &row.g, n - 1)),
            elem(table.column(|row| &row.d, n - 1)),
        )
        .expect("columns share the order"))
    }
}

/// Run the quadratic step and then the linear recursion up to `r_max`.
pub fn solve_chain<S: Scalar>(
    mass: &S,
    table: &DirectionTable<S>,
    branch: Branch,
    r_max: usize,
) -> Result<KChain<S>, CharSysError> {
    table.validate()?;
    if table.rows.len() < r_max + 1 {
        return Err(CharSysError::TableTooShort {
            need: r_max + 1,
            have: table.rows.len(),
        });
    }
    let k0 = solve_k0(mass, &table.rows[0], branch)?;
    if k0.degenerate && r_max >= 1 {
        return Err(CharSysError::DegenerateK0);
    }
    let mut k = Vec::with_capacity(r_max + 1);
    k.push(k0.value);
    for r in 1..=r_max {
        let next = solve_kr(r, &k, table)?;
        k.push(next);
    }
    Ok(KChain { branch, k })
}

/// Characteristic residual of a solved chain, for certification.
pub fn chain_residual<S: Scalar>(
    chain: &KChain<S>,
    table: &DirectionTable<S>,
    mass: &S,
) -> Result<NilElement<S>, CharSysError> {
    let basis = chain.to_basis(table)?;
    Ok(crate::nilalgebra::char_residual(&basis, mass))
}

/// Componentwise relative residual of a solved chain.
///
/// The chain is solved precisely so that the products `k_i k_j` cancel
/// against the direction convolutions, so each component is measured
/// against the magnitude that was summed before cancellation:
/// `sum_{i+j=r} (|k_i k_j| + |m_i m_j| + |g_i g_j| + |d_i d_j|)`, plus
/// `|mass|` in component zero. Exact arithmetic reports zero.
pub fn chain_residual_relative<S: Scalar>(
    chain: &KChain<S>,
    table: &DirectionTable<S>,
    mass: &S,
) -> Result<f64, CharSysError> {
    let residual = chain_residual(chain, table, mass)?;
    let n = chain.k.len();
    let mut worst = 0.0f64;
    for (r, coeff) in residual.coeffs().iter().enumerate() {
        let mut magnitude = if r == 0 { mass.abs_approx() } else { 0.0 };
        for i in 0..=r.min(n - 1) {
            let j = r - i;
            if j >= n {
                continue;
            }
            magnitude += chain.k[i].abs_approx() * chain.k[j].abs_approx()
                + table.rows[i].m.abs_approx() * table.rows[j].m.abs_approx()
                + table.rows[i].g.abs_approx() * table.rows[j].g.abs_approx()
                + table.rows[i].d.abs_approx() * table.rows[j].d.abs_approx();
        }
        worst = worst.max(coeff.abs_approx() / magnitude.max(1.0));
    }
    Ok(worst)
}
