//! Certification that family members annihilate the wave operator with
//! mass term, `d^2/dx0^2 - sum_j d^2/dxj^2 + mass`, both symbolically and
//! by finite differences.
//!
//! The symbolic route never evaluates the exponential: with
//! `U = P exp(xi0)` and `l_j` the coefficients of `xi0`,
//! `(op + mass) U = Q exp(xi0)` where
//! `Q = sum_j s_j (P_xjxj + 2 l_j P_xj) + (sum_j s_j l_j^2 + mass) P`.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::charsys::{Dim, DirectionRow};
use crate::family::SolutionTerm;
use crate::polynomial::{LinearForm, PolyError, SparsePoly};
use crate::scalar::Scalar;

#[derive(Debug, Error, PartialEq)]
pub enum VerifyError {
    #[error("solution uses x{var} but the operator has dimension {dim}")]
    DimensionMismatch { var: usize, dim: u8 },
    #[error("solution polynomial must live in the four space variables, found {nvars}")]
    BadUniverse { nvars: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Metric signature `(+1, -1, ..., -1)` of the operator in `dim` coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Signature {
    pub dim: Dim,
}

impl Signature {
    pub fn new(dim: Dim) -> Self {
        Signature { dim }
    }

    pub fn sign(&self, var: usize) -> i64 {
        if var == 0 {
            1
        } else {
            -1
        }
    }
}

/// Residual polynomial `Q` with `(op + mass)(P exp(xi0)) = Q exp(xi0)`.
pub fn apply_kg_operator<S: Scalar>(
    u: &SolutionTerm<S>,
    mass: &S,
    sig: Signature,
) -> Result<SparsePoly<S>, VerifyError> {
    if u.poly.nvars() != 4 {
        return Err(VerifyError::BadUniverse {
            nvars: u.poly.nvars(),
        });
    }
    let dim = sig.dim.n_coords();
    for var in dim..4 {
        let unused_form = u.xi0.coeff(var).is_zero();
        let unused_poly = u.poly.terms().all(|(m, _)| m.exps()[var] == 0);
        if !unused_form || !unused_poly {
            return Err(VerifyError::DimensionMismatch {
                var,
                dim: sig.dim.into(),
            });
        }
    }
    // zeroth-order coefficient: sum_j s_j l_j^2 + mass
    let mut constant = mass.clone();
    for var in 0..dim {
        let l = u.xi0.coeff(var).clone();
        let sq = l.clone() * l;
        constant = match sig.sign(var) {
            1 => constant + sq,
            _ => constant - sq,
        };
    }
    let mut acc = u.poly.scale(&constant);
    for var in 0..dim {
        let first = u.poly.diff(var)?;
        let second = first.diff(var)?;
        let two_l = S::from_int(2) * u.xi0.coeff(var).clone();
        let term = second.add(&first.scale(&two_l))?;
        acc = match sig.sign(var) {
            1 => acc.add(&term)?,
            _ => acc.sub(&term)?,
        };
    }
    Ok(acc)
}

/// Parameters of the finite-difference check.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct NumericParams {
    pub points: usize,
    pub h: f64,
    pub seed: u64,
    pub tol: f64,
}

impl Default for NumericParams {
    fn default() -> Self {
        NumericParams {
            points: 20,
            h: 1e-3,
            seed: 42,
            tol: 1e-6,
        }
    }
}

/// Uniform sample points in `[-1, 1]^dim`, remaining coordinates zero.
pub fn sample_points(dim: Dim, n: usize, seed: u64) -> Vec<[f64; 4]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let mut p = [0.0; 4];
            for coord in p.iter_mut().take(dim.n_coords()) {
                *coord = rng.random_range(-1.0..=1.0);
            }
            p
        })
        .collect()
}

/// Fourth-order five-point stencil for the second derivative along `var`.
fn stencil_second(u: &SolutionTerm<Complex64>, point: &[f64; 4], var: usize, h: f64) -> Complex64 {
    let shifted = |steps: f64| {
        let mut p = *point;
        p[var] += steps * h;
        u.eval(&p)
    };
    (-shifted(2.0) + 16.0 * shifted(1.0) - 30.0 * shifted(0.0) + 16.0 * shifted(-1.0)
        - shifted(-2.0))
        / (12.0 * h * h)
}

/// Worst finite-difference residual over the given points, measured
/// relative to `1 + |U|` at each point.
pub fn numeric_residual(
    u: &SolutionTerm<Complex64>,
    mass: Complex64,
    sig: Signature,
    points: &[[f64; 4]],
    h: f64,
) -> f64 {
    let dim = sig.dim.n_coords();
    let mut worst = 0.0f64;
    for point in points {
        let center = u.eval(point);
        let mut residual = mass * center;
        for var in 0..dim {
            let d2 = stencil_second(u, point, var, h);
            residual = match sig.sign(var) {
                1 => residual + d2,
                _ => residual - d2,
            };
        }
        worst = worst.max(residual.norm() / (1.0 + center.norm()));
    }
    worst
}

/// Per-member verification outcome.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub r: usize,
    pub symbolic_max_coeff: f64,
    pub numeric_max_residual: Option<f64>,
    pub passed: bool,
    pub notes: String,
}

/// Verify a batch of solutions sharing one mass and signature. The
/// symbolic residual is compared against `tol` times the largest
/// coefficient of the member's own factor; the numeric residual, when
/// requested, against `params.tol`.
pub fn verify_family<S: Scalar>(
    solutions: &[SolutionTerm<S>],
    mass: &S,
    sig: Signature,
    tol: f64,
    numeric: Option<&NumericParams>,
) -> Result<Vec<VerificationReport>, VerifyError> {
    let points = numeric.map(|p| sample_points(sig.dim, p.points, p.seed));
    let mut reports = Vec::with_capacity(solutions.len());
    for u in solutions {
        let residual = apply_kg_operator(u, mass, sig)?;
        let symbolic_max_coeff = residual.max_abs();
        let scale = u.poly.max_abs();
        let mut passed = symbolic_max_coeff <= tol * scale;
        let mut notes = if passed {
            format!(
                "symbolic residual {symbolic_max_coeff:.3e} within {tol:.1e} of scale {scale:.3e}"
            )
        } else {
            format!(
                "symbolic residual {symbolic_max_coeff:.3e} exceeds {tol:.1e} of scale {scale:.3e}"
            )
        };
        let numeric_max_residual = match (numeric, &points) {
            (Some(p), Some(pts)) => {
                let res = numeric_residual(&u.to_c64(), mass.to_c64(), sig, pts, p.h);
                if res >= p.tol {
                    passed = false;
                    notes.push_str(&format!(
                        "; numeric residual {res:.3e} exceeds {:.1e}",
                        p.tol
                    ));
                } else {
                    notes.push_str(&format!("; numeric residual {res:.3e}"));
                }
                Some(res)
            }
            _ => None,
        };
        reports.push(VerificationReport {
            r: u.r,
            symbolic_max_coeff,
            numeric_max_residual,
            passed,
            notes,
        });
    }
    Ok(reports)
}

/// Outcome of testing both candidate radicands for `k0`.
///
/// The system form takes `k0^2 = m0^2 + g0^2 + d0^2 - mass`; the printed
/// closed forms circulate with `k0^2 = mass + m0^2 + g0^2 + d0^2`. Both
/// exponentials are pushed through the operator and the residual constants
/// are reported; they agree only for a massless equation.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RadicandVerdict {
    pub system_residual: [f64; 2],
    pub printed_residual: [f64; 2],
    pub system_annihilates: bool,
    pub printed_annihilates: bool,
}

impl RadicandVerdict {
    pub fn verdict_text(&self) -> String {
        let fmt = |v: [f64; 2]| format!("{:+.6e}{:+.6e}i", v[0], v[1]);
        match (self.system_annihilates, self.printed_annihilates) {
            (true, true) => format!(
                "both radicand forms annihilate the operator (residuals {} and {}); the mass term vanishes",
                fmt(self.system_residual),
                fmt(self.printed_residual)
            ),
            (true, false) => format!(
                "system form (m0^2+g0^2+d0^2-mass) annihilates the operator (residual {}); printed form (mass+m0^2+g0^2+d0^2) does not (residual {})",
                fmt(self.system_residual),
                fmt(self.printed_residual)
            ),
            (false, true) => format!(
                "printed form annihilates the operator (residual {}); system form does not (residual {})",
                fmt(self.printed_residual),
                fmt(self.system_residual)
            ),
            (false, false) => format!(
                "neither radicand form annihilates the operator (residuals {} and {})",
                fmt(self.system_residual),
                fmt(self.printed_residual)
            ),
        }
    }
}

/// Build the zeroth family member with each radicand variant and report
/// which one the operator actually annihilates.
pub fn adjudicate_radicand(
    mass: Complex64,
    row0: &DirectionRow<Complex64>,
    dim: Dim,
) -> RadicandVerdict {
    let sq_sum = row0.m * row0.m + row0.g * row0.g + row0.d * row0.d;
    let residual_for = |k0: Complex64| -> Complex64 {
        let u = SolutionTerm {
            r: 0,
            poly: SparsePoly::constant(4, Complex64::new(1.0, 0.0)),
            xi0: LinearForm::new(k0, row0.m, row0.g, row0.d),
        };
        let q = apply_kg_operator(&u, &mass, Signature::new(dim))
            .expect("constant factor in four variables");
        q.coeff(&[0, 0, 0, 0])
    };
    let system = residual_for((sq_sum - mass).sqrt());
    let printed = residual_for((mass + sq_sum).sqrt());
    let tol = 1e-10 * (1.0 + mass.norm() + sq_sum.norm());
    RadicandVerdict {
        system_residual: [system.re, system.im],
        printed_residual: [printed.re, printed.im],
        system_annihilates: system.norm() <= tol,
        printed_annihilates: printed.norm() <= tol,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charsys::{self, Branch, DirectionTable};
    use crate::family;
    use num_traits::{One, Zero};
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn exp_x0() -> SolutionTerm<Complex64> {
        SolutionTerm {
            r: 0,
            poly: SparsePoly::constant(4, Complex64::one()),
            xi0: LinearForm::new(
                Complex64::one(),
                Complex64::zero(),
                Complex64::zero(),
                Complex64::zero(),
            ),
        }
    }

    #[test]
    fn operator_on_plain_exponential() {
        // exp(x0) with mass -1: annihilated; with mass 0: residual 1
        let u = exp_x0();
        let q = apply_kg_operator(&u, &c(-1.0, 0.0), Signature::new(Dim::Four)).unwrap();
        assert!(q.is_zero());
        let q = apply_kg_operator(&u, &Complex64::zero(), Signature::new(Dim::Four)).unwrap();
        assert_eq!(q, SparsePoly::constant(4, Complex64::one()));
    }

    #[test]
    fn dimension_mismatch_detected() {
        let u = SolutionTerm {
            r: 0,
            poly: SparsePoly::constant(4, Complex64::one()),
            xi0: LinearForm::new(
                Complex64::one(),
                Complex64::zero(),
                Complex64::zero(),
                Complex64::one(),
            ),
        };
        assert_eq!(
            apply_kg_operator(&u, &c(-1.0, 0.0), Signature::new(Dim::Three)).unwrap_err(),
            VerifyError::DimensionMismatch { var: 3, dim: 3 }
        );
    }

    #[test]
    fn family_members_are_annihilated() {
        let rows = vec![
            DirectionRow::new(c(0.5, 0.2), c(-0.4, 0.1), c(0.3, -0.6)),
            DirectionRow::new(c(0.1, -0.3), c(0.7, 0.2), c(-0.5, 0.1)),
            DirectionRow::new(c(-0.2, 0.4), c(0.3, -0.7), c(0.6, 0.2)),
            DirectionRow::new(c(0.8, 0.1), c(-0.1, 0.5), c(0.2, -0.2)),
        ];
        let table = DirectionTable::new(Dim::Four, rows);
        let mass = c(-0.9, 0.4);
        let sols = family::build_solutions(&mass, &table, Branch::Plus, 3).unwrap();
        for u in &sols {
            let q = apply_kg_operator(u, &mass, Signature::new(Dim::Four)).unwrap();
            assert!(
                q.max_abs() <= 1e-10 * u.poly.max_abs().max(1.0),
                "residual {} at r = {}",
                q.max_abs(),
                u.r
            );
        }
    }

    #[test]
    fn numeric_residual_on_plain_exponential() {
        let u = exp_x0();
        let pts = sample_points(Dim::Four, 10, 7);
        let res = numeric_residual(&u, c(-1.0, 0.0), Signature::new(Dim::Four), &pts, 1e-3);
        assert!(res < 1e-8, "residual {res}");
    }

    #[test]
    fn numeric_residual_zero_solution() {
        let u = SolutionTerm {
            r: 1,
            poly: SparsePoly::new_zero(4),
            xi0: LinearForm::new(
                Complex64::one(),
                Complex64::zero(),
                Complex64::zero(),
                Complex64::zero(),
            ),
        };
        let pts = sample_points(Dim::Four, 5, 42);
        assert_eq!(
            numeric_residual(&u, c(-1.0, 0.0), Signature::new(Dim::Four), &pts, 1e-3),
            0.0
        );
    }

    #[test]
    fn corrupted_solution_is_detected() {
        // U_1 for mass -1, zero rows beyond a nonzero xi1 direction
        let rows = vec![
            DirectionRow::zero(),
            DirectionRow::new(c(1.0, 0.0), Complex64::zero(), Complex64::zero()),
        ];
        let table = DirectionTable::new(Dim::Four, rows);
        let mass = c(-1.0, 0.0);
        let sols = family::build_solutions(&mass, &table, Branch::Plus, 1).unwrap();
        let mut bad = sols[1].clone();
        // perturb the x0 coefficient of the factor by 1e-3
        let delta = SparsePoly::monomial(4, vec![1, 0, 0, 0], c(1e-3, 0.0)).unwrap();
        bad.poly = bad.poly.add(&delta).unwrap();
        let pts = sample_points(Dim::Four, 20, 42);
        let res = numeric_residual(&bad.to_c64(), mass, Signature::new(Dim::Four), &pts, 1e-3);
        assert!(res > 1e-4, "detector too weak: {res}");
        // the pristine member passes
        let good = numeric_residual(
            &sols[1].to_c64(),
            mass,
            Signature::new(Dim::Four),
            &pts,
            1e-3,
        );
        assert!(good < 1e-6, "good member flagged: {good}");
    }

    #[test]
    fn radicand_adjudication() {
        // mass 0: both variants coincide
        let row = DirectionRow::new(Complex64::one(), Complex64::zero(), Complex64::zero());
        let v = adjudicate_radicand(Complex64::zero(), &row, Dim::Four);
        assert!(v.system_annihilates && v.printed_annihilates);

        // mass -1, zero row: system form passes, printed form fails with
        // residual 2 * mass = -2
        let v = adjudicate_radicand(c(-1.0, 0.0), &DirectionRow::zero(), Dim::Four);
        assert!(v.system_annihilates);
        assert!(!v.printed_annihilates);
        assert!((v.printed_residual[0] - (-2.0)).abs() < 1e-12);
        assert!(v.printed_residual[1].abs() < 1e-12);

        // generic complex mass: printed residual equals 2 * mass
        let mass = c(2.0, 1.0);
        let row = DirectionRow::new(c(0.3, -0.4), c(0.8, 0.2), c(-0.1, 0.6));
        let v = adjudicate_radicand(mass, &row, Dim::Four);
        assert!(v.system_annihilates);
        let printed = c(v.printed_residual[0], v.printed_residual[1]);
        assert!((printed - 2.0 * mass).norm() < 1e-10);
    }

    #[test]
    fn dim_reduction_consistency() {
        // with the d column zero, the dim-4 residual equals the dim-3 residual
        let rows = vec![
            DirectionRow::new(c(0.5, 0.1), c(-0.2, 0.3), Complex64::zero()),
            DirectionRow::new(c(0.4, -0.6), c(0.1, 0.2), Complex64::zero()),
        ];
        let t4 = DirectionTable::new(Dim::Four, rows.clone());
        let t3 = DirectionTable::new(Dim::Three, rows);
        let mass = c(0.7, -0.2);
        let s4 = family::build_solutions(&mass, &t4, Branch::Plus, 1).unwrap();
        let s3 = family::build_solutions(&mass, &t3, Branch::Plus, 1).unwrap();
        for (u4, u3) in s4.iter().zip(&s3) {
            assert_eq!(u4.poly, u3.poly);
            let q4 = apply_kg_operator(u4, &mass, Signature::new(Dim::Four)).unwrap();
            let q3 = apply_kg_operator(u3, &mass, Signature::new(Dim::Three)).unwrap();
            assert_eq!(q4, q3);
        }
    }

    proptest! {
        #[test]
        fn operator_is_linear(
            (alpha, beta) in ((-2.0f64..2.0, -2.0f64..2.0), (-2.0f64..2.0, -2.0f64..2.0)),
            exps_a in proptest::collection::vec(0u32..3, 4),
            exps_b in proptest::collection::vec(0u32..3, 4))
        {
            let xi0 = LinearForm::new(c(0.4, -0.2), c(0.3, 0.1), c(-0.5, 0.2), c(0.1, 0.6));
            let mass = c(-0.8, 0.3);
            let a = c(alpha.0, alpha.1);
            let b = c(beta.0, beta.1);
            let pa = SparsePoly::monomial(4, exps_a, c(1.0, 0.5)).unwrap();
            let pb = SparsePoly::monomial(4, exps_b, c(-0.7, 1.2)).unwrap();
            let mk = |poly: SparsePoly<Complex64>| SolutionTerm { r: 0, poly, xi0: xi0.clone() };
            let combo = mk(pa.scale(&a).add(&pb.scale(&b)).unwrap());
            let lhs = apply_kg_operator(&combo, &mass, Signature::new(Dim::Four)).unwrap();
            let qa = apply_kg_operator(&mk(pa), &mass, Signature::new(Dim::Four)).unwrap();
            let qb = apply_kg_operator(&mk(pb), &mass, Signature::new(Dim::Four)).unwrap();
            let rhs = qa.scale(&a).add(&qb.scale(&b)).unwrap();
            let scale = lhs.max_abs().max(rhs.max_abs()).max(1.0);
            prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-12 * scale);
        }
    }

    #[test]
    fn deep_members_pass_both_checks() {
        // a single deeper spot check: r up to 8, both branches
        let rows: Vec<DirectionRow<Complex64>> = (0..9)
            .map(|i| {
                let t = i as f64;
                DirectionRow::new(
                    c(0.3 - 0.05 * t, 0.04 * t),
                    c(-0.2 + 0.03 * t, 0.05 - 0.02 * t),
                    c(0.1 * t - 0.4, 0.02 * t),
                )
            })
            .collect();
        let table = DirectionTable::new(Dim::Four, rows);
        let mass = c(-1.1, 0.6);
        for branch in [Branch::Plus, Branch::Minus] {
            let chain = charsys::solve_chain(&mass, &table, branch, 8).unwrap();
            let sols = family::build_solutions_from_chain(&chain, &table, 8).unwrap();
            let reports = verify_family(
                &sols,
                &mass,
                Signature::new(Dim::Four),
                1e-10,
                Some(&NumericParams {
                    points: 5,
                    ..NumericParams::default()
                }),
            )
            .unwrap();
            for report in &reports {
                assert!(report.passed, "r = {}: {}", report.r, report.notes);
            }
        }
    }
}
