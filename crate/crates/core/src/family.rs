//! The solution family `U_r = P_r(x) exp(xi0(x))`, generated three
//! independent ways:
//!
//! * the direct recurrence for the polynomial factors `A~_r`,
//! * the resolvent expansion plus the residue operator `P`,
//! * components of the algebra exponential evaluated at a point.
//!
//! The factor recurrences run in exact rational arithmetic; substitution of
//! the chain into the space variables may be exact or double precision.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::charsys::{self, Branch, CharSysError, DirectionTable, KChain};
use crate::nilalgebra::{AlgebraError, NilElement};
use crate::polynomial::{LinearForm, PolyError, SparsePoly};
use crate::scalar::{factorial_big, RatComplex, Scalar};

#[derive(Debug, Error, PartialEq)]
pub enum FamilyError {
    #[error(transparent)]
    CharSys(#[from] CharSysError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// The exact polynomial factors `A~_0..A~_R`, all over `xi1..xiR`.
#[derive(Clone, Debug, PartialEq)]
pub struct AtildeFamily {
    polys: Vec<SparsePoly<RatComplex>>,
}

impl AtildeFamily {
    pub fn r_max(&self) -> usize {
        self.polys.len() - 1
    }

    pub fn get(&self, r: usize) -> &SparsePoly<RatComplex> {
        &self.polys[r]
    }

    pub fn polys(&self) -> &[SparsePoly<RatComplex>] {
        &self.polys
    }
}

/// Factor recurrence: `A~_0 = 1` and
/// `A~_r = sum_{j=1..r} (j/r) xi_j A~_(r-j)`.
pub fn atilde_recurrence(r_max: usize) -> AtildeFamily {
    let nvars = r_max;
    let mut polys = vec![SparsePoly::constant(nvars, RatComplex::one())];
    for r in 1..=r_max {
        let mut acc = SparsePoly::new_zero(nvars);
        for j in 1..=r {
            let xi_j = SparsePoly::var(nvars, j - 1).expect("j <= nvars");
            let weight = RatComplex::from_ratio(j as i64, r as i64);
            let term = xi_j
                .scale(&weight)
                .mul(&polys[r - j])
                .expect("same universe");
            acc = acc.add(&term).expect("same universe");
        }
        polys.push(acc);
    }
    AtildeFamily { polys }
}

/// Resolvent coefficient `A_r`: numerators of the poles `(t - xi0)^(-s)`,
/// keyed by pole order `s`.
#[derive(Clone, Debug, PartialEq)]
pub struct ResolventExpansion {
    pub r: usize,
    pub parts: BTreeMap<usize, SparsePoly<RatComplex>>,
}

impl ResolventExpansion {
    pub fn max_pole_order(&self) -> usize {
        self.parts.keys().copied().max().unwrap_or(0)
    }
}

/// Resolvent recurrence: `A_0 = (t - xi0)^(-1)` and
/// `A_r = (t - xi0)^(-1) (xi_r A_0 + xi_(r-1) A_1 + ... + xi_1 A_(r-1))`;
/// each multiplication by the pole shifts every order up by one.
pub fn resolvent_expand(r_max: usize) -> Vec<ResolventExpansion> {
    let nvars = r_max;
    let mut out = Vec::with_capacity(r_max + 1);
    let mut a0_parts = BTreeMap::new();
    a0_parts.insert(1, SparsePoly::constant(nvars, RatComplex::one()));
    out.push(ResolventExpansion {
        r: 0,
        parts: a0_parts,
    });
    for r in 1..=r_max {
        let mut parts: BTreeMap<usize, SparsePoly<RatComplex>> = BTreeMap::new();
        for j in 1..=r {
            let xi_j = SparsePoly::var(nvars, j - 1).expect("j <= nvars");
            for (s, num) in &out[r - j].parts {
                let shifted = xi_j.mul(num).expect("same universe");
                match parts.get_mut(&(s + 1)) {
                    Some(acc) => *acc = acc.add(&shifted).expect("same universe"),
                    None => {
                        parts.insert(s + 1, shifted);
                    }
                }
            }
        }
        parts.retain(|_, p| !p.is_zero());
        out.push(ResolventExpansion { r, parts });
    }
    out
}

/// The residue operator `P`: replace `(t - xi0)^(-s)` by `1/(s-1)!` and sum.
pub fn apply_p(a: &ResolventExpansion) -> SparsePoly<RatComplex> {
    let nvars = a.parts.values().next().map(|p| p.nvars()).unwrap_or(0);
    let mut acc = SparsePoly::new_zero(nvars);
    for (s, num) in &a.parts {
        let inv_fact = RatComplex::new(
            BigRational::new(BigInt::one(), factorial_big(s - 1)),
            BigRational::zero(),
        );
        acc = acc.add(&num.scale(&inv_fact)).expect("same universe");
    }
    acc
}

/// Integer partitions of `r`, parts in descending order.
pub fn partitions(r: usize) -> Vec<Vec<u32>> {
    fn rec(remaining: u32, max_part: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if remaining == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=remaining.min(max_part)).rev() {
            cur.push(p);
            rec(remaining - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(r as u32, r as u32, &mut Vec::new(), &mut out);
    out
}

/// Brute-force oracle for the factors: enumerate the partitions
/// `r = sum j*c_j` and sum `prod_j xi_j^(c_j) / c_j!`, which is the
/// `rho^r` coefficient of `exp(sum_j xi_j rho^j)` written out directly.
pub fn partition_oracle(r: usize, nvars: usize) -> SparsePoly<RatComplex> {
    assert!(nvars >= r, "need at least {r} xi-variables");
    let mut acc = SparsePoly::new_zero(nvars);
    for partition in partitions(r) {
        let mut exps = vec![0u32; nvars];
        for part in &partition {
            exps[(part - 1) as usize] += 1;
        }
        let mut denom = BigInt::one();
        for &count in &exps {
            if count > 1 {
                denom *= factorial_big(count as usize);
            }
        }
        let coeff = RatComplex::new(BigRational::new(BigInt::one(), denom), BigRational::zero());
        acc = acc
            .add(&SparsePoly::monomial(nvars, exps, coeff).expect("consistent exps"))
            .expect("same universe");
    }
    acc
}

/// Weight of a monomial in the chain variables: `xi_j` weighs `j`.
pub fn xi_weighted_degree(exps: &[u32]) -> u64 {
    exps.iter()
        .enumerate()
        .map(|(j, &e)| (j as u64 + 1) * e as u64)
        .sum()
}

/// Evaluate the chain forms at a space point and exponentiate in the
/// algebra of order `R+1`. Component `r` equals
/// `exp(xi0(point)) * A~_r(xi1(point), ..., xir(point))`.
pub fn exp_component_path(
    chain: &KChain<Complex64>,
    table: &DirectionTable<Complex64>,
    point: &[f64; 4],
) -> Result<Vec<Complex64>, FamilyError> {
    let n = chain.k.len();
    if table.rows.len() < n {
        return Err(CharSysError::TableTooShort {
            need: n,
            have: table.rows.len(),
        }
        .into());
    }
    let coeffs: Vec<Complex64> = (0..n)
        .map(|r| {
            chain.k[r] * point[0]
                + table.rows[r].m * point[1]
                + table.rows[r].g * point[2]
                + table.rows[r].d * point[3]
        })
        .collect();
    let zeta = NilElement::from_coeffs(coeffs)?;
    Ok(zeta.exp()?.coeffs().to_vec())
}

/// One family member: polynomial factor in `x0..x3` plus the shared
/// exponent form.
#[derive(Clone, Debug, PartialEq)]
pub struct SolutionTerm<S: Scalar> {
    pub r: usize,
    pub poly: SparsePoly<S>,
    pub xi0: LinearForm<S>,
}

impl<S: Scalar> SolutionTerm<S> {
    pub fn to_c64(&self) -> SolutionTerm<Complex64> {
        SolutionTerm {
            r: self.r,
            poly: self.poly.map_scalars(Scalar::to_c64),
            xi0: self.xi0.map(Scalar::to_c64),
        }
    }
}

impl SolutionTerm<Complex64> {
    /// `P_r(x) * exp(xi0(x))` at a real point.
    pub fn eval(&self, point: &[f64; 4]) -> Complex64 {
        let x: [Complex64; 4] = point.map(|v| Complex64::new(v, 0.0));
        let p = self.poly.eval(&x).expect("four space variables");
        p * self.xi0.eval(&x).exp()
    }
}

/// Solve the chain, run the factor recurrence and substitute the chain
/// forms, producing `U_0..U_R`.
pub fn build_solutions<S: Scalar>(
    mass: &S,
    table: &DirectionTable<S>,
    branch: Branch,
    r_max: usize,
) -> Result<Vec<SolutionTerm<S>>, FamilyError> {
    let chain = charsys::solve_chain(mass, table, branch, r_max)?;
    build_solutions_from_chain(&chain, table, r_max)
}

/// Same as [`build_solutions`] but with a chain already in hand.
pub fn build_solutions_from_chain<S: Scalar>(
    chain: &KChain<S>,
    table: &DirectionTable<S>,
    r_max: usize,
) -> Result<Vec<SolutionTerm<S>>, FamilyError> {
    if chain.k.len() < r_max + 1 || table.rows.len() < r_max + 1 {
        return Err(CharSysError::TableTooShort {
            need: r_max + 1,
            have: chain.k.len().min(table.rows.len()),
        }
        .into());
    }
    let family = atilde_recurrence(r_max);
    let forms: Vec<LinearForm<S>> = (1..=r_max)
        .map(|r| {
            LinearForm::new(
                chain.k[r].clone(),
                table.rows[r].m.clone(),
                table.rows[r].g.clone(),
                table.rows[r].d.clone(),
            )
        })
        .collect();
    let xi0 = LinearForm::new(
        chain.k[0].clone(),
        table.rows[0].m.clone(),
        table.rows[0].g.clone(),
        table.rows[0].d.clone(),
    );
    let mut out = Vec::with_capacity(r_max + 1);
    for r in 0..=r_max {
        let factor: SparsePoly<S> = family.get(r).map_scalars(|c| S::from_rat(c));
        let poly = factor.substitute_linear(&forms)?;
        out.push(SolutionTerm {
            r,
            poly,
            xi0: xi0.clone(),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charsys::{Dim, DirectionRow};
    use proptest::prelude::*;

    fn rc(n: i64, d: i64) -> RatComplex {
        RatComplex::from_ratio(n, d)
    }

    fn xi_poly(nvars: usize, terms: &[(i64, i64, &[u32])]) -> SparsePoly<RatComplex> {
        let mut acc = SparsePoly::new_zero(nvars);
        for &(n, d, exps) in terms {
            let mut e = exps.to_vec();
            e.resize(nvars, 0);
            acc = acc
                .add(&SparsePoly::monomial(nvars, e, rc(n, d)).unwrap())
                .unwrap();
        }
        acc
    }

    #[test]
    fn first_factors() {
        let fam = atilde_recurrence(3);
        assert_eq!(fam.get(0), &xi_poly(3, &[(1, 1, &[])]));
        assert_eq!(fam.get(1), &xi_poly(3, &[(1, 1, &[1])]));
        assert_eq!(fam.get(2), &xi_poly(3, &[(1, 1, &[0, 1]), (1, 2, &[2])]));
        assert_eq!(
            fam.get(3),
            &xi_poly(3, &[(1, 1, &[0, 0, 1]), (1, 1, &[1, 1]), (1, 6, &[3])])
        );
    }

    #[test]
    fn fifth_factor_matches_known_form() {
        // xi5 + xi1 xi4 + xi2 xi3 + (xi1 xi2^2 + xi1^2 xi3)/2 + xi1^3 xi2/6 + xi1^5/120
        let fam = atilde_recurrence(5);
        let expected = xi_poly(
            5,
            &[
                (1, 1, &[0, 0, 0, 0, 1]),
                (1, 1, &[1, 0, 0, 1]),
                (1, 1, &[0, 1, 1]),
                (1, 2, &[1, 2]),
                (1, 2, &[2, 0, 1]),
                (1, 6, &[3, 1]),
                (1, 120, &[5]),
            ],
        );
        assert_eq!(fam.get(5), &expected);
    }

    #[test]
    fn resolvent_initial_functions() {
        let res = resolvent_expand(3);
        // A_1 = xi1 / (t-xi0)^2
        assert_eq!(res[1].parts.len(), 1);
        assert_eq!(res[1].parts[&2], xi_poly(3, &[(1, 1, &[1])]));
        // A_3 = xi3/(t-xi0)^2 + 2 xi1 xi2/(t-xi0)^3 + xi1^3/(t-xi0)^4
        assert_eq!(res[3].parts[&2], xi_poly(3, &[(1, 1, &[0, 0, 1])]));
        assert_eq!(res[3].parts[&3], xi_poly(3, &[(2, 1, &[1, 1])]));
        assert_eq!(res[3].parts[&4], xi_poly(3, &[(1, 1, &[3])]));
    }

    #[test]
    fn resolvent_pole_structure() {
        let res = resolvent_expand(6);
        assert_eq!(res[0].parts.len(), 1);
        assert!(res[0].parts[&1].num_terms() == 1);
        // top pole of A_6 is xi1^6 / (t-xi0)^7
        assert_eq!(res[6].max_pole_order(), 7);
        assert_eq!(res[6].parts[&7], xi_poly(6, &[(1, 1, &[6])]));
        for (r, expansion) in res.iter().enumerate().skip(1) {
            for (&s, num) in &expansion.parts {
                assert!((2..=r + 1).contains(&s), "pole {s} out of range for A_{r}");
                for (mono, _) in num.terms() {
                    assert_eq!(xi_weighted_degree(mono.exps()), r as u64);
                }
            }
        }
    }

    #[test]
    fn residue_operator_examples() {
        let res = resolvent_expand(3);
        // P(A_3) = xi3 + xi1 xi2 + xi1^3/3!
        let got = apply_p(&res[3]);
        assert_eq!(
            got,
            xi_poly(3, &[(1, 1, &[0, 0, 1]), (1, 1, &[1, 1]), (1, 6, &[3])])
        );
        // P(A_1) = xi1
        assert_eq!(apply_p(&res[1]), xi_poly(3, &[(1, 1, &[1])]));
        // P(A_0) = 1
        assert_eq!(apply_p(&res[0]), xi_poly(3, &[(1, 1, &[])]));
    }

    #[test]
    fn three_paths_agree_exactly() {
        let r_max = 12;
        let fam = atilde_recurrence(r_max);
        let res = resolvent_expand(r_max);
        for (r, expansion) in res.iter().enumerate() {
            assert_eq!(&apply_p(expansion), fam.get(r), "P path differs at r = {r}");
            assert_eq!(
                &partition_oracle(r, r_max),
                fam.get(r),
                "partition oracle differs at r = {r}"
            );
        }
    }

    #[test]
    fn partition_counts() {
        let expected = [1usize, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77];
        for (r, &count) in expected.iter().enumerate() {
            assert_eq!(partitions(r).len(), count, "p({r})");
            assert_eq!(
                atilde_recurrence(12).get(r).num_terms(),
                count,
                "terms of factor {r}"
            );
        }
    }

    #[test]
    fn partition_oracle_examples() {
        // r = 2: xi2 + xi1^2/2
        assert_eq!(
            partition_oracle(2, 2),
            xi_poly(2, &[(1, 1, &[0, 1]), (1, 2, &[2])])
        );
        // r = 0: 1
        assert_eq!(partition_oracle(0, 0), xi_poly(0, &[(1, 1, &[])]));
        // r = 4: xi4 + xi1 xi3 + xi2^2/2 + xi1^2 xi2/2 + xi1^4/24
        assert_eq!(
            partition_oracle(4, 4),
            xi_poly(
                4,
                &[
                    (1, 1, &[0, 0, 0, 1]),
                    (1, 1, &[1, 0, 1]),
                    (1, 2, &[0, 2]),
                    (1, 2, &[2, 1]),
                    (1, 24, &[4]),
                ]
            )
        );
    }

    #[test]
    fn weighted_rescaling() {
        // replacing xi_j by lambda^j xi_j multiplies the factor by lambda^r
        let r_max = 8;
        let fam = atilde_recurrence(r_max);
        let lambda = rc(2, 3);
        for r in 0..=r_max {
            let mut scaled = SparsePoly::new_zero(r_max);
            for (mono, c) in fam.get(r).terms() {
                let mut factor = RatComplex::one();
                for _ in 0..xi_weighted_degree(mono.exps()) {
                    factor = factor * lambda.clone();
                }
                scaled = scaled
                    .add(
                        &SparsePoly::monomial(r_max, mono.exps().to_vec(), c.clone() * factor)
                            .unwrap(),
                    )
                    .unwrap();
            }
            let mut lambda_r = RatComplex::one();
            for _ in 0..r {
                lambda_r = lambda_r * lambda.clone();
            }
            assert_eq!(scaled, fam.get(r).scale(&lambda_r), "r = {r}");
        }
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn exp_path_trivial_cases() {
        // all rows zero, mass -1: zeta = x0 at order 3, components [e, 0, 0]
        let table = DirectionTable::new(Dim::Four, vec![DirectionRow::zero(); 3]);
        let chain = charsys::solve_chain(&c(-1.0, 0.0), &table, Branch::Plus, 2).unwrap();
        let comps = exp_component_path(&chain, &table, &[1.0, 0.0, 0.0, 0.0]).unwrap();
        assert!((comps[0] - c(std::f64::consts::E, 0.0)).norm() < 1e-12);
        assert!(comps[1].norm() < 1e-15 && comps[2].norm() < 1e-15);
    }

    #[test]
    fn exp_path_pure_rho() {
        // xi0 = 0, xi1 = 1, rest zero: components [1, 1, 1/2]
        let rows = vec![
            DirectionRow::zero(),
            DirectionRow::new(c(1.0, 0.0), Complex64::zero(), Complex64::zero()),
            DirectionRow::zero(),
        ];
        let table = DirectionTable::new(Dim::Four, rows);
        let chain = KChain {
            branch: Branch::Plus,
            k: vec![Complex64::zero(); 3],
        };
        let comps = exp_component_path(&chain, &table, &[0.0, 1.0, 0.0, 0.0]).unwrap();
        assert!((comps[0] - c(1.0, 0.0)).norm() < 1e-15);
        assert!((comps[1] - c(1.0, 0.0)).norm() < 1e-15);
        assert!((comps[2] - c(0.5, 0.0)).norm() < 1e-15);
    }

    proptest! {
        #[test]
        fn exp_path_matches_factor_evaluation(
            values in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 9),
            point in (( -1.0f64..1.0), (-1.0f64..1.0), (-1.0f64..1.0), (-1.0f64..1.0)))
        {
            // arbitrary xi values: the identity needs no solved chain
            let r_max = 8;
            let rows: Vec<DirectionRow<Complex64>> = values
                .iter()
                .map(|&(a, b)| DirectionRow::new(Complex64::new(a, b), Complex64::zero(), Complex64::zero()))
                .collect();
            let k: Vec<Complex64> = values
                .iter()
                .map(|&(a, b)| Complex64::new(b, -a))
                .collect();
            let table = DirectionTable::new(Dim::Four, rows.clone());
            let chain = KChain { branch: Branch::Plus, k };
            let pt = [point.0, point.1, point.2, point.3];
            let comps = exp_component_path(&chain, &table, &pt).unwrap();

            let fam = atilde_recurrence(r_max);
            let xi: Vec<Complex64> = (0..=r_max)
                .map(|r| chain.k[r] * pt[0] + rows[r].m * pt[1])
                .collect();
            let exp_xi0 = xi[0].exp();
            for (r, comp) in comps.iter().enumerate() {
                let factor = fam
                    .get(r)
                    .map_scalars(Scalar::to_c64)
                    .eval(&xi[1..])
                    .unwrap();
                let expected = exp_xi0 * factor;
                let err = (comp - expected).norm();
                prop_assert!(err <= 1e-9 * expected.norm().max(1.0), "r = {}: {}", r, err);
            }
        }
    }

    #[test]
    fn build_solutions_trivial_and_linear() {
        // R = 0, mass -1, zero rows: U_0 = exp(x0)
        let table = DirectionTable::new(Dim::Four, vec![DirectionRow::zero()]);
        let sols = build_solutions(&c(-1.0, 0.0), &table, Branch::Plus, 0).unwrap();
        assert_eq!(sols.len(), 1);
        assert_eq!(sols[0].poly, SparsePoly::constant(4, Complex64::one()));
        assert_eq!(sols[0].xi0.k, Complex64::one());

        // R = 1: the factor of U_1 is the xi1 form itself
        let rows = vec![
            DirectionRow::new(c(0.4, 0.1), c(-0.3, 0.2), c(0.1, 0.0)),
            DirectionRow::new(c(0.2, -0.5), c(0.6, 0.3), c(-0.2, 0.4)),
        ];
        let table = DirectionTable::new(Dim::Four, rows.clone());
        let mass = c(0.8, -0.4);
        let sols = build_solutions(&mass, &table, Branch::Plus, 1).unwrap();
        let chain = charsys::solve_chain(&mass, &table, Branch::Plus, 1).unwrap();
        let k1 =
            (rows[0].m * rows[1].m + rows[0].g * rows[1].g + rows[0].d * rows[1].d) / chain.k[0];
        let expected = LinearForm::new(k1, rows[1].m, rows[1].g, rows[1].d).to_poly();
        assert!(sols[1].poly.max_abs_diff(&expected) < 1e-12);
        // degree bound
        for s in &sols {
            assert!(s.poly.total_degree() as usize <= s.r);
        }
    }

    #[test]
    fn built_solutions_match_exponential_components() {
        // the substituted member evaluated at a point equals the matching
        // component of exp(zeta) at that point
        let rows = vec![
            DirectionRow::new(c(0.4, 0.1), c(-0.3, 0.2), c(0.1, 0.0)),
            DirectionRow::new(c(0.2, -0.5), c(0.6, 0.3), c(-0.2, 0.4)),
            DirectionRow::new(c(-0.1, 0.3), c(0.2, -0.4), c(0.5, 0.1)),
            DirectionRow::new(c(0.3, 0.2), c(-0.2, 0.1), c(0.1, -0.3)),
        ];
        let table = DirectionTable::new(Dim::Four, rows);
        let mass = c(-0.7, 0.5);
        let chain = charsys::solve_chain(&mass, &table, Branch::Plus, 3).unwrap();
        let sols = build_solutions_from_chain(&chain, &table, 3).unwrap();
        for point in [
            [0.3, -0.8, 0.5, 0.9],
            [-1.0, 0.2, -0.4, 0.1],
            [0.0, 0.0, 0.0, 1.0],
        ] {
            let comps = exp_component_path(&chain, &table, &point).unwrap();
            for u in &sols {
                let direct = u.eval(&point);
                let err = (direct - comps[u.r]).norm();
                assert!(
                    err <= 1e-12 * comps[u.r].norm().max(1.0),
                    "r = {}: {err:.3e}",
                    u.r
                );
            }
        }
    }

    #[test]
    fn quadrature_validates_residue_operator() {
        // (1/2 pi i) contour integral of e^t A_r around xi0 equals
        // exp(xi0) * A~_r; the trapezoid rule on a circle converges
        // spectrally, so a few hundred nodes reach near machine precision.
        let r_max = 5;
        let res = resolvent_expand(r_max);
        let fam = atilde_recurrence(r_max);
        let xi0 = c(0.3, -0.2);
        let xi: Vec<Complex64> = (1..=r_max)
            .map(|j| c(0.4 - 0.1 * j as f64, 0.05 * j as f64))
            .collect();
        let nodes = 512;
        let radius = 1.0;
        for (r, expansion) in res.iter().enumerate() {
            let mut integral = Complex64::zero();
            for node in 0..nodes {
                let theta = 2.0 * std::f64::consts::PI * node as f64 / nodes as f64;
                let offset = radius * Complex64::new(theta.cos(), theta.sin());
                let t = xi0 + offset;
                let mut a_r = Complex64::zero();
                for (&s, num) in &expansion.parts {
                    let num_val = num.map_scalars(Scalar::to_c64).eval(&xi).unwrap();
                    a_r += num_val * offset.powi(-(s as i32));
                }
                // dt / (2 pi i) = offset dtheta / (2 pi)
                integral += t.exp() * a_r * offset;
            }
            integral /= nodes as f64;
            let expected = xi0.exp() * fam.get(r).map_scalars(Scalar::to_c64).eval(&xi).unwrap();
            assert!(
                (integral - expected).norm() <= 1e-9 * expected.norm().max(1.0),
                "r = {r}"
            );
        }
    }
}
