//! Golden fixtures: the first factors, resolvent coefficients and chain
//! formulas, entered here literally as closed forms, independent of the
//! recurrences that generate them.
//!
//! These freeze the expected output of the generator. A transcription bug
//! in either place shows up as a mismatch, which is the point.

use std::collections::BTreeMap;

use crate::family::ResolventExpansion;
use crate::polynomial::SparsePoly;
use crate::scalar::{RatComplex, Scalar};

fn xi_poly(nvars: usize, terms: &[(i64, i64, &[u32])]) -> SparsePoly<RatComplex> {
    let mut acc = SparsePoly::new_zero(nvars);
    for &(num, den, exps) in terms {
        let mut e = exps.to_vec();
        e.resize(nvars, 0);
        let mono = SparsePoly::monomial(nvars, e, RatComplex::from_ratio(num, den))
            .expect("consistent fixture");
        acc = acc.add(&mono).expect("consistent fixture");
    }
    acc
}

/// First six factors, in five chain variables:
///
/// ```text
/// A~_0 = 1
/// A~_1 = xi1
/// A~_2 = xi2 + xi1^2/2!
/// A~_3 = xi3 + xi1 xi2 + xi1^3/3!
/// A~_4 = xi4 + (2 xi1 xi3 + xi2^2)/2! + 3 xi1^2 xi2/3! + xi1^4/4!
/// A~_5 = xi5 + xi1 xi4 + xi2 xi3 + (xi1 xi2^2 + xi1^2 xi3)/2!
///        + xi1^3 xi2/3! + xi1^5/5!
/// ```
pub fn atilde_expected() -> Vec<SparsePoly<RatComplex>> {
    vec![
        xi_poly(5, &[(1, 1, &[])]),
        xi_poly(5, &[(1, 1, &[1])]),
        xi_poly(5, &[(1, 1, &[0, 1]), (1, 2, &[2])]),
        xi_poly(5, &[(1, 1, &[0, 0, 1]), (1, 1, &[1, 1]), (1, 6, &[3])]),
        xi_poly(
            5,
            &[
                (1, 1, &[0, 0, 0, 1]),
                (2, 2, &[1, 0, 1]),
                (1, 2, &[0, 2]),
                (3, 6, &[2, 1]),
                (1, 24, &[4]),
            ],
        ),
        xi_poly(
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
        ),
    ]
}

/// First seven resolvent coefficients, in six chain variables; entries are
/// `pole order s -> numerator of (t - xi0)^(-s)`.
pub fn resolvent_expected() -> Vec<ResolventExpansion> {
    let expansion = |r: usize, parts: Vec<(usize, SparsePoly<RatComplex>)>| ResolventExpansion {
        r,
        parts: parts.into_iter().collect::<BTreeMap<_, _>>(),
    };
    vec![
        expansion(0, vec![(1, xi_poly(6, &[(1, 1, &[])]))]),
        expansion(1, vec![(2, xi_poly(6, &[(1, 1, &[1])]))]),
        expansion(
            2,
            vec![
                (2, xi_poly(6, &[(1, 1, &[0, 1])])),
                (3, xi_poly(6, &[(1, 1, &[2])])),
            ],
        ),
        expansion(
            3,
            vec![
                (2, xi_poly(6, &[(1, 1, &[0, 0, 1])])),
                (3, xi_poly(6, &[(2, 1, &[1, 1])])),
                (4, xi_poly(6, &[(1, 1, &[3])])),
            ],
        ),
        expansion(
            4,
            vec![
                (2, xi_poly(6, &[(1, 1, &[0, 0, 0, 1])])),
                (3, xi_poly(6, &[(2, 1, &[1, 0, 1]), (1, 1, &[0, 2])])),
                (4, xi_poly(6, &[(3, 1, &[2, 1])])),
                (5, xi_poly(6, &[(1, 1, &[4])])),
            ],
        ),
        expansion(
            5,
            vec![
                (2, xi_poly(6, &[(1, 1, &[0, 0, 0, 0, 1])])),
                (3, xi_poly(6, &[(2, 1, &[1, 0, 0, 1]), (2, 1, &[0, 1, 1])])),
                (4, xi_poly(6, &[(3, 1, &[2, 0, 1]), (3, 1, &[1, 2])])),
                (5, xi_poly(6, &[(4, 1, &[3, 1])])),
                (6, xi_poly(6, &[(1, 1, &[5])])),
            ],
        ),
        expansion(
            6,
            vec![
                (2, xi_poly(6, &[(1, 1, &[0, 0, 0, 0, 0, 1])])),
                (
                    3,
                    xi_poly(
                        6,
                        &[
                            (1, 1, &[0, 0, 2]),
                            (2, 1, &[1, 0, 0, 0, 1]),
                            (2, 1, &[0, 1, 0, 1]),
                        ],
                    ),
                ),
                (
                    4,
                    xi_poly(
                        6,
                        &[(1, 1, &[0, 3]), (6, 1, &[1, 1, 1]), (3, 1, &[2, 0, 0, 1])],
                    ),
                ),
                (5, xi_poly(6, &[(4, 1, &[3, 0, 1]), (6, 1, &[2, 2])])),
                (6, xi_poly(6, &[(5, 1, &[4, 1])])),
                (7, xi_poly(6, &[(1, 1, &[6])])),
            ],
        ),
    ]
}

/// The worked residue example: `P(A_3) = xi3 + xi1 xi2 + xi1^3/3!`,
/// in three chain variables.
pub fn p_a3_expected() -> SparsePoly<RatComplex> {
    xi_poly(3, &[(1, 1, &[0, 0, 1]), (1, 1, &[1, 1]), (1, 6, &[3])])
}

/// Closed form of the first linear chain step:
/// `k1 = (m0 m1 + g0 g1 + d0 d1) / k0`.
pub fn k1_closed_form<S: Scalar>(
    k0: &S,
    row0: &crate::charsys::DirectionRow<S>,
    row1: &crate::charsys::DirectionRow<S>,
) -> Option<S> {
    let num = row0.m.clone() * row1.m.clone()
        + row0.g.clone() * row1.g.clone()
        + row0.d.clone() * row1.d.clone();
    num.checked_div(k0)
}

/// Closed form of the second linear chain step:
/// `k2 = (m1^2 + 2 m0 m2 + g1^2 + 2 g0 g2 + d1^2 + 2 d0 d2 - k1^2) / (2 k0)`
/// with `k1` as in [`k1_closed_form`].
pub fn k2_closed_form<S: Scalar>(
    k0: &S,
    row0: &crate::charsys::DirectionRow<S>,
    row1: &crate::charsys::DirectionRow<S>,
    row2: &crate::charsys::DirectionRow<S>,
) -> Option<S> {
    let k1 = k1_closed_form(k0, row0, row1)?;
    let two = S::from_int(2);
    let bracket = row1.m.clone() * row1.m.clone()
        + two.clone() * row0.m.clone() * row2.m.clone()
        + row1.g.clone() * row1.g.clone()
        + two.clone() * row0.g.clone() * row2.g.clone()
        + row1.d.clone() * row1.d.clone()
        + two.clone() * row0.d.clone() * row2.d.clone()
        - k1.clone() * k1;
    bracket.checked_div(&(two * k0.clone()))
}

/// Everything the side-by-side reproduction check needs.
pub struct GoldenCorpus {
    pub atilde: Vec<SparsePoly<RatComplex>>,
    pub resolvent: Vec<ResolventExpansion>,
    pub p_a3: SparsePoly<RatComplex>,
}

impl GoldenCorpus {
    pub fn load() -> Self {
        GoldenCorpus {
            atilde: atilde_expected(),
            resolvent: resolvent_expected(),
            p_a3: p_a3_expected(),
        }
    }
}
