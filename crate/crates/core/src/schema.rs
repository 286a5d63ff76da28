//! Problem specs and JSON schemas.
//!
//! Complex scalars serialize as a two-element `[re, im]` array in float
//! mode and as string-encoded integer ratios in rational mode
//! (`{"num": ["p_re", "p_im"], "den": ["q_re", "q_im"]}`), which keeps
//! rational round-trips bit-exact. Polynomials are arrays of
//! `{"exps": [...], ...coefficient...}` objects in canonical order.

use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::charsys::{Branch, Dim, DirectionRow, DirectionTable};
use crate::family::SolutionTerm;
use crate::nilalgebra::NilElement;
use crate::polynomial::{LinearForm, SparsePoly};
use crate::scalar::{RatComplex, Scalar};

#[derive(Debug, Error)]
pub enum SchemaError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid spec: {0}")]
    Validation(String),
}

/// Arithmetic mode of a run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Rational,
    Float,
}

/// Wire form of one complex coefficient.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CplxJson {
    Float([f64; 2]),
    Rational { num: [String; 2], den: [String; 2] },
}

impl CplxJson {
    /// Exact reading: finite floats embed as dyadic rationals.
    pub fn to_rat(&self, field: &str) -> Result<RatComplex, SchemaError> {
        match self {
            CplxJson::Float([re, im]) => RatComplex::from_f64(*re, *im).ok_or_else(|| {
                SchemaError::Validation(format!("{field}: components must be finite"))
            }),
            CplxJson::Rational { num, den } => {
                let int = |s: &str, part: &str| {
                    BigInt::from_str(s).map_err(|e| {
                        SchemaError::Parse(format!("{field}.{part}: invalid integer {s:?}: {e}"))
                    })
                };
                let num_re = int(&num[0], "num[0]")?;
                let num_im = int(&num[1], "num[1]")?;
                let den_re = int(&den[0], "den[0]")?;
                let den_im = int(&den[1], "den[1]")?;
                if den_re.is_zero() || den_im.is_zero() {
                    return Err(SchemaError::Validation(format!(
                        "{field}: zero denominator"
                    )));
                }
                Ok(RatComplex::new(
                    BigRational::new(num_re, den_re),
                    BigRational::new(num_im, den_im),
                ))
            }
        }
    }
}

/// Scalar <-> wire-form codec; the encoding follows the arithmetic mode.
pub trait CoeffCodec: Scalar {
    const MODE: Mode;
    fn encode(&self) -> CplxJson;
    fn decode(v: &CplxJson, field: &str) -> Result<Self, SchemaError>;
}

impl CoeffCodec for Complex64 {
    const MODE: Mode = Mode::Float;

    fn encode(&self) -> CplxJson {
        CplxJson::Float([self.re, self.im])
    }

    fn decode(v: &CplxJson, field: &str) -> Result<Self, SchemaError> {
        Ok(v.to_rat(field)?.to_c64())
    }
}

impl CoeffCodec for RatComplex {
    const MODE: Mode = Mode::Rational;

    fn encode(&self) -> CplxJson {
        CplxJson::Rational {
            num: [self.re.numer().to_string(), self.im.numer().to_string()],
            den: [self.re.denom().to_string(), self.im.denom().to_string()],
        }
    }

    fn decode(v: &CplxJson, field: &str) -> Result<Self, SchemaError> {
        v.to_rat(field)
    }
}

#[derive(Serialize, Deserialize)]
struct RowJson {
    m: CplxJson,
    g: CplxJson,
    #[serde(default)]
    d: Option<CplxJson>,
}

#[derive(Serialize, Deserialize)]
struct ProblemSpecJson {
    dim: u8,
    mass: CplxJson,
    #[serde(rename = "R", alias = "r_max", default)]
    r_max: Option<usize>,
    #[serde(default)]
    branch: Option<Branch>,
    #[serde(default)]
    mode: Option<Mode>,
    rows: Vec<RowJson>,
}

/// A full problem statement: dimension, mass, chain depth, branch,
/// arithmetic mode and the free direction rows. Values are carried
/// exactly; each mode converts on use.
#[derive(Clone, Debug, PartialEq)]
pub struct ProblemSpec {
    pub dim: Dim,
    pub mass: RatComplex,
    pub r_max: usize,
    pub branch: Branch,
    pub mode: Mode,
    pub rows: Vec<DirectionRow<RatComplex>>,
}

impl ProblemSpec {
    pub fn from_json_str(text: &str) -> Result<Self, SchemaError> {
        let raw: ProblemSpecJson =
            serde_json::from_str(text).map_err(|e| SchemaError::Parse(e.to_string()))?;
        let dim = Dim::try_from(raw.dim).map_err(SchemaError::Validation)?;
        let mass = raw.mass.to_rat("mass")?;
        let mut rows = Vec::with_capacity(raw.rows.len());
        for (i, row) in raw.rows.iter().enumerate() {
            let m = row.m.to_rat(&format!("rows[{i}].m"))?;
            let g = row.g.to_rat(&format!("rows[{i}].g"))?;
            let d = match &row.d {
                Some(v) => v.to_rat(&format!("rows[{i}].d"))?,
                None => RatComplex::zero(),
            };
            rows.push(DirectionRow::new(m, g, d));
        }
        if rows.is_empty() {
            return Err(SchemaError::Validation("rows: must not be empty".into()));
        }
        let r_max = raw.r_max.unwrap_or(rows.len() - 1);
        let spec = ProblemSpec {
            dim,
            mass,
            r_max,
            branch: raw.branch.unwrap_or(Branch::Plus),
            mode: raw.mode.unwrap_or(Mode::Float),
            rows,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), SchemaError> {
        if self.rows.len() < self.r_max + 1 {
            return Err(SchemaError::Validation(format!(
                "rows: need at least R+1 = {} rows, got {}",
                self.r_max + 1,
                self.rows.len()
            )));
        }
        self.table_rat()
            .validate()
            .map_err(|e| SchemaError::Validation(e.to_string()))
    }

    pub fn to_json_string(&self) -> String {
        let raw = ProblemSpecJson {
            dim: self.dim.into(),
            mass: self.mass.encode(),
            r_max: Some(self.r_max),
            branch: Some(self.branch),
            mode: Some(self.mode),
            rows: self
                .rows
                .iter()
                .map(|r| RowJson {
                    m: r.m.encode(),
                    g: r.g.encode(),
                    d: Some(r.d.encode()),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&raw).expect("spec serializes")
    }

    pub fn table_rat(&self) -> DirectionTable<RatComplex> {
        DirectionTable::new(self.dim, self.rows.clone())
    }

    pub fn table_c64(&self) -> DirectionTable<Complex64> {
        DirectionTable::new(
            self.dim,
            self.rows.iter().map(|r| r.map(Scalar::to_c64)).collect(),
        )
    }

    pub fn mass_c64(&self) -> Complex64 {
        self.mass.to_c64()
    }
}

/// One wire term: `{"exps": [...], "coeff": [re, im]}` in float mode,
/// `{"exps": [...], "num": [...], "den": [...]}` in rational mode.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum TermJson {
    Float {
        exps: Vec<u32>,
        coeff: [f64; 2],
    },
    Rational {
        exps: Vec<u32>,
        num: [String; 2],
        den: [String; 2],
    },
}

impl TermJson {
    fn new(exps: Vec<u32>, coeff: CplxJson) -> Self {
        match coeff {
            CplxJson::Float(c) => TermJson::Float { exps, coeff: c },
            CplxJson::Rational { num, den } => TermJson::Rational { exps, num, den },
        }
    }

    fn split(self) -> (Vec<u32>, CplxJson) {
        match self {
            TermJson::Float { exps, coeff } => (exps, CplxJson::Float(coeff)),
            TermJson::Rational { exps, num, den } => (exps, CplxJson::Rational { num, den }),
        }
    }
}

/// Canonical polynomial wire form: term objects in graded order.
pub fn poly_to_json<S: CoeffCodec>(p: &SparsePoly<S>) -> serde_json::Value {
    let terms: Vec<TermJson> = p
        .terms()
        .map(|(m, c)| TermJson::new(m.exps().to_vec(), c.encode()))
        .collect();
    serde_json::to_value(terms).expect("terms serialize")
}

/// Read a polynomial back; exponent vectors shorter than `nvars` are
/// padded with zeros.
pub fn poly_from_json<S: CoeffCodec>(
    v: &serde_json::Value,
    nvars: usize,
    field: &str,
) -> Result<SparsePoly<S>, SchemaError> {
    let terms: Vec<TermJson> = serde_json::from_value(v.clone())
        .map_err(|e| SchemaError::Parse(format!("{field}: {e}")))?;
    let mut acc = SparsePoly::new_zero(nvars);
    for (i, term) in terms.into_iter().enumerate() {
        let (raw_exps, coeff) = term.split();
        if raw_exps.len() > nvars {
            return Err(SchemaError::Validation(format!(
                "{field}[{i}].exps: {} exponents exceed {nvars} variables",
                raw_exps.len()
            )));
        }
        let mut exps = raw_exps;
        exps.resize(nvars, 0);
        let c = S::decode(&coeff, &format!("{field}[{i}]"))?;
        let mono = SparsePoly::monomial(nvars, exps, c)
            .map_err(|e| SchemaError::Validation(format!("{field}[{i}]: {e}")))?;
        acc = acc
            .add(&mono)
            .map_err(|e| SchemaError::Validation(format!("{field}[{i}]: {e}")))?;
    }
    Ok(acc)
}

#[derive(Serialize, Deserialize)]
struct LinearFormJson {
    k: CplxJson,
    m: CplxJson,
    g: CplxJson,
    d: CplxJson,
}

fn form_to_json<S: CoeffCodec>(f: &LinearForm<S>) -> LinearFormJson {
    LinearFormJson {
        k: f.k.encode(),
        m: f.m.encode(),
        g: f.g.encode(),
        d: f.d.encode(),
    }
}

fn form_from_json<S: CoeffCodec>(
    raw: &LinearFormJson,
    field: &str,
) -> Result<LinearForm<S>, SchemaError> {
    Ok(LinearForm::new(
        S::decode(&raw.k, &format!("{field}.k"))?,
        S::decode(&raw.m, &format!("{field}.m"))?,
        S::decode(&raw.g, &format!("{field}.g"))?,
        S::decode(&raw.d, &format!("{field}.d"))?,
    ))
}

#[derive(Serialize, Deserialize)]
struct SolutionJson {
    r: usize,
    poly: serde_json::Value,
}

#[derive(Serialize, Deserialize)]
struct FamilyJson {
    dim: u8,
    mode: Mode,
    branch: Branch,
    mass: CplxJson,
    xi0: LinearFormJson,
    solutions: Vec<SolutionJson>,
}

/// A generated family: shared exponent form plus the per-member factors.
#[derive(Clone, Debug)]
pub struct FamilyDocument<S: Scalar> {
    pub dim: Dim,
    pub branch: Branch,
    pub mass: S,
    pub xi0: LinearForm<S>,
    pub solutions: Vec<SolutionTerm<S>>,
}

impl<S: CoeffCodec> FamilyDocument<S> {
    pub fn new(dim: Dim, branch: Branch, mass: S, solutions: Vec<SolutionTerm<S>>) -> Self {
        let xi0 = solutions
            .first()
            .map(|s| s.xi0.clone())
            .unwrap_or_else(|| LinearForm::new(S::zero(), S::zero(), S::zero(), S::zero()));
        FamilyDocument {
            dim,
            branch,
            mass,
            xi0,
            solutions,
        }
    }

    pub fn to_json_string(&self) -> String {
        let raw = FamilyJson {
            dim: self.dim.into(),
            mode: S::MODE,
            branch: self.branch,
            mass: self.mass.encode(),
            xi0: form_to_json(&self.xi0),
            solutions: self
                .solutions
                .iter()
                .map(|s| SolutionJson {
                    r: s.r,
                    poly: poly_to_json(&s.poly),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&raw).expect("family serializes")
    }

    fn from_raw(raw: &FamilyJson) -> Result<Self, SchemaError> {
        let dim = Dim::try_from(raw.dim).map_err(SchemaError::Validation)?;
        let mass = S::decode(&raw.mass, "mass")?;
        let xi0: LinearForm<S> = form_from_json(&raw.xi0, "xi0")?;
        let mut solutions = Vec::with_capacity(raw.solutions.len());
        for (i, s) in raw.solutions.iter().enumerate() {
            let poly = poly_from_json(&s.poly, 4, &format!("solutions[{i}].poly"))?;
            solutions.push(SolutionTerm {
                r: s.r,
                poly,
                xi0: xi0.clone(),
            });
        }
        Ok(FamilyDocument {
            dim,
            branch: raw.branch,
            mass,
            xi0,
            solutions,
        })
    }
}

/// A family document read back from JSON, in whichever mode it was written.
#[allow(clippy::large_enum_variant)]
pub enum LoadedFamily {
    Float(FamilyDocument<Complex64>),
    Rational(FamilyDocument<RatComplex>),
}

impl LoadedFamily {
    pub fn from_json_str(text: &str) -> Result<Self, SchemaError> {
        let raw: FamilyJson =
            serde_json::from_str(text).map_err(|e| SchemaError::Parse(e.to_string()))?;
        match raw.mode {
            Mode::Float => Ok(LoadedFamily::Float(FamilyDocument::from_raw(&raw)?)),
            Mode::Rational => Ok(LoadedFamily::Rational(FamilyDocument::from_raw(&raw)?)),
        }
    }
}

/// Wire form of an algebra element: `{"order": n, "coeffs": [...]}`.
pub fn nil_to_json<S: CoeffCodec>(e: &NilElement<S>) -> serde_json::Value {
    serde_json::json!({
        "order": e.order(),
        "coeffs": e.coeffs().iter().map(CoeffCodec::encode).collect::<Vec<_>>(),
    })
}

pub fn nil_from_json<S: CoeffCodec>(
    v: &serde_json::Value,
    field: &str,
) -> Result<NilElement<S>, SchemaError> {
    #[derive(Deserialize)]
    struct NilJson {
        order: usize,
        coeffs: Vec<CplxJson>,
    }
    let raw: NilJson = serde_json::from_value(v.clone())
        .map_err(|e| SchemaError::Parse(format!("{field}: {e}")))?;
    if raw.coeffs.len() != raw.order {
        return Err(SchemaError::Validation(format!(
            "{field}: order {} does not match {} coefficients",
            raw.order,
            raw.coeffs.len()
        )));
    }
    let coeffs = raw
        .coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| S::decode(c, &format!("{field}.coeffs[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    NilElement::from_coeffs(coeffs).map_err(|e| SchemaError::Validation(format!("{field}: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_parsing_defaults_and_field_names() {
        // the bare direction-table shape is a valid spec
        let text = r#"{
            "dim": 4,
            "mass": [-1.0, 0.0],
            "rows": [{"m": [0,0], "g": [0,0], "d": [0,0]}]
        }"#;
        let spec = ProblemSpec::from_json_str(text).unwrap();
        assert_eq!(spec.dim, Dim::Four);
        assert_eq!(spec.r_max, 0);
        assert_eq!(spec.branch, Branch::Plus);
        assert_eq!(spec.mode, Mode::Float);
        assert_eq!(spec.mass, RatComplex::from_ints(-1, 0));
    }

    #[test]
    fn spec_errors_name_the_field() {
        let text = r#"{
            "dim": 3,
            "mass": [0, 0],
            "rows": [{"m": [0,0], "g": [0,0], "d": [1.0, 0.0]}]
        }"#;
        let err = ProblemSpec::from_json_str(text).unwrap_err().to_string();
        assert!(err.contains("rows[0].d"), "got: {err}");

        let text = r#"{
            "dim": 5,
            "mass": [0, 0],
            "rows": [{"m": [0,0], "g": [0,0]}]
        }"#;
        let err = ProblemSpec::from_json_str(text).unwrap_err().to_string();
        assert!(err.contains("dim"), "got: {err}");

        let text = r#"{
            "dim": 4,
            "mass": {"num": ["x", "0"], "den": ["1", "1"]},
            "rows": [{"m": [0,0], "g": [0,0]}]
        }"#;
        let err = ProblemSpec::from_json_str(text).unwrap_err().to_string();
        assert!(err.contains("mass"), "got: {err}");
    }

    #[test]
    fn spec_round_trip() {
        let text = r#"{
            "dim": 3,
            "mass": {"num": ["1", "-2"], "den": ["3", "5"]},
            "R": 1,
            "branch": "minus",
            "mode": "rational",
            "rows": [
                {"m": [0.5, 0.0], "g": [0,0]},
                {"m": {"num": ["7","0"], "den": ["11","1"]}, "g": [0,0]}
            ]
        }"#;
        let spec = ProblemSpec::from_json_str(text).unwrap();
        let round = ProblemSpec::from_json_str(&spec.to_json_string()).unwrap();
        assert_eq!(spec, round);
    }

    #[test]
    fn rational_poly_round_trip_is_bit_exact() {
        let p = crate::family::atilde_recurrence(6);
        for r in 0..=6 {
            let v = poly_to_json(p.get(r));
            let back: SparsePoly<RatComplex> = poly_from_json(&v, 6, "poly").unwrap();
            assert_eq!(&back, p.get(r));
        }
    }

    #[test]
    fn float_poly_round_trip() {
        let p =
            SparsePoly::<Complex64>::monomial(4, vec![1, 2, 0, 0], Complex64::new(0.1, -2.5e-17))
                .unwrap();
        let v = poly_to_json(&p);
        let back: SparsePoly<Complex64> = poly_from_json(&v, 4, "poly").unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn nil_element_round_trip() {
        let e = NilElement::from_coeffs(vec![
            RatComplex::from_ratio(22, 7),
            RatComplex::from_ints(0, -3),
        ])
        .unwrap();
        let v = nil_to_json(&e);
        let back: NilElement<RatComplex> = nil_from_json(&v, "element").unwrap();
        assert_eq!(back, e);
        let bad = serde_json::json!({"order": 3, "coeffs": [[0.0, 0.0]]});
        assert!(nil_from_json::<RatComplex>(&bad, "element").is_err());
    }

    #[test]
    fn family_document_round_trip() {
        let spec = ProblemSpec::from_json_str(
            r#"{"dim": 4, "mass": [-1, 0], "R": 2, "rows": [
                {"m": [0.25, 0.5], "g": [0, -0.75], "d": [0.125, 0]},
                {"m": [1, 0], "g": [0, 0], "d": [0, 0]},
                {"m": [0, 0.5], "g": [0.5, 0], "d": [0, 0]}
            ]}"#,
        )
        .unwrap();
        let sols = crate::family::build_solutions(
            &spec.mass_c64(),
            &spec.table_c64(),
            spec.branch,
            spec.r_max,
        )
        .unwrap();
        let doc = FamilyDocument::new(spec.dim, spec.branch, spec.mass_c64(), sols);
        let text = doc.to_json_string();
        match LoadedFamily::from_json_str(&text).unwrap() {
            LoadedFamily::Float(back) => {
                assert_eq!(back.solutions.len(), doc.solutions.len());
                for (a, b) in back.solutions.iter().zip(&doc.solutions) {
                    assert_eq!(a.poly, b.poly);
                    assert_eq!(a.xi0, b.xi0);
                }
                assert_eq!(back.mass, doc.mass);
            }
            LoadedFamily::Rational(_) => panic!("mode tag lost"),
        }
    }
}
