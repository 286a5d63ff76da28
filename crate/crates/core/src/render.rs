//! LaTeX and plain-text emitters for polynomials, resolvent coefficients
//! and family members.
//!
//! Terms are emitted in the canonical graded-lexicographic order. Rational
//! coefficients `1/d!` under a degree-`d` monomial are written with a
//! factorial denominator so the output diffs cleanly against the usual
//! closed-form tables.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use crate::family::{ResolventExpansion, SolutionTerm};
use crate::polynomial::{LinearForm, SparsePoly};
use crate::scalar::{factorial_big, RatComplex, Scalar};

/// Variable universe for rendering.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarStyle {
    /// `xi1, xi2, ...` (chain variables; index is one-based)
    Xi,
    /// `x0, x1, x2, x3` (space variables)
    X,
}

impl VarStyle {
    fn latex(self, var: usize) -> String {
        match self {
            VarStyle::Xi => format!("\\xi_{{{}}}", var + 1),
            VarStyle::X => format!("x_{{{var}}}"),
        }
    }

    fn text(self, var: usize) -> String {
        match self {
            VarStyle::Xi => format!("xi{}", var + 1),
            VarStyle::X => format!("x{var}"),
        }
    }
}

/// Rendered coefficient parts: (negative, absolute body, body is a bare 1).
pub type CoeffTextParts = (bool, String, bool);

/// Scalar rendering hooks for the two coefficient fields.
pub trait RenderCoeff: Scalar {
    fn coeff_latex(&self) -> CoeffTextParts;
    fn coeff_text(&self) -> CoeffTextParts;
    /// `Some(d)` when the coefficient is exactly `+-1/d!` for the given
    /// monomial degree `d >= 2`, enabling factorial display.
    fn factorial_denominator(&self, degree: u32) -> Option<u32>;
}

fn fmt_f64(v: f64) -> String {
    // shortest round-trip form, trimmed of the ".0" tail for integers
    let s = format!("{v}");
    s.strip_suffix(".0").map(str::to_owned).unwrap_or(s)
}

impl RenderCoeff for Complex64 {
    fn coeff_latex(&self) -> CoeffTextParts {
        self.coeff_text()
    }

    fn coeff_text(&self) -> CoeffTextParts {
        if self.im == 0.0 {
            let negative = self.re < 0.0;
            let body = fmt_f64(self.re.abs());
            (negative, body.clone(), body == "1")
        } else if self.re == 0.0 {
            let negative = self.im < 0.0;
            let mag = fmt_f64(self.im.abs());
            let body = if mag == "1" {
                "i".to_owned()
            } else {
                format!("{mag}i")
            };
            (negative, body, false)
        } else {
            let sign = if self.im < 0.0 { "-" } else { "+" };
            let body = format!("({}{}{}i)", fmt_f64(self.re), sign, fmt_f64(self.im.abs()));
            (false, body, false)
        }
    }

    fn factorial_denominator(&self, _degree: u32) -> Option<u32> {
        None
    }
}

fn rat_body(q: &num_rational::BigRational, latex: bool) -> String {
    if q.denom().is_one() {
        format!("{}", q.numer())
    } else if latex {
        format!("\\frac{{{}}}{{{}}}", q.numer(), q.denom())
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl RenderCoeff for RatComplex {
    fn coeff_latex(&self) -> CoeffTextParts {
        self.coeff_parts(true)
    }

    fn coeff_text(&self) -> CoeffTextParts {
        self.coeff_parts(false)
    }

    fn factorial_denominator(&self, degree: u32) -> Option<u32> {
        if degree < 2 || !self.im.is_zero() {
            return None;
        }
        if self.re.numer().abs() != BigInt::one() {
            return None;
        }
        if self.re.denom() == &factorial_big(degree as usize) {
            Some(degree)
        } else {
            None
        }
    }
}

impl RatComplex {
    fn coeff_parts(&self, latex: bool) -> CoeffTextParts {
        if self.im.is_zero() {
            let negative = self.re.is_negative();
            let abs = self.re.abs();
            let body = rat_body(&abs, latex);
            let unit = abs.is_one();
            (negative, body, unit)
        } else if self.re.is_zero() {
            let negative = self.im.is_negative();
            let abs = self.im.abs();
            let body = if abs.is_one() {
                "i".to_owned()
            } else {
                format!("{}i", rat_body(&abs, latex))
            };
            (negative, body, false)
        } else {
            let sign = if self.im.is_negative() { "-" } else { "+" };
            let body = format!(
                "({}{}{}i)",
                rat_body(&self.re, latex),
                sign,
                rat_body(&self.im.abs(), latex)
            );
            (false, body, false)
        }
    }
}

fn monomial_string(exps: &[u32], style: VarStyle, latex: bool) -> String {
    let mut parts = Vec::new();
    for (var, &e) in exps.iter().enumerate() {
        if e == 0 {
            continue;
        }
        let name = if latex {
            style.latex(var)
        } else {
            style.text(var)
        };
        if e == 1 {
            parts.push(name);
        } else if latex {
            parts.push(format!("{name}^{{{e}}}"));
        } else {
            parts.push(format!("{name}^{e}"));
        }
    }
    parts.join(if latex { "" } else { "*" })
}

fn render_poly<S: RenderCoeff>(p: &SparsePoly<S>, style: VarStyle, latex: bool) -> String {
    if p.is_zero() {
        return "0".to_owned();
    }
    let mut out = String::new();
    for (index, (mono, coeff)) in p.terms().enumerate() {
        let degree = mono.total_degree();
        let mono_str = monomial_string(mono.exps(), style, latex);

        // factorial form: monomial / d!
        if latex {
            if let Some(d) = coeff.factorial_denominator(degree) {
                let (negative, _, _) = coeff.coeff_latex();
                push_sign(&mut out, index, negative);
                out.push_str(&format!("\\frac{{{mono_str}}}{{{d}!}}"));
                continue;
            }
        }

        let (negative, body, unit) = if latex {
            coeff.coeff_latex()
        } else {
            coeff.coeff_text()
        };
        push_sign(&mut out, index, negative);
        if mono_str.is_empty() {
            out.push_str(&body);
        } else if unit {
            out.push_str(&mono_str);
        } else if latex {
            out.push_str(&format!("{body}{mono_str}"));
        } else {
            let needs_parens = body.contains('/') && !body.starts_with('(');
            if needs_parens {
                out.push_str(&format!("({body})*{mono_str}"));
            } else {
                out.push_str(&format!("{body}*{mono_str}"));
            }
        }
    }
    out
}

fn push_sign(out: &mut String, index: usize, negative: bool) {
    if index == 0 {
        if negative {
            out.push('-');
        }
    } else if negative {
        out.push_str(" - ");
    } else {
        out.push_str(" + ");
    }
}

pub fn latex_poly<S: RenderCoeff>(p: &SparsePoly<S>, style: VarStyle) -> String {
    render_poly(p, style, true)
}

pub fn text_poly<S: RenderCoeff>(p: &SparsePoly<S>, style: VarStyle) -> String {
    render_poly(p, style, false)
}

/// `A_r` as a sum of `num / (t - xi0)^s` blocks.
pub fn latex_resolvent(a: &ResolventExpansion) -> String {
    if a.parts.is_empty() {
        return "0".to_owned();
    }
    a.parts
        .iter()
        .map(|(s, num)| {
            let body = latex_poly(num, VarStyle::Xi);
            if *s == 1 {
                format!("\\frac{{{body}}}{{t-\\xi_{{0}}}}")
            } else {
                format!("\\frac{{{body}}}{{(t-\\xi_{{0}})^{{{s}}}}}")
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

pub fn text_resolvent(a: &ResolventExpansion) -> String {
    if a.parts.is_empty() {
        return "0".to_owned();
    }
    a.parts
        .iter()
        .map(|(s, num)| {
            let body = text_poly(num, VarStyle::Xi);
            let wrapped = if num.num_terms() > 1 {
                format!("({body})")
            } else {
                body
            };
            format!("{wrapped}/(t-xi0)^{s}")
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

pub fn latex_linear_form<S: RenderCoeff>(f: &LinearForm<S>) -> String {
    latex_poly(&f.to_poly(), VarStyle::X)
}

pub fn text_linear_form<S: RenderCoeff>(f: &LinearForm<S>) -> String {
    text_poly(&f.to_poly(), VarStyle::X)
}

/// `U_r = (factor) e^{xi0}` in the space variables.
pub fn latex_solution<S: RenderCoeff>(u: &SolutionTerm<S>) -> String {
    let exponent = latex_linear_form(&u.xi0);
    if u.poly.num_terms() == 1 && u.poly.coeff(&[0, 0, 0, 0]).is_one() {
        format!("U_{{{}}} = e^{{{exponent}}}", u.r)
    } else if u.poly.num_terms() == 1 {
        format!(
            "U_{{{}}} = {}\\,e^{{{exponent}}}",
            u.r,
            latex_poly(&u.poly, VarStyle::X)
        )
    } else {
        format!(
            "U_{{{}}} = \\left({}\\right)e^{{{exponent}}}",
            u.r,
            latex_poly(&u.poly, VarStyle::X)
        )
    }
}

pub fn text_solution<S: RenderCoeff>(u: &SolutionTerm<S>) -> String {
    let exponent = text_linear_form(&u.xi0);
    format!(
        "U_{} = ({}) * exp({exponent})",
        u.r,
        text_poly(&u.poly, VarStyle::X)
    )
}
