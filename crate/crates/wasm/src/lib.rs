//! Browser bindings for the demo page: generate a family, evaluate one
//! member on a planar slice, and verify the whole family.
//!
//! All inputs and structured outputs travel as JSON strings so the page
//! needs no generated TypeScript. The exported functions are thin
//! wrappers over plain Rust functions, which keeps everything testable
//! on the host target.

use serde::Deserialize;
use wasm_bindgen::prelude::*;

use kgexact::family::build_solutions;
use kgexact::render;
use kgexact::schema::{FamilyDocument, Mode, ProblemSpec};
use kgexact::verify::{adjudicate_radicand, verify_family, NumericParams, Signature};

/// Generate the family and render it as `json`, `latex` or `text`.
#[wasm_bindgen]
pub fn generate(spec_json: &str, format: &str) -> Result<String, JsValue> {
    generate_impl(spec_json, format).map_err(|e| JsValue::from_str(&e))
}

/// Evaluate member `r` on an `n x n` grid over a coordinate plane.
/// Returns interleaved `[re, im, re, im, ...]`, rows along the y axis.
#[wasm_bindgen]
pub fn field_grid(spec_json: &str, options_json: &str) -> Result<Vec<f64>, JsValue> {
    field_grid_impl(spec_json, options_json).map_err(|e| JsValue::from_str(&e))
}

/// Verify every member symbolically (and optionally by finite
/// differences); returns a JSON object with the per-member reports and
/// the radicand verdict.
#[wasm_bindgen]
pub fn verify_report(spec_json: &str, numeric: bool) -> Result<String, JsValue> {
    verify_report_impl(spec_json, numeric).map_err(|e| JsValue::from_str(&e))
}

fn parse_spec(spec_json: &str) -> Result<ProblemSpec, String> {
    ProblemSpec::from_json_str(spec_json).map_err(|e| e.to_string())
}

fn generate_impl(spec_json: &str, format: &str) -> Result<String, String> {
    let spec = parse_spec(spec_json)?;
    match spec.mode {
        Mode::Float => {
            let sols =
                build_solutions(&spec.mass_c64(), &spec.table_c64(), spec.branch, spec.r_max)
                    .map_err(|e| e.to_string())?;
            let doc = FamilyDocument::new(spec.dim, spec.branch, spec.mass_c64(), sols);
            render_doc(&doc, format)
        }
        Mode::Rational => {
            let sols = build_solutions(&spec.mass, &spec.table_rat(), spec.branch, spec.r_max)
                .map_err(|e| e.to_string())?;
            let doc = FamilyDocument::new(spec.dim, spec.branch, spec.mass.clone(), sols);
            render_doc(&doc, format)
        }
    }
}

fn render_doc<S>(doc: &FamilyDocument<S>, format: &str) -> Result<String, String>
where
    S: kgexact::schema::CoeffCodec + render::RenderCoeff,
{
    match format {
        "json" => Ok(doc.to_json_string()),
        "latex" => Ok(doc
            .solutions
            .iter()
            .map(render::latex_solution)
            .collect::<Vec<_>>()
            .join("\n")),
        "text" => Ok(doc
            .solutions
            .iter()
            .map(render::text_solution)
            .collect::<Vec<_>>()
            .join("\n")),
        other => Err(format!("unknown format {other:?}; use json, latex or text")),
    }
}

#[derive(Deserialize)]
struct FieldOptions {
    r: usize,
    axis_x: usize,
    axis_y: usize,
    #[serde(default)]
    fixed: [f64; 4],
    half_width: f64,
    n: usize,
}

fn field_grid_impl(spec_json: &str, options_json: &str) -> Result<Vec<f64>, String> {
    let spec = parse_spec(spec_json)?;
    let opts: FieldOptions =
        serde_json::from_str(options_json).map_err(|e| format!("options: {e}"))?;
    if opts.r > spec.r_max {
        return Err(format!(
            "r = {} exceeds the spec's R = {}",
            opts.r, spec.r_max
        ));
    }
    let dim = spec.dim.n_coords();
    if opts.axis_x >= dim || opts.axis_y >= dim {
        return Err(format!("axes must be coordinate indices below {dim}"));
    }
    if opts.axis_x == opts.axis_y {
        return Err("axes must differ".into());
    }
    if opts.n < 2 || opts.n > 1024 {
        return Err("n must be between 2 and 1024".into());
    }
    if !(opts.half_width.is_finite() && opts.half_width > 0.0) {
        return Err("half_width must be positive".into());
    }

    let sols = build_solutions(&spec.mass_c64(), &spec.table_c64(), spec.branch, spec.r_max)
        .map_err(|e| e.to_string())?;
    let member = sols[opts.r].to_c64();

    let n = opts.n;
    let step = 2.0 * opts.half_width / (n - 1) as f64;
    let mut out = Vec::with_capacity(2 * n * n);
    for row in 0..n {
        let y = -opts.half_width + step * row as f64;
        for col in 0..n {
            let x = -opts.half_width + step * col as f64;
            let mut point = opts.fixed;
            point[opts.axis_x] = x;
            point[opts.axis_y] = y;
            let value = member.eval(&point);
            out.push(value.re);
            out.push(value.im);
        }
    }
    Ok(out)
}

fn verify_report_impl(spec_json: &str, numeric: bool) -> Result<String, String> {
    let spec = parse_spec(spec_json)?;
    let sig = Signature::new(spec.dim);
    let params = NumericParams::default();
    let numeric = numeric.then_some(&params);
    let reports = match spec.mode {
        Mode::Float => {
            let sols =
                build_solutions(&spec.mass_c64(), &spec.table_c64(), spec.branch, spec.r_max)
                    .map_err(|e| e.to_string())?;
            verify_family(&sols, &spec.mass_c64(), sig, 1e-10, numeric)
                .map_err(|e| e.to_string())?
        }
        Mode::Rational => {
            let sols = build_solutions(&spec.mass, &spec.table_rat(), spec.branch, spec.r_max)
                .map_err(|e| e.to_string())?;
            verify_family(&sols, &spec.mass, sig, 1e-10, numeric).map_err(|e| e.to_string())?
        }
    };
    let verdict = adjudicate_radicand(spec.mass_c64(), &spec.table_c64().rows[0], spec.dim);
    let body = serde_json::json!({
        "reports": reports,
        "all_passed": reports.iter().all(|r| r.passed),
        "radicand_verdict": verdict.verdict_text(),
    });
    serde_json::to_string_pretty(&body).map_err(|e| e.to_string())
}
