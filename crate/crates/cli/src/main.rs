//! `kgexact`: generate closed-form Klein-Gordon solution families, verify
//! them symbolically and numerically, cross-check the generation paths,
//! and reproduce the printed reference forms.
//!
//! Exit codes: 0 success, 2 parse/validation error, 3 generation failure
//! (degenerate chain or non-square radicand in rational mode), 4 a
//! verification, cross-check or fixture comparison failed.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use kgexact::charsys::{Branch, CharSysError, Dim, DirectionRow};
use kgexact::family::{
    apply_p, atilde_recurrence, build_solutions, partition_oracle, resolvent_expand, FamilyError,
};
use kgexact::golden::GoldenCorpus;
use kgexact::render;
use kgexact::scalar::{RatComplex, Scalar};
use kgexact::schema::{FamilyDocument, LoadedFamily, Mode, ProblemSpec};
use kgexact::verify::{
    adjudicate_radicand, verify_family, NumericParams, Signature, VerificationReport,
};
use kgexact::Complex64;

#[derive(Parser)]
#[command(name = "kgexact", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Latex,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum BranchArg {
    Plus,
    Minus,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Rational,
    Float,
}

#[derive(Subcommand)]
enum Command {
    /// Generate the solution family U_0..U_R from a problem spec
    Generate {
        /// Problem spec file (JSON)
        #[arg(long)]
        spec: PathBuf,
        /// Output file; stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Override the spec's R
        #[arg(long)]
        order: Option<usize>,
        /// Override the spec's branch
        #[arg(long, value_enum)]
        branch: Option<BranchArg>,
        /// Override the spec's arithmetic mode
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
    },
    /// Verify a family against the operator, from a spec or a solutions file
    Verify {
        /// Problem spec file: generate first, then verify
        #[arg(long, conflicts_with = "solutions")]
        spec: Option<PathBuf>,
        /// Previously generated solutions file
        #[arg(long)]
        solutions: Option<PathBuf>,
        /// Symbolic tolerance, relative to each member's own coefficients
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Also run the finite-difference check
        #[arg(long)]
        numeric: bool,
        #[arg(long, default_value_t = 20)]
        points: usize,
        #[arg(long, default_value_t = 1e-3)]
        h: f64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Print the report array as JSON instead of text lines
        #[arg(long)]
        json: bool,
    },
    /// Check that the recurrence, the residue of the resolvent and the
    /// partition enumeration agree exactly up to the given order
    Crosscheck {
        #[arg(long)]
        order: usize,
    },
    /// Render the generated closed forms next to the built-in fixtures
    /// and adjudicate the radicand sign
    ReproducePaper,
}

enum CliError {
    Input(String),
    Generation(String),
    CheckFailed(String),
}

impl CliError {
    fn report(&self) -> (&str, u8) {
        match self {
            CliError::Input(msg) => (msg, 2),
            CliError::Generation(msg) => (msg, 3),
            CliError::CheckFailed(msg) => (msg, 4),
        }
    }
}

impl From<FamilyError> for CliError {
    fn from(e: FamilyError) -> Self {
        match &e {
            FamilyError::CharSys(CharSysError::DegenerateK0)
            | FamilyError::CharSys(CharSysError::ExactSqrtUnavailable) => {
                CliError::Generation(e.to_string())
            }
            _ => CliError::Input(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            let (msg, code) = err.report();
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Generate {
            spec,
            out,
            format,
            order,
            branch,
            mode,
        } => {
            let mut problem = load_spec(&spec)?;
            if let Some(r) = order {
                problem.r_max = r;
            }
            if let Some(b) = branch {
                problem.branch = match b {
                    BranchArg::Plus => Branch::Plus,
                    BranchArg::Minus => Branch::Minus,
                };
            }
            if let Some(m) = mode {
                problem.mode = match m {
                    ModeArg::Rational => Mode::Rational,
                    ModeArg::Float => Mode::Float,
                };
            }
            problem
                .validate()
                .map_err(|e| CliError::Input(e.to_string()))?;
            let rendered = generate(&problem, format)?;
            match out {
                Some(path) => fs::write(&path, rendered)
                    .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?,
                None => print!("{rendered}"),
            }
            Ok(())
        }
        Command::Verify {
            spec,
            solutions,
            tol,
            numeric,
            points,
            h,
            seed,
            json,
        } => {
            let params = NumericParams {
                points,
                h,
                seed,
                ..NumericParams::default()
            };
            let numeric = numeric.then_some(&params);
            let reports = match (spec, solutions) {
                (Some(path), None) => {
                    let problem = load_spec(&path)?;
                    verify_spec(&problem, tol, numeric)?
                }
                (None, Some(path)) => {
                    let text = fs::read_to_string(&path)
                        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
                    let family = LoadedFamily::from_json_str(&text)
                        .map_err(|e| CliError::Input(e.to_string()))?;
                    verify_loaded(&family, tol, numeric)?
                }
                _ => {
                    return Err(CliError::Input(
                        "pass exactly one of --spec or --solutions".into(),
                    ))
                }
            };
            if reports.is_empty() {
                eprintln!("warning: empty solutions array; nothing to verify");
            }
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&reports).expect("reports serialize")
                );
            } else {
                for report in &reports {
                    println!(
                        "r = {:2}  {}  {}",
                        report.r,
                        if report.passed { "PASS" } else { "FAIL" },
                        report.notes
                    );
                }
            }
            if reports.iter().all(|r| r.passed) {
                Ok(())
            } else {
                Err(CliError::CheckFailed("verification failed".into()))
            }
        }
        Command::Crosscheck { order } => crosscheck(order),
        Command::ReproducePaper => reproduce_paper(),
    }
}

fn load_spec(path: &PathBuf) -> Result<ProblemSpec, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    ProblemSpec::from_json_str(&text).map_err(|e| CliError::Input(e.to_string()))
}

fn generate(problem: &ProblemSpec, format: Format) -> Result<String, CliError> {
    match problem.mode {
        Mode::Float => {
            let sols = build_solutions(
                &problem.mass_c64(),
                &problem.table_c64(),
                problem.branch,
                problem.r_max,
            )?;
            let doc = FamilyDocument::new(problem.dim, problem.branch, problem.mass_c64(), sols);
            Ok(render_family(&doc, format))
        }
        Mode::Rational => {
            let sols = build_solutions(
                &problem.mass,
                &problem.table_rat(),
                problem.branch,
                problem.r_max,
            )?;
            let doc = FamilyDocument::new(problem.dim, problem.branch, problem.mass.clone(), sols);
            Ok(render_family(&doc, format))
        }
    }
}

fn render_family<S>(doc: &FamilyDocument<S>, format: Format) -> String
where
    S: kgexact::schema::CoeffCodec + render::RenderCoeff,
{
    match format {
        Format::Json => {
            let mut text = doc.to_json_string();
            text.push('\n');
            text
        }
        Format::Latex => {
            let mut out = String::new();
            for u in &doc.solutions {
                let _ = writeln!(out, "{}", render::latex_solution(u));
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            for u in &doc.solutions {
                let _ = writeln!(out, "{}", render::text_solution(u));
            }
            out
        }
    }
}

fn verify_spec(
    problem: &ProblemSpec,
    tol: f64,
    numeric: Option<&NumericParams>,
) -> Result<Vec<VerificationReport>, CliError> {
    let sig = Signature::new(problem.dim);
    match problem.mode {
        Mode::Float => {
            let sols = build_solutions(
                &problem.mass_c64(),
                &problem.table_c64(),
                problem.branch,
                problem.r_max,
            )?;
            verify_family(&sols, &problem.mass_c64(), sig, tol, numeric)
                .map_err(|e| CliError::Input(e.to_string()))
        }
        Mode::Rational => {
            let sols = build_solutions(
                &problem.mass,
                &problem.table_rat(),
                problem.branch,
                problem.r_max,
            )?;
            verify_family(&sols, &problem.mass, sig, tol, numeric)
                .map_err(|e| CliError::Input(e.to_string()))
        }
    }
}

fn verify_loaded(
    family: &LoadedFamily,
    tol: f64,
    numeric: Option<&NumericParams>,
) -> Result<Vec<VerificationReport>, CliError> {
    match family {
        LoadedFamily::Float(doc) => verify_family(
            &doc.solutions,
            &doc.mass,
            Signature::new(doc.dim),
            tol,
            numeric,
        )
        .map_err(|e| CliError::Input(e.to_string())),
        LoadedFamily::Rational(doc) => verify_family(
            &doc.solutions,
            &doc.mass,
            Signature::new(doc.dim),
            tol,
            numeric,
        )
        .map_err(|e| CliError::Input(e.to_string())),
    }
}

fn crosscheck(order: usize) -> Result<(), CliError> {
    let fam = atilde_recurrence(order);
    let res = resolvent_expand(order);
    let mut counts = Vec::with_capacity(order + 1);
    let mut failed = false;
    for (r, expansion) in res.iter().enumerate() {
        let direct = fam.get(r);
        let via_p = apply_p(expansion);
        let via_partitions = partition_oracle(r, order);
        let d1 = direct.max_abs_diff(&via_p);
        let d2 = direct.max_abs_diff(&via_partitions);
        let exact = *direct == via_p && *direct == via_partitions;
        counts.push(direct.num_terms());
        println!(
            "r = {r:2}  terms = {:3}  residue-path diff = {d1:.1e}  partition-path diff = {d2:.1e}  {}",
            direct.num_terms(),
            if exact { "exact" } else { "MISMATCH" }
        );
        if !exact {
            failed = true;
        }
    }
    println!("term counts {counts:?}");
    if failed {
        Err(CliError::CheckFailed("generation paths disagree".into()))
    } else {
        Ok(())
    }
}

fn reproduce_paper() -> Result<(), CliError> {
    let corpus = GoldenCorpus::load();
    let mut all_match = true;
    let mut check = |label: &str, generated: String, expected: String, matches: bool| {
        println!("{label}");
        println!("  generated: {generated}");
        println!("  fixture:   {expected}");
        println!("  match: {}", if matches { "yes" } else { "NO" });
        all_match &= matches;
    };

    let fam = atilde_recurrence(5);
    for (r, expected) in corpus.atilde.iter().enumerate() {
        check(
            &format!("factor A~_{r}"),
            render::latex_poly(fam.get(r), render::VarStyle::Xi),
            render::latex_poly(expected, render::VarStyle::Xi),
            fam.get(r) == expected,
        );
    }

    let res = resolvent_expand(6);
    for (r, expected) in corpus.resolvent.iter().enumerate() {
        check(
            &format!("resolvent coefficient A_{r}"),
            render::latex_resolvent(&res[r]),
            render::latex_resolvent(expected),
            &res[r] == expected,
        );
    }

    let res3 = resolvent_expand(3);
    let p_a3 = apply_p(&res3[3]);
    check(
        "residue example P(A_3)",
        render::latex_poly(&p_a3, render::VarStyle::Xi),
        render::latex_poly(&corpus.p_a3, render::VarStyle::Xi),
        p_a3 == corpus.p_a3,
    );

    // first three members of an exact instance whose radicand is a
    // perfect square: mass = -9/25, m0 = 4/5 gives k0 = 1
    let rat = |n, d| RatComplex::from_ratio(n, d);
    let rows = vec![
        kgexact::charsys::DirectionRow::new(rat(4, 5), RatComplex::from_ratio(0, 1), rat(0, 1)),
        kgexact::charsys::DirectionRow::new(rat(1, 2), rat(-1, 3), rat(0, 1)),
        kgexact::charsys::DirectionRow::new(rat(2, 7), rat(1, 5), rat(0, 1)),
    ];
    let mass = rat(-9, 25);
    let table = kgexact::charsys::DirectionTable::new(Dim::Three, rows.clone());
    let sols = build_solutions(&mass, &table, Branch::Plus, 2).map_err(CliError::from)?;
    let k0 = sols[0].xi0.k.clone();
    let k1 = kgexact::golden::k1_closed_form(&k0, &rows[0], &rows[1]).expect("k0 nonzero");
    let k2 =
        kgexact::golden::k2_closed_form(&k0, &rows[0], &rows[1], &rows[2]).expect("k0 nonzero");
    let xi1 = kgexact::polynomial::LinearForm::new(
        k1,
        rows[1].m.clone(),
        rows[1].g.clone(),
        rows[1].d.clone(),
    );
    let xi2 = kgexact::polynomial::LinearForm::new(
        k2,
        rows[2].m.clone(),
        rows[2].g.clone(),
        rows[2].d.clone(),
    );
    let u1_expected = xi1.to_poly();
    let u2_expected = xi2
        .to_poly()
        .add(
            &xi1.to_poly()
                .mul(&xi1.to_poly())
                .expect("space universe")
                .scale(&rat(1, 2)),
        )
        .expect("space universe");
    check(
        "member U_0 (exact instance)",
        render::latex_solution(&sols[0]),
        format!("e^{{{}}}", render::latex_linear_form(&sols[0].xi0)),
        sols[0].poly == kgexact::polynomial::SparsePoly::constant(4, RatComplex::from_ratio(1, 1)),
    );
    check(
        "member U_1 (exact instance)",
        render::latex_poly(&sols[1].poly, render::VarStyle::X),
        render::latex_poly(&u1_expected, render::VarStyle::X),
        sols[1].poly == u1_expected,
    );
    check(
        "member U_2 (exact instance)",
        render::latex_poly(&sols[2].poly, render::VarStyle::X),
        render::latex_poly(&u2_expected, render::VarStyle::X),
        sols[2].poly == u2_expected,
    );

    // radicand adjudication: the system form k0^2 = m0^2+g0^2+d0^2 - mass
    // against the printed form k0^2 = mass + m0^2+g0^2+d0^2
    println!("radicand adjudication");
    for (label, mass, row0) in [
        (
            "mass = -1, zero directions",
            Complex64::new(-1.0, 0.0),
            DirectionRow::new(
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
            ),
        ),
        (
            "mass = -9/25, m0 = 4/5",
            Complex64::new(-0.36, 0.0),
            DirectionRow::new(
                Complex64::new(0.8, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
            ),
        ),
    ] {
        let sq_sum = row0.m * row0.m + row0.g * row0.g + row0.d * row0.d;
        let verdict = adjudicate_radicand(mass, &row0, Dim::Four);
        println!("  [{label}]");
        println!(
            "    system form:  k0 = {} (k0^2 = m0^2+g0^2+d0^2-mass)",
            (sq_sum - mass).sqrt()
        );
        println!(
            "    printed form: k0 = {} (k0^2 = mass+m0^2+g0^2+d0^2)",
            (mass + sq_sum).sqrt()
        );
        println!("    {}", verdict.verdict_text());
        if !verdict.system_annihilates || verdict.printed_annihilates {
            all_match = false;
        }
    }

    if all_match {
        println!("all forms match");
        Ok(())
    } else {
        Err(CliError::CheckFailed(
            "generated forms disagree with the fixtures".into(),
        ))
    }
}
