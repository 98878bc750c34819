use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use num_traits::{One, ToPrimitive};
use serde::Serialize;
use serde_json::{json, Value};

use pure_shapes::census::{equidistribution_scan, CensusOptions, Scan};
use pure_shapes::densities::{constants_from, euler_product, DEFAULT_EULER_Y};
use pure_shapes::determinants::maillet_class_number;
use pure_shapes::fields::{canonicalize, factor_radicand, PureField};
use pure_shapes::measure::QUADRATURE_TOLERANCE;
use pure_shapes::shapes::{lambda_p_raw, normalized_shape_gram, shape_params};
use pure_shapes::verify::{self, Suite};
use pure_shapes::{Normalization, Rational, ShapeWindow};

const SCHEMA: &str = "pure-shapes/1";

#[derive(Parser)]
#[command(name = "pure-shapes", version, about = "Shapes and counts of pure prime degree number fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Determinants,
    Densities,
    Shapes,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Tuple, ramification, discriminant and shape of Q(m^(1/p)).
    Shape {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        m: u128,
        /// Bits used when evaluating the shape Gram matrix.
        #[arg(long, default_value_t = 64)]
        precision: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Count fields by discriminant bound and shape window.
    Census {
        #[arg(long)]
        p: u64,
        /// Discriminant bound, e.g. 1e12.
        #[arg(long)]
        x: f64,
        /// Window bounds on lambda^p, e.g. `1,2` or `1,3,inf`; repeatable.
        #[arg(long = "window")]
        windows: Vec<String>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, env = "PURESHAPES_WORKERS")]
        workers: Option<usize>,
        /// Euler product truncation.
        #[arg(long, default_value_t = DEFAULT_EULER_Y as f64)]
        y: f64,
        /// Largest radicand bound the census will enumerate.
        #[arg(long)]
        limit: Option<u64>,
    },
    /// Run the exact identity checks.
    Verify {
        #[arg(value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Class number, Euler product and the predicted constants.
    Constants {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = DEFAULT_EULER_Y as f64)]
        y: f64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Shape { p, m, precision, format, output } => {
            emit(&shape(p, m, precision, format)?, output.as_ref())?;
        }
        Command::Census { p, x, windows, format, output, workers, y, limit } => {
            let opts = CensusOptions {
                workers,
                feasibility_limit: limit,
                euler_y: Some(to_count(y, "y")?),
            };
            emit(&census(p, x, &windows, &opts, format)?, output.as_ref())?;
        }
        Command::Verify { suite, format } => {
            let suite = match suite {
                SuiteArg::Determinants => Suite::Determinants,
                SuiteArg::Densities => Suite::Densities,
                SuiteArg::Shapes => Suite::Shapes,
                SuiteArg::All => Suite::All,
            };
            let checks = verify::run(suite);
            let ok = verify::all_passed(&checks);
            let out = match format {
                Format::Json => json_string(&json!({
                    "schema": SCHEMA,
                    "command": "verify",
                    "passed": ok,
                    "checks": checks,
                }))?,
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    w.write_record(["suite", "identity", "passed", "detail"])?;
                    for c in &checks {
                        w.write_record([c.suite, &c.identity, &c.passed.to_string(), &c.detail])?;
                    }
                    String::from_utf8(w.into_inner()?)?
                }
                Format::Text => {
                    let mut s = String::new();
                    for c in &checks {
                        let tag = if c.passed { "PASS" } else { "FAIL" };
                        s += &format!("{tag} [{}] {} ({})\n", c.suite, c.identity, c.detail);
                    }
                    let failed = checks.iter().filter(|c| !c.passed).count();
                    s += &format!("{} checks, {failed} failed\n", checks.len());
                    s
                }
            };
            emit(&out, None)?;
            return Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE });
        }
        Command::Constants { p, y, format, output } => {
            emit(&constants(p, to_count(y, "y")?, format)?, output.as_ref())?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn to_count(v: f64, name: &str) -> Result<u64> {
    if !(v.is_finite() && v >= 0.0 && v.fract() == 0.0 && v < 1.8e19) {
        bail!("--{name} must be a non-negative integer, got {v}");
    }
    Ok(v as u64)
}

fn emit(s: &str, path: Option<&PathBuf>) -> Result<()> {
    match path {
        Some(p) => fs::write(p, s).with_context(|| format!("writing {}", p.display())),
        None => {
            io::stdout().write_all(s.as_bytes())?;
            Ok(())
        }
    }
}

fn json_string<T: Serialize>(v: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

fn shape(p: u64, m: u128, precision: u32, format: Format) -> Result<String> {
    if m < 2 {
        bail!("m must be at least 2");
    }
    let t = factor_radicand(p, m)?;
    let f = PureField::from_generator(t.clone());
    let canon = canonicalize(&t);
    let raw = lambda_p_raw(&f);
    let sv = shape_params(&f);
    let gram = normalized_shape_gram(&f).to_real::<f64>(precision);
    let gram_rows: Vec<Vec<f64>> = (0..gram.rows()).map(|i| gram.row(i).to_vec()).collect();
    let strs = |v: &[Rational]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    Ok(match format {
        Format::Json => json_string(&json!({
            "schema": SCHEMA,
            "command": "shape",
            "p": p,
            "m": m.to_string(),
            "tuple": t.a(),
            "canonical_tuple": canon.tuple().a(),
            "ramification": f.ramification().to_string(),
            "discriminant": f.disc().to_string(),
            "lambda_p_raw": strs(&raw),
            "lambda_p": strs(sv.lambdas_p()),
            "shape_gram": gram_rows,
            "precision_bits": precision,
        }))?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["p", "m", "tuple", "canonical_tuple", "ramification", "discriminant", "lambda_p"])?;
            w.write_record([
                p.to_string(),
                m.to_string(),
                t.to_string(),
                canon.tuple().to_string(),
                f.ramification().to_string(),
                f.disc().to_string(),
                sv.to_string(),
            ])?;
            String::from_utf8(w.into_inner()?)?
        }
        Format::Text => {
            let mut s = format!("p = {p}, m = {m}\n");
            s += &format!("tuple: {t}\ncanonical tuple: {}\n", canon.tuple());
            s += &format!("type: {}\ndiscriminant: {}\n", f.ramification(), f.disc());
            s += &format!("lambda^p (index order): [{}]\n", strs(&raw).join(", "));
            s += &format!("lambda^p (shape): {sv}\n");
            s += &format!("shape Gram ({precision} bits, scaled by 1/prod a_i):\n");
            for r in &gram_rows {
                let cells: Vec<String> = r.iter().map(|x| format!("{x:>14.6}")).collect();
                s += &format!("  {}\n", cells.join(" "));
            }
            s
        }
    })
}

fn census(p: u64, x: f64, windows: &[String], opts: &CensusOptions, format: Format) -> Result<String> {
    let parsed: Vec<Option<ShapeWindow>> = if windows.is_empty() {
        vec![None]
    } else {
        windows
            .iter()
            .map(|w| ShapeWindow::parse(p, w).map(Some).with_context(|| format!("window {w:?}")))
            .collect::<Result<_>>()?
    };
    let scan = equidistribution_scan(p, x, &parsed, opts)?;
    Ok(match format {
        Format::Json => json_string(&json!({
            "schema": SCHEMA,
            "command": "census",
            "p": p,
            "X": x,
            "metadata": {
                "counts": "exact",
                "measure_relative_tolerance": QUADRATURE_TOLERANCE,
                "euler_truncation_y": opts.euler_y.unwrap_or(DEFAULT_EULER_Y),
            },
            "reports": scan.reports,
            "pairwise": scan.pairwise,
        }))?,
        Format::Csv => census_csv(&scan)?,
        Format::Text => census_text(&scan),
    })
}

fn opt(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

fn census_csv(scan: &Scan) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "p",
        "X",
        "window",
        "radicand_bound_wild",
        "radicand_bound_tame",
        "tuple_count_wild",
        "tuple_count_tame",
        "field_count_wild",
        "field_count_tame",
        "measure",
        "predicted_theorem_c_wild",
        "predicted_theorem_c_tame",
        "predicted_section6_wild",
        "predicted_section6_tame",
        "ratio_theorem_c_wild",
        "ratio_theorem_c_tame",
        "ratio_section6_wild",
        "ratio_section6_tame",
        "euler_truncation_y",
        "euler_tail_bound",
    ])?;
    for r in &scan.reports {
        w.write_record([
            r.p.to_string(),
            r.x.to_string(),
            r.window.as_ref().map(|w| w.to_string()).unwrap_or_default(),
            r.radicand_bound_wild.to_string(),
            r.radicand_bound_tame.to_string(),
            r.tuple_count_wild.to_string(),
            r.tuple_count_tame.to_string(),
            r.field_count_wild.to_string(),
            r.field_count_tame.to_string(),
            opt(r.measure),
            opt(r.predicted.constant.wild),
            opt(r.predicted.constant.tame),
            opt(r.predicted.final_count.wild),
            opt(r.predicted.final_count.tame),
            opt(r.ratios.constant.wild),
            opt(r.ratios.constant.tame),
            opt(r.ratios.final_count.wild),
            opt(r.ratios.final_count.tame),
            r.euler_truncation_y.to_string(),
            r.euler_tail_bound.to_string(),
        ])?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn census_text(scan: &Scan) -> String {
    let num = |x: Option<f64>| x.map(|v| format!("{v:.4}")).unwrap_or_else(|| "-".into());
    let mut s = String::new();
    if let Some(r) = scan.reports.first() {
        s += &format!(
            "p = {}, X = {:e}, radicand bounds: wild {}, tame {}\n",
            r.p, r.x, r.radicand_bound_wild, r.radicand_bound_tame
        );
    }
    for (i, r) in scan.reports.iter().enumerate() {
        let w = r.window.as_ref().map(|w| w.to_string()).unwrap_or_else(|| "all".into());
        s += &format!("[{i}] window {w}, measure {}\n", num(r.measure));
        s += &format!(
            "    wild: {} tuples, {} fields, predicted {} / {}, ratio {} / {}\n",
            r.tuple_count_wild,
            r.field_count_wild,
            num(r.predicted.constant.wild),
            num(r.predicted.final_count.wild),
            num(r.ratios.constant.wild),
            num(r.ratios.final_count.wild),
        );
        s += &format!(
            "    tame: {} tuples, {} fields, predicted {} / {}, ratio {} / {}\n",
            r.tuple_count_tame,
            r.field_count_tame,
            num(r.predicted.constant.tame),
            num(r.predicted.final_count.tame),
            num(r.ratios.constant.tame),
            num(r.ratios.final_count.tame),
        );
    }
    if !scan.pairwise.is_empty() {
        s += "pairwise ratios (empirical vs measure):\n";
        for q in &scan.pairwise {
            s += &format!(
                "  [{}]/[{}]: predicted {}, wild {}, tame {}\n",
                q.first,
                q.second,
                num(q.predicted),
                num(q.empirical_wild),
                num(q.empirical_tame)
            );
        }
    }
    s += "predicted columns: multiplicative-constant form / final-count form\n";
    s
}

/// Exact rational part of the final-count constants; the irrational part is
/// `p^(1/(p-1))` (wild) or `p^((p-2)/(p-1))` (tame) in the denominator.
fn display_rationals(p: u64, h: u64) -> (Rational, Rational) {
    let ell = ((p - 1) / 2) as usize;
    let big = |n: u64| Rational::from_integer(n.into());
    let base = big(2 * p - 1) * num_traits::pow(big(2), (p - 2) as usize) * big(h);
    let wild = big(2 * p - 2) / (&base * num_traits::pow(big(p), ell));
    let tame = Rational::one() / (&base * num_traits::pow(big(p), ell - 1));
    (wild, tame)
}

fn fraction_text(q: &Rational, p: u64, root_num: u64) -> String {
    let root = format!("{p}^({root_num}/{})", p - 1);
    format!("{}/({}*{root})", q.numer(), q.denom())
}

fn constants(p: u64, y: u64, format: Format) -> Result<String> {
    let euler = euler_product(p, y)?;
    let class = maillet_class_number(p)?;
    let h = class.h_minus.to_f64().unwrap_or(f64::INFINITY);
    let table: Vec<_> = Normalization::ALL.iter().map(|&n| constants_from(p, &euler, h, n)).collect();
    let exact = class.h_minus.to_u64().map(|h| display_rationals(p, h));
    let forms = exact.as_ref().map(|(w, t)| (fraction_text(w, p, 1), fraction_text(t, p, p - 2)));
    Ok(match format {
        Format::Json => {
            let mut by_norm = serde_json::Map::new();
            for c in &table {
                by_norm.insert(c.normalization.key().into(), serde_json::to_value(c)?);
            }
            json_string(&json!({
                "schema": SCHEMA,
                "command": "constants",
                "p": p,
                "h_minus": class.h_minus.to_string(),
                "maillet_determinant": class.d_p.to_string(),
                "euler_product": euler,
                "constants": Value::Object(by_norm),
                "final_count_forms": forms.as_ref().map(|(w, t)| json!({"wild": w, "tame": t})),
            }))?
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record([
                "p", "normalization", "h_minus", "euler_product", "truncation_y", "tail_bound",
                "wild_coefficient", "tame_coefficient", "c_wild", "c_tame",
            ])?;
            for c in &table {
                w.write_record([
                    p.to_string(),
                    c.normalization.key().to_string(),
                    class.h_minus.to_string(),
                    c.euler_product.to_string(),
                    c.truncation_y.to_string(),
                    c.tail_bound.to_string(),
                    c.wild_coefficient.to_string(),
                    c.tame_coefficient.to_string(),
                    c.c_wild.to_string(),
                    c.c_tame.to_string(),
                ])?;
            }
            String::from_utf8(w.into_inner()?)?
        }
        Format::Text => {
            let mut s = format!("p = {p}\nh- = {} (Maillet determinant {})\n", class.h_minus, class.d_p);
            s += &format!(
                "Euler product over q <= {}: {:.10} (tail bound {:.3e})\n",
                euler.truncation_y, euler.value, euler.tail_bound
            );
            for c in &table {
                s += &format!(
                    "{}: C_wild = {:.10e} (coefficient {:.10e}), C_tame = {:.10e} (coefficient {:.10e})\n",
                    c.normalization.key(),
                    c.c_wild,
                    c.wild_coefficient,
                    c.c_tame,
                    c.tame_coefficient
                );
            }
            if let Some((w, t)) = &forms {
                s += &format!("wild count: {w} * prod_q delta_q * X^(1/{}) ...\n", p - 1);
                s += &format!("tame count: {t} * prod_q delta_q * X^(1/{}) ...\n", p - 1);
            }
            if p == 3 {
                let e = euler.value;
                s += &format!(
                    "reference constants for cubic fields: 2*sqrt(3)/15 * E = {:.10}, sqrt(3)/10 * E = {:.10}\n",
                    2.0 * 3f64.sqrt() / 15.0 * e,
                    3f64.sqrt() / 10.0 * e
                );
            }
            s
        }
    })
}
