//! `octavic`: Shioda invariants, relations, weighted projective
//! normalization and the height-bounded curve database from the command line.

mod poly;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use octavic::arith::{format_rational, parse_rational};
use octavic::database::{build_database, Format, TOOL_VERSION};
use octavic::relations::{RelationSet, RELATIONS_ENV};
use octavic::shioda::{moduli_point, shioda_invariants};
use octavic::tsuyumine::{binomial_coefficients, roots_of_octavic, tsuyumine_invariants, RootOptions};
use octavic::wps::{
    absolute_minimal, absolute_reductions, height, height_leq, minimal_tuple_with_scale, normalize_convention_flagged,
    unit_twists, WeightedPoint,
};
use serde_json::json;

/// Relations shipped with the tool, used when neither `--relations` nor the
/// environment variable names a file.
const BUNDLED_RELATIONS: &str = include_str!("../../../data/relations.json");

#[derive(Parser)]
#[command(name = "octavic", version, about = "Invariants and a database of genus 3 hyperelliptic curves")]
struct Cli {
    /// Relation artifact (defaults to the bundled one)
    #[arg(long, global = true, env = RELATIONS_ENV)]
    relations: Option<PathBuf>,
    /// Print JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Shioda invariants and the normalized moduli point of a curve
    Invariants {
        /// `x^7-1`, `y^2=x^8+x+1`, or nine coefficients `a0,...,a8` of sum a_i X^i Y^(8-i)
        curve: String,
    },
    /// Reconstruct the syzygy and discriminant relations by interpolation
    Derive {
        #[arg(long, default_value_t = 2320)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Evaluate the syzygy and discriminant at a tuple
    Check { tuple: String },
    /// Minimal, absolute minimal and normalized forms of a tuple
    Normalize { tuple: String },
    /// Weighted moduli height of a tuple
    Height {
        tuple: String,
        /// Also test height <= this bound (e.g. 3/2 or 1.5)
        #[arg(long)]
        leq: Option<String>,
    },
    /// Enumerate all curves up to a height bound
    Build {
        #[arg(long)]
        height: String,
        #[arg(long, default_value_t = 0)]
        workers: usize,
        #[arg(long, default_value = "csv")]
        format: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Numeric root-difference invariants I2..I10 (experimental)
    Tsuyumine {
        curve: String,
        #[arg(long, default_value_t = 10)]
        digits: usize,
        #[arg(long, default_value_t = 1e-10)]
        tolerance: f64,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            let code = e.downcast_ref::<octavic::Error>().map_or(1, |e| e.exit_code());
            ExitCode::from(code as u8)
        }
    }
}

fn load_relations(path: &Option<PathBuf>) -> Result<RelationSet> {
    match path {
        Some(p) => RelationSet::load(p).map_err(|e| anyhow::Error::new(e).context(format!("loading {}", p.display()))),
        None => Ok(RelationSet::from_json(BUNDLED_RELATIONS)?),
    }
}

fn parse_tuple(s: &str) -> Result<WeightedPoint> {
    let body = s.trim().trim_start_matches('[').trim_end_matches(']');
    let coords: Vec<BigInt> = body
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<BigInt>().with_context(|| format!("bad coordinate {t:?}")))
        .collect::<Result<_>>()?;
    let Ok(coords) = <[BigInt; 7]>::try_from(coords) else {
        bail!(octavic::Error::Input(format!("expected 7 integers (J2..J8), got {s:?}")));
    };
    Ok(WeightedPoint::new(coords))
}

fn run(cli: Cli) -> Result<()> {
    match &cli.command {
        Command::Invariants { curve } => cmd_invariants(curve, cli.json),
        Command::Derive { samples, seed, out } => {
            let set = RelationSet::derive(*samples, *seed)?;
            set.save(out)?;
            let report = json!({
                "out": out.display().to_string(),
                "hash": set.hash(),
                "syzygy_terms": set.syzygy().len(),
                "discriminant_terms": set.discriminant().len(),
                "provenance": set.provenance(),
            });
            println!("{}", serde_json::to_string_pretty(&report)?);
            Ok(())
        }
        Command::Check { tuple } => {
            let t = parse_tuple(tuple)?;
            let rel = load_relations(&cli.relations)?;
            let syz = rel.syzygy().eval_integers(t.coords());
            let disc = rel.disc_value(&t);
            if cli.json {
                println!(
                    "{}",
                    json!({
                        "tuple": t,
                        "syzygy": format_rational(&syz),
                        "syzygy_check": rel.syzygy_check(&t),
                        "disc": format_rational(&disc),
                        "disc_check": rel.disc_check(&t),
                        "relations": rel.hash(),
                    })
                );
            } else {
                println!("tuple        {t}");
                println!("F(t)         {}", format_rational(&syz));
                println!("syzygy       {}", if rel.syzygy_check(&t) { "satisfied" } else { "not satisfied" });
                println!("P(t)         {}", format_rational(&disc));
                println!("discriminant {}", if rel.disc_check(&t) { "nonzero" } else { "zero" });
                println!("relations    {}", rel.hash());
            }
            Ok(())
        }
        Command::Normalize { tuple } => {
            let t = parse_tuple(tuple)?;
            if t.is_zero() {
                bail!(octavic::Error::DegenerateTuple);
            }
            print_chain(&t, cli.json);
            Ok(())
        }
        Command::Height { tuple, leq } => {
            let t = parse_tuple(tuple)?;
            let h = height(&t);
            let bound = leq.as_deref().map(parse_rational).transpose()?;
            let within = bound.as_ref().map(|b| height_leq(&octavic::wps::minimal_tuple(&t), b));
            if cli.json {
                println!(
                    "{}",
                    json!({"tuple": t, "height": format!("{:.6}", h.approx()), "witness": h, "leq": within})
                );
            } else {
                println!("{}", h.display());
                if let (Some(b), Some(w)) = (&bound, within) {
                    println!("height <= {}: {w}", format_rational(b));
                }
            }
            Ok(())
        }
        Command::Build {
            height,
            workers,
            format,
            out,
        } => {
            let h = parse_rational(height)?;
            let format: Format = format.parse()?;
            let rel = load_relations(&cli.relations)?;
            let db = build_database(&h, &rel, *workers)?;
            db.emit(format, out)?;
            println!(
                "{}",
                json!({
                    "height": format_rational(&h),
                    "relations": rel.hash(),
                    "version": TOOL_VERSION,
                    "counts": db.counts,
                    "out": out.display().to_string(),
                })
            );
            Ok(())
        }
        Command::Tsuyumine {
            curve,
            digits,
            tolerance,
        } => {
            let f = poly::parse_curve(curve)?;
            let a = binomial_coefficients(&f)?;
            let opts = RootOptions {
                tolerance: *tolerance,
                ..RootOptions::default()
            };
            let rc = roots_of_octavic(&a, opts)?;
            let values = tsuyumine_invariants(&rc.roots);
            if cli.json {
                let v: Vec<_> = values.iter().map(|z| json!([z.re, z.im])).collect();
                println!("{}", json!({"experimental": true, "values": v}));
            } else {
                println!("experimental: root-difference sums, not used by the exact pipeline");
                for (k, z) in values.iter().enumerate() {
                    println!("I{:<2} {:.*e} {:+.*e}i", k + 2, digits, z.re, 2, z.im);
                }
            }
            Ok(())
        }
    }
}

fn cmd_invariants(curve: &str, as_json: bool) -> Result<()> {
    let f = poly::parse_curve(curve)?;
    let inv = shioda_invariants(&f)?;
    let values: Vec<String> = (2..=10).chain([14]).map(|i| format_rational(inv.get(i))).collect();
    let point = moduli_point(&f)?;
    if as_json {
        let (min, _) = minimal_tuple_with_scale(&point);
        let (norm, tie) = normalize_convention_flagged(&absolute_minimal(&min));
        println!(
            "{}",
            json!({
                "form": f.to_string(),
                "invariants": (2..=10).chain([14]).map(|i| format!("J{i}")).zip(values.iter().map(|v| json!(v))).collect::<serde_json::Map<_, _>>(),
                "point": point,
                "minimal": min,
                "normalized": norm,
                "tie": tie,
                "height": format!("{:.6}", height(&norm).approx()),
            })
        );
        return Ok(());
    }
    println!("form    {f}");
    for (i, v) in (2..=10).chain([14]).zip(values) {
        println!("J{i:<6} {v}");
    }
    print_chain(&point, false);
    Ok(())
}

fn print_chain(t: &WeightedPoint, as_json: bool) {
    let (min, lambda) = minimal_tuple_with_scale(t);
    let abs = absolute_minimal(&min);
    let reductions = absolute_reductions(&min);
    let (norm, tie) = normalize_convention_flagged(&abs);
    let twists = unit_twists(&abs);
    let h = height(&norm);
    let g = abs.support_gcd();
    let flips: Vec<String> = abs
        .coords()
        .iter()
        .zip(norm.coords())
        .zip(2..)
        .filter(|((a, b), _)| a != b)
        .map(|(_, i)| format!("J{i}"))
        .collect();
    let reductions_text: Vec<String> = reductions.iter().map(|(q, a)| format!("{q}^({a}/{g})")).collect();
    if as_json {
        println!(
            "{}",
            json!({
                "tuple": t,
                "minimal": min,
                "minimal_scale": lambda.to_string(),
                "absolute_minimal": abs,
                "reductions": reductions_text,
                "normalized": norm,
                "sign_flips": flips,
                "tie": tie,
                "twists": twists,
                "height": format!("{:.6}", h.approx()),
                "witness": h,
            })
        );
        return;
    }
    println!("point             {t}");
    println!("minimal           {min} (divided by lambda = {lambda})");
    if reductions_text.is_empty() {
        println!("absolute minimal  {abs}");
    } else {
        println!("absolute minimal  {abs} (lambda = 1/({}))", reductions_text.join(" * "));
    }
    println!("normalized        {norm}");
    if !flips.is_empty() {
        println!("note: normalization changed the sign of {} (unit twist of order dividing {})", flips.join(", "), 2 * g);
    }
    if tie {
        println!("note: sign convention tied; graded-lexicographic order decided");
    }
    println!("height            {}", h.display());
}

