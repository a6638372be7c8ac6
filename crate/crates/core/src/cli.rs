//! `apolar-kit` command line: one verb per library operation, JSON out.
//!
//! Exit codes: 0 success, 1 domain error (a JSON error object is printed),
//! 2 usage error.

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value as Json};

use crate::apolarity::{catalecticant_matrix, global_annihilator};
use crate::corpus;
use crate::error::{Error, Result};
use crate::groebner::{
    ideal_quotient, intersect_all, saturate, saturate_rabinowitsch, Ideal, IdealJson, DEFAULT_MAX_DEGREE,
};
use crate::polyring::{parse_poly, Family, LinearForm, Polynomial};
use crate::schemes::{
    fat_containment_profile, gad_components, gad_scheme, infer_dimension, is_apolar,
    natural_apolar_scheme, natural_apolar_trace, redundancy_certificate, regularity_report,
    short_scheme_criterion, tangential_shorten, Gad, GadJson, Scheme,
};

pub const MAX_DEGREE_VAR: &str = "APOLAR_KIT_MAX_DEGREE";

#[derive(Debug, Parser)]
#[command(name = "apolar-kit", version, about = "Apolar schemes of homogeneous polynomials, in exact arithmetic")]
pub struct Cli {
    /// Indented JSON output.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// JSON object supplying any flag not given on the command line.
    #[arg(long, global = true, value_name = "PATH")]
    pub file: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct FormArgs {
    /// Homogeneous polynomial in X0..Xn.
    #[arg(long)]
    pub f: String,
    /// Projective dimension; inferred from the largest variable index if omitted.
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(Debug, Args)]
pub struct IdealArg {
    /// Ideal as JSON: {"vars", "family", "generators"}.
    #[arg(long)]
    pub ideal: String,
}

#[derive(Debug, Args)]
pub struct GadArg {
    /// GAD as JSON: {"d", "summands": [{"L", "k", "G"}]}.
    #[arg(long)]
    pub gad: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generators of Ann(F) up to degree deg F + 1.
    Ann(FormArgs),
    /// Natural apolar scheme of F at [L].
    NaturalScheme {
        #[command(flatten)]
        form: FormArgs,
        /// Linear form L.
        #[arg(long)]
        l: String,
        /// Include the intermediate Hankel data.
        #[arg(long)]
        trace: bool,
    },
    /// Scheme evinced by a GAD, with its components.
    GadScheme(GadArg),
    /// Hilbert function of a 0-dimensional scheme.
    Hf(IdealArg),
    /// d-regularity by the Hilbert-function and inverse-system criteria.
    Regularity {
        #[command(flatten)]
        ideal: IdealArg,
        /// Degree to test.
        #[arg(long)]
        d: u32,
    },
    /// Whether the scheme is apolar to F.
    Apolar {
        #[command(flatten)]
        ideal: IdealArg,
        #[arg(long)]
        f: String,
    },
    /// Intersection of ideals.
    Intersect {
        /// Repeat for each ideal.
        #[arg(long, required = true)]
        ideal: Vec<String>,
    },
    /// Colon ideal (I : g).
    Quotient {
        #[command(flatten)]
        ideal: IdealArg,
        /// Polynomial in Y0..Yn.
        #[arg(long)]
        g: String,
    },
    /// Saturation (I : g^∞).
    Saturate {
        #[command(flatten)]
        ideal: IdealArg,
        /// Polynomial in the ideal's variables.
        #[arg(long)]
        g: String,
        /// Use the Rabinowitsch trick instead of iterated quotients.
        #[arg(long)]
        rabinowitsch: bool,
    },
    /// Catalecticant matrix of F in degree i and its rank.
    Catalecticant {
        #[command(flatten)]
        form: FormArgs,
        #[arg(long)]
        i: u32,
    },
    /// Containment of each component in its (k+1)-fat point.
    FatContainment {
        /// Scheme ideal; with --support entries.
        #[arg(long, conflicts_with = "gad")]
        ideal: Option<String>,
        /// Support as `L:k`; repeat per point.
        #[arg(long)]
        support: Vec<String>,
        /// Alternatively, a GAD: its scheme against its own supports.
        #[arg(long)]
        gad: Option<String>,
    },
    /// Redundancy certificate for summand `index` (0-based).
    RedundancyCert {
        #[command(flatten)]
        gad: GadArg,
        #[arg(long)]
        index: usize,
    },
    /// Drop one summand of a tangential GAD via a linear relation.
    TangentialShorten(GadArg),
    /// Length bound 2d + 1 for an apolar scheme.
    ShortCriterion {
        /// Scheme ideal; needs --f.
        #[arg(long, conflicts_with = "gad")]
        ideal: Option<String>,
        /// Homogeneous polynomial in X0..Xn.
        #[arg(long)]
        f: Option<String>,
        /// Alternatively, a GAD and the form it sums to.
        #[arg(long)]
        gad: Option<String>,
    },
    /// Replay the golden fixtures.
    Corpus {
        /// Run every fixture.
        #[arg(long, conflicts_with_all = ["id", "list"])]
        all: bool,
        /// Run one fixture by id.
        #[arg(long)]
        id: Option<String>,
        /// Print the fixture ids.
        #[arg(long)]
        list: bool,
    },
}

/// Parses, runs and renders one command. Returns the exit code and output.
pub fn dispatch<I, S>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let cli = match parse_with_file(&argv) {
        Ok(c) => c,
        Err(Usage(msg, code)) => return (code, msg),
    };
    let max_degree = match max_degree() {
        Ok(m) => m,
        Err(msg) => return (2, msg),
    };
    let (code, value) = match execute(&cli.command, max_degree) {
        Ok((ok, v)) => (if ok { 0 } else { 1 }, v),
        Err(e) => (1, json!({ "error": e.kind(), "message": e.to_string() })),
    };
    let text = if cli.pretty {
        serde_json::to_string_pretty(&value)
    } else {
        serde_json::to_string(&value)
    }
    .expect("plain data");
    (code, text)
}

/// Entry point for the binary.
pub fn run() -> i32 {
    let (code, out) = dispatch(std::env::args());
    use std::io::Write;
    // a closed pipe downstream is not our failure
    let _ = if code == 2 {
        writeln!(std::io::stderr(), "{}", out.trim_end())
    } else {
        writeln!(std::io::stdout(), "{}", out.trim_end())
    };
    code
}

struct Usage(String, i32);

/// `--file PATH` or `--file=PATH`, looked up before clap so the file can
/// supply required flags.
fn file_flag(argv: &[String]) -> Option<String> {
    argv.iter().enumerate().find_map(|(i, a)| {
        if a == "--file" {
            argv.get(i + 1).cloned()
        } else {
            a.strip_prefix("--file=").map(str::to_string)
        }
    })
}

fn parse_with_file(argv: &[String]) -> std::result::Result<Cli, Usage> {
    let usage = |e: clap::Error| Usage(e.render().to_string(), e.exit_code());
    let Some(path) = file_flag(argv) else {
        return Cli::try_parse_from(argv).map_err(usage);
    };
    let text = std::fs::read_to_string(&path).map_err(|e| Usage(format!("cannot read {path}: {e}"), 2))?;
    let mut obj: serde_json::Map<String, Json> = serde_json::from_str(&text)
        .map_err(|e| Usage(format!("{path} is not a JSON object: {e}"), 2))?;
    // a bare GAD or ideal stands for --gad / --ideal
    for (marker, flag) in [("summands", "gad"), ("generators", "ideal")] {
        if obj.contains_key(marker) {
            obj = serde_json::Map::from_iter([(flag.to_string(), Json::Object(obj))]);
            break;
        }
    }
    let mut extended = argv.to_vec();
    for (key, value) in obj {
        let flag = format!("--{key}");
        if argv.iter().any(|a| a == &flag || a.starts_with(&format!("{flag}="))) {
            continue;
        }
        let items = match value {
            Json::Array(items) => items,
            other => vec![other],
        };
        for item in items {
            match item {
                Json::Bool(true) => extended.push(flag.clone()),
                Json::Bool(false) | Json::Null => {}
                Json::String(s) => extended.extend([flag.clone(), s]),
                other => extended.extend([flag.clone(), other.to_string()]),
            }
        }
    }
    Cli::try_parse_from(&extended).map_err(usage)
}

fn max_degree() -> std::result::Result<u32, String> {
    match std::env::var(MAX_DEGREE_VAR) {
        Err(_) => Ok(DEFAULT_MAX_DEGREE),
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| format!("{MAX_DEGREE_VAR} must be a non-negative integer, got `{v}`")),
    }
}

fn form(args: &FormArgs) -> Result<Polynomial> {
    let n = args.n.unwrap_or_else(|| infer_dimension([args.f.as_str()]));
    parse_poly(&args.f, n, Family::X)
}

fn ideal(text: &str) -> Result<Ideal> {
    let j: IdealJson = serde_json::from_str(text).map_err(|e| Error::Input(format!("bad ideal JSON: {e}")))?;
    Ideal::from_json(&j)
}

fn gad(text: &str) -> Result<Gad> {
    let j: GadJson = serde_json::from_str(text).map_err(|e| Error::Input(format!("bad GAD JSON: {e}")))?;
    Gad::from_json(&j)
}

fn scheme(i: Ideal, max_degree: u32) -> Result<Scheme> {
    Ok(Scheme::new(i)?.with_max_degree(max_degree))
}

fn scheme_json(z: &Scheme) -> Result<Json> {
    Ok(serde_json::to_value(z.to_json()?).expect("plain data"))
}

fn ideal_json(i: &Ideal) -> Json {
    json!({ "ideal": i.to_json() })
}

fn x_poly(text: &str, nvars: usize) -> Result<Polynomial> {
    parse_poly(text, nvars - 1, Family::X)
}

/// Runs a command. The flag is false when the command completed but
/// reports failure (a failing corpus run).
fn execute(cmd: &Command, max_degree: u32) -> Result<(bool, Json)> {
    let done = |v: Json| Ok((true, v));
    match cmd {
        Command::Ann(args) => {
            let f = form(args)?;
            let d = f.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
            let gens = global_annihilator(&f, d + 1)?;
            let ann = Ideal::new(f.nvars(), Family::Y, gens)?;
            let hf = (0..=d)
                .map(|i| crate::apolarity::catalecticant_rank(&f, i))
                .collect::<Result<Vec<_>>>()?;
            done(json!({ "ideal": ann.to_json(), "hilbert": hf }))
        }
        Command::NaturalScheme { form: args, l, trace } => {
            let f = form(args)?;
            let n = f.nvars() - 1;
            let l = LinearForm::parse(l, n, Family::X)?;
            let z = natural_apolar_scheme(&f, &l)?.with_max_degree(max_degree);
            let mut out = scheme_json(&z)?;
            if *trace {
                let t = natural_apolar_trace(&f, &l)?;
                out["trace"] = json!({
                    "pivot": t.local.pivot,
                    "base_changed": t.local.base_changed.to_string(),
                    "local": t.local.local.to_string(),
                    "truncation": t.truncation,
                    "hankel": t.hankel.to_json(),
                    "local_annihilator": t.local_ideal().to_json(),
                    "homogenized": t.homogenized.to_json(),
                });
            }
            done(out)
        }
        Command::GadScheme(g) => {
            let g = gad(&g.gad)?;
            let z = scheme(gad_scheme(&g)?.ideal().clone(), max_degree)?;
            let comps = gad_components(&g)?
                .into_iter()
                .map(|c| scheme_json(&c.with_max_degree(max_degree)))
                .collect::<Result<Vec<_>>>()?;
            let mut out = scheme_json(&z)?;
            out["components"] = Json::Array(comps);
            out["form"] = Json::String(g.form().to_string());
            done(out)
        }
        Command::Hf(i) => {
            let h = scheme(ideal(&i.ideal)?, max_degree)?.hilbert()?;
            done(json!({ "hf": h.values, "limit": h.limit, "regularity": h.regularity() }))
        }
        Command::Regularity { ideal: i, d } => {
            let z = scheme(ideal(&i.ideal)?, max_degree)?;
            done(serde_json::to_value(regularity_report(&z, *d)?).expect("plain data"))
        }
        Command::Apolar { ideal: i, f } => {
            let z = scheme(ideal(&i.ideal)?, max_degree)?;
            let f = x_poly(f, z.nvars())?;
            done(json!({ "apolar": is_apolar(&z, &f)? }))
        }
        Command::Intersect { ideal: parts } => {
            let parts = parts.iter().map(|p| ideal(p)).collect::<Result<Vec<_>>>()?;
            done(ideal_json(&intersect_all(&parts)?))
        }
        Command::Quotient { ideal: i, g } => {
            let i = ideal(&i.ideal)?;
            let g = parse_poly(g, i.nvars() - 1, i.family())?;
            done(ideal_json(&ideal_quotient(&i, &g)?))
        }
        Command::Saturate { ideal: i, g, rabinowitsch } => {
            let i = ideal(&i.ideal)?;
            let g = parse_poly(g, i.nvars() - 1, i.family())?;
            let sat = if *rabinowitsch { saturate_rabinowitsch(&i, &g)? } else { saturate(&i, &g)? };
            done(ideal_json(&sat))
        }
        Command::Catalecticant { form: args, i } => {
            let f = form(args)?;
            let m = catalecticant_matrix(&f, *i)?;
            done(json!({ "matrix": m, "rank": m.rank() }))
        }
        Command::FatContainment { ideal: i, support, gad: g } => {
            let (z, supports) = match (i, g) {
                (_, Some(g)) => {
                    let g = gad(g)?;
                    (gad_scheme(&g)?, g.supports())
                }
                (Some(i), None) => {
                    let z = scheme(ideal(i)?, max_degree)?;
                    let n = z.nvars() - 1;
                    let supports = support
                        .iter()
                        .map(|s| {
                            let (l, k) = s
                                .rsplit_once(':')
                                .ok_or_else(|| Error::Input(format!("support `{s}` is not `L:k`")))?;
                            let k = k
                                .trim()
                                .parse()
                                .map_err(|_| Error::Input(format!("bad multiplicity in `{s}`")))?;
                            Ok((LinearForm::parse(l, n, Family::X)?, k))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    (z, supports)
                }
                (None, None) => return Err(Error::Input("need --ideal with --support, or --gad".into())),
            };
            done(json!({ "profile": fat_containment_profile(&z, &supports)? }))
        }
        Command::RedundancyCert { gad: g, index } => {
            let g = gad(&g.gad)?;
            done(match redundancy_certificate(&g, *index)? {
                Some(c) => {
                    let mut v = c.to_json();
                    v["found"] = Json::Bool(true);
                    v
                }
                None => json!({ "found": false, "index": index }),
            })
        }
        Command::TangentialShorten(g) => {
            let g = gad(&g.gad)?;
            done(match tangential_shorten(&g)? {
                Some(s) => {
                    let z = gad_scheme(&s.gad)?.with_max_degree(max_degree);
                    json!({
                        "shortened": true,
                        "dropped": s.dropped,
                        "relation": s.relation.iter().map(|(j, c)| json!({ "summand": j, "lambda": c.to_string() })).collect::<Vec<_>>(),
                        "gad": s.gad.to_json(),
                        "scheme": scheme_json(&z)?,
                    })
                }
                None => json!({ "shortened": false }),
            })
        }
        Command::ShortCriterion { ideal: i, f, gad: g } => {
            let (z, f) = match (i, f, g) {
                (_, _, Some(g)) => {
                    let g = gad(g)?;
                    (gad_scheme(&g)?.with_max_degree(max_degree), g.form())
                }
                (Some(i), Some(f), None) => {
                    let z = scheme(ideal(i)?, max_degree)?;
                    let f = x_poly(f, z.nvars())?;
                    (z, f)
                }
                _ => return Err(Error::Input("need --ideal with --f, or --gad".into())),
            };
            done(serde_json::to_value(short_scheme_criterion(&z, &f)?).expect("plain data"))
        }
        Command::Corpus { all, id, list } => {
            if *list {
                return done(json!(corpus::fixture_ids()));
            }
            let reports = match (all, id) {
                (_, Some(id)) => vec![corpus::run_fixture(id)?],
                (true, None) => corpus::run_all()?,
                (false, None) => return Err(Error::Input("need --all, --id or --list".into())),
            };
            let passed = reports.iter().all(|r| r.passed);
            Ok((passed, json!({ "passed": passed, "fixtures": reports })))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (i32, Json) {
        let (code, out) = dispatch(std::iter::once("apolar-kit").chain(args.iter().copied()));
        (code, serde_json::from_str(&out).unwrap_or(Json::String(out)))
    }

    #[test]
    fn hilbert_of_a_monomial_scheme() {
        let (code, out) = run(&["hf", "--ideal", r#"{"generators":["Y0^2*Y1^3"],"vars":2,"family":"Y"}"#]);
        assert_eq!(code, 0);
        assert_eq!(out, json!({ "hf": [1, 2, 3, 4, 5], "limit": 5, "regularity": 4 }));
    }

    #[test]
    fn usage_and_domain_errors() {
        assert_eq!(run(&["hf"]).0, 2);
        assert_eq!(run(&["no-such-verb"]).0, 2);
        let (code, out) = run(&["apolar", "--ideal", r#"{"generators":["Y0"],"vars":2}"#, "--f", "X0^+"]);
        assert_eq!(code, 1);
        assert_eq!(out["error"], "syntax");
        let (code, out) = run(&["hf", "--ideal", r#"{"generators":["Y0"],"vars":3}"#]);
        assert_eq!(code, 1);
        assert_eq!(out["error"], "not_zero_dimensional");
    }

    #[test]
    fn support_flags() {
        let (code, out) = run(&[
            "fat-containment",
            "--ideal",
            r#"{"generators":["Y0^2*Y1^3"],"vars":2}"#,
            "--support",
            "X0:2",
            "--support",
            "X1:1",
        ]);
        assert_eq!(code, 0, "{out}");
        assert_eq!(out["profile"], json!([true, true]));
    }
}
