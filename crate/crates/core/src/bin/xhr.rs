//! Command-line surface: construct HR / exceptional HR polynomials, run
//! verification suites, and export plot-ready tables.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or parameter error.

use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use xhr_core::error::Error;
use xhr_core::exceptional::{ExceptionalFamily, SeedSpec};
use xhr_core::hr::{hr_partner, hr_poly, HrParams};
use xhr_core::laurent::LaurentPoly;
use xhr_core::quad::{eval_on_circle, CirclePoint};
use xhr_core::rat::{self, parse_rational, Rational};
use xhr_core::verify;

#[derive(Parser)]
#[command(
    name = "xhr",
    about = "Hendriksen-van Rossum Laurent biorthogonal polynomials, Darboux transforms, \
             and their exceptional extensions",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit polynomial coefficient records (JSON or CSV).
    Poly(PolyArgs),
    /// Run a named verification suite and emit a JSON report.
    Verify(VerifyArgs),
    /// Emit tabular data: weight samples, norm sequences, or Gram matrices.
    Table(TableArgs),
}

#[derive(Args, Clone, Default)]
struct CommonArgs {
    /// alpha as an exact rational, e.g. 1/2
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    /// beta as an exact rational, e.g. 1/3
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<String>,
    /// Exceptional type index (1..4)
    #[arg(long)]
    j0: Option<u8>,
    /// Seed degree l0 (>= 1)
    #[arg(long)]
    l0: Option<u32>,
    /// Index range a..b (inclusive; supports negative indices)
    #[arg(long, allow_hyphen_values = true)]
    n: Option<String>,
    /// Double-exponential quadrature level (4..12); defaults to
    /// XHR_QUAD_LEVEL or 9
    #[arg(long)]
    quad_level: Option<u32>,
    /// Output format: json or csv
    #[arg(long)]
    format: Option<String>,
    /// Output path (stdout when absent)
    #[arg(long)]
    out: Option<String>,
    /// Optional flat key=value config file; command-line flags win
    #[arg(long)]
    config: Option<String>,
    /// Numeric tolerance override for verification suites
    #[arg(long)]
    tolerance: Option<f64>,
    /// Multi-step seed list, e.g. "1:1,1:2"
    #[arg(long)]
    seeds: Option<String>,
}

#[derive(Args)]
struct PolyArgs {
    /// Which family: hr or exceptional
    #[arg(long)]
    family: Option<String>,
    /// Emit the biorthogonal partners Q_n instead of P_n
    #[arg(long, default_value_t = false)]
    partner: bool,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name: gevp, adjoint, lemma31, cd, pearson, biorth-classical,
    /// biorth-exceptional, states, l0-one, multistep, moments
    #[arg(long)]
    suite: Option<String>,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct TableArgs {
    /// Table kind: weights, norms, or gram
    #[arg(long)]
    kind: Option<String>,
    /// Which family: hr or exceptional
    #[arg(long)]
    family: Option<String>,
    /// Sample count for weight tables
    #[arg(long)]
    points: Option<usize>,
    #[command(flatten)]
    common: CommonArgs,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Poly(args) => cmd_poly(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Table(args) => cmd_table(args),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

// ---------------------------------------------------------------------------
// option resolution
// ---------------------------------------------------------------------------

/// Flat key=value config; command-line flags take precedence.
struct Resolved {
    values: HashMap<String, String>,
}

impl Resolved {
    fn new(common: &CommonArgs) -> Result<Self, Error> {
        let mut values = HashMap::new();
        if let Some(path) = &common.config {
            let text = fs::read_to_string(path)
                .map_err(|e| Error::Config(format!("cannot read config {path}: {e}")))?;
            for (lineno, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let Some((k, v)) = line.split_once('=') else {
                    return Err(Error::Config(format!(
                        "{path}:{}: expected key=value",
                        lineno + 1
                    )));
                };
                values.insert(k.trim().to_string(), v.trim().to_string());
            }
        }
        let mut this = Self { values };
        this.override_with(common);
        Ok(this)
    }

    fn override_with(&mut self, c: &CommonArgs) {
        let pairs: [(&str, Option<String>); 9] = [
            ("alpha", c.alpha.clone()),
            ("beta", c.beta.clone()),
            ("j0", c.j0.map(|v| v.to_string())),
            ("l0", c.l0.map(|v| v.to_string())),
            ("n", c.n.clone()),
            ("quad-level", c.quad_level.map(|v| v.to_string())),
            ("format", c.format.clone()),
            ("out", c.out.clone()),
            ("seeds", c.seeds.clone()),
        ];
        for (k, v) in pairs {
            if let Some(v) = v {
                self.values.insert(k.to_string(), v);
            }
        }
        if let Some(t) = c.tolerance {
            self.values.insert("tolerance".into(), format!("{t:e}"));
        }
    }

    fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(|s| s.as_str())
    }

    fn rational(&self, key: &str) -> Result<Rational, Error> {
        let raw = self
            .get(key)
            .ok_or_else(|| Error::Config(format!("missing required --{key}")))?;
        parse_rational(raw)
    }

    fn params(&self) -> Result<HrParams, Error> {
        Ok(HrParams::new(self.rational("alpha")?, self.rational("beta")?))
    }

    fn u32_opt(&self, key: &str) -> Result<Option<u32>, Error> {
        self.get(key)
            .map(|s| {
                s.parse::<u32>().map_err(|_| {
                    Error::Config(format!("--{key}: '{s}' is not a nonnegative integer"))
                })
            })
            .transpose()
    }

    fn range(&self, default: (i64, i64)) -> Result<(i64, i64), Error> {
        let Some(raw) = self.get("n") else {
            return Ok(default);
        };
        let Some((a, b)) = raw.split_once("..") else {
            return Err(Error::Config(format!("--n: '{raw}' is not a range a..b")));
        };
        let lo: i64 = a
            .trim()
            .parse()
            .map_err(|_| Error::Config(format!("--n: bad lower bound '{a}'")))?;
        let hi: i64 = b
            .trim()
            .parse()
            .map_err(|_| Error::Config(format!("--n: bad upper bound '{b}'")))?;
        if hi < lo {
            return Err(Error::Config(format!("--n: empty range {lo}..{hi}")));
        }
        Ok((lo, hi))
    }

    fn quad_level(&self) -> Result<u32, Error> {
        let level = match self.get("quad-level") {
            Some(s) => s
                .parse::<u32>()
                .map_err(|_| Error::Config(format!("--quad-level: bad value '{s}'")))?,
            None => match std::env::var("XHR_QUAD_LEVEL") {
                Ok(v) => v
                    .parse::<u32>()
                    .map_err(|_| Error::Config(format!("XHR_QUAD_LEVEL: bad value '{v}'")))?,
                Err(_) => 9,
            },
        };
        if !(4..=12).contains(&level) {
            return Err(Error::Config(format!("quadrature level {level} not in 4..12")));
        }
        Ok(level)
    }

    fn tolerance(&self, default: f64) -> Result<f64, Error> {
        match self.get("tolerance") {
            None => Ok(default),
            Some(s) => s
                .parse::<f64>()
                .map_err(|_| Error::Config(format!("--tolerance: bad value '{s}'"))),
        }
    }

    fn format_is_csv(&self) -> Result<bool, Error> {
        match self.get("format").unwrap_or("json") {
            "json" => Ok(false),
            "csv" => Ok(true),
            other => Err(Error::Config(format!("--format: '{other}' is not json or csv"))),
        }
    }

    fn seed_spec(&self) -> Result<SeedSpec, Error> {
        let j0 = self
            .u32_opt("j0")?
            .ok_or_else(|| Error::Config("missing required --j0".into()))? as u8;
        let l0 = self
            .u32_opt("l0")?
            .ok_or_else(|| Error::Config("missing required --l0".into()))?;
        SeedSpec::new(j0, l0, self.params()?)
    }

    fn seed_list(&self) -> Result<Vec<(u8, u32)>, Error> {
        let raw = self
            .get("seeds")
            .ok_or_else(|| Error::Config("missing required --seeds (e.g. \"1:1,1:2\")".into()))?;
        raw.split(',')
            .map(|part| {
                let Some((j, l)) = part.trim().split_once(':') else {
                    return Err(Error::Config(format!("--seeds: '{part}' is not j0:l0")));
                };
                let j0: u8 = j
                    .parse()
                    .map_err(|_| Error::Config(format!("--seeds: bad type '{j}'")))?;
                let l0: u32 = l
                    .parse()
                    .map_err(|_| Error::Config(format!("--seeds: bad degree '{l}'")))?;
                Ok((j0, l0))
            })
            .collect()
    }

    fn emit(&self, content: &str) -> Result<(), Error> {
        match self.get("out") {
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout
                    .write_all(content.as_bytes())
                    .map_err(|e| Error::Config(format!("write failed: {e}")))
            }
            Some(path) => fs::write(path, content)
                .map_err(|e| Error::Config(format!("cannot write {path}: {e}"))),
        }
    }
}

/// Deterministic float text: 17 significant digits, scientific notation.
fn fmt_float(x: f64) -> String {
    if x == 0.0 {
        "0".into()
    } else {
        format!("{x:.16e}")
    }
}

// ---------------------------------------------------------------------------
// poly
// ---------------------------------------------------------------------------

#[derive(serde::Serialize)]
struct PolyRecord {
    family: String,
    n: i64,
    degree: i64,
    /// [exponent, "p/q"] pairs in increasing exponent order.
    coefficients: Vec<(i64, String)>,
}

fn poly_record(family: &str, n: i64, p: &LaurentPoly) -> PolyRecord {
    PolyRecord {
        family: family.to_string(),
        n,
        degree: p.degree().unwrap_or(0),
        coefficients: p
            .iter()
            .map(|(k, c)| (*k, rat::format_rational(c)))
            .collect(),
    }
}

fn cmd_poly(args: PolyArgs) -> Result<ExitCode, Error> {
    let r = Resolved::new(&args.common)?;
    let family = args
        .family
        .or_else(|| r.get("family").map(str::to_string))
        .ok_or_else(|| Error::Config("missing required --family (hr or exceptional)".into()))?;
    let params = r.params()?;
    let mut records = Vec::new();
    match family.as_str() {
        "hr" => {
            let (lo, hi) = r.range((0, 6))?;
            if lo < 0 {
                return Err(Error::Config("--n: hr indices are nonnegative".into()));
            }
            let label = if args.partner { "hr-partner" } else { "hr" };
            for n in lo..=hi {
                let p = if args.partner {
                    hr_partner(n as u32, &params)?
                } else {
                    hr_poly(n as u32, params.alpha(), params.beta())?
                };
                records.push(poly_record(label, n, &p));
            }
        }
        "exceptional" => {
            let seed = r.seed_spec()?;
            let label = format!(
                "exceptional-{}{}-l{}",
                if args.partner { "partner-" } else { "" },
                seed.j0,
                seed.l0
            );
            let fam = ExceptionalFamily::new(seed);
            let (lo, hi) = r.range((fam.min_index(), 6))?;
            for n in lo..=hi {
                if !fam.contains(n) {
                    continue;
                }
                let p = if args.partner { fam.partner(n)? } else { fam.poly(n)? };
                records.push(poly_record(&label, n, &p));
            }
        }
        other => {
            return Err(Error::Config(format!(
                "--family: '{other}' is not hr or exceptional"
            )))
        }
    }

    let content = if r.format_is_csv()? {
        let mut s = String::from("family,n,degree,exponent,coefficient\n");
        for rec in &records {
            for (k, c) in &rec.coefficients {
                s.push_str(&format!(
                    "{},{},{},{},{}\n",
                    rec.family, rec.n, rec.degree, k, c
                ));
            }
        }
        s
    } else {
        serde_json::to_string_pretty(&records).expect("serializable") + "\n"
    };
    r.emit(&content)?;
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, Error> {
    let r = Resolved::new(&args.common)?;
    let suite = args
        .suite
        .or_else(|| r.get("suite").map(str::to_string))
        .ok_or_else(|| Error::Config("missing required --suite".into()))?;
    let params = r.params()?;
    let level = r.quad_level()?;
    let (_, hi) = r.range((0, 8))?;
    let n_max = u32::try_from(hi.max(0)).unwrap_or(8);

    let report = match suite.as_str() {
        "gevp" => verify::suite_gevp(&params, n_max),
        "adjoint" => verify::suite_adjoint(&params, n_max),
        "lemma31" => verify::suite_lemma31(&params, n_max),
        "cd" => verify::suite_cd(&params, n_max),
        "pearson" => verify::suite_pearson(&params, n_max),
        "moments" => verify::suite_moments(&params, n_max, level, r.tolerance(1e-10)?),
        "biorth-classical" => {
            verify::suite_biorth_classical(&params, n_max, level, r.tolerance(1e-9)?)
        }
        "biorth-exceptional" => {
            let seed = r.seed_spec()?;
            let window = (n_max + 1) as usize;
            verify::suite_biorth_exceptional(seed, window, level, r.tolerance(1e-8)?)
        }
        "states" => verify::suite_states(r.seed_spec()?),
        "l0-one" => verify::suite_l0_one(&params, n_max),
        "multistep" => {
            let seeds = r.seed_list()?;
            verify::suite_multistep(&params, &seeds, n_max, level, r.tolerance(1e-7)?)
        }
        other => return Err(Error::Config(format!("unknown suite '{other}'"))),
    };

    let content = serde_json::to_string_pretty(&report).expect("serializable") + "\n";
    r.emit(&content)?;
    Ok(if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

// ---------------------------------------------------------------------------
// table
// ---------------------------------------------------------------------------

fn cmd_table(args: TableArgs) -> Result<ExitCode, Error> {
    let r = Resolved::new(&args.common)?;
    let kind = args
        .kind
        .or_else(|| r.get("kind").map(str::to_string))
        .ok_or_else(|| Error::Config("missing required --kind (weights, norms, gram)".into()))?;
    let family = args
        .family
        .or_else(|| r.get("family").map(str::to_string))
        .unwrap_or_else(|| "hr".to_string());
    let params = r.params()?;
    let level = r.quad_level()?;
    let is_exceptional = match family.as_str() {
        "hr" => false,
        "exceptional" => true,
        other => {
            return Err(Error::Config(format!(
                "--family: '{other}' is not hr or exceptional"
            )))
        }
    };

    let mut csv = String::new();
    match kind.as_str() {
        "weights" => {
            let weight = if is_exceptional {
                let fam = ExceptionalFamily::new(r.seed_spec()?);
                fam.weight()?
            } else {
                params.weight_condition()?;
                params.weight()
            };
            let count = args
                .points
                .or_else(|| r.get("points").and_then(|s| s.parse().ok()))
                .unwrap_or(512);
            csv.push_str("x,re,im\n");
            for i in 0..count {
                let x = 2.0 * std::f64::consts::PI * (i as f64 + 0.5) / count as f64;
                let v = eval_on_circle(&weight, &CirclePoint::from_angle(x))?;
                csv.push_str(&format!(
                    "{},{},{}\n",
                    fmt_float(x),
                    fmt_float(v.re),
                    fmt_float(v.im)
                ));
            }
        }
        "norms" => {
            csv.push_str("n,formula_value\n");
            if is_exceptional {
                let fam = ExceptionalFamily::new(r.seed_spec()?);
                fam.seed().weight_condition()?;
                let (lo, hi) = r.range((0, 6))?;
                for n in lo..=hi {
                    if !fam.contains(n) || (fam.seed().j0 == 4 && n == fam.min_index()) {
                        continue;
                    }
                    csv.push_str(&format!("{n},{}\n", fmt_float(fam.norm(n)?)));
                }
            } else {
                params.weight_condition()?;
                let (lo, hi) = r.range((0, 6))?;
                for n in lo.max(0)..=hi {
                    csv.push_str(&format!("{n},{}\n", fmt_float(params.norm(n as u32)?)));
                }
            }
        }
        "gram" => {
            let (indices, gram) = if is_exceptional {
                let fam = ExceptionalFamily::new(r.seed_spec()?);
                fam.seed().weight_condition()?;
                let (_, hi) = r.range((0, 6))?;
                let window = (hi.max(0) as usize) + 1;
                verify::exceptional_gram(&fam, window, level)?
            } else {
                let (_, hi) = r.range((0, 4))?;
                verify::classical_gram(&params, u32::try_from(hi.max(0)).unwrap(), level)?
            };
            csv.push_str("m,n,re,im\n");
            for (mi, m) in indices.iter().enumerate() {
                for (ni, n) in indices.iter().enumerate() {
                    let v: Complex64 = gram[mi][ni];
                    csv.push_str(&format!(
                        "{m},{n},{},{}\n",
                        fmt_float(v.re),
                        fmt_float(v.im)
                    ));
                }
            }
        }
        other => {
            return Err(Error::Config(format!(
                "--kind: '{other}' is not weights, norms, or gram"
            )))
        }
    }
    r.emit(&csv)?;
    Ok(ExitCode::SUCCESS)
}
