//! `crystal`: command-line front end for crystalline graded rings.
//!
//! Exit codes: 0 success, 1 usage/parse/IO error (with an `error kind=…`
//! line on stderr), 2 identity verification failure, 3 not simple.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crystalline::analysis::{classify, gwa_simplicity, subalgebra_member, Simplicity};
use crystalline::doc::RingDoc;
use crystalline::expr::parse_coeff;
use crystalline::gwa::{example, ExampleSpec, DEFAULT_RADIUS};
use crystalline::{Coeff, CrystalRing, Error, Result};

#[derive(Parser)]
#[command(name = "crystal", version, about = "Exact computation in crystalline graded rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit the ring document of a catalog example (verified first).
    Example {
        /// One of: weyl, qweyl, qplane, cyclic-inv, usl2, uqsl2,
        /// bavula-bekkert, class3, general-type, rollup.
        name: String,
        /// Parameters as key=value (e.g. lambda=3/4).
        params: Vec<String>,
        /// Output file (stdout when omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Evaluate an expression and print its canonical form.
    Mul {
        #[arg(short, long)]
        ring: PathBuf,
        expr: String,
    },
    /// Check the ring identities on a window; exit 2 on failure.
    Verify {
        #[arg(short, long)]
        ring: PathBuf,
        #[arg(long, default_value_t = DEFAULT_RADIUS)]
        window: i64,
    },
    /// Decide simplicity of a degree-one GWA; exit 3 when not simple.
    Simple {
        #[arg(short, long)]
        ring: PathBuf,
    },
    /// Bounded subalgebra membership in the degree-zero ring.
    Member {
        #[arg(short, long)]
        ring: PathBuf,
        /// Polynomial in t, or alpha(g,h).
        #[arg(long, allow_hyphen_values = true)]
        target: String,
        /// ';'-separated generators: polynomials in t or alpha(g,h).
        #[arg(long, allow_hyphen_values = true)]
        gens: String,
        #[arg(long)]
        bound: u64,
    },
    /// Report Class 1/2/3 on a window.
    Classify {
        #[arg(short, long)]
        ring: PathBuf,
        #[arg(long, default_value_t = DEFAULT_RADIUS)]
        window: i64,
    },
    /// Print the inverse of u_g in the localization.
    Inv {
        #[arg(short, long)]
        ring: PathBuf,
        /// Group element, e.g. 2, -1 or (1,0).
        #[arg(allow_hyphen_values = true)]
        g: String,
    },
    /// Print a left Ore witness (s', x') with s'·x = x'·s and check it.
    Ore {
        #[arg(short, long)]
        ring: PathBuf,
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// Monoid element as factors h:g;h:g;… meaning ∏ σ_h(α(g,g⁻¹)).
        #[arg(long, allow_hyphen_values = true)]
        s: String,
    },
}

fn load(path: &Path) -> Result<CrystalRing> {
    RingDoc::load(path)?.to_ring()
}

fn parse_params(params: &[String]) -> Result<Vec<(String, String)>> {
    params
        .iter()
        .map(|p| {
            p.split_once('=')
                .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                .ok_or_else(|| Error::ParameterDomain(format!("parameter '{p}' is not of the form key=value")))
        })
        .collect()
}

/// Splits at commas that are not inside parentheses.
fn split_top_level(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

/// A coefficient given as a polynomial or as `alpha(g,h)`.
fn parse_item(ring: &CrystalRing, item: &str) -> Result<Coeff> {
    let item = item.trim();
    if let Some(inner) = item.strip_prefix("alpha(").and_then(|r| r.strip_suffix(')')) {
        let parts = split_top_level(inner);
        let rank = ring.group().rank().max(1);
        let (g, h) = if parts.len() == 2 {
            (parts[0].to_string(), parts[1].to_string())
        } else if parts.len() == 2 * rank {
            (parts[..rank].join(","), parts[rank..].join(","))
        } else {
            return Err(Error::Document(format!("'{item}' is not of the form alpha(g,h)")));
        };
        return ring.alpha_value(&ring.parse_group_elt(&g)?, &ring.parse_group_elt(&h)?);
    }
    parse_coeff(item, ring.domain())
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Example { name, params, output } => {
            let spec = ExampleSpec::from_params(&name, &parse_params(&params)?)?;
            let ring = example(&spec)?;
            let doc = RingDoc::from_ring(&ring, Some(spec.to_string()));
            match output {
                Some(path) => doc.save(&path)?,
                None => print!("{}", doc.to_text()),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Mul { ring, expr } => {
            let ring = load(&ring)?;
            println!("{}", ring.parse(&expr)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { ring, window } => {
            let ring = load(&ring)?;
            let report = ring.verify(window);
            let torsion = ring.verify_torsionfree(window);
            println!("identities: {report}");
            println!("torsion-free: {torsion}");
            for v in report.violations.iter().skip(1).take(9) {
                println!("also: {v}");
            }
            Ok(if report.passed() && torsion.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            })
        }
        Command::Simple { ring } => {
            let verdict = gwa_simplicity(&load(&ring)?)?;
            println!("{verdict}");
            Ok(match verdict.verdict {
                Simplicity::Simple => ExitCode::SUCCESS,
                Simplicity::NotSimple => ExitCode::from(3),
                Simplicity::Inconclusive => ExitCode::from(1),
            })
        }
        Command::Member {
            ring,
            target,
            gens,
            bound,
        } => {
            let ring = load(&ring)?;
            let target = parse_item(&ring, &target)?;
            let gens = gens
                .split(';')
                .filter(|g| !g.trim().is_empty())
                .map(|g| parse_item(&ring, g))
                .collect::<Result<Vec<_>>>()?;
            println!("{}", subalgebra_member(&target, &gens, bound)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Classify { ring, window } => {
            println!("{}", classify(&load(&ring)?, window));
            Ok(ExitCode::SUCCESS)
        }
        Command::Inv { ring, g } => {
            let ring = load(&ring)?;
            let inv = ring.u_inverse(&ring.parse_group_elt(&g)?)?;
            println!("{}", ring.render_localized(&inv));
            Ok(ExitCode::SUCCESS)
        }
        Command::Ore { ring, expr, s } => {
            let ring = load(&ring)?;
            let x = ring.parse(&expr)?;
            let s = ring.parse_denominator(&s)?;
            let w = ring.ore_left_witness(&x, &s)?;
            let lhs = ring.mul(&ring.coeff(w.s_prime.value().clone()), &x)?;
            println!("s' = {}", w.s_prime.value());
            println!("x' = {}", w.x_prime);
            let ok = ring.check_ore(&x, &s, &w)?;
            println!("s'*x = x'*s = {lhs} ({})", if ok { "verified" } else { "MISMATCH" });
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(2) })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            eprintln!("error kind=UsageError: {}", e.kind());
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error kind={}: {e}", e.kind());
            ExitCode::from(1)
        }
    }
}
