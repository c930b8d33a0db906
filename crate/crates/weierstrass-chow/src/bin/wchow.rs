use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use weierstrass_chow::chowcore::{
    picard_for, picard_generator, picard_json, presentation_for, presentation_json, ChowError,
    Family, PresentationJson,
};
use weierstrass_chow::exactpoly::Polynomial;
use weierstrass_chow::verifykit::{expectation, run_all, thm12_check, SuiteReport};
use weierstrass_chow::zideal::{normal_form, strong_groebner, IdealZ};
use num_traits::One;

/// Exact presentations of integral Chow rings of stacks of hyperelliptic
/// Weierstrass points, with Picard-group queries and a verification suite.
#[derive(Parser)]
#[command(name = "wchow", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    H,
    M0,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::H => Family::H,
            FamilyArg::M0 => Family::M0,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the relation list and the simplified one-generator form
    Present {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        g: i64,
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Print the Picard group: invariant factors, generator, its order
    Picard {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        g: i64,
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run the full verification suite over a genus range
    Verify {
        #[arg(long = "g-min")]
        g_min: i64,
        #[arg(long = "g-max")]
        g_max: i64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check non-membership of the degree-(2g+3) class at one genus
    Thm12 {
        #[arg(long)]
        g: i64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

enum Failure {
    /// exit status 1: a mathematical check failed
    Check(String),
    /// exit status 2: invalid input
    Usage(String),
}

fn usage_or_check(e: ChowError) -> Failure {
    match e {
        ChowError::UnsupportedMarking
        | ChowError::GenusTooSmall
        | ChowError::IndexOutOfRange
        | ChowError::UnknownFamily(_) => Failure::Usage(e.to_string()),
        other => Failure::Check(other.to_string()),
    }
}

#[derive(Serialize, Deserialize)]
struct PresentOutput {
    presentation: PresentationJson,
    simplified: String,
}

/// The one-generator normal form "Z[psi]/(40*psi)" (or "Z" when trivial),
/// validated by re-running the collapse and generation checks.
fn simplified_form(family: Family, g: i64, n: u32) -> Result<String, Failure> {
    let pres = presentation_for(family, g, n).map_err(usage_or_check)?;
    let deg1: Vec<Polynomial> = pres.degree_one_relations().into_iter().cloned().collect();
    let ideal =
        IdealZ::new(pres.ring(), deg1).map_err(|e| Failure::Check(e.to_string()))?;
    let gb = strong_groebner(&ideal);
    for r in pres.higher_relations() {
        let nf = normal_form(r, &gb).map_err(|e| Failure::Check(e.to_string()))?;
        if !nf.is_zero() {
            return Err(Failure::Check(format!(
                "relation {r} does not reduce into the degree-one ideal (remainder {nf})"
            )));
        }
    }
    let pic = picard_for(family, g, n).map_err(usage_or_check)?;
    let (name, _) = picard_generator(family, g, n).map_err(usage_or_check)?;
    if pic.order().is_one() {
        return Ok("Z".to_string());
    }
    if !pic.is_cyclic() || !pic.generates() {
        return Err(Failure::Check(format!(
            "{name} does not generate the degree-one quotient"
        )));
    }
    Ok(format!("Z[{name}]/({}*{name})", pic.order()))
}

fn cmd_present(family: Family, g: i64, n: u32, format: Format) -> Result<String, Failure> {
    let simplified = simplified_form(family, g, n)?;
    let json = presentation_json(family, g, n).map_err(usage_or_check)?;
    match format {
        Format::Json => {
            let out = PresentOutput {
                presentation: json,
                simplified,
            };
            Ok(serde_json::to_string_pretty(&out).expect("serializable"))
        }
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "family {family}, g = {g}, n = {n}").unwrap();
            let vars: Vec<String> = json
                .variables
                .iter()
                .map(|v| format!("{} (weight {})", v.name, v.weight))
                .collect();
            writeln!(s, "variables: {}", vars.join(", ")).unwrap();
            writeln!(s, "relations:").unwrap();
            for r in &json.relations {
                writeln!(s, "  {r}").unwrap();
            }
            writeln!(s, "normal form: {simplified}").unwrap();
            Ok(s)
        }
    }
}

fn cmd_picard(family: Family, g: i64, n: u32, format: Format) -> Result<String, Failure> {
    let pic = picard_for(family, g, n).map_err(usage_or_check)?;
    let expect = expectation(family, g, n).map_err(usage_or_check)?;
    match format {
        Format::Json => {
            let out = picard_json(family, g, n).map_err(usage_or_check)?;
            Ok(serde_json::to_string_pretty(&out).expect("serializable"))
        }
        Format::Text => {
            let mut s = String::new();
            if pic.order().is_one() {
                writeln!(s, "trivial").unwrap();
            } else {
                writeln!(s, "Z/{}, generator {}", pic.order(), expect.generator_name).unwrap();
            }
            let factors: Vec<String> = pic
                .invariant_factors
                .iter()
                .filter(|f| !f.is_one())
                .map(|f| f.to_string())
                .collect();
            writeln!(s, "invariant factors: [{}]", factors.join(", ")).unwrap();
            writeln!(s, "generator order: {}", pic.generator_order).unwrap();
            Ok(s)
        }
    }
}

fn cmd_verify(g_min: i64, g_max: i64, format: Format) -> Result<String, Failure> {
    let report = run_all(g_min, g_max).map_err(|e| Failure::Usage(e.to_string()))?;
    let rendered = match format {
        Format::Json => report.to_json_lines(),
        Format::Text => render_report_text(&report),
    };
    if report.all_pass() {
        Ok(rendered)
    } else {
        // show the report, then fail
        print!("{rendered}");
        Err(Failure::Check("verification suite has failing checks".to_string()))
    }
}

fn render_report_text(report: &SuiteReport) -> String {
    let mut s = String::new();
    for e in &report.entries {
        let status = if e.pass { "PASS" } else { "FAIL" };
        writeln!(
            s,
            "{status} {} family={} g={} n={}: {}",
            e.check, e.family, e.g, e.n, e.witness
        )
        .unwrap();
    }
    let total = report.entries.len();
    let passed = report.entries.iter().filter(|e| e.pass).count();
    writeln!(s, "{passed}/{total} checks passed").unwrap();
    s
}

fn cmd_thm12(g: i64, format: Format) -> Result<String, Failure> {
    if g < 2 {
        return Err(Failure::Usage("genus must be at least 2".to_string()));
    }
    let e = thm12_check(g);
    let rendered = match format {
        Format::Json => format!("{}\n", serde_json::to_string(&e).expect("serializable")),
        Format::Text => format!(
            "{} {} g={}: {}\n",
            if e.pass { "PASS" } else { "FAIL" },
            e.check,
            e.g,
            e.witness
        ),
    };
    if e.pass {
        Ok(rendered)
    } else {
        print!("{rendered}");
        Err(Failure::Check(e.witness))
    }
}

fn emit(text: String, output: Option<PathBuf>) -> Result<(), Failure> {
    match output {
        Some(path) => std::fs::write(&path, text)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::Present {
            family,
            g,
            n,
            format,
            output,
        } => cmd_present(family.into(), g, n, format).and_then(|t| emit(t, output)),
        Cmd::Picard {
            family,
            g,
            n,
            format,
            output,
        } => cmd_picard(family.into(), g, n, format).and_then(|t| emit(t, output)),
        Cmd::Verify {
            g_min,
            g_max,
            format,
            output,
        } => cmd_verify(g_min, g_max, format).and_then(|t| emit(t, output)),
        Cmd::Thm12 { g, format, output } => {
            cmd_thm12(g, format).and_then(|t| emit(t, output))
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
