use std::fs;
use std::io::{self, IsTerminal, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{CommandFactory, Parser, Subcommand, ValueEnum};
use wh_core::action::{check_module_algebra, component_decomposition};
use wh_core::duality::{Analysis, ClaimId, Reading};
use wh_core::groupoid::validate_groupoid;
use wh_core::instance::{library, Instance, ReportFile, WeakHopfFile};
use wh_core::report::Report;
use wh_core::walg::dual_weak_hopf;

#[derive(Parser)]
#[command(
    name = "wh",
    version,
    about = "Exact checks for groupoid weak Hopf algebras, their smash products and the duality map"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the groupoid, the algebra B, KG and the module algebra axioms.
    Validate { file: PathBuf },
    /// Verify claims about B#KG#KG* for an instance.
    Verify {
        file: PathBuf,
        /// A claim id (thm2.2, prop2.3, prop2.4, prop2.5, thm2.6, rem2.7, thm2.9) or `all`.
        #[arg(long, default_value = "all")]
        claim: String,
        /// Also write the full report as JSON to this path.
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = ReadingArg::Source)]
        reading: ReadingArg,
    },
    /// Print a built-in instance as JSON.
    Builtin {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(library::BUILTINS))]
        name: String,
        /// Write to this path instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the weak Hopf axioms of a tables file, or of KG and KG* for an instance.
    HopfCheck { file: PathBuf },
}

fn parse_claims(s: &str) -> Result<Vec<ClaimId>, String> {
    if s == "all" {
        return Ok(ClaimId::ALL.to_vec());
    }
    s.parse::<ClaimId>().map(|c| vec![c]).map_err(|_| {
        let ids: Vec<_> = ClaimId::ALL.iter().map(|c| c.id()).collect();
        format!("unknown claim `{s}`; expected one of {} or all", ids.join(", "))
    })
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ReadingArg {
    Source,
    Target,
}

impl From<ReadingArg> for Reading {
    fn from(r: ReadingArg) -> Self {
        match r {
            ReadingArg::Source => Reading::Source,
            ReadingArg::Target => Reading::Target,
        }
    }
}

/// Failures that end the run before any verdict: exit code 2.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

fn use_color() -> bool {
    match std::env::var("WH_COLOR").as_deref() {
        Ok("0") => false,
        Ok("1") => true,
        _ => io::stdout().is_terminal(),
    }
}

/// Colors verdict words (whole uppercase tokens only).
fn paint(text: &str, color: bool) -> String {
    if !color {
        return text.to_string();
    }
    let mut out = String::with_capacity(text.len());
    let mut word = String::new();
    let flush = |word: &mut String, out: &mut String| {
        let code = match word.as_str() {
            "HOLDS" | "HOLD" | "PASS" => Some("32"),
            "FAILS" | "FAIL" => Some("31"),
            _ => None,
        };
        match code {
            Some(c) => out.push_str(&format!("\x1b[{c}m{word}\x1b[0m")),
            None => out.push_str(word),
        }
        word.clear();
    };
    for ch in text.chars() {
        if ch.is_ascii_alphanumeric() || ch == '_' {
            word.push(ch);
        } else {
            flush(&mut word, &mut out);
            out.push(ch);
        }
    }
    flush(&mut word, &mut out);
    out
}

fn read_instance(path: &Path) -> Result<Instance, InputError> {
    let text = fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    Instance::parse_json(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn print_reports(reports: &[Report], color: bool) {
    let mut text = String::new();
    for r in reports {
        text.push_str(&r.to_string());
    }
    print!("{}", paint(&text, color));
}

fn validate(path: &Path, color: bool) -> Result<bool, InputError> {
    let inst = read_instance(path)?;
    let groupoid = validate_groupoid(&inst.groupoid);
    let mut algebra = Report::new("algebra B").with_field(inst.field);
    algebra.push(inst.algebra.check_associativity());
    algebra.push(inst.algebra.check_unit());
    let ma = inst.module_algebra()?;
    let mut kg = ma.kg.check_all()?;
    kg.subject = "KG".into();
    let module = check_module_algebra(&ma)?;
    let (_, mut decomposition) = component_decomposition(&ma)?;
    decomposition.subject = format!("{} (informational)", decomposition.subject);
    let reports = [groupoid, algebra, kg, module];
    let ok = reports.iter().all(|r| r.holds);
    print_reports(&reports, color);
    print_reports(std::slice::from_ref(&decomposition), color);
    println!("{}", paint(if ok { "validate: PASS" } else { "validate: FAIL" }, color));
    Ok(ok)
}

fn verify(
    path: &Path,
    claims: &[ClaimId],
    json: Option<&Path>,
    reading: Reading,
    color: bool,
) -> Result<bool, InputError> {
    let inst = read_instance(path)?;
    let an = Analysis::new(inst.module_algebra()?, reading)?;
    let report = ReportFile::build(&inst, &an, claims)?;
    print!("{}", paint(&report.render_text(), color));
    if let Some(out) = json {
        fs::write(out, report.to_json()).map_err(|e| InputError(format!("{}: {e}", out.display())))?;
    }
    Ok(report.holds)
}

fn builtin(name: &str, out: Option<&Path>) -> Result<bool, InputError> {
    let json = library::builtin(name)?.to_json();
    match out {
        Some(p) => fs::write(p, json).map_err(|e| InputError(format!("{}: {e}", p.display())))?,
        None => io::stdout().write_all(json.as_bytes())?,
    }
    Ok(true)
}

fn hopf_check(path: &Path, color: bool) -> Result<bool, InputError> {
    let text = fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    let reports = if value.get("groupoid").is_some() {
        let inst = Instance::parse_json(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
        let ma = inst.module_algebra()?;
        let mut kg = ma.kg.check_all()?;
        kg.subject = "KG".into();
        let mut dual = dual_weak_hopf(&ma.kg, &ma.groupoid)?.check_all()?;
        dual.subject = "KG*".into();
        vec![kg, dual]
    } else {
        let file: WeakHopfFile =
            serde_json::from_value(value).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
        let mut r = file.to_weak_hopf()?.check_all()?;
        r.subject = file.name.clone();
        vec![r]
    };
    let ok = reports.iter().all(|r| r.holds);
    print_reports(&reports, color);
    println!(
        "{}",
        paint(if ok { "hopf-check: PASS" } else { "hopf-check: FAIL" }, color)
    );
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let color = use_color();
    let result = match &cli.command {
        Command::Validate { file } => validate(file, color),
        Command::Verify {
            file,
            claim,
            json,
            reading,
        } => match parse_claims(claim) {
            Ok(claims) => verify(file, &claims, json.as_deref(), (*reading).into(), color),
            Err(msg) => {
                let mut cmd = Cli::command();
                cmd.build();
                let usage = cmd
                    .find_subcommand_mut("verify")
                    .expect("verify subcommand")
                    .render_usage();
                eprintln!("error: {msg}\n\n{usage}");
                return ExitCode::from(2);
            }
        },
        Command::Builtin { name, out } => builtin(name, out.as_deref()),
        Command::HopfCheck { file } => hopf_check(file, color),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paint_colors_whole_words_only() {
        assert_eq!(paint("FAILSAFE HOLDS", false), "FAILSAFE HOLDS");
        let s = paint("FAILSAFE HOLDS [FAIL]", true);
        assert!(s.starts_with("FAILSAFE "));
        assert!(s.contains("\x1b[32mHOLDS\x1b[0m"));
        assert!(s.contains("\x1b[31mFAIL\x1b[0m"));
    }

    #[test]
    fn claim_parser_accepts_all_and_ids() {
        assert_eq!(parse_claims("all").unwrap().len(), 7);
        assert_eq!(parse_claims("thm2.2").unwrap(), vec![ClaimId::Thm22]);
        assert!(parse_claims("thm9.9").unwrap_err().contains("thm2.2"));
    }
}
