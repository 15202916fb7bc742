//! `permdesign` command-line front end.
//!
//! Exit codes: 0 on success, 1 when `--strict` is set and a verdict is
//! false, 2 on usage, format or I/O errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use permdesign::charlier::{charlier, reversed_charlier, verify_orthogonality};
use permdesign::construct::{
    affine_group, cyclic_group, from_latin_square, group_closure, latin_square_example_n5, pgl2,
    to_latin_square, twisted_affine_9, DEFAULT_CLOSURE_CAP,
};
use permdesign::design::{
    build_report, cor2_bound, design_bound, frequencies_with_workers, sm_bound_exceeds_cor2,
    DesignReport, Verdict,
};
use permdesign::exact::format_rational;
use permdesign::io::{
    format_latin_square, format_permset, load_permset, parse_latin_square, store_permset,
};
use permdesign::search::{
    budget_from_env, exhaustive_min_design, search_sharp_set, MinDesignOutcome, SharpSearchOutcome,
    DEFAULT_NODE_BUDGET,
};
use permdesign::{Error, PermSet};

#[derive(Parser, Debug)]
#[command(
    name = "permdesign",
    version,
    about = "Designs in the symmetric group under the fixed-point metric"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    Cyclic,
    Symmetric,
    Latin5,
    Affine,
    #[value(name = "twisted-affine-9")]
    TwistedAffine9,
    Pgl2,
    Closure,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ConvertTarget {
    /// Latin square in, permutation set out.
    Perms,
    /// Permutation set in, Latin square out.
    Latin,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Full design report for a permutation-set file.
    Verify {
        file: PathBuf,
        #[arg(long)]
        t: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Exit with status 1 unless the set is a t-design.
        #[arg(long)]
        strict: bool,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Distance frequencies of a permutation-set file.
    Freq {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Charlier polynomial C_k, or its reversal C_k(n - x) with --n.
    Charlier {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Orthogonality table of the reversed Charlier polynomials at degree n.
    Orthogonality {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        strict: bool,
    },
    /// Write one of the built-in families as a permutation-set file.
    Construct {
        #[arg(value_enum)]
        family: Family,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        q: Option<u64>,
        /// Generator file for `closure`.
        #[arg(long)]
        generators: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustive and backtracking searches.
    Search {
        #[command(subcommand)]
        kind: SearchKind,
    },
    /// Size lower bounds for t-designs.
    Bounds {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Convert between Latin squares and permutation sets.
    Convert {
        input: PathBuf,
        #[arg(long, value_enum)]
        to: ConvertTarget,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum SearchKind {
    /// Smallest identity-containing t-design of S_n (n <= 5).
    MinDesign {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        max_size: usize,
        #[arg(long)]
        budget: Option<u64>,
        /// Exit with status 1 unless a design is found.
        #[arg(long)]
        strict: bool,
    },
    /// Sharply t-transitive set (t=1: n <= 8, t=2: n <= 5).
    Sharp {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Exit with status 1 unless a set is found.
        #[arg(long)]
        strict: bool,
    },
}

enum Failure {
    Verdict,
    Error(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

type CmdResult = std::result::Result<(), Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                return 2;
            }
            let _ = write!(out, "{rendered}");
            return 0;
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => 0,
        Err(Failure::Verdict) => 1,
        Err(Failure::Error(e)) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn io_err(e: std::io::Error) -> Failure {
    Failure::Error(Error::Io(e.to_string()))
}

fn emit(out: &mut dyn Write, text: &str) -> CmdResult {
    out.write_all(text.as_bytes()).map_err(io_err)
}

fn emit_json(out: &mut dyn Write, value: &serde_json::Value) -> CmdResult {
    let text = serde_json::to_string_pretty(value).expect("json value");
    emit(out, &format!("{text}\n"))
}

fn write_set(d: &PermSet, path: Option<&Path>, out: &mut dyn Write) -> CmdResult {
    match path {
        Some(p) => Ok(store_permset(d, p)?),
        None => emit(out, &format_permset(d)),
    }
}

fn resolve_budget(flag: Option<u64>) -> u64 {
    flag.unwrap_or_else(|| budget_from_env(DEFAULT_NODE_BUDGET))
}

fn dispatch(command: Command, out: &mut dyn Write) -> CmdResult {
    match command {
        Command::Verify {
            file,
            t,
            format,
            strict,
            workers,
        } => {
            let d = load_permset(&file)?;
            let report = build_report(&d, t, workers)?;
            match format {
                Format::Json => emit(out, &format!("{}\n", report.to_json()))?,
                Format::Text => emit(out, &report_text(&report))?,
            }
            if strict && !report.is_design() {
                return Err(Failure::Verdict);
            }
            Ok(())
        }
        Command::Freq {
            file,
            format,
            workers,
        } => {
            let d = load_permset(&file)?;
            let f = frequencies_with_workers(&d, workers);
            match format {
                Format::Json => emit_json(
                    out,
                    &json!({"n": d.degree(), "size": d.len(), "frequencies": f.to_strings()}),
                ),
                Format::Text => {
                    let mut text = String::new();
                    for (i, v) in f.to_strings().iter().enumerate() {
                        text.push_str(&format!("f_{i} = {v}\n"));
                    }
                    emit(out, &text)
                }
            }
        }
        Command::Charlier { k, n, format } => {
            let poly = match n {
                Some(n) => reversed_charlier(k, n),
                None => charlier(k),
            };
            match format {
                Format::Text => emit(out, &format!("{poly}\n")),
                Format::Json => emit_json(
                    out,
                    &json!({"k": k, "n": n, "text": poly.to_string(), "coefficients": poly.to_json()}),
                ),
            }
        }
        Command::Orthogonality { n, format, strict } => {
            let report = verify_orthogonality(n);
            match format {
                Format::Json => emit_json(
                    out,
                    &json!({"n": n, "all_pass": report.all_pass(), "entries": report.entries}),
                )?,
                Format::Text => {
                    let mut text = String::new();
                    for e in &report.entries {
                        text.push_str(&format!(
                            "r={} s={} value={} expected={} {}\n",
                            e.r,
                            e.s,
                            format_rational(&e.value),
                            format_rational(&e.expected),
                            if e.pass { "PASS" } else { "FAIL" }
                        ));
                    }
                    text.push_str(&format!("all pass: {}\n", report.all_pass()));
                    emit(out, &text)?
                }
            }
            if strict && !report.all_pass() {
                return Err(Failure::Verdict);
            }
            Ok(())
        }
        Command::Construct {
            family,
            n,
            q,
            generators,
            out: path,
        } => {
            let need_n =
                || n.ok_or_else(|| Failure::Error(Error::Io("this family needs --n".into())));
            let need_q =
                || q.ok_or_else(|| Failure::Error(Error::Io("this family needs --q".into())));
            let d = match family {
                Family::Cyclic => cyclic_group(need_n()?)?,
                Family::Symmetric => PermSet::symmetric_group(need_n()?)?,
                Family::Latin5 => latin_square_example_n5(),
                Family::Affine => affine_group(need_q()?)?,
                Family::TwistedAffine9 => twisted_affine_9(),
                Family::Pgl2 => pgl2(need_q()?)?,
                Family::Closure => {
                    let gens = generators.ok_or_else(|| {
                        Failure::Error(Error::Io("closure needs --generators".into()))
                    })?;
                    group_closure(&load_permset(&gens)?, DEFAULT_CLOSURE_CAP)?
                }
            };
            write_set(&d, path.as_deref(), out)
        }
        Command::Search { kind } => run_search(kind, out),
        Command::Bounds { n, t, format } => {
            if t == 0 || t > n {
                return Err(Error::StrengthOutOfRange {
                    n,
                    t,
                    reason: "need 1 <= t <= n",
                }
                .into());
            }
            let sm = design_bound(n, t);
            let cor2 = cor2_bound(n);
            match format {
                Format::Text => emit(
                    out,
                    &format!(
                        "sm bound: {sm}\ncor2 bound (t=2): {cor2}\nsm exceeds cor2 at t=2: {}\n",
                        sm_bound_exceeds_cor2(n)
                    ),
                ),
                Format::Json => emit_json(
                    out,
                    &json!({
                        "n": n,
                        "t": t,
                        "sm": format!("{sm}/1"),
                        "cor2_t2": format!("{cor2}/1"),
                        "sm_exceeds_cor2": sm_bound_exceeds_cor2(n),
                    }),
                ),
            }
        }
        Command::Convert {
            input,
            to,
            out: path,
        } => match to {
            ConvertTarget::Perms => {
                let text = std::fs::read_to_string(&input).map_err(io_err)?;
                let rows = parse_latin_square(&text)?;
                write_set(&from_latin_square(&rows)?, path.as_deref(), out)
            }
            ConvertTarget::Latin => {
                let d = load_permset(&input)?;
                let text = format_latin_square(&to_latin_square(&d)?);
                match path {
                    Some(p) => std::fs::write(p, text).map_err(io_err),
                    None => emit(out, &text),
                }
            }
        },
    }
}

fn run_search(kind: SearchKind, out: &mut dyn Write) -> CmdResult {
    match kind {
        SearchKind::MinDesign {
            n,
            t,
            max_size,
            budget,
            strict,
        } => {
            let outcome = exhaustive_min_design(n, t, max_size, resolve_budget(budget))?;
            emit_json(out, &outcome.to_json())?;
            if strict && !matches!(outcome, MinDesignOutcome::Found { .. }) {
                return Err(Failure::Verdict);
            }
            Ok(())
        }
        SearchKind::Sharp {
            n,
            t,
            workers,
            budget,
            format,
            out: path,
            strict,
        } => {
            let outcome = search_sharp_set(n, t, workers, resolve_budget(budget))?;
            if let (SharpSearchOutcome::Found(set), Some(p)) = (&outcome, path.as_deref()) {
                store_permset(set, p)?;
            }
            match (format, &outcome) {
                (Format::Json, _) => emit_json(out, &outcome.to_json(n, t))?,
                (Format::Text, SharpSearchOutcome::Found(set)) => {
                    if path.is_none() {
                        emit(out, &format_permset(set))?
                    }
                }
                (Format::Text, SharpSearchOutcome::Exhausted) => {
                    emit(out, "no sharply transitive set exists (search exhausted)\n")?
                }
                (Format::Text, SharpSearchOutcome::BudgetExceeded) => {
                    emit(out, "inconclusive: node budget exceeded\n")?
                }
            }
            if strict && !matches!(outcome, SharpSearchOutcome::Found(_)) {
                return Err(Failure::Verdict);
            }
            Ok(())
        }
    }
}

fn verdict_text(v: Verdict) -> String {
    match v {
        Verdict::Holds(b) => b.to_string(),
        Verdict::NotApplicable => "n/a".into(),
    }
}

fn report_text(r: &DesignReport) -> String {
    let mut s = format!("n = {}, |D| = {}, t = {}\n", r.n, r.size, r.t);
    let freqs: Vec<String> = r
        .frequencies
        .iter()
        .map(|f| format_rational(&f.0))
        .collect();
    s.push_str(&format!("frequencies: {}\n", freqs.join(" ")));
    for m in &r.moments {
        s.push_str(&format!(
            "moment {}: {} (space {}) {}\n",
            m.i,
            format_rational(&m.value.0),
            format_rational(&m.space_value.0),
            if m.equal { "equal" } else { "differs" }
        ));
    }
    match &r.dual_frequencies {
        Some(duals) => {
            for d in duals {
                s.push_str(&format!(
                    "dual frequency {}: {}\n",
                    d.k,
                    format_rational(&d.value.0)
                ));
            }
        }
        None => s.push_str("dual frequencies: n/a (t > n/2)\n"),
    }
    s.push_str(&format!(
        "criteria: moments={} dual={} tcrit={}\n",
        r.criteria.moments,
        verdict_text(r.criteria.dual),
        verdict_text(r.criteria.tcrit)
    ));
    s.push_str(&format!(
        "bounds: sm={} cor2(t=2)={} meets sm equality={} equality clause={}\n",
        r.bounds.sm.0, r.bounds.cor2_t2.0, r.bounds.meets_sm_equality, r.bounds.equality_clause
    ));
    s.push_str(&format!(
        "transitivity: max_t={} sharp={} group={}\n",
        r.transitivity.max_t, r.transitivity.sharp, r.transitivity.is_group
    ));
    s.push_str(&format!(
        "verdict: {}\n",
        if r.is_design() {
            format!("{}-design", r.t)
        } else {
            format!("not a {}-design", r.t)
        }
    ));
    s
}
