//! Command-line front door for the involution-semigroup workbench.
//!
//! Every command prints a report on standard output in `--format text` or
//! `--format json`; both formats carry the same verdict. Exit codes:
//!
//! * `0` — success (identity holds, trace accepted, battery passed, …)
//! * `1` — a property failed (identity refuted, axiom violated, trace
//!   rejected, self-test item failed), with the evidence in the report
//! * `2` — usage or input error

use std::io::Read as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use invsemi::catalog;
use invsemi::classify;
use invsemi::decide::{self, System};
use invsemi::enumerate::{self, Census};
use invsemi::error::Error;
use invsemi::model::{digits_string, parse_digits, InvolutionSemigroup, Table};
use invsemi::rules::{self, RuleSystem};
use invsemi::selftest::{Battery, SelftestConfig};
use invsemi::standard;
use invsemi::trace::DerivationTrace;
use invsemi::word::Word;
use invsemi::zero;

#[derive(Parser)]
#[command(
    name = "invsemi",
    version,
    about = "Workbench for finite involution semigroups",
    long_about = "Census small involution semigroups, classify their finite-basis behaviour, \
                  and work with the identity systems of the four-element models a0 and b0: \
                  check identities with certificates, rewrite words to standard form, and \
                  replay derivation traces."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Worker threads for parallel computations (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,

    /// Longest permutation identity the classifier tries.
    #[arg(long, global = true, default_value_t = 6)]
    perm_bound: usize,

    /// Most variables a brute-force identity sweep may range over.
    #[arg(long, global = true, default_value_t = decide::DEFAULT_VAR_CAP)]
    var_cap: usize,

    /// Directory where census results are cached.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,

    /// Seed for randomized sweeps.
    #[arg(long, global = true, default_value_t = 0x5EED)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Check a multiplication table and involution against the axioms.
    Validate(ModelArgs),
    /// Count semigroups and involution semigroups of a small order.
    Census(OrderArgs),
    /// List every involution semigroup of a small order, one per star class.
    Enumerate(OrderArgs),
    /// Attach finite-basis labels to an order's star classes, or to one model.
    Classify(ClassifyArgs),
    /// Decide whether an identity holds in a model.
    Check(CheckArgs),
    /// Rewrite a mixed word to its standard form, or certify it always zero.
    Normalize(WordArgs),
    /// Print the canonical representative of a word's equality class.
    Canonical(WordArgs),
    /// Replay a derivation trace and accept or reject it.
    VerifyTrace(VerifyTraceArgs),
    /// Print the published catalog of order-4 models with nontrivial star.
    Table1(Table1Args),
    /// Run the bundled acceptance battery.
    Selftest(SelftestArgs),
}

#[derive(Args)]
struct ModelArgs {
    /// Named model: a0, b0, sl3, y2, n2, z2, s3, z3, or a catalog row (a1…c7).
    #[arg(long, conflicts_with_all = ["table", "inv"])]
    model: Option<String>,

    /// Inline multiplication table: n² digits, row-major, entries 1..=n.
    #[arg(long, requires = "inv")]
    table: Option<String>,

    /// Inline involution: n digits, the image of each element in order.
    #[arg(long, requires = "table")]
    inv: Option<String>,
}

impl ModelArgs {
    /// The rewriting system named by `--model`, when there is one.
    fn as_system(&self) -> Option<System> {
        match (&self.model, &self.table) {
            (Some(name), None) => System::from_str(name).ok(),
            _ => None,
        }
    }

    fn resolve(&self) -> Result<InvolutionSemigroup, Error> {
        match (&self.model, &self.table, &self.inv) {
            (Some(name), None, None) => catalog::lookup(name).ok_or_else(|| {
                Error::Domain(format!(
                    "unknown model {name:?}; known names: {}",
                    catalog::model_names().join(", ")
                ))
            }),
            (None, Some(table), Some(inv)) => {
                let mul = parse_digits(table)?;
                let n = (1..=15u8)
                    .find(|&k| (k as usize) * (k as usize) == mul.len())
                    .ok_or_else(|| {
                        Error::Domain(format!(
                            "table must have n² digits; {} digits fit no square",
                            mul.len()
                        ))
                    })?;
                InvolutionSemigroup::new(Table::new(n, mul)?, parse_digits(inv)?)
            }
            _ => Err(Error::Domain(
                "provide --model NAME or --table DIGITS --inv DIGITS".into(),
            )),
        }
    }
}

#[derive(Args)]
struct OrderArgs {
    /// Semigroup order (2 through 5; order 5 takes noticeably longer).
    #[arg(short = 'n', long = "order")]
    n: u8,
}

#[derive(Args)]
struct ClassifyArgs {
    /// Classify every star class of this order.
    #[arg(short = 'n', long = "order")]
    n: Option<u8>,

    #[command(flatten)]
    model: ModelArgs,
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    model: ModelArgs,

    /// Left side of the identity.
    #[arg(long)]
    lhs: String,

    /// Right side of the identity.
    #[arg(long)]
    rhs: String,
}

#[derive(Args)]
struct WordArgs {
    /// Identity system: a0 or b0.
    #[arg(long)]
    system: String,

    /// The word, e.g. "x y x*" or "xyx*" or "a^3 b*".
    #[arg(long)]
    word: String,
}

#[derive(Args)]
struct VerifyTraceArgs {
    /// Rule system to replay under: a0 or b0.
    #[arg(long)]
    rules: String,

    /// Path to the trace JSON; `-` reads standard input.
    #[arg(long)]
    file: String,

    /// Also check every intermediate word stays equivalent to the start in
    /// this model (any name or inline table accepted by `--model` elsewhere).
    #[arg(long)]
    model: Option<String>,
}

#[derive(Args)]
struct Table1Args {
    /// Show a single row by name (a1…c7).
    #[arg(long)]
    name: Option<String>,
}

#[derive(Args)]
struct SelftestArgs {
    /// Shrink the exhaustive word sweep and the random-pair run.
    #[arg(long)]
    quick: bool,
}

/// Verdict of a command that ran to completion.
enum Outcome {
    Pass,
    Fail,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    if cli.jobs > 0 {
        // The global pool can be set only once; a second attempt is harmless.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.jobs)
            .build_global();
    }
    match &cli.command {
        Command::Validate(args) => cmd_validate(cli, args),
        Command::Census(args) => cmd_census(cli, args),
        Command::Enumerate(args) => cmd_enumerate(cli, args),
        Command::Classify(args) => cmd_classify(cli, args),
        Command::Check(args) => cmd_check(cli, args),
        Command::Normalize(args) => cmd_normalize(cli, args),
        Command::Canonical(args) => cmd_canonical(cli, args),
        Command::VerifyTrace(args) => cmd_verify_trace(cli, args),
        Command::Table1(args) => cmd_table1(cli, args),
        Command::Selftest(args) => cmd_selftest(cli, args),
    }
}

fn emit(format: Format, text: &str, json: &serde_json::Value) {
    use std::io::Write as _;
    let rendered;
    let out = match format {
        Format::Text => text,
        Format::Json => {
            rendered = serde_json::to_string_pretty(json).expect("serializable report");
            &rendered
        }
    };
    if writeln!(std::io::stdout().lock(), "{out}").is_err() {
        // The reader (e.g. `head`) closed the pipe; there is no one left to
        // report to, so stop quietly.
        std::process::exit(0);
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> serde_json::Value {
    serde_json::to_value(value).expect("serializable report")
}

fn cmd_validate(cli: &Cli, args: &ModelArgs) -> Result<Outcome, Error> {
    match args.resolve() {
        Ok(m) => {
            emit(
                cli.format,
                &format!(
                    "{}\nvalid: associative, x** = x, (xy)* = y*x*",
                    m.render_text()
                ),
                &json!({ "valid": true, "model": m.render_text() }),
            );
            Ok(Outcome::Pass)
        }
        // A well-formed table that fails an axiom is a refuted property, not
        // a usage error.
        Err(Error::Axiom { law, witness }) => {
            emit(
                cli.format,
                &format!("invalid: {law} fails ({witness})"),
                &json!({ "valid": false, "law": law, "witness": witness }),
            );
            Ok(Outcome::Fail)
        }
        Err(e) => Err(e),
    }
}

/// Compute or reuse the census for `n`, honoring `--cache-dir`.
fn load_census(cli: &Cli, n: u8) -> Result<Census, Error> {
    if !(1..=5).contains(&n) {
        return Err(Error::Capability(format!(
            "census supports orders 1 through 5, got {n}"
        )));
    }
    if let Some(dir) = &cli.cache_dir {
        if let Some(c) = enumerate::read_cache(dir, n)? {
            return Ok(c);
        }
        let c = enumerate::census(n);
        enumerate::write_cache(dir, &c)?;
        return Ok(c);
    }
    Ok(enumerate::census(n))
}

fn cmd_census(cli: &Cli, args: &OrderArgs) -> Result<Outcome, Error> {
    let r = load_census(cli, args.n)?.report();
    let text = format!(
        "order {} census ({} equivalence)\n\
         semigroups up to isomorphism:             {}\n\
         up to isomorphism and anti-isomorphism:   {}\n\
         admitting no involution:                  {}\n\
         involution semigroups:                    {}\n\
           with identity star:                     {}\n\
           properly starred:                       {}",
        r.n,
        r.equivalence,
        r.semigroups_up_to_iso,
        r.semigroups_up_to_iso_antiiso,
        r.no_involution,
        r.involution_semigroups,
        r.trivial_involution,
        r.nontrivial_involution,
    );
    emit(cli.format, &text, &to_json(&r));
    Ok(Outcome::Pass)
}

fn cmd_enumerate(cli: &Cli, args: &OrderArgs) -> Result<Outcome, Error> {
    let census = load_census(cli, args.n)?;
    let classes: Vec<serde_json::Value> = census
        .star_reps
        .iter()
        .map(|s| {
            json!({
                "mul": digits_string(s.table().digits()),
                "inv": digits_string(s.inv_digits()),
                "trivial_star": s.is_trivial_involution(),
            })
        })
        .collect();
    let mut text = format!(
        "{} involution semigroups of order {}, one per star-isomorphism class",
        census.star_reps.len(),
        census.n
    );
    for (i, s) in census.star_reps.iter().enumerate() {
        let star = if s.is_trivial_involution() { "identity star" } else { "starred" };
        text.push_str(&format!("\n{:>3}  {}  ({star})", i + 1, s.render_text()));
    }
    emit(
        cli.format,
        &text,
        &json!({ "n": census.n, "classes": classes }),
    );
    Ok(Outcome::Pass)
}

fn cmd_classify(cli: &Cli, args: &ClassifyArgs) -> Result<Outcome, Error> {
    if let Some(n) = args.n {
        let census = load_census(cli, n)?;
        let entries = classify::classify_census(&census, cli.perm_bound);
        let mut text = format!(
            "{} star classes of order {n} (permutation identities tried up to length {})",
            entries.len(),
            cli.perm_bound
        );
        for e in &entries {
            let name = e.table1_name.as_deref().unwrap_or("-");
            text.push_str(&format!(
                "\n{:<2}  mul={} inv={}  {:<3} {}",
                e.verdict, e.canonical_table, e.inv, name, e.evidence
            ));
        }
        emit(
            cli.format,
            &text,
            &json!({ "n": n, "perm_bound": cli.perm_bound, "entries": to_json(&entries) }),
        );
        Ok(Outcome::Pass)
    } else {
        let m = args.model.resolve()?;
        let c = classify::classify(&m, cli.perm_bound);
        let label = c.verdict.label();
        emit(
            cli.format,
            &format!("{}\nlabel: {label}\nevidence: {}", m.render_text(), c.evidence),
            &json!({
                "model": m.render_text(),
                "label": label,
                "evidence": c.evidence,
            }),
        );
        Ok(Outcome::Pass)
    }
}

fn cmd_check(cli: &Cli, args: &CheckArgs) -> Result<Outcome, Error> {
    let lhs = Word::parse(&args.lhs)?;
    let rhs = Word::parse(&args.rhs)?;
    if let Some(system) = args.model.as_system() {
        // The rewriting systems get the full decision procedure with a
        // re-checkable certificate.
        let verdict = decide::decide_with_cap(system, &lhs, &rhs, cli.var_cap)?;
        let state = if verdict.holds { "holds" } else { "fails" };
        emit(
            cli.format,
            &format!(
                "{} ≈ {} {state} in {}\n{}",
                lhs,
                rhs,
                system.name(),
                verdict.certificate.describe()
            ),
            &json!({
                "model": system.name(),
                "lhs": lhs.render(),
                "rhs": rhs.render(),
                "holds": verdict.holds,
                "certificate": to_json(&verdict.certificate),
            }),
        );
        return Ok(if verdict.holds { Outcome::Pass } else { Outcome::Fail });
    }
    let m = args.model.resolve()?;
    match m.counterexample_with_cap(&lhs, &rhs, cli.var_cap)? {
        None => {
            emit(
                cli.format,
                &format!("{lhs} ≈ {rhs} holds in {} (exhaustive sweep)", m.render_text()),
                &json!({
                    "model": m.render_text(),
                    "lhs": lhs.render(),
                    "rhs": rhs.render(),
                    "holds": true,
                }),
            );
            Ok(Outcome::Pass)
        }
        Some(asgn) => {
            let bindings: Vec<String> =
                asgn.entries().map(|(c, v)| format!("{c}={v}")).collect();
            let lv = m.eval(&lhs, &asgn);
            let rv = m.eval(&rhs, &asgn);
            emit(
                cli.format,
                &format!(
                    "{lhs} ≈ {rhs} fails in {} under {} ({lv} ≠ {rv})",
                    m.render_text(),
                    bindings.join(" ")
                ),
                &json!({
                    "model": m.render_text(),
                    "lhs": lhs.render(),
                    "rhs": rhs.render(),
                    "holds": false,
                    "counterexample": {
                        "assignment": asgn
                            .entries()
                            .map(|(c, v)| (c.to_string(), serde_json::Value::from(v)))
                            .collect::<serde_json::Map<String, serde_json::Value>>(),
                        "lhs_value": lv,
                        "rhs_value": rv,
                    },
                }),
            );
            Ok(Outcome::Fail)
        }
    }
}

fn cmd_normalize(cli: &Cli, args: &WordArgs) -> Result<Outcome, Error> {
    let system = System::from_str(&args.system)?;
    let word = Word::parse(&args.word)?;
    // Zero words have no standard form; certify them instead.
    let zero_report: Option<(String, serde_json::Value)> = match system {
        System::A0 => zero::a_zero_evidence(&word)?
            .map(|cert| (cert.describe(), to_json(&cert))),
        System::B0 => zero::b_zero_witness(&word)?
            .map(|wit| (wit.describe(), to_json(&wit))),
    };
    if let Some((description, evidence)) = zero_report {
        emit(
            cli.format,
            &format!("{word} is always zero in {}\n{description}", system.name()),
            &json!({
                "system": system.name(),
                "word": word.render(),
                "zero": true,
                "evidence": evidence,
                "description": description,
            }),
        );
        return Ok(Outcome::Pass);
    }
    let (normal, trace) = match system {
        System::A0 => {
            let (form, trace) = standard::normalize_a(&word)?;
            (form.word(), trace)
        }
        System::B0 => {
            let (form, trace) = standard::normalize_b(&word)?;
            (form.word(), trace)
        }
    };
    let rules = RuleSystem::for_model(system.name())?;
    let replayed = trace.verify(&rules)?;
    debug_assert_eq!(replayed, normal);
    let mut text = format!(
        "normal form of {word} in {}: {normal}\nderivation: {} steps, replay verified",
        system.name(),
        trace.len()
    );
    for (i, step) in trace.steps.iter().enumerate() {
        text.push_str(&format!("\n  {:>3}. {} ({}) at {}", i + 1, step.rule, step.dir, step.pos));
    }
    emit(
        cli.format,
        &text,
        &json!({
            "system": system.name(),
            "word": word.render(),
            "zero": false,
            "normal": normal.render(),
            "trace": to_json(&trace),
        }),
    );
    Ok(Outcome::Pass)
}

fn cmd_canonical(cli: &Cli, args: &WordArgs) -> Result<Outcome, Error> {
    let system = System::from_str(&args.system)?;
    let word = Word::parse(&args.word)?;
    let is_zero = match system {
        System::A0 => zero::a_zero_evidence(&word)?.is_some(),
        System::B0 => zero::b_zero_witness(&word)?.is_some(),
    };
    if is_zero {
        emit(
            cli.format,
            &format!("canonical form of {word} in {}: 0 (always zero)", system.name()),
            &json!({
                "system": system.name(),
                "word": word.render(),
                "zero": true,
                "canonical": "0",
            }),
        );
        return Ok(Outcome::Pass);
    }
    let canonical = decide::canonical_mixed(system, &word)?;
    emit(
        cli.format,
        &format!("canonical form of {word} in {}: {canonical}", system.name()),
        &json!({
            "system": system.name(),
            "word": word.render(),
            "zero": false,
            "canonical": canonical.render(),
        }),
    );
    Ok(Outcome::Pass)
}

fn cmd_verify_trace(cli: &Cli, args: &VerifyTraceArgs) -> Result<Outcome, Error> {
    let rules = RuleSystem::for_model(&args.rules)?;
    let text = if args.file == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        buf
    } else {
        std::fs::read_to_string(&args.file)?
    };
    let trace = DerivationTrace::from_json(&text)?;
    match trace.verify(&rules) {
        Ok(end) => {
            let mut lines = vec![format!(
                "accepted: {} rewrites to {} in {} steps under {}",
                trace.start,
                end,
                trace.len(),
                rules.name
            )];
            let mut pass = true;
            if let Some(name) = &args.model {
                let m = catalog::lookup(name).ok_or_else(|| {
                    Error::Domain(format!(
                        "unknown model {name:?}; known names: {}",
                        catalog::model_names().join(", ")
                    ))
                })?;
                match check_intermediates(&trace, &rules, &m, cli.var_cap)? {
                    None => lines.push(format!(
                        "every intermediate word is equivalent to the start in {name}"
                    )),
                    Some(bad) => {
                        pass = false;
                        lines.push(format!("model check failed in {name}: {bad}"));
                    }
                }
            }
            emit(
                cli.format,
                &lines.join("\n"),
                &json!({
                    "accepted": pass,
                    "rules": rules.name,
                    "start": trace.start,
                    "end": trace.end,
                    "steps": trace.len(),
                    "notes": lines,
                }),
            );
            Ok(if pass { Outcome::Pass } else { Outcome::Fail })
        }
        Err(e) => {
            emit(
                cli.format,
                &format!("rejected: {e}"),
                &json!({
                    "accepted": false,
                    "rules": rules.name,
                    "start": trace.start,
                    "end": trace.end,
                    "reason": e.to_string(),
                }),
            );
            Ok(Outcome::Fail)
        }
    }
}

/// Replay an already-verified trace step by step and compare every
/// intermediate word with the start in `model`. Returns a description of
/// the first step that breaks equivalence.
fn check_intermediates(
    trace: &DerivationTrace,
    rules: &RuleSystem,
    model: &InvolutionSemigroup,
    var_cap: usize,
) -> Result<Option<String>, Error> {
    let start = Word::parse(&trace.start)?;
    let mut cur = start.clone();
    for (i, step) in trace.steps.iter().enumerate() {
        let rule = rules.get(&step.rule)?;
        let (dir, subst) = step.decode()?;
        cur = rules::apply(&cur, rule, dir, step.pos, &subst)?;
        if model.counterexample_with_cap(&start, &cur, var_cap)?.is_some() {
            return Ok(Some(format!(
                "after step {} ({}), {} is no longer equivalent to {}",
                i + 1,
                step.rule,
                cur,
                start
            )));
        }
    }
    Ok(None)
}

fn cmd_table1(cli: &Cli, args: &Table1Args) -> Result<Outcome, Error> {
    let rows: Vec<&catalog::Table1Entry> = match &args.name {
        Some(name) => {
            let lower = name.to_ascii_lowercase();
            let row = catalog::table1()
                .iter()
                .find(|e| e.name.to_ascii_lowercase() == lower)
                .ok_or_else(|| Error::Domain(format!("no catalog row named {name:?}")))?;
            vec![row]
        }
        None => catalog::table1().iter().collect(),
    };
    let mut text = format!("{} catalog rows (order-4 models with nontrivial star)", rows.len());
    for e in &rows {
        text.push_str(&format!("\n{:<3} {:<3} {}", e.name, e.label, e.text));
    }
    let json_rows: Vec<serde_json::Value> = rows
        .iter()
        .map(|e| json!({ "name": e.name, "label": e.label, "model": e.text }))
        .collect();
    emit(cli.format, &text, &json!({ "rows": json_rows }));
    Ok(Outcome::Pass)
}

fn cmd_selftest(cli: &Cli, args: &SelftestArgs) -> Result<Outcome, Error> {
    let battery = Battery::new(SelftestConfig {
        quick: args.quick,
        seed: cli.seed,
    });
    let report = battery.run();
    emit(cli.format, report.render_text().trim_end(), &to_json(&report));
    Ok(if report.all_passed() { Outcome::Pass } else { Outcome::Fail })
}
