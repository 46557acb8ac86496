//! Command-line front end for the positive-monoid workbench.
//!
//! Every subcommand resolves a generator source (a spec file, a registered
//! worked example, or an inline generator list), truncates it if it is
//! parametric, and runs one core computation. Output is a table by default;
//! `--format json` emits a document whose numbers are all exact strings,
//! and `growth` also supports `--format csv` with columns N,count,max_length.
//!
//! Exit status: 0 on success, 1 on domain errors, 2 on usage and parse
//! errors.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use posmon::error::Error;
use posmon::expr::{eval_expr, parse_expr, parse_spec};
use posmon::families::{paper_example, puiseux_normalize, registry, GeneratorFamily};
use posmon::field::rational::Rational;
use posmon::field::{FieldElem, FieldTag};
use posmon::monoid::{Factorization, FinMonoid};
use posmon::oracle;

const DEFAULT_TRUNCATION: u32 = 5;

#[derive(Parser)]
#[command(
    name = "posmon",
    version,
    about = "Exact computations in positive monoids of Q and Q(X)",
    after_help = "Sources: --spec FILE (JSON document), --example ID (see `posmon paper`), or \
                  --gens \"e1,e2,...\" with --field. Parametric sources are truncated to \
                  --truncate N (default 5)."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FieldArg {
    #[value(name = "Q", alias = "q")]
    Q,
    #[value(name = "QX", alias = "qx")]
    QX,
}

impl From<FieldArg> for FieldTag {
    fn from(f: FieldArg) -> FieldTag {
        match f {
            FieldArg::Q => FieldTag::Q,
            FieldArg::QX => FieldTag::QX,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Table,
    Json,
    Csv,
}

#[derive(Args)]
struct SourceArgs {
    /// Monoid spec file (JSON; see the guide for the schema)
    #[arg(long, value_name = "FILE", conflicts_with_all = ["example", "gens"])]
    spec: Option<PathBuf>,

    /// Worked-example id from the registry
    #[arg(long, value_name = "ID", conflicts_with = "gens")]
    example: Option<String>,

    /// Comma-separated generator expressions, e.g. "3,5" or "X^3,X+1*X^2"
    #[arg(long, value_name = "EXPRS")]
    gens: Option<String>,

    /// Ambient field for --gens (sources carry their own field)
    #[arg(long, value_enum)]
    field: Option<FieldArg>,

    /// Truncation size for parametric sources (default 5; ignored for
    /// explicit generator lists)
    #[arg(long, value_name = "N")]
    truncate: Option<u32>,
}

#[derive(Args)]
struct FormatArg {
    /// Output format
    #[arg(long, value_enum, default_value = "table")]
    format: OutputFormat,
}

#[derive(Subcommand)]
enum Command {
    /// Atom list of the (truncated) monoid
    Atoms {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Membership verdict for a target element
    Member {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        format: FormatArg,
        /// Target element expression
        #[arg(long, value_name = "EXPR")]
        target: String,
    },
    /// All factorizations of a target over the atoms
    Factor {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        format: FormatArg,
        #[arg(long, value_name = "EXPR")]
        target: String,
        /// Stop after this many factorizations and flag the output truncated
        #[arg(long, value_name = "K", default_value_t = 10000)]
        max_count: usize,
    },
    /// The length set L(target)
    Lengths {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        format: FormatArg,
        #[arg(long, value_name = "EXPR")]
        target: String,
    },
    /// Does --a divide --target inside the monoid?
    Divides {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        format: FormatArg,
        #[arg(long, value_name = "EXPR")]
        a: String,
        #[arg(long, value_name = "EXPR")]
        target: String,
    },
    /// Archimedean strata with divisor-closedness sample certificates
    Strata {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Every monoid element below a bound
    Below {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        format: FormatArg,
        #[arg(long, value_name = "EXPR")]
        bound: String,
    },
    /// |Z(target)| and max L(target) across a window of truncations
    Growth {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        format: FormatArg,
        #[arg(long, value_name = "EXPR")]
        target: String,
        /// Truncation window, e.g. 1..8
        #[arg(long, value_name = "A..B")]
        range: String,
    },
    /// Monotonicity and atom stability across a window of truncations
    Classify {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        format: FormatArg,
        #[arg(long, value_name = "A..B")]
        range: String,
    },
    /// Rescale the generators into Q when a single scale suffices
    Normalize {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Upper-bound witness for the (truncated) monoid
    Bound {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Evaluate a term at an index value
    Eval {
        #[command(flatten)]
        format: FormatArg,
        #[arg(long, value_name = "EXPR")]
        expr: String,
        /// Index value for n
        #[arg(long, default_value_t = 1)]
        n: u64,
        #[arg(long, value_enum, default_value = "Q")]
        field: FieldArg,
    },
    /// Run a registered worked example and print its standard report
    Paper {
        #[command(flatten)]
        format: FormatArg,
        /// Example id; omit to list the registry
        #[arg(long, value_name = "ID")]
        example: Option<String>,
        #[arg(long, value_name = "N")]
        truncate: Option<u32>,
        /// Print the full report (atoms, stability, growth)
        #[arg(long)]
        report: bool,
    },
    /// Brute-force factorizations over the atoms (debugging aid)
    #[command(hide = true)]
    Oracle {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        format: FormatArg,
        #[arg(long, value_name = "EXPR")]
        target: String,
        /// Comma-separated substitution points for Q(X) instances
        #[arg(long, value_name = "T1,T2,...")]
        points: Option<String>,
    },
}

/// A failure to report, carrying the process exit status.
enum CliError {
    Usage(String),
    Domain(Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(Error::Syntax { .. } | Error::Schema { .. }) => 2,
            CliError::Domain(_) => 1,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Usage(m) => m.clone(),
            CliError::Domain(e) => e.to_string(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        CliError::Domain(e)
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// The resolved generator source: family, its description, and the
/// truncated monoid.
struct Resolved {
    family: GeneratorFamily,
    monoid: FinMonoid,
    source_desc: String,
    truncation: Option<u32>,
}

fn resolve_source(args: &SourceArgs) -> Result<Resolved, CliError> {
    let (family, source_desc) = match (&args.spec, &args.example, &args.gens) {
        (Some(path), None, None) => {
            let doc = std::fs::read_to_string(path)
                .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
            let spec = parse_spec(&doc)?;
            if let Some(f) = args.field {
                if FieldTag::from(f) != spec.field {
                    return Err(usage("--field contradicts the spec file's field"));
                }
            }
            let family = GeneratorFamily::from_spec(&spec)?;
            (family, format!("spec {}", path.display()))
        }
        (None, Some(id), None) => {
            let family = paper_example(id)?;
            if let Some(f) = args.field {
                if FieldTag::from(f) != family.tag() {
                    return Err(usage("--field contradicts the example's field"));
                }
            }
            let desc = format!("example {id}: {}", family.describe());
            (family, desc)
        }
        (None, None, Some(list)) => {
            let tag = FieldTag::from(args.field.unwrap_or(FieldArg::Q));
            let mut gens = Vec::new();
            for piece in list.split(',') {
                let piece = piece.trim();
                if piece.is_empty() {
                    return Err(usage("empty generator expression in --gens"));
                }
                let expr = parse_expr(piece)?;
                if expr.contains_n() {
                    return Err(usage(format!(
                        "explicit generator {piece:?} may not use the index variable n"
                    )));
                }
                gens.push(eval_expr(&expr, 1, tag)?);
            }
            let family = GeneratorFamily::explicit(tag, gens)?;
            (family, format!("generators {list}"))
        }
        _ => {
            return Err(usage(
                "exactly one of --spec, --example, --gens is required (see --help)",
            ))
        }
    };

    let is_explicit =
        matches!(family.kind(), posmon::families::FamilyKind::Explicit(_));
    let truncation = if is_explicit { None } else { Some(args.truncate.unwrap_or(DEFAULT_TRUNCATION)) };
    let monoid = match truncation {
        Some(n) => family.truncate(n)?,
        None => family.truncate(1)?,
    };
    Ok(Resolved { family, monoid, source_desc, truncation })
}

/// Parses a target/bound expression in the monoid's field; the index
/// variable is not meaningful here.
fn parse_element(src: &str, tag: FieldTag) -> Result<FieldElem, CliError> {
    let expr = parse_expr(src)?;
    if expr.contains_n() {
        return Err(usage(format!("{src:?}: a target element may not use the index variable n")));
    }
    Ok(eval_expr(&expr, 1, tag)?)
}

fn parse_range(src: &str) -> Result<(u32, u32), CliError> {
    let Some((a, b)) = src.split_once("..") else {
        return Err(usage(format!("{src:?}: expected a range like 1..8")));
    };
    let lo: u32 = a.trim().parse().map_err(|_| usage(format!("bad range start {a:?}")))?;
    let hi: u32 = b.trim().parse().map_err(|_| usage(format!("bad range end {b:?}")))?;
    if lo < 1 || lo > hi {
        return Err(usage(format!("{src:?}: range must be nonempty and start at 1 or later")));
    }
    Ok((lo, hi))
}

fn strings(items: impl IntoIterator<Item = impl ToString>) -> Vec<Value> {
    items.into_iter().map(|i| Value::String(i.to_string())).collect()
}

fn spec_summary(r: &Resolved) -> Value {
    json!({
        "field": r.monoid.tag().to_string(),
        "source": r.source_desc,
        "truncation": r.truncation.map(|n| n.to_string()),
        "generators": strings(r.monoid.gens()),
        "atoms": strings(r.monoid.atoms()),
    })
}

fn print_header(r: &Resolved) {
    println!("field:       {}", r.monoid.tag());
    println!("source:      {}", r.source_desc);
    if let Some(n) = r.truncation {
        println!("truncation:  {n}");
    }
    println!("generators:  {}", join(r.monoid.gens()));
    println!("atoms:       {}", join(r.monoid.atoms()));
}

fn join(items: &[FieldElem]) -> String {
    let parts: Vec<String> = items.iter().map(|i| i.to_string()).collect();
    if parts.is_empty() {
        "(none)".into()
    } else {
        parts.join(", ")
    }
}

fn emit_json(command: &str, spec: Value, result: Value) {
    let doc = json!({ "command": command, "spec": spec, "result": result });
    println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
}

fn factorization_json(z: &Factorization, atom_count: usize) -> Value {
    json!({
        "exponents": strings(z.to_dense(atom_count)),
        "length": z.length().to_string(),
    })
}

fn factorization_line(z: &Factorization, m: &FinMonoid) -> String {
    let dense = z.to_dense(m.atoms().len());
    let vector: Vec<String> = dense.iter().map(|c| c.to_string()).collect();
    let breakdown: Vec<String> = z
        .iter()
        .map(|(i, c)| format!("{c}*({})", m.atoms()[i]))
        .collect();
    let breakdown = if breakdown.is_empty() { "0 (empty)".to_string() } else { breakdown.join(" + ") };
    format!("({})  length {}  = {}", vector.join(", "), z.length(), breakdown)
}

fn require_table_or_json(format: OutputFormat, command: &str) -> Result<(), CliError> {
    if matches!(format, OutputFormat::Csv) {
        return Err(usage(format!("csv output is only defined for growth, not {command}")));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Atoms { source, format } => {
            require_table_or_json(format.format, "atoms")?;
            let r = resolve_source(&source)?;
            match format.format {
                OutputFormat::Json => emit_json(
                    "atoms",
                    spec_summary(&r),
                    json!({ "atoms": strings(r.monoid.atoms()) }),
                ),
                _ => print_header(&r),
            }
        }
        Command::Member { source, format, target } => {
            require_table_or_json(format.format, "member")?;
            let r = resolve_source(&source)?;
            let x = parse_element(&target, r.monoid.tag())?;
            let verdict = r.monoid.member(&x)?;
            match format.format {
                OutputFormat::Json => emit_json(
                    "member",
                    spec_summary(&r),
                    json!({ "target": x.to_string(), "member": verdict }),
                ),
                _ => {
                    print_header(&r);
                    println!("target:      {x}");
                    println!("member:      {verdict}");
                }
            }
        }
        Command::Factor { source, format, target, max_count } => {
            require_table_or_json(format.format, "factor")?;
            let r = resolve_source(&source)?;
            let x = parse_element(&target, r.monoid.tag())?;
            let (zs, truncated) = r.monoid.factorizations_capped(&x, Some(max_count))?;
            match format.format {
                OutputFormat::Json => emit_json(
                    "factor",
                    spec_summary(&r),
                    json!({
                        "target": x.to_string(),
                        "count": zs.len().to_string(),
                        "truncated": truncated,
                        "factorizations": zs
                            .iter()
                            .map(|z| factorization_json(z, r.monoid.atoms().len()))
                            .collect::<Vec<_>>(),
                    }),
                ),
                _ => {
                    print_header(&r);
                    println!("target:      {x}");
                    let suffix = if truncated { ", output truncated" } else { "" };
                    println!("factorizations ({}{}):", zs.len(), suffix);
                    for z in &zs {
                        println!("  {}", factorization_line(z, &r.monoid));
                    }
                }
            }
        }
        Command::Lengths { source, format, target } => {
            require_table_or_json(format.format, "lengths")?;
            let r = resolve_source(&source)?;
            let x = parse_element(&target, r.monoid.tag())?;
            let ls = r.monoid.length_set(&x)?;
            match format.format {
                OutputFormat::Json => emit_json(
                    "lengths",
                    spec_summary(&r),
                    json!({ "target": x.to_string(), "lengths": strings(&ls) }),
                ),
                _ => {
                    print_header(&r);
                    println!("target:      {x}");
                    let parts: Vec<String> = ls.iter().map(|l| l.to_string()).collect();
                    println!("lengths:     {{{}}}", parts.join(", "));
                }
            }
        }
        Command::Divides { source, format, a, target } => {
            require_table_or_json(format.format, "divides")?;
            let r = resolve_source(&source)?;
            let a = parse_element(&a, r.monoid.tag())?;
            let x = parse_element(&target, r.monoid.tag())?;
            let verdict = r.monoid.divides(&a, &x)?;
            match format.format {
                OutputFormat::Json => emit_json(
                    "divides",
                    spec_summary(&r),
                    json!({ "a": a.to_string(), "target": x.to_string(), "divides": verdict }),
                ),
                _ => {
                    print_header(&r);
                    println!("divides:     {a} | {x} in M: {verdict}");
                }
            }
        }
        Command::Strata { source, format } => {
            require_table_or_json(format.format, "strata")?;
            let r = resolve_source(&source)?;
            let strata = r.monoid.strata();
            let mut rows = Vec::new();
            for (i, f) in strata.iter().enumerate() {
                let samples = stratum_samples(f);
                let certified = r.monoid.check_divisor_closed(f, &samples)?;
                rows.push((i + 1, f.clone(), samples, certified));
            }
            match format.format {
                OutputFormat::Json => emit_json(
                    "strata",
                    spec_summary(&r),
                    json!({
                        "strata": rows
                            .iter()
                            .map(|(i, f, samples, certified)| {
                                json!({
                                    "index": i.to_string(),
                                    "generators": strings(f.gens()),
                                    "samples": strings(samples),
                                    "divisor_closed_on_samples": certified,
                                })
                            })
                            .collect::<Vec<_>>(),
                    }),
                ),
                _ => {
                    print_header(&r);
                    for (i, f, samples, certified) in &rows {
                        println!(
                            "F_{i}: generators {}; {} samples, divisor-closed on samples: {certified}",
                            join(f.gens()),
                            samples.len()
                        );
                    }
                }
            }
        }
        Command::Below { source, format, bound } => {
            require_table_or_json(format.format, "below")?;
            let r = resolve_source(&source)?;
            let b = parse_element(&bound, r.monoid.tag())?;
            let elems = r.monoid.enumerate_below(&b)?;
            match format.format {
                OutputFormat::Json => emit_json(
                    "below",
                    spec_summary(&r),
                    json!({
                        "bound": b.to_string(),
                        "count": elems.len().to_string(),
                        "elements": strings(&elems),
                    }),
                ),
                _ => {
                    print_header(&r);
                    println!("bound:       {b}");
                    println!("elements ({}): {}", elems.len(), join(&elems));
                }
            }
        }
        Command::Growth { source, format, target, range } => {
            let r = resolve_source(&source)?;
            let x = parse_element(&target, r.monoid.tag())?;
            let (lo, hi) = parse_range(&range)?;
            let rows = r.family.growth(&x, lo, hi)?;
            match format.format {
                OutputFormat::Csv => {
                    println!("N,count,max_length");
                    for row in &rows {
                        let ml = row.max_length.map(|l| l.to_string()).unwrap_or_default();
                        println!("{},{},{}", row.n, row.count, ml);
                    }
                }
                OutputFormat::Json => emit_json(
                    "growth",
                    spec_summary(&r),
                    json!({
                        "target": x.to_string(),
                        "rows": rows
                            .iter()
                            .map(|row| {
                                json!({
                                    "n": row.n.to_string(),
                                    "count": row.count.to_string(),
                                    "max_length": row.max_length.map(|l| l.to_string()),
                                })
                            })
                            .collect::<Vec<_>>(),
                    }),
                ),
                OutputFormat::Table => {
                    print_header(&r);
                    println!("growth of Z({x}):");
                    println!("  N  count  max_length");
                    for row in &rows {
                        let ml = row.max_length.map(|l| l.to_string()).unwrap_or_else(|| "-".into());
                        println!("  {:<3}{:<7}{}", row.n, row.count, ml);
                    }
                }
            }
        }
        Command::Classify { source, format, range } => {
            require_table_or_json(format.format, "classify")?;
            let r = resolve_source(&source)?;
            let (lo, hi) = parse_range(&range)?;
            let mut monotone = Vec::new();
            for n in lo.max(2)..=hi.max(2) {
                if n >= lo && n <= hi {
                    monotone.push((n, r.family.classify_monotone(n)?));
                }
            }
            let stability = r.family.atom_stability(lo, hi)?;
            match format.format {
                OutputFormat::Json => emit_json(
                    "classify",
                    spec_summary(&r),
                    json!({
                        "monotone_by_n": monotone
                            .iter()
                            .map(|(n, m)| json!({ "n": n.to_string(), "classification": m.to_string() }))
                            .collect::<Vec<_>>(),
                        "atoms_by_n": stability
                            .atoms_by_n
                            .iter()
                            .map(|(n, atoms)| json!({ "n": n.to_string(), "atoms": strings(atoms) }))
                            .collect::<Vec<_>>(),
                        "stability": stability
                            .flags
                            .iter()
                            .map(|(g, f)| json!({ "generator": g.to_string(), "flag": f.to_string() }))
                            .collect::<Vec<_>>(),
                    }),
                ),
                _ => {
                    print_header(&r);
                    for (n, m) in &monotone {
                        println!("monotonicity at N={n}: {m}");
                    }
                    for (n, atoms) in &stability.atoms_by_n {
                        println!("atoms at N={n}: {}", join(atoms));
                    }
                    for (g, f) in &stability.flags {
                        println!("generator {g}: {f}");
                    }
                }
            }
        }
        Command::Normalize { source, format } => {
            require_table_or_json(format.format, "normalize")?;
            let r = resolve_source(&source)?;
            let gens = match r.truncation {
                Some(n) => r.family.raw_terms(n)?,
                None => r.family.raw_terms(1)?,
            };
            let outcome = puiseux_normalize(r.monoid.tag(), &gens)?;
            match format.format {
                OutputFormat::Json => emit_json(
                    "normalize",
                    spec_summary(&r),
                    match &outcome {
                        Some((scale, rats)) => json!({
                            "normalizable": true,
                            "scale": scale.to_string(),
                            "rational_generators": strings(rats.iter().map(posmon::field::rational::render)),
                        }),
                        None => json!({ "normalizable": false }),
                    },
                ),
                _ => {
                    print_header(&r);
                    match &outcome {
                        Some((scale, rats)) => {
                            println!("normalizable: yes");
                            println!("scale:        {scale}");
                            let parts: Vec<String> =
                                rats.iter().map(posmon::field::rational::render).collect();
                            println!("images:       {}", parts.join(", "));
                        }
                        None => println!("normalizable: no (some generator ratio leaves Q)"),
                    }
                }
            }
        }
        Command::Bound { source, format } => {
            require_table_or_json(format.format, "bound")?;
            let r = resolve_source(&source)?;
            let witness = r.monoid.fg_upper_bound();
            match format.format {
                OutputFormat::Json => emit_json(
                    "bound",
                    spec_summary(&r),
                    json!({ "upper_bound": witness.as_ref().map(|w| w.to_string()) }),
                ),
                _ => {
                    print_header(&r);
                    match &witness {
                        Some(w) => println!("upper bound: {w}"),
                        None => println!("upper bound: none (monoids of Q are unbounded)"),
                    }
                }
            }
        }
        Command::Eval { format, expr, n, field } => {
            require_table_or_json(format.format, "eval")?;
            let tag = FieldTag::from(field);
            let parsed = parse_expr(&expr)?;
            let value = eval_expr(&parsed, n, tag)?;
            match format.format {
                OutputFormat::Json => emit_json(
                    "eval",
                    json!({ "field": tag.to_string(), "expr": expr, "n": n.to_string() }),
                    json!({ "value": value.to_string() }),
                ),
                _ => println!("{value}"),
            }
        }
        Command::Paper { format, example, truncate, report } => {
            require_table_or_json(format.format, "paper")?;
            let Some(id) = example else {
                return run_paper_listing(format.format);
            };
            return run_paper(&id, truncate.unwrap_or(DEFAULT_TRUNCATION), report, format.format);
        }
        Command::Oracle { source, format, target, points } => {
            require_table_or_json(format.format, "oracle")?;
            let r = resolve_source(&source)?;
            let x = parse_element(&target, r.monoid.tag())?;
            let atoms = r.monoid.atoms().to_vec();
            let vectors: Vec<Vec<u64>> = match r.monoid.tag() {
                FieldTag::Q => {
                    let rats: Vec<Rational> = atoms
                        .iter()
                        .map(|a| a.as_rational().expect("Q atoms are rational"))
                        .collect();
                    let x = x.as_rational().expect("Q target is rational");
                    oracle::oracle_factorizations_q(&rats, &x)?.into_iter().collect()
                }
                FieldTag::QX => {
                    let pts = match &points {
                        None => oracle::default_eval_points(&atoms, &x)?,
                        Some(list) => {
                            let mut pts = Vec::new();
                            for piece in list.split(',') {
                                let e = parse_expr(piece.trim())?;
                                let v = eval_expr(&e, 1, FieldTag::Q)?;
                                pts.push(v.as_rational().expect("Q value"));
                            }
                            pts
                        }
                    };
                    oracle::oracle_factorizations_qx(&atoms, &x, &pts)?.into_iter().collect()
                }
            };
            match format.format {
                OutputFormat::Json => emit_json(
                    "oracle",
                    spec_summary(&r),
                    json!({
                        "target": x.to_string(),
                        "count": vectors.len().to_string(),
                        "vectors": vectors
                            .iter()
                            .map(|v| Value::Array(strings(v)))
                            .collect::<Vec<_>>(),
                    }),
                ),
                _ => {
                    print_header(&r);
                    println!("target:      {x}");
                    println!("oracle vectors ({}):", vectors.len());
                    for v in &vectors {
                        let parts: Vec<String> = v.iter().map(|c| c.to_string()).collect();
                        println!("  ({})", parts.join(", "));
                    }
                }
            }
        }
    }
    Ok(())
}

/// Deterministic in-stratum samples: the generators themselves plus their
/// pairwise sums, capped.
fn stratum_samples(f: &FinMonoid) -> Vec<FieldElem> {
    let mut samples = BTreeSet::new();
    for (i, g) in f.gens().iter().enumerate() {
        samples.insert(g.clone());
        for h in &f.gens()[i..] {
            samples.insert(g.add(h).expect("same tag"));
        }
    }
    samples.into_iter().take(15).collect()
}

fn run_paper_listing(format: OutputFormat) -> Result<(), CliError> {
    match format {
        OutputFormat::Json => {
            let entries: Vec<Value> = registry()
                .iter()
                .map(|e| {
                    json!({
                        "id": e.id,
                        "summary": e.summary,
                        "canonical_target": e.canonical_target,
                    })
                })
                .collect();
            emit_json("paper", json!({}), json!({ "examples": entries }));
        }
        _ => {
            println!("registered examples:");
            for e in registry() {
                println!("  {:<28} {}", e.id, e.summary);
            }
        }
    }
    Ok(())
}

fn run_paper(id: &str, n: u32, report: bool, format: OutputFormat) -> Result<(), CliError> {
    let entry = registry()
        .iter()
        .find(|e| e.id == id)
        .ok_or_else(|| CliError::Domain(Error::UnknownExample(id.to_string())))?;
    let family = paper_example(id)?;
    let monoid = family.truncate(n)?;

    let mut growth_rows = Vec::new();
    let mut target_rendered = None;
    let mut stability = None;
    let mut monotone = None;
    if report {
        if let Some(target_src) = entry.canonical_target {
            let expr = parse_expr(target_src)?;
            let target = eval_expr(&expr, 1, family.tag())?;
            target_rendered = Some(target.to_string());
            growth_rows = family.growth(&target, 1, n)?;
        }
        stability = Some(family.atom_stability(1, n)?);
        if n >= 2 {
            monotone = Some(family.classify_monotone(n)?);
        }
    }

    match format {
        OutputFormat::Json => {
            let mut result = json!({
                "id": id,
                "summary": entry.summary,
                "family": family.describe(),
                "field": family.tag().to_string(),
                "truncation": n.to_string(),
                "generators": strings(monoid.gens()),
                "atoms": strings(monoid.atoms()),
            });
            if report {
                let obj = result.as_object_mut().unwrap();
                if let Some(m) = monotone {
                    obj.insert("monotonicity".into(), Value::String(m.to_string()));
                }
                if let Some(s) = &stability {
                    obj.insert(
                        "stability".into(),
                        s.flags
                            .iter()
                            .map(|(g, f)| json!({ "generator": g.to_string(), "flag": f.to_string() }))
                            .collect(),
                    );
                }
                if let Some(t) = &target_rendered {
                    obj.insert("target".into(), Value::String(t.clone()));
                    obj.insert(
                        "growth".into(),
                        growth_rows
                            .iter()
                            .map(|row| {
                                json!({
                                    "n": row.n.to_string(),
                                    "count": row.count.to_string(),
                                    "max_length": row.max_length.map(|l| l.to_string()),
                                })
                            })
                            .collect(),
                    );
                }
            }
            emit_json("paper", json!({ "example": id }), result);
        }
        _ => {
            println!("example:     {id}");
            println!("summary:     {}", entry.summary);
            println!("field:       {}", family.tag());
            println!("family:      {}", family.describe());
            println!("truncation:  {n}");
            println!("generators:  {}", join(monoid.gens()));
            println!("atoms:       {}", join(monoid.atoms()));
            if report {
                if let Some(m) = monotone {
                    println!("monotonicity over the window: {m}");
                }
                if let Some(s) = &stability {
                    for (g, f) in &s.flags {
                        println!("generator {g}: {f}");
                    }
                }
                if let Some(t) = &target_rendered {
                    println!("growth of Z({t}):");
                    println!("  N  count  max_length");
                    for row in &growth_rows {
                        let ml = row.max_length.map(|l| l.to_string()).unwrap_or_else(|| "-".into());
                        println!("  {:<3}{:<7}{}", row.n, row.count, ml);
                    }
                }
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
