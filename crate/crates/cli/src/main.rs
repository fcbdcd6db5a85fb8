mod store;

use std::collections::BTreeMap;
use std::process::ExitCode;

use branchcover::analysis::{classify, cm_report, group_info, CmReport, CmStatus, Limits, Subject};
use branchcover::cm::CmType;
use branchcover::families::FamilySpec;
use branchcover::modp::is_prime;
use branchcover::{Error, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use store::{ScanRecord, Store};

#[derive(Parser)]
#[command(
    name = "branchcover",
    version,
    about = "Galois covers of P^1 with three branch points"
)]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Group construction and character-table summary.
    Group {
        #[command(subcommand)]
        command: GroupCommand,
    },
    /// Hurwitz classification, specialness and CM reports.
    Covers {
        #[command(subcommand)]
        command: CoversCommand,
    },
    /// Classify a range of family members into a JSONL store.
    Scan {
        #[arg(long, value_enum)]
        family: ScanFamily,
        #[arg(long)]
        q_max: u32,
        #[arg(long, default_value_t = 6)]
        n_max: u32,
        #[arg(long)]
        out: String,
    },
}

#[derive(Subcommand)]
enum GroupCommand {
    /// SPEC is a family ("metacyclic:q=7,n=3", "dicyclic:q=5", "quaternion8", "cyclic:n=9") or file:PATH.
    Info { spec: String },
}

#[derive(Subcommand)]
enum CoversCommand {
    Classify {
        spec: String,
    },
    Cm {
        spec: String,
        /// Datum as comma-separated words, e.g. "a,b,b^3*a^-1".
        #[arg(long)]
        ssg: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ScanFamily {
    Metacyclic,
    Dicyclic,
}

fn print_json<T: Serialize>(v: &T) -> Result<()> {
    let s = serde_json::to_string_pretty(v).map_err(|e| Error::Internal(e.to_string()))?;
    println!("{s}");
    Ok(())
}

fn fmt_schur(m: branchcover::chartable::SchurIndex) -> String {
    m.value().map_or("?".into(), |v| v.to_string())
}

fn fmt_type(t: &CmType) -> String {
    let parts: Vec<String> = t
        .conductors
        .iter()
        .enumerate()
        .map(|(f, n)| {
            let ex: Vec<String> = t.exponents(f).iter().map(|u| u.to_string()).collect();
            format!("Q(zeta_{n}) {{{}}}", ex.join(","))
        })
        .collect();
    parts.join(" x ")
}

fn cm_summary(r: &CmReport) -> String {
    match (r.status, r.cm_type()) {
        (CmStatus::Cm, Some(t)) => {
            format!("cm {} verified={}", fmt_type(&t), r.verified_by_matrices)
        }
        (status, _) => status.as_str().to_string(),
    }
}

fn group_info_cmd(spec: &str, json: bool, limits: Limits) -> Result<()> {
    let s = Subject::load(spec, limits)?;
    let info = group_info(&s);
    if json {
        return print_json(&info);
    }
    println!(
        "{}  order {}  classes {}",
        info.spec, info.order, info.class_count
    );
    println!(
        "{:<14} {:>4} {:>4} {:>7} {:>4} {:>7}",
        "char", "deg", "ind", "[Q(x)]", "m_Q", "m_Q(i)"
    );
    for c in &info.characters {
        println!(
            "{:<14} {:>4} {:>4} {:>7} {:>4} {:>7}",
            c.label,
            c.degree,
            c.indicator,
            c.field_degree_q,
            fmt_schur(c.m_q),
            fmt_schur(c.m_qi4)
        );
    }
    Ok(())
}

fn classify_cmd(spec: &str, json: bool, limits: Limits) -> Result<()> {
    let s = Subject::load(spec, limits)?;
    let c = classify(&s, limits)?;
    if json {
        return print_json(&c);
    }
    println!(
        "{}  order {}  data {}  classes {}",
        c.spec,
        c.order,
        c.ssg_count,
        c.classes.len()
    );
    for r in &c.classes {
        let m = r.cm.local_monodromy;
        println!(
            "class {}  size {}  m=({},{},{})  g={}  N={}  {}  {}",
            r.id,
            r.orbit_size,
            m[0],
            m[1],
            m[2],
            r.cm.genus,
            r.cm.n,
            if r.cm.n == 0 {
                "special"
            } else {
                "not-special"
            },
            cm_summary(&r.cm)
        );
    }
    Ok(())
}

fn cm_cmd(spec: &str, ssg: Option<&str>, json: bool, limits: Limits) -> Result<()> {
    let s = Subject::load(spec, limits)?;
    let r = cm_report(&s, ssg, limits)?;
    if json {
        return print_json(&r);
    }
    println!(
        "{}  class {}  datum ({})",
        r.spec,
        r.hurwitz_class,
        r.ssg.join(", ")
    );
    let m = r.local_monodromy;
    println!(
        "m=({},{},{})  g={}  N={}  status {}",
        m[0],
        m[1],
        m[2],
        r.genus,
        r.n,
        r.status.as_str()
    );
    if let Some(t) = r.cm_type() {
        println!("type {}", fmt_type(&t));
        println!("verified by matrices: {}", r.verified_by_matrices);
    }
    if let Some(why) = &r.reason {
        println!("note: {why}");
    }
    for v in &r.violated {
        println!("violated: {}", serde_json::to_string(v).unwrap_or_default());
    }
    Ok(())
}

fn scan_specs(family: ScanFamily, q_max: u32, n_max: u32) -> Vec<FamilySpec> {
    let primes = (3..=q_max).filter(|&q| is_prime(q as u64));
    match family {
        ScanFamily::Metacyclic => primes
            .flat_map(|q| {
                (2..=n_max.min(q - 1))
                    .filter(move |n| (q - 1) % n == 0)
                    .map(move |n| (q, n))
            })
            .map(|(q, n)| FamilySpec::metacyclic(q, n, None).expect("n divides q - 1"))
            .collect(),
        ScanFamily::Dicyclic => primes.map(|q| FamilySpec::Dicyclic { q }).collect(),
    }
}

#[derive(Serialize)]
struct ScanSummary {
    instances: usize,
    classes: usize,
    new_records: usize,
    special: usize,
    by_conductor: BTreeMap<String, usize>,
    store: String,
}

fn scan_cmd(
    family: ScanFamily,
    q_max: u32,
    n_max: u32,
    out: &str,
    json: bool,
    limits: Limits,
) -> Result<()> {
    let specs = scan_specs(family, q_max, n_max);
    if let Some(s) = specs.iter().find(|s| s.group_order() > limits.max_order) {
        return Err(Error::Resource(format!(
            "{s} has order {} above the bound {}",
            s.group_order(),
            limits.max_order
        )));
    }
    let mut store = Store::open(out)?;
    let mut summary = ScanSummary {
        instances: specs.len(),
        classes: 0,
        new_records: 0,
        special: 0,
        by_conductor: BTreeMap::new(),
        store: out.to_string(),
    };
    for spec in &specs {
        let subject = Subject::family(*spec, limits)?;
        let c = classify(&subject, limits)?;
        let now = chrono::Utc::now().to_rfc3339();
        for r in &c.classes {
            summary.classes += 1;
            let rec = ScanRecord::from_class(r, &now);
            if rec.special {
                summary.special += 1;
            }
            if let Some(t) = &rec.cm_type {
                let key = t
                    .conductors
                    .iter()
                    .map(|n| n.to_string())
                    .collect::<Vec<_>>()
                    .join("x");
                *summary.by_conductor.entry(key).or_default() += 1;
            }
            if store.append(&rec)? {
                summary.new_records += 1;
            }
        }
    }
    if json {
        return print_json(&summary);
    }
    println!(
        "scanned {} instances, {} classes, {} special, {} new records in {}",
        summary.instances, summary.classes, summary.special, summary.new_records, summary.store
    );
    for (k, v) in &summary.by_conductor {
        println!("  conductor {k}: {v}");
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    let limits = Limits::from_env()?;
    match cli.command {
        Command::Group {
            command: GroupCommand::Info { spec },
        } => group_info_cmd(&spec, cli.json, limits),
        Command::Covers {
            command: CoversCommand::Classify { spec },
        } => classify_cmd(&spec, cli.json, limits),
        Command::Covers {
            command: CoversCommand::Cm { spec, ssg },
        } => cm_cmd(&spec, ssg.as_deref(), cli.json, limits),
        Command::Scan {
            family,
            q_max,
            n_max,
            out,
        } => scan_cmd(family, q_max, n_max, &out, cli.json, limits),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
