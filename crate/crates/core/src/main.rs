//! Command-line driver for potent-sum searches and character-sum reports.
//!
//! Exit codes: 0 success (or "covered"), 1 definite negative from `cover`,
//! 2 invalid input or usage, 3 checkpoint/command mismatch on `--resume`.

use std::collections::BTreeMap;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use potentsum::{
    build_field_with_capacity, capacity_from_env, char_sum_report, covers, parse_prime_power,
    potent_set, refined_square_threshold, run_search, threshold_m, weil_bound_is_positive,
    CoverageReport, ElementSet, Error, RecordKind, ResultRecord, SearchConfig, SearchHit,
    SearchKind, SearchOutcome,
};

#[derive(Parser)]
#[command(
    name = "potentsum",
    version,
    about = "Sums of potent elements in finite fields: searches, coverage \
             tests, and exact character sums"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunArgs {
    /// Largest prime power to test.
    #[arg(long)]
    limit: u64,
    /// Worker threads (the output never depends on this).
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Append hit records to this JSON-lines file (plus a `.checkpoint`
    /// sidecar and, on completion, a CSV summary next to it).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Continue an interrupted run recorded in the checkpoint sidecar.
    #[arg(long, requires = "out")]
    resume: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Find every (q, k) with C_m + C_k = F_q for q up to the limit.
    Search {
        /// Left potency exponent m.
        #[arg(long)]
        m: u64,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Test whether C_m + C_k covers F_q and list missing elements if not.
    Cover {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        k: u64,
    },
    /// Exactly evaluate S(d; q, A) and its square-root lower bound.
    Charsum {
        #[arg(long)]
        q: u64,
        /// Character order; must divide q - 1.
        #[arg(long)]
        d: u64,
        /// Use A = C_m.
        #[arg(long, conflicts_with = "set", required_unless_present = "set")]
        m: Option<u64>,
        /// Use an explicit root set of element indices, e.g. --set 0,1,5.
        #[arg(long, value_delimiter = ',')]
        set: Option<Vec<u64>>,
    },
    /// Print the thresholds past which the square-root bound stays positive.
    Bound {
        /// Root-set size s in the bound (q - (2^(s-1)(s-2)+1)√q - 2^s s).
        #[arg(long = "set-size")]
        set_size: u32,
        /// Also decide positivity of the bracket at this q, exactly.
        #[arg(long)]
        q: Option<u64>,
    },
    /// Find every (q, k) with (C_3 + C_4) + C_k = F_q for q up to the limit.
    Triple {
        #[command(flatten)]
        run: RunArgs,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = io::BufWriter::new(io::stdout().lock());
    let result = run(cli.command, &mut out).and_then(|code| {
        out.flush()?;
        Ok(code)
    });
    match result {
        Ok(code) => ExitCode::from(code),
        // A consumer that stops reading (e.g. `potentsum search | head`)
        // is not an error worth a diagnostic.
        Err(Error::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::CheckpointMismatch(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn run(cmd: Command, out: &mut impl Write) -> potentsum::Result<u8> {
    match cmd {
        Command::Search { m, run } => cmd_search(SearchKind::Pair { m }, run, out),
        Command::Triple { run } => cmd_search(SearchKind::Triple, run, out),
        Command::Cover { q, m, k } => cmd_cover(q, m, k, out),
        Command::Charsum { q, d, m, set } => cmd_charsum(q, d, m, set, out),
        Command::Bound { set_size, q } => cmd_bound(set_size, q, out),
    }
}

fn json_u128(x: u128) -> serde_json::Value {
    match u64::try_from(x) {
        Ok(v) => serde_json::Value::from(v),
        Err(_) => serde_json::Value::from(x.to_string()),
    }
}

fn print_hit_table(hits: &[SearchHit], out: &mut impl Write) -> io::Result<()> {
    writeln!(out, "{:>8} {:>8} {:>3} {:>4} {:>6}", "q", "p", "v", "m", "k")?;
    for h in hits {
        writeln!(out, "{:>8} {:>8} {:>3} {:>4} {:>6}", h.q, h.p, h.v, h.m, h.k)?;
    }
    Ok(())
}

fn cmd_search(kind: SearchKind, run: RunArgs, out: &mut impl Write) -> potentsum::Result<u8> {
    let mut cfg = SearchConfig::new(kind, run.limit);
    cfg.jobs = run.jobs;
    cfg.out_path = run.out.clone();
    cfg.resume = run.resume;
    cfg.capacity = capacity_from_env();
    let outcome: SearchOutcome = run_search(&cfg)?;

    let record_kind = match kind {
        SearchKind::Pair { .. } => RecordKind::PairSearch,
        SearchKind::Triple => RecordKind::TripleSearch,
    };
    if run.out.is_none() {
        for hit in &outcome.hits {
            writeln!(out, "{}", ResultRecord::from_hit(hit, record_kind).to_json_line())?;
        }
    }

    print_hit_table(&outcome.hits, out)?;
    let what = match kind {
        SearchKind::Pair { m } => format!("pairs with C_{m} + C_k = F_q"),
        SearchKind::Triple => "pairs with (C_3 + C_4) + C_k = F_q".to_string(),
    };
    writeln!(out, "{} {} for q <= {}", outcome.hits.len(), what, run.limit)?;
    if let Some(max) = outcome.max_left_size {
        writeln!(out, "largest |C_3 + C_4| seen: {max}")?;
    }
    if let Some(csv) = &outcome.csv_path {
        writeln!(out, "summary CSV: {}", csv.display())?;
    }
    Ok(0)
}

fn print_cover_report(report: &CoverageReport, out: &mut impl Write) -> io::Result<()> {
    writeln!(
        out,
        "{} + {} over F_{}: sum size {} of {}",
        report.left_label, report.right_label, report.q, report.sum_size, report.q
    )?;
    if report.covered {
        writeln!(out, "covered: every element is a sum")?;
    } else {
        let shown: Vec<String> = report.missing.iter().map(u64::to_string).collect();
        writeln!(
            out,
            "NOT covered: {} element(s) missing, e.g. indices [{}]",
            report.q - report.sum_size,
            shown.join(", ")
        )?;
    }
    Ok(())
}

fn cmd_cover(q: u64, m: u64, k: u64, out: &mut impl Write) -> potentsum::Result<u8> {
    let spec = parse_prime_power(q)?;
    let field = build_field_with_capacity(spec, capacity_from_env())?;
    let a = potent_set(&field, m)?;
    let b = potent_set(&field, k)?;
    let report = covers(&field, &a, &b)?;
    print_cover_report(&report, out)?;

    let record = ResultRecord {
        q: spec.q,
        p: spec.p,
        v: spec.v,
        m: potentsum::normalize_exponent(m, q)?,
        k: potentsum::normalize_exponent(k, q)?,
        covered: report.covered,
        kind: RecordKind::PairSearch,
        extra: None,
    };
    writeln!(out, "{}", record.to_json_line())?;
    Ok(if report.covered { 0 } else { 1 })
}

fn cmd_charsum(
    q: u64,
    d: u64,
    m: Option<u64>,
    set: Option<Vec<u64>>,
    out: &mut impl Write,
) -> potentsum::Result<u8> {
    let spec = parse_prime_power(q)?;
    let field = build_field_with_capacity(spec, capacity_from_env())?;
    let (a, norm_m): (ElementSet, u64) = match (m, set) {
        (Some(m), None) => (potent_set(&field, m)?, potentsum::normalize_exponent(m, q)?),
        (None, Some(indices)) => {
            let mut members = Vec::with_capacity(indices.len());
            for i in indices {
                members.push(field.element(i)?);
            }
            // Explicit sets are not potent classes; their records carry m = 0.
            (ElementSet::new(spec, members, "A"), 0)
        }
        _ => unreachable!("clap enforces exactly one of --m / --set"),
    };

    let report = char_sum_report(&field, d, &a)?;
    let n = 1 + (q - 1) / d;
    writeln!(
        out,
        "S({d}; {q}, {}) with |A| = {}, partner exponent n = 1 + (q-1)/{d} = {n}",
        report.set_label,
        a.len()
    )?;
    writeln!(out, "exact_S     = {}", report.exact_value)?;
    writeln!(out, "lower_bound = {:.6}", report.lower_bound)?;
    writeln!(out, "slack       = {:.6}", report.slack)?;
    if report.exact_value == 0 {
        writeln!(out, "coverage: {} + C_{n} = F_{q} (S = 0)", report.set_label)?;
    } else {
        writeln!(out, "coverage: {} + C_{n} ≠ F_{q} (S > 0)", report.set_label)?;
    }

    let mut extra = BTreeMap::new();
    extra.insert("d".to_string(), serde_json::Value::from(d));
    extra.insert("exact_s".to_string(), json_u128(report.exact_value));
    extra.insert("lower_bound".to_string(), serde_json::Value::from(report.lower_bound));
    extra.insert("slack".to_string(), serde_json::Value::from(report.slack));
    let record = ResultRecord {
        q: spec.q,
        p: spec.p,
        v: spec.v,
        m: norm_m,
        k: n,
        covered: report.exact_value == 0,
        kind: RecordKind::Charsum,
        extra: Some(extra),
    };
    writeln!(out, "{}", record.to_json_line())?;
    Ok(0)
}

fn cmd_bound(set_size: u32, q: Option<u64>, out: &mut impl Write) -> potentsum::Result<u8> {
    if set_size == 0 || set_size > 56 {
        return Err(Error::PreconditionViolated(format!(
            "set size {set_size} outside the supported range 1..=56"
        )));
    }
    let crude = threshold_m(set_size);
    let refined = refined_square_threshold(set_size);
    writeln!(out, "set size s = {set_size}")?;
    writeln!(out, "bracket: q - (2^(s-1)(s-2)+1)*sqrt(q) - 2^s*s")?;
    writeln!(out, "threshold_M        = {crude} (positive for every q > M = (2^s s)^2)")?;
    writeln!(out, "refined_threshold  = {refined} (sharpest square w^2; positive for q > w^2)")?;
    let q_positive = q.map(|q| weil_bound_is_positive(set_size, q));
    if let (Some(q), Some(pos)) = (q, q_positive) {
        if pos {
            writeln!(out, "at q = {q}: bracket is positive")?;
        } else {
            writeln!(out, "at q = {q}: bracket is not positive")?;
        }
    }

    let mut extra = BTreeMap::new();
    extra.insert("threshold_m".to_string(), json_u128(crude));
    extra.insert("refined_square_threshold".to_string(), json_u128(refined));
    if let Some(pos) = q_positive {
        extra.insert("q_positive".to_string(), serde_json::Value::from(pos));
    }
    let record = ResultRecord {
        q: q.unwrap_or(0),
        p: 0,
        v: 0,
        m: u64::from(set_size),
        k: 0,
        // Bound records are always affirmative unless a tested q fails.
        covered: q_positive.unwrap_or(true),
        kind: RecordKind::Bound,
        extra: Some(extra),
    };
    writeln!(out, "{}", record.to_json_line())?;
    Ok(0)
}
