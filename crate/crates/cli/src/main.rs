use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use eschenburg::classify::Threshold;
use eschenburg::enumerate::{EnumerationRequest, Family};
use eschenburg::invariants::basic_record;
use eschenburg::lens_sums::{lens_invariants, lens_s1, oracle_trig_sums, trig_sums, LensSpace};
use eschenburg::pipeline::output::{write_pairs, write_spaces, Format};
use eschenburg::pipeline::{self, default_threads, reproduce_table, SearchConfig, TABLE_IDS};
use eschenburg::spaces::{is_free, ParamPair};
use eschenburg::{Error, Triple};

/// Invariants and classification of positively curved Eschenburg spaces.
#[derive(Parser)]
#[command(name = "esch", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// csv or json [default depends on the command].
    #[arg(long, global = true, value_parser = parse_format)]
    format: Option<Format>,

    /// Worker threads [default: $ESCH_THREADS, else all cores].
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Resume from and write per-block shards in this directory.
    #[arg(long, global = true)]
    checkpoint_dir: Option<PathBuf>,

    /// Log progress to stderr.
    #[arg(short, long, global = true)]
    verbose: bool,
}

#[derive(Subcommand)]
enum Command {
    /// List every space with r in the range, with its invariants.
    Enumerate {
        /// eschenburg or sasakian.
        #[arg(long, default_value = "eschenburg", value_parser = parse_family)]
        family: Family,
        #[arg(long)]
        r_min: i64,
        #[arg(long)]
        r_max: i64,
        /// Also compute s1, s2, s3, s22.
        #[arg(long)]
        ks: bool,
    },
    /// Invariants of one space E_{k,l}.
    Invariants {
        #[arg(long, value_parser = parse_triple, allow_hyphen_values = true)]
        k: Triple,
        #[arg(long, value_parser = parse_triple, allow_hyphen_values = true)]
        l: Triple,
    },
    /// Pairs of spaces with the same r that reach the given relation.
    Pairs {
        /// eschenburg or sasakian.
        #[arg(long, default_value = "eschenburg", value_parser = parse_family)]
        family: Family,
        /// basic, homotopy, homeo or diffeo.
        #[arg(long, value_parser = parse_threshold)]
        relation: Threshold,
        #[arg(long)]
        r_min: i64,
        #[arg(long)]
        r_max: i64,
        /// Odd values of r per checkpoint block.
        #[arg(long, default_value_t = pipeline::DEFAULT_BLOCK_SIZE)]
        block_size: usize,
    },
    /// Recompute a reference table (4.1 to 4.6, or `all`) and check each row.
    Table { id: String },
    /// Certified trigonometric sums and invariants of a lens space.
    VerifyLens {
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
        #[arg(long, value_parser = parse_quad, allow_hyphen_values = true)]
        params: [i64; 4],
    },
}

fn parse_ints<const N: usize>(s: &str) -> Result<[i64; N], String> {
    let v: Vec<i64> = s
        .split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|e| format!("{x:?}: {e}")))
        .collect::<Result<_, _>>()?;
    v.try_into()
        .map_err(|v: Vec<i64>| format!("expected {N} comma separated integers, got {}", v.len()))
}

fn parse_triple(s: &str) -> Result<Triple, String> {
    parse_ints::<3>(s)
}

fn parse_quad(s: &str) -> Result<[i64; 4], String> {
    parse_ints::<4>(s)
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse()
}

fn parse_threshold(s: &str) -> Result<Threshold, String> {
    s.parse()
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse()
}

enum Failure {
    Invalid(String),
    ConditionC(String),
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::UnequalSums { .. }
            | Error::NotFree { .. }
            | Error::NotPositivelyCurved { .. }
            | Error::InvalidSasakian { .. }
            | Error::ZeroOrder { .. }
            | Error::EvenOrder(_)
            | Error::InvalidRange { .. }
            | Error::LensNotCoprime { .. }
            | Error::ParityViolated { .. }
            | Error::UnknownTable(_)
            | Error::ZeroThreads => Failure::Invalid(e.to_string()),
            Error::ConditionCFails { .. } => Failure::ConditionC(e.to_string()),
            _ => Failure::Other(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Other(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn threads(cli: &Cli) -> Result<usize, Failure> {
    match cli.threads {
        Some(0) => Err(Error::ZeroThreads.into()),
        Some(n) => Ok(n),
        None => Ok(default_threads()),
    }
}

/// Writes to `--out` if given, else stdout.
fn emit(cli: &Cli, f: impl FnOnce(&mut dyn Write) -> io::Result<()>) -> Outcome {
    match &cli.out {
        Some(path) => {
            let file = std::fs::File::create(path)
                .map_err(|e| Failure::Other(format!("{}: {e}", path.display())))?;
            let mut w = io::BufWriter::new(file);
            f(&mut w)
                .and_then(|_| w.flush())
                .map_err(|e| Failure::Other(format!("{}: {e}", path.display())))
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            f(&mut w)?;
            w.flush()?;
            Ok(())
        }
    }
}

fn enumerate(cli: &Cli, family: Family, r_min: i64, r_max: i64, ks: bool) -> Outcome {
    let req = EnumerationRequest::new(family, r_min, r_max)?;
    let records = pipeline::enumerate_records(&req, threads(cli)?, ks)?;
    let format = cli.format.unwrap_or(Format::Csv);
    emit(cli, |w| write_spaces(w, format, &records))
}

fn invariants(cli: &Cli, k: Triple, l: Triple) -> Outcome {
    let pp = ParamPair::new(k, l)?;
    if !is_free(&pp) {
        return Err(Error::NotFree { k, l }.into());
    }
    let rec = basic_record(&pp)?;
    let line = rec.condition.first_line();
    let rec = rec.with_ks()?;
    let format = cli.format;
    emit(cli, |w| match format {
        Some(f) => write_spaces(w, f, std::slice::from_ref(&rec)),
        None => {
            let b = &rec.basic;
            writeln!(w, "params={}", rec.params)?;
            writeln!(w, "r={}", b.r_abs)?;
            writeln!(w, "r_signed={}", b.r_signed)?;
            writeln!(w, "s={}", b.s.value)?;
            writeln!(w, "p1={}", b.p1)?;
            writeln!(w, "linking={}", b.linking)?;
            writeln!(w, "cohom={}", rec.cohomogeneity)?;
            let lines: Vec<String> = rec
                .condition
                .lines()
                .iter()
                .map(|l| l.to_string())
                .collect();
            writeln!(
                w,
                "condC={}",
                if lines.is_empty() {
                    "fail".into()
                } else {
                    lines.join(",")
                }
            )?;
            if let Some(ks) = &rec.ks {
                writeln!(w, "s1={}", ks.s1)?;
                writeln!(w, "s2={}", ks.s2)?;
                writeln!(w, "s3={}", ks.s3)?;
                writeln!(w, "s22={}", ks.s22)?;
            }
            Ok(())
        }
    })?;
    if line.is_none() {
        return Err(Error::ConditionCFails {
            k,
            l,
            line: "every row and column".into(),
        }
        .into());
    }
    Ok(())
}

fn pairs(
    cli: &Cli,
    family: Family,
    relation: Threshold,
    r_min: i64,
    r_max: i64,
    block_size: usize,
) -> Outcome {
    let req = EnumerationRequest::new(family, r_min, r_max)?;
    let mut cfg = SearchConfig::new(req, relation).with_threads(threads(cli)?)?;
    cfg.block_size = block_size;
    cfg.checkpoint_dir = cli.checkpoint_dir.clone();
    cfg.out = cli.out.clone();
    cfg.format = cli.format.unwrap_or(Format::Json);
    let outcome = pipeline::run(&cfg)?;
    if cfg.out.is_none() {
        let format = cfg.format;
        emit(cli, |w| write_pairs(w, format, &outcome.reports))?;
    }
    let st = &outcome.stats;
    eprintln!(
        "{} pairs reported; {} spaces, {} candidate pairs, {} condition (C) failures",
        st.reported, st.spaces, st.candidate_pairs, st.condition_c_failures
    );
    for p in &outcome.unclassified {
        eprintln!(
            "unclassified (condition (C) fails): r={} {} / {}",
            p.r, p.a.params, p.b.params
        );
    }
    Ok(())
}

fn table(cli: &Cli, id: &str) -> Outcome {
    let ids: Vec<&str> = if id == "all" {
        TABLE_IDS.to_vec()
    } else {
        vec![id]
    };
    let mut reports = Vec::new();
    for id in ids {
        reports.push(reproduce_table(id)?);
    }
    emit(cli, |w| {
        for (i, rep) in reports.iter().enumerate() {
            if i > 0 {
                writeln!(w)?;
            }
            write!(w, "{}", rep.render())?;
        }
        Ok(())
    })?;
    match reports.iter().find(|r| !r.passed()) {
        Some(r) => Err(Failure::Other(format!("table {} does not match", r.id))),
        None => Ok(()),
    }
}

fn verify_lens(cli: &Cli, p: i64, params: [i64; 4]) -> Outcome {
    let lens = LensSpace::new(p, params)?;
    let sums = trig_sums(&lens)?;
    let s1 = lens_s1(&lens)?;
    let rest = lens_invariants(&lens).ok();
    let oracle = oracle_trig_sums(&lens);
    emit(cli, |w| {
        writeln!(w, "T={} S={} R={} U={}", sums.t, sums.s, sums.r, sums.u)?;
        writeln!(w, "s1={s1}")?;
        match &rest {
            Some(inv) => writeln!(w, "s2={} s3={}", inv.s2, inv.s3)?,
            None => writeln!(w, "s2, s3 undefined: odd parameter sum")?,
        }
        writeln!(
            w,
            "f64: T={:.9} S={:.9} R={:.9} U={:.9}",
            oracle[0], oracle[1], oracle[2], oracle[3]
        )
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = if cli.verbose { "info" } else { "warn" };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    let res = match &cli.command {
        Command::Enumerate {
            family,
            r_min,
            r_max,
            ks,
        } => enumerate(&cli, *family, *r_min, *r_max, *ks),
        Command::Invariants { k, l } => invariants(&cli, *k, *l),
        Command::Pairs {
            family,
            relation,
            r_min,
            r_max,
            block_size,
        } => pairs(&cli, *family, *relation, *r_min, *r_max, *block_size),
        Command::Table { id } => table(&cli, id),
        Command::VerifyLens { p, params } => verify_lens(&cli, *p, *params),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::ConditionC(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Other(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
