use std::fs;
use std::io::{BufReader, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use enops::operads::FamilyTag;
use enops_cli::cache;
use enops_cli::checks::run_check;
use enops_cli::config::{parse_n, Check, Range, RunConfig};
use enops_cli::record::{exit_code, read_records, write_records, Record, Verdict};
use enops_cli::report::{render, summarize};

/// Exit status for unusable command lines or configurations.
const USAGE_EXIT: u8 = 64;

#[derive(Parser)]
#[command(name = "enops", version, about = "Verification sweeps for edge-labelled complete graph operads")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write sorted key caches for the selected families.
    Enumerate(Common),
    /// Run one verification sweep and write its records.
    Check {
        #[arg(value_enum)]
        which: CheckArg,
        #[command(flatten)]
        common: Common,
    },
    /// Summarize record files or directories of them.
    Report {
        paths: Vec<PathBuf>,
        /// Directory for summary.md and summary.json.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckArg {
    Finality,
    Initiality,
    Collapse,
    Grothendieck,
    Duality,
    Axioms,
    Cubes,
    Reedy,
}

impl From<CheckArg> for Check {
    fn from(c: CheckArg) -> Self {
        match c {
            CheckArg::Finality => Check::Finality,
            CheckArg::Initiality => Check::Initiality,
            CheckArg::Collapse => Check::Collapse,
            CheckArg::Grothendieck => Check::Grothendieck,
            CheckArg::Duality => Check::Duality,
            CheckArg::Axioms => Check::Axioms,
            CheckArg::Cubes => Check::Cubes,
            CheckArg::Reedy => Check::Reedy,
        }
    }
}

#[derive(Args)]
struct Common {
    /// Label bounds, e.g. `2`, `2-3` or `2,3`.
    #[arg(long, default_value = "2")]
    n: Range,
    /// Arities, same syntax as --n.
    #[arg(long, default_value = "3")]
    k: Range,
    /// Subfamily tag (g, k, ke, m, mup, mdown, minterval(i)); a comma list for enumerate.
    #[arg(long)]
    sub: Option<String>,
    /// Ambient family tag.
    #[arg(long)]
    ambient: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// Check a seeded sample of this many instances instead of all.
    #[arg(long)]
    sample: Option<usize>,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Revalidate every collapse step from scratch.
    #[arg(long)]
    paranoid: bool,
    #[arg(long, default_value = "enops-out")]
    out: PathBuf,
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    #[arg(long, default_value_t = enops::operads::DEFAULT_MAX_BITS)]
    max_bits: u32,
}

fn parse_tag(s: &str) -> anyhow::Result<FamilyTag> {
    Ok(s.parse()?)
}

impl Common {
    fn config(&self) -> anyhow::Result<RunConfig> {
        Ok(RunConfig {
            n: parse_n(&self.n)?,
            k: self.k.0.clone(),
            sub: self.sub.as_deref().map(parse_tag).transpose()?,
            ambient: self.ambient.as_deref().map(parse_tag).transpose()?,
            seed: self.seed,
            sample: self.sample,
            jobs: self.jobs,
            paranoid: self.paranoid,
            max_bits: self.max_bits,
            out: self.out.clone(),
            cache_dir: self.cache_dir.clone(),
        })
    }
}

fn tally(name: &str, records: &[Record]) -> String {
    let count = |v| records.iter().filter(|r| r.verdict == v).count();
    format!(
        "{name}: {} PASS, {} FAIL, {} INCONCLUSIVE, {} REFUSED",
        count(Verdict::Pass),
        count(Verdict::Fail),
        count(Verdict::Inconclusive),
        count(Verdict::Refused)
    )
}

fn save(out: &PathBuf, name: &str, records: &[Record]) -> anyhow::Result<()> {
    fs::create_dir_all(out)?;
    let path = out.join(format!("{name}.jsonl"));
    let mut f = std::io::BufWriter::new(fs::File::create(&path).with_context(|| format!("creating {}", path.display()))?);
    write_records(&mut f, records)?;
    f.flush()?;
    Ok(())
}

fn enumerate(common: &Common) -> anyhow::Result<Vec<Record>> {
    let cfg = common.config()?;
    let tags: Vec<FamilyTag> = match &common.sub {
        Some(list) => list.split(',').map(parse_tag).collect::<anyhow::Result<_>>()?,
        None => vec![FamilyTag::G, FamilyTag::K, FamilyTag::Ke, FamilyTag::M, FamilyTag::MUp, FamilyTag::MDown],
    };
    let dir = cfg.cache_dir.clone().unwrap_or_else(|| cfg.out.join("cache"));
    let mut records = Vec::new();
    for (n, k) in cfg.pairs() {
        for &tag in &tags {
            let rec = Record::new("enumerate", Verdict::Pass).param("family", tag).param("n", n).param("k", k);
            records.push(match enops::operads::enumerate_family(tag, n, k, cfg.max_bits) {
                Ok(objs) => {
                    let path = cache::write(&dir, tag, n, k, &objs)?;
                    let shown = path.strip_prefix(&cfg.out).unwrap_or(&path).to_string_lossy().replace('\\', "/");
                    rec.detail(format!("{} keys", objs.len())).evidence(shown)
                }
                Err(e) => Record { verdict: Verdict::Refused, ..rec }.detail(e.to_string()),
            });
        }
    }
    Ok(records)
}

fn collect_records(paths: &[PathBuf]) -> anyhow::Result<Vec<Record>> {
    let mut files = Vec::new();
    for p in paths {
        if p.is_dir() {
            let mut inner: Vec<PathBuf> = fs::read_dir(p)?
                .map(|e| e.map(|e| e.path()))
                .collect::<Result<_, _>>()?;
            inner.retain(|f| f.extension().is_some_and(|x| x == "jsonl"));
            inner.sort();
            files.extend(inner);
        } else {
            files.push(p.clone());
        }
    }
    let mut records = Vec::new();
    for f in files {
        let file = fs::File::open(&f).with_context(|| format!("opening {}", f.display()))?;
        records.extend(read_records(BufReader::new(file)).with_context(|| format!("reading {}", f.display()))?);
    }
    Ok(records)
}

fn run(cli: Cli) -> anyhow::Result<Result<i32, anyhow::Error>> {
    match cli.command {
        Command::Enumerate(common) => {
            let cfg = common.config()?;
            if let Err(e) = cfg.validate(None) {
                return Ok(Err(e));
            }
            let records = enumerate(&common)?;
            save(&cfg.out, "enumerate", &records)?;
            println!("{}", tally("enumerate", &records));
            Ok(Ok(exit_code(&records)))
        }
        Command::Check { which, common } => {
            let check = Check::from(which);
            let cfg = match common.config() {
                Ok(c) => c,
                Err(e) => return Ok(Err(e)),
            };
            if let Err(e) = cfg.validate(Some(check)) {
                return Ok(Err(e));
            }
            let records = run_check(check, &cfg)?;
            save(&cfg.out, check.name(), &records)?;
            println!("{}", tally(check.name(), &records));
            Ok(Ok(exit_code(&records)))
        }
        Command::Report { paths, out } => {
            let records = collect_records(&paths)?;
            let summary = summarize(&records, 10);
            let text = render(&summary);
            if let Some(dir) = out {
                fs::create_dir_all(&dir)?;
                fs::write(dir.join("summary.md"), &text)?;
                fs::write(dir.join("summary.json"), serde_json::to_string_pretty(&summary)? + "\n")?;
            }
            print!("{text}");
            Ok(Ok(exit_code(&records)))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE_EXIT } else { 0 });
        }
    };
    match run(cli) {
        Ok(Ok(code)) => ExitCode::from(code as u8),
        Ok(Err(usage)) => {
            eprintln!("error: {usage:#}");
            ExitCode::from(USAGE_EXIT)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
