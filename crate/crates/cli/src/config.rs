//! Run configuration shared by every subcommand.

use std::path::PathBuf;
use std::str::FromStr;

use anyhow::{bail, Context};
use enops::operads::{FamilyTag, DEFAULT_MAX_BITS};

/// Inclusive integer range written as `3`, `2-4` or `2,3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Range(pub Vec<usize>);

impl FromStr for Range {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> anyhow::Result<Self> {
        let mut out = Vec::new();
        for part in s.split(',') {
            let part = part.trim();
            if let Some((a, b)) = part.split_once('-') {
                let a: usize = a.trim().parse().with_context(|| format!("bad range start in {s:?}"))?;
                let b: usize = b.trim().parse().with_context(|| format!("bad range end in {s:?}"))?;
                if a > b {
                    bail!("empty range {part:?}");
                }
                out.extend(a..=b);
            } else {
                out.push(part.parse().with_context(|| format!("bad integer in {s:?}"))?);
            }
        }
        out.sort_unstable();
        out.dedup();
        Ok(Range(out))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Check {
    Finality,
    Initiality,
    Collapse,
    Grothendieck,
    Duality,
    Axioms,
    Cubes,
    Reedy,
}

impl Check {
    pub fn name(self) -> &'static str {
        match self {
            Check::Finality => "finality",
            Check::Initiality => "initiality",
            Check::Collapse => "collapse",
            Check::Grothendieck => "grothendieck",
            Check::Duality => "duality",
            Check::Axioms => "axioms",
            Check::Cubes => "cubes",
            Check::Reedy => "reedy",
        }
    }

    /// Checks that draw random instances regardless of `--sample`.
    pub fn always_sampled(self) -> bool {
        matches!(self, Check::Axioms | Check::Cubes)
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub n: Vec<u8>,
    pub k: Vec<usize>,
    pub sub: Option<FamilyTag>,
    pub ambient: Option<FamilyTag>,
    pub seed: Option<u64>,
    pub sample: Option<usize>,
    pub jobs: usize,
    pub paranoid: bool,
    pub max_bits: u32,
    pub out: PathBuf,
    pub cache_dir: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            n: vec![2],
            k: vec![3],
            sub: None,
            ambient: None,
            seed: None,
            sample: None,
            jobs: 0,
            paranoid: false,
            max_bits: DEFAULT_MAX_BITS,
            out: PathBuf::from("enops-out"),
            cache_dir: None,
        }
    }
}

impl RunConfig {
    pub fn validate(&self, check: Option<Check>) -> anyhow::Result<()> {
        if self.n.is_empty() || self.k.is_empty() {
            bail!("--n and --k need at least one value");
        }
        if let Some(&n) = self.n.iter().find(|&&n| n == 0) {
            bail!("label bound {n} must be at least 1");
        }
        let sampled = self.sample.is_some() || check.is_some_and(Check::always_sampled);
        if sampled && self.seed.is_none() {
            bail!("sampled checks need an explicit --seed");
        }
        Ok(())
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(0)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (u8, usize)> + '_ {
        self.n.iter().flat_map(move |&n| self.k.iter().map(move |&k| (n, k)))
    }
}

pub fn parse_n(r: &Range) -> anyhow::Result<Vec<u8>> {
    r.0.iter().map(|&n| u8::try_from(n).context("label bound too large")).collect()
}
