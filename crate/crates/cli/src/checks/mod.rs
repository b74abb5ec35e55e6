//! Verification sweeps, one module per check.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::Context;
use enops::operads::{in_family, FamilyTag, GraphObject};
use rand::seq::index::sample;
use rayon::prelude::*;

use crate::cache;
use crate::config::{Check, RunConfig};
use crate::record::Record;

pub mod algebra;
pub mod collapse;
pub mod cubes;
pub mod duality;
pub mod grothendieck;
pub mod reedy;
pub mod sides;

/// Shared state for one check run.
pub struct Ctx<'a> {
    pub cfg: &'a RunConfig,
    pool: rayon::ThreadPool,
}

impl<'a> Ctx<'a> {
    pub fn new(cfg: &'a RunConfig) -> anyhow::Result<Self> {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(cfg.jobs).build()?;
        Ok(Ctx { cfg, pool })
    }

    pub fn family(&self, tag: FamilyTag, n: u8, k: usize) -> anyhow::Result<Vec<GraphObject>> {
        cache::load_or_build(self.cfg.cache_dir.as_deref(), tag, n, k, self.cfg.max_bits)
    }

    /// Members of `tag` inside an already loaded list.
    pub fn members(objs: &[GraphObject], tag: FamilyTag) -> Vec<usize> {
        (0..objs.len()).filter(|&i| in_family(&objs[i], tag)).collect()
    }

    /// All indices below `len`, or a seeded sample of `--sample` of them.
    /// `salt` keeps samples of different sweeps independent.
    pub fn select(&self, len: usize, salt: u64) -> Vec<usize> {
        match self.cfg.sample {
            Some(s) if s < len => {
                let mut r = enops::sampling::sub_rng(self.cfg.seed(), salt);
                let mut v = sample(&mut r, len, s).into_vec();
                v.sort_unstable();
                v
            }
            _ => (0..len).collect(),
        }
    }

    /// Runs `f` on every item in the pool and returns records in input
    /// order, with wall time filled in.
    pub fn run<T: Sync>(&self, items: &[T], f: impl Fn(&T) -> Vec<Record> + Sync) -> Vec<Record> {
        self.pool.install(|| {
            items
                .par_iter()
                .map(|item| {
                    let start = Instant::now();
                    let mut recs = f(item);
                    let ms = start.elapsed().as_millis() as u64;
                    for r in &mut recs {
                        r.wall_ms = ms;
                    }
                    recs
                })
                .collect::<Vec<_>>()
                .into_iter()
                .flatten()
                .collect()
        })
    }

    /// Writes an evidence file under the output directory and returns its
    /// relative path.
    pub fn evidence(&self, rel: impl AsRef<Path>, contents: &str) -> anyhow::Result<String> {
        let rel = rel.as_ref();
        let path: PathBuf = self.cfg.out.join(rel);
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent)?;
        }
        fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))?;
        Ok(rel.to_string_lossy().replace('\\', "/"))
    }

    pub fn seeded(&self, salt: u64) -> enops::sampling::SeededRng {
        enops::sampling::sub_rng(self.cfg.seed(), salt)
    }
}

/// Error from a single instance, turned into a failing record with the
/// message as evidence.
pub fn error_record(ctx: &Ctx, check: &str, rel: String, err: impl std::fmt::Display) -> Record {
    let text = format!("{err}\n");
    let rec = Record::new(check, crate::record::Verdict::Fail).detail(text.lines().next().unwrap_or_default().to_string());
    match ctx.evidence(&rel, &text) {
        Ok(p) => rec.evidence(p),
        Err(e) => rec.detail(format!("{text} (evidence not written: {e})")),
    }
}

pub fn run_check(check: Check, cfg: &RunConfig) -> anyhow::Result<Vec<Record>> {
    let ctx = Ctx::new(cfg)?;
    match check {
        Check::Finality => sides::run(&ctx, sides::Side::Final),
        Check::Initiality => sides::run(&ctx, sides::Side::Initial),
        Check::Collapse => collapse::run(&ctx),
        Check::Grothendieck => grothendieck::run(&ctx),
        Check::Duality => duality::run(&ctx),
        Check::Axioms => algebra::run(&ctx),
        Check::Cubes => cubes::run(&ctx),
        Check::Reedy => reedy::run(&ctx),
    }
}

