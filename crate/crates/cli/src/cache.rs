//! On-disk caches of enumerated family keys.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use enops::operads::{enumerate_family, CanonicalKey, FamilyTag, GraphObject};

pub const FORMAT_HEADER: &str = "enops-keys v1";

pub fn cache_path(dir: &Path, tag: FamilyTag, n: u8, k: usize) -> PathBuf {
    dir.join(format!("{}-n{n}-k{k}.keys", tag.to_string().to_ascii_lowercase()))
}

pub fn render(tag: FamilyTag, n: u8, k: usize, objs: &[GraphObject]) -> String {
    let mut keys: Vec<_> = objs.iter().map(GraphObject::key).collect();
    keys.sort_unstable();
    let mut s = format!("{FORMAT_HEADER} {tag} n={n} k={k} count={}\n", keys.len());
    for key in keys {
        s.push_str(&key.0.to_string());
        s.push('\n');
    }
    s
}

/// Parses a cache file, refusing anything written under another format
/// version or for other parameters.
pub fn parse(text: &str, tag: FamilyTag, n: u8, k: usize) -> anyhow::Result<Vec<GraphObject>> {
    let mut lines = text.lines();
    let header = lines.next().unwrap_or_default();
    let Some(rest) = header.strip_prefix(FORMAT_HEADER) else {
        bail!("cache header {header:?} is not {FORMAT_HEADER}");
    };
    let fields: Vec<&str> = rest.split_whitespace().collect();
    let expected = [tag.to_string(), format!("n={n}"), format!("k={k}")];
    if fields.len() != 4 || fields[..3] != expected {
        bail!("cache header {header:?} does not describe {tag} n={n} k={k}");
    }
    let count: usize = fields[3].strip_prefix("count=").and_then(|c| c.parse().ok()).context("bad count field")?;
    let objs = lines
        .map(|l| Ok(GraphObject::from_key(n, k, CanonicalKey(l.parse().context("bad key")?))?))
        .collect::<anyhow::Result<Vec<_>>>()?;
    if objs.len() != count {
        bail!("cache lists {} keys, header says {count}", objs.len());
    }
    Ok(objs)
}

/// Reads the cached family, enumerating and writing it when absent or stale.
pub fn load_or_build(dir: Option<&Path>, tag: FamilyTag, n: u8, k: usize, max_bits: u32) -> anyhow::Result<Vec<GraphObject>> {
    let Some(dir) = dir else {
        return Ok(enumerate_family(tag, n, k, max_bits)?);
    };
    let path = cache_path(dir, tag, n, k);
    if let Ok(text) = fs::read_to_string(&path) {
        if let Ok(objs) = parse(&text, tag, n, k) {
            return Ok(objs);
        }
    }
    let objs = enumerate_family(tag, n, k, max_bits)?;
    write(dir, tag, n, k, &objs)?;
    Ok(objs)
}

pub fn write(dir: &Path, tag: FamilyTag, n: u8, k: usize, objs: &[GraphObject]) -> anyhow::Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = cache_path(dir, tag, n, k);
    fs::write(&path, render(tag, n, k, objs)).with_context(|| format!("writing {}", path.display()))?;
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use enops::operads::DEFAULT_MAX_BITS;

    #[test]
    fn round_trip_and_versioning() {
        let objs = enumerate_family(FamilyTag::Ke, 2, 3, DEFAULT_MAX_BITS).unwrap();
        let text = render(FamilyTag::Ke, 2, 3, &objs);
        assert_eq!(parse(&text, FamilyTag::Ke, 2, 3).unwrap(), objs);
        assert!(parse(&text, FamilyTag::K, 2, 3).is_err());
        assert!(parse(&text.replace("v1", "v0"), FamilyTag::Ke, 2, 3).is_err());
        let truncated: String = text.lines().take(5).map(|l| format!("{l}\n")).collect();
        assert!(parse(&truncated, FamilyTag::Ke, 2, 3).is_err());
    }

    #[test]
    fn stale_cache_is_rebuilt() {
        let dir = tempfile::tempdir().unwrap();
        let path = cache_path(dir.path(), FamilyTag::G, 2, 2);
        fs::write(&path, "enops-keys v0 G n=2 k=2 count=0\n").unwrap();
        let objs = load_or_build(Some(dir.path()), FamilyTag::G, 2, 2, DEFAULT_MAX_BITS).unwrap();
        assert_eq!(objs.len(), 4);
        assert!(fs::read_to_string(&path).unwrap().starts_with(FORMAT_HEADER));
    }
}
