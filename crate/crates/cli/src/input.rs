//! Loading inputs from inline text, files or stdin, and the closure cache.

use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use circulant_wl::circulant::CirculantScheme;
use circulant_wl::io::{parse_input, parse_scheme_file, Input};
use circulant_wl::CoherentConfig;

/// Inline text if it starts with "n=", stdin for "-", a file path
/// otherwise.
pub fn read_spec(spec: &str) -> Result<String> {
    if spec.trim_start().starts_with("n=") {
        return Ok(spec.to_string());
    }
    if spec == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    fs::read_to_string(spec).with_context(|| format!("reading {spec}"))
}

pub struct Loader {
    pub cache_dir: Option<PathBuf>,
}

impl Loader {
    pub fn input(&self, spec: &str) -> Result<Input> {
        let text = read_spec(spec)?;
        if let Some(dir) = &self.cache_dir {
            if let Some(hit) = self.cached_graph(dir, &text)? {
                return Ok(hit);
            }
        }
        let input = parse_input(&text)?;
        if let (Some(dir), Input::Circulant { scheme, connection }) = (&self.cache_dir, &input) {
            store(dir, &cache_key(scheme.n(), connection), scheme)?;
        }
        Ok(input)
    }

    pub fn config(&self, spec: &str) -> Result<CoherentConfig> {
        Ok(self.input(spec)?.into_config()?)
    }

    pub fn scheme(&self, spec: &str) -> Result<CirculantScheme> {
        Ok(self.input(spec)?.into_scheme()?)
    }

    fn cached_graph(&self, dir: &Path, text: &str) -> Result<Option<Input>> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let Some((head, tail)) = compact.split_once(";S=") else {
            return Ok(None);
        };
        let Some(n) = head
            .strip_prefix("n=")
            .and_then(|s| s.parse::<usize>().ok())
        else {
            return Ok(None);
        };
        let Ok(connection) = tail
            .split(',')
            .filter(|s| !s.is_empty())
            .map(str::parse::<usize>)
            .collect::<std::result::Result<Vec<_>, _>>()
        else {
            return Ok(None);
        };
        let path = dir.join(cache_key(n, &connection));
        let Ok(stored) = fs::read_to_string(&path) else {
            return Ok(None);
        };
        match parse_scheme_file(&stored) {
            Ok((scheme, true)) if scheme.n() == n => {
                log::info!("closure cache hit: {}", path.display());
                Ok(Some(Input::Circulant { scheme, connection }))
            }
            _ => {
                log::warn!("ignoring unreadable cache entry {}", path.display());
                Ok(None)
            }
        }
    }
}

fn cache_key(n: usize, connection: &[usize]) -> String {
    let mut s = connection.to_vec();
    s.sort_unstable();
    s.dedup();
    let items: Vec<String> = s.iter().map(|d| d.to_string()).collect();
    format!("n{n}_S{}.scheme", items.join("-"))
}

fn store(dir: &Path, key: &str, scheme: &CirculantScheme) -> Result<()> {
    fs::create_dir_all(dir)
        .with_context(|| format!("creating cache directory {}", dir.display()))?;
    let path = dir.join(key);
    fs::write(&path, scheme.to_file_string())
        .with_context(|| format!("writing cache entry {}", path.display()))?;
    log::debug!("cached {}", path.display());
    Ok(())
}

/// "a..b" (inclusive) or a comma-separated list.
pub fn parse_orders(s: &str) -> Result<Vec<usize>> {
    if let Some((a, b)) = s.split_once("..") {
        let a: usize = a.trim().parse().context("range start")?;
        let b: usize = b
            .trim()
            .trim_start_matches('=')
            .parse()
            .context("range end")?;
        if a > b {
            bail!("empty range {s}");
        }
        return Ok((a..=b).collect());
    }
    s.split(',')
        .map(|t| t.trim().parse().with_context(|| format!("order {t:?}")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(parse_orders("4..7").unwrap(), vec![4, 5, 6, 7]);
        assert_eq!(parse_orders("4..=5").unwrap(), vec![4, 5]);
        assert_eq!(parse_orders("8,9").unwrap(), vec![8, 9]);
        assert!(parse_orders("9..8").is_err());
    }

    #[test]
    fn cache_keys_ignore_order() {
        assert_eq!(cache_key(5, &[4, 1, 1]), "n5_S1-4.scheme");
    }
}
