//! Plain-text run configuration.
//!
//! Config files hold `key = value` lines with `#` comments. Keys use either
//! hyphens or underscores (they are normalized to underscores) and carry the
//! same names as the long command-line flags. Flags always override config
//! values; whatever wins is echoed into the run manifest so every artifact
//! records the parameters that produced it.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::path::Path;

use crate::bounds::DelaySpec;
use crate::error::{invalid, Error, Result};

/// Parsed `key = value` configuration.
#[derive(Debug, Clone, Default)]
pub struct ConfigMap {
    entries: BTreeMap<String, String>,
}

fn normalize_key(raw: &str) -> String {
    raw.trim().replace('-', "_")
}

impl ConfigMap {
    /// An empty map: every lookup falls through to the built-in default.
    pub fn empty() -> Self {
        ConfigMap::default()
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            Error::Io(std::io::Error::new(e.kind(), format!("config file {}: {e}", path.display())))
        })?;
        Self::parse(&text)
    }

    /// Parse config text. Malformed lines (no `=`, empty key) are parameter
    /// errors naming the line.
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (i, raw_line) in text.lines().enumerate() {
            let line = match raw_line.split_once('#') {
                Some((before, _)) => before,
                None => raw_line,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| invalid!("config line {}: expected `key = value`", i + 1))?;
            let key = normalize_key(key);
            let value = value.trim().to_string();
            if key.is_empty() || value.is_empty() {
                return Err(invalid!("config line {}: empty key or value", i + 1));
            }
            entries.insert(key, value);
        }
        Ok(ConfigMap { entries })
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(&normalize_key(key)).map(String::as_str)
    }
}

/// Resolve one parameter: explicit flag wins, then the config file, then the
/// built-in default. The config value goes through `parse` so bad file
/// contents surface as parameter errors naming the key.
pub fn pick<T>(
    flag: Option<T>,
    config: &ConfigMap,
    key: &str,
    parse: impl FnOnce(&str) -> Result<T>,
    default: T,
) -> Result<T> {
    match flag {
        Some(v) => Ok(v),
        None => match config.get(key) {
            Some(raw) => parse(raw).map_err(|e| invalid!("config key `{key}`: {e}")),
            None => Ok(default),
        },
    }
}

/// Like [`pick`] for parameters with no default (absence stays absent).
pub fn pick_opt<T>(
    flag: Option<T>,
    config: &ConfigMap,
    key: &str,
    parse: impl FnOnce(&str) -> Result<T>,
) -> Result<Option<T>> {
    match flag {
        Some(v) => Ok(Some(v)),
        None => match config.get(key) {
            Some(raw) => parse(raw).map(Some).map_err(|e| invalid!("config key `{key}`: {e}")),
            None => Ok(None),
        },
    }
}

/// Accumulates the resolved parameter values for the run manifest.
#[derive(Debug, Default)]
pub struct ResolvedParams {
    entries: BTreeMap<String, String>,
}

impl ResolvedParams {
    pub fn record(&mut self, key: &str, value: impl Display) {
        self.entries.insert(normalize_key(key), value.to_string());
    }

    pub fn entries(&self) -> &BTreeMap<String, String> {
        &self.entries
    }
}

// ---- value parsers shared by flags and config values ----

pub fn parse_f64(text: &str) -> Result<f64> {
    text.trim()
        .parse::<f64>()
        .map_err(|_| invalid!("expected a number, got `{text}`"))
}

pub fn parse_usize(text: &str) -> Result<usize> {
    text.trim()
        .parse::<usize>()
        .map_err(|_| invalid!("expected a non-negative integer, got `{text}`"))
}

pub fn parse_bool(text: &str) -> Result<bool> {
    match text.trim().to_ascii_lowercase().as_str() {
        "true" | "yes" | "1" | "on" => Ok(true),
        "false" | "no" | "0" | "off" => Ok(false),
        other => Err(invalid!("expected a boolean, got `{other}`")),
    }
}

/// `start:stop:step`, all finite numbers.
pub fn parse_range(text: &str) -> Result<(f64, f64, f64)> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(invalid!("expected `start:stop:step`, got `{text}`"));
    }
    let vals: Vec<f64> = parts
        .iter()
        .map(|p| parse_f64(p))
        .collect::<Result<_>>()?;
    if vals.iter().any(|v| !v.is_finite()) {
        return Err(invalid!("range `{text}` has a non-finite endpoint"));
    }
    Ok((vals[0], vals[1], vals[2]))
}

/// An inclusive sample grid from a `start:stop:step` range.
pub fn parse_time_grid(text: &str) -> Result<Vec<f64>> {
    let (start, stop, step) = parse_range(text)?;
    if !(step > 0.0) {
        return Err(invalid!("time step must be positive, got {step}"));
    }
    if stop < start {
        return Err(invalid!("time range `{text}` runs backwards"));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize;
    if count + 1 > 100_000 {
        return Err(invalid!("time range `{text}` requests more than 1e5 samples"));
    }
    Ok((0..=count).map(|i| start + i as f64 * step).collect())
}

/// One delay ratio; `inf`/`infinite` selects the closed-form limit.
pub fn parse_delay(text: &str) -> Result<DelaySpec> {
    let t = text.trim().to_ascii_lowercase();
    if t == "inf" || t == "infinite" || t == "infinity" {
        return Ok(DelaySpec::Infinite);
    }
    Ok(DelaySpec::Finite(parse_f64(&t)?))
}

/// Comma-separated delay ratios, e.g. `1.5,3,inf`.
pub fn parse_delays(text: &str) -> Result<Vec<DelaySpec>> {
    let list: Vec<DelaySpec> = text
        .split(',')
        .map(parse_delay)
        .collect::<Result<_>>()?;
    if list.is_empty() {
        return Err(invalid!("expected at least one delay ratio"));
    }
    Ok(list)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn files_parse_with_comments_and_either_key_style() {
        let text = "\n# run defaults\nomega-sigma = 1.0   # carrier\n tau_ratio=3\nexact = yes\n";
        let map = ConfigMap::parse(text).unwrap();
        assert_eq!(map.get("omega_sigma"), Some("1.0"));
        assert_eq!(map.get("omega-sigma"), Some("1.0"));
        assert_eq!(map.get("tau-ratio"), Some("3"));
        assert!(parse_bool(map.get("exact").unwrap()).unwrap());
        assert_eq!(map.get("missing"), None);

        assert!(ConfigMap::parse("just words\n").is_err());
        assert!(ConfigMap::parse("= 3\n").is_err());
        assert!(ConfigMap::parse("key =\n").is_err());
    }

    #[test]
    fn flags_override_config_which_overrides_defaults() {
        let map = ConfigMap::parse("ncut = 44\n").unwrap();
        let flag_wins = pick(Some(10usize), &map, "ncut", parse_usize, 30).unwrap();
        let config_wins = pick(None, &map, "ncut", parse_usize, 30).unwrap();
        let default_wins = pick(None, &map, "other", parse_usize, 30).unwrap();
        assert_eq!((flag_wins, config_wins, default_wins), (10, 44, 30));

        let bad = ConfigMap::parse("ncut = soon\n").unwrap();
        let err = pick(None, &bad, "ncut", parse_usize, 30).unwrap_err();
        assert!(err.to_string().contains("ncut"));

        assert_eq!(pick_opt(None, &map, "ncut", parse_usize).unwrap(), Some(44));
        assert_eq!(pick_opt(None, &map, "other", parse_usize).unwrap(), None);
    }

    #[test]
    fn range_and_delay_parsers_validate_their_shapes() {
        assert_eq!(parse_range("0.2:3.0:0.1").unwrap(), (0.2, 3.0, 0.1));
        assert!(parse_range("0.2:3.0").is_err());
        assert!(parse_range("a:b:c").is_err());

        let times = parse_time_grid("-1:1:0.5").unwrap();
        assert_eq!(times, vec![-1.0, -0.5, 0.0, 0.5, 1.0]);
        assert!(parse_time_grid("1:-1:0.5").is_err());
        assert!(parse_time_grid("0:1:0").is_err());

        let delays = parse_delays("1.5,3,inf").unwrap();
        assert_eq!(delays.len(), 3);
        assert!(matches!(delays[2], DelaySpec::Infinite));
        assert!(matches!(delays[0], DelaySpec::Finite(v) if v == 1.5));
        assert!(parse_delays("1.5,,3").is_err());
    }
}
