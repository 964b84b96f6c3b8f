//! Run configuration: defaults, a `key = value` file format, and the output
//! directory fallback through `BISERIAL_OUTPUT_DIR`.

use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::is_prime;

pub const OUTPUT_DIR_ENV: &str = "BISERIAL_OUTPUT_DIR";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Config {
    pub field_p: u32,
    pub max_string_len: usize,
    pub max_band_len: usize,
    pub max_type0_len: usize,
    pub max_lift_order: usize,
    pub rng_seed: u64,
    pub output_dir: PathBuf,
}

impl Default for Config {
    fn default() -> Config {
        Config {
            field_p: 101,
            max_string_len: 8,
            max_band_len: 5,
            max_type0_len: 8,
            max_lift_order: crate::deform::DEFAULT_MAX_ORDER,
            rng_seed: 0,
            output_dir: PathBuf::from("."),
        }
    }
}

impl Config {
    /// Defaults used by the theorem sweeps, which run over `F₇`.
    pub fn sweep() -> Config {
        Config { field_p: 7, ..Config::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.field_p < 5 || !is_prime(self.field_p) {
            return Err(Error::InvalidPrime(self.field_p as u64));
        }
        for (name, v) in [
            ("max_string_len", self.max_string_len),
            ("max_band_len", self.max_band_len),
            ("max_type0_len", self.max_type0_len),
        ] {
            if v == 0 {
                return Err(Error::Config(format!("{name} must be positive")));
            }
        }
        if self.max_lift_order < 3 {
            return Err(Error::Config("max_lift_order must be at least 3".into()));
        }
        Ok(())
    }

    /// Applies `key = value` lines; blank lines and `#` comments are skipped.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", lineno + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            let bad = |_| Error::Config(format!("line {}: bad value for {key}: {value}", lineno + 1));
            match key {
                "field_p" => self.field_p = value.parse().map_err(bad)?,
                "max_string_len" => self.max_string_len = value.parse().map_err(bad)?,
                "max_band_len" => self.max_band_len = value.parse().map_err(bad)?,
                "max_type0_len" => self.max_type0_len = value.parse().map_err(bad)?,
                "max_lift_order" => self.max_lift_order = value.parse().map_err(bad)?,
                "rng_seed" => self.rng_seed = value.parse().map_err(bad)?,
                "output_dir" => self.output_dir = PathBuf::from(value),
                _ => return Err(Error::Config(format!("line {}: unknown key {key}", lineno + 1))),
            }
        }
        self.validate()
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path)?;
        self.apply_text(&text)
    }

    /// The explicit directory if given, else the environment variable, else
    /// the configured default.
    pub fn resolve_output_dir(&mut self, explicit: Option<PathBuf>) {
        if let Some(p) = explicit {
            self.output_dir = p;
        } else if let Ok(p) = std::env::var(OUTPUT_DIR_ENV) {
            if !p.is_empty() {
                self.output_dir = PathBuf::from(p);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_key_values() {
        let mut c = Config::default();
        c.apply_text("# sweep\nfield_p = 7\nmax_type0_len=2 # short\n\noutput_dir = out\n").unwrap();
        assert_eq!(c.field_p, 7);
        assert_eq!(c.max_type0_len, 2);
        assert_eq!(c.output_dir, PathBuf::from("out"));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Config::default().apply_text("field_p = 9").is_err());
        assert!(Config::default().apply_text("field_p = 3").is_err());
        assert!(Config::default().apply_text("colour = blue").is_err());
        assert!(Config::default().apply_text("max_band_len").is_err());
        assert!(Config::default().apply_text("max_band_len = 0").is_err());
    }
}
