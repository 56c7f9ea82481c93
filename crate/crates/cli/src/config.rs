//! Suite configuration documents.
//!
//! A config is a JSON object (or TOML table) such as
//!
//! ```json
//! {"seed": 7, "taus": ["1/2", 1, 2], "ytilde": {"prefix": ["1"], "tail": "0"}}
//! ```
//!
//! Rationals are `p/q` strings or plain integers. Omitted fields take the
//! defaults `samples = 1000`, `support_max = 16`, `coeff_bound = 100`,
//! `suites = ["all"]`.

use std::fmt;
use std::io::Read;
use std::path::Path;

use monotone_core::seqspace::parse_rational;
use monotone_core::{int, ratio, Rational, SampleParams, Seq};
use num_traits::Signed;
use serde::Deserialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed config document: {0}")]
    Parse(String),
    #[error("config field `{field}`: {message}")]
    Field { field: &'static str, message: String },
}

fn field_err(field: &'static str, message: impl Into<String>) -> ConfigError {
    ConfigError::Field { field, message: message.into() }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Skew,
    Monotone,
    Maximal,
    Extensions,
    Gap,
}

impl Suite {
    pub const ALL: [Suite; 5] =
        [Suite::Skew, Suite::Monotone, Suite::Maximal, Suite::Extensions, Suite::Gap];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Skew => "skew",
            Suite::Monotone => "monotone",
            Suite::Maximal => "maximal",
            Suite::Extensions => "extensions",
            Suite::Gap => "gap",
        }
    }

    /// Parses a suite name; `all` expands to every suite.
    pub fn parse_selection(name: &str) -> Option<Vec<Suite>> {
        if name == "all" {
            return Some(Suite::ALL.to_vec());
        }
        Suite::ALL.into_iter().find(|s| s.name() == name).map(|s| vec![s])
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub samples: usize,
    pub params: SampleParams,
    /// Distinct taus in first-occurrence order.
    pub taus: Vec<Rational>,
    pub ytilde: Seq,
    /// Selected suites, deduplicated, in [`Suite::ALL`] order.
    pub suites: Vec<Suite>,
}

impl Default for SuiteConfig {
    /// Seed 0, `ytilde = e_1`, taus `1/3, 1/2, 1, 2, 3`, all suites.
    fn default() -> Self {
        SuiteConfig {
            seed: 0,
            samples: 1000,
            params: SampleParams::default(),
            taus: vec![ratio(1, 3), ratio(1, 2), int(1), int(2), int(3)],
            ytilde: Seq::unit(1),
            suites: Suite::ALL.to_vec(),
        }
    }
}

impl SuiteConfig {
    pub fn with_suites(mut self, suites: Vec<Suite>) -> Self {
        self.suites = normalize_suites(suites);
        self
    }
}

fn normalize_suites(mut suites: Vec<Suite>) -> Vec<Suite> {
    suites.sort();
    suites.dedup();
    suites
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawRational {
    Str(String),
    Int(i64),
}

impl RawRational {
    fn parse(&self, field: &'static str) -> Result<Rational, ConfigError> {
        match self {
            RawRational::Str(s) => parse_rational(s).map_err(|e| field_err(field, e.to_string())),
            RawRational::Int(n) => Ok(int(*n)),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSeq {
    #[serde(default)]
    prefix: Vec<RawRational>,
    tail: RawRational,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    seed: u64,
    samples: Option<u64>,
    support_max: Option<u64>,
    coeff_bound: Option<u64>,
    taus: Vec<RawRational>,
    ytilde: RawSeq,
    suites: Option<Vec<String>>,
}

/// Reads and validates a config from `path`, or from standard input when
/// `path` is `-`.
pub fn parse_config(path: &Path) -> Result<SuiteConfig, ConfigError> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(path)?
    };
    parse_config_str(&text)
}

/// Parses a JSON document, or TOML when the text does not start with `{`.
pub fn parse_config_str(text: &str) -> Result<SuiteConfig, ConfigError> {
    let raw: RawConfig = if text.trim_start().starts_with('{') {
        serde_json::from_str(text).map_err(|e| ConfigError::Parse(e.to_string()))?
    } else {
        toml::from_str(text).map_err(|e| ConfigError::Parse(e.to_string()))?
    };
    validate(raw)
}

fn validate(raw: RawConfig) -> Result<SuiteConfig, ConfigError> {
    let defaults = SuiteConfig::default();

    let samples = match raw.samples {
        Some(0) => return Err(field_err("samples", "must be positive")),
        Some(n) => n as usize,
        None => defaults.samples,
    };
    let support_max = match raw.support_max {
        Some(n) if n < 2 => return Err(field_err("support_max", "must be at least 2")),
        Some(n) => n as usize,
        None => defaults.params.support_max,
    };
    let coeff_bound = match raw.coeff_bound {
        Some(0) => return Err(field_err("coeff_bound", "must be positive")),
        Some(n) if n > i64::MAX as u64 => return Err(field_err("coeff_bound", "too large")),
        Some(n) => n,
        None => defaults.params.coeff_bound,
    };

    if raw.taus.is_empty() {
        return Err(field_err("taus", "must be nonempty"));
    }
    let mut taus: Vec<Rational> = Vec::new();
    for t in &raw.taus {
        let t = t.parse("taus")?;
        if !t.is_positive() {
            return Err(field_err("taus", format!("tau must be positive, got {t}")));
        }
        if !taus.contains(&t) {
            taus.push(t);
        }
    }

    let prefix = raw
        .ytilde
        .prefix
        .iter()
        .map(|r| r.parse("ytilde"))
        .collect::<Result<Vec<_>, _>>()?;
    let ytilde = Seq::new(prefix, raw.ytilde.tail.parse("ytilde")?);
    match ytilde.total_sum() {
        Ok(s) if s.is_positive() => {}
        Ok(s) => {
            return Err(field_err("ytilde", format!("<ytilde, e> must be positive, got {s}")))
        }
        Err(_) => return Err(field_err("ytilde", "tail must be 0")),
    }

    let suites = match raw.suites {
        None => defaults.suites,
        Some(names) if names.is_empty() => return Err(field_err("suites", "must be nonempty")),
        Some(names) => {
            let mut out = Vec::new();
            for n in &names {
                let sel = Suite::parse_selection(n)
                    .ok_or_else(|| field_err("suites", format!("unknown suite `{n}`")))?;
                out.extend(sel);
            }
            normalize_suites(out)
        }
    };

    Ok(SuiteConfig {
        seed: raw.seed,
        samples,
        params: SampleParams { support_max, coeff_bound },
        taus,
        ytilde,
        suites,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field_of(r: Result<SuiteConfig, ConfigError>) -> &'static str {
        match r {
            Err(ConfigError::Field { field, .. }) => field,
            other => panic!("expected field error, got {other:?}"),
        }
    }

    #[test]
    fn minimal_config_gets_defaults() {
        let c = parse_config_str(
            r#"{"seed": 7, "ytilde": {"prefix": ["1"], "tail": "0"}, "taus": [1, 2]}"#,
        )
        .unwrap();
        assert_eq!(c.seed, 7);
        assert_eq!(c.samples, 1000);
        assert_eq!(c.params, SampleParams { support_max: 16, coeff_bound: 100 });
        assert_eq!(c.suites, Suite::ALL.to_vec());
        assert_eq!(c.taus, vec![int(1), int(2)]);
        assert_eq!(c.ytilde, Seq::unit(1));
    }

    #[test]
    fn toml_is_accepted() {
        let c = parse_config_str(
            "seed = 3\ntaus = [\"1/2\", \"2\"]\nsuites = [\"gap\", \"skew\"]\n[ytilde]\nprefix = [\"0\", \"3/2\"]\ntail = \"0\"\n",
        )
        .unwrap();
        assert_eq!(c.taus, vec![ratio(1, 2), int(2)]);
        assert_eq!(c.suites, vec![Suite::Skew, Suite::Gap]);
    }

    #[test]
    fn duplicate_taus_are_deduplicated() {
        let c = parse_config_str(
            r#"{"seed": 1, "ytilde": {"prefix": ["1"], "tail": "0"}, "taus": ["1", "2/2"]}"#,
        )
        .unwrap();
        assert_eq!(c.taus, vec![int(1)]);
    }

    #[test]
    fn field_errors() {
        let base = |extra: &str| {
            format!(
                r#"{{"seed": 1, "ytilde": {{"prefix": ["1"], "tail": "0"}}, "taus": [1]{extra}}}"#
            )
        };
        assert_eq!(field_of(parse_config_str(&base(r#", "suites": ["bogus"]"#))), "suites");
        assert_eq!(field_of(parse_config_str(&base(r#", "suites": []"#))), "suites");
        assert_eq!(field_of(parse_config_str(&base(r#", "samples": 0"#))), "samples");
        assert_eq!(field_of(parse_config_str(&base(r#", "support_max": 1"#))), "support_max");
        assert_eq!(field_of(parse_config_str(&base(r#", "coeff_bound": 0"#))), "coeff_bound");
        assert_eq!(
            field_of(parse_config_str(
                r#"{"seed": 1, "ytilde": {"prefix": ["1"], "tail": "0"}, "taus": ["-1/2"]}"#
            )),
            "taus"
        );
        assert_eq!(
            field_of(parse_config_str(
                r#"{"seed": 1, "ytilde": {"prefix": ["1"], "tail": "0"}, "taus": ["1/0"]}"#
            )),
            "taus"
        );
        assert_eq!(
            field_of(parse_config_str(
                r#"{"seed": 1, "ytilde": {"prefix": ["-1", "1"], "tail": "0"}, "taus": [1]}"#
            )),
            "ytilde"
        );
        assert_eq!(
            field_of(parse_config_str(
                r#"{"seed": 1, "ytilde": {"prefix": [], "tail": "1"}, "taus": [1]}"#
            )),
            "ytilde"
        );
        assert!(matches!(parse_config_str("{"), Err(ConfigError::Parse(_))));
        assert!(matches!(
            parse_config_str(&base(r#", "colour": 1"#)),
            Err(ConfigError::Parse(_))
        ));
    }
}
