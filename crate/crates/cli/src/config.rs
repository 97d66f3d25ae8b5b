//! Experiment configuration: `key = value` files, flag overrides, defaults.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Svg,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
            Format::Svg => "svg",
        })
    }
}

/// Everything a run depends on. After [`ExperimentConfig::resolve`] every
/// option the command reads is set.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub surface: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cutoff: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub simple: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub boundary: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub correspond: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slope_bound: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub resolution: Option<u64>,
}

/// Number of random starts of the genus-2 search when `budget` is not given.
pub const DEFAULT_GENUS2_STARTS: u64 = 48;

pub const KEYS: [&str; 13] = [
    "command",
    "surface",
    "cutoff",
    "budget",
    "seed",
    "out",
    "format",
    "simple",
    "boundary",
    "bound",
    "correspond",
    "slope_bound",
    "resolution",
];

fn parse_value<T: std::str::FromStr>(key: &str, v: &str, line: usize) -> Result<T, String> {
    v.parse().map_err(|_| format!("config line {line}: bad value `{v}` for `{key}`"))
}

impl ExperimentConfig {
    /// Parse `key = value` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut c = ExperimentConfig::default();
        let mut seen = BTreeMap::new();
        for (n, raw) in text.lines().enumerate() {
            let line = n + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let Some((k, v)) = body.split_once('=') else {
                return Err(format!("config line {line}: expected `key = value`"));
            };
            let (k, v) = (k.trim().replace('-', "_"), v.trim());
            if seen.insert(k.clone(), line).is_some() {
                return Err(format!("config line {line}: `{k}` given twice"));
            }
            match k.as_str() {
                "command" => c.command = v.to_string(),
                "surface" => c.surface = Some(v.to_string()),
                "cutoff" => c.cutoff = Some(parse_value(&k, v, line)?),
                "budget" => c.budget = Some(parse_value(&k, v, line)?),
                "seed" => c.seed = Some(parse_value(&k, v, line)?),
                "out" => c.out = Some(v.to_string()),
                "format" => {
                    c.format = Some(
                        <Format as clap::ValueEnum>::from_str(v, true)
                            .map_err(|_| format!("config line {line}: unknown format `{v}`"))?,
                    )
                }
                "simple" => c.simple = Some(parse_value(&k, v, line)?),
                "boundary" => c.boundary = Some(parse_value(&k, v, line)?),
                "bound" => c.bound = Some(parse_value(&k, v, line)?),
                "correspond" => c.correspond = Some(parse_value(&k, v, line)?),
                "slope_bound" => c.slope_bound = Some(parse_value(&k, v, line)?),
                "resolution" => c.resolution = Some(parse_value(&k, v, line)?),
                _ => return Err(format!("config line {line}: unknown key `{k}`")),
            }
        }
        Ok(c)
    }

    /// Fields set in `over` win.
    pub fn overridden_by(mut self, over: &ExperimentConfig) -> Self {
        if !over.command.is_empty() {
            self.command = over.command.clone();
        }
        macro_rules! take {
            ($($f:ident),*) => {$(if over.$f.is_some() { self.$f = over.$f.clone(); })*};
        }
        take!(surface, cutoff, budget, seed, out, format, simple, boundary, bound, correspond, slope_bound, resolution);
        self
    }

    /// Fill in the per-command defaults and check the combination.
    pub fn resolve(mut self) -> Result<Self, String> {
        let fmt = |c: &Self, allowed: &[Format], default: Format| -> Result<Format, String> {
            let f = c.format.unwrap_or(default);
            if allowed.contains(&f) {
                Ok(f)
            } else {
                Err(format!("`{}` cannot write {f}", c.command))
            }
        };
        match self.command.as_str() {
            "spectrum" => {
                self.surface.get_or_insert_with(|| "modular-torus".into());
                self.cutoff.get_or_insert(10.0);
                if !*self.simple.get_or_insert(false) {
                    self.budget.get_or_insert(geowb::spectra::DEFAULT_BUDGET);
                }
                self.format = Some(fmt(&self, &[Format::Csv, Format::Json], Format::Csv)?);
            }
            "extremal" => {
                let s = self.surface.get_or_insert_with(|| "torus".into()).clone();
                match s.as_str() {
                    "torus" => {
                        self.boundary.get_or_insert(0.0);
                    }
                    "genus2" => {
                        self.budget.get_or_insert(DEFAULT_GENUS2_STARTS);
                        self.seed.get_or_insert(1);
                    }
                    _ => return Err(format!("extremal surface must be `torus` or `genus2`, got `{s}`")),
                }
                self.format = Some(fmt(&self, &[Format::Json], Format::Json)?);
            }
            "plot" => {
                self.surface.get_or_insert_with(|| "modular-torus".into());
                self.slope_bound.get_or_insert(1);
                self.resolution.get_or_insert(32);
                self.format = Some(fmt(&self, &[Format::Svg], Format::Svg)?);
            }
            "markov" => {
                let b = self.bound.ok_or("markov needs --bound")?;
                if b == 0 {
                    return Err("--bound must be at least 1".into());
                }
                self.format = Some(fmt(&self, &[Format::Json], Format::Json)?);
            }
            "bers" => {
                self.surface.get_or_insert_with(|| "modular-torus".into());
                self.format = Some(fmt(&self, &[Format::Json], Format::Json)?);
            }
            "huber" => {
                self.surface.get_or_insert_with(|| "modular-torus".into());
                self.cutoff.get_or_insert(12.0);
                self.format = Some(fmt(&self, &[Format::Json], Format::Json)?);
            }
            "gendulphe" => {
                self.format = Some(fmt(&self, &[Format::Json], Format::Json)?);
            }
            other => return Err(format!("unknown command `{other}`")),
        }
        if let Some(c) = self.cutoff {
            if !(c.is_finite() && c > 0.0) {
                return Err(format!("--cutoff must be positive, got {c}"));
            }
        }
        if self.budget == Some(0) {
            return Err("--budget must be at least 1".into());
        }
        if self.resolution == Some(0) {
            return Err("--resolution must be at least 1".into());
        }
        Ok(self)
    }

    /// The configuration as `key = value` lines, in a fixed key order.
    pub fn to_text(&self) -> String {
        let v = serde_json::to_value(self).expect("config serializes");
        let obj = v.as_object().expect("config is an object");
        KEYS.iter()
            .filter_map(|k| obj.get(*k).map(|x| (k, x)))
            .map(|(k, x)| match x {
                serde_json::Value::String(s) => format!("{k} = {s}"),
                other => format!("{k} = {other}"),
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let c = ExperimentConfig::parse("command = spectrum\nsurface = modular-torus # comment\ncutoff = 8.5\nsimple = true\n")
            .unwrap()
            .resolve()
            .unwrap();
        let again = ExperimentConfig::parse(&c.to_text()).unwrap();
        assert_eq!(c, again);
    }

    #[test]
    fn rejects_unknown_and_duplicate_keys() {
        assert!(ExperimentConfig::parse("colour = red").is_err());
        assert!(ExperimentConfig::parse("seed = 1\nseed = 2").is_err());
        assert!(ExperimentConfig::parse("seed = x").is_err());
    }

    #[test]
    fn flags_override_file() {
        let file = ExperimentConfig::parse("command = markov\nbound = 10").unwrap();
        let flags = ExperimentConfig { bound: Some(30), ..Default::default() };
        assert_eq!(file.overridden_by(&flags).bound, Some(30));
    }
}
