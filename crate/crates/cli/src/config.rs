//! Run configuration: long flags layered over an optional `key = value` file.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, ValueEnum};
use obstruction::suites::SuiteParams;
use obstruction::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Default, Args)]
pub struct RunFlags {
    /// Odd prime: 3, 5 or 7.
    #[arg(long)]
    pub p: Option<u32>,
    /// Restrict subgroup-indexed checks to one t in 0..=p.
    #[arg(long)]
    pub t: Option<u32>,
    /// Tube width for construct3, as a rational "a/b" in (0, 1/4).
    #[arg(long)]
    pub epsilon: Option<String>,
    /// Internal-degree cap for resolutions and the ×p rederivation.
    #[arg(long = "max-degree")]
    pub max_degree: Option<u32>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Number of random points for the floating-point cross-check.
    #[arg(long)]
    pub points: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// File of `key = value` lines; flags given on the command line win.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub params: SuiteParams,
    pub format: Format,
    pub out: Option<PathBuf>,
}

pub fn parse_config_file(text: &str) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| anyhow!("config line {}: expected `key = value`", i + 1))?;
        map.insert(k.trim().replace('_', "-"), v.trim().to_string());
    }
    Ok(map)
}

pub fn parse_epsilon(s: &str) -> Result<Rational> {
    let r: Rational = s.trim().parse().map_err(|_| anyhow!("epsilon `{s}` is not a rational a/b"))?;
    let quarter = Rational::new(1.into(), 4.into());
    if r <= Rational::from_integer(0.into()) || r >= quarter {
        bail!("epsilon {r} must lie strictly between 0 and 1/4");
    }
    Ok(r)
}

fn num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
    v.parse().map_err(|_| anyhow!("`{key}` expects a number, got `{v}`"))
}

impl RunFlags {
    /// Fills unset flags from the config file, validates, and produces the run configuration.
    pub fn resolve(&self, data_dir: Option<PathBuf>) -> Result<RunConfig> {
        let mut flags = self.clone();
        if let Some(path) = &self.config {
            flags.merge_file(path)?;
        }
        let p = flags.p.unwrap_or(3);
        if ![3, 5, 7].contains(&p) {
            bail!("p must be one of 3, 5, 7 (got {p})");
        }
        if let Some(t) = flags.t {
            if t > p {
                bail!("t must lie in 0..={p} (got {t})");
            }
        }
        let mut params = SuiteParams::new(p);
        params.t = flags.t;
        params.max_degree = flags.max_degree;
        params.data_dir = data_dir;
        if let Some(e) = &flags.epsilon {
            params.eps = parse_epsilon(e)?;
        }
        if let Some(n) = flags.points {
            params.numeric_points = n;
        }
        if let Some(s) = flags.seed {
            params.seed = s;
        }
        Ok(RunConfig {
            params,
            format: flags.format.unwrap_or(Format::Json),
            out: flags.out,
        })
    }

    fn merge_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        for (k, v) in parse_config_file(&text)? {
            match k.as_str() {
                "p" => self.p = self.p.or(Some(num(&k, &v)?)),
                "t" => self.t = self.t.or(Some(num(&k, &v)?)),
                "epsilon" => self.epsilon = self.epsilon.take().or(Some(v)),
                "max-degree" => self.max_degree = self.max_degree.or(Some(num(&k, &v)?)),
                "out" => self.out = self.out.take().or(Some(PathBuf::from(v))),
                "format" => {
                    let f = Format::from_str(&v, true).map_err(|e| anyhow!("format: {e}"))?;
                    self.format = self.format.or(Some(f));
                }
                "points" => self.points = self.points.or(Some(num(&k, &v)?)),
                "seed" => self.seed = self.seed.or(Some(num(&k, &v)?)),
                other => bail!("unknown config key `{other}`"),
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_lines_and_comments() {
        let m = parse_config_file("p = 5\n# note\n\nmax_degree = 12  # cap\n").unwrap();
        assert_eq!(m["p"], "5");
        assert_eq!(m["max-degree"], "12");
        assert!(parse_config_file("p 5").is_err());
    }

    #[test]
    fn epsilon_bounds() {
        assert_eq!(parse_epsilon("1/8").unwrap(), Rational::new(1.into(), 8.into()));
        assert_eq!(parse_epsilon(" 2/10 ").unwrap(), Rational::new(1.into(), 5.into()));
        for bad in ["0", "1/4", "2/7", "-1/8", "x", "1/0"] {
            assert!(parse_epsilon(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn flags_override_file() {
        let dir = std::env::temp_dir().join(format!("obstruction-cfg-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("run.cfg");
        std::fs::write(&path, "p = 5\nt = 2\nformat = text\n").unwrap();
        let flags = RunFlags {
            p: Some(7),
            config: Some(path),
            ..Default::default()
        };
        let cfg = flags.resolve(None).unwrap();
        assert_eq!(cfg.params.p, 7);
        assert_eq!(cfg.params.t, Some(2));
        assert_eq!(cfg.format, Format::Text);
        std::fs::remove_dir_all(dir).unwrap();
    }

    #[test]
    fn validation() {
        let bad_p = RunFlags { p: Some(11), ..Default::default() };
        assert!(bad_p.resolve(None).is_err());
        let bad_t = RunFlags { p: Some(3), t: Some(4), ..Default::default() };
        assert!(bad_t.resolve(None).is_err());
        assert_eq!(RunFlags::default().resolve(None).unwrap().params.p, 3);
    }
}
