//! On-disk JSON cache of quadrature rules, keyed by their construction parameters.

use std::fs;
use std::path::{Path, PathBuf};

use super::{build_radial_rule, build_sphere_rule, BallRule, RadialRule, SphereRule};
use crate::error::Result;

pub const CACHE_DIR_ENV: &str = "POLYBERGMAN_CACHE_DIR";

#[derive(Debug, Clone)]
pub struct RuleCache {
    dir: Option<PathBuf>,
}

impl RuleCache {
    /// A cache rooted at `dir` (created on first write).
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        RuleCache {
            dir: Some(dir.into()),
        }
    }

    /// Builds every rule afresh.
    pub fn disabled() -> Self {
        RuleCache { dir: None }
    }

    /// Rooted at `$POLYBERGMAN_CACHE_DIR` when set and non-empty.
    pub fn from_env() -> Self {
        match std::env::var_os(CACHE_DIR_ENV) {
            Some(d) if !d.is_empty() => RuleCache::new(d),
            _ => RuleCache::disabled(),
        }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    fn load_or_build<T, B>(&self, name: String, build: B) -> Result<T>
    where
        T: serde::Serialize + serde::de::DeserializeOwned,
        B: FnOnce() -> Result<T>,
    {
        let Some(dir) = &self.dir else {
            return build();
        };
        let path = dir.join(name);
        // an unreadable or stale entry is rebuilt, never trusted
        if let Ok(text) = fs::read_to_string(&path) {
            if let Ok(rule) = serde_json::from_str(&text) {
                return Ok(rule);
            }
        }
        let rule = build()?;
        fs::create_dir_all(dir)?;
        let tmp = path.with_extension("json.tmp");
        fs::write(&tmp, serde_json::to_string(&rule)?)?;
        fs::rename(&tmp, &path)?;
        Ok(rule)
    }

    pub fn sphere(&self, n: usize, exact_degree: usize) -> Result<SphereRule> {
        self.load_or_build(format!("sphere_n{n}_d{exact_degree}.json"), || {
            build_sphere_rule(n, exact_degree)
        })
    }

    pub fn radial(&self, n: usize, alpha: f64, beta: f64, node_count: usize) -> Result<RadialRule> {
        // bit patterns keep the key exact for any float
        let name = format!(
            "radial_n{n}_a{:016x}_b{:016x}_N{node_count}.json",
            alpha.to_bits(),
            beta.to_bits()
        );
        self.load_or_build(name, || build_radial_rule(n, alpha, beta, node_count))
    }

    pub fn ball(&self, n: usize, alpha: f64, beta: f64, exact_degree: usize) -> Result<BallRule> {
        let sphere = self.sphere(n, exact_degree)?;
        let radial = self.radial(n, alpha, beta, exact_degree / 2 + 1)?;
        BallRule::from_parts(sphere, radial)
    }
}
