//! Run configuration, read from TOML.
//!
//! ```toml
//! family = "numerical:2,3"        # catalog id, or use [inline] instead
//! depth = 3                       # closure depth, at least 1
//! bound = 3                       # radius for probes over group balls
//! seed = 0
//! hull_depth = 3
//! samples = 8                     # G_0 samples kept in the dossier
//!
//! [inline]                        # a catalog kind with explicit parameters
//! kind = "numerical"
//! gens = [3, 5]
//!
//! [caps]
//! max_ideals = 10000
//! max_filter_candidates = 100000
//! max_hull_depth = 6
//! ```

use serde::{Deserialize, Serialize};

use crate::ambient::{Ambient, Kind};
use crate::catalog;
use crate::error::{Error, Result};
use crate::ideal::Caps;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub family: Option<String>,
    pub inline: Option<Kind>,
    pub depth: Option<usize>,
    pub bound: Option<usize>,
    pub seed: Option<u64>,
    pub hull_depth: Option<usize>,
    pub samples: Option<usize>,
    pub caps: Option<CapsConfig>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CapsConfig {
    pub max_ideals: Option<usize>,
    pub max_filter_candidates: Option<usize>,
    pub max_hull_depth: Option<usize>,
}

/// Fully resolved run parameters, recorded in the dossier.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    pub depth: usize,
    pub bound: usize,
    pub seed: u64,
    pub hull_depth: usize,
    pub samples: usize,
    pub caps: Caps,
}

impl Default for Params {
    fn default() -> Self {
        Params { depth: 3, bound: 3, seed: 0, hull_depth: 3, samples: 8, caps: Caps::default() }
    }
}

impl Config {
    pub fn parse(text: &str) -> Result<Config> {
        toml::from_str(text).map_err(|e| {
            let path = e.span().map(|s| format!("byte {}", s.start)).unwrap_or_else(|| "<root>".into());
            Error::Config { path, msg: e.message().to_string() }
        })
    }

    pub fn load(path: &std::path::Path) -> Result<Config> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Config::parse(&text)
    }

    /// Values set here win over `other`.
    pub fn or(self, other: Config) -> Config {
        Config {
            family: self.family.or(other.family),
            inline: self.inline.or(other.inline),
            depth: self.depth.or(other.depth),
            bound: self.bound.or(other.bound),
            seed: self.seed.or(other.seed),
            hull_depth: self.hull_depth.or(other.hull_depth),
            samples: self.samples.or(other.samples),
            caps: match (self.caps, other.caps) {
                (Some(a), Some(b)) => Some(CapsConfig {
                    max_ideals: a.max_ideals.or(b.max_ideals),
                    max_filter_candidates: a.max_filter_candidates.or(b.max_filter_candidates),
                    max_hull_depth: a.max_hull_depth.or(b.max_hull_depth),
                }),
                (a, b) => a.or(b),
            },
        }
    }

    pub fn resolve(&self) -> Result<(Ambient, Params)> {
        let cfg = |path: &str, msg: &str| Error::Config { path: path.into(), msg: msg.into() };
        let amb = match (&self.family, &self.inline) {
            (Some(_), Some(_)) => return Err(cfg("inline", "give either `family` or `[inline]`, not both")),
            (Some(id), None) => catalog::lookup(id).map_err(|e| cfg("family", &e.to_string()))?,
            (None, Some(kind)) => {
                catalog::from_kind(&inline_id(kind), kind.clone()).map_err(|e| cfg("inline", &e.to_string()))?
            }
            (None, None) => return Err(cfg("family", "missing")),
        };
        let d = Params::default();
        let mut caps = d.caps;
        if let Some(c) = &self.caps {
            caps.max_ideals = c.max_ideals.unwrap_or(caps.max_ideals);
            caps.max_filter_candidates = c.max_filter_candidates.unwrap_or(caps.max_filter_candidates);
            caps.max_hull_depth = c.max_hull_depth.unwrap_or(caps.max_hull_depth);
        }
        let depth = self.depth.unwrap_or(d.depth);
        if depth == 0 {
            return Err(cfg("depth", "must be at least 1"));
        }
        let hull_depth = self.hull_depth.unwrap_or(d.hull_depth);
        if hull_depth > caps.max_hull_depth {
            return Err(cfg("hull_depth", &format!("exceeds caps.max_hull_depth = {}", caps.max_hull_depth)));
        }
        let params = Params {
            depth,
            bound: self.bound.unwrap_or(d.bound),
            seed: self.seed.unwrap_or(d.seed),
            hull_depth,
            samples: self.samples.unwrap_or(d.samples),
            caps,
        };
        Ok((amb, params))
    }
}

fn inline_id(kind: &Kind) -> String {
    let join = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
    match kind {
        Kind::FreeProduct { n } => format!("free_product_naturals:{n}"),
        Kind::Cone { k } => format!("cone_zk:{k}"),
        Kind::Numerical { gens } => format!("numerical:{}", join(gens)),
        Kind::Affine { primes } => format!("axb_integers:{}", join(primes)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_resolve() {
        let c = Config::parse("family = \"cone_zk:2\"\ndepth = 2\n[caps]\nmax_ideals = 50\n").unwrap();
        let (a, p) = c.resolve().unwrap();
        assert_eq!(a.kind, Kind::Cone { k: 2 });
        assert_eq!((p.depth, p.caps.max_ideals, p.bound), (2, 50, 3));
        let c = Config::parse("depth = 2\n[inline]\nkind = \"numerical\"\ngens = [3, 5]\n").unwrap();
        let (a, _) = c.resolve().unwrap();
        assert_eq!(a.id, "numerical:3,5");
    }

    #[test]
    fn errors_carry_paths() {
        match Config::parse("family = \"naturals\"\ndepht = 2\n") {
            Err(Error::Config { msg, .. }) => assert!(msg.contains("depht")),
            r => panic!("{r:?}"),
        }
        let c = Config::parse("family = \"naturals\"\ndepth = 0\n").unwrap();
        assert!(matches!(c.resolve(), Err(Error::Config { path, .. }) if path == "depth"));
        let c = Config::parse("family = \"what\"\n").unwrap();
        assert!(matches!(c.resolve(), Err(Error::Config { path, .. }) if path == "family"));
        assert!(matches!(Config::default().resolve(), Err(Error::Config { path, .. }) if path == "family"));
    }

    #[test]
    fn override_order() {
        let cli = Config { depth: Some(4), ..Default::default() };
        let file = Config { family: Some("naturals".into()), depth: Some(2), ..Default::default() };
        let merged = cli.or(file);
        assert_eq!((merged.depth, merged.family.as_deref()), (Some(4), Some("naturals")));
    }
}
