//! Built-in families and their recorded metadata.

use serde::Serialize;

use crate::ambient::{Ambient, Cited, Kind, Metadata};
use crate::error::{Error, Result};

const BROWN_OZAWA: &str = "N. Brown, N. Ozawa, C*-Algebras and Finite-Dimensional Approximations, AMS GSM 88 (2008)";
const CUNTZ: &str = "J. Cuntz, Simple C*-algebras generated by isometries, Comm. Math. Phys. 57 (1977)";
const CUNTZ_LI: &str = "J. Cuntz, X. Li, The regular C*-algebra of an integral domain, Clay Math. Proc. 11 (2010)";

#[derive(Clone, Debug, Serialize)]
pub struct CatalogRow {
    pub id: &'static str,
    pub group: &'static str,
    pub monoid: &'static str,
    pub flags: Vec<String>,
    pub citations: Vec<String>,
}

/// Parses a catalog id such as `free_product_naturals:2` or `numerical:2,3`.
pub fn parse_id(id: &str) -> Result<Kind> {
    let (head, arg) = match id.split_once(':') {
        Some((h, a)) => (h, Some(a)),
        None => (id, None),
    };
    let int = |s: &str| s.trim().parse::<i64>().map_err(|_| Error::Usage(format!("bad integer `{s}` in `{id}`")));
    let list = |a: Option<&str>| -> Result<Vec<i64>> {
        match a {
            None | Some("") => Ok(vec![]),
            Some(a) => a.split(',').map(int).collect(),
        }
    };
    let count = |a: Option<&str>| -> Result<usize> {
        let a = a.ok_or_else(|| Error::Usage(format!("`{id}` needs a parameter")))?;
        let n = int(a)?;
        if n < 1 {
            return Err(Error::Usage(format!("parameter of `{id}` must be at least 1")));
        }
        Ok(n as usize)
    };
    match head {
        "free_product_naturals" => Ok(Kind::FreeProduct { n: count(arg)? }),
        "cone_zk" => Ok(Kind::Cone { k: count(arg)? }),
        "naturals" if arg.is_none() => Ok(Kind::Numerical { gens: vec![1] }),
        "numerical" => Ok(Kind::Numerical { gens: list(arg)? }),
        "axb_integers" => {
            let primes = list(arg)?;
            Ok(Kind::Affine { primes: if primes.is_empty() { vec![2, 3] } else { primes } })
        }
        "trivial" if arg.is_none() => Ok(Kind::Numerical { gens: vec![] }),
        _ => Err(Error::Usage(format!("unknown family `{id}`; see `sglab list`"))),
    }
}

pub fn lookup(id: &str) -> Result<Ambient> {
    from_kind(id, parse_id(id)?)
}

/// Builds a family of any supported kind with the metadata the catalog records for it.
pub fn from_kind(id: &str, kind: Kind) -> Result<Ambient> {
    let meta = metadata(&kind);
    Ambient::new(id, kind, meta)
}

fn assumed(holds: bool, citation: &str) -> Option<Cited> {
    Some(Cited { holds, citation: citation.into() })
}

pub fn metadata(kind: &Kind) -> Metadata {
    match kind {
        Kind::FreeProduct { n } => Metadata {
            description: format!("{n}-fold free product of N inside the free group F_{n}"),
            amenability: assumed(true, &format!("{BROWN_OZAWA}, ch. 5: F_n acts amenably on the boundary of its tree")),
            left_ore: Some(*n <= 1),
            abelian: *n <= 1,
            all_principal: true,
            lattice_argument: (*n <= 1).then(|| "total order".into()),
            g0_top_free: assumed(true, &format!("{CUNTZ}; G_0 is trivial")),
        },
        Kind::Cone { k } => Metadata {
            description: format!("nonnegative cone N^{k} in Z^{k}"),
            amenability: assumed(true, &format!("{BROWN_OZAWA}, ch. 2: abelian groups are amenable")),
            left_ore: Some(true),
            abelian: true,
            all_principal: true,
            lattice_argument: Some("componentwise maximum: (v+P) ∩ (w+P) = max(v,w)+P".into()),
            g0_top_free: None,
        },
        Kind::Numerical { gens } => {
            let trivial = gens.is_empty();
            let naturals = gens.contains(&1);
            Metadata {
                description: if trivial {
                    "trivial monoid {0} in Z".into()
                } else if naturals {
                    "natural numbers N in Z".into()
                } else {
                    format!("numerical semigroup generated by {gens:?} in Z")
                },
                amenability: assumed(true, &format!("{BROWN_OZAWA}, ch. 2: abelian groups are amenable")),
                left_ore: Some(true),
                abelian: true,
                all_principal: trivial || naturals,
                lattice_argument: (trivial || naturals).then(|| "total order".into()),
                g0_top_free: None,
            }
        }
        Kind::Affine { primes } => Metadata {
            description: format!("ax+b monoid Z ⋊ Z^x in Q ⋊ Q^x, scalings generated by ±1 and {primes:?}"),
            amenability: assumed(true, &format!("{BROWN_OZAWA}, ch. 2: solvable groups are amenable")),
            left_ore: Some(true),
            abelian: false,
            all_principal: true,
            lattice_argument: None,
            g0_top_free: assumed(true, CUNTZ_LI),
        },
    }
}

pub fn list() -> Vec<CatalogRow> {
    let row = |id, group, monoid, kind: Kind| {
        let m = metadata(&kind);
        let mut flags = vec![];
        if m.abelian {
            flags.push("abelian".to_string());
        }
        if m.left_ore == Some(true) {
            flags.push("left_ore".into());
        }
        if m.all_principal {
            flags.push("all_principal".into());
        }
        if let Some(a) = &m.lattice_argument {
            flags.push(format!("quasi_lattice ({a})"));
        }
        let citations = m.amenability.iter().chain(m.g0_top_free.iter()).map(|c| c.citation.clone()).collect();
        CatalogRow { id, group, monoid, flags, citations }
    };
    vec![
        row("free_product_naturals:n", "F_n", "N * ... * N (n-fold free product)", Kind::FreeProduct { n: 2 }),
        row("cone_zk:k", "Z^k", "N^k", Kind::Cone { k: 2 }),
        row("naturals", "Z", "N", Kind::Numerical { gens: vec![1] }),
        row("numerical:a,b,...", "Z", "numerical semigroup <a,b,...>", Kind::Numerical { gens: vec![2, 3] }),
        row("axb_integers", "Q ⋊ Q^x", "Z ⋊ Z^x", Kind::Affine { primes: vec![2, 3] }),
        row("trivial", "Z", "P = {e}", Kind::Numerical { gens: vec![] }),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids() {
        assert_eq!(parse_id("free_product_naturals:3").unwrap(), Kind::FreeProduct { n: 3 });
        assert_eq!(parse_id("numerical:2,3").unwrap(), Kind::Numerical { gens: vec![2, 3] });
        assert_eq!(parse_id("naturals").unwrap(), parse_id("numerical:1").unwrap());
        assert_eq!(parse_id("axb_integers").unwrap(), Kind::Affine { primes: vec![2, 3] });
        assert!(lookup("trivial").unwrap().is_trivial());
        for bad in ["cone_zk", "cone_zk:0", "free_product_naturals:x", "nope", "trivial:2"] {
            assert!(matches!(parse_id(bad), Err(Error::Usage(_))), "{bad}");
        }
    }

    #[test]
    fn table() {
        let rows = list();
        let ids: Vec<&str> = rows.iter().map(|r| r.id).collect();
        assert!(ids.contains(&"free_product_naturals:n"));
        assert!(ids.contains(&"axb_integers"));
        let t = rows.iter().find(|r| r.id == "trivial").unwrap();
        assert_eq!(t.monoid, "P = {e}");
        assert!(rows.iter().all(|r| !r.citations.is_empty()));
    }
}
