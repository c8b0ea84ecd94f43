//! Filters over a finite ideal family: enumeration, relative ultrafilters,
//! the approximated boundary, and the partial action of `P`.
//!
//! A filter over a finite intersection-closed family is the up-set of its
//! smallest member, so every [`Filter`] carries that generating ideal as
//! `base`. After acting by `p` the base `p·base` may leave the family; it is
//! kept exactly and membership of any ideal is decided by inclusion.

use serde::{Deserialize, Serialize};

use crate::ambient::{Ambient, GroupElement};
use crate::error::{Error, Result};
use crate::ideal::{Caps, Ideal, IdealFamily};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Filter {
    /// Sorted indices into the family.
    pub members: Vec<usize>,
    pub base: Ideal,
}

impl Filter {
    /// Up-set of a nonempty ideal, restricted to the family.
    pub fn generated(amb: &Ambient, fam: &IdealFamily, base: Ideal) -> Filter {
        debug_assert!(!base.is_empty());
        let members = fam.nonempty().filter(|(_, x)| amb.is_subset(&base, x)).map(|(i, _)| i).collect();
        Filter { members, base }
    }

    pub fn has(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    /// Membership of an arbitrary ideal, in or out of the family.
    pub fn contains(&self, amb: &Ambient, y: &Ideal) -> bool {
        amb.is_subset(&self.base, y)
    }

    /// Members found at level at most `max_level`.
    pub fn trace(&self, fam: &IdealFamily, max_level: usize) -> Vec<usize> {
        self.members.iter().copied().filter(|&i| fam.level[i] <= max_level).collect()
    }

    pub fn member_strings(&self, fam: &IdealFamily) -> Vec<String> {
        self.members.iter().map(|&i| fam.ideals[i].to_string()).collect()
    }
}

/// `U(X; X1, ..., Xn)`: filters containing `required` and none of `excluded`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasicOpen {
    pub required: usize,
    pub excluded: Vec<usize>,
}

impl BasicOpen {
    pub fn everything() -> BasicOpen {
        BasicOpen { required: 0, excluded: vec![] }
    }

    pub fn contains(&self, f: &Filter) -> bool {
        f.has(self.required) && !self.excluded.iter().any(|&i| f.has(i))
    }
}

/// Checks the filter axioms for an index set over `fam`.
pub fn is_filter(amb: &Ambient, fam: &IdealFamily, members: &[usize]) -> bool {
    if members.is_empty() || members.iter().any(|&i| fam.ideals[i].is_empty()) {
        return false;
    }
    let has = |i: usize| members.contains(&i);
    for &i in members {
        for (j, y) in fam.nonempty() {
            if !has(j) && amb.is_subset(&fam.ideals[i], y) {
                return false;
            }
        }
        for &j in members {
            match fam.index_of(&amb.intersect(&fam.ideals[i], &fam.ideals[j])) {
                Some(k) if has(k) => {}
                _ => return false,
            }
        }
    }
    true
}

/// One candidate per nonempty member, validated against the axioms, in family order.
pub fn enumerate_filters(amb: &Ambient, fam: &IdealFamily, caps: &Caps) -> Result<Vec<Filter>> {
    let n = fam.nonempty_count();
    if n > caps.max_filter_candidates {
        return Err(Error::Budget(format!("{n} filter candidates exceed cap {}", caps.max_filter_candidates)));
    }
    let mut out = Vec::with_capacity(n);
    for (_, x) in fam.nonempty() {
        let f = Filter::generated(amb, fam, x.clone());
        if is_filter(amb, fam, &f.members) {
            out.push(f);
        }
    }
    Ok(out)
}

/// The members containing `x`.
pub fn principal_filter_of(amb: &Ambient, fam: &IdealFamily, x: &GroupElement) -> Result<Filter> {
    amb.require_p(x)?;
    let base = amb.left_multiply(x, &amb.whole())?;
    let members = fam.nonempty().filter(|(_, y)| amb.contains(y, x)).map(|(i, _)| i).collect();
    Ok(Filter { members, base })
}

/// Every nonempty nonmember is disjoint from some member.
pub fn is_relative_ultrafilter(amb: &Ambient, fam: &IdealFamily, f: &Filter) -> bool {
    fam.nonempty().filter(|(i, _)| !f.has(*i)).all(|(_, x)| {
        f.members.iter().any(|&j| amb.intersect(x, &fam.ideals[j]).is_empty())
    })
}

/// Filters every basic neighbourhood of which meets the relative ultrafilters.
///
/// The smallest basic open around `F` requires its least member and excludes
/// every nonmember, so it suffices to test that one.
pub fn boundary_approx(amb: &Ambient, fam: &IdealFamily, filters: &[Filter]) -> Vec<usize> {
    let ultra: Vec<&Filter> = filters.iter().filter(|f| is_relative_ultrafilter(amb, fam, f)).collect();
    filters
        .iter()
        .enumerate()
        .filter(|(_, f)| {
            let least = f.members.iter().copied().find(|&i| fam.ideals[i] == f.base);
            let Some(required) = least else { return ultra.iter().any(|u| u.members == f.members) };
            let excluded = fam.nonempty().map(|(i, _)| i).filter(|&i| !f.has(i)).collect();
            let u = BasicOpen { required, excluded };
            ultra.iter().any(|g| u.contains(g))
        })
        .map(|(i, _)| i)
        .collect()
}

/// `pF = {X : p^-1 X ∈ F}`.
pub fn act_forward(amb: &Ambient, fam: &IdealFamily, p: &GroupElement, f: &Filter) -> Result<Filter> {
    amb.require_p(p)?;
    let base = amb.left_multiply(p, &f.base)?;
    Ok(Filter::generated(amb, fam, base))
}

/// Inverse of [`act_forward`], defined when `pP ∈ F`.
pub fn act_backward(amb: &Ambient, fam: &IdealFamily, p: &GroupElement, f: &Filter) -> Result<Filter> {
    amb.require_p(p)?;
    let pp = amb.left_multiply(p, &amb.whole())?;
    if !f.contains(amb, &pp) {
        return Err(Error::UndefinedOutside(format!("{pp} is not in the filter")));
    }
    let base = amb.left_preimage(p, &f.base)?;
    Ok(Filter::generated(amb, fam, base))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Invariance {
    Holds,
    /// Acting by `generator` on filter `filter` of the subset leaves it.
    Fails { generator: GroupElement, filter: usize, forward: bool },
    UnknownTruncated,
}

/// Checks `pC ⊆ C` and `p^-1(C ∩ pΣ) ⊆ C` over the generators, comparing
/// filters only on members of level at most `depth - margin`.
pub fn invariant_subset_check(amb: &Ambient, fam: &IdealFamily, c: &[Filter], margin: usize) -> Invariance {
    let Some(cut) = fam.depth.checked_sub(margin) else { return Invariance::UnknownTruncated };
    let traces: Vec<Vec<usize>> = c.iter().map(|f| f.trace(fam, cut)).collect();
    let inside = |g: &Filter| traces.contains(&g.trace(fam, cut));
    for p in &amb.generators {
        for (k, f) in c.iter().enumerate() {
            let fwd = act_forward(amb, fam, p, f).expect("generators lie in P");
            if !inside(&fwd) {
                return Invariance::Fails { generator: p.clone(), filter: k, forward: true };
            }
            if let Ok(back) = act_backward(amb, fam, p, f) {
                if !inside(&back) {
                    return Invariance::Fails { generator: p.clone(), filter: k, forward: false };
                }
            }
        }
    }
    Invariance::Holds
}

/// Some `x` in the positive ball with `xF` agreeing with `target` on the family.
pub fn reach_by_translation(
    amb: &Ambient,
    fam: &IdealFamily,
    from: &Filter,
    target: &Filter,
    radius: usize,
) -> Option<GroupElement> {
    amb.positive_ball(radius)
        .into_iter()
        .find(|x| act_forward(amb, fam, x, from).map(|g| g.members == target.members).unwrap_or(false))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Spectrum {
    pub filters: Vec<Filter>,
    pub ultrafilters: Vec<usize>,
    pub boundary: Vec<usize>,
}

pub fn spectrum(amb: &Ambient, fam: &IdealFamily, caps: &Caps) -> Result<Spectrum> {
    let filters = enumerate_filters(amb, fam, caps)?;
    let ultrafilters =
        filters.iter().enumerate().filter(|(_, f)| is_relative_ultrafilter(amb, fam, f)).map(|(i, _)| i).collect();
    let boundary = boundary_approx(amb, fam, &filters);
    Ok(Spectrum { filters, ultrafilters, boundary })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ambient::{Kind, Metadata};
    use crate::ideal::closure_to_depth;

    fn setup(kind: Kind, depth: usize) -> (Ambient, IdealFamily) {
        let a = Ambient::new("t", kind, Metadata::default()).unwrap();
        let f = closure_to_depth(&a, depth, &Caps::default());
        (a, f)
    }

    /// Every subset of the family checked against the axioms.
    fn subset_oracle(amb: &Ambient, fam: &IdealFamily) -> Vec<Vec<usize>> {
        let n = fam.len();
        assert!(n <= 20);
        let mut out = Vec::new();
        for mask in 1u32..(1 << n) {
            let s: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            if is_filter(amb, fam, &s) {
                out.push(s);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn enumeration_matches_subset_oracle() {
        for (kind, d, count) in [
            (Kind::FreeProduct { n: 2 }, 2, 7),
            (Kind::FreeProduct { n: 2 }, 3, 15),
            (Kind::Numerical { gens: vec![1] }, 3, 4),
            (Kind::Numerical { gens: vec![] }, 3, 1),
            (Kind::Numerical { gens: vec![2, 3] }, 2, 0),
        ] {
            let (a, f) = setup(kind, d);
            let got = enumerate_filters(&a, &f, &Caps::default()).unwrap();
            let mut sets: Vec<Vec<usize>> = got.iter().map(|x| x.members.clone()).collect();
            sets.sort();
            assert_eq!(sets, subset_oracle(&a, &f));
            if count > 0 {
                assert_eq!(got.len(), count);
            }
        }
    }

    #[test]
    fn free_depth3_counts() {
        let (a, f) = setup(Kind::FreeProduct { n: 2 }, 3);
        let s = spectrum(&a, &f, &Caps::default()).unwrap();
        assert_eq!(s.filters.len(), 15);
        assert_eq!(s.ultrafilters.len(), 8);
        assert_eq!(s.boundary, s.ultrafilters);
        for &u in &s.ultrafilters {
            assert_eq!(s.filters[u].base.to_string().matches('p').count(), 3);
        }
    }

    #[test]
    fn naturals_depth3() {
        let (a, f) = setup(Kind::Numerical { gens: vec![1] }, 3);
        let s = spectrum(&a, &f, &Caps::default()).unwrap();
        assert_eq!((s.filters.len(), s.ultrafilters.len(), s.boundary.len()), (4, 1, 1));
        let u = &s.filters[s.ultrafilters[0]];
        assert_eq!(u.members.len(), 4);
        let two = principal_filter_of(&a, &f, &GroupElement::Int(2)).unwrap();
        assert_eq!(two.member_strings(&f), vec!["P", "P≥1", "P≥2"]);
        let back = act_backward(&a, &f, &GroupElement::Int(1), u).unwrap();
        assert_eq!(back.members, two.members);
        let one = principal_filter_of(&a, &f, &GroupElement::Int(1)).unwrap();
        let fwd = act_forward(&a, &f, &GroupElement::Int(2), &one).unwrap();
        assert_eq!(fwd.base, Ideal::Tail { below: vec![], t: 3 });
    }

    #[test]
    fn free_actions() {
        let (a, f) = setup(Kind::FreeProduct { n: 2 }, 3);
        let p = |s: &str| a.parse_element(s).unwrap();
        let top = principal_filter_of(&a, &f, &a.identity()).unwrap();
        assert_eq!(top.members, vec![0]);
        let fwd = act_forward(&a, &f, &p("p1"), &top).unwrap();
        assert_eq!(fwd.members, principal_filter_of(&a, &f, &p("p1")).unwrap().members);
        assert_eq!(act_forward(&a, &f, &a.identity(), &fwd).unwrap(), fwd);
        let chain2 = principal_filter_of(&a, &f, &p("p2")).unwrap();
        assert!(matches!(act_backward(&a, &f, &p("p1"), &chain2), Err(Error::UndefinedOutside(_))));
        assert_eq!(act_backward(&a, &f, &p("p1"), &fwd).unwrap(), top);
        let x = principal_filter_of(&a, &f, &p("p1*p2")).unwrap();
        assert_eq!(x.member_strings(&f), vec!["P", "p1*P", "p1*p2*P"]);
        assert!(!is_relative_ultrafilter(&a, &f, &principal_filter_of(&a, &f, &p("p1")).unwrap()));
    }

    #[test]
    fn invariance() {
        let (a, f) = setup(Kind::FreeProduct { n: 2 }, 3);
        let s = spectrum(&a, &f, &Caps::default()).unwrap();
        assert_eq!(invariant_subset_check(&a, &f, &s.filters, 1), Invariance::Holds);
        let bd: Vec<Filter> = s.boundary.iter().map(|&i| s.filters[i].clone()).collect();
        assert_eq!(invariant_subset_check(&a, &f, &bd, 1), Invariance::Holds);
        let top = vec![principal_filter_of(&a, &f, &a.identity()).unwrap()];
        assert!(matches!(invariant_subset_check(&a, &f, &top, 1), Invariance::Fails { forward: true, .. }));
        assert_eq!(invariant_subset_check(&a, &f, &top, 4), Invariance::UnknownTruncated);
    }

    #[test]
    fn ultrafilters_reachable_from_every_filter() {
        for kind in [Kind::FreeProduct { n: 2 }, Kind::Numerical { gens: vec![1] }, Kind::Cone { k: 2 }] {
            for d in 1..=3 {
                let (a, f) = setup(kind.clone(), d);
                let s = spectrum(&a, &f, &Caps::default()).unwrap();
                for from in &s.filters {
                    for &u in &s.ultrafilters {
                        assert!(reach_by_translation(&a, &f, from, &s.filters[u], 2 * d).is_some());
                    }
                }
            }
        }
    }

    #[test]
    fn trivial_family() {
        let (a, f) = setup(Kind::Numerical { gens: vec![] }, 2);
        let s = spectrum(&a, &f, &Caps::default()).unwrap();
        assert_eq!(s.filters.len(), 1);
        assert_eq!(s.ultrafilters, vec![0]);
        assert_eq!(s.boundary, vec![0]);
    }
}
