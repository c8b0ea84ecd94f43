//! Groupoid of germs over a finite hull and filter set, the comparison map
//! into the transformation groupoid of extended characters, and the
//! dynamical probes feeding the pure-infiniteness checklist.

use serde::{Deserialize, Serialize};

use crate::ambient::{Ambient, GroupElement};
use crate::error::{Error, Result};
use crate::hull::{Hull, PartialIsometry};
use crate::ideal::{Ideal, IdealFamily, Independence};
use crate::spectrum::{BasicOpen, Filter, Spectrum};
use crate::toeplitz::{ConditionReport, Status, Witness};

/// The character `(c*F)·g`: on a translated ideal `hX` it is `[P ∩ ghX ∈ F]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtendedCharacter {
    pub filter: Filter,
    pub shift: GroupElement,
}

impl ExtendedCharacter {
    pub fn eval(&self, amb: &Ambient, h: &GroupElement, x: &Ideal) -> bool {
        let gh = amb.multiply(&self.shift, h).expect("same family");
        self.filter.contains(amb, &amb.p_cap_translate(&gh, x))
    }

    /// Right translation `χ·k`.
    pub fn act(&self, amb: &Ambient, k: &GroupElement) -> ExtendedCharacter {
        let shift = amb.multiply(&self.shift, k).expect("same family");
        ExtendedCharacter { filter: self.filter.clone(), shift }
    }
}

/// Evaluation-equality on `hX` for `h` in `shifts` and nonempty `X` in the family.
pub fn ext_equal(
    amb: &Ambient,
    fam: &IdealFamily,
    a: &ExtendedCharacter,
    b: &ExtendedCharacter,
    shifts: &[GroupElement],
) -> bool {
    shifts.iter().all(|h| fam.nonempty().all(|(_, x)| a.eval(amb, h, x) == b.eval(amb, h, x)))
}

/// Germ representative `[s, F]`, requiring `dom(s) ∈ F`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowA {
    pub s: PartialIsometry,
    pub filter: Filter,
}

/// Arrow `(ψ, g)` of the transformation groupoid, from `ψ·g` to `ψ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowB {
    pub character: ExtendedCharacter,
    pub g: GroupElement,
}

/// `χ ∘ Ad(s*)`: the filter of `Y` with `s* e_Y s` in `F`.
pub fn s_dot_chi(amb: &Ambient, fam: &IdealFamily, s: &PartialIsometry, f: &Filter) -> Result<Filter> {
    let PartialIsometry::Map { domain, shift } = s else {
        return Err(Error::Composability("zero element".into()));
    };
    if !f.contains(amb, domain) {
        return Err(Error::Composability(format!("domain {domain} is not in the filter")));
    }
    let inv = amb.invert(shift);
    let members = fam
        .nonempty()
        .filter(|(_, y)| f.contains(amb, &amb.intersect(domain, &amb.p_cap_translate(&inv, y))))
        .map(|(i, _)| i)
        .collect();
    Ok(Filter { members, base: amb.p_cap_translate(shift, &f.base) })
}

pub fn arrow(amb: &Ambient, s: PartialIsometry, filter: Filter) -> Result<ArrowA> {
    match s.domain() {
        Some(d) if filter.contains(amb, d) => Ok(ArrowA { s, filter }),
        _ => Err(Error::Composability(format!("{s} is not defined at the filter"))),
    }
}

/// Same filter and a member of it on which the two maps agree.
pub fn arrow_equiv(amb: &Ambient, a1: &ArrowA, a2: &ArrowA) -> bool {
    if a1.filter != a2.filter {
        return false;
    }
    let f = &a1.filter;
    let restrict = |s: &PartialIsometry, x: &Ideal| amb.compose(s, &amb.projection(x));
    std::iter::once(&f.base).any(|x| restrict(&a1.s, x) == restrict(&a2.s, x))
}

pub fn compose_a(amb: &Ambient, fam: &IdealFamily, a1: &ArrowA, a2: &ArrowA) -> Result<ArrowA> {
    let image = s_dot_chi(amb, fam, &a2.s, &a2.filter)?;
    if image.base != a1.filter.base {
        return Err(Error::Composability("range of the second is not the source of the first".into()));
    }
    arrow(amb, amb.compose(&a1.s, &a2.s), a2.filter.clone())
}

pub fn inverse_a(amb: &Ambient, fam: &IdealFamily, a: &ArrowA) -> Result<ArrowA> {
    let range = s_dot_chi(amb, fam, &a.s, &a.filter)?;
    arrow(amb, amb.adjoint(&a.s), range)
}

pub fn phi(amb: &Ambient, a: &ArrowA) -> Result<ArrowB> {
    let g = amb.grade(&a.s)?;
    let character = ExtendedCharacter { filter: a.filter.clone(), shift: amb.invert(&g) };
    Ok(ArrowB { character, g })
}

pub fn composable_b(amb: &Ambient, fam: &IdealFamily, b1: &ArrowB, b2: &ArrowB, shifts: &[GroupElement]) -> bool {
    ext_equal(amb, fam, &b1.character.act(amb, &b1.g), &b2.character, shifts)
}

pub fn compose_b(amb: &Ambient, b1: &ArrowB, b2: &ArrowB) -> ArrowB {
    ArrowB { character: b1.character.clone(), g: amb.multiply(&b1.g, &b2.g).expect("same family") }
}

pub fn arrow_b_equal(amb: &Ambient, fam: &IdealFamily, b1: &ArrowB, b2: &ArrowB, shifts: &[GroupElement]) -> bool {
    b1.g == b2.g && ext_equal(amb, fam, &b1.character, &b2.character, shifts)
}

/// Every nonzero hull element paired with every filter at which it is defined.
pub fn enumerate_arrows(amb: &Ambient, hull: &Hull, filters: &[Filter]) -> Vec<ArrowA> {
    let mut out = Vec::new();
    for s in hull.nonzero() {
        for f in filters {
            if let Ok(a) = arrow(amb, s.clone(), f.clone()) {
                out.push(a);
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// `gP ∩ X = ∅`.
    Forward,
    /// `g^-1 P ∩ X = ∅`.
    Backward,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum G0Verdict {
    InG0ToBudget { checked: usize },
    NotInG0 { ideal: Ideal, side: Side },
}

pub fn g0_probe(amb: &Ambient, fam: &IdealFamily, g: &GroupElement) -> G0Verdict {
    let inv = amb.invert(g);
    let mut checked = 0;
    for (_, x) in fam.nonempty() {
        checked += 1;
        if amb.p_cap_translate(&inv, x).is_empty() {
            return G0Verdict::NotInG0 { ideal: x.clone(), side: Side::Forward };
        }
        if amb.p_cap_translate(g, x).is_empty() {
            return G0Verdict::NotInG0 { ideal: x.clone(), side: Side::Backward };
        }
    }
    G0Verdict::InG0ToBudget { checked }
}

pub fn check_g0_witness(amb: &Ambient, g: &GroupElement, ideal: &Ideal, side: Side) -> bool {
    let t = match side {
        Side::Forward => amb.invert(g),
        Side::Backward => g.clone(),
    };
    amb.check(g).is_ok() && !ideal.is_empty() && amb.p_cap_translate(&t, ideal).is_empty()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TopFree {
    /// `χ = c*F` and `χ·g` differ on `hX`.
    Moved { filter: Filter, h: GroupElement, ideal: Ideal },
    FixedEverywhereSampled { checked: usize },
}

/// Compares `χ` and `χ·g` for each boundary filter on `hX`, using only
/// translates `P ∩ hX` and `P ∩ ghX` that lie in the family, where the
/// truncated filter is trustworthy.
pub fn top_free_probe(
    amb: &Ambient,
    fam: &IdealFamily,
    boundary: &[Filter],
    g: &GroupElement,
    shifts: &[GroupElement],
) -> Result<TopFree> {
    if g.is_identity() {
        return Err(Error::Usage("topological freeness probe needs g != e".into()));
    }
    let mut checked = 0;
    for f in boundary {
        for h in shifts {
            let gh = amb.multiply(g, h)?;
            for (_, x) in fam.nonempty() {
                let (y1, y2) = (amb.p_cap_translate(h, x), amb.p_cap_translate(&gh, x));
                if fam.index_of(&y1).is_none() || fam.index_of(&y2).is_none() {
                    continue;
                }
                checked += 1;
                if f.contains(amb, &y1) != f.contains(amb, &y2) {
                    return Ok(TopFree::Moved { filter: f.clone(), h: h.clone(), ideal: x.clone() });
                }
            }
        }
    }
    Ok(TopFree::FixedEverywhereSampled { checked })
}

pub fn check_moved_witness(
    amb: &Ambient,
    fam: &IdealFamily,
    g: &GroupElement,
    filter: &Filter,
    h: &GroupElement,
    ideal: &Ideal,
) -> bool {
    let Ok(gh) = amb.multiply(g, h) else { return false };
    let (y1, y2) = (amb.p_cap_translate(h, ideal), amb.p_cap_translate(&gh, ideal));
    fam.index_of(&y1).is_some() && fam.index_of(&y2).is_some() && filter.contains(amb, &y1) != filter.contains(amb, &y2)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompressionWitness {
    pub ultrafilter: Filter,
    /// `X ∩ X'_1 ∩ ... ∩ X'_n`, a member of the ultrafilter inside the open set.
    pub core: Ideal,
    pub x: GroupElement,
    pub p: GroupElement,
    pub q: GroupElement,
    /// `Δ' = xP`.
    pub delta: Ideal,
    /// `g' = x p^-1 x^-1`.
    pub g_prime: GroupElement,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LocalBoundary {
    Witness(CompressionWitness),
    NotApplicableReversible,
}

/// Strict compression inside `u`: `g'` maps the cylinder of `xpP` onto that
/// of `xP`, and `xqP` is a disjoint piece left over.
pub fn local_boundary_witness(
    amb: &Ambient,
    fam: &IdealFamily,
    spec: &Spectrum,
    u: &BasicOpen,
    reversibility: &ConditionReport,
) -> Result<LocalBoundary> {
    let (p, q) = match &reversibility.status {
        Status::Fails { witness: Witness::Disjoint { p, q } } => (p.clone(), q.clone()),
        _ => return Ok(LocalBoundary::NotApplicableReversible),
    };
    let chi = spec
        .boundary
        .iter()
        .map(|&i| &spec.filters[i])
        .find(|f| u.contains(f))
        .ok_or_else(|| Error::Usage("basic open set misses the boundary".into()))?;
    let mut core = fam.ideals[u.required].clone();
    for &e in &u.excluded {
        let x = &fam.ideals[e];
        let away = chi
            .members
            .iter()
            .map(|&j| &fam.ideals[j])
            .find(|y| amb.intersect(x, y).is_empty())
            .ok_or_else(|| Error::Usage(format!("no member of the boundary filter avoids {x}")))?;
        core = amb.intersect(&core, away);
    }
    let x = amb.some_element(&core).ok_or_else(|| Error::Usage("empty core".into()))?;
    let delta = amb.left_multiply(&x, &amb.whole())?;
    let g_prime = amb.multiply(&amb.multiply(&x, &amb.invert(&p))?, &amb.invert(&x))?;
    Ok(LocalBoundary::Witness(CompressionWitness {
        ultrafilter: chi.clone(),
        core,
        x,
        p,
        q,
        delta,
        g_prime,
    }))
}

pub fn check_compression_witness(amb: &Ambient, w: &CompressionWitness) -> bool {
    let run = || -> Result<bool> {
        let xp = amb.multiply(&w.x, &w.p)?;
        let xq = amb.multiply(&w.x, &w.q)?;
        let xpp = amb.left_multiply(&xp, &amb.whole())?;
        let xqp = amb.left_multiply(&xq, &amb.whole())?;
        let expect_g = amb.multiply(&amb.multiply(&w.x, &amb.invert(&w.p))?, &amb.invert(&w.x))?;
        Ok(amb.is_in_p(&w.x)
            && w.ultrafilter.contains(amb, &w.core)
            && w.delta == amb.left_multiply(&w.x, &amb.whole())?
            && expect_g == w.g_prime
            && amb.p_cap_translate(&w.g_prime, &xpp) == w.delta
            && amb.is_subset(&w.delta, &w.core)
            && amb.intersect(&xpp, &xqp).is_empty())
    };
    run().unwrap_or(false)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Basis {
    Exact,
    Assumed,
    Evidence,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChecklistEntry {
    pub item: String,
    pub basis: Basis,
    pub holds: Option<bool>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct G0Sample {
    pub g: GroupElement,
    pub top_free: TopFree,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    ChecklistPasses,
    ChecklistFails { reason: String },
    Inconclusive { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checklist {
    pub entries: Vec<ChecklistEntry>,
    pub g0_samples: Vec<G0Sample>,
    pub verdict: Verdict,
}

pub struct ChecklistInput<'a> {
    pub fam: &'a IdealFamily,
    pub spectrum: &'a Spectrum,
    pub independence: &'a Independence,
    pub toeplitz: &'a ConditionReport,
    /// Candidates for `G_0`, in order; identity entries are skipped.
    pub candidates: &'a [GroupElement],
    pub max_samples: usize,
    pub shifts: &'a [GroupElement],
}

pub fn kirchberg_checklist(amb: &Ambient, input: &ChecklistInput) -> Result<Checklist> {
    let mut entries = Vec::new();
    let nontrivial = !amb.is_trivial();
    entries.push(ChecklistEntry {
        item: "P != {e}".into(),
        basis: Basis::Exact,
        holds: Some(nontrivial),
        detail: format!("{} generators", amb.generators.len()),
    });
    let amen = amb.meta.amenability.as_ref();
    entries.push(ChecklistEntry {
        item: "amenability".into(),
        basis: Basis::Assumed,
        holds: amen.map(|c| c.holds),
        detail: amen.map_or("no catalog entry".to_string(), |c| c.citation.clone()),
    });
    entries.push(ChecklistEntry {
        item: "independence".into(),
        basis: if matches!(input.independence, Independence::UnknownTruncated) { Basis::Evidence } else { Basis::Exact },
        holds: match input.independence {
            Independence::Independent => Some(true),
            Independence::Dependent { .. } => Some(false),
            Independence::UnknownTruncated => None,
        },
        detail: "depth-relative".into(),
    });
    entries.push(ChecklistEntry {
        item: "toeplitz".into(),
        basis: match input.toeplitz.status {
            Status::HoldsProven { .. } => Basis::Exact,
            _ => Basis::Evidence,
        },
        holds: match input.toeplitz.status {
            Status::HoldsProven { .. } | Status::HoldsToBudget => Some(true),
            Status::Fails { .. } => Some(false),
            _ => None,
        },
        detail: format!("bound {}", input.toeplitz.bound),
    });

    let boundary: Vec<Filter> = input.spectrum.boundary.iter().map(|&i| input.spectrum.filters[i].clone()).collect();
    let mut samples = Vec::new();
    for g in input.candidates {
        if samples.len() >= input.max_samples {
            break;
        }
        if g.is_identity() || !matches!(g0_probe(amb, input.fam, g), G0Verdict::InG0ToBudget { .. }) {
            continue;
        }
        let top_free = top_free_probe(amb, input.fam, &boundary, g, input.shifts)?;
        samples.push(G0Sample { g: g.clone(), top_free });
    }
    let fixed: Vec<&G0Sample> =
        samples.iter().filter(|s| matches!(s.top_free, TopFree::FixedEverywhereSampled { .. })).collect();
    let top_free_cited = amb.meta.g0_top_free.as_ref().filter(|c| c.holds);
    entries.push(ChecklistEntry {
        item: "G_0 acts topologically freely".into(),
        basis: if top_free_cited.is_some() && fixed.is_empty() { Basis::Assumed } else { Basis::Evidence },
        holds: if !fixed.is_empty() {
            Some(false)
        } else {
            top_free_cited.map(|_| true)
        },
        detail: match (samples.len(), top_free_cited) {
            (0, Some(c)) => format!("no nontrivial G_0 element sampled; {}", c.citation),
            (_, Some(c)) if fixed.is_empty() => format!("{} sampled elements move the boundary; {}", samples.len(), c.citation),
            _ => format!("{} of {} sampled elements fix every sampled boundary point", fixed.len(), samples.len()),
        },
    });

    let verdict = if !nontrivial {
        Verdict::ChecklistFails { reason: "P is trivial".into() }
    } else if amen.is_some_and(|c| !c.holds) {
        Verdict::ChecklistFails { reason: "not amenable".into() }
    } else if amen.is_none() {
        Verdict::Inconclusive { reason: "no amenability metadata".into() }
    } else if matches!(input.independence, Independence::Dependent { .. }) {
        Verdict::Inconclusive { reason: "constructible ideals are not independent".into() }
    } else if !fixed.is_empty() && boundary.len() == 1 {
        Verdict::ChecklistFails { reason: format!("G_0 element {} fixes the one-point boundary", fixed[0].g) }
    } else if let Some(s) = fixed.first() {
        Verdict::Inconclusive { reason: format!("no moved boundary point found for {}", s.g) }
    } else if top_free_cited.is_some() {
        Verdict::ChecklistPasses
    } else {
        Verdict::Inconclusive { reason: "topological freeness is only sampled".into() }
    };
    Ok(Checklist { entries, g0_samples: samples, verdict })
}
