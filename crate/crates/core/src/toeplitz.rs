//! Compressions `E_P λ_g E_P`, their decompositions into words in the
//! isometries, and bounded probes for the quasi-lattice, left Ore and left
//! reversibility conditions.

use serde::{Deserialize, Serialize};

use crate::ambient::{Ambient, GroupElement, Kind};
use crate::hull::{Letter, PartialIsometry};
use crate::ideal::Ideal;

/// The compression of `λ_g` to `P`: the map `x -> g x` on `P ∩ g^-1 P`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Compression {
    pub g: GroupElement,
    pub domain: Ideal,
}

impl Compression {
    pub fn is_zero(&self) -> bool {
        self.domain.is_empty()
    }

    pub fn contains(&self, amb: &Ambient, x: &GroupElement) -> bool {
        amb.is_in_p(x) && amb.is_in_p(&amb.multiply(&self.g, x).expect("same family"))
    }

    pub fn apply(&self, amb: &Ambient, x: &GroupElement) -> Option<GroupElement> {
        self.contains(amb, x).then(|| amb.multiply(&self.g, x).expect("same family"))
    }

    pub fn as_partial_isometry(&self) -> PartialIsometry {
        if self.is_zero() {
            PartialIsometry::Zero
        } else {
            PartialIsometry::Map { domain: self.domain.clone(), shift: self.g.clone() }
        }
    }
}

pub fn compression(amb: &Ambient, g: &GroupElement) -> Compression {
    let domain = amb.p_cap_translate(&amb.invert(g), &amb.whole());
    Compression { g: g.clone(), domain }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Decomposition {
    ZeroCase,
    Word(Vec<Letter>),
    UnknownToBudget,
}

/// At most one `v_p` followed by at most one `v_q*`.
pub fn is_lattice_shape(w: &[Letter]) -> bool {
    match w {
        [] | [_] => true,
        [a, b] => !a.is_star() && b.is_star(),
        _ => false,
    }
}

/// At most one `v_p*` followed by at most one `v_q`.
pub fn is_ore_shape(w: &[Letter]) -> bool {
    match w {
        [] | [_] => true,
        [a, b] => a.is_star() && !b.is_star(),
        _ => false,
    }
}

/// Checks that `w` multiplies to `g` in `G` and that its hull value is the compression.
pub fn check_decomposition(amb: &Ambient, g: &GroupElement, w: &[Letter]) -> bool {
    let elems: Vec<GroupElement> = w
        .iter()
        .map(|l| match l {
            Letter::V(p) => p.clone(),
            Letter::VStar(p) => amb.invert(p),
        })
        .collect();
    let Ok(prod) = amb.product(elems.iter()) else { return false };
    if prod != *g {
        return false;
    }
    match amb.from_word(w) {
        Ok(v) => v == compression(amb, g).as_partial_isometry(),
        Err(_) => false,
    }
}

/// Iterative deepening over alternating words, shortest first; within a length,
/// letters are ordered by position of their element in the positive ball and
/// `v` before `v*`.
pub fn toeplitz_decompose(amb: &Ambient, g: &GroupElement, budget: usize) -> Decomposition {
    let comp = compression(amb, g);
    if comp.is_zero() {
        return Decomposition::ZeroCase;
    }
    if g.is_identity() {
        return Decomposition::Word(vec![]);
    }
    let target = comp.as_partial_isometry();
    let pool: Vec<GroupElement> = amb.positive_ball(budget).into_iter().filter(|p| !p.is_identity()).collect();
    let max_letters = budget.clamp(1, 4);
    for n in 1..=max_letters {
        let mut prefix = Vec::new();
        if let Some(w) = search(amb, g, &target, &pool, &mut prefix, &amb.identity(), n) {
            return Decomposition::Word(w);
        }
    }
    Decomposition::UnknownToBudget
}

fn search(
    amb: &Ambient,
    g: &GroupElement,
    target: &PartialIsometry,
    pool: &[GroupElement],
    prefix: &mut Vec<Letter>,
    acc: &GroupElement,
    remaining: usize,
) -> Option<Vec<Letter>> {
    let last_star = prefix.last().map(Letter::is_star);
    let allowed = |star: bool| last_star != Some(star);
    if remaining == 1 {
        for star in [false, true] {
            if !allowed(star) {
                continue;
            }
            let rest = amb.multiply(&amb.invert(acc), g).expect("same family");
            let p = if star { amb.invert(&rest) } else { rest };
            if p.is_identity() || !amb.is_in_p(&p) {
                continue;
            }
            prefix.push(if star { Letter::VStar(p) } else { Letter::V(p) });
            if amb.from_word(prefix).ok().as_ref() == Some(target) {
                return Some(prefix.clone());
            }
            prefix.pop();
        }
        return None;
    }
    for p in pool {
        for star in [false, true] {
            if !allowed(star) {
                continue;
            }
            let step = if star { amb.invert(p) } else { p.clone() };
            let next = amb.multiply(acc, &step).expect("same family");
            prefix.push(if star { Letter::VStar(p.clone()) } else { Letter::V(p.clone()) });
            if let Some(w) = search(amb, g, target, pool, prefix, &next, remaining - 1) {
                return Some(w);
            }
            prefix.pop();
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    Toeplitz,
    QuasiLattice,
    LeftOre,
    LeftReversible,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    /// `g != e` with `g` and `g^-1` both in `P`.
    NotPointed { g: GroupElement },
    /// `P ∩ gP` is nonempty and not principal.
    TranslateNotPrincipal { g: GroupElement, intersection: Ideal },
    /// `pP ∩ qP` is nonempty and not principal.
    MeetNotPrincipal { p: GroupElement, q: GroupElement, intersection: Ideal },
    /// In a free group, a reduced word with a positive letter before a negative one is never `p^-1 q`.
    NotLeftQuotient { g: GroupElement },
    /// `pP ∩ qP = ∅`.
    Disjoint { p: GroupElement, q: GroupElement },
    /// The compression of `g` is nonzero but no word was found.
    NoDecomposition { g: GroupElement },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    HoldsProven { argument: String },
    HoldsToBudget,
    Fails { witness: Witness },
    ZeroCase,
    UnknownToBudget { witness: Witness },
}

impl Status {
    pub fn holds(&self) -> bool {
        matches!(self, Status::HoldsProven { .. } | Status::HoldsToBudget)
    }

    pub fn fails(&self) -> bool {
        matches!(self, Status::Fails { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub condition: Condition,
    pub status: Status,
    pub bound: usize,
    /// Number of elements or pairs examined.
    pub checked: usize,
}

/// Replays a failure witness.
pub fn check_witness(amb: &Ambient, w: &Witness) -> bool {
    let principal = |p: &GroupElement| amb.left_multiply(p, &amb.whole());
    match w {
        Witness::NotPointed { g } => !g.is_identity() && amb.is_in_p(g) && amb.is_in_p(&amb.invert(g)),
        Witness::TranslateNotPrincipal { g, intersection } => {
            amb.check(g).is_ok()
                && amb.p_cap_translate(g, &amb.whole()) == *intersection
                && !intersection.is_empty()
                && amb.principal_generator(intersection).is_none()
        }
        Witness::MeetNotPrincipal { p, q, intersection } => match (principal(p), principal(q)) {
            (Ok(a), Ok(b)) => {
                amb.intersect(&a, &b) == *intersection
                    && !intersection.is_empty()
                    && amb.principal_generator(intersection).is_none()
            }
            _ => false,
        },
        Witness::NotLeftQuotient { g } => {
            matches!(amb.kind, Kind::FreeProduct { .. }) && amb.check(g).is_ok() && amb.ore_split(g).is_none()
        }
        Witness::Disjoint { p, q } => match (principal(p), principal(q)) {
            (Ok(a), Ok(b)) => amb.intersect(&a, &b).is_empty(),
            _ => false,
        },
        Witness::NoDecomposition { g } => !compression(amb, g).is_zero(),
    }
}

/// Decomposes every `g` in the ball of radius `bound`.
pub fn toeplitz_probe(amb: &Ambient, bound: usize) -> (ConditionReport, Vec<(GroupElement, Decomposition)>) {
    let ball = amb.ball(bound);
    let mut out = Vec::with_capacity(ball.len());
    let mut unknown = None;
    for g in ball {
        let d = toeplitz_decompose(amb, &g, bound.max(1));
        if d == Decomposition::UnknownToBudget && unknown.is_none() {
            unknown = Some(g.clone());
        }
        out.push((g, d));
    }
    let status = match unknown {
        Some(g) => Status::UnknownToBudget { witness: Witness::NoDecomposition { g } },
        None if amb.meta.left_ore == Some(true) => {
            Status::HoldsProven { argument: "left Ore: g = p^-1 q compresses to v_p* v_q".into() }
        }
        None => Status::HoldsToBudget,
    };
    let report = ConditionReport { condition: Condition::Toeplitz, status, bound, checked: out.len() };
    (report, out)
}

/// Pointedness, then principal meets of principal ideals, then principal `P ∩ gP`.
pub fn quasi_lattice_probe(amb: &Ambient, bound: usize) -> ConditionReport {
    let pool = amb.positive_ball(bound);
    let mut checked = 0;
    let fail = |witness, checked| ConditionReport {
        condition: Condition::QuasiLattice,
        status: Status::Fails { witness },
        bound,
        checked,
    };
    for g in &pool {
        checked += 1;
        if !g.is_identity() && amb.is_in_p(&amb.invert(g)) {
            return fail(Witness::NotPointed { g: g.clone() }, checked);
        }
    }
    let principals: Vec<Ideal> = pool.iter().map(|p| amb.left_multiply(p, &amb.whole()).expect("in P")).collect();
    for i in 0..pool.len() {
        for j in i..pool.len() {
            checked += 1;
            let z = amb.intersect(&principals[i], &principals[j]);
            if !z.is_empty() && amb.principal_generator(&z).is_none() {
                let w = Witness::MeetNotPrincipal { p: pool[i].clone(), q: pool[j].clone(), intersection: z };
                return fail(w, checked);
            }
        }
    }
    for g in amb.ball(bound) {
        checked += 1;
        let z = amb.p_cap_translate(&g, &amb.whole());
        if !z.is_empty() && amb.principal_generator(&z).is_none() {
            return fail(Witness::TranslateNotPrincipal { g, intersection: z }, checked);
        }
    }
    let status = match &amb.meta.lattice_argument {
        Some(a) => Status::HoldsProven { argument: a.clone() },
        None => Status::HoldsToBudget,
    };
    ConditionReport { condition: Condition::QuasiLattice, status, bound, checked }
}

pub fn ore_probe(amb: &Ambient, bound: usize) -> ConditionReport {
    let mut checked = 0;
    for g in amb.ball(bound) {
        checked += 1;
        if amb.ore_split(&g).is_none() {
            let w = Witness::NotLeftQuotient { g: g.clone() };
            let status = if check_witness(amb, &w) {
                Status::Fails { witness: w }
            } else {
                Status::UnknownToBudget { witness: w }
            };
            return ConditionReport { condition: Condition::LeftOre, status, bound, checked };
        }
    }
    let status = if amb.meta.left_ore == Some(true) {
        Status::HoldsProven { argument: "G is the group of left quotients P^-1 P".into() }
    } else {
        Status::HoldsToBudget
    };
    ConditionReport { condition: Condition::LeftOre, status, bound, checked }
}

pub fn reversibility_probe(amb: &Ambient, bound: usize) -> ConditionReport {
    let pool = amb.positive_ball(bound);
    let principals: Vec<Ideal> = pool.iter().map(|p| amb.left_multiply(p, &amb.whole()).expect("in P")).collect();
    let mut checked = 0;
    for i in 0..pool.len() {
        for j in i + 1..pool.len() {
            checked += 1;
            if amb.intersect(&principals[i], &principals[j]).is_empty() {
                let witness = Witness::Disjoint { p: pool[i].clone(), q: pool[j].clone() };
                return ConditionReport {
                    condition: Condition::LeftReversible,
                    status: Status::Fails { witness },
                    bound,
                    checked,
                };
            }
        }
    }
    let status = if amb.meta.abelian {
        Status::HoldsProven { argument: "commutative: p q lies in pP ∩ qP".into() }
    } else {
        Status::HoldsToBudget
    };
    ConditionReport { condition: Condition::LeftReversible, status, bound, checked }
}
