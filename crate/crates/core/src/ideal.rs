//! Constructible right ideals: canonical forms, the generating operations,
//! depth-bounded closure, independence, and orthogonalization.

use std::collections::HashMap;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::ambient::{reduce_word, Ambient, GroupElement, Kind};
use crate::error::{Error, Result};

/// A constructible right ideal in canonical form; equal values denote equal sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Ideal {
    Empty,
    /// `wP` for a positive word `w`.
    Word(Vec<i32>),
    /// `v + N^k`.
    Vector(Vec<i64>),
    /// The listed elements together with every element of `P` that is at least `t`;
    /// `t` is the least value for which this description works.
    Tail { below: Vec<i64>, t: i64 },
    /// Pairs `(x, y)` of `P` with `x = r mod m` and `m | y`, i.e. `(r, m)P`.
    Congruence { r: i64, m: i64 },
}

impl Ideal {
    pub fn is_empty(&self) -> bool {
        matches!(self, Ideal::Empty)
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ideal::Empty => write!(f, "∅"),
            Ideal::Word(w) if w.is_empty() => write!(f, "P"),
            Ideal::Word(w) => write!(f, "{}*P", GroupElement::Word(w.clone())),
            Ideal::Vector(v) if v.iter().all(|&x| x == 0) => write!(f, "P"),
            Ideal::Vector(v) => write!(f, "{}+P", GroupElement::Vector(v.clone())),
            Ideal::Tail { below, t } if below.is_empty() && *t == 0 => write!(f, "P"),
            Ideal::Tail { below, t } => {
                if below.is_empty() {
                    write!(f, "P≥{t}")
                } else {
                    let b: Vec<String> = below.iter().map(|x| x.to_string()).collect();
                    write!(f, "{{{}}} ∪ P≥{t}", b.join(","))
                }
            }
            Ideal::Congruence { r: 0, m: 1 } => write!(f, "P"),
            Ideal::Congruence { r, m } => write!(f, "({r},{m})*P"),
        }
    }
}

fn is_prefix(p: &[i32], w: &[i32]) -> bool {
    p.len() <= w.len() && w[..p.len()] == *p
}

fn modinv(a: i64, m: i64) -> i64 {
    let g = a.rem_euclid(m).extended_gcd(&m);
    debug_assert_eq!(g.gcd, 1);
    g.x.rem_euclid(m)
}

fn affine_parts(g: &GroupElement) -> Option<(i64, i64)> {
    match g {
        GroupElement::Affine(b, a) if b.is_integer() && a.is_integer() => Some((*b.numer(), *a.numer())),
        _ => None,
    }
}

impl Ambient {
    /// The ideal `P` itself.
    pub fn whole(&self) -> Ideal {
        match &self.kind {
            Kind::FreeProduct { .. } => Ideal::Word(vec![]),
            Kind::Cone { k } => Ideal::Vector(vec![0; *k]),
            Kind::Numerical { .. } => Ideal::Tail { below: vec![], t: 0 },
            Kind::Affine { .. } => Ideal::Congruence { r: 0, m: 1 },
        }
    }

    fn tail_contains(&self, below: &[i64], t: i64, n: i64) -> bool {
        self.int_in_p(n) && (n >= t || below.binary_search(&n).is_ok())
    }

    /// `{n in P : n < limit, pred(n)}` together with `P ∩ [limit, ∞)`, canonicalized.
    fn tail_build(&self, limit: i64, pred: impl Fn(i64) -> bool) -> Ideal {
        let mut t = limit.max(0);
        while t > 0 && (!self.int_in_p(t - 1) || pred(t - 1)) {
            t -= 1;
        }
        let below: Vec<i64> = (0..t).filter(|&n| self.int_in_p(n) && pred(n)).collect();
        let finite_p = self.numerical_gcd() == 0;
        if below.is_empty() && finite_p && t > 0 {
            return Ideal::Empty;
        }
        Ideal::Tail { below, t }
    }

    pub fn contains(&self, x: &Ideal, g: &GroupElement) -> bool {
        if !self.is_in_p(g) {
            return false;
        }
        match (x, g) {
            (Ideal::Empty, _) => false,
            (Ideal::Word(w), GroupElement::Word(v)) => is_prefix(w, v),
            (Ideal::Vector(w), GroupElement::Vector(v)) => v.iter().zip(w).all(|(a, b)| a >= b),
            (Ideal::Tail { below, t }, GroupElement::Int(n)) => self.tail_contains(below, *t, *n),
            (Ideal::Congruence { r, m }, g) => match affine_parts(g) {
                Some((b, a)) => (b - r).rem_euclid(*m) == 0 && a % m == 0,
                None => false,
            },
            _ => false,
        }
    }

    /// `pX = {px : x in X}`.
    pub fn left_multiply(&self, p: &GroupElement, x: &Ideal) -> Result<Ideal> {
        self.require_p(p)?;
        Ok(match (p, x) {
            (_, Ideal::Empty) => Ideal::Empty,
            (GroupElement::Word(p), Ideal::Word(w)) => Ideal::Word(p.iter().chain(w).copied().collect()),
            (GroupElement::Vector(p), Ideal::Vector(v)) => Ideal::Vector(p.iter().zip(v).map(|(a, b)| a + b).collect()),
            (GroupElement::Int(p), Ideal::Tail { below, t }) => {
                let limit = p + (*t).max(self.numerical_conductor());
                self.tail_build(limit, |n| self.tail_contains(below, *t, n - p))
            }
            (g @ GroupElement::Affine(..), Ideal::Congruence { r, m }) => {
                let (b, a) = affine_parts(g).unwrap();
                let m2 = (a * m).abs();
                Ideal::Congruence { r: (b + a * r).rem_euclid(m2), m: m2 }
            }
            _ => return Err(Error::FamilyMismatch(format!("{p} acting on {x}"))),
        })
    }

    /// `p^-1 X = {y in P : py in X}`.
    pub fn left_preimage(&self, p: &GroupElement, x: &Ideal) -> Result<Ideal> {
        self.require_p(p)?;
        Ok(match (p, x) {
            (_, Ideal::Empty) => Ideal::Empty,
            (GroupElement::Word(p), Ideal::Word(w)) => {
                if is_prefix(w, p) {
                    Ideal::Word(vec![])
                } else if is_prefix(p, w) {
                    Ideal::Word(w[p.len()..].to_vec())
                } else {
                    Ideal::Empty
                }
            }
            (GroupElement::Vector(p), Ideal::Vector(v)) => {
                Ideal::Vector(v.iter().zip(p).map(|(a, b)| (a - b).max(0)).collect())
            }
            (GroupElement::Int(p), Ideal::Tail { below, t }) => {
                self.tail_build(*t, |y| self.tail_contains(below, *t, y + p))
            }
            (g @ GroupElement::Affine(..), Ideal::Congruence { r, m }) => {
                let (c, d) = affine_parts(g).unwrap();
                let g = d.abs().gcd(m);
                let rhs = r - c;
                if rhs.rem_euclid(g) != 0 {
                    Ideal::Empty
                } else {
                    let m2 = m / g;
                    let x0 = if m2 == 1 {
                        0
                    } else {
                        let inv = modinv((d / g).rem_euclid(m2), m2);
                        (((rhs / g).rem_euclid(m2) as i128 * inv as i128) % m2 as i128) as i64
                    };
                    Ideal::Congruence { r: x0, m: m2 }
                }
            }
            _ => return Err(Error::FamilyMismatch(format!("{p} acting on {x}"))),
        })
    }

    pub fn intersect(&self, x: &Ideal, y: &Ideal) -> Ideal {
        match (x, y) {
            (Ideal::Empty, _) | (_, Ideal::Empty) => Ideal::Empty,
            (Ideal::Word(a), Ideal::Word(b)) => {
                if is_prefix(a, b) {
                    y.clone()
                } else if is_prefix(b, a) {
                    x.clone()
                } else {
                    Ideal::Empty
                }
            }
            (Ideal::Vector(a), Ideal::Vector(b)) => Ideal::Vector(a.iter().zip(b).map(|(p, q)| *p.max(q)).collect()),
            (Ideal::Tail { below: b1, t: t1 }, Ideal::Tail { below: b2, t: t2 }) => self.tail_build((*t1).max(*t2), |n| {
                self.tail_contains(b1, *t1, n) && self.tail_contains(b2, *t2, n)
            }),
            (Ideal::Congruence { r: r1, m: m1 }, Ideal::Congruence { r: r2, m: m2 }) => {
                let g = m1.gcd(m2);
                let diff = r2 - r1;
                if diff.rem_euclid(g) != 0 {
                    return Ideal::Empty;
                }
                let l = m1.lcm(m2);
                let n2 = m2 / g;
                let k = if n2 == 1 {
                    0
                } else {
                    ((diff / g).rem_euclid(n2) as i128 * modinv((m1 / g).rem_euclid(n2), n2) as i128 % n2 as i128) as i64
                };
                Ideal::Congruence { r: (*r1 as i128 + *m1 as i128 * k as i128).rem_euclid(l as i128) as i64, m: l }
            }
            _ => panic!("intersect on mixed families"),
        }
    }

    pub fn is_subset(&self, x: &Ideal, y: &Ideal) -> bool {
        match (x, y) {
            (Ideal::Empty, _) => true,
            (_, Ideal::Empty) => false,
            (Ideal::Word(a), Ideal::Word(b)) => is_prefix(b, a),
            (Ideal::Vector(a), Ideal::Vector(b)) => a.iter().zip(b).all(|(p, q)| p >= q),
            (Ideal::Tail { below: b1, t: t1 }, Ideal::Tail { below: b2, t: t2 }) => (0..(*t1).max(*t2))
                .all(|n| !self.tail_contains(b1, *t1, n) || self.tail_contains(b2, *t2, n)),
            (Ideal::Congruence { r: r1, m: m1 }, Ideal::Congruence { r: r2, m: m2 }) => {
                m1 % m2 == 0 && (r1 - r2).rem_euclid(*m2) == 0
            }
            _ => false,
        }
    }

    /// `P ∩ (g·X)` for an arbitrary group element `g`.
    pub fn p_cap_translate(&self, g: &GroupElement, x: &Ideal) -> Ideal {
        if x.is_empty() {
            return Ideal::Empty;
        }
        match (g, x) {
            (GroupElement::Word(g), Ideal::Word(w)) => {
                let v = reduce_word(&[g.as_slice(), w.as_slice()].concat());
                let k = v.iter().take_while(|&&l| l > 0).count();
                if v[k..].iter().all(|&l| l < 0) {
                    Ideal::Word(v[..k].to_vec())
                } else {
                    Ideal::Empty
                }
            }
            (GroupElement::Vector(g), Ideal::Vector(v)) => {
                Ideal::Vector(g.iter().zip(v).map(|(a, b)| (a + b).max(0)).collect())
            }
            (GroupElement::Int(g), Ideal::Tail { below, t }) => {
                let d = self.numerical_gcd();
                if (d == 0 && *g != 0) || (d != 0 && g % d != 0) {
                    return Ideal::Empty;
                }
                let limit = (g + (*t).max(self.numerical_conductor())).max(0);
                self.tail_build(limit, |n| self.tail_contains(below, *t, n - g))
            }
            (GroupElement::Affine(..), Ideal::Congruence { .. }) => {
                let (p, q) = self.ore_split(g).expect("affine elements always split");
                let y = self.left_multiply(&q, x).expect("split yields elements of P");
                self.left_preimage(&p, &y).expect("split yields elements of P")
            }
            _ => panic!("p_cap_translate on mixed families"),
        }
    }

    /// The element `x` with `X = xP`, if `X` is principal.
    pub fn principal_generator(&self, x: &Ideal) -> Option<GroupElement> {
        match x {
            Ideal::Empty => None,
            Ideal::Word(w) => Some(GroupElement::Word(w.clone())),
            Ideal::Vector(v) => Some(GroupElement::Vector(v.clone())),
            Ideal::Congruence { r, m } => Some(GroupElement::Affine((*r).into(), (*m).into())),
            Ideal::Tail { .. } => {
                let g = self.some_element(x)?;
                let px = self.left_multiply(&g, &self.whole()).ok()?;
                (px == *x).then_some(g)
            }
        }
    }

    /// A distinguished element of a nonempty ideal: the generator when principal,
    /// the least element for numerical ideals.
    pub fn some_element(&self, x: &Ideal) -> Option<GroupElement> {
        match x {
            Ideal::Tail { below, t } => {
                if let Some(&b) = below.first() {
                    return Some(GroupElement::Int(b));
                }
                (*t..=*t + self.numerical_conductor().max(1) + 1)
                    .find(|&n| self.int_in_p(n))
                    .map(GroupElement::Int)
            }
            _ => self.principal_generator(x),
        }
    }

    /// Finitely many points of `x` such that `x ⊆ ∪ ys` iff each point lies in some `y`.
    fn coverage_points(&self, x: &Ideal, ys: &[&Ideal]) -> Vec<GroupElement> {
        match x {
            Ideal::Empty => vec![],
            Ideal::Tail { t, .. } => {
                let top = ys
                    .iter()
                    .filter_map(|y| match y {
                        Ideal::Tail { t, .. } => Some(*t),
                        _ => None,
                    })
                    .fold(*t, i64::max);
                let mut pts: Vec<GroupElement> =
                    (0..top).filter(|&n| self.contains(x, &GroupElement::Int(n))).map(GroupElement::Int).collect();
                if let Some(n) = (top..=top + self.numerical_conductor().max(1) + 1).find(|&n| self.int_in_p(n)) {
                    pts.push(GroupElement::Int(n));
                }
                pts
            }
            _ => self.principal_generator(x).into_iter().collect(),
        }
    }

    /// Decides `x ⊆ ys[0] ∪ ... ∪ ys[n-1]` exactly.
    pub fn covered(&self, x: &Ideal, ys: &[&Ideal]) -> bool {
        self.coverage_points(x, ys).iter().all(|pt| ys.iter().any(|y| self.contains(y, pt)))
    }

    pub fn apply_op(&self, op: Op, x: &Ideal) -> Ideal {
        match op {
            Op::Mul(i) => self.left_multiply(&self.generators[i], x).expect("generators lie in P"),
            Op::Pre(i) => self.left_preimage(&self.generators[i], x).expect("generators lie in P"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Op {
    /// Left multiplication by generator `i`.
    Mul(usize),
    /// Left preimage under generator `i`.
    Pre(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Whole,
    Empty,
    Step { from: usize, op: Op },
    /// Found only by intersecting two earlier members.
    Meet(usize, usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    pub max_ideals: usize,
    pub max_filter_candidates: usize,
    pub max_hull_depth: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { max_ideals: 10_000, max_filter_candidates: 100_000, max_hull_depth: 6 }
    }
}

/// A finite, depth-bounded piece of the family of constructible right ideals.
#[derive(Clone, Debug)]
pub struct IdealFamily {
    pub ideals: Vec<Ideal>,
    pub provenance: Vec<Provenance>,
    /// Breadth-first level at which each member was found.
    pub level: Vec<usize>,
    pub depth: usize,
    /// Set when the next level would add new members or a cap was hit.
    pub truncated: bool,
    pub budget_hit: bool,
    /// Level after which breadth-first search produced nothing new.
    pub stabilized_at: Option<usize>,
    index: HashMap<Ideal, usize>,
}

impl IdealFamily {
    fn push(&mut self, x: Ideal, prov: Provenance, level: usize) -> usize {
        let i = self.ideals.len();
        self.index.insert(x.clone(), i);
        self.ideals.push(x);
        self.provenance.push(prov);
        self.level.push(level);
        i
    }

    pub fn len(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ideals.is_empty()
    }

    pub fn index_of(&self, x: &Ideal) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn nonempty(&self) -> impl Iterator<Item = (usize, &Ideal)> {
        self.ideals.iter().enumerate().filter(|(_, x)| !x.is_empty())
    }

    pub fn nonempty_count(&self) -> usize {
        self.nonempty().count()
    }

    /// Recomputes member `i` from its provenance.
    pub fn replay(&self, amb: &Ambient, i: usize) -> Ideal {
        match &self.provenance[i] {
            Provenance::Whole => amb.whole(),
            Provenance::Empty => Ideal::Empty,
            Provenance::Step { from, op } => amb.apply_op(*op, &self.replay(amb, *from)),
            Provenance::Meet(a, b) => amb.intersect(&self.replay(amb, *a), &self.replay(amb, *b)),
        }
    }

    /// Generator-operation word (applied left to right to `P`) for member `i`, when it has one.
    pub fn op_word(&self, i: usize) -> Option<Vec<Op>> {
        match &self.provenance[i] {
            Provenance::Whole => Some(vec![]),
            Provenance::Step { from, op } => {
                let mut w = self.op_word(*from)?;
                w.push(*op);
                Some(w)
            }
            _ => None,
        }
    }
}

/// Breadth-first closure of `{P, ∅}` under generator multiplications and
/// preimages, `depth` levels deep, followed by intersection saturation.
pub fn closure_to_depth(amb: &Ambient, depth: usize, caps: &Caps) -> IdealFamily {
    let mut fam = IdealFamily {
        ideals: vec![],
        provenance: vec![],
        level: vec![],
        depth,
        truncated: false,
        budget_hit: false,
        stabilized_at: None,
        index: HashMap::new(),
    };
    fam.push(amb.whole(), Provenance::Whole, 0);
    fam.push(Ideal::Empty, Provenance::Empty, 0);
    let ops: Vec<Op> = (0..amb.generators.len()).flat_map(|i| [Op::Mul(i), Op::Pre(i)]).collect();
    let mut frontier = vec![0usize];
    'levels: for level in 1..=depth {
        let mut next = Vec::new();
        for &i in &frontier {
            for &op in &ops {
                let y = amb.apply_op(op, &fam.ideals[i]);
                if fam.index_of(&y).is_none() {
                    if fam.len() >= caps.max_ideals {
                        fam.budget_hit = true;
                        break 'levels;
                    }
                    next.push(fam.push(y, Provenance::Step { from: i, op }, level));
                }
            }
        }
        if next.is_empty() {
            fam.stabilized_at = Some(level - 1);
            frontier.clear();
            break;
        }
        frontier = next;
    }
    saturate(amb, &mut fam, caps);
    let grows = frontier
        .iter()
        .any(|&i| ops.iter().any(|&op| fam.index_of(&amb.apply_op(op, &fam.ideals[i])).is_none()));
    fam.truncated = fam.budget_hit || (fam.stabilized_at.is_none() && grows);
    if fam.stabilized_at.is_none() && !grows && !fam.budget_hit {
        fam.stabilized_at = Some(depth);
    }
    fam
}

fn saturate(amb: &Ambient, fam: &mut IdealFamily, caps: &Caps) {
    let mut start = 0;
    loop {
        let n = fam.len();
        for j in start.max(1)..n {
            for i in 0..j {
                let z = amb.intersect(&fam.ideals[i], &fam.ideals[j]);
                if fam.index_of(&z).is_none() {
                    if fam.len() >= caps.max_ideals {
                        fam.budget_hit = true;
                        return;
                    }
                    let lvl = fam.level[i].max(fam.level[j]);
                    fam.push(z, Provenance::Meet(i, j), lvl);
                }
            }
        }
        if fam.len() == n {
            return;
        }
        start = n;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Independence {
    Independent,
    /// `ideal` equals the union of `cover`, each a proper subset of it.
    Dependent { ideal: Ideal, cover: Vec<Ideal> },
    UnknownTruncated,
}

/// Looks for a member equal to a union of members properly contained in it.
pub fn independence_check(amb: &Ambient, fam: &IdealFamily) -> Independence {
    for (_, x) in fam.nonempty() {
        let proper: Vec<&Ideal> =
            fam.nonempty().map(|(_, y)| y).filter(|y| *y != x && amb.is_subset(y, x)).collect();
        if proper.is_empty() || !amb.covered(x, &proper) {
            continue;
        }
        let cover = minimal_cover(amb, x, &proper);
        return Independence::Dependent { ideal: x.clone(), cover: cover.into_iter().cloned().collect() };
    }
    if fam.truncated && !amb.meta.all_principal {
        Independence::UnknownTruncated
    } else {
        Independence::Independent
    }
}

/// Smallest covering subfamily up to three members (lexicographic by family order), else greedy.
fn minimal_cover<'a>(amb: &Ambient, x: &Ideal, proper: &[&'a Ideal]) -> Vec<&'a Ideal> {
    let n = proper.len();
    for i in 0..n {
        if amb.covered(x, &[proper[i]]) {
            return vec![proper[i]];
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if amb.covered(x, &[proper[i], proper[j]]) {
                return vec![proper[i], proper[j]];
            }
        }
    }
    if n <= 60 {
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    if amb.covered(x, &[proper[i], proper[j], proper[k]]) {
                        return vec![proper[i], proper[j], proper[k]];
                    }
                }
            }
        }
    }
    let pts = amb.coverage_points(x, proper);
    let mut chosen: Vec<&Ideal> = Vec::new();
    for pt in &pts {
        if chosen.iter().any(|y| amb.contains(y, pt)) {
            continue;
        }
        if let Some(y) = proper.iter().find(|y| amb.contains(y, pt)) {
            chosen.push(y);
        }
    }
    chosen
}

/// Checks a dependence witness: every cover member is a proper subset and the union is `ideal`.
pub fn check_dependence(amb: &Ambient, ideal: &Ideal, cover: &[Ideal]) -> bool {
    !cover.is_empty()
        && cover.iter().all(|y| y != ideal && !y.is_empty() && amb.is_subset(y, ideal))
        && amb.covered(ideal, &cover.iter().collect::<Vec<_>>())
}

/// `ideal` minus the union of the members of the subfamily strictly below it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Atom {
    pub ideal: Ideal,
    pub minus: Vec<Ideal>,
    pub nonempty: bool,
}

impl Atom {
    pub fn contains(&self, amb: &Ambient, g: &GroupElement) -> bool {
        amb.contains(&self.ideal, g) && !self.minus.iter().any(|y| amb.contains(y, g))
    }
}

/// Orthogonalizes an intersection-closed subfamily (empty intersections allowed).
pub fn orthogonal_atoms(amb: &Ambient, members: &[Ideal]) -> Result<Vec<Atom>> {
    for (i, a) in members.iter().enumerate() {
        if members[..i].contains(a) {
            return Err(Error::Usage(format!("duplicate member {a}")));
        }
        for b in members {
            let z = amb.intersect(a, b);
            if !z.is_empty() && !members.contains(&z) {
                return Err(Error::Usage(format!("not intersection-closed: {a} ∩ {b} = {z}")));
            }
        }
    }
    Ok(members
        .iter()
        .filter(|x| !x.is_empty())
        .map(|x| {
            let minus: Vec<Ideal> =
                members.iter().filter(|y| *y != x && !y.is_empty() && amb.is_subset(y, x)).cloned().collect();
            let nonempty = !amb.covered(x, &minus.iter().collect::<Vec<_>>());
            Atom { ideal: x.clone(), minus, nonempty }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ambient::Metadata;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn amb(kind: Kind) -> Ambient {
        Ambient::new("t", kind, Metadata::default()).unwrap()
    }

    fn int_set(a: &Ambient, x: &Ideal, upto: i64) -> Vec<i64> {
        (0..=upto).filter(|&n| a.contains(x, &GroupElement::Int(n))).collect()
    }

    #[test]
    fn naturals_examples() {
        let a = amb(Kind::Numerical { gens: vec![1] });
        let i = GroupElement::Int;
        let three = a.left_multiply(&i(3), &a.whole()).unwrap();
        assert_eq!(a.left_multiply(&i(2), &three).unwrap(), a.left_multiply(&i(5), &a.whole()).unwrap());
        let five = a.left_multiply(&i(5), &a.whole()).unwrap();
        assert_eq!(a.left_preimage(&i(3), &five).unwrap(), a.left_multiply(&i(2), &a.whole()).unwrap());
        assert_eq!(five, Ideal::Tail { below: vec![], t: 5 });
        assert_eq!(a.left_multiply(&i(0), &five).unwrap(), five);
        assert!(a.left_multiply(&i(-1), &five).is_err());
    }

    #[test]
    fn numerical_23_preimage_matches_brute_force() {
        let a = amb(Kind::Numerical { gens: vec![2, 3] });
        let i = GroupElement::Int;
        let two_p = a.left_multiply(&i(2), &a.whole()).unwrap();
        let z = a.left_preimage(&i(3), &two_p).unwrap();
        let p: Vec<i64> = (0..=40).filter(|&n| a.int_in_p(n)).collect();
        let expect: Vec<i64> = p.iter().copied().filter(|&y| int_set(&a, &two_p, 80).contains(&(3 + y))).collect();
        assert_eq!(int_set(&a, &z, 40), expect);
        assert_eq!(int_set(&a, &z, 40), p.iter().copied().filter(|&n| n != 0).collect::<Vec<_>>());
    }

    #[test]
    fn free_examples() {
        let a = amb(Kind::FreeProduct { n: 2 });
        let w = |s: &str| a.parse_element(s).unwrap();
        let p1p2 = a.left_multiply(&w("p1*p2"), &a.whole()).unwrap();
        assert_eq!(a.left_preimage(&w("p1"), &p1p2).unwrap(), Ideal::Word(vec![2]));
        assert_eq!(a.left_preimage(&w("p1"), &Ideal::Word(vec![2])).unwrap(), Ideal::Empty);
        assert_eq!(a.left_multiply(&w("p1"), &Ideal::Word(vec![2])).unwrap(), p1p2);
        assert_eq!(a.intersect(&Ideal::Word(vec![1]), &Ideal::Word(vec![2])), Ideal::Empty);
        assert_eq!(a.intersect(&p1p2, &p1p2), p1p2);
    }

    #[test]
    fn cone_intersection_is_pointwise_max() {
        let a = amb(Kind::Cone { k: 2 });
        let x = Ideal::Vector(vec![1, 0]);
        let y = Ideal::Vector(vec![0, 1]);
        assert_eq!(a.intersect(&x, &y), Ideal::Vector(vec![1, 1]));
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let u: Vec<i64> = (0..2).map(|_| rng.gen_range(0..4)).collect();
            let v: Vec<i64> = (0..2).map(|_| rng.gen_range(0..4)).collect();
            let z = a.intersect(&Ideal::Vector(u.clone()), &Ideal::Vector(v.clone()));
            for p in 0..6 {
                for q in 0..6 {
                    let g = GroupElement::Vector(vec![p, q]);
                    let both = a.contains(&Ideal::Vector(u.clone()), &g) && a.contains(&Ideal::Vector(v.clone()), &g);
                    assert_eq!(a.contains(&z, &g), both);
                }
            }
        }
    }

    /// Points of `Z ⋊ Z^x` in a window, for brute-force comparisons.
    fn affine_window() -> Vec<GroupElement> {
        let mut pts = Vec::new();
        for b in -20..=20i64 {
            for a in -12..=12i64 {
                if a != 0 {
                    pts.push(GroupElement::Affine(b.into(), a.into()));
                }
            }
        }
        pts
    }

    #[test]
    fn affine_operations_match_pointwise() {
        let a = amb(Kind::Affine { primes: vec![2, 3] });
        let pts = affine_window();
        let ideals = [
            Ideal::Congruence { r: 0, m: 1 },
            Ideal::Congruence { r: 1, m: 2 },
            Ideal::Congruence { r: 2, m: 3 },
            Ideal::Congruence { r: 5, m: 6 },
            Ideal::Congruence { r: 1, m: 4 },
        ];
        let elems: Vec<GroupElement> =
            [(1, 1), (-1, 1), (0, -1), (0, 2), (1, 3), (-2, 2), (3, -2)].iter().map(|&(b, c): &(i64, i64)| GroupElement::Affine(b.into(), c.into())).collect();
        for x in &ideals {
            for y in &ideals {
                let z = a.intersect(x, y);
                for g in &pts {
                    assert_eq!(a.contains(&z, g), a.contains(x, g) && a.contains(y, g), "{x} ∩ {y} at {g}");
                }
            }
            for p in &elems {
                let pre = a.left_preimage(p, x).unwrap();
                let img = a.left_multiply(p, x).unwrap();
                for g in &pts {
                    let pg = a.multiply(p, g).unwrap();
                    assert_eq!(a.contains(&pre, g), a.contains(x, &pg), "{p}^-1 {x} at {g}");
                }
                // image: membership of p*g for g in x, and nothing else in a smaller window
                for g in &pts {
                    if a.contains(x, g) {
                        assert!(a.contains(&img, &a.multiply(p, g).unwrap()));
                    }
                }
                for h in &pts {
                    if a.contains(&img, h) {
                        let back = a.multiply(&a.invert(p), h).unwrap();
                        assert!(a.contains(x, &back), "{h} in {p}{x}");
                    }
                }
            }
        }
    }

    #[test]
    fn p_cap_translate_matches_pointwise() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let a = amb(Kind::Numerical { gens: vec![3, 5] });
        let fam = closure_to_depth(&a, 2, &Caps::default());
        for _ in 0..100 {
            let g = rng.gen_range(-12..12);
            let x = &fam.ideals[rng.gen_range(0..fam.len())];
            let y = a.p_cap_translate(&GroupElement::Int(g), x);
            for n in -5..60 {
                let direct = a.int_in_p(n) && a.contains(x, &GroupElement::Int(n - g));
                assert_eq!(a.contains(&y, &GroupElement::Int(n)), direct);
            }
        }
        let f = amb(Kind::FreeProduct { n: 2 });
        let words = f.positive_ball(6);
        for g in f.ball(3) {
            for x in [Ideal::Word(vec![]), Ideal::Word(vec![1]), Ideal::Word(vec![2, 1])] {
                let y = f.p_cap_translate(&g, &x);
                for w in &words {
                    let back = f.multiply(&f.invert(&g), w).unwrap();
                    assert_eq!(f.contains(&y, w), f.contains(&x, &back), "{g} {x} {w}");
                }
            }
        }
        let af = amb(Kind::Affine { primes: vec![2, 3] });
        let pts = affine_window();
        let r = |b: i64, d: i64, c: i64, e: i64| GroupElement::Affine(num_rational::Rational64::new(b, d), num_rational::Rational64::new(c, e));
        for g in [r(1, 2, 1, 3), r(-1, 1, 2, 3), r(0, 1, 1, 2), r(5, 3, -3, 2)] {
            for x in [Ideal::Congruence { r: 0, m: 1 }, Ideal::Congruence { r: 1, m: 2 }, Ideal::Congruence { r: 4, m: 6 }] {
                let y = af.p_cap_translate(&g, &x);
                for h in &pts {
                    let back = af.multiply(&af.invert(&g), h).unwrap();
                    assert_eq!(af.contains(&y, h), af.contains(&x, &back), "{g} {x} {h}");
                }
            }
        }
    }

    #[test]
    fn free_closure_counts_match_word_oracle() {
        let a = amb(Kind::FreeProduct { n: 2 });
        for d in 0..=4 {
            let fam = closure_to_depth(&a, d, &Caps::default());
            // oracle: all positive words up to length d
            let mut words: Vec<Vec<i32>> = vec![vec![]];
            let mut level = vec![vec![]];
            for _ in 0..d {
                level = level.iter().flat_map(|w: &Vec<i32>| [1, 2].map(|l| [w.clone(), vec![l]].concat())).collect();
                words.extend(level.iter().cloned());
            }
            assert_eq!(fam.nonempty_count(), words.len());
            for w in words {
                assert!(fam.index_of(&Ideal::Word(w)).is_some());
            }
            assert!(fam.truncated);
        }
    }

    #[test]
    fn trivial_closure() {
        let a = amb(Kind::Numerical { gens: vec![] });
        let fam = closure_to_depth(&a, 4, &Caps::default());
        assert_eq!(fam.ideals, vec![a.whole(), Ideal::Empty]);
        assert!(!fam.truncated);
        assert_eq!(independence_check(&a, &fam), Independence::Independent);
    }

    #[test]
    fn numerical_23_dependence() {
        let mut a = amb(Kind::Numerical { gens: vec![2, 3] });
        a.meta.all_principal = false;
        let fam = closure_to_depth(&a, 3, &Caps::default());
        let p_minus_0 = Ideal::Tail { below: vec![], t: 1 };
        assert!(fam.index_of(&p_minus_0).is_some());
        let two = a.left_multiply(&GroupElement::Int(2), &a.whole()).unwrap();
        let three = a.left_multiply(&GroupElement::Int(3), &a.whole()).unwrap();
        match independence_check(&a, &fam) {
            Independence::Dependent { ideal, cover } => {
                assert_eq!(ideal, p_minus_0);
                assert_eq!(cover, vec![two.clone(), three.clone()]);
                // brute force the union on integers up to 40
                let u: Vec<i64> = (0..=40).filter(|&n| int_set(&a, &two, 40).contains(&n) || int_set(&a, &three, 40).contains(&n)).collect();
                assert_eq!(u, int_set(&a, &ideal, 40));
                assert!(check_dependence(&a, &ideal, &cover));
            }
            v => panic!("expected dependence, got {v:?}"),
        }
    }

    #[test]
    fn free_family_is_independent() {
        let mut a = amb(Kind::FreeProduct { n: 2 });
        a.meta.all_principal = true;
        for d in 1..=3 {
            let fam = closure_to_depth(&a, d, &Caps::default());
            assert_eq!(independence_check(&a, &fam), Independence::Independent);
        }
    }

    #[test]
    fn atoms_examples() {
        let a = amb(Kind::FreeProduct { n: 2 });
        let f = vec![a.whole(), Ideal::Word(vec![1]), Ideal::Word(vec![2])];
        let atoms = orthogonal_atoms(&a, &f).unwrap();
        assert_eq!(atoms.len(), 3);
        assert_eq!(atoms[0].minus, vec![Ideal::Word(vec![1]), Ideal::Word(vec![2])]);
        assert!(atoms.iter().all(|t| t.nonempty));
        // prefix oracle: a word lies in the top atom iff it is empty
        for w in a.positive_ball(4) {
            let in_top = atoms[0].contains(&a, &w);
            assert_eq!(in_top, w.is_identity());
            let hits = atoms.iter().filter(|t| t.contains(&a, &w)).count();
            assert_eq!(hits, 1);
        }
        let n = amb(Kind::Numerical { gens: vec![1] });
        let f = vec![n.whole(), Ideal::Tail { below: vec![], t: 1 }, Ideal::Tail { below: vec![], t: 2 }];
        let atoms = orthogonal_atoms(&n, &f).unwrap();
        let pts = |t: &Atom| (0..=10).filter(|&k| t.contains(&n, &GroupElement::Int(k))).collect::<Vec<_>>();
        assert_eq!(pts(&atoms[0]), vec![0]);
        assert_eq!(pts(&atoms[1]), vec![1]);
        assert_eq!(pts(&atoms[2]), (2..=10).collect::<Vec<_>>());
        assert_eq!(orthogonal_atoms(&n, &[n.whole()]).unwrap().len(), 1);
        assert!(orthogonal_atoms(&a, &[Ideal::Word(vec![1]), Ideal::Word(vec![1])]).is_err());
    }

    #[test]
    fn provenance_replays() {
        for kind in [Kind::FreeProduct { n: 2 }, Kind::Numerical { gens: vec![2, 3] }, Kind::Affine { primes: vec![2] }] {
            let a = amb(kind);
            let fam = closure_to_depth(&a, 3, &Caps::default());
            for i in 0..fam.len() {
                assert_eq!(fam.replay(&a, i), fam.ideals[i]);
            }
        }
    }
}
