//! Ambient groups `G`, normal forms of their elements, and membership in `P`.
//!
//! Four families are built in: free groups with the positive words as `P`,
//! `Z^k` with the nonnegative cone, `Z` with a numerical semigroup, and the
//! affine group `Q ⋊ Q^x` with `P = Z ⋊ Z^x`.

use std::collections::HashSet;
use std::fmt;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupElement {
    /// Freely reduced word. Letter `i > 0` stands for `p_i`, `-i` for its inverse.
    Word(Vec<i32>),
    Vector(Vec<i64>),
    Int(i64),
    /// The affine map `x -> a*x + b`, stored as `(b, a)`.
    Affine(Rational64, Rational64),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Kind {
    FreeProduct { n: usize },
    Cone { k: usize },
    Numerical { gens: Vec<i64> },
    Affine { primes: Vec<i64> },
}

/// A fact that is not computed but recorded with a literature pointer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cited {
    pub holds: bool,
    pub citation: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    pub description: String,
    /// Amenability of the `G`-action on the boundary. Never computed.
    pub amenability: Option<Cited>,
    pub left_ore: Option<bool>,
    pub abelian: bool,
    /// Every constructible right ideal is principal, by a family-level argument.
    pub all_principal: bool,
    /// Argument id when the intersection conditions are known for the whole family.
    pub lattice_argument: Option<String>,
    /// Known answer to whether `G_0` acts topologically freely on the boundary.
    pub g0_top_free: Option<Cited>,
}

#[derive(Clone, Debug)]
struct NumericalTable {
    d: i64,
    conductor: i64,
    member: Vec<bool>,
}

/// A group `G` together with the subsemigroup `P`.
#[derive(Clone, Debug)]
pub struct Ambient {
    pub id: String,
    pub kind: Kind,
    pub generators: Vec<GroupElement>,
    pub meta: Metadata,
    numerical: Option<NumericalTable>,
}

impl Ambient {
    pub fn new(id: impl Into<String>, kind: Kind, meta: Metadata) -> Result<Self> {
        let mut kind = kind;
        let mut numerical = None;
        let generators = match &mut kind {
            Kind::FreeProduct { n } => (1..=*n as i32).map(|i| GroupElement::Word(vec![i])).collect(),
            Kind::Cone { k } => {
                if *k == 0 {
                    return Err(Error::Usage("cone dimension must be at least 1".into()));
                }
                (0..*k)
                    .map(|i| {
                        let mut v = vec![0; *k];
                        v[i] = 1;
                        GroupElement::Vector(v)
                    })
                    .collect()
            }
            Kind::Numerical { gens } => {
                if gens.iter().any(|&g| g <= 0) {
                    return Err(Error::Usage("numerical generators must be positive".into()));
                }
                gens.sort_unstable();
                gens.dedup();
                numerical = Some(NumericalTable::build(gens));
                gens.iter().map(|&g| GroupElement::Int(g)).collect()
            }
            Kind::Affine { primes } => {
                if primes.iter().any(|&p| p < 2) {
                    return Err(Error::Usage("affine scalings must be at least 2".into()));
                }
                primes.sort_unstable();
                primes.dedup();
                let r = |b: i64, a: i64| GroupElement::Affine(Rational64::from(b), Rational64::from(a));
                let mut g = vec![r(1, 1), r(-1, 1), r(0, -1)];
                g.extend(primes.iter().map(|&p| r(0, p)));
                g
            }
        };
        Ok(Ambient { id: id.into(), kind, generators, meta, numerical })
    }

    pub fn identity(&self) -> GroupElement {
        match &self.kind {
            Kind::FreeProduct { .. } => GroupElement::Word(vec![]),
            Kind::Cone { k } => GroupElement::Vector(vec![0; *k]),
            Kind::Numerical { .. } => GroupElement::Int(0),
            Kind::Affine { .. } => GroupElement::Affine(Rational64::zero(), Rational64::one()),
        }
    }

    /// True when `P = {e}`.
    pub fn is_trivial(&self) -> bool {
        self.generators.iter().all(|g| *g == self.identity())
    }

    pub(crate) fn numerical_conductor(&self) -> i64 {
        self.numerical.as_ref().map(|t| t.conductor).unwrap_or(1)
    }

    pub(crate) fn numerical_gcd(&self) -> i64 {
        self.numerical.as_ref().map(|t| t.d).unwrap_or(0)
    }

    /// Checks that `g` is an element of this family's ambient group.
    pub fn check(&self, g: &GroupElement) -> Result<()> {
        let ok = match (&self.kind, g) {
            (Kind::FreeProduct { n }, GroupElement::Word(w)) => {
                w.iter().all(|&l| l != 0 && l.unsigned_abs() as usize <= *n)
                    && w.windows(2).all(|p| p[0] != -p[1])
            }
            (Kind::Cone { k }, GroupElement::Vector(v)) => v.len() == *k,
            (Kind::Numerical { .. }, GroupElement::Int(_)) => true,
            (Kind::Affine { .. }, GroupElement::Affine(_, a)) => !a.is_zero(),
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::FamilyMismatch(format!("{g} is not an element of the group of {}", self.id)))
        }
    }

    pub fn multiply(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(mul_unchecked(a, b))
    }

    /// Product of a list of elements; the empty product is `e`.
    pub fn product<'a>(&self, it: impl IntoIterator<Item = &'a GroupElement>) -> Result<GroupElement> {
        let mut acc = self.identity();
        for g in it {
            acc = self.multiply(&acc, g)?;
        }
        Ok(acc)
    }

    pub fn invert(&self, a: &GroupElement) -> GroupElement {
        match a {
            GroupElement::Word(w) => GroupElement::Word(w.iter().rev().map(|l| -l).collect()),
            GroupElement::Vector(v) => GroupElement::Vector(v.iter().map(|x| -x).collect()),
            GroupElement::Int(n) => GroupElement::Int(-n),
            GroupElement::Affine(b, a) => {
                let inv = a.recip();
                GroupElement::Affine(-*b * inv, inv)
            }
        }
    }

    pub fn is_in_p(&self, g: &GroupElement) -> bool {
        if self.check(g).is_err() {
            return false;
        }
        match g {
            GroupElement::Word(w) => w.iter().all(|&l| l > 0),
            GroupElement::Vector(v) => v.iter().all(|&x| x >= 0),
            GroupElement::Int(n) => self.int_in_p(*n),
            GroupElement::Affine(b, a) => b.is_integer() && a.is_integer() && !a.is_zero(),
        }
    }

    pub(crate) fn int_in_p(&self, n: i64) -> bool {
        match &self.numerical {
            Some(t) => t.contains(n),
            None => false,
        }
    }

    pub fn require_p(&self, g: &GroupElement) -> Result<()> {
        if self.is_in_p(g) {
            Ok(())
        } else {
            Err(Error::NotInP(g.to_string()))
        }
    }

    /// Writes `g = p^-1 q` with `p, q` in `P`, when the family allows it.
    pub fn ore_split(&self, g: &GroupElement) -> Option<(GroupElement, GroupElement)> {
        match g {
            GroupElement::Word(w) => {
                let k = w.iter().take_while(|&&l| l < 0).count();
                if w[k..].iter().any(|&l| l < 0) {
                    return None;
                }
                let p: Vec<i32> = w[..k].iter().rev().map(|l| -l).collect();
                Some((GroupElement::Word(p), GroupElement::Word(w[k..].to_vec())))
            }
            GroupElement::Vector(v) => Some((
                GroupElement::Vector(v.iter().map(|&x| (-x).max(0)).collect()),
                GroupElement::Vector(v.iter().map(|&x| x.max(0)).collect()),
            )),
            GroupElement::Int(n) => {
                let limit = self.numerical_conductor() + n.abs();
                (0..=limit)
                    .find(|&p| self.int_in_p(p) && self.int_in_p(p + n))
                    .map(|p| (GroupElement::Int(p), GroupElement::Int(p + n)))
            }
            GroupElement::Affine(b, a) => {
                let den = b.denom().lcm(a.denom());
                let d = Rational64::from(den);
                Some((
                    GroupElement::Affine(Rational64::zero(), d),
                    GroupElement::Affine(*b * d, *a * d),
                ))
            }
        }
    }

    /// All products of at most `radius` generators and their inverses, in
    /// breadth-first order with generator order as tie-break.
    pub fn ball(&self, radius: usize) -> Vec<GroupElement> {
        let mut letters = Vec::new();
        for g in &self.generators {
            letters.push(g.clone());
            letters.push(self.invert(g));
        }
        self.bfs(&letters, radius)
    }

    /// All products of at most `radius` generators, breadth-first.
    pub fn positive_ball(&self, radius: usize) -> Vec<GroupElement> {
        let letters = self.generators.clone();
        self.bfs(&letters, radius)
    }

    fn bfs(&self, letters: &[GroupElement], radius: usize) -> Vec<GroupElement> {
        let e = self.identity();
        let mut seen: HashSet<GroupElement> = HashSet::new();
        seen.insert(e.clone());
        let mut out = vec![e.clone()];
        let mut frontier = vec![e];
        for _ in 0..radius {
            let mut next = Vec::new();
            for x in &frontier {
                for l in letters {
                    let y = mul_unchecked(x, l);
                    if seen.insert(y.clone()) {
                        next.push(y);
                    }
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    /// Random product of `steps` generators or inverses.
    pub fn random_element<R: Rng>(&self, rng: &mut R, steps: usize) -> GroupElement {
        let mut g = self.identity();
        if self.generators.is_empty() {
            return g;
        }
        for _ in 0..steps {
            let s = &self.generators[rng.gen_range(0..self.generators.len())];
            let s = if rng.gen_bool(0.5) { s.clone() } else { self.invert(s) };
            g = mul_unchecked(&g, &s);
        }
        g
    }

    pub fn random_positive<R: Rng>(&self, rng: &mut R, steps: usize) -> GroupElement {
        let mut g = self.identity();
        if self.generators.is_empty() {
            return g;
        }
        for _ in 0..steps {
            let s = &self.generators[rng.gen_range(0..self.generators.len())];
            g = mul_unchecked(&g, s);
        }
        g
    }

    pub fn parse_element(&self, text: &str) -> Result<GroupElement> {
        let mut p = Parser { s: text.as_bytes(), pos: 0 };
        p.skip_ws();
        let g = match &self.kind {
            Kind::FreeProduct { n } => p.word(*n)?,
            Kind::Cone { k } => {
                if p.eat_identity() {
                    GroupElement::Vector(vec![0; *k])
                } else {
                    let v = p.tuple(|p| p.int())?;
                    if v.len() != *k {
                        return Err(Error::Syntax {
                            pos: 0,
                            msg: format!("expected {k} coordinates, found {}", v.len()),
                        });
                    }
                    GroupElement::Vector(v)
                }
            }
            Kind::Numerical { .. } => {
                if p.eat_identity() {
                    GroupElement::Int(0)
                } else {
                    GroupElement::Int(p.int()?)
                }
            }
            Kind::Affine { .. } => {
                if p.eat_identity() {
                    self.identity()
                } else {
                    let start = p.pos;
                    let v = p.tuple(|p| p.rational())?;
                    if v.len() != 2 {
                        return Err(Error::Syntax { pos: start, msg: "expected a pair (b,a)".into() });
                    }
                    if v[1].is_zero() {
                        return Err(Error::Syntax { pos: start, msg: "scaling a must be nonzero".into() });
                    }
                    GroupElement::Affine(v[0], v[1])
                }
            }
        };
        p.skip_ws();
        if p.pos != p.s.len() {
            return Err(Error::Syntax { pos: p.pos, msg: "trailing input".into() });
        }
        Ok(g)
    }
}

impl NumericalTable {
    fn build(gens: &[i64]) -> Self {
        if gens.is_empty() {
            return NumericalTable { d: 0, conductor: 1, member: vec![true] };
        }
        let d = gens.iter().fold(0, |acc, &g| acc.gcd(&g));
        let run_needed = gens[0] / d;
        let mut member = vec![true];
        let mut run = 1;
        let mut n = 0;
        while run < run_needed {
            n += d;
            let m = gens.iter().any(|&g| g <= n && member[(n - g) as usize]);
            member.resize(n as usize + 1, false);
            member[n as usize] = m;
            run = if m { run + 1 } else { 0 };
        }
        let conductor = n - (run_needed - 1) * d;
        member.truncate(conductor as usize + 1);
        NumericalTable { d, conductor, member }
    }

    fn contains(&self, n: i64) -> bool {
        if n < 0 {
            return false;
        }
        if self.d == 0 {
            return n == 0;
        }
        if n % self.d != 0 {
            return false;
        }
        n >= self.conductor || self.member[n as usize]
    }
}

pub(crate) fn mul_unchecked(a: &GroupElement, b: &GroupElement) -> GroupElement {
    match (a, b) {
        (GroupElement::Word(x), GroupElement::Word(y)) => {
            let mut out = x.clone();
            for &l in y {
                if out.last() == Some(&-l) {
                    out.pop();
                } else {
                    out.push(l);
                }
            }
            GroupElement::Word(out)
        }
        (GroupElement::Vector(x), GroupElement::Vector(y)) => {
            GroupElement::Vector(x.iter().zip(y).map(|(a, b)| a + b).collect())
        }
        (GroupElement::Int(x), GroupElement::Int(y)) => GroupElement::Int(x + y),
        (GroupElement::Affine(b1, a1), GroupElement::Affine(b2, a2)) => {
            GroupElement::Affine(*b1 + *a1 * *b2, *a1 * *a2)
        }
        _ => panic!("mul_unchecked on mixed families"),
    }
}

/// Free reduction of an arbitrary signed word.
pub fn reduce_word(w: &[i32]) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

impl GroupElement {
    /// Puts the payload into normal form.
    pub fn normalize(&self) -> GroupElement {
        match self {
            GroupElement::Word(w) => GroupElement::Word(reduce_word(w)),
            GroupElement::Affine(b, a) => {
                GroupElement::Affine(Rational64::new(*b.numer(), *b.denom()), Rational64::new(*a.numer(), *a.denom()))
            }
            other => other.clone(),
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            GroupElement::Word(w) => w.is_empty(),
            GroupElement::Vector(v) => v.iter().all(|&x| x == 0),
            GroupElement::Int(n) => *n == 0,
            GroupElement::Affine(b, a) => b.is_zero() && a.is_one(),
        }
    }

    pub fn word_len(&self) -> usize {
        match self {
            GroupElement::Word(w) => w.len(),
            GroupElement::Vector(v) => v.iter().map(|x| x.unsigned_abs() as usize).sum(),
            GroupElement::Int(n) => n.unsigned_abs() as usize,
            GroupElement::Affine(..) => 0,
        }
    }
}

fn fmt_rational(r: &Rational64) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Word(w) if w.is_empty() => write!(f, "e"),
            GroupElement::Word(w) => {
                let parts: Vec<String> = w
                    .iter()
                    .map(|&l| if l > 0 { format!("p{l}") } else { format!("p{}^-1", -l) })
                    .collect();
                write!(f, "{}", parts.join("*"))
            }
            GroupElement::Vector(v) => {
                let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                write!(f, "({})", parts.join(","))
            }
            GroupElement::Int(n) => write!(f, "{n}"),
            GroupElement::Affine(b, a) => write!(f, "({},{})", fmt_rational(b), fmt_rational(a)),
        }
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected `{}`", c as char)))
        }
    }

    fn err(&self, msg: String) -> Error {
        Error::Syntax { pos: self.pos, msg }
    }

    fn eat_identity(&mut self) -> bool {
        if self.peek() == Some(b'e') {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn uint(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits".into()));
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse::<i64>()
            .map_err(|e| Error::Syntax { pos: start, msg: e.to_string() })
    }

    fn int(&mut self) -> Result<i64> {
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let v = self.uint()?;
        Ok(if neg { -v } else { v })
    }

    fn rational(&mut self) -> Result<Rational64> {
        let n = self.int()?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let start = self.pos;
            let d = self.uint()?;
            if d == 0 {
                return Err(Error::Syntax { pos: start, msg: "zero denominator".into() });
            }
            Ok(Rational64::new(n, d))
        } else {
            Ok(Rational64::from(n))
        }
    }

    fn tuple<T>(&mut self, mut item: impl FnMut(&mut Self) -> Result<T>) -> Result<Vec<T>> {
        self.expect(b'(')?;
        let mut out = vec![item(self)?];
        while self.peek() == Some(b',') {
            self.pos += 1;
            out.push(item(self)?);
        }
        self.expect(b')')?;
        Ok(out)
    }

    fn word(&mut self, n: usize) -> Result<GroupElement> {
        let mut letters = Vec::new();
        loop {
            let start = self.pos;
            match self.peek() {
                Some(b'e') => {
                    self.pos += 1;
                }
                Some(b'p') => {
                    self.pos += 1;
                    let i = self.uint()?;
                    if i < 1 || i as usize > n {
                        return Err(Error::UnknownGenerator(format!("p{i}")));
                    }
                    let mut exp = 1;
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        exp = self.int()?;
                    }
                    let l = if exp < 0 { -(i as i32) } else { i as i32 };
                    for _ in 0..exp.abs() {
                        letters.push(l);
                    }
                }
                _ => return Err(Error::Syntax { pos: start, msg: "expected `p<index>` or `e`".into() }),
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok(GroupElement::Word(reduce_word(&letters)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn free(n: usize) -> Ambient {
        Ambient::new("f", Kind::FreeProduct { n }, Metadata::default()).unwrap()
    }

    fn numerical(g: &[i64]) -> Ambient {
        Ambient::new("n", Kind::Numerical { gens: g.to_vec() }, Metadata::default()).unwrap()
    }

    fn affine() -> Ambient {
        Ambient::new("a", Kind::Affine { primes: vec![2, 3] }, Metadata::default()).unwrap()
    }

    fn cone(k: usize) -> Ambient {
        Ambient::new("c", Kind::Cone { k }, Metadata::default()).unwrap()
    }

    #[test]
    fn multiply_examples() {
        let f = free(2);
        let p = |s| f.parse_element(s).unwrap();
        assert_eq!(f.multiply(&p("p1"), &p("p1^-1")).unwrap(), f.identity());
        assert_eq!(f.multiply(&p("p1*p2^-1"), &p("p2*p1")).unwrap(), p("p1*p1"));
        let c = cone(2);
        let v = |s| c.parse_element(s).unwrap();
        assert_eq!(c.multiply(&v("(1,0)"), &v("(0,1)")).unwrap(), v("(1,1)"));
        assert!(f.multiply(&p("p1"), &v("(1,0)")).is_err());
    }

    #[test]
    fn reduction_matches_symbol_list_oracle() {
        // rewrite adjacent inverse pairs until none remain
        fn oracle(mut w: Vec<i32>) -> Vec<i32> {
            loop {
                let pos = w.windows(2).position(|p| p[0] == -p[1]);
                match pos {
                    Some(i) => {
                        w.drain(i..i + 2);
                    }
                    None => return w,
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..500 {
            let len = rng.gen_range(0..12);
            let w: Vec<i32> = (0..len).map(|_| *[1, -1, 2, -2].get(rng.gen_range(0..4)).unwrap()).collect();
            assert_eq!(reduce_word(&w), oracle(w.clone()));
        }
    }

    #[test]
    fn invert_examples() {
        let f = free(2);
        assert_eq!(f.invert(&f.parse_element("p1*p2").unwrap()), f.parse_element("p2^-1*p1^-1").unwrap());
        let c = cone(2);
        assert_eq!(c.invert(&c.parse_element("(2,-1)").unwrap()), c.parse_element("(-2,1)").unwrap());
        let a = affine();
        let g = a.parse_element("(3,2)").unwrap();
        assert_eq!(a.invert(&g), a.parse_element("(-3/2,1/2)").unwrap());
    }

    #[test]
    fn membership_examples() {
        let f = free(2);
        assert!(f.is_in_p(&f.parse_element("p1*p2").unwrap()));
        assert!(!f.is_in_p(&f.parse_element("p1^-1").unwrap()));
        let n = numerical(&[2, 3]);
        // brute force representability 2x + 3y
        for m in -3..60i64 {
            let rep = (0..=30).any(|x| (0..=20).any(|y| 2 * x + 3 * y == m));
            assert_eq!(n.is_in_p(&GroupElement::Int(m)), rep, "{m}");
        }
        assert!(!n.is_in_p(&GroupElement::Int(1)));
        assert!(n.is_in_p(&GroupElement::Int(5)));
        let c = cone(2);
        assert!(c.is_in_p(&c.parse_element("(0,0)").unwrap()));
    }

    #[test]
    fn numerical_table_with_common_divisor() {
        let n = numerical(&[4, 6]);
        for m in 0..80 {
            let rep = (0..=20).any(|x| (0..=20).any(|y| 4 * x + 6 * y == m));
            assert_eq!(n.int_in_p(m), rep, "{m}");
        }
        let t = numerical(&[]);
        assert!(t.int_in_p(0));
        assert!(!t.int_in_p(1));
        assert!(t.is_trivial());
    }

    #[test]
    fn parse_examples() {
        let f = free(2);
        assert_eq!(f.parse_element("p1*p2^-1").unwrap(), GroupElement::Word(vec![1, -2]));
        assert_eq!(f.parse_element("p1*p1^-1").unwrap(), f.identity());
        assert_eq!(cone(2).parse_element("(3,-2)").unwrap(), GroupElement::Vector(vec![3, -2]));
        assert!(matches!(f.parse_element("p3"), Err(Error::UnknownGenerator(_))));
        assert!(matches!(f.parse_element("p1*"), Err(Error::Syntax { pos: 3, .. })));
        assert!(matches!(cone(2).parse_element("(1,2,3)"), Err(Error::Syntax { .. })));
        assert!(affine().parse_element("(1,0)").is_err());
    }

    #[test]
    fn print_parse_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for amb in [free(3), cone(3), numerical(&[2, 3]), affine()] {
            for _ in 0..200 {
                let g = amb.random_element(&mut rng, 6);
                assert_eq!(amb.parse_element(&g.to_string()).unwrap(), g);
            }
        }
    }

    #[test]
    fn ore_split_recovers_element() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for amb in [cone(2), numerical(&[2, 3]), affine()] {
            for _ in 0..200 {
                let g = amb.random_element(&mut rng, 5);
                let (p, q) = amb.ore_split(&g).unwrap();
                assert!(amb.is_in_p(&p) && amb.is_in_p(&q));
                assert_eq!(amb.multiply(&amb.invert(&p), &q).unwrap(), g);
            }
        }
        let f = free(2);
        assert!(f.ore_split(&f.parse_element("p1*p2^-1").unwrap()).is_none());
        let (p, q) = f.ore_split(&f.parse_element("p2^-1*p1^-1*p2").unwrap()).unwrap();
        assert_eq!(p, f.parse_element("p1*p2").unwrap());
        assert_eq!(q, f.parse_element("p2").unwrap());
    }

    #[test]
    fn free_ball_sizes() {
        let f = free(2);
        // 1 + 4 + 12 + 36 reduced words
        assert_eq!(f.ball(3).len(), 53);
        assert_eq!(f.positive_ball(3).len(), 15);
    }
}
