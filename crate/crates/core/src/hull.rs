//! The left inverse hull of `P`: partial bijections `x -> g x` on constructible
//! domains, generated by the isometries `v_p` and their adjoints.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::ambient::{Ambient, GroupElement};
use crate::error::{Error, Result};
use crate::ideal::{Caps, Ideal};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PartialIsometry {
    Zero,
    /// The map `x -> shift * x` on `domain`.
    Map { domain: Ideal, shift: GroupElement },
}

impl PartialIsometry {
    pub fn is_zero(&self) -> bool {
        matches!(self, PartialIsometry::Zero)
    }

    pub fn domain(&self) -> Option<&Ideal> {
        match self {
            PartialIsometry::Zero => None,
            PartialIsometry::Map { domain, .. } => Some(domain),
        }
    }

    pub fn is_idempotent(&self) -> bool {
        match self {
            PartialIsometry::Zero => true,
            PartialIsometry::Map { shift, .. } => shift.is_identity(),
        }
    }
}

impl fmt::Display for PartialIsometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PartialIsometry::Zero => write!(f, "0"),
            PartialIsometry::Map { domain, shift } => write!(f, "({domain}, {shift})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Letter {
    V(GroupElement),
    VStar(GroupElement),
}

impl Letter {
    pub fn element(&self) -> &GroupElement {
        match self {
            Letter::V(p) | Letter::VStar(p) => p,
        }
    }

    pub fn is_star(&self) -> bool {
        matches!(self, Letter::VStar(_))
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::V(p) => write!(f, "v[{p}]"),
            Letter::VStar(p) => write!(f, "v[{p}]*"),
        }
    }
}

pub fn word_to_string(w: &[Letter]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ")
}

impl Ambient {
    pub fn identity_map(&self) -> PartialIsometry {
        PartialIsometry::Map { domain: self.whole(), shift: self.identity() }
    }

    /// The projection onto `x`.
    pub fn projection(&self, x: &Ideal) -> PartialIsometry {
        if x.is_empty() {
            PartialIsometry::Zero
        } else {
            PartialIsometry::Map { domain: x.clone(), shift: self.identity() }
        }
    }

    pub fn letter_value(&self, l: &Letter) -> Result<PartialIsometry> {
        match l {
            Letter::V(p) => {
                self.require_p(p)?;
                Ok(PartialIsometry::Map { domain: self.whole(), shift: p.clone() })
            }
            Letter::VStar(p) => {
                let range = self.left_multiply(p, &self.whole())?;
                Ok(PartialIsometry::Map { domain: range, shift: self.invert(p) })
            }
        }
    }

    /// The operator product `l1 l2 ... ln`, so `ln` acts first.
    pub fn from_word(&self, w: &[Letter]) -> Result<PartialIsometry> {
        let mut acc = self.identity_map();
        for l in w {
            acc = self.compose(&acc, &self.letter_value(l)?);
        }
        Ok(acc)
    }

    /// `s1 ∘ s2`: first `s2`, then `s1`.
    pub fn compose(&self, s1: &PartialIsometry, s2: &PartialIsometry) -> PartialIsometry {
        match (s1, s2) {
            (PartialIsometry::Map { domain: d1, shift: g1 }, PartialIsometry::Map { domain: d2, shift: g2 }) => {
                let pulled = self.p_cap_translate(&self.invert(g2), d1);
                let domain = self.intersect(d2, &pulled);
                if domain.is_empty() {
                    PartialIsometry::Zero
                } else {
                    let shift = self.multiply(g1, g2).expect("same family");
                    PartialIsometry::Map { domain, shift }
                }
            }
            _ => PartialIsometry::Zero,
        }
    }

    /// `(X, g) -> (gX, g^-1)`.
    pub fn adjoint(&self, s: &PartialIsometry) -> PartialIsometry {
        match s {
            PartialIsometry::Zero => PartialIsometry::Zero,
            PartialIsometry::Map { domain, shift } => PartialIsometry::Map {
                domain: self.p_cap_translate(shift, domain),
                shift: self.invert(shift),
            },
        }
    }

    pub fn grade(&self, s: &PartialIsometry) -> Result<GroupElement> {
        match s {
            PartialIsometry::Zero => Err(Error::ZeroGrade),
            PartialIsometry::Map { shift, .. } => Ok(shift.clone()),
        }
    }

    pub fn apply(&self, s: &PartialIsometry, x: &GroupElement) -> Option<GroupElement> {
        match s {
            PartialIsometry::Map { domain, shift } if self.contains(domain, x) => {
                Some(self.multiply(shift, x).expect("same family"))
            }
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct HullElement {
    pub value: PartialIsometry,
    /// Shortest word found for the value; `None` for an adjoined zero no word reaches.
    pub word: Option<Vec<Letter>>,
}

#[derive(Clone, Debug)]
pub struct Hull {
    pub elements: Vec<HullElement>,
    pub depth: usize,
    pub truncated: bool,
}

impl Hull {
    pub fn values(&self) -> impl Iterator<Item = &PartialIsometry> {
        self.elements.iter().map(|e| &e.value)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = &PartialIsometry> {
        self.values().filter(|v| !v.is_zero())
    }
}

/// Values of all words of length at most `depth` in `v_p`, `v_p*` over the
/// generators, deduplicated by normal form, with zero always present.
pub fn hull_enumerate(amb: &Ambient, depth: usize, caps: &Caps) -> Hull {
    let truncated = depth > caps.max_hull_depth;
    let depth = depth.min(caps.max_hull_depth);
    let letters: Vec<Letter> =
        amb.generators.iter().flat_map(|g| [Letter::V(g.clone()), Letter::VStar(g.clone())]).collect();
    let mut elements = vec![
        HullElement { value: amb.identity_map(), word: Some(vec![]) },
        HullElement { value: PartialIsometry::Zero, word: None },
    ];
    let mut seen: HashMap<PartialIsometry, usize> = HashMap::new();
    seen.insert(elements[0].value.clone(), 0);
    seen.insert(PartialIsometry::Zero, 1);
    let mut frontier = vec![0usize];
    for _ in 0..depth {
        let mut next = Vec::new();
        for &i in &frontier {
            for l in &letters {
                let v = amb.compose(&elements[i].value, &amb.letter_value(l).expect("generators lie in P"));
                let mut w = elements[i].word.clone().expect("frontier words exist");
                w.push(l.clone());
                match seen.get(&v) {
                    Some(&j) => {
                        if elements[j].word.is_none() {
                            elements[j].word = Some(w);
                        }
                    }
                    None => {
                        seen.insert(v.clone(), elements.len());
                        next.push(elements.len());
                        elements.push(HullElement { value: v, word: Some(w) });
                    }
                }
            }
        }
        frontier = next;
    }
    Hull { elements, depth, truncated }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ambient::{Kind, Metadata};
    use std::collections::BTreeSet;

    fn amb(kind: Kind) -> Ambient {
        Ambient::new("t", kind, Metadata::default()).unwrap()
    }

    #[test]
    fn word_examples() {
        let f = amb(Kind::FreeProduct { n: 2 });
        let p = |s: &str| f.parse_element(s).unwrap();
        let v = |s: &str| Letter::V(p(s));
        let vs = |s: &str| Letter::VStar(p(s));
        assert_eq!(f.from_word(&[vs("p1"), v("p1")]).unwrap(), f.identity_map());
        assert_eq!(f.from_word(&[v("p1"), vs("p1")]).unwrap(), f.projection(&Ideal::Word(vec![1])));
        assert_eq!(f.from_word(&[vs("p1"), v("p2")]).unwrap(), PartialIsometry::Zero);
        let s = PartialIsometry::Map { domain: Ideal::Word(vec![2]), shift: p("p1*p2^-1") };
        let t = f.letter_value(&v("p2")).unwrap();
        assert_eq!(f.compose(&s, &t), f.letter_value(&v("p1")).unwrap());
        assert_eq!(f.grade(&f.compose(&s, &t)).unwrap(), p("p1"));
        assert_eq!(f.compose(&s, &PartialIsometry::Zero), PartialIsometry::Zero);
        assert_eq!(f.grade(&PartialIsometry::Zero), Err(Error::ZeroGrade));
        // pointwise check of the composition on words up to length 4
        for w in f.positive_ball(4) {
            assert_eq!(f.apply(&f.compose(&s, &t), &w), f.apply(&t, &w).and_then(|y| f.apply(&s, &y)));
        }
    }

    #[test]
    fn adjoint_examples() {
        let n = amb(Kind::Numerical { gens: vec![1] });
        let s = PartialIsometry::Map { domain: Ideal::Tail { below: vec![], t: 3 }, shift: GroupElement::Int(-2) };
        let expect = PartialIsometry::Map { domain: Ideal::Tail { below: vec![], t: 1 }, shift: GroupElement::Int(2) };
        assert_eq!(n.adjoint(&s), expect);
        let vp = n.letter_value(&Letter::V(GroupElement::Int(4))).unwrap();
        assert_eq!(n.adjoint(&vp), n.letter_value(&Letter::VStar(GroupElement::Int(4))).unwrap());
        let e = n.projection(&Ideal::Tail { below: vec![], t: 2 });
        assert_eq!(n.adjoint(&e), e);
    }

    #[test]
    fn trivial_hull() {
        let t = amb(Kind::Numerical { gens: vec![] });
        let h = hull_enumerate(&t, 3, &Caps::default());
        let vals: Vec<_> = h.values().cloned().collect();
        assert_eq!(vals, vec![t.identity_map(), PartialIsometry::Zero]);
    }

    /// Distinct partial maps on a window of naturals reached by words of length <= d.
    fn naturals_oracle(d: usize) -> usize {
        type Table = Vec<Option<i64>>;
        let window = 30i64;
        let mut words: Vec<Vec<bool>> = vec![vec![]];
        let mut layer = vec![vec![]];
        for _ in 0..d {
            layer = layer.iter().flat_map(|w: &Vec<bool>| [true, false].map(|b| [w.clone(), vec![b]].concat())).collect();
            words.extend(layer.iter().cloned());
        }
        let mut tables: BTreeSet<Table> = BTreeSet::new();
        tables.insert(vec![None; window as usize]);
        for w in words {
            let table: Table = (0..window)
                .map(|x| {
                    let mut y = Some(x);
                    for &star in w.iter().rev() {
                        y = y.and_then(|y| if star { (y >= 1).then_some(y - 1) } else { Some(y + 1) });
                    }
                    y
                })
                .collect();
            tables.insert(table);
        }
        tables.len()
    }

    #[test]
    fn naturals_hull_count_matches_oracle() {
        let n = amb(Kind::Numerical { gens: vec![1] });
        for d in 0..=4 {
            let h = hull_enumerate(&n, d, &Caps::default());
            assert_eq!(h.elements.len(), naturals_oracle(d), "depth {d}");
        }
        assert_eq!(hull_enumerate(&n, 2, &Caps::default()).elements.len(), 7);
    }

    #[test]
    fn free_hull_has_zero_from_words() {
        let f = amb(Kind::FreeProduct { n: 2 });
        let h = hull_enumerate(&f, 2, &Caps::default());
        let z = h.elements.iter().find(|e| e.value.is_zero()).unwrap();
        let w = z.word.as_ref().unwrap();
        assert_eq!(f.from_word(w).unwrap(), PartialIsometry::Zero);
        assert_eq!(w.len(), 2);
    }

    #[test]
    fn inverse_semigroup_axioms_depth3() {
        for kind in [Kind::Numerical { gens: vec![1] }, Kind::FreeProduct { n: 2 }, Kind::Numerical { gens: vec![2, 3] }] {
            let a = amb(kind);
            let h = hull_enumerate(&a, 3, &Caps::default());
            let vals: Vec<_> = h.values().cloned().collect();
            for s in &vals {
                let st = a.adjoint(s);
                assert_eq!(a.compose(&a.compose(s, &st), s), *s);
                assert_eq!(a.compose(&a.compose(&st, s), &st), st);
                assert_eq!(a.adjoint(&st), *s);
            }
            let idem: Vec<_> = vals.iter().filter(|s| s.is_idempotent()).collect();
            for e in &idem {
                for f in &idem {
                    assert_eq!(a.compose(e, f), a.compose(f, e));
                }
            }
        }
    }
}
