//! Sections U/L of a circulant scheme and projective equivalence.
//!
//! Subgroups of Z_n are identified by their orders. The section U/L with
//! |U| = u, |L| = l is identified with Z_q, q = u/l: element k stands for
//! the coset k·(n/u) + L.

use std::collections::VecDeque;
use std::fmt;

use super::CirculantScheme;
use crate::arith::{gcd, lcm};
use crate::error::{Error, Result};

/// A pair of X-group orders (|U|, |L|) with |L| dividing |U|.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SectionKey {
    pub u: usize,
    pub l: usize,
}

impl SectionKey {
    pub fn new(u: usize, l: usize) -> Self {
        SectionKey { u, l }
    }

    pub fn order(&self) -> usize {
        self.u / self.l
    }

    /// Whether `self` is a multiple of `t`: L(t) = U(t) ∩ L(self) and
    /// U(self) = U(t)·L(self).
    pub fn is_multiple_of(&self, t: &SectionKey) -> bool {
        t.l == gcd(t.u, self.l) && self.u == lcm(t.u, self.l)
    }

    /// Whether `self` is a subsection of `t` (L(t) ≤ L, U ≤ U(t)).
    pub fn is_subsection_of(&self, t: &SectionKey) -> bool {
        self.l % t.l == 0 && t.u % self.u == 0
    }

    /// Section index of a group element of U(self).
    pub fn element_index(&self, n: usize, g: usize) -> Option<usize> {
        let step = n / self.u;
        (g % step == 0).then(|| (g / step) % self.order())
    }

    /// A group element representing section element `k`.
    pub fn element(&self, n: usize, k: usize) -> usize {
        k * (n / self.u)
    }

    /// Human-readable form with subgroups written by generators of Z_n.
    pub fn display(&self, n: usize) -> String {
        let g = |d: usize| {
            if d == 1 {
                "1".to_string()
            } else if d == n {
                format!("Z_{n}")
            } else {
                format!("<{}>", n / d)
            }
        };
        format!("{}/{}", g(self.u), g(self.l))
    }
}

/// A section with its quotient scheme on Z_q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    pub n: usize,
    pub key: SectionKey,
    pub scheme: CirculantScheme,
}

impl Section {
    pub fn order(&self) -> usize {
        self.key.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.scheme.is_trivial()
    }

    /// Radical of the section scheme is the identity subgroup.
    pub fn is_principal(&self) -> bool {
        self.scheme.radical_order() == 1
    }
}

impl fmt::Display for Section {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.key.display(self.n))
    }
}

impl CirculantScheme {
    fn check_section(&self, key: SectionKey) -> Result<()> {
        let n = self.n();
        if key.u == 0 || key.l == 0 || n % key.u != 0 || key.u % key.l != 0 {
            return Err(Error::Invariant(format!(
                "({}, {}) is not a pair of nested subgroup orders of Z_{n}",
                key.u, key.l
            )));
        }
        if !self.is_xgroup(key.u) || !self.is_xgroup(key.l) {
            return Err(Error::NotParabolic(format!(
                "{} is not a section over X-groups",
                key.display(n)
            )));
        }
        Ok(())
    }

    /// X_{U/L} as a circulant scheme on Z_q.
    pub fn section_scheme(&self, key: SectionKey) -> Result<CirculantScheme> {
        self.check_section(key)?;
        let n = self.n();
        let q = key.order();
        let step = n / key.u;
        // image of each basis set inside U, as a label on Z_q
        let mut labels = vec![u32::MAX; q];
        for k in 0..key.u {
            let c = self.set_of(k * step);
            let j = k % q;
            if labels[j] == u32::MAX {
                labels[j] = c;
            } else if labels[j] != c {
                // two basis sets over one coset: keep the smaller id, the
                // images coincide as sets in a quotient
                labels[j] = labels[j].min(c);
            }
        }
        // images of basis sets may merge; merge labels by set overlap
        let mut parent: Vec<u32> = (0..self.rank() as u32).collect();
        fn find(p: &mut [u32], x: u32) -> u32 {
            let mut r = x;
            while p[r as usize] != r {
                r = p[r as usize];
            }
            r
        }
        for k in 0..key.u {
            let c = self.set_of(k * step);
            let j = labels[k % q];
            let (a, b) = (find(&mut parent, c), find(&mut parent, j));
            if a != b {
                parent[a.max(b) as usize] = a.min(b);
            }
        }
        let lab: Vec<u32> = labels.iter().map(|&c| find(&mut parent, c)).collect();
        Ok(CirculantScheme::from_labels_unchecked(q, &lab))
    }

    pub fn section(&self, key: SectionKey) -> Result<Section> {
        Ok(Section {
            n: self.n(),
            key,
            scheme: self.section_scheme(key)?,
        })
    }

    /// All sections U/L over X-groups L ≤ U, ordered by (|U|, |L|).
    pub fn sections(&self) -> Vec<Section> {
        let xg = self.xgroups();
        let mut out = Vec::new();
        for &u in &xg {
            for &l in &xg {
                if u % l == 0 {
                    out.push(self.section(SectionKey::new(u, l)).expect("X-groups"));
                }
            }
        }
        out
    }

    /// U/L-condition: every basis set T with T ∩ U = ∅ satisfies T + L = T.
    pub fn satisfies_ul_condition(&self, u: usize, l: usize) -> bool {
        let n = self.n();
        let ustep = n / u;
        let lstep = n / l;
        self.sets().iter().enumerate().all(|(c, t)| {
            if t.iter().any(|&d| d % ustep == 0) {
                return true;
            }
            t.iter()
                .all(|&d| (0..l).all(|k| self.set_of(d + k * lstep) as usize == c))
        })
    }

    /// Projective-equivalence classes of all sections.
    pub fn projective_classes(&self) -> ProjectiveClasses {
        ProjectiveClasses::new(self)
    }
}

/// The sections of a scheme grouped into projective-equivalence classes.
#[derive(Clone, Debug)]
pub struct ProjectiveClasses {
    pub n: usize,
    pub sections: Vec<Section>,
    /// Class index of each section.
    pub class_of: Vec<usize>,
    /// Section indices per class, classes ordered by least member.
    pub classes: Vec<Vec<usize>>,
}

impl ProjectiveClasses {
    fn new(x: &CirculantScheme) -> Self {
        let sections = x.sections();
        let k = sections.len();
        let mut parent: Vec<usize> = (0..k).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            r
        }
        for i in 0..k {
            for j in 0..k {
                if sections[i].key.is_multiple_of(&sections[j].key) {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut root_class = vec![usize::MAX; k];
        let mut class_of = vec![0; k];
        for i in 0..k {
            let r = find(&mut parent, i);
            if root_class[r] == usize::MAX {
                root_class[r] = classes.len();
                classes.push(Vec::new());
            }
            classes[root_class[r]].push(i);
            class_of[i] = root_class[r];
        }
        ProjectiveClasses {
            n: x.n(),
            sections,
            class_of,
            classes,
        }
    }

    pub fn index_of(&self, key: SectionKey) -> Option<usize> {
        self.sections.iter().position(|s| s.key == key)
    }

    pub fn equivalent(&self, a: SectionKey, b: SectionKey) -> bool {
        match (self.index_of(a), self.index_of(b)) {
            (Some(i), Some(j)) => self.class_of[i] == self.class_of[j],
            _ => false,
        }
    }

    /// A class is trivial if one (hence every) member is trivial.
    pub fn class_is_trivial(&self, c: usize) -> bool {
        self.classes[c]
            .iter()
            .any(|&i| self.sections[i].is_trivial())
    }

    pub fn class_order(&self, c: usize) -> usize {
        self.sections[self.classes[c][0]].order()
    }

    /// Sections projectively equivalent to a principal section.
    pub fn secc0(&self) -> Vec<usize> {
        let good: Vec<bool> = (0..self.classes.len())
            .map(|c| {
                self.classes[c]
                    .iter()
                    .any(|&i| self.sections[i].is_principal())
            })
            .collect();
        (0..self.sections.len())
            .filter(|&i| good[self.class_of[i]])
            .collect()
    }

    /// f_{T,S} as a unit factor mod q: section element k of T goes to
    /// k·factor of S. Composed along a shortest multiple-path and checked
    /// to be a Cayley isomorphism X_T → X_S.
    pub fn bridge(&self, t: SectionKey, s: SectionKey) -> Result<usize> {
        let n = self.n;
        let (Some(ti), Some(si)) = (self.index_of(t), self.index_of(s)) else {
            return Err(Error::NotProjectivelyEquivalent(t.display(n), s.display(n)));
        };
        if self.class_of[ti] != self.class_of[si] {
            return Err(Error::NotProjectivelyEquivalent(t.display(n), s.display(n)));
        }
        let q = t.order();
        let members = &self.classes[self.class_of[ti]];
        let mut factor: Vec<Option<usize>> = vec![None; self.sections.len()];
        factor[ti] = Some(1 % q.max(1));
        let mut queue = VecDeque::from([ti]);
        while let Some(a) = queue.pop_front() {
            let fa = factor[a].unwrap();
            let ka = self.sections[a].key;
            for &b in members {
                if factor[b].is_some() {
                    continue;
                }
                let kb = self.sections[b].key;
                let step = if kb.is_multiple_of(&ka) {
                    Some((kb.u / ka.u) % q.max(1))
                } else if ka.is_multiple_of(&kb) {
                    inverse_mod((ka.u / kb.u) % q.max(1), q)
                } else {
                    None
                };
                if let Some(st) = step {
                    factor[b] = Some((fa * st) % q.max(1));
                    queue.push_back(b);
                }
            }
        }
        let f = factor[si]
            .ok_or_else(|| Error::Invariant("projective class is not connected".into()))?;
        let (xt, xs) = (&self.sections[ti].scheme, &self.sections[si].scheme);
        for set in xt.sets() {
            let c = xs.set_of((set[0] * f) % q.max(1));
            if set.iter().any(|&k| xs.set_of((k * f) % q.max(1)) != c)
                || xs.sets()[c as usize].len() != set.len()
            {
                return Err(Error::Invariant(format!(
                    "bridge {} -> {} is not a Cayley isomorphism",
                    t.display(n),
                    s.display(n)
                )));
            }
        }
        Ok(f)
    }
}

pub(crate) fn inverse_mod(a: usize, q: usize) -> Option<usize> {
    if q == 1 {
        return Some(0);
    }
    (1..q).find(|&b| (a * b) % q == 1)
}
