//! Coherent configurations and their elementary constructions.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use crate::coloring::{validate, Coloring, ValidationReport};
use crate::error::{Error, Result};
use crate::refine;

/// Sparse intersection numbers: for each color `t`, the sorted list of
/// `(r, s, c_rs^t)` with nonzero count.
pub type Tensor = Vec<Vec<(u32, u32, u32)>>;

/// A validated coherent configuration with canonically numbered colors.
pub struct CoherentConfig {
    coloring: Coloring,
    fiber_of: Vec<usize>,
    fibers: Vec<Fiber>,
    converse: Vec<u32>,
    rep: Vec<(usize, usize)>,
    size: Vec<usize>,
    color_fibers: Vec<(usize, usize)>,
    tensor: OnceLock<Tensor>,
}

impl Clone for CoherentConfig {
    fn clone(&self) -> Self {
        CoherentConfig {
            coloring: self.coloring.clone(),
            fiber_of: self.fiber_of.clone(),
            fibers: self.fibers.clone(),
            converse: self.converse.clone(),
            rep: self.rep.clone(),
            size: self.size.clone(),
            color_fibers: self.color_fibers.clone(),
            tensor: OnceLock::new(),
        }
    }
}

impl PartialEq for CoherentConfig {
    fn eq(&self, other: &Self) -> bool {
        self.coloring == other.coloring
    }
}

impl Eq for CoherentConfig {}

impl std::hash::Hash for CoherentConfig {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coloring.hash(state)
    }
}

impl fmt::Debug for CoherentConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CoherentConfig(n={}, rank={})", self.n(), self.rank())
    }
}

/// A set of points whose diagonal is one color.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fiber {
    pub points: Vec<usize>,
}

/// A union of colors, stored as a sorted color list.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Relation {
    colors: Vec<u32>,
}

impl Relation {
    pub fn new(mut colors: Vec<u32>) -> Self {
        colors.sort_unstable();
        colors.dedup();
        Relation { colors }
    }

    pub fn single(c: u32) -> Self {
        Relation { colors: vec![c] }
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn contains(&self, c: u32) -> bool {
        self.colors.binary_search(&c).is_ok()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn union(&self, other: &Relation) -> Relation {
        Relation::new(self.colors.iter().chain(&other.colors).copied().collect())
    }

    pub fn intersection(&self, other: &Relation) -> Relation {
        Relation::new(
            self.colors
                .iter()
                .copied()
                .filter(|&c| other.contains(c))
                .collect(),
        )
    }

    fn mask(&self, rank: usize) -> Vec<bool> {
        let mut m = vec![false; rank];
        for &c in &self.colors {
            m[c as usize] = true;
        }
        m
    }
}

/// An equivalence relation on its support Δ that is a union of colors.
/// Full parabolics have Δ = Ω.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parabolic {
    /// Equivalence classes, each sorted, ordered by least point.
    pub classes: Vec<Vec<usize>>,
    pub relation: Relation,
    /// Sorted support Δ.
    pub support: Vec<usize>,
}

impl Parabolic {
    pub fn is_full(&self, n: usize) -> bool {
        self.support.len() == n
    }

    /// Class index of every point; `usize::MAX` off the support.
    pub fn class_map(&self, n: usize) -> Vec<usize> {
        let mut m = vec![usize::MAX; n];
        for (i, cl) in self.classes.iter().enumerate() {
            for &p in cl {
                m[p] = i;
            }
        }
        m
    }
}

impl CoherentConfig {
    /// Validates and canonicalizes a coloring.
    pub fn new(coloring: Coloring) -> Result<Self> {
        let report = validate(&coloring);
        if !report.is_valid() {
            return Err(Error::NotCoherent(report.to_string()));
        }
        Ok(Self::from_valid(coloring.canonical()))
    }

    pub fn from_labels(n: usize, labels: &[u32]) -> Result<Self> {
        Self::new(Coloring::from_labels(n, labels)?)
    }

    /// The smallest coherent configuration whose partition refines the
    /// given labelled matrix.
    pub fn closure(n: usize, labels: &[u64]) -> Result<Self> {
        if labels.len() != n * n {
            return Err(Error::MatrixSize {
                got: labels.len(),
                expected: n * n,
            });
        }
        let (colors, rank) = refine::refine(n, labels);
        Ok(Self::from_valid(
            Coloring::from_contiguous(n, colors, rank).canonical(),
        ))
    }

    /// Builds from a coloring already known to be coherent and canonical.
    pub(crate) fn from_valid(coloring: Coloring) -> Self {
        let n = coloring.n();
        let rank = coloring.rank();
        let mut diag_index: BTreeMap<u32, usize> = BTreeMap::new();
        let mut fiber_of = vec![0; n];
        let mut fibers: Vec<Fiber> = Vec::new();
        for a in 0..n {
            let d = coloring.color(a, a);
            let idx = *diag_index.entry(d).or_insert_with(|| {
                fibers.push(Fiber { points: Vec::new() });
                fibers.len() - 1
            });
            fiber_of[a] = idx;
            fibers[idx].points.push(a);
        }
        let mut rep = vec![(usize::MAX, usize::MAX); rank];
        let mut size = vec![0; rank];
        let mut converse = vec![0; rank];
        for a in 0..n {
            for b in 0..n {
                let c = coloring.color(a, b) as usize;
                if rep[c].0 == usize::MAX {
                    rep[c] = (a, b);
                    converse[c] = coloring.color(b, a);
                }
                size[c] += 1;
            }
        }
        let color_fibers = rep
            .iter()
            .map(|&(a, b)| (fiber_of[a], fiber_of[b]))
            .collect();
        CoherentConfig {
            coloring,
            fiber_of,
            fibers,
            converse,
            rep,
            size,
            color_fibers,
            tensor: OnceLock::new(),
        }
    }

    /// The configuration with the diagonal and its complement as colors.
    pub fn trivial(n: usize) -> Self {
        let labels: Vec<u32> = (0..n * n).map(|i| u32::from(i / n != i % n)).collect();
        Self::from_valid(Coloring::from_labels(n, &labels).unwrap().canonical())
    }

    /// Every pair its own color.
    pub fn discrete(n: usize) -> Self {
        let labels: Vec<u32> = (0..(n * n) as u32).collect();
        Self::from_valid(Coloring::from_labels(n, &labels).unwrap().canonical())
    }

    /// inv((Z_n)_right): color of (a, b) determined by b − a.
    pub fn regular_cyclic(n: usize) -> Self {
        let labels: Vec<u32> = (0..n * n)
            .map(|i| ((i % n + n - i / n) % n) as u32)
            .collect();
        Self::from_valid(Coloring::from_labels(n, &labels).unwrap().canonical())
    }

    pub fn validate(&self) -> ValidationReport {
        validate(&self.coloring)
    }

    pub fn n(&self) -> usize {
        self.coloring.n()
    }

    pub fn rank(&self) -> usize {
        self.coloring.rank()
    }

    #[inline]
    pub fn color(&self, a: usize, b: usize) -> u32 {
        self.coloring.color(a, b)
    }

    pub fn coloring(&self) -> &Coloring {
        &self.coloring
    }

    pub fn matrix(&self) -> &[u32] {
        self.coloring.matrix()
    }

    pub fn fibers(&self) -> &[Fiber] {
        &self.fibers
    }

    pub fn fiber_of(&self, point: usize) -> usize {
        self.fiber_of[point]
    }

    pub fn is_homogeneous(&self) -> bool {
        self.fibers.len() == 1
    }

    pub fn is_discrete(&self) -> bool {
        self.rank() == self.n() * self.n()
    }

    pub fn is_diagonal(&self, c: u32) -> bool {
        let (a, b) = self.rep[c as usize];
        a == b
    }

    /// Diagonal colors in fiber order.
    pub fn diagonal_colors(&self) -> Vec<u32> {
        self.fibers
            .iter()
            .map(|f| self.color(f.points[0], f.points[0]))
            .collect()
    }

    pub fn converse(&self, c: u32) -> u32 {
        self.converse[c as usize]
    }

    /// Number of pairs in the class of `c`.
    pub fn size(&self, c: u32) -> usize {
        self.size[c as usize]
    }

    /// |αc| for α in the source fiber of `c`.
    pub fn valency(&self, c: u32) -> usize {
        let (src, _) = self.color_fibers[c as usize];
        self.size[c as usize] / self.fibers[src].points.len()
    }

    /// Source and target fiber indices of `c`.
    pub fn color_fibers(&self, c: u32) -> (usize, usize) {
        self.color_fibers[c as usize]
    }

    /// Lexicographically least pair of `c`.
    pub fn representative(&self, c: u32) -> (usize, usize) {
        self.rep[c as usize]
    }

    /// All pairs of color `c` in lexicographic order.
    pub fn pairs(&self, c: u32) -> Vec<(usize, usize)> {
        let n = self.n();
        let mut out = Vec::with_capacity(self.size[c as usize]);
        for a in 0..n {
            for b in 0..n {
                if self.color(a, b) == c {
                    out.push((a, b));
                }
            }
        }
        out
    }

    fn check_color(&self, c: u32) -> Result<()> {
        if (c as usize) < self.rank() {
            Ok(())
        } else {
            Err(Error::ColorOutOfRange {
                color: c as usize,
                rank: self.rank(),
            })
        }
    }

    /// c_rs^t = |αr ∩ βs*| for any (α, β) in t.
    pub fn intersection_number(&self, r: u32, s: u32, t: u32) -> Result<usize> {
        self.check_color(r)?;
        self.check_color(s)?;
        self.check_color(t)?;
        let (a, b) = self.rep[t as usize];
        Ok((0..self.n())
            .filter(|&g| self.color(a, g) == r && self.color(g, b) == s)
            .count())
    }

    /// Full sparse intersection tensor, computed on first use.
    pub fn tensor(&self) -> &Tensor {
        self.tensor.get_or_init(|| {
            let n = self.n();
            (0..self.rank() as u32)
                .map(|t| {
                    let (a, b) = self.rep[t as usize];
                    let mut counts: BTreeMap<(u32, u32), u32> = BTreeMap::new();
                    for g in 0..n {
                        *counts
                            .entry((self.color(a, g), self.color(g, b)))
                            .or_insert(0) += 1;
                    }
                    counts.into_iter().map(|((r, s), c)| (r, s, c)).collect()
                })
                .collect()
        })
    }

    /// Sparse lookup of c_rs^t in the cached tensor.
    pub fn tensor_entry(&self, r: u32, s: u32, t: u32) -> u32 {
        let row = &self.tensor()[t as usize];
        match row.binary_search_by(|&(x, y, _)| (x, y).cmp(&(r, s))) {
            Ok(i) => row[i].2,
            Err(_) => 0,
        }
    }

    // ---- relations ----

    pub fn relation_converse(&self, r: &Relation) -> Relation {
        Relation::new(r.colors.iter().map(|&c| self.converse(c)).collect())
    }

    /// Smallest relation containing the composition r·s.
    pub fn dot_product(&self, r: &Relation, s: &Relation) -> Relation {
        let n = self.n();
        let rm = r.mask(self.rank());
        let sm = s.mask(self.rank());
        let mut out = Vec::new();
        for t in 0..self.rank() as u32 {
            let (a, b) = self.rep[t as usize];
            if (0..n).any(|g| rm[self.color(a, g) as usize] && sm[self.color(g, b) as usize]) {
                out.push(t);
            }
        }
        Relation::new(out)
    }

    /// Smallest Δ with r ⊆ Δ×Δ.
    pub fn support(&self, r: &Relation) -> Vec<usize> {
        let n = self.n();
        let m = r.mask(self.rank());
        let mut inside = vec![false; n];
        for a in 0..n {
            for b in 0..n {
                if m[self.color(a, b) as usize] {
                    inside[a] = true;
                    inside[b] = true;
                }
            }
        }
        (0..n).filter(|&p| inside[p]).collect()
    }

    fn parabolic_from_classes(&self, classes: Vec<Vec<usize>>) -> Result<Parabolic> {
        let n = self.n();
        let mut class_of = vec![usize::MAX; n];
        for (i, cl) in classes.iter().enumerate() {
            for &p in cl {
                class_of[p] = i;
            }
        }
        let mut inside = vec![false; self.rank()];
        let mut outside = vec![false; self.rank()];
        for a in 0..n {
            for b in 0..n {
                let c = self.color(a, b) as usize;
                if class_of[a] != usize::MAX && class_of[a] == class_of[b] {
                    inside[c] = true;
                } else {
                    outside[c] = true;
                }
            }
        }
        if let Some(c) = (0..self.rank()).find(|&c| inside[c] && outside[c]) {
            return Err(Error::NotParabolic(format!("equivalence splits color {c}")));
        }
        let mut support: Vec<usize> = classes.iter().flatten().copied().collect();
        support.sort_unstable();
        Ok(Parabolic {
            classes,
            relation: Relation::new(
                (0..self.rank() as u32)
                    .filter(|&c| inside[c as usize])
                    .collect(),
            ),
            support,
        })
    }

    /// ⟨s⟩: the smallest equivalence relation on the support of `s` containing it.
    pub fn generated_equivalence(&self, s: &Relation) -> Result<Parabolic> {
        let n = self.n();
        let support = self.support(s);
        let m = s.mask(self.rank());
        let mut uf: Vec<usize> = (0..n).collect();
        fn find(uf: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while uf[r] != r {
                r = uf[r];
            }
            let mut y = x;
            while uf[y] != r {
                let nx = uf[y];
                uf[y] = r;
                y = nx;
            }
            r
        }
        for a in 0..n {
            for b in 0..n {
                if m[self.color(a, b) as usize] {
                    let (ra, rb) = (find(&mut uf, a), find(&mut uf, b));
                    if ra != rb {
                        uf[ra.max(rb)] = ra.min(rb);
                    }
                }
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &p in &support {
            let r = find(&mut uf, p);
            groups.entry(r).or_default().push(p);
        }
        self.parabolic_from_classes(groups.into_values().collect())
    }

    /// rad(s): the largest equivalence e on the support of `s` with
    /// e·s = s·e = s. Points are equivalent iff they have the same out- and
    /// in-neighbourhoods in `s`.
    pub fn radical(&self, s: &Relation) -> Result<Parabolic> {
        let n = self.n();
        let support = self.support(s);
        let m = s.mask(self.rank());
        let key = |p: usize| -> (Vec<bool>, Vec<bool>) {
            (
                (0..n).map(|q| m[self.color(p, q) as usize]).collect(),
                (0..n).map(|q| m[self.color(q, p) as usize]).collect(),
            )
        };
        let mut groups: BTreeMap<(Vec<bool>, Vec<bool>), Vec<usize>> = BTreeMap::new();
        for &p in &support {
            groups.entry(key(p)).or_default().push(p);
        }
        let mut classes: Vec<Vec<usize>> = groups.into_values().collect();
        classes.sort();
        self.parabolic_from_classes(classes)
    }

    /// Interprets a relation as an equivalence on its support, if it is one.
    pub fn as_parabolic(&self, e: &Relation) -> Result<Parabolic> {
        let p = self.generated_equivalence(e)?;
        if p.relation != *e {
            return Err(Error::NotParabolic(format!(
                "relation {:?} is not an equivalence on its support",
                e.colors()
            )));
        }
        Ok(p)
    }

    /// The equivalence whose classes are given, checked to be a parabolic.
    pub fn parabolic(&self, classes: Vec<Vec<usize>>) -> Result<Parabolic> {
        let mut classes: Vec<Vec<usize>> = classes
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                c
            })
            .filter(|c| !c.is_empty())
            .collect();
        classes.sort();
        let n = self.n();
        let mut seen = vec![false; n];
        for &p in classes.iter().flatten() {
            if p >= n {
                return Err(Error::PointOutOfRange { point: p, n });
            }
            if seen[p] {
                return Err(Error::NotParabolic(format!("point {p} in two classes")));
            }
            seen[p] = true;
        }
        self.parabolic_from_classes(classes)
    }

    // ---- derived configurations ----

    /// X_{Ω/e}: class pairs colored by the set of colors meeting them.
    pub fn quotient(&self, e: &Parabolic) -> Result<CoherentConfig> {
        Ok(self.quotient_with_map(e)?.0)
    }

    /// Quotient plus, for each quotient color, the original colors it covers.
    pub fn quotient_with_map(&self, e: &Parabolic) -> Result<(CoherentConfig, Vec<Relation>)> {
        let n = self.n();
        if !e.is_full(n) {
            return Err(Error::NotParabolic(
                "quotient needs an equivalence on all of Ω".into(),
            ));
        }
        let k = e.classes.len();
        let mut sets: Vec<Vec<u32>> = vec![Vec::new(); k * k];
        for (i, ci) in e.classes.iter().enumerate() {
            for (j, cj) in e.classes.iter().enumerate() {
                let v = &mut sets[i * k + j];
                for &a in ci {
                    for &b in cj {
                        v.push(self.color(a, b));
                    }
                }
                v.sort_unstable();
                v.dedup();
            }
        }
        let mut names: BTreeMap<Vec<u32>, u32> = BTreeMap::new();
        for s in &sets {
            let next = names.len() as u32;
            names.entry(s.clone()).or_insert(next);
        }
        let labels: Vec<u32> = sets.iter().map(|s| names[s]).collect();
        let q = CoherentConfig::from_labels(k, &labels)?;
        let covers = (0..q.rank() as u32)
            .map(|c| {
                let (i, j) = q.representative(c);
                Relation::new(sets[i * k + j].clone())
            })
            .collect();
        Ok((q, covers))
    }

    /// X_Δ on the sorted point set Δ (points renumbered in order).
    pub fn restriction(&self, delta: &[usize]) -> Result<CoherentConfig> {
        Ok(self.restriction_with_map(delta)?.0)
    }

    /// Restriction plus the original color of each restricted color.
    pub fn restriction_with_map(&self, delta: &[usize]) -> Result<(CoherentConfig, Vec<u32>)> {
        let n = self.n();
        let mut pts = delta.to_vec();
        pts.sort_unstable();
        pts.dedup();
        if let Some(&p) = pts.iter().find(|&&p| p >= n) {
            return Err(Error::PointOutOfRange { point: p, n });
        }
        if pts.is_empty() {
            return Err(Error::NotHomogeneitySet("empty point set".into()));
        }
        let k = pts.len();
        let mut labels = Vec::with_capacity(k * k);
        for &a in &pts {
            for &b in &pts {
                labels.push(self.color(a, b));
            }
        }
        let col = Coloring::from_labels(k, &labels)?;
        let report = validate(&col);
        if !report.is_valid() {
            return Err(Error::NotHomogeneitySet(report.to_string()));
        }
        let r = CoherentConfig::from_valid(col.canonical());
        let orig = (0..r.rank() as u32)
            .map(|c| {
                let (i, j) = r.representative(c);
                self.color(pts[i], pts[j])
            })
            .collect();
        Ok((r, orig))
    }

    /// X_1 ⊗ X_2 on Ω_1 × Ω_2, point (a, b) numbered a·n_2 + b.
    pub fn tensor_product(&self, other: &CoherentConfig) -> CoherentConfig {
        let (n1, n2) = (self.n(), other.n());
        let r2 = other.rank() as u32;
        let n = n1 * n2;
        let mut labels = vec![0u32; n * n];
        for a1 in 0..n1 {
            for a2 in 0..n2 {
                for b1 in 0..n1 {
                    for b2 in 0..n2 {
                        labels[(a1 * n2 + a2) * n + b1 * n2 + b2] =
                            self.color(a1, b1) * r2 + other.color(a2, b2);
                    }
                }
            }
        }
        CoherentConfig::from_valid(Coloring::from_labels(n, &labels).unwrap().canonical())
    }

    /// Labels for refinement that individualize the points of `x`:
    /// diagonal entries carry the bitmask of tuple positions at that point.
    pub(crate) fn seeded_labels(&self, x: &[usize]) -> Vec<u64> {
        let n = self.n();
        let mut marks = vec![0u64; n];
        for (i, &p) in x.iter().enumerate() {
            marks[p] |= 1 << i;
        }
        let mut labels = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let mark = if a == b { marks[a] } else { 0 };
                labels.push(((self.color(a, b) as u64) << 32) | mark);
            }
        }
        labels
    }

    /// X_x: the smallest coherent configuration above X with every {x_i}
    /// a fiber. Depends only on the set of points of `x`.
    pub fn point_extension(&self, x: &[usize]) -> Result<CoherentConfig> {
        let n = self.n();
        if let Some(&p) = x.iter().find(|&&p| p >= n) {
            return Err(Error::PointOutOfRange { point: p, n });
        }
        let mut set = x.to_vec();
        set.sort_unstable();
        set.dedup();
        if set.len() > 32 {
            return Err(Error::CapExceeded {
                what: "distinct points in extension tuple",
                value: set.len(),
                cap: 32,
                flag: "--max-tuple",
            });
        }
        let n_labels: Vec<u64> = {
            let mut marks = vec![false; n];
            for &p in &set {
                marks[p] = true;
            }
            (0..n * n)
                .map(|i| {
                    let (a, b) = (i / n, i % n);
                    let mark = if a == b && marks[a] { a as u64 + 1 } else { 0 };
                    ((self.color(a, b) as u64) << 32) | mark
                })
                .collect()
        };
        CoherentConfig::closure(n, &n_labels)
    }

    /// For each color of `finer` (which must refine `self`), the color of
    /// `self` containing it.
    pub fn parent_map(&self, finer: &CoherentConfig) -> Result<Vec<u32>> {
        if !self.coloring.is_refined_by(&finer.coloring) {
            return Err(Error::Incompatible("not a refinement".into()));
        }
        Ok((0..finer.rank() as u32)
            .map(|c| {
                let (a, b) = finer.representative(c);
                self.color(a, b)
            })
            .collect())
    }

    /// Whether `self ≤ other`, i.e. `other` refines `self`.
    pub fn is_refined_by(&self, other: &CoherentConfig) -> bool {
        self.coloring.is_refined_by(&other.coloring)
    }

    /// Applies a point permutation: the image has color(f(a), f(b)) = color(a, b).
    pub fn permuted(&self, f: &[usize]) -> CoherentConfig {
        let n = self.n();
        let mut labels = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                labels[f[a] * n + f[b]] = self.color(a, b);
            }
        }
        CoherentConfig::from_valid(Coloring::from_labels(n, &labels).unwrap().canonical())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle5() -> CoherentConfig {
        let n = 5;
        let labels: Vec<u32> = (0..25)
            .map(|i| {
                let d = (i % n + n - i / n) % n;
                d.min(n - d) as u32
            })
            .collect();
        CoherentConfig::from_labels(n, &labels).unwrap()
    }

    #[test]
    fn trivial_numbers() {
        let t = CoherentConfig::trivial(5);
        assert_eq!(t.rank(), 2);
        assert_eq!(t.intersection_number(1, 1, 1).unwrap(), 3);
        assert_eq!(t.intersection_number(0, 1, 1).unwrap(), 1);
        assert!(t.is_homogeneous());
        assert!(t.intersection_number(0, 2, 1).is_err());
    }

    #[test]
    fn cycle_numbers_match_brute_force() {
        let c = cycle5();
        let d1 = c.color(0, 1);
        let d2 = c.color(0, 2);
        // common neighbours of 0 and 2 in C_5
        let brute = (0..5)
            .filter(|&g| {
                let adj = |a: usize, b: usize| matches!((b + 5 - a) % 5, 1 | 4);
                adj(0, g) && adj(g, 2)
            })
            .count();
        assert_eq!(c.intersection_number(d1, d1, d2).unwrap(), brute);
        assert_eq!(brute, 1);
    }

    #[test]
    fn one_point_extension_of_trivial() {
        let t = CoherentConfig::trivial(5);
        let e = t.point_extension(&[2]).unwrap();
        assert_eq!(e.rank(), 5);
        assert_eq!(e.fibers().len(), 2);
        assert_eq!(e.fibers()[0].points.len() + e.fibers()[1].points.len(), 5);
    }

    #[test]
    fn regular_extension_is_discrete() {
        let r = CoherentConfig::regular_cyclic(12);
        assert_eq!(r.rank(), 12);
        assert!(r.point_extension(&[3]).unwrap().is_discrete());
    }

    #[test]
    fn radical_and_generated() {
        let n = 12;
        let s_set = [1usize, 5, 7, 11];
        let labels: Vec<u32> = (0..n * n)
            .map(|i| {
                let d = (i % n + n - i / n) % n;
                if d == 0 {
                    0
                } else if s_set.contains(&d) {
                    1
                } else {
                    2
                }
            })
            .collect();
        // not coherent as a 3-partition; take its closure
        let lab64: Vec<u64> = labels.iter().map(|&x| x as u64).collect();
        let x = CoherentConfig::closure(n, &lab64).unwrap();
        let colors: Vec<u32> = s_set.iter().map(|&d| x.color(0, d)).collect();
        let s = Relation::new(colors);
        // check s is exactly the difference set
        for d in 0..n {
            assert_eq!(s.contains(x.color(0, d)), s_set.contains(&d));
        }
        let rad = x.radical(&s).unwrap();
        assert_eq!(rad.classes.len(), 6);
        assert!(rad.classes.iter().all(|c| c.len() == 2 && c[1] - c[0] == 6));
        let gen = x.generated_equivalence(&s).unwrap();
        assert_eq!(gen.classes.len(), 1);
        let id = Relation::single(x.color(0, 0));
        assert_eq!(x.generated_equivalence(&id).unwrap().relation, id);
        assert_eq!(x.radical(&id).unwrap().relation, id);
    }

    #[test]
    fn quotient_of_regular() {
        let r = CoherentConfig::regular_cyclic(12);
        let classes: Vec<Vec<usize>> = (0..4)
            .map(|i| (0..3).map(|j| i + 4 * j).collect())
            .collect();
        let e = r.parabolic(classes).unwrap();
        let q = r.quotient(&e).unwrap();
        assert_eq!(q, CoherentConfig::regular_cyclic(4));
        let id = r.parabolic((0..12).map(|p| vec![p]).collect()).unwrap();
        assert_eq!(r.quotient(&id).unwrap(), r);
    }

    #[test]
    fn tensor_ranks() {
        let t2 = CoherentConfig::trivial(2);
        let p = t2.tensor_product(&t2);
        assert_eq!((p.n(), p.rank()), (4, 4));
        assert!(p.validate().is_valid());
        let z = CoherentConfig::trivial(4).tensor_product(&CoherentConfig::regular_cyclic(5));
        assert_eq!((z.n(), z.rank()), (20, 10));
        assert!(z.validate().is_valid());
        let c = cycle5();
        assert_eq!(c.tensor_product(&CoherentConfig::trivial(1)), c);
    }

    #[test]
    fn restriction_of_trivial() {
        let t = CoherentConfig::trivial(6);
        let r = t.restriction(&[1, 3, 4]).unwrap();
        assert_eq!(r, CoherentConfig::trivial(3));
    }
}
