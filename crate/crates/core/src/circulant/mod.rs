//! Circulant schemes over Z_n: basis connection sets, X-groups, sections,
//! normality, singular classes, base tuples and multipliers.

mod base;
mod normal;
mod sections;
mod singular;

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use crate::arith;
use crate::coloring::Coloring;
use crate::config::CoherentConfig;
use crate::error::{Error, Result};

pub use base::{
    base_tuple, check_decomposition, extract_multiplier, is_induced_by_isomorphism,
    section_discreteness_check, DecompositionReport, DiscretenessReport, Multiplier,
};
pub use normal::{is_normal, is_quasinormal, is_quasinormal_by_definition, NormalityOptions};
pub use sections::{ProjectiveClasses, Section, SectionKey};
pub use singular::{
    extend_algebraic_automorphism, singular_classes, singular_extension, ExtensionCheck,
    SingularClassReport,
};

/// A circulant scheme: a partition of Z_n into basis connection sets whose
/// Cayley coloring is coherent. Sets are ordered by least element, so
/// `{0}` comes first and set index equals color id in [`Self::config`].
pub struct CirculantScheme {
    n: usize,
    sets: Vec<Vec<usize>>,
    class_of: Vec<u32>,
    cc: OnceLock<CoherentConfig>,
}

impl Clone for CirculantScheme {
    fn clone(&self) -> Self {
        CirculantScheme {
            n: self.n,
            sets: self.sets.clone(),
            class_of: self.class_of.clone(),
            cc: OnceLock::new(),
        }
    }
}

impl PartialEq for CirculantScheme {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.class_of == other.class_of
    }
}

impl Eq for CirculantScheme {}

impl std::hash::Hash for CirculantScheme {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.class_of.hash(state);
    }
}

impl PartialOrd for CirculantScheme {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CirculantScheme {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.n, &self.sets).cmp(&(other.n, &other.sets))
    }
}

impl fmt::Debug for CirculantScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CirculantScheme(n={}, sets={:?})", self.n, self.sets)
    }
}

/// Class ids by least element from an arbitrary labelling of Z_n.
fn normalize(n: usize, labels: &[u32]) -> (Vec<Vec<usize>>, Vec<u32>) {
    let mut first: HashMap<u32, u32> = HashMap::new();
    let mut sets: Vec<Vec<usize>> = Vec::new();
    let mut class_of = vec![0u32; n];
    for d in 0..n {
        let id = *first.entry(labels[d]).or_insert_with(|| {
            sets.push(Vec::new());
            (sets.len() - 1) as u32
        });
        sets[id as usize].push(d);
        class_of[d] = id;
    }
    (sets, class_of)
}

/// Stable refinement of a labelling of Z_n under the Cayley version of
/// 2-dim WL. The result is a partition into basis sets of a scheme.
pub(crate) fn circulant_closure_labels(n: usize, init: &[u64]) -> Vec<u32> {
    let mut dict: HashMap<(u64, u64, bool), u32> = HashMap::new();
    let mut cur: Vec<u32> = (0..n)
        .map(|d| {
            let key = (init[d], init[(n - d) % n], d == 0);
            let next = dict.len() as u32;
            *dict.entry(key).or_insert(next)
        })
        .collect();
    let mut rank = dict.len();
    let mut buf: Vec<u64> = Vec::with_capacity(n);
    loop {
        let mut dict: HashMap<(u32, Vec<u64>), u32> = HashMap::new();
        let next: Vec<u32> = (0..n)
            .map(|d| {
                buf.clear();
                for g in 0..n {
                    buf.push(((cur[g] as u64) << 32) | cur[(d + n - g) % n] as u64);
                }
                buf.sort_unstable();
                let id = dict.len() as u32;
                *dict.entry((cur[d], buf.clone())).or_insert(id)
            })
            .collect();
        if dict.len() == rank {
            return cur;
        }
        rank = dict.len();
        cur = next;
    }
}

impl CirculantScheme {
    /// Wraps a partition known to be a scheme, in any set order.
    pub(crate) fn from_labels_unchecked(n: usize, labels: &[u32]) -> Self {
        let (sets, class_of) = normalize(n, labels);
        CirculantScheme {
            n,
            sets,
            class_of,
            cc: OnceLock::new(),
        }
    }

    /// The smallest circulant scheme whose partition refines the labelling.
    pub fn closure(n: usize, labels: &[u64]) -> Result<Self> {
        if labels.len() != n || n == 0 {
            return Err(Error::MatrixSize {
                got: labels.len(),
                expected: n,
            });
        }
        Ok(Self::from_labels_unchecked(
            n,
            &circulant_closure_labels(n, labels),
        ))
    }

    /// Builds the scheme for a partition of Z_n. Returns the scheme and
    /// whether the partition itself was coherent; otherwise the scheme is
    /// its closure. A part holding 0 together with other elements is split.
    pub fn from_connection_partition(n: usize, parts: &[Vec<usize>]) -> Result<(Self, bool)> {
        if n == 0 {
            return Err(Error::NotPartition {
                n,
                reason: "empty group".into(),
            });
        }
        let mut label = vec![u64::MAX; n];
        for (i, p) in parts.iter().enumerate() {
            if p.is_empty() {
                return Err(Error::NotPartition {
                    n,
                    reason: format!("part {i} is empty"),
                });
            }
            for &d in p {
                if d >= n {
                    return Err(Error::NotPartition {
                        n,
                        reason: format!("element {d} outside Z_{n}"),
                    });
                }
                if label[d] != u64::MAX {
                    return Err(Error::NotPartition {
                        n,
                        reason: format!("element {d} in two parts"),
                    });
                }
                label[d] = i as u64 + 1;
            }
        }
        if let Some(d) = label.iter().position(|&l| l == u64::MAX) {
            return Err(Error::NotPartition {
                n,
                reason: format!("element {d} missing"),
            });
        }
        let zero_alone = parts.iter().any(|p| p.len() == 1 && p[0] == 0);
        label[0] = 0;
        let given =
            Self::from_labels_unchecked(n, &label.iter().map(|&l| l as u32).collect::<Vec<_>>());
        let closed = Self::closure(n, &label)?;
        let coherent = zero_alone && closed == given;
        Ok((closed, coherent))
    }

    /// Reads a translation-invariant coherent configuration on Z_n.
    pub fn from_config(cc: &CoherentConfig) -> Result<Self> {
        let n = cc.n();
        for a in 0..n {
            for b in 0..n {
                if cc.color(a, b) != cc.color(0, (b + n - a) % n) {
                    return Err(Error::NotCoherent(format!(
                        "color of ({a},{b}) is not determined by the difference"
                    )));
                }
            }
        }
        let labels: Vec<u32> = (0..n).map(|d| cc.color(0, d)).collect();
        Ok(Self::from_labels_unchecked(n, &labels))
    }

    pub fn trivial(n: usize) -> Self {
        let labels: Vec<u32> = (0..n).map(|d| u32::from(d != 0)).collect();
        Self::from_labels_unchecked(n, &labels)
    }

    pub fn regular(n: usize) -> Self {
        let labels: Vec<u32> = (0..n as u32).collect();
        Self::from_labels_unchecked(n, &labels)
    }

    /// Scheme of the circulant graph Cay(Z_n, S).
    pub fn of_graph(n: usize, connection: &[usize]) -> Result<Self> {
        let mut labels = vec![0u64; n];
        for &s in connection {
            if s >= n {
                return Err(Error::PointOutOfRange { point: s, n });
            }
            labels[s] = 1;
        }
        Self::closure(n, &labels)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.sets.len()
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    /// Index of the basis set containing `d`.
    pub fn set_of(&self, d: usize) -> u32 {
        self.class_of[d % self.n]
    }

    pub fn labels(&self) -> &[u32] {
        &self.class_of
    }

    pub fn is_trivial(&self) -> bool {
        self.rank() <= 2
    }

    pub fn is_regular(&self) -> bool {
        self.rank() == self.n
    }

    /// The scheme as a coherent configuration; color ids equal set indices.
    pub fn config(&self) -> &CoherentConfig {
        self.cc.get_or_init(|| {
            let n = self.n;
            let labels: Vec<u32> = (0..n * n)
                .map(|i| self.class_of[(i % n + n - i / n) % n])
                .collect();
            let c = CoherentConfig::from_valid_canonical(
                Coloring::from_labels(n, &labels).expect("n×n labels"),
            );
            debug_assert!((0..n).all(|d| c.color(0, d) == self.class_of[d]));
            c
        })
    }

    /// Image partition under d ↦ u·d.
    pub fn multiplied(&self, u: usize) -> Self {
        let n = self.n;
        let mut labels = vec![0u32; n];
        for d in 0..n {
            labels[(u * d) % n] = self.class_of[d];
        }
        Self::from_labels_unchecked(n, &labels)
    }

    /// Whether d ↦ u·d maps every basis set onto a basis set.
    pub fn multiplier_permutes_sets(&self, u: usize) -> bool {
        let n = self.n;
        self.sets.iter().all(|t| {
            let c = self.class_of[(u * t[0]) % n];
            t.iter().all(|&d| self.class_of[(u * d) % n] == c)
        }) && arith::gcd(u, n) == 1
    }

    /// Whether d ↦ u·d fixes every basis set.
    pub fn multiplier_fixes_sets(&self, u: usize) -> bool {
        let n = self.n;
        (0..n).all(|d| self.class_of[(u * d) % n] == self.class_of[d])
    }

    /// Least Cayley-equivalent scheme (under all unit multipliers).
    pub fn cayley_canonical(&self) -> Self {
        arith::units(self.n)
            .into_iter()
            .map(|u| self.multiplied(u))
            .min()
            .expect("units nonempty")
    }

    /// Whether the subgroup of order `d` is a union of basis sets.
    pub fn is_xgroup(&self, d: usize) -> bool {
        let n = self.n;
        if d == 0 || n % d != 0 {
            return false;
        }
        let step = n / d;
        let mut inside = vec![false; self.rank()];
        let mut outside = vec![false; self.rank()];
        for x in 0..n {
            if x % step == 0 {
                inside[self.class_of[x] as usize] = true;
            } else {
                outside[self.class_of[x] as usize] = true;
            }
        }
        !(0..self.rank()).any(|c| inside[c] && outside[c])
    }

    /// Orders of all X-groups, ascending.
    pub fn xgroups(&self) -> Vec<usize> {
        arith::divisors(self.n)
            .into_iter()
            .filter(|&d| self.is_xgroup(d))
            .collect()
    }

    /// Order of the radical: the stabilizer {h : T + h = T} of the basis set
    /// containing a generator.
    pub fn radical_order(&self) -> usize {
        let n = self.n;
        if n == 1 {
            return 1;
        }
        let c = self.class_of[1];
        let t = &self.sets[c as usize];
        (0..n)
            .filter(|&h| t.iter().all(|&d| self.class_of[(d + h) % n] == c))
            .count()
    }

    /// Scheme-file text: "n=<int>" then "C: a,b,c" per basis set.
    pub fn to_file_string(&self) -> String {
        let mut s = format!("n={}\n", self.n);
        for t in &self.sets {
            let items: Vec<String> = t.iter().map(|d| d.to_string()).collect();
            s.push_str("C: ");
            s.push_str(&items.join(","));
            s.push('\n');
        }
        s
    }

    /// Stabilizer of a basis set under translation, as a subgroup order.
    pub fn set_stabilizer_order(&self, set: usize) -> usize {
        let n = self.n;
        let c = set as u32;
        let t = &self.sets[set];
        (0..n)
            .filter(|&h| t.iter().all(|&d| self.class_of[(d + h) % n] == c))
            .count()
    }
}

impl CoherentConfig {
    /// Canonicalizes a coloring that is known to be coherent.
    pub(crate) fn from_valid_canonical(c: Coloring) -> CoherentConfig {
        CoherentConfig::from_valid(c.canonical())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_index_matches_color() {
        let x = CirculantScheme::of_graph(12, &[1, 11, 4, 8]).unwrap();
        let c = x.config();
        assert!(c.validate().is_valid());
        for d in 0..12 {
            assert_eq!(c.color(0, d), x.set_of(d));
        }
    }

    #[test]
    fn closure_agrees_with_general_refinement() {
        for n in 2..=12 {
            for mask in [0b10u64, 0b110, 0b1010, 0b10010] {
                let conn: Vec<usize> = (1..n).filter(|&d| mask >> (d % 5) & 1 == 1).collect();
                let x = CirculantScheme::of_graph(n, &conn).unwrap();
                let g = crate::wl::ArcColoredGraph::circulant(n, &conn).unwrap();
                assert_eq!(x.config(), &crate::wl::wl_closure(&g));
            }
        }
    }

    #[test]
    fn partition_examples() {
        let parts = vec![vec![0], (1..12).collect()];
        let (x, ok) = CirculantScheme::from_connection_partition(12, &parts).unwrap();
        assert!(ok && x == CirculantScheme::trivial(12));
        let parts: Vec<Vec<usize>> = (0..7).map(|d| vec![d]).collect();
        let (x, ok) = CirculantScheme::from_connection_partition(7, &parts).unwrap();
        assert!(ok && x.is_regular());
        assert!(
            CirculantScheme::from_connection_partition(4, &[vec![0, 1], vec![1, 2, 3]]).is_err()
        );
    }

    #[test]
    fn xgroups_of_examples() {
        assert_eq!(CirculantScheme::trivial(12).xgroups(), vec![1, 12]);
        assert_eq!(
            CirculantScheme::regular(12).xgroups(),
            vec![1, 2, 3, 4, 6, 12]
        );
    }
}
