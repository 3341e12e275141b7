//! Raw color matrices on Ω×Ω and the coherence axioms.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// A partition of Ω×Ω given as a dense color matrix with contiguous ids.
///
/// Nothing beyond contiguity is guaranteed; use [`validate`] or
/// [`crate::CoherentConfig::new`] to check the coherence axioms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coloring {
    n: usize,
    colors: Vec<u32>,
    rank: usize,
}

impl Coloring {
    /// Builds a coloring from arbitrary labels. Labels are compacted to
    /// `0..rank` preserving their relative order.
    pub fn from_labels(n: usize, labels: &[u32]) -> Result<Self> {
        if labels.len() != n * n {
            return Err(Error::MatrixSize {
                got: labels.len(),
                expected: n * n,
            });
        }
        let mut distinct: Vec<u32> = labels.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        let remap: BTreeMap<u32, u32> = distinct
            .iter()
            .enumerate()
            .map(|(i, &l)| (l, i as u32))
            .collect();
        let colors = labels.iter().map(|l| remap[l]).collect();
        Ok(Coloring {
            n,
            colors,
            rank: distinct.len(),
        })
    }

    /// Builds a coloring from labels already known to be contiguous in `0..rank`.
    pub(crate) fn from_contiguous(n: usize, colors: Vec<u32>, rank: usize) -> Self {
        debug_assert_eq!(colors.len(), n * n);
        Coloring { n, colors, rank }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    #[inline]
    pub fn color(&self, a: usize, b: usize) -> u32 {
        self.colors[a * self.n + b]
    }

    pub fn matrix(&self) -> &[u32] {
        &self.colors
    }

    /// Color ids renumbered by (diagonal first, source fiber, target fiber,
    /// least pair). Equal partitions yield identical matrices.
    pub fn canonical(&self) -> Coloring {
        let n = self.n;
        let mut least: Vec<Option<usize>> = vec![None; self.rank];
        let mut has_diag = vec![false; self.rank];
        for (idx, &c) in self.colors.iter().enumerate() {
            let c = c as usize;
            if least[c].is_none() {
                least[c] = Some(idx);
            }
            if idx / n == idx % n {
                has_diag[c] = true;
            }
        }
        // fiber index of a point: order of its diagonal color by least point
        let mut diag_rank: BTreeMap<u32, usize> = BTreeMap::new();
        for a in 0..n {
            let d = self.color(a, a);
            let next = diag_rank.len();
            diag_rank.entry(d).or_insert(next);
        }
        let fiber_of = |a: usize| diag_rank[&self.color(a, a)];
        let mut order: Vec<usize> = (0..self.rank).collect();
        order.sort_by_key(|&c| {
            let idx = least[c].expect("contiguous colors are nonempty");
            let (a, b) = (idx / n, idx % n);
            (!has_diag[c], fiber_of(a), fiber_of(b), idx)
        });
        let mut relabel = vec![0u32; self.rank];
        for (new, &old) in order.iter().enumerate() {
            relabel[old] = new as u32;
        }
        Coloring {
            n,
            colors: self.colors.iter().map(|&c| relabel[c as usize]).collect(),
            rank: self.rank,
        }
    }

    /// Whether every class of `self` is a union of classes of `finer`.
    pub fn is_refined_by(&self, finer: &Coloring) -> bool {
        if self.n != finer.n {
            return false;
        }
        let mut parent: Vec<Option<u32>> = vec![None; finer.rank];
        for (&c, &f) in self.colors.iter().zip(&finer.colors) {
            match parent[f as usize] {
                None => parent[f as usize] = Some(c),
                Some(p) if p != c => return false,
                _ => {}
            }
        }
        true
    }
}

/// One violated coherence axiom with a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// A color contains both a diagonal and an off-diagonal pair.
    Diagonal {
        color: u32,
        diagonal: (usize, usize),
        off_diagonal: (usize, usize),
    },
    /// The transpose of a color class is not a color class.
    Converse {
        color: u32,
        pair: (usize, usize),
        other: (usize, usize),
    },
    /// `c_rs^t` differs between two pairs of `t`.
    IntersectionNumber {
        r: u32,
        s: u32,
        t: u32,
        first: (usize, usize),
        second: (usize, usize),
        counts: (usize, usize),
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Diagonal {
                color,
                diagonal,
                off_diagonal,
            } => write!(
                f,
                "CC1: color {color} holds diagonal {diagonal:?} and off-diagonal {off_diagonal:?}"
            ),
            Violation::Converse { color, pair, other } => write!(
                f,
                "CC2: color {color} holds {pair:?} and {other:?} but their transposes differ in color"
            ),
            Violation::IntersectionNumber {
                r,
                s,
                t,
                first,
                second,
                counts,
            } => write!(
                f,
                "CC3: c({r},{s};{t}) is {} at {first:?} but {} at {second:?}",
                counts.0, counts.1
            ),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid");
        }
        write!(f, "invalid ({} violations)", self.violations.len())?;
        for v in &self.violations {
            write!(f, "\n  {v}")?;
        }
        Ok(())
    }
}

/// Checks CC1-CC3, reporting one witness per violated axiom and color.
pub fn validate(c: &Coloring) -> ValidationReport {
    let n = c.n;
    let rank = c.rank;
    let mut violations = Vec::new();

    // CC1
    let mut diag_seen: Vec<Option<(usize, usize)>> = vec![None; rank];
    let mut off_seen: Vec<Option<(usize, usize)>> = vec![None; rank];
    for a in 0..n {
        for b in 0..n {
            let col = c.color(a, b) as usize;
            let slot = if a == b {
                &mut diag_seen
            } else {
                &mut off_seen
            };
            if slot[col].is_none() {
                slot[col] = Some((a, b));
            }
        }
    }
    for col in 0..rank {
        if let (Some(d), Some(o)) = (diag_seen[col], off_seen[col]) {
            violations.push(Violation::Diagonal {
                color: col as u32,
                diagonal: d,
                off_diagonal: o,
            });
        }
    }

    // CC2: within a color, transposed pairs must share one color
    let mut transpose_of: Vec<Option<(u32, (usize, usize))>> = vec![None; rank];
    let mut reported = vec![false; rank];
    for a in 0..n {
        for b in 0..n {
            let col = c.color(a, b) as usize;
            let tc = c.color(b, a);
            match transpose_of[col] {
                None => transpose_of[col] = Some((tc, (a, b))),
                Some((prev, first)) if prev != tc && !reported[col] => {
                    reported[col] = true;
                    violations.push(Violation::Converse {
                        color: col as u32,
                        pair: first,
                        other: (a, b),
                    });
                }
                _ => {}
            }
        }
    }

    // CC3: the multiset of (color(a,g), color(g,b)) must be constant on each color
    let mut reference: Vec<Option<((usize, usize), Vec<u64>)>> = vec![None; rank];
    let mut reported = vec![false; rank];
    let mut buf: Vec<u64> = Vec::with_capacity(n);
    for a in 0..n {
        for b in 0..n {
            let t = c.color(a, b) as usize;
            if reported[t] {
                continue;
            }
            buf.clear();
            for g in 0..n {
                buf.push(((c.color(a, g) as u64) << 32) | c.color(g, b) as u64);
            }
            buf.sort_unstable();
            match &reference[t] {
                None => reference[t] = Some(((a, b), buf.clone())),
                Some((first, sig)) if *sig != buf => {
                    reported[t] = true;
                    let (r, s, counts) = first_difference(sig, &buf);
                    violations.push(Violation::IntersectionNumber {
                        r,
                        s,
                        t: t as u32,
                        first: *first,
                        second: (a, b),
                        counts,
                    });
                }
                _ => {}
            }
        }
    }
    ValidationReport { violations }
}

fn count_sorted(v: &[u64]) -> BTreeMap<u64, usize> {
    let mut m = BTreeMap::new();
    for &x in v {
        *m.entry(x).or_insert(0) += 1;
    }
    m
}

fn first_difference(a: &[u64], b: &[u64]) -> (u32, u32, (usize, usize)) {
    let ca = count_sorted(a);
    let cb = count_sorted(b);
    for key in ca.keys().chain(cb.keys()) {
        let x = ca.get(key).copied().unwrap_or(0);
        let y = cb.get(key).copied().unwrap_or(0);
        if x != y {
            return ((key >> 32) as u32, (*key & 0xffff_ffff) as u32, (x, y));
        }
    }
    unreachable!("signatures differ")
}
