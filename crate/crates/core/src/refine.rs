//! Two-dimensional Weisfeiler-Leman stabilization of pair colorings.
//!
//! Several colorings can be refined side by side with a shared color
//! dictionary, so that equal ids mean equal refinement history. This is
//! what decides tuple extensions and WL_2-equivalence.

use std::collections::HashMap;

/// Result of a joint refinement: one matrix per side, ids shared.
#[derive(Clone, Debug)]
pub(crate) struct Refined {
    pub sides: Vec<Vec<u32>>,
    pub rank: usize,
}

fn intern<K: std::hash::Hash + Eq>(dict: &mut HashMap<K, u32>, key: K) -> u32 {
    let next = dict.len() as u32;
    *dict.entry(key).or_insert(next)
}

/// Initial colors: (label(a,b), label(b,a), a == b), named jointly.
fn initial(n: usize, sides: &[&[u64]]) -> (Vec<Vec<u32>>, usize) {
    let mut dict: HashMap<(u64, u64, bool), u32> = HashMap::new();
    let out = sides
        .iter()
        .map(|lab| {
            let mut v = Vec::with_capacity(n * n);
            for a in 0..n {
                for b in 0..n {
                    v.push(intern(&mut dict, (lab[a * n + b], lab[b * n + a], a == b)));
                }
            }
            v
        })
        .collect();
    (out, dict.len())
}

fn histogram(c: &[u32], rank: usize) -> Vec<usize> {
    let mut h = vec![0usize; rank];
    for &x in c {
        h[x as usize] += 1;
    }
    h
}

/// Refines all sides to their joint stable coloring. Returns `None` as soon
/// as the color histograms of two sides differ, which means the seeds are
/// not equivalent.
pub(crate) fn refine_joint(n: usize, sides: &[&[u64]]) -> Option<Refined> {
    let (mut cur, mut rank) = initial(n, sides);
    if !same_histograms(&cur, rank) {
        return None;
    }
    let mut buf: Vec<u64> = Vec::with_capacity(n);
    loop {
        let mut dict: HashMap<(u32, Vec<u64>), u32> = HashMap::new();
        let mut next = Vec::with_capacity(cur.len());
        for c in &cur {
            let mut v = Vec::with_capacity(n * n);
            for a in 0..n {
                for b in 0..n {
                    buf.clear();
                    for g in 0..n {
                        buf.push(((c[a * n + g] as u64) << 32) | c[g * n + b] as u64);
                    }
                    buf.sort_unstable();
                    v.push(intern(&mut dict, (c[a * n + b], buf.clone())));
                }
            }
            next.push(v);
        }
        let new_rank = dict.len();
        if !same_histograms(&next, new_rank) {
            return None;
        }
        if new_rank == rank {
            return Some(Refined { sides: cur, rank });
        }
        cur = next;
        rank = new_rank;
    }
}

fn same_histograms(sides: &[Vec<u32>], rank: usize) -> bool {
    let mut it = sides.iter();
    let Some(first) = it.next() else {
        return true;
    };
    let h = histogram(first, rank);
    it.all(|s| histogram(s, rank) == h)
}

/// Stable coloring of a single labelled matrix; ids are contiguous.
pub(crate) fn refine(n: usize, labels: &[u64]) -> (Vec<u32>, usize) {
    let r = refine_joint(n, &[labels]).expect("single side cannot mismatch");
    let mut sides = r.sides;
    (sides.pop().unwrap(), r.rank)
}
