//! Exhaustive corpora of circulant graphs and circulant schemes.

use std::collections::{BTreeSet, HashMap, HashSet};

use rayon::prelude::*;

use crate::algebra::{enumerate_algebraic_isos, find_isomorphism};
use crate::arith::units;
use crate::circulant::{circulant_closure_labels, CirculantScheme};
use crate::error::{Error, Result};

/// Degree caps for corpus generation.
#[derive(Clone, Debug)]
pub struct CorpusOptions {
    pub max_n_undirected: usize,
    pub max_n_directed: usize,
    pub max_n_schemes: usize,
    /// Skip candidate basis sets that some unit multiplier maps onto a set
    /// meeting them without being equal. Sound by Schur's multiplier
    /// theorem; switch off to enumerate without relying on it.
    pub multiplier_pruning: bool,
}

impl Default for CorpusOptions {
    fn default() -> Self {
        CorpusOptions {
            max_n_undirected: 20,
            max_n_directed: 12,
            max_n_schemes: 16,
            multiplier_pruning: true,
        }
    }
}

/// Circulant graphs and schemes of one order, one representative per
/// Cayley class (orbit under unit multipliers).
#[derive(Clone, Debug)]
pub struct Corpus {
    pub n: usize,
    pub directed: bool,
    /// Connection sets, ordered by size and then lexicographically.
    pub graphs: Vec<Vec<usize>>,
    /// Schemes; for a graph corpus these are the distinct closures.
    pub schemes: Vec<CirculantScheme>,
    /// Index into `schemes` of the closure of each graph.
    pub graph_scheme: Vec<usize>,
}

fn mask_image(mask: u64, u: usize, n: usize) -> u64 {
    let mut out = 0u64;
    let mut m = mask;
    while m != 0 {
        let d = m.trailing_zeros() as usize;
        out |= 1 << ((u * d) % n);
        m &= m - 1;
    }
    out
}

fn mask_to_set(mask: u64) -> Vec<usize> {
    (0..64).filter(|&d| mask >> d & 1 == 1).collect()
}

/// Image of a connection-set mask under unit multipliers whose element
/// list is lexicographically least.
pub fn cayley_canonical_mask(mask: u64, n: usize) -> u64 {
    units(n)
        .into_iter()
        .map(|u| mask_image(mask, u, n))
        .min_by_key(|&m| mask_to_set(m))
        .unwrap_or(mask)
}

/// Number of distinct images of a connection set under unit multipliers.
pub fn cayley_class_size(connection: &[usize], n: usize) -> usize {
    let mask = connection.iter().fold(0u64, |m, &d| m | 1 << d);
    let images: HashSet<u64> = units(n)
        .into_iter()
        .map(|u| mask_image(mask, u, n))
        .collect();
    images.len()
}

/// Dedup schemes by Cayley class, keeping the least member, sorted.
fn cayley_dedup(schemes: impl IntoIterator<Item = CirculantScheme>) -> Vec<CirculantScheme> {
    let set: BTreeSet<CirculantScheme> =
        schemes.into_iter().map(|s| s.cayley_canonical()).collect();
    set.into_iter().collect()
}

/// All circulant graphs of order n up to Cayley isomorphism.
pub fn enumerate_graphs(n: usize, directed: bool, opts: &CorpusOptions) -> Result<Corpus> {
    let cap = if directed {
        opts.max_n_directed
    } else {
        opts.max_n_undirected
    };
    if n > cap || n > 63 {
        return Err(Error::CapExceeded {
            what: if directed {
                "directed graph corpus order"
            } else {
                "undirected graph corpus order"
            },
            value: n,
            cap,
            flag: "--max-n",
        });
    }
    if n == 0 {
        return Err(Error::Invariant("order must be positive".into()));
    }
    // generators of the subset lattice: single elements, or {d, -d}
    let gens: Vec<u64> = if directed {
        (1..n).map(|d| 1u64 << d).collect()
    } else {
        (1..=n / 2)
            .map(|d| (1u64 << d) | (1u64 << (n - d)))
            .collect()
    };
    let masks: Vec<u64> = (0u64..1 << gens.len())
        .into_par_iter()
        .filter_map(|bits| {
            let mask = (0..gens.len())
                .filter(|&i| bits >> i & 1 == 1)
                .fold(0u64, |m, i| m | gens[i]);
            (cayley_canonical_mask(mask, n) == mask).then_some(mask)
        })
        .collect();
    let mut graphs: Vec<Vec<usize>> = masks.iter().map(|&m| mask_to_set(m)).collect();
    graphs.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    let closures: Vec<CirculantScheme> = graphs
        .par_iter()
        .map(|g| {
            CirculantScheme::of_graph(n, g)
                .expect("connection set inside Z_n")
                .cayley_canonical()
        })
        .collect();
    let schemes = cayley_dedup(closures.iter().cloned());
    let index: HashMap<&CirculantScheme, usize> =
        schemes.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let graph_scheme = closures.iter().map(|c| index[c]).collect();
    Ok(Corpus {
        n,
        directed,
        graphs,
        schemes,
        graph_scheme,
    })
}

/// Whether some unit multiplier maps a candidate basis set onto a set that
/// meets it without being equal; such a set is never a basis set.
fn breaks_multiplier_rule(set_mask: u64, n: usize, unit_list: &[usize]) -> bool {
    unit_list.iter().any(|&u| {
        let img = mask_image(set_mask, u, n);
        img != set_mask && img & set_mask != 0
    })
}

/// Schemes obtained from `x` by splitting one basis set T into A ∋ min T
/// and T \ A, then closing.
fn children(x: &CirculantScheme, unit_list: &[usize], prune: bool) -> Vec<CirculantScheme> {
    let n = x.n();
    let mut out = Vec::new();
    let base: Vec<u64> = x.labels().iter().map(|&c| c as u64).collect();
    let fresh = x.rank() as u64;
    for t in x.sets().iter().filter(|t| t.len() >= 2) {
        let rest = &t[1..];
        for bits in 0u64..(1 << rest.len()) - 1 {
            let mut a_mask = 1u64 << t[0];
            for (i, &d) in rest.iter().enumerate() {
                if bits >> i & 1 == 1 {
                    a_mask |= 1 << d;
                }
            }
            if prune && breaks_multiplier_rule(a_mask, n, unit_list) {
                continue;
            }
            let mut labels = base.clone();
            for d in mask_to_set(a_mask) {
                labels[d] = fresh;
            }
            let closed = circulant_closure_labels(n, &labels);
            out.push(CirculantScheme::from_labels_unchecked(n, &closed));
        }
    }
    out
}

/// All circulant schemes over Z_n, sorted. Every scheme other than the
/// trivial one arises from a maximal proper subscheme by splitting off
/// one of its own basis sets and closing, so a breadth-first search from
/// the trivial scheme reaches all of them.
pub fn all_schemes(n: usize, opts: &CorpusOptions) -> Result<Vec<CirculantScheme>> {
    if n > opts.max_n_schemes || n > 63 {
        return Err(Error::CapExceeded {
            what: "scheme corpus order",
            value: n,
            cap: opts.max_n_schemes,
            flag: "--max-n",
        });
    }
    if n == 0 {
        return Err(Error::Invariant("order must be positive".into()));
    }
    let unit_list = units(n);
    let start = CirculantScheme::trivial(n);
    let mut seen: HashSet<CirculantScheme> = HashSet::from([start.clone()]);
    let mut frontier = vec![start];
    while !frontier.is_empty() {
        let found: Vec<CirculantScheme> = frontier
            .par_iter()
            .flat_map_iter(|x| children(x, &unit_list, opts.multiplier_pruning))
            .collect();
        let mut next = Vec::new();
        for s in found {
            if seen.insert(s.clone()) {
                next.push(s);
            }
        }
        next.sort();
        frontier = next;
    }
    let mut all: Vec<CirculantScheme> = seen.into_iter().collect();
    all.sort();
    Ok(all)
}

/// All circulant schemes over Z_n up to Cayley isomorphism.
pub fn enumerate_schemes(n: usize, opts: &CorpusOptions) -> Result<Corpus> {
    let schemes = cayley_dedup(all_schemes(n, opts)?);
    Ok(Corpus {
        n,
        directed: false,
        graphs: Vec::new(),
        schemes,
        graph_scheme: Vec::new(),
    })
}

impl Corpus {
    /// Pairs of schemes in different Cayley classes that are nevertheless
    /// combinatorially isomorphic.
    pub fn isomorphic_pairs(&self) -> Vec<(usize, usize)> {
        let k = self.schemes.len();
        let pairs: Vec<(usize, usize)> = (0..k)
            .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
            .collect();
        pairs
            .into_par_iter()
            .filter(|&(i, j)| {
                let (x, y) = (self.schemes[i].config(), self.schemes[j].config());
                x.rank() == y.rank()
                    && enumerate_algebraic_isos(x, y)
                        .iter()
                        .any(|phi| find_isomorphism(x, y, phi).is_some())
            })
            .collect()
    }
}
