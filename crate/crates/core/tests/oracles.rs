//! Library results checked against brute-force computations that share no
//! code with the library.

use std::collections::HashSet;

use circulant_wl::arith::{gcd, units};
use circulant_wl::circulant::{
    is_normal, is_quasinormal, is_quasinormal_by_definition, singular_classes, singular_extension,
    CirculantScheme, NormalityOptions,
};
use circulant_wl::dimension::{all_schemes, enumerate_graphs, CorpusOptions};

/// Orbits of connection sets under unit multipliers, by Burnside's lemma:
/// the average number of subsets fixed by a unit, 2^(cycles on the
/// generators).
fn burnside(n: usize, directed: bool) -> usize {
    // generators: single elements, or the pairs {d, -d}
    let gens: Vec<usize> = if directed {
        (1..n).collect()
    } else {
        (1..=n / 2).collect()
    };
    let canon = |d: usize| if directed { d } else { d.min(n - d) };
    let us: Vec<usize> = (1..n.max(2)).filter(|&u| gcd(u, n) == 1).collect();
    let us = if n == 1 { vec![0] } else { us };
    let total: usize = us
        .iter()
        .map(|&u| {
            let mut seen = HashSet::new();
            let mut cycles = 0;
            for &g in &gens {
                if seen.contains(&g) {
                    continue;
                }
                cycles += 1;
                let mut h = g;
                while seen.insert(h) {
                    h = canon(h * u % n);
                }
            }
            1usize << cycles
        })
        .sum();
    total / us.len()
}

#[test]
fn graph_corpus_sizes_match_burnside() {
    let o = CorpusOptions::default();
    for n in 1..=16 {
        assert_eq!(
            enumerate_graphs(n, false, &o).unwrap().graphs.len(),
            burnside(n, false),
            "undirected n = {n}"
        );
    }
    for n in 1..=10 {
        assert_eq!(
            enumerate_graphs(n, true, &o).unwrap().graphs.len(),
            burnside(n, true),
            "directed n = {n}"
        );
    }
}

/// Whether a partition of Z_n (as a part index per element) is a Schur
/// ring: {0} is a part, the negative of a part is a part, and the number
/// of ways to write c = a + b with a ∈ A, b ∈ B depends only on the part
/// of c.
fn is_schur_partition(n: usize, part: &[usize]) -> bool {
    if (1..n).any(|d| part[d] == part[0]) {
        return false;
    }
    let k = part.iter().max().unwrap() + 1;
    let mut members = vec![Vec::new(); k];
    for (d, &p) in part.iter().enumerate() {
        members[p].push(d);
    }
    for m in &members {
        let neg = part[(n - m[0]) % n];
        if m.iter().any(|&d| part[(n - d) % n] != neg) {
            return false;
        }
    }
    for a in &members {
        for b in &members {
            let mut count = vec![0usize; n];
            for &x in a {
                for &y in b {
                    count[(x + y) % n] += 1;
                }
            }
            for c in &members {
                if c.iter().any(|&z| count[z] != count[c[0]]) {
                    return false;
                }
            }
        }
    }
    true
}

/// All set partitions of Z_n ∖ {0} as restricted growth strings, with 0
/// in a part of its own.
fn schur_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    fn go(n: usize, d: usize, part: &mut Vec<usize>, parts: usize, out: &mut Vec<Vec<Vec<usize>>>) {
        if d == n {
            if is_schur_partition(n, part) {
                let mut sets = vec![Vec::new(); parts];
                for (x, &p) in part.iter().enumerate() {
                    sets[p].push(x);
                }
                sets.sort();
                out.push(sets);
            }
            return;
        }
        for p in 1..=parts {
            part.push(p);
            go(n, d + 1, part, parts.max(p + 1), out);
            part.pop();
        }
    }
    let mut out = Vec::new();
    go(n, 1, &mut vec![0], 1, &mut out);
    out
}

#[test]
fn scheme_enumeration_matches_partition_filter() {
    for n in 1..=12 {
        let mut expected = schur_partitions(n);
        expected.sort();
        let mut got: Vec<Vec<Vec<usize>>> = all_schemes(n, &CorpusOptions::default())
            .unwrap()
            .iter()
            .map(|x| {
                let mut s = x.sets().to_vec();
                s.sort();
                s
            })
            .collect();
        got.sort();
        assert_eq!(got, expected, "n = {n}");
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    fn heap(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(p.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, p, out);
            let j = if k % 2 == 0 { i } else { 0 };
            p.swap(j, k - 1);
        }
    }
    heap(n, &mut p, &mut out);
    out
}

/// Aut(X) by trying every permutation; normal iff every automorphism
/// fixing 0 is a unit multiplication.
fn normal_by_brute_force(x: &CirculantScheme) -> bool {
    let n = x.n();
    let color = |a: usize, b: usize| x.set_of((b + n - a) % n);
    permutations(n)
        .into_iter()
        .filter(|f| f[0] == 0)
        .filter(|f| (0..n).all(|a| (0..n).all(|b| color(a, b) == color(f[a], f[b]))))
        .all(|f| units(n).iter().any(|&u| (0..n).all(|d| f[d] == u * d % n)))
}

#[test]
fn normality_matches_brute_force_automorphisms() {
    let o = NormalityOptions::default();
    for n in 1..=8 {
        for x in all_schemes(n, &CorpusOptions::default()).unwrap() {
            assert_eq!(
                is_normal(&x, &o).unwrap(),
                normal_by_brute_force(&x),
                "{:?}",
                x.sets()
            );
        }
    }
}

#[test]
fn quasinormality_read_off_singular_classes_matches_definition() {
    let o = NormalityOptions::default();
    for n in 1..=16 {
        for x in all_schemes(n, &CorpusOptions::default()).unwrap() {
            assert_eq!(
                is_quasinormal(&x),
                is_quasinormal_by_definition(&x, &o).unwrap(),
                "{:?}",
                x.sets()
            );
        }
    }
}

/// Y refines X: every basis set of Y lies inside one of X.
fn refines(y: &CirculantScheme, x: &CirculantScheme) -> bool {
    y.sets()
        .iter()
        .all(|t| t.iter().all(|&d| x.set_of(d) == x.set_of(t[0])))
}

#[test]
fn singular_extension_is_the_least_scheme_regular_on_the_section() {
    let mut checked = 0;
    for n in 1..=12 {
        let corpus = all_schemes(n, &CorpusOptions::default()).unwrap();
        for x in &corpus {
            for c in singular_classes(x).into_iter().filter(|c| c.is_singular) {
                let key = c.smallest;
                let star = singular_extension(x, key).unwrap();
                let candidates: Vec<&CirculantScheme> = corpus
                    .iter()
                    .filter(|y| refines(y, x))
                    .filter(|y| y.section_scheme(key).is_ok_and(|s| s.is_regular()))
                    .collect();
                assert!(candidates.contains(&&star), "{:?}", x.sets());
                for y in candidates {
                    assert!(refines(y, &star), "{:?} not above X*", y.sets());
                }
                checked += 1;
            }
        }
    }
    assert!(checked > 0);
}
