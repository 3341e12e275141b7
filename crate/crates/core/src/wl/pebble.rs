//! Exact solver for the bijective (m+1)-pebble game C_{m+1}(φ).
//!
//! Positions are pairs of m-tuples. A position survives while its atomic
//! types agree through φ and Duplicator can answer every pebble move with
//! a bijection keeping all successor positions alive.

use crate::algebra::AlgebraicIso;
use crate::config::CoherentConfig;
use crate::error::{Error, Result};

/// Limits for the game solver.
#[derive(Clone, Debug)]
pub struct OracleOptions {
    pub max_n: usize,
    pub max_m: usize,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions { max_n: 8, max_m: 3 }
    }
}

/// Winning positions (x, x') ∈ Ω^m × Ω'^m for Duplicator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameTable {
    n: usize,
    m: usize,
    winning: Vec<bool>,
}

impl GameTable {
    pub fn m(&self) -> usize {
        self.m
    }

    fn positions(&self) -> usize {
        self.n.pow(self.m as u32)
    }

    fn index(&self, x: &[usize]) -> usize {
        x.iter().fold(0, |acc, &p| acc * self.n + p)
    }

    pub fn is_winning(&self, x: &[usize], x_prime: &[usize]) -> bool {
        let np = self.positions();
        self.winning[self.index(x) * np + self.index(x_prime)]
    }

    pub fn winning_count(&self) -> usize {
        self.winning.iter().filter(|&&w| w).count()
    }

    /// Every tuple on either side takes part in some winning position.
    pub fn has_full_support(&self) -> bool {
        let np = self.positions();
        let left = (0..np).all(|i| (0..np).any(|j| self.winning[i * np + j]));
        let right = (0..np).all(|j| (0..np).any(|i| self.winning[i * np + j]));
        left && right
    }

    /// Whether a bijection Ω^m → Ω'^m inside the winning set exists.
    pub fn has_perfect_matching(&self) -> bool {
        let np = self.positions();
        let adj: Vec<Vec<usize>> = (0..np)
            .map(|i| (0..np).filter(|&j| self.winning[i * np + j]).collect())
            .collect();
        perfect_matching(np, &adj)
    }

    /// The table with sides swapped.
    pub fn transposed(&self) -> GameTable {
        let np = self.positions();
        let mut w = vec![false; np * np];
        for i in 0..np {
            for j in 0..np {
                w[j * np + i] = self.winning[i * np + j];
            }
        }
        GameTable {
            n: self.n,
            m: self.m,
            winning: w,
        }
    }
}

fn perfect_matching(k: usize, adj: &[Vec<usize>]) -> bool {
    let mut match_r: Vec<usize> = vec![usize::MAX; k];
    fn augment(u: usize, adj: &[Vec<usize>], seen: &mut [bool], match_r: &mut [usize]) -> bool {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                if match_r[v] == usize::MAX || augment(match_r[v], adj, seen, match_r) {
                    match_r[v] = u;
                    return true;
                }
            }
        }
        false
    }
    let mut seen = vec![false; k];
    for u in 0..k {
        seen.iter_mut().for_each(|s| *s = false);
        if !augment(u, adj, &mut seen, &mut match_r) {
            return false;
        }
    }
    true
}

/// Greatest fixpoint of the winning condition of C_{m+1}(φ).
pub fn pebble_game_oracle(
    x: &CoherentConfig,
    y: &CoherentConfig,
    phi: &AlgebraicIso,
    m: usize,
    opts: &OracleOptions,
) -> Result<GameTable> {
    let n = x.n();
    if n > opts.max_n {
        return Err(Error::CapExceeded {
            what: "oracle degree n",
            value: n,
            cap: opts.max_n,
            flag: "--oracle-max-n",
        });
    }
    if m == 0 || m > opts.max_m {
        return Err(Error::CapExceeded {
            what: "oracle arity m",
            value: m,
            cap: opts.max_m,
            flag: "--oracle-max-m",
        });
    }
    if y.n() != n || phi.map.len() != x.rank() || y.rank() != x.rank() {
        return Err(Error::Incompatible("degrees or ranks differ".into()));
    }
    let np = n.pow(m as u32);
    let pw: Vec<usize> = (0..m).map(|i| n.pow((m - 1 - i) as u32)).collect();
    let digits = |mut idx: usize| {
        let mut t = vec![0usize; m];
        for i in (0..m).rev() {
            t[i] = idx % n;
            idx /= n;
        }
        t
    };
    let tuples: Vec<Vec<usize>> = (0..np).map(digits).collect();
    let mut win = vec![false; np * np];
    for (i, t) in tuples.iter().enumerate() {
        for (j, u) in tuples.iter().enumerate() {
            win[i * np + j] = (0..m)
                .all(|a| (0..m).all(|b| phi.apply(x.color(t[a], t[b])) == y.color(u[a], u[b])));
        }
    }
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    loop {
        let mut changed = false;
        for i in 0..np {
            for j in 0..np {
                if !win[i * np + j] {
                    continue;
                }
                let (t, u) = (&tuples[i], &tuples[j]);
                for (a, row) in adj.iter_mut().enumerate() {
                    row.clear();
                    for b in 0..n {
                        let ok = (0..m).all(|k| {
                            let ii = i - t[k] * pw[k] + a * pw[k];
                            let jj = j - u[k] * pw[k] + b * pw[k];
                            win[ii * np + jj]
                        });
                        if ok {
                            row.push(b);
                        }
                    }
                }
                if !perfect_matching(n, &adj) {
                    win[i * np + j] = false;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    Ok(GameTable { n, m, winning: win })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::algebraic_automorphisms;
    use crate::wl::{wl_m_refine, WlOptions};

    #[test]
    fn identity_game_matches_classes() {
        let x = CoherentConfig::trivial(5).point_extension(&[0]).unwrap();
        let id = AlgebraicIso::identity(x.rank());
        let g = pebble_game_oracle(&x, &x, &id, 2, &OracleOptions::default()).unwrap();
        assert!(g.has_full_support());
        assert!(g.has_perfect_matching());
        let w = wl_m_refine(&x, 2, &WlOptions::default()).unwrap();
        for a in 0..5 {
            for b in 0..5 {
                for c in 0..5 {
                    for d in 0..5 {
                        assert_eq!(
                            g.is_winning(&[a, b], &[c, d]),
                            w.color(&[a, b]) == w.color(&[c, d])
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn symmetric_under_swap() {
        let x = CoherentConfig::regular_cyclic(5);
        for phi in algebraic_automorphisms(&x) {
            let o = OracleOptions::default();
            let g = pebble_game_oracle(&x, &x, &phi, 2, &o).unwrap();
            let h = pebble_game_oracle(&x, &x, &phi.inverse(), 2, &o).unwrap();
            assert_eq!(g.transposed(), h);
        }
    }
}
