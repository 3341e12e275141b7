//! m-dimensional (folklore) WL refinement on Ω^m.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::algebra::AlgebraicIso;
use crate::config::CoherentConfig;
use crate::error::{Error, Result};

/// A color map on Ω^m. Tuple x is stored at index Σ x_i n^(m-1-i).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MAryConfig {
    n: usize,
    m: usize,
    colors: Vec<u32>,
    rank: usize,
}

impl MAryConfig {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn index(&self, x: &[usize]) -> usize {
        x.iter().fold(0, |acc, &p| acc * self.n + p)
    }

    pub fn tuple(&self, mut idx: usize) -> Vec<usize> {
        let mut t = vec![0; self.m];
        for i in (0..self.m).rev() {
            t[i] = idx % self.n;
            idx /= self.n;
        }
        t
    }

    pub fn color(&self, x: &[usize]) -> u32 {
        self.colors[self.index(x)]
    }

    /// Color count per color id.
    pub fn histogram(&self) -> Vec<usize> {
        let mut h = vec![0; self.rank];
        for &c in &self.colors {
            h[c as usize] += 1;
        }
        h
    }

    /// The 2-ary part as a plain pair coloring (only meaningful for m = 2).
    pub fn pair_labels(&self) -> Option<Vec<u32>> {
        (self.m == 2).then(|| self.colors.clone())
    }

    /// Relabels colors by first occurrence.
    fn renumbered(n: usize, m: usize, colors: &[u32]) -> MAryConfig {
        let mut map: HashMap<u32, u32> = HashMap::new();
        let out: Vec<u32> = colors
            .iter()
            .map(|&c| {
                let next = map.len() as u32;
                *map.entry(c).or_insert(next)
            })
            .collect();
        MAryConfig {
            n,
            m,
            colors: out,
            rank: map.len(),
        }
    }
}

/// Resource limits for m-ary refinement.
#[derive(Clone, Debug)]
pub struct WlOptions {
    /// Largest number of tuple entries (summed over sides) allowed.
    pub memory_cap: usize,
    /// Largest arity accepted.
    pub max_m: usize,
}

impl Default for WlOptions {
    fn default() -> Self {
        WlOptions {
            memory_cap: 100_000_000,
            max_m: 6,
        }
    }
}

fn check_caps(n: usize, m: usize, sides: usize, opts: &WlOptions) -> Result<()> {
    if m < 2 || m > opts.max_m {
        return Err(Error::CapExceeded {
            what: "arity m",
            value: m,
            cap: opts.max_m,
            flag: "--max-m",
        });
    }
    let needed = (n as u128).pow(m as u32) * sides as u128;
    if needed > opts.memory_cap as u128 {
        return Err(Error::MemoryCap {
            what: "m-ary color array",
            needed,
            cap: opts.memory_cap,
        });
    }
    Ok(())
}

const CHUNK: usize = 4096;

/// Joint stable m-ary coloring of the sides. `labels[s]` gives the pair
/// colors of side s on a common alphabet. Returns `None` once histograms
/// disagree.
fn refine_sides(
    n: usize,
    m: usize,
    labels: &[&dyn Fn(usize, usize) -> u32],
) -> Result<Option<Vec<Vec<u32>>>> {
    let total = n.pow(m as u32);
    let pw: Vec<usize> = (0..m).map(|i| n.pow((m - 1 - i) as u32)).collect();
    let digits = |mut idx: usize| {
        let mut t = vec![0usize; m];
        for i in (0..m).rev() {
            t[i] = idx % n;
            idx /= n;
        }
        t
    };

    // atomic types
    let mut dict: HashMap<Vec<u32>, u32> = HashMap::new();
    let mut cur: Vec<Vec<u32>> = Vec::with_capacity(labels.len());
    for lab in labels {
        let mut v = Vec::with_capacity(total);
        for idx in 0..total {
            let t = digits(idx);
            let key: Vec<u32> = (0..m * m).map(|k| lab(t[k / m], t[k % m])).collect();
            let next = dict.len() as u32;
            v.push(*dict.entry(key).or_insert(next));
        }
        cur.push(v);
    }
    let mut rank = dict.len();
    if !same_histograms(&cur, rank) {
        return Ok(None);
    }

    loop {
        let bits = usize::BITS - rank.leading_zeros();
        if bits as usize * m > 128 {
            return Err(Error::CapExceeded {
                what: "signature width (bits per color × m)",
                value: bits as usize * m,
                cap: 128,
                flag: "--max-m",
            });
        }
        let mut dict: HashMap<(u32, Vec<u128>), u32> = HashMap::new();
        let mut next: Vec<Vec<u32>> = Vec::with_capacity(cur.len());
        for c in &cur {
            let mut out = Vec::with_capacity(total);
            for start in (0..total).step_by(CHUNK * 16) {
                let end = (start + CHUNK * 16).min(total);
                let sigs: Vec<Vec<u128>> = (start..end)
                    .into_par_iter()
                    .with_min_len(CHUNK)
                    .map(|idx| {
                        let t = digits(idx);
                        let mut sig: Vec<u128> = (0..n)
                            .map(|a| {
                                let mut packed = 0u128;
                                for i in 0..m {
                                    let j = idx - t[i] * pw[i] + a * pw[i];
                                    packed = (packed << bits) | c[j] as u128;
                                }
                                packed
                            })
                            .collect();
                        sig.sort_unstable();
                        sig
                    })
                    .collect();
                for (k, sig) in sigs.into_iter().enumerate() {
                    let id = dict.len() as u32;
                    out.push(*dict.entry((c[start + k], sig)).or_insert(id));
                }
            }
            next.push(out);
        }
        let new_rank = dict.len();
        if !same_histograms(&next, new_rank) {
            return Ok(None);
        }
        if new_rank == rank {
            return Ok(Some(cur));
        }
        cur = next;
        rank = new_rank;
    }
}

fn same_histograms(sides: &[Vec<u32>], rank: usize) -> bool {
    let hist = |v: &Vec<u32>| {
        let mut h = vec![0usize; rank];
        for &c in v {
            h[c as usize] += 1;
        }
        h
    };
    let mut it = sides.iter();
    let Some(first) = it.next() else { return true };
    let h = hist(first);
    it.all(|s| hist(s) == h)
}

/// WL_m(X): the stable m-ary coloring started from atomic types.
pub fn wl_m_refine(x: &CoherentConfig, m: usize, opts: &WlOptions) -> Result<MAryConfig> {
    let n = x.n();
    check_caps(n, m, 1, opts)?;
    let lab = |a: usize, b: usize| x.color(a, b);
    let mut sides = refine_sides(n, m, &[&lab])?.expect("single side");
    Ok(MAryConfig::renumbered(n, m, &sides.pop().unwrap()))
}

/// Joint WL_m refinement of X and X' with atomic types matched through φ.
/// `None` means not WL_m-equivalent with respect to φ.
pub fn wl_m_joint(
    x: &CoherentConfig,
    y: &CoherentConfig,
    phi: &AlgebraicIso,
    m: usize,
    opts: &WlOptions,
) -> Result<Option<(MAryConfig, MAryConfig)>> {
    let n = x.n();
    if y.n() != n || y.rank() != x.rank() || phi.map.len() != x.rank() {
        return Ok(None);
    }
    check_caps(n, m, 2, opts)?;
    let inv = phi.inverse();
    let lx = |a: usize, b: usize| x.color(a, b);
    let ly = |a: usize, b: usize| inv.apply(y.color(a, b));
    let Some(mut sides) = refine_sides(n, m, &[&lx, &ly])? else {
        return Ok(None);
    };
    let right = sides.pop().unwrap();
    let left = sides.pop().unwrap();
    // shared names, compacted by first occurrence over left then right
    let mut map: HashMap<u32, u32> = HashMap::new();
    let mut rename = |v: &[u32]| -> Vec<u32> {
        v.iter()
            .map(|&c| {
                let next = map.len() as u32;
                *map.entry(c).or_insert(next)
            })
            .collect()
    };
    let l = rename(&left);
    let r = rename(&right);
    let rank = map.len();
    Ok(Some((
        MAryConfig {
            n,
            m,
            colors: l,
            rank,
        },
        MAryConfig {
            n,
            m,
            colors: r,
            rank,
        },
    )))
}

/// Whether X and X' are WL_m-equivalent with respect to φ.
pub fn wl_m_equivalent(
    x: &CoherentConfig,
    y: &CoherentConfig,
    phi: &AlgebraicIso,
    m: usize,
    opts: &WlOptions,
) -> Result<bool> {
    Ok(wl_m_joint(x, y, phi, m, opts)?.is_some())
}

/// pr_k: the partition of Ω^k generated by the k-prefixes of the classes.
pub fn projection(mc: &MAryConfig, k: usize) -> Result<MAryConfig> {
    let (n, m) = (mc.n, mc.m);
    if k == 0 || k > m {
        return Err(Error::Invariant(format!(
            "projection arity {k} not in 1..={m}"
        )));
    }
    if k == m {
        return Ok(mc.clone());
    }
    let shift = n.pow((m - k) as u32);
    let total_k = n.pow(k as u32);
    let mut uf: Vec<usize> = (0..total_k).collect();
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
    let mut first: Vec<Option<usize>> = vec![None; mc.rank];
    for (idx, &c) in mc.colors.iter().enumerate() {
        let p = idx / shift;
        match first[c as usize] {
            None => first[c as usize] = Some(p),
            Some(q) => {
                let (a, b) = (find(&mut uf, p), find(&mut uf, q));
                if a != b {
                    uf[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let roots: Vec<u32> = (0..total_k).map(|i| find(&mut uf, i) as u32).collect();
    Ok(MAryConfig::renumbered(n, k, &roots))
}

/// Checks CC1'-CC3' for an m-ary coloring; returns the violated axioms.
pub fn validate_mary(mc: &MAryConfig) -> Vec<String> {
    let (n, m) = (mc.n, mc.m);
    let total = mc.colors.len();
    let mut errs = Vec::new();
    let rho = |t: &[usize]| -> Vec<bool> { (0..m * m).map(|k| t[k / m] == t[k % m]).collect() };
    // CC1'
    let mut seen: Vec<Option<Vec<bool>>> = vec![None; mc.rank];
    for idx in 0..total {
        let t = mc.tuple(idx);
        let r = rho(&t);
        let c = mc.colors[idx] as usize;
        match &seen[c] {
            None => seen[c] = Some(r),
            Some(p) if *p != r => {
                errs.push(format!("CC1': equality pattern varies in color {c}"));
                break;
            }
            _ => {}
        }
    }
    // CC2': every index map σ: M → M
    let mut sigma = vec![0usize; m];
    loop {
        let mut img: Vec<Option<u32>> = vec![None; mc.rank];
        let mut ok = true;
        for idx in 0..total {
            let t = mc.tuple(idx);
            let ts: Vec<usize> = sigma.iter().map(|&s| t[s]).collect();
            let c = mc.colors[idx] as usize;
            let d = mc.color(&ts);
            match img[c] {
                None => img[c] = Some(d),
                Some(e) if e != d => {
                    ok = false;
                    break;
                }
                _ => {}
            }
        }
        if !ok {
            errs.push(format!("CC2': substitution {sigma:?} splits a color"));
            break;
        }
        let mut i = m;
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            sigma[i] += 1;
            if sigma[i] < m {
                break;
            }
            sigma[i] = 0;
        }
        if sigma.iter().all(|&s| s == 0) {
            break;
        }
    }
    // CC3': stability
    let pw: Vec<usize> = (0..m).map(|i| n.pow((m - 1 - i) as u32)).collect();
    let mut sig_of: Vec<Option<Vec<Vec<u32>>>> = vec![None; mc.rank];
    for idx in 0..total {
        let t = mc.tuple(idx);
        let mut sig: Vec<Vec<u32>> = (0..n)
            .map(|a| {
                (0..m)
                    .map(|i| mc.colors[idx - t[i] * pw[i] + a * pw[i]])
                    .collect()
            })
            .collect();
        sig.sort_unstable();
        let c = mc.colors[idx] as usize;
        match &sig_of[c] {
            None => sig_of[c] = Some(sig),
            Some(p) if *p != sig => {
                errs.push(format!("CC3': counts vary in color {c}"));
                break;
            }
            _ => {}
        }
    }
    errs
}
