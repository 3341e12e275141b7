//! Algebraic and combinatorial isomorphisms, induced maps and tuple extensions.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::config::{CoherentConfig, Parabolic, Relation};
use crate::error::{Error, Result};
use crate::refine;

/// A color bijection preserving all intersection numbers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AlgebraicIso {
    /// Image of color `i` at index `i`.
    pub map: Vec<u32>,
}

impl AlgebraicIso {
    pub fn identity(rank: usize) -> Self {
        AlgebraicIso {
            map: (0..rank as u32).collect(),
        }
    }

    #[inline]
    pub fn apply(&self, c: u32) -> u32 {
        self.map[c as usize]
    }

    pub fn apply_relation(&self, r: &Relation) -> Relation {
        Relation::new(r.colors().iter().map(|&c| self.apply(c)).collect())
    }

    pub fn inverse(&self) -> AlgebraicIso {
        let mut inv = vec![0; self.map.len()];
        for (i, &j) in self.map.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        AlgebraicIso { map: inv }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &AlgebraicIso) -> AlgebraicIso {
        AlgebraicIso {
            map: self.map.iter().map(|&c| other.apply(c)).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &c)| i as u32 == c)
    }

    /// Full check that this is an algebraic isomorphism from `x` to `y`.
    pub fn verify(&self, x: &CoherentConfig, y: &CoherentConfig) -> Result<()> {
        let rank = x.rank();
        if y.rank() != rank || self.map.len() != rank {
            return Err(Error::InvalidAlgebraicIso(format!(
                "ranks {} and {} with map of length {}",
                rank,
                y.rank(),
                self.map.len()
            )));
        }
        let mut seen = vec![false; rank];
        for &c in &self.map {
            if c as usize >= rank || seen[c as usize] {
                return Err(Error::InvalidAlgebraicIso("not a bijection".into()));
            }
            seen[c as usize] = true;
        }
        let tx = x.tensor();
        let ty = y.tensor();
        for t in 0..rank {
            let mut mapped: Vec<(u32, u32, u32)> = tx[t]
                .iter()
                .map(|&(r, s, c)| (self.apply(r), self.apply(s), c))
                .collect();
            mapped.sort_unstable();
            if mapped != ty[self.apply(t as u32) as usize] {
                return Err(Error::InvalidAlgebraicIso(format!(
                    "intersection numbers differ at t = {t}"
                )));
            }
        }
        Ok(())
    }
}

/// A point bijection mapping colors of X onto colors of X'.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CombIso {
    pub map: Vec<usize>,
}

impl CombIso {
    /// φ_f if `self` is an isomorphism from `x` to `y`.
    pub fn induced(&self, x: &CoherentConfig, y: &CoherentConfig) -> Option<AlgebraicIso> {
        let n = x.n();
        if y.n() != n || x.rank() != y.rank() || self.map.len() != n {
            return None;
        }
        let mut img: Vec<Option<u32>> = vec![None; x.rank()];
        for a in 0..n {
            for b in 0..n {
                let c = x.color(a, b) as usize;
                let d = y.color(self.map[a], self.map[b]);
                match img[c] {
                    None => img[c] = Some(d),
                    Some(e) if e != d => return None,
                    _ => {}
                }
            }
        }
        let map: Vec<u32> = img.into_iter().map(|c| c.unwrap()).collect();
        let mut seen = vec![false; map.len()];
        for &c in &map {
            if seen[c as usize] {
                return None;
            }
            seen[c as usize] = true;
        }
        Some(AlgebraicIso { map })
    }
}

// ---- algebraic isomorphism enumeration ----

/// Color invariants preserved by every algebraic isomorphism.
fn invariants(x: &CoherentConfig) -> Vec<(bool, usize, usize, usize, usize, bool, Vec<u32>)> {
    let t = x.tensor();
    (0..x.rank() as u32)
        .map(|c| {
            let (sf, tf) = x.color_fibers(c);
            let mut counts: Vec<u32> = t[c as usize].iter().map(|e| e.2).collect();
            counts.sort_unstable();
            (
                x.is_diagonal(c),
                x.size(c),
                x.valency(c),
                x.fibers()[sf].points.len(),
                x.fibers()[tf].points.len(),
                x.converse(c) == c,
                counts,
            )
        })
        .collect()
}

struct AlgSearch<'a> {
    x: &'a CoherentConfig,
    y: &'a CoherentConfig,
    order: Vec<u32>,
    cand: Vec<Vec<u32>>,
    fwd: Vec<Option<u32>>,
    back: Vec<Option<u32>>,
    out: Vec<AlgebraicIso>,
    limit: usize,
}

impl AlgSearch<'_> {
    fn consistent(&self) -> bool {
        let tx = self.x.tensor();
        let ty = self.y.tensor();
        for t in 0..self.x.rank() {
            let Some(pt) = self.fwd[t] else { continue };
            let row_y = &ty[pt as usize];
            let mut matched = 0usize;
            for &(r, s, c) in &tx[t] {
                if let (Some(pr), Some(ps)) = (self.fwd[r as usize], self.fwd[s as usize]) {
                    match row_y.binary_search_by(|&(a, b, _)| (a, b).cmp(&(pr, ps))) {
                        Ok(i) if row_y[i].2 == c => matched += 1,
                        _ => return false,
                    }
                }
            }
            let expected = row_y
                .iter()
                .filter(|&&(r, s, _)| {
                    self.back[r as usize].is_some() && self.back[s as usize].is_some()
                })
                .count();
            if matched != expected {
                return false;
            }
        }
        true
    }

    fn assign(&mut self, a: u32, b: u32) -> bool {
        match (self.fwd[a as usize], self.back[b as usize]) {
            (None, None) => {
                self.fwd[a as usize] = Some(b);
                self.back[b as usize] = Some(a);
                true
            }
            (Some(x), _) if x == b => true,
            _ => false,
        }
    }

    fn unassign(&mut self, a: u32) {
        if let Some(b) = self.fwd[a as usize].take() {
            self.back[b as usize] = None;
        }
    }

    fn run(&mut self, depth: usize) {
        if self.out.len() >= self.limit {
            return;
        }
        let Some(&c) = self.order[depth..]
            .iter()
            .find(|&&c| self.fwd[c as usize].is_none())
        else {
            self.out.push(AlgebraicIso {
                map: self.fwd.iter().map(|v| v.unwrap()).collect(),
            });
            return;
        };
        let conv = self.x.converse(c);
        for i in 0..self.cand[c as usize].len() {
            let d = self.cand[c as usize][i];
            if self.back[d as usize].is_some() {
                continue;
            }
            let dconv = self.y.converse(d);
            if (conv == c) != (dconv == d) {
                continue;
            }
            if !self.assign(c, d) {
                continue;
            }
            let conv_new = self.fwd[conv as usize].is_none();
            if conv != c && !self.assign(conv, dconv) {
                self.unassign(c);
                continue;
            }
            if self.consistent() {
                self.run(depth + 1);
            }
            if conv != c && conv_new {
                self.unassign(conv);
            }
            self.unassign(c);
            if self.out.len() >= self.limit {
                return;
            }
        }
    }
}

/// All algebraic isomorphisms from `x` to `y`.
pub fn enumerate_algebraic_isos(x: &CoherentConfig, y: &CoherentConfig) -> Vec<AlgebraicIso> {
    enumerate_algebraic_isos_constrained(x, y, &[], usize::MAX)
}

/// Algebraic isomorphisms extending the given partial assignment
/// `(color of x, color of y)`, at most `limit` of them.
pub fn enumerate_algebraic_isos_constrained(
    x: &CoherentConfig,
    y: &CoherentConfig,
    fixed: &[(u32, u32)],
    limit: usize,
) -> Vec<AlgebraicIso> {
    if x.rank() != y.rank() || x.n() != y.n() || x.fibers().len() != y.fibers().len() {
        return Vec::new();
    }
    let ix = invariants(x);
    let iy = invariants(y);
    let rank = x.rank();
    let cand: Vec<Vec<u32>> = (0..rank)
        .map(|c| {
            (0..rank as u32)
                .filter(|&d| ix[c] == iy[d as usize])
                .collect()
        })
        .collect();
    let mut order: Vec<u32> = (0..rank as u32).collect();
    order.sort_by_key(|&c| {
        (
            !x.is_diagonal(c),
            cand[c as usize].len(),
            std::cmp::Reverse(x.valency(c)),
            c,
        )
    });
    let mut s = AlgSearch {
        x,
        y,
        order,
        cand,
        fwd: vec![None; rank],
        back: vec![None; rank],
        out: Vec::new(),
        limit,
    };
    for &(a, b) in fixed {
        if a as usize >= rank || b as usize >= rank {
            return Vec::new();
        }
        if !s.cand[a as usize].contains(&b) || !s.assign(a, b) {
            return Vec::new();
        }
        let (ca, cb) = (x.converse(a), y.converse(b));
        if !s.assign(ca, cb) {
            return Vec::new();
        }
    }
    if !s.consistent() {
        return Vec::new();
    }
    s.run(0);
    s.out.sort();
    s.out
}

/// All algebraic automorphisms of `x`.
pub fn algebraic_automorphisms(x: &CoherentConfig) -> Vec<AlgebraicIso> {
    enumerate_algebraic_isos(x, x)
}

// ---- joint seeded refinement ----

/// Raw outcome of refining (X, x) and (X', x') together with φ-matched colors.
struct Joint {
    left: Vec<u32>,
    right: Vec<u32>,
}

fn joint_refine(
    x: &CoherentConfig,
    y: &CoherentConfig,
    phi_inv: &AlgebraicIso,
    tx: &[usize],
    ty: &[usize],
) -> Option<Joint> {
    let n = x.n();
    if tx.len() != ty.len() || tx.len() > 32 || y.n() != n {
        return None;
    }
    let left = x.seeded_labels(tx);
    let mut right = y.seeded_labels(ty);
    for v in right.iter_mut() {
        let c = (*v >> 32) as u32;
        *v = ((phi_inv.apply(c) as u64) << 32) | (*v & 0xffff_ffff);
    }
    let r = refine::refine_joint(n, &[&left, &right])?;
    let mut sides = r.sides;
    let right = sides.pop().unwrap();
    let left = sides.pop().unwrap();
    Some(Joint { left, right })
}

/// The (x, x')-extension of φ: X_x, X'_{x'} and the lifted algebraic isomorphism.
#[derive(Clone, Debug)]
pub struct TupleExtension {
    pub base: AlgebraicIso,
    pub x: Vec<usize>,
    pub x_prime: Vec<usize>,
    pub left: CoherentConfig,
    pub right: CoherentConfig,
    pub lifted: AlgebraicIso,
}

fn lift(n: usize, j: &Joint) -> (CoherentConfig, CoherentConfig, AlgebraicIso) {
    let left = CoherentConfig::closure(n, &j.left.iter().map(|&c| c as u64).collect::<Vec<_>>())
        .expect("stable coloring");
    let right = CoherentConfig::closure(n, &j.right.iter().map(|&c| c as u64).collect::<Vec<_>>())
        .expect("stable coloring");
    let mut by_name: HashMap<u32, u32> = HashMap::new();
    for a in 0..n {
        for b in 0..n {
            by_name.insert(j.right[a * n + b], right.color(a, b));
        }
    }
    let map = (0..left.rank() as u32)
        .map(|c| {
            let (a, b) = left.representative(c);
            by_name[&j.left[a * n + b]]
        })
        .collect();
    (left, right, AlgebraicIso { map })
}

/// The (x, x')-extension of φ, if it exists.
pub fn tuple_extension(
    x: &CoherentConfig,
    y: &CoherentConfig,
    phi: &AlgebraicIso,
    tx: &[usize],
    ty: &[usize],
) -> Option<TupleExtension> {
    let j = joint_refine(x, y, &phi.inverse(), tx, ty)?;
    let (left, right, lifted) = lift(x.n(), &j);
    Some(TupleExtension {
        base: phi.clone(),
        x: tx.to_vec(),
        x_prime: ty.to_vec(),
        left,
        right,
        lifted,
    })
}

// ---- combinatorial isomorphisms ----

struct IsoSearch<'a> {
    x: &'a CoherentConfig,
    y: &'a CoherentConfig,
    phi: &'a AlgebraicIso,
    phi_inv: AlgebraicIso,
    out: Vec<CombIso>,
    limit: usize,
    nodes: usize,
}

impl IsoSearch<'_> {
    fn run(&mut self, tx: &mut Vec<usize>, ty: &mut Vec<usize>) {
        if self.out.len() >= self.limit {
            return;
        }
        self.nodes += 1;
        let n = self.x.n();
        let Some(j) = joint_refine(self.x, self.y, &self.phi_inv, tx, ty) else {
            return;
        };
        // cells = diagonal names
        let mut cells: BTreeMap<u32, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
        for a in 0..n {
            cells.entry(j.left[a * n + a]).or_default().0.push(a);
            cells.entry(j.right[a * n + a]).or_default().1.push(a);
        }
        let branch = cells
            .values()
            .filter(|(l, _)| l.len() > 1)
            .min_by_key(|(l, _)| (l.len(), l[0]));
        match branch {
            None => {
                let mut f = vec![0; n];
                for (l, r) in cells.values() {
                    f[l[0]] = r[0];
                }
                let iso = CombIso { map: f };
                if iso.induced(self.x, self.y).as_ref() == Some(self.phi) {
                    self.out.push(iso);
                }
            }
            Some((l, r)) => {
                let a = l[0];
                let r = r.clone();
                if tx.len() >= 32 {
                    return;
                }
                for b in r {
                    tx.push(a);
                    ty.push(b);
                    self.run(tx, ty);
                    tx.pop();
                    ty.pop();
                    if self.out.len() >= self.limit {
                        return;
                    }
                }
            }
        }
    }
}

/// Up to `limit` isomorphisms f with φ_f = φ and f(prefix_x) = prefix_y,
/// plus whether the search was exhaustive.
pub fn isomorphisms_with_prefix(
    x: &CoherentConfig,
    y: &CoherentConfig,
    phi: &AlgebraicIso,
    prefix_x: &[usize],
    prefix_y: &[usize],
    limit: usize,
) -> (Vec<CombIso>, bool) {
    if x.n() != y.n() || x.rank() != y.rank() || phi.map.len() != x.rank() {
        return (Vec::new(), true);
    }
    let mut s = IsoSearch {
        x,
        y,
        phi,
        phi_inv: phi.inverse(),
        out: Vec::new(),
        limit,
        nodes: 0,
    };
    let mut tx = prefix_x.to_vec();
    let mut ty = prefix_y.to_vec();
    s.run(&mut tx, &mut ty);
    log::trace!("isomorphism search visited {} nodes", s.nodes);
    let complete = s.out.len() < limit;
    (s.out, complete)
}

/// Some f ∈ iso(X, X', φ), if one exists.
pub fn find_isomorphism(
    x: &CoherentConfig,
    y: &CoherentConfig,
    phi: &AlgebraicIso,
) -> Option<CombIso> {
    isomorphisms_with_prefix(x, y, phi, &[], &[], 1).0.pop()
}

/// Up to `limit` elements of iso(X, X', φ); the flag is true when the list is complete.
pub fn all_isomorphisms(
    x: &CoherentConfig,
    y: &CoherentConfig,
    phi: &AlgebraicIso,
    limit: usize,
) -> (Vec<CombIso>, bool) {
    isomorphisms_with_prefix(x, y, phi, &[], &[], limit)
}

/// Aut(X) (color-preserving permutations), up to `limit` elements.
pub fn automorphisms(x: &CoherentConfig, limit: usize) -> (Vec<CombIso>, bool) {
    all_isomorphisms(x, x, &AlgebraicIso::identity(x.rank()), limit)
}

// ---- induced maps ----

/// φ_{Ω/e}: the induced algebraic isomorphism between quotients, with e' = φ(e).
pub fn induced_on_quotient(
    x: &CoherentConfig,
    y: &CoherentConfig,
    phi: &AlgebraicIso,
    e: &Parabolic,
) -> Result<(Parabolic, AlgebraicIso)> {
    let e2 = y.as_parabolic(&phi.apply_relation(&e.relation))?;
    if !e2.is_full(y.n()) {
        return Err(Error::Incompatible(
            "image of a parabolic is partial".into(),
        ));
    }
    let (qx, cx) = x.quotient_with_map(e)?;
    let (qy, cy) = y.quotient_with_map(&e2)?;
    let index: HashMap<&Relation, u32> =
        cy.iter().enumerate().map(|(i, r)| (r, i as u32)).collect();
    let mut map = Vec::with_capacity(qx.rank());
    for r in &cx {
        let img = phi.apply_relation(r);
        match index.get(&img) {
            Some(&c) => map.push(c),
            None => return Err(Error::Incompatible("quotient color has no image".into())),
        }
    }
    let psi = AlgebraicIso { map };
    psi.verify(&qx, &qy)?;
    Ok((e2, psi))
}

/// φ_{Δ,Δ'}: s_Δ ↦ φ(s)_{Δ'}.
pub fn induced_on_restriction(
    x: &CoherentConfig,
    y: &CoherentConfig,
    phi: &AlgebraicIso,
    delta: &[usize],
    delta2: &[usize],
) -> Result<AlgebraicIso> {
    let (rx, ox) = x.restriction_with_map(delta)?;
    let (ry, oy) = y.restriction_with_map(delta2)?;
    let index: HashMap<u32, u32> = oy.iter().enumerate().map(|(i, &c)| (c, i as u32)).collect();
    let mut map = Vec::with_capacity(rx.rank());
    for &c in &ox {
        match index.get(&phi.apply(c)) {
            Some(&d) => map.push(d),
            None => {
                return Err(Error::Incompatible(format!(
                    "color {c} meets Δ×Δ but its image misses Δ'×Δ'"
                )))
            }
        }
    }
    let psi = AlgebraicIso { map };
    psi.verify(&rx, &ry)?;
    Ok(psi)
}

/// The section Δ/e of X as a configuration: restrict to Δ, then factor by
/// the equivalence `e` (a relation of X whose restriction to Δ is an
/// equivalence on Δ).
pub fn section_config(x: &CoherentConfig, delta: &[usize], e: &Relation) -> Result<CoherentConfig> {
    let (rx, ox) = x.restriction_with_map(delta)?;
    let er = Relation::new(
        (0..rx.rank() as u32)
            .filter(|&c| e.contains(ox[c as usize]))
            .collect(),
    );
    let p = rx.as_parabolic(&er)?;
    if !p.is_full(rx.n()) {
        return Err(Error::NotParabolic("equivalence does not cover Δ".into()));
    }
    rx.quotient(&p)
}

/// φ_{S,S'} for sections S = Δ/e and S' = Δ'/φ(e).
pub fn induced_on_section(
    x: &CoherentConfig,
    y: &CoherentConfig,
    phi: &AlgebraicIso,
    delta: &[usize],
    delta2: &[usize],
    e: &Relation,
) -> Result<AlgebraicIso> {
    let (rx, ox) = x.restriction_with_map(delta)?;
    let (ry, oy) = y.restriction_with_map(delta2)?;
    let psi = induced_on_restriction(x, y, phi, delta, delta2)?;
    let er = Relation::new(
        (0..rx.rank() as u32)
            .filter(|&c| e.contains(ox[c as usize]))
            .collect(),
    );
    let p = rx.as_parabolic(&er)?;
    if !p.is_full(rx.n()) {
        return Err(Error::NotParabolic("equivalence does not cover Δ".into()));
    }
    let (p2, out) = induced_on_quotient(&rx, &ry, &psi, &p)?;
    let img_e = phi.apply_relation(e);
    let expect = Relation::new(
        (0..ry.rank() as u32)
            .filter(|&c| img_e.contains(oy[c as usize]))
            .collect(),
    );
    if p2.relation != expect {
        return Err(Error::Incompatible("φ(e) does not restrict to Δ'".into()));
    }
    Ok(out)
}

// ---- extendability ----

/// Some x' with an (x, x')-extension of φ, searched coordinate by coordinate.
pub fn find_extension_partner(
    x: &CoherentConfig,
    y: &CoherentConfig,
    phi: &AlgebraicIso,
    tx: &[usize],
) -> Option<Vec<usize>> {
    let mut ty = Vec::with_capacity(tx.len());
    extend_tuple(x, y, &phi.inverse(), tx, &mut ty).then_some(ty)
}

fn extend_tuple(
    x: &CoherentConfig,
    y: &CoherentConfig,
    phi_inv: &AlgebraicIso,
    tx: &[usize],
    ty: &mut Vec<usize>,
) -> bool {
    let n = x.n();
    let k = ty.len();
    let Some(j) = joint_refine(x, y, phi_inv, &tx[..k], ty) else {
        return false;
    };
    if k == tx.len() {
        return true;
    }
    let a = tx[k];
    let name = j.left[a * n + a];
    for b in 0..n {
        if j.right[b * n + b] == name {
            ty.push(b);
            if extend_tuple(x, y, phi_inv, tx, ty) {
                return true;
            }
            ty.pop();
        }
    }
    false
}

/// Options for [`is_m_extendable`].
#[derive(Clone, Debug)]
pub struct ExtendOptions {
    /// Largest automorphism group enumerated for orbit pruning.
    pub aut_limit: usize,
    /// Extra point permutations known to be automorphisms of X, used when
    /// the full group is too large (e.g. translations of a circulant).
    pub known_automorphisms: Vec<Vec<usize>>,
}

impl Default for ExtendOptions {
    fn default() -> Self {
        ExtendOptions {
            aut_limit: 5000,
            known_automorphisms: Vec::new(),
        }
    }
}

fn next_tuple(t: &mut [usize], n: usize) -> bool {
    for i in (0..t.len()).rev() {
        t[i] += 1;
        if t[i] < n {
            return true;
        }
        t[i] = 0;
    }
    false
}

/// Whether φ is extendable at every m-tuple of points of X.
pub fn is_m_extendable(
    x: &CoherentConfig,
    y: &CoherentConfig,
    phi: &AlgebraicIso,
    m: usize,
    opts: &ExtendOptions,
) -> bool {
    first_non_extendable(x, y, phi, m, opts).is_none()
}

/// An m-tuple at which φ has no extension, if any.
pub fn first_non_extendable(
    x: &CoherentConfig,
    y: &CoherentConfig,
    phi: &AlgebraicIso,
    m: usize,
    opts: &ExtendOptions,
) -> Option<Vec<usize>> {
    let n = x.n();
    if m == 0 || n == 0 {
        return if tuple_extension(x, y, phi, &[], &[]).is_some() {
            None
        } else {
            Some(Vec::new())
        };
    }
    let (auts, complete) = automorphisms(x, opts.aut_limit);
    let group: Vec<Vec<usize>> = if complete {
        auts.into_iter().map(|f| f.map).collect()
    } else {
        let mut g = opts.known_automorphisms.clone();
        g.push((0..n).collect());
        g
    };
    let phi_inv = phi.inverse();
    let mut t = vec![0usize; m];
    loop {
        let minimal = group.iter().all(|g| {
            let img: Vec<usize> = t.iter().map(|&p| g[p]).collect();
            img >= t
        });
        if minimal {
            let mut ty = Vec::with_capacity(m);
            if !extend_tuple(x, y, &phi_inv, &t, &mut ty) {
                return Some(t);
            }
        }
        if !next_tuple(&mut t, n) {
            return None;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_isos(x: &CoherentConfig, y: &CoherentConfig) -> Vec<AlgebraicIso> {
        // every permutation of colors, filtered by the full check
        let r = x.rank();
        let mut perm: Vec<u32> = (0..r as u32).collect();
        let mut out = Vec::new();
        fn heap(k: usize, p: &mut Vec<u32>, f: &mut dyn FnMut(&[u32])) {
            if k == 1 {
                f(p);
                return;
            }
            for i in 0..k {
                heap(k - 1, p, f);
                let j = if k % 2 == 0 { i } else { 0 };
                p.swap(j, k - 1);
            }
        }
        heap(r, &mut perm, &mut |p| {
            let phi = AlgebraicIso { map: p.to_vec() };
            if phi.verify(x, y).is_ok() {
                out.push(phi);
            }
        });
        out.sort();
        out.dedup();
        out
    }

    fn brute_auts(x: &CoherentConfig) -> usize {
        let n = x.n();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut count = 0;
        loop {
            if (0..n).all(|a| (0..n).all(|b| x.color(a, b) == x.color(perm[a], perm[b]))) {
                count += 1;
            }
            // next lexicographic permutation
            let Some(i) = (0..n.saturating_sub(1))
                .rev()
                .find(|&i| perm[i] < perm[i + 1])
            else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
            perm.swap(i, j);
            perm[i + 1..].reverse();
        }
        count
    }

    #[test]
    fn regular_z5_has_four() {
        let r = CoherentConfig::regular_cyclic(5);
        let isos = algebraic_automorphisms(&r);
        assert_eq!(isos.len(), 4);
        assert_eq!(isos, brute_isos(&r, &r));
    }

    #[test]
    fn trivial_has_one() {
        let t = CoherentConfig::trivial(5);
        assert_eq!(algebraic_automorphisms(&t).len(), 1);
    }

    #[test]
    fn automorphism_counts_match_brute_force() {
        let cases = [
            CoherentConfig::trivial(4),
            CoherentConfig::regular_cyclic(6),
            CoherentConfig::trivial(2).tensor_product(&CoherentConfig::trivial(3)),
            CoherentConfig::trivial(5).point_extension(&[1]).unwrap(),
        ];
        for x in &cases {
            let (auts, complete) = automorphisms(x, usize::MAX);
            assert!(complete);
            assert_eq!(auts.len(), brute_auts(x));
        }
    }

    #[test]
    fn extension_on_regular() {
        let n = 7;
        let r = CoherentConfig::regular_cyclic(n);
        for phi in algebraic_automorphisms(&r) {
            let ext = tuple_extension(&r, &r, &phi, &[0], &[0]).unwrap();
            assert!(ext.left.is_discrete());
            ext.lifted.verify(&ext.left, &ext.right).unwrap();
            let f = find_isomorphism(&r, &r, &phi).unwrap();
            assert_eq!(f.induced(&r, &r).unwrap(), phi);
            assert!(is_m_extendable(&r, &r, &phi, 2, &ExtendOptions::default()));
        }
    }

    #[test]
    fn identity_first_for_trivial() {
        let t = CoherentConfig::trivial(4);
        let f = find_isomorphism(&t, &t, &AlgebraicIso::identity(2)).unwrap();
        assert_eq!(f.map, vec![0, 1, 2, 3]);
    }

    #[test]
    fn json_shape() {
        let phi = AlgebraicIso { map: vec![0, 2, 1] };
        let s = serde_json::to_string(&phi).unwrap();
        assert_eq!(s, r#"{"map":[0,2,1]}"#);
        let back: AlgebraicIso = serde_json::from_str(&s).unwrap();
        assert_eq!(back, phi);
    }
}
