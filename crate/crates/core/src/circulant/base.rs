//! Base tuples, sections of point extensions, multipliers and the
//! tensor decomposition of sections.

use std::collections::BTreeMap;

use super::normal::{is_normal, NormalityOptions};
use super::sections::ProjectiveClasses;
use super::singular::is_tensor_split;
use super::{CirculantScheme, SectionKey};
use crate::algebra::{
    find_isomorphism, induced_on_section, section_config, tuple_extension, AlgebraicIso, CombIso,
};
use crate::arith::{factorize, gcd};
use crate::config::{CoherentConfig, Relation};
use crate::error::{Error, Result};

/// 0 followed by a generator n/p^k of each subgroup of prime power order
/// p^k > 1, primes ascending.
pub fn base_tuple(x: &CirculantScheme) -> Vec<usize> {
    let n = x.n();
    let mut t = vec![0];
    for (p, a) in factorize(n) {
        let mut pk = 1;
        for _ in 0..a {
            pk *= p;
            t.push(n / pk);
        }
    }
    for s in x.sections() {
        let q = s.order();
        if q > 1 && factorize(q).len() == 1 {
            assert!(
                t.iter()
                    .any(|&g| matches!(s.key.element_index(n, g), Some(k) if gcd(k, q) == 1)),
                "no generator of section {s} in base tuple"
            );
        }
    }
    t
}

/// Points, equivalence and section configuration of X_{x,S} = (X_x)_S.
fn point_section(
    x: &CirculantScheme,
    ext: &CoherentConfig,
    key: SectionKey,
) -> Result<(Vec<usize>, Relation, CoherentConfig)> {
    let n = x.n();
    let ustep = n / key.u;
    let lstep = n / key.l;
    let delta: Vec<usize> = (0..n).filter(|d| d % ustep == 0).collect();
    // colors of the extension lying inside e(L)
    let e = Relation::new(
        (0..ext.rank() as u32)
            .filter(|&c| {
                let (a, b) = ext.representative(c);
                (b + n - a) % n % lstep == 0
            })
            .collect(),
    );
    let sc = section_config(ext, &delta, &e)?;
    Ok((delta, e, sc))
}

/// Discreteness of X_{x,S} for each S ∈ secc_0(X).
#[derive(Clone, Debug)]
pub struct DiscretenessReport {
    pub tuple: Vec<usize>,
    /// (section, discrete?) for each section of secc_0, in lattice order.
    pub sections: Vec<(SectionKey, bool)>,
}

impl DiscretenessReport {
    pub fn all_discrete(&self) -> bool {
        self.sections.iter().all(|&(_, d)| d)
    }
}

pub fn section_discreteness_check(
    x: &CirculantScheme,
    tuple: &[usize],
) -> Result<DiscretenessReport> {
    let ext = x.config().point_extension(tuple)?;
    let pc = x.projective_classes();
    let mut out = Vec::new();
    for i in pc.secc0() {
        let key = pc.sections[i].key;
        let (_, _, sc) = point_section(x, &ext, key)?;
        out.push((key, sc.is_discrete()));
    }
    Ok(DiscretenessReport {
        tuple: tuple.to_vec(),
        sections: out,
    })
}

/// The family σ_S read off an (x, x')-extension, with the outcome of the
/// checks M1-M3 and of σ_S being a group automorphism.
#[derive(Clone, Debug)]
pub struct Multiplier {
    pub x: Vec<usize>,
    pub x_prime: Vec<usize>,
    /// σ_S as a permutation of Z_q, per section of secc_0.
    pub sigma: BTreeMap<SectionKey, Vec<usize>>,
    /// The unit u with σ_S(k) = uk, where σ_S is a group automorphism.
    pub unit: BTreeMap<SectionKey, Option<usize>>,
    pub violations: Vec<String>,
}

impl Multiplier {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Builds σ_S for every S ∈ secc_0(X) from the (x, x')-extension of φ.
/// The tuple x' is first translated so that it starts where x does.
pub fn extract_multiplier(
    x: &CirculantScheme,
    phi: &AlgebraicIso,
    tx: &[usize],
    ty: &[usize],
) -> Result<Multiplier> {
    let n = x.n();
    if tx.len() != ty.len() {
        return Err(Error::Incompatible("tuples differ in length".into()));
    }
    let shift = match (tx.first(), ty.first()) {
        (Some(&a), Some(&b)) => (n + a - b) % n,
        _ => 0,
    };
    let ty: Vec<usize> = ty.iter().map(|&p| (p + shift) % n).collect();
    let cc = x.config();
    let ext = tuple_extension(cc, cc, phi, tx, &ty)
        .ok_or_else(|| Error::NoExtension(format!("no (x, x')-extension at {tx:?}")))?;
    let pc = x.projective_classes();
    let secc0 = pc.secc0();
    let mut sigma = BTreeMap::new();
    let mut unit = BTreeMap::new();
    let mut violations = Vec::new();
    for &i in &secc0 {
        let key = pc.sections[i].key;
        let q = key.order();
        let (delta, e, left) = point_section(x, &ext.left, key)?;
        let (_, _, right) = point_section(x, &ext.right, key)?;
        if !left.is_discrete() || !right.is_discrete() {
            violations.push(format!("X_(x,S) is not discrete at {}", key.display(n)));
            continue;
        }
        let psi_s = induced_on_section(&ext.left, &ext.right, &ext.lifted, &delta, &delta, &e)?;
        // σ_S(k) is the point whose diagonal color is ψ_S(1_k)
        let mut point_of = vec![usize::MAX; right.rank()];
        for k in 0..q {
            point_of[right.color(k, k) as usize] = k;
        }
        let s: Vec<usize> = (0..q)
            .map(|k| point_of[psi_s.apply(left.color(k, k)) as usize])
            .collect();
        // M1
        let phi_s = induced_section_map(x, phi, key)?;
        let xs = x.section_scheme(key)?;
        if (CombIso { map: s.clone() })
            .induced(xs.config(), xs.config())
            .as_ref()
            != Some(&phi_s)
        {
            violations.push(format!("M1 fails at {}", key.display(n)));
        }
        let u = (q == 1).then_some(0).or_else(|| {
            let u = s[1 % q];
            (gcd(u, q) == 1 && (0..q).all(|k| s[k] == (u * k) % q)).then_some(u)
        });
        if u.is_none() {
            violations.push(format!(
                "σ is not a group automorphism at {}",
                key.display(n)
            ));
        }
        unit.insert(key, u);
        sigma.insert(key, s);
    }
    check_m2(n, &sigma, &mut violations);
    check_m3(&pc, &sigma, &mut violations);
    Ok(Multiplier {
        x: tx.to_vec(),
        x_prime: ty,
        sigma,
        unit,
        violations,
    })
}

fn induced_section_map(
    x: &CirculantScheme,
    phi: &AlgebraicIso,
    key: SectionKey,
) -> Result<AlgebraicIso> {
    super::singular::induced_section_automorphism(x, phi, key)
}

/// M2: σ_T restricted to a subsection S equals σ_S.
fn check_m2(n: usize, sigma: &BTreeMap<SectionKey, Vec<usize>>, violations: &mut Vec<String>) {
    for (t, st) in sigma {
        for (s, ss) in sigma {
            if s == t || !s.is_subsection_of(t) {
                continue;
            }
            let ok = (0..s.order()).all(|k| {
                let g = s.element(n, k);
                let tk = t.element_index(n, g).expect("U(S) ≤ U(T)");
                let img = t.element(n, st[tk]);
                s.element_index(n, img) == Some(ss[k])
            });
            if !ok {
                violations.push(format!("M2 fails for {} in {}", s.display(n), t.display(n)));
            }
        }
    }
}

/// M3: f_{T,S} conjugates σ_T into σ_S.
fn check_m3(
    pc: &ProjectiveClasses,
    sigma: &BTreeMap<SectionKey, Vec<usize>>,
    violations: &mut Vec<String>,
) {
    let n = pc.n;
    for (t, st) in sigma {
        for (s, ss) in sigma {
            if s <= t || !pc.equivalent(*t, *s) {
                continue;
            }
            let q = t.order();
            match pc.bridge(*t, *s) {
                Ok(f) => {
                    if (0..q).any(|k| ss[(k * f) % q] != (st[k] * f) % q) {
                        violations.push(format!(
                            "M3 fails for {} ~ {}",
                            t.display(n),
                            s.display(n)
                        ));
                    }
                }
                Err(e) => violations.push(e.to_string()),
            }
        }
    }
}

/// Some isomorphism of X inducing φ.
pub fn is_induced_by_isomorphism(x: &CirculantScheme, phi: &AlgebraicIso) -> Option<CombIso> {
    let cc = x.config();
    find_isomorphism(cc, cc, phi)
}

/// A recursive coprime tensor splitting of a section, with the check that
/// every factor is projectively equivalent to a subsection of a principal
/// normal section.
#[derive(Clone, Debug)]
pub struct DecompositionReport {
    pub section: SectionKey,
    pub factors: Vec<SectionKey>,
    /// Factors with no principal normal supersection up to equivalence.
    pub uncovered: Vec<SectionKey>,
}

impl DecompositionReport {
    pub fn holds(&self) -> bool {
        self.uncovered.is_empty()
    }
}

fn split(x: &CirculantScheme, key: SectionKey, out: &mut Vec<SectionKey>) -> Result<()> {
    let w = x.section_scheme(key)?;
    let q = key.order();
    for (p, a) in factorize(q) {
        let pa = p.pow(a);
        if pa == q {
            break;
        }
        if is_tensor_split(&w, pa, q / pa) {
            split(x, SectionKey::new(key.l * pa, key.l), out)?;
            split(x, SectionKey::new(key.l * (q / pa), key.l), out)?;
            return Ok(());
        }
    }
    out.push(key);
    Ok(())
}

pub fn check_decomposition(
    x: &CirculantScheme,
    key: SectionKey,
    opts: &NormalityOptions,
) -> Result<DecompositionReport> {
    let mut factors = Vec::new();
    split(x, key, &mut factors)?;
    let pc = x.projective_classes();
    let mut principal_normal = Vec::new();
    for s in &pc.sections {
        if s.is_principal() && is_normal(&s.scheme, opts)? {
            principal_normal.push(s.key);
        }
    }
    let uncovered = factors
        .iter()
        .copied()
        .filter(|&f| {
            let Some(i) = pc.index_of(f) else { return true };
            !pc.classes[pc.class_of[i]].iter().any(|&j| {
                let t = pc.sections[j].key;
                principal_normal.iter().any(|big| t.is_subsection_of(big))
            })
        })
        .collect();
    Ok(DecompositionReport {
        section: key,
        factors,
        uncovered,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::algebraic_automorphisms;

    #[test]
    fn base_tuple_examples() {
        assert_eq!(base_tuple(&CirculantScheme::regular(12)), vec![0, 6, 3, 4]);
        assert_eq!(base_tuple(&CirculantScheme::trivial(8)), vec![0, 4, 2, 1]);
        assert_eq!(base_tuple(&CirculantScheme::trivial(7)), vec![0, 1]);
    }

    #[test]
    fn regular_scheme_is_discrete_everywhere() {
        let x = CirculantScheme::regular(12);
        let r = section_discreteness_check(&x, &base_tuple(&x)).unwrap();
        assert!(r.all_discrete());
        assert_eq!(r.sections.len(), x.sections().len());
    }

    #[test]
    fn identity_multiplier() {
        let x = CirculantScheme::of_graph(12, &[1, 11, 4, 8]).unwrap();
        let t = base_tuple(&x);
        let m = extract_multiplier(&x, &AlgebraicIso::identity(x.rank()), &t, &t).unwrap();
        assert!(m.is_valid(), "{:?}", m.violations);
        for (k, s) in &m.sigma {
            assert!(s.iter().enumerate().all(|(i, &j)| i == j), "{k:?}");
        }
    }

    #[test]
    fn unit_five_on_regular_12() {
        let x = CirculantScheme::regular(12);
        let map = (0..12).map(|d| x.set_of(5 * d % 12)).collect();
        let phi = AlgebraicIso { map };
        assert!(algebraic_automorphisms(x.config()).contains(&phi));
        let t = base_tuple(&x);
        let t5: Vec<usize> = t.iter().map(|&g| 5 * g % 12).collect();
        let m = extract_multiplier(&x, &phi, &t, &t5).unwrap();
        assert!(m.is_valid(), "{:?}", m.violations);
        assert_eq!(m.unit[&SectionKey::new(12, 1)], Some(5));
        assert_eq!(is_induced_by_isomorphism(&x, &phi).unwrap().map[1], 5);
    }

    #[test]
    fn regular_decomposes_into_primary_parts() {
        let x = CirculantScheme::regular(12);
        let r =
            check_decomposition(&x, SectionKey::new(12, 1), &NormalityOptions::default()).unwrap();
        assert_eq!(
            r.factors,
            vec![SectionKey::new(4, 1), SectionKey::new(3, 1)]
        );
        assert!(r.holds());
    }
}
