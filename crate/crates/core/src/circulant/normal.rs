//! Normality of circulant schemes and quasinormality.

use std::collections::HashMap;

use super::singular::singular_classes;
use super::{CirculantScheme, SectionKey};
use crate::algebra::{isomorphisms_with_prefix, AlgebraicIso};
use crate::arith::gcd;
use crate::error::{Error, Result};

/// Limits for the automorphism search behind [`is_normal`].
#[derive(Clone, Debug)]
pub struct NormalityOptions {
    pub max_n: usize,
}

impl Default for NormalityOptions {
    fn default() -> Self {
        NormalityOptions { max_n: 20 }
    }
}

/// Whether the translation group is normal in Aut(X), i.e. Aut(X) lies in
/// the holomorph {d ↦ ud + b}.
///
/// Since translations are automorphisms, this holds iff every automorphism
/// fixing 0 is a unit multiplication. Such an automorphism is determined by
/// the image β of 1, so it suffices to search automorphisms with prefix
/// (0, 1) ↦ (0, β) and compare each with d ↦ βd.
pub fn is_normal(x: &CirculantScheme, opts: &NormalityOptions) -> Result<bool> {
    let n = x.n();
    if n > opts.max_n {
        return Err(Error::CapExceeded {
            what: "normality test degree n",
            value: n,
            cap: opts.max_n,
            flag: "--normal-max-n",
        });
    }
    if n <= 2 {
        return Ok(true);
    }
    let cc = x.config();
    let id = AlgebraicIso::identity(cc.rank());
    for beta in 1..n {
        let (found, _) = isomorphisms_with_prefix(cc, cc, &id, &[0, 1], &[0, beta], 2);
        if found.is_empty() {
            continue;
        }
        if gcd(beta, n) != 1 || !x.multiplier_fixes_sets(beta) {
            return Ok(false);
        }
        if found
            .iter()
            .any(|f| (0..n).any(|d| f.map[d] != (beta * d) % n))
        {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Quasinormality read off the singular classes: every singular class has
/// order 3.
pub fn is_quasinormal(x: &CirculantScheme) -> bool {
    singular_classes(x)
        .iter()
        .filter(|r| r.is_singular)
        .all(|r| r.order == 3)
}

/// Quasinormality by definition: every trivial section is projectively
/// equivalent to a subsection of a normal section. Slow; meant as a cross
/// check at small degree.
pub fn is_quasinormal_by_definition(x: &CirculantScheme, opts: &NormalityOptions) -> Result<bool> {
    let pc = x.projective_classes();
    let mut normal: HashMap<SectionKey, bool> = HashMap::new();
    for s in &pc.sections {
        normal.insert(s.key, is_normal(&s.scheme, opts)?);
    }
    for (i, s) in pc.sections.iter().enumerate() {
        if !s.is_trivial() {
            continue;
        }
        let class = &pc.classes[pc.class_of[i]];
        let ok = class.iter().any(|&j| {
            let t = pc.sections[j].key;
            pc.sections
                .iter()
                .any(|big| normal[&big.key] && t.is_subsection_of(&big.key))
        });
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_order_examples() {
        let o = NormalityOptions::default();
        for p in [2, 3, 5, 7, 11, 13] {
            assert!(is_normal(&CirculantScheme::regular(p), &o).unwrap());
            // trivial scheme of prime order p ≥ 4 has Aut = Sym(p)
            assert_eq!(is_normal(&CirculantScheme::trivial(p), &o).unwrap(), p < 4);
        }
    }

    #[test]
    fn regular_schemes_are_normal() {
        let o = NormalityOptions::default();
        for n in 1..=16 {
            assert!(is_normal(&CirculantScheme::regular(n), &o).unwrap());
        }
    }

    #[test]
    fn cap_is_reported() {
        let o = NormalityOptions { max_n: 4 };
        assert!(matches!(
            is_normal(&CirculantScheme::regular(5), &o),
            Err(Error::CapExceeded { .. })
        ));
    }
}
