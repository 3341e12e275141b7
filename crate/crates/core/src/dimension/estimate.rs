//! WL-dimension estimates of circulant schemes relative to a corpus.

use serde::Serialize;

use crate::algebra::{enumerate_algebraic_isos, find_isomorphism, AlgebraicIso};
use crate::arith::big_omega;
use crate::circulant::CirculantScheme;
use crate::error::Result;
use crate::wl::{wl_m_equivalent, WlOptions};

/// An algebraic isomorphism φ: X → Y not induced by any isomorphism,
/// with the WL_m-equivalence verdicts for m = 3, 4, ...
#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    /// Index of Y in the corpus schemes.
    pub target: usize,
    pub phi: AlgebraicIso,
    /// `equivalent[i]` is the verdict at m = i + 3.
    pub equivalent: Vec<bool>,
}

impl Witness {
    /// Least m at which X and Y are not WL_m-equivalent w.r.t. φ.
    pub fn separated_at(&self) -> Option<usize> {
        self.equivalent.iter().position(|&e| !e).map(|i| i + 3)
    }
}

/// Outcome of [`estimate_dimension`].
#[derive(Clone, Debug, Serialize)]
pub struct DimensionReport {
    pub n: usize,
    pub rank: usize,
    /// Smallest m ≥ 2 identifying X within the corpus; `None` if above
    /// `max_m`.
    pub estimate: Option<usize>,
    pub max_m: usize,
    /// Ω(n) + 3.
    pub bound: usize,
    pub witnesses: Vec<Witness>,
    /// Equivalence never reappears after it failed at a smaller m.
    pub monotone: bool,
}

impl DimensionReport {
    pub fn within_bound(&self) -> bool {
        self.estimate.is_some_and(|m| m <= self.bound)
    }

    pub fn estimate_label(&self) -> String {
        match self.estimate {
            Some(m) => m.to_string(),
            None => format!(">{}", self.max_m),
        }
    }
}

/// Options for [`estimate_dimension`].
#[derive(Clone, Debug)]
pub struct EstimateOptions {
    pub max_m: usize,
    pub wl: WlOptions,
}

impl Default for EstimateOptions {
    fn default() -> Self {
        EstimateOptions {
            max_m: 4,
            wl: WlOptions::default(),
        }
    }
}

/// Smallest m ≥ 2 such that every φ ∈ iso_alg(X, Y), Y in `corpus`, with
/// X and Y WL_m-equivalent w.r.t. φ, is induced by an isomorphism.
///
/// Every algebraic isomorphism passes at m = 2, so only φ with no inducing
/// isomorphism matter; each is refined at m = 3..=max_m.
pub fn estimate_dimension(
    x: &CirculantScheme,
    corpus: &[CirculantScheme],
    opts: &EstimateOptions,
) -> Result<DimensionReport> {
    let n = x.n();
    let cx = x.config();
    let mut witnesses = Vec::new();
    for (i, y) in corpus.iter().enumerate() {
        if y.n() != n || y.rank() != x.rank() {
            continue;
        }
        let cy = y.config();
        for phi in enumerate_algebraic_isos(cx, cy) {
            if find_isomorphism(cx, cy, &phi).is_some() {
                continue;
            }
            let mut equivalent = Vec::new();
            for m in 3..=opts.max_m.max(2) {
                equivalent.push(wl_m_equivalent(cx, cy, &phi, m, &opts.wl)?);
            }
            witnesses.push(Witness {
                target: i,
                phi,
                equivalent,
            });
        }
    }
    let monotone = witnesses
        .iter()
        .all(|w| w.equivalent.windows(2).all(|p| p[0] || !p[1]));
    let mut estimate = Some(2);
    for w in &witnesses {
        match (w.separated_at(), estimate) {
            (Some(m), Some(e)) => estimate = Some(e.max(m)),
            (None, _) => estimate = None,
            _ => {}
        }
    }
    if opts.max_m < 2 {
        estimate = None;
    }
    Ok(DimensionReport {
        n,
        rank: x.rank(),
        estimate,
        max_m: opts.max_m,
        bound: big_omega(n) + 3,
        witnesses,
        monotone,
    })
}
