//! Corpus-wide verification runs: the dimension bound and the reduction
//! to singular extensions.

use rayon::prelude::*;
use serde::Serialize;

use super::corpus::{cayley_class_size, enumerate_graphs, enumerate_schemes, CorpusOptions};
use super::estimate::{estimate_dimension, DimensionReport, EstimateOptions};
use crate::algebra::{algebraic_automorphisms, is_m_extendable, AlgebraicIso, ExtendOptions};
use crate::arith::big_omega;
use crate::circulant::{
    extend_algebraic_automorphism, singular_classes, singular_extension, CirculantScheme,
    SectionKey,
};
use crate::error::{Error, Result};
use crate::wl::{wl_m_equivalent, WlOptions};

/// One graph of the main-theorem table.
#[derive(Clone, Debug, Serialize)]
pub struct MainRow {
    pub order: usize,
    pub connection_set: Vec<usize>,
    /// Number of connection sets in the Cayley class of this graph.
    pub class_size: usize,
    pub rank: usize,
    pub omega: usize,
    pub estimate: Option<usize>,
    pub max_m: usize,
    pub bound: usize,
    pub witnesses: usize,
    pub monotone: bool,
}

impl MainRow {
    pub fn estimate_label(&self) -> String {
        match self.estimate {
            Some(m) => m.to_string(),
            None => format!(">{}", self.max_m),
        }
    }

    pub fn within_bound(&self) -> bool {
        self.estimate.is_some_and(|m| m <= self.bound)
    }
}

/// All rows of a main-theorem run, in corpus order per order.
#[derive(Clone, Debug, Serialize)]
pub struct MainSummary {
    pub rows: Vec<MainRow>,
}

fn set_label(s: &[usize]) -> String {
    let items: Vec<String> = s.iter().map(|d| d.to_string()).collect();
    format!("{{{}}}", items.join(" "))
}

impl MainSummary {
    pub fn all_within_bound(&self) -> bool {
        self.rows.iter().all(MainRow::within_bound)
    }

    /// Number of connection sets covered, counting every member of each
    /// Cayley class.
    pub fn graph_count(&self) -> usize {
        self.rows.iter().map(|r| r.class_size).sum()
    }

    /// Fraction of connection sets whose estimate is 2.
    pub fn fraction_at_two(&self) -> f64 {
        let total = self.graph_count();
        if total == 0 {
            return 1.0;
        }
        let k: usize = self
            .rows
            .iter()
            .filter(|r| r.estimate == Some(2))
            .map(|r| r.class_size)
            .sum();
        k as f64 / total as f64
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("order,connectionSet,rank,omega,estimate,bound,witnesses\n");
        for r in &self.rows {
            s.push_str(&format!(
                "{},\"{}\",{},{},{},{},{}\n",
                r.order,
                set_label(&r.connection_set),
                r.rank,
                r.omega,
                r.estimate_label(),
                r.bound,
                r.witnesses
            ));
        }
        s
    }

    pub fn to_table(&self) -> String {
        let head = [
            "order",
            "connectionSet",
            "rank",
            "omega",
            "estimate",
            "bound",
            "witnesses",
        ];
        let cells: Vec<[String; 7]> = self
            .rows
            .iter()
            .map(|r| {
                [
                    r.order.to_string(),
                    set_label(&r.connection_set),
                    r.rank.to_string(),
                    r.omega.to_string(),
                    r.estimate_label(),
                    r.bound.to_string(),
                    r.witnesses.to_string(),
                ]
            })
            .collect();
        let mut width: Vec<usize> = head.iter().map(|h| h.len()).collect();
        for row in &cells {
            for (w, c) in width.iter_mut().zip(row) {
                *w = (*w).max(c.chars().count());
            }
        }
        let line = |items: Vec<&str>| {
            let padded: Vec<String> = items
                .iter()
                .zip(&width)
                .map(|(c, &w)| format!("{c:<w$}"))
                .collect();
            padded.join("  ").trim_end().to_string() + "\n"
        };
        let mut s = line(head.to_vec());
        for row in &cells {
            s.push_str(&line(row.iter().map(String::as_str).collect()));
        }
        s
    }
}

/// Estimates the WL-dimension of every circulant graph with order in
/// `orders`. The reference class is every circulant scheme of that order
/// when the order is within the scheme cap, and the closures of the graph
/// corpus otherwise.
pub fn verify_main_theorem(
    orders: impl IntoIterator<Item = usize>,
    directed: bool,
    corpus_opts: &CorpusOptions,
    opts: &EstimateOptions,
) -> Result<MainSummary> {
    let mut rows = Vec::new();
    for n in orders {
        let corpus = enumerate_graphs(n, directed, corpus_opts)?;
        let reference = if n <= corpus_opts.max_n_schemes {
            enumerate_schemes(n, corpus_opts)?.schemes
        } else {
            corpus.schemes.clone()
        };
        let reports: Vec<DimensionReport> = corpus
            .schemes
            .par_iter()
            .map(|x| estimate_dimension(x, &reference, opts))
            .collect::<Result<_>>()?;
        for (g, &si) in corpus.graphs.iter().zip(&corpus.graph_scheme) {
            let r = &reports[si];
            if r.estimate.is_none_or(|m| m > 2) {
                log::info!(
                    "n={n} S={g:?}: estimate {} with {} witnesses",
                    r.estimate_label(),
                    r.witnesses.len()
                );
            }
            rows.push(MainRow {
                order: n,
                connection_set: g.clone(),
                class_size: cayley_class_size(g, n),
                rank: r.rank,
                omega: big_omega(n),
                estimate: r.estimate,
                max_m: r.max_m,
                bound: r.bound,
                witnesses: r.witnesses.len(),
                monotone: r.monotone,
            });
        }
    }
    Ok(MainSummary { rows })
}

/// Result for one φ ∈ aut_alg(X) that is WL_m-equivalent to itself.
#[derive(Clone, Debug, Serialize)]
pub struct ReductionCase {
    pub phi: AlgebraicIso,
    /// φ is (m − 2)-extendable.
    pub extendable: bool,
    /// Some φ* extending φ keeps X* WL_m-equivalent to itself.
    pub lifted: Option<AlgebraicIso>,
    /// For every ψ ∈ aut_alg((X*)_S) exactly one φ* extends φ with
    /// (φ*)_S = ψ.
    pub unique_extensions: bool,
}

/// Outcome of [`verify_reduction`].
#[derive(Clone, Debug, Serialize)]
pub struct ReductionReport {
    pub n: usize,
    pub m: usize,
    pub rank: usize,
    pub extended_rank: usize,
    pub cases: Vec<ReductionCase>,
}

impl ReductionReport {
    pub fn holds(&self) -> bool {
        self.cases
            .iter()
            .all(|c| c.extendable && c.lifted.is_some() && c.unique_extensions)
    }
}

/// For every φ ∈ aut_alg(X) with X WL_m-equivalent to itself w.r.t. φ,
/// checks that φ is (m − 2)-extendable and that some φ* ∈ aut_alg(X*)
/// extending φ keeps the singular extension X* WL_m-equivalent to itself.
/// The extension is taken at the first singular class.
pub fn verify_reduction(x: &CirculantScheme, m: usize, wl: &WlOptions) -> Result<ReductionReport> {
    let class = singular_classes(x)
        .into_iter()
        .find(|r| r.is_singular)
        .ok_or_else(|| Error::NotSingular("scheme has no singular class".into()))?;
    verify_reduction_at(x, class.smallest, m, wl)
}

/// [`verify_reduction`] for the singular extension at section `key`.
pub fn verify_reduction_at(
    x: &CirculantScheme,
    key: SectionKey,
    m: usize,
    wl: &WlOptions,
) -> Result<ReductionReport> {
    let xs = singular_extension(x, key)?;
    let cx = x.config();
    let cs = xs.config();
    let psis = algebraic_automorphisms(xs.section_scheme(key)?.config());
    let ext_opts = ExtendOptions {
        known_automorphisms: translations(x.n()),
        ..ExtendOptions::default()
    };
    let mut cases = Vec::new();
    for phi in algebraic_automorphisms(cx) {
        if !wl_m_equivalent(cx, cx, &phi, m, wl)? {
            continue;
        }
        let extendable = is_m_extendable(cx, cx, &phi, m.saturating_sub(2), &ext_opts);
        let mut lifted = None;
        let mut unique_extensions = true;
        for psi in &psis {
            let star = match extend_algebraic_automorphism(x, &xs, key, &phi, psi) {
                Ok(s) => s,
                Err(Error::NoExtension(_)) | Err(Error::NotUnique(_)) => {
                    unique_extensions = false;
                    continue;
                }
                Err(e) => return Err(e),
            };
            if lifted.is_none() && wl_m_equivalent(cs, cs, &star, m, wl)? {
                lifted = Some(star);
            }
        }
        cases.push(ReductionCase {
            phi,
            extendable,
            unique_extensions,
            lifted,
        });
    }
    Ok(ReductionReport {
        n: x.n(),
        m,
        rank: x.rank(),
        extended_rank: xs.rank(),
        cases,
    })
}

/// The translations d ↦ d + g of Z_n as point permutations.
pub fn translations(n: usize) -> Vec<Vec<usize>> {
    (1..n)
        .map(|g| (0..n).map(|d| (d + g) % n).collect())
        .collect()
}
