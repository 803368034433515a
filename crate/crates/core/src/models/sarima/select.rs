use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{sarima_fit, SarimaModel, SarimaOrder};
use crate::series::TimeSeries;
use crate::{Error, Result};

/// Cartesian search space of SARIMA orders.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OrderGrid {
    pub p: Vec<usize>,
    pub d: Vec<usize>,
    pub q: Vec<usize>,
    #[serde(rename = "P")]
    pub sp: Vec<usize>,
    #[serde(rename = "D")]
    pub sd: Vec<usize>,
    #[serde(rename = "Q")]
    pub sq: Vec<usize>,
    pub s: usize,
}

impl Default for OrderGrid {
    fn default() -> Self {
        Self {
            p: vec![0, 1, 2],
            d: vec![0, 1],
            q: vec![0, 1, 2],
            sp: vec![0, 1],
            sd: vec![0, 1],
            sq: vec![0, 1],
            s: 7,
        }
    }
}

impl OrderGrid {
    pub fn single(order: SarimaOrder) -> Self {
        Self {
            p: vec![order.p],
            d: vec![order.d],
            q: vec![order.q],
            sp: vec![order.sp],
            sd: vec![order.sd],
            sq: vec![order.sq],
            s: order.s,
        }
    }

    /// Candidates in lexicographic order, duplicates removed.
    pub fn candidates(&self) -> Vec<SarimaOrder> {
        let mut out = Vec::new();
        for &p in &self.p {
            for &d in &self.d {
                for &q in &self.q {
                    for &sp in &self.sp {
                        for &sd in &self.sd {
                            for &sq in &self.sq {
                                out.push(SarimaOrder::seasonal(p, d, q, sp, sd, sq, self.s));
                            }
                        }
                    }
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

/// Every candidate's fitted model (or failure) plus the winner.
#[derive(Debug)]
pub struct SelectionOutcome {
    pub selected: SarimaModel,
    pub candidates: Vec<(SarimaOrder, Result<f64>)>,
}

/// Picks the candidate with the smallest AICc. Ties go to fewer parameters,
/// then to the lexicographically smaller order. Failed fits are skipped.
pub fn sarima_order_select(train: &TimeSeries, grid: &OrderGrid) -> Result<SelectionOutcome> {
    let candidates = grid.candidates();
    if candidates.is_empty() {
        return Err(Error::Selection("empty grid".into()));
    }
    let fits: Vec<(SarimaOrder, Result<SarimaModel>)> = candidates
        .par_iter()
        .map(|order| (*order, sarima_fit(train, *order)))
        .collect();

    let best = fits
        .iter()
        .filter_map(|(o, r)| r.as_ref().ok().filter(|m| m.aicc.is_finite()).map(|m| (o, m)))
        .min_by(|(oa, a), (ob, b)| {
            a.aicc
                .total_cmp(&b.aicc)
                .then(oa.n_free().cmp(&ob.n_free()))
                .then(oa.cmp(ob))
        })
        .map(|(_, m)| m.clone());
    let summary = fits
        .into_iter()
        .map(|(o, r)| (o, r.map(|m| m.aicc)))
        .collect();
    match best {
        Some(selected) => Ok(SelectionOutcome {
            selected,
            candidates: summary,
        }),
        None => Err(Error::Selection(format!("all {} candidates failed", candidates.len()))),
    }
}
