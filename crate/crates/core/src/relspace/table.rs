use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::maps::MapSpec;
use crate::series::Truncation;

use super::{derivation_space, dspace_coef_spans, duality_space};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimsRow {
    pub weight: usize,
    pub dim_duality: usize,
    pub dim_derivation: usize,
    pub dim_intersection: usize,
    /// Dimension of the coefficient span for the first spec.
    pub dim_coef_span: Option<usize>,
    /// Whether every spec's coefficient span equals the intersection.
    pub coef_span_equal: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DimsTable {
    pub restrict_h0: bool,
    pub specs: Vec<MapSpec>,
    #[serde(rename = "box")]
    pub trunc: Option<Truncation>,
    pub rows: Vec<DimsRow>,
    /// Smallest weight at which the intersection is strictly smaller than
    /// the duality space.
    pub strict_inclusion_weight: Option<usize>,
}

/// Dimensions of the duality space, the derivation space and their
/// intersection for weights `1..=max_w`, plus the coefficient span of
/// `(tau - id)(D_Delta)` for each spec using `u`-degrees up to `u_cap`.
pub fn dims_table(
    max_w: usize,
    specs: &[MapSpec],
    restrict_h0: bool,
    u_cap: Option<usize>,
) -> Result<DimsTable> {
    let u_cap = u_cap.unwrap_or(max_w);
    let spaces: Vec<_> = (1..=max_w)
        .into_par_iter()
        .map(|w| {
            let (d, p) = rayon::join(
                || duality_space(w, restrict_h0),
                || derivation_space(w, restrict_h0),
            );
            let i = d.intersect(&p).expect("same weight");
            (d, p, i)
        })
        .collect();
    let coef: Vec<_> = specs
        .par_iter()
        .map(|s| dspace_coef_spans(max_w, s, restrict_h0, u_cap))
        .collect::<Result<_>>()?;
    let rows: Vec<DimsRow> = spaces
        .iter()
        .zip(1..)
        .map(|((d, p, i), w)| DimsRow {
            weight: w,
            dim_duality: d.dim(),
            dim_derivation: p.dim(),
            dim_intersection: i.dim(),
            dim_coef_span: coef.first().map(|c| c[w].dim()),
            coef_span_equal: (!coef.is_empty()).then(|| coef.iter().all(|c| &c[w] == i)),
        })
        .collect();
    let trunc = specs
        .iter()
        .map(MapSpec::s)
        .max()
        .map(|s| Truncation::new(s, max_w, u_cap.min(max_w)));
    Ok(DimsTable {
        restrict_h0,
        specs: specs.to_vec(),
        trunc,
        strict_inclusion_weight: strict_inclusion_weight(&rows),
        rows,
    })
}

pub fn strict_inclusion_weight(rows: &[DimsRow]) -> Option<usize> {
    rows.iter()
        .find(|r| r.dim_intersection < r.dim_duality)
        .map(|r| r.weight)
}

impl DimsTable {
    pub fn to_csv(&self) -> String {
        let specs: Vec<String> = self.specs.iter().map(|s| s.to_string()).collect();
        let specs = specs.join(";");
        let trunc = self.trunc.map(|t| t.to_string()).unwrap_or_default();
        let mut out = String::from(
            "weight,dim_duality,dim_derivation,dim_intersection,dim_coef_span,specs,box\n",
        );
        for r in &self.rows {
            let coef = r.dim_coef_span.map(|d| d.to_string()).unwrap_or_default();
            out.push_str(&format!(
                "{},{},{},{},{},\"{}\",\"{}\"\n",
                r.weight, r.dim_duality, r.dim_derivation, r.dim_intersection, coef, specs, trunc
            ));
        }
        out
    }
}
