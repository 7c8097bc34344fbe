//! Exact linear algebra on the weight-graded pieces of `H`: the spaces of
//! duality and derivation relations, their intersection, the coefficient span
//! of `(tau - id)(D_Delta)`, and graded kernels.

mod cor44;
mod kernel;
pub mod linalg;
mod table;

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::Serialize;

use crate::algebra::{to_xy_basis, Alphabet, NCPoly, Word};
use crate::error::{Error, Result};
use crate::maps::{partial_poly, spec_hom, tau, tau_poly, theta, MapSpec};
use crate::rational::Rational;
use crate::series::{MultiExponent, TruncSeries, Truncation};

pub use cor44::{membership_cor44, Cor44};
pub use kernel::{graded_kernel, pairwise_kernel, pairwise_triviality, KernelMap};
pub use linalg::Echelon;
pub use table::{dims_table, strict_inclusion_weight, DimsRow, DimsTable};

/// A subspace of the weight-`w` piece of `H`, stored in reduced row echelon
/// form over the basis of words ordered by their bit encoding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceBasis {
    weight: usize,
    ech: Echelon,
}

fn coords(p: &NCPoly, w: usize) -> Result<Vec<(usize, Rational)>> {
    let p = to_xy_basis(p);
    p.terms()
        .map(|(word, c)| {
            if word.len() != w {
                Err(Error::Grade {
                    expected: w,
                    found: word.len(),
                })
            } else {
                Ok((word.bits() as usize, c.clone()))
            }
        })
        .collect()
}

fn poly_of_row<'a>(w: usize, row: impl IntoIterator<Item = &'a (usize, Rational)>) -> NCPoly {
    NCPoly::from_terms(
        Alphabet::XY,
        row.into_iter()
            .map(|(c, v)| (Word::from_bits(w, *c as u64), v.clone())),
    )
}

impl SubspaceBasis {
    pub fn zero(weight: usize) -> SubspaceBasis {
        SubspaceBasis {
            weight,
            ech: Echelon::new(),
        }
    }

    /// The line spanned by `z^w`.
    pub fn z_power(weight: usize) -> SubspaceBasis {
        let mut s = SubspaceBasis::zero(weight);
        s.ech.insert(
            Word::all_of_length(weight).map(|v| (v.bits() as usize, Rational::from_integer(1))),
        );
        s
    }

    pub fn weight(&self) -> usize {
        self.weight
    }

    pub fn dim(&self) -> usize {
        self.ech.rank()
    }

    pub fn ambient_dim(&self) -> u64 {
        1u64 << self.weight
    }

    pub fn basis(&self) -> Vec<NCPoly> {
        self.ech
            .rows()
            .map(|(_, r)| poly_of_row(self.weight, r))
            .collect()
    }

    pub fn pivot_words(&self) -> Vec<Word> {
        self.ech
            .pivots()
            .map(|c| Word::from_bits(self.weight, c as u64))
            .collect()
    }

    /// Adds a generator; returns true if the dimension grew.
    pub fn insert(&mut self, p: &NCPoly) -> Result<bool> {
        Ok(self.ech.insert(coords(p, self.weight)?))
    }

    pub fn contains(&self, p: &NCPoly) -> Result<bool> {
        Ok(self.ech.contains(coords(p, self.weight)?))
    }

    fn check_weight(&self, other: &SubspaceBasis) -> Result<()> {
        if self.weight != other.weight {
            return Err(Error::Grade {
                expected: self.weight,
                found: other.weight,
            });
        }
        Ok(())
    }

    pub fn is_subspace_of(&self, other: &SubspaceBasis) -> Result<bool> {
        self.check_weight(other)?;
        Ok(self
            .ech
            .rows()
            .all(|(_, r)| other.ech.contains(r.iter().cloned())))
    }

    pub fn sum(&self, other: &SubspaceBasis) -> Result<SubspaceBasis> {
        self.check_weight(other)?;
        let mut out = self.clone();
        for (_, r) in other.ech.rows() {
            out.ech.insert(r.iter().cloned());
        }
        Ok(out)
    }

    /// Exact intersection by the Zassenhaus construction: echelonize
    /// `[a | a]` and `[b | 0]`; rows with a zero left half span `A ∩ B`.
    pub fn intersect(&self, other: &SubspaceBasis) -> Result<SubspaceBasis> {
        self.check_weight(other)?;
        let off = 1usize << self.weight;
        let mut ech = Echelon::new();
        for (_, r) in self.ech.rows() {
            ech.insert(
                r.iter()
                    .cloned()
                    .chain(r.iter().map(|(c, v)| (c + off, v.clone()))),
            );
        }
        for (_, r) in other.ech.rows() {
            ech.insert(r.iter().cloned());
        }
        let mut out = SubspaceBasis::zero(self.weight);
        for (p, r) in ech.rows() {
            if p >= off {
                out.ech.insert(r.iter().map(|(c, v)| (c - off, v.clone())));
            }
        }
        Ok(out)
    }
}

impl fmt::Display for SubspaceBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "weight {}, dim {}", self.weight, self.dim())?;
        for p in self.basis() {
            write!(f, "\n  {}", p.render())?;
        }
        Ok(())
    }
}

impl Serialize for SubspaceBasis {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SubspaceBasis", 3)?;
        st.serialize_field("weight", &self.weight)?;
        st.serialize_field("dim", &self.dim())?;
        let basis: Vec<String> = self.basis().iter().map(NCPoly::render).collect();
        st.serialize_field("basis", &basis)?;
        st.end()
    }
}

/// Row echelon basis of the span of `gens`, all homogeneous of weight `w`.
pub fn echelon_basis<'a>(
    gens: impl IntoIterator<Item = &'a NCPoly>,
    w: usize,
) -> Result<SubspaceBasis> {
    let mut out = SubspaceBasis::zero(w);
    for g in gens {
        out.insert(g)?;
    }
    Ok(out)
}

pub fn intersect(a: &SubspaceBasis, b: &SubspaceBasis) -> Result<SubspaceBasis> {
    a.intersect(b)
}

fn words(len: usize, restrict: bool) -> Vec<Word> {
    if restrict {
        Word::admissible_of_length(len).collect()
    } else {
        Word::all_of_length(len).collect()
    }
}

fn span_of(w: usize, gens: Vec<NCPoly>) -> SubspaceBasis {
    echelon_basis(&gens, w).expect("generators are homogeneous of weight w")
}

/// `span{(tau - id)(v)}` over the words `v` of weight `w`.
pub fn duality_space(w: usize, restrict_h0: bool) -> SubspaceBasis {
    let gens = words(w, restrict_h0)
        .into_iter()
        .filter(|v| v.dual() != *v)
        .map(|v| &NCPoly::word(v.dual()) - &NCPoly::word(v))
        .collect();
    span_of(w, gens)
}

/// `span{d_n(v)}` over `n >= 1` and words `v` of weight `w - n`.
pub fn derivation_space(w: usize, restrict_h0: bool) -> SubspaceBasis {
    let sources: Vec<(usize, Word)> = (1..=w)
        .flat_map(|n| words(w - n, restrict_h0).into_iter().map(move |v| (n, v)))
        .collect();
    let gens = sources
        .par_iter()
        .map(|&(n, v)| partial_poly(n, &NCPoly::word(v), None).expect("n >= 1"))
        .collect();
    span_of(w, gens)
}

/// `span{theta_i(v)}` over `i >= 1` and words `v` of weight `w - i`; equal to
/// the derivation space.
pub fn theta_space(w: usize, restrict_h0: bool) -> SubspaceBasis {
    let sources: Vec<(usize, Word)> = (1..=w)
        .flat_map(|i| words(w - i, restrict_h0).into_iter().map(move |v| (i, v)))
        .collect();
    let gens = sources
        .par_iter()
        .map(|&(i, v)| theta(i, &NCPoly::word(v)).expect("theta is defined"))
        .collect();
    span_of(w, gens)
}

/// `duality_space(w) ∩ derivation_space(w)`.
pub fn intersection_space(w: usize, restrict_h0: bool) -> SubspaceBasis {
    let (d, p) = rayon::join(
        || duality_space(w, restrict_h0),
        || derivation_space(w, restrict_h0),
    );
    d.intersect(&p).expect("same weight")
}

fn check_spec(spec: &MapSpec, trunc: Truncation) -> Result<()> {
    if spec.is_identity() {
        return Err(Error::ZeroSpec);
    }
    if spec.s() != trunc.s {
        return Err(Error::Usage(format!(
            "spec {spec} has {} entries, box has s = {}",
            spec.s(),
            trunc.s
        )));
    }
    Ok(())
}

/// The coefficient spans of `(tau - id)(D_Delta)` (or of `D_Delta^0`) at
/// every weight `0..=max_w`, using `u`-degrees up to `u_cap`.
///
/// `D_Delta` is the image of `Delta^{-1} + tau`, and `D_Delta^0` the image of
/// `H^0[[u]]`, so the coefficients of `(tau - id)(Delta^{-1} + tau)(v)` over
/// words `v` (admissible ones for `D_Delta^0`) already span everything.
pub fn dspace_coef_spans(
    max_w: usize,
    spec: &MapSpec,
    restrict_h0: bool,
    u_cap: usize,
) -> Result<Vec<SubspaceBasis>> {
    if spec.is_identity() {
        return Err(Error::ZeroSpec);
    }
    let t = Truncation::new(spec.s(), max_w, u_cap.min(max_w));
    let mut hom = spec_hom(&spec.inverse(), t)?;
    let mut out: Vec<SubspaceBasis> = (0..=max_w).map(SubspaceBasis::zero).collect();
    for len in 0..=max_w {
        for v in words(len, restrict_h0) {
            let v = TruncSeries::inject(&NCPoly::word(v), t);
            let km = &hom.apply(&v) + &tau(&v);
            let d = &tau(&km) - &km;
            for (_, p) in d.coeffs() {
                for (w, part) in split_by_weight(p) {
                    out[w].insert(&part)?;
                }
            }
        }
    }
    Ok(out)
}

fn split_by_weight(p: &NCPoly) -> BTreeMap<usize, NCPoly> {
    let mut parts: BTreeMap<usize, NCPoly> = BTreeMap::new();
    for (word, c) in p.terms() {
        parts
            .entry(word.len())
            .or_insert_with(NCPoly::zero)
            .add_term(word, c.clone());
    }
    parts
}

/// Weight-`w` coefficient span of `(tau - id)(D_Delta)`; with `restrict_h0`,
/// of `(tau - id)(D_Delta^0)`. The box supplies `s` and the `u`-degree cap.
pub fn dspace_coef_span(
    w: usize,
    spec: &MapSpec,
    restrict_h0: bool,
    trunc: Truncation,
) -> Result<SubspaceBasis> {
    check_spec(spec, trunc)?;
    let mut spans = dspace_coef_spans(w, spec, restrict_h0, trunc.u_cap)?;
    Ok(spans.swap_remove(w))
}

/// The same span computed the long way: echelonize the truncated series
/// `u^g (Delta^{-1} + tau)(v)` for all words `v` of weight `<= w` and shifts
/// `|g| <= N`, cut down to `H^0[[u]]` by linear conditions on the
/// coefficients, then apply `tau - id` and collect weight-`w` coefficients.
/// Feasible only for small `w`.
pub fn dspace_coef_span_by_shifts(
    w: usize,
    spec: &MapSpec,
    restrict_h0: bool,
    trunc: Truncation,
) -> Result<SubspaceBasis> {
    check_spec(spec, trunc)?;
    let t = Truncation::new(trunc.s, w, trunc.u_cap);
    let exps = t.exponents();
    let exp_index: BTreeMap<&MultiExponent, usize> =
        exps.iter().enumerate().map(|(i, a)| (a, i)).collect();
    let stride = 1usize << (w + 1);
    let adm_off = exps.len() * stride;
    let col = |a: &MultiExponent, v: Word| -> usize {
        let c = exp_index[a] * stride + ((1usize << v.len()) | v.bits() as usize);
        if restrict_h0 && v.is_admissible() {
            c + adm_off
        } else {
            c
        }
    };
    let mut hom = spec_hom(&spec.inverse(), t)?;
    let mut ech = Echelon::new();
    for len in 0..=w {
        for v in Word::all_of_length(len) {
            let v = TruncSeries::inject(&NCPoly::word(v), t);
            let km = &hom.apply(&v) + &tau(&v);
            for g in &exps {
                let shifted = km.shift(g);
                ech.insert(
                    shifted
                        .coeffs()
                        .flat_map(|(a, p)| p.terms().map(move |(v, c)| (col(a, v), c.clone()))),
                );
            }
        }
    }
    let mut out = SubspaceBasis::zero(w);
    for (pivot, row) in ech.rows() {
        if restrict_h0 && pivot < adm_off {
            continue;
        }
        let mut coeffs: BTreeMap<MultiExponent, NCPoly> = BTreeMap::new();
        for (c, x) in row {
            let c = c % adm_off;
            let (a, code) = (&exps[c / stride], c % stride);
            let len = usize::BITS - 1 - code.leading_zeros();
            let word = Word::from_bits(len as usize, (code ^ (1 << len)) as u64);
            coeffs
                .entry(a.clone())
                .or_insert_with(NCPoly::zero)
                .add_term(word, x.clone());
        }
        for p in coeffs.values() {
            let d = &tau_poly(p) - p;
            out.insert(&d.component(w))?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> NCPoly {
        let mut out = NCPoly::zero();
        for (sign, w) in s
            .split_whitespace()
            .collect::<Vec<_>>()
            .chunks(2)
            .map(|c| (c[0], c[1]))
        {
            let c = if sign == "+" { 1 } else { -1 };
            out.add_term(
                Word::parse(w, Alphabet::XY).unwrap(),
                Rational::from_integer(c),
            );
        }
        out
    }

    #[test]
    fn echelon_examples() {
        let a = p("+ xyy - xxy");
        let b = a.scale(&Rational::from_integer(2));
        assert_eq!(echelon_basis([&a, &b], 3).unwrap().dim(), 1);
        assert_eq!(echelon_basis([], 3).unwrap().dim(), 0);
        let g: Vec<NCPoly> = [("xxy", 1), ("xyy", 1)]
            .iter()
            .map(|(w, n)| partial_poly(*n, &p(&format!("+ {w}")), None).unwrap())
            .chain([partial_poly(2, &p("+ xy"), None).unwrap()])
            .collect();
        assert_eq!(echelon_basis(&g, 4).unwrap().dim(), 2);
        assert!(matches!(
            echelon_basis([&p("+ xy"), &p("+ xyy")], 2),
            Err(Error::Grade {
                expected: 2,
                found: 3
            })
        ));
    }

    #[test]
    fn small_spaces() {
        assert_eq!(duality_space(2, true).dim(), 0);
        assert_eq!(duality_space(3, true).dim(), 1);
        assert_eq!(duality_space(4, true).dim(), 1);
        assert_eq!(derivation_space(1, true).dim(), 0);
        assert_eq!(derivation_space(3, true).dim(), 1);
        assert_eq!(derivation_space(4, true).dim(), 2);
        let both = intersection_space(4, true);
        assert_eq!(both.dim(), 1);
        assert!(both.contains(&p("+ xxxy - xyyy")).unwrap());
        let a = duality_space(5, false);
        assert_eq!(a.intersect(&a).unwrap(), a);
        assert_eq!(a.intersect(&SubspaceBasis::zero(5)).unwrap().dim(), 0);
    }

    #[test]
    fn coef_span_examples() {
        let s1 = MapSpec::new(vec![1]);
        let t1 = Truncation::new(1, 4, 4);
        let a = dspace_coef_span(3, &s1, false, t1).unwrap();
        // x^2y - xy^2 and xyx - yxy = -d1(yx)
        assert_eq!(a.dim(), 2);
        assert_eq!(a, intersection_space(3, false));
        let b = dspace_coef_span(4, &s1, true, t1).unwrap();
        assert_eq!(b.dim(), 1);
        assert!(b.contains(&p("+ xxxy - xyyy")).unwrap());
        let s2 = MapSpec::new(vec![1, -1]);
        let c = dspace_coef_span(3, &s2, false, Truncation::new(2, 3, 3)).unwrap();
        assert_eq!(c, a);
        assert_eq!(
            dspace_coef_span(
                3,
                &MapSpec::new(vec![0, 0]),
                false,
                Truncation::new(2, 3, 3)
            ),
            Err(Error::ZeroSpec)
        );
    }

    #[test]
    fn coef_span_matches_shifted_generators() {
        for (spec, s, max_w) in [(vec![1], 1, 5), (vec![2], 1, 4), (vec![1, -1], 2, 4)] {
            let spec = MapSpec::new(spec);
            for w in 1..=max_w {
                for restrict in [false, true] {
                    let t = Truncation::new(s, w, w);
                    let fast = dspace_coef_span(w, &spec, restrict, t).unwrap();
                    let slow = dspace_coef_span_by_shifts(w, &spec, restrict, t).unwrap();
                    assert_eq!(fast, slow, "w={w} spec={spec} restrict={restrict}");
                }
            }
        }
    }

    #[test]
    fn theta_and_partial_spans_agree() {
        for w in 1..=6 {
            assert_eq!(theta_space(w, true), derivation_space(w, true));
            assert_eq!(theta_space(w, false), derivation_space(w, false));
        }
    }
}
