//! Truncated power series in commuting variables `u_1, ..., u_s` with
//! coefficients in the free algebra.
//!
//! Every series lives in a box: words longer than the weight cap and
//! monomials whose total `u`-degree exceeds the `u` cap are dropped as soon as
//! they are produced. All maps in this crate weakly increase both gradings,
//! so nothing dropped can feed back into a kept coefficient.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::Serialize;
use smallvec::SmallVec;

use crate::algebra::{Alphabet, NCPoly, Word};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Shape of the box: number of `u` variables, weight cap `W`, `u`-degree cap `N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Truncation {
    pub s: usize,
    #[serde(rename = "W")]
    pub weight_cap: usize,
    #[serde(rename = "N")]
    pub u_cap: usize,
}

impl Truncation {
    pub fn new(s: usize, weight_cap: usize, u_cap: usize) -> Truncation {
        assert!(s >= 1, "a box needs at least one u variable");
        Truncation {
            s,
            weight_cap,
            u_cap,
        }
    }

    pub fn contains(&self, other: &Truncation) -> bool {
        self.s == other.s && self.weight_cap >= other.weight_cap && self.u_cap >= other.u_cap
    }

    /// All exponents of the box with total degree `n`, in canonical order.
    pub fn exponents_of_total(&self, n: usize) -> Vec<MultiExponent> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; self.s];
        fn rec(i: usize, left: usize, cur: &mut Vec<u32>, out: &mut Vec<MultiExponent>) {
            if i + 1 == cur.len() {
                cur[i] = left as u32;
                out.push(MultiExponent::new(cur));
                return;
            }
            for k in (0..=left).rev() {
                cur[i] = k as u32;
                rec(i + 1, left - k, cur, out);
            }
        }
        rec(0, n, &mut cur, &mut out);
        out
    }

    /// Every exponent of the box.
    pub fn exponents(&self) -> Vec<MultiExponent> {
        (0..=self.u_cap)
            .flat_map(|n| self.exponents_of_total(n))
            .collect()
    }
}

impl fmt::Display for Truncation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s={} W={} N={}", self.s, self.weight_cap, self.u_cap)
    }
}

/// Exponent vector of a monomial `u_1^{i_1} ... u_s^{i_s}`.
///
/// Ordered by total degree, then so that `u1` sorts before `u2`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiExponent(SmallVec<[u32; 4]>);

impl MultiExponent {
    pub fn new(exps: &[u32]) -> MultiExponent {
        MultiExponent(SmallVec::from_slice(exps))
    }

    pub fn zero(s: usize) -> MultiExponent {
        MultiExponent(SmallVec::from_elem(0, s))
    }

    /// `u_j` (one-based `j`).
    pub fn unit(s: usize, j: usize) -> MultiExponent {
        let mut e = MultiExponent::zero(s);
        e.0[j - 1] = 1;
        e
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn s(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn get(&self, j: usize) -> u32 {
        self.0[j - 1]
    }

    pub fn with(&self, j: usize, value: u32) -> MultiExponent {
        let mut e = self.clone();
        e.0[j - 1] = value;
        e
    }

    pub fn add(&self, other: &MultiExponent) -> MultiExponent {
        debug_assert_eq!(self.s(), other.s());
        MultiExponent(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Rendering like `u1^2*u3`; the zero exponent renders as `1`.
    pub fn render(&self) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    format!("u{}", i + 1)
                } else {
                    format!("u{}^{}", i + 1, e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

impl Ord for MultiExponent {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total()
            .cmp(&other.total())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for MultiExponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for MultiExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

impl Serialize for MultiExponent {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.as_slice().serialize(s)
    }
}

/// First coefficient on which two series disagree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub exponent: MultiExponent,
    pub word: String,
    pub lhs_coeff: Rational,
    pub rhs_coeff: Rational,
}

/// An element of `H[[u_1, ..., u_s]]` reduced to a truncation box.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncSeries {
    trunc: Truncation,
    coeffs: BTreeMap<MultiExponent, NCPoly>,
}

impl TruncSeries {
    pub fn zero(trunc: Truncation) -> TruncSeries {
        TruncSeries {
            trunc,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(trunc: Truncation) -> TruncSeries {
        TruncSeries::inject(&NCPoly::one(), trunc)
    }

    /// `p` as a constant series, cut at the weight cap.
    pub fn inject(p: &NCPoly, trunc: Truncation) -> TruncSeries {
        TruncSeries::monomial(p, MultiExponent::zero(trunc.s), trunc)
    }

    /// `p * u^alpha`; empty if `alpha` is outside the box.
    pub fn monomial(p: &NCPoly, alpha: MultiExponent, trunc: Truncation) -> TruncSeries {
        assert_eq!(alpha.s(), trunc.s, "exponent length differs from s");
        let mut out = TruncSeries::zero(trunc);
        if alpha.total() <= trunc.u_cap {
            out.add_at(alpha, &p.truncate(trunc.weight_cap));
        }
        out
    }

    /// The variable `u_j` (one-based).
    pub fn u(j: usize, trunc: Truncation) -> TruncSeries {
        TruncSeries::monomial(&NCPoly::one(), MultiExponent::unit(trunc.s, j), trunc)
    }

    pub fn from_coeffs(
        trunc: Truncation,
        coeffs: impl IntoIterator<Item = (MultiExponent, NCPoly)>,
    ) -> TruncSeries {
        let mut out = TruncSeries::zero(trunc);
        for (alpha, p) in coeffs {
            if alpha.total() <= trunc.u_cap {
                out.add_at(alpha, &p.truncate(trunc.weight_cap));
            }
        }
        out
    }

    pub fn trunc(&self) -> Truncation {
        self.trunc
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Nonzero coefficients in exponent order.
    pub fn coeffs(&self) -> impl Iterator<Item = (&MultiExponent, &NCPoly)> {
        self.coeffs.iter()
    }

    /// Number of stored (exponent, word) pairs.
    pub fn term_count(&self) -> usize {
        self.coeffs.values().map(|p| p.len()).sum()
    }

    /// Coefficient of `u^alpha`.
    pub fn coef(&self, alpha: &MultiExponent) -> Result<NCPoly> {
        if alpha.s() != self.trunc.s {
            return Err(Error::Usage(format!(
                "exponent {alpha:?} has {} entries, box has s = {}",
                alpha.s(),
                self.trunc.s
            )));
        }
        if alpha.total() > self.trunc.u_cap {
            return Err(Error::OutOfBox(alpha.render(), self.trunc.u_cap));
        }
        Ok(self.coeffs.get(alpha).cloned().unwrap_or_default())
    }

    /// Adds `p` (assumed within the weight cap) at `alpha`.
    pub(crate) fn add_at(&mut self, alpha: MultiExponent, p: &NCPoly) {
        self.add_scaled_at(alpha, p, &Rational::one());
    }

    pub(crate) fn add_scaled_at(&mut self, alpha: MultiExponent, p: &NCPoly, c: &Rational) {
        if p.is_zero() || c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(alpha);
        use std::collections::btree_map::Entry;
        match entry {
            Entry::Vacant(e) => {
                e.insert(p.scale(c));
            }
            Entry::Occupied(mut e) => {
                e.get_mut().add_scaled(p, c);
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_box(&self, other: &TruncSeries) -> Result<()> {
        if self.trunc != other.trunc {
            return Err(Error::Truncation(self.trunc, other.trunc));
        }
        Ok(())
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &TruncSeries, c: &Rational) {
        assert_eq!(self.trunc, other.trunc, "series from different boxes");
        for (alpha, p) in &other.coeffs {
            self.add_scaled_at(alpha.clone(), p, c);
        }
    }

    pub fn scale(&self, c: &Rational) -> TruncSeries {
        let mut out = TruncSeries::zero(self.trunc);
        out.add_scaled(self, c);
        out
    }

    /// Cauchy product; the letters multiply noncommutatively, the `u`s are central.
    pub fn series_mul(&self, other: &TruncSeries) -> Result<TruncSeries> {
        self.check_box(other)?;
        let cap = self.trunc.weight_cap;
        let n = self.trunc.u_cap;
        let mut acc: BTreeMap<MultiExponent, NCPoly> = BTreeMap::new();
        for (a, p) in &self.coeffs {
            let ta = a.total();
            let pmin = p.min_weight().unwrap_or(0);
            for (b, q) in &other.coeffs {
                if ta + b.total() > n {
                    break;
                }
                if pmin + q.min_weight().unwrap_or(0) > cap {
                    continue;
                }
                acc.entry(a.add(b))
                    .or_default()
                    .add_product(p, q, &Rational::one(), cap);
            }
        }
        acc.retain(|_, p| !p.is_zero());
        Ok(TruncSeries {
            trunc: self.trunc,
            coeffs: acc,
        })
    }

    pub fn pow(&self, d: u32) -> TruncSeries {
        (0..d).fold(TruncSeries::one(self.trunc), |acc, _| &acc * self)
    }

    /// The constant part: weight-0 coefficient at the zero exponent.
    pub fn constant_term(&self) -> Rational {
        self.coeffs
            .get(&MultiExponent::zero(self.trunc.s))
            .map(|p| p.coeff(Word::EMPTY))
            .unwrap_or_else(Rational::zero)
    }

    /// `1 / g` for `g = 1 - h` with `h` of positive total grade: `sum h^i`.
    pub fn geometric_inverse(&self) -> Result<TruncSeries> {
        let c = self.constant_term();
        if !c.is_one() {
            return Err(Error::NotInvertible(c));
        }
        let one = TruncSeries::one(self.trunc);
        let h = &one - self;
        let mut r = one.clone();
        // Each pass fixes one more total grade; at most W + N + 1 are needed.
        for _ in 0..=(self.trunc.weight_cap + self.trunc.u_cap + 1) {
            let next = &one + &(&h * &r);
            if next == r {
                break;
            }
            r = next;
        }
        Ok(r)
    }

    /// Applies `f` to each coefficient and re-truncates.
    pub fn map_polys(&self, f: impl Fn(&NCPoly) -> NCPoly) -> TruncSeries {
        let mut out = TruncSeries::zero(self.trunc);
        for (alpha, p) in &self.coeffs {
            out.add_at(alpha.clone(), &f(p).truncate(self.trunc.weight_cap));
        }
        out
    }

    /// Multiplies by `u^gamma`, dropping what leaves the box.
    pub fn shift(&self, gamma: &MultiExponent) -> TruncSeries {
        let mut out = TruncSeries::zero(self.trunc);
        for (alpha, p) in &self.coeffs {
            let beta = alpha.add(gamma);
            if beta.total() <= self.trunc.u_cap {
                out.add_at(beta, p);
            }
        }
        out
    }

    /// Reinterprets the series in a smaller box.
    pub fn restrict(&self, trunc: Truncation) -> Result<TruncSeries> {
        if !self.trunc.contains(&trunc) {
            return Err(Error::Truncation(self.trunc, trunc));
        }
        Ok(TruncSeries::from_coeffs(
            trunc,
            self.coeffs.iter().map(|(a, p)| (a.clone(), p.clone())),
        ))
    }

    /// Same coefficients in a box with larger caps (same `s`).
    pub fn widen(&self, trunc: Truncation) -> Result<TruncSeries> {
        if !trunc.contains(&self.trunc) {
            return Err(Error::Truncation(self.trunc, trunc));
        }
        Ok(TruncSeries {
            trunc,
            coeffs: self.coeffs.clone(),
        })
    }

    /// Terms whose `u_j` exponent equals `k`.
    pub fn layer(&self, j: usize, k: u32) -> TruncSeries {
        TruncSeries {
            trunc: self.trunc,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(a, _)| a.get(j) == k)
                .map(|(a, p)| (a.clone(), p.clone()))
                .collect(),
        }
    }

    /// Divides by `u_j`. The `u_j`-free layer must vanish; the quotient is
    /// only known up to total degree `N - 1`, so it lives in that smaller box.
    pub fn divide_by_u(&self, j: usize) -> Result<TruncSeries> {
        if self.trunc.u_cap == 0 {
            return Err(Error::NotDivisible(format!(
                "u cap 0 leaves nothing to divide by u{j}"
            )));
        }
        if let Some((a, _)) = self.coeffs.iter().find(|(a, _)| a.get(j) == 0) {
            return Err(Error::NotDivisible(format!(
                "coefficient of {} has no factor u{j}",
                a.render()
            )));
        }
        let trunc = Truncation::new(self.trunc.s, self.trunc.weight_cap, self.trunc.u_cap - 1);
        Ok(TruncSeries::from_coeffs(
            trunc,
            self.coeffs
                .iter()
                .map(|(a, p)| (a.with(j, a.get(j) - 1), p.clone())),
        ))
    }

    /// Every coefficient lies in the admissible subalgebra.
    pub fn is_admissible(&self) -> bool {
        self.coeffs.values().all(|p| p.is_admissible())
    }

    /// First (exponent, word) where `self` and `other` differ, if any.
    pub fn first_mismatch(&self, other: &TruncSeries) -> Result<Option<Mismatch>> {
        self.check_box(other)?;
        let diff = self - other;
        Ok(diff.coeffs.iter().next().map(|(alpha, p)| {
            let (w, _) = p.terms().next().expect("stored coefficients are nonzero");
            let l = self
                .coeffs
                .get(alpha)
                .map(|q| q.coeff(w))
                .unwrap_or_default();
            let r = other
                .coeffs
                .get(alpha)
                .map(|q| q.coeff(w))
                .unwrap_or_default();
            Mismatch {
                exponent: alpha.clone(),
                word: w.render(Alphabet::XY),
                lhs_coeff: l,
                rhs_coeff: r,
            }
        }))
    }

    /// Rendering like `x*u1 + xy^2*u1^2`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (alpha, p) in &self.coeffs {
            for (w, c) in p.terms() {
                let mut factors = Vec::new();
                let abs = c.abs();
                if !abs.is_one() || (w.is_empty() && alpha.is_zero()) {
                    factors.push(abs.to_string());
                }
                if !w.is_empty() {
                    factors.push(w.render_compact(p.alphabet()));
                }
                if !alpha.is_zero() {
                    factors.push(alpha.render());
                }
                let term = factors.join("*");
                if out.is_empty() {
                    if c.is_negative() {
                        out.push('-');
                    }
                } else {
                    out.push_str(if c.is_negative() { " - " } else { " + " });
                }
                out.push_str(&term);
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncSeries[{}]({})", self.trunc, self.render())
    }
}

impl Add for &TruncSeries {
    type Output = TruncSeries;
    fn add(self, rhs: &TruncSeries) -> TruncSeries {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::one());
        out
    }
}

impl Sub for &TruncSeries {
    type Output = TruncSeries;
    fn sub(self, rhs: &TruncSeries) -> TruncSeries {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rational::one());
        out
    }
}

impl Mul for &TruncSeries {
    type Output = TruncSeries;
    fn mul(self, rhs: &TruncSeries) -> TruncSeries {
        self.series_mul(rhs).expect("series from different boxes")
    }
}

impl Neg for &TruncSeries {
    type Output = TruncSeries;
    fn neg(self) -> TruncSeries {
        self.scale(&-Rational::one())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for TruncSeries {
            type Output = TruncSeries;
            fn $m(self, rhs: TruncSeries) -> TruncSeries {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for TruncSeries {
    type Output = TruncSeries;
    fn neg(self) -> TruncSeries {
        -&self
    }
}

/// Free function form of [`TruncSeries::series_mul`].
pub fn series_mul(a: &TruncSeries, b: &TruncSeries) -> Result<TruncSeries> {
    a.series_mul(b)
}

/// Free function form of [`TruncSeries::geometric_inverse`].
pub fn geometric_inverse(g: &TruncSeries) -> Result<TruncSeries> {
    g.geometric_inverse()
}

/// `1 / (1 - p u_j)`.
pub fn geo(p: &TruncSeries, j: usize) -> TruncSeries {
    let t = p.trunc();
    let g = &TruncSeries::one(t) - &(p * &TruncSeries::u(j, t));
    g.geometric_inverse().expect("1 - p u has constant term 1")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s, Alphabet::XY).unwrap()
    }

    fn lit(s: &str) -> NCPoly {
        NCPoly::word(w(s))
    }

    fn e(v: &[u32]) -> MultiExponent {
        MultiExponent::new(v)
    }

    #[test]
    fn inject_truncates() {
        let t = Truncation::new(1, 3, 2);
        let s = TruncSeries::inject(&lit("xy"), t);
        assert_eq!(s.coef(&e(&[0])).unwrap(), lit("xy"));
        assert_eq!(s.coef(&e(&[1])).unwrap(), NCPoly::zero());
        assert!(TruncSeries::inject(&NCPoly::zero(), t).is_zero());
        assert!(TruncSeries::inject(&lit("xxxxy"), t).is_zero());
        assert!(matches!(s.coef(&e(&[3])), Err(Error::OutOfBox(_, 2))));
    }

    #[test]
    fn products_and_central_u() {
        let t = Truncation::new(2, 4, 2);
        let xu1 = TruncSeries::monomial(&NCPoly::x(), e(&[1, 0]), t);
        let yu1 = TruncSeries::monomial(&NCPoly::y(), e(&[1, 0]), t);
        let yu2 = TruncSeries::monomial(&NCPoly::y(), e(&[0, 1]), t);
        assert_eq!(
            &xu1 * &yu1,
            TruncSeries::monomial(&lit("xy"), e(&[2, 0]), t)
        );
        assert_eq!(
            &xu1 * &yu2,
            TruncSeries::monomial(&lit("xy"), e(&[1, 1]), t)
        );
        let t1 = Truncation::new(1, 4, 1);
        let a = TruncSeries::monomial(&NCPoly::x(), e(&[1]), t1);
        let b = TruncSeries::monomial(&NCPoly::y(), e(&[1]), t1);
        assert!((&a * &b).is_zero());
        let other = TruncSeries::zero(Truncation::new(1, 5, 1));
        assert!(matches!(a.series_mul(&other), Err(Error::Truncation(_, _))));
    }

    #[test]
    fn geometric_inverse_examples() {
        let t = Truncation::new(1, 3, 2);
        let x = TruncSeries::inject(&NCPoly::x(), t);
        let inv = geo(&x, 1);
        let expect = TruncSeries::from_coeffs(
            t,
            [
                (e(&[0]), NCPoly::one()),
                (e(&[1]), lit("x")),
                (e(&[2]), lit("xx")),
            ],
        );
        assert_eq!(inv, expect);
        assert_eq!(
            TruncSeries::one(t).geometric_inverse().unwrap(),
            TruncSeries::one(t)
        );
        let two = TruncSeries::inject(&NCPoly::constant(Rational::from_integer(2)), t);
        assert!(matches!(
            two.geometric_inverse(),
            Err(Error::NotInvertible(_))
        ));
    }

    #[test]
    fn two_step_geometric_inverse() {
        let t = Truncation::new(3, 6, 5);
        let x = TruncSeries::inject(&NCPoly::x(), t);
        let y = TruncSeries::inject(&NCPoly::y(), t);
        let gx = geo(&x, 3);
        let inner = &gx * &y;
        let lhs = &geo(&inner, 2) * &gx;
        let u2 = TruncSeries::u(2, t);
        let u3 = TruncSeries::u(3, t);
        let g = &(&TruncSeries::one(t) - &(&x * &u3)) - &(&y * &u2);
        assert_eq!(lhs, g.geometric_inverse().unwrap());
    }

    #[test]
    fn rendering() {
        let t = Truncation::new(2, 4, 3);
        let s = &TruncSeries::monomial(&NCPoly::x(), e(&[1, 0]), t)
            + &TruncSeries::monomial(&lit("xyy").scale(&Rational::new(-3, 2)), e(&[2, 1]), t);
        assert_eq!(s.render(), "x*u1 - 3/2*xy^2*u1^2*u2");
        assert_eq!(TruncSeries::one(t).render(), "1");
        assert_eq!(TruncSeries::zero(t).render(), "0");
    }

    #[test]
    fn exponent_enumeration() {
        let t = Truncation::new(3, 2, 2);
        assert_eq!(t.exponents().len(), 10);
        assert_eq!(t.exponents_of_total(1)[0], e(&[1, 0, 0]));
    }
}
