//! The maps acting on `H[[u_1, ..., u_s]]`: the duality `tau`, the
//! derivations `d_n`, the operators `theta_i`, and the automorphisms
//! `Delta_{u_j}^{+-1}` together with their composites.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::One;
use serde::Serialize;

use crate::algebra::{Letter, NCPoly, Word};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::series::{geo, MultiExponent, TruncSeries, Truncation};

/// Exponent vector `(e_1, ..., e_s)` naming `Delta_{u_1}^{e_1} o ... o Delta_{u_s}^{e_s}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct MapSpec(Vec<i32>);

impl MapSpec {
    pub fn new(e: Vec<i32>) -> MapSpec {
        MapSpec(e)
    }

    pub fn e(&self) -> &[i32] {
        &self.0
    }

    pub fn s(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn inverse(&self) -> MapSpec {
        MapSpec(self.0.iter().map(|e| -e).collect())
    }

    /// The same map viewed in a box with `s` variables (padding with zeros).
    pub fn padded(&self, s: usize) -> Result<MapSpec> {
        if self.0.len() > s && self.0[s..].iter().any(|&e| e != 0) {
            return Err(Error::Usage(format!(
                "spec {self} needs more than {s} variables"
            )));
        }
        let mut e = self.0.clone();
        e.resize(s, 0);
        Ok(MapSpec(e))
    }
}

impl fmt::Display for MapSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|e| e.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for MapSpec {
    type Err = Error;

    /// Accepts `1,-1`, `(1,-1)` or `[1,-1]`.
    fn from_str(s: &str) -> Result<MapSpec> {
        let inner = s
            .trim()
            .trim_start_matches(['(', '['])
            .trim_end_matches([')', ']']);
        let e = inner
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<i32>()
                    .map_err(|_| Error::Usage(format!("bad map spec `{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MapSpec(e))
    }
}

/// Duality on polynomials: reverse each word and swap `x` and `y`.
pub fn tau_poly(p: &NCPoly) -> NCPoly {
    p.map_words(Word::dual)
}

/// Duality on series, fixing every `u_j`.
pub fn tau(w: &TruncSeries) -> TruncSeries {
    w.map_polys(tau_poly)
}

/// `d_n` of a single word, keeping only results of weight at most `cap`.
fn partial_word(n: usize, w: Word, cap: usize, out: &mut NCPoly, factor: &Rational) {
    let len = w.len();
    if len + n > cap {
        return;
    }
    let neg = -factor.clone();
    let x = Word::letter(Letter::X);
    let y = Word::letter(Letter::Y);
    for i in 0..len {
        let (pre, post) = (w.prefix(i), w.suffix_from(i + 1));
        let c = if w.at(i) == Letter::X { factor } else { &neg };
        for mid in Word::all_of_length(n - 1) {
            out.add_term(pre.concat(x).concat(mid).concat(y).concat(post), c.clone());
        }
    }
}

/// `d_n(p)`, dropping words longer than `cap` when given.
pub fn partial_poly(n: usize, p: &NCPoly, cap: Option<usize>) -> Result<NCPoly> {
    if n == 0 {
        return Err(Error::Usage("d_n needs n >= 1".into()));
    }
    let cap = cap.unwrap_or(crate::algebra::MAX_WEIGHT);
    let mut out = NCPoly::zero_in(p.alphabet());
    for (w, c) in p.terms() {
        partial_word(n, w, cap, &mut out, c);
    }
    Ok(out)
}

/// `d_n` on a series, coefficientwise.
pub fn partial(n: usize, w: &TruncSeries) -> Result<TruncSeries> {
    if n == 0 {
        return Err(Error::Usage("d_n needs n >= 1".into()));
    }
    let cap = w.trunc().weight_cap;
    Ok(w.map_polys(|p| partial_poly(n, p, Some(cap)).expect("n >= 1")))
}

/// Partitions of `i` as multiplicity vectors `m[n-1] = #parts equal to n`.
fn partitions(i: usize) -> Vec<Vec<u32>> {
    fn rec(left: usize, max: usize, m: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            out.push(m.clone());
            return;
        }
        for part in (1..=max.min(left)).rev() {
            m[part - 1] += 1;
            rec(left - part, part, m, out);
            m[part - 1] -= 1;
        }
    }
    let mut out = Vec::new();
    rec(i, i, &mut vec![0; i], &mut out);
    out
}

/// `theta_i(p)`: the `u^i` coefficient of `exp(sum_n d_n u^n / n)` applied to `p`,
/// expanded as `sum over partitions of prod_n d_n^{m_n} / (m_n! n^{m_n})`.
pub fn theta(i: usize, p: &NCPoly) -> Result<NCPoly> {
    theta_capped(i, p, None)
}

/// [`theta`] dropping words longer than `cap`; `theta_0` is the identity.
pub fn theta_capped(i: usize, p: &NCPoly, cap: Option<usize>) -> Result<NCPoly> {
    if i == 0 {
        return Ok(match cap {
            Some(c) => p.truncate(c),
            None => p.clone(),
        });
    }
    let mut out = NCPoly::zero_in(p.alphabet());
    for m in partitions(i) {
        let mut coeff = Rational::one();
        let mut img = p.clone();
        for (k, &mult) in m.iter().enumerate() {
            let n = k + 1;
            for j in 1..=mult {
                img = partial_poly(n, &img, cap)?;
                coeff = &coeff / &Rational::from_integer((j as i64) * n as i64);
            }
        }
        out.add_scaled(&img, &coeff);
    }
    Ok(out)
}

/// `theta_i` on a series, coefficientwise.
pub fn theta_series(i: usize, w: &TruncSeries) -> TruncSeries {
    let cap = w.trunc().weight_cap;
    w.map_polys(|p| theta_capped(i, p, Some(cap)).expect("i >= 0"))
}

/// A ring endomorphism of `H[[u]]` fixing every `u_j`, given by the images of
/// `x` and `y`. Images of words are memoized by prefix.
pub struct RingHom {
    trunc: Truncation,
    images: [TruncSeries; 2],
    memo: HashMap<Word, Arc<TruncSeries>>,
}

impl RingHom {
    pub fn new(images: [TruncSeries; 2]) -> RingHom {
        let trunc = images[0].trunc();
        assert_eq!(trunc, images[1].trunc());
        let mut memo = HashMap::new();
        memo.insert(Word::EMPTY, Arc::new(TruncSeries::one(trunc)));
        RingHom {
            trunc,
            images,
            memo,
        }
    }

    pub fn identity(trunc: Truncation) -> RingHom {
        RingHom::new([
            TruncSeries::inject(&NCPoly::x(), trunc),
            TruncSeries::inject(&NCPoly::y(), trunc),
        ])
    }

    pub fn letter_images(&self) -> &[TruncSeries; 2] {
        &self.images
    }

    pub fn image_of_word(&mut self, w: Word) -> Arc<TruncSeries> {
        if let Some(s) = self.memo.get(&w) {
            return Arc::clone(s);
        }
        let (pre, last) = w.split_last().expect("empty word is memoized");
        let img = Arc::new(&*self.image_of_word(pre) * &self.images[last as usize]);
        self.memo.insert(w, Arc::clone(&img));
        img
    }

    pub fn apply(&mut self, w: &TruncSeries) -> TruncSeries {
        assert_eq!(w.trunc(), self.trunc, "series from different boxes");
        let n = self.trunc.u_cap;
        let mut out = TruncSeries::zero(self.trunc);
        for (alpha, p) in w.coeffs() {
            let room = n - alpha.total();
            for (word, c) in p.terms() {
                let img = self.image_of_word(word);
                for (beta, q) in img.coeffs() {
                    if beta.total() > room {
                        break;
                    }
                    out.add_scaled_at(alpha.add(beta), q, c);
                }
            }
        }
        out
    }

    /// The homomorphism `w -> other(self(w))`.
    pub fn then(&self, other: &mut RingHom) -> RingHom {
        RingHom::new([other.apply(&self.images[0]), other.apply(&self.images[1])])
    }
}

fn check_variable(j: usize, trunc: Truncation) -> Result<()> {
    if j == 0 || j > trunc.s {
        return Err(Error::Usage(format!(
            "variable u{j} outside u1..u{}",
            trunc.s
        )));
    }
    Ok(())
}

fn check_sign(sign: i32) -> Result<()> {
    if sign != 1 && sign != -1 {
        return Err(Error::Usage(format!("sign must be +1 or -1, got {sign}")));
    }
    Ok(())
}

/// Letter images of `Delta_{u_j}` (sign `+1`) or its inverse (sign `-1`).
pub fn delta_letter_images(j: usize, sign: i32, trunc: Truncation) -> Result<[TruncSeries; 2]> {
    check_variable(j, trunc)?;
    check_sign(sign)?;
    let x = TruncSeries::inject(&NCPoly::x(), trunc);
    let y = TruncSeries::inject(&NCPoly::y(), trunc);
    let u = TruncSeries::u(j, trunc);
    let one = TruncSeries::one(trunc);
    let m = &(&one - &(&x * &u)) - &(&y * &u);
    Ok(if sign == 1 {
        let gy = geo(&y, j);
        [&x * &gy, &(&m * &y) * &gy]
    } else {
        let gx = geo(&x, j);
        [&(&x * &gx) * &m, &gx * &y]
    })
}

/// `Delta_{u_j}^{sign}` from its closed forms on the generators.
pub fn delta_single(j: usize, sign: i32, w: &TruncSeries) -> Result<TruncSeries> {
    let images = delta_letter_images(j, sign, w.trunc())?;
    Ok(RingHom::new(images).apply(w))
}

/// `Delta_{u_j}^{sign}` from `exp(sign * sum_n d_n u_j^n / n)`, summed directly.
pub fn delta_exp_oracle(j: usize, sign: i32, w: &TruncSeries) -> Result<TruncSeries> {
    let trunc = w.trunc();
    check_variable(j, trunc)?;
    check_sign(sign)?;
    let n_cap = trunc.u_cap;
    let generator = |v: &TruncSeries| -> TruncSeries {
        let mut out = TruncSeries::zero(trunc);
        for n in 1..=n_cap {
            let shift = MultiExponent::zero(trunc.s).with(j, n as u32);
            let d = partial(n, v).expect("n >= 1").shift(&shift);
            out.add_scaled(&d, &Rational::new(sign as i64, n as i64));
        }
        out
    };
    let mut term = w.clone();
    let mut out = w.clone();
    for k in 1..=n_cap {
        term = generator(&term).scale(&Rational::new(1, k as i64));
        if term.is_zero() {
            break;
        }
        out = &out + &term;
    }
    Ok(out)
}

/// The ring homomorphism `Delta_{u_1}^{e_1} o ... o Delta_{u_s}^{e_s}`.
pub fn spec_hom(spec: &MapSpec, trunc: Truncation) -> Result<RingHom> {
    if spec.s() != trunc.s {
        return Err(Error::Usage(format!(
            "spec {spec} has {} entries, box has s = {}",
            spec.s(),
            trunc.s
        )));
    }
    let mut hom = RingHom::identity(trunc);
    for (j, &e) in spec.e().iter().enumerate() {
        if e == 0 {
            continue;
        }
        let mut step = RingHom::new(delta_letter_images(j + 1, e.signum(), trunc)?);
        for _ in 0..e.unsigned_abs() {
            hom = hom.then(&mut step);
        }
    }
    Ok(hom)
}

/// Applies the composite automorphism named by `spec`.
pub fn apply_spec(spec: &MapSpec, w: &TruncSeries) -> Result<TruncSeries> {
    if spec.s() != w.trunc().s {
        return Err(Error::Usage(format!(
            "spec {spec} has {} entries, box has s = {}",
            spec.s(),
            w.trunc().s
        )));
    }
    if spec.is_identity() {
        return Ok(w.clone());
    }
    Ok(spec_hom(spec, w.trunc())?.apply(w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Alphabet;

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
    fn tau_examples() {
        let t = Truncation::new(1, 4, 2);
        assert_eq!(tau_poly(&lit("xxy")), lit("xyy"));
        assert_eq!(tau_poly(&lit("xy")), lit("xy"));
        let s = TruncSeries::monomial(&NCPoly::x(), e(&[1]), t);
        assert_eq!(tau(&s), TruncSeries::monomial(&NCPoly::y(), e(&[1]), t));
    }

    #[test]
    fn partial_examples() {
        let d1 = partial_poly(1, &lit("xy"), None).unwrap();
        assert_eq!(d1, &lit("xyy") - &lit("xxy"));
        assert!(partial_poly(3, &NCPoly::z(), None).unwrap().is_zero());
        let d2 = partial_poly(2, &lit("xy"), None).unwrap();
        assert_eq!(d2, &lit("xyyy") - &lit("xxxy"));
        assert!(partial_poly(0, &lit("xy"), None).is_err());
    }

    #[test]
    fn theta_examples() {
        assert_eq!(
            theta(1, &lit("xy")).unwrap(),
            partial_poly(1, &lit("xy"), None).unwrap()
        );
        assert_eq!(theta(2, &NCPoly::x()).unwrap(), lit("xyy"));
        assert!(theta(4, &NCPoly::one()).unwrap().is_zero());
        assert_eq!(partitions(4).len(), 5);
        assert!(theta(0, &NCPoly::x()).is_ok());
    }

    #[test]
    fn delta_closed_forms() {
        let t = Truncation::new(1, 3, 2);
        let x = TruncSeries::inject(&NCPoly::x(), t);
        let y = TruncSeries::inject(&NCPoly::y(), t);
        let dx = delta_single(1, 1, &x).unwrap();
        let expect = TruncSeries::from_coeffs(
            t,
            [
                (e(&[0]), lit("x")),
                (e(&[1]), lit("xy")),
                (e(&[2]), lit("xyy")),
            ],
        );
        assert_eq!(dx, expect);
        let dy = delta_single(1, -1, &y).unwrap();
        let expect = TruncSeries::from_coeffs(
            t,
            [
                (e(&[0]), lit("y")),
                (e(&[1]), lit("xy")),
                (e(&[2]), lit("xxy")),
            ],
        );
        assert_eq!(dy, expect);
        let z = TruncSeries::inject(&NCPoly::z(), t);
        assert_eq!(delta_single(1, 1, &z).unwrap(), z);
        assert!(delta_single(2, 1, &z).is_err());
    }

    #[test]
    fn exp_route_agrees_on_generators() {
        let t = Truncation::new(1, 4, 3);
        for g in [NCPoly::x(), NCPoly::y()] {
            let s = TruncSeries::inject(&g, t);
            for sign in [1, -1] {
                assert_eq!(
                    delta_single(1, sign, &s).unwrap(),
                    delta_exp_oracle(1, sign, &s).unwrap()
                );
            }
        }
        let t0 = Truncation::new(1, 4, 0);
        let s = TruncSeries::inject(&lit("xxy"), t0);
        assert_eq!(delta_exp_oracle(1, 1, &s).unwrap(), s);
    }

    #[test]
    fn spec_examples() {
        let t = Truncation::new(2, 6, 4);
        let x = TruncSeries::inject(&NCPoly::x(), t);
        let y = TruncSeries::inject(&NCPoly::y(), t);
        let w = &(&x * &geo(&x, 1)) * &(&y * &geo(&y, 2));
        assert_eq!(apply_spec(&MapSpec::new(vec![0, 0]), &w).unwrap(), w);
        let lhs = apply_spec(&MapSpec::new(vec![1, -1]), &w).unwrap();
        let rhs = &(&x * &geo(&x, 2)) * &(&y * &geo(&y, 1));
        assert_eq!(lhs, rhs);
        let there = apply_spec(&MapSpec::new(vec![1, 0]), &w).unwrap();
        let back = apply_spec(&MapSpec::new(vec![-1, 0]), &there).unwrap();
        assert_eq!(back, w);
        assert!(apply_spec(&MapSpec::new(vec![1]), &w).is_err());
    }

    #[test]
    fn spec_parsing() {
        let s: MapSpec = "(1,-1)".parse().unwrap();
        assert_eq!(s, MapSpec::new(vec![1, -1]));
        assert_eq!(s.to_string(), "(1,-1)");
        assert_eq!("[2]".parse::<MapSpec>().unwrap(), MapSpec::new(vec![2]));
        assert!("1,a".parse::<MapSpec>().is_err());
    }
}
