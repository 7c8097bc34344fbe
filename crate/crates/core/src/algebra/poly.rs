use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::word::{Alphabet, Letter, Word};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// An element of the free algebra `Q<x, y>` (or `Q<x, z>`): a finite
/// rational combination of words. No stored coefficient is zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NCPoly {
    alphabet: Alphabet,
    terms: BTreeMap<Word, Rational>,
}

impl NCPoly {
    pub fn zero() -> NCPoly {
        NCPoly::zero_in(Alphabet::XY)
    }

    pub fn zero_in(alphabet: Alphabet) -> NCPoly {
        NCPoly {
            alphabet,
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> NCPoly {
        NCPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> NCPoly {
        NCPoly::monomial(c, Word::EMPTY)
    }

    pub fn monomial(c: Rational, w: Word) -> NCPoly {
        let mut p = NCPoly::zero();
        p.add_term(w, c);
        p
    }

    pub fn word(w: Word) -> NCPoly {
        NCPoly::monomial(Rational::one(), w)
    }

    pub fn x() -> NCPoly {
        NCPoly::word(Word::letter(Letter::X))
    }

    pub fn y() -> NCPoly {
        NCPoly::word(Word::letter(Letter::Y))
    }

    /// `z = x + y`, in the `xy` alphabet.
    pub fn z() -> NCPoly {
        NCPoly::x() + NCPoly::y()
    }

    pub fn from_terms(
        alphabet: Alphabet,
        terms: impl IntoIterator<Item = (Word, Rational)>,
    ) -> NCPoly {
        let mut p = NCPoly::zero_in(alphabet);
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub(crate) fn with_alphabet(mut self, alphabet: Alphabet) -> NCPoly {
        self.alphabet = alphabet;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (length, then lexicographic) order.
    pub fn terms(&self) -> impl Iterator<Item = (Word, &Rational)> {
        self.terms.iter().map(|(w, c)| (*w, c))
    }

    pub fn coeff(&self, w: Word) -> Rational {
        self.terms.get(&w).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, w: Word, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += factor * other`.
    pub fn add_scaled(&mut self, other: &NCPoly, factor: &Rational) {
        if factor.is_zero() {
            return;
        }
        for (w, c) in &other.terms {
            self.add_term(*w, c * factor);
        }
    }

    pub fn scale(&self, factor: &Rational) -> NCPoly {
        if factor.is_zero() {
            return NCPoly::zero_in(self.alphabet);
        }
        NCPoly {
            alphabet: self.alphabet,
            terms: self.terms.iter().map(|(w, c)| (*w, c * factor)).collect(),
        }
    }

    pub fn min_weight(&self) -> Option<usize> {
        self.terms.keys().next().map(|w| w.len())
    }

    pub fn max_weight(&self) -> Option<usize> {
        self.terms.keys().next_back().map(|w| w.len())
    }

    pub fn is_homogeneous(&self) -> bool {
        self.min_weight() == self.max_weight()
    }

    /// The weight-`n` component.
    pub fn component(&self, n: usize) -> NCPoly {
        NCPoly {
            alphabet: self.alphabet,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.len() == n)
                .map(|(w, c)| (*w, c.clone()))
                .collect(),
        }
    }

    /// Drops every word longer than `cap`.
    pub fn truncate(&self, cap: usize) -> NCPoly {
        NCPoly {
            alphabet: self.alphabet,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.len() <= cap)
                .map(|(w, c)| (*w, c.clone()))
                .collect(),
        }
    }

    /// Product dropping words longer than `cap` (if given).
    pub fn mul_capped(&self, rhs: &NCPoly, cap: Option<usize>) -> NCPoly {
        let mut out = NCPoly::zero_in(self.alphabet);
        out.add_product(
            self,
            rhs,
            &Rational::one(),
            cap.unwrap_or(super::word::MAX_WEIGHT),
        );
        out
    }

    /// `self += factor * a * b`, keeping words of length at most `cap`.
    pub fn add_product(&mut self, a: &NCPoly, b: &NCPoly, factor: &Rational, cap: usize) {
        debug_assert_eq!(a.alphabet, b.alphabet);
        for (wa, ca) in &a.terms {
            if wa.len() > cap {
                break;
            }
            let ca = ca * factor;
            for (wb, cb) in &b.terms {
                if wa.len() + wb.len() > cap {
                    break;
                }
                self.add_term(wa.concat(*wb), &ca * cb);
            }
        }
    }

    pub fn pow(&self, n: u32) -> NCPoly {
        (0..n).fold(NCPoly::one().with_alphabet(self.alphabet), |acc, _| {
            &acc * self
        })
    }

    /// True iff every word is empty or lies in `x H y`. The zero polynomial
    /// is admissible.
    pub fn is_admissible(&self) -> bool {
        match self.alphabet {
            Alphabet::XY => self.terms.keys().all(|w| w.is_admissible()),
            Alphabet::XZ => to_xy_basis(self).is_admissible(),
        }
    }

    /// Linear map given on words.
    pub fn map_words(&self, f: impl Fn(Word) -> Word) -> NCPoly {
        NCPoly::from_terms(
            self.alphabet,
            self.terms.iter().map(|(w, c)| (f(*w), c.clone())),
        )
    }

    /// Ring homomorphism determined by the images of the two letters.
    pub fn substitute(&self, images: &[NCPoly; 2], target: Alphabet) -> NCPoly {
        let mut out = NCPoly::zero_in(target);
        for (w, c) in &self.terms {
            let mut img = NCPoly::one().with_alphabet(target);
            for l in w.letters() {
                img = &img * &images[l as usize];
            }
            out.add_scaled(&img, c);
        }
        out
    }

    /// Rendering such as `3/2*x^2y - xy^2`, parseable by the cli grammar.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let word = w.render_compact(self.alphabet);
            if w.is_empty() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&word);
            } else {
                out.push_str(&format!("{abs}*{word}"));
            }
        }
        out
    }
}

impl Default for NCPoly {
    fn default() -> Self {
        NCPoly::zero()
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NCPoly[{:?}]({})", self.alphabet, self.render())
    }
}

fn assert_same(a: &NCPoly, b: &NCPoly) {
    assert_eq!(
        a.alphabet, b.alphabet,
        "arithmetic between polynomials in different alphabets"
    );
}

impl Add for &NCPoly {
    type Output = NCPoly;
    fn add(self, rhs: &NCPoly) -> NCPoly {
        assert_same(self, rhs);
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::one());
        out
    }
}

impl Sub for &NCPoly {
    type Output = NCPoly;
    fn sub(self, rhs: &NCPoly) -> NCPoly {
        assert_same(self, rhs);
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rational::one());
        out
    }
}

impl Mul for &NCPoly {
    type Output = NCPoly;
    fn mul(self, rhs: &NCPoly) -> NCPoly {
        assert_same(self, rhs);
        self.mul_capped(rhs, None)
    }
}

impl Neg for &NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        self.scale(&-Rational::one())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for NCPoly {
            type Output = NCPoly;
            fn $m(self, rhs: NCPoly) -> NCPoly {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        -&self
    }
}

/// Free-algebra product; both factors must use the same alphabet.
pub fn poly_mul(p: &NCPoly, q: &NCPoly) -> Result<NCPoly> {
    if p.alphabet != q.alphabet {
        return Err(Error::Alphabet(p.alphabet, q.alphabet));
    }
    Ok(p.mul_capped(q, None))
}

/// Rewrites an `xy` polynomial in the basis `x, z = x + y` (so `y = z - x`).
pub fn to_xz_basis(p: &NCPoly) -> NCPoly {
    if p.alphabet == Alphabet::XZ {
        return p.clone();
    }
    let x = NCPoly::x().with_alphabet(Alphabet::XZ);
    let z = NCPoly::y().with_alphabet(Alphabet::XZ);
    p.substitute(&[x.clone(), &z - &x], Alphabet::XZ)
}

/// Inverse of [`to_xz_basis`]: substitutes `z = x + y`.
pub fn to_xy_basis(p: &NCPoly) -> NCPoly {
    if p.alphabet == Alphabet::XY {
        return p.clone();
    }
    p.substitute(&[NCPoly::x(), NCPoly::z()], Alphabet::XY)
}

/// True iff `p` lies in `Q[z]`: in the `xz` basis only powers of `z` occur.
pub fn is_z_polynomial(p: &NCPoly) -> bool {
    to_xz_basis(p).terms().all(|(w, _)| w.count(Letter::X) == 0)
}

/// Largest word (order `1 < x < z`, prefixes first) with nonzero coefficient.
pub fn leading_word(p: &NCPoly) -> Result<Word> {
    if p.alphabet != Alphabet::XZ {
        return Err(Error::Alphabet(p.alphabet, Alphabet::XZ));
    }
    p.terms
        .keys()
        .copied()
        .max_by(|a, b| a.lex_cmp(*b))
        .ok_or(Error::ZeroPolynomial)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s, Alphabet::XY).unwrap()
    }

    fn q(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn products() {
        assert_eq!(&NCPoly::x() * &NCPoly::y(), NCPoly::word(w("xy")));
        let z2 = &NCPoly::z() * &NCPoly::z();
        let expect = NCPoly::from_terms(
            Alphabet::XY,
            ["xx", "xy", "yx", "yy"].iter().map(|s| (w(s), q(1))),
        );
        assert_eq!(z2, expect);
        let comm = &NCPoly::word(w("xy")) - &NCPoly::word(w("yx"));
        assert_eq!(&comm * &NCPoly::one(), comm);
    }

    #[test]
    fn alphabet_mismatch_is_an_error() {
        let a = NCPoly::x();
        let b = to_xz_basis(&NCPoly::y());
        assert!(matches!(poly_mul(&a, &b), Err(Error::Alphabet(_, _))));
    }

    #[test]
    fn admissibility() {
        let p = &NCPoly::word(w("xyy")) - &NCPoly::word(w("xxy"));
        assert!(p.is_admissible());
        assert!(!NCPoly::y().is_admissible());
        assert!(NCPoly::one().is_admissible());
        assert!(NCPoly::zero().is_admissible());
    }

    #[test]
    fn xz_basis_change() {
        let z = to_xz_basis(&NCPoly::z());
        assert_eq!(z.render(), "z");
        // x*y = xz - xx
        let p = to_xz_basis(&NCPoly::word(w("xy")));
        assert_eq!(p.render(), "-x^2 + xz");
        let back = to_xy_basis(&to_xz_basis(&NCPoly::word(w("xyxy"))));
        assert_eq!(back, NCPoly::word(w("xyxy")));
    }

    #[test]
    fn leading_words() {
        let p = to_xz_basis(&NCPoly::word(w("xy")));
        assert_eq!(leading_word(&p).unwrap(), w("xy")); // xz
        let zz = Word::parse("zzz", Alphabet::XZ).unwrap();
        let xzz = Word::parse("xzz", Alphabet::XZ).unwrap();
        let p = NCPoly::from_terms(Alphabet::XZ, [(zz, q(1)), (xzz, q(1))]);
        assert_eq!(leading_word(&p).unwrap(), zz);
        assert_eq!(
            leading_word(&NCPoly::zero_in(Alphabet::XZ)),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn z_polynomials() {
        assert!(is_z_polynomial(&(&NCPoly::z() * &NCPoly::z())));
        assert!(is_z_polynomial(&NCPoly::one()));
        assert!(!is_z_polynomial(&NCPoly::x()));
    }

    #[test]
    fn rendering() {
        let p = NCPoly::from_terms(
            Alphabet::XY,
            [(w("xxy"), Rational::new(3, 2)), (w("xyy"), q(-1))],
        );
        assert_eq!(p.render(), "3/2*x^2y - xy^2");
        assert_eq!(NCPoly::zero().render(), "0");
        assert_eq!((-NCPoly::one()).render(), "-1");
    }
}
