use std::fmt;

use crate::algebra::{Letter, NCPoly, Word};
use crate::error::{Error, Result};
use crate::maps::tau_poly;
use crate::rational::Rational;
use crate::report::{Check, VerificationReport};
use crate::series::Truncation;

use super::derivation_space;

/// The two families of duality elements shown to lie in `d(H^0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cor44 {
    /// `sum x y^{m_1} x^{n_1} y ... x y^{m_d} x^{n_d} y` over
    /// `m_1 + ... + m_d = m`, `n_1 + ... + n_d = n`.
    I { d: usize, m: usize, n: usize },
    /// `sum x (x^{m_1} y ... x^{m_r} y) x^{m-1} y` over
    /// `m_1 + ... + m_r = k - r - m - 1`.
    II { k: usize, r: usize, m: usize },
}

impl fmt::Display for Cor44 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cor44::I { d, m, n } => write!(f, "cor44:i d={d} m={m} n={n}"),
            Cor44::II { k, r, m } => write!(f, "cor44:ii k={k} r={r} m={m}"),
        }
    }
}

fn weak_compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in weak_compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn run(parts: &[(Letter, usize)]) -> Word {
    let mut w = Word::EMPTY;
    for &(l, k) in parts {
        w = w.concat(Word::power(l, k));
    }
    w
}

impl Cor44 {
    pub fn weight(&self) -> usize {
        match *self {
            Cor44::I { d, m, n } => 2 * d + m + n,
            Cor44::II { k, .. } => k,
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = match *self {
            Cor44::I { d, m, n } => d >= 1 && m >= 1 && n >= 1,
            Cor44::II { k, r, m } => r >= 1 && m >= 1 && k > r + m,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Usage(format!("invalid parameters for {self}")))
        }
    }

    /// The displayed sum, before applying `tau - id`.
    pub fn element(&self) -> Result<NCPoly> {
        self.validate()?;
        let one = Rational::from_integer(1);
        let mut out = NCPoly::zero();
        match *self {
            Cor44::I { d, m, n } => {
                for ms in weak_compositions(m, d) {
                    for ns in weak_compositions(n, d) {
                        let mut w = Word::EMPTY;
                        for (a, b) in ms.iter().zip(&ns) {
                            w = w.concat(run(&[
                                (Letter::X, 1),
                                (Letter::Y, *a),
                                (Letter::X, *b),
                                (Letter::Y, 1),
                            ]));
                        }
                        out.add_term(w, one.clone());
                    }
                }
            }
            Cor44::II { k, r, m } => {
                for ms in weak_compositions(k - r - m - 1, r) {
                    let mut w = Word::letter(Letter::X);
                    for a in ms {
                        w = w.concat(run(&[(Letter::X, a), (Letter::Y, 1)]));
                    }
                    w = w.concat(run(&[(Letter::X, m - 1), (Letter::Y, 1)]));
                    out.add_term(w, one.clone());
                }
            }
        }
        Ok(out)
    }
}

/// Tests whether `(tau - id)` of the element lies in the derivation span
/// over `H^0` at its weight.
pub fn membership_cor44(which: Cor44) -> Result<VerificationReport> {
    let e = which.element()?;
    let w = which.weight();
    let dual = &tau_poly(&e) - &e;
    let span = derivation_space(w, true);
    let member = span.contains(&dual)?;
    let checks = vec![
        Check::flag("element lies in H^0", e.is_admissible(), ""),
        Check::flag(
            "(tau - id)(element) in d(H^0)",
            member,
            format!(
                "weight {w}, {} terms, duality element {}zero, derivation span dim {}",
                e.len(),
                if dual.is_zero() { "" } else { "non" },
                span.dim()
            ),
        ),
    ];
    Ok(VerificationReport::from_checks(
        which.to_string(),
        Truncation::new(1, w, 0),
        checks,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elements() {
        let e = Cor44::I { d: 1, m: 1, n: 1 }.element().unwrap();
        assert_eq!(e.render(), "xyxy");
        let e = Cor44::II { k: 5, r: 1, m: 2 }.element().unwrap();
        assert_eq!(e.render(), "x^2yxy");
        assert!(Cor44::II { k: 4, r: 1, m: 3 }.element().is_err());
    }

    #[test]
    fn examples_are_members() {
        for c in [
            Cor44::I { d: 1, m: 1, n: 1 },
            Cor44::I { d: 1, m: 2, n: 1 },
            Cor44::II { k: 5, r: 1, m: 2 },
        ] {
            assert!(membership_cor44(c).unwrap().equal, "{c}");
        }
    }
}
