use std::collections::HashMap;
use std::fmt;

use crate::algebra::{NCPoly, Word};
use crate::error::{Error, Result};
use crate::maps::{partial_poly, spec_hom, tau, MapSpec};
use crate::rational::Rational;
use crate::report::{Check, VerificationReport};
use crate::series::{MultiExponent, TruncSeries, Truncation};

use super::{Echelon, SubspaceBasis};

/// Linear maps whose graded kernels we compute.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KernelMap {
    Partial(usize),
    DeltaMinusId(MapSpec),
    DeltaMinusTau(MapSpec),
}

impl fmt::Display for KernelMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KernelMap::Partial(n) => write!(f, "d{n}"),
            KernelMap::DeltaMinusId(s) => write!(f, "D{s} - id"),
            KernelMap::DeltaMinusTau(s) => write!(f, "D{s} - tau"),
        }
    }
}

const DOMAIN: usize = 1 << 62;

/// Kernel of `map` on the plain weight-`w` piece of `H`, with the image
/// required to vanish at every exponent of the box.
pub fn graded_kernel(map: &KernelMap, w: usize, trunc: Truncation) -> Result<SubspaceBasis> {
    match map {
        KernelMap::Partial(0) => Err(Error::Usage("d_n needs n >= 1".into())),
        KernelMap::DeltaMinusId(s) | KernelMap::DeltaMinusTau(s) if s.is_identity() => {
            Err(Error::ZeroSpec)
        }
        _ => kernel(map, w, trunc),
    }
}

fn kernel(map: &KernelMap, w: usize, trunc: Truncation) -> Result<SubspaceBasis> {
    let mut cols: HashMap<(MultiExponent, Word), usize> = HashMap::new();
    let mut col = |a: &MultiExponent, v: Word| -> usize {
        let n = cols.len();
        *cols.entry((a.clone(), v)).or_insert(n)
    };
    let mut ech = Echelon::new();
    let mut push = |image: Vec<(usize, Rational)>, v: Word| {
        ech.insert(
            image
                .into_iter()
                .chain([(DOMAIN + v.bits() as usize, Rational::from_integer(1))]),
        );
    };
    match map {
        KernelMap::Partial(n) => {
            let zero = MultiExponent::zero(1);
            for v in Word::all_of_length(w) {
                let img = partial_poly(*n, &NCPoly::word(v), None)?;
                let row = img
                    .terms()
                    .map(|(u, c)| (col(&zero, u), c.clone()))
                    .collect();
                push(row, v);
            }
        }
        KernelMap::DeltaMinusId(spec) | KernelMap::DeltaMinusTau(spec) => {
            if spec.s() != trunc.s {
                return Err(Error::Usage(format!(
                    "spec {spec} has {} entries, box has s = {}",
                    spec.s(),
                    trunc.s
                )));
            }
            let t = Truncation::new(trunc.s, w + trunc.u_cap, trunc.u_cap);
            let mut hom = spec_hom(spec, t)?;
            let with_tau = matches!(map, KernelMap::DeltaMinusTau(_));
            for v in Word::all_of_length(w) {
                let src = TruncSeries::inject(&NCPoly::word(v), t);
                let other = if with_tau { tau(&src) } else { src.clone() };
                let img = &hom.apply(&src) - &other;
                let row = img
                    .coeffs()
                    .flat_map(|(a, p)| p.terms().map(move |(u, c)| (a.clone(), u, c.clone())))
                    .map(|(a, u, c)| (col(&a, u), c))
                    .collect();
                push(row, v);
            }
        }
    }
    let mut out = SubspaceBasis::zero(w);
    for (pivot, row) in ech.rows() {
        if pivot >= DOMAIN {
            let p = NCPoly::from_terms(
                crate::algebra::Alphabet::XY,
                row.iter()
                    .map(|(c, x)| (Word::from_bits(w, (c - DOMAIN) as u64), x.clone())),
            );
            out.insert(&p)?;
        }
    }
    Ok(out)
}

/// `Ker(Delta_A - tau) ∩ Ker(Delta_B - tau)` at weight `w`. Either spec may
/// be zero, in which case its map is `id - tau`.
pub fn pairwise_kernel(
    spec_a: &MapSpec,
    spec_b: &MapSpec,
    w: usize,
    trunc: Truncation,
) -> Result<SubspaceBasis> {
    if spec_a == spec_b {
        return Err(Error::Usage(format!("both specs are {spec_a}")));
    }
    let ka = kernel(&KernelMap::DeltaMinusTau(spec_a.clone()), w, trunc)?;
    let kb = kernel(&KernelMap::DeltaMinusTau(spec_b.clone()), w, trunc)?;
    ka.intersect(&kb)
}

/// Checks that the two kernels meet exactly in `span{z^w}`.
pub fn pairwise_triviality(
    spec_a: &MapSpec,
    spec_b: &MapSpec,
    w: usize,
    trunc: Truncation,
) -> Result<VerificationReport> {
    let both = pairwise_kernel(spec_a, spec_b, w, trunc)?;
    let ok = both == SubspaceBasis::z_power(w);
    let basis: Vec<String> = both.basis().iter().map(NCPoly::render).collect();
    let check = Check::flag(
        "kernel intersection = span{z^w}",
        ok,
        format!("dim {}, basis [{}]", both.dim(), basis.join(", ")),
    );
    Ok(VerificationReport::from_checks(
        format!("pairwise {spec_a} vs {spec_b} w={w}"),
        trunc,
        vec![check],
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernels_are_z_powers() {
        let t1 = Truncation::new(1, 8, 2);
        assert_eq!(
            graded_kernel(&KernelMap::Partial(1), 3, t1).unwrap(),
            SubspaceBasis::z_power(3)
        );
        assert_eq!(
            graded_kernel(&KernelMap::Partial(2), 4, t1).unwrap(),
            SubspaceBasis::z_power(4)
        );
        let k = graded_kernel(&KernelMap::DeltaMinusId(MapSpec::new(vec![1])), 4, t1).unwrap();
        assert_eq!(k, SubspaceBasis::z_power(4));
        assert_eq!(
            graded_kernel(&KernelMap::DeltaMinusId(MapSpec::new(vec![0])), 4, t1),
            Err(Error::ZeroSpec)
        );
    }

    #[test]
    fn pairwise_examples() {
        let t1 = Truncation::new(1, 8, 2);
        let a = MapSpec::new(vec![1]);
        let b = MapSpec::new(vec![-1]);
        assert!(pairwise_triviality(&a, &b, 4, t1).unwrap().equal);
        assert!(pairwise_triviality(&a, &b, 0, t1).unwrap().equal);
        let t2 = Truncation::new(2, 8, 2);
        let c = MapSpec::new(vec![1, 0]);
        let d = MapSpec::new(vec![0, 1]);
        assert!(pairwise_triviality(&c, &d, 3, t2).unwrap().equal);
        assert!(matches!(
            pairwise_triviality(&a, &a, 3, t1),
            Err(Error::Usage(_))
        ));
    }
}
