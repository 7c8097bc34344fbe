//! Numerical multiple zeta values, for checking that computed relations
//! really lie in the kernel of `Z`.
//!
//! Partial sums are accumulated in binary fixed point. Besides the plain
//! partial sum and its rigorous tail bound, each value carries a limit
//! estimate obtained by fitting the asymptotic expansion
//! `S(m) ~ c_0 + sum (ln m)^a / m^b` through partial sums at geometrically
//! spaced cutoffs.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use bigdecimal::{BigDecimal, ToPrimitive};
use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::algebra::{index_from_word, to_xy_basis, Index, NCPoly};
use crate::error::{Error, Result};

pub const DEFAULT_DIGITS: u32 = 30;

fn decimal_string<S: Serializer>(d: &BigDecimal, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&d.to_string())
}

#[derive(Debug, Clone, Serialize)]
pub struct ZetaValue {
    pub index: String,
    /// The partial sum over `M >= m_1 > ... > m_r > 0`.
    #[serde(serialize_with = "decimal_string")]
    pub value: BigDecimal,
    pub cutoff: u64,
    /// Upper bound for `zeta - value`.
    pub tail_bound: f64,
    /// Extrapolated limit of the partial sums.
    #[serde(serialize_with = "decimal_string")]
    pub limit: BigDecimal,
    /// Difference between fits of two expansion orders.
    pub limit_error: f64,
    pub digits: u32,
}

/// Binary fixed point: `mantissa / 2^bits`.
fn to_decimal(x: &BigInt, bits: u32, digits: u32) -> BigDecimal {
    let scaled = x * BigInt::from(10u32).pow(digits);
    let half = BigInt::one() << (bits - 1);
    let q = if scaled.sign() == Sign::Minus {
        -((-scaled + &half) >> bits)
    } else {
        (scaled + &half) >> bits
    };
    BigDecimal::new(q, digits as i64)
}

fn working_bits(digits: u32) -> u32 {
    ((digits + 20) as f64 * std::f64::consts::LOG2_10).ceil() as u32
}

/// `2 atanh(num/den) * 2^bits`.
fn two_atanh(num: u64, den: u64, bits: u32) -> BigInt {
    let (n2, d2) = (BigInt::from(num) * num, BigInt::from(den) * den);
    let mut term = (BigInt::one() << bits) * num / den;
    let mut acc = BigInt::zero();
    let mut k = 1u64;
    while !term.is_zero() {
        acc += &term / k;
        term = term * &n2 / &d2;
        k += 2;
    }
    acc * 2
}

/// `ln(m) * 2^bits`, for `m >= 1`.
fn ln_fixed(m: u64, bits: u32) -> BigInt {
    let g = bits + 16;
    let k = 63 - m.leading_zeros() as u64;
    let p = 1u64 << k;
    let v = two_atanh(1, 3, g) * k + two_atanh(m - p, m + p, g);
    v >> 16
}

/// Rigorous bound on `sum_{m > M} m^{-k} (1 + ln m)^p / p!`, which dominates
/// the tail of the series for an index with first part `k` and depth `p + 1`.
pub fn tail_bound(idx: &Index, cutoff: u64) -> f64 {
    let k = idx.parts()[0] as f64;
    let p = idx.depth() as i32 - 1;
    let m = cutoff as f64;
    let l = 1.0 + m.ln();
    let mut fact = vec![1.0f64; p as usize + 1];
    for i in 1..=p as usize {
        fact[i] = fact[i - 1] * i as f64;
    }
    let mut sum = 0.0;
    for j in 0..=p {
        sum += l.powi(p - j) / (fact[(p - j) as usize] * (k - 1.0).powi(j));
    }
    let mut bound = m.powf(1.0 - k) / (k - 1.0) * sum;
    if l < p as f64 / k {
        // the summand still increases past M; add its maximum
        let lstar = p as f64 / k;
        bound += (-k * (lstar - 1.0)).exp() * lstar.powi(p) / fact[p as usize];
    }
    bound
}

/// Partial sums at every cutoff in `samples` (which must contain the largest).
fn partial_sums(parts: &[u32], samples: &BTreeSet<u64>, bits: u32) -> HashMap<u64, BigInt> {
    let r = parts.len();
    let one = BigInt::one() << bits;
    let mut acc = vec![BigInt::zero(); r];
    let mut powers: Vec<u32> = parts.to_vec();
    powers.sort_unstable();
    powers.dedup();
    let top = *samples.iter().next_back().expect("nonempty");
    let mut out = HashMap::new();
    let mut inv = vec![BigInt::zero(); powers.len()];
    for m in 1..=top {
        let bm = BigInt::from(m);
        for (slot, &k) in inv.iter_mut().zip(&powers) {
            *slot = &one / bm.pow(k);
        }
        let inv_of = |k: u32| &inv[powers.binary_search(&k).expect("known power")];
        // acc[i] holds the sum over m_{i+1} > ... > m_r with m_{i+1} < m.
        for i in 0..r {
            let add = if i + 1 == r {
                inv_of(parts[i]).clone()
            } else {
                (&acc[i + 1] * inv_of(parts[i])) >> bits
            };
            acc[i] += add;
        }
        if samples.contains(&m) {
            out.insert(m, acc[0].clone());
        }
    }
    out
}

/// Fixed-point Gaussian elimination with partial pivoting; returns the
/// first unknown.
fn solve_first(mut a: Vec<Vec<BigInt>>, bits: u32) -> Option<BigInt> {
    let n = a.len();
    for col in 0..n {
        let piv = (col..n).max_by_key(|&r| a[r][col].abs())?;
        if a[piv][col].is_zero() {
            return None;
        }
        a.swap(col, piv);
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = (&a[r][col] << bits) / &a[col][col];
            let (top, bottom) = a.split_at_mut(r);
            for (t, p) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                *t -= (&f * p) >> bits;
            }
        }
    }
    let mut x = vec![BigInt::zero(); n];
    for r in (0..n).rev() {
        let mut s = a[r][n].clone();
        for c in r + 1..n {
            s -= (&a[r][c] * &x[c]) >> bits;
        }
        x[r] = (s << bits) / &a[r][r];
    }
    Some(x.swap_remove(0))
}

/// Cutoffs `M, 2M/3, 4M/9, ...`, as long as they stay distinct and not too small.
fn sample_cutoffs(cutoff: u64, count: usize) -> Option<Vec<u64>> {
    let mut out = vec![cutoff];
    while out.len() < count {
        let next = out.last().unwrap() * 2 / 3;
        if next < 16 {
            return None;
        }
        out.push(next);
    }
    Some(out)
}

/// Least-order fit of `S(m) = c_0 + sum_{b <= order, a < r} c_{ab} (ln m)^a / m^b`.
fn fit_limit(
    r: usize,
    order: u32,
    cutoffs: &[u64],
    sums: &HashMap<u64, BigInt>,
    bits: u32,
    solve_bits: u32,
) -> Option<BigInt> {
    let n = 1 + r * order as usize;
    let one = BigInt::one() << solve_bits;
    let rows = cutoffs[..n]
        .iter()
        .map(|&m| {
            let l = ln_fixed(m, solve_bits);
            let mut row = vec![one.clone()];
            for b in 1..=order {
                let mb = BigInt::from(m).pow(b);
                let mut lp = one.clone();
                for _ in 0..r {
                    row.push(&lp / &mb);
                    lp = (&lp * &l) >> solve_bits;
                }
            }
            row.push(&sums[&m] << (solve_bits - bits));
            row
        })
        .collect();
    solve_first(rows, solve_bits).map(|x| x >> (solve_bits - bits))
}

/// Evaluates `zeta(idx)` at cutoff `M` with the default precision.
pub fn zeta_eval(idx: &Index, cutoff: u64) -> Result<ZetaValue> {
    zeta_eval_with(idx, cutoff, DEFAULT_DIGITS)
}

pub fn zeta_eval_with(idx: &Index, cutoff: u64, digits: u32) -> Result<ZetaValue> {
    if !idx.is_admissible() {
        return Err(Error::DivergentSeries(idx.to_string()));
    }
    if cutoff == 0 {
        return Err(Error::Usage("cutoff must be positive".into()));
    }
    let bits = working_bits(digits);
    let r = idx.depth();
    let high = sample_cutoffs(cutoff, 1 + 3 * r);
    let low = sample_cutoffs(cutoff, 1 + 2 * r);
    let samples: BTreeSet<u64> = high
        .as_ref()
        .or(low.as_ref())
        .map(|v| v.iter().copied().collect())
        .unwrap_or_else(|| [cutoff].into());
    let sums = partial_sums(idx.parts(), &samples, bits);
    let value = &sums[&cutoff];
    let tail = tail_bound(idx, cutoff);
    let solve_bits = 2 * bits + 64;
    let fit = |order: u32, cut: &Option<Vec<u64>>| {
        cut.as_ref()
            .and_then(|c| fit_limit(r, order, c, &sums, bits, solve_bits))
    };
    let (limit, limit_error) = match (fit(3, &high), fit(2, &low)) {
        (Some(a), Some(b)) => {
            let err = to_decimal(&(&a - &b).abs(), bits, digits)
                .to_f64()
                .unwrap_or(f64::INFINITY);
            (a, err.max(10f64.powi(-(digits as i32))))
        }
        (None, Some(b)) => (b, tail),
        _ => (value.clone(), tail),
    };
    Ok(ZetaValue {
        index: idx.to_string(),
        value: to_decimal(value, bits, digits),
        cutoff,
        tail_bound: tail,
        limit: to_decimal(&limit, bits, digits),
        limit_error,
        digits,
    })
}

/// Values shared across evaluations, keyed by index, cutoff and precision.
#[derive(Debug, Default)]
pub struct ZetaCache {
    map: RwLock<HashMap<(Index, u64, u32), Arc<ZetaValue>>>,
}

impl ZetaCache {
    pub fn new() -> ZetaCache {
        ZetaCache::default()
    }

    pub fn global() -> &'static ZetaCache {
        static CACHE: OnceLock<ZetaCache> = OnceLock::new();
        CACHE.get_or_init(ZetaCache::new)
    }

    pub fn len(&self) -> usize {
        self.map.read().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get_or_eval(&self, idx: &Index, cutoff: u64, digits: u32) -> Result<Arc<ZetaValue>> {
        let key = (idx.clone(), cutoff, digits);
        if let Some(v) = self.map.read().expect("cache lock").get(&key) {
            return Ok(Arc::clone(v));
        }
        let v = Arc::new(zeta_eval_with(idx, cutoff, digits)?);
        let mut map = self.map.write().expect("cache lock");
        Ok(Arc::clone(map.entry(key).or_insert(v)))
    }

    /// Evaluates several indices in parallel.
    pub fn eval_many(
        &self,
        indices: &[Index],
        cutoff: u64,
        digits: u32,
    ) -> Result<Vec<Arc<ZetaValue>>> {
        indices
            .par_iter()
            .map(|i| self.get_or_eval(i, cutoff, digits))
            .collect()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Residual {
    /// `|sum c_w Z_M(w)|` with plain partial sums.
    #[serde(serialize_with = "decimal_string")]
    pub residual: BigDecimal,
    /// `sum |c_w| * tail_bound(w)`.
    pub tail_bound: f64,
    /// `|sum c_w Z(w)|` with extrapolated limits.
    #[serde(serialize_with = "decimal_string")]
    pub limit_residual: BigDecimal,
    pub limit_error: f64,
    pub cutoff: u64,
    pub terms: usize,
}

impl Residual {
    /// The plain partial-sum residual is within the rigorous tail bound.
    pub fn within_tail_bound(&self) -> bool {
        self.residual.to_f64().unwrap_or(f64::INFINITY) <= self.tail_bound
    }

    pub fn limit_residual_f64(&self) -> f64 {
        self.limit_residual.to_f64().unwrap_or(f64::INFINITY)
    }
}

/// `Z(p)` at cutoff `M`, using the shared cache.
pub fn relation_residual(p: &NCPoly, cutoff: u64) -> Result<Residual> {
    relation_residual_with(p, cutoff, DEFAULT_DIGITS, ZetaCache::global())
}

pub fn relation_residual_with(
    p: &NCPoly,
    cutoff: u64,
    digits: u32,
    cache: &ZetaCache,
) -> Result<Residual> {
    let p = to_xy_basis(p);
    if !p.is_admissible() {
        return Err(Error::DivergentSeries(p.render()));
    }
    let mut constant = BigDecimal::zero();
    let mut terms = Vec::new();
    for (w, c) in p.terms() {
        let c = BigDecimal::from(c.numer()) / BigDecimal::from(c.denom());
        if w.is_empty() {
            constant += c;
        } else {
            terms.push((index_from_word(w)?, c));
        }
    }
    let indices: Vec<Index> = terms.iter().map(|(i, _)| i.clone()).collect();
    let values = cache.eval_many(&indices, cutoff, digits)?;
    let mut raw = constant.clone();
    let mut lim = constant;
    let (mut tail, mut err) = (0.0, 0.0);
    for ((_, c), v) in terms.iter().zip(&values) {
        raw += c * &v.value;
        lim += c * &v.limit;
        let a = c.abs().to_f64().unwrap_or(f64::INFINITY);
        tail += a * v.tail_bound;
        err += a * v.limit_error;
    }
    let round = |d: BigDecimal| {
        d.abs()
            .with_scale_round(digits as i64, bigdecimal::RoundingMode::HalfEven)
    };
    Ok(Residual {
        residual: round(raw),
        tail_bound: tail + 10f64.powi(-(digits as i32 - 2)),
        limit_residual: round(lim),
        limit_error: err,
        cutoff,
        terms: terms.len(),
    })
}
