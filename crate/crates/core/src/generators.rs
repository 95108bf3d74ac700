//! Named q-series: arithmetic functions, Dedekind eta quotients, Eisenstein
//! series, the cubic theta functions and Huber's auxiliary series.
//!
//! Every generator takes an inclusive `order`: the result's coefficients are
//! exact for all exponents `≤ order`. All outputs have grade 0 and rational
//! coefficients; the `ctx` argument only fixes the minimum `D` and `N` the
//! result is expressed in.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::cyclonum::{CycloContext, CycloNumber};
use crate::qlaurent::{rexp, PiSeries, RationalExp, SeriesContext, SeriesError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeneratorError {
    #[error("Eisenstein series of weight {0} is not supported (use 2, 4 or 6)")]
    UnsupportedWeight(u32),
    #[error("malformed eta-quotient spec {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("eta multiplier must be positive, got {0}")]
    NonPositiveMultiplier(RationalExp),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// The Legendre symbol `(n/3)`.
pub fn legendre3(n: i64) -> i8 {
    match n.rem_euclid(3) {
        0 => 0,
        1 => 1,
        _ => -1,
    }
}

/// Positive divisors of `n` in increasing order, by trial division.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

fn as_positive_integer(x: RationalExp) -> Option<u64> {
    if x.is_integer() && *x.numer() > 0 {
        Some(*x.numer() as u64)
    } else {
        None
    }
}

/// `σ_k(n)` for a positive integer `n`.
pub fn sigma_n(k: u32, n: u64) -> BigInt {
    divisors(n).into_iter().map(|d| BigInt::from(d).pow(k)).sum()
}

/// `σ_k(x)`, defined as zero unless `x` is a positive integer.
pub fn sigma(k: u32, x: RationalExp) -> BigInt {
    as_positive_integer(x).map_or_else(BigInt::zero, |n| sigma_n(k, n))
}

/// Number of positive divisors `d ≡ j (mod k)` of `x`; zero unless `x` is a
/// positive integer.
pub fn d_mod(j: u64, k: u64, x: RationalExp) -> u64 {
    assert!(j < k, "residue {j} must be below modulus {k}");
    as_positive_integer(x).map_or(0, |n| {
        divisors(n).into_iter().filter(|d| d % k == j).count() as u64
    })
}

/// `Σ_{d | n} d^p · (d/3)` and `Σ_{d | n} d^p · ((n/d)/3)`.
fn twisted_divisor_sums(p: u32, n: u64) -> (BigInt, BigInt) {
    let mut by_d = BigInt::zero();
    let mut by_cofactor = BigInt::zero();
    for d in divisors(n) {
        let w = BigInt::from(d).pow(p);
        by_d += &w * legendre3(d as i64);
        by_cofactor += &w * legendre3((n / d) as i64);
    }
    (by_d, by_cofactor)
}

/// Dense integer coefficients at `q^0..=q^order`, expressed in `ctx`.
fn dense(coeffs: Vec<BigInt>, ctx: &SeriesContext) -> Result<PiSeries, SeriesError> {
    let s = PiSeries::from_bigint_coeffs(&coeffs);
    s.with_context(ctx.exponent_denominator, ctx.cyclo_order)
}

fn coefficient_series<F>(order: i64, ctx: &SeriesContext, constant: i64, f: F) -> Result<PiSeries, SeriesError>
where
    F: Fn(u64) -> BigInt,
{
    let mut coeffs = vec![BigInt::zero(); (order.max(0) + 1) as usize];
    coeffs[0] = BigInt::from(constant);
    for n in 1..=order.max(0) as u64 {
        coeffs[n as usize] = f(n);
    }
    dense(coeffs, ctx)
}

/// `(x; x)_∞` as integer coefficients of `x^0..=x^len-1`, by multiplying out
/// the factors `1 − x^n`.
fn euler_product(len: usize) -> Vec<BigInt> {
    let mut a = vec![BigInt::zero(); len];
    if len == 0 {
        return a;
    }
    a[0] = BigInt::one();
    for n in 1..len {
        for i in (n..len).rev() {
            if !a[i - n].is_zero() {
                let t = a[i - n].clone();
                a[i] -= t;
            }
        }
    }
    a
}

/// `(q^m; q^m)_∞` with exact coefficients for exponents `≤ bound`.
fn pochhammer_inf(m: RationalExp, bound: RationalExp, ctx: &SeriesContext) -> Result<PiSeries, SeriesError> {
    let steps = if bound < RationalExp::zero() {
        0
    } else {
        (bound / m).floor().to_integer() as usize + 1
    };
    let coeffs = euler_product(steps);
    let field = CycloContext::rationals();
    let terms = coeffs
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (m * RationalExp::from_integer(k as i64), CycloNumber::from_integer(&field, c)));
    PiSeries::from_terms(ctx, 0, terms, Some(m * RationalExp::from_integer(steps as i64)))
}

/// `η(mτ) = q^{m/24} ∏ (1 − q^{mn})`.
pub fn eta(m: RationalExp, order: i64, ctx: &SeriesContext) -> Result<PiSeries, GeneratorError> {
    if m <= RationalExp::zero() {
        return Err(GeneratorError::NonPositiveMultiplier(m));
    }
    let pre = m / RationalExp::from_integer(24);
    let prod = pochhammer_inf(m, RationalExp::from_integer(order) - pre, ctx)?;
    Ok(prod.shift(pre))
}

/// A finite product `scalar · q^shift · ∏ η(m_i τ)^{e_i}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EtaQuotientSpec {
    pub scalar: BigRational,
    pub shift: RationalExp,
    pub factors: Vec<(RationalExp, i32)>,
}

impl EtaQuotientSpec {
    pub fn new(factors: Vec<(RationalExp, i32)>) -> Self {
        EtaQuotientSpec {
            scalar: BigRational::one(),
            shift: RationalExp::zero(),
            factors,
        }
    }

    /// `η⁹(τ)/η³(3τ)`, equal to `b³(q)`.
    pub fn b_cubed() -> Self {
        Self::new(vec![(rexp(1, 1), 9), (rexp(3, 1), -3)])
    }

    /// `27 η⁹(3τ)/η³(τ)`, equal to `c³(q)`.
    pub fn c_cubed() -> Self {
        let mut s = Self::new(vec![(rexp(3, 1), 9), (rexp(1, 1), -3)]);
        s.scalar = BigRational::from_integer(27.into());
        s
    }

    /// Exponent of the leading power of `q`: `shift + Σ m·e/24`.
    pub fn prefactor_exponent(&self) -> RationalExp {
        self.factors
            .iter()
            .fold(self.shift, |acc, &(m, e)| acc + m * RationalExp::from_integer(e as i64) / 24)
    }
}

impl fmt::Display for EtaQuotientSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.scalar.is_one() {
            parts.push(self.scalar.to_string());
        }
        if !self.shift.is_zero() {
            parts.push(format!("q^{}", self.shift));
        }
        for (m, e) in &self.factors {
            parts.push(format!("{}^{}", m, e));
        }
        write!(f, "{}", parts.join("*"))
    }
}

fn parse_rational_exp(s: &str) -> Option<RationalExp> {
    let s = s.trim().trim_start_matches('{').trim_end_matches('}');
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().ok()?;
            let d: i64 = d.trim().parse().ok()?;
            (d != 0).then(|| RationalExp::new(n, d))
        }
        None => s.trim().parse::<i64>().ok().map(RationalExp::from_integer),
    }
}

impl FromStr for EtaQuotientSpec {
    type Err = GeneratorError;

    /// Grammar: `*`-separated tokens, each `m^e` (positive rational `m`,
    /// signed integer `e`), an optional rational scalar and an optional
    /// `q^{p/q}` shift. Factors are full `η(mτ)`, so `c³` is `27*3^9*1^-3`.
    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| GeneratorError::Parse {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let mut spec = EtaQuotientSpec::new(vec![]);
        let mut saw_scalar = false;
        if input.trim().is_empty() {
            return Err(err("empty spec"));
        }
        for token in input.split('*') {
            let token = token.trim();
            if token.is_empty() {
                return Err(err("empty factor"));
            }
            if token == "q" {
                spec.shift += RationalExp::one();
            } else if let Some(rest) = token.strip_prefix("q^") {
                let e = parse_rational_exp(rest).ok_or_else(|| err("bad q-shift exponent"))?;
                spec.shift += e;
            } else if let Some((m, e)) = token.split_once('^') {
                let m = parse_rational_exp(m).ok_or_else(|| err("bad multiplier"))?;
                if m <= RationalExp::zero() {
                    return Err(err("multiplier must be positive"));
                }
                let e: i32 = e.trim().trim_start_matches('{').trim_end_matches('}').parse().map_err(|_| err("bad exponent"))?;
                spec.factors.push((m, e));
            } else {
                if saw_scalar {
                    return Err(err("more than one scalar"));
                }
                let r = parse_rational_exp(token).ok_or_else(|| err("bad scalar"))?;
                spec.scalar = BigRational::new((*r.numer()).into(), (*r.denom()).into());
                saw_scalar = true;
            }
        }
        Ok(spec)
    }
}

/// Evaluates an eta quotient. Each `(q^m; q^m)_∞` has constant term 1, so the
/// product part is inverted without loss and shifted by the prefactor last.
pub fn eta_quotient(spec: &EtaQuotientSpec, order: i64, ctx: &SeriesContext) -> Result<PiSeries, GeneratorError> {
    let pre = spec.prefactor_exponent();
    let bound = RationalExp::from_integer(order) - pre;
    let mut acc = PiSeries::one(ctx);
    for &(m, e) in &spec.factors {
        if m <= RationalExp::zero() {
            return Err(GeneratorError::NonPositiveMultiplier(m));
        }
        let base = pochhammer_inf(m, bound, ctx)?;
        let base = if e < 0 { base.invert()? } else { base };
        acc = acc.mul(&base.pow(e.unsigned_abs())?)?;
    }
    let acc = if acc.is_exact() { acc.truncate(bound + rexp(1, 1)) } else { acc };
    Ok(acc.shift(pre).scale_rational(&spec.scalar))
}

/// `E_k(q^m)` for `k ∈ {2, 4, 6}`.
pub fn eisenstein(k: u32, m: i64, order: i64, ctx: &SeriesContext) -> Result<PiSeries, GeneratorError> {
    let c: i64 = match k {
        2 => -24,
        4 => 240,
        6 => -504,
        _ => return Err(GeneratorError::UnsupportedWeight(k)),
    };
    assert!(m >= 1, "substitution multiplier must be positive");
    let s = coefficient_series(order, ctx, 1, |n| {
        if n % m as u64 == 0 {
            sigma_n(k - 1, n / m as u64) * c
        } else {
            BigInt::zero()
        }
    })?;
    Ok(s)
}

fn isqrt(n: i64) -> i64 {
    if n < 0 {
        return -1;
    }
    let mut r = (n as f64).sqrt() as i64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Representation counts `#{(m, n) : m² + mn + n² = k}` for `k ≤ order`.
pub fn representation_counts(order: i64) -> Vec<u64> {
    let order = order.max(0);
    let mut counts = vec![0u64; order as usize + 1];
    // m² + mn + n² = (2m + n)²/4 + 3n²/4, so 3n² ≤ 4·order.
    let n_max = isqrt(4 * order / 3) + 1;
    for n in -n_max..=n_max {
        let w = 4 * order - 3 * n * n;
        if w < 0 {
            continue;
        }
        let s = isqrt(w);
        // -s ≤ 2m + n ≤ s
        let lo = (-s - n).div_euclid(2) + (-s - n).rem_euclid(2);
        let hi = (s - n).div_euclid(2);
        for m in lo..=hi {
            let v = m * m + m * n + n * n;
            if v <= order {
                counts[v as usize] += 1;
            }
        }
    }
    counts
}

/// `a(q) = Σ_{m,n} q^{m²+mn+n²}` by lattice enumeration.
pub fn a_lattice(order: i64, ctx: &SeriesContext) -> Result<PiSeries, GeneratorError> {
    let coeffs = representation_counts(order).into_iter().map(BigInt::from).collect();
    Ok(dense(coeffs, ctx)?)
}

/// `a(q) = 1 + 6 Σ (d_{1,3}(n) − d_{2,3}(n)) qⁿ`.
pub fn a_divisor(order: i64, ctx: &SeriesContext) -> Result<PiSeries, GeneratorError> {
    Ok(coefficient_series(order, ctx, 1, |n| {
        let x = RationalExp::from_integer(n as i64);
        BigInt::from(6) * (BigInt::from(d_mod(1, 3, x)) - BigInt::from(d_mod(2, 3, x)))
    })?)
}

/// `b³(q) = 1 − 9 Σ qⁿ Σ_{d|n} d² (d/3)`.
pub fn b_cubed_series(order: i64, ctx: &SeriesContext) -> Result<PiSeries, GeneratorError> {
    Ok(coefficient_series(order, ctx, 1, |n| twisted_divisor_sums(2, n).0 * -9)?)
}

/// `c³(q) = 27 Σ qⁿ Σ_{d|n} d² ((n/d)/3)`.
pub fn c_cubed_series(order: i64, ctx: &SeriesContext) -> Result<PiSeries, GeneratorError> {
    Ok(coefficient_series(order, ctx, 0, |n| twisted_divisor_sums(2, n).1 * 27)?)
}

/// `a²b³ = 1 + 3 Σ qⁿ Σ_{d|n} d⁴ (d/3)`.
pub fn a_sq_b3_series(order: i64, ctx: &SeriesContext) -> Result<PiSeries, GeneratorError> {
    Ok(coefficient_series(order, ctx, 1, |n| twisted_divisor_sums(4, n).0 * 3)?)
}

/// `a²c³ = 27 Σ qⁿ Σ_{d|n} d⁴ ((n/d)/3)`.
pub fn a_sq_c3_series(order: i64, ctx: &SeriesContext) -> Result<PiSeries, GeneratorError> {
    Ok(coefficient_series(order, ctx, 0, |n| twisted_divisor_sums(4, n).1 * 27)?)
}

/// Expands `Σ_n w(n) Σ_{j ∈ offsets} q^{j·n} / (1 − q^{period·n})` term by term,
/// with `w(n)` rational.
fn lambert<W>(order: i64, offsets: &[i64], period: i64, w: W) -> Vec<BigRational>
where
    W: Fn(i64) -> BigRational,
{
    let mut coeffs = vec![BigRational::zero(); order.max(0) as usize + 1];
    for n in 1..=order.max(0) {
        let wn = w(n);
        for &j in offsets {
            let mut e = j * n;
            while e <= order {
                coeffs[e as usize] += &wn;
                e += period * n;
            }
        }
    }
    coeffs
}

fn rational_series(coeffs: Vec<BigRational>, ctx: &SeriesContext) -> Result<PiSeries, SeriesError> {
    PiSeries::from_rational_coeffs(&coeffs).with_context(ctx.exponent_denominator, ctx.cyclo_order)
}

/// Huber's `𝒫`-script series `1 − 6 Σ cos(2nπ/3) n qⁿ/(1 − qⁿ)`.
pub fn huber_p_script(order: i64, ctx: &SeriesContext) -> Result<PiSeries, GeneratorError> {
    let mut coeffs = lambert(order, &[1], 1, |n| {
        // cos(2nπ/3) is 1 when 3 | n and −1/2 otherwise
        let cos = if n % 3 == 0 {
            BigRational::one()
        } else {
            BigRational::new((-1).into(), 2.into())
        };
        cos * BigRational::from_integer((-6 * n).into())
    });
    coeffs[0] += BigRational::one();
    Ok(rational_series(coeffs, ctx)?)
}

/// Huber's `𝒫`-calligraphic series `9 Σ n (qⁿ + q²ⁿ)/(1 − q³ⁿ)`.
pub fn huber_p_cal(order: i64, ctx: &SeriesContext) -> Result<PiSeries, GeneratorError> {
    let coeffs = lambert(order, &[1, 2], 3, |n| BigRational::from_integer((9 * n).into()));
    Ok(rational_series(coeffs, ctx)?)
}

/// Divisor-sum closed form of `a(q)^k` for `k = 1..=6`.
///
/// `k = 6` contains the product `q (q;q)⁶_∞ (q³;q³)⁶_∞`.
pub fn a_power_closed_form(k: u32, order: i64, ctx: &SeriesContext) -> Result<PiSeries, GeneratorError> {
    let third = |n: u64| RationalExp::new(n as i64, 3);
    match k {
        1 => a_divisor(order, ctx),
        2 => Ok(coefficient_series(order, ctx, 1, |n| {
            (sigma_n(1, n) - sigma(1, third(n)) * 3) * 12
        })?),
        3 => Ok(b_cubed_series(order, ctx)?.add(&c_cubed_series(order, ctx)?)?),
        4 => Ok(coefficient_series(order, ctx, 1, |n| {
            (sigma_n(3, n) + sigma(3, third(n)) * 9) * 24
        })?),
        5 => Ok(a_sq_b3_series(order, ctx)?.add(&a_sq_c3_series(order, ctx)?)?),
        6 => {
            let sigma_part = coefficient_series(order, ctx, 13, |n| {
                (sigma_n(5, n) - sigma(5, third(n)) * 27) * 252
            })?;
            let spec = EtaQuotientSpec {
                scalar: BigRational::from_integer(216.into()),
                shift: rexp(1, 1) - rexp(1, 4) - rexp(3, 4),
                factors: vec![(rexp(1, 1), 6), (rexp(3, 1), 6)],
            };
            let prod = eta_quotient(&spec, order, ctx)?;
            Ok(sigma_part.add(&prod)?.scale_ratio(1, 13))
        }
        _ => Err(GeneratorError::UnsupportedWeight(k)),
    }
}

/// `1 + 3 Σ (σ₁(n) − 9σ₁(n/9)) qⁿ`.
pub fn sigma_level9_series(order: i64, ctx: &SeriesContext) -> Result<PiSeries, GeneratorError> {
    Ok(coefficient_series(order, ctx, 1, |n| {
        (sigma_n(1, n) - sigma(1, RationalExp::new(n as i64, 9)) * 9) * 3
    })?)
}

/// `Σ σ₁(3n+1) q^{3n+1} − Σ σ₁(3n+2) q^{3n+2}`.
pub fn sigma_twisted_series(order: i64, ctx: &SeriesContext) -> Result<PiSeries, GeneratorError> {
    Ok(coefficient_series(order, ctx, 0, |n| sigma_n(1, n) * legendre3(n as i64))?)
}

/// `J = 1728 E₄³ / (E₄³ − E₆²)`, known through `q^order`.
pub fn j_invariant(order: i64, ctx: &SeriesContext) -> Result<PiSeries, GeneratorError> {
    // The denominator starts at q¹, so inversion costs two orders.
    let work = order + 2;
    let e4 = eisenstein(4, 1, work, ctx)?;
    let e6 = eisenstein(6, 1, work, ctx)?;
    let e4_cubed = e4.pow(3)?;
    let disc = e4_cubed.sub(&e6.pow(2)?)?;
    let j = e4_cubed.div(&disc)?.scale_ratio(1728, 1);
    Ok(j.truncate(RationalExp::from_integer(order + 1)))
}

/// Integer coefficient of `q^k` in a rational series, for tables.
pub fn integer_coefficient(s: &PiSeries, k: i64) -> Option<BigInt> {
    let c = s.coefficient_at(k).ok()?.to_rational()?;
    c.is_integer().then(|| c.to_integer())
}

/// `|x|` of an `i64` as `u64`, used by table output.
pub fn abs_u64(x: &BigInt) -> Option<u64> {
    x.abs().to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &PiSeries, range: std::ops::RangeInclusive<i64>) -> Vec<i64> {
        range
            .map(|k| integer_coefficient(s, k).unwrap().try_into().unwrap())
            .collect()
    }

    fn rat() -> SeriesContext {
        SeriesContext::rational()
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre3(4), 1);
        assert_eq!(legendre3(5), -1);
        assert_eq!(legendre3(6), 0);
        assert_eq!(legendre3(-1), -1);
    }

    #[test]
    fn sigma_and_d_mod_examples() {
        // divisor enumeration: 1 + 2 + 3 + 6
        assert_eq!(sigma(1, rexp(6, 1)), BigInt::from(12));
        assert_eq!(sigma(1, rexp(2, 3)), BigInt::zero());
        assert_eq!(sigma(3, rexp(2, 1)), BigInt::from(9));
        assert_eq!(d_mod(1, 3, rexp(7, 1)), 2);
        assert_eq!(d_mod(2, 3, rexp(7, 1)), 0);
        assert_eq!(d_mod(1, 3, rexp(1, 1)), 1);
        assert_eq!(d_mod(1, 3, rexp(7, 3)), 0);
    }

    #[test]
    fn divisors_match_naive_enumeration() {
        for n in 1..=400u64 {
            let naive: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
            assert_eq!(divisors(n), naive);
        }
    }

    #[test]
    fn eta_examples() {
        let e = eta(rexp(1, 1), 10, &rat()).unwrap();
        assert!(e.coefficient(rexp(1, 24)).unwrap().is_one());
        // direct product expansion of (1-q)(1-q^2)...(1-q^7)
        let mut oracle = vec![0i64; 8];
        oracle[0] = 1;
        for n in 1..8 {
            for i in (n..8).rev() {
                oracle[i] -= oracle[i - n];
            }
        }
        assert_eq!(oracle, vec![1, -1, -1, 0, 0, 1, 0, 1]);
        let got: Vec<i64> = (0..8)
            .map(|k| {
                e.coefficient(rexp(1, 24) + RationalExp::from_integer(k))
                    .unwrap()
                    .to_rational()
                    .unwrap()
                    .to_integer()
                    .try_into()
                    .unwrap()
            })
            .collect();
        assert_eq!(got, oracle);
        let third = eta(rexp(1, 3), 5, &rat()).unwrap();
        assert_eq!(third.lead_exponent(), Some(rexp(1, 72)));
        assert!(eta(rexp(0, 1), 5, &rat()).is_err());
    }

    #[test]
    fn eta_quotient_examples() {
        let b3 = eta_quotient(&EtaQuotientSpec::b_cubed(), 3, &rat()).unwrap();
        // divisor formula: -9 Σ d²(d/3): n=1: -9, n=2: -9(1-4) = 27, n=3: -9(1+0) = -9
        assert_eq!(ints(&b3, 0..=3), vec![1, -9, 27, -9]);
        let c3 = eta_quotient(&EtaQuotientSpec::c_cubed(), 3, &rat()).unwrap();
        // 27 Σ d²((n/d)/3): n=1: 27, n=2: 27(-1+4) = 81, n=3: 27(0+9) = 243
        assert_eq!(ints(&c3, 1..=3), vec![27, 81, 243]);
        let trivial: EtaQuotientSpec = "1^1*1^-1".parse().unwrap();
        let t = eta_quotient(&trivial, 10, &rat()).unwrap();
        assert_eq!(t, PiSeries::polynomial(&[1]).truncate(rexp(11, 1)));
    }

    #[test]
    fn eta_quotient_parser() {
        let s: EtaQuotientSpec = "1^9*3^-3".parse().unwrap();
        assert_eq!(s, EtaQuotientSpec::b_cubed());
        let c: EtaQuotientSpec = "27*3^9*1^-3".parse().unwrap();
        assert_eq!(c, EtaQuotientSpec::c_cubed());
        assert_eq!(c.prefactor_exponent(), rexp(1, 1));
        let shifted: EtaQuotientSpec = "q*1^1".parse().unwrap();
        assert_eq!(shifted.prefactor_exponent(), rexp(25, 24));
        let f: EtaQuotientSpec = "1/3^3*q^{1/2}".parse().unwrap();
        assert_eq!(f.factors, vec![(rexp(1, 3), 3)]);
        assert_eq!(f.shift, rexp(1, 2));
        for bad in ["", "1^x", "-1^2", "1^2**3^1", "q^a", "2*3"] {
            assert!(bad.parse::<EtaQuotientSpec>().is_err(), "{bad:?} should fail");
        }
    }

    #[test]
    fn eisenstein_examples() {
        let e2 = eisenstein(2, 1, 3, &rat()).unwrap();
        assert_eq!(ints(&e2, 0..=3), vec![1, -24, -72, -96]);
        let e4 = eisenstein(4, 1, 3, &rat()).unwrap();
        assert_eq!(integer_coefficient(&e4, 2).unwrap(), BigInt::from(2160));
        let e6 = eisenstein(6, 3, 6, &rat()).unwrap();
        assert_eq!(ints(&e6, 0..=3), vec![1, 0, 0, -504]);
        assert!(eisenstein(8, 1, 3, &rat()).is_err());
    }

    /// Box enumeration over |m|, |n| ≤ bound, no ellipse arithmetic.
    fn brute_force_counts(order: i64) -> Vec<u64> {
        let b = order + 1;
        let mut c = vec![0u64; order as usize + 1];
        for m in -b..=b {
            for n in -b..=b {
                let v = m * m + m * n + n * n;
                if v <= order {
                    c[v as usize] += 1;
                }
            }
        }
        c
    }

    #[test]
    fn lattice_examples() {
        let oracle = brute_force_counts(7);
        assert_eq!(oracle, vec![1, 6, 0, 6, 6, 0, 0, 12]);
        let a = a_lattice(7, &rat()).unwrap();
        assert_eq!(ints(&a, 0..=7), vec![1, 6, 0, 6, 6, 0, 0, 12]);
        assert_eq!(representation_counts(60), brute_force_counts(60));
    }

    #[test]
    fn divisor_form_of_a() {
        let a = a_divisor(7, &rat()).unwrap();
        assert_eq!(integer_coefficient(&a, 7).unwrap(), BigInt::from(12));
        assert_eq!(integer_coefficient(&a, 2).unwrap(), BigInt::zero());
        let lat = a_lattice(300, &rat()).unwrap();
        assert!(a_divisor(300, &rat()).unwrap().agrees_with(&lat));
    }

    #[test]
    fn cubed_series_examples() {
        let b3 = b_cubed_series(4, &rat()).unwrap();
        assert_eq!(integer_coefficient(&b3, 2).unwrap(), BigInt::from(27));
        let c3 = c_cubed_series(4, &rat()).unwrap();
        assert_eq!(integer_coefficient(&c3, 1).unwrap(), BigInt::from(27));
        assert_eq!(integer_coefficient(&c3, 2).unwrap(), BigInt::from(81));
        let eq = eta_quotient(&EtaQuotientSpec::b_cubed(), 60, &rat()).unwrap();
        assert!(eq.agrees_with(&b_cubed_series(60, &rat()).unwrap()));
        let eq = eta_quotient(&EtaQuotientSpec::c_cubed(), 60, &rat()).unwrap();
        assert!(eq.agrees_with(&c_cubed_series(60, &rat()).unwrap()));
    }

    #[test]
    fn huber_examples() {
        let ps = huber_p_script(20, &rat()).unwrap();
        assert!(ps.coefficient_at(0).unwrap().is_one());
        let pc = huber_p_cal(20, &rat()).unwrap();
        assert_eq!(integer_coefficient(&pc, 1).unwrap(), BigInt::from(9));
        // n-by-n expansion oracle: coefficient of q^N is 9 Σ_{n | N, N/n ≢ 0 mod 3} n
        for big_n in 1..=20i64 {
            let expected: i64 = (1..=big_n)
                .filter(|n| big_n % n == 0 && (big_n / n) % 3 != 0)
                .map(|n| 9 * n)
                .sum();
            let got = integer_coefficient(&pc, big_n).unwrap();
            assert_eq!(got, BigInt::from(expected));
            assert!(!got.is_negative());
        }
    }

    #[test]
    fn a_sq_series_examples() {
        let b = a_sq_b3_series(3, &rat()).unwrap();
        assert_eq!(ints(&b, 0..=1), vec![1, 3]);
        let c = a_sq_c3_series(3, &rat()).unwrap();
        assert_eq!(integer_coefficient(&c, 1).unwrap(), BigInt::from(27));
    }

    #[test]
    fn generators_are_rational_and_grade_zero() {
        let ctx = SeriesContext::default();
        let all = [
            a_lattice(10, &ctx).unwrap(),
            a_divisor(10, &ctx).unwrap(),
            eta(rexp(1, 1), 10, &ctx).unwrap(),
            eisenstein(4, 1, 10, &ctx).unwrap(),
            huber_p_script(10, &ctx).unwrap(),
            huber_p_cal(10, &ctx).unwrap(),
            c_cubed_series(10, &ctx).unwrap(),
        ];
        for s in &all {
            assert_eq!(s.pi_grade(), 0);
            assert_eq!(s.cyclo_order(), 72);
            assert!(s.terms().all(|(_, c)| c.to_rational().is_some()));
        }
        assert_eq!(a_lattice(25, &ctx).unwrap(), a_lattice(25, &ctx).unwrap());
    }

    #[test]
    fn j_invariant_leading_coefficients() {
        let j = j_invariant(2, &rat()).unwrap();
        assert_eq!(j.lead_exponent(), Some(rexp(-1, 1)));
        assert_eq!(integer_coefficient(&j, -1).unwrap(), BigInt::from(1));
        assert_eq!(integer_coefficient(&j, 0).unwrap(), BigInt::from(744));
        assert_eq!(integer_coefficient(&j, 1).unwrap(), BigInt::from(196884));
        assert_eq!(j.trunc(), Some(rexp(3, 1)));
    }
}
