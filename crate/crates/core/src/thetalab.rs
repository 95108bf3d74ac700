//! Theta functions with rational characteristics
//!
//! `θ[ε, ε′](ζ, τ) = Σ_n exp 2πi{ ½(n + ε/2)² τ + (n + ε/2)(ζ + ε′/2) }`
//!
//! Values are taken at `ζ = r + sτ` with `r, s` rational, which turns every
//! `ζ`-derivative into a univariate q-series: the `j`-th derivative carries
//! `(2πi(n + ε/2))^j`, stored as grade `j` with coefficient `(2i(n + ε/2))^j`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::cyclonum::{CycloContext, CycloNumber};
use crate::qlaurent::{rexp, PiSeries, RationalExp, SeriesContext, SeriesError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ThetaError {
    #[error("theta{ch} vanishes at {point} to the working order")]
    PointIsZero { ch: ThetaChar, point: RationalPoint },
    #[error("log-derivative order {0} is outside 1..=5")]
    UnsupportedOrder(u32),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ThetaChar {
    pub eps: RationalExp,
    pub eps_prime: RationalExp,
}

impl ThetaChar {
    pub fn new(eps: RationalExp, eps_prime: RationalExp) -> Self {
        ThetaChar { eps, eps_prime }
    }

    /// Shorthand for `[e1/d1, e2/d2]`.
    pub fn of(e1: i64, d1: i64, e2: i64, d2: i64) -> Self {
        Self::new(rexp(e1, d1), rexp(e2, d2))
    }

    pub fn denominators_divide(&self, bound: i64) -> bool {
        bound % self.eps.denom() == 0 && bound % self.eps_prime.denom() == 0
    }

    pub fn negated(&self) -> Self {
        Self::new(-self.eps, -self.eps_prime)
    }
}

impl fmt::Display for ThetaChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.eps, self.eps_prime)
    }
}

fn parse_rational(s: &str) -> Option<RationalExp> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let d: i64 = d.trim().parse().ok()?;
            (d != 0).then_some(())?;
            Some(RationalExp::new(n.trim().parse().ok()?, d))
        }
        None => Some(RationalExp::from_integer(s.parse().ok()?)),
    }
}

fn parse_pair(s: &str) -> Option<(RationalExp, RationalExp)> {
    let s = s.trim().trim_start_matches(['[', '(']).trim_end_matches([']', ')']);
    let (a, b) = s.split_once(',')?;
    Some((parse_rational(a)?, parse_rational(b)?))
}

impl FromStr for ThetaChar {
    type Err = String;

    /// Accepts `eps,eps'` with optional brackets, e.g. `1,1/3` or `[1/3,1]`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_pair(s)
            .map(|(a, b)| ThetaChar::new(a, b))
            .ok_or_else(|| format!("expected a characteristic like 1,1/3, got {s:?}"))
    }
}

/// The point `z = r + sτ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalPoint {
    pub r: RationalExp,
    pub s: RationalExp,
}

impl RationalPoint {
    pub fn new(r: RationalExp, s: RationalExp) -> Self {
        RationalPoint { r, s }
    }

    pub fn origin() -> Self {
        Self::new(RationalExp::zero(), RationalExp::zero())
    }

    pub fn of(r1: i64, d1: i64, s1: i64, d2: i64) -> Self {
        Self::new(rexp(r1, d1), rexp(s1, d2))
    }

    /// `k·z`.
    pub fn times(&self, k: i64) -> Self {
        let k = RationalExp::from_integer(k);
        Self::new(self.r * k, self.s * k)
    }

    /// Sample points for two-variable identities, chosen off every lattice
    /// zero of the factors involved.
    pub fn default_samples() -> Vec<RationalPoint> {
        vec![
            Self::of(1, 5, 0, 1),
            Self::of(0, 1, 1, 5),
            Self::of(1, 5, 1, 7),
            Self::of(2, 7, 1, 5),
            Self::of(1, 4, 1, 6),
        ]
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}τ)", self.r, self.s)
    }
}

impl FromStr for RationalPoint {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_pair(s)
            .map(|(a, b)| RationalPoint::new(a, b))
            .ok_or_else(|| format!("expected a point like 1/5,1/7, got {s:?}"))
    }
}

/// `e^{2πi t}` in `field`; `t·N` must be an integer.
fn unit_root(t: RationalExp, field: &Arc<CycloContext>) -> CycloNumber {
    let n = field.order() as i64;
    let k = t * RationalExp::from_integer(n);
    debug_assert!(k.is_integer(), "e^(2πi·{t}) is not in Q(ζ_{n})");
    CycloNumber::root_of_unity(k.to_integer(), field)
}

fn big(r: RationalExp) -> BigRational {
    BigRational::new((*r.numer()).into(), (*r.denom()).into())
}

fn lcm_u32(a: u32, b: i64) -> u32 {
    a.lcm(&(b as u32))
}

/// The `j`-th `ζ`-derivative of `θ[ch]` at `ζ = r + sτ`, with exact
/// coefficients for every exponent `≤ order`.
pub fn theta_at_point(
    j: u32,
    ch: ThetaChar,
    p: RationalPoint,
    order: i64,
    ctx: &SeriesContext,
) -> Result<PiSeries, SeriesError> {
    let half_eps = ch.eps / 2;
    let w = p.r + ch.eps_prime / 2;
    // e^{2πi(n + ε/2)w} has order dividing den(ε/2)·den(w)
    let mut n_field = lcm_u32(ctx.cyclo_order, half_eps.denom() * w.denom());
    if j > 0 {
        n_field = n_field.lcm(&4);
    }
    if n_field > ctx.cyclo_cap {
        return Err(SeriesError::CycloCapExceeded {
            needed: n_field,
            cap: ctx.cyclo_cap,
        });
    }
    let field = CycloContext::new(n_field)?;
    let bound = RationalExp::from_integer(order + 1);
    // a²/2 + as < T  ⇔  (a + s)² < 2T + s²
    let radius = (2.0 * (order + 1) as f64 + (*p.s.numer() as f64 / *p.s.denom() as f64).powi(2)).sqrt() + 2.0;
    let centre = -(*p.s.numer() as f64 / *p.s.denom() as f64) - *half_eps.numer() as f64 / *half_eps.denom() as f64;
    let lo = (centre - radius).floor() as i64;
    let hi = (centre + radius).ceil() as i64;
    let quarter_turns = RationalExp::new(j as i64, 4);
    let mut terms = Vec::new();
    for n in lo..=hi {
        let a = RationalExp::from_integer(n) + half_eps;
        let e = a * a / 2 + a * p.s;
        if e >= bound {
            continue;
        }
        if j > 0 && a.is_zero() {
            continue;
        }
        let mag = big(a * 2).pow(j as i32);
        let c = unit_root(a * w + quarter_turns, &field).scale(&mag);
        terms.push((e, c));
    }
    let ctx = SeriesContext {
        cyclo_order: n_field,
        ..*ctx
    };
    PiSeries::from_terms(&ctx, j as i32, terms, Some(bound))
}

/// Theta constant derivative `θ^{(j)}[ch](0, τ)`.
pub fn theta_deriv(j: u32, ch: ThetaChar, order: i64, ctx: &SeriesContext) -> Result<PiSeries, SeriesError> {
    theta_at_point(j, ch, RationalPoint::origin(), order, ctx)
}

/// `θ[ch](0, τ)` from the Jacobi triple product.
pub fn theta_triple_product(ch: ThetaChar, order: i64, ctx: &SeriesContext) -> Result<PiSeries, SeriesError> {
    // Reduce ε into (−1, 1]: shifting ε by 2m is free, shifting ε′ by 2k
    // costs e^{πiεk}.
    let two = RationalExp::from_integer(2);
    let m = ((RationalExp::one() - ch.eps) / two).ceil();
    let eps = ch.eps + m * two;
    let eps_prime = ch.eps_prime;
    let pre = eps * eps / 8;
    let phase = eps * eps_prime / 4;
    let n_field = lcm_u32(lcm_u32(ctx.cyclo_order, *phase.denom()), *(eps_prime / 2).denom());
    let field = CycloContext::new(n_field)?;
    let wctx = SeriesContext {
        cyclo_order: n_field,
        ..*ctx
    };
    let bound = RationalExp::from_integer(order + 1) - pre;
    let plus = unit_root(eps_prime / 2, &field);
    let minus = unit_root(-eps_prime / 2, &field);

    let mut acc = PiSeries::one(&wctx).truncate(bound);
    let mut n = 1i64;
    loop {
        let nn = RationalExp::from_integer(2 * n - 1);
        let e_plus = (nn + eps) / two;
        let e_minus = (nn - eps) / two;
        let e_int = RationalExp::from_integer(n);
        if e_plus >= bound && e_minus >= bound && e_int >= bound {
            break;
        }
        let one = CycloNumber::one(&field);
        for (e, c, sign_one) in [(e_int, one.clone(), -1i64), (e_plus, plus.clone(), 1), (e_minus, minus.clone(), 1)] {
            if e >= bound {
                continue;
            }
            let c = if sign_one < 0 { -&c } else { c };
            let factor = PiSeries::from_terms(
                &wctx,
                0,
                [(RationalExp::zero(), CycloNumber::one(&field)), (e, c)],
                None,
            )?;
            acc = acc.mul(&factor)?.truncate(bound);
        }
        n += 1;
    }
    acc.shift(pre).scale(&unit_root(phase, &field), 0)
}

/// Monomials of the `n`-th log-derivative as polynomials in
/// `T_j = θ^{(j)}/θ`: `(coefficient, indices j of the factors T_j)`.
pub const LOG_DERIV_MONOMIALS: [&[(i64, &[u32])]; 5] = [
    &[(1, &[1])],
    &[(1, &[2]), (-1, &[1, 1])],
    &[(1, &[3]), (-3, &[2, 1]), (2, &[1, 1, 1])],
    &[
        (1, &[4]),
        (-4, &[3, 1]),
        (-3, &[2, 2]),
        (12, &[2, 1, 1]),
        (-6, &[1, 1, 1, 1]),
    ],
    &[
        (1, &[5]),
        (-5, &[4, 1]),
        (-10, &[3, 2]),
        (20, &[3, 1, 1]),
        (30, &[2, 2, 1]),
        (-60, &[2, 1, 1, 1]),
        (24, &[1, 1, 1, 1, 1]),
    ],
];

/// `(d/dz)^n log θ[ch](z)` at `z = p`, for `n = 1..=5`.
pub fn log_deriv(
    n: u32,
    ch: ThetaChar,
    p: RationalPoint,
    order: i64,
    ctx: &SeriesContext,
) -> Result<PiSeries, ThetaError> {
    if !(1..=5).contains(&n) {
        return Err(ThetaError::UnsupportedOrder(n));
    }
    let base = theta_at_point(0, ch, p, order, ctx)?;
    if base.is_zero() {
        return Err(ThetaError::PointIsZero { ch, point: p });
    }
    let inv = base.invert()?;
    let ts: Vec<PiSeries> = (1..=n)
        .map(|j| theta_at_point(j, ch, p, order, ctx)?.mul(&inv))
        .collect::<Result<_, _>>()?;
    let monomials: Vec<(BigRational, Vec<(&PiSeries, u32)>)> = LOG_DERIV_MONOMIALS[n as usize - 1]
        .iter()
        .map(|(c, idx)| {
            let mut counts = [0u32; 6];
            for &i in *idx {
                counts[i as usize] += 1;
            }
            let factors = (1..=n as usize)
                .filter(|&i| counts[i] > 0)
                .map(|i| (&ts[i - 1], counts[i]))
                .collect();
            (BigRational::from_integer((*c).into()), factors)
        })
        .collect();
    Ok(PiSeries::polynomial_in(&monomials)?)
}
