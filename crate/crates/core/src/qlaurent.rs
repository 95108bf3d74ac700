//! Truncated Laurent series in `t = q^{1/D}` with cyclotomic coefficients and
//! an explicit power of `π`.
//!
//! A [`PiSeries`] stands for `π^g · Σ c_n q^{n/D} + O(q^{T/D})`: the grade `g`
//! is carried as an integer, the coefficients `c_n` live in `Q(ζ_N)`, and the
//! truncation bound `T` records how far the coefficients are known exactly.
//! Series with different `D` or `N` are raised to common multiples
//! automatically. Adding series of different grades is an error, because no
//! cancellation between different powers of `π` is possible.

use std::borrow::Cow;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclonum::{Accumulator, CycloContext, CycloError, CycloNumber};

/// Exponents are rationals with `i64` parts.
pub type RationalExp = Rational64;

/// Largest cyclotomic order reachable by automatic unification.
pub const DEFAULT_CYCLO_CAP: u32 = 2520;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("pi-grade mismatch: {left} vs {right}")]
    PiGradeMismatch { left: i32, right: i32 },
    #[error("series is zero to its truncation and cannot be inverted")]
    NotInvertible,
    #[error("inverting an exact non-monomial needs an explicit truncation")]
    UnboundedPrecision,
    #[error("cyclotomic order {needed} exceeds the cap {cap}")]
    CycloCapExceeded { needed: u32, cap: u32 },
    #[error("coefficient at q^{exponent} lies beyond the truncation bound {trunc}")]
    BeyondTruncation { exponent: RationalExp, trunc: RationalExp },
    #[error("substitution exponent must be positive, got {0}")]
    NonPositiveSubstitution(RationalExp),
    #[error("invalid series context: {0}")]
    InvalidContext(String),
    #[error(transparent)]
    Cyclo(#[from] CycloError),
}

/// Exponent denominator `D` and cyclotomic order `N` shared by a series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeriesContext {
    pub exponent_denominator: i64,
    pub cyclo_order: u32,
    pub cyclo_cap: u32,
}

impl Default for SeriesContext {
    fn default() -> Self {
        SeriesContext {
            exponent_denominator: 72,
            cyclo_order: crate::cyclonum::DEFAULT_ORDER,
            cyclo_cap: DEFAULT_CYCLO_CAP,
        }
    }
}

impl SeriesContext {
    pub fn new(exponent_denominator: i64, cyclo_order: u32) -> Self {
        SeriesContext {
            exponent_denominator,
            cyclo_order,
            cyclo_cap: DEFAULT_CYCLO_CAP,
        }
    }

    /// Integer exponents, rational coefficients.
    pub fn rational() -> Self {
        Self::new(1, 1)
    }

    fn field(&self) -> Arc<CycloContext> {
        CycloContext::new(self.cyclo_order).expect("cyclo order validated")
    }

    fn validate(&self) -> Result<(), SeriesError> {
        if self.exponent_denominator < 1 {
            return Err(SeriesError::InvalidContext(format!(
                "exponent denominator {} must be positive",
                self.exponent_denominator
            )));
        }
        if self.cyclo_order == 0 {
            return Err(CycloError::ZeroOrder.into());
        }
        if self.cyclo_order > self.cyclo_cap {
            return Err(SeriesError::CycloCapExceeded {
                needed: self.cyclo_order,
                cap: self.cyclo_cap,
            });
        }
        Ok(())
    }
}

fn opt_add(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    Some(a? + b?)
}

fn opt_min(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

/// `π^grade · Σ c_n q^{n/D} + O(q^{trunc/D})`.
#[derive(Clone)]
pub struct PiSeries {
    denom: i64,
    field: Arc<CycloContext>,
    cap: u32,
    pi_grade: i32,
    terms: BTreeMap<i64, CycloNumber>,
    /// Exclusive bound on known exponent numerators; `None` means exact.
    trunc: Option<i64>,
}

/// Result of an exact coefficient comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comparison {
    /// Coefficients were compared for every exponent below this bound;
    /// `None` when both sides are exact.
    pub achieved: Option<RationalExp>,
    pub first_discrepancy: Option<Discrepancy>,
}

impl Comparison {
    pub fn passed(&self) -> bool {
        self.first_discrepancy.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Discrepancy {
    pub exponent: RationalExp,
    pub lhs: CycloNumber,
    pub rhs: CycloNumber,
}

impl PiSeries {
    fn from_parts(
        denom: i64,
        field: Arc<CycloContext>,
        cap: u32,
        pi_grade: i32,
        mut terms: BTreeMap<i64, CycloNumber>,
        trunc: Option<i64>,
    ) -> Self {
        terms.retain(|_, c| !c.is_zero());
        if let Some(t) = trunc {
            terms.split_off(&t);
        }
        PiSeries {
            denom,
            field,
            cap,
            pi_grade,
            terms,
            trunc,
        }
    }

    /// Exact zero of the given grade.
    pub fn zero(ctx: &SeriesContext, pi_grade: i32) -> Self {
        Self::from_parts(
            ctx.exponent_denominator,
            ctx.field(),
            ctx.cyclo_cap,
            pi_grade,
            BTreeMap::new(),
            None,
        )
    }

    /// Exact constant 1 of grade 0.
    pub fn one(ctx: &SeriesContext) -> Self {
        let field = ctx.field();
        Self::monomial(ctx, RationalExp::zero(), CycloNumber::one(&field), 0)
    }

    /// Exact `π^grade · c · q^e`.
    pub fn monomial(ctx: &SeriesContext, e: RationalExp, c: CycloNumber, pi_grade: i32) -> Self {
        Self::from_terms(ctx, pi_grade, [(e, c)], None).expect("monomial fits its context")
    }

    /// Builds a series from `(exponent, coefficient)` pairs. Exponents and the
    /// optional exclusive truncation bound may carry any denominator; `D` and
    /// `N` are enlarged beyond `ctx` as needed.
    pub fn from_terms<I>(
        ctx: &SeriesContext,
        pi_grade: i32,
        terms: I,
        trunc: Option<RationalExp>,
    ) -> Result<Self, SeriesError>
    where
        I: IntoIterator<Item = (RationalExp, CycloNumber)>,
    {
        ctx.validate()?;
        let terms: Vec<(RationalExp, CycloNumber)> = terms.into_iter().collect();
        let mut denom = ctx.exponent_denominator;
        let mut order = ctx.cyclo_order;
        for (e, c) in &terms {
            denom = denom.lcm(e.denom());
            order = order.lcm(&c.order());
        }
        if let Some(t) = trunc {
            denom = denom.lcm(t.denom());
        }
        if order > ctx.cyclo_cap {
            return Err(SeriesError::CycloCapExceeded {
                needed: order,
                cap: ctx.cyclo_cap,
            });
        }
        let field = CycloContext::new(order)?;
        let mut map: BTreeMap<i64, CycloNumber> = BTreeMap::new();
        for (e, c) in terms {
            let n = e.numer() * (denom / e.denom());
            let c = c.lift_to(&field)?;
            match map.get_mut(&n) {
                Some(x) => *x = &*x + &c,
                None => {
                    map.insert(n, c);
                }
            }
        }
        let trunc = trunc.map(|t| t.numer() * (denom / t.denom()));
        Ok(Self::from_parts(denom, field, ctx.cyclo_cap, pi_grade, map, trunc))
    }

    /// Integer-exponent series with rational coefficients `coeffs[k]` at `q^k`,
    /// known through `q^{coeffs.len()-1}`.
    pub fn from_rational_coeffs(coeffs: &[BigRational]) -> Self {
        let field = CycloContext::rationals();
        let terms = coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| (k as i64, CycloNumber::from_rational(&field, c)))
            .collect();
        Self::from_parts(1, field, DEFAULT_CYCLO_CAP, 0, terms, Some(coeffs.len() as i64))
    }

    /// Like [`from_rational_coeffs`](Self::from_rational_coeffs) for integers.
    pub fn from_int_coeffs(coeffs: &[i64]) -> Self {
        let field = CycloContext::rationals();
        let terms = coeffs
            .iter()
            .enumerate()
            .map(|(k, &c)| (k as i64, CycloNumber::from_i64(&field, c)))
            .collect();
        Self::from_parts(1, field, DEFAULT_CYCLO_CAP, 0, terms, Some(coeffs.len() as i64))
    }

    /// Like [`from_int_coeffs`](Self::from_int_coeffs) for big integers.
    pub fn from_bigint_coeffs(coeffs: &[BigInt]) -> Self {
        let field = CycloContext::rationals();
        let terms = coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| (k as i64, CycloNumber::from_integer(&field, c.clone())))
            .collect();
        Self::from_parts(1, field, DEFAULT_CYCLO_CAP, 0, terms, Some(coeffs.len() as i64))
    }

    pub fn context(&self) -> SeriesContext {
        SeriesContext {
            exponent_denominator: self.denom,
            cyclo_order: self.field.order(),
            cyclo_cap: self.cap,
        }
    }

    pub fn exponent_denominator(&self) -> i64 {
        self.denom
    }

    pub fn cyclo_order(&self) -> u32 {
        self.field.order()
    }

    pub fn field(&self) -> &Arc<CycloContext> {
        &self.field
    }

    pub fn pi_grade(&self) -> i32 {
        self.pi_grade
    }

    /// Exclusive truncation bound as an exponent-numerator, `None` if exact.
    pub fn trunc_numerator(&self) -> Option<i64> {
        self.trunc
    }

    /// Exclusive truncation bound as a rational exponent, `None` if exact.
    pub fn trunc(&self) -> Option<RationalExp> {
        self.trunc.map(|t| RationalExp::new(t, self.denom))
    }

    pub fn is_exact(&self) -> bool {
        self.trunc.is_none()
    }

    /// True when no nonzero coefficient is known.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (RationalExp, &CycloNumber)> + '_ {
        let d = self.denom;
        self.terms.iter().map(move |(&n, c)| (RationalExp::new(n, d), c))
    }

    /// Terms keyed by exponent-numerator.
    pub fn raw_terms(&self) -> &BTreeMap<i64, CycloNumber> {
        &self.terms
    }

    /// Smallest exponent with a nonzero coefficient.
    pub fn lead_exponent(&self) -> Option<RationalExp> {
        self.terms
            .keys()
            .next()
            .map(|&n| RationalExp::new(n, self.denom))
    }

    /// Lead exponent-numerator, falling back to the truncation bound for a
    /// series with no known nonzero term.
    fn lead_or_trunc(&self) -> Option<i64> {
        self.terms.keys().next().copied().or(self.trunc)
    }

    /// Coefficient of `q^e`. Exponents not on the `1/D` grid have coefficient
    /// zero when they lie below the truncation bound.
    pub fn coefficient(&self, e: RationalExp) -> Result<CycloNumber, SeriesError> {
        if let Some(t) = self.trunc() {
            if e >= t {
                return Err(SeriesError::BeyondTruncation { exponent: e, trunc: t });
            }
        }
        let scaled = e * RationalExp::from_integer(self.denom);
        if !scaled.is_integer() {
            return Ok(CycloNumber::zero(&self.field));
        }
        Ok(self
            .terms
            .get(&scaled.to_integer())
            .cloned()
            .unwrap_or_else(|| CycloNumber::zero(&self.field)))
    }

    /// Coefficient of `q^k` for an integer `k`.
    pub fn coefficient_at(&self, k: i64) -> Result<CycloNumber, SeriesError> {
        self.coefficient(RationalExp::from_integer(k))
    }

    /// Same series expressed over a finer exponent grid and/or larger field.
    pub fn with_context(&self, denom: i64, order: u32) -> Result<PiSeries, SeriesError> {
        if denom % self.denom != 0 {
            return Err(SeriesError::InvalidContext(format!(
                "exponent denominator {} is not a multiple of {}",
                denom, self.denom
            )));
        }
        if order > self.cap {
            return Err(SeriesError::CycloCapExceeded {
                needed: order,
                cap: self.cap,
            });
        }
        if denom == self.denom && order == self.field.order() {
            return Ok(self.clone());
        }
        let k = denom / self.denom;
        let field = if order == self.field.order() {
            self.field.clone()
        } else {
            CycloContext::new(order)?
        };
        let mut terms = BTreeMap::new();
        for (&n, c) in &self.terms {
            terms.insert(n * k, c.lift_to(&field)?);
        }
        Ok(PiSeries {
            denom,
            field,
            cap: self.cap,
            pi_grade: self.pi_grade,
            terms,
            trunc: self.trunc.map(|t| t * k),
        })
    }

    fn unified<'a>(
        a: &'a PiSeries,
        b: &'a PiSeries,
    ) -> Result<(Cow<'a, PiSeries>, Cow<'a, PiSeries>), SeriesError> {
        let d = a.denom.lcm(&b.denom);
        let n = a.field.order().lcm(&b.field.order());
        let cap = a.cap.min(b.cap);
        if n > cap {
            return Err(SeriesError::CycloCapExceeded { needed: n, cap });
        }
        let lift = |s: &'a PiSeries| -> Result<Cow<'a, PiSeries>, SeriesError> {
            if s.denom == d && s.field.order() == n {
                Ok(Cow::Borrowed(s))
            } else {
                Ok(Cow::Owned(s.with_context(d, n)?))
            }
        };
        // Reuse one Arc for the shared field when either side already has it.
        let a2 = lift(a)?;
        let mut b2 = lift(b)?;
        if !Arc::ptr_eq(&a2.field, &b2.field) {
            b2.to_mut().field = a2.field.clone();
            let field = a2.field.clone();
            for c in b2.to_mut().terms.values_mut() {
                *c = c.lift_to(&field)?;
            }
        }
        Ok((a2, b2))
    }

    fn combined_grade(&self, other: &PiSeries) -> Result<i32, SeriesError> {
        if self.pi_grade == other.pi_grade || other.is_zero() {
            Ok(self.pi_grade)
        } else if self.is_zero() {
            Ok(other.pi_grade)
        } else {
            Err(SeriesError::PiGradeMismatch {
                left: self.pi_grade,
                right: other.pi_grade,
            })
        }
    }

    fn add_impl(&self, other: &PiSeries, subtract: bool) -> Result<PiSeries, SeriesError> {
        let grade = self.combined_grade(other)?;
        let (a, b) = Self::unified(self, other)?;
        let trunc = opt_min(a.trunc, b.trunc);
        let mut terms = a.terms.clone();
        for (&n, c) in &b.terms {
            if trunc.is_some_and(|t| n >= t) {
                break;
            }
            match terms.get_mut(&n) {
                Some(x) => {
                    *x = if subtract { &*x - c } else { &*x + c };
                }
                None => {
                    terms.insert(n, if subtract { -c } else { c.clone() });
                }
            }
        }
        Ok(Self::from_parts(a.denom, a.field.clone(), a.cap, grade, terms, trunc))
    }

    pub fn add(&self, other: &PiSeries) -> Result<PiSeries, SeriesError> {
        self.add_impl(other, false)
    }

    pub fn sub(&self, other: &PiSeries) -> Result<PiSeries, SeriesError> {
        self.add_impl(other, true)
    }

    pub fn neg(&self) -> PiSeries {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -&*c;
        }
        out
    }

    /// Cauchy product. The result is known below
    /// `min(trunc_f + lead_g, trunc_g + lead_f)`.
    pub fn mul(&self, other: &PiSeries) -> Result<PiSeries, SeriesError> {
        let (a, b) = Self::unified(self, other)?;
        let trunc = opt_min(
            opt_add(a.trunc, b.lead_or_trunc()),
            opt_add(b.trunc, a.lead_or_trunc()),
        );
        let mut acc: BTreeMap<i64, Accumulator> = BTreeMap::new();
        let b_terms: Vec<(i64, &CycloNumber)> = b.terms.iter().map(|(&n, c)| (n, c)).collect();
        for (&na, ca) in &a.terms {
            for &(nb, cb) in &b_terms {
                let n = na + nb;
                if trunc.is_some_and(|t| n >= t) {
                    break;
                }
                acc.entry(n)
                    .or_insert_with(|| Accumulator::new(&a.field))
                    .add_product(ca, cb, false);
            }
        }
        let terms = acc.into_iter().map(|(n, s)| (n, s.finish())).collect();
        Ok(Self::from_parts(
            a.denom,
            a.field.clone(),
            a.cap,
            self.pi_grade + other.pi_grade,
            terms,
            trunc,
        ))
    }

    /// Laurent inverse. A series `c·q^l(1 + h)` known below `T` has an inverse
    /// known below `T − 2l`.
    pub fn invert(&self) -> Result<PiSeries, SeriesError> {
        let (&lead, c) = self.terms.iter().next().ok_or(SeriesError::NotInvertible)?;
        let c_inv = c.inverse()?;
        let field = &self.field;
        if self.terms.len() == 1 {
            let mut terms = BTreeMap::new();
            terms.insert(-lead, c_inv);
            return Ok(Self::from_parts(
                self.denom,
                field.clone(),
                self.cap,
                -self.pi_grade,
                terms,
                self.trunc.map(|t| t - 2 * lead),
            ));
        }
        let trunc = self.trunc.ok_or(SeriesError::UnboundedPrecision)?;
        // h_k = coefficient of q^{lead+k} divided by the leading coefficient.
        let h: Vec<(i64, CycloNumber)> = self
            .terms
            .iter()
            .skip(1)
            .map(|(&n, x)| (n - lead, x * &c_inv))
            .collect();
        let step = h.iter().fold(0i64, |g, (k, _)| g.gcd(k));
        let precision = trunc - lead;
        let count = if precision <= 0 {
            0
        } else {
            ((precision - 1) / step + 1) as usize
        };
        let mut g: Vec<CycloNumber> = Vec::with_capacity(count);
        for j in 0..count {
            if j == 0 {
                g.push(CycloNumber::one(field));
                continue;
            }
            let mut acc = Accumulator::new(field);
            for (k, hk) in &h {
                let idx = (k / step) as usize;
                if idx > j {
                    break;
                }
                let prev = &g[j - idx];
                if !prev.is_zero() {
                    acc.add_product(hk, prev, true);
                }
            }
            g.push(acc.finish());
        }
        let mut terms = BTreeMap::new();
        for (j, gj) in g.into_iter().enumerate() {
            if !gj.is_zero() {
                terms.insert(j as i64 * step - lead, &gj * &c_inv);
            }
        }
        Ok(Self::from_parts(
            self.denom,
            field.clone(),
            self.cap,
            -self.pi_grade,
            terms,
            Some(trunc - 2 * lead),
        ))
    }

    pub fn div(&self, other: &PiSeries) -> Result<PiSeries, SeriesError> {
        self.mul(&other.invert()?)
    }

    pub fn pow(&self, n: u32) -> Result<PiSeries, SeriesError> {
        let one = PiSeries::one(&self.context());
        let mut acc = one;
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// `θ_q = q·d/dq`: the term `c·q^e` becomes `e·c·q^e`.
    pub fn theta_q(&self) -> PiSeries {
        let mut terms = BTreeMap::new();
        for (&n, c) in &self.terms {
            if n != 0 {
                terms.insert(n, c.scale(&BigRational::new(n.into(), self.denom.into())));
            }
        }
        Self::from_parts(self.denom, self.field.clone(), self.cap, self.pi_grade, terms, self.trunc)
    }

    /// `q ↦ q^k` for a positive rational `k`.
    pub fn substitute_power(&self, k: RationalExp) -> Result<PiSeries, SeriesError> {
        if !k.is_positive() {
            return Err(SeriesError::NonPositiveSubstitution(k));
        }
        let (p, q) = (*k.numer(), *k.denom());
        let terms = self
            .terms
            .iter()
            .map(|(&n, c)| (n * p, c.clone()))
            .collect();
        let out = Self::from_parts(
            self.denom * q,
            self.field.clone(),
            self.cap,
            self.pi_grade,
            terms,
            self.trunc.map(|t| t * p),
        );
        Ok(out.reduced_denominator())
    }

    /// Drops common factors of `D`, the exponent numerators and the bound.
    fn reduced_denominator(mut self) -> PiSeries {
        let mut g = self.denom;
        if let Some(t) = self.trunc {
            g = g.gcd(&t);
        }
        for &n in self.terms.keys() {
            if g == 1 {
                break;
            }
            g = g.gcd(&n);
        }
        if g > 1 {
            self.denom /= g;
            self.trunc = self.trunc.map(|t| t / g);
            self.terms = std::mem::take(&mut self.terms)
                .into_iter()
                .map(|(n, c)| (n / g, c))
                .collect();
        }
        self
    }

    /// Multiplies every coefficient by `c` and adds `dpi` to the grade.
    pub fn scale(&self, c: &CycloNumber, dpi: i32) -> Result<PiSeries, SeriesError> {
        let order = self.field.order().lcm(&c.order());
        let base = if order == self.field.order() {
            Cow::Borrowed(self)
        } else {
            Cow::Owned(self.with_context(self.denom, order)?)
        };
        let c = c.lift_to(&base.field)?;
        let terms = base.terms.iter().map(|(&n, x)| (n, x * &c)).collect();
        Ok(Self::from_parts(
            base.denom,
            base.field.clone(),
            base.cap,
            base.pi_grade + dpi,
            terms,
            base.trunc,
        ))
    }

    /// Multiplies by a rational scalar, grade unchanged.
    pub fn scale_rational(&self, r: &BigRational) -> PiSeries {
        let terms = self.terms.iter().map(|(&n, x)| (n, x.scale(r))).collect();
        Self::from_parts(self.denom, self.field.clone(), self.cap, self.pi_grade, terms, self.trunc)
    }

    /// Multiplies by `num/den`.
    pub fn scale_ratio(&self, num: i64, den: i64) -> PiSeries {
        self.scale_rational(&BigRational::new(num.into(), den.into()))
    }

    /// Multiplies by `q^e`.
    pub fn shift(&self, e: RationalExp) -> PiSeries {
        let denom = self.denom.lcm(e.denom());
        let k = denom / self.denom;
        let off = e.numer() * (denom / e.denom());
        let terms = self.terms.iter().map(|(&n, c)| (n * k + off, c.clone())).collect();
        Self::from_parts(
            denom,
            self.field.clone(),
            self.cap,
            self.pi_grade,
            terms,
            self.trunc.map(|t| t * k + off),
        )
    }

    /// Lowers the truncation bound to `bound` (exclusive), dropping terms at or
    /// beyond it. Never raises an existing bound.
    pub fn truncate(&self, bound: RationalExp) -> PiSeries {
        let denom = self.denom.lcm(bound.denom());
        let base = self
            .with_context(denom, self.field.order())
            .expect("finer grid is always valid");
        let t = bound.numer() * (denom / bound.denom());
        let trunc = opt_min(base.trunc, Some(t));
        Self::from_parts(base.denom, base.field, base.cap, base.pi_grade, base.terms, trunc)
    }

    /// Replaces the grade without touching coefficients.
    pub fn with_grade(&self, pi_grade: i32) -> PiSeries {
        let mut out = self.clone();
        out.pi_grade = pi_grade;
        out
    }

    /// Compares coefficients below the common truncation bound.
    pub fn equal_to_order(&self, other: &PiSeries) -> Result<Comparison, SeriesError> {
        let diff = self.sub(other)?;
        let achieved = diff.trunc();
        let first_discrepancy = match diff.terms.iter().next() {
            None => None,
            Some((&n, _)) => {
                let e = RationalExp::new(n, diff.denom);
                Some(Discrepancy {
                    exponent: e,
                    lhs: self.coefficient(e)?,
                    rhs: other.coefficient(e)?,
                })
            }
        };
        Ok(Comparison {
            achieved,
            first_discrepancy,
        })
    }

    /// Same coefficients to the common truncation bound.
    pub fn agrees_with(&self, other: &PiSeries) -> bool {
        self.equal_to_order(other).is_ok_and(|c| c.passed())
    }

    /// Replaces one coefficient (used for fault injection).
    pub fn with_coefficient(&self, e: RationalExp, c: CycloNumber) -> Result<PiSeries, SeriesError> {
        let delta = c.try_sub(&self.coefficient(e)?)?;
        let ctx = self.context();
        let bump = PiSeries::from_terms(&ctx, self.pi_grade, [(e, delta)], None)?;
        self.add(&bump)
    }

    pub fn to_json(&self) -> PiSeriesJson {
        PiSeriesJson {
            pi_grade: self.pi_grade,
            d: self.denom,
            n: self.field.order(),
            terms: self
                .terms
                .iter()
                .map(|(&n, c)| (n, c.coeffs().iter().map(ToString::to_string).collect()))
                .collect(),
            trunc: self.trunc,
        }
    }

    pub fn from_json(json: &PiSeriesJson) -> Result<PiSeries, SeriesError> {
        let ctx = SeriesContext::new(json.d, json.n);
        ctx.validate()?;
        let field = ctx.field();
        let mut terms = BTreeMap::new();
        for (n, coeffs) in &json.terms {
            let parsed: Result<Vec<BigRational>, _> = coeffs.iter().map(|s| s.parse()).collect();
            let parsed = parsed
                .map_err(|_| SeriesError::InvalidContext(format!("bad rational in {coeffs:?}")))?;
            terms.insert(*n, CycloNumber::from_coeffs(&field, &parsed)?);
        }
        Ok(Self::from_parts(json.d, field, DEFAULT_CYCLO_CAP, json.pi_grade, terms, json.trunc))
    }
}

/// Exact JSON form: `{ pi_grade, D, N, terms: [[n, ["p/q", …]], …], trunc }`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiSeriesJson {
    pub pi_grade: i32,
    #[serde(rename = "D")]
    pub d: i64,
    #[serde(rename = "N")]
    pub n: u32,
    pub terms: Vec<(i64, Vec<String>)>,
    pub trunc: Option<i64>,
}

impl PartialEq for PiSeries {
    /// Same grade, same known coefficients and the same truncation bound.
    fn eq(&self, other: &Self) -> bool {
        if self.pi_grade != other.pi_grade && !(self.is_zero() && other.is_zero()) {
            return false;
        }
        if self.trunc() != other.trunc() {
            return false;
        }
        self.equal_to_order(other).is_ok_and(|c| c.passed())
    }
}

impl fmt::Debug for PiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PiSeries(D={}, N={}) ", self.denom, self.field.order())?;
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for PiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pi_grade != 0 {
            write!(f, "pi^{} * (", self.pi_grade)?;
        }
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if e.is_zero() {
                write!(f, "({})", c)?;
            } else {
                write!(f, "({})*q^{}", c, e)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        if let Some(t) = self.trunc() {
            write!(f, " + O(q^{})", t)?;
        }
        if self.pi_grade != 0 {
            write!(f, ")")?;
        }
        Ok(())
    }
}

macro_rules! series_binop {
    ($tr:ident, $method:ident) => {
        impl std::ops::$tr<&PiSeries> for &PiSeries {
            type Output = PiSeries;
            /// Panics on a grade mismatch or cap overflow; the named method
            /// returns the error instead.
            fn $method(self, rhs: &PiSeries) -> PiSeries {
                PiSeries::$method(self, rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}

series_binop!(Add, add);
series_binop!(Sub, sub);
series_binop!(Mul, mul);

impl std::ops::Neg for &PiSeries {
    type Output = PiSeries;
    fn neg(self) -> PiSeries {
        PiSeries::neg(self)
    }
}

/// Builds the rational exponent `n/d`.
pub fn rexp(n: i64, d: i64) -> RationalExp {
    RationalExp::new(n, d)
}

impl PiSeries {
    /// Exact polynomial `Σ c_k q^k` with rational coefficients; no truncation.
    pub fn polynomial(coeffs: &[i64]) -> PiSeries {
        let field = CycloContext::rationals();
        let terms = coeffs
            .iter()
            .enumerate()
            .map(|(k, &c)| (k as i64, CycloNumber::from_i64(&field, c)))
            .collect();
        Self::from_parts(1, field, DEFAULT_CYCLO_CAP, 0, terms, None)
    }

    /// Largest `D` and `N` any operation produced; used by diagnostics.
    pub fn describe_context(&self) -> String {
        format!("D={} N={} grade={}", self.denom, self.field.order(), self.pi_grade)
    }

    /// Sum of `Σ c_i · ∏ s_j^{e_j}` over monomials, each given as a rational
    /// coefficient and a list of `(factor, exponent)` pairs.
    pub fn polynomial_in(monomials: &[(BigRational, Vec<(&PiSeries, u32)>)]) -> Result<PiSeries, SeriesError> {
        let mut total: Option<PiSeries> = None;
        for (coef, factors) in monomials {
            let mut term: Option<PiSeries> = None;
            for (s, e) in factors {
                let p = s.pow(*e)?;
                term = Some(match term {
                    None => p,
                    Some(t) => t.mul(&p)?,
                });
            }
            let term = term
                .ok_or_else(|| SeriesError::InvalidContext("monomial without factors".into()))?
                .scale_rational(coef);
            total = Some(match total {
                None => term,
                Some(t) => t.add(&term)?,
            });
        }
        total.ok_or_else(|| SeriesError::InvalidContext("empty polynomial".into()))
    }
}
