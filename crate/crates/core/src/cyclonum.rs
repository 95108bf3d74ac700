//! Exact arithmetic in the cyclotomic field `Q(ζ_N)`.
//!
//! Elements are stored in the power basis `1, ζ, …, ζ^{φ(N)-1}` as a vector of
//! integer numerators over one positive common denominator. The representation
//! is always fully reduced modulo the `N`-th cyclotomic polynomial and the
//! numerators are coprime to the denominator, so two elements of the same
//! field are equal exactly when their stored data are identical.
//!
//! Elements of different fields combine when one order divides the other; the
//! smaller field is embedded with [`CycloNumber::lift`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Field order used when nothing else is requested: `lcm` of every root of
/// unity order the cubic theta registry needs at the base point.
pub const DEFAULT_ORDER: u32 = 72;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycloError {
    #[error("cyclotomic orders {left} and {right} are not nested; lift both to their lcm first")]
    ContextMismatch { left: u32, right: u32 },
    #[error("division by zero in a cyclotomic field")]
    DivisionByZero,
    #[error("Q(zeta_{to}) is not an extension of Q(zeta_{from})")]
    NotAnExtension { from: u32, to: u32 },
    #[error("cyclotomic order must be positive")]
    ZeroOrder,
    #[error("expected {expected} coefficients, got {got}")]
    WrongLength { expected: usize, got: usize },
}

/// The field `Q(ζ_N)` together with its defining polynomial `Φ_N`.
#[derive(Debug, PartialEq, Eq)]
pub struct CycloContext {
    order: u32,
    /// Monic `Φ_N`, lowest degree first; length `φ(N) + 1`.
    poly: Vec<i64>,
}

impl CycloContext {
    pub fn new(order: u32) -> Result<Arc<Self>, CycloError> {
        if order == 0 {
            return Err(CycloError::ZeroOrder);
        }
        Ok(Arc::new(CycloContext {
            order,
            poly: cyclotomic_polynomial(order),
        }))
    }

    /// The rationals, `Q(ζ_1)`.
    pub fn rationals() -> Arc<Self> {
        Self::new(1).expect("order 1 is valid")
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Degree of the field over `Q`, i.e. Euler's totient of the order.
    pub fn phi(&self) -> usize {
        self.poly.len() - 1
    }

    pub fn cyclo_poly(&self) -> &[i64] {
        &self.poly
    }

    /// Reduces an integer polynomial of any degree modulo `Φ_N` in place and
    /// truncates it to `φ(N)` coefficients.
    fn reduce(&self, p: &mut Vec<BigInt>) {
        let phi = self.phi();
        if p.len() > phi {
            for k in (phi..p.len()).rev() {
                if p[k].is_zero() {
                    continue;
                }
                let c = std::mem::take(&mut p[k]);
                let base = k - phi;
                for (i, &m) in self.poly[..phi].iter().enumerate() {
                    if m != 0 {
                        p[base + i] -= &c * m;
                    }
                }
            }
        }
        p.resize(phi, BigInt::zero());
    }
}

fn mobius(mut n: u32) -> i32 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// `Φ_N(x) = ∏_{d | N} (x^d - 1)^{μ(N/d)}`, computed with exact integer
/// multiplication and synthetic division.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    let divisors: Vec<u32> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    let mut p: Vec<i64> = vec![1];
    for &d in &divisors {
        if mobius(n / d) == 1 {
            // p *= x^d - 1
            let d = d as usize;
            let mut next = vec![0i64; p.len() + d];
            for (i, &c) in p.iter().enumerate() {
                next[i] -= c;
                next[i + d] += c;
            }
            p = next;
        }
    }
    for &d in &divisors {
        if mobius(n / d) == -1 {
            // p /= x^d - 1, exact
            let d = d as usize;
            let deg = p.len() - 1;
            let mut quot = vec![0i64; deg + 1 - d];
            let mut rem = p.clone();
            for k in (d..=deg).rev() {
                let c = rem[k];
                quot[k - d] = c;
                rem[k] -= c;
                rem[k - d] += c;
            }
            debug_assert!(rem.iter().all(|&c| c == 0));
            p = quot;
        }
    }
    p
}

/// An exact element of `Q(ζ_N)`.
#[derive(Clone)]
pub struct CycloNumber {
    ctx: Arc<CycloContext>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycloNumber {
    pub fn zero(ctx: &Arc<CycloContext>) -> Self {
        CycloNumber {
            ctx: ctx.clone(),
            num: vec![BigInt::zero(); ctx.phi()],
            den: BigInt::one(),
        }
    }

    pub fn one(ctx: &Arc<CycloContext>) -> Self {
        Self::from_integer(ctx, BigInt::one())
    }

    pub fn from_integer(ctx: &Arc<CycloContext>, n: BigInt) -> Self {
        let mut x = Self::zero(ctx);
        x.num[0] = n;
        x
    }

    pub fn from_i64(ctx: &Arc<CycloContext>, n: i64) -> Self {
        Self::from_integer(ctx, BigInt::from(n))
    }

    pub fn from_rational(ctx: &Arc<CycloContext>, r: &BigRational) -> Self {
        let mut x = Self::zero(ctx);
        x.num[0] = r.numer().clone();
        x.den = r.denom().clone();
        x.normalize();
        x
    }

    /// Builds an element from its power-basis coordinates.
    pub fn from_coeffs(ctx: &Arc<CycloContext>, coeffs: &[BigRational]) -> Result<Self, CycloError> {
        if coeffs.len() != ctx.phi() {
            return Err(CycloError::WrongLength {
                expected: ctx.phi(),
                got: coeffs.len(),
            });
        }
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let mut x = CycloNumber {
            ctx: ctx.clone(),
            num,
            den,
        };
        x.normalize();
        Ok(x)
    }

    /// `ζ_N^k`, with `k` taken modulo `N`.
    pub fn root_of_unity(k: i64, ctx: &Arc<CycloContext>) -> Self {
        let e = k.rem_euclid(ctx.order as i64) as usize;
        let mut p = vec![BigInt::zero(); e + 1];
        p[e] = BigInt::one();
        ctx.reduce(&mut p);
        CycloNumber {
            ctx: ctx.clone(),
            num: p,
            den: BigInt::one(),
        }
    }

    pub fn context(&self) -> &Arc<CycloContext> {
        &self.ctx
    }

    pub fn order(&self) -> u32 {
        self.ctx.order
    }

    /// Power-basis coordinates as reduced rationals.
    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|n| BigRational::new(n.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    /// Returns the value if it lies in `Q`.
    pub fn to_rational(&self) -> Option<BigRational> {
        if self.num[1..].iter().all(Zero::is_zero) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    fn is_rational(&self) -> bool {
        self.num[1..].iter().all(Zero::is_zero)
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -std::mem::take(&mut self.den);
            for n in &mut self.num {
                *n = -std::mem::take(n);
            }
        }
        if self.is_zero() {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for n in &self.num {
            if !n.is_zero() {
                g = g.gcd(n);
                if g.is_one() {
                    return;
                }
            }
        }
        for n in &mut self.num {
            if !n.is_zero() {
                *n /= &g;
            }
        }
        self.den /= &g;
    }

    /// Brings two operands into a common field when one order divides the other.
    fn align<'a>(
        a: &'a CycloNumber,
        b: &'a CycloNumber,
    ) -> Result<(std::borrow::Cow<'a, CycloNumber>, std::borrow::Cow<'a, CycloNumber>), CycloError> {
        use std::borrow::Cow;
        let (n, m) = (a.order(), b.order());
        if n == m {
            Ok((Cow::Borrowed(a), Cow::Borrowed(b)))
        } else if m % n == 0 {
            Ok((Cow::Owned(a.lift_to(b.context())?), Cow::Borrowed(b)))
        } else if n % m == 0 {
            Ok((Cow::Borrowed(a), Cow::Owned(b.lift_to(a.context())?)))
        } else {
            Err(CycloError::ContextMismatch { left: n, right: m })
        }
    }

    pub fn try_add(&self, other: &CycloNumber) -> Result<CycloNumber, CycloError> {
        let (a, b) = Self::align(self, other)?;
        Ok(a.add_same(&b, false))
    }

    pub fn try_sub(&self, other: &CycloNumber) -> Result<CycloNumber, CycloError> {
        let (a, b) = Self::align(self, other)?;
        Ok(a.add_same(&b, true))
    }

    pub fn try_mul(&self, other: &CycloNumber) -> Result<CycloNumber, CycloError> {
        let (a, b) = Self::align(self, other)?;
        Ok(a.mul_same(&b))
    }

    fn add_same(&self, other: &CycloNumber, subtract: bool) -> CycloNumber {
        let combine = |x: BigInt, y: BigInt| if subtract { x - y } else { x + y };
        let (num, den) = if self.den == other.den {
            let num = self
                .num
                .iter()
                .zip(&other.num)
                .map(|(x, y)| combine(x.clone(), y.clone()))
                .collect();
            (num, self.den.clone())
        } else {
            let num = self
                .num
                .iter()
                .zip(&other.num)
                .map(|(x, y)| combine(x * &other.den, y * &self.den))
                .collect();
            (num, &self.den * &other.den)
        };
        let mut out = CycloNumber {
            ctx: self.ctx.clone(),
            num,
            den,
        };
        out.normalize();
        out
    }

    fn mul_same(&self, other: &CycloNumber) -> CycloNumber {
        if self.is_rational() {
            return other.scale_parts(&self.num[0], &self.den);
        }
        if other.is_rational() {
            return self.scale_parts(&other.num[0], &other.den);
        }
        let phi = self.ctx.phi();
        let mut prod = vec![BigInt::zero(); 2 * phi - 1];
        for (i, x) in self.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.num.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        self.ctx.reduce(&mut prod);
        let mut out = CycloNumber {
            ctx: self.ctx.clone(),
            num: prod,
            den: &self.den * &other.den,
        };
        out.normalize();
        out
    }

    fn scale_parts(&self, n: &BigInt, d: &BigInt) -> CycloNumber {
        if n.is_zero() {
            return CycloNumber::zero(&self.ctx);
        }
        let mut out = CycloNumber {
            ctx: self.ctx.clone(),
            num: self.num.iter().map(|x| x * n).collect(),
            den: &self.den * d,
        };
        out.normalize();
        out
    }

    /// Multiplies by a rational scalar.
    pub fn scale(&self, r: &BigRational) -> CycloNumber {
        self.scale_parts(r.numer(), r.denom())
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in `Q[x]`
    /// against `Φ_N`.
    pub fn inverse(&self) -> Result<CycloNumber, CycloError> {
        if self.is_zero() {
            return Err(CycloError::DivisionByZero);
        }
        if self.is_rational() {
            return Ok(CycloNumber {
                ctx: self.ctx.clone(),
                num: {
                    let mut v = vec![BigInt::zero(); self.ctx.phi()];
                    v[0] = self.den.clone();
                    v
                },
                den: self.num[0].clone(),
            }
            .normalized());
        }
        let modulus: Vec<BigRational> = self
            .ctx
            .poly
            .iter()
            .map(|&c| BigRational::from_integer(BigInt::from(c)))
            .collect();
        let value: Vec<BigRational> = self.coeffs();
        let (g, s) = rpoly::ext_gcd(&modulus, &value);
        // Φ_N is irreducible, so the gcd is a nonzero constant.
        debug_assert_eq!(g.len(), 1);
        let c = g[0].clone();
        let mut inv: Vec<BigRational> = s.iter().map(|x| x / &c).collect();
        inv.resize(self.ctx.phi(), BigRational::zero());
        CycloNumber::from_coeffs(&self.ctx, &inv)
    }

    fn normalized(mut self) -> Self {
        self.normalize();
        self
    }

    pub fn try_div(&self, other: &CycloNumber) -> Result<CycloNumber, CycloError> {
        self.try_mul(&other.inverse()?)
    }

    /// Image under `ζ_N ↦ ζ_M^{M/N}`.
    pub fn lift(&self, m: u32) -> Result<CycloNumber, CycloError> {
        if m == self.order() {
            return Ok(self.clone());
        }
        if m == 0 || !m.is_multiple_of(self.order()) {
            return Err(CycloError::NotAnExtension {
                from: self.order(),
                to: m,
            });
        }
        self.lift_to(&CycloContext::new(m)?)
    }

    /// Like [`lift`](Self::lift) but reuses an existing target context.
    pub fn lift_to(&self, target: &Arc<CycloContext>) -> Result<CycloNumber, CycloError> {
        let (n, m) = (self.order(), target.order);
        if n == m {
            return Ok(CycloNumber {
                ctx: target.clone(),
                num: self.num.clone(),
                den: self.den.clone(),
            });
        }
        if m % n != 0 {
            return Err(CycloError::NotAnExtension { from: n, to: m });
        }
        let step = (m / n) as usize;
        let mut p = vec![BigInt::zero(); (self.num.len() - 1) * step + 1];
        for (i, c) in self.num.iter().enumerate() {
            p[i * step] = c.clone();
        }
        target.reduce(&mut p);
        Ok(CycloNumber {
            ctx: target.clone(),
            num: p,
            den: self.den.clone(),
        })
    }

    /// Floating-point value at `ζ_N = e^{2πi/N}`. Diagnostics only.
    pub fn approx_complex(&self) -> Complex64 {
        let den = self.den.to_f64().unwrap_or(f64::NAN);
        let n = self.order() as f64;
        self.num
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let angle = 2.0 * std::f64::consts::PI * k as f64 / n;
                Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN) / den, angle)
            })
            .sum()
    }

    pub fn pow(&self, mut e: u32) -> CycloNumber {
        let mut base = self.clone();
        let mut acc = CycloNumber::one(&self.ctx);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_same(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_same(&base);
            }
        }
        acc
    }
}

/// Sums of products in one field with modular reduction and gcd
/// normalization deferred to [`Accumulator::finish`].
pub(crate) struct Accumulator {
    ctx: Arc<CycloContext>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl Accumulator {
    pub(crate) fn new(ctx: &Arc<CycloContext>) -> Self {
        Accumulator {
            ctx: ctx.clone(),
            num: vec![BigInt::zero(); 2 * ctx.phi() - 1],
            den: BigInt::one(),
        }
    }

    /// Rescales the running sum to a denominator divisible by `d` and returns
    /// the factor a term over `d` must be multiplied by.
    fn common_den(&mut self, d: &BigInt) -> Option<BigInt> {
        if d == &self.den {
            return None;
        }
        let g = self.den.gcd(d);
        let grow = d / &g;
        let factor = &self.den / &g;
        if !grow.is_one() {
            for n in &mut self.num {
                if !n.is_zero() {
                    *n *= &grow;
                }
            }
            self.den *= &grow;
        }
        if factor.is_one() {
            None
        } else {
            Some(factor)
        }
    }

    pub(crate) fn add_product(&mut self, a: &CycloNumber, b: &CycloNumber, negate: bool) {
        debug_assert_eq!(a.order(), self.ctx.order);
        debug_assert_eq!(b.order(), self.ctx.order);
        let factor = if a.den.is_one() && b.den.is_one() {
            self.common_den(&BigInt::one())
        } else {
            self.common_den(&(&a.den * &b.den))
        };
        let (short, long) = if a.is_rational() { (a, b) } else { (b, a) };
        if short.is_rational() {
            let mut s = short.num[0].clone();
            if let Some(f) = &factor {
                s *= f;
            }
            if negate {
                s = -s;
            }
            for (j, y) in long.num.iter().enumerate() {
                if !y.is_zero() {
                    self.num[j] += &s * y;
                }
            }
            return;
        }
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let mut x = x.clone();
            if let Some(f) = &factor {
                x *= f;
            }
            if negate {
                x = -x;
            }
            for (j, y) in b.num.iter().enumerate() {
                if !y.is_zero() {
                    self.num[i + j] += &x * y;
                }
            }
        }
    }

    pub(crate) fn finish(mut self) -> CycloNumber {
        self.ctx.reduce(&mut self.num);
        let mut out = CycloNumber {
            ctx: self.ctx,
            num: self.num,
            den: self.den,
        };
        out.normalize();
        out
    }
}

impl PartialEq for CycloNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.order() == other.order() {
            return self.den == other.den && self.num == other.num;
        }
        let l = self.order().lcm(&other.order());
        match (self.lift(l), other.lift(l)) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for CycloNumber {}

impl fmt::Debug for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [Q(z{})]", self, self.order())
    }
}

impl fmt::Display for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.to_rational() {
            return write!(f, "{}", r);
        }
        let mut first = true;
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let r = BigRational::new(c.clone(), self.den.clone());
            let (sign, mag) = if r.is_negative() { ("-", -r) } else { ("+", r) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", sign)?;
            }
            first = false;
            match k {
                0 => write!(f, "{}", mag)?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{}*", mag)?;
                    }
                    if k == 1 {
                        write!(f, "z")?;
                    } else {
                        write!(f, "z^{}", k)?;
                    }
                }
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&CycloNumber> for &CycloNumber {
            type Output = CycloNumber;
            /// Panics when the two fields are not nested; use the `try_` form
            /// to handle that case.
            fn $method(self, rhs: &CycloNumber) -> CycloNumber {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<CycloNumber> for CycloNumber {
            type Output = CycloNumber;
            fn $method(self, rhs: CycloNumber) -> CycloNumber {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &CycloNumber {
    type Output = CycloNumber;
    fn neg(self) -> CycloNumber {
        CycloNumber {
            ctx: self.ctx.clone(),
            num: self.num.iter().map(|x| -x).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for CycloNumber {
    type Output = CycloNumber;
    fn neg(self) -> CycloNumber {
        -&self
    }
}

/// Dense polynomials over `Q`, lowest degree first, used only for inversion.
mod rpoly {
    use num_rational::BigRational;
    use num_traits::Zero;

    fn trim(p: &mut Vec<BigRational>) {
        while p.last().is_some_and(Zero::is_zero) {
            p.pop();
        }
    }

    fn divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
        let mut rem = a.to_vec();
        trim(&mut rem);
        let db = b.len() - 1;
        if rem.len() < b.len() {
            return (vec![], rem);
        }
        let mut quot = vec![BigRational::zero(); rem.len() - db];
        let lead = &b[db];
        for k in (db..rem.len()).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let c = &rem[k] / lead;
            for (i, bi) in b.iter().enumerate() {
                if !bi.is_zero() {
                    let t = &c * bi;
                    rem[k - db + i] -= t;
                }
            }
            quot[k - db] = c;
        }
        rem.truncate(db);
        trim(&mut rem);
        (quot, rem)
    }

    fn sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let n = a.len().max(b.len());
        let mut out = vec![BigRational::zero(); n];
        for (i, x) in a.iter().enumerate() {
            out[i] += x;
        }
        for (i, x) in b.iter().enumerate() {
            out[i] -= x;
        }
        trim(&mut out);
        out
    }

    fn mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        trim(&mut out);
        out
    }

    /// Returns `(g, s)` with `s·b ≡ g (mod a)` and `g = gcd(a, b)`.
    pub(super) fn ext_gcd(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
        let mut r0 = a.to_vec();
        let mut r1 = b.to_vec();
        trim(&mut r0);
        trim(&mut r1);
        let mut s0: Vec<BigRational> = vec![];
        let mut s1: Vec<BigRational> = vec![BigRational::from_integer(1.into())];
        while !r1.is_empty() {
            let (q, r) = divmod(&r0, &r1);
            let s2 = sub(&s0, &mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        (r0, s0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(n: u32) -> Arc<CycloContext> {
        CycloContext::new(n).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    /// Naive rational polynomial division, independent of the Möbius route.
    fn naive_divide(num: &[i64], den: &[i64]) -> Vec<i64> {
        let mut rem: Vec<i64> = num.to_vec();
        let db = den.len() - 1;
        assert_eq!(den[db], 1);
        let mut quot = vec![0; num.len() - db];
        for k in (db..num.len()).rev() {
            let c = rem[k];
            quot[k - db] = c;
            for (i, &b) in den.iter().enumerate() {
                rem[k - db + i] -= c * b;
            }
        }
        assert!(rem.iter().all(|&c| c == 0), "division not exact");
        quot
    }

    fn naive_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }

    /// `Φ_n = (x^n − 1) / ∏_{d | n, d < n} Φ_d`, recursively.
    fn cyclo_by_division(n: u32) -> Vec<i64> {
        let mut xn1 = vec![0i64; n as usize + 1];
        xn1[0] = -1;
        xn1[n as usize] = 1;
        let mut denom = vec![1i64];
        for d in 1..n {
            if n.is_multiple_of(d) {
                denom = naive_mul(&denom, &cyclo_by_division(d));
            }
        }
        naive_divide(&xn1, &denom)
    }

    #[test]
    fn phi72_matches_division_oracle() {
        let oracle = cyclo_by_division(72);
        let mut expected = vec![0i64; 25];
        expected[0] = 1;
        expected[12] = -1;
        expected[24] = 1;
        assert_eq!(oracle, expected);
        assert_eq!(cyclotomic_polynomial(72), expected);
        assert_eq!(ctx(72).phi(), 24);
    }

    #[test]
    fn cyclotomic_polynomials_agree_with_division_oracle() {
        for n in [1, 2, 3, 4, 5, 6, 8, 12, 15, 20, 28, 30, 36, 60, 105] {
            assert_eq!(cyclotomic_polynomial(n), cyclo_by_division(n), "n = {n}");
        }
    }

    #[test]
    fn roots_of_unity_examples() {
        let c = ctx(72);
        assert!(CycloNumber::root_of_unity(0, &c).is_one());
        let s = CycloNumber::root_of_unity(12, &c) + CycloNumber::root_of_unity(60, &c);
        assert!(s.is_one());
        let sqrt3 = CycloNumber::root_of_unity(6, &c) + CycloNumber::root_of_unity(66, &c);
        assert_eq!(&sqrt3 * &sqrt3, CycloNumber::from_i64(&c, 3));
    }

    #[test]
    fn defining_relation_by_repeated_multiplication() {
        let c = ctx(72);
        let z = CycloNumber::root_of_unity(1, &c);
        let mut acc = CycloNumber::one(&c);
        for _ in 0..72 {
            acc = &acc * &z;
        }
        assert!(acc.is_one());
        // Φ_72(ζ) = ζ^24 − ζ^12 + 1 = 0
        let val = z.pow(24) - z.pow(12) + CycloNumber::one(&c);
        assert!(val.is_zero());
    }

    #[test]
    fn identities_and_inverses() {
        let c = ctx(72);
        let a = CycloNumber::root_of_unity(5, &c).scale(&q(3, 7)) + CycloNumber::from_i64(&c, 2);
        assert_eq!(&a + &CycloNumber::zero(&c), a);
        assert_eq!(&a * &CycloNumber::one(&c), a);
        assert!(CycloNumber::one(&c).inverse().unwrap().is_one());
        for k in [1, 5, 17, 40] {
            let z = CycloNumber::root_of_unity(k, &c);
            assert_eq!(z.inverse().unwrap(), CycloNumber::root_of_unity(72 - k, &c));
        }
        assert_eq!(
            CycloNumber::from_i64(&c, 2).inverse().unwrap(),
            CycloNumber::from_rational(&c, &q(1, 2))
        );
        assert!((&a * &a.inverse().unwrap()).is_one());
        assert_eq!(
            CycloNumber::zero(&c).inverse().unwrap_err(),
            CycloError::DivisionByZero
        );
    }

    #[test]
    fn lift_examples() {
        let z6 = CycloNumber::root_of_unity(1, &ctx(6));
        assert_eq!(z6.lift(72).unwrap(), CycloNumber::root_of_unity(12, &ctx(72)));
        assert!(CycloNumber::one(&ctx(6)).lift(72).unwrap().is_one());
        let c12 = ctx(12);
        let sqrt3 = CycloNumber::root_of_unity(1, &c12) + CycloNumber::root_of_unity(11, &c12);
        let l = sqrt3.lift(72).unwrap();
        assert_eq!(&l * &l, CycloNumber::from_i64(&ctx(72), 3));
        assert_eq!(
            z6.lift(20).unwrap_err(),
            CycloError::NotAnExtension { from: 6, to: 20 }
        );
    }

    #[test]
    fn mixed_orders() {
        let a = CycloNumber::root_of_unity(1, &ctx(4));
        let b = CycloNumber::root_of_unity(1, &ctx(12));
        let s = a.try_add(&b).unwrap();
        assert_eq!(s.order(), 12);
        let c = CycloNumber::root_of_unity(1, &ctx(5));
        assert_eq!(
            a.try_mul(&c).unwrap_err(),
            CycloError::ContextMismatch { left: 4, right: 5 }
        );
        // equality across nested fields
        assert_eq!(CycloNumber::root_of_unity(3, &ctx(12)), a);
    }

    #[test]
    fn approx_complex_examples() {
        let c = ctx(72);
        let one = CycloNumber::one(&c).approx_complex();
        assert!((one.re - 1.0).abs() < 1e-12 && one.im.abs() < 1e-12);
        let i = CycloNumber::root_of_unity(18, &c).approx_complex();
        assert!(i.re.abs() < 1e-12 && (i.im - 1.0).abs() < 1e-12);
        let sqrt3 = (CycloNumber::root_of_unity(6, &c) + CycloNumber::root_of_unity(66, &c))
            .approx_complex();
        assert!((sqrt3.re - 3f64.sqrt()).abs() < 1e-12 && sqrt3.im.abs() < 1e-12);
    }

    #[test]
    fn from_coeffs_round_trip() {
        let c = ctx(12);
        let coeffs = vec![q(1, 2), q(-3, 4), q(0, 1), q(5, 6)];
        let x = CycloNumber::from_coeffs(&c, &coeffs).unwrap();
        assert_eq!(x.coeffs(), coeffs);
        assert!(CycloNumber::from_coeffs(&c, &coeffs[..2]).is_err());
    }
}
