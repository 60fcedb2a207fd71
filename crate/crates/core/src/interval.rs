//! Dyadic interval arithmetic with outward rounding.
//!
//! A [`Dyadic`] is `m * 2^e` with `m` an arbitrary integer. Every interval
//! operation rounds its lower end down and its upper end up to `prec`
//! significant bits, so a real number that starts inside an interval stays
//! inside through any chain of operations. Transcendental functions use
//! series with explicit remainder bounds.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub const DEFAULT_PREC: u64 = 128;
pub const MIN_PREC: u64 = 64;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    m: BigInt,
    e: i64,
}

fn floor_div(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -(-a).div_floor(b)
}

impl Dyadic {
    fn new(m: BigInt, e: i64) -> Dyadic {
        if m.is_zero() {
            return Dyadic { m, e: 0 };
        }
        let tz = m.trailing_zeros().unwrap_or(0);
        Dyadic {
            m: m >> tz,
            e: e + tz as i64,
        }
    }

    pub fn zero() -> Dyadic {
        Dyadic::new(BigInt::zero(), 0)
    }

    pub fn from_int(v: i64) -> Dyadic {
        Dyadic::new(BigInt::from(v), 0)
    }

    pub fn from_bigint(v: BigInt) -> Dyadic {
        Dyadic::new(v, 0)
    }

    pub fn pow2(k: i64) -> Dyadic {
        Dyadic::new(BigInt::one(), k)
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero()
    }

    pub fn signum(&self) -> i32 {
        match self.m.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    /// `Some(k)` when the value is exactly `2^k`.
    pub fn as_pow2(&self) -> Option<i64> {
        self.m.is_one().then_some(self.e)
    }

    /// `floor(log2 |x|)` for nonzero `x`.
    pub fn magnitude(&self) -> i64 {
        self.m.bits() as i64 - 1 + self.e
    }

    fn round(self, prec: u64, up: bool) -> Dyadic {
        let bits = self.m.bits();
        if bits <= prec {
            return self;
        }
        let s = bits - prec;
        let d = BigInt::one() << s;
        let m = if up {
            ceil_div(&self.m, &d)
        } else {
            floor_div(&self.m, &d)
        };
        Dyadic::new(m, self.e + s as i64)
    }

    fn add_exact(&self, o: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let e = self.e.min(o.e);
        let a = &self.m << (self.e - e) as u64;
        let b = &o.m << (o.e - e) as u64;
        Dyadic::new(a + b, e)
    }

    fn mul_exact(&self, o: &Dyadic) -> Dyadic {
        Dyadic::new(&self.m * &o.m, self.e + o.e)
    }

    fn neg(&self) -> Dyadic {
        Dyadic {
            m: -&self.m,
            e: self.e,
        }
    }

    fn scale(&self, k: i64) -> Dyadic {
        if self.is_zero() {
            return self.clone();
        }
        Dyadic {
            m: self.m.clone(),
            e: self.e + k,
        }
    }

    fn div_round(&self, o: &Dyadic, prec: u64, up: bool) -> Dyadic {
        assert!(!o.is_zero(), "division by zero");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let s = (prec as i64 + 2 + o.m.bits() as i64 - self.m.bits() as i64).max(0) as u64;
        let num = &self.m << s;
        let q = if up {
            ceil_div(&num, &o.m)
        } else {
            floor_div(&num, &o.m)
        };
        Dyadic::new(q, self.e - o.e - s as i64).round(prec, up)
    }

    fn sqrt_round(&self, prec: u64, up: bool) -> Dyadic {
        assert!(self.signum() >= 0, "square root of a negative number");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let mut s = (2 * prec + 2).saturating_sub(self.m.bits());
        if (self.e - s as i64).rem_euclid(2) != 0 {
            s += 1;
        }
        let m = &self.m << s;
        let mut r = m.sqrt();
        if up && &r * &r != m {
            r += 1;
        }
        Dyadic::new(r, (self.e - s as i64) / 2).round(prec, up)
    }

    /// `floor(x)` as an integer.
    pub fn floor(&self) -> BigInt {
        if self.e >= 0 {
            &self.m << self.e as u64
        } else {
            floor_div(&self.m, &(BigInt::one() << (-self.e) as u64))
        }
    }

    /// Nearest `f64` (saturating to infinity or zero).
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.m.bits();
        let shift = bits.saturating_sub(60);
        let top = (&self.m >> shift).to_f64().unwrap();
        let exp = self.e + shift as i64;
        if exp > 2100 {
            return top.signum() * f64::INFINITY;
        }
        if exp < -2200 {
            return top.signum() * 0.0;
        }
        top * (exp as f64).exp2()
    }

    /// `log2 |x|` as an `f64`, usable far outside the `f64` range.
    pub fn log2_abs(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        let bits = self.m.bits();
        let shift = bits.saturating_sub(60);
        let top = (&self.m >> shift).abs().to_f64().unwrap();
        top.log2() + (self.e + shift as i64) as f64
    }

    /// Parses a decimal such as `1024`, `-2.5` or `1e6`, rounding down or up.
    fn parse_decimal(s: &str, prec: u64, up: bool) -> Option<Dyadic> {
        let s = s.trim();
        let (mant, exp) = match s.find(['e', 'E']) {
            Some(i) => (&s[..i], s[i + 1..].parse::<i64>().ok()?),
            None => (s, 0),
        };
        let (neg, mant) = match mant.strip_prefix('-') {
            Some(r) => (true, r),
            None => (false, mant.strip_prefix('+').unwrap_or(mant)),
        };
        let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
        if int.is_empty() && frac.is_empty() {
            return None;
        }
        if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
            return None;
        }
        let digits = format!("{int}{frac}");
        let mut n: BigInt = if digits.is_empty() {
            BigInt::zero()
        } else {
            digits.parse().ok()?
        };
        if neg {
            n = -n;
        }
        let ten_exp = exp - frac.len() as i64;
        if ten_exp.abs() > 100_000 {
            return None;
        }
        if ten_exp >= 0 {
            let v = n * num_traits::pow(BigInt::from(10), ten_exp as usize);
            Some(Dyadic::new(v, 0).round(prec, up))
        } else {
            let d = num_traits::pow(BigInt::from(10), (-ten_exp) as usize);
            Some(Dyadic::new(n, 0).div_round(&Dyadic::new(d, 0), prec, up))
        }
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        self.add_exact(&other.neg()).signum().cmp(&0)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_f64())
    }
}

/// A closed interval `[lo, hi]` of dyadic numbers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Dyadic,
    pub hi: Dyadic,
    pub prec: u64,
}

impl Interval {
    pub fn point(d: Dyadic, prec: u64) -> Interval {
        Interval {
            lo: d.clone().round(prec, false),
            hi: d.round(prec, true),
            prec,
        }
    }

    pub fn int(v: i64, prec: u64) -> Interval {
        Interval::point(Dyadic::from_int(v), prec)
    }

    pub fn zero(prec: u64) -> Interval {
        Interval::int(0, prec)
    }

    pub fn one(prec: u64) -> Interval {
        Interval::int(1, prec)
    }

    pub fn pow2(k: i64, prec: u64) -> Interval {
        Interval::point(Dyadic::pow2(k), prec)
    }

    /// Encloses the decimal `s` (e.g. `"1600"`, `"0.5"`, `"1e6"`).
    pub fn parse(s: &str, prec: u64) -> Result<Interval> {
        check_prec(prec)?;
        let lo = Dyadic::parse_decimal(s, prec, false);
        let hi = Dyadic::parse_decimal(s, prec, true);
        match (lo, hi) {
            (Some(lo), Some(hi)) => Ok(Interval { lo, hi, prec }),
            _ => Err(Error::invalid(format!("not a decimal number: {s:?}"))),
        }
    }

    /// Interval around an `f64` (exact: every finite `f64` is dyadic).
    pub fn from_f64(x: f64, prec: u64) -> Interval {
        assert!(x.is_finite());
        if x == 0.0 {
            return Interval::zero(prec);
        }
        let bits = x.to_bits();
        let exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = (bits & ((1u64 << 52) - 1)) as i64;
        let (m, e) = if exp == 0 {
            (frac, -1074)
        } else {
            (frac | 1 << 52, exp - 1075)
        };
        let m = if x < 0.0 { -m } else { m };
        Interval::point(Dyadic::new(BigInt::from(m), e), prec)
    }

    /// Rounds the ends outward to `prec` bits.
    pub fn with_prec(&self, prec: u64) -> Interval {
        Interval {
            lo: self.lo.clone().round(prec, false),
            hi: self.hi.clone().round(prec, true),
            prec,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn is_positive(&self) -> bool {
        self.lo.signum() > 0
    }

    pub fn is_nonnegative(&self) -> bool {
        self.lo.signum() >= 0
    }

    pub fn is_negative(&self) -> bool {
        self.hi.signum() < 0
    }

    pub fn contains_zero(&self) -> bool {
        self.lo.signum() <= 0 && self.hi.signum() >= 0
    }

    pub fn mid_f64(&self) -> f64 {
        let a = self.lo.to_f64();
        let b = self.hi.to_f64();
        a / 2.0 + b / 2.0
    }

    pub fn width_f64(&self) -> f64 {
        self.hi.add_exact(&self.lo.neg()).to_f64()
    }

    fn p(&self, o: &Interval) -> u64 {
        self.prec.max(o.prec)
    }

    pub fn add(&self, o: &Interval) -> Interval {
        let prec = self.p(o);
        Interval {
            lo: self.lo.add_exact(&o.lo).round(prec, false),
            hi: self.hi.add_exact(&o.hi).round(prec, true),
            prec,
        }
    }

    pub fn neg(&self) -> Interval {
        Interval {
            lo: self.hi.neg(),
            hi: self.lo.neg(),
            prec: self.prec,
        }
    }

    pub fn sub(&self, o: &Interval) -> Interval {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        let prec = self.p(o);
        let c = [
            self.lo.mul_exact(&o.lo),
            self.lo.mul_exact(&o.hi),
            self.hi.mul_exact(&o.lo),
            self.hi.mul_exact(&o.hi),
        ];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Interval {
            lo: lo.round(prec, false),
            hi: hi.round(prec, true),
            prec,
        }
    }

    /// Panics if the divisor contains zero.
    pub fn div(&self, o: &Interval) -> Interval {
        assert!(
            !o.contains_zero(),
            "interval division by an interval containing 0"
        );
        let prec = self.p(o);
        let c = [
            (&self.lo, &o.lo),
            (&self.lo, &o.hi),
            (&self.hi, &o.lo),
            (&self.hi, &o.hi),
        ];
        let lo = c
            .iter()
            .map(|(a, b)| a.div_round(b, prec, false))
            .min()
            .unwrap();
        let hi = c
            .iter()
            .map(|(a, b)| a.div_round(b, prec, true))
            .max()
            .unwrap();
        Interval { lo, hi, prec }
    }

    pub fn div_int(&self, k: i64) -> Interval {
        self.div(&Interval::int(k, self.prec))
    }

    pub fn mul_int(&self, k: i64) -> Interval {
        self.mul(&Interval::int(k, self.prec))
    }

    /// Multiplies by `2^k` exactly.
    pub fn scale(&self, k: i64) -> Interval {
        Interval {
            lo: self.lo.scale(k),
            hi: self.hi.scale(k),
            prec: self.prec,
        }
    }

    pub fn sqrt(&self) -> Interval {
        assert!(
            self.is_nonnegative(),
            "square root of a possibly negative interval"
        );
        Interval {
            lo: self.lo.sqrt_round(self.prec, false),
            hi: self.hi.sqrt_round(self.prec, true),
            prec: self.prec,
        }
    }

    /// Largest absolute value in the interval.
    fn mag(&self) -> Dyadic {
        self.lo.neg().max(self.hi.clone())
    }

    fn widen(&self, t: &Dyadic) -> Interval {
        Interval {
            lo: self.lo.add_exact(&t.neg()).round(self.prec, false),
            hi: self.hi.add_exact(t).round(self.prec, true),
            prec: self.prec,
        }
    }

    fn hull(a: Interval, b: Interval) -> Interval {
        Interval {
            lo: a.lo.min(b.lo),
            hi: a.hi.max(b.hi),
            prec: a.prec.max(b.prec),
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact() {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "[{}, {}]", self.lo, self.hi)
        }
    }
}

pub fn check_prec(prec: u64) -> Result<()> {
    if prec < MIN_PREC {
        return Err(Error::invalid(format!(
            "precision must be at least {MIN_PREC} bits"
        )));
    }
    Ok(())
}

/// `atanh(z)` for `|z| <= 1/2`, with the series tail bounded by
/// `|z|^(2N+3) / (1 - z^2) <= 2 |z|^(2N+3)`.
fn atanh_small(z: &Interval) -> Interval {
    if z.is_exact() && z.lo.is_zero() {
        return z.clone();
    }
    let prec = z.prec;
    let z2 = z.mul(z);
    let z2max = z2.mag();
    let mut term = z.clone();
    let mut sum = z.clone();
    let mut i = 1i64;
    loop {
        term = term.mul(&z2);
        sum = sum.add(&term.div_int(2 * i + 1));
        i += 1;
        let tmax = term.mag();
        if tmax.is_zero() {
            break;
        }
        let floor = sum.lo.magnitude().min(sum.hi.magnitude());
        if tmax.magnitude() < floor - prec as i64 - 8 || i > 4 * prec as i64 {
            break;
        }
    }
    let tail = term.mag().mul_exact(&z2max).scale(1).round(prec, true);
    sum.widen(&tail)
}

/// `ln 2 = 2 atanh(1/3)`.
pub fn ln2(prec: u64) -> Interval {
    let third = Interval::one(prec).div_int(3);
    atanh_small(&third).scale(1)
}

fn ln_point(x: &Dyadic, prec: u64) -> Interval {
    assert!(x.signum() > 0, "logarithm of a nonpositive number");
    if let Some(k) = x.as_pow2() {
        return ln2(prec).mul_int(k);
    }
    let mut k = x.magnitude();
    let mut y = x.scale(-k);
    // y in [1, 2); move to [0.75, 1.5]
    if y.scale(1) > Dyadic::from_int(3) {
        k += 1;
        y = y.scale(-1);
    }
    let y = Interval::point(y, prec + 16);
    let one = Interval::one(prec + 16);
    let z = y.sub(&one).div(&y.add(&one));
    let r = atanh_small(&z).scale(1).add(&ln2(prec + 16).mul_int(k));
    r.with_prec(prec)
}

pub fn ln(x: &Interval) -> Interval {
    assert!(
        x.is_positive(),
        "logarithm of a possibly nonpositive interval"
    );
    Interval {
        lo: ln_point(&x.lo, x.prec).lo,
        hi: ln_point(&x.hi, x.prec).hi,
        prec: x.prec,
    }
}

/// Binary logarithm; exact on powers of two.
pub fn log2(x: &Interval) -> Interval {
    if x.is_exact() {
        if let Some(k) = x.lo.as_pow2() {
            return Interval::int(k, x.prec);
        }
    }
    ln(x).div(&ln2(x.prec + 16))
}

fn log1p_point(d: &Dyadic, prec: u64) -> Interval {
    let p = prec + 16;
    let x = Interval::point(d.clone(), p);
    let z = x.div(&x.add(&Interval::int(2, p)));
    let r = if z.mag() <= Dyadic::pow2(-1) {
        atanh_small(&z).scale(1)
    } else {
        ln(&x.add(&Interval::one(p)))
    };
    r.with_prec(prec)
}

/// `ln(1 + x)` for `x > -1`, accurate for tiny `x`.
pub fn log1p(x: &Interval) -> Interval {
    assert!(x.lo > Dyadic::from_int(-1), "log1p needs x > -1");
    Interval {
        lo: log1p_point(&x.lo, x.prec).lo,
        hi: log1p_point(&x.hi, x.prec).hi,
        prec: x.prec,
    }
}

/// Taylor series of `e^s - 1 - ...` style sums: returns `Σ_{i>=from} s^i/i!`
/// with its remainder, for `|s| <= 1/2`.
fn exp_series(s: &Interval, from: i64) -> Interval {
    let prec = s.prec;
    let smax = s.mag();
    let mut term = Interval::one(prec);
    for i in 1..=from {
        term = term.mul(s).div_int(i);
    }
    let mut sum = term.clone();
    let mut i = from;
    loop {
        if term.mag().is_zero() {
            return sum;
        }
        i += 1;
        term = term.mul(s).div_int(i);
        sum = sum.add(&term);
        let tmax = term.mag();
        if tmax.is_zero() {
            return sum;
        }
        let floor = sum.lo.magnitude().min(sum.hi.magnitude());
        if tmax.magnitude() < floor - prec as i64 - 8 || i > 8 * prec as i64 {
            break;
        }
    }
    let tail = term.mag().mul_exact(&smax).scale(1).round(prec, true);
    sum.widen(&tail)
}

fn exp_point(d: &Dyadic, prec: u64) -> Interval {
    if d.is_zero() {
        return Interval::one(prec);
    }
    let p = prec + 32;
    let l2 = ln2(p);
    let k = (d.to_f64() / std::f64::consts::LN_2).round();
    assert!(k.abs() < 1e15, "exp argument out of range");
    let k = k as i64;
    let r = Interval::point(d.clone(), p).sub(&l2.mul_int(k));
    let mut v = exp_series(&r.scale(-8), 0);
    for _ in 0..8 {
        v = v.mul(&v);
    }
    v.scale(k).with_prec(prec)
}

pub fn exp(x: &Interval) -> Interval {
    Interval {
        lo: exp_point(&x.lo, x.prec).lo,
        hi: exp_point(&x.hi, x.prec).hi,
        prec: x.prec,
    }
}

fn exp2_point(d: &Dyadic, prec: u64) -> Interval {
    let k = d.floor();
    let r = d.add_exact(&Dyadic::from_bigint(-k.clone()));
    let k = k.to_i64().expect("exp2 exponent fits in i64");
    if r.is_zero() {
        return Interval::pow2(k, prec);
    }
    let p = prec + 16;
    let arg = Interval::point(r, p).mul(&ln2(p));
    exp(&arg).scale(k).with_prec(prec)
}

/// `2^x`; exact at integers.
pub fn exp2(x: &Interval) -> Interval {
    Interval {
        lo: exp2_point(&x.lo, x.prec).lo,
        hi: exp2_point(&x.hi, x.prec).hi,
        prec: x.prec,
    }
}

fn expm1_point(d: &Dyadic, prec: u64) -> Interval {
    let p = prec + 16;
    let x = Interval::point(d.clone(), p);
    let r = if x.mag() <= Dyadic::pow2(-1) {
        exp_series(&x, 1)
    } else {
        exp_point(d, p).sub(&Interval::one(p))
    };
    r.with_prec(prec)
}

/// `e^x - 1`, accurate for tiny `x`.
pub fn expm1(x: &Interval) -> Interval {
    Interval {
        lo: expm1_point(&x.lo, x.prec).lo,
        hi: expm1_point(&x.hi, x.prec).hi,
        prec: x.prec,
    }
}

/// Smallest interval containing both.
pub fn hull(a: Interval, b: Interval) -> Interval {
    Interval::hull(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u64 = 128;

    fn encloses(i: &Interval, x: f64, tol: f64) {
        assert!(
            i.lo.to_f64() <= x + tol && i.hi.to_f64() >= x - tol,
            "{i} vs {x}"
        );
        assert!(
            i.width_f64() < 1e-30 * x.abs().max(1e-300) + 1e-30,
            "too wide: {i}"
        );
    }

    #[test]
    fn exact_basics() {
        let a = Interval::int(1024, P);
        assert_eq!(log2(&a), Interval::int(10, P));
        assert_eq!(a.sqrt(), Interval::int(32, P));
        assert_eq!(exp2(&Interval::int(-12, P)), Interval::pow2(-12, P));
        assert!(Interval::int(2, P).sqrt().width_f64() > 0.0);
        assert_eq!(Interval::parse("1e3", P).unwrap(), Interval::int(1000, P));
        assert!(Interval::parse("0.1", P).unwrap().lo < Interval::parse("0.1", P).unwrap().hi);
        assert!(Interval::parse("abc", P).is_err());
        assert!(Interval::parse("1", 32).is_err());
    }

    #[test]
    fn functions_agree_with_f64() {
        encloses(&ln2(P), std::f64::consts::LN_2, 1e-16);
        for &x in &[0.3, 0.75, 1.0, 1.7, 2.5, 900.0, 1e6] {
            let i = Interval::from_f64(x, P);
            encloses(&ln(&i), x.ln(), 1e-15 * x.ln().abs().max(1.0));
            encloses(&log2(&i), x.log2(), 1e-15 * x.log2().abs().max(1.0));
            encloses(&i.sqrt(), x.sqrt(), 1e-15 * x.sqrt());
        }
        for &x in &[-3.0, -0.4, 1e-9, 0.2, 1.0, 7.5] {
            let i = Interval::from_f64(x, P);
            encloses(&exp(&i), x.exp(), 1e-15 * x.exp());
            encloses(&expm1(&i), x.exp_m1(), 1e-15 * x.exp_m1().abs());
            encloses(&exp2(&i), x.exp2(), 1e-15 * x.exp2());
        }
        for &x in &[-0.9, -1e-12, 1e-5, 0.5, 3.0] {
            let i = Interval::from_f64(x, P);
            encloses(&log1p(&i), x.ln_1p(), 1e-15 * x.ln_1p().abs());
        }
    }

    #[test]
    fn tiny_values_keep_relative_precision() {
        let eps = Interval::pow2(-1_000_000, P);
        let l = log1p(&eps.neg());
        // ln(1 - eps) < -eps, enclosed to about 128 bits relative
        assert!(l.lo < eps.neg().lo);
        let width = l.hi.add_exact(&l.lo.neg());
        assert!(width.log2_abs() < -1_000_000.0 - 100.0);
        assert!((l.lo.log2_abs() + 1_000_000.0).abs() < 1e-9);
        let e = expm1(&eps);
        assert!(e.hi > eps.lo);
        assert!(e.hi.add_exact(&e.lo.neg()).log2_abs() < -1_000_000.0 - 100.0);
        assert!((e.lo.log2_abs() + 1_000_000.0).abs() < 1e-9);
    }

    #[test]
    fn intervals_are_outward() {
        let third = Interval::one(P).div_int(3);
        let back = third.mul_int(3);
        assert!(back.lo <= Dyadic::from_int(1) && back.hi >= Dyadic::from_int(1));
        let m = Interval::int(-2, P).mul(&Interval {
            lo: Dyadic::from_int(-1),
            hi: Dyadic::from_int(3),
            prec: P,
        });
        assert_eq!((m.lo, m.hi), (Dyadic::from_int(-6), Dyadic::from_int(2)));
    }
}
