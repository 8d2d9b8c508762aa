//! Exact arithmetic: arbitrary-precision binomials, rational parsing and
//! rigorous dyadic enclosures for the few transcendental quantities the
//! parameter formulas need (natural logarithms, exponentials, e).
//!
//! Enclosures are produced with directed rounding: every lower endpoint is
//! rounded toward minus infinity and every upper endpoint toward plus
//! infinity, so the true value always lies inside.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Exact binomial coefficient; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= BigUint::from(n - i);
        acc /= BigUint::from(i + 1);
    }
    acc
}

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(v: impl Into<BigInt>) -> Rational {
    Rational::from_integer(v.into())
}

pub fn uint_to_rational(v: &BigUint) -> Rational {
    Rational::from_integer(BigInt::from_biguint(Sign::Plus, v.clone()))
}

/// Parses `"p/q"`, an integer, or a finite decimal such as `"0.05"` into an
/// exact rational. Decimals are read exactly (`0.1` is `1/10`).
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::input(format!("cannot parse rational {text:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(Error::input(format!("zero denominator in {text:?}")));
        }
        return Ok(Rational::new(p, q));
    }
    let (negative, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let num: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().map_err(|_| bad())? };
    let den = num_traits::pow(BigInt::from(10), frac_part.len());
    let value = Rational::new(num, den);
    Ok(if negative { -value } else { value })
}

/// `base^exp` for a rational base.
pub fn rational_pow(base: &Rational, exp: u64) -> Rational {
    let e = usize::try_from(exp).expect("exponent fits in usize");
    Rational::new(num_traits::pow(base.numer().clone(), e), num_traits::pow(base.denom().clone(), e))
}

pub fn floor_to_uint(r: &Rational) -> Option<BigUint> {
    r.floor().to_integer().to_biguint()
}

pub fn ceil_to_uint(r: &Rational) -> Option<BigUint> {
    r.ceil().to_integer().to_biguint()
}

/// Smallest integer `m >= 0` with `m^2 >= a`, for `a >= 0`.
pub fn ceil_sqrt(a: &Rational) -> BigUint {
    let c = ceil_to_uint(a).unwrap_or_default();
    let m = c.sqrt();
    if &m * &m < c {
        m + 1u32
    } else {
        m
    }
}

/// `⌈x^(1/q)⌉` for a nonnegative integer `x`.
pub fn ceil_root(x: &BigUint, q: u32) -> BigUint {
    let r = x.nth_root(q);
    if num_traits::pow(r.clone(), q as usize) == *x {
        r
    } else {
        r + 1u32
    }
}

/// Renders a float with 12 significant digits (display-only values in reports).
pub fn format_sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        let s = format!("{x:.decimals$}");
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        format!("{x:.11e}")
    }
}

/// Nearest `f64`, display only.
pub fn rational_to_f64(r: &Rational) -> f64 {
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() && d != 0.0 => n / d,
        _ => {
            // Scale down both parts to keep the quotient representable.
            let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(900);
            let n = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
            let d = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
            n / d
        }
    }
}

/// Serde adapter writing big integers as decimal strings.
pub mod biguint_str {
    use num_bigint::BigUint;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(D::Error::custom)
    }
}

/// Serde adapter writing rationals as `"p/q"` strings.
pub mod rational_str {
    use super::{parse_rational, Rational};
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(D::Error::custom)
    }
}

// ---------------------------------------------------------------------------
// Dyadic fixed-point helpers
// ---------------------------------------------------------------------------

fn floor_scaled(r: &Rational, prec: u32) -> BigInt {
    (r.numer() << prec as usize).div_floor(r.denom())
}

fn ceil_scaled(r: &Rational, prec: u32) -> BigInt {
    -((-(r.numer() << prec as usize)).div_floor(r.denom()))
}

fn div_ceil_int(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

fn from_scaled(v: BigInt, prec: u32) -> Rational {
    Rational::new(v, BigInt::one() << prec as usize)
}

/// Bounds on `atanh(z) = Σ z^(2i+1)/(2i+1)` scaled by `2^prec`, for `0 <= z <= 1/2`.
fn atanh_scaled(z: &Rational, prec: u32) -> (BigInt, BigInt) {
    debug_assert!(!z.is_negative() && *z <= rational(1, 2));
    let one = BigInt::one() << prec as usize;
    let z_lo = floor_scaled(z, prec);
    let z_hi = ceil_scaled(z, prec);
    let z2_lo = (&z_lo * &z_lo) >> prec as usize;
    let z2_hi = div_ceil_int(&(&z_hi * &z_hi), &one);

    let mut lo = BigInt::zero();
    let mut p = z_lo;
    let mut i = 0u64;
    while p.is_positive() {
        lo += &p / BigInt::from(2 * i + 1);
        p = (&p * &z2_lo) >> prec as usize;
        i += 1;
    }

    let mut hi = BigInt::zero();
    let mut p = z_hi;
    let mut i = 0u64;
    // Stop once a term drops to one unit; the geometric tail bound covers the rest.
    while p > BigInt::one() && i < 4 * prec as u64 + 8 {
        hi += div_ceil_int(&p, &BigInt::from(2 * i + 1));
        p = div_ceil_int(&(&p * &z2_hi), &one);
        i += 1;
    }
    // Σ_{j>=i} p_j/(2j+1) <= p_i / (1 - z^2)
    hi += div_ceil_int(&(&p * &one), &(&one - &z2_hi));
    (lo, hi)
}

fn ln2_scaled(prec: u32) -> (BigInt, BigInt) {
    let (lo, hi) = atanh_scaled(&rational(1, 3), prec);
    (lo * 2, hi * 2)
}

/// Bounds on `exp(r)` scaled by `2^prec`, for `0 <= r <= 1/2`.
fn exp_small_scaled(r: &Rational, prec: u32) -> (BigInt, BigInt) {
    let one = BigInt::one() << prec as usize;
    let r_lo = floor_scaled(r, prec);
    let r_hi = ceil_scaled(r, prec);

    let mut lo = BigInt::zero();
    let mut term = one.clone();
    let mut i = 1u64;
    while term.is_positive() {
        lo += &term;
        term = ((&term * &r_lo) >> prec as usize) / BigInt::from(i);
        i += 1;
    }

    let mut hi = BigInt::zero();
    let mut term = one.clone();
    let mut i = 1u64;
    while term > BigInt::one() && i < 4 * prec as u64 + 8 {
        hi += &term;
        term = div_ceil_int(&div_ceil_int(&(&term * &r_hi), &one), &BigInt::from(i));
        i += 1;
    }
    // Remaining terms form a series dominated by a geometric one with ratio <= 1/2.
    hi += term * 2;
    (lo, hi)
}

// ---------------------------------------------------------------------------
// Enclosure
// ---------------------------------------------------------------------------

/// A closed interval `[lo, hi]` of rationals known to contain a real value.
#[derive(Clone, PartialEq, Eq)]
pub struct Enclosure {
    pub lo: Rational,
    pub hi: Rational,
}

impl fmt::Debug for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", format_sig12(rational_to_f64(&self.lo)), format_sig12(rational_to_f64(&self.hi)))
    }
}

impl Enclosure {
    pub fn point(value: Rational) -> Self {
        Enclosure { lo: value.clone(), hi: value }
    }

    pub fn new(lo: Rational, hi: Rational) -> Self {
        debug_assert!(lo <= hi);
        Enclosure { lo, hi }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn add(&self, other: &Enclosure) -> Enclosure {
        Enclosure { lo: &self.lo + &other.lo, hi: &self.hi + &other.hi }
    }

    pub fn sub(&self, other: &Enclosure) -> Enclosure {
        Enclosure { lo: &self.lo - &other.hi, hi: &self.hi - &other.lo }
    }

    pub fn mul(&self, other: &Enclosure) -> Enclosure {
        let products = [&self.lo * &other.lo, &self.lo * &other.hi, &self.hi * &other.lo, &self.hi * &other.hi];
        let lo = products.iter().min().cloned().expect("nonempty");
        let hi = products.iter().max().cloned().expect("nonempty");
        Enclosure { lo, hi }
    }

    pub fn scale(&self, factor: &Rational) -> Enclosure {
        self.mul(&Enclosure::point(factor.clone()))
    }

    /// Reciprocal of an interval that excludes zero.
    pub fn recip(&self) -> Enclosure {
        debug_assert!(self.lo.is_positive() || self.hi.is_negative());
        Enclosure { lo: self.hi.recip(), hi: self.lo.recip() }
    }

    /// Integer power of a nonnegative interval.
    pub fn pow(&self, exp: u64) -> Enclosure {
        debug_assert!(!self.lo.is_negative());
        Enclosure { lo: rational_pow(&self.lo, exp), hi: rational_pow(&self.hi, exp) }
    }

    /// Widens the endpoints outward onto the dyadic grid `2^-prec` to keep
    /// numerator sizes bounded.
    pub fn round_out(&self, prec: u32) -> Enclosure {
        Enclosure { lo: from_scaled(floor_scaled(&self.lo, prec), prec), hi: from_scaled(ceil_scaled(&self.hi, prec), prec) }
    }

    pub fn ln(&self, prec: u32) -> Result<Enclosure> {
        if !self.lo.is_positive() {
            return Err(Error::param("logarithm of a nonpositive value"));
        }
        Ok(Enclosure { lo: ln_enclosure(&self.lo, prec).lo, hi: ln_enclosure(&self.hi, prec).hi })
    }

    pub fn exp(&self, prec: u32) -> Enclosure {
        Enclosure { lo: exp_enclosure(&self.lo, prec).lo, hi: exp_enclosure(&self.hi, prec).hi }
    }

    /// `⌈x⌉` if it is the same integer for every point of the interval.
    pub fn ceil_exact(&self) -> Option<BigInt> {
        let a = self.lo.ceil().to_integer();
        let b = self.hi.ceil().to_integer();
        (a == b).then_some(a)
    }

    /// Three-valued comparison: `Some(ordering)` when every point of `self`
    /// compares the same way against every point of `other`.
    pub fn compare(&self, other: &Enclosure) -> Option<Ordering> {
        if self.hi < other.lo {
            Some(Ordering::Less)
        } else if self.lo > other.hi {
            Some(Ordering::Greater)
        } else if self.is_point() && other.is_point() && self.lo == other.lo {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    pub fn midpoint_f64(&self) -> f64 {
        rational_to_f64(&((&self.lo + &self.hi) / rat_int(2)))
    }
}

/// Rigorous enclosure of `ln(x)` for rational `x > 0`, with endpoints on the
/// grid `2^-prec` (width a few units of `2^-prec` times `|log2 x|`).
pub fn ln_enclosure(x: &Rational, prec: u32) -> Enclosure {
    assert!(x.is_positive(), "ln of nonpositive value");
    // y = x / 2^m in [1, 2)
    let mut m = x.numer().bits() as i64 - x.denom().bits() as i64;
    let two = rat_int(2);
    let scale = |m: i64| -> Rational {
        if m >= 0 {
            rat_int(BigInt::one() << m as usize)
        } else {
            Rational::new(BigInt::one(), BigInt::one() << (-m) as usize)
        }
    };
    let mut y = x / scale(m);
    while y >= two {
        m += 1;
        y = x / scale(m);
    }
    while y < Rational::one() {
        m -= 1;
        y = x / scale(m);
    }
    let z = (&y - Rational::one()) / (&y + Rational::one());
    let guard = prec + 8 + (64 - (m.unsigned_abs()).leading_zeros());
    let (at_lo, at_hi) = atanh_scaled(&z, guard);
    let (l2_lo, l2_hi) = ln2_scaled(guard);
    let mb = BigInt::from(m);
    let (lo, hi) = if m >= 0 {
        (&mb * l2_lo + at_lo * 2, &mb * l2_hi + at_hi * 2)
    } else {
        (&mb * l2_hi + at_lo * 2, &mb * l2_lo + at_hi * 2)
    };
    Enclosure::new(from_scaled(lo, guard), from_scaled(hi, guard)).round_out(prec)
}

/// Rigorous enclosure of `exp(x)` for rational `x`, relative width about `2^-prec`.
pub fn exp_enclosure(x: &Rational, prec: u32) -> Enclosure {
    let negative = x.is_negative();
    let ax = x.abs();
    // halve until |x| / 2^s <= 1/2
    let mut s = 0u32;
    let half = rational(1, 2);
    let mut r = ax.clone();
    while r > half {
        r /= rat_int(2);
        s += 1;
    }
    let magnitude_bits = (ceil_to_uint(&ax).unwrap_or_default().to_u64().unwrap_or(u64::MAX / 4) * 3 / 2) as u32;
    let work = prec + s + 16 + magnitude_bits.min(1 << 20);
    let one = BigInt::one() << work as usize;
    let (mut lo, mut hi) = exp_small_scaled(&r, work);
    for _ in 0..s {
        lo = (&lo * &lo) >> work as usize;
        hi = div_ceil_int(&(&hi * &hi), &one);
    }
    let enc = if negative {
        let one2 = &one * &one;
        let new_lo = one2.div_floor(&hi);
        let new_hi = div_ceil_int(&one2, &lo);
        Enclosure::new(from_scaled(new_lo, work), from_scaled(new_hi, work))
    } else {
        Enclosure::new(from_scaled(lo, work), from_scaled(hi, work))
    };
    enc.round_out(work)
}

/// Enclosure of Euler's number from the factorial series with its tail bound.
pub fn e_enclosure(terms: u64) -> Enclosure {
    let mut sum = Rational::zero();
    let mut term = Rational::one();
    for i in 0..=terms {
        if i > 0 {
            term /= rat_int(i as i64);
        }
        sum += &term;
    }
    // tail Σ_{i>N} 1/i! <= 2/(N+1)!
    let tail = &term * rational(2, (terms + 1) as i64);
    Enclosure::new(sum.clone(), sum + tail)
}

/// Enclosure of `base^(num/den)` for integer `base >= 1` and `num, den > 0`,
/// computed with integer `den`-th roots. Exact (a point) when the power is an integer.
pub fn rational_power_enclosure(base: &BigUint, num: u64, den: u32, prec: u32) -> Enclosure {
    let powered = num_traits::pow(base.clone(), num as usize);
    if den == 1 {
        return Enclosure::point(uint_to_rational(&powered));
    }
    let exact = powered.nth_root(den);
    if num_traits::pow(exact.clone(), den as usize) == powered {
        return Enclosure::point(uint_to_rational(&exact));
    }
    let scaled = powered << (den as usize * prec as usize);
    let lo = scaled.nth_root(den);
    let hi = &lo + 1u32;
    let denom = BigUint::one() << prec as usize;
    Enclosure::new(
        uint_to_rational(&lo) / uint_to_rational(&denom),
        uint_to_rational(&hi) / uint_to_rational(&denom),
    )
}
