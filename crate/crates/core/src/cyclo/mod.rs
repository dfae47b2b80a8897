//! Exact arithmetic for roots of unity and cyclotomic scalars.
//!
//! A [`RootOfUnity`] is a torsion point of the circle stored as a reduced
//! fraction `num/den`, representing `exp(2 pi i num/den)`. A [`CycloNumber`]
//! is an element of `Q[x]/(Phi_N)`, the N-th cyclotomic field, stored as its
//! canonical residue of degree `< phi(N)`. Equality is exact.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

mod matrix;

pub use matrix::CycloMatrix;

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// Euler's totient.
pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            return false;
        }
        p += 1;
    }
    true
}

/// A root of unity `exp(2 pi i num/den)` in canonical reduced form.
///
/// Invariants: `gcd(num, den) = 1` and `0 <= num < den`; the identity is `0/1`.
/// Roots are ordered by `(den, num)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RootOfUnity {
    num: u64,
    den: u64,
}

impl RootOfUnity {
    pub const ONE: RootOfUnity = RootOfUnity { num: 0, den: 1 };

    /// Builds `exp(2 pi i num/den)` from any integer numerator.
    pub fn new(num: i64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::MalformedRoot(format!("{num}/{den}")));
        }
        let r = (num as i128).rem_euclid(den as i128) as u64;
        Ok(Self::reduced(r, den))
    }

    fn reduced(num: u64, den: u64) -> Self {
        let g = gcd(num, den);
        if num == 0 {
            return Self::ONE;
        }
        Self { num: num / g, den: den / g }
    }

    /// The primitive root `exp(2 pi i / m)`.
    pub fn primitive(m: u64) -> Self {
        assert!(m >= 1, "order must be positive");
        Self::reduced(1 % m, m)
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn order(&self) -> u64 {
        self.den
    }

    pub fn is_one(&self) -> bool {
        self.den == 1
    }

    pub fn mul(&self, other: &Self) -> Self {
        let l = lcm(self.den, other.den);
        let a = self.num as u128 * (l / self.den) as u128;
        let b = other.num as u128 * (l / other.den) as u128;
        Self::reduced(((a + b) % l as u128) as u64, l)
    }

    pub fn pow(&self, k: i64) -> Self {
        let e = (k as i128).rem_euclid(self.den as i128) as u128;
        Self::reduced(((self.num as u128 * e) % self.den as u128) as u64, self.den)
    }

    pub fn inv(&self) -> Self {
        self.pow(-1)
    }

    /// Exponent of this root as a power of the primitive `level`-th root.
    pub fn exponent_at(&self, level: u64) -> Result<u64> {
        if level == 0 || level % self.den != 0 {
            return Err(Error::OrderNotDividing {
                root: self.to_string(),
                modulus: level,
            });
        }
        Ok(self.num * (level / self.den))
    }

    /// All roots whose order divides `m`, in canonical ordering.
    pub fn all_dividing(m: u64) -> Vec<Self> {
        let mut roots: Vec<Self> = (0..m).map(|k| Self::reduced(k, m)).collect();
        roots.sort();
        roots
    }

    /// All roots of order exactly `m`.
    pub fn all_of_order(m: u64) -> Vec<Self> {
        (0..m)
            .filter(|&k| gcd(k, m) == 1)
            .map(|k| Self::reduced(k, m))
            .filter(|r| r.den == m)
            .collect()
    }

    /// Splits this root into its `p`-power part and its prime-to-`p` part.
    pub fn primary_split(&self, p: u64) -> (Self, Self) {
        let mut pp = 1;
        let mut rest = self.den;
        while rest % p == 0 {
            rest /= p;
            pp *= p;
        }
        if pp == 1 {
            return (Self::ONE, *self);
        }
        if rest == 1 {
            return (*self, Self::ONE);
        }
        // num/den = x/pp + y/rest  <=>  num = x*rest + y*pp
        let inv_rest = mod_inverse(rest % pp, pp).expect("coprime parts");
        let x = (self.num as u128 * inv_rest as u128 % pp as u128) as u64;
        let p_part = Self::reduced(x, pp);
        let coprime = self.mul(&p_part.inv());
        (p_part, coprime)
    }
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

impl PartialOrd for RootOfUnity {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RootOfUnity {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.den, self.num).cmp(&(other.den, other.num))
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for RootOfUnity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::MalformedRoot(s.to_string());
        let (a, m) = s.trim().split_once('/').ok_or_else(bad)?;
        let a: i64 = a.trim().parse().map_err(|_| bad())?;
        let m: u64 = m.trim().parse().map_err(|_| bad())?;
        if m == 0 {
            return Err(bad());
        }
        Self::new(a, m)
    }
}

impl Serialize for RootOfUnity {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for RootOfUnity {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Dense integer polynomial, coefficients from low to high degree, no
/// trailing zeros (the zero polynomial is empty).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly(Vec<BigInt>);

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self(coeffs)
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `x^n - 1`.
    pub fn x_pow_minus_one(n: u64) -> Self {
        let mut c = vec![BigInt::zero(); n as usize + 1];
        c[0] = BigInt::from(-1);
        c[n as usize] = BigInt::one();
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.0.last().is_some_and(|c| c.is_one())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.0.is_empty() || other.0.is_empty() {
            return Self(Vec::new());
        }
        let mut out = vec![BigInt::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Division by a monic polynomial, returning `(quotient, remainder)`.
    pub fn div_rem_monic(&self, divisor: &Self) -> (Self, Self) {
        assert!(divisor.is_monic(), "divisor must be monic");
        let dd = divisor.0.len() - 1;
        let mut rem = self.0.clone();
        if rem.len() <= dd {
            return (Self(Vec::new()), Self::new(rem));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = std::mem::take(&mut rem[i]);
            if c.is_zero() {
                continue;
            }
            for j in 0..dd {
                rem[i - dd + j] -= &c * &divisor.0[j];
            }
            quot[i - dd] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            match (i, abs.is_one()) {
                (0, _) => write!(f, "{abs}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{abs}x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{abs}x^{i}")?,
            }
        }
        Ok(())
    }
}

fn cyclotomic_cache() -> &'static RwLock<HashMap<u64, Arc<IntPoly>>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<IntPoly>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// The `n`-th cyclotomic polynomial, obtained by dividing `x^n - 1` by
/// `Phi_d` for every proper divisor `d` of `n`.
pub fn cyclotomic_poly(n: u64) -> Result<Arc<IntPoly>> {
    if n == 0 {
        return Err(Error::ZeroLevel);
    }
    if let Some(p) = cyclotomic_cache().read().expect("cache lock").get(&n) {
        return Ok(Arc::clone(p));
    }
    let mut acc = IntPoly::x_pow_minus_one(n);
    for d in divisors(n).into_iter().filter(|&d| d < n) {
        let phi_d = cyclotomic_poly(d)?;
        let (q, r) = acc.div_rem_monic(&phi_d);
        debug_assert!(r.coeffs().is_empty(), "Phi_{d} must divide x^{n} - 1");
        acc = q;
    }
    let acc = Arc::new(acc);
    cyclotomic_cache()
        .write()
        .expect("cache lock")
        .entry(n)
        .or_insert_with(|| Arc::clone(&acc));
    Ok(acc)
}

/// An element of the cyclotomic field `Q(zeta_N) = Q[x]/(Phi_N)`.
#[derive(Clone, Debug)]
pub struct CycloNumber {
    level: u64,
    coeffs: Vec<BigRational>,
}

fn reduce_mod(mut coeffs: Vec<BigRational>, modulus: &IntPoly) -> Vec<BigRational> {
    let dd = modulus.degree().expect("nonzero modulus");
    let m = modulus.coeffs();
    if coeffs.len() > dd {
        for i in (dd..coeffs.len()).rev() {
            let c = std::mem::take(&mut coeffs[i]);
            if c.is_zero() {
                continue;
            }
            for j in 0..dd {
                if !m[j].is_zero() {
                    coeffs[i - dd + j] -= &c * BigRational::from_integer(m[j].clone());
                }
            }
        }
    }
    coeffs.resize(dd, BigRational::zero());
    coeffs
}

impl CycloNumber {
    fn modulus(level: u64) -> Arc<IntPoly> {
        cyclotomic_poly(level).expect("level >= 1")
    }

    fn from_poly(level: u64, coeffs: Vec<BigRational>) -> Self {
        let coeffs = reduce_mod(coeffs, &Self::modulus(level));
        Self { level, coeffs }
    }

    pub fn zero(level: u64) -> Self {
        assert!(level >= 1);
        Self::from_poly(level, Vec::new())
    }

    pub fn from_rational(level: u64, q: BigRational) -> Self {
        assert!(level >= 1);
        Self::from_poly(level, vec![q])
    }

    pub fn from_integer(level: u64, n: i64) -> Self {
        Self::from_rational(level, BigRational::from_integer(BigInt::from(n)))
    }

    /// `zeta_level^k`.
    pub fn power_of_generator(level: u64, k: u64) -> Self {
        let k = (k % level) as usize;
        let mut c = vec![BigRational::zero(); k + 1];
        c[k] = BigRational::one();
        Self::from_poly(level, c)
    }

    /// The root `zeta` realized in `Q(zeta_level)`; requires `order(zeta) | level`.
    pub fn root(zeta: &RootOfUnity, level: u64) -> Result<Self> {
        Ok(Self::power_of_generator(level, zeta.exponent_at(level)?))
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The rational value, if this number lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs.iter().skip(1).all(|c| c.is_zero()) {
            Some(self.coeffs.first().cloned().unwrap_or_else(BigRational::zero))
        } else {
            None
        }
    }

    /// Lift to level `target`, which must be a multiple of the current level.
    pub fn embed(&self, target: u64) -> Result<Self> {
        if target == 0 || target % self.level != 0 {
            return Err(Error::BadEmbedding {
                from: self.level,
                to: target,
            });
        }
        if target == self.level {
            return Ok(self.clone());
        }
        let step = (target / self.level) as usize;
        let mut c = vec![BigRational::zero(); (self.coeffs.len().max(1) - 1) * step + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            c[i * step] = a.clone();
        }
        Ok(Self::from_poly(target, c))
    }

    fn common(&self, other: &Self) -> (Self, Self) {
        if self.level == other.level {
            return (self.clone(), other.clone());
        }
        let l = lcm(self.level, other.level);
        (
            self.embed(l).expect("lcm is a multiple"),
            other.embed(l).expect("lcm is a multiple"),
        )
    }

    /// Complex conjugation `zeta_N -> zeta_N^(N-1)`.
    pub fn conj(&self) -> Self {
        let n = self.level as usize;
        let mut c = vec![BigRational::zero(); n.max(1)];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let e = (i * (n - 1)) % n;
            c[e] += a;
        }
        Self::from_poly(self.level, c)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Self {
            level: self.level,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    fn mul_same_level(&self, other: &Self) -> Self {
        let (a, b) = (&self.coeffs, &other.coeffs);
        if a.iter().all(Zero::is_zero) || b.iter().all(Zero::is_zero) {
            return Self::zero(self.level);
        }
        let mut out = vec![BigRational::zero(); a.len() + b.len()];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] += x * y;
                }
            }
        }
        Self::from_poly(self.level, out)
    }
}

impl PartialEq for CycloNumber {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.common(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycloNumber {}

impl Add for &CycloNumber {
    type Output = CycloNumber;
    fn add(self, other: &CycloNumber) -> CycloNumber {
        let (a, b) = self.common(other);
        CycloNumber {
            level: a.level,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
        }
    }
}

impl Sub for &CycloNumber {
    type Output = CycloNumber;
    fn sub(self, other: &CycloNumber) -> CycloNumber {
        self + &(-other)
    }
}

impl Neg for &CycloNumber {
    type Output = CycloNumber;
    fn neg(self) -> CycloNumber {
        CycloNumber {
            level: self.level,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &CycloNumber {
    type Output = CycloNumber;
    fn mul(self, other: &CycloNumber) -> CycloNumber {
        if self.level == other.level {
            return self.mul_same_level(other);
        }
        let (a, b) = self.common(other);
        a.mul_same_level(&b)
    }
}

impl fmt::Display for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("({c})z"),
                _ => format!("({c})z^{i}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0 [Q(z_{})]", self.level)
        } else {
            write!(f, "{} [Q(z_{})]", terms.join(" + "), self.level)
        }
    }
}

#[derive(Serialize, Deserialize)]
struct CycloRepr {
    level: u64,
    coeffs: Vec<String>,
}

impl Serialize for CycloNumber {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CycloRepr {
            level: self.level,
            coeffs: self.coeffs.iter().map(|c| c.to_string()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycloNumber {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = CycloRepr::deserialize(d)?;
        if repr.level == 0 {
            return Err(serde::de::Error::custom("level must be >= 1"));
        }
        let coeffs = repr
            .coeffs
            .iter()
            .map(|c| c.parse::<BigRational>().map_err(serde::de::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(CycloNumber::from_poly(repr.level, coeffs))
    }
}

pub(crate) fn rational_to_u64(q: &BigRational) -> Option<u64> {
    q.is_integer().then(|| q.to_integer()).and_then(|n| n.to_u64())
}
