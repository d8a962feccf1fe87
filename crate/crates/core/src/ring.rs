//! Arithmetic in `Z_d` and in the integers.
//!
//! Residues are canonical: the stored value always lies in `[0, d)`. All
//! products of two residues fit in a `u64` because `d < 2^32`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The modulus `d` of `Z_d`, with `2 <= d < 2^32`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct Modulus(u64);

impl Modulus {
    pub fn new(d: u64) -> Result<Self> {
        if d < 2 || d >= 1 << 32 {
            return Err(Error::InvalidModulus(d));
        }
        Ok(Modulus(d))
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn reduce(self, x: i64) -> u64 {
        x.rem_euclid(self.0 as i64) as u64
    }

    #[inline]
    pub fn reduce_i128(self, x: i128) -> u64 {
        x.rem_euclid(self.0 as i128) as u64
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.0
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.0 - b) % self.0
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        (a * b) % self.0
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        (self.0 - a) % self.0
    }

    pub fn residue(self, value: i64) -> Residue {
        Residue::new(value, self)
    }

    pub fn factorization(self) -> PrimeFactorization {
        factorize(self)
    }

    pub fn is_unit(self, a: u64) -> bool {
        gcd(a, self.0) == 1
    }
}

impl TryFrom<u64> for Modulus {
    type Error = Error;

    fn try_from(d: u64) -> Result<Self> {
        Modulus::new(d)
    }
}

impl From<Modulus> for u64 {
    fn from(m: Modulus) -> u64 {
        m.0
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An element of `Z_d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u64,
    modulus: Modulus,
}

impl Residue {
    pub fn new(value: i64, modulus: Modulus) -> Self {
        Residue {
            value: modulus.reduce(value),
            modulus,
        }
    }

    pub fn from_u64(value: u64, modulus: Modulus) -> Self {
        Residue {
            value: value % modulus.get(),
            modulus,
        }
    }

    #[inline]
    pub fn value(self) -> u64 {
        self.value
    }

    #[inline]
    pub fn modulus(self) -> Modulus {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn is_unit(self) -> bool {
        self.modulus.is_unit(self.value)
    }

    pub fn inverse(self) -> Result<Self> {
        unit_inverse(self)
    }

    fn check(self, other: Residue) {
        assert_eq!(
            self.modulus, other.modulus,
            "residue arithmetic across different moduli"
        );
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.modulus)
    }
}

impl Add for Residue {
    type Output = Residue;
    fn add(self, rhs: Residue) -> Residue {
        self.check(rhs);
        Residue {
            value: self.modulus.add(self.value, rhs.value),
            modulus: self.modulus,
        }
    }
}

impl Sub for Residue {
    type Output = Residue;
    fn sub(self, rhs: Residue) -> Residue {
        self.check(rhs);
        Residue {
            value: self.modulus.sub(self.value, rhs.value),
            modulus: self.modulus,
        }
    }
}

impl Mul for Residue {
    type Output = Residue;
    fn mul(self, rhs: Residue) -> Residue {
        self.check(rhs);
        Residue {
            value: self.modulus.mul(self.value, rhs.value),
            modulus: self.modulus,
        }
    }
}

impl Neg for Residue {
    type Output = Residue;
    fn neg(self) -> Residue {
        Residue {
            value: self.modulus.neg(self.value),
            modulus: self.modulus,
        }
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Extended Euclid: returns `(g, x, y)` with `a·x + b·y = g = gcd(a, b) >= 0`.
pub fn bezout(a: i64, b: i64) -> Result<(i64, i64, i64)> {
    if a == 0 && b == 0 {
        return Err(Error::BothZero);
    }
    let (mut old_r, mut r) = (a as i128, b as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    Ok((old_r as i64, old_s as i64, old_t as i64))
}

/// Bézout for three integers: `a·x + b·y + c·z = gcd(a, b, c)`.
pub fn bezout3(a: i64, b: i64, c: i64) -> Result<(i64, i64, i64, i64)> {
    if a == 0 && b == 0 {
        let (g, z, _) = bezout(c, 0)?;
        return Ok((g, 0, 0, z));
    }
    let (g1, x1, y1) = bezout(a, b)?;
    let (g, u, z) = bezout(g1, c)?;
    Ok((g, u * x1, u * y1, z))
}

pub fn unit_inverse(a: Residue) -> Result<Residue> {
    let d = a.modulus.get();
    let (g, x, _) = bezout(a.value as i64, d as i64)?;
    if g != 1 {
        return Err(Error::NotAUnit {
            value: a.value,
            modulus: d,
        });
    }
    Ok(Residue::new(x, a.modulus))
}

/// Deterministic primality by trial division.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut q = 2u64;
    while q * q <= p {
        if p % q == 0 {
            return false;
        }
        q += 1;
    }
    true
}

/// `d = ∏ p_i^{m_i}` with strictly increasing primes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeFactorization {
    factors: Vec<(u64, u32)>,
}

impl PrimeFactorization {
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// The prime powers `p_i^{m_i}`, in the order of the factors.
    pub fn prime_powers(&self) -> Vec<u64> {
        self.factors.iter().map(|&(p, m)| p.pow(m)).collect()
    }

    /// `r(d)`, the number of distinct primes.
    pub fn distinct_primes(&self) -> usize {
        self.factors.len()
    }

    pub fn product(&self) -> u64 {
        self.prime_powers().iter().product()
    }
}

pub fn factorize(d: Modulus) -> PrimeFactorization {
    let mut rest = d.get();
    let mut factors = Vec::new();
    let mut p = 2u64;
    while p * p <= rest {
        if rest % p == 0 {
            let mut m = 0;
            while rest % p == 0 {
                rest /= p;
                m += 1;
            }
            factors.push((p, m));
        }
        p += 1;
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    debug_assert!(factors.iter().all(|&(p, _)| is_prime(p)));
    PrimeFactorization { factors }
}

/// Reduces `x` modulo each prime power of `d`.
pub fn crt_split(x: Residue) -> Vec<Residue> {
    factorize(x.modulus)
        .prime_powers()
        .into_iter()
        .map(|q| {
            let m = Modulus::new(q).expect("prime power of a valid modulus is valid");
            Residue::from_u64(x.value, m)
        })
        .collect()
}

/// Inverse of [`crt_split`] for any list of pairwise coprime moduli.
pub fn crt_combine(parts: &[Residue]) -> Result<Residue> {
    let mut acc_value: i128 = 0;
    let mut acc_mod: i128 = 1;
    for part in parts {
        let q = part.modulus.get() as i128;
        let (g, x, _) = bezout(acc_mod as i64, q as i64)?;
        if g != 1 {
            return Err(Error::ModuliNotCoprime);
        }
        // acc_value + acc_mod·t ≡ part (mod q)  =>  t ≡ (part − acc_value)·acc_mod⁻¹
        let t = ((part.value as i128 - acc_value) * x as i128).rem_euclid(q);
        acc_value += acc_mod * t;
        acc_mod *= q;
        if acc_mod >= 1 << 32 {
            return Err(Error::InvalidModulus(acc_mod as u64));
        }
    }
    let m = Modulus::new(acc_mod as u64)?;
    Ok(Residue::new(acc_value as i64, m))
}
