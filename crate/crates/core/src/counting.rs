//! Closed-form counts of `[[n,k]]_d` stabilizer codes.
//!
//! For a prime power `p^m` with `r = n − k` and `E = r(n+3k+1)/2`:
//!
//! ```text
//! N(n,k,p^m) = p^{(m−1)E} · [n, r]_p · ∏_{j<r} (p^{n−j} + 1)
//! ```
//!
//! and counts over general `d` multiply across the prime powers of `d`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ring::{factorize, is_prime, Modulus};

/// Exact rational with unbounded numerator and denominator.
pub type ExactRational = BigRational;

/// The constant `c` of the upper bound, as the fraction `217/100`.
pub const C_NUM: u64 = 217;
pub const C_DEN: u64 = 100;
/// The ζ bound exponent `1.57`, as `157/100`.
pub const ZETA_EXP_NUM: u64 = 157;
pub const ZETA_EXP_DEN: u64 = 100;

fn check_params(n: usize, k: usize) -> Result<()> {
    if n == 0 || k >= n {
        return Err(Error::InvalidParams(format!(
            "need 0 <= k < n, got n={n}, k={k}"
        )));
    }
    Ok(())
}

fn check_prime(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::InvalidParams(format!("{p} is not prime")));
    }
    Ok(())
}

fn pow_u(base: u64, exp: u64) -> BigUint {
    Pow::pow(BigUint::from(base), exp)
}

/// `E = (n−k)(n+3k+1)/2`; the product of the two factors is always even.
pub fn lower_exponent(n: usize, k: usize) -> u64 {
    let (n, k) = (n as u64, k as u64);
    (n - k) * (n + 3 * k + 1) / 2
}

/// The Gaussian coefficient `[n, m]_p`.
pub fn gaussian_coefficient(n: usize, m: usize, p: u64) -> Result<BigUint> {
    if m > n {
        return Err(Error::InvalidParams(format!(
            "need m <= n, got n={n}, m={m}"
        )));
    }
    check_prime(p)?;
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for j in 0..m as u64 {
        num *= pow_u(p, n as u64 - j) - 1u32;
        den *= pow_u(p, m as u64 - j) - 1u32;
    }
    debug_assert!((&num % &den).is_zero());
    Ok(num / den)
}

/// `ζ = ∏_{j<r} (1 − p^{−2(n−j)}) / (1 − p^{−(r−j)})`.
pub fn zeta(n: usize, k: usize, p: u64) -> Result<ExactRational> {
    check_params(n, k)?;
    check_prime(p)?;
    let r = (n - k) as u64;
    let n = n as u64;
    let one = ExactRational::one();
    let mut z = one.clone();
    for j in 0..r {
        let a = &one - ExactRational::new(BigInt::one(), pow_u(p, 2 * (n - j)).into());
        let b = &one - ExactRational::new(BigInt::one(), pow_u(p, r - j).into());
        z *= a / b;
    }
    Ok(z)
}

/// `N(n, k, p^m)`.
pub fn count_codes_prime_power(n: usize, k: usize, p: u64, m: u32) -> Result<BigUint> {
    check_params(n, k)?;
    check_prime(p)?;
    if m == 0 {
        return Err(Error::InvalidParams(
            "prime exponent must be at least 1".into(),
        ));
    }
    let r = n - k;
    let mut total = pow_u(p, (m as u64 - 1) * lower_exponent(n, k));
    total *= gaussian_coefficient(n, r, p)?;
    for j in 0..r as u64 {
        total *= pow_u(p, n as u64 - j) + 1u32;
    }
    Ok(total)
}

/// Contribution of one prime power of `d`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PrimeCount {
    pub p: u64,
    pub m: u32,
    pub codes: BigUint,
    pub zeta: ExactRational,
}

/// Exponents of the two-sided bound `d^E ≤ codes < d^{E + c}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BoundExponents {
    pub lower: u64,
    /// `E + c` as an exact rational.
    pub upper: ExactRational,
    pub c: ExactRational,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CountReport {
    pub n: usize,
    pub k: usize,
    pub d: Modulus,
    pub codes: BigUint,
    pub code_spaces: BigUint,
    pub states: Option<BigUint>,
    pub per_prime: Vec<PrimeCount>,
    pub bounds: BoundExponents,
}

pub fn count_codes(n: usize, k: usize, d: Modulus) -> Result<CountReport> {
    check_params(n, k)?;
    let mut per_prime = Vec::new();
    let mut codes = BigUint::one();
    for &(p, m) in factorize(d).factors() {
        let c = count_codes_prime_power(n, k, p, m)?;
        codes *= &c;
        per_prime.push(PrimeCount {
            p,
            m,
            codes: c,
            zeta: zeta(n, k, p)?,
        });
    }
    let code_spaces = pow_u(d.get(), (n - k) as u64) * &codes;
    let states = (k == 0).then(|| code_spaces.clone());
    let lower = lower_exponent(n, k);
    let c = ExactRational::new(BigInt::from(C_NUM), BigInt::from(C_DEN));
    Ok(CountReport {
        n,
        k,
        d,
        codes,
        code_spaces,
        states,
        per_prime,
        bounds: BoundExponents {
            lower,
            upper: ExactRational::from_integer(BigInt::from(lower)) + &c,
            c,
        },
    })
}

pub fn count_code_spaces(n: usize, k: usize, d: Modulus) -> Result<BigUint> {
    Ok(count_codes(n, k, d)?.code_spaces)
}

pub fn count_stabilizer_states(n: usize, d: Modulus) -> Result<BigUint> {
    count_code_spaces(n, 0, d)
}

/// `d^E · ∏ ζ_i`, the second evaluation route for the code count.
pub fn codes_via_zeta(n: usize, k: usize, d: Modulus) -> Result<ExactRational> {
    check_params(n, k)?;
    let mut total = ExactRational::from_integer(pow_u(d.get(), lower_exponent(n, k)).into());
    for &(p, _) in factorize(d).factors() {
        total *= zeta(n, k, p)?;
    }
    Ok(total)
}

/// A lower bound on `e^{num/den}` from a truncated Taylor series.
fn exp_lower_bound(num: u64, den: u64) -> ExactRational {
    let x = ExactRational::new(BigInt::from(num), BigInt::from(den));
    let mut term = ExactRational::one();
    let mut sum = ExactRational::one();
    for j in 1..=40u64 {
        term = term * &x / ExactRational::from_integer(BigInt::from(j));
        sum += &term;
    }
    sum
}

/// Outcome of [`check_bounds`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BoundsVerdict {
    pub holds: bool,
    pub diagnostics: Vec<String>,
}

/// Checks the report's internal consistency and the two-sided bounds, all in
/// exact arithmetic.
pub fn check_bounds(report: &CountReport) -> BoundsVerdict {
    let mut diagnostics = Vec::new();
    let d = report.d.get();
    let e = report.bounds.lower;
    let r = (report.n - report.k) as u64;

    let product = report
        .per_prime
        .iter()
        .fold(BigUint::one(), |acc, pc| acc * &pc.codes);
    if product != report.codes {
        diagnostics.push(format!(
            "per-prime product {product} differs from codes {}",
            report.codes
        ));
    }
    if report.code_spaces != pow_u(d, r) * &report.codes {
        diagnostics.push("code_spaces is not d^(n-k) times codes".into());
    }

    let lower = pow_u(d, e);
    if lower > report.codes {
        diagnostics.push(format!(
            "lower bound d^{e} = {lower} exceeds codes {}",
            report.codes
        ));
    }
    // codes < d^{E + 217/100}  ⇔  codes^100 < d^{100E + 217}
    let lhs = Pow::pow(&report.codes, C_DEN);
    let rhs = pow_u(d, C_DEN * e + C_NUM);
    if lhs >= rhs {
        diagnostics.push(format!(
            "codes {} is not below d^(E + 2.17) with E = {e}",
            report.codes
        ));
    }

    let zeta_cap = exp_lower_bound(ZETA_EXP_NUM, ZETA_EXP_DEN);
    let mut zeta_product = ExactRational::one();
    for pc in &report.per_prime {
        if pc.zeta >= zeta_cap {
            diagnostics.push(format!(
                "zeta for p = {} is {} and not below e^1.57",
                pc.p, pc.zeta
            ));
        }
        zeta_product *= &pc.zeta;
    }
    let product_cap = Pow::pow(&zeta_cap, report.per_prime.len() as u64);
    if zeta_product >= product_cap {
        diagnostics.push("product of zeta factors is not below e^(1.57 r(d))".into());
    }

    BoundsVerdict {
        holds: diagnostics.is_empty(),
        diagnostics,
    }
}

struct Decimal<'a>(&'a BigUint);

impl Serialize for Decimal<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

struct Fraction<'a>(&'a ExactRational);

impl Serialize for Fraction<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Fraction", 2)?;
        st.serialize_field("num", &self.0.numer().to_string())?;
        st.serialize_field("den", &self.0.denom().to_string())?;
        st.end()
    }
}

impl Serialize for PrimeCount {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("PrimeCount", 4)?;
        st.serialize_field("p", &self.p.to_string())?;
        st.serialize_field("m", &self.m.to_string())?;
        st.serialize_field("codes", &Decimal(&self.codes))?;
        st.serialize_field("zeta", &Fraction(&self.zeta))?;
        st.end()
    }
}

impl Serialize for BoundExponents {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("BoundExponents", 3)?;
        st.serialize_field("lower_exponent", &self.lower.to_string())?;
        st.serialize_field("upper_exponent", &Fraction(&self.upper))?;
        st.serialize_field("c", &Fraction(&self.c))?;
        st.end()
    }
}

impl Serialize for CountReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("CountReport", 8)?;
        st.serialize_field("n", &self.n.to_string())?;
        st.serialize_field("k", &self.k.to_string())?;
        st.serialize_field("d", &self.d.get().to_string())?;
        st.serialize_field("codes", &Decimal(&self.codes))?;
        st.serialize_field("code_spaces", &Decimal(&self.code_spaces))?;
        st.serialize_field("states", &self.states.as_ref().map(Decimal))?;
        st.serialize_field("per_prime", &self.per_prime)?;
        st.serialize_field("bounds", &self.bounds)?;
        st.end()
    }
}
