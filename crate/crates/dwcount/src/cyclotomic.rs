//! Exact arithmetic in (1/D) * Z[zeta_N] for a primitive N-th root of
//! unity zeta_N = exp(2*pi*i/N).
//!
//! Values are kept in the unreduced group-ring representation: a length-N
//! integer coefficient vector indexed by exponent, over a single positive
//! denominator. Addition and multiplication (cyclic convolution on
//! exponents) stay integer-exact and branch-free in this form; canonical
//! reduction modulo the N-th cyclotomic polynomial happens only at
//! extraction and comparison time.
//!
//! Equality of values is semantic: two representations are equal iff
//! their difference reduces to zero modulo Phi_N after clearing
//! denominators. Coefficient vectors are never compared directly.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, LazyLock, Mutex};

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An exact element of (1/denom) * Z[zeta_N], stored as the full
/// length-N coefficient vector of the group ring (unreduced).
#[derive(Debug, Clone)]
pub struct CycloValue {
    modulus: u64,
    coeffs: Vec<BigInt>,
    denom: BigUint,
}

/// Canonical representative in the power basis 1, z, ..., z^(phi(N)-1)
/// of Q(zeta_N): the remainder modulo Phi_N with denominator in lowest
/// terms with the coefficient content. Semantically equal [`CycloValue`]s
/// reduce to identical `ReducedForm`s.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedForm {
    modulus: u64,
    basis_coeffs: Vec<BigInt>,
    denom: BigUint,
}

impl CycloValue {
    /// The additive identity in Z[zeta_N].
    pub fn zero(modulus: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidModulus(0));
        }
        Ok(CycloValue {
            modulus,
            coeffs: vec![BigInt::zero(); modulus as usize],
            denom: BigUint::one(),
        })
    }

    /// The multiplicative identity.
    pub fn one(modulus: u64) -> Result<Self> {
        Self::root_power(modulus, 0)
    }

    /// The root power zeta_N^e, with e taken modulo N.
    pub fn root_power(modulus: u64, exponent: i64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidModulus(0));
        }
        let mut v = Self::zero(modulus)?;
        let e = (exponent as i128).rem_euclid(modulus as i128) as usize;
        v.coeffs[e] = BigInt::one();
        Ok(v)
    }

    /// The rational integer `value` as a constant.
    pub fn from_integer(modulus: u64, value: impl Into<BigInt>) -> Result<Self> {
        let mut v = Self::zero(modulus)?;
        v.coeffs[0] = value.into();
        Ok(v)
    }

    /// Builds a value from raw parts. `coeffs.len()` must equal the
    /// modulus and the denominator must be positive.
    pub fn from_coeffs(modulus: u64, coeffs: Vec<BigInt>, denom: BigUint) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidModulus(0));
        }
        if coeffs.len() != modulus as usize {
            return Err(Error::ModulusMismatch(coeffs.len() as u64, modulus));
        }
        if denom.is_zero() {
            return Err(Error::InvalidDenominator);
        }
        Ok(CycloValue {
            modulus,
            coeffs,
            denom,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn denom(&self) -> &BigUint {
        &self.denom
    }

    /// Exact sum; denominators are combined via their least common
    /// multiple.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch(self.modulus, other.modulus));
        }
        let lcm = self.denom.lcm(&other.denom);
        let sa = BigInt::from(&lcm / &self.denom);
        let sb = BigInt::from(&lcm / &other.denom);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a * &sa + b * &sb)
            .collect();
        Ok(CycloValue {
            modulus: self.modulus,
            coeffs,
            denom: lcm,
        })
    }

    /// Exact product: cyclic convolution of coefficient vectors on
    /// exponents modulo N; denominators multiply.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch(self.modulus, other.modulus));
        }
        let n = self.modulus as usize;
        let mut coeffs = vec![BigInt::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let k = (i + j) % n;
                coeffs[k] += a * b;
            }
        }
        Ok(CycloValue {
            modulus: self.modulus,
            coeffs,
            denom: &self.denom * &other.denom,
        })
    }

    /// Multiplies every coefficient by the integer `c`.
    pub fn scale(&self, c: &BigInt) -> Self {
        CycloValue {
            modulus: self.modulus,
            coeffs: self.coeffs.iter().map(|v| v * c).collect(),
            denom: self.denom.clone(),
        }
    }

    /// Complex conjugation: the coefficient at exponent e moves to
    /// exponent (N - e) mod N. The denominator is unchanged.
    pub fn conjugate(&self) -> Self {
        let n = self.modulus as usize;
        let mut coeffs = vec![BigInt::zero(); n];
        for (e, c) in self.coeffs.iter().enumerate() {
            coeffs[(n - e) % n] = c.clone();
        }
        CycloValue {
            modulus: self.modulus,
            coeffs,
            denom: self.denom.clone(),
        }
    }

    /// Canonical reduction modulo Phi_N with denominator/content
    /// normalization. Idempotent, and constant on semantic-equality
    /// classes.
    pub fn reduce(&self) -> ReducedForm {
        let phi = cyclotomic_polynomial(self.modulus).expect("modulus validated on construction");
        let rem = poly_rem(&self.coeffs, &phi);
        let degree = phi.len() - 1;
        let mut basis_coeffs = rem;
        basis_coeffs.resize(degree, BigInt::zero());

        let content = basis_coeffs
            .iter()
            .fold(BigUint::zero(), |acc, c| acc.gcd(c.magnitude()));
        let (basis_coeffs, denom) = if content.is_zero() {
            (basis_coeffs, BigUint::one())
        } else {
            let g = content.gcd(&self.denom);
            if g.is_one() {
                (basis_coeffs, self.denom.clone())
            } else {
                let gi = BigInt::from(g.clone());
                (
                    basis_coeffs.iter().map(|c| c / &gi).collect(),
                    &self.denom / &g,
                )
            }
        };
        ReducedForm {
            modulus: self.modulus,
            basis_coeffs,
            denom,
        }
    }

    /// Extracts the exact rational-integer value, failing with
    /// [`Error::NotAnInteger`] when the reduced form is non-constant or
    /// the denominator does not divide the constant term.
    pub fn to_integer(&self) -> Result<BigInt> {
        let reduced = self.reduce();
        if reduced.basis_coeffs[1..].iter().any(|c| !c.is_zero()) {
            return Err(Error::NotAnInteger(reduced.to_string()));
        }
        let constant = &reduced.basis_coeffs[0];
        let d = BigInt::from(reduced.denom.clone());
        let (q, r) = constant.div_rem(&d);
        if !r.is_zero() {
            return Err(Error::NotAnInteger(reduced.to_string()));
        }
        Ok(q)
    }

    /// Floating-point evaluation (1/denom) * sum coeffs[e] * exp(2 pi i e / N).
    pub fn approx(&self) -> Complex64 {
        let n = self.modulus as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let angle = std::f64::consts::TAU * (e as f64) / n;
            acc += Complex64::from_polar(1.0, angle) * c.to_f64().unwrap_or(f64::NAN);
        }
        acc / self.denom.to_f64().unwrap_or(f64::NAN)
    }

    /// Semantic equality: the difference reduces to zero modulo Phi_N.
    pub fn semantically_equal(&self, other: &Self) -> Result<bool> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch(self.modulus, other.modulus));
        }
        Ok(self.reduce() == other.reduce())
    }
}

impl ReducedForm {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn basis_coeffs(&self) -> &[BigInt] {
        &self.basis_coeffs
    }

    pub fn denom(&self) -> &BigUint {
        &self.denom
    }

    pub fn is_zero(&self) -> bool {
        self.basis_coeffs.iter().all(|c| c.is_zero())
    }

    /// Re-expands into the group-ring representation.
    pub fn to_value(&self) -> CycloValue {
        let mut coeffs = self.basis_coeffs.clone();
        coeffs.resize(self.modulus as usize, BigInt::zero());
        CycloValue {
            modulus: self.modulus,
            coeffs,
            denom: self.denom.clone(),
        }
    }
}

impl fmt::Display for ReducedForm {
    /// Canonical text: `(c0 + c1*z + c2*z^2 + ...)/D` with `z` denoting
    /// zeta_N, zero terms omitted, parentheses only for multi-term
    /// numerators over a nontrivial denominator.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(usize, &BigInt)> = self
            .basis_coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        if terms.is_empty() {
            return write!(f, "0");
        }

        let mut num = String::new();
        for (pos, (e, c)) in terms.iter().enumerate() {
            let mag = c.magnitude();
            if pos == 0 {
                if c.is_negative() {
                    num.push('-');
                }
            } else if c.is_negative() {
                num.push_str(" - ");
            } else {
                num.push_str(" + ");
            }
            let body = match (*e, mag.is_one()) {
                (0, _) => mag.to_string(),
                (1, true) => "z".to_string(),
                (1, false) => format!("{mag}*z"),
                (_, true) => format!("z^{e}"),
                (_, false) => format!("{mag}*z^{e}"),
            };
            num.push_str(&body);
        }

        if self.denom.is_one() {
            write!(f, "{num}")
        } else if terms.len() == 1 {
            write!(f, "{num}/{}", self.denom)
        } else {
            write!(f, "({num})/{}", self.denom)
        }
    }
}

/// Euler totient by trial-division factorization.
pub fn euler_phi(n: u64) -> u64 {
    let mut n = n;
    let mut result = n;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

static PHI_CACHE: LazyLock<Mutex<HashMap<u64, Arc<Vec<BigInt>>>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

/// The N-th cyclotomic polynomial Phi_N as a little-endian coefficient
/// vector, monic of degree phi(N).
///
/// Computed by exact polynomial division
/// Phi_N = (x^N - 1) / prod_{d | N, d < N} Phi_d, working upward through
/// the divisors of N. Results are memoized process-wide.
pub fn cyclotomic_polynomial(n: u64) -> Result<Arc<Vec<BigInt>>> {
    if n == 0 {
        return Err(Error::InvalidModulus(0));
    }
    let mut cache = PHI_CACHE.lock().expect("cyclotomic cache poisoned");
    if let Some(p) = cache.get(&n) {
        return Ok(p.clone());
    }
    let mut divisors: Vec<u64> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    divisors.sort_unstable();
    for d in divisors {
        if cache.contains_key(&d) {
            continue;
        }
        // x^d - 1
        let mut numerator = vec![BigInt::zero(); d as usize + 1];
        numerator[0] = BigInt::from(-1);
        numerator[d as usize] = BigInt::one();

        let mut denominator = vec![BigInt::one()];
        for e in 1..d {
            if d.is_multiple_of(e) {
                denominator = poly_mul(&denominator, cache.get(&e).expect("computed in order"));
            }
        }
        let (q, r) = poly_divmod(&numerator, &denominator);
        debug_assert!(r.iter().all(|c| c.is_zero()));
        cache.insert(d, Arc::new(q));
    }
    Ok(cache.get(&n).expect("just inserted").clone())
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if bj.is_zero() {
                continue;
            }
            out[i + j] += ai * bj;
        }
    }
    out
}

/// Long division by a monic divisor; exact over the integers.
fn poly_divmod(num: &[BigInt], den: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
    let dd = degree_of(den);
    debug_assert!(den[dd].is_one(), "divisor must be monic");
    let nd = degree_of(num);
    let mut rem: Vec<BigInt> = num.to_vec();
    if nd < dd || (nd == 0 && num[0].is_zero()) {
        return (vec![BigInt::zero()], rem);
    }
    let mut quot = vec![BigInt::zero(); nd - dd + 1];
    for k in (0..=nd - dd).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        quot[k] = c.clone();
        for (i, di) in den.iter().enumerate().take(dd + 1) {
            let t = &c * di;
            rem[k + i] -= t;
        }
    }
    rem.truncate(dd);
    (quot, rem)
}

fn degree_of(p: &[BigInt]) -> usize {
    p.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
}

/// Remainder of the coefficient vector (as a polynomial in z) under
/// division by `phi`.
fn poly_rem(coeffs: &[BigInt], phi: &[BigInt]) -> Vec<BigInt> {
    poly_divmod(coeffs, phi).1
}
