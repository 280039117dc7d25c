//! Finite field arithmetic GF(p^n) over a deterministically chosen
//! irreducible modulus.

use crate::error::{Error, Result};

/// Largest field size for which the modulus search and its exhaustive
/// irreducibility check stay trivially cheap.
pub const MAX_FIELD_SIZE: u64 = 2048;

/// GF(p^n). Elements are denoted by indices `0..q`; the index encodes the
/// coefficient vector of the residue polynomial in base `p`, least
/// significant coefficient first.
pub struct FiniteField {
    p: u64,
    n: u32,
    q: u64,
    /// Monic irreducible modulus, coefficients ascending, length n+1.
    modulus: Vec<u64>,
    generator: u64,
}

impl FiniteField {
    pub fn new(p: u64, n: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Unsupported(format!("characteristic {p} is not prime")));
        }
        if n == 0 {
            return Err(Error::Unsupported("extension degree must be at least 1".into()));
        }
        let q = p
            .checked_pow(n)
            .filter(|&q| q <= MAX_FIELD_SIZE)
            .ok_or_else(|| {
                Error::Unsupported(format!("field size {p}^{n} exceeds {MAX_FIELD_SIZE}"))
            })?;
        let modulus = least_irreducible_monic(p, n);
        let mut field = FiniteField { p, n, q, modulus, generator: 0 };
        field.generator = field.find_generator()?;
        Ok(field)
    }

    /// Builds the field of the given prime-power order.
    pub fn of_order(q: u64) -> Result<Self> {
        let (p, n) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        FiniteField::new(p, n)
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn extension_degree(&self) -> u32 {
        self.n
    }

    pub fn size(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// A fixed generator of the cyclic multiplicative group.
    pub fn generator(&self) -> u64 {
        self.generator
    }

    pub fn coeffs(&self, a: u64) -> Vec<u64> {
        debug_assert!(a < self.q);
        let mut digits = Vec::with_capacity(self.n as usize);
        let mut rest = a;
        for _ in 0..self.n {
            digits.push(rest % self.p);
            rest /= self.p;
        }
        digits
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> u64 {
        let mut value = 0u64;
        for &c in coeffs.iter().rev() {
            debug_assert!(c < self.p);
            value = value * self.p + c;
        }
        debug_assert!(value < self.q);
        value
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let (ca, cb) = (self.coeffs(a), self.coeffs(b));
        let sum: Vec<u64> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % self.p).collect();
        self.from_coeffs(&sum)
    }

    pub fn neg(&self, a: u64) -> u64 {
        let coeffs: Vec<u64> = self.coeffs(a).iter().map(|&c| (self.p - c) % self.p).collect();
        self.from_coeffs(&coeffs)
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        let product = poly_mul(&self.coeffs(a), &self.coeffs(b), self.p);
        let reduced = poly_rem(&product, &self.modulus, self.p);
        let mut padded = reduced;
        padded.resize(self.n as usize, 0);
        self.from_coeffs(&padded)
    }

    pub fn pow(&self, a: u64, mut e: u64) -> u64 {
        let mut base = a;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::ZeroInversion { q: self.q });
        }
        Ok(self.pow(a, self.q - 2))
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::ZeroInversion { q: self.q });
        }
        let mut k = 1u64;
        let mut acc = a;
        while acc != 1 {
            acc = self.mul(acc, a);
            k += 1;
        }
        Ok(k)
    }

    fn find_generator(&self) -> Result<u64> {
        for candidate in 1..self.q {
            if self.multiplicative_order(candidate)? == self.q - 1 {
                return Ok(candidate);
            }
        }
        Err(Error::Inconsistency(format!(
            "no multiplicative generator found in GF({})",
            self.q
        )))
    }
}

pub(crate) use crate::arith::{is_prime, prime_power};

/// The least monic irreducible polynomial of degree `n` over GF(p), where
/// candidates are ordered by their base-`p` coefficient encoding.
fn least_irreducible_monic(p: u64, n: u32) -> Vec<u64> {
    let deg = n as usize;
    let count = p.pow(n);
    for code in 0..count {
        let mut poly = Vec::with_capacity(deg + 1);
        let mut rest = code;
        for _ in 0..deg {
            poly.push(rest % p);
            rest /= p;
        }
        poly.push(1);
        if is_irreducible(&poly, p) {
            return poly;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists");
}

/// Exhaustive irreducibility test: trial division by every monic
/// polynomial of degree 1 through n/2.
fn is_irreducible(poly: &[u64], p: u64) -> bool {
    let deg = poly.len() - 1;
    if deg == 1 {
        return true;
    }
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        for code in 0..count {
            let mut divisor = Vec::with_capacity(d + 1);
            let mut rest = code;
            for _ in 0..d {
                divisor.push(rest % p);
                rest /= p;
            }
            divisor.push(1);
            if poly_rem(poly, &divisor, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}

/// Remainder of `a` modulo the monic polynomial `m`.
fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut rem: Vec<u64> = a.to_vec();
    let md = m.len() - 1;
    while rem.len() > md {
        let lead = *rem.last().unwrap();
        let shift = rem.len() - 1 - md;
        if lead != 0 {
            for (k, &mc) in m.iter().enumerate() {
                let idx = shift + k;
                rem[idx] = (rem[idx] + (p - mc % p) % p * lead) % p;
            }
        }
        rem.pop();
    }
    while rem.len() > 1 && *rem.last().unwrap() == 0 {
        rem.pop();
    }
    rem
}
