//! Arithmetic in prime fields F_p for odd primes p.
//!
//! Elements carry their modulus so that cross-field operations are caught at
//! runtime. All arithmetic is exact; intermediate products go through `u128`.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// A prime field F_p with p an odd prime, validated at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Builds F_p. Rejects composites, p = 2 and p < 3.
    pub fn new(p: u64) -> Result<Self> {
        if p == 2 {
            return Err(Error::EvenCharacteristic);
        }
        if !is_prime_u64(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// The element v mod p.
    pub fn elem(&self, v: u64) -> FieldElem {
        FieldElem {
            value: v % self.p,
            modulus: self.p,
        }
    }

    /// Canonical representative of a signed integer.
    pub fn elem_i64(&self, v: i64) -> FieldElem {
        let m = self.p as i64;
        self.elem(v.rem_euclid(m) as u64)
    }

    pub fn zero(&self) -> FieldElem {
        self.elem(0)
    }

    pub fn one(&self) -> FieldElem {
        self.elem(1)
    }

    /// Whether a is a square in F_p (0 counts as a square).
    pub fn is_square(&self, a: u64) -> bool {
        let a = a % self.p;
        a == 0 || pow_mod(a, (self.p - 1) / 2, self.p) == 1
    }

    /// A square root of a mod p, if one exists. Of the two roots r and p - r,
    /// returns the smaller one.
    pub fn sqrt(&self, a: u64) -> Option<u64> {
        let r = tonelli_shanks(a % self.p, self.p)?;
        Some(r.min(self.p - r))
    }
}

/// An element of F_p, tagged with its modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldElem {
    value: u64,
    modulus: u64,
}

impl FieldElem {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn same_field(&self, other: &FieldElem) -> Result<u64> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch(self.modulus, other.modulus));
        }
        Ok(self.modulus)
    }

    pub fn add(&self, other: &FieldElem) -> Result<FieldElem> {
        let p = self.same_field(other)?;
        Ok(FieldElem {
            value: add_mod(self.value, other.value, p),
            modulus: p,
        })
    }

    pub fn sub(&self, other: &FieldElem) -> Result<FieldElem> {
        let p = self.same_field(other)?;
        Ok(FieldElem {
            value: sub_mod(self.value, other.value, p),
            modulus: p,
        })
    }

    pub fn mul(&self, other: &FieldElem) -> Result<FieldElem> {
        let p = self.same_field(other)?;
        Ok(FieldElem {
            value: mul_mod(self.value, other.value, p),
            modulus: p,
        })
    }

    pub fn neg(&self) -> FieldElem {
        FieldElem {
            value: neg_mod(self.value, self.modulus),
            modulus: self.modulus,
        }
    }

    /// Multiplicative inverse; fails on zero.
    pub fn inv(&self) -> Result<FieldElem> {
        if self.value == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(FieldElem {
            value: inv_mod(self.value, self.modulus),
            modulus: self.modulus,
        })
    }
}

// Raw helpers on canonical residues. Used by the polynomial layer, which
// checks moduli once per operation instead of once per coefficient.

#[inline]
pub(crate) fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub(crate) fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    (a as u128 * b as u128 % p as u128) as u64
}

#[inline]
pub(crate) fn neg_mod(a: u64, p: u64) -> u64 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue via Fermat.
pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller-Rabin, valid for all u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &q in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Tonelli-Shanks square root mod an odd prime. Returns None for non-residues.
fn tonelli_shanks(a: u64, p: u64) -> Option<u64> {
    if a == 0 {
        return Some(0);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(pow_mod(a, (p + 1) / 4, p));
    }
    // Write p - 1 = q * 2^s with q odd.
    let mut q = p - 1;
    let mut s = 0u32;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    // Find a quadratic non-residue z.
    let mut z = 2u64;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0u32;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
            if i == m {
                return None;
            }
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}
