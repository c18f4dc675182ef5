//! The polynomial ring F_p[x], with the exact truncated square root used by
//! the real quadratic model.
//!
//! Polynomials are stored lowest degree first with no trailing zeros, so
//! equality is structural. The zero polynomial is the empty coefficient list
//! and its degree is `None` (the -infinity sentinel).

use crate::error::{Error, Result};
use crate::field::{self, PrimeField};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    p: u64,
    coeffs: Vec<u64>,
}

impl Poly {
    pub fn zero(field: &PrimeField) -> Poly {
        Poly {
            p: field.modulus(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: &PrimeField) -> Poly {
        Poly {
            p: field.modulus(),
            coeffs: vec![1],
        }
    }

    /// Builds a polynomial from coefficients, lowest degree first.
    /// Coefficients are reduced mod p and trailing zeros stripped.
    pub fn from_coeffs(field: &PrimeField, coeffs: &[u64]) -> Poly {
        let p = field.modulus();
        let mut c: Vec<u64> = coeffs.iter().map(|&v| v % p).collect();
        while c.last() == Some(&0) {
            c.pop();
        }
        Poly { p, coeffs: c }
    }

    /// The monomial c * x^k.
    pub fn monomial(field: &PrimeField, c: u64, k: usize) -> Poly {
        let p = field.modulus();
        let c = c % p;
        if c == 0 {
            return Poly::zero(field);
        }
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c;
        Poly { p, coeffs }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Coefficients, lowest degree first (empty for zero).
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> u64 {
        *self.coeffs.last().unwrap_or(&0)
    }

    pub fn coeff(&self, k: usize) -> u64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    fn assert_same_field(&self, other: &Poly) {
        assert_eq!(
            self.p, other.p,
            "polynomials over different prime fields ({} vs {})",
            self.p, other.p
        );
    }

    fn trim(mut coeffs: Vec<u64>, p: u64) -> Poly {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { p, coeffs }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.assert_same_field(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0u64; n];
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = field::add_mod(self.coeff(i), other.coeff(i), self.p);
        }
        Poly::trim(out, self.p)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.assert_same_field(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0u64; n];
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = field::sub_mod(self.coeff(i), other.coeff(i), self.p);
        }
        Poly::trim(out, self.p)
    }

    pub fn neg(&self) -> Poly {
        let out = self
            .coeffs
            .iter()
            .map(|&c| field::neg_mod(c, self.p))
            .collect();
        Poly {
            p: self.p,
            coeffs: out,
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.assert_same_field(other);
        if self.is_zero() || other.is_zero() {
            return Poly {
                p: self.p,
                coeffs: Vec::new(),
            };
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = field::add_mod(out[i + j], field::mul_mod(a, b, self.p), self.p);
            }
        }
        Poly::trim(out, self.p)
    }

    pub fn mul_scalar(&self, c: u64) -> Poly {
        let c = c % self.p;
        if c == 0 {
            return Poly {
                p: self.p,
                coeffs: Vec::new(),
            };
        }
        let out = self
            .coeffs
            .iter()
            .map(|&a| field::mul_mod(a, c, self.p))
            .collect();
        Poly {
            p: self.p,
            coeffs: out,
        }
    }

    /// Long division: a = q*b + r with deg r < deg b.
    pub fn divmod(&self, b: &Poly) -> Result<(Poly, Poly)> {
        self.assert_same_field(b);
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.degree() < b.degree() {
            return Ok((Poly::trim(Vec::new(), self.p), self.clone()));
        }
        let db = b.coeffs.len() - 1;
        let lead_inv = field::inv_mod(b.leading_coeff(), self.p);
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; rem.len() - db];
        for i in (db..rem.len()).rev() {
            let c = rem[i];
            if c == 0 {
                continue;
            }
            let q = field::mul_mod(c, lead_inv, self.p);
            quot[i - db] = q;
            for (j, &bc) in b.coeffs.iter().enumerate() {
                rem[i - db + j] =
                    field::sub_mod(rem[i - db + j], field::mul_mod(q, bc, self.p), self.p);
            }
        }
        Ok((Poly::trim(quot, self.p), Poly::trim(rem, self.p)))
    }

    pub fn rem(&self, b: &Poly) -> Result<Poly> {
        Ok(self.divmod(b)?.1)
    }

    /// Exact division; panics if b does not divide self. Internal use only.
    pub(crate) fn div_exact(&self, b: &Poly) -> Poly {
        let (q, r) = self.divmod(b).expect("division by zero in div_exact");
        debug_assert!(r.is_zero(), "div_exact with nonzero remainder");
        q
    }

    /// Monic greatest common divisor. Fails if both inputs are zero.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.assert_same_field(other);
        if self.is_zero() && other.is_zero() {
            return Err(Error::InvalidInput(
                "gcd of two zero polynomials".to_string(),
            ));
        }
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Extended Euclid: returns (g, u, v) with u*self + v*other = g, g monic.
    pub fn xgcd(&self, other: &Poly) -> Result<(Poly, Poly, Poly)> {
        self.assert_same_field(other);
        if self.is_zero() && other.is_zero() {
            return Err(Error::InvalidInput(
                "gcd of two zero polynomials".to_string(),
            ));
        }
        let p = self.p;
        let fld = Poly {
            p,
            coeffs: Vec::new(),
        };
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (
            Poly {
                p,
                coeffs: vec![1],
            },
            fld.clone(),
        );
        let (mut t0, mut t1) = (
            fld,
            Poly {
                p,
                coeffs: vec![1],
            },
        );
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1)?;
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        // Normalize to a monic gcd.
        let lead = r0.leading_coeff();
        let inv = field::inv_mod(lead, p);
        Ok((r0.mul_scalar(inv), s0.mul_scalar(inv), t0.mul_scalar(inv)))
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let lead = self.leading_coeff();
        if lead == 1 {
            return self.clone();
        }
        self.mul_scalar(field::inv_mod(lead, self.p))
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly {
                p: self.p,
                coeffs: Vec::new(),
            };
        }
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| field::mul_mod(c, (i as u64) % self.p, self.p))
            .collect();
        Poly::trim(out, self.p)
    }

    pub fn eval(&self, x: u64) -> u64 {
        let x = x % self.p;
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = field::add_mod(field::mul_mod(acc, x, self.p), c, self.p);
        }
        acc
    }

    /// The polynomial part d of the Laurent series square root of D:
    /// deg d = (deg D)/2 and deg(D - d^2) < deg d.
    ///
    /// Requires deg D even and the leading coefficient a square in F_p.
    /// Coefficients are recovered top-down by matching the coefficients of
    /// x^(2m) .. x^m in d^2 against D, solving each via division by 2*lc(d).
    pub fn floor_sqrt(&self, field: &PrimeField) -> Result<Poly> {
        assert_eq!(self.p, field.modulus());
        let deg = match self.degree() {
            Some(d) => d,
            None => {
                return Err(Error::NotRealModel(
                    "zero polynomial has no truncated square root".to_string(),
                ))
            }
        };
        if deg % 2 != 0 {
            return Err(Error::NotRealModel(format!(
                "degree {deg} is odd; the model needs even degree"
            )));
        }
        let m = deg / 2;
        let lead_root = field.sqrt(self.leading_coeff()).ok_or_else(|| {
            Error::NotRealModel(format!(
                "leading coefficient {} is not a square mod {}",
                self.leading_coeff(),
                self.p
            ))
        })?;
        if lead_root == 0 {
            // Cannot happen for a canonical nonzero leading coefficient.
            return Err(Error::NotRealModel("zero leading coefficient".to_string()));
        }
        let p = self.p;
        let mut d = vec![0u64; m + 1];
        d[m] = lead_root;
        let inv_2lead = field::inv_mod(field::mul_mod(2 % p, lead_root, p), p);
        for k in 1..=m {
            // Known part of the x^(2m-k) coefficient of d^2: ordered pairs
            // i + j = 2m - k with both indices above m - k.
            let mut s = 0u64;
            for i in (m - k + 1)..=m {
                let j = 2 * m - k - i;
                if j > m || j <= m - k {
                    continue;
                }
                s = field::add_mod(s, field::mul_mod(d[i], d[j], p), p);
            }
            let target = field::sub_mod(self.coeff(2 * m - k), s, p);
            d[m - k] = field::mul_mod(target, inv_2lead, p);
        }
        Ok(Poly::trim(d, p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn poly(p: u64, coeffs: &[u64]) -> Poly {
        Poly::from_coeffs(&f(p), coeffs)
    }

    #[test]
    fn divmod_schoolbook_example() {
        // (x^3 + 2x + 1) / (x + 1) over F_5
        let a = poly(5, &[1, 2, 0, 1]);
        let b = poly(5, &[1, 1]);
        let (q, r) = a.divmod(&b).unwrap();
        assert_eq!(q, poly(5, &[3, 4, 1]));
        assert_eq!(r, poly(5, &[3]));
    }

    #[test]
    fn divmod_self_and_zero() {
        let a = poly(5, &[1, 2, 0, 1]);
        let (q, r) = a.divmod(&a).unwrap();
        assert_eq!(q, poly(5, &[1]));
        assert!(r.is_zero());
        let z = Poly::zero(&f(5));
        let (q, r) = z.divmod(&a).unwrap();
        assert!(q.is_zero());
        assert!(r.is_zero());
        assert_eq!(a.divmod(&z), Err(Error::DivisionByZero));
    }

    #[test]
    fn gcd_examples() {
        // gcd(x^2 - 1, x - 1) over F_5, monic: x + 4
        let a = poly(5, &[4, 0, 1]);
        let b = poly(5, &[4, 1]);
        assert_eq!(a.gcd(&b).unwrap(), poly(5, &[4, 1]));
        // gcd(a, 0) = monic(a)
        let z = Poly::zero(&f(5));
        let c = poly(5, &[2, 4]);
        assert_eq!(c.gcd(&z).unwrap(), c.monic());
        // x = -2 is a root of x^2 + 1 over F_5, so x + 2 divides it
        let a = poly(5, &[1, 0, 1]);
        let b = poly(5, &[2, 1]);
        assert_eq!(a.gcd(&b).unwrap(), poly(5, &[2, 1]));
        assert!(z.gcd(&z).is_err());
    }

    #[test]
    fn floor_sqrt_examples() {
        // x^4 + x + 1 over F_5: d = x^2, remainder x + 1 of degree 1 < 2
        let d = poly(5, &[1, 1, 0, 0, 1]).floor_sqrt(&f(5)).unwrap();
        assert_eq!(d, poly(5, &[0, 0, 1]));
        // perfect square
        let d = poly(5, &[0, 0, 1]).floor_sqrt(&f(5)).unwrap();
        assert_eq!(d, poly(5, &[0, 1]));
        // 4x^2 + x: the truncated root is 2x + 4, since
        // (2x)^2 leaves remainder x of degree 1, not < 1, while
        // (2x + 4)^2 = 4x^2 + x + 1 leaves remainder -1.
        let dd = poly(5, &[0, 1, 4]);
        let d = dd.floor_sqrt(&f(5)).unwrap();
        assert_eq!(d, poly(5, &[4, 2]));
        let r = dd.sub(&d.mul(&d));
        assert!(r.degree() < d.degree());
    }

    #[test]
    fn floor_sqrt_rejects_bad_models() {
        assert!(matches!(
            poly(5, &[1, 0, 0, 1]).floor_sqrt(&f(5)),
            Err(Error::NotRealModel(_))
        ));
        // 2 is not a square mod 5
        assert!(matches!(
            poly(5, &[0, 0, 2]).floor_sqrt(&f(5)),
            Err(Error::NotRealModel(_))
        ));
    }

    /// Every polynomial of degree <= 4 over F_3, as the spec's exhaustive
    /// divmod domain.
    fn all_polys_deg_le(p: u64, max_deg: usize) -> Vec<Poly> {
        let field = f(p);
        let n = max_deg + 1;
        let total = (p as usize).pow(n as u32);
        (0..total)
            .map(|mut idx| {
                let mut coeffs = vec![0u64; n];
                for c in coeffs.iter_mut() {
                    *c = (idx % p as usize) as u64;
                    idx /= p as usize;
                }
                Poly::from_coeffs(&field, &coeffs)
            })
            .collect()
    }

    #[test]
    fn divmod_exhaustive_deg4_f3() {
        let polys = all_polys_deg_le(3, 4);
        for a in &polys {
            for b in &polys {
                if b.is_zero() {
                    continue;
                }
                let (q, r) = a.divmod(b).unwrap();
                assert_eq!(&q.mul(b).add(&r), a);
                assert!(r.degree() < b.degree());
            }
        }
    }

    #[test]
    fn gcd_divides_both_exhaustive_small() {
        let polys = all_polys_deg_le(3, 3);
        for a in &polys {
            for b in &polys {
                if a.is_zero() && b.is_zero() {
                    continue;
                }
                let g = a.gcd(b).unwrap();
                assert!(a.rem(&g).unwrap().is_zero());
                assert!(b.rem(&g).unwrap().is_zero());
                // Bezout: any common divisor divides g.
                let (g2, u, v) = a.xgcd(b).unwrap();
                assert_eq!(g, g2);
                assert_eq!(u.mul(a).add(&v.mul(b)), g);
            }
        }
    }

    #[test]
    fn floor_sqrt_exhaustive_squarefree_quartics() {
        for p in [3u64, 5] {
            let field = f(p);
            let quartics = all_polys_deg_le(p, 4);
            for dd in quartics {
                if dd.degree() != Some(4) || !field.is_square(dd.leading_coeff()) {
                    continue;
                }
                let g = dd.gcd(&dd.derivative()).unwrap();
                if !g.is_constant() {
                    continue; // not squarefree
                }
                let d = dd.floor_sqrt(&field).unwrap();
                assert_eq!(d.degree(), Some(2));
                assert!(dd.sub(&d.mul(&d)).degree() < Some(2));
            }
        }
    }

    proptest! {
        #[test]
        fn divmod_invariant_random(
            a in proptest::collection::vec(0u64..13, 0..10),
            b in proptest::collection::vec(0u64..13, 1..8),
        ) {
            let field = f(13);
            let a = Poly::from_coeffs(&field, &a);
            let b = Poly::from_coeffs(&field, &b);
            prop_assume!(!b.is_zero());
            let (q, r) = a.divmod(&b).unwrap();
            prop_assert_eq!(q.mul(&b).add(&r), a);
            prop_assert!(r.degree() < b.degree());
        }

        #[test]
        fn mul_commutes_and_degree_adds(
            a in proptest::collection::vec(0u64..7, 0..8),
            b in proptest::collection::vec(0u64..7, 0..8),
        ) {
            let field = f(7);
            let a = Poly::from_coeffs(&field, &a);
            let b = Poly::from_coeffs(&field, &b);
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            if !a.is_zero() && !b.is_zero() {
                prop_assert_eq!(
                    a.mul(&b).degree().unwrap(),
                    a.degree().unwrap() + b.degree().unwrap()
                );
            }
        }
    }
}
