//! Finite fields of odd characteristic, built as towers `F_p ⊂ F_p[x]/(m) ⊂ ...`.
//!
//! Elements are `u32` indices: the base-`p` digits of an index are the
//! coordinates over `F_p` of the tower basis, so addition is digitwise and
//! multiplication goes through exp/log tables keyed to the least primitive
//! element.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use super::poly::Poly;
use crate::error::{domain, Result};

/// Largest field size for which tables are built.
pub const MAX_FIELD_SIZE: u64 = 1 << 22;

pub struct FiniteField {
    p: u32,
    base: Option<Arc<FiniteField>>,
    modulus: Poly,
    degree: u32,
    abs_degree: u32,
    q: u32,
    var: String,
    exp: Vec<u32>,
    log: Vec<u32>,
    residue_cache: Mutex<HashMap<(Vec<u32>, String), Arc<FiniteField>>>,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl FiniteField {
    pub fn prime(p: u32) -> Result<Arc<Self>> {
        if p == 2 {
            return domain("characteristic 2 is not supported");
        }
        if !is_prime(p as u64) {
            return domain(format!("{p} is not prime"));
        }
        let mut f = FiniteField {
            p,
            base: None,
            modulus: Poly::zero(),
            degree: 1,
            abs_degree: 1,
            q: p,
            var: String::new(),
            exp: Vec::new(),
            log: Vec::new(),
            residue_cache: Mutex::new(HashMap::new()),
        };
        f.build_tables(|a, b| ((a as u64 * b as u64) % p as u64) as u32);
        Ok(Arc::new(f))
    }

    /// `base[var]/(modulus)`; the modulus must be monic and irreducible over `base`.
    pub fn extension(base: &Arc<Self>, modulus: Poly, var: &str) -> Result<Arc<Self>> {
        if modulus.is_zero() || modulus.lead() != 1 {
            return domain("modulus must be monic");
        }
        let d = modulus.degree() as u32;
        if d == 0 {
            return domain("modulus must have positive degree");
        }
        if !modulus.is_irreducible(base) {
            return domain("modulus is reducible");
        }
        let size = (base.q as u64).checked_pow(d).unwrap_or(u64::MAX);
        if size > MAX_FIELD_SIZE {
            return domain(format!("field of size {size} exceeds the supported maximum"));
        }
        let mut f = FiniteField {
            p: base.p,
            base: Some(base.clone()),
            modulus: modulus.clone(),
            degree: d,
            abs_degree: d * base.abs_degree,
            q: size as u32,
            var: var.to_string(),
            exp: Vec::new(),
            log: Vec::new(),
            residue_cache: Mutex::new(HashMap::new()),
        };
        let b = base.clone();
        let m = modulus;
        let bq = base.q;
        f.build_tables(|x, y| {
            let px = Poly::from_index(x, bq, d);
            let py = Poly::from_index(y, bq, d);
            px.mul(&py, &b).rem(&m, &b).to_index(bq)
        });
        Ok(f.into())
    }

    fn build_tables(&mut self, slow_mul: impl Fn(u32, u32) -> u32) {
        let order = (self.q - 1) as u64;
        let factors = prime_factors(order);
        let slow_pow = |mut a: u32, mut e: u64| {
            let mut r = 1u32;
            while e > 0 {
                if e & 1 == 1 {
                    r = slow_mul(r, a);
                }
                a = slow_mul(a, a);
                e >>= 1;
            }
            r
        };
        let gen = (1..self.q)
            .find(|&g| factors.iter().all(|&l| slow_pow(g, order / l) != 1))
            .expect("multiplicative group is cyclic");
        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![0u32; self.q as usize];
        let mut x = 1u32;
        for i in 0..order as u32 {
            exp.push(x);
            log[x as usize] = i;
            x = slow_mul(x, gen);
        }
        self.exp = exp;
        self.log = log;
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }
    pub fn size(&self) -> u32 {
        self.q
    }
    /// Degree over the immediate base (1 for a prime field).
    pub fn degree(&self) -> u32 {
        self.degree
    }
    pub fn abs_degree(&self) -> u32 {
        self.abs_degree
    }
    pub fn base(&self) -> Option<&Arc<FiniteField>> {
        self.base.as_ref()
    }
    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }
    pub fn var(&self) -> &str {
        &self.var
    }
    pub fn is_prime_field(&self) -> bool {
        self.base.is_none()
    }

    /// The least primitive element (by index).
    pub fn generator(&self) -> u32 {
        self.exp[1 % self.exp.len()]
    }

    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.base.is_none() {
            let s = a + b;
            return if s >= self.p { s - self.p } else { s };
        }
        let p = self.p;
        let (mut a, mut b) = (a, b);
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.abs_degree {
            let s = (a % p + b % p) % p;
            out += s * place;
            a /= p;
            b /= p;
            place = place.wrapping_mul(p);
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        let p = self.p;
        let mut a = a;
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.abs_degree {
            let d = a % p;
            out += ((p - d) % p) * place;
            a /= p;
            place = place.wrapping_mul(p);
        }
        out
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.q - 1;
        let s = self.log[a as usize] + self.log[b as usize];
        self.exp[(if s >= n { s - n } else { s }) as usize]
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return domain("inverse of zero");
        }
        let n = self.q - 1;
        Ok(self.exp[((n - self.log[a as usize]) % n) as usize])
    }

    pub fn pow(&self, a: u32, e: i64) -> Result<u32> {
        if a == 0 {
            return if e > 0 {
                Ok(0)
            } else if e == 0 {
                Ok(1)
            } else {
                domain("inverse of zero")
            };
        }
        let n = (self.q - 1) as i64;
        let l = (self.log[a as usize] as i64 * e.rem_euclid(n)).rem_euclid(n);
        Ok(self.exp[l as usize])
    }

    /// Discrete logarithm with respect to [`FiniteField::generator`].
    pub fn dlog(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return domain("logarithm of zero");
        }
        Ok(self.log[a as usize])
    }

    pub fn is_square(&self, a: u32) -> Result<bool> {
        Ok(self.dlog(a)? % 2 == 0)
    }

    /// The least nonsquare (by index).
    pub fn least_nonsquare(&self) -> u32 {
        (1..self.q).find(|&a| self.log[a as usize] % 2 == 1).expect("odd q has nonsquares")
    }

    /// Coordinates over the immediate base, low degree first.
    pub fn coeffs(&self, a: u32) -> Vec<u32> {
        match &self.base {
            None => vec![a],
            Some(b) => Poly::index_digits(a, b.q, self.degree),
        }
    }

    pub fn from_coeffs(&self, c: &[u32]) -> u32 {
        match &self.base {
            None => c.first().copied().unwrap_or(0),
            Some(b) => {
                let mut out = 0u32;
                for &x in c.iter().rev() {
                    out = out * b.q + x;
                }
                out
            }
        }
    }

    /// Whether `a` lies in the prime subfield.
    pub fn in_prime_field(&self, a: u32) -> bool {
        a < self.p
    }

    /// Residue field `self[s]/(p)`; linear `p` gives `self` back.
    pub fn residue_field(self: &Arc<Self>, p: &Poly, var: &str) -> Result<Arc<FiniteField>> {
        if p.is_zero() || p.lead() != 1 {
            return domain("residue field needs a monic polynomial");
        }
        if p.degree() == 1 {
            return Ok(self.clone());
        }
        let key = (p.coeffs().to_vec(), var.to_string());
        if let Some(f) = self.residue_cache.lock().expect("cache lock").get(&key) {
            return Ok(f.clone());
        }
        let f = FiniteField::extension(self, p.clone(), var)?;
        self.residue_cache.lock().expect("cache lock").insert(key, f.clone());
        Ok(f)
    }

    /// Structural equality (same tower and moduli).
    pub fn same(&self, other: &FiniteField) -> bool {
        if std::ptr::eq(self, other) {
            return true;
        }
        self.p == other.p
            && self.modulus == other.modulus
            && match (&self.base, &other.base) {
                (None, None) => true,
                (Some(a), Some(b)) => a.same(b),
                _ => false,
            }
    }

    /// Embeds an element of `sub`, which must occur in this field's tower.
    pub fn embed_from(&self, sub: &FiniteField, a: u32) -> Result<u32> {
        if self.same(sub) {
            return Ok(a);
        }
        match &self.base {
            Some(b) => Ok(self.from_coeffs(&[b.embed_from(sub, a)?])),
            None => domain("field is not a subfield of this tower"),
        }
    }

    pub fn fmt_elem(&self, a: u32) -> String {
        if self.p - 1 == a {
            return "-1".to_string();
        }
        self.fmt_plain(a)
    }

    /// Formats with nonnegative prime-field digits.
    pub fn fmt_plain(&self, a: u32) -> String {
        match &self.base {
            None => a.to_string(),
            Some(b) => {
                if a < b.q {
                    return b.fmt_plain(a);
                }
                let c = self.coeffs(a);
                Poly::from_coeffs(c).fmt_with(b, &self.var)
            }
        }
    }

    /// Short descriptor such as `F5` or `F9=F3[x]/(x^2+1)`.
    pub fn descriptor(&self) -> String {
        match &self.base {
            None => format!("F{}", self.p),
            Some(b) => format!(
                "F{}={}[{}]/({})",
                self.q,
                b.descriptor(),
                self.var,
                self.modulus.fmt_with(b, &self.var)
            ),
        }
    }
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.descriptor())
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl Eq for FiniteField {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_basics() {
        let f = FiniteField::prime(7).unwrap();
        assert_eq!(f.generator(), 3);
        assert_eq!(f.mul(3, 5), 1);
        assert_eq!(f.inv(3).unwrap(), 5);
        assert!(f.is_square(2).unwrap());
        assert!(!f.is_square(6).unwrap());
        assert_eq!(f.least_nonsquare(), 3);
        assert!(FiniteField::prime(2).is_err());
        assert!(FiniteField::prime(9).is_err());
    }

    #[test]
    fn f9_arithmetic() {
        let f3 = FiniteField::prime(3).unwrap();
        let f9 = FiniteField::extension(&f3, Poly::from_coeffs(vec![1, 0, 1]), "x").unwrap();
        assert_eq!(f9.size(), 9);
        // x is index 3; x^2 = -1
        assert_eq!(f9.mul(3, 3), 2);
        assert_eq!(f9.fmt_elem(3), "x");
        assert_eq!(f9.fmt_elem(2), "-1");
        assert_eq!(f9.fmt_elem(3 + 1), "x+1");
        assert_eq!(f9.fmt_elem(2 * 3 + 2), "2*x+2");
        for a in 1..9 {
            assert_eq!(f9.mul(a, f9.inv(a).unwrap()), 1);
        }
        // -1 is a square in F9
        assert!(f9.is_square(2).unwrap());
        assert_eq!(f9.descriptor(), "F9=F3[x]/(x^2+1)");
    }

    #[test]
    fn reducible_modulus_rejected() {
        let f3 = FiniteField::prime(3).unwrap();
        assert!(FiniteField::extension(&f3, Poly::from_coeffs(vec![2, 0, 1]), "x").is_err());
    }
}
