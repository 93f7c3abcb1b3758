//! Dense univariate polynomials over a [`FiniteField`], with factorization
//! by square-free decomposition, distinct-degree splitting and seeded
//! equal-degree (Cantor-Zassenhaus) splitting.

use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::finite::FiniteField;
use crate::error::{domain, Result};

/// Coefficients low degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    c: Vec<u32>,
}

/// Orders by degree, then coefficients from the leading one down.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.c
            .len()
            .cmp(&other.c.len())
            .then_with(|| self.c.iter().rev().cmp(other.c.iter().rev()))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: u32,
    pub factors: Vec<(Poly, u32)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }
    pub fn one() -> Self {
        Poly { c: vec![1] }
    }
    pub fn constant(a: u32) -> Self {
        Poly::from_coeffs(vec![a])
    }
    /// The monomial `t`.
    pub fn t() -> Self {
        Poly { c: vec![0, 1] }
    }
    /// `t - c`.
    pub fn linear(c: u32, f: &FiniteField) -> Self {
        Poly { c: vec![f.neg(c), 1] }.trimmed()
    }

    pub fn from_coeffs(c: Vec<u32>) -> Self {
        Poly { c }.trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.c.last() == Some(&0) {
            self.c.pop();
        }
        self
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.c
    }
    pub fn coeff(&self, i: usize) -> u32 {
        self.c.get(i).copied().unwrap_or(0)
    }
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    pub fn is_one(&self) -> bool {
        self.c == [1]
    }
    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }
    /// Degree; the zero polynomial has degree -1.
    pub fn degree(&self) -> i64 {
        self.c.len() as i64 - 1
    }
    pub fn lead(&self) -> u32 {
        self.c.last().copied().unwrap_or(0)
    }

    pub(crate) fn index_digits(mut a: u32, q: u32, n: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(n as usize);
        for _ in 0..n {
            out.push(a % q);
            a /= q;
        }
        out
    }

    pub(crate) fn from_index(a: u32, q: u32, n: u32) -> Self {
        Poly::from_coeffs(Poly::index_digits(a, q, n))
    }

    pub(crate) fn to_index(&self, q: u32) -> u32 {
        self.c.iter().rev().fold(0, |acc, &x| acc * q + x)
    }

    pub fn add(&self, o: &Poly, f: &FiniteField) -> Poly {
        let n = self.c.len().max(o.c.len());
        Poly::from_coeffs((0..n).map(|i| f.add(self.coeff(i), o.coeff(i))).collect())
    }

    pub fn neg(&self, f: &FiniteField) -> Poly {
        Poly { c: self.c.iter().map(|&a| f.neg(a)).collect() }
    }

    pub fn sub(&self, o: &Poly, f: &FiniteField) -> Poly {
        self.add(&o.neg(f), f)
    }

    pub fn scale(&self, a: u32, f: &FiniteField) -> Poly {
        Poly::from_coeffs(self.c.iter().map(|&x| f.mul(a, x)).collect())
    }

    pub fn mul(&self, o: &Poly, f: &FiniteField) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![0u32; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                c[i + j] = f.add(c[i + j], f.mul(a, b));
            }
        }
        Poly::from_coeffs(c)
    }

    pub fn pow(&self, mut e: u64, f: &FiniteField) -> Poly {
        let mut base = self.clone();
        let mut r = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&base, f);
            }
            base = base.mul(&base, f);
            e >>= 1;
        }
        r
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn divrem(&self, d: &Poly, f: &FiniteField) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.c.len() < d.c.len() {
            return (Poly::zero(), self.clone());
        }
        let inv = f.inv(d.lead()).expect("nonzero lead");
        let mut r = self.c.clone();
        let dl = d.c.len();
        let mut q = vec![0u32; r.len() - dl + 1];
        for i in (0..q.len()).rev() {
            let coef = f.mul(r[i + dl - 1], inv);
            q[i] = coef;
            if coef != 0 {
                for j in 0..dl {
                    r[i + j] = f.sub(r[i + j], f.mul(coef, d.c[j]));
                }
            }
        }
        (Poly::from_coeffs(q), Poly::from_coeffs(r))
    }

    pub fn rem(&self, d: &Poly, f: &FiniteField) -> Poly {
        self.divrem(d, f).1
    }

    pub fn div_exact(&self, d: &Poly, f: &FiniteField) -> Poly {
        self.divrem(d, f).0
    }

    pub fn monic(&self, f: &FiniteField) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(f.inv(self.lead()).expect("nonzero lead"), f)
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, o: &Poly, f: &FiniteField) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b, f);
            a = b;
            b = r;
        }
        a.monic(f)
    }

    pub fn eval(&self, x: u32, f: &FiniteField) -> u32 {
        self.c.iter().rev().fold(0, |acc, &a| f.add(f.mul(acc, x), a))
    }

    pub fn derivative(&self, f: &FiniteField) -> Poly {
        Poly::from_coeffs(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &a)| f.mul(f.from_int(i as i64), a))
                .collect(),
        )
    }

    pub fn powmod(&self, mut e: u64, m: &Poly, f: &FiniteField) -> Poly {
        let mut base = self.rem(m, f);
        let mut r = Poly::one().rem(m, f);
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&base, f).rem(m, f);
            }
            base = base.mul(&base, f).rem(m, f);
            e >>= 1;
        }
        r
    }

    /// Multiplicity of `p` in `self` and the cofactor.
    pub fn valuation(&self, p: &Poly, f: &FiniteField) -> (u32, Poly) {
        assert!(!self.is_zero(), "valuation of zero");
        let mut n = 0;
        let mut g = self.clone();
        loop {
            let (q, r) = g.divrem(p, f);
            if !r.is_zero() {
                return (n, g);
            }
            g = q;
            n += 1;
        }
    }

    pub fn is_irreducible(&self, f: &FiniteField) -> bool {
        let n = self.degree();
        if n < 1 {
            return false;
        }
        if n == 1 {
            return true;
        }
        let g = self.monic(f);
        if !g.gcd(&g.derivative(f), f).is_one() {
            return false;
        }
        let q = f.size() as u64;
        let t = Poly::t();
        let mut h = t.clone();
        for _ in 1..=n / 2 {
            h = h.powmod(q, &g, f);
            if !g.gcd(&h.sub(&t, f), f).is_one() {
                return false;
            }
        }
        true
    }

    fn pth_root(&self, f: &FiniteField) -> Poly {
        let p = f.characteristic() as usize;
        let e = (f.size() / f.characteristic()) as i64;
        Poly::from_coeffs(
            self.c
                .iter()
                .step_by(p)
                .map(|&a| f.pow(a, e).expect("nonzero power"))
                .collect(),
        )
    }

    /// Square-free decomposition of a monic polynomial.
    fn squarefree(&self, f: &FiniteField) -> Vec<(Poly, u32)> {
        let mut out = Vec::new();
        if self.degree() < 1 {
            return out;
        }
        let p = f.characteristic();
        let d = self.derivative(f);
        if d.is_zero() {
            for (g, m) in self.pth_root(f).squarefree(f) {
                out.push((g, m * p));
            }
            return out;
        }
        let mut c = self.gcd(&d, f);
        let mut w = self.div_exact(&c, f);
        let mut i = 1;
        while !w.is_one() {
            let y = w.gcd(&c, f);
            let z = w.div_exact(&y, f);
            if !z.is_one() {
                out.push((z, i));
            }
            i += 1;
            w = y;
            c = c.div_exact(&w, f);
        }
        if !c.is_one() {
            for (g, m) in c.pth_root(f).squarefree(f) {
                out.push((g, m * p));
            }
        }
        out
    }

    /// Distinct-degree splitting of a monic square-free polynomial.
    fn distinct_degree(&self, f: &FiniteField) -> Vec<(Poly, u32)> {
        let q = f.size() as u64;
        let t = Poly::t();
        let mut out = Vec::new();
        let mut g = self.clone();
        let mut h = t.clone();
        let mut d = 1u32;
        while g.degree() >= 2 * d as i64 {
            h = h.powmod(q, &g, f);
            let k = g.gcd(&h.sub(&t, f), f);
            if !k.is_one() {
                g = g.div_exact(&k, f);
                h = h.rem(&g, f);
                out.push((k, d));
            }
            d += 1;
        }
        if g.degree() > 0 {
            let dg = g.degree() as u32;
            out.push((g, dg));
        }
        out
    }

    /// Splits a monic product of distinct irreducibles of degree `d`.
    fn equal_degree(&self, d: u32, f: &FiniteField, rng: &mut ChaCha8Rng) -> Vec<Poly> {
        let n = self.degree() as u32;
        if n == d {
            return vec![self.clone()];
        }
        let q = f.size() as u64;
        let half = (q - 1) / 2;
        loop {
            let a = Poly::from_coeffs((0..n).map(|_| rng.gen_range(0..f.size())).collect());
            if a.degree() < 1 {
                continue;
            }
            // a^((q^d - 1)/2) = (prod_{i<d} a^(q^i))^((q-1)/2)
            let mut frob = a.rem(self, f);
            let mut norm = frob.clone();
            for _ in 1..d {
                frob = frob.powmod(q, self, f);
                norm = norm.mul(&frob, f).rem(self, f);
            }
            let b = norm.powmod(half, self, f).sub(&Poly::one(), f);
            let u = self.gcd(&b, f);
            if u.degree() > 0 && u.degree() < n as i64 {
                let v = self.div_exact(&u, f);
                let mut out = u.equal_degree(d, f, rng);
                out.extend(v.equal_degree(d, f, rng));
                return out;
            }
        }
    }

    /// Factors into a leading unit times monic irreducible powers, sorted by
    /// (degree, coefficients). The seed drives equal-degree splitting only.
    pub fn factor_seeded(&self, f: &FiniteField, seed: u64) -> Result<Factorization> {
        if self.is_zero() {
            return domain("cannot factor the zero polynomial");
        }
        let unit = self.lead();
        let g = self.monic(f);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut factors = Vec::new();
        for (sf, m) in g.squarefree(f) {
            for (part, d) in sf.distinct_degree(f) {
                for irr in part.equal_degree(d, f, &mut rng) {
                    factors.push((irr, m));
                }
            }
        }
        factors.sort();
        let mut merged: Vec<(Poly, u32)> = Vec::new();
        for (p, m) in factors {
            match merged.last_mut() {
                Some((q, k)) if *q == p => *k += m,
                _ => merged.push((p, m)),
            }
        }
        Ok(Factorization { unit, factors: merged })
    }

    pub fn factor(&self, f: &FiniteField) -> Result<Factorization> {
        self.factor_seeded(f, 0)
    }

    /// Formats in the variable `var`, coefficients with nonnegative digits.
    pub fn fmt_with(&self, f: &FiniteField, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for i in (0..self.c.len()).rev() {
            let a = self.c[i];
            if a == 0 {
                continue;
            }
            let cs = f.fmt_plain(a);
            let compound = cs.contains('+') || cs.contains('*') || cs.contains('^');
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let term = if i == 0 {
                cs
            } else if a == 1 {
                mono
            } else if compound {
                format!("({cs})*{mono}")
            } else {
                format!("{cs}*{mono}")
            };
            parts.push(term);
        }
        parts.join("+")
    }
}

impl Factorization {
    pub fn product(&self, f: &FiniteField) -> Poly {
        self.factors
            .iter()
            .fold(Poly::constant(self.unit), |acc, (p, m)| acc.mul(&p.pow(*m as u64, f), f))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    fn fp(p: u32) -> Arc<FiniteField> {
        FiniteField::prime(p).unwrap()
    }

    #[test]
    fn t3_minus_t_splits_into_linears() {
        let f = fp(3);
        let g = Poly::from_coeffs(vec![0, 2, 0, 1]);
        let fac = g.factor(&f).unwrap();
        assert_eq!(fac.unit, 1);
        let expect: Vec<(Poly, u32)> = vec![
            (Poly::from_coeffs(vec![0, 1]), 1),
            (Poly::from_coeffs(vec![1, 1]), 1),
            (Poly::from_coeffs(vec![2, 1]), 1),
        ];
        assert_eq!(fac.factors, expect);
    }

    #[test]
    fn t2_plus_1_irreducible_over_f3() {
        let f = fp(3);
        let g = Poly::from_coeffs(vec![1, 0, 1]);
        // trial division by every monic linear
        for c in 0..3 {
            assert!(!g.rem(&Poly::linear(c, &f), &f).is_zero());
        }
        let fac = g.factor(&f).unwrap();
        assert_eq!(fac.factors, vec![(g.clone(), 1)]);
    }

    #[test]
    fn difference_of_squares_over_f5() {
        let f = fp(5);
        let g = Poly::from_coeffs(vec![3, 0, 2]); // 2t^2 - 2
        let fac = g.factor(&f).unwrap();
        assert_eq!(fac.unit, 2);
        assert_eq!(
            fac.factors,
            vec![(Poly::from_coeffs(vec![1, 1]), 1), (Poly::from_coeffs(vec![4, 1]), 1)]
        );
    }

    #[test]
    fn repeated_and_inseparable_factors() {
        let f = fp(3);
        // (t+1)^3 (t^2+1)^2 t
        let a = Poly::from_coeffs(vec![1, 1]).pow(3, &f);
        let b = Poly::from_coeffs(vec![1, 0, 1]).pow(2, &f);
        let g = a.mul(&b, &f).mul(&Poly::t(), &f);
        let fac = g.factor(&f).unwrap();
        assert_eq!(fac.product(&f), g);
        assert_eq!(
            fac.factors,
            vec![
                (Poly::t(), 1),
                (Poly::from_coeffs(vec![1, 1]), 3),
                (Poly::from_coeffs(vec![1, 0, 1]), 2)
            ]
        );
    }

    #[test]
    fn zero_polynomial_rejected() {
        assert!(Poly::zero().factor(&fp(5)).is_err());
    }

    #[test]
    fn formatting() {
        let f = fp(5);
        assert_eq!(Poly::from_coeffs(vec![1, 3, 1]).fmt_with(&f, "t"), "t^2+3*t+1");
        assert_eq!(Poly::from_coeffs(vec![4, 1]).fmt_with(&f, "t"), "t+4");
    }
}
