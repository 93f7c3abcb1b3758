//! Coefficient fields: finite fields (prime and towers), rational function
//! fields over them, and a formal real model whose elements are exact
//! rationals.

mod finite;
mod poly;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use finite::{FiniteField, MAX_FIELD_SIZE};
pub use poly::{Factorization, Poly};

use crate::error::{domain, Error, Result};

/// A reduced fraction `num/den` with `den` monic.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct RatFn {
    num: Poly,
    den: Poly,
}

impl RatFn {
    pub fn new(num: Poly, den: Poly, f: &FiniteField) -> Result<Self> {
        if den.is_zero() {
            return domain("zero denominator");
        }
        if num.is_zero() {
            return Ok(RatFn { num, den: Poly::one() });
        }
        let g = num.gcd(&den, f);
        let (n, d) = (num.div_exact(&g, f), den.div_exact(&g, f));
        let li = f.inv(d.lead())?;
        Ok(RatFn { num: n.scale(li, f), den: d.scale(li, f) })
    }

    pub fn poly(p: Poly) -> Self {
        RatFn { num: p, den: Poly::one() }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }
    pub fn den(&self) -> &Poly {
        &self.den
    }
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_one()
    }
}

/// A discrete valuation of `F_q(t)` trivial on `F_q`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Place {
    /// The `p`-adic valuation for a monic irreducible `p`.
    PAdic(Poly),
    /// `v(f/g) = deg g - deg f`, uniformizer `-1/t`.
    Infinity,
}

/// A supported coefficient field.
#[derive(Clone, Debug)]
pub enum Field {
    Finite(Arc<FiniteField>),
    RationalFunction(Arc<FiniteField>),
    Real,
}

/// A field element; its owning [`Field`] is carried by the surrounding value.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Elem {
    F(u32),
    R(RatFn),
    Q(BigRational),
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Field::Finite(a), Field::Finite(b)) => a.same(b),
            (Field::RationalFunction(a), Field::RationalFunction(b)) => a.same(b),
            (Field::Real, Field::Real) => true,
            _ => false,
        }
    }
}

impl Eq for Field {}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Finite(k) => f.write_str(&k.descriptor()),
            Field::RationalFunction(k) => write!(f, "{}(t)", k.descriptor()),
            Field::Real => f.write_str("R"),
        }
    }
}

fn fin(a: &Elem) -> u32 {
    match a {
        Elem::F(x) => *x,
        _ => panic!("expected a finite field element"),
    }
}

fn rat(a: &Elem) -> &RatFn {
    match a {
        Elem::R(x) => x,
        _ => panic!("expected a rational function"),
    }
}

fn real(a: &Elem) -> &BigRational {
    match a {
        Elem::Q(x) => x,
        _ => panic!("expected a rational number"),
    }
}

impl Field {
    pub fn prime(p: u32) -> Result<Field> {
        Ok(Field::Finite(FiniteField::prime(p)?))
    }

    /// `F_{p^k}` presented by the least monic irreducible of degree `k` over `F_p`.
    pub fn finite(p: u32, k: u32) -> Result<Field> {
        Ok(Field::Finite(default_extension(&FiniteField::prime(p)?, k, "x")?))
    }

    pub fn rational_function(base: &Field) -> Result<Field> {
        match base {
            Field::Finite(k) => Ok(Field::RationalFunction(k.clone())),
            _ => Err(Error::Unsupported("rational function fields need a finite base".into())),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Field::Finite(_))
    }

    pub fn finite_field(&self) -> Option<&Arc<FiniteField>> {
        match self {
            Field::Finite(k) => Some(k),
            _ => None,
        }
    }

    /// The constant field of `F_q(t)`, or the field itself.
    pub fn constants(&self) -> Field {
        match self {
            Field::RationalFunction(k) => Field::Finite(k.clone()),
            other => other.clone(),
        }
    }

    pub fn zero(&self) -> Elem {
        match self {
            Field::Finite(_) => Elem::F(0),
            Field::RationalFunction(_) => Elem::R(RatFn::poly(Poly::zero())),
            Field::Real => Elem::Q(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Elem {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> Elem {
        match self {
            Field::Finite(k) => Elem::F(k.from_int(n)),
            Field::RationalFunction(k) => Elem::R(RatFn::poly(Poly::constant(k.from_int(n)))),
            Field::Real => Elem::Q(BigRational::from_integer(BigInt::from(n))),
        }
    }

    /// The variable `t` of `F_q(t)`.
    pub fn t(&self) -> Result<Elem> {
        match self {
            Field::RationalFunction(_) => Ok(Elem::R(RatFn::poly(Poly::t()))),
            _ => Err(Error::Unsupported("t exists only in F_q(t)".into())),
        }
    }

    pub fn poly_elem(&self, p: Poly) -> Elem {
        Elem::R(RatFn::poly(p))
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        match a {
            Elem::F(x) => *x == 0,
            Elem::R(r) => r.is_zero(),
            Elem::Q(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self, a: &Elem) -> bool {
        match a {
            Elem::F(x) => *x == 1,
            Elem::R(r) => r.num.is_one() && r.den.is_one(),
            Elem::Q(q) => q.is_one(),
        }
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match self {
            Field::Finite(k) => Elem::F(k.add(fin(a), fin(b))),
            Field::RationalFunction(k) => {
                let (x, y) = (rat(a), rat(b));
                let num = x.num.mul(&y.den, k).add(&y.num.mul(&x.den, k), k);
                Elem::R(RatFn::new(num, x.den.mul(&y.den, k), k).expect("nonzero denominator"))
            }
            Field::Real => Elem::Q(real(a) + real(b)),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match self {
            Field::Finite(k) => Elem::F(k.neg(fin(a))),
            Field::RationalFunction(k) => {
                let x = rat(a);
                Elem::R(RatFn { num: x.num.neg(k), den: x.den.clone() })
            }
            Field::Real => Elem::Q(-real(a)),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match self {
            Field::Finite(k) => Elem::F(k.mul(fin(a), fin(b))),
            Field::RationalFunction(k) => {
                let (x, y) = (rat(a), rat(b));
                Elem::R(
                    RatFn::new(x.num.mul(&y.num, k), x.den.mul(&y.den, k), k)
                        .expect("nonzero denominator"),
                )
            }
            Field::Real => Elem::Q(real(a) * real(b)),
        }
    }

    pub fn inv(&self, a: &Elem) -> Result<Elem> {
        if self.is_zero(a) {
            return domain("inverse of zero");
        }
        Ok(match self {
            Field::Finite(k) => Elem::F(k.inv(fin(a))?),
            Field::RationalFunction(k) => {
                let x = rat(a);
                Elem::R(RatFn::new(x.den.clone(), x.num.clone(), k)?)
            }
            Field::Real => Elem::Q(real(a).recip()),
        })
    }

    pub fn div(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &Elem, e: i64) -> Result<Elem> {
        if let Field::Finite(k) = self {
            return Ok(Elem::F(k.pow(fin(a), e)?));
        }
        let base = if e < 0 { self.inv(a)? } else { a.clone() };
        let mut r = self.one();
        let mut b = base;
        let mut n = e.unsigned_abs();
        while n > 0 {
            if n & 1 == 1 {
                r = self.mul(&r, &b);
            }
            b = self.mul(&b, &b);
            n >>= 1;
        }
        Ok(r)
    }

    /// Square test; in the real model, positivity.
    pub fn is_square(&self, a: &Elem) -> Result<bool> {
        if self.is_zero(a) {
            return domain("square class of zero");
        }
        match self {
            Field::Finite(k) => k.is_square(fin(a)),
            Field::Real => Ok(real(a).is_positive()),
            Field::RationalFunction(_) => {
                Err(Error::Unsupported("square classes of F_q(t)".into()))
            }
        }
    }

    pub fn fmt_elem(&self, a: &Elem) -> String {
        match (self, a) {
            (Field::Finite(k), Elem::F(x)) => k.fmt_elem(*x),
            (Field::RationalFunction(k), Elem::R(r)) => fmt_ratfn(r, k),
            (_, Elem::Q(q)) => q.to_string(),
            _ => "?".to_string(),
        }
    }

    /// Embeds a constant (an element of the constant field) into `self`.
    pub fn constant(&self, a: &Elem) -> Elem {
        match (self, a) {
            (Field::RationalFunction(_), Elem::F(x)) => Elem::R(RatFn::poly(Poly::constant(*x))),
            _ => a.clone(),
        }
    }

    /// Writes `f = u * pi_v^n` with `pi_v` equal to `p` or `-1/t`.
    pub fn valuation_and_unit(&self, f: &Elem, v: &Place) -> Result<(i64, Elem)> {
        let k = match self {
            Field::RationalFunction(k) => k,
            _ => return Err(Error::Unsupported("valuations live on F_q(t)".into())),
        };
        let r = rat(f);
        if r.is_zero() {
            return domain("valuation of zero");
        }
        match v {
            Place::PAdic(p) => {
                let (a, num) = r.num.valuation(p, k);
                let (b, den) = r.den.valuation(p, k);
                Ok((a as i64 - b as i64, Elem::R(RatFn::new(num, den, k)?)))
            }
            Place::Infinity => {
                let n = r.den.degree() - r.num.degree();
                // u = f * (-t)^n
                let minus_t = Poly::from_coeffs(vec![0, k.neg(1)]);
                let u = if n >= 0 {
                    RatFn::new(r.num.mul(&minus_t.pow(n as u64, k), k), r.den.clone(), k)?
                } else {
                    RatFn::new(r.num.clone(), r.den.mul(&minus_t.pow((-n) as u64, k), k), k)?
                };
                Ok((n, Elem::R(u)))
            }
        }
    }

    /// Valuation only.
    pub fn valuation(&self, f: &Elem, v: &Place) -> Result<i64> {
        let k = match self {
            Field::RationalFunction(k) => k,
            _ => return Err(Error::Unsupported("valuations live on F_q(t)".into())),
        };
        let r = rat(f);
        if r.is_zero() {
            return domain("valuation of zero");
        }
        Ok(match v {
            Place::PAdic(p) => r.num.valuation(p, k).0 as i64 - r.den.valuation(p, k).0 as i64,
            Place::Infinity => r.den.degree() - r.num.degree(),
        })
    }

    /// The fixed uniformizer of a place.
    pub fn uniformizer(&self, v: &Place) -> Result<Elem> {
        let k = self.base_finite()?;
        Ok(match v {
            Place::PAdic(p) => Elem::R(RatFn::poly(p.clone())),
            Place::Infinity => Elem::R(RatFn::new(Poly::constant(k.neg(1)), Poly::t(), k)?),
        })
    }

    fn base_finite(&self) -> Result<&Arc<FiniteField>> {
        match self {
            Field::RationalFunction(k) => Ok(k),
            _ => Err(Error::Unsupported("expected F_q(t)".into())),
        }
    }

    /// Residue field of a place; degree-one places give the constant field.
    pub fn residue_field(&self, v: &Place) -> Result<Arc<FiniteField>> {
        let k = self.base_finite()?;
        match v {
            Place::Infinity => Ok(k.clone()),
            Place::PAdic(p) => residue_field(k, p),
        }
    }

    /// Reduction of a `v`-integral element into the residue field.
    pub fn reduce(&self, a: &Elem, v: &Place) -> Result<u32> {
        let k = self.base_finite()?;
        let r = rat(a);
        if self.valuation(a, v).map(|n| n < 0).unwrap_or(false) {
            return domain("element is not integral at the place");
        }
        match v {
            Place::Infinity => {
                if r.num.degree() < r.den.degree() {
                    Ok(0)
                } else {
                    k.inv(r.den.lead()).map(|i| k.mul(r.num.lead(), i))
                }
            }
            Place::PAdic(p) => {
                let kp = residue_field(k, p)?;
                let n = reduce_poly(&r.num, p, k, &kp);
                let d = reduce_poly(&r.den, p, k, &kp);
                Ok(kp.mul(n, kp.inv(d)?))
            }
        }
    }

    /// The closed points where some element of `elems` is not a unit.
    pub fn bad_places(&self, elems: &[&Elem]) -> Result<Vec<Poly>> {
        let k = self.base_finite()?;
        let mut out = Vec::new();
        for a in elems {
            let r = rat(a);
            for p in [&r.num, &r.den] {
                if p.degree() > 0 {
                    for (q, _) in p.factor(k)?.factors {
                        out.push(q);
                    }
                }
            }
        }
        out.sort();
        out.dedup();
        Ok(out)
    }

    pub fn descriptor(&self) -> String {
        self.to_string()
    }
}

/// The residue field `k[s]/(p)`; linear `p` gives `k` itself.
pub fn residue_field(k: &Arc<FiniteField>, p: &Poly) -> Result<Arc<FiniteField>> {
    if !p.is_irreducible(k) {
        return domain("residue field of a reducible polynomial");
    }
    k.residue_field(p, "s")
}

/// Reduces a polynomial over `k` into `kp = k[s]/(p)`.
pub fn reduce_poly(a: &Poly, p: &Poly, k: &FiniteField, kp: &FiniteField) -> u32 {
    let r = a.rem(p, k);
    if p.degree() == 1 {
        return r.coeff(0);
    }
    kp.from_coeffs(r.coeffs())
}

/// The representative of degree `< deg p` of a residue class.
pub fn lift(a: u32, p: &Poly, kp: &FiniteField) -> Poly {
    if p.degree() == 1 {
        return Poly::constant(a);
    }
    Poly::from_coeffs(kp.coeffs(a))
}

/// The least monic irreducible of degree `k` over `base`.
pub fn default_extension(base: &Arc<FiniteField>, k: u32, var: &str) -> Result<Arc<FiniteField>> {
    if k == 1 {
        return Ok(base.clone());
    }
    let q = base.size() as u64;
    let count = q.checked_pow(k).unwrap_or(u64::MAX);
    if count.saturating_mul(q) > MAX_FIELD_SIZE * 4 {
        return domain("extension too large");
    }
    for idx in 0..count {
        let mut c = Poly::index_digits(idx as u32, base.size(), k);
        c.push(1);
        let p = Poly::from_coeffs(c);
        if p.is_irreducible(base) {
            return FiniteField::extension(base, p, var);
        }
    }
    domain("no irreducible polynomial found")
}

fn fmt_ratfn(r: &RatFn, k: &FiniteField) -> String {
    let wrap = |s: String| {
        if s.contains('+') || s.starts_with('-') {
            format!("({s})")
        } else {
            s
        }
    };
    let num = if r.num.is_constant() {
        k.fmt_elem(r.num.coeff(0))
    } else {
        r.num.fmt_with(k, "t")
    };
    if r.den.is_one() {
        return num;
    }
    let den = r.den.fmt_with(k, "t");
    let den = if den.contains('*') || den.contains('+') { format!("({den})") } else { den };
    let num = if r.num.is_constant() && num == "-1" { num } else { wrap(num) };
    format!("{num}/{den}")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> Field {
        Field::rational_function(&Field::prime(p).unwrap()).unwrap()
    }

    fn poly(c: &[u32]) -> Poly {
        Poly::from_coeffs(c.to_vec())
    }

    #[test]
    fn squares_by_enumeration() {
        for p in [3u32, 5, 7, 11] {
            let k = Field::prime(p).unwrap();
            let squares: Vec<u32> = (1..p).map(|x| x * x % p).collect();
            for a in 1..p {
                assert_eq!(k.is_square(&Elem::F(a)).unwrap(), squares.contains(&a), "{a} mod {p}");
            }
        }
        let k5 = Field::prime(5).unwrap();
        assert!(k5.is_square(&k5.from_int(-1)).unwrap());
        let k7 = Field::prime(7).unwrap();
        assert!(!k7.is_square(&k7.from_int(-1)).unwrap());
        assert!(k7.is_square(&k7.zero()).is_err());
    }

    #[test]
    fn valuation_examples() {
        let k = f(3);
        let kk = k.base_finite().unwrap().clone();
        // t^2 (t+1) at t
        let x = k.poly_elem(poly(&[0, 0, 1]).mul(&poly(&[1, 1]), &kk));
        let (n, u) = k.valuation_and_unit(&x, &Place::PAdic(Poly::t())).unwrap();
        assert_eq!(n, 2);
        assert_eq!(u, k.poly_elem(poly(&[1, 1])));
        // 1/t at infinity is (-1) * (-1/t)
        let inv_t = k.inv(&k.t().unwrap()).unwrap();
        let (n, u) = k.valuation_and_unit(&inv_t, &Place::Infinity).unwrap();
        assert_eq!(n, 1);
        assert_eq!(u, k.from_int(-1));
        // t^2 - 1 at t - 1 over F5
        let k5 = f(5);
        let x = k5.poly_elem(poly(&[4, 0, 1]));
        let (n, u) = k5.valuation_and_unit(&x, &Place::PAdic(poly(&[4, 1]))).unwrap();
        assert_eq!(n, 1);
        assert_eq!(u, k5.poly_elem(poly(&[1, 1])));
        assert!(k5.valuation_and_unit(&k5.zero(), &Place::Infinity).is_err());
    }

    #[test]
    fn residue_field_f9() {
        let k = f(3);
        let base = k.base_finite().unwrap().clone();
        let p = poly(&[1, 0, 1]);
        let kp = residue_field(&base, &p).unwrap();
        assert_eq!(kp.size(), 9);
        let s = k.reduce(&k.t().unwrap(), &Place::PAdic(p.clone())).unwrap();
        assert_eq!(kp.fmt_elem(s), "s");
        let s2 = kp.mul(s, s);
        assert_eq!(lift(s2, &p, &kp), Poly::constant(2));
        assert!(residue_field(&base, &poly(&[2, 0, 1])).is_err());
    }

    #[test]
    fn linear_residue_field_is_evaluation() {
        let k = f(5);
        let base = k.base_finite().unwrap().clone();
        let p = poly(&[2, 1]); // t - 3
        let x = k.poly_elem(poly(&[1, 1, 1]));
        let r = k.reduce(&x, &Place::PAdic(p)).unwrap();
        assert_eq!(r, poly(&[1, 1, 1]).eval(3, &base));
    }

    #[test]
    fn ratfn_printing() {
        let k = f(3);
        let m = k.uniformizer(&Place::Infinity).unwrap();
        assert_eq!(k.fmt_elem(&m), "-1/t");
        let x = k.div(&k.poly_elem(poly(&[1, 1])), &k.poly_elem(poly(&[1, 0, 1]))).unwrap();
        assert_eq!(k.fmt_elem(&x), "(t+1)/(t^2+1)");
        assert_eq!(k.fmt_elem(&k.from_int(-1)), "-1");
    }
}
