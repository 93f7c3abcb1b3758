//! Milnor-Witt K-theory expressions: integer combinations of generators
//! `eta^m [a_1, ..., a_r]`, a sound rewriting pass, and exact equality
//! through the Milnor and Witt invariants.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::One;

use crate::error::{domain, Error, Result};
use crate::field::{Elem, Field};
use crate::forms::{witt_representatives, GwForm, GwInvariants};

/// `eta^eta [slots]`; the coefficient lives in the enclosing map.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Term {
    pub eta: u32,
    pub slots: Vec<Elem>,
}

impl Term {
    pub fn new(eta: u32, slots: Vec<Elem>) -> Self {
        Term { eta, slots }
    }
    pub fn degree(&self) -> i64 {
        self.slots.len() as i64 - self.eta as i64
    }
}

/// A homogeneous element of `K^MW_*(F)` in free presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MwExpr {
    field: Field,
    degree: i64,
    terms: BTreeMap<Term, i64>,
}

/// Outcome of an equality test; `Undecided` only arises in the real model.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    True,
    False,
    Undecided,
}

impl Verdict {
    pub fn holds(self) -> bool {
        self == Verdict::True
    }
}

impl From<bool> for Verdict {
    fn from(b: bool) -> Self {
        if b {
            Verdict::True
        } else {
            Verdict::False
        }
    }
}

impl MwExpr {
    pub fn zero(field: &Field, degree: i64) -> Self {
        MwExpr { field: field.clone(), degree, terms: BTreeMap::new() }
    }

    pub fn integer(field: &Field, n: i64) -> Self {
        let mut x = MwExpr::zero(field, 0);
        x.push(Term::new(0, vec![]), n);
        x
    }

    pub fn one(field: &Field) -> Self {
        MwExpr::integer(field, 1)
    }

    pub fn eta_pow(field: &Field, m: u32) -> Self {
        let mut x = MwExpr::zero(field, -(m as i64));
        x.push(Term::new(m, vec![]), 1);
        x
    }

    pub fn eta(field: &Field) -> Self {
        MwExpr::eta_pow(field, 1)
    }

    /// `coeff * eta^eta [slots]`.
    pub fn symbol(field: &Field, coeff: i64, eta: u32, slots: Vec<Elem>) -> Result<Self> {
        if slots.iter().any(|a| field.is_zero(a)) {
            return Err(Error::ZeroSlot);
        }
        let t = Term::new(eta, slots);
        let mut x = MwExpr::zero(field, t.degree());
        x.push(t, coeff);
        Ok(x)
    }

    pub fn bracket(field: &Field, a: Elem) -> Result<Self> {
        MwExpr::symbol(field, 1, 0, vec![a])
    }

    /// `[a_1, ..., a_r]`.
    pub fn brackets(field: &Field, slots: Vec<Elem>) -> Result<Self> {
        MwExpr::symbol(field, 1, 0, slots)
    }

    /// `<u> = 1 + eta[u]`.
    pub fn angle(field: &Field, u: Elem) -> Result<Self> {
        MwExpr::one(field).add(&MwExpr::symbol(field, 1, 1, vec![u])?)
    }

    /// `eps = -<-1> = -1 - eta[-1]`.
    pub fn epsilon(field: &Field) -> Self {
        let m1 = field.from_int(-1);
        let mut x = MwExpr::integer(field, -1);
        x.push(Term::new(1, vec![m1]), -1);
        x
    }

    /// `h = 2 + eta[-1]`.
    pub fn h(field: &Field) -> Self {
        MwExpr::n_eps(field, 2)
    }

    /// `n_eps`: `n + floor(n/2) eta[-1]` for `n >= 0`, `eps (-n)_eps` otherwise.
    pub fn n_eps(field: &Field, n: i64) -> Self {
        if n < 0 {
            return MwExpr::epsilon(field).mul(&MwExpr::n_eps(field, -n)).expect("same field");
        }
        let mut x = MwExpr::integer(field, n);
        x.push(Term::new(1, vec![field.from_int(-1)]), n / 2);
        x
    }

    /// Builds an expression from raw terms, checking slots and homogeneity.
    pub fn from_terms(
        field: &Field,
        degree: i64,
        terms: impl IntoIterator<Item = (Term, i64)>,
    ) -> Result<Self> {
        let mut x = MwExpr::zero(field, degree);
        for (t, c) in terms {
            if t.slots.iter().any(|a| field.is_zero(a)) {
                return Err(Error::ZeroSlot);
            }
            if t.degree() != degree {
                return Err(Error::Homogeneity(degree, t.degree()));
            }
            x.push(t, c);
        }
        Ok(x)
    }

    pub(crate) fn push(&mut self, t: Term, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry(t.clone()).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&t);
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn degree(&self) -> i64 {
        self.degree
    }
    pub fn terms(&self) -> impl Iterator<Item = (&Term, i64)> {
        self.terms.iter().map(|(t, &c)| (t, c))
    }
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }
    /// No terms at all (before any rewriting).
    pub fn is_syntactic_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_field(&self, o: &MwExpr) -> Result<()> {
        if self.field != o.field {
            return Err(Error::MixedFields);
        }
        Ok(())
    }

    /// Sum; an empty side adopts the other's degree.
    pub fn add(&self, o: &MwExpr) -> Result<MwExpr> {
        self.check_field(o)?;
        if o.terms.is_empty() && o.degree != self.degree {
            return Ok(self.clone());
        }
        if self.terms.is_empty() && o.degree != self.degree {
            return Ok(o.clone());
        }
        if self.degree != o.degree {
            return Err(Error::Homogeneity(self.degree, o.degree));
        }
        let mut r = self.clone();
        for (t, &c) in &o.terms {
            r.push(t.clone(), c);
        }
        Ok(r)
    }

    pub fn neg(&self) -> MwExpr {
        self.scale(-1)
    }

    pub fn sub(&self, o: &MwExpr) -> Result<MwExpr> {
        self.add(&o.neg())
    }

    pub fn scale(&self, n: i64) -> MwExpr {
        let mut r = MwExpr::zero(&self.field, self.degree);
        for (t, &c) in &self.terms {
            r.push(t.clone(), c * n);
        }
        r
    }

    /// Concatenation product.
    pub fn mul(&self, o: &MwExpr) -> Result<MwExpr> {
        self.check_field(o)?;
        let mut r = MwExpr::zero(&self.field, self.degree + o.degree);
        for (a, &c) in &self.terms {
            for (b, &d) in &o.terms {
                let mut slots = a.slots.clone();
                slots.extend(b.slots.iter().cloned());
                r.push(Term::new(a.eta + b.eta, slots), c * d);
            }
        }
        Ok(r)
    }

    pub fn times_eta(&self, m: u32) -> MwExpr {
        let mut r = MwExpr::zero(&self.field, self.degree - m as i64);
        for (t, &c) in &self.terms {
            r.push(Term::new(t.eta + m, t.slots.clone()), c);
        }
        r
    }

    /// `<u> x`.
    pub fn times_angle(&self, u: &Elem) -> Result<MwExpr> {
        MwExpr::angle(&self.field, u.clone())?.mul(self)
    }

    /// Applies a slot map into another field (pullback, reduction, embedding).
    pub fn map_slots(
        &self,
        target: &Field,
        mut f: impl FnMut(&Elem) -> Result<Elem>,
    ) -> Result<MwExpr> {
        let mut r = MwExpr::zero(target, self.degree);
        for (t, &c) in &self.terms {
            let slots = t.slots.iter().map(&mut f).collect::<Result<Vec<_>>>()?;
            if slots.iter().any(|a| target.is_zero(a)) {
                return Err(Error::ZeroSlot);
            }
            r.push(Term::new(t.eta, slots), c);
        }
        Ok(r)
    }

    /// A sound partial reduction. Rules: a slot equal to `1` kills the term;
    /// two slots with `a + b = 1` or `a + b = 0` kill it (the factors commute
    /// up to units); `[a, a] -> [-1, a]`; `[a, -1] -> [-1, a]`; and
    /// `eta^2 [-1] = -2 eta` (from `eta h = 0`).
    pub fn simplify(&self) -> MwExpr {
        let mut out = MwExpr::zero(&self.field, self.degree);
        let mut work: Vec<(Term, i64)> = self.terms.iter().map(|(t, &c)| (t.clone(), c)).collect();
        while let Some((t, c)) = work.pop() {
            match rewrite(&self.field, t) {
                Step::Zero => {}
                Step::Stable(t) => out.push(t, c),
                Step::To(t, f) => work.push((t, c * f)),
            }
        }
        out
    }

    pub fn to_milnor(&self) -> MwExpr {
        let mut r = MwExpr::zero(&self.field, self.degree);
        for (t, &c) in &self.terms {
            if t.eta == 0 {
                r.push(t.clone(), c);
            }
        }
        r
    }

    /// Equality, with `Undecided` mapped to an error.
    pub fn equals(&self, o: &MwExpr) -> Result<bool> {
        match mw_equal(self, o)? {
            Verdict::True => Ok(true),
            Verdict::False => Ok(false),
            Verdict::Undecided => Err(Error::Undecided("real-model equality in degree >= 2".into())),
        }
    }

    pub fn is_zero(&self) -> Result<bool> {
        self.equals(&MwExpr::zero(&self.field, self.degree))
    }
}

enum Step {
    Zero,
    Stable(Term),
    To(Term, i64),
}

fn rewrite(f: &Field, mut t: Term) -> Step {
    let is_m1 = |a: &Elem| f.is_one(&f.neg(a));
    if t.slots.iter().any(|a| f.is_one(a)) {
        return Step::Zero;
    }
    let n = t.slots.len();
    for i in 0..n {
        for j in i + 1..n {
            let s = f.add(&t.slots[i], &t.slots[j]);
            if f.is_zero(&s) || f.is_one(&s) {
                return Step::Zero;
            }
        }
    }
    for i in 0..n.saturating_sub(1) {
        let (a, b) = (&t.slots[i], &t.slots[i + 1]);
        if is_m1(b) && !is_m1(a) {
            t.slots.swap(i, i + 1);
            return Step::To(t, 1);
        }
        if a == b && !is_m1(a) {
            t.slots[i] = f.from_int(-1);
            return Step::To(t, 1);
        }
    }
    if t.eta >= 2 && t.slots.first().map(is_m1).unwrap_or(false) {
        t.slots.remove(0);
        t.eta -= 1;
        return Step::To(t, -2);
    }
    Step::Stable(t)
}

impl fmt::Display for MwExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (t, &c)) in self.terms.iter().enumerate() {
            let body = term_body(&self.field, t);
            let mag = c.unsigned_abs();
            let s = if body.is_empty() {
                mag.to_string()
            } else if mag == 1 {
                body
            } else {
                format!("{mag}*{body}")
            };
            match (i, c < 0) {
                (0, false) => f.write_str(&s)?,
                (0, true) => write!(f, "-{s}")?,
                (_, false) => write!(f, " + {s}")?,
                (_, true) => write!(f, " - {s}")?,
            }
        }
        Ok(())
    }
}

fn term_body(field: &Field, t: &Term) -> String {
    let mut parts = Vec::new();
    match t.eta {
        0 => {}
        1 => parts.push("eta".to_string()),
        m => parts.push(format!("eta^{m}")),
    }
    if !t.slots.is_empty() {
        let s: Vec<String> = t.slots.iter().map(|a| field.fmt_elem(a)).collect();
        parts.push(format!("[{}]", s.join(",")));
    }
    parts.join("*")
}

/// Canonical value of the image in `K^M_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MilnorValue {
    /// Degree 0: the rank.
    Integer(i64),
    /// Degree 1 over `F_q`: discrete logarithm modulo `q - 1`.
    Log { value: u64, modulus: u64 },
    /// `K^M_n = 0` (negative degrees, or `n >= 2` over `F_q`).
    Zero,
    /// Degree 1 in the real model: the product `prod a^c`.
    Product(BigRational),
    /// Degree `>= 2` in the real model: the image in `K^M_n / 2 = Z/2`.
    SignParity(bool),
}

impl MilnorValue {
    pub fn is_zero(&self) -> bool {
        match self {
            MilnorValue::Integer(n) => *n == 0,
            MilnorValue::Log { value, .. } => *value == 0,
            MilnorValue::Zero => true,
            MilnorValue::Product(q) => q.is_one(),
            MilnorValue::SignParity(b) => !b,
        }
    }
}

pub fn milnor_invariant(x: &MwExpr) -> Result<MilnorValue> {
    let n = x.degree;
    if n < 0 {
        return Ok(MilnorValue::Zero);
    }
    let milnor = x.to_milnor();
    if n == 0 {
        return Ok(MilnorValue::Integer(milnor.terms.values().sum()));
    }
    match &x.field {
        Field::Finite(k) => {
            if n >= 2 {
                return Ok(MilnorValue::Zero);
            }
            let m = k.size() as i128 - 1;
            let mut acc: i128 = 0;
            for (t, &c) in &milnor.terms {
                let a = match &t.slots[0] {
                    Elem::F(a) => *a,
                    _ => unreachable!(),
                };
                acc = (acc + c as i128 * k.dlog(a)? as i128).rem_euclid(m);
            }
            Ok(MilnorValue::Log { value: acc as u64, modulus: m as u64 })
        }
        Field::Real => {
            let q = |a: &Elem| match a {
                Elem::Q(q) => q.clone(),
                _ => unreachable!(),
            };
            if n == 1 {
                let mut acc = BigRational::one();
                for (t, &c) in &milnor.terms {
                    let a = q(&t.slots[0]);
                    let p = num_traits::pow::pow(a, c.unsigned_abs() as usize);
                    acc = if c >= 0 { acc * p } else { acc / p };
                }
                return Ok(MilnorValue::Product(acc));
            }
            let mut parity = false;
            for (t, &c) in &milnor.terms {
                let neg = t.slots.iter().all(|a| q(a) < BigRational::from_integer(0.into()));
                parity ^= neg && c % 2 != 0;
            }
            Ok(MilnorValue::SignParity(parity))
        }
        Field::RationalFunction(_) => {
            Err(Error::Unsupported("canonical Milnor values over F_q(t)".into()))
        }
    }
}

/// Invariants of the image of `x` in `I^n`, via `eta^m [a..] -> <<a..>>`.
pub fn j_invariants(x: &MwExpr) -> Result<GwInvariants> {
    let f = &x.field;
    let real = match f {
        Field::Finite(_) => false,
        Field::Real => true,
        Field::RationalFunction(_) => {
            return Err(Error::Unsupported("I^n invariants over F_q(t)".into()))
        }
    };
    let m1 = GwInvariants::unit(f.is_square(&f.from_int(-1))?, real);
    let mut acc = GwInvariants::zero(real);
    for (t, &c) in &x.terms {
        let mut pf = GwInvariants::one(real);
        for a in &t.slots {
            pf = pf.mul(m1.add(GwInvariants::unit(f.is_square(a)?, real)));
        }
        acc = acc.add(pf.scale(c));
    }
    Ok(acc)
}

/// The image of `x` in `I^n` as an explicit virtual form `sum c <<a..>>`.
pub fn j_form(x: &MwExpr) -> Result<GwForm> {
    let f = &x.field;
    let mut acc = GwForm::zero(f);
    for (t, &c) in &x.terms {
        let pf = crate::forms::pfister(f, &t.slots)?;
        acc = acc.add(&pf.scale_int(c))?;
    }
    acc.invariants()?;
    Ok(acc)
}

fn minus_one_square(f: &Field) -> Result<bool> {
    f.is_square(&f.from_int(-1))
}

/// Exact equality over `F_q` (the Cartesian square), over `F_q(t)` (residues
/// plus the specialization at infinity), and three-valued in the real model.
pub fn mw_equal(x: &MwExpr, y: &MwExpr) -> Result<Verdict> {
    let d = x.sub(y)?.simplify();
    if d.terms.is_empty() {
        return Ok(Verdict::True);
    }
    match &d.field {
        Field::Finite(_) => {
            let n = d.degree;
            if n >= 2 {
                return Ok(Verdict::True);
            }
            let w = j_invariants(&d)?.is_witt_zero(minus_one_square(&d.field)?);
            Ok((w && milnor_invariant(&d)?.is_zero()).into())
        }
        Field::Real => {
            let n = d.degree;
            let inv = j_invariants(&d)?;
            if inv.signature != Some(0) {
                return Ok(Verdict::False);
            }
            let milnor = milnor_invariant(&d)?;
            if !milnor.is_zero() {
                return Ok(Verdict::False);
            }
            // K^M_n(R) is detected by the product for n = 1; the sign parity
            // is only a partial invariant beyond that.
            Ok(if n <= 1 { Verdict::True } else { Verdict::Undecided })
        }
        Field::RationalFunction(_) => Ok(crate::residue::function_field_is_zero(&d)?.into()),
    }
}

/// A canonical representative over `F_q` and the real model (degrees `<= 1`);
/// elsewhere `simplify`.
pub fn normal_form(x: &MwExpr) -> Result<MwExpr> {
    let f = &x.field;
    let n = x.degree;
    match f {
        Field::Finite(k) => {
            if n >= 2 {
                return Ok(MwExpr::zero(f, n));
            }
            if n == 1 {
                return match milnor_invariant(x)? {
                    MilnorValue::Log { value: 0, .. } => Ok(MwExpr::zero(f, 1)),
                    MilnorValue::Log { value, .. } => {
                        MwExpr::bracket(f, Elem::F(k.pow(k.generator(), value as i64)?))
                    }
                    _ => unreachable!(),
                };
            }
            let w = j_invariants(x)?;
            let m1sq = minus_one_square(f)?;
            let u0 = Elem::F(k.least_nonsquare());
            if n == 0 {
                let r = match milnor_invariant(x)? {
                    MilnorValue::Integer(r) => r,
                    _ => unreachable!(),
                };
                let kk = (r - w.rank) / 2;
                let nontrivial = !w.disc_square ^ (kk.rem_euclid(2) == 1 && !m1sq);
                let mut out = MwExpr::integer(f, r);
                if nontrivial {
                    out.push(Term::new(1, vec![u0]), 1);
                }
                return Ok(out);
            }
            for rep in witt_representatives(f)? {
                if rep.invariants()?.add(w.neg()).is_witt_zero(m1sq) {
                    return Ok(gw_to_mw0(&rep).times_eta((-n) as u32).simplify());
                }
            }
            unreachable!("W(F_q) has four classes")
        }
        Field::Real if n <= 0 => {
            let s = j_invariants(x)?.signature.expect("real model");
            if n < 0 {
                return Ok(MwExpr::eta_pow(f, (-n) as u32).scale(s));
            }
            let r = match milnor_invariant(x)? {
                MilnorValue::Integer(r) => r,
                _ => unreachable!(),
            };
            let mut out = MwExpr::integer(f, r);
            out.push(Term::new(1, vec![f.from_int(-1)]), (r - s) / 2);
            Ok(out)
        }
        _ => Ok(x.simplify()),
    }
}

/// `h_n({a_1, ..., a_n}) = [a_1^2, a_2, ..., a_n]`.
pub fn h_n(field: &Field, slots: &[Elem]) -> Result<MwExpr> {
    if slots.is_empty() {
        return domain("h_n needs at least one entry");
    }
    let mut s = slots.to_vec();
    s[0] = field.mul(&slots[0], &slots[0]);
    Ok(MwExpr::brackets(field, s)?.simplify())
}

/// `K^MW_0 -> GW`, `eta [a] -> <a> - 1`.
pub fn mw0_to_gw(x: &MwExpr) -> Result<GwForm> {
    if x.degree != 0 {
        return Err(Error::Homogeneity(0, x.degree));
    }
    let f = &x.field;
    let mut acc = GwForm::zero(f);
    for (t, &c) in &x.terms {
        let mut p = GwForm::one(f);
        for a in &t.slots {
            let d = GwForm::angle(f, a.clone())?.sub(&GwForm::one(f))?;
            p = p.mul(&d)?;
        }
        acc = acc.add(&p.scale_int(c))?;
    }
    Ok(acc)
}

/// `GW -> K^MW_0`, `<a> -> 1 + eta[a]`.
pub fn gw_to_mw0(form: &GwForm) -> MwExpr {
    let f = form.field();
    let mut x = MwExpr::zero(f, 0);
    for (entries, sign) in [(form.plus(), 1), (form.minus(), -1)] {
        for a in entries {
            x.push(Term::new(0, vec![]), sign);
            x.push(Term::new(1, vec![a.clone()]), sign);
        }
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u32) -> Field {
        Field::prime(p).unwrap()
    }
    fn e(f: &Field, n: i64) -> Elem {
        f.from_int(n)
    }
    fn br(f: &Field, xs: &[i64]) -> MwExpr {
        MwExpr::brackets(f, xs.iter().map(|&a| e(f, a)).collect()).unwrap()
    }

    #[test]
    fn angle_one_is_one() {
        let f = fp(5);
        let a = MwExpr::angle(&f, f.one()).unwrap().simplify();
        assert_eq!(a.to_string(), "1");
    }

    #[test]
    fn printing() {
        let f = fp(5);
        let x = br(&f, &[2, 3]).add(&br(&f, &[2, 3, 4]).times_eta(1)).unwrap();
        assert_eq!(x.to_string(), "[2,3] + eta*[2,3,-1]");
        assert_eq!(MwExpr::epsilon(&f).to_string(), "-1 - eta*[-1]");
        assert_eq!(MwExpr::eta_pow(&f, 2).scale(-2).to_string(), "-2*eta^2");
        assert_eq!(MwExpr::zero(&f, 3).to_string(), "0");
    }

    #[test]
    fn steinberg_and_minus() {
        let f = fp(7);
        assert!(br(&f, &[3, -2]).simplify().is_syntactic_zero());
        assert!(br(&f, &[3, -3]).simplify().is_syntactic_zero());
        assert_eq!(br(&f, &[3, 3]).simplify().to_string(), "[-1,3]");
        assert_eq!(br(&f, &[3, -1]).simplify().to_string(), "[-1,3]");
    }

    #[test]
    fn homogeneity_enforced() {
        let f = fp(5);
        assert_eq!(br(&f, &[2]).add(&br(&f, &[2, 3])), Err(Error::Homogeneity(1, 2)));
        assert_eq!(MwExpr::bracket(&f, f.zero()), Err(Error::ZeroSlot));
        assert!(br(&f, &[2]).add(&br(&f, &[2]).neg()).unwrap().is_syntactic_zero());
    }

    #[test]
    fn eta_h_is_zero() {
        for p in [3, 5, 7] {
            let f = fp(p);
            assert!(MwExpr::eta(&f).mul(&MwExpr::h(&f)).unwrap().is_zero().unwrap());
        }
    }

    #[test]
    fn milnor_logs_f5() {
        let f = fp(5);
        let v = |a| match milnor_invariant(&br(&f, &[a])).unwrap() {
            MilnorValue::Log { value, .. } => value,
            _ => panic!(),
        };
        assert_eq!(v(2), 1);
        assert_eq!(v(4), 2);
        assert_eq!(milnor_invariant(&br(&f, &[2, 3]).times_eta(1)).unwrap(), MilnorValue::Log {
            value: 0,
            modulus: 4
        });
    }

    #[test]
    fn real_model_examples() {
        let r = Field::Real;
        let m1 = br(&r, &[-1]);
        let j = j_invariants(&m1).unwrap();
        assert_eq!(j.signature, Some(-2));
        let twisted = m1.times_angle(&e(&r, -1)).unwrap();
        assert_eq!(j_invariants(&twisted).unwrap().signature, Some(2));
        assert_eq!(mw_equal(&m1, &twisted).unwrap(), Verdict::False);
        assert_eq!(mw_equal(&br(&r, &[2, 3]), &br(&r, &[3, 2]).neg()).unwrap(), Verdict::Undecided);
        assert_eq!(mw_equal(&br(&r, &[2]), &br(&r, &[2])).unwrap(), Verdict::True);
    }

    #[test]
    fn normal_forms_degree_zero() {
        let f = fp(3);
        let x = gw_to_mw0(&GwForm::from_ints(&f, &[2, 2]).unwrap());
        let n = normal_form(&x).unwrap();
        assert!(mw_equal(&x, &n).unwrap().holds());
        assert_eq!(n.to_string(), "2");
        let h = normal_form(&MwExpr::h(&f)).unwrap();
        assert_eq!(h.to_string(), "2 + eta*[-1]");
    }

    #[test]
    fn h_n_examples() {
        let f = fp(7);
        assert_eq!(h_n(&f, &[e(&f, 3)]).unwrap().to_string(), "[2]");
        assert!(h_n(&f, &[f.one()]).unwrap().is_syntactic_zero());
        let x = h_n(&f, &[e(&f, 3)]).unwrap().times_eta(1);
        assert!(x.is_zero().unwrap());
    }
}
