//! Rost-Schmid complexes of `Spec k`, `A^1` and `P^1` over a finite field.
//!
//! On a curve the complex has two terms: the generic point (codimension 0)
//! and the closed points (codimension 1), including `inf` on `P^1`. Values
//! at the generic point of `P^1` are stored in the chart-0 basis of `O(d)`;
//! the value at `inf` is computed after the transition `<t^d>`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{domain, Error, Result};
use crate::field::{Elem, Field, Place, Poly, RatFn};
use crate::lines::{chart_transition, Atom, AtomKind, GradedLine, TwistedMw};
use crate::mw::{milnor_invariant, normal_form, MilnorValue, MwExpr};
use crate::residue::{place_name, pullback, residue_twisted, specialize_infinity, support};
use crate::transfer::{canonical_transfer, derivative_class};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Scheme {
    Point,
    AffineLine,
    ProjLine,
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scheme::Point => "Spec",
            Scheme::AffineLine => "A1",
            Scheme::ProjLine => "P1",
        })
    }
}

/// Points of the supported schemes, in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point {
    Generic,
    Closed(Poly),
    Infinity,
}

impl Point {
    pub fn place(&self) -> Option<Place> {
        match self {
            Point::Generic => None,
            Point::Closed(p) => Some(Place::PAdic(p.clone())),
            Point::Infinity => Some(Place::Infinity),
        }
    }

    pub fn degree(&self) -> i64 {
        match self {
            Point::Closed(p) => p.degree(),
            _ => 1,
        }
    }

    pub fn name(&self, ft: &Field) -> Result<String> {
        match self {
            Point::Generic => Ok("generic".into()),
            _ => place_name(ft, &self.place().expect("closed point")),
        }
    }
}

/// A finitely supported cochain `C(X, j, L)^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub scheme: Scheme,
    pub base: Field,
    pub codim: u32,
    pub weight: i64,
    /// `d` of `O(d)` on `P^1`; `0` elsewhere.
    pub twist: i64,
    /// The twist word at the generic point; closed points prepend `p*`.
    pub line: GradedLine,
    pub values: BTreeMap<Point, TwistedMw>,
}

/// The generic word for `O(d)`; empty when `d = 0`.
pub fn bundle_line(d: i64) -> GradedLine {
    if d == 0 {
        GradedLine::trivial()
    } else {
        GradedLine::atom(Atom::bundle(d))
    }
}

impl Cochain {
    pub fn empty(scheme: Scheme, base: &Field, codim: u32, weight: i64, twist: i64, line: GradedLine) -> Self {
        Cochain { scheme, base: base.clone(), codim, weight, twist, line, values: BTreeMap::new() }
    }

    /// The function field of the generic point.
    pub fn generic_field(&self) -> Result<Field> {
        match self.scheme {
            Scheme::Point => Ok(self.base.clone()),
            _ => Field::rational_function(&self.base),
        }
    }

    /// Codimension-0 cochain with generic value `expr` (over `k(t)`, or `k`
    /// for `Spec k`), in the word of `O(twist)`.
    pub fn generic(scheme: Scheme, base: &Field, twist: i64, expr: MwExpr) -> Result<Self> {
        if scheme != Scheme::ProjLine && twist != 0 {
            return Err(Error::Unsupported("O(d) twists live on P1".into()));
        }
        let line = bundle_line(twist);
        let mut c = Cochain::empty(scheme, base, 0, expr.degree(), twist, line.clone());
        if *expr.field() != c.generic_field()? {
            return Err(Error::MixedFields);
        }
        if !expr.is_syntactic_zero() {
            c.values.insert(Point::Generic, TwistedMw::new(expr, line));
        }
        Ok(c)
    }

    /// Codimension-1 cochain from `(point, expr over k(point))` pairs, each in
    /// the basis `p* ⊗ line`.
    pub fn closed(
        scheme: Scheme,
        base: &Field,
        twist: i64,
        weight: i64,
        entries: Vec<(Point, MwExpr)>,
    ) -> Result<Self> {
        let line = bundle_line(twist);
        let mut c = Cochain::empty(scheme, base, 1, weight, twist, line.clone());
        let ft = c.generic_field()?;
        for (pt, e) in entries {
            let place = pt.place().ok_or_else(|| Error::Domain("generic point in codim 1".into()))?;
            if pt == Point::Infinity && scheme != Scheme::ProjLine {
                return domain("inf is not a point of A1");
            }
            if let Point::Closed(p) = &pt {
                let k = base.finite_field().expect("finite base");
                if !p.is_irreducible(k) || p.lead() != 1 {
                    return domain("closed points are monic irreducible polynomials");
                }
            }
            if *e.field() != Field::Finite(ft.residue_field(&place)?) {
                return Err(Error::MixedFields);
            }
            if e.degree() != weight - 1 && !e.is_syntactic_zero() {
                return Err(Error::Homogeneity(weight - 1, e.degree()));
            }
            let w = GradedLine::atom(Atom::conormal(pt.name(&ft)?)).tensor(&line);
            let v = TwistedMw::new(e, w);
            let v = match c.values.remove(&pt) {
                Some(old) => old.add(&v)?,
                None => v,
            };
            c.values.insert(pt, v);
        }
        Ok(c)
    }

    pub fn is_zero(&self) -> Result<bool> {
        for v in self.values.values() {
            if !v.expr().is_zero()? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn generic_value(&self) -> Option<&TwistedMw> {
        self.values.get(&Point::Generic)
    }
}

impl fmt::Display for Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ft = self.generic_field().map_err(|_| fmt::Error)?;
        let parts: Vec<String> = self
            .values
            .iter()
            .map(|(pt, v)| format!("{}: {}", pt.name(&ft).unwrap_or_default(), v))
            .collect();
        write!(f, "{{{}}}", parts.join("; "))
    }
}

fn normal_value(v: &TwistedMw) -> Result<TwistedMw> {
    v.map_expr(normal_form)
}

/// `d`: total twisted residue of the generic value, with the chart
/// transition `<t^d>` at infinity. Codimension-1 cochains map to zero.
pub fn differential(x: &Cochain) -> Result<Cochain> {
    let mut out = Cochain { codim: x.codim + 1, values: BTreeMap::new(), ..x.clone() };
    if x.codim > 0 || x.scheme == Scheme::Point {
        return Ok(out);
    }
    let g = match x.generic_value() {
        None => return Ok(out),
        Some(g) => g.normalized()?,
    };
    for p in support(g.expr())? {
        let r = residue_twisted(&g, &Place::PAdic(p.clone()))?;
        if !r.expr().is_zero()? {
            out.values.insert(Point::Closed(p), normal_value(&r)?);
        }
    }
    if x.scheme == Scheme::ProjLine {
        let ft = g.field().clone();
        let u = chart_transition(&ft, x.twist.rem_euclid(2))?;
        let at_inf = g.map_expr(|e| Ok(e.times_angle(&u)?.simplify()))?;
        let r = residue_twisted(&at_inf, &Place::Infinity)?;
        if !r.expr().is_zero()? {
            out.values.insert(Point::Infinity, normal_value(&r)?);
        }
    }
    Ok(out)
}

/// Replaces the leading `p*` by `dt` using `dp = p' dt`.
fn conormal_to_dt(v: &TwistedMw, p: &Poly, base: &Field) -> Result<TwistedMw> {
    let n = v.normalized()?;
    let mut word = n.line().word.clone();
    let pos = word
        .iter()
        .position(|a| a.kind == AtomKind::Conormal)
        .ok_or_else(|| Error::Domain("value without a conormal atom".into()))?;
    word[pos] = Atom::dt();
    let kf = n.field().clone();
    let inv = kf.inv(&derivative_class(p, base)?)?;
    TwistedMw::with_prefactor(n.expr().clone(), GradedLine::new(word), inv)
}

/// The Milnor-Witt degree: canonical transfers of the closed-point values
/// (through `dp = p' dt`, so the `<p'>` factors cancel) plus the value at
/// infinity.
pub fn pushforward_point(x: &Cochain) -> Result<TwistedMw> {
    if x.codim != 1 || x.scheme == Scheme::Point {
        return domain("push-forward expects a codimension-1 cochain on a curve");
    }
    let mut acc = MwExpr::zero(&x.base, x.weight - 1);
    for (pt, v) in &x.values {
        let e = match pt {
            Point::Closed(p) => {
                canonical_transfer(&conormal_to_dt(v, p, &x.base)?, p, &x.base)?.expr().clone()
            }
            Point::Infinity => v.normalized()?.expr().clone(),
            Point::Generic => return domain("generic value in codimension 1"),
        };
        acc = acc.add(&e)?;
    }
    Ok(TwistedMw::new(normal_form(&acc)?, x.line.clone()))
}

/// Pointwise reduction modulo `eta`.
pub fn chow_comparison(x: &Cochain) -> Result<Cochain> {
    let mut out = x.clone();
    for v in out.values.values_mut() {
        *v = v.map_expr(|e| Ok(e.to_milnor()))?;
    }
    Ok(out)
}

/// `sum_x deg(x) * rank`, for codimension-1 cochains with degree-0 values.
pub fn chow_degree(x: &Cochain) -> Result<i64> {
    let mut acc = 0;
    for (pt, v) in &chow_comparison(x)?.values {
        match milnor_invariant(v.expr())? {
            MilnorValue::Integer(r) => acc += pt.degree() * r,
            _ => return domain("Chow degree needs values in degree 0"),
        }
    }
    Ok(acc)
}

/// The order of vanishing at each point, read off the classical cochain.
pub fn chow_orders(x: &Cochain) -> Result<BTreeMap<Point, i64>> {
    let mut out = BTreeMap::new();
    for (pt, v) in &chow_comparison(x)?.values {
        if let MilnorValue::Integer(r) = milnor_invariant(v.expr())? {
            if r != 0 {
                out.insert(pt.clone(), r);
            }
        }
    }
    Ok(out)
}

/// `alpha -> alpha` at the generic point.
pub fn pullback_flat(alpha: &MwExpr, scheme: Scheme, twist: i64) -> Result<Cochain> {
    let base = alpha.field().clone();
    let e = match scheme {
        Scheme::Point => alpha.clone(),
        _ => pullback(alpha, &Field::rational_function(&base)?)?,
    };
    Cochain::generic(scheme, &base, twist, e)
}

/// `Some(c)` with `x = pullback(c)` exactly when `x` is a cocycle on `A^1`.
pub fn h0_membership(x: &Cochain) -> Result<Option<MwExpr>> {
    if x.scheme != Scheme::AffineLine || x.codim != 0 {
        return domain("H^0 membership is tested on codimension-0 cochains of A1");
    }
    if !differential(x)?.values.is_empty() {
        return Ok(None);
    }
    match x.generic_value() {
        None => Ok(Some(MwExpr::zero(&x.base, x.weight))),
        Some(g) => Ok(Some(normal_form(&specialize_infinity(g.normalized()?.expr())?)?)),
    }
}

/// `f = lambda * m` with `m` monic over monic; returns the atom for `m`
/// and the unit `lambda`.
fn function_atom(ft: &Field, f: &Elem) -> Result<(Atom, Elem)> {
    let c = ft.constants();
    let k = c.finite_field().ok_or_else(|| Error::Unsupported("expected F_q(t)".into()))?;
    let r = match f {
        Elem::R(r) if !r.is_zero() => r,
        _ => return domain("expected a nonzero rational function"),
    };
    let lam = r.num().lead();
    let m = RatFn::new(r.num().monic(k), r.den().clone(), k)?;
    let name = ft.fmt_elem(&Elem::R(m));
    let name = if name.chars().all(|c| c.is_ascii_alphanumeric()) { name } else { format!("({name})") };
    Ok((Atom::function(name), ft.constant(&Elem::F(lam))))
}

fn zero_points(ft: &Field, f: &Elem, scheme: Scheme, poles: bool) -> Result<Vec<Point>> {
    let mut out = Vec::new();
    for p in ft.bad_places(&[f])? {
        let v = ft.valuation(f, &Place::PAdic(p.clone()))?;
        if v > 0 || (poles && v != 0) {
            out.push(Point::Closed(p));
        }
    }
    if scheme == Scheme::ProjLine {
        let v = ft.valuation(f, &Place::Infinity)?;
        if v > 0 || (poles && v != 0) {
            out.push(Point::Infinity);
        }
    }
    Ok(out)
}

/// `mu_f(alpha) = d([f] alpha ⊗ f ⊗ l)` restricted to the zeros of `f`.
pub fn mu_f(x: &Cochain, f: &Elem) -> Result<Cochain> {
    if x.codim != 0 || x.scheme == Scheme::Point {
        return domain("mu_f expects a codimension-0 cochain on a curve");
    }
    let ft = x.generic_field()?;
    let (atom, lam) = function_atom(&ft, f)?;
    let line = GradedLine::atom(atom).tensor(&x.line);
    let g = match x.generic_value() {
        Some(g) => g.normalized()?,
        None => TwistedMw::new(MwExpr::zero(&ft, x.weight), x.line.clone()),
    };
    let e = MwExpr::bracket(&ft, f.clone())?.mul(g.expr())?;
    let y = Cochain {
        weight: x.weight + 1,
        line: line.clone(),
        values: [(Point::Generic, TwistedMw::with_prefactor(e, line, lam)?)].into(),
        ..x.clone()
    };
    let mut d = differential(&y)?;
    let keep = zero_points(&ft, f, x.scheme, false)?;
    d.values.retain(|pt, _| keep.contains(pt));
    Ok(d)
}

/// `ord~(f) = sum_x d_x([f] ⊗ f)` over zeros and poles of `f`.
pub fn ord_tilde(f: &Elem, scheme: Scheme, base: &Field) -> Result<Cochain> {
    if scheme == Scheme::Point {
        return domain("ord~ lives on a curve");
    }
    let ft = Field::rational_function(base)?;
    let (atom, lam) = function_atom(&ft, f)?;
    let line = GradedLine::atom(atom);
    let mut out = Cochain::empty(scheme, base, 1, 1, 0, line.clone());
    let g = TwistedMw::with_prefactor(MwExpr::bracket(&ft, f.clone())?, line, lam)?;
    for pt in zero_points(&ft, f, scheme, true)? {
        let r = residue_twisted(&g, &pt.place().expect("closed"))?;
        out.values.insert(pt, normal_value(&r)?);
    }
    Ok(out)
}

/// A codimension-1 cocycle with its recorded invariants.
#[derive(Clone, Debug)]
pub struct ChowWittClass {
    pub representative: Cochain,
    pub chow_degree: i64,
    pub mw_degree: TwistedMw,
}

/// The Euler class of `O(d)` on `P^1` as `ord~` of the divisor of a section
/// `s` (a polynomial of degree `<= d` in chart 0): local equations `s` on
/// `A^1` and `s / t^d` near infinity; twist `O(-d)`.
pub fn euler_class_line(base: &Field, d: i64, section: &Poly) -> Result<ChowWittClass> {
    if section.is_zero() {
        return domain("zero section");
    }
    if d < 0 || section.degree() > d {
        return domain("a section of O(d) is a polynomial of degree <= d");
    }
    let ft = Field::rational_function(base)?;
    let s = ft.poly_elem(section.clone());
    let (atom, lam) = function_atom(&ft, &s)?;
    let line = GradedLine::atom(atom).tensor(&bundle_line(-d));
    let mut rep = Cochain::empty(Scheme::ProjLine, base, 1, 1, -d, line.clone());
    let g = TwistedMw::with_prefactor(MwExpr::bracket(&ft, s.clone())?, line.clone(), lam.clone())?;
    for pt in zero_points(&ft, &s, Scheme::AffineLine, false)? {
        let r = residue_twisted(&g, &pt.place().expect("closed"))?;
        rep.values.insert(pt, normal_value(&r)?);
    }
    if d > section.degree() {
        let local = ft.div(&s, &chart_transition(&ft, d)?)?;
        let gi = TwistedMw::with_prefactor(MwExpr::bracket(&ft, local)?, line, lam)?;
        let r = residue_twisted(&gi, &Place::Infinity)?;
        rep.values.insert(Point::Infinity, normal_value(&r)?);
    }
    let chow = chow_degree(&rep)?;
    let mw = pushforward_point(&rep)?;
    Ok(ChowWittClass { representative: rep, chow_degree: chow, mw_degree: mw })
}

/// Moves an element of `from` into `to` when `to` is `from(t)` or a finite
/// extension of `from`.
fn embed(a: &Elem, from: &Field, to: &Field) -> Result<Elem> {
    if from == to {
        return Ok(a.clone());
    }
    match (from, to, a) {
        (Field::Finite(k), Field::RationalFunction(k2), _) if k.same(k2) => Ok(to.constant(a)),
        (Field::Finite(k), Field::Finite(k2), Elem::F(x)) => Ok(Elem::F(k2.embed_from(k, *x)?)),
        _ => Err(Error::Unsupported("no embedding between these fields".into())),
    }
}

fn embeds(from: &Field, to: &Field) -> bool {
    let probe = from.from_int(1);
    embed(&probe, from, to).is_ok()
        && match (from, to) {
            (Field::Finite(k), Field::Finite(k2)) => {
                k.same(k2) || k2.base().map(|b| b.same(k)).unwrap_or(false)
            }
            (Field::Finite(_), Field::RationalFunction(_)) => true,
            _ => from == to,
        }
}

/// `(a ⊗ l) x (b ⊗ l') = ab ⊗ l ⊗ l'` after base change of the factor that
/// lives over the smaller field.
pub fn exterior_product(x: &TwistedMw, y: &TwistedMw) -> Result<TwistedMw> {
    let (a, b) = (x.normalized()?, y.normalized()?);
    let (fa, fb) = (a.field().clone(), b.field().clone());
    let target = if embeds(&fa, &fb) {
        fb.clone()
    } else if embeds(&fb, &fa) {
        fa.clone()
    } else {
        return Err(Error::Unsupported(
            "exterior products need one factor over the base field".into(),
        ));
    };
    let ea = a.expr().map_slots(&target, |e| embed(e, &fa, &target))?;
    let eb = b.expr().map_slots(&target, |e| embed(e, &fb, &target))?;
    Ok(TwistedMw::new(ea.mul(&eb)?, a.line().tensor(b.line())))
}

/// The connecting map of `G_m ⊂ A^1 ⊃ {0}`: the origin component of `d`.
pub fn localization_boundary(x: &Cochain) -> Result<TwistedMw> {
    let d = differential(x)?;
    let ft = x.generic_field()?;
    let origin = Point::Closed(Poly::t());
    Ok(match d.values.get(&origin) {
        Some(v) => v.clone(),
        None => {
            let k0 = Field::Finite(ft.residue_field(&Place::PAdic(Poly::t()))?);
            let w = GradedLine::atom(Atom::conormal(origin.name(&ft)?)).tensor(&x.line);
            TwistedMw::new(MwExpr::zero(&k0, x.weight - 1), w)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> Field {
        Field::prime(p).unwrap()
    }

    #[test]
    fn differential_of_t_on_a1() {
        let k = f(5);
        let ft = Field::rational_function(&k).unwrap();
        let x = Cochain::generic(Scheme::AffineLine, &k, 0, MwExpr::bracket(&ft, ft.t().unwrap()).unwrap())
            .unwrap();
        assert_eq!(differential(&x).unwrap().to_string(), "{t: 1 @ t*}");
        let c = Cochain::generic(Scheme::AffineLine, &k, 0, MwExpr::bracket(&ft, ft.from_int(2)).unwrap())
            .unwrap();
        assert!(differential(&c).unwrap().values.is_empty());
    }

    #[test]
    fn mu_examples() {
        let k = f(5);
        let ft = Field::rational_function(&k).unwrap();
        let t = ft.t().unwrap();
        let x = Cochain::generic(Scheme::AffineLine, &k, 0, MwExpr::bracket(&ft, t.clone()).unwrap())
            .unwrap();
        assert_eq!(mu_f(&x, &t).unwrap().to_string(), "{t: [-1] @ t* ⊗ t}");
        let mt = ft.neg(&t);
        assert!(mu_f(&x, &mt).unwrap().is_zero().unwrap());
        let lt = ft.mul(&ft.from_int(2), &t);
        assert_eq!(mu_f(&x, &lt).unwrap().to_string(), "{t: [2] @ t* ⊗ t}");
    }

    #[test]
    fn euler_class_invariants() {
        let k = f(3);
        let kk = k.finite_field().unwrap().clone();
        for (d, s) in [(2, Poly::from_coeffs(vec![1, 0, 1])), (2, Poly::t()), (2, Poly::one())] {
            let e = euler_class_line(&k, d, &s).unwrap();
            assert_eq!(e.chow_degree, 2);
            assert!(e.mw_degree.expr().equals(&MwExpr::h(&k)).unwrap(), "{}", e.mw_degree);
        }
        let e = euler_class_line(&k, 1, &Poly::linear(1, &kk)).unwrap();
        assert_eq!(e.chow_degree, 1);
        assert_eq!(euler_class_line(&k, 0, &Poly::one()).unwrap().representative.values.len(), 0);
    }

    #[test]
    fn degree_of_quadratic_point_is_h() {
        let k = f(3);
        let p = Poly::from_coeffs(vec![1, 0, 1]);
        let kp = Field::Finite(k.finite_field().unwrap().residue_field(&p, "s").unwrap());
        let c = Cochain::closed(Scheme::ProjLine, &k, 0, 1, vec![(Point::Closed(p), MwExpr::one(&kp))])
            .unwrap();
        assert!(pushforward_point(&c).unwrap().expr().equals(&MwExpr::h(&k)).unwrap());
    }

    #[test]
    fn h0_examples() {
        let k = f(5);
        let a = MwExpr::bracket(&k, k.from_int(2)).unwrap();
        let x = pullback_flat(&a, Scheme::AffineLine, 0).unwrap();
        assert!(h0_membership(&x).unwrap().unwrap().equals(&a).unwrap());
        let ft = Field::rational_function(&k).unwrap();
        let y = Cochain::generic(Scheme::AffineLine, &k, 0, MwExpr::bracket(&ft, ft.t().unwrap()).unwrap())
            .unwrap();
        assert!(h0_membership(&y).unwrap().is_none());
    }
}
