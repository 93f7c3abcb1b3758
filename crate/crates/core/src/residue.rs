//! Residue maps of `F_q(t)`, the split exact sequence, and equality over
//! `F_q(t)`.

use std::collections::BTreeMap;

use crate::error::{domain, Error, Result};
use crate::field::{self, Elem, Field, Place, Poly, RatFn};
use crate::lines::{Atom, GradedLine, TwistedMw};
use crate::mw::{normal_form, MwExpr};

/// `kappa(v)` as a field.
pub fn residue_field_of(f: &Field, v: &Place) -> Result<Field> {
    Ok(Field::Finite(f.residue_field(v)?))
}

/// Printable name of a place, used for conormal atoms.
pub fn place_name(f: &Field, v: &Place) -> Result<String> {
    let c = f.constants();
    let k = c.finite_field().ok_or_else(|| Error::Unsupported("expected F_q(t)".into()))?;
    Ok(match v {
        Place::Infinity => "inf".to_string(),
        Place::PAdic(p) => {
            let s = p.fmt_with(k, "t");
            if s.chars().all(|c| c.is_ascii_alphanumeric()) {
                s
            } else {
                format!("({s})")
            }
        }
    })
}

/// `d_v^pi`, by decomposing each slot as `u pi^n`, expanding
/// `[u pi^n] = [u] + <u> n_eps [pi]`, moving the `[pi]` factors to the front
/// (one `eps` per crossing), collapsing `[pi, pi] = [pi, -1]` and reading off
/// `d([pi, u..]) = [u..]`, `d([u..]) = 0`.
pub fn residue(x: &MwExpr, v: &Place, pi: &Elem) -> Result<MwExpr> {
    let f = x.field();
    if !matches!(f, Field::RationalFunction(_)) {
        return Err(Error::Unsupported("residues are defined on F_q(t)".into()));
    }
    if f.valuation(pi, v)? != 1 {
        return domain("the given element is not a uniformizer at this place");
    }
    let kf = residue_field_of(f, v)?;
    let m1 = kf.from_int(-1);
    let mut out = MwExpr::zero(&kf, x.degree() - 1);
    for (t, c) in x.terms() {
        let mut ns = Vec::with_capacity(t.slots.len());
        let mut us = Vec::with_capacity(t.slots.len());
        for a in &t.slots {
            let n = f.valuation(a, v)?;
            let u = f.mul(a, &f.pow(pi, -n)?);
            ns.push(n);
            us.push(Elem::F(f.reduce(&u, v)?));
        }
        let ramified: Vec<usize> = (0..ns.len()).filter(|&i| ns[i] != 0).collect();
        for mask in 1u64..(1u64 << ramified.len()) {
            let mut in_s = vec![false; ns.len()];
            for (b, &i) in ramified.iter().enumerate() {
                in_s[i] = mask >> b & 1 == 1;
            }
            let mut crossings = 0usize;
            let mut outside = 0usize;
            for &s in &in_s {
                if s {
                    crossings += outside;
                } else {
                    outside += 1;
                }
            }
            let mut d =
                if crossings % 2 == 1 { MwExpr::epsilon(&kf) } else { MwExpr::one(&kf) };
            let mut size = 0;
            for i in 0..ns.len() {
                if in_s[i] {
                    size += 1;
                    d = d.mul(&MwExpr::angle(&kf, us[i].clone())?)?.simplify();
                    d = d.mul(&MwExpr::n_eps(&kf, ns[i]))?.simplify();
                }
            }
            let mut slots = vec![m1.clone(); size - 1];
            slots.extend((0..ns.len()).filter(|&j| !in_s[j]).map(|j| us[j].clone()));
            let sym = MwExpr::symbol(&kf, c, t.eta, slots)?;
            out = out.add(&d.mul(&sym)?)?;
        }
    }
    Ok(out.simplify())
}

/// `d_v` with the fixed uniformizer (`p`, or `-1/t` at infinity).
pub fn residue_at(x: &MwExpr, v: &Place) -> Result<MwExpr> {
    residue(x, v, &x.field().uniformizer(v)?)
}

/// `d_v(a ⊗ l) = d_v^pi(a) ⊗ pi* ⊗ l` with the fixed uniformizer.
pub fn residue_twisted(x: &TwistedMw, v: &Place) -> Result<TwistedMw> {
    let n = x.normalized()?;
    let r = residue_at(n.expr(), v)?;
    let line = GradedLine::atom(Atom::conormal(place_name(n.field(), v)?)).tensor(n.line());
    Ok(TwistedMw::new(r, line))
}

/// The twisted residue computed with an arbitrary uniformizer
/// `pi = u pi_v`; the basis `pi*` equals `u^{-1} pi_v*`.
pub fn residue_twisted_with(x: &TwistedMw, v: &Place, pi: &Elem) -> Result<TwistedMw> {
    let n = x.normalized()?;
    let f = n.field();
    let r = residue(n.expr(), v, pi)?;
    let u = f.div(pi, &f.uniformizer(v)?)?;
    let ubar = Elem::F(f.reduce(&u, v)?);
    let kf = r.field().clone();
    let line = GradedLine::atom(Atom::conormal(place_name(f, v)?)).tensor(n.line());
    TwistedMw::with_prefactor(r, line, kf.inv(&ubar)?)
}

/// The constant field embedding `F_q -> F_q(t)` on expressions.
pub fn pullback(x: &MwExpr, target: &Field) -> Result<MwExpr> {
    match (x.field(), target) {
        (Field::Finite(a), Field::RationalFunction(b)) if a.same(b) => {}
        _ => return Err(Error::MixedFields),
    }
    x.map_slots(target, |a| Ok(target.constant(a)))
}

fn slot_refs(x: &MwExpr) -> Vec<&Elem> {
    x.terms().flat_map(|(t, _)| t.slots.iter()).collect()
}

/// The closed points where some slot of `x` is not a unit.
pub fn support(x: &MwExpr) -> Result<Vec<Poly>> {
    x.field().bad_places(&slot_refs(x))
}

/// The nonzero residues `d_p^p(x)` over all finite places.
pub fn total_residue(x: &MwExpr) -> Result<BTreeMap<Poly, MwExpr>> {
    let mut out = BTreeMap::new();
    for p in support(x)? {
        let r = residue(x, &Place::PAdic(p.clone()), &x.field().poly_elem(p.clone()))?;
        if !r.is_zero()? {
            out.insert(p, r);
        }
    }
    Ok(out)
}

/// `d_inf([-1/t] x)`, which recovers `c` from `x = pullback(c)`.
pub fn specialize_infinity(x: &MwExpr) -> Result<MwExpr> {
    let f = x.field();
    let pi = f.uniformizer(&Place::Infinity)?;
    residue(&MwExpr::bracket(f, pi.clone())?.mul(x)?, &Place::Infinity, &pi)
}

/// `d_c([t - c] x)` at the least rational `c` where every slot is a unit.
pub fn constant_part(x: &MwExpr) -> Result<MwExpr> {
    let f = x.field();
    let k = match f {
        Field::RationalFunction(k) => k.clone(),
        _ => return Err(Error::Unsupported("constant part is defined on F_q(t)".into())),
    };
    let bad = support(x)?;
    for c in 0..k.size() {
        let p = Poly::linear(c, &k);
        if bad.contains(&p) {
            continue;
        }
        let pe = f.poly_elem(p.clone());
        let y = MwExpr::bracket(f, pe.clone())?.mul(x)?;
        return residue(&y, &Place::PAdic(p), &pe);
    }
    Err(Error::Unsupported(
        "no unramified rational place; extend scalars to a larger F_q".into(),
    ))
}

/// Zero test over `F_q(t)`: all finite residues vanish and the class it then
/// comes from is zero.
pub fn function_field_is_zero(d: &MwExpr) -> Result<bool> {
    if !total_residue(d)?.is_empty() {
        return Ok(false);
    }
    specialize_infinity(d)?.is_zero()
}

/// `beta = sum c eta^m [b..]` over `F(p)` lifts to `sum c eta^m [p, b..]`
/// with degree `< deg p` representatives.
pub fn lift(beta: &MwExpr, p: &Poly, ft: &Field) -> Result<MwExpr> {
    let kp = match beta.field() {
        Field::Finite(k) => k.clone(),
        _ => return Err(Error::Unsupported("lifts start from a residue field".into())),
    };
    let nf = normal_form(beta)?;
    let pe = ft.poly_elem(p.clone());
    let mut out = MwExpr::zero(ft, beta.degree() + 1);
    for (t, c) in nf.terms() {
        let mut slots = vec![pe.clone()];
        for b in &t.slots {
            let a = match b {
                Elem::F(a) => *a,
                _ => unreachable!(),
            };
            slots.push(Elem::R(RatFn::poly(field::lift(a, p, &kp))));
        }
        out = out.add(&MwExpr::symbol(ft, c, t.eta, slots)?)?;
    }
    Ok(out)
}

/// `x = pullback(c) + L` with `L` built from lifts in order of decreasing
/// degree; `c` is read at infinity, where `x - L` is unramified.
pub fn reconstruct(x: &MwExpr) -> Result<(MwExpr, MwExpr)> {
    let ft = x.field().clone();
    let mut y = x.simplify();
    let mut l = MwExpr::zero(&ft, x.degree());
    loop {
        let mut places = support(&y)?;
        places.sort_by(|a, b| b.degree().cmp(&a.degree()).then(a.cmp(b)));
        let mut level = None;
        let mut lifts = Vec::new();
        for p in places {
            if level.map(|d| p.degree() < d).unwrap_or(false) {
                break;
            }
            let b = residue(&y, &Place::PAdic(p.clone()), &ft.poly_elem(p.clone()))?;
            if !b.is_zero()? {
                level = Some(p.degree());
                lifts.push(lift(&b, &p, &ft)?);
            }
        }
        if lifts.is_empty() {
            break;
        }
        for lf in lifts {
            l = l.add(&lf)?;
            y = y.sub(&lf)?.simplify();
        }
    }
    Ok((normal_form(&specialize_infinity(&y)?)?, l.simplify()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mw::mw_equal;

    fn ft(p: u32) -> Field {
        Field::rational_function(&Field::prime(p).unwrap()).unwrap()
    }

    fn poly(f: &Field, c: &[u32]) -> Elem {
        f.poly_elem(Poly::from_coeffs(c.to_vec()))
    }

    #[test]
    fn residue_of_pi_units() {
        let f = ft(7);
        let t = f.t().unwrap();
        let u = poly(&f, &[2, 1]);
        let x = MwExpr::brackets(&f, vec![t.clone(), u.clone(), f.from_int(3)]).unwrap();
        let v = Place::PAdic(Poly::t());
        assert_eq!(residue(&x, &v, &t).unwrap().to_string(), "[2,3]");
        let y = MwExpr::brackets(&f, vec![u, f.from_int(3)]).unwrap();
        assert!(residue(&y, &v, &t).unwrap().is_syntactic_zero());
    }

    #[test]
    fn residue_of_t_squared_is_h() {
        let f = ft(3);
        let t2 = poly(&f, &[0, 0, 1]);
        let tr = total_residue(&MwExpr::bracket(&f, t2).unwrap()).unwrap();
        assert_eq!(tr.len(), 1);
        let (p, r) = tr.iter().next().unwrap();
        assert_eq!(*p, Poly::t());
        assert!(r.equals(&MwExpr::h(r.field())).unwrap());
    }

    #[test]
    fn infinity_residue_of_t() {
        let f = ft(5);
        let r = residue_at(&MwExpr::bracket(&f, f.t().unwrap()).unwrap(), &Place::Infinity).unwrap();
        assert!(r.equals(&MwExpr::integer(r.field(), -1)).unwrap());
    }

    #[test]
    fn reconstruct_t() {
        let f = ft(5);
        let x = MwExpr::bracket(&f, f.t().unwrap()).unwrap();
        let (c, l) = reconstruct(&x).unwrap();
        let back = pullback(&c, &f).unwrap().add(&l).unwrap();
        assert!(mw_equal(&x, &back).unwrap().holds());
        assert!(total_residue(&x.sub(&l).unwrap()).unwrap().is_empty());
    }

    #[test]
    fn constant_part_retracts() {
        let f = ft(5);
        let k = f.constants();
        let a = MwExpr::brackets(&k, vec![k.from_int(2)]).unwrap();
        let c = constant_part(&pullback(&a, &f).unwrap()).unwrap();
        assert!(c.equals(&a).unwrap());
    }
}
