//! Transfers for finite extensions `F_q(p) / F_q`: geometric (lift and
//! correct through reciprocity), Scharlau (Gram matrix of the coefficient
//! functional), and canonical (`<p'>`-corrected).

use std::sync::Arc;

use crate::error::{domain, Error, Result};
use crate::field::{reduce_poly, Elem, Field, FiniteField, Place, Poly};
use crate::forms::GwForm;
use crate::lines::TwistedMw;
use crate::mw::{normal_form, MwExpr};
use crate::residue::{lift, residue, residue_at, support};

fn finite_of(f: &Field) -> Result<Arc<FiniteField>> {
    f.finite_field()
        .cloned()
        .ok_or_else(|| Error::Unsupported("expected a finite field".into()))
}

/// `tau_p`: the unique maps with `sum_p tau_p d_p^p + d_inf^{-1/t} = 0`.
/// Lifts `beta` to `alpha` with `d_p^p(alpha) = beta`; the remaining residues
/// sit at places of smaller degree, handled recursively.
pub fn geometric_transfer(beta: &MwExpr, p: &Poly, base: &Field) -> Result<MwExpr> {
    let k = finite_of(base)?;
    if !p.is_irreducible(&k) || p.lead() != 1 {
        return domain("transfer along a reducible or non-monic polynomial");
    }
    let kp = finite_of(beta.field())?;
    if !kp.same(&*k.residue_field(p, "s")?) {
        return Err(Error::MixedFields);
    }
    if p.degree() == 1 {
        return normal_form(beta);
    }
    let ft = Field::rational_function(base)?;
    let alpha = lift(beta, p, &ft)?;
    let mut acc = residue_at(&alpha, &Place::Infinity)?.neg();
    for q in support(&alpha)? {
        if &q == p {
            continue;
        }
        let r = residue(&alpha, &Place::PAdic(q.clone()), &ft.poly_elem(q.clone()))?;
        if r.is_syntactic_zero() {
            continue;
        }
        acc = acc.sub(&geometric_transfer(&r, &q, base)?)?;
    }
    normal_form(&acc)
}

/// `sum_p tau_p(d_p^p x) + d_inf^{-1/t}(x)`; vanishes identically.
pub fn reciprocity_defect(x: &MwExpr) -> Result<MwExpr> {
    let ft = x.field();
    let base = ft.constants();
    let mut acc = residue_at(x, &Place::Infinity)?;
    for p in support(x)? {
        let r = residue(x, &Place::PAdic(p.clone()), &ft.poly_elem(p.clone()))?;
        if r.is_syntactic_zero() {
            continue;
        }
        acc = acc.add(&geometric_transfer(&r, &p, &base)?)?;
    }
    normal_form(&acc)
}

/// Scharlau transfer along `f_p` with `f_p(s^i) = 0` for `i < d - 1` and
/// `f_p(s^{d-1}) = 1`: each `<a>` goes to the Gram form
/// `(x, y) -> f_p(a x y)` on the power basis.
pub fn scharlau_transfer(form: &GwForm, p: &Poly, base: &Field) -> Result<GwForm> {
    let k = finite_of(base)?;
    let kp = finite_of(form.field())?;
    if !kp.same(&*k.residue_field(p, "s")?) {
        return Err(Error::MixedFields);
    }
    let d = p.degree() as usize;
    let entry = |a: &Elem| -> Result<GwForm> {
        let a = match a {
            Elem::F(a) => *a,
            _ => unreachable!(),
        };
        if d == 1 {
            return GwForm::diag(base, vec![Elem::F(a)]);
        }
        let s = reduce_poly(&Poly::t(), p, &k, &kp);
        let mut pw = vec![kp.from_int(1)];
        for i in 1..2 * d - 1 {
            pw.push(kp.mul(pw[i - 1], s));
        }
        let fp = |b: u32| kp.coeffs(b).get(d - 1).copied().unwrap_or(0);
        let gram: Vec<Vec<u32>> =
            (0..d).map(|i| (0..d).map(|j| fp(kp.mul(a, pw[i + j]))).collect()).collect();
        GwForm::from_gram(base, &gram)
    };
    let mut acc = GwForm::zero(base);
    for a in form.plus() {
        acc = acc.add(&entry(a)?)?;
    }
    for a in form.minus() {
        acc = acc.sub(&entry(a)?)?;
    }
    Ok(acc)
}

/// `p'` reduced into `F(p)`.
pub fn derivative_class(p: &Poly, base: &Field) -> Result<Elem> {
    let k = finite_of(base)?;
    let kp = k.residue_field(p, "s")?;
    let u = reduce_poly(&p.derivative(&k), p, &k, &kp);
    if u == 0 {
        return domain("inseparable extension");
    }
    Ok(Elem::F(u))
}

/// `Tr(a ⊗ l) = tau_p(<p'> a) ⊗ l`.
pub fn canonical_transfer(x: &TwistedMw, p: &Poly, base: &Field) -> Result<TwistedMw> {
    let n = x.normalized()?;
    let dp = derivative_class(p, base)?;
    let a = n.expr().times_angle(&dp)?.simplify();
    Ok(TwistedMw::new(geometric_transfer(&a, p, base)?, n.line().clone()))
}

/// An isomorphism `src -> dst` as an index table, for `src` a simple
/// extension of its prime field (or the prime field itself).
pub fn embedding_table(src: &FiniteField, dst: &FiniteField) -> Result<Vec<u32>> {
    if src.characteristic() != dst.characteristic() || dst.size() % src.size() != 0 {
        return domain("no embedding between these fields");
    }
    if src.is_prime_field() {
        return Ok((0..src.size()).map(|a| dst.from_int(a as i64)).collect());
    }
    if src.base().map(|b| !b.is_prime_field()).unwrap_or(true) {
        return Err(Error::Unsupported("embedding of a relative extension".into()));
    }
    let m = src.modulus().coeffs().to_vec();
    let eval = |r: u32, c: &[u32]| {
        c.iter().rev().fold(0u32, |acc, &ci| dst.add(dst.mul(acc, r), dst.from_int(ci as i64)))
    };
    let root = (0..dst.size())
        .find(|&r| eval(r, &m) == 0)
        .ok_or_else(|| Error::Domain("minimal polynomial has no root in target".into()))?;
    Ok((0..src.size()).map(|a| eval(root, &src.coeffs(a))).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mw::gw_to_mw0;

    #[test]
    fn linear_transfer_is_identity() {
        let f = Field::prime(5).unwrap();
        let k = f.finite_field().unwrap().clone();
        let p = Poly::linear(2, &k);
        let b = MwExpr::bracket(&f, f.from_int(3)).unwrap();
        assert!(geometric_transfer(&b, &p, &f).unwrap().equals(&b).unwrap());
    }

    #[test]
    fn f9_over_f3_transfer_of_one_is_hyperbolic() {
        let f = Field::prime(3).unwrap();
        let p = Poly::from_coeffs(vec![1, 0, 1]);
        let k = f.finite_field().unwrap().clone();
        let kp = Field::Finite(k.residue_field(&p, "s").unwrap());
        let one = GwForm::one(&kp);
        let s = scharlau_transfer(&one, &p, &f).unwrap();
        assert!(s.gw_equal(&GwForm::h(&f)).unwrap());
        let g = geometric_transfer(&gw_to_mw0(&one), &p, &f).unwrap();
        assert!(g.equals(&MwExpr::h(&f)).unwrap());
    }

    #[test]
    fn reciprocity_for_t() {
        let f = Field::prime(3).unwrap();
        let ft = Field::rational_function(&f).unwrap();
        let x = MwExpr::bracket(&ft, ft.t().unwrap()).unwrap();
        assert!(reciprocity_defect(&x).unwrap().is_zero().unwrap());
    }

    #[test]
    fn embedding_respects_arithmetic() {
        let f3 = Field::prime(3).unwrap();
        let k = f3.finite_field().unwrap().clone();
        let p = Poly::from_coeffs(vec![2, 0, 0, 1, 1]);
        assert!(p.is_irreducible(&k));
        let src = k.residue_field(&p, "s").unwrap();
        let f9 = Field::finite(3, 2).unwrap();
        let k9 = f9.finite_field().unwrap().clone();
        let q = (0..81u32)
            .map(|i| Poly::from_coeffs(vec![i % 9, i / 9, 1]))
            .find(|q| q.is_irreducible(&k9))
            .unwrap();
        let dst = k9.residue_field(&q, "s").unwrap();
        let tab = embedding_table(&src, &dst).unwrap();
        for a in 0..81 {
            for b in 0..81 {
                assert_eq!(tab[src.mul(a, b) as usize], dst.mul(tab[a as usize], tab[b as usize]));
                assert_eq!(tab[src.add(a, b) as usize], dst.add(tab[a as usize], tab[b as usize]));
            }
        }
    }
}
