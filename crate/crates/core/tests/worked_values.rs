//! Small worked values for residues, transfers and Rost-Schmid operations,
//! each checked against a hand computation or a brute-force oracle.

use std::collections::BTreeMap;

use mwk::field::default_extension;
use mwk::mw::{gw_to_mw0, mw0_to_gw, normal_form};
use mwk::parse::{parse_elem, parse_expr};
use mwk::residue::{pullback, reconstruct, residue_at, total_residue};
use mwk::rost_schmid::{
    chow_orders, euler_class_line, exterior_product, localization_boundary, ord_tilde,
    Cochain, Point, Scheme,
};
use mwk::transfer::{canonical_transfer, embedding_table, geometric_transfer};
use mwk::*;

fn fq(p: u32) -> Field {
    Field::prime(p).unwrap()
}

fn ft(k: &Field) -> Field {
    Field::rational_function(k).unwrap()
}

#[test]
fn total_residue_of_t_squared() {
    let f = ft(&fq(5));
    let x = parse_expr(&f, "[t^2]").unwrap();
    let r = total_residue(&x).unwrap();
    assert_eq!(r.len(), 1);
    assert!(r[&Poly::t()].equals(&MwExpr::h(&fq(5))).unwrap());
    assert!(total_residue(&parse_expr(&f, "[3]").unwrap()).unwrap().is_empty());
}

#[test]
fn reconstruct_pullback_has_no_lift() {
    let k = fq(7);
    let f = ft(&k);
    let a = parse_expr(&k, "[3]").unwrap();
    let (c, l) = reconstruct(&pullback(&a, &f).unwrap()).unwrap();
    assert!(c.equals(&a).unwrap());
    assert!(l.is_syntactic_zero());
}

#[test]
fn residue_at_infinity_of_t_is_minus_one() {
    for p in [3, 5, 7, 11] {
        let f = ft(&fq(p));
        let r = residue_at(&parse_expr(&f, "[t]").unwrap(), &Place::Infinity).unwrap();
        let minus_one = gw_to_mw0(&GwForm::one(&fq(p)).neg());
        assert!(r.equals(&minus_one).unwrap(), "F{p}: {r}");
    }
}

#[test]
fn ord_tilde_examples() {
    let k = fq(5);
    let f = ft(&k);
    let t = f.t().unwrap();
    assert_eq!(ord_tilde(&t, Scheme::AffineLine, &k).unwrap().to_string(), "{t: 1 @ t* ⊗ t}");
    let t2 = f.mul(&t, &t);
    let o = ord_tilde(&t2, Scheme::AffineLine, &k).unwrap();
    assert!(o.values[&Point::Closed(Poly::t())].expr().equals(&MwExpr::h(&k)).unwrap());
    assert!(ord_tilde(&f.one(), Scheme::ProjLine, &k).unwrap().values.is_empty());
}

/// Orders of vanishing by repeated division, independent of the residue code.
fn classical_divisor(f: &Field, a: &Elem, k: &Field) -> BTreeMap<Point, i64> {
    let kk = k.finite_field().unwrap();
    let mut out = BTreeMap::new();
    let (num, den) = match a {
        Elem::R(r) => (r.num().clone(), r.den().clone()),
        _ => unreachable!(),
    };
    let n = kk.size();
    let mut candidates = Vec::new();
    for d in 1..=3u32 {
        for idx in 0..n.pow(d) {
            let mut c: Vec<u32> = (0..d).map(|i| (idx / n.pow(i)) % n).collect();
            c.push(1);
            let p = Poly::from_coeffs(c);
            if p.is_irreducible(kk) {
                candidates.push(p);
            }
        }
    }
    for p in candidates {
        let mut ord = 0i64;
        for (poly, sign) in [(&num, 1), (&den, -1)] {
            let mut q = poly.clone();
            while !q.is_zero() && q.rem(&p, kk).is_zero() {
                q = q.div_exact(&p, kk);
                ord += sign;
            }
        }
        if ord != 0 {
            out.insert(Point::Closed(p), ord);
        }
    }
    let inf = den.degree() - num.degree();
    if inf != 0 {
        out.insert(Point::Infinity, inf);
    }
    let _ = f;
    out
}

#[test]
fn chow_comparison_of_ord_tilde_is_the_divisor() {
    let k = fq(3);
    let f = ft(&k);
    for s in ["t", "t^2", "(t+1)*(t^2+1)/t^3", "2*t^3+t", "(t^2+2)^2/(t+2)", "1/(t^2+1)"] {
        let a = parse_elem(&f, s).unwrap();
        let o = ord_tilde(&a, Scheme::ProjLine, &k).unwrap();
        assert_eq!(chow_orders(&o).unwrap(), classical_divisor(&f, &a, &k), "{s}");
    }
}

#[test]
fn localization_boundary_examples() {
    let k = fq(5);
    let f = ft(&k);
    let x = Cochain::generic(Scheme::AffineLine, &k, 0, parse_expr(&f, "[t]").unwrap()).unwrap();
    assert_eq!(localization_boundary(&x).unwrap().to_string(), "1 @ t*");
    let c = Cochain::generic(Scheme::AffineLine, &k, 0, parse_expr(&f, "[2]").unwrap()).unwrap();
    assert!(localization_boundary(&c).unwrap().expr().is_zero().unwrap());
}

#[test]
fn euler_class_examples() {
    let k = fq(5);
    let kk = k.finite_field().unwrap().clone();
    // a section of O(1) vanishing at t = 3
    let e = euler_class_line(&k, 1, &Poly::linear(3, &kk)).unwrap();
    assert_eq!(e.chow_degree, 1);
    assert_eq!(e.representative.values.len(), 1);
    // t^2 - 2 with 2 a nonsquare mod 5: one point of degree 2
    let s = Poly::from_coeffs(vec![3, 0, 1]);
    let e = euler_class_line(&k, 2, &s).unwrap();
    assert_eq!(e.chow_degree, 2);
    assert_eq!(e.representative.values.keys().collect::<Vec<_>>(), vec![&Point::Closed(s)]);
    assert!(euler_class_line(&k, 0, &Poly::one()).unwrap().representative.values.is_empty());
}

#[test]
fn exterior_unit() {
    let k = fq(7);
    let b = TwistedMw::new(parse_expr(&k, "[3] + eta*[2,5]").unwrap(), GradedLine::atom(Atom::dt()));
    let one = TwistedMw::untwisted(MwExpr::one(&k));
    assert!(exterior_product(&one, &b).unwrap().equals(&b).unwrap());
}

/// `Tr(x) = x + x^q + ... + x^{q^{d-1}}` for `F_{q^d} / F_q`.
fn trace(kp: &FiniteField, q: u32, d: u32, x: u32) -> u32 {
    let mut acc = 0;
    let mut y = x;
    for _ in 0..d {
        acc = kp.add(acc, y);
        y = kp.pow(y, q as i64).unwrap();
    }
    acc
}

#[test]
fn canonical_transfer_is_the_trace_form_in_w() {
    for (p, d) in [(3u32, 2u32), (5, 2), (3, 3), (7, 2)] {
        let base = fq(p);
        let k = base.finite_field().unwrap().clone();
        let m = default_extension(&k, d, "s").unwrap().modulus().clone();
        let kp = k.residue_field(&m, "s").unwrap();
        let kpf = Field::Finite(kp.clone());
        let basis: Vec<u32> = (0..d).map(|i| kp.pow(kp.from_coeffs(&[0, 1]), i as i64).unwrap()).collect();
        for a in 1..kp.size() {
            let gram: Vec<Vec<u32>> = basis
                .iter()
                .map(|&bi| basis.iter().map(|&bj| trace(&kp, p, d, kp.mul(a, kp.mul(bi, bj)))).collect())
                .collect();
            let tr = GwForm::from_gram(&base, &gram).unwrap();
            let x = TwistedMw::untwisted(gw_to_mw0(&GwForm::diag(&kpf, vec![Elem::F(a)]).unwrap()));
            let c = mw0_to_gw(canonical_transfer(&x, &m, &base).unwrap().expr()).unwrap();
            assert!(c.witt_equal(&tr).unwrap(), "F{p}^{d}: a={a}");
        }
    }
}

#[test]
fn canonical_transfer_through_a_tower() {
    let f3 = fq(3);
    let k3 = f3.finite_field().unwrap().clone();
    let r = Poly::from_coeffs(vec![1, 0, 1]);
    let k9 = k3.residue_field(&r, "s").unwrap();
    let f9 = Field::Finite(k9.clone());
    let q = (0..81u32)
        .map(|i| Poly::from_coeffs(vec![i % 9, i / 9, 1]))
        .find(|q| q.is_irreducible(&k9))
        .unwrap();
    let k81 = k9.residue_field(&q, "u").unwrap();
    let direct_mod = default_extension(&k3, 4, "s").unwrap().modulus().clone();
    let kd = k3.residue_field(&direct_mod, "s").unwrap();
    let tab = embedding_table(&kd, &k81).unwrap();
    let (fd, f81) = (Field::Finite(kd.clone()), Field::Finite(k81.clone()));
    for a in (1..kd.size()).step_by(7) {
        let xd = TwistedMw::untwisted(MwExpr::angle(&fd, Elem::F(a)).unwrap());
        let direct = canonical_transfer(&xd, &direct_mod, &f3).unwrap();
        let xt = TwistedMw::untwisted(MwExpr::angle(&f81, Elem::F(tab[a as usize])).unwrap());
        let mid = canonical_transfer(&xt, &q, &f9).unwrap();
        let tower = canonical_transfer(&mid, &r, &f3).unwrap();
        let (a1, a2) = (mw0_to_gw(direct.expr()).unwrap(), mw0_to_gw(tower.expr()).unwrap());
        assert!(a1.witt_equal(&a2).unwrap(), "a={a}: {} vs {}", direct, tower);
    }
}

#[test]
fn geometric_transfer_of_rational_point_is_identity() {
    let k = fq(11);
    let kk = k.finite_field().unwrap().clone();
    let x = parse_expr(&k, "[3] - 2*eta*[5,7]").unwrap();
    let y = geometric_transfer(&x, &Poly::linear(4, &kk), &k).unwrap();
    assert!(y.equals(&x).unwrap());
    assert_eq!(normal_form(&y).unwrap(), normal_form(&x).unwrap());
}
