//! Seeded property suites. Each acceptance criterion is a named suite; the
//! CLI and the acceptance test both run them from here.

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{default_extension, Elem, Field, Place, Poly};
use crate::forms::GwForm;
use crate::lines::{Atom, GradedLine, TwistedMw};
use crate::mw::{gw_to_mw0, mw0_to_gw, mw_equal, normal_form, MwExpr};
use crate::parse::parse_expr;
use crate::random::{expr as random_expr, rng, unit, SeededRng, Shape};
use crate::residue::{
    pullback, reconstruct, residue, residue_at, residue_twisted, residue_twisted_with, support,
};
use crate::rost_schmid::{
    bundle_line, chow_degree, differential, euler_class_line, exterior_product, h0_membership,
    mu_f, pushforward_point, Cochain, Point, Scheme,
};
use crate::transfer::{geometric_transfer, reciprocity_defect, scharlau_transfer};

/// Outcome of a suite: counts and the first few counterexamples.
#[derive(Clone, Debug)]
pub struct Report {
    pub name: String,
    pub passed: usize,
    pub total: usize,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
}

const MAX_SHOWN: usize = 5;

impl Report {
    fn new(name: &str) -> Self {
        Report { name: name.into(), passed: 0, total: 0, failures: Vec::new(), notes: Vec::new() }
    }

    pub fn ok(&self) -> bool {
        self.passed == self.total && self.failures.is_empty()
    }

    /// Records one case; an error counts as a failure.
    fn case(&mut self, outcome: Result<bool>, what: impl FnOnce() -> String) {
        self.total += 1;
        match outcome {
            Ok(true) => self.passed += 1,
            Ok(false) => self.fail(what()),
            Err(e) => self.fail(format!("{}: {e}", what())),
        }
    }

    fn fail(&mut self, msg: String) {
        if self.failures.len() < MAX_SHOWN {
            self.failures.push(msg);
        }
    }

    fn merge(&mut self, o: Report) {
        self.passed += o.passed;
        self.total += o.total;
        for f in o.failures {
            self.fail(f);
        }
        self.notes.extend(o.notes);
    }

    pub fn status(&self) -> String {
        format!("{} {}/{}", if self.ok() { "PASS" } else { "FAIL" }, self.passed, self.total)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.status())?;
        for n in &self.notes {
            write!(f, "\n  note: {n}")?;
        }
        for c in &self.failures {
            write!(f, "\n  counterexample: {c}")?;
        }
        Ok(())
    }
}

pub const SUITES: &[&str] = &[
    "mw-relations",
    "split-exactness",
    "d-squared-p1",
    "reciprocity",
    "acceptance-1",
    "acceptance-2",
    "acceptance-3",
    "acceptance-4",
    "acceptance-5",
    "acceptance-6",
    "acceptance-7",
    "acceptance-8",
    "acceptance-9",
    "acceptance-10",
    "acceptance-11",
    "acceptance-12",
    "acceptance-13",
];

pub fn run_suite(name: &str, seed: u64) -> Result<Report> {
    let mut r = match name {
        "mw-relations" | "acceptance-1" => relations(seed, 500)?,
        "acceptance-2" => degree_zero_round_trip(seed)?,
        "acceptance-3" => residue_goldens()?,
        "acceptance-4" => uniformizer_independence(seed, 100)?,
        "split-exactness" | "acceptance-5" => split_exactness(seed, 100)?,
        "reciprocity" | "acceptance-6" => reciprocity_suite(seed)?,
        "acceptance-7" => scharlau_agreement()?,
        "d-squared-p1" | "acceptance-8" => complex_property(seed, 40)?,
        "acceptance-9" => mu_goldens()?,
        "acceptance-10" => homotopy_invariance(seed, 50)?,
        "acceptance-11" => p1_slice(seed)?,
        "acceptance-12" => finite_field_structure(seed, 100)?,
        "acceptance-13" => products(seed, 50)?,
        _ => return Err(Error::Domain(format!("unknown suite '{name}'"))),
    };
    r.name = name.into();
    Ok(r)
}

fn prime(p: u32) -> Field {
    Field::prime(p).expect("odd prime")
}

fn finite(p: u32, k: u32) -> Field {
    Field::finite(p, k).expect("small field")
}

fn ftof(k: &Field) -> Field {
    Field::rational_function(k).expect("finite base")
}

fn eq(x: &MwExpr, y: &MwExpr) -> Result<bool> {
    Ok(mw_equal(x, y)?.holds())
}

fn units(k: &Field) -> Vec<Elem> {
    let n = k.finite_field().expect("finite").size();
    (1..n).map(Elem::F).collect()
}

fn sub_seed(seed: u64, tag: u64) -> SeededRng {
    rng(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ tag)
}

fn eps_pow(f: &Field, n: i64) -> MwExpr {
    if n.rem_euclid(2) == 1 {
        MwExpr::epsilon(f)
    } else {
        MwExpr::one(f)
    }
}

/// Relations of the presentation and the elementary identities.
pub fn relations(seed: u64, per_field: usize) -> Result<Report> {
    let mut rep = Report::new("relations");
    let shape = Shape { max_slots: 2, ..Shape::default() };
    for (i, f) in [prime(3), prime(5), prime(7), finite(3, 2), prime(11)].iter().enumerate() {
        let mut r = sub_seed(seed, 100 + i as u64);
        for _ in 0..per_field {
            let a = unit(f, &shape, &mut r);
            let b = unit(f, &shape, &mut r);
            let m = r.gen_range(-1..=2);
            let n = r.gen_range(-1..=2);
            let x = random_expr(f, m, &shape, &mut r);
            let y = random_expr(f, n, &shape, &mut r);
            let e = r.gen_range(-3..=4i64);
            let (fa, fb) = (f.fmt_elem(&a), f.fmt_elem(&b));
            let out = (|| -> Result<Option<&'static str>> {
                let br = |u: &Elem| MwExpr::bracket(f, u.clone());
                let m1 = f.from_int(-1);
                let one_minus = f.sub(&f.one(), &a);
                if !f.is_zero(&one_minus) && !eq(&br(&a)?.mul(&br(&one_minus)?)?, &MwExpr::zero(f, 2))? {
                    return Ok(Some("[a][1-a] = 0"));
                }
                let rhs = br(&a)?.add(&br(&b)?)?.add(&MwExpr::eta(f).mul(&MwExpr::brackets(f, vec![a.clone(), b.clone()])?)?)?;
                if !eq(&br(&f.mul(&a, &b))?, &rhs)? {
                    return Ok(Some("[ab] = [a] + [b] + eta[a,b]"));
                }
                if !eq(&MwExpr::eta(f).mul(&br(&a)?)?, &br(&a)?.mul(&MwExpr::eta(f))?)? {
                    return Ok(Some("eta[a] = [a]eta"));
                }
                if !eq(&MwExpr::eta(f).mul(&MwExpr::h(f))?, &MwExpr::zero(f, -1))? {
                    return Ok(Some("eta h = 0"));
                }
                let aa = MwExpr::brackets(f, vec![a.clone(), a.clone()])?;
                if !eq(&aa, &MwExpr::brackets(f, vec![m1.clone(), a.clone()])?)?
                    || !eq(&aa, &MwExpr::brackets(f, vec![a.clone(), m1.clone()])?)?
                {
                    return Ok(Some("[a,a] = [-1,a] = [a,-1]"));
                }
                if !eq(&MwExpr::brackets(f, vec![a.clone(), f.neg(&a)])?, &MwExpr::zero(f, 2))? {
                    return Ok(Some("[a,-a] = 0"));
                }
                let sw = eps_pow(f, m * n).mul(&y.mul(&x)?)?;
                if !eq(&x.mul(&y)?, &sw)? {
                    return Ok(Some("xy = eps^{mn} yx"));
                }
                if !eq(&br(&f.pow(&a, e)?)?, &MwExpr::n_eps(f, e).mul(&br(&a)?)?)? {
                    return Ok(Some("[a^n] = n_eps[a]"));
                }
                Ok(None)
            })();
            rep.case(out.map(|o| o.is_none()), || {
                format!("{f}: a={fa} b={fb} x={x} y={y} n={e}")
            });
        }
    }
    Ok(rep)
}

/// Multisets of size `n` from `items`.
fn multisets(items: &[Elem], n: usize) -> Vec<Vec<Elem>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for (i, a) in items.iter().enumerate() {
        for mut rest in multisets(&items[i..], n - 1) {
            rest.insert(0, a.clone());
            out.push(rest);
        }
    }
    out
}

/// `GW <-> K^MW_0` round trips over all virtual forms with at most four
/// entries.
pub fn degree_zero_round_trip(seed: u64) -> Result<Report> {
    let mut rep = Report::new("degree0");
    for p in [3, 5] {
        let f = prime(p);
        let us = units(&f);
        for size in 0..=4 {
            for np in 0..=size {
                for plus in multisets(&us, np) {
                    for minus in multisets(&us, size - np) {
                        let form = GwForm::new(&f, plus.clone(), minus)?;
                        let x = gw_to_mw0(&form);
                        let back = mw0_to_gw(&x).and_then(|g| g.gw_equal(&form));
                        let again = mw0_to_gw(&x).and_then(|g| eq(&gw_to_mw0(&g), &x));
                        rep.case(back.and_then(|b| again.map(|c| b && c)), || {
                            format!("F{p}: {form:?}")
                        });
                    }
                }
            }
        }
        let mut r = sub_seed(seed, 200 + p as u64);
        for _ in 0..100 {
            let x = random_expr(&f, 0, &Shape::default(), &mut r);
            let out = mw0_to_gw(&x).and_then(|g| eq(&gw_to_mw0(&g), &x));
            rep.case(out, || format!("F{p}: {x}"));
        }
    }
    Ok(rep)
}

fn golden(rep: &mut Report, got: Result<String>, want: &str) {
    let (ok, shown) = match &got {
        Ok(s) => (Ok(s == want), s.clone()),
        Err(e) => (Err(e.clone()), String::new()),
    };
    rep.case(ok, || format!("got '{shown}', want '{want}'"));
}

/// The residue examples, printed canonically.
pub fn residue_goldens() -> Result<Report> {
    let mut rep = Report::new("residues");
    let f7 = ftof(&prime(7));
    let f5 = ftof(&prime(5));
    let f3 = ftof(&prime(3));
    let v = Place::PAdic(Poly::t());
    let pe = |f: &Field, s: &str| parse_expr(f, s);
    golden(
        &mut rep,
        pe(&f7, "[t,2,3]").and_then(|x| residue(&x, &v, &f7.t()?)).map(|r| r.to_string()),
        "[2,3]",
    );
    golden(
        &mut rep,
        pe(&f5, "[2,t+1]").and_then(|x| residue(&x, &v, &f5.t()?)).map(|r| r.to_string()),
        "0",
    );
    golden(
        &mut rep,
        pe(&f5, "[t,-1]").and_then(|x| residue(&x, &v, &f5.t()?)).map(|r| r.to_string()),
        "[-1]",
    );
    let uinv = pe(&prime(5), "<3>*[-1]").map(|x| x.simplify().to_string())?;
    golden(
        &mut rep,
        pe(&f5, "[t,-1]").and_then(|x| residue(&x, &v, &pe_elem(&f5, "2*t")?)).map(|r| r.to_string()),
        &uinv,
    );
    golden(&mut rep, Ok(uinv.clone()), "[-1] + eta*[-1,3]");
    golden(
        &mut rep,
        pe(&f3, "[t,-1]")
            .and_then(|x| residue_twisted(&TwistedMw::untwisted(x), &v))
            .map(|r| r.to_string()),
        "[-1] @ t*",
    );
    Ok(rep)
}

fn pe_elem(f: &Field, s: &str) -> Result<Elem> {
    crate::parse::parse_elem(f, s)
}

fn random_poly(k: &Field, deg: usize, monic: bool, r: &mut SeededRng) -> Poly {
    let q = k.finite_field().expect("finite").size();
    let mut c: Vec<u32> = (0..deg).map(|_| r.gen_range(0..q)).collect();
    c.push(if monic { 1 } else { r.gen_range(1..q) });
    Poly::from_coeffs(c)
}

fn random_irreducible(k: &Field, max_deg: usize, r: &mut SeededRng) -> Poly {
    let kk = k.finite_field().expect("finite");
    loop {
        let p = random_poly(k, r.gen_range(1..=max_deg), true, r);
        if p.is_irreducible(kk) {
            return p;
        }
    }
}

/// A unit at `v`: constant times `g/h` with `g`, `h` prime to `v` (of equal
/// degree at infinity).
fn random_unit_at(k: &Field, ft: &Field, v: &Place, r: &mut SeededRng) -> Result<Elem> {
    loop {
        let dg = r.gen_range(0..=2);
        let dh = if *v == Place::Infinity { dg } else { r.gen_range(0..=2) };
        let g = ft.poly_elem(random_poly(k, dg, false, r));
        let h = ft.poly_elem(random_poly(k, dh, true, r));
        let u = ft.div(&g, &h)?;
        if ft.valuation(&u, v)? == 0 {
            return Ok(u);
        }
    }
}

/// Twisted residues computed with `pi` and `u pi` agree after rebasing.
pub fn uniformizer_independence(seed: u64, per_field: usize) -> Result<Report> {
    let mut rep = Report::new("uniformizers");
    for (i, p) in [3u32, 5].into_iter().enumerate() {
        let k = prime(p);
        let ft = ftof(&k);
        let mut r = sub_seed(seed, 400 + i as u64);
        for _ in 0..per_field {
            let deg = r.gen_range(0..=2);
            let a = random_expr(&ft, deg, &Shape::default(), &mut r);
            let line = bundle_line(r.gen_range(-2..=2));
            let x = TwistedMw::new(a.clone(), line);
            let mut places: Vec<Place> = support(&a)?.into_iter().map(Place::PAdic).collect();
            places.push(Place::Infinity);
            places.push(Place::PAdic(random_irreducible(&k, 2, &mut r)));
            let v = places.choose(&mut r).expect("nonempty").clone();
            let pi = ft.uniformizer(&v)?;
            let u = random_unit_at(&k, &ft, &v, &mut r)?;
            let pi2 = ft.mul(&u, &pi);
            let out = (|| -> Result<bool> {
                let r1 = residue_twisted_with(&x, &v, &pi)?;
                let r2 = residue_twisted_with(&x, &v, &pi2)?;
                Ok(r1.mw_equal(&r2)?.holds())
            })();
            rep.case(out, || format!("F{p}(t): x={a} v={v:?} u={}", ft.fmt_elem(&u)));
        }
    }
    Ok(rep)
}

/// `x = pullback(c) + L` for the reconstruction of random `x`.
pub fn split_exactness(seed: u64, per_field: usize) -> Result<Report> {
    let mut rep = Report::new("split");
    for (i, p) in [3u32, 5].into_iter().enumerate() {
        let k = prime(p);
        let ft = ftof(&k);
        let mut r = sub_seed(seed, 500 + i as u64);
        for _ in 0..per_field {
            let deg = r.gen_range(-1..=3);
            let x = random_expr(&ft, deg, &Shape::default(), &mut r);
            let out = (|| -> Result<bool> {
                let (c, l) = reconstruct(&x)?;
                eq(&x, &pullback(&c, &ft)?.add(&l)?)
            })();
            rep.case(out, || format!("F{p}(t): {x}"));
        }
    }
    Ok(rep)
}

/// Random reciprocity run over one rational function field.
pub fn reciprocity_run(ft: &Field, samples: usize, seed: u64) -> Result<Report> {
    if !matches!(ft, Field::RationalFunction(_)) {
        return Err(Error::Unsupported("reciprocity runs over F_q(t)".into()));
    }
    let mut rep = Report::new("reciprocity");
    let mut r = rng(seed);
    for _ in 0..samples {
        let deg = r.gen_range(-1..=2);
        let x = random_expr(ft, deg, &Shape::default(), &mut r);
        rep.case(reciprocity_defect(&x).and_then(|d| d.is_zero()), || format!("{ft}: {x}"));
    }
    Ok(rep)
}

pub fn reciprocity_suite(seed: u64) -> Result<Report> {
    let mut rep = Report::new("reciprocity");
    for (i, p) in [3u32, 5].into_iter().enumerate() {
        let ft = ftof(&prime(p));
        rep.merge(reciprocity_run(&ft, 100, seed.wrapping_add(600 + i as u64))?);
        let t = MwExpr::bracket(&ft, ft.t()?)?;
        let k = ft.constants();
        let at_inf = residue_at(&t, &Place::Infinity);
        golden(&mut rep, at_inf.clone().and_then(|x| normal_form(&x)).map(|x| x.to_string()), "-1");
        rep.case(at_inf.and_then(|x| eq(&x, &gw_to_mw0(&GwForm::one(&k).neg()))), || {
            "d_inf([t]) = -<1>".into()
        });
        rep.case(reciprocity_defect(&t).and_then(|d| d.is_zero()), || "defect([t])".into());
    }
    Ok(rep)
}

/// Geometric and Scharlau transfers agree in `W` on every rank-one form.
pub fn scharlau_agreement() -> Result<Report> {
    let mut rep = Report::new("scharlau");
    let f3 = prime(3);
    let cases = [
        (prime(3), Poly::from_coeffs(vec![1, 0, 1])),
        (prime(5), default_extension(prime(5).finite_field().expect("F5"), 2, "s")?.modulus().clone()),
        (prime(3), default_extension(f3.finite_field().expect("F3"), 3, "s")?.modulus().clone()),
    ];
    for (base, p) in cases {
        let k = base.finite_field().expect("finite").clone();
        let kp = Field::Finite(k.residue_field(&p, "s")?);
        for a in units(&kp) {
            let form = GwForm::diag(&kp, vec![a.clone()])?;
            let out = (|| -> Result<bool> {
                let s = scharlau_transfer(&form, &p, &base)?;
                let g = mw0_to_gw(&geometric_transfer(&gw_to_mw0(&form), &p, &base)?)?;
                g.witt_equal(&s)
            })();
            rep.case(out, || format!("{kp} over {base}: <{}>", kp.fmt_elem(&a)));
        }
    }
    // <1> over F9 = F3[s]/(s^2+1): f(1) = 0, f(s) = 1, so the Gram matrix
    // in the basis {1, s} is [[f(1), f(s)], [f(s), f(s^2)]] = [[0,1],[1,0]].
    let p = Poly::from_coeffs(vec![1, 0, 1]);
    let gram = GwForm::from_gram(&f3, &[vec![0, 1], vec![1, 0]])?;
    let kp = Field::Finite(f3.finite_field().expect("F3").residue_field(&p, "s")?);
    let one = GwForm::one(&kp);
    rep.case(gram.gw_equal(&GwForm::h(&f3)), || "Gram [[0,1],[1,0]] = h".into());
    rep.case(scharlau_transfer(&one, &p, &f3).and_then(|s| s.gw_equal(&gram)), || {
        "Scharlau transfer of <1> from F9".into()
    });
    rep.case(
        geometric_transfer(&gw_to_mw0(&one), &p, &f3).and_then(|g| eq(&g, &MwExpr::h(&f3))),
        || "geometric transfer of <1> from F9 = h".into(),
    );
    Ok(rep)
}

/// `d o d = 0` and `deg~ o d = 0` on random codimension-0 cochains of `P^1`.
pub fn complex_property(seed: u64, per_twist: usize) -> Result<Report> {
    let mut rep = Report::new("complex");
    for d in -2..=2i64 {
        let mut r = sub_seed(seed, 800 + (d + 2) as u64);
        for i in 0..per_twist {
            let k = prime(if i % 2 == 0 { 3 } else { 5 });
            let ft = ftof(&k);
            let weight = if d % 2 == 0 { r.gen_range(0..=1) } else { 1 };
            let y = random_expr(&ft, weight, &Shape::default(), &mut r);
            let out = (|| -> Result<bool> {
                let c = Cochain::generic(Scheme::ProjLine, &k, d, y.clone())?;
                let dy = differential(&c)?;
                let ddy = differential(&dy)?;
                if !ddy.values.is_empty() || ddy.codim != 2 {
                    return Ok(false);
                }
                if d % 2 == 0 {
                    pushforward_point(&dy)?.expr().is_zero()
                } else {
                    Ok(chow_degree(&dy)? == 0)
                }
            })();
            rep.case(out, || format!("O({d}) over F{}: {y}", k.finite_field().expect("F").size()));
        }
    }
    rep.notes.push("odd twists: degree checked in Z (CH~^1(P^1, O(odd)) = Z)".into());
    Ok(rep)
}

/// `mu_t([t])`, `mu_{-t}([t])` and `mu_{lambda t}([t])`.
pub fn mu_goldens() -> Result<Report> {
    let mut rep = Report::new("mu");
    for p in [3u32, 5, 7] {
        let k = prime(p);
        let ft = ftof(&k);
        let x = (|| {
            let t = MwExpr::bracket(&ft, ft.t()?)?;
            Cochain::generic(Scheme::AffineLine, &k, 0, t)
        })()?;
        let mu = |f: &str| -> Result<String> { Ok(mu_f(&x, &pe_elem(&ft, f)?)?.to_string()) };
        golden(&mut rep, mu("t"), "{t: [-1] @ t* ⊗ t}");
        golden(&mut rep, mu("-t"), "{}");
        for l in 1..p {
            let lam = k.from_int(l as i64);
            let want = (|| -> Result<String> {
                let e = MwExpr::epsilon(&k).mul(&MwExpr::bracket(&k, k.neg(&lam))?)?;
                let n = normal_form(&e)?;
                Ok(if n.is_syntactic_zero() { "{}".into() } else { format!("{{t: {n} @ t* ⊗ t}}") })
            })()?;
            golden(&mut rep, mu(&format!("{l}*t")), &want);
        }
    }
    Ok(rep)
}

/// `h0_membership` recognizes closed cochains on `A^1`.
pub fn homotopy_invariance(seed: u64, per_field: usize) -> Result<Report> {
    let mut rep = Report::new("homotopy");
    for (i, p) in [3u32, 5].into_iter().enumerate() {
        let k = prime(p);
        let ft = ftof(&k);
        let mut r = sub_seed(seed, 1000 + i as u64);
        for j in 0..per_field {
            // closed: a constant plus a hidden relation among rational functions
            let deg = if j % 2 == 0 { 1 } else { 0 };
            let alpha = random_expr(&k, deg, &Shape::default(), &mut r);
            let a = unit(&ft, &Shape::default(), &mut r);
            let b = unit(&ft, &Shape::default(), &mut r);
            let out = (|| -> Result<bool> {
                let hidden = if deg == 1 {
                    MwExpr::bracket(&ft, ft.mul(&a, &b))?
                        .sub(&MwExpr::bracket(&ft, a.clone())?)?
                        .sub(&MwExpr::bracket(&ft, b.clone())?)?
                        .sub(&MwExpr::symbol(&ft, 1, 1, vec![a.clone(), b.clone()])?)?
                } else {
                    MwExpr::angle(&ft, ft.mul(&a, &a))?.sub(&MwExpr::one(&ft))?
                };
                let x = pullback(&alpha, &ft)?.add(&hidden)?;
                let c = Cochain::generic(Scheme::AffineLine, &k, 0, x)?;
                match h0_membership(&c)? {
                    Some(found) => eq(&found, &alpha),
                    None => Ok(false),
                }
            })();
            rep.case(out, || format!("closed F{p}: alpha={alpha} a={} b={}", ft.fmt_elem(&a), ft.fmt_elem(&b)));
            // not closed: a constant plus [p]<u>, whose residue at p is <u>
            let alpha1 = random_expr(&k, 1, &Shape::default(), &mut r);
            let q = random_irreducible(&k, 2, &mut r);
            let u = unit(&k, &Shape::default(), &mut r);
            let out = (|| -> Result<bool> {
                let bad = MwExpr::bracket(&ft, ft.poly_elem(q.clone()))?
                    .mul(&MwExpr::angle(&ft, ft.constant(&u))?)?;
                let x = pullback(&alpha1, &ft)?.add(&bad)?;
                let c = Cochain::generic(Scheme::AffineLine, &k, 0, x)?;
                Ok(h0_membership(&c)?.is_none())
            })();
            rep.case(out, || format!("open F{p}: alpha={alpha1} p={q:?} u={}", k.fmt_elem(&u)));
        }
    }
    Ok(rep)
}

/// Surjectivity of `deg~`, Chow degree and section independence of the
/// Euler class of `O(d)`.
pub fn p1_slice(seed: u64) -> Result<Report> {
    let mut rep = Report::new("p1");
    for (qi, k) in [prime(3), prime(5), prime(7), finite(3, 2)].iter().enumerate() {
        let kk = k.finite_field().expect("finite").clone();
        let us = units(k);
        let quad = default_extension(&kk, 2, "s")?.modulus().clone();
        let kq = Field::Finite(kk.residue_field(&quad, "s")?);
        // every class of rank -1..=3 is hit by a cocycle with explicit values
        for size in 0..=3 {
            for plus in multisets(&us, size) {
                for neg in [false, true] {
                    if neg && size != 1 {
                        continue;
                    }
                    let mut target = GwForm::diag(k, plus.clone())?;
                    if neg {
                        target = target.neg();
                    }
                    let out = (|| -> Result<bool> {
                        let mut entries = Vec::new();
                        for (j, a) in plus.iter().enumerate() {
                            let e = gw_to_mw0(&GwForm::diag(k, vec![a.clone()])?);
                            let e = if neg { e.neg() } else { e };
                            let c = kk.from_int(j as i64);
                            entries.push((Point::Closed(Poly::linear(c, &kk)), e));
                        }
                        // h at a quadratic point, cancelled by -h at infinity
                        entries.push((Point::Closed(quad.clone()), MwExpr::one(&kq)));
                        entries.push((Point::Infinity, MwExpr::h(k).neg()));
                        let c = Cochain::closed(Scheme::ProjLine, k, 0, 1, entries)?;
                        if !differential(&c)?.values.is_empty() {
                            return Ok(false);
                        }
                        mw0_to_gw(pushforward_point(&c)?.expr())?.gw_equal(&target)
                    })();
                    rep.case(out, || format!("{k}: preimage of {target:?}"));
                }
            }
        }
        let mut r = sub_seed(seed, 1100 + qi as u64);
        for d in 0..=3i64 {
            let mut sections = vec![Poly::one()];
            while sections.len() < 4 {
                let s = random_poly(k, r.gen_range(0..=d as usize), false, &mut r);
                if !sections.contains(&s) {
                    sections.push(s);
                }
                if d == 0 && sections.len() >= 2 {
                    break;
                }
            }
            let mut first: Option<TwistedMw> = None;
            for s in &sections {
                let e = euler_class_line(k, d, s);
                rep.case(e.as_ref().map(|e| e.chow_degree == d).map_err(Clone::clone), || {
                    format!("{k}: Chow degree of e(O({d})) via {s:?}")
                });
                let e = match e {
                    Ok(e) => e,
                    Err(_) => continue,
                };
                match &first {
                    None => first = Some(e.mw_degree.clone()),
                    Some(f0) => {
                        let same = if d % 2 == 0 {
                            eq(f0.expr(), e.mw_degree.expr())
                        } else {
                            mw0_to_gw(f0.expr()).and_then(|a| {
                                Ok(a.virtual_rank() == mw0_to_gw(e.mw_degree.expr())?.virtual_rank())
                            })
                        };
                        rep.case(same, || format!("{k}: deg~ e(O({d})) depends on {s:?}"));
                    }
                }
            }
        }
    }
    rep.notes.push("odd d: deg~ compared in Z (no GW-valued degree for O(odd))".into());
    Ok(rep)
}

/// The Witt class of a virtual diagonal form over `F_q`: dimension parity
/// and signed discriminant.
fn witt_class(k: &Field, form: &GwForm) -> Result<(i64, bool)> {
    let mut entries: Vec<Elem> = form.plus().to_vec();
    entries.extend(form.minus().iter().map(|a| k.neg(a)));
    let n = entries.len() as i64;
    let mut d = k.from_int(if (n * (n - 1) / 2) % 2 == 1 { -1 } else { 1 });
    for a in &entries {
        d = k.mul(&d, a);
    }
    Ok((n % 2, k.is_square(&d)?))
}

/// Degrees `>= 2` vanish; degrees `-1`, `-2` are classified by `W(F_q)`.
pub fn finite_field_structure(seed: u64, per_field: usize) -> Result<Report> {
    let mut rep = Report::new("finite");
    for (i, k) in [prime(3), prime(5), prime(7), finite(3, 2), prime(11)].iter().enumerate() {
        let mut r = sub_seed(seed, 1200 + i as u64);
        for _ in 0..per_field {
            let deg = r.gen_range(2..=3);
            let x = random_expr(k, deg, &Shape::default(), &mut r);
            rep.case(x.is_zero(), || format!("{k}: {x}"));
        }
        let us = units(k);
        let mut gens = Vec::new();
        for a in &us {
            gens.push(GwForm::diag(k, vec![a.clone()])?);
            gens.push(GwForm::new(k, vec![], vec![a.clone()])?);
            for b in &us {
                gens.push(GwForm::diag(k, vec![a.clone(), b.clone()])?);
                gens.push(GwForm::new(k, vec![a.clone()], vec![b.clone()])?);
            }
        }
        gens.push(GwForm::zero(k));
        for m in [1u32, 2] {
            let exprs: Vec<MwExpr> = gens.iter().map(|g| gw_to_mw0(g).times_eta(m)).collect();
            let classes: Vec<(i64, bool)> =
                gens.iter().map(|g| witt_class(k, g)).collect::<Result<_>>()?;
            let mut distinct = classes.clone();
            distinct.sort();
            distinct.dedup();
            rep.case(Ok(distinct.len() == 4), || format!("{k}: {} Witt classes", distinct.len()));
            for a in 0..gens.len() {
                let j = r.gen_range(0..gens.len());
                let out = eq(&exprs[a], &exprs[j]).map(|e| e == (classes[a] == classes[j]));
                rep.case(out, || format!("{k}: eta^{m} {:?} vs {:?}", gens[a], gens[j]));
            }
        }
    }
    Ok(rep)
}

/// Graded commutativity of exterior products and the Leibniz rule for
/// products with classes on the base.
pub fn products(seed: u64, per_case: usize) -> Result<Report> {
    let mut rep = Report::new("products");
    let fields = [prime(3), prime(5), prime(7), finite(3, 2)];
    let mut r = sub_seed(seed, 1300);
    for n in 0..per_case {
        let k = &fields[n % fields.len()];
        let (rd, sd) = (r.gen_range(-1..=2), r.gen_range(-1..=2));
        let (i, i2) = (r.gen_range(-2..=2), r.gen_range(-2..=2));
        let a = random_expr(k, rd, &Shape::default(), &mut r);
        let b = random_expr(k, sd, &Shape::default(), &mut r);
        let out = (|| -> Result<bool> {
            let x = TwistedMw::new(a.clone(), GradedLine::atom(Atom::named("L", i)));
            let y = TwistedMw::new(b.clone(), GradedLine::atom(Atom::named("M", i2)));
            let xy = exterior_product(&x, &y)?;
            let yx = exterior_product(&y, &x)?;
            let sign = eps_pow(k, rd * sd).mul(&MwExpr::angle(k, k.from_int(if (i * i2) % 2 == 0 { 1 } else { -1 }))?)?;
            let rhs = yx.map_expr(|e| sign.mul(e))?;
            Ok(xy.mw_equal(&rhs.with_line(yx.line().clone()))?.holds())
        })();
        rep.case(out, || format!("{k}: ({a} ⊗ L{i}) x ({b} ⊗ M{i2})"));
    }
    for n in 0..per_case {
        let k = &fields[n % fields.len()];
        let ft = ftof(k);
        let j = r.gen_range(-1..=2);
        let ga = r.gen_range(-2..=3);
        let twist = if n % 3 == 0 { 2 * r.gen_range(-1..=1) } else { 0 };
        let scheme = if twist != 0 { Scheme::ProjLine } else { Scheme::AffineLine };
        let alpha = random_expr(k, j, &Shape::default(), &mut r);
        let beta = random_expr(&ft, r.gen_range(0..=2), &Shape::default(), &mut r);
        let out = (|| -> Result<bool> {
            let la = GradedLine::atom(Atom::named("L", ga));
            let cb = Cochain::generic(scheme, k, twist, beta.clone())?;
            // alpha x beta as a cochain with line L ⊗ O(twist)
            let prod_line = la.tensor(&cb.line);
            let mut prod = Cochain::empty(scheme, k, 0, j + beta.degree(), twist, prod_line.clone());
            let pb = pullback(&alpha, &ft)?.mul(&beta)?;
            prod.values.insert(Point::Generic, TwistedMw::new(pb, prod_line));
            let lhs = differential(&prod)?;
            let db = differential(&cb)?;
            let factor = eps_pow(k, j).mul(&MwExpr::angle(k, k.from_int(if ga % 2 == 0 { 1 } else { -1 }))?)?;
            let mut pts: Vec<&Point> = lhs.values.keys().chain(db.values.keys()).collect();
            pts.sort();
            pts.dedup();
            for pt in pts {
                let l = lhs.values.get(pt);
                let rterm = match db.values.get(pt) {
                    Some(v) => {
                        let kx = v.field().clone();
                        let ax = TwistedMw::new(embed_expr(&alpha, &kx)?, la.clone());
                        let f = embed_expr(&factor, &kx)?;
                        Some(exterior_product(&ax, v)?.map_expr(|e| f.mul(e))?)
                    }
                    None => None,
                };
                let ok = match (l, rterm) {
                    (Some(l), Some(rt)) => l.mw_equal(&rt)?.holds(),
                    (Some(l), None) => l.expr().is_zero()?,
                    (None, Some(rt)) => rt.expr().is_zero()?,
                    (None, None) => true,
                };
                if !ok {
                    return Ok(false);
                }
            }
            Ok(true)
        })();
        rep.case(out, || format!("{k}: alpha={alpha} ⊗ L{ga}, beta={beta} on {scheme} O({twist})"));
    }
    Ok(rep)
}

/// Base change of an expression over `F_q` to an extension or to `F_q`.
fn embed_expr(x: &MwExpr, target: &Field) -> Result<MwExpr> {
    let src = x.field().clone();
    if src == *target {
        return Ok(x.clone());
    }
    let (ks, kt) = match (&src, target) {
        (Field::Finite(a), Field::Finite(b)) => (a.clone(), b.clone()),
        _ => return Err(Error::Unsupported("base change".into())),
    };
    x.map_slots(target, |e| match e {
        Elem::F(a) => Ok(Elem::F(kt.embed_from(&ks, *a)?)),
        _ => Err(Error::MixedFields),
    })
}
