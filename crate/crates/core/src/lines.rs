//! Graded lines reduced to trivialized basis words, and Milnor-Witt classes
//! twisted by them.
//!
//! A line is never materialized: a twisted class is `expr ⊗ (lambda * w)`
//! where `w` is a word of atomic generators and `lambda` a unit. Rescaling
//! the basis by `u` multiplies the expression by `<u>`.

use std::fmt;

use crate::error::{domain, Error, Result};
use crate::field::{Elem, Field, Poly};
use crate::mw::{mw_equal, MwExpr, Verdict};

/// Atom kinds, listed in canonical word order (ties broken by name).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AtomKind {
    /// `(m_x / m_x^2)^*` at a closed point.
    Conormal,
    /// The generator `f` of `D(O(C))^{-1}` for a divisor `C = div f`.
    Function,
    /// Everything else: `O(d)` chart bases, `dt`, named test lines.
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    pub kind: AtomKind,
    pub name: String,
    pub dual: bool,
    pub grade: i64,
}

impl Atom {
    /// `pi*`, grade `-1`.
    pub fn conormal(name: impl Into<String>) -> Self {
        Atom { kind: AtomKind::Conormal, name: name.into(), dual: true, grade: -1 }
    }

    pub fn function(name: impl Into<String>) -> Self {
        Atom { kind: AtomKind::Function, name: name.into(), dual: false, grade: -1 }
    }

    /// The chart-0 basis of `O(d)`; grade 0.
    pub fn bundle(d: i64) -> Self {
        Atom { kind: AtomKind::Other, name: format!("O({d})"), dual: false, grade: 0 }
    }

    /// `D(Omega_{F(t)/k})`, grade 1.
    pub fn dt() -> Self {
        Atom { kind: AtomKind::Other, name: "dt".into(), dual: false, grade: 1 }
    }

    pub fn named(name: impl Into<String>, grade: i64) -> Self {
        Atom { kind: AtomKind::Other, name: name.into(), dual: false, grade }
    }

    pub fn dual(&self) -> Self {
        Atom { dual: !self.dual, grade: -self.grade, ..self.clone() }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)?;
        if self.dual {
            f.write_str("*")?;
        }
        Ok(())
    }
}

/// An ordered word of atoms; its grade is the sum of the atom grades.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GradedLine {
    pub word: Vec<Atom>,
}

impl GradedLine {
    pub fn trivial() -> Self {
        GradedLine { word: Vec::new() }
    }

    pub fn new(word: Vec<Atom>) -> Self {
        GradedLine { word }
    }

    pub fn atom(a: Atom) -> Self {
        GradedLine { word: vec![a] }
    }

    pub fn grade(&self) -> i64 {
        self.word.iter().map(|a| a.grade).sum()
    }

    pub fn tensor(&self, o: &GradedLine) -> GradedLine {
        let mut w = self.word.clone();
        w.extend(o.word.iter().cloned());
        GradedLine { word: w }
    }

    /// `(L, a)^v = (L^v, -a)`; reverses the word.
    pub fn dual(&self) -> GradedLine {
        GradedLine { word: self.word.iter().rev().map(Atom::dual).collect() }
    }

    /// Stable sort into canonical order; returns the accumulated
    /// commutativity sign.
    pub fn canonical(&self) -> (GradedLine, i64) {
        let mut w = self.word.clone();
        let mut sign = 1;
        for i in 1..w.len() {
            let mut j = i;
            while j > 0 && (w[j - 1].kind, &w[j - 1].name) > (w[j].kind, &w[j].name) {
                sign *= parity_sign(w[j - 1].grade * w[j].grade);
                w.swap(j - 1, j);
                j -= 1;
            }
        }
        (GradedLine { word: w }, sign)
    }
}

impl fmt::Display for GradedLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("triv");
        }
        let parts: Vec<String> = self.word.iter().map(|a| a.to_string()).collect();
        f.write_str(&parts.join(" ⊗ "))
    }
}

fn parity_sign(n: i64) -> i64 {
    if n.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// The symmetry constraint `(L,a)⊗(L',a') -> (L',a')⊗(L,a)` is `(-1)^{aa'}`
/// times the plain swap.
pub fn swap_sign(g: &GradedLine, h: &GradedLine) -> i64 {
    parity_sign(g.grade() * h.grade())
}

/// Sign of the left-inverse pairing `(L^v,-a)⊗(L,a) -> 1`.
pub fn dual_pairing_sign(g: &GradedLine) -> i64 {
    parity_sign(g.grade())
}

/// `expr ⊗ (prefactor * line)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedMw {
    expr: MwExpr,
    line: GradedLine,
    prefactor: Elem,
}

impl TwistedMw {
    pub fn new(expr: MwExpr, line: GradedLine) -> Self {
        let prefactor = expr.field().one();
        TwistedMw { expr, line, prefactor }
    }

    pub fn untwisted(expr: MwExpr) -> Self {
        TwistedMw::new(expr, GradedLine::trivial())
    }

    pub fn with_prefactor(expr: MwExpr, line: GradedLine, prefactor: Elem) -> Result<Self> {
        if expr.field().is_zero(&prefactor) {
            return domain("zero basis prefactor");
        }
        Ok(TwistedMw { expr, line, prefactor })
    }

    pub fn expr(&self) -> &MwExpr {
        &self.expr
    }
    pub fn line(&self) -> &GradedLine {
        &self.line
    }
    pub fn prefactor(&self) -> &Elem {
        &self.prefactor
    }
    pub fn field(&self) -> &Field {
        self.expr.field()
    }
    pub fn degree(&self) -> i64 {
        self.expr.degree()
    }

    /// `expr -> <u> expr`, basis `-> basis / u`; the class is unchanged.
    pub fn rebase(&self, u: &Elem) -> Result<TwistedMw> {
        let f = self.field();
        if f.is_zero(u) {
            return Err(Error::Domain("rebase by zero".into()));
        }
        Ok(TwistedMw {
            expr: self.expr.times_angle(u)?.simplify(),
            line: self.line.clone(),
            prefactor: f.div(&self.prefactor, u)?,
        })
    }

    /// Rebased so that the prefactor is `1`.
    pub fn normalized(&self) -> Result<TwistedMw> {
        if self.field().is_one(&self.prefactor) {
            return Ok(self.clone());
        }
        self.rebase(&self.prefactor.clone())
    }

    /// Normalized with the word in canonical order.
    pub fn canonical(&self) -> Result<TwistedMw> {
        let n = self.normalized()?;
        let (line, sign) = n.line.canonical();
        let f = n.field().clone();
        let expr = if sign < 0 { n.expr.times_angle(&f.from_int(-1))?.simplify() } else { n.expr };
        Ok(TwistedMw { expr, line, prefactor: f.one() })
    }

    pub fn map_expr(&self, g: impl FnOnce(&MwExpr) -> Result<MwExpr>) -> Result<TwistedMw> {
        let n = self.normalized()?;
        Ok(TwistedMw::new(g(&n.expr)?, n.line))
    }

    pub fn with_line(&self, line: GradedLine) -> TwistedMw {
        TwistedMw { line, ..self.clone() }
    }

    pub fn add(&self, o: &TwistedMw) -> Result<TwistedMw> {
        let (a, b) = (self.canonical()?, o.canonical()?);
        if a.line != b.line {
            return domain(format!("twist words differ: {} vs {}", a.line, b.line));
        }
        Ok(TwistedMw::new(a.expr.add(&b.expr)?, a.line))
    }

    pub fn neg(&self) -> TwistedMw {
        TwistedMw { expr: self.expr.neg(), ..self.clone() }
    }

    /// `(a ⊗ l)(b ⊗ l') = ab ⊗ l ⊗ l'`.
    pub fn product(&self, o: &TwistedMw) -> Result<TwistedMw> {
        let (a, b) = (self.normalized()?, o.normalized()?);
        Ok(TwistedMw::new(a.expr.mul(&b.expr)?, a.line.tensor(&b.line)))
    }

    pub fn mw_equal(&self, o: &TwistedMw) -> Result<Verdict> {
        let (a, b) = (self.canonical()?, o.canonical()?);
        if a.line != b.line {
            return Ok(Verdict::False);
        }
        mw_equal(&a.expr, &b.expr)
    }

    pub fn equals(&self, o: &TwistedMw) -> Result<bool> {
        let (a, b) = (self.canonical()?, o.canonical()?);
        Ok(a.line == b.line && a.expr.equals(&b.expr)?)
    }
}

impl fmt::Display for TwistedMw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.normalized().map_err(|_| fmt::Error)?;
        write!(f, "{}", n.expr)?;
        if !n.line.word.is_empty() {
            write!(f, " @ {}", n.line)?;
        }
        Ok(())
    }
}

/// The unit `t^d` relating the chart bases of `O(d)` on `P^1`.
pub fn chart_transition(field: &Field, d: i64) -> Result<Elem> {
    field.pow(&field.t()?, d)
}

/// Rewrites a `dt`-based word at the closed point `p` into the conormal
/// basis: `dp = p'(t) dt`, so the first `dt` atom becomes `p*` and the
/// prefactor picks up the residue class of `p'`. Over finite fields `p'` is
/// a unit at `p`.
pub fn det_ses_compose(x: &TwistedMw, p: &Poly, name: &str) -> Result<TwistedMw> {
    let k = match x.field() {
        Field::Finite(k) => k.clone(),
        _ => return Err(Error::Unsupported("closed points of curves over F_q only".into())),
    };
    let pos = x.line.word.iter().position(|a| a.name == "dt").ok_or_else(|| {
        Error::Unsupported("expected a D(Omega)-based word on a curve stratum".into())
    })?;
    let base = match k.base() {
        Some(b) if !p.is_constant() && p.degree() > 1 => b.clone(),
        _ => k.clone(),
    };
    let dp = p.derivative(&base);
    let u = crate::field::reduce_poly(&dp, p, &base, &k);
    if u == 0 {
        return domain("inseparable point");
    }
    let mut word = x.line.word.clone();
    word[pos] = Atom::conormal(name);
    let f = x.field();
    TwistedMw::with_prefactor(x.expr.clone(), GradedLine::new(word), f.mul(&x.prefactor, &Elem::F(u)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(grade: i64) -> GradedLine {
        GradedLine::atom(Atom::named("L", grade))
    }

    #[test]
    fn swap_signs() {
        assert_eq!(swap_sign(&line(1), &line(1)), -1);
        assert_eq!(swap_sign(&line(0), &line(3)), 1);
        assert_eq!(line(1).tensor(&line(1).dual()).grade(), 0);
        for a in -3..4 {
            for b in -3..4 {
                assert_eq!(swap_sign(&line(a), &line(b)) * swap_sign(&line(b), &line(a)), 1);
            }
        }
    }

    #[test]
    fn dual_pairing() {
        assert_eq!(dual_pairing_sign(&line(0)), 1);
        assert_eq!(dual_pairing_sign(&line(1)), -1);
        assert_eq!(dual_pairing_sign(&line(2)), 1);
    }

    #[test]
    fn rebase_round_trip() {
        let f = Field::prime(7).unwrap();
        let x = TwistedMw::new(
            MwExpr::bracket(&f, f.from_int(3)).unwrap(),
            GradedLine::atom(Atom::conormal("t")),
        );
        let u = f.from_int(3);
        let y = x.rebase(&u).unwrap().rebase(&f.inv(&u).unwrap()).unwrap();
        assert!(y.equals(&x).unwrap());
        assert!(f.is_one(y.prefactor()));
        let sq = x.rebase(&f.from_int(4)).unwrap();
        assert!(sq.expr().equals(x.expr()).unwrap());
    }

    #[test]
    fn canonical_order_sign() {
        let f = Field::prime(5).unwrap();
        let l = GradedLine::new(vec![Atom::function("t"), Atom::conormal("t")]);
        let x = TwistedMw::new(MwExpr::one(&f), l);
        let c = x.canonical().unwrap();
        assert_eq!(c.line().to_string(), "t* ⊗ t");
        assert_eq!(c.expr().to_string(), "1 + eta*[-1]");
    }

    #[test]
    fn rational_point_compose_is_trivial() {
        let f = Field::prime(5).unwrap();
        let k = f.finite_field().unwrap().clone();
        let p = Poly::linear(2, &k);
        let x = TwistedMw::new(MwExpr::one(&f), GradedLine::atom(Atom::dt()));
        let y = det_ses_compose(&x, &p, "t+3").unwrap();
        assert!(f.is_one(y.prefactor()));
        assert_eq!(y.to_string(), "1 @ t+3*");
    }

    #[test]
    fn chart_transition_parity() {
        let f = Field::prime(5).unwrap();
        let ft = Field::rational_function(&f).unwrap();
        let t2 = chart_transition(&ft, 2).unwrap();
        assert_eq!(ft.fmt_elem(&t2), "t^2");
        assert_eq!(ft.fmt_elem(&chart_transition(&ft, -1).unwrap()), "1/t");
    }
}
