//! Grothendieck-Witt and Witt classes through virtual diagonal forms.
//!
//! Over `F_q` a class is determined by rank and discriminant; over the real
//! model by rank and signature. The discriminant is the plain product of
//! the entries. Membership in `I^n` and the quotients `I^n/I^{n+1}` are read
//! inside `W`; everything else is in `GW`.

use crate::error::{domain, Error, Result};
use crate::field::{Elem, Field, FiniteField};

/// `<plus_1> + ... - <minus_1> - ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GwForm {
    field: Field,
    plus: Vec<Elem>,
    minus: Vec<Elem>,
}

/// `disc_square` is the square class of the discriminant (positivity in the
/// real model); `signature` is present only for the real model.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GwInvariants {
    pub rank: i64,
    pub disc_square: bool,
    pub signature: Option<i64>,
}

impl GwInvariants {
    pub fn zero(real: bool) -> Self {
        GwInvariants { rank: 0, disc_square: true, signature: real.then_some(0) }
    }

    pub fn one(real: bool) -> Self {
        GwInvariants { rank: 1, disc_square: true, signature: real.then_some(1) }
    }

    /// Invariants of `<a>` given its square class.
    pub fn unit(square: bool, real: bool) -> Self {
        GwInvariants {
            rank: 1,
            disc_square: square,
            signature: real.then_some(if square { 1 } else { -1 }),
        }
    }

    pub fn add(self, o: Self) -> Self {
        GwInvariants {
            rank: self.rank + o.rank,
            disc_square: self.disc_square == o.disc_square,
            signature: self.signature.zip(o.signature).map(|(a, b)| a + b),
        }
    }

    pub fn neg(self) -> Self {
        GwInvariants {
            rank: -self.rank,
            disc_square: self.disc_square,
            signature: self.signature.map(|s| -s),
        }
    }

    pub fn scale(self, n: i64) -> Self {
        GwInvariants {
            rank: self.rank * n,
            disc_square: self.disc_square || n % 2 == 0,
            signature: self.signature.map(|s| s * n),
        }
    }

    pub fn mul(self, o: Self) -> Self {
        let nontrivial = (!self.disc_square && o.rank % 2 != 0)
            ^ (!o.disc_square && self.rank % 2 != 0);
        GwInvariants {
            rank: self.rank * o.rank,
            disc_square: !nontrivial,
            signature: self.signature.zip(o.signature).map(|(a, b)| a * b),
        }
    }

    pub fn is_gw_zero(&self) -> bool {
        self.rank == 0 && self.disc_square && self.signature.unwrap_or(0) == 0
    }

    /// Whether the class lies in `Z h`; `minus_one_square` describes `F_q`.
    pub fn is_witt_zero(&self, minus_one_square: bool) -> bool {
        if let Some(s) = self.signature {
            return s == 0;
        }
        if self.rank % 2 != 0 {
            return false;
        }
        let k = self.rank / 2;
        let h_disc_nontrivial = k % 2 != 0 && !minus_one_square;
        (!self.disc_square) == h_disc_nontrivial
    }
}

fn check_field(f: &Field) -> Result<()> {
    match f {
        Field::RationalFunction(_) => Err(Error::Unsupported(
            "form invariants over F_q(t); use residue-based equality".into(),
        )),
        _ => Ok(()),
    }
}

fn minus_one_square(f: &Field) -> bool {
    match f {
        Field::Finite(k) => k.is_square(k.neg(1)).unwrap_or(false),
        _ => false,
    }
}

impl GwForm {
    pub fn new(field: &Field, plus: Vec<Elem>, minus: Vec<Elem>) -> Result<Self> {
        if plus.iter().chain(minus.iter()).any(|a| field.is_zero(a)) {
            return domain("diagonal entries must be nonzero");
        }
        Ok(GwForm { field: field.clone(), plus, minus })
    }

    pub fn diag(field: &Field, entries: Vec<Elem>) -> Result<Self> {
        GwForm::new(field, entries, Vec::new())
    }

    /// `<a_1, ..., a_n>` from integers.
    pub fn from_ints(field: &Field, entries: &[i64]) -> Result<Self> {
        GwForm::diag(field, entries.iter().map(|&a| field.from_int(a)).collect())
    }

    pub fn zero(field: &Field) -> Self {
        GwForm { field: field.clone(), plus: Vec::new(), minus: Vec::new() }
    }

    pub fn one(field: &Field) -> Self {
        GwForm { field: field.clone(), plus: vec![field.one()], minus: Vec::new() }
    }

    pub fn angle(field: &Field, a: Elem) -> Result<Self> {
        GwForm::diag(field, vec![a])
    }

    /// `h = <1, -1>`.
    pub fn h(field: &Field) -> Self {
        GwForm { field: field.clone(), plus: vec![field.one(), field.from_int(-1)], minus: vec![] }
    }

    /// `epsilon = -<-1>`.
    pub fn epsilon(field: &Field) -> Self {
        GwForm { field: field.clone(), plus: vec![], minus: vec![field.from_int(-1)] }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn plus(&self) -> &[Elem] {
        &self.plus
    }
    pub fn minus(&self) -> &[Elem] {
        &self.minus
    }
    pub fn virtual_rank(&self) -> i64 {
        self.plus.len() as i64 - self.minus.len() as i64
    }

    fn same_field(&self, o: &GwForm) -> Result<()> {
        if self.field != o.field {
            return Err(Error::MixedFields);
        }
        Ok(())
    }

    pub fn add(&self, o: &GwForm) -> Result<GwForm> {
        self.same_field(o)?;
        let mut r = self.clone();
        r.plus.extend(o.plus.iter().cloned());
        r.minus.extend(o.minus.iter().cloned());
        Ok(r)
    }

    pub fn neg(&self) -> GwForm {
        GwForm { field: self.field.clone(), plus: self.minus.clone(), minus: self.plus.clone() }
    }

    pub fn sub(&self, o: &GwForm) -> Result<GwForm> {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &GwForm) -> Result<GwForm> {
        self.same_field(o)?;
        let f = &self.field;
        let prod = |xs: &[Elem], ys: &[Elem]| -> Vec<Elem> {
            xs.iter().flat_map(|a| ys.iter().map(move |b| f.mul(a, b))).collect()
        };
        let mut plus = prod(&self.plus, &o.plus);
        plus.extend(prod(&self.minus, &o.minus));
        let mut minus = prod(&self.plus, &o.minus);
        minus.extend(prod(&self.minus, &o.plus));
        Ok(GwForm { field: f.clone(), plus, minus })
    }

    pub fn scale_int(&self, n: i64) -> GwForm {
        let base = if n < 0 { self.neg() } else { self.clone() };
        let mut r = GwForm::zero(&self.field);
        for _ in 0..n.unsigned_abs() {
            r.plus.extend(base.plus.iter().cloned());
            r.minus.extend(base.minus.iter().cloned());
        }
        r
    }

    pub fn invariants(&self) -> Result<GwInvariants> {
        check_field(&self.field)?;
        let real = matches!(self.field, Field::Real);
        let mut inv = GwInvariants::zero(real);
        for a in &self.plus {
            inv = inv.add(GwInvariants::unit(self.field.is_square(a)?, real));
        }
        for a in &self.minus {
            inv = inv.add(GwInvariants::unit(self.field.is_square(a)?, real).neg());
        }
        Ok(inv)
    }

    pub fn gw_equal(&self, o: &GwForm) -> Result<bool> {
        Ok(self.sub(o)?.invariants()?.is_gw_zero())
    }

    pub fn witt_equal(&self, o: &GwForm) -> Result<bool> {
        Ok(self.sub(o)?.invariants()?.is_witt_zero(minus_one_square(&self.field)))
    }

    /// Membership of the Witt class in `I^n` (`I^n = W` for `n <= 0`).
    pub fn in_i_power(&self, n: i64) -> Result<bool> {
        let inv = self.invariants()?;
        if n <= 0 {
            return Ok(true);
        }
        if let Some(s) = inv.signature {
            return Ok(s % (1i64 << n.min(62)) == 0);
        }
        Ok(match n {
            1 => inv.rank % 2 == 0,
            _ => inv.is_witt_zero(minus_one_square(&self.field)),
        })
    }

    /// The class in `I^n / I^{n+1}`, which is `Z/2` or zero for the
    /// supported fields; `true` means nonzero.
    pub fn sbar(&self, n: i64) -> Result<bool> {
        if !self.in_i_power(n)? {
            return domain(format!("form is not in I^{n}"));
        }
        let inv = self.invariants()?;
        if let Some(s) = inv.signature {
            let n = n.max(0);
            return Ok((s >> n) & 1 == 1);
        }
        let m1 = minus_one_square(&self.field);
        Ok(match n {
            i64::MIN..=0 => inv.rank % 2 != 0,
            1 => !inv.is_witt_zero(m1),
            _ => false,
        })
    }

    /// Canonical anisotropic representative of the Witt class.
    pub fn witt_canonical(&self) -> Result<GwForm> {
        let inv = self.invariants()?;
        let f = &self.field;
        if let Some(s) = inv.signature {
            let e = if s >= 0 { 1 } else { -1 };
            return GwForm::from_ints(f, &vec![e; s.unsigned_abs() as usize]);
        }
        for cand in witt_representatives(f)? {
            if self.witt_equal(&cand)? {
                return Ok(cand);
            }
        }
        unreachable!("W(F_q) has four classes")
    }

    /// Diagonal form congruent to a symmetric matrix over `F_q`.
    pub fn from_gram(field: &Field, gram: &[Vec<u32>]) -> Result<GwForm> {
        let k = field
            .finite_field()
            .ok_or_else(|| Error::Unsupported("Gram diagonalization over F_q only".into()))?;
        GwForm::diag(field, diagonalize(k, gram)?.into_iter().map(Elem::F).collect())
    }
}

/// `<<a_1, ..., a_n>> = <-1, a_1> ... <-1, a_n>`; `n = 0` gives `<1>`.
pub fn pfister(field: &Field, entries: &[Elem]) -> Result<GwForm> {
    let mut r = GwForm::one(field);
    for a in entries {
        let b = GwForm::diag(field, vec![field.from_int(-1), a.clone()])?;
        r = r.mul(&b)?;
    }
    Ok(r)
}

/// `n_eps = sum_{i=1}^n <(-1)^(i-1)>`, `0`, or `eps * sum_{i=1}^{-n} <(-1)^(i-1)>`.
pub fn n_epsilon(field: &Field, n: i64) -> GwForm {
    let sgn = |i: u64| field.from_int(if i % 2 == 1 { 1 } else { -1 });
    if n >= 0 {
        GwForm { field: field.clone(), plus: (1..=n as u64).map(sgn).collect(), minus: vec![] }
    } else {
        // eps * <c> = -<-c>
        let m = (-n) as u64;
        GwForm {
            field: field.clone(),
            plus: vec![],
            minus: (1..=m).map(|i| field.neg(&sgn(i))).collect(),
        }
    }
}

/// The four canonical Witt representatives over `F_q`:
/// `0, <1>, <u0>` and `<1, u0>` (or `<1, 1>` when `-1` is a nonsquare, since
/// then `<1, u0> = h`).
pub fn witt_representatives(field: &Field) -> Result<Vec<GwForm>> {
    let k = field
        .finite_field()
        .ok_or_else(|| Error::Unsupported("Witt representatives over F_q only".into()))?;
    let u0 = Elem::F(k.least_nonsquare());
    let fourth = if minus_one_square(field) {
        GwForm::diag(field, vec![field.one(), u0.clone()])?
    } else {
        GwForm::diag(field, vec![field.one(), field.one()])?
    };
    Ok(vec![GwForm::zero(field), GwForm::one(field), GwForm::diag(field, vec![u0])?, fourth])
}

fn diagonalize(k: &FiniteField, gram: &[Vec<u32>]) -> Result<Vec<u32>> {
    let n = gram.len();
    let mut m: Vec<Vec<u32>> = gram.to_vec();
    if m.iter().any(|r| r.len() != n) {
        return domain("Gram matrix must be square");
    }
    for i in 0..n {
        for j in 0..n {
            if m[i][j] != m[j][i] {
                return domain("Gram matrix must be symmetric");
            }
        }
    }
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        if m[i][i] == 0 {
            if let Some(j) = (i + 1..n).find(|&j| m[j][j] != 0) {
                m.swap(i, j);
                for r in m.iter_mut() {
                    r.swap(i, j);
                }
            } else if let Some(j) = (i + 1..n).find(|&j| m[i][j] != 0) {
                // e_i <- e_i + e_j makes the pivot 2 m[i][j] != 0
                for c in 0..n {
                    m[i][c] = k.add(m[i][c], m[j][c]);
                }
                for r in 0..n {
                    m[r][i] = k.add(m[r][i], m[r][j]);
                }
            } else {
                return domain("degenerate form");
            }
        }
        let piv = m[i][i];
        let pinv = k.inv(piv)?;
        for j in i + 1..n {
            let c = k.mul(m[j][i], pinv);
            if c == 0 {
                continue;
            }
            for col in 0..n {
                m[j][col] = k.sub(m[j][col], k.mul(c, m[i][col]));
            }
            for row in 0..n {
                m[row][j] = k.sub(m[row][j], k.mul(c, m[row][i]));
            }
        }
        out.push(piv);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u32) -> Field {
        Field::prime(p).unwrap()
    }

    #[test]
    fn milnor_presentation_relation() {
        let f = fp(7);
        let a = GwForm::from_ints(&f, &[1, 1]).unwrap();
        let b = GwForm::from_ints(&f, &[2, 2]).unwrap();
        assert!(a.gw_equal(&b).unwrap());
        // <u> + <v> = <u+v> + <(u+v)uv> for all u, v, u + v != 0
        for u in 1..7i64 {
            for v in 1..7i64 {
                if (u + v) % 7 == 0 {
                    continue;
                }
                let l = GwForm::from_ints(&f, &[u, v]).unwrap();
                let r = GwForm::from_ints(&f, &[u + v, (u + v) * u * v]).unwrap();
                assert!(l.gw_equal(&r).unwrap());
            }
        }
    }

    #[test]
    fn h_times_anything_has_rank_two_disc_minus_one() {
        let f = fp(7);
        for a in 1..7 {
            let x = GwForm::from_ints(&f, &[a]).unwrap().mul(&GwForm::h(&f)).unwrap();
            let inv = x.invariants().unwrap();
            assert_eq!(inv.rank, 2);
            // -1 is a nonsquare mod 7
            assert!(!inv.disc_square);
        }
    }

    #[test]
    fn invariants_examples() {
        let r = Field::Real;
        let x = GwForm::from_ints(&r, &[1, 1, -1]).unwrap().invariants().unwrap();
        assert_eq!((x.rank, x.signature), (3, Some(1)));
        let h = GwForm::h(&r).invariants().unwrap();
        assert_eq!((h.rank, h.signature, h.disc_square), (2, Some(0), false));
        let f5 = fp(5);
        let y = GwForm::from_ints(&f5, &[2, 3]).unwrap().invariants().unwrap();
        assert!(y.disc_square);
    }

    #[test]
    fn equality_examples() {
        let f3 = fp(3);
        let a = GwForm::from_ints(&f3, &[1, 1]).unwrap();
        assert!(!a.gw_equal(&GwForm::h(&f3)).unwrap());
        assert!(GwForm::h(&f3).witt_equal(&GwForm::zero(&f3)).unwrap());
        assert!(GwForm::from_ints(&f3, &[1, 2])
            .unwrap()
            .gw_equal(&GwForm::from_ints(&f3, &[2, 1]).unwrap())
            .unwrap());
        assert!(GwForm::one(&Field::rational_function(&f3).unwrap()).invariants().is_err());
    }

    #[test]
    fn pfister_examples() {
        let f = fp(5);
        assert!(pfister(&f, &[f.one()]).unwrap().gw_equal(&GwForm::h(&f)).unwrap());
        for a in 2..5i64 {
            let p = pfister(&f, &[f.from_int(a), f.from_int(1 - a)]).unwrap();
            assert!(p.witt_equal(&GwForm::zero(&f)).unwrap());
            let h2 = GwForm::h(&f).mul(&GwForm::h(&f)).unwrap();
            assert!(p.gw_equal(&h2).unwrap());
        }
        let r = Field::Real;
        let p = pfister(&r, &[r.from_int(-1)]).unwrap();
        assert_eq!(p.invariants().unwrap().signature, Some(-2));
        assert!(p.in_i_power(1).unwrap());
        assert!(!p.in_i_power(2).unwrap());
        assert!(pfister(&f, &[]).unwrap().gw_equal(&GwForm::one(&f)).unwrap());
    }

    #[test]
    fn n_epsilon_values() {
        let f = fp(7);
        assert!(n_epsilon(&f, 0).gw_equal(&GwForm::zero(&f)).unwrap());
        assert!(n_epsilon(&f, 2).gw_equal(&GwForm::h(&f)).unwrap());
        assert!(n_epsilon(&f, -1).gw_equal(&GwForm::epsilon(&f)).unwrap());
    }

    #[test]
    fn witt_representatives_are_distinct() {
        for p in [3u32, 5, 7, 11, 13] {
            let f = fp(p);
            let reps = witt_representatives(&f).unwrap();
            for i in 0..4 {
                for j in 0..4 {
                    assert_eq!(reps[i].witt_equal(&reps[j]).unwrap(), i == j, "q={p} {i} {j}");
                }
            }
        }
    }

    #[test]
    fn gram_f9_over_f3_is_hyperbolic() {
        let f = fp(3);
        let x = GwForm::from_gram(&f, &[vec![0, 1], vec![1, 0]]).unwrap();
        assert!(x.gw_equal(&GwForm::h(&f)).unwrap());
    }
}
