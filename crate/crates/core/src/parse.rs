//! Text syntax: field descriptors, element literals, expressions, twist
//! words and cochains. Every printer in the crate emits text these parsers
//! read back.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{default_extension, Elem, Field, FiniteField, Place, Poly};
use crate::forms::{n_epsilon, pfister, GwForm};
use crate::lines::{Atom, GradedLine, TwistedMw};
use crate::mw::{gw_to_mw0, MwExpr};
use crate::rost_schmid::{bundle_line, Cochain, Point, Scheme};

fn syntax<T>(pos: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Syntax { pos, msg: msg.into() })
}

/// Tower variables of `k` with their elements, innermost last.
fn tower_vars(k: &Arc<FiniteField>) -> Vec<(String, u32)> {
    let mut out = Vec::new();
    let mut level = k.clone();
    while let Some(b) = level.base().cloned() {
        out.push((level.var().to_string(), level.from_coeffs(&[0, 1])));
        level = b;
    }
    out
}

fn field_vars(field: &Field) -> Vec<(String, Elem)> {
    match field {
        Field::Finite(k) => tower_vars(k).into_iter().map(|(n, a)| (n, Elem::F(a))).collect(),
        Field::RationalFunction(k) => {
            let mut v = vec![("t".to_string(), field.t().expect("F_q(t)"))];
            v.extend(tower_vars(k).into_iter().map(|(n, a)| (n, field.constant(&Elem::F(a)))));
            v
        }
        Field::Real => Vec::new(),
    }
}

/// Recursive-descent evaluator for `+ - * / ^`, integers, variables and
/// parentheses over a field.
struct ElemParser<'a> {
    s: &'a [u8],
    pos: usize,
    offset: usize,
    field: &'a Field,
    vars: Vec<(String, Elem)>,
}

impl<'a> ElemParser<'a> {
    fn new(text: &'a str, offset: usize, field: &'a Field, vars: Vec<(String, Elem)>) -> Self {
        ElemParser { s: text.as_bytes(), pos: 0, offset, field, vars }
    }

    fn at(&self) -> usize {
        self.offset + self.pos
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn run(mut self) -> Result<Elem> {
        if self.peek().is_none() {
            return syntax(self.at(), "empty element");
        }
        let v = self.sum()?;
        if self.peek().is_some() {
            return syntax(self.at(), format!("unexpected '{}'", self.s[self.pos] as char));
        }
        Ok(v)
    }

    fn sum(&mut self) -> Result<Elem> {
        let mut acc = self.product()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let r = self.product()?;
            acc = if c == b'+' { self.field.add(&acc, &r) } else { self.field.sub(&acc, &r) };
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<Elem> {
        let mut acc = self.unary()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let at = self.at();
            let r = self.unary()?;
            acc = if c == b'*' {
                self.field.mul(&acc, &r)
            } else {
                if self.field.is_zero(&r) {
                    return syntax(at, "division by zero");
                }
                self.field.div(&acc, &r)?
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Elem> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            let v = self.unary()?;
            return Ok(self.field.neg(&v));
        }
        if self.peek() == Some(b'+') {
            self.pos += 1;
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Elem> {
        let base = self.primary()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let at = self.at();
        let e = self.integer()?;
        if neg && self.field.is_zero(&base) {
            return syntax(at, "division by zero");
        }
        let e = i64::try_from(e).or_else(|_| syntax(at, "exponent too large"))?;
        self.field.pow(&base, if neg { -e } else { e })
    }

    fn integer(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return syntax(self.at(), "expected an integer");
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .expect("ascii")
            .parse()
            .or_else(|_| syntax(self.offset + start, "integer too large"))
    }

    fn primary(&mut self) -> Result<Elem> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.sum()?;
                if self.peek() != Some(b')') {
                    return syntax(self.at(), "expected ')'");
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let at = self.at();
                let n = self.integer()?;
                let n = i64::try_from(n).or_else(|_| syntax(at, "integer too large"))?;
                Ok(self.field.from_int(n))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii");
                match self.vars.iter().find(|(n, _)| n == name) {
                    Some((_, v)) => Ok(v.clone()),
                    None => syntax(self.offset + start, format!("unknown element literal '{name}'")),
                }
            }
            Some(c) => syntax(self.at(), format!("unexpected '{}'", c as char)),
            None => syntax(self.at(), "unexpected end of input"),
        }
    }
}

/// An element of `field` in its literal syntax: integers, the tower
/// variables, `t` over `F_q(t)`, rationals over `R`.
pub fn parse_elem(field: &Field, text: &str) -> Result<Elem> {
    ElemParser::new(text, 0, field, field_vars(field)).run()
}

fn parse_elem_at(field: &Field, text: &str, offset: usize) -> Result<Elem> {
    ElemParser::new(text, offset, field, field_vars(field)).run()
}

/// A polynomial over `k` in the variable `var`.
pub fn parse_poly_in(k: &Arc<FiniteField>, var: &str, text: &str) -> Result<Poly> {
    let ft = Field::RationalFunction(k.clone());
    let mut vars = field_vars(&ft);
    vars.retain(|(n, _)| n != "t");
    vars.push((var.to_string(), ft.t()?));
    match ElemParser::new(text, 0, &ft, vars).run()? {
        Elem::R(r) if r.den().is_one() => Ok(r.num().clone()),
        _ => syntax(0, "expected a polynomial"),
    }
}

/// A polynomial in `t` over the constant field of `field`.
pub fn parse_poly(field: &Field, text: &str) -> Result<Poly> {
    let k = field
        .constants()
        .finite_field()
        .cloned()
        .ok_or_else(|| Error::Unsupported("polynomials need a finite constant field".into()))?;
    parse_poly_in(&k, "t", text)
}

/// `F5`, `F9`, `F9=F3[x]/(x^2+1)`, `F5(t)`, `F9=F3[x]/(x^2+1)(t)`, `R`.
pub fn parse_field(text: &str) -> Result<Field> {
    let t = text.trim();
    if t == "R" {
        return Ok(Field::Real);
    }
    if let Some(stem) = t.strip_suffix("(t)") {
        return Field::rational_function(&parse_field(stem)?);
    }
    let (k, rest) = parse_finite(t, 0)?;
    if rest != t.len() {
        return syntax(rest, "trailing input in field descriptor");
    }
    Ok(Field::Finite(k))
}

fn parse_finite(s: &str, at: usize) -> Result<(Arc<FiniteField>, usize)> {
    let b = s.as_bytes();
    if b.get(at) != Some(&b'F') {
        return syntax(at, "expected 'F'");
    }
    let mut i = at + 1;
    while i < b.len() && b[i].is_ascii_digit() {
        i += 1;
    }
    let q: u64 = s[at + 1..i].parse().or_else(|_| syntax(at + 1, "expected a field size"))?;
    if q < 3 {
        return syntax(at + 1, "field size must be an odd prime power");
    }
    if b.get(i) != Some(&b'=') {
        let p = smallest_factor(q);
        let mut k = 0;
        let mut r = q;
        while r % p == 0 {
            r /= p;
            k += 1;
        }
        if r != 1 {
            return syntax(at + 1, format!("{q} is not a prime power"));
        }
        let base = FiniteField::prime(p as u32)?;
        return Ok((default_extension(&base, k, "x")?, i));
    }
    let (base, j) = parse_finite(s, i + 1)?;
    let close = s[j..].find(']').map(|o| j + o);
    let (var, j) = match (b.get(j), close) {
        (Some(b'['), Some(c)) => (&s[j + 1..c], c + 1),
        _ => return syntax(j, "expected '[var]'"),
    };
    if !s[j..].starts_with("/(") {
        return syntax(j, "expected '/('");
    }
    let start = j + 2;
    let mut depth = 1;
    let mut end = start;
    for (o, c) in s[start..].char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if depth == 0 {
            end = start + o;
            break;
        }
    }
    if depth != 0 {
        return syntax(start, "unbalanced parentheses");
    }
    let m = parse_poly_in(&base, var, &s[start..end])?;
    let k = FiniteField::extension(&base, m, var)?;
    if k.size() as u64 != q {
        return syntax(at + 1, format!("modulus gives a field of size {}, not {q}", k.size()));
    }
    Ok((k, end + 1))
}

fn smallest_factor(n: u64) -> u64 {
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return d;
        }
        d += 1;
    }
    n
}

/// Splits `s` on `sep` outside brackets, parentheses and angle brackets.
fn split_top(s: &str, sep: char) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' | '<' | '{' => depth += 1,
            ')' | ']' | '>' | '}' => depth -= 1,
            _ => {}
        }
        if c == sep && depth == 0 {
            out.push((start, &s[start..i]));
            start = i + c.len_utf8();
        }
    }
    out.push((start, &s[start..]));
    out
}

struct ExprParser<'a> {
    s: &'a str,
    pos: usize,
    field: &'a Field,
}

impl<'a> ExprParser<'a> {
    fn bytes(&self) -> &'a [u8] {
        self.s.as_bytes()
    }

    fn peek(&mut self) -> Option<u8> {
        while self.pos < self.s.len() && self.bytes()[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        self.bytes().get(self.pos).copied()
    }

    fn sum(&mut self) -> Result<MwExpr> {
        let mut acc = self.product()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            let at = self.pos;
            self.pos += 1;
            let r = self.product()?;
            acc = if c == b'+' { acc.add(&r) } else { acc.sub(&r) }.map_err(|e| match e {
                Error::Homogeneity(..) => Error::Syntax { pos: at, msg: format!("degree-inhomogeneous sum: {e}") },
                e => e,
            })?;
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<MwExpr> {
        let mut acc = self.unary()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let r = self.unary()?;
            acc = acc.mul(&r)?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MwExpr> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(self.unary()?.neg());
        }
        self.primary()
    }

    fn word(&mut self) -> &'a str {
        let start = self.pos;
        while self.pos < self.s.len() && self.bytes()[self.pos].is_ascii_alphanumeric() {
            self.pos += 1;
        }
        &self.s[start..self.pos]
    }

    fn integer(&mut self) -> Result<i64> {
        self.peek();
        let start = self.pos;
        while self.pos < self.s.len() && self.bytes()[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return syntax(start, "expected an integer");
        }
        self.s[start..self.pos].parse().or_else(|_| syntax(start, "integer too large"))
    }

    /// The text up to the matching `close`, and the list of its top-level
    /// comma-separated pieces with absolute offsets.
    fn delimited(&mut self, close: u8) -> Result<Vec<(usize, &'a str)>> {
        let open_at = self.pos;
        self.pos += 1;
        let start = self.pos;
        let mut depth = 0i32;
        while self.pos < self.s.len() {
            let c = self.bytes()[self.pos];
            if c == close && depth == 0 {
                break;
            }
            match c {
                b'(' | b'[' => depth += 1,
                b')' | b']' => depth -= 1,
                _ => {}
            }
            self.pos += 1;
        }
        if self.pos >= self.s.len() {
            return syntax(open_at, format!("unclosed '{}'", self.bytes()[open_at] as char));
        }
        let inner = &self.s[start..self.pos];
        self.pos += 1;
        if inner.trim().is_empty() {
            return Ok(Vec::new());
        }
        Ok(split_top(inner, ',').into_iter().map(|(o, p)| (start + o, p)).collect())
    }

    fn elems(&self, pieces: &[(usize, &str)]) -> Result<Vec<Elem>> {
        pieces.iter().map(|(o, p)| parse_elem_at(self.field, p, *o)).collect()
    }

    fn primary(&mut self) -> Result<MwExpr> {
        let f = self.field;
        let at = self.pos;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.sum()?;
                if self.peek() != Some(b')') {
                    return syntax(self.pos, "expected ')'");
                }
                self.pos += 1;
                Ok(v)
            }
            Some(b'[') => {
                let at = self.pos;
                let pieces = self.delimited(b']')?;
                if pieces.is_empty() {
                    return syntax(at, "empty symbol");
                }
                MwExpr::brackets(f, self.elems(&pieces)?)
            }
            Some(b'<') => {
                let at = self.pos;
                let pieces = self.delimited(b'>')?;
                if pieces.is_empty() {
                    return syntax(at, "empty form");
                }
                let mut acc = MwExpr::zero(f, 0);
                for u in self.elems(&pieces)? {
                    if f.is_zero(&u) {
                        return Err(Error::ZeroSlot);
                    }
                    acc = acc.add(&MwExpr::angle(f, u)?)?;
                }
                Ok(acc)
            }
            Some(c) if c.is_ascii_digit() => Ok(MwExpr::integer(f, self.integer()?)),
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                match self.word() {
                    "eta" => {
                        if self.peek() == Some(b'^') {
                            self.pos += 1;
                            let m = self.integer()?;
                            if m < 0 {
                                return syntax(self.pos, "negative eta power");
                            }
                            Ok(MwExpr::eta_pow(f, m as u32))
                        } else {
                            Ok(MwExpr::eta(f))
                        }
                    }
                    "h" => Ok(MwExpr::h(f)),
                    "eps" => Ok(MwExpr::epsilon(f)),
                    "neps" => {
                        if self.peek() != Some(b'(') {
                            return syntax(self.pos, "expected '('");
                        }
                        self.pos += 1;
                        let neg = if self.peek() == Some(b'-') {
                            self.pos += 1;
                            true
                        } else {
                            false
                        };
                        let n = self.integer()?;
                        if self.peek() != Some(b')') {
                            return syntax(self.pos, "expected ')'");
                        }
                        self.pos += 1;
                        Ok(gw_to_mw0(&n_epsilon(f, if neg { -n } else { n })))
                    }
                    "pf" => {
                        if self.peek() != Some(b'(') {
                            return syntax(self.pos, "expected '('");
                        }
                        let pieces = self.delimited(b')')?;
                        let a = self.elems(&pieces)?;
                        if a.iter().any(|x| f.is_zero(x)) {
                            return Err(Error::ZeroSlot);
                        }
                        Ok(gw_to_mw0(&pfister(f, &a)?))
                    }
                    w => syntax(start, format!("unknown identifier '{w}'")),
                }
            }
            Some(c) => syntax(at, format!("unexpected '{}'", c as char)),
            None => syntax(at, "unexpected end of input"),
        }
    }
}

/// An expression over `field`:
/// integers, `eta`, `eta^m`, `[a1,...,ar]`, `<u1,...>`, `h`, `eps`,
/// `neps(n)`, `pf(a,...)`, `+`, `-`, `*` and parentheses.
pub fn parse_expr(field: &Field, text: &str) -> Result<MwExpr> {
    let mut p = ExprParser { s: text, pos: 0, field };
    if p.peek().is_none() {
        return syntax(0, "empty expression");
    }
    let v = p.sum()?;
    if let Some(c) = p.peek() {
        return syntax(p.pos, format!("unexpected '{}'", c as char));
    }
    Ok(v)
}

/// A twist word: `triv`, `omega`, `O(d)`, or atoms joined by `⊗`
/// (`p*` conormal, `dt`, `O(d)`, other names as function atoms).
pub fn parse_word(text: &str) -> Result<GradedLine> {
    let t = text.trim();
    if t.is_empty() || t == "triv" {
        return Ok(GradedLine::trivial());
    }
    let mut word = Vec::new();
    for (o, a) in split_top(t, '⊗') {
        let a = a.trim();
        let (stem, dual) = match a.strip_suffix('*') {
            Some(s) => (s, true),
            None => (a, false),
        };
        let atom = if stem == "omega" {
            Atom::bundle(-2)
        } else if let Some(d) = stem.strip_prefix("O(").and_then(|r| r.strip_suffix(')')) {
            match d.trim().parse::<i64>() {
                Ok(d) => Atom::bundle(d),
                Err(_) => return syntax(o, format!("bad bundle degree '{d}'")),
            }
        } else if stem == "dt" {
            Atom::dt()
        } else if stem.is_empty() {
            return syntax(o, "empty atom");
        } else if dual {
            word.push(Atom::conormal(stem));
            continue;
        } else {
            Atom::function(stem)
        };
        word.push(if dual { atom.dual() } else { atom });
    }
    Ok(GradedLine::new(word))
}

/// `expr` or `expr @ word`.
pub fn parse_twisted(field: &Field, text: &str) -> Result<TwistedMw> {
    match text.find('@') {
        None => Ok(TwistedMw::untwisted(parse_expr(field, text)?)),
        Some(i) => {
            let e = parse_expr(field, &text[..i])?;
            let w = parse_word(&text[i + 1..]).map_err(|e| match e {
                Error::Syntax { pos, msg } => Error::Syntax { pos: pos + i + 1, msg },
                e => e,
            })?;
            Ok(TwistedMw::new(e, w))
        }
    }
}

/// `generic`, `inf`, or a monic irreducible polynomial in `t`.
pub fn parse_point(base: &Field, text: &str) -> Result<Point> {
    match text.trim() {
        "generic" | "gen" => Ok(Point::Generic),
        "inf" => Ok(Point::Infinity),
        s => Ok(Point::Closed(parse_poly(base, s)?)),
    }
}

/// `inf` or a polynomial place.
pub fn parse_place(base: &Field, text: &str) -> Result<Place> {
    match parse_point(base, text)? {
        Point::Generic => syntax(0, "the generic point is not a place"),
        Point::Infinity => Ok(Place::Infinity),
        Point::Closed(p) => Ok(Place::PAdic(p)),
    }
}

/// `A1`, `P1`, `Spec`.
pub fn parse_scheme(text: &str) -> Result<Scheme> {
    match text.trim() {
        "A1" | "A^1" => Ok(Scheme::AffineLine),
        "P1" | "P^1" => Ok(Scheme::ProjLine),
        "Spec" | "pt" | "point" => Ok(Scheme::Point),
        s => syntax(0, format!("unknown scheme '{s}'")),
    }
}

/// `O(d)`, `omega` or `triv` as the degree of a line bundle on `P^1`.
pub fn parse_bundle(text: &str) -> Result<i64> {
    let t = text.trim().trim_start_matches('@').trim();
    if t == "triv" {
        return Ok(0);
    }
    let w = parse_word(t)?;
    match w.word.as_slice() {
        [] => Ok(0),
        [a] if a.name.starts_with("O(") && !a.dual => {
            Ok(a.name[2..a.name.len() - 1].parse().expect("printed by Atom::bundle"))
        }
        _ => syntax(0, "expected O(d), omega or triv"),
    }
}

/// `{pt: expr; ...}`: either a single `generic` entry (codimension 0) or
/// closed points with values over their residue fields (codimension 1).
/// A value may repeat its basis word after `@`; it must then match.
pub fn parse_cochain(scheme: Scheme, base: &Field, twist: i64, text: &str) -> Result<Cochain> {
    let t = text.trim();
    let inner = match t.strip_prefix('{').and_then(|r| r.strip_suffix('}')) {
        Some(i) => i,
        None => return syntax(0, "a cochain is written {point: expr; ...}"),
    };
    let mut generic = None;
    let mut closed = Vec::new();
    let mut weight = None;
    let line = bundle_line(twist);
    let ft = match scheme {
        Scheme::Point => base.clone(),
        _ => Field::rational_function(base)?,
    };
    for (o, entry) in split_top(inner, ';') {
        if entry.trim().is_empty() {
            continue;
        }
        let colon = match entry.find(':') {
            Some(c) => c,
            None => return syntax(o + 1, "expected 'point: expr'"),
        };
        let pt = parse_point(base, &entry[..colon])?;
        let rest = &entry[colon + 1..];
        let (etext, wtext) = match rest.find('@') {
            Some(i) => (&rest[..i], Some(&rest[i + 1..])),
            None => (rest, None),
        };
        let field = match &pt {
            Point::Generic => ft.clone(),
            p => Field::Finite(ft.residue_field(&p.place().expect("closed"))?),
        };
        let e = parse_expr(&field, etext)?;
        if let Some(w) = wtext {
            let expected = match &pt {
                Point::Generic => line.clone(),
                p => GradedLine::atom(Atom::conormal(p.name(&ft)?)).tensor(&line),
            };
            if parse_word(w)? != expected {
                return syntax(o + 1 + colon, format!("basis word must be '{expected}'"));
            }
        }
        match pt {
            Point::Generic => {
                if generic.is_some() {
                    return syntax(o, "repeated generic point");
                }
                generic = Some(e);
            }
            p => {
                let w = e.degree() + 1;
                if *weight.get_or_insert(w) != w {
                    return Err(Error::Homogeneity(weight.unwrap_or(w), w));
                }
                closed.push((p, e));
            }
        }
    }
    match (generic, closed.is_empty()) {
        (Some(_), false) => syntax(0, "mixed codimensions in one cochain"),
        (Some(g), true) => Cochain::generic(scheme, base, twist, g),
        (None, false) => Cochain::closed(scheme, base, twist, weight.unwrap_or(0), closed),
        (None, true) => Ok(Cochain::empty(scheme, base, 0, 0, twist, line)),
    }
}

/// A virtual form as a degree-0 expression, from the form literal syntax.
pub fn parse_form(field: &Field, text: &str) -> Result<GwForm> {
    crate::mw::mw0_to_gw(&parse_expr(field, text)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_descriptors() {
        assert_eq!(parse_field("F5").unwrap().to_string(), "F5");
        let f9 = parse_field("F9=F3[x]/(x^2+1)").unwrap();
        assert_eq!(f9.to_string(), "F9=F3[x]/(x^2+1)");
        assert_eq!(parse_field(&f9.to_string()).unwrap(), f9);
        assert_eq!(parse_field("F5(t)").unwrap().to_string(), "F5(t)");
        assert!(parse_field("F4").is_err());
        assert!(parse_field("F6").is_err());
        let f81 = parse_field("F81").unwrap();
        assert_eq!(parse_field(&f81.to_string()).unwrap(), f81);
    }

    #[test]
    fn elements() {
        let ft = parse_field("F5(t)").unwrap();
        let a = parse_elem(&ft, "(t^2+3*t+1)/(t+1)").unwrap();
        assert_eq!(parse_elem(&ft, &ft.fmt_elem(&a)).unwrap(), a);
        let f9 = parse_field("F9=F3[x]/(x^2+1)").unwrap();
        let x = parse_elem(&f9, "x").unwrap();
        assert!(f9.is_one(&f9.neg(&f9.mul(&x, &x))));
        assert!(parse_elem(&ft, "u").is_err());
    }

    #[test]
    fn expressions() {
        let f = parse_field("F5").unwrap();
        let e = parse_expr(&f, "[2,3] + eta*[2,3,4]").unwrap();
        assert_eq!((e.degree(), e.num_terms()), (2, 2));
        assert_eq!(parse_expr(&f, "[2]*[3]").unwrap().to_string(), "[2,3]");
        assert_eq!(parse_expr(&f, "[0]").unwrap_err(), Error::ZeroSlot);
        assert!(matches!(parse_expr(&f, "[2] + 1"), Err(Error::Syntax { .. })));
        let ft = parse_field("F5(t)").unwrap();
        let u = parse_expr(&ft, "<2>*[t]").unwrap();
        assert!(u.equals(&parse_expr(&ft, "[t] + eta*[2,t]").unwrap()).unwrap());
        for s in ["2*eta^2*[2,3]", "-eta*[2]", "3", "-1 - eta*[-1]"] {
            assert_eq!(parse_expr(&f, s).unwrap().to_string(), s);
        }
    }

    #[test]
    fn words_and_cochains() {
        assert_eq!(parse_word("t* ⊗ t").unwrap().to_string(), "t* ⊗ t");
        assert_eq!(parse_bundle("omega").unwrap(), -2);
        assert_eq!(parse_bundle("@O(-1)").unwrap(), -1);
        let f = parse_field("F3").unwrap();
        let c = parse_cochain(Scheme::ProjLine, &f, 0, "{t: 1; t^2+1: <s>; inf: -1}").unwrap();
        assert_eq!(c.codim, 1);
        let again = parse_cochain(Scheme::ProjLine, &f, 0, &c.to_string()).unwrap();
        assert_eq!(again.to_string(), c.to_string());
    }
}
