//! Seeded generators for property runs.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::field::{Elem, Field, Poly, RatFn};
use crate::mw::{MwExpr, Term};

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Shape limits for random expressions.
#[derive(Clone, Copy, Debug)]
pub struct Shape {
    pub max_terms: usize,
    pub max_slots: usize,
    pub max_eta: u32,
    /// Degree bound for numerators and denominators over `F_q(t)`.
    pub max_poly_degree: usize,
    pub max_coeff: i64,
}

impl Default for Shape {
    fn default() -> Self {
        Shape { max_terms: 3, max_slots: 3, max_eta: 2, max_poly_degree: 3, max_coeff: 2 }
    }
}

fn random_poly(k: &crate::field::FiniteField, deg: usize, monic: bool, r: &mut impl Rng) -> Poly {
    let q = k.size();
    let mut c: Vec<u32> = (0..deg).map(|_| r.gen_range(0..q)).collect();
    c.push(if monic { 1 } else { r.gen_range(1..q) });
    Poly::from_coeffs(c)
}

/// A uniformly random nonzero constant, or a random nonzero rational
/// function with small numerator and (often trivial) denominator.
pub fn unit(field: &Field, shape: &Shape, r: &mut impl Rng) -> Elem {
    match field {
        Field::Finite(k) => Elem::F(r.gen_range(1..k.size())),
        Field::RationalFunction(k) => {
            let num = random_poly(k, r.gen_range(0..=shape.max_poly_degree), false, r);
            let den = if r.gen_bool(0.3) {
                random_poly(k, r.gen_range(1..=shape.max_poly_degree.max(1)), true, r)
            } else {
                Poly::one()
            };
            Elem::R(RatFn::new(num, den, k).expect("nonzero denominator"))
        }
        Field::Real => {
            let n: i64 = r.gen_range(1..=9) * if r.gen_bool(0.5) { 1 } else { -1 };
            let d: i64 = r.gen_range(1..=4);
            Elem::Q(num_rational::BigRational::new(n.into(), d.into()))
        }
    }
}

/// A constant unit in the constant field of `field`, embedded in `field`.
pub fn constant_unit(field: &Field, r: &mut impl Rng) -> Elem {
    let k = field.constants();
    let a = unit(&k, &Shape::default(), r);
    field.constant(&a)
}

/// A random homogeneous expression of the given degree.
pub fn expr(field: &Field, degree: i64, shape: &Shape, r: &mut impl Rng) -> MwExpr {
    let mut x = MwExpr::zero(field, degree);
    let lo_eta = (-degree).max(0) as u32;
    let hi_eta = (shape.max_slots as i64 - degree).min(shape.max_eta as i64 + lo_eta as i64);
    if hi_eta < lo_eta as i64 {
        return x;
    }
    let n = r.gen_range(1..=shape.max_terms);
    for _ in 0..n {
        let eta = r.gen_range(lo_eta..=hi_eta as u32);
        let slots = (0..(degree + eta as i64) as usize).map(|_| unit(field, shape, r)).collect();
        let mut c = 0;
        while c == 0 {
            c = r.gen_range(-shape.max_coeff..=shape.max_coeff);
        }
        let t = Term::new(eta, slots);
        x = x.add(&MwExpr::from_terms(field, degree, [(t, c)]).expect("valid term")).expect("same degree");
    }
    x
}
