use mwk::field::default_extension;
use mwk::parse::{parse_cochain, parse_expr};
use mwk::random::{self, Shape};
use mwk::residue::{pullback, residue_at};
use mwk::rost_schmid::{differential, pullback_flat, Cochain, Scheme};
use mwk::transfer::geometric_transfer;
use mwk::*;
use proptest::prelude::*;
use rand::Rng;

fn fields() -> Vec<Field> {
    let f5 = Field::prime(5).unwrap();
    let f3 = Field::prime(3).unwrap();
    let f9 = Field::Finite(default_extension(f3.finite_field().unwrap(), 2, "x").unwrap());
    let f5t = Field::rational_function(&f5).unwrap();
    vec![f5, f9, f5t]
}

fn small() -> Shape {
    Shape { max_terms: 2, max_slots: 2, max_eta: 1, max_poly_degree: 2, max_coeff: 2 }
}

fn cfg() -> ProptestConfig {
    ProptestConfig { cases: 64, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(cfg())]

    #[test]
    fn print_parse_round_trip(seed in any::<u64>(), which in 0usize..3, deg in -1i64..=2) {
        let f = &fields()[which];
        let mut r = random::rng(seed);
        let x = random::expr(f, deg, &small(), &mut r).simplify();
        let y = parse_expr(f, &x.to_string()).unwrap();
        prop_assert_eq!(y.simplify().to_string(), x.to_string());
    }

    #[test]
    fn difference_with_itself_is_zero(seed in any::<u64>(), which in 0usize..2, deg in -1i64..=2) {
        let f = &fields()[which];
        let mut r = random::rng(seed);
        let x = random::expr(f, deg, &small(), &mut r);
        prop_assert!(x.sub(&x).unwrap().is_zero().unwrap());
    }

    #[test]
    fn eta_multiples_vanish_in_milnor(seed in any::<u64>(), which in 0usize..3, deg in 0i64..=2) {
        let f = &fields()[which];
        let mut r = random::rng(seed);
        let x = random::expr(f, deg, &small(), &mut r);
        prop_assert!(x.times_eta(1).to_milnor().is_syntactic_zero());
    }

    #[test]
    fn eta_kills_hyperbolic(which in 0usize..2) {
        let f = &fields()[which];
        prop_assert!(MwExpr::eta(f).mul(&MwExpr::h(f)).unwrap().is_zero().unwrap());
    }

    #[test]
    fn rebase_is_invertible(seed in any::<u64>(), which in 0usize..2) {
        let f = &fields()[which];
        let mut r = random::rng(seed);
        let x = TwistedMw::new(random::expr(f, 1, &small(), &mut r), GradedLine::atom(Atom::dt()));
        let u = random::unit(f, &small(), &mut r);
        let back = x.rebase(&u).unwrap().rebase(&f.inv(&u).unwrap()).unwrap();
        prop_assert!(back.equals(&x).unwrap());
        prop_assert!(x.rebase(&u).unwrap().equals(&x).unwrap());
    }

    #[test]
    fn canonical_is_idempotent(seed in any::<u64>(), which in 0usize..2) {
        let f = &fields()[which];
        let mut r = random::rng(seed);
        let u = random::unit(f, &small(), &mut r);
        let x = TwistedMw::new(random::expr(f, 0, &small(), &mut r), GradedLine::atom(Atom::dt()))
            .rebase(&u)
            .unwrap();
        let c = x.canonical().unwrap();
        prop_assert_eq!(c.canonical().unwrap().to_string(), c.to_string());
    }

    #[test]
    fn residues_of_constants_vanish(seed in any::<u64>(), deg in 0i64..=2, a in 0u32..5) {
        let k = Field::prime(5).unwrap();
        let ft = Field::rational_function(&k).unwrap();
        let mut r = random::rng(seed);
        let x = pullback(&random::expr(&k, deg, &small(), &mut r), &ft).unwrap();
        let p = Poly::from_coeffs(vec![a, 1]);
        prop_assert!(residue_at(&x, &Place::PAdic(p)).unwrap().is_zero().unwrap());
        prop_assert!(residue_at(&x, &Place::Infinity).unwrap().is_zero().unwrap());
    }

    #[test]
    fn pulled_back_cochains_are_cocycles(seed in any::<u64>(), deg in 0i64..=2, twist in 0i64..=3) {
        let k = Field::prime(7).unwrap();
        let mut r = random::rng(seed);
        let alpha = random::expr(&k, deg, &small(), &mut r);
        let scheme = if r.gen_bool(0.5) { Scheme::AffineLine } else { Scheme::ProjLine };
        let twist = if scheme == Scheme::AffineLine { 0 } else { 2 * (twist / 2) };
        let d = differential(&pullback_flat(&alpha, scheme, twist).unwrap()).unwrap();
        prop_assert!(d.is_zero().unwrap(), "{}", d);
    }

    #[test]
    fn rational_transfer_is_identity(seed in any::<u64>(), a in 0u32..7, deg in 0i64..=2) {
        let k = Field::prime(7).unwrap();
        let mut r = random::rng(seed);
        let x = random::expr(&k, deg, &small(), &mut r);
        let y = geometric_transfer(&x, &Poly::from_coeffs(vec![a, 1]), &k).unwrap();
        prop_assert!(y.equals(&x).unwrap());
    }

    #[test]
    fn cochain_print_parse_round_trip(seed in any::<u64>()) {
        let k = Field::prime(3).unwrap();
        let ft = Field::rational_function(&k).unwrap();
        let mut r = random::rng(seed);
        let x = random::expr(&ft, 1, &small(), &mut r);
        let o = differential(&Cochain::generic(Scheme::AffineLine, &k, 0, x).unwrap()).unwrap();
        let back = parse_cochain(Scheme::AffineLine, &k, 0, &o.to_string()).unwrap();
        prop_assert_eq!(back.to_string(), o.to_string());
    }
}
