use crlab_core::coeffring::{
    classify_square_obstruction, Monomial, Poly, Registry, SquareClass, Var,
};
use crlab_core::paperlab::field::F16;
use proptest::prelude::*;

struct Vars {
    reg: Registry,
    x: Var,
    y: Var,
    z: Var,
    t: Var,
}

fn vars() -> Vars {
    let mut reg = Registry::standard();
    let x = reg.ordinary("x").unwrap();
    let y = reg.ordinary("y").unwrap();
    let z = reg.ordinary("z").unwrap();
    let t = reg.unit("t").unwrap();
    Vars { reg, x, y, z, t }
}

type Terms = Vec<(i32, i32, i32, i32)>;

fn terms() -> impl Strategy<Value = Terms> {
    prop::collection::vec((0..3i32, 0..3i32, 0..2i32, -2..3i32), 0..6)
}

fn poly(v: &Vars, terms: &Terms) -> Poly {
    let mut p = Poly::zero();
    for &(a, b, c, d) in terms {
        p.toggle(Monomial::from_exponents(vec![
            (v.x, a),
            (v.y, b),
            (v.z, c),
            (v.t, d),
        ]));
    }
    p
}

/// Evaluation at a point with every variable nonzero, computed term by term.
fn point(v: &Vars, seed: (u8, u8, u8, u8)) -> impl Fn(Var) -> F16 + '_ {
    let nz = |b: u8| F16::new(b % 15 + 1);
    let (px, py, pz, pt) = (nz(seed.0), nz(seed.1), nz(seed.2), nz(seed.3));
    move |var| {
        if var == v.x {
            px
        } else if var == v.y {
            py
        } else if var == v.z {
            pz
        } else if var == v.t {
            pt
        } else {
            F16::new(1)
        }
    }
}

proptest! {
    #[test]
    fn ring_axioms(a in terms(), b in terms(), c in terms()) {
        let v = vars();
        let (p, q, r) = (poly(&v, &a), poly(&v, &b), poly(&v, &c));
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p + &p).is_zero());
    }

    #[test]
    fn frobenius(a in terms(), b in terms()) {
        let v = vars();
        let (p, q) = (poly(&v, &a), poly(&v, &b));
        prop_assert_eq!((&p + &q).square(), &p.square() + &q.square());
        prop_assert_eq!(p.square(), &p * &p);
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in terms(), b in terms(), s in any::<(u8, u8, u8, u8)>()) {
        let v = vars();
        let (p, q) = (poly(&v, &a), poly(&v, &b));
        let at = point(&v, s);
        let ep = p.eval(&at).unwrap();
        let eq = q.eval(&at).unwrap();
        prop_assert_eq!((&p * &q).eval(&at).unwrap(), ep * eq);
        prop_assert_eq!((&p + &q).eval(&at).unwrap(), ep + eq);
    }

    #[test]
    fn render_parse_round_trip(a in terms()) {
        let mut v = vars();
        let p = poly(&v, &a);
        let text = v.reg.render(&p);
        let back = v.reg.parse(&text).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn square_plus_a_is_unsolvable(a in terms()) {
        let mut v = vars();
        let q = poly(&v, &a);
        let sqrt_a = v.reg.parse("a").unwrap();
        let p = &q.square() + &sqrt_a;
        match classify_square_obstruction(&v.reg, &p) {
            SquareClass::UnsolvableOverK { root } => {
                prop_assert_eq!(&root.square() + &sqrt_a, p);
            }
            other => prop_assert!(false, "{:?}", other),
        }
    }
}

#[test]
fn linear_term_is_a_candidate() {
    let mut reg = Registry::standard();
    let p = reg.parse("x^2 + y + a").unwrap();
    assert!(matches!(
        classify_square_obstruction(&reg, &p),
        SquareClass::SolvableCandidate { .. }
    ));
}
