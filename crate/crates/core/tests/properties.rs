mod common;

use golod::graded::graded_component_basis;
use golod::groebner::{normal_form_poly, FreeModuleVector};
use golod::ideal::{derivative_ideal, ideal_intersection, ideal_intersection_via_syzygies, Ideal};
use golod::io::{format_ideal_file, parse_ideal_file};
use golod::koszul::{koszul_complex, wedge_sign};
use golod::poly::{Monomial, Polynomial, Ring, RingSpec};
use proptest::prelude::*;

use common::{binomial, brute_contains};

type RawPoly = Vec<(Vec<usize>, i64)>;

fn ring3() -> Ring {
    RingSpec::rational(&["x", "y", "z"])
}

fn build(ring: &Ring, raw: &RawPoly) -> Polynomial {
    Polynomial::from_terms(
        ring,
        raw.iter().map(|(picks, c)| {
            let mut e = vec![0u32; ring.num_vars()];
            for &p in picks {
                e[p % ring.num_vars()] += 1;
            }
            (Monomial::from_exponents(&e), ring.scalar(*c))
        }),
    )
}

/// Homogeneous of degree `deg` (possibly zero).
fn homog(deg: usize) -> impl Strategy<Value = RawPoly> {
    prop::collection::vec((prop::collection::vec(0usize..3, deg), -4i64..=4), 1..4)
}

fn any_poly() -> impl Strategy<Value = RawPoly> {
    prop::collection::vec((prop::collection::vec(0usize..3, 0..4), -4i64..=4), 0..5)
}

/// Generators of a small homogeneous ideal with degrees in `1..=3`.
fn small_ideal() -> impl Strategy<Value = Vec<RawPoly>> {
    prop::collection::vec((1usize..=3).prop_flat_map(homog), 1..4)
}

fn ideal_from(ring: &Ring, raws: &[RawPoly]) -> Option<Ideal> {
    let gens: Vec<Polynomial> = raws.iter().map(|r| build(ring, r)).filter(|g| !g.is_zero()).collect();
    let a = Ideal::new(ring, gens).ok()?;
    (!a.is_zero() && a.is_proper()).then_some(a)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_axioms(f in any_poly(), g in any_poly(), h in any_poly()) {
        let r = ring3();
        let (f, g, h) = (build(&r, &f), build(&r, &g), build(&r, &h));
        prop_assert_eq!(&f + &g, &g + &f);
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&(&f + &g) * &h, &(&f * &h) + &(&g * &h));
        prop_assert!((&f - &f).is_zero());
    }

    #[test]
    fn leibniz_rule(f in any_poly(), g in any_poly(), i in 0usize..3) {
        let r = ring3();
        let (f, g) = (build(&r, &f), build(&r, &g));
        let lhs = (&f * &g).partial_derivative(i).unwrap();
        let rhs = &(&f * &g.partial_derivative(i).unwrap()) + &(&g * &f.partial_derivative(i).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn euler_formula(deg in 1usize..5, seed in any::<u64>()) {
        let r = ring3();
        let mut g = common::rng(seed);
        let f = common::random_homogeneous(&mut g, &r, deg as u32, 4);
        let mut lhs = Polynomial::zero(&r);
        for i in 0..3 {
            lhs = &lhs + &(&Polynomial::variable(&r, i).unwrap() * &f.partial_derivative(i).unwrap());
        }
        prop_assert_eq!(lhs, f.scale(&r.scalar(deg as i64)));
    }

    #[test]
    fn full_ring_component_dimension(d in 1usize..=4, q in 0i64..6) {
        let names = ["x", "y", "z", "w"];
        let r = RingSpec::rational(&names[..d]);
        let basis = graded_component_basis(&r, &[FreeModuleVector::unit(&r, 1, 0)], &[0], q).unwrap();
        prop_assert_eq!(basis.len() as u64, binomial(q as u64 + d as u64 - 1, d as u64 - 1));
    }

    #[test]
    fn groebner_basis_invariants(gens in small_ideal(), f in homog(3), g in homog(3), c in -3i64..=3) {
        let r = ring3();
        let Some(a) = ideal_from(&r, &gens) else { return Ok(()) };
        let gb = a.gb();
        prop_assert!(gb.satisfies_buchberger_criterion());
        for h in a.generators() {
            prop_assert!(normal_form_poly(h, gb).unwrap().is_zero());
        }
        let (f, g) = (build(&r, &f), build(&r, &g));
        let nf = normal_form_poly(&f, gb).unwrap();
        prop_assert_eq!(normal_form_poly(&nf, gb).unwrap(), nf.clone());
        let combo = &f + &g.scale(&r.scalar(c));
        let nfg = normal_form_poly(&g, gb).unwrap();
        prop_assert_eq!(normal_form_poly(&combo, gb).unwrap(), &nf + &nfg.scale(&r.scalar(c)));
        prop_assert_eq!(a.contains_poly(&f).unwrap(), brute_contains(&a, &f));
    }

    #[test]
    fn product_lies_in_intersection(a in small_ideal(), b in small_ideal()) {
        let r = ring3();
        let (Some(a), Some(b)) = (ideal_from(&r, &a), ideal_from(&r, &b)) else { return Ok(()) };
        let meet = ideal_intersection(&a, &b).unwrap();
        prop_assert!(meet.contains(&a.product(&b).unwrap()).unwrap());
        prop_assert!(a.contains(&meet).unwrap() && b.contains(&meet).unwrap());
        prop_assert!(meet.same_ideal(&ideal_intersection_via_syzygies(&a, &b).unwrap()).unwrap());
        prop_assert!(a.sum(&b).unwrap().contains(&a).unwrap());
    }

    #[test]
    fn colon_times_element_lies_in_ideal(a in small_ideal(), f in (1usize..=2).prop_flat_map(homog)) {
        let r = ring3();
        let Some(a) = ideal_from(&r, &a) else { return Ok(()) };
        let f = build(&r, &f);
        if f.is_zero() {
            return Ok(());
        }
        let q = a.quotient(&f).unwrap();
        for g in q.generators() {
            prop_assert!(a.contains_poly(&(g * &f)).unwrap());
        }
        prop_assert!(q.contains(&a).unwrap());
    }

    #[test]
    fn parse_round_trip(gens in small_ideal()) {
        let r = ring3();
        let Some(a) = ideal_from(&r, &gens) else { return Ok(()) };
        let text = format_ideal_file(&r, &[("a", &a)]);
        let back = parse_ideal_file(&text).unwrap();
        let b = back.ideal("a").unwrap();
        let show = |i: &Ideal| i.generators().iter().map(|g| g.to_string()).collect::<Vec<_>>();
        prop_assert_eq!(show(&a), show(b));
    }

    #[test]
    fn wedge_sign_is_graded_commutative(s in prop::collection::btree_set(0usize..5, 0..4), t in prop::collection::btree_set(0usize..5, 0..4)) {
        let s: Vec<usize> = s.into_iter().collect();
        let t: Vec<usize> = t.into_iter().collect();
        match (wedge_sign(&s, &t), wedge_sign(&t, &s)) {
            (Some((u, neg1)), Some((v, neg2))) => {
                prop_assert_eq!(u, v);
                let odd = (s.len() * t.len()) % 2 == 1;
                prop_assert_eq!(neg1 ^ neg2, odd);
            }
            (None, None) => {}
            _ => prop_assert!(false, "asymmetric vanishing"),
        }
    }

    #[test]
    fn koszul_differential_squares_to_zero(gens in small_ideal()) {
        let r = ring3();
        let Some(a) = ideal_from(&r, &gens) else { return Ok(()) };
        prop_assert!(koszul_complex(&r, Some(&a)).unwrap().is_complex());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn powers_multiply(gens in prop::collection::vec((1usize..=2).prop_flat_map(homog), 1..3), m in 1i64..=2, n in 1i64..=2) {
        let r = RingSpec::rational(&["x", "y"]);
        let Some(a) = ideal_from(&r, &gens) else { return Ok(()) };
        let lhs = a.power(m + n).unwrap();
        let rhs = a.power(m).unwrap().product(&a.power(n).unwrap()).unwrap();
        prop_assert!(lhs.same_ideal(&rhs).unwrap());
    }

    #[test]
    fn derivatives_of_powers(gens in prop::collection::vec((2usize..=3).prop_flat_map(homog), 1..3), m in 2i64..=4) {
        let r = RingSpec::rational(&["x", "y"]);
        let Some(c) = ideal_from(&r, &gens) else { return Ok(()) };
        let dc = derivative_ideal(&c).unwrap();
        // Euler: each generator lies in the ideal of its partials
        prop_assert!(dc.contains(&c).unwrap());
        let lhs = derivative_ideal(&c.power(m).unwrap()).unwrap();
        let rhs = c.power(m - 1).unwrap().product(&dc).unwrap();
        prop_assert!(rhs.contains(&lhs).unwrap());
    }
}
