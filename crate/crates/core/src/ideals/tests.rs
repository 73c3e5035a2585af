use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::polyring::{parse_poly, RingSpec};

fn ring(params: &[&str], vars: &[&str]) -> Arc<RingSpec> {
    RingSpec::standard(params, vars).unwrap()
}

fn ideal(r: &Arc<RingSpec>, g: &[&str]) -> Ideal {
    Ideal::parse(r, g).unwrap()
}

fn p(r: &Arc<RingSpec>, s: &str) -> Polynomial<Q> {
    parse_poly(s, r).unwrap()
}

#[test]
fn linear_ideal_lex() {
    let r = ring(&[], &["x", "y", "z"]);
    let gb = ideal(&r, &["x - y", "y - z"]).groebner(&TermOrder::Lex).unwrap();
    assert_eq!(gb.elements(), vec![p(&r, "y - z"), p(&r, "x - z")]);
    assert!(gb.verify());
}

#[test]
fn unit_ideal_basis_is_one() {
    let r = ring(&["a"], &["x"]);
    let gb = ideal(&r, &["a*x - 1", "x"]).gb().unwrap();
    assert!(gb.is_unit());
    assert_eq!(gb.elements(), vec![p(&r, "1")]);
    assert_eq!(ideal(&r, &["1"]).krull_dimension().unwrap(), None);
}

#[test]
fn two_component_surface_has_dimension_two() {
    let r = ring(&["a"], &["x", "y", "z"]);
    let i = ideal(&r, &["a*x + z^2", "a*y + z^2"]);
    let gb = i.gb().unwrap();
    assert!(gb.verify());
    assert_eq!(i.krull_dimension().unwrap(), Some(2));
}

#[test]
fn normal_forms() {
    let r = ring(&["a"], &["x", "y"]);
    let i = ideal(&r, &["a*x", "a*y^2"]);
    assert!(!i.normal_form(&p(&r, "a*y")).unwrap().is_zero());
    assert_eq!(i.normal_form(&p(&r, "1")).unwrap(), p(&r, "1"));
    assert!(i.normal_form(&p(&r, "x*a*y + a*y^2*x^3")).unwrap().is_zero());
}

#[test]
fn containment() {
    let r = ring(&["a", "b"], &["x1", "x2", "x3"]);
    let i = ideal(&r, &["a*x1 - b*x2 + (b-a)*x3"]);
    let j = ideal(&r, &["x1 - 1", "x2 - 1", "x3 - 1"]);
    assert!(j.contains(&i).unwrap());
    assert!(i.contains(&i).unwrap());
    let r2 = ring(&[], &["x"]);
    assert!(!ideal(&r2, &["x^2"]).contains(&ideal(&r2, &["x"])).unwrap());
}

#[test]
fn elimination() {
    let r = ring(&[], &["t", "x", "y"]);
    let i = ideal(&r, &["x - t^2", "y - t^3"]);
    let e = i.eliminate_names(&["t"]).unwrap();
    assert_eq!(e.ring().vars(), &["x".to_string(), "y".to_string()]);
    let expect = ideal(e.ring(), &["y^2 - x^3"]);
    assert!(e.equals(&expect).unwrap());
    let same = i.eliminate(&[]).unwrap();
    assert!(same.equals(&i).unwrap());
}

#[test]
fn elimination_of_fiber_variables_is_zero_for_graded_ideal() {
    let r = ring(&["a"], &["x", "y"]);
    let i = ideal(&r, &["a*x + y^2", "x*y"]);
    let e = i.eliminate(&[1, 2]).unwrap();
    assert!(e.is_zero());
}

#[test]
fn intersections() {
    let r = ring(&["a"], &["x", "y", "z"]);
    let i = ideal(&r, &["a", "z^2"]).intersect(&ideal(&r, &["x - y", "z^2"])).unwrap();
    assert!(i.equals(&ideal(&r, &["a*x - a*y", "z^2"])).unwrap());
    // the surface ideal is strictly smaller: (a,x,y,z) = (1,-1,-1,1) is a zero
    // of the surface ideal but not of z^2
    let surf = ideal(&r, &["a*x + z^2", "a*y + z^2"]);
    assert!(surf.contains_poly(&p(&r, "a*x - a*y")).unwrap());
    assert!(!surf.radical_contains(&p(&r, "z^2")).unwrap());
    let pt: Vec<Q> = [1, -1, -1, 1].iter().map(|&v| Q::from_integer(v.into())).collect();
    assert!(surf.generators().iter().all(|g| g.evaluate(&pt).unwrap() == Q::from_integer(0.into())));
    let r2 = ring(&[], &["x", "y"]);
    let xy = ideal(&r2, &["x"]).intersect(&ideal(&r2, &["y"])).unwrap();
    assert!(xy.equals(&ideal(&r2, &["x*y"])).unwrap());
    let k = ideal(&r2, &["x^2", "x*y + y^3"]);
    assert!(k.intersect(&k).unwrap().equals(&k).unwrap());
}

#[test]
fn quotients() {
    let r = ring(&["a"], &["x", "y"]);
    let i = ideal(&r, &["a*x", "a*y^2"]);
    let q = i.quotient_poly(&p(&r, "a*y")).unwrap();
    assert!(q.contains_poly(&p(&r, "y")).unwrap());
    assert!(i.quotient_poly(&p(&r, "1")).unwrap().equals(&i).unwrap());
    let r2 = ring(&[], &["x"]);
    let q2 = ideal(&r2, &["x^2"]).quotient_poly(&p(&r2, "x")).unwrap();
    assert!(q2.equals(&ideal(&r2, &["x"])).unwrap());
}

#[test]
fn radicals() {
    let r = ring(&[], &["x", "y"]);
    let i = ideal(&r, &["x"]);
    assert!(!i.radical_contains(&p(&r, "y")).unwrap());
    assert!(i.radical_contains(&p(&r, "x*y")).unwrap());
    let j = ideal(&r, &["x^3", "y^2 - x^2"]);
    assert!(j.radical_contains(&p(&r, "y")).unwrap());
    assert_eq!(j.power_membership(&p(&r, "y"), 6).unwrap(), Some(4));
}

#[test]
fn dimensions() {
    let r = ring(&[], &["x", "y", "z", "w"]);
    assert_eq!(Ideal::zero(&r).krull_dimension().unwrap(), Some(4));
    let r2 = ring(&[], &["x", "y"]);
    assert_eq!(ideal(&r2, &["x", "y^2"]).krull_dimension().unwrap(), Some(0));
    assert_eq!(ideal(&r, &["x*y", "z*w"]).krull_dimension().unwrap(), Some(2));
}

#[test]
fn budget_errors_are_distinct() {
    let r = ring(&[], &["x", "y", "z"]);
    let i = ideal(&r, &["x*y - z^2", "x*z - y^2", "y*z - x^2"]);
    let full = i.gb().unwrap();
    assert!(full.stats().pairs_considered > 1);
    let i = i.with_budget(Budget::pairs(1));
    assert!(matches!(i.gb(), Err(GbError::BudgetExceeded { what: "pairs", .. })));
    let j = ideal(&r, &["x*y - z^2", "x*z - y^2", "y*z - x^2"]).with_budget(Budget {
        max_pairs: None,
        max_degree: Some(2),
    });
    assert!(matches!(j.gb(), Err(GbError::BudgetExceeded { what: "degree", .. })));
}

#[test]
fn minimal_generators_drop_redundant() {
    let r = ring(&[], &["x", "y"]);
    let i = ideal(&r, &["x^2", "x*y", "x^2*y + x*y^2", "y^3", "x^3 - x*y^2"]);
    let (min, _) = i.minimal_generators(None).unwrap();
    assert_eq!(min.len(), 3);
    assert!(Ideal::new(&r, min).unwrap().equals(&i).unwrap());
}

#[test]
fn rational_function_coefficients() {
    use crate::polyring::{to_fraction_coeffs, RatFunc};
    let r = RingSpec::new(&["a"], &["x", "y", "z"], &[1, 2, 2]).unwrap();
    let g = to_fraction_coeffs(&p(&r, "y - a*y + a^2*z - x^2"));
    let fiber = g.ring().clone();
    let gb = GroebnerBasis::<RatFunc>::compute(&fiber, &[g], fiber.default_order(), Budget::default()).unwrap();
    assert_eq!(gb.krull_dimension(), Some(2));
    let r2 = ring(&["a"], &["x", "y", "z"]);
    let gens: Vec<_> = ["a*x + z^2", "a*y + z^2"]
        .iter()
        .map(|s| to_fraction_coeffs(&p(&r2, s)))
        .collect();
    let f2 = gens[0].ring().clone();
    let gb2 = GroebnerBasis::compute(&f2, &gens, f2.default_order(), Budget::default()).unwrap();
    assert!(gb2.verify());
    assert_eq!(gb2.krull_dimension(), Some(1));
}

// ---------------------------------------------------------------- properties

fn arb_poly(n: usize, max_terms: usize, max_deg: u16) -> impl Strategy<Value = Vec<(Vec<u16>, i64)>> {
    prop::collection::vec(
        (prop::collection::vec(0..=max_deg, n), -5i64..=5),
        1..=max_terms,
    )
}

fn build(r: &Arc<RingSpec>, t: &[(Vec<u16>, i64)]) -> Polynomial<Q> {
    Polynomial::from_terms(
        r,
        t.iter()
            .map(|(e, c)| (Monomial::from_exponents(e), Q::from_integer((*c).into())))
            .collect(),
    )
}

fn brute_dimension(gens: &[Monomial], n: usize) -> Option<usize> {
    if gens.iter().any(|g| g.is_one()) {
        return None;
    }
    let mut best = 0;
    for s in 0u32..(1 << n) {
        let ok = gens.iter().all(|g| g.support().any(|v| s & (1 << v) == 0));
        if ok {
            best = best.max(s.count_ones() as usize);
        }
    }
    Some(best)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn groebner_bases_satisfy_the_s_pair_criterion(
        a in arb_poly(3, 3, 2), b in arb_poly(3, 3, 2), c in arb_poly(3, 2, 2)
    ) {
        let r = ring(&[], &["x", "y", "z"]);
        let gens = vec![build(&r, &a), build(&r, &b), build(&r, &c)];
        for ord in [TermOrder::Lex, TermOrder::DegRevLex] {
            let gb = GroebnerBasis::compute(&r, &gens, &ord, Budget::pairs(5000)).unwrap();
            prop_assert!(gb.verify());
            for g in &gens {
                prop_assert!(gb.reduces_to_zero(g));
            }
            let i = Ideal::new(&r, gens.clone()).unwrap();
            for e in gb.elements() {
                prop_assert!(i.contains_poly(&e).unwrap());
            }
        }
    }

    #[test]
    fn normal_form_is_idempotent(a in arb_poly(3, 3, 2), b in arb_poly(3, 3, 2), f in arb_poly(3, 6, 3)) {
        let r = ring(&[], &["x", "y", "z"]);
        let i = Ideal::new(&r, vec![build(&r, &a), build(&r, &b)]).unwrap();
        let f = build(&r, &f);
        let nf = i.normal_form(&f).unwrap();
        prop_assert_eq!(i.normal_form(&nf).unwrap(), nf.clone());
        prop_assert!(i.contains_poly(&f.sub(&nf)).unwrap());
    }

    #[test]
    fn krull_dimension_matches_brute_force(
        n in 1usize..=10,
        gens in prop::collection::vec(prop::collection::vec(0u16..=2, 10), 1..=6)
    ) {
        let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let r = RingSpec::standard(&[] as &[String], &names).unwrap();
        let monos: Vec<Monomial> = gens.iter().map(|e| Monomial::from_exponents(&e[..n])).collect();
        let polys: Vec<Polynomial<Q>> = monos
            .iter()
            .map(|m| Polynomial::monomial(&r, m.clone(), Q::from_integer(1.into())))
            .collect();
        let i = Ideal::new(&r, polys).unwrap();
        prop_assert_eq!(i.krull_dimension().unwrap(), brute_dimension(&monos, n));
    }

    #[test]
    fn monomial_intersection_matches_lcm_oracle(
        a in prop::collection::vec(prop::collection::vec(0u16..=3, 3), 1..=3),
        b in prop::collection::vec(prop::collection::vec(0u16..=3, 3), 1..=3)
    ) {
        let r = ring(&[], &["x", "y", "z"]);
        let mono = |e: &Vec<u16>| Polynomial::monomial(&r, Monomial::from_exponents(e), Q::from_integer(1.into()));
        let i = Ideal::new(&r, a.iter().map(mono).collect()).unwrap();
        let j = Ideal::new(&r, b.iter().map(mono).collect()).unwrap();
        let mut lcms = Vec::new();
        for x in &a {
            for y in &b {
                let l = Monomial::from_exponents(x).lcm(&Monomial::from_exponents(y));
                lcms.push(Polynomial::monomial(&r, l, Q::from_integer(1.into())));
            }
        }
        let oracle = Ideal::new(&r, lcms).unwrap();
        let k = i.intersect(&j).unwrap();
        for g in k.generators() {
            prop_assert!(i.contains_poly(g).unwrap() && j.contains_poly(g).unwrap());
        }
        prop_assert!(k.equals(&oracle).unwrap());
    }

    #[test]
    fn radical_membership_agrees_with_power_search(
        a in arb_poly(2, 2, 2), f in arb_poly(2, 2, 1)
    ) {
        let r = ring(&[], &["x", "y"]);
        let i = Ideal::new(&r, vec![build(&r, &a), Polynomial::var(&r, 0).pow(3)]).unwrap();
        let f = build(&r, &f);
        prop_assume!(!f.is_zero());
        let rad = i.radical_contains(&f).unwrap();
        if i.power_membership(&f, 6).unwrap().is_some() {
            prop_assert!(rad);
        }
        // zero-dimensional cases: radical membership implies a bounded power
        if rad && i.krull_dimension().unwrap() == Some(0) {
            prop_assert!(i.power_membership(&f, 16).unwrap().is_some());
        }
    }
}
