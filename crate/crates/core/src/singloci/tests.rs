use super::*;
use crate::polyring::{parse_poly, q};

fn ring(params: &[&str], vars: &[&str], w: &[i64]) -> Arc<RingSpec> {
    RingSpec::new(params, vars, w).unwrap()
}

fn qs(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| q(x)).collect()
}

fn b() -> Budget {
    Budget::default()
}

/// `⟨ax, by²⟩` over `Q[a,b]`.
fn two_lines() -> PositiveAlgebra {
    let r = ring(&["a", "b"], &["x", "y"], &[1, 1]);
    PositiveAlgebra::parse(&r, &["a*x", "b*y^2"]).unwrap()
}

/// `⟨ax + z², ay + z²⟩` over `Q[a]`.
fn cone_family() -> PositiveAlgebra {
    let r = ring(&["a"], &["x", "y", "z"], &[2, 2, 1]);
    PositiveAlgebra::parse(&r, &["a*x + z^2", "a*y + z^2"]).unwrap()
}

fn set(base: &Arc<RingSpec>, cells: &[(&[&str], &[&str])]) -> ConstructibleSet {
    let mut s = ConstructibleSet::empty(base);
    for (e, h) in cells {
        let h: Vec<&str> = if h.is_empty() { vec!["1"] } else { h.to_vec() };
        s.cells.push(Cell::parse(base, e, &h).unwrap());
    }
    s
}

#[test]
fn cells_and_emptiness() {
    let base = ring(&["a", "b"], &[], &[]);
    let c = Cell::parse(&base, &["a"], &["a"]).unwrap();
    assert!(c.is_empty(b()).unwrap());
    let c = Cell::parse(&base, &["a^2"], &["a*b"]).unwrap();
    assert!(c.is_empty(b()).unwrap());
    let c = Cell::parse(&base, &["a"], &["b"]).unwrap();
    assert!(!c.is_empty(b()).unwrap());
    assert!(c.contains_point(&qs(&[0, 1])).unwrap());
    assert!(!c.contains_point(&qs(&[0, 0])).unwrap());
    assert!(!c.contains_point(&qs(&[1, 1])).unwrap());
    let s = ConstructibleSet::from_cell(c);
    assert!(s.intersect(&s.complement()).is_empty(b()).unwrap());
    assert!(s.union(&s.complement()).same_set(&ConstructibleSet::whole(&base), b()).unwrap());
}

#[test]
fn boolean_laws() {
    let base = ring(&["a", "b"], &[], &[]);
    let u = set(&base, &[(&[], &["a*b"])]);
    let v1 = set(&base, &[(&["a"], &["b"])]);
    let v2 = set(&base, &[(&["b"], &["a"])]);
    let o = set(&base, &[(&["a", "b"], &[])]);
    let sets = [&u, &v1, &v2, &o];
    for s in sets {
        for t in sets {
            // De Morgan
            let l = s.union(t).complement();
            let r = s.complement().intersect(&t.complement());
            assert!(l.same_set(&r, b()).unwrap());
            // absorption
            assert!(s.union(&s.intersect(t)).same_set(s, b()).unwrap());
            assert!(s.intersect(&s.union(t)).same_set(s, b()).unwrap());
        }
    }
    // the four pieces partition the plane
    let all = u.union(&v1).union(&v2).union(&o);
    assert!(all.same_set(&ConstructibleSet::whole(&base), b()).unwrap());
    assert!(u.intersect(&v1).is_empty(b()).unwrap());
    assert!(v2.intersect(&o).is_empty(b()).unwrap());
    let b_nonzero = set(&base, &[(&[], &["b"])]);
    assert!(u.union(&v1).same_set(&b_nonzero, b()).unwrap());
}

#[test]
fn sing0_equidimensional_examples() {
    let pa = cone_family();
    let j = sing0_equidimensional(&pa, 2).unwrap();
    let expect = Ideal::parse(j.ring(), &["a^2"]).unwrap();
    assert!(j.equals(&expect).unwrap());
    assert!(sing0_point_test(&pa, &qs(&[0]), Some(2)).unwrap());
    assert!(!sing0_point_test(&pa, &qs(&[1]), Some(2)).unwrap());

    let pa = two_lines();
    let j = sing0_equidimensional(&pa, 2).unwrap();
    assert!(j.is_zero());
    // rank 1 matrix and d = 3 would need rank ≤ 1
    assert!(sing0_equidimensional(&pa, 3).is_ok());
    assert!(matches!(sing0_equidimensional(&pa, 4), Err(SingError::RankExceeds { .. })));
}

#[test]
fn sing0_from_components() {
    let r = ring(&["a"], &["x", "y"], &[1, 1]);
    let p = |s: &str| parse_poly(s, &r).unwrap();
    let pa = PositiveAlgebra::parse(&r, &["a*x", "a*y"]).unwrap();
    let data = ComponentData {
        components: vec![
            Component { prime: vec![p("x"), p("y")], dim: 1 },
            Component { prime: vec![p("a")], dim: 2 },
        ],
        radical: None,
    };
    let s = sing0_general(&pa, &data, true).unwrap();
    let a = Ideal::parse(s.ring(), &["a"]).unwrap();
    assert!(a.contains(&s).unwrap());
    assert!(s.radical_contains(&a.generators()[0]).unwrap());
    assert!(matches!(sing0_general(&pa, &data, false), Err(SingError::MissingRadical)));

    let pa = PositiveAlgebra::parse(&r, &["a*x", "a*y^2"]).unwrap();
    let data = ComponentData {
        components: data.components.clone(),
        radical: Some(vec![p("a*x"), p("a*y")]),
    };
    let s = sing0_general(&pa, &data, false).unwrap();
    assert!(s.is_zero());

    // smooth: a single linear component
    let pa = PositiveAlgebra::parse(&r, &["x - a*y"]).unwrap();
    let data = ComponentData {
        components: vec![Component { prime: vec![p("x - a*y")], dim: 2 }],
        radical: None,
    };
    assert!(sing0_general(&pa, &data, true).unwrap().is_unit().unwrap());
}

#[test]
fn component_verification() {
    let r = ring(&["a"], &["x", "y"], &[1, 1]);
    let p = |s: &str| parse_poly(s, &r).unwrap();
    let pa = PositiveAlgebra::parse(&r, &["a*x", "a*y"]).unwrap();
    let bad = ComponentData {
        components: vec![Component { prime: vec![p("x")], dim: 2 }],
        radical: None,
    };
    assert!(matches!(bad.verify(&pa), Err(SingError::ComponentMissesIdeal { .. })));
    let missing = ComponentData {
        components: vec![Component { prime: vec![p("x"), p("y")], dim: 1 }],
        radical: None,
    };
    assert!(matches!(missing.verify(&pa), Err(SingError::ComponentsIncomplete(_))));
    let big = ComponentData {
        components: vec![
            Component { prime: vec![p("x"), p("y")], dim: 1 },
            Component { prime: vec![p("a")], dim: 2 },
        ],
        radical: Some(vec![p("x")]),
    };
    assert!(big.verify(&pa).is_err());
}

#[test]
fn vertex_point_tests() {
    let pa = two_lines();
    assert!(singv_point_test(&pa, &qs(&[1, 1])).unwrap());
    assert!(singv_point_test(&pa, &qs(&[0, 1])).unwrap());
    assert!(!singv_point_test(&pa, &qs(&[1, 0])).unwrap());
    assert!(!singv_point_test(&pa, &qs(&[0, 0])).unwrap());
    assert_eq!(lin_rank_at(&pa, &qs(&[1, 1])).unwrap(), 1);
}

#[test]
fn groebner_systems() {
    let pa = cone_family();
    let gs = comprehensive_gs(&pa, GsOptions::default()).unwrap();
    let mut dims: Vec<_> = gs.branches.iter().map(|b| b.fiber_dim).collect();
    dims.sort();
    assert_eq!(dims, vec![Some(1), Some(2)]);
    assert_eq!(gs.branch_at(&qs(&[0])).unwrap().unwrap().fiber_dim, Some(2));
    assert_eq!(gs.branch_at(&qs(&[5])).unwrap().unwrap().fiber_dim, Some(1));
    for g in grid_points(1, -2, 2) {
        assert!(gs.check_at(pa.generators(), &g).unwrap(), "{g:?}");
    }

    let pa = two_lines();
    let gs = comprehensive_gs(&pa, GsOptions::default()).unwrap();
    let mut dims: Vec<_> = gs.branches.iter().map(|b| b.fiber_dim).collect();
    dims.sort();
    assert_eq!(dims, vec![Some(0), Some(1), Some(1), Some(2)]);
    for g in grid_points(2, -2, 2) {
        assert!(gs.check_at(pa.generators(), &g).unwrap(), "{g:?}");
    }
    let base = pa.ring().base_ring();
    let strata = [
        set(&base, &[(&[], &["a*b"])]),
        set(&base, &[(&["a"], &["b"]), (&["b"], &["a"])]),
        set(&base, &[(&["a", "b"], &[])]),
    ];
    for (d, s) in strata.iter().enumerate() {
        assert!(gs.stratum(d).same_set(s, b()).unwrap(), "stratum {d}");
    }
    assert!(gs.at_least(1).same_set(&strata[1].union(&strata[2]), b()).unwrap());

    let r = ring(&[], &["x", "y"], &[1, 1]);
    let pa = PositiveAlgebra::parse(&r, &["x*y"]).unwrap();
    let gs = comprehensive_gs(&pa, GsOptions::default()).unwrap();
    assert_eq!(gs.branches.len(), 1);
    assert_eq!(gs.branches[0].fiber_dim, Some(1));
}

#[test]
fn vertex_locus() {
    let pa = two_lines();
    let base = pa.ring().base_ring();
    let s = singv_set(&pa, GsOptions::default()).unwrap();
    assert!(s.same_set(&set(&base, &[(&[], &["b"])]), b()).unwrap());
    for g in grid_points(2, -2, 2) {
        assert_eq!(s.contains_point(&g).unwrap(), singv_point_test(&pa, &g).unwrap());
    }

    let pa = cone_family();
    let base = pa.ring().base_ring();
    let s = singv_set(&pa, GsOptions::default()).unwrap();
    assert!(s.same_set(&set(&base, &[(&["a"], &[])]), b()).unwrap());
    for a in 0..3 {
        assert_eq!(s.contains_point(&qs(&[a])).unwrap(), singv_point_test(&pa, &qs(&[a])).unwrap());
    }

    let r = ring(&["a"], &["x"], &[1]);
    let pa = PositiveAlgebra::parse(&r, &[] as &[&str]).unwrap();
    assert!(singv_set(&pa, GsOptions::default()).unwrap().is_empty(b()).unwrap());
}

#[test]
fn singular_fiber_locus() {
    let pa = two_lines();
    let base = pa.ring().base_ring();
    let s = sings_set(&pa, GsOptions::default()).unwrap();
    assert!(s.same_set(&set(&base, &[(&["a"], &["b"])]), b()).unwrap());

    let pa = cone_family();
    let base = pa.ring().base_ring();
    let s = sings_set(&pa, GsOptions::default()).unwrap();
    assert!(s.same_set(&set(&base, &[(&["a"], &[])]), b()).unwrap());

    // cones over smooth conics: singular only at the vertex
    let r = ring(&["a"], &["x", "y", "z"], &[1, 1, 1]);
    let pa = PositiveAlgebra::parse(&r, &["x^2 + y^2 - z^2 + a*x*y"]).unwrap();
    let s = sings_set(&pa, GsOptions::default()).unwrap();
    // the quadric degenerates to a pair of planes when a = ±2
    let expect = set(&base_of(&pa), &[(&["a^2 - 4"], &[])]);
    assert!(s.same_set(&expect, b()).unwrap());
}

fn base_of(pa: &PositiveAlgebra) -> Arc<RingSpec> {
    pa.ring().base_ring()
}

#[test]
fn strict_inclusions_on_two_lines() {
    let pa = two_lines();
    let base = pa.ring().base_ring();
    let s0 = ConstructibleSet::closed(&base, sing0_equidimensional(&pa, 2).unwrap().generators().to_vec());
    let sv = singv_set(&pa, GsOptions::default()).unwrap();
    let ss = sings_set(&pa, GsOptions::default()).unwrap();
    assert!(ss.is_subset(&sv, b()).unwrap());
    assert!(sv.is_subset(&s0, b()).unwrap());
    assert!(!sv.difference(&ss).is_empty(b()).unwrap());
    assert!(!s0.difference(&sv).is_empty(b()).unwrap());
}

#[test]
fn jacobians() {
    let r = ring(&[], &["x", "y"], &[1, 1]);
    let i = Ideal::parse(&r, &["y^2"]).unwrap();
    let j = jacobian_minors(&i, 1);
    assert_eq!(j.generators().len(), 1);
    assert_eq!(j.generators()[0].to_string(), "2*y");
    let i = Ideal::parse(&r, &["x", "y^2"]).unwrap();
    assert_eq!(jacobian_minors(&i, 2).generators()[0].to_string(), "2*y");
    assert!(jacobian_minors(&Ideal::zero(&r), 1).is_zero());
}

#[test]
fn fiber_points() {
    let r = ring(&[], &["x", "y", "z"], &[1, 1, 1]);
    let pa = PositiveAlgebra::parse(&r, &["x^2 + y^2 - z^2"]).unwrap();
    assert!(!fiber_point_singular_test(&pa, &[], &qs(&[3, 4, 5]), 2).unwrap());
    assert!(fiber_point_singular_test(&pa, &[], &qs(&[0, 0, 0]), 2).unwrap());
    assert!(matches!(
        fiber_point_singular_test(&pa, &[], &qs(&[1, 1, 1]), 2),
        Err(SingError::NotOnFiber { .. })
    ));
}

#[test]
fn vertex_singularity_implies_zero_point_singularity() {
    // every fiber through a point of the two-lines family has local dimension 2
    let mut pa = two_lines();
    pa.equidimensional = true;
    for g in grid_points(2, -3, 3) {
        if singv_point_test(&pa, &g).unwrap() {
            assert!(sing0_point_test(&pa, &g, None).unwrap(), "{g:?}");
        }
        let rank = lin_rank_at(&pa, &g).unwrap();
        assert!(rank <= pa.n() - pa.dimension_at_zero_point(&g).unwrap());
    }
    let mut pa = cone_family();
    pa.equidimensional = true;
    for a in -15..=15 {
        let g = qs(&[a]);
        if singv_point_test(&pa, &g).unwrap() {
            assert!(sing0_point_test(&pa, &g, None).unwrap());
        }
    }
}
