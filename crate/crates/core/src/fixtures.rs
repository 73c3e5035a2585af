//! Worked examples as scripted checks.
//!
//! Every fixture builds its objects from literal data and runs a list of
//! assertions. A failed computation is reported as a failed check; budget
//! exhaustion is flagged separately so callers can tell it apart.

use std::sync::Arc;
use std::time::Instant;

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::bbscheme::{default_var_names, separating_reembedding, BBScheme, BbsError, OrderIdeal};
use crate::ideals::{Budget, GbError, Ideal};
use crate::matrices::{MatrixError, PolyMatrix};
use crate::polyring::{parse_poly, q, qf, PolyError, Polynomial, RingSpec, Q};
use crate::posalg::{Component, PosAlgError, PositiveAlgebra, SegmentKind};
use crate::singloci::{
    comprehensive_gs, fiber_point_singular_test, jacobian_rank_at, lin_rank_at, sing0_equidimensional,
    sing0_general, sing0_point_test, sings_set_with, singv_point_test, singv_set_with, Cell, ComponentData,
    ConstructibleSet, GsOptions, SingError,
};

/// One assertion of a fixture.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub label: String,
    pub passed: bool,
    pub detail: String,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub budget_exceeded: bool,
}

/// Outcome of running one fixture.
#[derive(Clone, Debug, Serialize)]
pub struct FixtureRun {
    pub name: &'static str,
    pub topic: &'static str,
    pub checks: Vec<Check>,
    /// Checks that were not attempted, with the reason.
    pub skipped: Vec<String>,
    #[serde(skip)]
    pub seconds: f64,
}

impl FixtureRun {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn budget_exceeded(&self) -> bool {
        self.checks.iter().any(|c| c.budget_exceeded)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct FixtureOptions {
    pub budget: Budget,
    /// Also run the scheme-level pipelines of the border basis fixtures.
    pub full_pipeline: bool,
}

impl FixtureOptions {
    fn gs(&self) -> GsOptions {
        GsOptions {
            budget: self.budget,
            ..GsOptions::default()
        }
    }
}

pub struct Fixture {
    pub name: &'static str,
    pub topic: &'static str,
    body: fn(&mut Script),
}

impl Fixture {
    pub fn run(&self, opts: FixtureOptions) -> FixtureRun {
        let start = Instant::now();
        let mut s = Script {
            opts,
            checks: Vec::new(),
            skipped: Vec::new(),
        };
        (self.body)(&mut s);
        FixtureRun {
            name: self.name,
            topic: self.topic,
            checks: s.checks,
            skipped: s.skipped,
            seconds: start.elapsed().as_secs_f64(),
        }
    }
}

#[derive(Debug, Error)]
#[error("unknown fixture `{0}`")]
pub struct UnknownFixture(pub String);

pub fn registry() -> &'static [Fixture] {
    &REGISTRY
}

pub fn find(name: &str) -> Result<&'static Fixture, UnknownFixture> {
    REGISTRY
        .iter()
        .find(|f| f.name == name)
        .ok_or_else(|| UnknownFixture(name.to_string()))
}

static REGISTRY: [Fixture; 14] = [
    Fixture { name: "ex2_5", topic: "extra sections: containment of a section ideal", body: ex2_5 },
    Fixture { name: "ex3_2", topic: "connecting two points by three curves", body: ex3_2 },
    Fixture { name: "ex4_6", topic: "regular fiber over a singular zero point", body: ex4_6 },
    Fixture { name: "ex5_lin0", topic: "A-linear part of a polynomial", body: ex5_lin0 },
    Fixture { name: "ex5_linmatrix", topic: "linear coefficient matrix and generic fiber", body: ex5_linmatrix },
    Fixture { name: "ex6_6", topic: "small generic rank: every zero point singular", body: ex6_6 },
    Fixture { name: "ex6_7", topic: "equidimensional case: zero section singularities from minors", body: ex6_7 },
    Fixture { name: "ex6_8", topic: "non-equidimensional: zero section singularities from components", body: ex6_8 },
    Fixture { name: "ex6_9", topic: "rank above n - d signals non-equidimensionality", body: ex6_9 },
    Fixture { name: "ex6_10", topic: "vertex and singular-fiber loci of a two-parameter family", body: ex6_10 },
    Fixture { name: "ex7_2", topic: "border basis scheme of {1,x,y,z}", body: ex7_2 },
    Fixture { name: "ex7_3", topic: "border basis scheme of {1,x,y,z,z^2}", body: ex7_3 },
    Fixture { name: "ex7_4", topic: "border basis scheme of {1,x,y,z,yz}", body: ex7_4 },
    Fixture { name: "ex7_full", topic: "scheme-level pipelines for {1,x,y,z,z^2} and {1,x,y,z,yz}", body: ex7_full },
];

// ---------------------------------------------------------------------------
// scripting

/// Errors raised inside a check body.
#[derive(Debug)]
pub struct Failure {
    message: String,
    budget: bool,
}

impl Failure {
    fn msg(m: impl Into<String>) -> Self {
        Failure {
            message: m.into(),
            budget: false,
        }
    }
}

macro_rules! failure_from {
    ($($t:ty => $budget:expr),* $(,)?) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                let budget: fn(&$t) -> bool = $budget;
                Failure { budget: budget(&e), message: e.to_string() }
            }
        }
    )*};
}

fn gb_budget(e: &GbError) -> bool {
    matches!(e, GbError::BudgetExceeded { .. })
}

fn posalg_budget(e: &PosAlgError) -> bool {
    match e {
        PosAlgError::Gb(g) => gb_budget(g),
        PosAlgError::Matrix(MatrixError::Gb(g)) => gb_budget(g),
        _ => false,
    }
}

failure_from! {
    GbError => gb_budget,
    PolyError => |_| false,
    MatrixError => |e| matches!(e, MatrixError::Gb(g) if gb_budget(g)),
    PosAlgError => posalg_budget,
    SingError => |e| match e {
        SingError::TooManyCells(_) => true,
        SingError::Gb(g) => gb_budget(g),
        SingError::PosAlg(p) => posalg_budget(p),
        SingError::Matrix(MatrixError::Gb(g)) => gb_budget(g),
        _ => false,
    },
    BbsError => |e| matches!(e, BbsError::Gb(g) if gb_budget(g)),
}

type Verdict = Result<(bool, String), Failure>;

struct Script {
    opts: FixtureOptions,
    checks: Vec<Check>,
    skipped: Vec<String>,
}

impl Script {
    fn check(&mut self, label: &str, body: impl FnOnce() -> Verdict) {
        let c = match body() {
            Ok((passed, detail)) => Check {
                label: label.to_string(),
                passed,
                detail,
                budget_exceeded: false,
            },
            Err(f) => Check {
                label: label.to_string(),
                passed: false,
                detail: format!("error: {}", f.message),
                budget_exceeded: f.budget,
            },
        };
        self.checks.push(c);
    }

    fn equal<T: PartialEq + std::fmt::Debug>(&mut self, label: &str, got: Result<T, Failure>, want: T) {
        self.check(label, || {
            let got = got?;
            Ok((got == want, format!("got {got:?}, expected {want:?}")))
        });
    }

    fn skip(&mut self, what: &str) {
        self.skipped.push(what.to_string());
    }
}

fn ring(params: &[&str], vars: &[&str], w: &[i64]) -> Arc<RingSpec> {
    RingSpec::new(params, vars, w).expect("fixture ring")
}

fn qs(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| q(x)).collect()
}

fn algebra(r: &Arc<RingSpec>, gens: &[&str]) -> PositiveAlgebra {
    PositiveAlgebra::parse(r, gens).expect("fixture algebra")
}

fn cells(base: &Arc<RingSpec>, spec: &[(&[&str], &[&str])]) -> ConstructibleSet {
    let mut s = ConstructibleSet::empty(base);
    for (e, h) in spec {
        let h: Vec<&str> = if h.is_empty() { vec!["1"] } else { h.to_vec() };
        s.cells.push(Cell::parse(base, e, &h).expect("fixture cell"));
    }
    s
}

fn same_set(got: &ConstructibleSet, want: &ConstructibleSet, budget: Budget) -> Verdict {
    Ok((got.same_set(want, budget)?, format!("got {got}, expected {want}")))
}

fn pretty(gamma: &[Q]) -> String {
    let parts: Vec<String> = gamma.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

// ---------------------------------------------------------------------------
// sections 2 to 5

fn ex2_5(s: &mut Script) {
    let r = ring(&["a", "b"], &["x1", "x2", "x3"], &[1, 1, 1]);
    s.check("ax1 - bx2 + (b-a)x3 defines a positive algebra", || {
        let pa = PositiveAlgebra::parse(&r, &["a*x1 - b*x2 + (b-a)*x3"])?;
        Ok((pa.generators().len() == 1, "homogeneous, meets A trivially".into()))
    });
    s.check("I is contained in <x1-1, x2-1, x3-1>", || {
        let i = Ideal::parse(&r, &["a*x1 - b*x2 + (b-a)*x3"])?;
        let j = Ideal::parse(&r, &["x1 - 1", "x2 - 1", "x3 - 1"])?;
        Ok((j.contains(&i)?, format!("{i} in {j}")))
    });
    s.check("the section x = (1,1,1) lies on Spec R over every base point", || {
        let pa = PositiveAlgebra::parse(&r, &["a*x1 - b*x2 + (b-a)*x3"])?;
        let mut ok = true;
        for g in crate::singloci::grid_points(2, -2, 2) {
            let mut p = g.clone();
            p.extend(qs(&[1, 1, 1]));
            ok &= pa.check_on_scheme(&p).is_ok();
        }
        Ok((ok, "25 base points".into()))
    });
}

/// The six generators of the connecting-curve example.
pub fn connecting_example() -> PositiveAlgebra {
    let vars: Vec<String> = (1..=12).map(|i| format!("x{i}")).collect();
    let r = RingSpec::new(&["a1".to_string(), "a2".to_string()], &vars, &[2, 2, 3, 3, 1, 1, 2, 2, 1, 1, 2, 2])
        .expect("fixture ring");
    PositiveAlgebra::parse(
        &r,
        &[
            "x3 - a1*x4 - x2*x9 + x1*x5",
            "x7 - a1*x8 - x6*x10",
            "x12 - a2*x11 - x6*x9",
            "x2*x6 - x2*x9 + x1*x5",
            "x8 - x2 - a2*x7 - x5*x6",
            "x11 - x2 - a1*x12 - x9*x10 - x9^2",
        ],
    )
    .expect("fixture algebra")
}

/// The two points joined in the connecting-curve example.
pub fn connecting_points() -> (Vec<Q>, Vec<Q>) {
    let mut p1 = qs(&[2, 1]);
    p1.push(qf(1, 2));
    p1.extend(qs(&[3, 5, 1, -6, 1, 3, 0, 0, 3, -3, -3]));
    let p2 = qs(&[1, 4, 7, -9, 2, 2, 0, 0, 3, 3, 0, 0, 3, 12]);
    (p1, p2)
}

fn ex3_2(s: &mut Script) {
    let pa = connecting_example();
    let (p1, p2) = connecting_points();
    s.check("both points lie on Spec R", || {
        pa.check_on_scheme(&p1)?;
        pa.check_on_scheme(&p2)?;
        Ok((true, String::new()))
    });
    s.check("first fiber curve is t -> (2, 1, t^2/2, 3t^2, 5t^3, t^3, ...)", || {
        let c = pa.connecting_curve(&p1)?;
        let imgs = c.image_strings();
        let ok = imgs[..6] == ["2", "1", "1/2*t^2", "3*t^2", "5*t^3", "t^3"];
        Ok((ok, imgs.join(", ")))
    });
    s.check("second fiber curve is t -> (1, 4, 7t^2, -9t^2, ...)", || {
        let c = pa.connecting_curve(&p2)?;
        let imgs = c.image_strings();
        Ok((imgs[..4] == ["1", "4", "7*t^2", "-9*t^2"], imgs.join(", ")))
    });
    s.check("path has three segments with middle segment (2-t, 1+3t, 0, ..., 0)", || {
        let path = pa.connect_points(&p1, &p2)?;
        let mid = path.segments.get(1).ok_or_else(|| Failure::msg("fewer than two segments"))?;
        let imgs = mid.image_strings();
        let ok = path.segments.len() == 3
            && mid.kind == SegmentKind::BaseLine
            && imgs[..2] == ["-t + 2", "3*t + 1"]
            && imgs[2..].iter().all(|s| s == "0")
            && path.is_consistent();
        Ok((ok, imgs.join(", ")))
    });
    s.check("every segment annihilates the generators", || {
        let path = pa.connect_points(&p1, &p2)?;
        for seg in &path.segments {
            pa.verify_segment(seg)?;
        }
        Ok((true, format!("{} segments", path.segments.len())))
    });
}

fn ex4_6(s: &mut Script) {
    let r = ring(&["a", "b"], &["x", "y"], &[1, 1]);
    let pa = algebra(&r, &["a*x + b*y"]);
    let gamma = qs(&[0, 0]);
    let li = pa.local_invariants(&gamma, Some(3)).map_err(Failure::from);
    let li = match li {
        Ok(li) => li,
        Err(e) => {
            s.check("local invariants at the origin", || Err(e));
            return;
        }
    };
    s.equal("fiber dimension over (0,0)", Ok(li.fiber_dim), 2);
    s.equal("fiber is regular at its origin", Ok(li.fiber_regular()), true);
    s.equal("ecod of R at the zero point", Ok(li.ecod_zero_point()), Some(1));
    s.check("d_F = ecod(R_0) + d_0 - m", || {
        let e = li.ecod_zero_point().ok_or_else(|| Failure::msg("no dimension"))?;
        let rhs = e + 3 - li.m as i64;
        Ok((li.fiber_dim as i64 == rhs, format!("{} = {e} + 3 - {}", li.fiber_dim, li.m)))
    });
    s.equal("R is a domain (ideal is prime of dimension 3)", pa.dimension().map_err(Failure::from), 3);
    s.equal(
        "zero point test agrees",
        sing0_point_test(&pa, &gamma, Some(3)).map_err(Failure::from),
        true,
    );
    s.equal("vertex test agrees", singv_point_test(&pa, &gamma).map_err(Failure::from), false);
}

fn ex5_lin0(s: &mut Script) {
    let r = ring(&["a"], &["x1", "x2", "x3"], &[1, 1, 1]);
    s.check("Lin_A(a - ax1 + x2 + a^2x2 + a^2x1^2 - x3^2) = -ax1 + (1+a^2)x2", || {
        let f = parse_poly("a - a*x1 + x2 + a^2*x2 + a^2*x1^2 - x3^2", &r)?;
        let got = crate::posalg::lin_a(&f);
        let want = parse_poly("-a*x1 + (1+a^2)*x2", &r)?;
        Ok((got == want, got.to_string()))
    });
}

fn ex5_linmatrix(s: &mut Script) {
    let r = ring(&["a"], &["x", "y", "z"], &[1, 2, 2]);
    let pa = algebra(&r, &["y - a*y + a^2*z - x^2"]);
    let l = pa.lin_coeff_matrix();
    s.equal(
        "coefficient row in (x, y, z) order is (0, 1 - a, a^2)",
        Ok(l.to_strings()),
        vec![vec!["0".to_string(), "-a + 1".to_string(), "a^2".to_string()]],
    );
    s.equal("generic rank", Ok(l.generic_rank()), 1);
    s.equal("generic fiber dimension", pa.generic_fiber_dimension().map_err(Failure::from), 2);
}

// ---------------------------------------------------------------------------
// section 6

fn two_lines() -> PositiveAlgebra {
    algebra(&ring(&["a", "b"], &["x", "y"], &[1, 1]), &["a*x", "b*y^2"])
}

fn ex6_6(s: &mut Script) {
    let pa = two_lines();
    s.equal("linear coefficient matrix", Ok(pa.lin_coeff_matrix().to_strings()), vec![
        vec!["a".to_string(), "0".into()],
        vec!["0".into(), "0".into()],
    ]);
    s.check("generic rank 1 < n - d = 2", || {
        let r = pa.lin_coeff_matrix().generic_rank();
        Ok((r == 1 && r < pa.n() - 2, format!("rank {r}, n - d = {}", pa.n() - 2)))
    });
    s.check("every zero point is singular", || {
        let j = sing0_equidimensional(&pa, 2)?;
        Ok((j.is_zero(), format!("vanishing ideal {j}")))
    });
}

fn cone_family() -> PositiveAlgebra {
    algebra(&ring(&["a"], &["x", "y", "z"], &[2, 2, 1]), &["a*x + z^2", "a*y + z^2"])
}

fn ex6_7(s: &mut Script) {
    let pa = cone_family();
    let budget = s.opts.budget;
    let gso = s.opts.gs();
    s.check("ideal of 2-minors is <a^2>", || {
        let j = sing0_equidimensional(&pa, 2)?;
        let want = Ideal::parse(j.ring(), &["a^2"])?;
        Ok((j.equals(&want)?, j.to_string()))
    });
    s.check("zero section singularities are {0}", || {
        let j = sing0_equidimensional(&pa, 2)?;
        let base = pa.ring().base_ring();
        let got = ConstructibleSet::closed(&base, j.rebase_by_name(&base)?.generators().to_vec());
        same_set(&got, &cells(&base, &[(&["a"], &[])]), budget)
    });
    s.check("<a, z^2> ∩ <x - y, z^2> equals <ax + z^2, ay + z^2>", || {
        let r = pa.ring();
        let meet = Ideal::parse(r, &["a", "z^2"])?.intersect(&Ideal::parse(r, &["x - y", "z^2"])?)?;
        let i = pa.ideal();
        if !i.contains(&meet)? {
            let witness = meet
                .generators()
                .iter()
                .find(|g| !i.contains_poly(g).unwrap_or(true))
                .map(ToString::to_string)
                .unwrap_or_default();
            return Ok((false, format!("intersection is {meet}; `{witness}` is not in the ideal")));
        }
        Ok((meet.contains(i)?, format!("intersection is {meet}")))
    });
    s.check("Gröbner system strata: fiber dim 1 for a != 0, 2 for a = 0", || {
        let gs = comprehensive_gs(&pa, gso)?;
        let base = pa.ring().base_ring();
        let (one, _) = same_set(&gs.stratum(1), &cells(&base, &[(&[], &["a"])]), budget)?;
        let (two, _) = same_set(&gs.stratum(2), &cells(&base, &[(&["a"], &[])]), budget)?;
        let (none, _) = same_set(&gs.stratum(0), &ConstructibleSet::empty(&base), budget)?;
        let dims: Vec<_> = gs.branches.iter().map(|b| (b.cell.to_string(), b.fiber_dim)).collect();
        Ok((one && two && none, format!("{dims:?}")))
    });
    s.check("vertex singularities are {0}", || {
        let gs = comprehensive_gs(&pa, gso)?;
        let base = pa.ring().base_ring();
        same_set(&singv_set_with(&pa, &gs, budget)?, &cells(&base, &[(&["a"], &[])]), budget)
    });
    s.check("singular fibers are {0}", || {
        let gs = comprehensive_gs(&pa, gso)?;
        let base = pa.ring().base_ring();
        same_set(&sings_set_with(&pa, &gs, gso)?, &cells(&base, &[(&["a"], &[])]), budget)
    });
}

fn components_ax_ay(r: &Arc<RingSpec>) -> Vec<Component> {
    let p = |t: &str| parse_poly(t, r).expect("fixture polynomial");
    vec![
        Component { prime: vec![p("x"), p("y")], dim: 1 },
        Component { prime: vec![p("a")], dim: 2 },
    ]
}

fn ex6_8(s: &mut Script) {
    let r = ring(&["a"], &["x", "y"], &[1, 1]);
    let pa = algebra(&r, &["a*x", "a*y^2"]);
    let p = |t: &str| parse_poly(t, &r).expect("fixture polynomial");
    let data = ComponentData {
        components: components_ax_ay(&r),
        radical: Some(vec![p("a*x"), p("a*y")]),
    };
    s.check("supplied components and radical verify", || {
        data.verify(&pa)?;
        Ok((true, String::new()))
    });
    s.check("rank 1 = n - d and Z(J_1) = {0}", || {
        let r1 = pa.lin_coeff_matrix().generic_rank();
        let j = pa.lin_coeff_matrix().minors_ideal(1);
        let want = Ideal::parse(j.ring(), &["a"])?;
        Ok((r1 == pa.n() - 2 && j.equals(&want)?, format!("rank {r1}, J_1 = {j}")))
    });
    s.check("zero section singularities are all of A^1", || {
        let j = sing0_general(&pa, &data, false)?;
        Ok((j.is_zero(), format!("vanishing ideal {j}")))
    });
}

fn ex6_9(s: &mut Script) {
    let r = ring(&["a"], &["x", "y"], &[1, 1]);
    let pa = algebra(&r, &["a*x", "a*y"]);
    s.check("rank 2 > n - d = 1 raises the non-equidimensionality signal", || {
        match sing0_equidimensional(&pa, 2) {
            Err(SingError::RankExceeds { rank, bound, .. }) => Ok((rank == 2 && bound == 1, format!("rank {rank} > {bound}"))),
            Err(e) => Err(e.into()),
            Ok(j) => Ok((false, format!("accepted with {j}"))),
        }
    });
    s.check("zero section singularities from components are {0}", || {
        let data = ComponentData {
            components: components_ax_ay(&r),
            radical: None,
        };
        data.verify(&pa)?;
        let j = sing0_general(&pa, &data, true)?;
        let a = Ideal::parse(j.ring(), &["a"])?;
        let ok = a.contains(&j)? && j.radical_contains(&a.generators()[0])?;
        Ok((ok, format!("vanishing ideal {j}")))
    });
}

fn ex6_10(s: &mut Script) {
    let pa = two_lines();
    let base = pa.ring().base_ring();
    let budget = s.opts.budget;
    let gs = match comprehensive_gs(&pa, s.opts.gs()) {
        Ok(gs) => gs,
        Err(e) => {
            s.check("Gröbner system", || Err(e.into()));
            return;
        }
    };
    // (case, Γ, rank, fiber dim, vertex singular, singular fiber)
    let cases: [(&str, [i64; 2], usize, usize, bool, bool); 4] = [
        ("case 1 (a,b both nonzero)", [1, 1], 1, 0, true, false),
        ("case 2 (a = 0, b != 0)", [0, 1], 0, 1, true, true),
        ("case 3 (a != 0, b = 0)", [1, 0], 1, 1, false, false),
        ("case 4 (origin)", [0, 0], 0, 2, false, false),
    ];
    let sv = singv_set_with(&pa, &gs, budget);
    let ss = sings_set_with(&pa, &gs, s.opts.gs());
    for (label, g, rank, dim, vertex, fiber) in cases {
        let g = qs(&g);
        s.check(label, || {
            let r = lin_rank_at(&pa, &g)?;
            let d = pa.fiber_dimension(&g)?;
            let v = singv_point_test(&pa, &g)?;
            let f = match &ss {
                Ok(set) => set.contains_point(&g)?,
                Err(e) => return Err(Failure::msg(e.to_string())),
            };
            let ok = (r, d, v, f) == (rank, dim, vertex, fiber);
            Ok((ok, format!("rank {r}, fiber dim {d}, vertex singular {v}, singular fiber {f}")))
        });
    }
    let u = cells(&base, &[(&[], &["a*b"])]);
    let v12 = cells(&base, &[(&["a"], &["b"]), (&["b"], &["a"])]);
    let o = cells(&base, &[(&["a", "b"], &[])]);
    s.check("strata differences give U, V1 ∪ V2 and the origin", || {
        let mut ok = true;
        for (d, want) in [&u, &v12, &o].into_iter().enumerate() {
            let piece = gs.at_least(d).difference_pruned(&gs.at_least(d + 1), budget)?;
            ok &= piece.same_set(want, budget)?;
        }
        Ok((ok, String::new()))
    });
    let want_v = cells(&base, &[(&[], &["b"])]);
    let want_s = cells(&base, &[(&["a"], &["b"])]);
    s.check("vertex singularities {b != 0}", || match &sv {
        Ok(got) => same_set(got, &want_v, budget),
        Err(e) => Err(Failure::msg(e.to_string())),
    });
    s.check("singular fibers V1 = {a = 0, b != 0}", || match &ss {
        Ok(got) => same_set(got, &want_s, budget),
        Err(e) => Err(Failure::msg(e.to_string())),
    });
    s.check("strict inclusions of the three loci", || {
        let (Ok(sv), Ok(ss)) = (&sv, &ss) else {
            return Err(Failure::msg("loci unavailable"));
        };
        let s0 = ConstructibleSet::whole(&base);
        let ok = ss.is_subset(sv, budget)?
            && sv.is_subset(&s0, budget)?
            && !sv.difference_pruned(ss, budget)?.is_empty(budget)?
            && !s0.difference_pruned(sv, budget)?.is_empty(budget)?;
        Ok((ok, "Sing_s ⊊ Sing_v ⊊ Sing_0 = A^2".into()))
    });
    s.check("set and point answers agree on a grid", || {
        let (Ok(sv), Ok(_)) = (&sv, &ss) else {
            return Err(Failure::msg("loci unavailable"));
        };
        let mut bad = Vec::new();
        for g in crate::singloci::grid_points(2, -2, 2) {
            if sv.contains_point(&g)? != singv_point_test(&pa, &g)? {
                bad.push(pretty(&g));
            }
        }
        Ok((bad.is_empty(), bad.join(" ")))
    });
}

// ---------------------------------------------------------------------------
// border basis schemes

fn order_ideal(terms: &[&str]) -> OrderIdeal {
    OrderIdeal::parse(&default_var_names(3), terms).expect("fixture order ideal")
}

/// The point of the `{1,x,y,z}` example in `c_11, …, c_46` order.
pub const SINGULAR_POINT_1XYZ: [i64; 24] = [
    -1, -1, -1, -1, -1, -1, 2, 1, 1, 0, 0, 0, 0, 1, 0, 2, 1, 0, 0, 0, 1, 0, 1, 2,
];

fn ex7_2(s: &mut Script) {
    let b = BBScheme::new(&order_ideal(&["1", "x", "y", "z"]));
    s.equal("24 coefficient variables", Ok(b.c_count()), 24);
    s.check("weights 2 on c_1j and 1 elsewhere", || {
        let w = b.arrow_weights();
        let ok = w.iter().enumerate().all(|(i, &d)| d == if i < 6 { 2 } else { 1 });
        Ok((ok && b.ring.m() == 0, format!("{w:?}")))
    });
    let pa = match PositiveAlgebra::validate(&b.ring, b.commutator_entries()) {
        Ok(pa) => pa,
        Err(e) => {
            s.check("scheme ideal is a positive algebra", || Err(e.into()));
            return;
        }
    };
    s.check("monomial point is singular", || {
        let gens = pa.generators().to_vec();
        let r = jacobian_rank_at(&gens, &b.origin())?;
        Ok((r < 24 - 12, format!("Jacobian rank {r} at the origin")))
    });
    s.check("printed point is a singular point (d = 12)", || {
        let p = b.point_from_c_order(&qs(&SINGULAR_POINT_1XYZ))?;
        let singular = fiber_point_singular_test(&pa, &[], &p, 12)?;
        let r = jacobian_rank_at(pa.generators(), &p)?;
        Ok((singular, format!("Jacobian rank {r}")))
    });
}

/// The first block of the `{1,x,y,z,z^2}` coefficient matrix, one row per
/// degree-one variable `c31..c35, c41..c45, c56..c58` and one column per
/// degree-one generator.
pub const Z2_BLOCK_ONE: [[&str; 3]; 13] = [
    ["0", "-c51*c52 + c54", "-c51^2*c52 + c52*c53"],
    ["c52*c53 - c51*c54", "c51^2 - c53", "c51^3 - c51*c53"],
    ["0", "0", "-c51*c52 + c54"],
    ["-c51*c52 + c54", "0", "c51^2 - c53"],
    ["c51^2 - c53", "0", "0"],
    ["0", "-c52^2 + c55", "-c51*c52^2 + c52*c54"],
    ["c52*c54 - c51*c55", "c51*c52 - c54", "c51^2*c52 - c51*c54"],
    ["0", "0", "-c52^2 + c55"],
    ["-c52^2 + c55", "0", "c51*c52 - c54"],
    ["c51*c52 - c54", "0", "0"],
    ["-c52*c54 + c51*c55", "0", "-c52*c53 + c51*c54"],
    ["c52^2 - c55", "0", "c51*c52 - c54"],
    ["-c51*c52 + c54", "0", "-c51^2 + c53"],
];

/// The second block: one row per degree-two generator, one column per
/// degree-two variable `c26, c36, c46`.
pub const Z2_BLOCK_TWO: [[&str; 3]; 9] = [
    ["0", "0", "c52^2 - c55"],
    ["0", "c52^2 - c55", "0"],
    ["0", "0", "-c51*c52 + c54"],
    ["0", "-c51*c52 + c54", "0"],
    ["0", "0", "c51^2 - c53"],
    ["0", "-c51^2 + c53", "0"],
    ["-c52^2 + c55", "0", "c52^3 - c52*c55"],
    ["c51*c52 - c54", "c52*c53 - c51*c54", "-c51*c52^2 + c52*c54"],
    ["c51^2 - c53", "0", "-c51^2*c52 + c52*c53"],
];

pub const Z2_PRIME: [&str; 3] = ["c53 - c51^2", "c54 - c51*c52", "c55 - c52^2"];
pub const YZ_PRIME: [&str; 3] = ["c52 - c51*c54", "c55 - c51*c54^2", "c51*c53 - 1"];

pub const Z2_ELIMINATED: &str = "c11 c12 c13 c14 c15 c16 c17 c18 c21 c22 c23 c24 c25 c27 c28 c37 c38 c47 c48";
pub const YZ_ELIMINATED: &str = "c11 c12 c13 c14 c15 c16 c17 c18 c21 c22 c24 c25 c26 c28 c33 c36 c38 c46 c48";

/// Parameter ring `Q[c51..c55]` of the quintic schemes.
pub fn quintic_base() -> Arc<RingSpec> {
    ring(&["c51", "c52", "c53", "c54", "c55"], &[], &[])
}

/// The two printed blocks, generators as rows.
pub fn z2_blocks() -> (PolyMatrix, PolyMatrix) {
    let base = quintic_base();
    let one: Vec<Vec<&str>> = Z2_BLOCK_ONE.iter().map(|r| r.to_vec()).collect();
    let two: Vec<Vec<&str>> = Z2_BLOCK_TWO.iter().map(|r| r.to_vec()).collect();
    let one = PolyMatrix::parse(&base, &one).expect("fixture block").transpose();
    let two = PolyMatrix::parse(&base, &two).expect("fixture block");
    (one, two)
}

/// The quintic scheme after solving for the eliminated coefficients.
pub fn reembedded_quintic(terms: &[&str], eliminated: &str) -> Result<PositiveAlgebra, Failure> {
    let b = BBScheme::new(&order_ideal(terms));
    let z: Vec<&str> = eliminated.split_whitespace().collect();
    let re = separating_reembedding(&b.ideal(), &z)?;
    let r = re.ideal.ring().clone();
    Ok(PositiveAlgebra::validate(&r, re.ideal.generators().to_vec())?)
}

/// Point of the fiber ring with the named coordinates set.
fn fiber_point(pa: &PositiveAlgebra, values: &[(&str, Q)]) -> Result<Vec<Q>, Failure> {
    let r = pa.ring();
    let mut p = vec![Q::zero(); r.k()];
    for (name, v) in values {
        let i = r.index_of(name).ok_or_else(|| Failure::msg(format!("no variable {name}")))?;
        p[i - r.m()] = v.clone();
    }
    Ok(p)
}

/// `Rad(⟨minors⟩) = p` for a prime `p`: every minor lies in `p` and every
/// generator of `p` has a power of exponent at most `max_exp` among the minors.
fn radical_is(minors: &Ideal, prime: &Ideal, max_exp: u32) -> Verdict {
    if !prime.contains(minors)? {
        return Ok((false, "a minor is not in the prime".into()));
    }
    let mut exps = Vec::new();
    for g in prime.generators() {
        match minors.power_membership(g, max_exp)? {
            Some(e) => exps.push(e),
            None => return Ok((false, format!("no power ≤ {max_exp} of {g} among the minors"))),
        }
    }
    Ok((true, format!("{} minors, exponents {exps:?}", minors.generators().len())))
}

fn z_points(samples: &[(i64, i64)], yz: bool) -> Vec<Vec<Q>> {
    samples
        .iter()
        .map(|&(a, b)| {
            let (a, b) = (q(a), q(b));
            if yz {
                // (g1, g1 g2, 1/g1, g2, g1 g2^2)
                vec![a.clone(), &a * &b, a.recip(), b.clone(), &a * &b * &b]
            } else {
                vec![a.clone(), b.clone(), &a * &a, &a * &b, &b * &b]
            }
        })
        .collect()
}

fn ex7_3(s: &mut Script) {
    let base = quintic_base();
    let (one, two) = z2_blocks();
    let prime = Ideal::parse(&base, &Z2_PRIME).expect("fixture prime");
    s.check("first block: radical of 3-minors is p", || radical_is(&one.minors_ideal(3), &prime, 3));
    s.check("second block: radical of 3-minors is p", || radical_is(&two.minors_ideal(3), &prime, 3));
    let whole = one.block_diag(&two);
    s.equal("generic rank of the block matrix", Ok(whole.generic_rank()), 6);
    let pts = z_points(&[(0, 0), (1, 1), (2, -1), (-3, 5), (7, 2)], false);
    s.check("specialized matrix vanishes on 5 points of Z(p)", || {
        let mut ok = true;
        for g in &pts {
            ok &= whole.specialize(g)?.is_zero();
        }
        Ok((ok, pts.iter().map(|p| pretty(p)).collect::<Vec<_>>().join(" ")))
    });
    s.check("at (1,1,1,1,1): zero point singular (rank 0 < n - d = 21 - 15)", || {
        let r = whole.specialize(&qs(&[1, 1, 1, 1, 1]))?.rank();
        Ok((r < 21 - 15, format!("rank {r}")))
    });
    s.check("at (1,1,1,1,1): vertex singular (rank 0 < 16 - d_F since d_F ≤ 15)", || {
        let r = whole.specialize(&qs(&[1, 1, 1, 1, 1]))?.rank();
        Ok((r < 16 - 15, format!("rank {r}")))
    });
    s.check("off Z(p) the matrix has full rank 6", || {
        let r = whole.specialize(&qs(&[1, 1, 0, 0, 0]))?.rank();
        Ok((r == 6, format!("rank {r} at (1,1,0,0,0)")))
    });
    let pa = match reembedded_quintic(&["1", "x", "y", "z", "z^2"], Z2_ELIMINATED) {
        Ok(pa) => pa,
        Err(e) => {
            s.check("re-embedded scheme", || Err(e));
            return;
        }
    };
    let names = [
        "c26", "c31", "c32", "c33", "c34", "c35", "c36", "c41", "c42", "c43", "c44", "c45", "c46", "c56", "c57", "c58",
    ];
    // coordinates as combinations of δ1..δ6
    let family: [[i64; 6]; 16] = [
        [1, 0, 0, 0, 0, 0],
        [0, 0, 0, 1, 0, 0],
        [0; 6],
        [0, 0, 0, 0, 2, 0],
        [0, 0, 0, 0, 0, 1],
        [0; 6],
        [0, 1, 0, 0, 0, 0],
        [0; 6],
        [0, 0, 0, 1, 0, 0],
        [0; 6],
        [0, 0, 0, 0, 1, 0],
        [0, 0, 0, 0, 0, 2],
        [0, 0, 1, 0, 0, 0],
        [0, 0, 0, 1, 0, 0],
        [0, 0, 0, 0, 1, 0],
        [0, 0, 0, 0, 0, 1],
    ];
    let deltas: [[i64; 6]; 4] = [[1, 0, 0, 0, 0, 0], [0, 0, 0, 0, 0, 1], [1, 2, 3, 4, 5, 6], [0, -1, 0, 2, 0, 3]];
    for g in z_points(&[(1, 1), (2, -3)], false) {
        s.check(&format!("singular family over {}", pretty(&g)), || {
            let mut ranks = Vec::new();
            for d in &deltas {
                let vals: Vec<(&str, Q)> = names
                    .iter()
                    .zip(family.iter())
                    .map(|(n, row)| (*n, q(row.iter().zip(d).map(|(a, b)| a * b).sum())))
                    .collect();
                let p = fiber_point(&pa, &vals)?;
                if !fiber_point_singular_test(&pa, &g, &p, 11)? {
                    return Ok((false, format!("not singular for δ = {d:?}")));
                }
                ranks.push(jacobian_rank_at(&pa.specialized_generators(&g)?, &p)?);
            }
            Ok((true, format!("{} δ-samples, Jacobian ranks {ranks:?} < 16 - 11", deltas.len())))
        });
    }
}

fn ex7_4(s: &mut Script) {
    let base = quintic_base();
    let prime = Ideal::parse(&base, &YZ_PRIME).expect("fixture prime");
    let pa = match reembedded_quintic(&["1", "x", "y", "z", "y*z"], YZ_ELIMINATED) {
        Ok(pa) => pa,
        Err(e) => {
            s.check("re-embedded scheme", || Err(e));
            return;
        }
    };
    s.equal("21 remaining coefficients, 16 of positive degree", Ok((pa.n(), pa.k())), (21, 16));
    let (one, two) = match yz_blocks(&pa) {
        Ok(b) => b,
        Err(e) => {
            s.check("coefficient blocks", || Err(e));
            return;
        }
    };
    s.check("first block: radical of 3-minors is p", || radical_is(&one.minors_ideal(3), &prime, 3));
    s.check("second block: radical of 3-minors is p", || radical_is(&two.minors_ideal(3), &prime, 3));
    s.equal("generic rank", Ok(pa.lin_coeff_matrix().generic_rank()), 6);
    let pts = z_points(&[(1, 0), (1, 1), (2, -1), (-3, 5), (7, 2)], true);
    s.check("specialized matrix vanishes on 5 points of Z(p)", || {
        let l = pa.lin_coeff_matrix();
        let mut ok = true;
        for g in &pts {
            ok &= l.specialize(g)?.is_zero();
        }
        Ok((ok, pts.iter().map(|p| pretty(p)).collect::<Vec<_>>().join(" ")))
    });
    let deltas: [[i64; 3]; 3] = [[1, 0, 0], [0, 1, 0], [2, -1, 3]];
    for g in z_points(&[(1, 1), (2, 3)], true) {
        s.check(&format!("singular family over {}", pretty(&g)), || {
            let mut ranks = Vec::new();
            for d in &deltas {
                let vals = [("c27", q(d[0])), ("c37", q(d[1])), ("c47", q(d[2]))];
                let p = fiber_point(&pa, &vals)?;
                if !fiber_point_singular_test(&pa, &g, &p, 11)? {
                    return Ok((false, format!("not singular for δ = {d:?}")));
                }
                ranks.push(jacobian_rank_at(&pa.specialized_generators(&g)?, &p)?);
            }
            Ok((true, format!("{} δ-samples, Jacobian ranks {ranks:?} < 16 - 11", deltas.len())))
        });
    }
}

/// Degree-one and degree-two blocks of the coefficient matrix of `pa`, over
/// the parameter ring, with zero rows dropped.
pub fn degree_blocks(pa: &PositiveAlgebra) -> Result<(PolyMatrix, PolyMatrix), Failure> {
    let l = pa.lin_coeff_matrix();
    let w = pa.ring().weights();
    let base = pa.ring().base_ring();
    let mut out = Vec::new();
    for deg in [1, 2] {
        let cols: Vec<usize> = (0..w.len()).filter(|&j| w[j] == deg).collect();
        let rows: Vec<usize> = (0..l.rows())
            .filter(|&i| cols.iter().any(|&j| !l.get(i, j).is_zero()))
            .collect();
        out.push(l.submatrix(&rows, &cols).rebase_by_name(&base)?);
    }
    let two = out.pop().expect("two blocks");
    let one = out.pop().expect("two blocks");
    Ok((one, two))
}

fn yz_blocks(pa: &PositiveAlgebra) -> Result<(PolyMatrix, PolyMatrix), Failure> {
    degree_blocks(pa)
}

/// Match the rows of `got` against those of `want` up to order and sign.
/// Returns the unmatched rows of `want`.
pub fn unmatched_rows(got: &PolyMatrix, want: &PolyMatrix) -> Vec<usize> {
    let mut used = vec![false; got.rows()];
    let mut missing = Vec::new();
    for i in 0..want.rows() {
        let w = want.row(i);
        let neg: Vec<Polynomial<Q>> = w.iter().map(Polynomial::neg).collect();
        let hit = (0..got.rows()).find(|&j| !used[j] && (got.row(j) == w || got.row(j) == &neg[..]));
        match hit {
            Some(j) => used[j] = true,
            None => missing.push(i),
        }
    }
    missing
}

fn ex7_full(s: &mut Script) {
    if !s.opts.full_pipeline {
        s.skip("scheme-level pipelines (enable the full pipeline option)");
        return;
    }
    let budget = s.opts.budget;
    for (terms, z, label) in [
        (&["1", "x", "y", "z", "z^2"][..], Z2_ELIMINATED, "z^2"),
        (&["1", "x", "y", "z", "y*z"][..], YZ_ELIMINATED, "yz"),
    ] {
        let b = BBScheme::new(&order_ideal(terms));
        s.equal(&format!("{label}: 60 scheme generators"), Ok(b.commutator_entries().len()), 60);
        s.equal(&format!("{label}: MaxDeg with 5 parameters"), Ok((b.maxdeg, b.ring.m())), (true, 5));
        let zs: Vec<&str> = z.split_whitespace().collect();
        let re = match separating_reembedding(&b.ideal().with_budget(budget), &zs) {
            Ok(re) => re,
            Err(e) => {
                s.check(&format!("{label}: re-embedding"), || Err(e.into()));
                continue;
            }
        };
        s.equal(&format!("{label}: 19 coefficients solved"), Ok(re.solved.len()), 19);
        let mins = re.ideal.minimal_generators(None);
        let mins = match mins {
            Ok((m, _)) => m,
            Err(e) => {
                s.check(&format!("{label}: minimal generators"), || Err(e.into()));
                continue;
            }
        };
        s.equal(&format!("{label}: 15 minimal homogeneous generators"), Ok(mins.len()), 15);
        let pa = match PositiveAlgebra::validate(re.ideal.ring(), mins) {
            Ok(pa) => pa,
            Err(e) => {
                s.check(&format!("{label}: positive algebra"), || Err(e.into()));
                continue;
            }
        };
        s.equal(&format!("{label}: generic rank 6"), Ok(pa.lin_coeff_matrix().generic_rank()), 6);
        if label == "z^2" {
            let (one, two) = z2_blocks();
            s.check("z^2: blocks match the transcribed ones up to row order and sign", || {
                let (g1, g2) = degree_blocks(&pa)?;
                let m1 = unmatched_rows(&g1, &one);
                let m2 = unmatched_rows(&g2, &two);
                let ok = m1.is_empty() && m2.is_empty() && g1.rows() == one.rows() && g2.rows() == two.rows();
                Ok((ok, format!("unmatched rows: first block {m1:?}, second block {m2:?}")))
            });
            s.check("z^2: minors ideals of every order agree with the transcribed blocks", || {
                let (g1, g2) = degree_blocks(&pa)?;
                for (g, w) in [(&g1, &one), (&g2, &two)] {
                    for r in 1..=3 {
                        if !g.minors_ideal(r).equals(&w.minors_ideal(r))? {
                            return Ok((false, format!("order {r} differs")));
                        }
                    }
                }
                Ok((true, "orders 1 to 3".into()))
            });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_names_are_unique() {
        let mut names: Vec<_> = registry().iter().map(|f| f.name).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), registry().len());
        assert!(find("ex6_10").is_ok());
        assert!(find("nope").is_err());
    }

    #[test]
    fn small_fixtures_pass() {
        for name in ["ex2_5", "ex4_6", "ex5_lin0", "ex5_linmatrix", "ex6_6", "ex6_8", "ex6_9"] {
            let run = find(name).unwrap().run(FixtureOptions::default());
            let bad: Vec<_> = run.failures().collect();
            assert!(bad.is_empty(), "{name}: {bad:?}");
        }
    }

    #[test]
    fn intersection_claim_is_refuted_with_a_witness() {
        let run = find("ex6_7").unwrap().run(FixtureOptions::default());
        let bad: Vec<_> = run.failures().collect();
        assert_eq!(bad.len(), 1, "{bad:?}");
        assert!(bad[0].label.contains("∩"));
        assert!(bad[0].detail.contains("`z^2` is not in the ideal"), "{}", bad[0].detail);
    }

    #[test]
    fn row_matching() {
        let base = quintic_base();
        let a = PolyMatrix::parse(&base, &[vec!["c51", "0"], vec!["1", "c52"]]).unwrap();
        let b = PolyMatrix::parse(&base, &[vec!["-1", "-c52"], vec!["c51", "0"]]).unwrap();
        assert!(unmatched_rows(&a, &b).is_empty());
        let c = PolyMatrix::parse(&base, &[vec!["c51", "1"]]).unwrap();
        assert_eq!(unmatched_rows(&a, &c), vec![0]);
    }

    #[test]
    fn skipped_without_full_pipeline() {
        let run = find("ex7_full").unwrap().run(FixtureOptions::default());
        assert!(run.checks.is_empty());
        assert_eq!(run.skipped.len(), 1);
    }
}
