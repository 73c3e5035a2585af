//! Descriptor driven analyses and their reports.
//!
//! A [`Report`] carries the command, a digest of the input, the result values
//! and notes about the budget. Everything except `timing` is a function of the
//! input, so re-running a descriptor reproduces the same JSON.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::bbscheme::{linear_part_dimension, separating_reembedding, BBScheme, BbsError, OrderIdeal};
use crate::fixtures::FixtureRun;
use crate::ideals::{Budget, GbError, Ideal};
use crate::matrices::MatrixError;
use crate::polyring::{parse_rational, PolyError, Polynomial, RingSpec, Q};
use crate::posalg::{ComponentDescriptor, Descriptor, PosAlgError, PositiveAlgebra};
use crate::singloci::{
    comprehensive_gs, fiber_point_singular_test, lin_rank_at, sing0_equidimensional, sing0_general,
    sing0_point_test, sings_set_with, singv_point_test, singv_set_with, ComponentData, ConstructibleSet, GsOptions,
    SingError,
};

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("{0}")]
    Budget(String),
}

impl ReportError {
    /// Process exit code: 2 for input errors, 3 for exhausted budgets.
    pub fn exit_code(&self) -> i32 {
        match self {
            ReportError::Input(_) => 2,
            ReportError::Budget(_) => 3,
        }
    }
}

fn gb_err(e: GbError) -> ReportError {
    match e {
        GbError::BudgetExceeded { .. } => ReportError::Budget(e.to_string()),
        _ => ReportError::Input(e.to_string()),
    }
}

impl From<GbError> for ReportError {
    fn from(e: GbError) -> Self {
        gb_err(e)
    }
}

impl From<PolyError> for ReportError {
    fn from(e: PolyError) -> Self {
        ReportError::Input(e.to_string())
    }
}

impl From<MatrixError> for ReportError {
    fn from(e: MatrixError) -> Self {
        match e {
            MatrixError::Gb(g) => gb_err(g),
            e => ReportError::Input(e.to_string()),
        }
    }
}

impl From<PosAlgError> for ReportError {
    fn from(e: PosAlgError) -> Self {
        match e {
            PosAlgError::Gb(g) => gb_err(g),
            PosAlgError::Matrix(m) => m.into(),
            e => ReportError::Input(e.to_string()),
        }
    }
}

impl From<SingError> for ReportError {
    fn from(e: SingError) -> Self {
        match e {
            SingError::Gb(g) => gb_err(g),
            SingError::PosAlg(p) => p.into(),
            SingError::Matrix(m) => m.into(),
            SingError::TooManyCells(_) => ReportError::Budget(e.to_string()),
            e => ReportError::Input(e.to_string()),
        }
    }
}

impl From<BbsError> for ReportError {
    fn from(e: BbsError) -> Self {
        match e {
            BbsError::Gb(g) => gb_err(g),
            e => ReportError::Input(e.to_string()),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BudgetNote {
    pub max_pairs: Option<usize>,
    pub max_degree: Option<i64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl BudgetNote {
    fn of(b: Budget) -> Self {
        BudgetNote {
            max_pairs: b.max_pairs,
            max_degree: b.max_degree,
            notes: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    /// Which result the analysis rests on.
    pub tag: String,
    pub input_sha256: String,
    pub results: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub intermediate: BTreeMap<String, Value>,
    pub budget: BudgetNote,
    /// `false` when a scripted assertion failed.
    pub passed: bool,
    pub timing: Timing,
}

#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub seconds: f64,
}

impl Report {
    fn new(command: &str, tag: &str, input: &[u8], budget: Budget) -> Self {
        Report {
            command: command.to_string(),
            tag: tag.to_string(),
            input_sha256: hex(&Sha256::digest(input)),
            results: BTreeMap::new(),
            intermediate: BTreeMap::new(),
            budget: BudgetNote::of(budget),
            passed: true,
            timing: Timing { seconds: 0.0 },
        }
    }

    fn put(&mut self, key: &str, v: impl Serialize) {
        self.results.insert(key.to_string(), serde_json::to_value(v).expect("serializable"));
    }

    fn note(&mut self, key: &str, v: impl Serialize) {
        self.intermediate.insert(key.to_string(), serde_json::to_value(v).expect("serializable"));
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    /// Plain text rendering, one `key: value` line per result.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} [{}]", self.command, self.tag);
        for (k, v) in &self.results {
            let _ = writeln!(out, "  {k}: {}", compact(v));
        }
        if !self.intermediate.is_empty() {
            let _ = writeln!(out, "  intermediate:");
            for (k, v) in &self.intermediate {
                let _ = writeln!(out, "    {k}: {}", compact(v));
            }
        }
        for n in &self.budget.notes {
            let _ = writeln!(out, "  note: {n}");
        }
        let _ = writeln!(out, "  {} in {:.3}s", if self.passed { "ok" } else { "FAILED" }, self.timing.seconds);
        out
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        v => v.to_string(),
    }
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

fn strings(ps: &[Polynomial<Q>]) -> Vec<String> {
    ps.iter().map(ToString::to_string).collect()
}

fn q_strings(v: &[Q]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

// ---------------------------------------------------------------------------
// border basis schemes

/// Summary of the border basis scheme of an order ideal, optionally after
/// eliminating the coefficients in `z`.
pub fn bbs_report(input: &str, z: Option<&[String]>, verbose: bool, budget: Budget) -> Result<Report, ReportError> {
    let start = Instant::now();
    let o = OrderIdeal::from_json(input)?;
    let b = BBScheme::new(&o);
    let mut rep = Report::new("bbs", "border basis scheme: commutators of generic multiplication matrices", input.as_bytes(), budget);
    let names = b.c_names();
    let weights = b.arrow_weights();
    let gens = b.commutator_entries();
    rep.put("order_ideal", o.term_strings());
    rep.put("border", b.structure.border_strings());
    rep.put("mu", b.mu());
    rep.put("nu", b.nu());
    rep.put("coefficients", b.c_count());
    rep.put(
        "arrow_degrees",
        names.iter().zip(&weights).map(|(n, w)| (n.clone(), *w)).collect::<BTreeMap<_, _>>(),
    );
    rep.put("maxdeg", b.maxdeg);
    rep.put("generators", gens.len());
    rep.put("degree_zero", b.ring.params());
    rep.put("positive_degree", b.ring.vars());
    rep.put("linear_part_dimension", linear_part_dimension(&gens));
    if verbose {
        rep.note("ideal", strings(&gens));
    }
    if let Some(z) = z {
        let ideal = Ideal::new(&b.ring, gens)?.with_budget(budget);
        let (method, j, solved) = match separating_reembedding(&ideal, z) {
            Ok(re) => ("substitution", re.ideal, re.solved.len()),
            Err(BbsError::NotSeparating(v)) => {
                rep.budget.notes.push(format!("not separating for `{v}`; eliminated with a Gröbner basis"));
                ("groebner", ideal.eliminate_names(z)?, 0)
            }
            Err(e) => return Err(e.into()),
        };
        let r = j.ring().clone();
        rep.put("elimination", json!({
            "method": method,
            "eliminated": z,
            "solved": solved,
            "remaining": r.names().collect::<Vec<_>>(),
            "generators": j.generators().len(),
            "linear_part_dimension": linear_part_dimension(j.generators()),
        }));
        if verbose {
            rep.note("eliminated_ideal", strings(j.generators()));
        }
    }
    rep.timing.seconds = start.elapsed().as_secs_f64();
    Ok(rep)
}

// ---------------------------------------------------------------------------
// analyses

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    LinMatrix,
    Sing0,
    Singv,
    Sings,
    Point,
    Curve,
    Invariants,
}

impl Mode {
    pub const ALL: [Mode; 7] = [
        Mode::LinMatrix,
        Mode::Sing0,
        Mode::Singv,
        Mode::Sings,
        Mode::Point,
        Mode::Curve,
        Mode::Invariants,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Mode::LinMatrix => "lin-matrix",
            Mode::Sing0 => "sing0",
            Mode::Singv => "singv",
            Mode::Sings => "sings",
            Mode::Point => "point",
            Mode::Curve => "curve",
            Mode::Invariants => "invariants",
        }
    }

    pub fn parse(s: &str) -> Option<Mode> {
        Mode::ALL.into_iter().find(|m| m.name() == s)
    }
}

/// A rational given as a JSON number or a string like `"-3/4"`.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum Rational {
    Int(i64),
    Text(String),
}

impl Rational {
    fn value(&self) -> Result<Q, ReportError> {
        match self {
            Rational::Int(n) => Ok(Q::from_integer((*n).into())),
            Rational::Text(s) => Ok(parse_rational(s)?),
        }
    }
}

fn values(v: &[Rational]) -> Result<Vec<Q>, ReportError> {
    v.iter().map(Rational::value).collect()
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiberPoint {
    pub base: Vec<Rational>,
    pub point: Vec<Rational>,
    pub fiber_dim: usize,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PathEnds {
    pub from: Vec<Rational>,
    pub to: Vec<Rational>,
}

/// Input of `analyze`: the algebra plus optional data for the individual modes.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemDescriptor {
    #[serde(default)]
    pub params: Vec<String>,
    pub vars: Vec<String>,
    pub weights: Option<Vec<i64>>,
    pub generators: Vec<String>,
    pub components: Option<Vec<ComponentDescriptor>>,
    pub radical: Option<Vec<String>>,
    #[serde(default)]
    pub equidimensional: bool,
    /// The ideal is known to be radical.
    #[serde(default)]
    pub reduced: bool,
    /// Dimension of `Spec R` for the equidimensional criterion.
    pub dimension: Option<usize>,
    /// Base points for `point` and `invariants`.
    #[serde(default)]
    pub points: Vec<Vec<Rational>>,
    /// Fiber points for `point`.
    #[serde(default)]
    pub fiber_points: Vec<FiberPoint>,
    /// Points of `Spec R` joined by `curve`.
    pub path: Option<PathEnds>,
}

impl ProblemDescriptor {
    pub fn from_json(text: &str) -> Result<Self, ReportError> {
        serde_json::from_str(text).map_err(|e| ReportError::Input(e.to_string()))
    }

    pub fn algebra(&self) -> Result<PositiveAlgebra, ReportError> {
        let d = Descriptor {
            params: self.params.clone(),
            vars: self.vars.clone(),
            weights: self.weights.clone(),
            generators: self.generators.clone(),
            components: self.components.clone(),
            radical: self.radical.clone(),
            equidimensional: self.equidimensional,
        };
        Ok(PositiveAlgebra::from_descriptor(&d)?)
    }

    fn base_points(&self, m: usize) -> Result<Vec<Vec<Q>>, ReportError> {
        let pts = self.points.iter().map(|p| values(p)).collect::<Result<Vec<_>, _>>()?;
        if let Some(p) = pts.iter().find(|p| p.len() != m) {
            return Err(ReportError::Input(format!("base point has {} coordinates, expected {m}", p.len())));
        }
        Ok(pts)
    }
}

pub struct AnalyzeOptions {
    pub mode: Mode,
    pub verbose: bool,
    pub budget: Budget,
}

pub fn analyze(input: &str, opts: &AnalyzeOptions) -> Result<Report, ReportError> {
    let start = Instant::now();
    let desc = ProblemDescriptor::from_json(input)?;
    let pa = desc.algebra()?;
    let budget = opts.budget;
    let gso = GsOptions {
        budget,
        ..GsOptions::default()
    };
    let tag = match opts.mode {
        Mode::LinMatrix => "A-linear coefficient matrix",
        Mode::Sing0 if desc.components.is_some() => "zero section singularities: Jacobian minors on components",
        Mode::Sing0 => "zero section singularities: minors of the linear coefficient matrix (equidimensional)",
        Mode::Singv => "vertex singularities: rank of the linear part against fiber dimension over a Gröbner system",
        Mode::Sings => "singular fibers: Jacobian minors over a Gröbner system",
        Mode::Point => "point tests for the three loci",
        Mode::Curve => "connecting curves through zero points",
        Mode::Invariants => "embedding dimensions and codimensions at zero points",
    };
    let mut rep = Report::new(&format!("analyze --mode={}", opts.mode.name()), tag, input.as_bytes(), budget);
    rep.put("ring", json!({
        "params": pa.ring().params(),
        "vars": pa.ring().vars(),
        "weights": pa.ring().weights(),
    }));
    let base = pa.ring().base_ring();
    match opts.mode {
        Mode::LinMatrix => {
            let l = pa.lin_coeff_matrix();
            rep.put("matrix", l.to_strings());
            rep.put("generic_rank", l.generic_rank());
            rep.put("linear_parts", strings(&pa.lin_module()));
            rep.put("generic_fiber_dimension", pa.generic_fiber_dimension()?);
            if opts.verbose {
                let mut minors = BTreeMap::new();
                for r in 1..=l.rows().min(l.cols()) {
                    minors.insert(r.to_string(), strings(l.minors_ideal(r).generators()));
                }
                rep.note("minors_ideals", minors);
            }
        }
        Mode::Sing0 => {
            let ideal = if desc.components.is_some() {
                let data = ComponentData::from_algebra(&pa)?;
                data.verify(&pa)?;
                sing0_general(&pa, &data, desc.reduced)?
            } else {
                let d = match desc.dimension {
                    Some(d) => d,
                    None if desc.equidimensional => pa.dimension()?,
                    None => {
                        return Err(ReportError::Input(
                            "sing0 needs `components`, or `dimension` / `equidimensional`".into(),
                        ))
                    }
                };
                rep.put("dimension", d);
                rep.put("generic_rank", pa.lin_coeff_matrix().generic_rank());
                sing0_equidimensional(&pa, d)?
            };
            let ideal = ideal.rebase_by_name(&base)?;
            rep.put("vanishing_ideal", strings(ideal.generators()));
            rep.put("locus", ConstructibleSet::closed(&base, ideal.generators().to_vec()).to_json());
        }
        Mode::Singv | Mode::Sings => {
            let gs = comprehensive_gs(&pa, gso)?;
            let set = if opts.mode == Mode::Singv {
                singv_set_with(&pa, &gs, budget)?
            } else {
                sings_set_with(&pa, &gs, gso)?
            };
            rep.put("locus", set.to_json());
            rep.put("locus_text", set.to_string());
            if opts.verbose {
                let branches: Vec<Value> = gs
                    .branches
                    .iter()
                    .map(|b| {
                        json!({
                            "cell": b.cell.to_string(),
                            "basis": strings(&b.basis),
                            "fiber_dim": b.fiber_dim,
                        })
                    })
                    .collect();
                rep.note("groebner_system", branches);
            }
        }
        Mode::Point => {
            let mut out = Vec::new();
            for g in desc.base_points(pa.m())? {
                let sing0 = match sing0_point_test(&pa, &g, desc.dimension) {
                    Ok(b) => Value::Bool(b),
                    Err(SingError::PosAlg(PosAlgError::DimensionUnknown)) => Value::Null,
                    Err(e) => return Err(e.into()),
                };
                out.push(json!({
                    "base": q_strings(&g),
                    "lin_rank": lin_rank_at(&pa, &g)?,
                    "fiber_dim": pa.fiber_dimension(&g)?,
                    "sing0": sing0,
                    "singv": singv_point_test(&pa, &g)?,
                }));
            }
            rep.put("base_points", out);
            let mut out = Vec::new();
            for fp in &desc.fiber_points {
                let g = values(&fp.base)?;
                let p = values(&fp.point)?;
                out.push(json!({
                    "base": q_strings(&g),
                    "point": q_strings(&p),
                    "singular": fiber_point_singular_test(&pa, &g, &p, fp.fiber_dim)?,
                }));
            }
            if !out.is_empty() {
                rep.put("fiber_points", out);
            }
        }
        Mode::Curve => {
            let ends = desc.path.as_ref().ok_or_else(|| ReportError::Input("curve needs `path`".into()))?;
            let path = pa.connect_points(&values(&ends.from)?, &values(&ends.to)?)?;
            let mut segs = Vec::new();
            for s in &path.segments {
                pa.verify_segment(s)?;
                segs.push(json!({
                    "kind": format!("{:?}", s.kind),
                    "images": s.image_strings(),
                    "from": q_strings(&s.from),
                    "to": q_strings(&s.to),
                    "t": [s.from_t.to_string(), s.to_t.to_string()],
                }));
            }
            rep.put("segments", segs);
            rep.put("consistent", path.is_consistent());
        }
        Mode::Invariants => {
            let mut out = Vec::new();
            for g in desc.base_points(pa.m())? {
                let li = pa.local_invariants(&g, desc.dimension)?;
                out.push(json!({
                    "base": q_strings(&g),
                    "lin_rank": li.lin_rank,
                    "edim_zero_point": li.cot_dim_zero_point,
                    "edim_fiber_origin": li.cot_dim_fiber_origin,
                    "fiber_dim": li.fiber_dim,
                    "dim_zero_point": li.dim_zero_point,
                    "ecod_fiber": li.ecod_fiber(),
                    "ecod_zero_point": li.ecod_zero_point(),
                }));
            }
            rep.put("points", out);
        }
    }
    rep.timing.seconds = start.elapsed().as_secs_f64();
    Ok(rep)
}

// ---------------------------------------------------------------------------
// fixtures

pub fn fixture_report(run: &FixtureRun, budget: Budget) -> Report {
    let mut rep = Report::new(&format!("fixtures {}", run.name), run.topic, run.name.as_bytes(), budget);
    rep.put("checks", &run.checks);
    rep.put("passed", run.checks.iter().filter(|c| c.passed).count());
    rep.put("failed", run.checks.iter().filter(|c| !c.passed).count());
    if !run.skipped.is_empty() {
        rep.put("skipped", &run.skipped);
    }
    if run.budget_exceeded() {
        rep.budget.notes.push("a check ran out of budget".into());
    }
    rep.passed = run.passed();
    rep.timing.seconds = run.seconds;
    rep
}

/// Parse generator strings of a report back into an ideal of `ring`.
pub fn reparse(ring: &Arc<RingSpec>, gens: &[String]) -> Result<Ideal, ReportError> {
    Ok(Ideal::parse(ring, gens)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TWO_LINES: &str = r#"{"params":["a","b"],"vars":["x","y"],"generators":["a*x","b*y^2"],
        "dimension":2,"points":[[1,1],[0,1],[1,0],[0,0]]}"#;

    fn opts(mode: Mode) -> AnalyzeOptions {
        AnalyzeOptions {
            mode,
            verbose: true,
            budget: Budget::default(),
        }
    }

    fn strip_timing(r: &Report) -> Value {
        let mut v = serde_json::to_value(r).unwrap();
        v.as_object_mut().unwrap().remove("timing");
        v
    }

    #[test]
    fn modes_round_trip_names() {
        for m in Mode::ALL {
            assert_eq!(Mode::parse(m.name()), Some(m));
        }
        assert_eq!(Mode::parse("nope"), None);
    }

    #[test]
    fn deterministic_reports() {
        for m in Mode::ALL {
            if m == Mode::Curve {
                continue;
            }
            let a = analyze(TWO_LINES, &opts(m)).unwrap();
            let b = analyze(TWO_LINES, &opts(m)).unwrap();
            assert_eq!(strip_timing(&a), strip_timing(&b), "{}", m.name());
        }
    }

    #[test]
    fn vertex_locus_and_point_tests() {
        let r = analyze(TWO_LINES, &opts(Mode::Singv)).unwrap();
        assert_eq!(r.results["locus_text"], "𝔸 \\ V(a*b) ∪ V(a) \\ V(b)");
        let r = analyze(TWO_LINES, &opts(Mode::Point)).unwrap();
        let pts = r.results["base_points"].as_array().unwrap();
        let singv: Vec<bool> = pts.iter().map(|p| p["singv"].as_bool().unwrap()).collect();
        assert_eq!(singv, vec![true, true, false, false]);
        let r = analyze(TWO_LINES, &opts(Mode::Sing0)).unwrap();
        assert_eq!(r.results["vanishing_ideal"], json!([]));
    }

    #[test]
    fn generators_reparse_to_the_same_ideal() {
        let input = r#"{"params":["a"],"vars":["x","y","z"],"weights":[2,2,1],
            "generators":["a*x + z^2","a*y + z^2"],"dimension":2}"#;
        let r = analyze(input, &opts(Mode::Sing0)).unwrap();
        let gens: Vec<String> = serde_json::from_value(r.results["vanishing_ideal"].clone()).unwrap();
        let base = RingSpec::new(&["a"], &[] as &[&str], &[]).unwrap();
        let j = reparse(&base, &gens).unwrap();
        assert!(j.equals(&Ideal::parse(&base, &["a^2"]).unwrap()).unwrap());
    }

    #[test]
    fn input_errors() {
        let e = analyze("{", &opts(Mode::Sing0)).unwrap_err();
        assert_eq!(e.exit_code(), 2);
        let e = analyze(r#"{"vars":["x"],"generators":["x"],"bogus":1}"#, &opts(Mode::Sing0)).unwrap_err();
        assert_eq!(e.exit_code(), 2);
        let e = analyze(r#"{"params":["a"],"vars":["x"],"generators":["a*x"]}"#, &opts(Mode::Sing0)).unwrap_err();
        assert!(e.to_string().contains("components"));
        let e = analyze(r#"{"vars":["x"],"generators":["x"]}"#, &opts(Mode::Curve)).unwrap_err();
        assert_eq!(e.exit_code(), 2);
    }

    #[test]
    fn budget_errors() {
        let input = r#"{"params":["a","b"],"vars":["x","y","z"],"generators":["a*x*y - b*z^2","x^2*y + a*z^3","b*y^3 - x*z^2"]}"#;
        let o = AnalyzeOptions {
            mode: Mode::Singv,
            verbose: false,
            budget: Budget::pairs(1),
        };
        let e = analyze(input, &o).unwrap_err();
        assert_eq!(e.exit_code(), 3, "{e}");
    }

    #[test]
    fn small_scheme_summary() {
        let r = bbs_report(r#"["1","x","y","z"]"#, None, false, Budget::default()).unwrap();
        assert_eq!(r.results["coefficients"], 24);
        assert_eq!(r.results["maxdeg"], true);
        let r = bbs_report(r#"{"vars":["x"],"terms":[[0]]}"#, None, false, Budget::default()).unwrap();
        assert_eq!(r.results["generators"], 0);
    }

    #[test]
    fn curve_mode() {
        let input = r#"{"params":["a"],"vars":["x","y"],"weights":[1,2],"generators":["a*y - x^2"],
            "path":{"from":[1,2,4],"to":[4,4,4]}}"#;
        let r = analyze(input, &opts(Mode::Curve)).unwrap();
        assert_eq!(r.results["consistent"], true);
        assert!(!r.results["segments"].as_array().unwrap().is_empty());
    }
}
