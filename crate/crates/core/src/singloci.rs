//! The three singular loci of the structure map `Spec R → 𝔸^m` of a positive
//! algebra: zero points that are singular on `Spec R` (`Sing_0`), fibers
//! singular at their origin (`Sing_v`) and singular fibers (`Sing_s`).
//!
//! Also a small comprehensive Gröbner system and constructible sets
//! `⋃ V(E) \ V(H)` in the parameter space.

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::ideals::{is_groebner, monomial_dimension, Budget, GbError, GroebnerBasis, Ideal};
use crate::matrices::{MatrixError, PolyMatrix, ScalarMatrix};
use crate::polyring::{Monomial, PolyError, Polynomial, RingSpec, TermOrder, Q};
use crate::posalg::{Component, PosAlgError, PositiveAlgebra};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SingError {
    #[error("linear-part matrix has generic rank {rank} > n - d = {bound}; Spec R is not equidimensional of dimension {dim}")]
    RankExceeds { rank: usize, bound: usize, dim: usize },
    #[error("component {index} does not contain the ideal: `{witness}` is not in it")]
    ComponentMissesIdeal { index: usize, witness: String },
    #[error("supplied radical does not contain the ideal: `{0}` is not in it")]
    RadicalMissesIdeal(String),
    #[error("supplied radical is too big: `{0}` is not in the radical of the ideal")]
    RadicalTooBig(String),
    #[error("components do not cover Spec R: `{0}` vanishes on all of them but not on Spec R")]
    ComponentsIncomplete(String),
    #[error("no radical supplied and the algebra is not declared reduced")]
    MissingRadical,
    #[error("no component data supplied")]
    MissingComponents,
    #[error("point is not on the fiber: `{generator}` takes the value {value}")]
    NotOnFiber { generator: String, value: String },
    #[error("case split exceeded {0} cells")]
    TooManyCells(usize),
    #[error(transparent)]
    PosAlg(#[from] PosAlgError),
    #[error(transparent)]
    Gb(#[from] GbError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

// ---------------------------------------------------------------------------
// constructible sets

/// `V(E) \ V(H)` in the parameter space. `H = ⟨1⟩` removes nothing; an empty
/// `H` is the zero ideal and leaves nothing.
#[derive(Clone, Debug)]
pub struct Cell {
    ring: Arc<RingSpec>,
    pub equations: Vec<Polynomial<Q>>,
    pub inequations: Vec<Polynomial<Q>>,
}

impl Cell {
    pub fn new(ring: &Arc<RingSpec>, equations: Vec<Polynomial<Q>>, inequations: Vec<Polynomial<Q>>) -> Self {
        Cell {
            ring: ring.clone(),
            equations: equations.into_iter().filter(|p| !p.is_zero()).collect(),
            inequations: inequations.into_iter().filter(|p| !p.is_zero()).collect(),
        }
    }

    pub fn whole(ring: &Arc<RingSpec>) -> Self {
        Cell::new(ring, vec![], vec![Polynomial::one(ring)])
    }

    pub fn closed(ring: &Arc<RingSpec>, equations: Vec<Polynomial<Q>>) -> Self {
        Cell::new(ring, equations, vec![Polynomial::one(ring)])
    }

    /// `{h ≠ 0}`.
    pub fn open(ring: &Arc<RingSpec>, h: Polynomial<Q>) -> Self {
        Cell::new(ring, vec![], vec![h])
    }

    pub fn parse<S: AsRef<str>>(ring: &Arc<RingSpec>, eqs: &[S], ineqs: &[S]) -> Result<Self, PolyError> {
        let p = |v: &[S]| crate::polyring::parse_all(v, ring);
        Ok(Cell::new(ring, p(eqs)?, p(ineqs)?))
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    fn eq_ideal(&self, budget: Budget) -> Ideal {
        Ideal::new(&self.ring, self.equations.clone())
            .expect("same ring")
            .with_budget(budget)
    }

    /// Empty over the algebraic closure: every inequation lies in `Rad(E)`.
    pub fn is_empty(&self, budget: Budget) -> Result<bool, GbError> {
        if self.inequations.is_empty() {
            return Ok(true);
        }
        let e = self.eq_ideal(budget);
        for h in &self.inequations {
            if !e.radical_contains(h)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn contains_point(&self, p: &[Q]) -> Result<bool, PolyError> {
        for e in &self.equations {
            if !e.evaluate(p)?.is_zero() {
                return Ok(false);
            }
        }
        for h in &self.inequations {
            if !h.evaluate(p)?.is_zero() {
                return Ok(true);
            }
        }
        Ok(false)
    }

    pub fn intersect(&self, other: &Cell) -> Cell {
        let mut eqs = self.equations.clone();
        eqs.extend(other.equations.iter().cloned());
        let mut hs = Vec::new();
        for a in &self.inequations {
            for b in &other.inequations {
                hs.push(a.mul(b));
            }
        }
        Cell::new(&self.ring, dedup(eqs), dedup(hs))
    }

    /// `(𝔸^m \ V(E)) ∪ V(H)`.
    pub fn complement(&self) -> ConstructibleSet {
        let mut cells: Vec<Cell> = self
            .equations
            .iter()
            .map(|e| Cell::open(&self.ring, e.clone()))
            .collect();
        if !self.inequations.iter().any(Polynomial::is_constant) {
            cells.push(Cell::closed(&self.ring, self.inequations.clone()));
        }
        ConstructibleSet {
            ring: self.ring.clone(),
            cells,
        }
    }

    /// Disjoint cells with one inequation each: `h_1 ≠ 0`, then `h_1 = 0, h_2 ≠ 0`, ….
    pub fn split_principal(&self) -> Vec<Cell> {
        let mut out = Vec::new();
        let mut eqs = self.equations.clone();
        for h in &self.inequations {
            out.push(Cell::new(&self.ring, eqs.clone(), vec![h.clone()]));
            eqs.push(h.clone());
        }
        out
    }

    /// The inequation when there is exactly one.
    fn principal_inequation(&self) -> Option<&Polynomial<Q>> {
        match self.inequations.as_slice() {
            [h] => Some(h),
            _ => None,
        }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[Polynomial<Q>]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
        let eqs = if self.equations.is_empty() {
            "𝔸".to_string()
        } else {
            format!("V({})", join(&self.equations))
        };
        if self.inequations.iter().any(Polynomial::is_constant) {
            write!(f, "{eqs}")
        } else if self.inequations.is_empty() {
            write!(f, "∅")
        } else {
            write!(f, "{eqs} \\ V({})", join(&self.inequations))
        }
    }
}

fn dedup(v: Vec<Polynomial<Q>>) -> Vec<Polynomial<Q>> {
    let mut out: Vec<Polynomial<Q>> = Vec::new();
    for p in v {
        if !p.is_zero() && !out.iter().any(|q| q.monic() == p.monic()) {
            out.push(p);
        }
    }
    out
}

/// Finite union of cells.
#[derive(Clone, Debug)]
pub struct ConstructibleSet {
    ring: Arc<RingSpec>,
    pub cells: Vec<Cell>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CellJson {
    pub equations: Vec<String>,
    pub inequations: Vec<String>,
}

impl ConstructibleSet {
    pub fn empty(ring: &Arc<RingSpec>) -> Self {
        ConstructibleSet {
            ring: ring.clone(),
            cells: vec![],
        }
    }

    pub fn whole(ring: &Arc<RingSpec>) -> Self {
        Self::from_cell(Cell::whole(ring))
    }

    pub fn from_cell(c: Cell) -> Self {
        ConstructibleSet {
            ring: c.ring.clone(),
            cells: vec![c],
        }
    }

    pub fn closed(ring: &Arc<RingSpec>, eqs: Vec<Polynomial<Q>>) -> Self {
        Self::from_cell(Cell::closed(ring, eqs))
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    pub fn union(&self, other: &ConstructibleSet) -> Self {
        let mut cells = self.cells.clone();
        cells.extend(other.cells.iter().cloned());
        ConstructibleSet {
            ring: self.ring.clone(),
            cells,
        }
    }

    pub fn intersect(&self, other: &ConstructibleSet) -> Self {
        let mut cells = Vec::new();
        for a in &self.cells {
            for b in &other.cells {
                cells.push(a.intersect(b));
            }
        }
        ConstructibleSet {
            ring: self.ring.clone(),
            cells,
        }
    }

    pub fn complement(&self) -> Self {
        let mut acc = ConstructibleSet::whole(&self.ring);
        for c in &self.cells {
            acc = acc.intersect(&c.complement());
        }
        acc
    }

    pub fn difference(&self, other: &ConstructibleSet) -> Self {
        self.intersect(&other.complement())
    }

    /// Drop empty cells.
    pub fn pruned(&self, budget: Budget) -> Result<Self, GbError> {
        let mut cells = Vec::new();
        for c in &self.cells {
            if !c.is_empty(budget)? {
                cells.push(c.clone());
            }
        }
        Ok(ConstructibleSet {
            ring: self.ring.clone(),
            cells,
        })
    }

    pub fn is_empty(&self, budget: Budget) -> Result<bool, GbError> {
        for c in &self.cells {
            if !c.is_empty(budget)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `self \ other`, dropping empty cells after removing each cell of `other`
    /// so the product expansion stays small.
    pub fn difference_pruned(&self, other: &ConstructibleSet, budget: Budget) -> Result<Self, GbError> {
        let mut acc = self.pruned(budget)?;
        for c in &other.cells {
            if acc.cells.is_empty() {
                break;
            }
            acc = acc.intersect(&c.complement()).pruned(budget)?;
        }
        Ok(acc)
    }

    /// Equal as sets over the algebraic closure.
    pub fn same_set(&self, other: &ConstructibleSet, budget: Budget) -> Result<bool, GbError> {
        Ok(self.is_subset(other, budget)? && other.is_subset(self, budget)?)
    }

    pub fn is_subset(&self, other: &ConstructibleSet, budget: Budget) -> Result<bool, GbError> {
        Ok(self.difference_pruned(other, budget)?.cells.is_empty())
    }

    pub fn contains_point(&self, p: &[Q]) -> Result<bool, PolyError> {
        for c in &self.cells {
            if c.contains_point(p)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    pub fn to_json(&self) -> Vec<CellJson> {
        self.cells
            .iter()
            .map(|c| CellJson {
                equations: c.equations.iter().map(ToString::to_string).collect(),
                inequations: c.inequations.iter().map(ToString::to_string).collect(),
            })
            .collect()
    }
}

impl fmt::Display for ConstructibleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cells.is_empty() {
            return write!(f, "∅");
        }
        let parts: Vec<String> = self.cells.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(" ∪ "))
    }
}

// ---------------------------------------------------------------------------
// comprehensive Gröbner systems

/// One branch of a Gröbner system.
#[derive(Clone, Debug)]
pub struct GsBranch {
    pub cell: Cell,
    /// Elements of `A[X]` whose specializations form a Gröbner basis of the
    /// fiber ideal at every point of the cell; `[1]` for empty fibers.
    pub basis: Vec<Polynomial<Q>>,
    /// Leading fiber monomials of the specialized basis.
    pub leading: Vec<Monomial>,
    /// Krull dimension of the fibers over the cell; `None` when they are empty.
    pub fiber_dim: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct GroebnerSystem {
    ring: Arc<RingSpec>,
    pub branches: Vec<GsBranch>,
    /// The cells cover the region the system was started on.
    pub covering: bool,
}

/// Limits for case splits.
#[derive(Clone, Copy, Debug)]
pub struct GsOptions {
    pub budget: Budget,
    pub max_cells: usize,
}

impl Default for GsOptions {
    fn default() -> Self {
        GsOptions {
            budget: Budget::default(),
            max_cells: 256,
        }
    }
}

/// Block order with the fiber variables (weighted degrevlex) above the parameters.
pub fn fiber_over_base_order(ring: &RingSpec) -> TermOrder {
    let m = ring.m();
    TermOrder::Block(vec![
        (ring.var_range().collect(), TermOrder::WeightedDegRevLex(ring.weights().to_vec())),
        ((0..m).collect(), TermOrder::DegRevLex),
    ])
}

/// The order used on fibers, matching the fiber block above.
pub fn fiber_order(ring: &RingSpec) -> TermOrder {
    TermOrder::WeightedDegRevLex(ring.weights().to_vec())
}

/// Leading fiber monomial and its coefficient in `A` under the block order.
fn lead_over_base(g: &Polynomial<Q>, ord: &TermOrder, base: &Arc<RingSpec>) -> (Monomial, Polynomial<Q>) {
    let m = g.ring().m();
    let lm = &g.leading_term_under(ord).expect("nonzero").0;
    let x = Monomial::from_exponents(&lm.exponents()[m..]);
    let terms = g
        .terms()
        .iter()
        .filter(|(mono, _)| mono.exponents()[m..] == *x.exponents())
        .map(|(mono, c)| (Monomial::from_exponents(&mono.exponents()[..m]), c.clone()))
        .collect();
    (x, Polynomial::from_terms(base, terms))
}

/// Gröbner system of `gens ⊆ A[X]` over the region `start`, by recursive
/// splitting on leading coefficients: a reduced basis of `gens + E` under
/// fiber-over-base order, its part in `A` (where fibers are empty), a generic
/// branch where all leading coefficients of a minimal basis are nonzero, and
/// one branch per coefficient, lowest degree first, made disjoint from the
/// earlier ones.
pub fn comprehensive_gs_on(
    ring: &Arc<RingSpec>,
    gens: &[Polynomial<Q>],
    start: &ConstructibleSet,
    opts: GsOptions,
) -> Result<GroebnerSystem, SingError> {
    let base = ring.base_ring();
    let ord = fiber_over_base_order(ring);
    let mut out = Vec::new();
    let mut covering = true;
    for c in &start.cells {
        for cell in c.split_principal() {
            let n = cell.principal_inequation().cloned().expect("principal");
            cgs_rec(ring, &base, &ord, gens, cell.equations.clone(), n, opts, &mut out, &mut covering)?;
        }
    }
    Ok(GroebnerSystem {
        ring: ring.clone(),
        branches: out,
        covering,
    })
}

/// Gröbner system over the whole parameter space.
pub fn comprehensive_gs(pa: &PositiveAlgebra, opts: GsOptions) -> Result<GroebnerSystem, SingError> {
    let base = pa.ring().base_ring();
    comprehensive_gs_on(pa.ring(), pa.generators(), &ConstructibleSet::whole(&base), opts)
}

#[allow(clippy::too_many_arguments)]
fn cgs_rec(
    ring: &Arc<RingSpec>,
    base: &Arc<RingSpec>,
    ord: &TermOrder,
    gens: &[Polynomial<Q>],
    eqs: Vec<Polynomial<Q>>,
    nonzero: Polynomial<Q>,
    opts: GsOptions,
    out: &mut Vec<GsBranch>,
    covering: &mut bool,
) -> Result<(), SingError> {
    let here = Cell::new(base, eqs.clone(), vec![nonzero.clone()]);
    if here.is_empty(opts.budget)? {
        return Ok(());
    }
    if out.len() >= opts.max_cells {
        *covering = false;
        return Err(SingError::TooManyCells(opts.max_cells));
    }
    let m = ring.m();
    let k = ring.k();
    let mut input: Vec<Polynomial<Q>> = gens.to_vec();
    for e in &eqs {
        input.push(e.rebase_by_name(ring)?);
    }
    let gb = GroebnerBasis::compute(ring, &input, ord, opts.budget)?;
    let elems = gb.elements();
    let (in_base, in_fiber): (Vec<_>, Vec<_>) = elems.into_iter().partition(|p| p.support().iter().all(|&i| i < m));
    let gr: Vec<Polynomial<Q>> = in_base
        .iter()
        .map(|p| p.rebase_by_name(base))
        .collect::<Result<_, _>>()?;
    // points of V(E) outside V(G_r) have empty fibers
    let empty_part = Cell::new(base, eqs.clone(), gr.iter().map(|g| g.mul(&nonzero)).collect());
    if !gr.is_empty() && !empty_part.is_empty(opts.budget)? {
        out.push(GsBranch {
            cell: empty_part,
            basis: vec![Polynomial::one(ring)],
            leading: vec![Monomial::one(k)],
            fiber_dim: None,
        });
    }
    let mut gr_eqs = eqs.clone();
    gr_eqs.extend(gr.iter().cloned());
    let gr_eqs = dedup(gr_eqs);
    if in_fiber.is_empty() {
        // fibers are all of 𝔸^k
        out.push(GsBranch {
            cell: Cell::new(base, gr_eqs, vec![nonzero]),
            basis: vec![],
            leading: vec![],
            fiber_dim: Some(k),
        });
        return Ok(());
    }
    // minimal basis with respect to leading fiber monomials
    let leads: Vec<(Monomial, Polynomial<Q>)> = in_fiber.iter().map(|g| lead_over_base(g, ord, base)).collect();
    let mut minimal: Vec<usize> = Vec::new();
    for (i, (x, _)) in leads.iter().enumerate() {
        let dominated = leads.iter().enumerate().any(|(j, (y, _))| {
            j != i && y.divides(x) && (y != x || j < i)
        });
        if !dominated {
            minimal.push(i);
        }
    }
    let mut split: Vec<Polynomial<Q>> = Vec::new();
    for &i in &minimal {
        let h = &leads[i].1;
        if h.is_constant() {
            continue;
        }
        // decided: nonzero everywhere on the cell
        let meets = Cell::new(base, {
            let mut e = gr_eqs.clone();
            e.push(h.clone());
            e
        }, vec![nonzero.clone()]);
        if meets.is_empty(opts.budget)? {
            continue;
        }
        if !split.iter().any(|s| s.monic() == h.monic()) {
            split.push(h.clone());
        }
    }
    split.sort_by_key(|h| (h.total_degree(), h.len()));
    let prod = split.iter().fold(nonzero.clone(), |acc, h| acc.mul(h));
    let generic = Cell::new(base, gr_eqs.clone(), vec![prod]);
    if !generic.is_empty(opts.budget)? {
        let lm: Vec<Monomial> = minimal.iter().map(|&i| leads[i].0.clone()).collect();
        let dim = monomial_dimension(&lm, k);
        out.push(GsBranch {
            cell: generic,
            basis: in_fiber.clone(),
            leading: lm,
            fiber_dim: dim,
        });
    }
    let mut guard = nonzero;
    for h in split {
        let mut e = gr_eqs.clone();
        e.push(h.clone());
        cgs_rec(ring, base, ord, gens, e, guard.clone(), opts, out, covering)?;
        guard = guard.mul(&h);
    }
    Ok(())
}

impl GroebnerSystem {
    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    /// Branch whose cell contains `gamma`.
    pub fn branch_at(&self, gamma: &[Q]) -> Result<Option<&GsBranch>, PolyError> {
        for b in &self.branches {
            if b.cell.contains_point(gamma)? {
                return Ok(Some(b));
            }
        }
        Ok(None)
    }

    /// Union of the cells whose fibers have dimension exactly `d`.
    pub fn stratum(&self, d: usize) -> ConstructibleSet {
        let base = self.ring.base_ring();
        ConstructibleSet {
            ring: base,
            cells: self
                .branches
                .iter()
                .filter(|b| b.fiber_dim == Some(d))
                .map(|b| b.cell.clone())
                .collect(),
        }
    }

    /// Union of the cells with fiber dimension at least `d`.
    pub fn at_least(&self, d: usize) -> ConstructibleSet {
        let base = self.ring.base_ring();
        ConstructibleSet {
            ring: base,
            cells: self
                .branches
                .iter()
                .filter(|b| b.fiber_dim.is_some_and(|x| x >= d))
                .map(|b| b.cell.clone())
                .collect(),
        }
    }

    /// At `gamma`: the specialized basis of its branch is a Gröbner basis of
    /// the fiber ideal and has the branch's leading monomials.
    pub fn check_at(&self, pa_gens: &[Polynomial<Q>], gamma: &[Q]) -> Result<bool, SingError> {
        let Some(b) = self.branch_at(gamma)? else {
            return Ok(false);
        };
        let fiber = self.ring.fiber_ring();
        let ord = fiber_order(&self.ring);
        let spec: Vec<Polynomial<Q>> = b
            .basis
            .iter()
            .map(|g| g.specialize_into(gamma, &fiber))
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .filter(|p| !p.is_zero())
            .collect();
        let terms: Vec<_> = spec.iter().map(|p| p.monic().terms_under(&ord)).collect();
        if !is_groebner(&terms, &ord) {
            return Ok(false);
        }
        // same ideal as the fiber ideal
        let fid = Ideal::new(&fiber, spec.clone())?;
        let direct: Vec<Polynomial<Q>> = pa_gens
            .iter()
            .map(|g| g.specialize_into(gamma, &fiber))
            .collect::<Result<_, _>>()?;
        let direct = Ideal::new(&fiber, direct)?;
        if !fid.equals(&direct)? {
            return Ok(false);
        }
        let lms: Vec<Monomial> = terms.iter().map(|t| t[0].0.clone()).collect();
        Ok(monomial_dimension(&lms, self.ring.k()) == b.fiber_dim)
    }
}

// ---------------------------------------------------------------------------
// Sing_0

/// The matrix of linear parts specialized to `Γ`, and its rank.
pub fn lin_rank_at(pa: &PositiveAlgebra, gamma: &[Q]) -> Result<usize, SingError> {
    Ok(pa.lin_coeff_matrix().specialize(gamma)?.rank())
}

fn to_base(ring: &Arc<RingSpec>, gens: Vec<Polynomial<Q>>) -> Result<Vec<Polynomial<Q>>, PolyError> {
    let base = ring.base_ring();
    gens.iter().map(|g| g.rebase_by_name(&base)).collect()
}

/// Ideal of `A` cutting out `Sing_0` when `Spec R` is equidimensional of
/// dimension `d`: the `(n − d)`-minors of the linear-part matrix.
pub fn sing0_equidimensional(pa: &PositiveAlgebra, d: usize) -> Result<Ideal, SingError> {
    let l = pa.lin_coeff_matrix();
    let bound = pa.n().checked_sub(d).unwrap_or(0);
    let rank = l.generic_rank();
    if rank > bound {
        return Err(SingError::RankExceeds { rank, bound, dim: d });
    }
    let base = pa.ring().base_ring();
    let gens = to_base(pa.ring(), l.minors(bound))?;
    Ok(Ideal::new(&base, gens)?.with_budget(pa.ideal().budget()))
}

/// `Γ_0` is a singular point of `Spec R`: `rank 𝓛(G_Γ) < n − d_{Γ_0}`.
pub fn sing0_point_test(pa: &PositiveAlgebra, gamma: &[Q], d_zero: Option<usize>) -> Result<bool, SingError> {
    let d = match d_zero {
        Some(d) => d,
        None => pa.dimension_at_zero_point(gamma)?,
    };
    Ok((lin_rank_at(pa, gamma)? as i64) < pa.n() as i64 - d as i64)
}

/// Certified decomposition data.
#[derive(Clone, Debug)]
pub struct ComponentData {
    pub components: Vec<Component>,
    pub radical: Option<Vec<Polynomial<Q>>>,
}

impl ComponentData {
    pub fn from_algebra(pa: &PositiveAlgebra) -> Result<Self, SingError> {
        Ok(ComponentData {
            components: pa.components.clone().ok_or(SingError::MissingComponents)?,
            radical: pa.radical.clone(),
        })
    }

    /// Each prime contains `I`; the radical lies between `I` and `Rad(I)`;
    /// the intersection of the primes lies in `Rad(I)`.
    pub fn verify(&self, pa: &PositiveAlgebra) -> Result<(), SingError> {
        let ring = pa.ring();
        let budget = pa.ideal().budget();
        for (i, c) in self.components.iter().enumerate() {
            let p = Ideal::new(ring, c.prime.clone())?.with_budget(budget);
            for g in pa.generators() {
                if !p.contains_poly(g)? {
                    return Err(SingError::ComponentMissesIdeal {
                        index: i,
                        witness: g.to_string(),
                    });
                }
            }
        }
        if let Some(r) = &self.radical {
            let j = Ideal::new(ring, r.clone())?.with_budget(budget);
            for g in pa.generators() {
                if !j.contains_poly(g)? {
                    return Err(SingError::RadicalMissesIdeal(g.to_string()));
                }
            }
            for g in r {
                if !pa.ideal().radical_contains(g)? {
                    return Err(SingError::RadicalTooBig(g.to_string()));
                }
            }
        }
        let mut acc: Option<Ideal> = None;
        for c in &self.components {
            let p = Ideal::new(ring, c.prime.clone())?.with_budget(budget);
            acc = Some(match acc {
                None => p,
                Some(a) => a.intersect(&p)?,
            });
        }
        if let Some(all) = acc {
            for g in all.generators() {
                if !pa.ideal().radical_contains(g)? {
                    return Err(SingError::ComponentsIncomplete(g.to_string()));
                }
            }
        }
        Ok(())
    }
}

/// Full Jacobian (all `n` variables) of `gens`.
pub fn full_jacobian(ring: &Arc<RingSpec>, gens: &[Polynomial<Q>]) -> PolyMatrix {
    let mut j = PolyMatrix::zeros(ring, gens.len(), ring.n());
    for (i, g) in gens.iter().enumerate() {
        for v in 0..ring.n() {
            j.set(i, v, g.derivative(v));
        }
    }
    j
}

/// Relative Jacobian `(∂g_i/∂x_j)` over the fiber variables.
pub fn relative_jacobian(ring: &Arc<RingSpec>, gens: &[Polynomial<Q>]) -> PolyMatrix {
    let m = ring.m();
    let mut j = PolyMatrix::zeros(ring, gens.len(), ring.k());
    for (i, g) in gens.iter().enumerate() {
        for v in 0..ring.k() {
            j.set(i, v, g.derivative(m + v));
        }
    }
    j
}

/// `r × r` minors of the relative Jacobian.
pub fn jacobian_minors(ideal: &Ideal, r: usize) -> Ideal {
    let j = relative_jacobian(ideal.ring(), ideal.generators());
    Ideal::new(ideal.ring(), j.minors(r))
        .expect("same ring")
        .with_budget(ideal.budget())
}

/// Vanishing ideal of `Sing_0` from certified components: zero points on two
/// components or in the non-reduced locus, or singular on their component.
///
/// The part for component `p` of dimension `d` is `p + I_{n−d}(Jac p)`
/// restricted to the zero section; the rest is
/// `((I : Rad I) ∩ ⋂ (p_i + p_j))` restricted to the zero section.
pub fn sing0_general(pa: &PositiveAlgebra, data: &ComponentData, reduced: bool) -> Result<Ideal, SingError> {
    data.verify(pa)?;
    let ring = pa.ring();
    let base = ring.base_ring();
    let budget = pa.ideal().budget();
    let xs: Vec<usize> = ring.var_range().collect();
    let nonreduced = match (&data.radical, reduced) {
        (Some(r), _) => pa.ideal().quotient(&Ideal::new(ring, r.clone())?)?,
        (None, true) => Ideal::unit(ring).with_budget(budget),
        (None, false) => return Err(SingError::MissingRadical),
    };
    let mut q = nonreduced;
    let primes: Vec<Ideal> = data
        .components
        .iter()
        .map(|c| Ideal::new(ring, c.prime.clone()).map(|i| i.with_budget(budget)))
        .collect::<Result<_, _>>()?;
    for i in 0..primes.len() {
        for j in i + 1..primes.len() {
            q = q.intersect(&primes[i].sum(&primes[j])?)?;
        }
    }
    let restrict = |id: &Ideal| -> Result<Ideal, SingError> {
        let gens = to_base(ring, id.set_to_zero(&xs).generators().to_vec())?;
        Ok(Ideal::new(&base, gens)?.with_budget(budget))
    };
    let mut acc = restrict(&q)?;
    for (c, p) in data.components.iter().zip(&primes) {
        let r = pa.n().saturating_sub(c.dim);
        let jac = full_jacobian(ring, &c.prime);
        let part = p.add_generators(&jac.minors(r))?;
        acc = acc.intersect(&restrict(&part)?)?;
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// Sing_v and Sing_s

/// The origin of `F_Γ` is singular: `rank 𝓛(G_Γ) < k − d_{F_Γ}`.
pub fn singv_point_test(pa: &PositiveAlgebra, gamma: &[Q]) -> Result<bool, SingError> {
    let d = pa.fiber_dimension(gamma)?;
    Ok((lin_rank_at(pa, gamma)? as i64) < pa.k() as i64 - d as i64)
}

/// `{Γ : rank 𝓛(G_Γ) < k − d}` as a closed set of the parameter space.
fn low_rank_locus(pa: &PositiveAlgebra, d: usize) -> Result<ConstructibleSet, SingError> {
    let base = pa.ring().base_ring();
    let r = pa.k().saturating_sub(d);
    let l = pa.lin_coeff_matrix();
    let minors = l.minors(r);
    if r > 0 && minors.is_empty() {
        return Ok(ConstructibleSet::whole(&base));
    }
    Ok(ConstructibleSet::closed(&base, to_base(pa.ring(), minors)?))
}

/// `Sing_v` together with the Gröbner system it was read off from.
pub fn singv_set_with(pa: &PositiveAlgebra, gs: &GroebnerSystem, budget: Budget) -> Result<ConstructibleSet, SingError> {
    let base = pa.ring().base_ring();
    let mut out = ConstructibleSet::empty(&base);
    for d in 0..=pa.k() {
        let ud = gs.stratum(d);
        if ud.cells.is_empty() {
            continue;
        }
        let td = low_rank_locus(pa, d)?;
        out = out.union(&td.intersect(&ud));
    }
    Ok(out.pruned(budget)?)
}

pub fn singv_set(pa: &PositiveAlgebra, opts: GsOptions) -> Result<ConstructibleSet, SingError> {
    let gs = comprehensive_gs(pa, opts)?;
    singv_set_with(pa, &gs, opts.budget)
}

/// `Sing_s`: over each nonempty stratum `U_d` of fiber dimension `d`, the
/// cells where `I + I_{k−d}(Jac)` has positive-dimensional fibers.
pub fn sings_set_with(pa: &PositiveAlgebra, gs: &GroebnerSystem, opts: GsOptions) -> Result<ConstructibleSet, SingError> {
    let base = pa.ring().base_ring();
    let mut out = ConstructibleSet::empty(&base);
    for d in 0..=pa.k() {
        let ud = gs.stratum(d);
        if ud.cells.is_empty() {
            continue;
        }
        let jac = jacobian_minors(pa.ideal(), pa.k() - d);
        let mut gens = pa.generators().to_vec();
        gens.extend(jac.generators().iter().cloned());
        let sub = comprehensive_gs_on(pa.ring(), &gens, &ud, opts)?;
        for b in &sub.branches {
            if b.fiber_dim.is_some_and(|x| x >= 1) {
                out.cells.push(b.cell.clone());
            }
        }
    }
    Ok(out.pruned(opts.budget)?)
}

pub fn sings_set(pa: &PositiveAlgebra, opts: GsOptions) -> Result<ConstructibleSet, SingError> {
    let gs = comprehensive_gs(pa, opts)?;
    sings_set_with(pa, &gs, opts)
}

/// `F_Γ` is singular at `point` (fiber coordinates), assuming `F_Γ` is
/// equidimensional of dimension `d`: the Jacobian has rank `< k − d` there.
pub fn fiber_point_singular_test(pa: &PositiveAlgebra, gamma: &[Q], point: &[Q], d: usize) -> Result<bool, SingError> {
    let gens = pa.specialized_generators(gamma)?;
    for g in &gens {
        let v = g.evaluate(point)?;
        if !v.is_zero() {
            return Err(SingError::NotOnFiber {
                generator: g.to_string(),
                value: v.to_string(),
            });
        }
    }
    let rank = jacobian_rank_at(&gens, point)?;
    Ok((rank as i64) < pa.k() as i64 - d as i64)
}

/// Rank of the Jacobian of `gens` (all variables of their ring) at `point`.
pub fn jacobian_rank_at(gens: &[Polynomial<Q>], point: &[Q]) -> Result<usize, SingError> {
    let Some(first) = gens.first() else { return Ok(0) };
    let n = first.ring().n();
    let mut entries = Vec::with_capacity(gens.len() * n);
    for g in gens {
        for v in 0..n {
            entries.push(g.derivative(v).evaluate(point)?);
        }
    }
    Ok(ScalarMatrix::new(gens.len(), n, entries)?.rank())
}

/// Sample parameter points from a small integer grid.
pub fn grid_points(m: usize, lo: i64, hi: i64) -> Vec<Vec<Q>> {
    let mut out = vec![vec![]];
    for _ in 0..m {
        let mut next = Vec::new();
        for p in &out {
            for v in lo..=hi {
                let mut q = p.clone();
                q.push(Q::from_integer(v.into()));
                next.push(q);
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests;
