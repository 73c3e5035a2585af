//! Gröbner bases and ideal operations.

pub mod buchberger;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use thiserror::Error;

use crate::polyring::sparse::Terms;
use crate::polyring::{same_ring, Coeff, Monomial, PolyError, Polynomial, RingSpec, TermOrder, Q};

pub use buchberger::{is_groebner, monomial_dimension, GbStats};

/// Hard limits for Gröbner computations. `None` means unlimited.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Budget {
    /// Maximal number of critical pairs taken from the queue.
    pub max_pairs: Option<usize>,
    /// Maximal sugar degree of a processed pair.
    pub max_degree: Option<i64>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget::default()
    }

    pub fn pairs(n: usize) -> Self {
        Budget {
            max_pairs: Some(n),
            max_degree: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GbError {
    #[error("budget exceeded: more than {limit} {what}")]
    BudgetExceeded { what: &'static str, limit: i64 },
    #[error("ring mismatch")]
    RingMismatch,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Reduced Gröbner basis with respect to a fixed order.
#[derive(Clone)]
pub struct GroebnerBasis<C: Coeff = Q> {
    ring: Arc<RingSpec>,
    order: TermOrder,
    /// Monic elements, terms sorted under `order`, ascending by leading monomial.
    basis: Vec<Terms<C>>,
    truncated: bool,
    stats: GbStats,
}

impl<C: Coeff> GroebnerBasis<C> {
    /// Compute a reduced basis of the ideal generated by `gens`.
    pub fn compute(
        ring: &Arc<RingSpec>,
        gens: &[Polynomial<C>],
        order: &TermOrder,
        budget: Budget,
    ) -> Result<Self, GbError> {
        Self::compute_with(ring, gens, order, budget, None, None)
    }

    /// As [`compute`](Self::compute), optionally discarding pairs above a degree
    /// (by `weights`, defaulting to the order's grading).
    pub fn compute_with(
        ring: &Arc<RingSpec>,
        gens: &[Polynomial<C>],
        order: &TermOrder,
        budget: Budget,
        truncate: Option<i64>,
        weights: Option<Vec<i64>>,
    ) -> Result<Self, GbError> {
        for g in gens {
            if !same_ring(g.ring(), ring) {
                return Err(GbError::RingMismatch);
            }
        }
        let input: Vec<Terms<C>> = gens
            .iter()
            .filter(|g| !g.is_zero())
            .map(|g| g.terms_under(order))
            .collect();
        let mut engine = buchberger::Engine::new(order, ring.n(), budget, truncate);
        if let Some(w) = weights {
            engine = engine.with_weights(w);
        }
        let run = engine.run(input)?;
        Ok(GroebnerBasis {
            ring: ring.clone(),
            order: order.clone(),
            basis: run.basis,
            truncated: run.truncated,
            stats: run.stats,
        })
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    pub fn is_reduced(&self) -> bool {
        !self.truncated
    }

    pub fn stats(&self) -> &GbStats {
        &self.stats
    }

    /// Basis elements as ring polynomials (ascending by leading monomial).
    pub fn elements(&self) -> Vec<Polynomial<C>> {
        self.basis
            .iter()
            .map(|t| Polynomial::from_terms(&self.ring, t.clone()))
            .collect()
    }

    /// Term lists sorted under the basis order.
    pub fn raw(&self) -> &[Terms<C>] {
        &self.basis
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        buchberger::leading_monomials(&self.basis)
    }

    /// Leading coefficient and monomial of each element are 1 and lm.
    pub fn is_unit(&self) -> bool {
        self.basis.len() == 1 && self.basis[0][0].0.is_one()
    }

    pub fn normal_form(&self, f: &Polynomial<C>) -> Polynomial<C> {
        assert!(same_ring(f.ring(), &self.ring), "ring mismatch");
        let nf = buchberger::normal_form(f.terms_under(&self.order), &self.basis, &self.order);
        Polynomial::from_terms(&self.ring, nf)
    }

    pub fn reduces_to_zero(&self, f: &Polynomial<C>) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Check the S-polynomial criterion on the stored basis.
    pub fn verify(&self) -> bool {
        buchberger::is_groebner(&self.basis, &self.order)
    }

    /// Krull dimension of the quotient ring, `None` for the unit ideal.
    pub fn krull_dimension(&self) -> Option<usize> {
        monomial_dimension(&self.leading_monomials(), self.ring.n())
    }

    /// Elements whose support avoids the given variable indices.
    pub fn elements_free_of(&self, vars: &[usize]) -> Vec<Polynomial<C>> {
        self.elements()
            .into_iter()
            .filter(|p| p.support().iter().all(|v| !vars.contains(v)))
            .collect()
    }
}

impl<C: Coeff> fmt::Debug for GroebnerBasis<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.elements()).finish()
    }
}

/// Ideal of a polynomial ring over the rationals, with cached Gröbner bases.
pub struct Ideal {
    ring: Arc<RingSpec>,
    gens: Vec<Polynomial<Q>>,
    budget: Budget,
    cache: Mutex<HashMap<TermOrder, Arc<GroebnerBasis<Q>>>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        let cache = self.cache.lock().expect("cache lock").clone();
        Ideal {
            ring: self.ring.clone(),
            gens: self.gens.clone(),
            budget: self.budget,
            cache: Mutex::new(cache),
        }
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        if self.gens.is_empty() {
            write!(f, "0")?;
        }
        write!(f, ">")
    }
}

fn dedup(gens: Vec<Polynomial<Q>>) -> Vec<Polynomial<Q>> {
    let mut out: Vec<Polynomial<Q>> = Vec::with_capacity(gens.len());
    let mut seen = std::collections::HashSet::new();
    for g in gens {
        if !g.is_zero() && seen.insert(g.clone()) {
            out.push(g);
        }
    }
    out
}

impl Ideal {
    /// Zero generators are dropped, duplicates removed; the zero ideal has no generators.
    pub fn new(ring: &Arc<RingSpec>, gens: Vec<Polynomial<Q>>) -> Result<Ideal, GbError> {
        if gens.iter().any(|g| !same_ring(g.ring(), ring)) {
            return Err(GbError::RingMismatch);
        }
        Ok(Ideal {
            ring: ring.clone(),
            gens: dedup(gens),
            budget: Budget::default(),
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn parse<S: AsRef<str>>(ring: &Arc<RingSpec>, gens: &[S]) -> Result<Ideal, GbError> {
        let g = crate::polyring::parse_all(gens, ring)?;
        Ideal::new(ring, g)
    }

    pub fn zero(ring: &Arc<RingSpec>) -> Ideal {
        Ideal::new(ring, Vec::new()).expect("empty generator list")
    }

    pub fn unit(ring: &Arc<RingSpec>) -> Ideal {
        Ideal::new(ring, vec![Polynomial::one(ring)]).expect("same ring")
    }

    pub fn with_budget(mut self, budget: Budget) -> Ideal {
        self.budget = budget;
        self.cache.lock().expect("cache lock").clear();
        self
    }

    pub fn budget(&self) -> Budget {
        self.budget
    }

    fn derived(&self, ring: &Arc<RingSpec>, gens: Vec<Polynomial<Q>>) -> Ideal {
        Ideal {
            ring: ring.clone(),
            gens: dedup(gens),
            budget: self.budget,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial<Q>] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// Reduced Gröbner basis under `order`, cached.
    pub fn groebner(&self, order: &TermOrder) -> Result<Arc<GroebnerBasis<Q>>, GbError> {
        if let Some(gb) = self.cache.lock().expect("cache lock").get(order) {
            return Ok(gb.clone());
        }
        let gb = Arc::new(GroebnerBasis::compute(
            &self.ring,
            &self.gens,
            order,
            self.budget,
        )?);
        self.cache
            .lock()
            .expect("cache lock")
            .insert(order.clone(), gb.clone());
        Ok(gb)
    }

    /// Gröbner basis under the ring's default order.
    pub fn gb(&self) -> Result<Arc<GroebnerBasis<Q>>, GbError> {
        self.groebner(self.ring.default_order())
    }

    pub fn normal_form(&self, f: &Polynomial<Q>) -> Result<Polynomial<Q>, GbError> {
        Ok(self.gb()?.normal_form(f))
    }

    pub fn contains_poly(&self, f: &Polynomial<Q>) -> Result<bool, GbError> {
        if !same_ring(f.ring(), &self.ring) {
            return Err(GbError::RingMismatch);
        }
        if f.is_zero() {
            return Ok(true);
        }
        if self.gens.is_empty() {
            return Ok(false);
        }
        Ok(self.gb()?.reduces_to_zero(f))
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Ideal) -> Result<bool, GbError> {
        if !same_ring(&other.ring, &self.ring) {
            return Err(GbError::RingMismatch);
        }
        for g in &other.gens {
            if !self.contains_poly(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality by double inclusion.
    pub fn equals(&self, other: &Ideal) -> Result<bool, GbError> {
        Ok(self.contains(other)? && other.contains(self)?)
    }

    pub fn is_unit(&self) -> Result<bool, GbError> {
        if self.gens.is_empty() {
            return Ok(false);
        }
        Ok(self.gb()?.is_unit())
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal, GbError> {
        if !same_ring(&other.ring, &self.ring) {
            return Err(GbError::RingMismatch);
        }
        let mut g = self.gens.clone();
        g.extend(other.gens.iter().cloned());
        Ok(self.derived(&self.ring, g))
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal, GbError> {
        if !same_ring(&other.ring, &self.ring) {
            return Err(GbError::RingMismatch);
        }
        let mut g = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                g.push(a.mul(b));
            }
        }
        Ok(self.derived(&self.ring, g))
    }

    pub fn add_generators(&self, extra: &[Polynomial<Q>]) -> Result<Ideal, GbError> {
        if extra.iter().any(|g| !same_ring(g.ring(), &self.ring)) {
            return Err(GbError::RingMismatch);
        }
        let mut g = self.gens.clone();
        g.extend(extra.iter().cloned());
        Ok(self.derived(&self.ring, g))
    }

    /// Ring with the given variables removed, keeping the parameter/fiber split.
    pub fn subring_without(&self, drop: &[usize]) -> Arc<RingSpec> {
        let r = &self.ring;
        let params: Vec<&str> = (0..r.m())
            .filter(|i| !drop.contains(i))
            .map(|i| r.name(i))
            .collect();
        let keep_vars: Vec<usize> = r.var_range().filter(|i| !drop.contains(i)).collect();
        let vars: Vec<&str> = keep_vars.iter().map(|&i| r.name(i)).collect();
        let w: Vec<i64> = keep_vars.iter().map(|&i| r.full_weights()[i]).collect();
        RingSpec::new(&params, &vars, &w).expect("subring of a valid ring")
    }

    /// `I ∩ K[remaining variables]`, as an ideal of the smaller ring.
    pub fn eliminate(&self, drop: &[usize]) -> Result<Ideal, GbError> {
        let target = self.subring_without(drop);
        if drop.is_empty() {
            return Ok(self.derived(&self.ring, self.gens.clone()));
        }
        let keep: Vec<usize> = (0..self.ring.n()).filter(|i| !drop.contains(i)).collect();
        let inner_w: Vec<i64> = keep.iter().map(|&i| self.ring.full_weights()[i]).collect();
        let order = TermOrder::elimination(
            drop.to_vec(),
            keep.clone(),
            TermOrder::WeightedDegRevLex(inner_w),
        );
        let gb = self.groebner(&order)?;
        let mut map = vec![None; self.ring.n()];
        for (j, &i) in keep.iter().enumerate() {
            map[i] = Some(j);
        }
        let gens = gb
            .elements_free_of(drop)
            .into_iter()
            .map(|p| p.rebase(&target, &map))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.derived(&target, gens))
    }

    /// Eliminate variables given by name.
    pub fn eliminate_names<S: AsRef<str>>(&self, drop: &[S]) -> Result<Ideal, GbError> {
        let idx = drop
            .iter()
            .map(|s| {
                self.ring
                    .index_of(s.as_ref())
                    .ok_or_else(|| PolyError::UnknownVariable(s.as_ref().to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        self.eliminate(&idx)
    }

    /// Extend the ring by one fresh fiber variable; returns the lifted ideal,
    /// the new ring and the new variable's index.
    fn lift_with_fresh(&self, stem: &str) -> (Ideal, Arc<RingSpec>, usize) {
        let name = self.ring.fresh_name(stem);
        let big = self
            .ring
            .with_extra_var(&name, 1)
            .expect("fresh name is valid");
        let lifted: Vec<Polynomial<Q>> = self
            .gens
            .iter()
            .map(|g| g.rebase_by_name(&big).expect("superset ring"))
            .collect();
        let idx = big.index_of(&name).expect("just added");
        (self.derived(&big, lifted), big, idx)
    }

    /// `I ∩ J` via `t·I + (1−t)·J` and elimination of `t`.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal, GbError> {
        if !same_ring(&other.ring, &self.ring) {
            return Err(GbError::RingMismatch);
        }
        if self.gens.is_empty() || other.gens.is_empty() {
            return Ok(Ideal::zero(&self.ring).with_budget(self.budget));
        }
        let (lifted, big, t) = self.lift_with_fresh("t");
        let tv = Polynomial::var(&big, t);
        let one_minus_t = Polynomial::one(&big).sub(&tv);
        let mut gens: Vec<Polynomial<Q>> = lifted.gens.iter().map(|g| g.mul(&tv)).collect();
        for g in &other.gens {
            gens.push(g.rebase_by_name(&big)?.mul(&one_minus_t));
        }
        let aux = self.derived(&big, gens);
        let res = aux.eliminate(&[t])?;
        // same variables in the same order: move back to the original ring object
        let back = res
            .gens
            .iter()
            .map(|g| g.rebase_by_name(&self.ring))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.derived(&self.ring, back))
    }

    /// `(I : f)` as `(I ∩ ⟨f⟩) / f`.
    pub fn quotient_poly(&self, f: &Polynomial<Q>) -> Result<Ideal, GbError> {
        if f.is_zero() {
            return Err(GbError::Poly(PolyError::ZeroPolynomial));
        }
        let principal = self.derived(&self.ring, vec![f.clone()]);
        let inter = self.intersect(&principal)?;
        let gens = inter
            .gens
            .iter()
            .map(|g| g.div_exact(f).expect("elements of <f> are multiples of f"))
            .collect();
        Ok(self.derived(&self.ring, gens))
    }

    /// `(I : J) = ⋂ (I : g)` over the generators of `J`.
    pub fn quotient(&self, other: &Ideal) -> Result<Ideal, GbError> {
        let mut acc: Option<Ideal> = None;
        for g in &other.gens {
            let q = self.quotient_poly(g)?;
            acc = Some(match acc {
                None => q,
                Some(a) => a.intersect(&q)?,
            });
        }
        Ok(acc.unwrap_or_else(|| Ideal::unit(&self.ring).with_budget(self.budget)))
    }

    /// `f ∈ Rad(I)` by testing `1 ∈ I + ⟨1 − y·f⟩`.
    pub fn radical_contains(&self, f: &Polynomial<Q>) -> Result<bool, GbError> {
        if f.is_zero() {
            return Ok(true);
        }
        if self.contains_poly(f)? {
            return Ok(true);
        }
        let (lifted, big, y) = self.lift_with_fresh("y");
        let fy = f.rebase_by_name(&big)?.mul(&Polynomial::var(&big, y));
        let extra = Polynomial::one(&big).sub(&fy);
        lifted.add_generators(&[extra])?.is_unit()
    }

    /// `J ⊆ Rad(I)`.
    pub fn radical_contains_ideal(&self, other: &Ideal) -> Result<bool, GbError> {
        for g in &other.gens {
            if !self.radical_contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Smallest `e ≤ max_exp` with `f^e ∈ I`.
    pub fn power_membership(&self, f: &Polynomial<Q>, max_exp: u32) -> Result<Option<u32>, GbError> {
        let mut p = f.clone();
        for e in 1..=max_exp {
            if self.contains_poly(&p)? {
                return Ok(Some(e));
            }
            p = p.mul(f);
        }
        Ok(None)
    }

    /// Krull dimension of `P/I`; `None` when `I` is the unit ideal.
    pub fn krull_dimension(&self) -> Result<Option<usize>, GbError> {
        if self.gens.is_empty() {
            return Ok(Some(self.ring.n()));
        }
        Ok(self.gb()?.krull_dimension())
    }

    /// Substitute 0 for the given variables.
    pub fn set_to_zero(&self, vars: &[usize]) -> Ideal {
        let vals: Vec<(usize, Q)> = vars.iter().map(|&i| (i, Q::from_integer(0.into()))).collect();
        let gens = self.gens.iter().map(|g| g.partial_evaluate(&vals)).collect();
        self.derived(&self.ring, gens)
    }

    /// Move into a ring containing all variable names of this one.
    pub fn rebase_by_name(&self, target: &Arc<RingSpec>) -> Result<Ideal, GbError> {
        let gens = self
            .gens
            .iter()
            .map(|g| g.rebase_by_name(target))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.derived(target, gens))
    }

    /// Minimal homogeneous generators: in increasing weighted degree, drop each
    /// generator that lies in the ideal of the others of lower or equal degree.
    /// `truncate` bounds the degree of the intermediate bases.
    pub fn minimal_generators(&self, truncate: Option<i64>) -> Result<(Vec<Polynomial<Q>>, bool), GbError> {
        let w = self.ring.full_weights().to_vec();
        let mut gens = self.gens.clone();
        gens.sort_by(|a, b| {
            let da = a.terms().first().map(|t| t.0.weighted_degree(&w)).unwrap_or(0);
            let db = b.terms().first().map(|t| t.0.weighted_degree(&w)).unwrap_or(0);
            da.cmp(&db).then_with(|| a.len().cmp(&b.len()))
        });
        let mut kept: Vec<Polynomial<Q>> = Vec::new();
        let mut truncated_any = false;
        let order = self.ring.default_order().clone();
        for g in gens {
            let deg = g.terms().first().map(|t| t.0.weighted_degree(&w)).unwrap_or(0);
            if kept.is_empty() {
                kept.push(g);
                continue;
            }
            let bound = truncate.map(|t| t.min(deg)).or(Some(deg));
            let gb = GroebnerBasis::compute_with(
                &self.ring,
                &kept,
                &order,
                self.budget,
                bound,
                Some(w.clone()),
            )?;
            truncated_any |= gb.is_truncated();
            if !gb.reduces_to_zero(&g) {
                kept.push(g);
            }
        }
        Ok((kept, truncated_any))
    }
}

/// Whether `gens` generate the unit ideal, for any coefficient field.
pub fn generates_unit<C: Coeff>(
    ring: &Arc<RingSpec>,
    gens: &[Polynomial<C>],
    budget: Budget,
) -> Result<bool, GbError> {
    if gens.is_empty() {
        return Ok(false);
    }
    let gb = GroebnerBasis::compute(ring, gens, ring.default_order(), budget)?;
    Ok(gb.is_unit())
}

#[allow(dead_code)]
fn assert_send_sync() {
    fn f<T: Send + Sync>() {}
    f::<Ideal>();
    f::<GroebnerBasis<Q>>();
}

#[cfg(test)]
mod tests;
