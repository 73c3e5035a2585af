//! Buchberger's algorithm with normal pair selection and the Gebauer–Möller
//! installation of criteria. Generic over the coefficient field. Over the
//! rationals, working polynomials are kept primitive with integer
//! coefficients; output is monic.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::polyring::sparse::{self, Terms};
use crate::polyring::{Coeff, Monomial, TermOrder};

use super::{Budget, GbError};

#[derive(Clone, Debug, Default)]
pub struct GbStats {
    pub pairs_considered: usize,
    pub pairs_reduced: usize,
    pub zero_reductions: usize,
    pub max_sugar: i64,
}

pub struct GbRun<C: Coeff> {
    /// Reduced monic basis sorted ascending by leading monomial.
    pub basis: Vec<Terms<C>>,
    pub truncated: bool,
    pub stats: GbStats,
}

struct Elem<C: Coeff> {
    terms: Terms<C>,
    lm: Monomial,
    mask: u64,
    sugar: i64,
    active: bool,
}

#[derive(Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: i64,
}

pub struct Engine<'a, C: Coeff> {
    ord: &'a TermOrder,
    weights: Vec<i64>,
    budget: Budget,
    truncate: Option<i64>,
    elems: Vec<Elem<C>>,
    pairs: Vec<Pair>,
    truncated: bool,
    stats: GbStats,
}

fn wdeg(m: &Monomial, w: &[i64]) -> i64 {
    m.weighted_degree(w)
}

impl<'a, C: Coeff> Engine<'a, C> {
    pub fn new(ord: &'a TermOrder, n: usize, budget: Budget, truncate: Option<i64>) -> Self {
        Engine {
            ord,
            weights: ord.sugar_weights(n),
            budget,
            truncate,
            elems: Vec::new(),
            pairs: Vec::new(),
            truncated: false,
            stats: GbStats::default(),
        }
    }

    /// Use a specific grading for sugar and truncation degrees.
    pub fn with_weights(mut self, w: Vec<i64>) -> Self {
        self.weights = w;
        self
    }

    fn sugar_of(&self, t: &Terms<C>) -> i64 {
        t.iter()
            .map(|(m, _)| wdeg(m, &self.weights))
            .max()
            .unwrap_or(0)
    }

    /// Reduction against the active elements. With `full` the tail is
    /// reduced as well; otherwise only the leading term.
    fn reduce(&self, mut rest: Terms<C>, full: bool) -> Terms<C> {
        let mut done: Terms<C> = Vec::new();
        let mut steps = 0usize;
        while let Some((lm, lc)) = rest.first() {
            let mask = lm.support_mask();
            // smallest leading monomial first: short reducers keep coefficients small
            let reducer = self
                .elems
                .iter()
                .filter(|e| e.active && (e.mask & !mask) == 0 && e.lm.divides(lm))
                .min_by(|x, y| self.ord.cmp(&x.lm, &y.lm));
            match reducer {
                Some(e) => {
                    let t = e.lm.quotient_of(lm).expect("divides");
                    let c = lc.div(&e.terms[0].1);
                    rest = sparse::sub_mul(&rest, &c, &t, &e.terms, self.ord);
                    steps += 1;
                    if C::HAS_CONTENT && steps % 4 == 0 {
                        rescale(&mut done, &mut rest);
                    }
                }
                None if full => done.push(rest.remove(0)),
                None => {
                    done.append(&mut rest);
                    break;
                }
            }
        }
        if C::HAS_CONTENT {
            rescale(&mut done, &mut rest);
        }
        done
    }

    fn spoly(&self, p: &Pair) -> Terms<C> {
        let a = &self.elems[p.i];
        let b = &self.elems[p.j];
        let ta = a.lm.quotient_of(&p.lcm).expect("lcm");
        let tb = b.lm.quotient_of(&p.lcm).expect("lcm");
        let ca = a.terms[0].1.clone();
        let cb = b.terms[0].1.clone();
        // cb * ta * a - ca * tb * b, leading terms cancel
        let left: Terms<C> = a.terms[1..]
            .iter()
            .map(|(m, c)| (m.mul(&ta), c.mul(&cb)))
            .collect();
        sparse::sub_mul(&left, &ca, &tb, &b.terms[1..], self.ord)
    }

    /// Normal strategy: smallest lcm first, then sugar, then age.
    fn pair_key_cmp(&self, x: &Pair, y: &Pair) -> Ordering {
        self.ord
            .cmp(&x.lcm, &y.lcm)
            .then_with(|| x.sugar.cmp(&y.sugar))
            .then_with(|| (x.j, x.i).cmp(&(y.j, y.i)))
    }

    /// Gebauer–Möller update for a new element `h` (already pushed).
    fn update(&mut self, h: usize) {
        let lh = self.elems[h].lm.clone();
        let sh = self.elems[h].sugar;
        let mut cands: Vec<Pair> = Vec::new();
        for g in 0..h {
            if !self.elems[g].active {
                continue;
            }
            let lcm = lh.lcm(&self.elems[g].lm);
            let sugar = (sh + wdeg(&lcm, &self.weights) - wdeg(&lh, &self.weights)).max(
                self.elems[g].sugar + wdeg(&lcm, &self.weights)
                    - wdeg(&self.elems[g].lm, &self.weights),
            );
            cands.push(Pair {
                i: g,
                j: h,
                lcm,
                sugar,
            });
        }
        // chain criterion among the new pairs
        let mut kept: Vec<Pair> = Vec::new();
        for idx in 0..cands.len() {
            let p = &cands[idx];
            let coprime = self.elems[p.i].lm.is_coprime(&lh);
            let dominated_later = cands[idx + 1..].iter().any(|q| q.lcm.divides(&p.lcm));
            let dominated_kept = kept.iter().any(|q| q.lcm.divides(&p.lcm));
            if coprime || (!dominated_later && !dominated_kept) {
                kept.push(p.clone());
            }
        }
        kept.retain(|p| !self.elems[p.i].lm.is_coprime(&lh));
        // old pairs made redundant by h
        let elems = &self.elems;
        self.pairs.retain(|p| {
            if !lh.divides(&p.lcm) {
                return true;
            }
            let l1 = elems[p.i].lm.lcm(&lh);
            let l2 = elems[p.j].lm.lcm(&lh);
            l1 == p.lcm || l2 == p.lcm
        });
        self.pairs.extend(kept);
        for g in 0..h {
            if self.elems[g].active && lh.divides(&self.elems[g].lm) {
                self.elems[g].active = false;
            }
        }
    }

    fn insert(&mut self, mut t: Terms<C>, sugar: i64) -> bool {
        let mut none = Vec::new();
        rescale(&mut t, &mut none);
        let lm = t[0].0.clone();
        let is_unit = lm.is_one();
        self.elems.push(Elem {
            mask: lm.support_mask(),
            lm,
            terms: t,
            sugar,
            active: true,
        });
        let h = self.elems.len() - 1;
        self.update(h);
        is_unit
    }

    /// Run to completion on the given generators (sorted under `ord`).
    pub fn run(mut self, gens: Vec<Terms<C>>) -> Result<GbRun<C>, GbError> {
        let mut gens: Vec<Terms<C>> = gens.into_iter().filter(|g| !g.is_empty()).collect();
        // smallest leading terms first keeps early reductions cheap
        gens.sort_by(|a, b| self.ord.cmp(&a[0].0, &b[0].0));
        // inputs enter unreduced; pair reduction and the final inter-reduction
        // take care of redundancy, and coefficients stay small meanwhile
        for g in gens {
            let sugar = self.sugar_of(&g);
            if self.insert(g, sugar) {
                return Ok(self.unit_result());
            }
        }
        while !self.pairs.is_empty() {
            let best = (0..self.pairs.len())
                .min_by(|&a, &b| self.pair_key_cmp(&self.pairs[a], &self.pairs[b]))
                .expect("nonempty");
            let p = self.pairs.swap_remove(best);
            self.stats.pairs_considered += 1;
            if let Some(limit) = self.budget.max_pairs {
                if self.stats.pairs_considered > limit {
                    return Err(GbError::BudgetExceeded {
                        what: "pairs",
                        limit: limit as i64,
                    });
                }
            }
            if let Some(t) = self.truncate {
                if p.sugar > t {
                    self.truncated = true;
                    continue;
                }
            }
            if let Some(limit) = self.budget.max_degree {
                if p.sugar > limit {
                    return Err(GbError::BudgetExceeded {
                        what: "degree",
                        limit,
                    });
                }
            }
            self.stats.max_sugar = self.stats.max_sugar.max(p.sugar);
            self.stats.pairs_reduced += 1;
            let s = self.spoly(&p);
            let r = self.reduce(s, true);
            if r.is_empty() {
                self.stats.zero_reductions += 1;
                continue;
            }
            if self.insert(r, p.sugar) {
                return Ok(self.unit_result());
            }
        }
        Ok(self.finish())
    }

    fn unit_result(self) -> GbRun<C> {
        let e = self.elems.last().expect("unit element");
        let one = e.terms[0].1.one_like();
        GbRun {
            basis: vec![vec![(e.lm.clone(), one)]],
            truncated: false,
            stats: self.stats,
        }
    }

    fn finish(mut self) -> GbRun<C> {
        let mut active: Vec<usize> = (0..self.elems.len())
            .filter(|&i| self.elems[i].active)
            .collect();
        // largest leading monomial first, so redundant elements vanish before
        // they could serve as reducers
        active.sort_by(|&a, &b| self.ord.cmp(&self.elems[b].lm, &self.elems[a].lm));
        for &i in &active {
            self.elems[i].active = false;
            let red = self.reduce(self.elems[i].terms.clone(), true);
            // over a complete basis a redundant element reduces to zero; a
            // truncated run may leave a smaller nonzero remainder instead
            if red.is_empty() {
                continue;
            }
            debug_assert!(self.truncated || red[0].0 == self.elems[i].lm);
            self.elems[i].lm = red[0].0.clone();
            self.elems[i].mask = self.elems[i].lm.support_mask();
            self.elems[i].terms = red;
            self.elems[i].active = true;
        }
        let mut out: Vec<Terms<C>> = active
            .iter()
            .filter(|&&i| self.elems[i].active)
            .map(|&i| {
                let mut t = self.elems[i].terms.clone();
                sparse::make_monic(&mut t);
                t
            })
            .collect();
        out.sort_by(|a, b| self.ord.cmp(&a[0].0, &b[0].0));
        GbRun {
            basis: out,
            truncated: self.truncated,
            stats: self.stats,
        }
    }
}

/// Multiply `done ++ rest` (one polynomial split in two) by its normalizing unit.
fn rescale<C: Coeff>(done: &mut Terms<C>, rest: &mut Terms<C>) {
    let coeffs: Vec<&C> = done.iter().chain(rest.iter()).map(|(_, c)| c).collect();
    if let Some(s) = C::normalizing_scale(&coeffs) {
        for (_, c) in done.iter_mut().chain(rest.iter_mut()) {
            *c = c.mul(&s);
        }
    }
}

/// Normal form of `f` modulo a list of monic term lists sorted under `ord`.
pub fn normal_form<C: Coeff>(f: Terms<C>, basis: &[Terms<C>], ord: &TermOrder) -> Terms<C> {
    let masks: Vec<u64> = basis.iter().map(|b| b[0].0.support_mask()).collect();
    let mut rest = f;
    let mut done: Terms<C> = Vec::new();
    while let Some((lm, lc)) = rest.first() {
        let mask = lm.support_mask();
        let found = basis
            .iter()
            .zip(&masks)
            .find(|(b, &bm)| (bm & !mask) == 0 && b[0].0.divides(lm));
        match found {
            Some((b, _)) => {
                let t = b[0].0.quotient_of(lm).expect("divides");
                let c = lc.div(&b[0].1);
                rest = sparse::sub_mul(&rest, &c, &t, b, ord);
            }
            None => done.push(rest.remove(0)),
        }
    }
    done
}

/// Verify the S-polynomial criterion: every pair reduces to zero.
pub fn is_groebner<C: Coeff>(basis: &[Terms<C>], ord: &TermOrder) -> bool {
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let (a, b) = (&basis[i], &basis[j]);
            let lcm = a[0].0.lcm(&b[0].0);
            let ta = a[0].0.quotient_of(&lcm).expect("lcm");
            let tb = b[0].0.quotient_of(&lcm).expect("lcm");
            let left: Terms<C> = a
                .iter()
                .map(|(m, c)| (m.mul(&ta), c.mul(&b[0].1)))
                .collect();
            let s = sparse::sub_mul(&left, &a[0].1, &tb, b, ord);
            if !normal_form(s, basis, ord).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Leading monomials of a basis.
pub fn leading_monomials<C: Coeff>(basis: &[Terms<C>]) -> Vec<Monomial> {
    basis.iter().map(|b| b[0].0.clone()).collect()
}

/// Krull dimension of `K[x_1..x_n]/M` for a monomial ideal given by generators:
/// the largest set of variables containing no generator's support.
/// `None` for the unit ideal.
pub fn monomial_dimension(gens: &[Monomial], n: usize) -> Option<usize> {
    if gens.iter().any(|g| g.is_one()) {
        return None;
    }
    // minimal supports
    let mut supports: Vec<BTreeSet<usize>> = gens.iter().map(|g| g.support().collect()).collect();
    supports.sort_by_key(|s| s.len());
    let mut minimal: Vec<BTreeSet<usize>> = Vec::new();
    for s in supports {
        if !minimal.iter().any(|m| m.is_subset(&s)) {
            minimal.push(s);
        }
    }
    // minimum hitting set: every support must meet the complement of the independent set
    let mut best = n;
    let mut chosen = Vec::new();
    min_cover(&minimal, &mut chosen, &mut best);
    Some(n - best)
}

fn min_cover(sets: &[BTreeSet<usize>], chosen: &mut Vec<usize>, best: &mut usize) {
    if chosen.len() >= *best {
        return;
    }
    let open = sets
        .iter()
        .filter(|s| !s.iter().any(|v| chosen.contains(v)))
        .min_by_key(|s| s.len());
    match open {
        None => *best = chosen.len(),
        Some(s) => {
            if chosen.len() + 1 >= *best {
                return;
            }
            for &v in s {
                chosen.push(v);
                min_cover(sets, chosen, best);
                chosen.pop();
            }
        }
    }
}
