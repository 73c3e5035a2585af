use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::ring::same_ring;
use super::sparse::{self, Terms};
use super::{Coeff, Monomial, PolyError, RingSpec, TermOrder, Q};

/// Sparse polynomial; terms are kept strictly descending under the ring's
/// default order with no zero coefficients, so equality is structural.
#[derive(Clone)]
pub struct Polynomial<C: Coeff = Q> {
    ring: Arc<RingSpec>,
    terms: Terms<C>,
}

impl<C: Coeff> PartialEq for Polynomial<C> {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl<C: Coeff> Eq for Polynomial<C> {}

impl Hash for Polynomial<Q> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        for (m, c) in &self.terms {
            m.hash(state);
            c.hash(state);
        }
    }
}

impl<C: Coeff> fmt::Debug for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl<C: Coeff> Polynomial<C> {
    pub fn zero(ring: &Arc<RingSpec>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<RingSpec>, c: C) -> Self {
        let terms = if c.is_zero() {
            Vec::new()
        } else {
            vec![(Monomial::one(ring.n()), c)]
        };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn monomial(ring: &Arc<RingSpec>, m: Monomial, c: C) -> Self {
        assert_eq!(m.len(), ring.n(), "monomial arity");
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Canonicalizes an arbitrary term list.
    pub fn from_terms(ring: &Arc<RingSpec>, terms: Vec<(Monomial, C)>) -> Self {
        debug_assert!(terms.iter().all(|(m, _)| m.len() == ring.n()));
        Polynomial {
            terms: sparse::normalize(terms, ring.default_order()),
            ring: ring.clone(),
        }
    }

    /// Terms already sorted under the ring order and free of zeros.
    pub(crate) fn from_sorted(ring: &Arc<RingSpec>, terms: Terms<C>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, C)] {
        &self.terms
    }

    pub fn into_terms(self) -> Terms<C> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Constant term, or `None` when it vanishes.
    pub fn constant_coeff(&self) -> Option<&C> {
        self.terms.last().filter(|(m, _)| m.is_one()).map(|(_, c)| c)
    }

    /// Leading term under the ring's default order.
    pub fn leading_term(&self) -> Option<&(Monomial, C)> {
        self.terms.first()
    }

    pub fn leading_coeff(&self) -> Option<&C> {
        self.terms.first().map(|(_, c)| c)
    }

    /// Leading term under an arbitrary order.
    pub fn leading_term_under(&self, ord: &TermOrder) -> Option<&(Monomial, C)> {
        self.terms
            .iter()
            .max_by(|a, b| ord.cmp(&a.0, &b.0))
    }

    /// Terms sorted descending under `ord`.
    pub fn terms_under(&self, ord: &TermOrder) -> Terms<C> {
        let mut t = self.terms.clone();
        t.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        t
    }

    fn check_ring(&self, other: &Self) {
        assert!(
            same_ring(&self.ring, &other.ring),
            "polynomials from different rings"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_ring(other);
        Self::from_sorted(
            &self.ring,
            sparse::add(&self.terms, &other.terms, self.ring.default_order()),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_ring(other);
        Self::from_sorted(
            &self.ring,
            sparse::sub(&self.terms, &other.terms, self.ring.default_order()),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_ring(other);
        Self::from_sorted(
            &self.ring,
            sparse::mul(&self.terms, &other.terms, self.ring.default_order()),
        )
    }

    pub fn neg(&self) -> Self {
        Self::from_sorted(
            &self.ring,
            self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        )
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_sorted(&self.ring, sparse::scale(&self.terms, c))
    }

    pub fn mul_term(&self, m: &Monomial, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Self::from_sorted(
            &self.ring,
            self.terms
                .iter()
                .map(|(t, x)| (t.mul(m), x.mul(c)))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = match self.terms.first() {
            Some((_, c)) => Self::constant(&self.ring, c.one_like()),
            None => {
                return if e == 0 {
                    panic!("0^0 has no canonical value here")
                } else {
                    Self::zero(&self.ring)
                }
            }
        };
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Divide by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Self {
        let mut t = self.terms.clone();
        sparse::make_monic(&mut t);
        Self::from_sorted(&self.ring, t)
    }

    /// The set of weighted degrees of the terms, by the ring's weights.
    pub fn w_degrees(&self) -> BTreeSet<i64> {
        let w = self.ring.full_weights();
        self.terms.iter().map(|(m, _)| m.weighted_degree(w)).collect()
    }

    /// Common weighted degree of all terms.
    pub fn w_degree(&self) -> Result<i64, PolyError> {
        let degs = self.w_degrees();
        match degs.len() {
            0 => Err(PolyError::ZeroPolynomial),
            1 => Ok(*degs.iter().next().expect("one element")),
            _ => Err(PolyError::Inhomogeneous(degs.into_iter().collect())),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.w_degrees().len() <= 1
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.iter().map(|(m, _)| m.total_degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, idx: usize) -> u16 {
        self.terms.iter().map(|(m, _)| m.exp(idx)).max().unwrap_or(0)
    }

    /// Indices of the variables that occur.
    pub fn support(&self) -> BTreeSet<usize> {
        self.terms.iter().flat_map(|(m, _)| m.support()).collect()
    }

    /// True when only parameters occur.
    pub fn is_param_only(&self) -> bool {
        let m = self.ring.m();
        self.support().iter().all(|&i| i < m)
    }

    /// Formal derivative with respect to any variable.
    pub fn derivative(&self, idx: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exp(idx) > 0)
            .map(|(m, c)| {
                let e = m.exp(idx);
                let mut nm = m.clone();
                nm.set_exp(idx, e - 1);
                let factor = c.from_rational_like(&Q::from_integer(e.into()));
                (nm, c.mul(&factor))
            })
            .collect();
        Self::from_terms(&self.ring, terms)
    }

    /// Derivative with respect to a fiber variable.
    pub fn partial_derivative(&self, idx: usize) -> Result<Self, PolyError> {
        if idx >= self.ring.n() {
            return Err(PolyError::UnknownVariable(idx.to_string()));
        }
        if self.ring.is_param(idx) {
            return Err(PolyError::ParameterDerivative(self.ring.name(idx).to_string()));
        }
        Ok(self.derivative(idx))
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Polynomial<D> {
        Polynomial::from_sorted(
            &self.ring,
            self.terms
                .iter()
                .map(|(m, c)| (m.clone(), f(c)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        )
    }

    /// Move into another ring. `map[i]` is the target index of variable `i`;
    /// a variable mapped to `None` must not occur.
    pub fn rebase(
        &self,
        target: &Arc<RingSpec>,
        map: &[Option<usize>],
    ) -> Result<Self, PolyError> {
        let n = target.n();
        let mut out = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut nm = Monomial::one(n);
            for i in m.support() {
                match map[i] {
                    Some(j) => nm.set_exp(j, nm.exp(j) + m.exp(i)),
                    None => {
                        return Err(PolyError::UnknownVariable(self.ring.name(i).to_string()))
                    }
                }
            }
            out.push((nm, c.clone()));
        }
        Ok(Self::from_terms(target, out))
    }

    /// Move into a ring that contains every variable name of this one.
    pub fn rebase_by_name(&self, target: &Arc<RingSpec>) -> Result<Self, PolyError> {
        if same_ring(&self.ring, target) {
            return Ok(self.clone());
        }
        let map: Vec<Option<usize>> = self.ring.names().map(|s| target.index_of(s)).collect();
        self.rebase(target, &map)
    }

    /// Substitute `images[i]` for variable `i`; all images share one target ring.
    pub fn substitute(&self, target: &Arc<RingSpec>, images: &[Polynomial<C>]) -> Polynomial<C> {
        assert_eq!(images.len(), self.ring.n(), "one image per variable");
        let one = match self.terms.first() {
            Some((_, c)) => c.one_like(),
            None => return Polynomial::zero(target),
        };
        let mut powers: Vec<Vec<Polynomial<C>>> = vec![Vec::new(); images.len()];
        let mut acc = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for i in m.support() {
                let e = m.exp(i) as usize;
                let p = &mut powers[i];
                if p.is_empty() {
                    p.push(Polynomial::constant(target, one.clone()));
                }
                while p.len() <= e {
                    let next = p.last().expect("nonempty").mul(&images[i]);
                    p.push(next);
                }
                t = t.mul(&p[e]);
            }
            acc = acc.add(&t);
        }
        acc
    }
}

impl Polynomial<Q> {
    pub fn one(ring: &Arc<RingSpec>) -> Self {
        Self::constant(ring, Q::one())
    }

    pub fn var(ring: &Arc<RingSpec>, idx: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.n(), idx, 1), Q::one())
    }

    pub fn var_named(ring: &Arc<RingSpec>, name: &str) -> Result<Self, PolyError> {
        ring.index_of(name)
            .map(|i| Self::var(ring, i))
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))
    }

    pub fn from_int(ring: &Arc<RingSpec>, n: i64) -> Self {
        Self::constant(ring, Q::from_integer(n.into()))
    }

    /// Evaluate at a full point (one value per variable).
    pub fn evaluate(&self, point: &[Q]) -> Result<Q, PolyError> {
        if point.len() != self.ring.n() {
            return Err(PolyError::DimensionMismatch {
                expected: self.ring.n(),
                found: point.len(),
            });
        }
        let mut acc = Q::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for i in m.support() {
                t *= num_traits::pow(point[i].clone(), m.exp(i) as usize);
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Substitute values for some variables, staying in the same ring.
    pub fn partial_evaluate(&self, values: &[(usize, Q)]) -> Self {
        let mut out = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut nm = m.clone();
            let mut nc = c.clone();
            for (i, v) in values {
                let e = m.exp(*i);
                if e > 0 {
                    nc *= num_traits::pow(v.clone(), e as usize);
                    nm.set_exp(*i, 0);
                }
            }
            if !Zero::is_zero(&nc) {
                out.push((nm, nc));
            }
        }
        Self::from_terms(&self.ring, out)
    }

    /// Image under `a_i -> gamma_i`, as a polynomial in the fiber ring.
    pub fn specialize(&self, gamma: &[Q]) -> Result<Self, PolyError> {
        self.specialize_into(gamma, &self.ring.fiber_ring())
    }

    /// As [`specialize`](Self::specialize) with a prebuilt fiber ring.
    pub fn specialize_into(&self, gamma: &[Q], fiber: &Arc<RingSpec>) -> Result<Self, PolyError> {
        let m = self.ring.m();
        if gamma.len() != m {
            return Err(PolyError::DimensionMismatch {
                expected: m,
                found: gamma.len(),
            });
        }
        let mut out = Vec::with_capacity(self.terms.len());
        for (mono, c) in &self.terms {
            let mut nc = c.clone();
            for (i, g) in gamma.iter().enumerate() {
                let e = mono.exp(i);
                if e > 0 {
                    nc *= num_traits::pow(g.clone(), e as usize);
                }
            }
            if !Zero::is_zero(&nc) {
                out.push((Monomial::from_exponents(&mono.exponents()[m..]), nc));
            }
        }
        Ok(Self::from_terms(fiber, out))
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        self.check_ring(d);
        let ord = self.ring.default_order();
        let (dm, dc) = d.terms.first()?;
        let dinv = dc.recip();
        let mut rem = self.terms.clone();
        let mut quot: Terms<Q> = Vec::new();
        while let Some((rm, rc)) = rem.first() {
            let t = dm.quotient_of(rm)?;
            let c = rc * &dinv;
            rem = sparse::sub_mul(&rem, &c, &t, &d.terms, ord);
            quot.push((t, c));
        }
        Some(Self::from_sorted(&self.ring, quot))
    }

    /// Coefficients as integers over a common denominator: the least positive
    /// rational `c` with `self / c` having coprime integer coefficients.
    pub fn content(&self) -> Q {
        use num_integer::Integer;
        let mut num = num_bigint::BigInt::zero();
        let mut den = num_bigint::BigInt::one();
        for (_, c) in &self.terms {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            return Q::one();
        }
        Q::new(num, den)
    }
}

impl<C: Coeff> fmt::Display for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative_atom();
            let abs = if negative { c.neg() } else { c.clone() };
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                if abs.needs_parens() {
                    write!(f, "({abs})")?;
                } else {
                    write!(f, "{abs}")?;
                }
                continue;
            }
            if !abs.is_one() {
                if abs.needs_parens() {
                    write!(f, "({abs})*")?;
                } else {
                    write!(f, "{abs}*")?;
                }
            }
            write_monomial(f, &self.ring, m)?;
        }
        Ok(())
    }
}

pub(crate) fn write_monomial(
    f: &mut impl fmt::Write,
    ring: &RingSpec,
    m: &Monomial,
) -> fmt::Result {
    let mut first = true;
    for i in m.support() {
        if !first {
            write!(f, "*")?;
        }
        first = false;
        write!(f, "{}", ring.name(i))?;
        if m.exp(i) > 1 {
            write!(f, "^{}", m.exp(i))?;
        }
    }
    if first {
        write!(f, "1")?;
    }
    Ok(())
}

impl<C: Coeff> std::ops::Add for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn add(self, rhs: Self) -> Polynomial<C> {
        Polynomial::add(self, rhs)
    }
}

impl<C: Coeff> std::ops::Sub for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn sub(self, rhs: Self) -> Polynomial<C> {
        Polynomial::sub(self, rhs)
    }
}

impl<C: Coeff> std::ops::Mul for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn mul(self, rhs: Self) -> Polynomial<C> {
        Polynomial::mul(self, rhs)
    }
}

impl<C: Coeff> std::ops::Neg for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        Polynomial::neg(self)
    }
}
