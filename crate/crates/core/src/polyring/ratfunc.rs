use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use super::gcd::gcd;
use super::{Coeff, Monomial, Polynomial, RingSpec, Q};

/// Element of the fraction field of a polynomial ring over the rationals.
///
/// Stored as `num / den` with `gcd(num, den) = 1` and `den` monic under the
/// ring order, so structural equality is field equality.
#[derive(Clone, PartialEq)]
pub struct RatFunc {
    num: Polynomial<Q>,
    den: Polynomial<Q>,
}

impl RatFunc {
    pub fn new(num: Polynomial<Q>, den: Polynomial<Q>) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let ring = num.ring().clone();
        if num.is_zero() {
            return RatFunc {
                num,
                den: Polynomial::one(&ring),
            };
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = gcd(&num, &den);
            if g.is_constant() {
                (num, den)
            } else {
                (
                    num.div_exact(&g).expect("gcd divides"),
                    den.div_exact(&g).expect("gcd divides"),
                )
            }
        };
        let lc = den.leading_coeff().expect("nonzero").clone();
        if lc == Q::from_integer(1.into()) {
            RatFunc { num, den }
        } else {
            let inv = lc.recip();
            RatFunc {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn from_poly(p: Polynomial<Q>) -> Self {
        let one = Polynomial::one(p.ring());
        RatFunc { num: p, den: one }
    }

    pub fn from_rational(ring: &Arc<RingSpec>, q: Q) -> Self {
        RatFunc {
            num: Polynomial::constant(ring, q),
            den: Polynomial::one(ring),
        }
    }

    pub fn numer(&self) -> &Polynomial<Q> {
        &self.num
    }

    pub fn denom(&self) -> &Polynomial<Q> {
        &self.den
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        self.num.ring()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// Value at a point of the parameter space, `None` where the denominator vanishes.
    pub fn evaluate(&self, point: &[Q]) -> Option<Q> {
        let d = self.den.evaluate(point).ok()?;
        if Zero::is_zero(&d) {
            return None;
        }
        Some(self.num.evaluate(point).ok()? / d)
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let simple_num = self.num.len() <= 1;
        if self.den.is_constant() {
            return write!(f, "{}", self.num);
        }
        if simple_num {
            write!(f, "{}/({})", self.num, self.den)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl Coeff for RatFunc {
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn is_one(&self) -> bool {
        self.den.is_constant() && self.num == self.den
    }
    fn zero_like(&self) -> Self {
        RatFunc::from_rational(self.ring(), Q::zero())
    }
    fn one_like(&self) -> Self {
        RatFunc::from_rational(self.ring(), Q::from_integer(1.into()))
    }
    fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return RatFunc::new(self.num.add(&o.num), self.den.clone());
        }
        RatFunc::new(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return self.zero_like();
        }
        RatFunc::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }
    fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        RatFunc::new(self.den.clone(), self.num.clone())
    }
    fn from_rational_like(&self, q: &Q) -> Self {
        RatFunc::from_rational(self.ring(), q.clone())
    }
    fn needs_parens(&self) -> bool {
        !(self.den.is_constant() && self.num.len() <= 1)
    }
    fn is_negative_atom(&self) -> bool {
        !self.needs_parens()
            && self
                .num
                .leading_coeff()
                .is_some_and(num_traits::Signed::is_negative)
    }
}

/// Reinterpret a polynomial over `A[X]` as one over `Frac(A)[X]`: the result
/// lives in the fiber ring and its coefficients in the parameter ring.
pub fn to_fraction_coeffs(p: &Polynomial<Q>) -> Polynomial<RatFunc> {
    let ring = p.ring();
    let m = ring.m();
    let base = ring.base_ring();
    let fiber = ring.fiber_ring();
    let mut grouped: std::collections::BTreeMap<Monomial, Vec<(Monomial, Q)>> = Default::default();
    for (mono, c) in p.terms() {
        let e = mono.exponents();
        grouped
            .entry(Monomial::from_exponents(&e[m..]))
            .or_default()
            .push((Monomial::from_exponents(&e[..m]), c.clone()));
    }
    let terms = grouped
        .into_iter()
        .map(|(x, a)| (x, RatFunc::from_poly(Polynomial::from_terms(&base, a))))
        .collect();
    Polynomial::from_terms(&fiber, terms)
}
