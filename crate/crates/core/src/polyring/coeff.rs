use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Exact rationals.
pub type Q = BigRational;

/// Coefficient fields. Values carry enough context to produce the neutral
/// elements of their own field, which lets rational functions keep a
/// reference to their parameter ring.
pub trait Coeff: Clone + PartialEq + Debug + Display + Send + Sync + 'static {
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; panics on zero.
    fn inv(&self) -> Self;
    fn div(&self, o: &Self) -> Self {
        self.mul(&o.inv())
    }
    fn from_rational_like(&self, q: &Q) -> Self;
    /// Printed with surrounding parentheses when it is not a single signed
    /// atom, so that it can precede a monomial in `c*m` form.
    fn needs_parens(&self) -> bool;
    fn is_negative_atom(&self) -> bool;

    /// Whether term lists benefit from content removal during reduction.
    const HAS_CONTENT: bool = false;

    /// Unit to multiply a nonzero coefficient list by to bring it into a
    /// canonical small form, or `None` when it is already there. The first
    /// coefficient is the leading one. Defaults to making it monic.
    fn normalizing_scale(coeffs: &[&Self]) -> Option<Self> {
        let lc = coeffs.first()?;
        (!lc.is_one()).then(|| lc.inv())
    }
}

impl Coeff for Q {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn zero_like(&self) -> Self {
        Q::zero()
    }
    fn one_like(&self) -> Self {
        Q::one()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        self.recip()
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn from_rational_like(&self, q: &Q) -> Self {
        q.clone()
    }
    fn needs_parens(&self) -> bool {
        false
    }
    fn is_negative_atom(&self) -> bool {
        self.is_negative()
    }

    const HAS_CONTENT: bool = true;

    /// Primitive integer coefficients with a positive leading coefficient.
    fn normalizing_scale(coeffs: &[&Self]) -> Option<Self> {
        let lc = coeffs.first()?;
        let mut g = BigInt::zero();
        let mut l = BigInt::one();
        for c in coeffs {
            g = g.gcd(c.numer());
            l = l.lcm(c.denom());
        }
        if lc.is_negative() {
            g = -g;
        }
        let s = Q::new(l, g);
        (!One::is_one(&s)).then_some(s)
    }
}

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}
