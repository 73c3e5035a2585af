//! Multivariate gcd over the rationals by recursive primitive remainder
//! sequences.

use std::collections::BTreeMap;

use num_traits::{One, Signed};

use super::{Monomial, Polynomial, Q};

/// Monic gcd (leading coefficient 1 under the ring order). `gcd(0, 0) = 0`.
pub fn gcd(a: &Polynomial<Q>, b: &Polynomial<Q>) -> Polynomial<Q> {
    gcd_rec(a, b).monic()
}

fn gcd_rec(a: &Polynomial<Q>, b: &Polynomial<Q>) -> Polynomial<Q> {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.is_constant() || b.is_constant() {
        return Polynomial::one(a.ring());
    }
    if a == b {
        return a.clone();
    }
    let sa = a.support();
    let sb = b.support();
    let v = *sa.union(&sb).max().expect("non-constant");
    if !sa.contains(&v) {
        return gcd_rec(a, &content_in(b, v));
    }
    if !sb.contains(&v) {
        return gcd_rec(&content_in(a, v), b);
    }
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let c = gcd_rec(&ca, &cb);
    let mut p = a.div_exact(&ca).expect("content divides");
    let mut q = b.div_exact(&cb).expect("content divides");
    if p.degree_in(v) < q.degree_in(v) {
        std::mem::swap(&mut p, &mut q);
    }
    loop {
        let r = prem(&p, &q, v);
        if r.is_zero() {
            break;
        }
        if r.degree_in(v) == 0 {
            return c;
        }
        p = q;
        q = primitive_in(&r, v);
    }
    c.mul(&primitive_in(&q, v))
}

/// Coefficients of `p` viewed as a polynomial in variable `v`, keyed by degree.
pub fn coeffs_in(p: &Polynomial<Q>, v: usize) -> BTreeMap<u16, Polynomial<Q>> {
    let mut buckets: BTreeMap<u16, Vec<(Monomial, Q)>> = BTreeMap::new();
    for (m, c) in p.terms() {
        let e = m.exp(v);
        let mut nm = m.clone();
        nm.set_exp(v, 0);
        buckets.entry(e).or_default().push((nm, c.clone()));
    }
    buckets
        .into_iter()
        .map(|(e, t)| (e, Polynomial::from_terms(p.ring(), t)))
        .collect()
}

/// Gcd of the coefficients in `v`, normalised to a positive integer-content form.
fn content_in(p: &Polynomial<Q>, v: usize) -> Polynomial<Q> {
    let coeffs = coeffs_in(p, v);
    let mut g = Polynomial::zero(p.ring());
    for c in coeffs.values() {
        g = gcd_rec(&g, c);
        if g.is_constant() {
            return Polynomial::one(p.ring());
        }
    }
    g.monic()
}

fn primitive_in(p: &Polynomial<Q>, v: usize) -> Polynomial<Q> {
    let c = content_in(p, v);
    let q = p.div_exact(&c).expect("content divides");
    let k = q.content();
    let sign = if q.leading_coeff().is_some_and(|x| x.is_negative()) {
        -Q::one()
    } else {
        Q::one()
    };
    q.scale(&(sign / k))
}

/// Pseudo-remainder of `a` by `b` in variable `v`.
fn prem(a: &Polynomial<Q>, b: &Polynomial<Q>, v: usize) -> Polynomial<Q> {
    let db = b.degree_in(v);
    let bc = coeffs_in(b, v);
    let lb = bc.get(&db).expect("leading coefficient").clone();
    let ring = a.ring().clone();
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(v) >= db {
        let dr = r.degree_in(v);
        let lr = coeffs_in(&r, v).remove(&dr).expect("leading coefficient");
        let shift = Polynomial::monomial(&ring, Monomial::var(ring.n(), v, dr - db), Q::one());
        r = lb.mul(&r).sub(&lr.mul(&shift).mul(b));
        let k = r.content();
        if !r.is_zero() {
            r = r.scale(&k.recip());
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{parse_poly, RingSpec};

    #[test]
    fn known_gcds() {
        let r = RingSpec::standard(&["a", "b"], &["c"]).unwrap();
        let p = |s: &str| parse_poly(s, &r).unwrap();
        assert_eq!(gcd(&p("a^2-b^2"), &p("a^2+2*a*b+b^2")), p("a+b"));
        assert_eq!(gcd(&p("a*b*c"), &p("a^2*c")), p("a*c"));
        assert_eq!(gcd(&p("a+1"), &p("b+1")), p("1"));
        assert_eq!(gcd(&p("0"), &p("2*a")), p("a"));
        let f = p("(a*b - c^2 + 3)*(a + b*c)");
        let g = p("(a*b - c^2 + 3)*(a - 2*c)^2");
        assert_eq!(gcd(&f, &g), p("a*b - c^2 + 3").monic());
    }
}
