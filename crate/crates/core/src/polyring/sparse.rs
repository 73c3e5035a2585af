//! Term-list kernels shared by [`Polynomial`](super::Polynomial) and the
//! Gröbner engine. Term lists are sorted strictly descending under the given
//! order and never hold zero coefficients.

use std::cmp::Ordering;

use super::{Coeff, Monomial, TermOrder};

pub type Terms<C> = Vec<(Monomial, C)>;

pub fn normalize<C: Coeff>(mut terms: Terms<C>, ord: &TermOrder) -> Terms<C> {
    terms.sort_by(|a, b| ord.cmp(&b.0, &a.0));
    let mut out: Terms<C> = Vec::with_capacity(terms.len());
    for (m, c) in terms {
        match out.last_mut() {
            Some((lm, lc)) if *lm == m => {
                *lc = lc.add(&c);
            }
            _ => out.push((m, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

pub fn add<C: Coeff>(a: &[(Monomial, C)], b: &[(Monomial, C)], ord: &TermOrder) -> Terms<C> {
    merge(a, b, ord, |c| c.clone())
}

pub fn sub<C: Coeff>(a: &[(Monomial, C)], b: &[(Monomial, C)], ord: &TermOrder) -> Terms<C> {
    merge(a, b, ord, |c| c.neg())
}

fn merge<C: Coeff>(
    a: &[(Monomial, C)],
    b: &[(Monomial, C)],
    ord: &TermOrder,
    map_b: impl Fn(&C) -> C,
) -> Terms<C> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match ord.cmp(&a[i].0, &b[j].0) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((b[j].0.clone(), map_b(&b[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let c = a[i].1.add(&map_b(&b[j].1));
                if !c.is_zero() {
                    out.push((a[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend(b[j..].iter().map(|(m, c)| (m.clone(), map_b(c))));
    out
}

/// `a - c * t * b`, the reduction step. Multiplying by `t` preserves the
/// order of `b`, so a single merge suffices.
pub fn sub_mul<C: Coeff>(
    a: &[(Monomial, C)],
    c: &C,
    t: &Monomial,
    b: &[(Monomial, C)],
    ord: &TermOrder,
) -> Terms<C> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    for (bm, bc) in b {
        let m = bm.mul(t);
        let coef = c.mul(bc).neg();
        loop {
            if i < a.len() {
                match ord.cmp(&a[i].0, &m) {
                    Ordering::Greater => {
                        out.push(a[i].clone());
                        i += 1;
                        continue;
                    }
                    Ordering::Equal => {
                        let s = a[i].1.add(&coef);
                        if !s.is_zero() {
                            out.push((m, s));
                        }
                        i += 1;
                        break;
                    }
                    Ordering::Less => {}
                }
            }
            out.push((m, coef));
            break;
        }
    }
    out.extend_from_slice(&a[i..]);
    out
}

pub fn mul<C: Coeff>(a: &[(Monomial, C)], b: &[(Monomial, C)], ord: &TermOrder) -> Terms<C> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut all = Vec::with_capacity(a.len() * b.len());
    for (m, c) in a {
        for (bm, bc) in b {
            all.push((m.mul(bm), c.mul(bc)));
        }
    }
    normalize(all, ord)
}

pub fn scale<C: Coeff>(a: &[(Monomial, C)], c: &C) -> Terms<C> {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|(m, x)| (m.clone(), x.mul(c))).collect()
}

/// Divide through by the leading coefficient.
pub fn make_monic<C: Coeff>(a: &mut Terms<C>) {
    if let Some((_, lc)) = a.first() {
        if !lc.is_one() {
            let inv = lc.inv();
            for (_, c) in a.iter_mut() {
                *c = c.mul(&inv);
            }
        }
    }
}
