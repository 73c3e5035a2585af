use std::cmp::Ordering;

use super::Monomial;

/// Monomial orders. Block orders compare the first block with its inner
/// order and fall through to later blocks on ties.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TermOrder {
    Lex,
    DegRevLex,
    /// Weighted degree first (one weight per variable), then degrevlex.
    WeightedDegRevLex(Vec<i64>),
    /// Blocks of variable indices, greatest block first. Every variable must
    /// appear in exactly one block; inner orders act on the restricted
    /// exponent vectors.
    Block(Vec<(Vec<usize>, TermOrder)>),
}

impl TermOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let ea = a.exponents();
        let eb = b.exponents();
        match self {
            TermOrder::Lex => cmp_lex(ea, eb, None),
            TermOrder::DegRevLex => cmp_drl(ea, eb, None),
            TermOrder::WeightedDegRevLex(w) => cmp_wdrl(ea, eb, None, w),
            TermOrder::Block(blocks) => {
                for (idx, inner) in blocks {
                    let o = inner.cmp_view(ea, eb, idx);
                    if o != Ordering::Equal {
                        return o;
                    }
                }
                Ordering::Equal
            }
        }
    }

    fn cmp_view(&self, ea: &[u16], eb: &[u16], idx: &[usize]) -> Ordering {
        match self {
            TermOrder::Lex => cmp_lex(ea, eb, Some(idx)),
            TermOrder::DegRevLex => cmp_drl(ea, eb, Some(idx)),
            TermOrder::WeightedDegRevLex(w) => cmp_wdrl(ea, eb, Some(idx), w),
            TermOrder::Block(_) => {
                let ra: Vec<u16> = idx.iter().map(|&i| ea[i]).collect();
                let rb: Vec<u16> = idx.iter().map(|&i| eb[i]).collect();
                self.cmp(&Monomial::from_exponents(&ra), &Monomial::from_exponents(&rb))
            }
        }
    }

    /// Elimination order for `drop` (greatest block, degrevlex inside) over
    /// `keep` (ordered by `inner`, whose weights if any are indexed by position
    /// in `keep`).
    pub fn elimination(drop: Vec<usize>, keep: Vec<usize>, inner: TermOrder) -> TermOrder {
        TermOrder::Block(vec![(drop, TermOrder::DegRevLex), (keep, inner)])
    }

    /// Whether every variable has non-negative weight, so that 1 is minimal.
    pub fn is_well_order(&self) -> bool {
        match self {
            TermOrder::Lex | TermOrder::DegRevLex => true,
            TermOrder::WeightedDegRevLex(w) => w.iter().all(|&x| x >= 0),
            TermOrder::Block(b) => b.iter().all(|(_, o)| o.is_well_order()),
        }
    }

    /// Grading used for sugar degrees in Buchberger's algorithm.
    pub fn sugar_weights(&self, n: usize) -> Vec<i64> {
        match self {
            TermOrder::WeightedDegRevLex(w) if w.iter().all(|&x| x > 0) => w.clone(),
            _ => vec![1; n],
        }
    }
}

#[inline]
fn cmp_lex(a: &[u16], b: &[u16], idx: Option<&[usize]>) -> Ordering {
    match idx {
        None => {
            for (x, y) in a.iter().zip(b) {
                if x != y {
                    return x.cmp(y);
                }
            }
        }
        Some(idx) => {
            for &i in idx {
                if a[i] != b[i] {
                    return a[i].cmp(&b[i]);
                }
            }
        }
    }
    Ordering::Equal
}

#[inline]
fn revlex_tail(a: &[u16], b: &[u16], idx: Option<&[usize]>) -> Ordering {
    match idx {
        None => {
            for (x, y) in a.iter().zip(b).rev() {
                if x != y {
                    return y.cmp(x);
                }
            }
        }
        Some(idx) => {
            for &i in idx.iter().rev() {
                if a[i] != b[i] {
                    return b[i].cmp(&a[i]);
                }
            }
        }
    }
    Ordering::Equal
}

#[inline]
fn cmp_drl(a: &[u16], b: &[u16], idx: Option<&[usize]>) -> Ordering {
    let (da, db): (u64, u64) = match idx {
        None => (
            a.iter().map(|&e| e as u64).sum(),
            b.iter().map(|&e| e as u64).sum(),
        ),
        Some(idx) => (
            idx.iter().map(|&i| a[i] as u64).sum(),
            idx.iter().map(|&i| b[i] as u64).sum(),
        ),
    };
    da.cmp(&db).then_with(|| revlex_tail(a, b, idx))
}

#[inline]
fn cmp_wdrl(a: &[u16], b: &[u16], idx: Option<&[usize]>, w: &[i64]) -> Ordering {
    let (wa, wb): (i64, i64) = match idx {
        None => (
            a.iter().zip(w).map(|(&e, &x)| e as i64 * x).sum(),
            b.iter().zip(w).map(|(&e, &x)| e as i64 * x).sum(),
        ),
        Some(idx) => (
            idx.iter().zip(w).map(|(&i, &x)| a[i] as i64 * x).sum(),
            idx.iter().zip(w).map(|(&i, &x)| b[i] as i64 * x).sum(),
        ),
    };
    wa.cmp(&wb).then_with(|| cmp_drl(a, b, idx))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn classic_orders() {
        // x > y > z
        let x = m(&[1, 0, 0]);
        let y2 = m(&[0, 2, 0]);
        assert_eq!(TermOrder::Lex.cmp(&x, &y2), Ordering::Greater);
        assert_eq!(TermOrder::DegRevLex.cmp(&x, &y2), Ordering::Less);
        // x*z < y^2 in degrevlex
        assert_eq!(TermOrder::DegRevLex.cmp(&m(&[1, 0, 1]), &y2), Ordering::Less);
        let w = TermOrder::WeightedDegRevLex(vec![3, 1, 1]);
        assert_eq!(w.cmp(&x, &y2), Ordering::Greater);
    }

    #[test]
    fn block_order_eliminates_first_block() {
        let o = TermOrder::elimination(vec![2], vec![0, 1], TermOrder::DegRevLex);
        // z beats any monomial in x, y
        assert_eq!(o.cmp(&m(&[0, 0, 1]), &m(&[9, 9, 0])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 0, 1]), &m(&[0, 1, 1])), Ordering::Greater);
    }
}
