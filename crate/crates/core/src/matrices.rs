//! Matrices over polynomial rings: determinants, minors ideals, generic rank
//! and specialization to rational matrices.

use std::fmt;
use std::sync::Arc;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::ideals::{GbError, Ideal};
use crate::polyring::{parse_poly, PolyError, Polynomial, RingSpec, Q};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("matrix shape {rows}x{cols} does not match {len} entries")]
    Shape { rows: usize, cols: usize, len: usize },
    #[error("entry ({0},{1}) involves fiber variables")]
    NotOverParameters(usize, usize),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Gb(#[from] GbError),
}

/// Dense matrix with polynomial entries, row-major.
#[derive(Clone, PartialEq)]
pub struct PolyMatrix {
    ring: Arc<RingSpec>,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial<Q>>,
}

/// Dense matrix of exact rationals, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct ScalarMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Q>,
}

impl PolyMatrix {
    pub fn new(
        ring: &Arc<RingSpec>,
        rows: usize,
        cols: usize,
        entries: Vec<Polynomial<Q>>,
    ) -> Result<Self, MatrixError> {
        if entries.len() != rows * cols {
            return Err(MatrixError::Shape {
                rows,
                cols,
                len: entries.len(),
            });
        }
        Ok(PolyMatrix {
            ring: ring.clone(),
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(ring: &Arc<RingSpec>, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            ring: ring.clone(),
            rows,
            cols,
            entries: vec![Polynomial::zero(ring); rows * cols],
        }
    }

    pub fn identity(ring: &Arc<RingSpec>, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, Polynomial::one(ring));
        }
        m
    }

    /// Rows of polynomial strings.
    pub fn parse<S: AsRef<str>>(ring: &Arc<RingSpec>, rows: &[Vec<S>]) -> Result<Self, MatrixError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(MatrixError::Shape {
                    rows: r,
                    cols: c,
                    len: row.len(),
                });
            }
            for s in row {
                entries.push(parse_poly(s.as_ref(), ring)?);
            }
        }
        Self::new(ring, r, c, entries)
    }

    /// JSON array of arrays of polynomial strings.
    pub fn from_json(ring: &Arc<RingSpec>, json: &str) -> Result<Self, MatrixError> {
        let rows: Vec<Vec<String>> = serde_json::from_str(json).map_err(|e| {
            MatrixError::Poly(PolyError::Syntax {
                pos: e.column(),
                msg: e.to_string(),
            })
        })?;
        Self::parse(ring, &rows)
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect())
            .collect()
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial<Q> {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial<Q>) {
        self.entries[i * self.cols + j] = p;
    }

    pub fn row(&self, i: usize) -> &[Polynomial<Q>] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// Every entry lies in the parameter ring.
    pub fn check_over_parameters(&self) -> Result<(), MatrixError> {
        for i in 0..self.rows {
            for j in 0..self.cols {
                if !self.get(i, j).is_param_only() {
                    return Err(MatrixError::NotOverParameters(i, j));
                }
            }
        }
        Ok(())
    }

    pub fn transpose(&self) -> Self {
        let mut e = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                e.push(self.get(i, j).clone());
            }
        }
        PolyMatrix {
            ring: self.ring.clone(),
            rows: self.cols,
            cols: self.rows,
            entries: e,
        }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut e = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                e.push(self.get(i, j).clone());
            }
        }
        PolyMatrix {
            ring: self.ring.clone(),
            rows: rows.len(),
            cols: cols.len(),
            entries: e,
        }
    }

    /// `diag(self, other)`.
    pub fn block_diag(&self, other: &PolyMatrix) -> Self {
        let mut m = Self::zeros(&self.ring, self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        m
    }

    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut out = Self::zeros(&self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Polynomial::zero(&self.ring);
                for l in 0..self.cols {
                    let (a, b) = (self.get(i, l), other.get(l, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b));
                    }
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn sub(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.sub(b))
            .collect();
        PolyMatrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    /// Move all entries into a ring containing their variable names.
    pub fn rebase_by_name(&self, target: &Arc<RingSpec>) -> Result<Self, MatrixError> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.rebase_by_name(target))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(target, self.rows, self.cols, entries)
    }

    /// Determinant of a square matrix: explicit cofactor formulas up to 3x3,
    /// fraction-free Bareiss elimination beyond.
    pub fn determinant(&self) -> Polynomial<Q> {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let e = |i: usize, j: usize| self.get(i, j);
        match n {
            0 => Polynomial::one(&self.ring),
            1 => e(0, 0).clone(),
            2 => e(0, 0).mul(e(1, 1)).sub(&e(0, 1).mul(e(1, 0))),
            3 => {
                let m0 = e(1, 1).mul(e(2, 2)).sub(&e(1, 2).mul(e(2, 1)));
                let m1 = e(1, 0).mul(e(2, 2)).sub(&e(1, 2).mul(e(2, 0)));
                let m2 = e(1, 0).mul(e(2, 1)).sub(&e(1, 1).mul(e(2, 0)));
                e(0, 0)
                    .mul(&m0)
                    .sub(&e(0, 1).mul(&m1))
                    .add(&e(0, 2).mul(&m2))
            }
            _ => bareiss_det(self),
        }
    }

    /// All nonzero `r x r` minors. Column index sets vary slowest, both in
    /// lexicographic order. `r = 0` yields the single minor 1.
    pub fn minors(&self, r: usize) -> Vec<Polynomial<Q>> {
        if r == 0 {
            return vec![Polynomial::one(&self.ring)];
        }
        if r > self.rows || r > self.cols {
            return Vec::new();
        }
        let mut out = Vec::new();
        let row_sets = combinations(self.rows, r);
        for cs in combinations(self.cols, r) {
            // a column that vanishes on all rows kills every minor through it
            if cs
                .iter()
                .any(|&j| (0..self.rows).all(|i| self.get(i, j).is_zero()))
            {
                continue;
            }
            for rs in &row_sets {
                let d = self.submatrix(rs, &cs).determinant();
                if !d.is_zero() {
                    out.push(d);
                }
            }
        }
        out
    }

    /// Ideal of `r x r` minors: the unit ideal for `r = 0`, the zero ideal when
    /// `r` exceeds a dimension.
    pub fn minors_ideal(&self, r: usize) -> Ideal {
        Ideal::new(&self.ring, self.minors(r)).expect("entries share the ring")
    }

    /// Rank over the fraction field, by fraction-free elimination.
    pub fn generic_rank(&self) -> usize {
        bareiss_rank(self)
    }

    /// Rank as the largest size of a nonzero minor. Slow; used as an oracle.
    pub fn rank_by_minors(&self) -> usize {
        let mut r = self.rows.min(self.cols);
        while r > 0 {
            if !self.minors(r).is_empty() {
                return r;
            }
            r -= 1;
        }
        0
    }

    /// Entrywise substitution `a_i -> gamma_i`; entries must lie in the parameter ring.
    pub fn specialize(&self, gamma: &[Q]) -> Result<ScalarMatrix, MatrixError> {
        let m = self.ring.m();
        if gamma.len() != m {
            return Err(MatrixError::Poly(PolyError::DimensionMismatch {
                expected: m,
                found: gamma.len(),
            }));
        }
        self.check_over_parameters()?;
        let mut full = gamma.to_vec();
        full.resize(self.ring.n(), Q::zero());
        self.evaluate(&full)
    }

    /// Entrywise evaluation at a point of the whole ring.
    pub fn evaluate(&self, point: &[Q]) -> Result<ScalarMatrix, MatrixError> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.evaluate(point))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ScalarMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// All `r`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if r > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..r).collect();
    loop {
        out.push(cur.clone());
        let mut i = r;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + n - r {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..r {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

fn bareiss_det(m: &PolyMatrix) -> Polynomial<Q> {
    let n = m.rows;
    let mut a: Vec<Vec<Polynomial<Q>>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut prev = Polynomial::one(&m.ring);
    let mut sign = false;
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = !sign;
                }
                None => return Polynomial::zero(&m.ring),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        d.neg()
    } else {
        d
    }
}

fn bareiss_rank(m: &PolyMatrix) -> usize {
    let mut a: Vec<Vec<Polynomial<Q>>> = (0..m.rows).map(|i| m.row(i).to_vec()).collect();
    let mut prev = Polynomial::one(&m.ring);
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        // sparsest nonzero pivot keeps intermediate entries small
        let piv = (r..m.rows)
            .filter(|&i| !a[i][c].is_zero())
            .min_by_key(|&i| a[i][c].len());
        let Some(p) = piv else { continue };
        a.swap(p, r);
        for i in r + 1..m.rows {
            for j in c + 1..m.cols {
                let num = a[i][j].mul(&a[r][c]).sub(&a[i][c].mul(&a[r][j]));
                a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            a[i][c] = Polynomial::zero(&m.ring);
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

impl ScalarMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Q>) -> Result<Self, MatrixError> {
        if entries.len() != rows * cols {
            return Err(MatrixError::Shape {
                rows,
                cols,
                len: entries.len(),
            });
        }
        Ok(ScalarMatrix { rows, cols, entries })
    }

    pub fn from_ints(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let entries = rows
            .iter()
            .flat_map(|row| row.iter().map(|&v| Q::from_integer(v.into())))
            .collect();
        ScalarMatrix {
            rows: r,
            cols: c,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.entries[i * self.cols + j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// Exact rank by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut a: Vec<Vec<Q>> = (0..self.rows)
            .map(|i| self.entries[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            // pivot of smallest height keeps numbers small; any nonzero pivot is exact
            let piv = (r..self.rows)
                .filter(|&i| !a[i][c].is_zero())
                .min_by_key(|&i| a[i][c].numer().abs() * a[i][c].denom());
            let Some(p) = piv else { continue };
            a.swap(p, r);
            let inv = a[r][c].recip();
            for i in r + 1..self.rows {
                if a[i][c].is_zero() {
                    continue;
                }
                let f = &a[i][c] * &inv;
                for j in c..self.cols {
                    let t = &f * &a[r][j];
                    a[i][j] -= t;
                }
            }
            r += 1;
        }
        r
    }
}

impl fmt::Debug for ScalarMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn base(names: &[&str]) -> Arc<RingSpec> {
        RingSpec::standard(names, &[] as &[&str]).unwrap()
    }

    fn q(v: i64) -> Q {
        Q::from_integer(v.into())
    }

    #[test]
    fn small_minors_ideals() {
        let a = base(&["a"]);
        let m = PolyMatrix::parse(&a, &[vec!["a", "0"], vec!["0", "0"]]).unwrap();
        assert!(m.minors_ideal(1).equals(&Ideal::parse(&a, &["a"]).unwrap()).unwrap());
        assert!(m.minors_ideal(2).is_zero());
        assert!(m.minors_ideal(0).is_unit().unwrap());
        assert!(m.minors_ideal(3).is_zero());
        let id = PolyMatrix::identity(&a, 4);
        assert!(id.minors_ideal(4).is_unit().unwrap());
    }

    #[test]
    fn generic_ranks() {
        let a = base(&["a"]);
        let row = PolyMatrix::parse(&a, &[vec!["1-a", "a^2", "0"]]).unwrap();
        assert_eq!(row.generic_rank(), 1);
        let d = PolyMatrix::parse(&a, &[vec!["a", "0"], vec!["0", "a"]]).unwrap();
        assert_eq!(d.generic_rank(), 2);
        assert_eq!(PolyMatrix::zeros(&a, 3, 2).generic_rank(), 0);
    }

    #[test]
    fn specialization() {
        let ab = base(&["a", "b"]);
        let m = PolyMatrix::parse(&ab, &[vec!["a", "0"], vec!["0", "0"]]).unwrap();
        let s = m.specialize(&[q(1), q(1)]).unwrap();
        assert_eq!(s, ScalarMatrix::from_ints(&[vec![1, 0], vec![0, 0]]));
        assert_eq!(s.rank(), 1);
        assert!(m.specialize(&[q(1)]).is_err());
        let c = PolyMatrix::parse(&ab, &[vec!["3", "1/2"]]).unwrap();
        assert_eq!(c.specialize(&[q(5), q(7)]).unwrap(), c.evaluate(&[q(0), q(0)]).unwrap());
    }

    #[test]
    fn determinants_agree_across_methods() {
        let r = base(&["a", "b", "c"]);
        let m = PolyMatrix::parse(
            &r,
            &[
                vec!["a", "b", "c", "1"],
                vec!["b", "c^2", "a", "0"],
                vec!["1", "a*b", "0", "c"],
                vec!["c", "0", "b", "a"],
            ],
        )
        .unwrap();
        // Laplace along the first row as an oracle
        let mut lap = Polynomial::zero(&r);
        for j in 0..4 {
            let cols: Vec<usize> = (0..4).filter(|&c| c != j).collect();
            let minor = m.submatrix(&[1, 2, 3], &cols).determinant();
            let t = m.get(0, j).mul(&minor);
            lap = if j % 2 == 0 { lap.add(&t) } else { lap.sub(&t) };
        }
        assert_eq!(m.determinant(), lap);
        assert_eq!(m.transpose().determinant(), lap);
    }

    #[test]
    fn combinations_are_lexicographic() {
        assert_eq!(
            combinations(4, 2),
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert!(combinations(2, 3).is_empty());
    }

    fn arb_matrix() -> impl Strategy<Value = (usize, usize, Vec<(i64, i64, i64)>)> {
        (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| {
            (
                Just(r),
                Just(c),
                prop::collection::vec((-2i64..=2, -1i64..=1, 0i64..=2), r * c),
            )
        })
    }

    fn build(r: &Arc<RingSpec>, rows: usize, cols: usize, e: &[(i64, i64, i64)]) -> PolyMatrix {
        // entries c0 + c1*a + c2*b^2, with many zeros
        let entries = e
            .iter()
            .map(|&(c0, c1, c2)| {
                parse_poly(&format!("{c0} + {c1}*a + {c2}*a*b - {c2}*b^2"), r).unwrap()
            })
            .collect();
        PolyMatrix::new(r, rows, cols, entries).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(120))]

        #[test]
        fn rank_by_elimination_matches_minor_enumeration((r, c, e) in arb_matrix()) {
            let ring = base(&["a", "b"]);
            let m = build(&ring, r, c, &e);
            prop_assert_eq!(m.generic_rank(), m.rank_by_minors());
        }

        #[test]
        fn specialization_never_raises_rank((r, c, e) in arb_matrix(), g1 in -3i64..=3, g2 in -3i64..=3) {
            let ring = base(&["a", "b"]);
            let m = build(&ring, r, c, &e);
            let s = m.specialize(&[q(g1), q(g2)]).unwrap();
            prop_assert!(s.rank() <= m.generic_rank());
        }

        #[test]
        fn determinantal_chain((r, c, e) in arb_matrix()) {
            let ring = base(&["a", "b"]);
            let m = build(&ring, r, c, &e);
            for k in 1..r.min(c) {
                let big = m.minors_ideal(k + 1);
                let small = m.minors_ideal(k);
                prop_assert!(small.contains(&big).unwrap());
            }
        }
    }
}
