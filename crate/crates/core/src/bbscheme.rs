//! Border basis schemes: order ideals, borders, generic multiplication
//! matrices, the commutator ideal, the arrow grading and re-embeddings that
//! solve separating generators for selected variables.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::sync::Arc;

use num_traits::Zero;
use serde_json::Value;
use thiserror::Error;

use crate::ideals::{GbError, Ideal};
use crate::matrices::{PolyMatrix, ScalarMatrix};
use crate::polyring::{parse_poly, PolyError, Polynomial, RingSpec, TermOrder, Q};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BbsError {
    #[error("order ideal is empty")]
    Empty,
    #[error("order ideal is not divisor-closed: {missing} divides {term} but is missing")]
    NotDivisorClosed { term: String, missing: String },
    #[error("term has {found} exponents, expected {expected}")]
    Arity { expected: usize, found: usize },
    #[error("`{0}` is not a monomial")]
    NotAMonomial(String),
    #[error("malformed order ideal description: {0}")]
    Format(String),
    #[error("no generator solves for `{0}`")]
    NotSeparating(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Gb(#[from] GbError),
}

/// Default names of the ambient variables: `x, y, z` up to three, else `x1..xn`.
pub fn default_var_names(n: usize) -> Vec<String> {
    match n {
        1 => vec!["x".into()],
        2 => vec!["x".into(), "y".into()],
        3 => vec!["x".into(), "y".into(), "z".into()],
        _ => (1..=n).map(|i| format!("x{i}")).collect(),
    }
}

fn degrevlex_asc(a: &Monomial, b: &Monomial) -> Ordering {
    TermOrder::DegRevLex.cmp(a, b)
}

use crate::polyring::Monomial;

/// A finite divisor-closed set of terms, sorted ascending by degrevlex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderIdeal {
    names: Vec<String>,
    terms: Vec<Monomial>,
}

impl OrderIdeal {
    /// Validate and sort. Duplicates are collapsed.
    pub fn new(names: &[String], exponents: &[Vec<u16>]) -> Result<Self, BbsError> {
        let n = names.len();
        if exponents.is_empty() {
            return Err(BbsError::Empty);
        }
        let mut terms: Vec<Monomial> = Vec::new();
        for e in exponents {
            if e.len() != n {
                return Err(BbsError::Arity {
                    expected: n,
                    found: e.len(),
                });
            }
            let m = Monomial::from_exponents(e);
            if !terms.contains(&m) {
                terms.push(m);
            }
        }
        terms.sort_by(degrevlex_asc);
        let set: HashSet<&Monomial> = terms.iter().collect();
        for t in &terms {
            for i in 0..n {
                if t.exp(i) > 0 {
                    let mut d = t.clone();
                    d.set_exp(i, t.exp(i) - 1);
                    if !set.contains(&d) {
                        return Err(BbsError::NotDivisorClosed {
                            term: write_term(names, t),
                            missing: write_term(names, &d),
                        });
                    }
                }
            }
        }
        Ok(OrderIdeal {
            names: names.to_vec(),
            terms,
        })
    }

    /// Terms written as products of the given variable names, e.g. `["1","x","z^2"]`.
    pub fn parse<S: AsRef<str>>(names: &[String], terms: &[S]) -> Result<Self, BbsError> {
        let ring = RingSpec::standard(&[] as &[String], names)?;
        let mut exps = Vec::new();
        for t in terms {
            let p = parse_poly(t.as_ref(), &ring)?;
            match p.terms() {
                [(m, c)] if Coeff1::is_one(c) => exps.push(m.exponents().to_vec()),
                _ => return Err(BbsError::NotAMonomial(t.as_ref().to_string())),
            }
        }
        Self::new(names, &exps)
    }

    /// JSON: either a list of exponent vectors, or an object
    /// `{"vars": [...], "terms": [...]}` whose terms are exponent vectors or strings.
    pub fn from_json(text: &str) -> Result<Self, BbsError> {
        let v: Value = serde_json::from_str(text).map_err(|e| BbsError::Format(e.to_string()))?;
        let (names, terms) = match &v {
            Value::Array(items) => (None, items.clone()),
            Value::Object(o) => {
                let names = match o.get("vars") {
                    Some(Value::Array(a)) => Some(
                        a.iter()
                            .map(|x| {
                                x.as_str()
                                    .map(str::to_string)
                                    .ok_or_else(|| BbsError::Format("variable names must be strings".into()))
                            })
                            .collect::<Result<Vec<_>, _>>()?,
                    ),
                    None => None,
                    _ => return Err(BbsError::Format("`vars` must be a list".into())),
                };
                let terms = match o.get("terms") {
                    Some(Value::Array(a)) => a.clone(),
                    _ => return Err(BbsError::Format("missing `terms` list".into())),
                };
                (names, terms)
            }
            _ => return Err(BbsError::Format("expected a list or an object".into())),
        };
        if terms.iter().all(Value::is_string) {
            let names = names.unwrap_or_else(|| default_var_names(3));
            let strs: Vec<&str> = terms.iter().filter_map(Value::as_str).collect();
            return Self::parse(&names, &strs);
        }
        let mut exps = Vec::new();
        for t in &terms {
            let Value::Array(a) = t else {
                return Err(BbsError::Format("terms must all be exponent vectors or all strings".into()));
            };
            let e = a
                .iter()
                .map(|x| {
                    x.as_u64()
                        .and_then(|u| u16::try_from(u).ok())
                        .ok_or_else(|| BbsError::Format("exponents must be small non-negative integers".into()))
                })
                .collect::<Result<Vec<_>, _>>()?;
            exps.push(e);
        }
        let n = exps.first().map_or(0, Vec::len);
        let names = names.unwrap_or_else(|| default_var_names(n));
        Self::new(&names, &exps)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn mu(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> &[Monomial] {
        &self.terms
    }

    pub fn index_of(&self, t: &Monomial) -> Option<usize> {
        self.terms.iter().position(|s| s == t)
    }

    pub fn term_strings(&self) -> Vec<String> {
        self.terms.iter().map(|t| write_term(&self.names, t)).collect()
    }

    /// Border terms `(x_1 O ∪ … ∪ x_n O) \ O`, sorted ascending by degrevlex.
    pub fn border(&self) -> Vec<Monomial> {
        let n = self.n();
        let mut out: Vec<Monomial> = Vec::new();
        for t in &self.terms {
            for r in 0..n {
                let b = t.mul(&Monomial::var(n, r, 1));
                if self.index_of(&b).is_none() && !out.contains(&b) {
                    out.push(b);
                }
            }
        }
        out.sort_by(degrevlex_asc);
        out
    }

    /// Every arrow degree `deg(b_j) - deg(t_i)` is non-negative.
    pub fn is_maxdeg(&self) -> bool {
        let max_t = self.terms.iter().map(Monomial::total_degree).max().unwrap_or(0);
        let min_b = self.border().iter().map(Monomial::total_degree).min().unwrap_or(u64::MAX);
        min_b >= max_t
    }
}

// `Coeff::is_one` without importing the trait into the whole module namespace
struct Coeff1;
impl Coeff1 {
    fn is_one(c: &Q) -> bool {
        num_traits::One::is_one(c)
    }
}

/// Print a term as `x^2*y`, or `1`.
pub fn write_term(names: &[String], t: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in t.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(names[i].clone()),
            _ => parts.push(format!("{}^{}", names[i], e)),
        }
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// Where `x_r * t_j` lands.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    Inside(usize),
    Border(usize),
}

/// Order ideal with its border and the multiplication table.
#[derive(Clone, Debug)]
pub struct BorderStructure {
    pub order_ideal: OrderIdeal,
    pub border: Vec<Monomial>,
    /// `table[r][j]` locates `x_r * t_j`.
    pub table: Vec<Vec<Slot>>,
}

impl BorderStructure {
    pub fn new(o: &OrderIdeal) -> Self {
        let border = o.border();
        let n = o.n();
        let table = (0..n)
            .map(|r| {
                o.terms()
                    .iter()
                    .map(|t| {
                        let p = t.mul(&Monomial::var(n, r, 1));
                        match o.index_of(&p) {
                            Some(m) => Slot::Inside(m),
                            None => Slot::Border(
                                border.iter().position(|b| *b == p).expect("product lies in the border"),
                            ),
                        }
                    })
                    .collect()
            })
            .collect();
        BorderStructure {
            order_ideal: o.clone(),
            border,
            table,
        }
    }

    pub fn nu(&self) -> usize {
        self.border.len()
    }

    pub fn border_strings(&self) -> Vec<String> {
        let names = self.order_ideal.names();
        self.border.iter().map(|b| write_term(names, b)).collect()
    }

    /// `deg(b_j) - deg(t_i)`, indexed `[i][j]`.
    pub fn arrow_degrees(&self) -> Vec<Vec<i64>> {
        self.order_ideal
            .terms()
            .iter()
            .map(|t| {
                self.border
                    .iter()
                    .map(|b| b.total_degree() as i64 - t.total_degree() as i64)
                    .collect()
            })
            .collect()
    }
}

/// Name of the coefficient variable in row `i`, column `j` (both 1-based).
pub fn c_name(i: usize, j: usize, mu: usize, nu: usize) -> String {
    if mu < 10 && nu < 10 {
        format!("c{i}{j}")
    } else {
        format!("c{i}_{j}")
    }
}

/// Coordinate ring data of a border basis scheme.
#[derive(Clone, Debug)]
pub struct BBScheme {
    pub structure: BorderStructure,
    /// Degree-zero coefficients are parameters and the rest fiber variables
    /// (weighted by arrow degree) when the grading is non-negative; otherwise
    /// every coefficient is a fiber variable of weight 1.
    pub ring: Arc<RingSpec>,
    /// Ring index of `c_{ij}`, indexed `[i][j]` from 0.
    pub c_index: Vec<Vec<usize>>,
    pub matrices: Vec<PolyMatrix>,
    pub maxdeg: bool,
}

impl BBScheme {
    pub fn new(o: &OrderIdeal) -> Self {
        let structure = BorderStructure::new(o);
        let (mu, nu) = (o.mu(), structure.nu());
        let deg = structure.arrow_degrees();
        let maxdeg = o.is_maxdeg();
        let mut params = Vec::new();
        let mut vars = Vec::new();
        let mut weights = Vec::new();
        for i in 0..mu {
            for j in 0..nu {
                let name = c_name(i + 1, j + 1, mu, nu);
                if maxdeg && deg[i][j] == 0 {
                    params.push(name);
                } else {
                    vars.push(name);
                    weights.push(if maxdeg { deg[i][j] } else { 1 });
                }
            }
        }
        let ring = RingSpec::new(&params, &vars, &weights).expect("coefficient names are valid");
        let c_index: Vec<Vec<usize>> = (0..mu)
            .map(|i| {
                (0..nu)
                    .map(|j| ring.index_of(&c_name(i + 1, j + 1, mu, nu)).expect("declared"))
                    .collect()
            })
            .collect();
        let mut matrices = Vec::with_capacity(o.n());
        for r in 0..o.n() {
            let mut a = PolyMatrix::zeros(&ring, mu, mu);
            for j in 0..mu {
                match structure.table[r][j] {
                    Slot::Inside(m) => a.set(m, j, Polynomial::one(&ring)),
                    Slot::Border(m) => {
                        for (i, row) in c_index.iter().enumerate() {
                            a.set(i, j, Polynomial::var(&ring, row[m]));
                        }
                    }
                }
            }
            matrices.push(a);
        }
        BBScheme {
            structure,
            ring,
            c_index,
            matrices,
            maxdeg,
        }
    }

    pub fn mu(&self) -> usize {
        self.structure.order_ideal.mu()
    }

    pub fn nu(&self) -> usize {
        self.structure.nu()
    }

    pub fn c_count(&self) -> usize {
        self.mu() * self.nu()
    }

    /// `c_{ij}` for 1-based `i`, `j`.
    pub fn c_var(&self, i: usize, j: usize) -> Polynomial<Q> {
        Polynomial::var(&self.ring, self.c_index[i - 1][j - 1])
    }

    /// Arrow weights in `c_11, c_12, …, c_{μν}` order.
    pub fn arrow_weights(&self) -> Vec<i64> {
        self.structure.arrow_degrees().into_iter().flatten().collect()
    }

    /// Coefficient names in `c_11, c_12, …` order.
    pub fn c_names(&self) -> Vec<String> {
        let (mu, nu) = (self.mu(), self.nu());
        (1..=mu)
            .flat_map(|i| (1..=nu).map(move |j| c_name(i, j, mu, nu)))
            .collect()
    }

    /// Nonzero entries of all commutators `A_i A_j - A_j A_i` (`i < j`), in
    /// row-major order per pair, duplicates removed. Entries equal up to sign
    /// count once.
    pub fn commutator_entries(&self) -> Vec<Polynomial<Q>> {
        let mut out: Vec<Polynomial<Q>> = Vec::new();
        let mut seen: HashSet<Polynomial<Q>> = HashSet::new();
        let n = self.matrices.len();
        for i in 0..n {
            for j in i + 1..n {
                let c = self.matrices[i]
                    .mul(&self.matrices[j])
                    .sub(&self.matrices[j].mul(&self.matrices[i]));
                for r in 0..c.rows() {
                    for s in 0..c.cols() {
                        let e = c.get(r, s);
                        if e.is_zero() {
                            continue;
                        }
                        let key = e.monic();
                        if seen.insert(key) {
                            out.push(e.clone());
                        }
                    }
                }
            }
        }
        out
    }

    /// The ideal of the scheme, generated by the commutator entries.
    pub fn ideal(&self) -> Ideal {
        Ideal::new(&self.ring, self.commutator_entries()).expect("entries share the ring")
    }

    /// The monomial point: all coefficients zero.
    pub fn origin(&self) -> Vec<Q> {
        vec![Q::zero(); self.ring.n()]
    }

    /// Coordinates in ring order from values listed in `c_11, c_12, …` order.
    pub fn point_from_c_order(&self, values: &[Q]) -> Result<Vec<Q>, BbsError> {
        if values.len() != self.c_count() {
            return Err(BbsError::Poly(PolyError::DimensionMismatch {
                expected: self.c_count(),
                found: values.len(),
            }));
        }
        let mut p = vec![Q::zero(); self.ring.n()];
        let nu = self.nu();
        for (i, row) in self.c_index.iter().enumerate() {
            for (j, &idx) in row.iter().enumerate() {
                p[idx] = values[i * nu + j].clone();
            }
        }
        Ok(p)
    }
}

/// Dimension of the span of the linear parts of `gens` at the origin.
pub fn linear_part_dimension(gens: &[Polynomial<Q>]) -> usize {
    let Some(first) = gens.first() else { return 0 };
    let n = first.ring().n();
    let mut rows = Vec::with_capacity(gens.len() * n);
    for g in gens {
        let mut row = vec![Q::zero(); n];
        for (m, c) in g.terms() {
            if m.total_degree() == 1 {
                let i = m.support().next().expect("degree one");
                row[i] = c.clone();
            }
        }
        rows.extend(row);
    }
    ScalarMatrix::new(gens.len(), n, rows).expect("shape").rank()
}

/// Result of solving separating generators for a tuple of variables.
#[derive(Clone, Debug)]
pub struct Reembedding {
    /// The image ideal in the ring without the solved variables.
    pub ideal: Ideal,
    /// `(variable, expression)` in the order they were solved; each expression
    /// is free of every solved variable.
    pub solved: Vec<(String, Polynomial<Q>)>,
}

/// Eliminate `z` by repeatedly picking a generator in which one remaining
/// `z`-variable occurs only in a single term `c*z` with `c` constant, solving
/// for it and substituting everywhere. Yields `I ∩ K[rest]` when it succeeds;
/// fails with the first variable no generator solves for.
pub fn separating_reembedding<S: AsRef<str>>(ideal: &Ideal, z: &[S]) -> Result<Reembedding, BbsError> {
    let ring = ideal.ring().clone();
    let mut z_idx = Vec::new();
    for s in z {
        let i = ring
            .index_of(s.as_ref())
            .ok_or_else(|| PolyError::UnknownVariable(s.as_ref().to_string()))?;
        z_idx.push(i);
    }
    let mut gens: Vec<Polynomial<Q>> = ideal.generators().to_vec();
    let mut remaining = z_idx.clone();
    let mut solved: Vec<(usize, Polynomial<Q>)> = Vec::new();
    while !remaining.is_empty() {
        // prefer the shortest solving generator; ties by variable position
        let mut best: Option<(usize, usize, usize)> = None;
        for (gi, g) in gens.iter().enumerate() {
            for (zi, &v) in remaining.iter().enumerate() {
                if solves_for(g, v) {
                    let key = (g.len(), zi, gi);
                    if best.is_none_or(|b| key < (b.0, b.1, b.2)) {
                        best = Some(key);
                    }
                }
            }
        }
        let Some((_, zi, gi)) = best else {
            return Err(BbsError::NotSeparating(ring.name(remaining[0]).to_string()));
        };
        let v = remaining.remove(zi);
        let g = gens.swap_remove(gi);
        let expr = solve(&g, v);
        let mut images: Vec<Polynomial<Q>> = (0..ring.n()).map(|i| Polynomial::var(&ring, i)).collect();
        images[v] = expr.clone();
        gens = gens
            .iter()
            .map(|h| if h.degree_in(v) > 0 { h.substitute(&ring, &images) } else { h.clone() })
            .filter(|h| !h.is_zero())
            .collect();
        for (_, e) in solved.iter_mut() {
            if e.degree_in(v) > 0 {
                *e = e.substitute(&ring, &images);
            }
        }
        solved.push((v, expr));
    }
    let target = ideal.subring_without(&z_idx);
    let gens = gens
        .iter()
        .map(|g| g.rebase_by_name(&target))
        .collect::<Result<Vec<_>, _>>()?;
    let solved = solved
        .into_iter()
        .map(|(v, e)| Ok((ring.name(v).to_string(), e.rebase_by_name(&target)?)))
        .collect::<Result<Vec<_>, BbsError>>()?;
    Ok(Reembedding {
        ideal: Ideal::new(&target, gens)?,
        solved,
    })
}

fn solves_for(g: &Polynomial<Q>, v: usize) -> bool {
    let mut hits = 0;
    for (m, _) in g.terms() {
        match m.exp(v) {
            0 => {}
            1 if m.total_degree() == 1 => hits += 1,
            _ => return false,
        }
    }
    hits == 1
}

/// `v = -(g - c*v)/c` for the single linear occurrence `c*v` in `g`.
fn solve(g: &Polynomial<Q>, v: usize) -> Polynomial<Q> {
    let ring = g.ring();
    let lin = Monomial::var(ring.n(), v, 1);
    let c = g
        .terms()
        .iter()
        .find(|(m, _)| *m == lin)
        .map(|(_, c)| c.clone())
        .expect("solvable");
    let rest = g.sub(&Polynomial::monomial(ring, lin, c.clone()));
    rest.scale(&(-c.recip()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xyz() -> Vec<String> {
        default_var_names(3)
    }

    fn oi(terms: &[&str]) -> OrderIdeal {
        OrderIdeal::parse(&xyz(), terms).unwrap()
    }

    #[test]
    fn validation() {
        let o = oi(&["1", "x", "y", "z", "z^2"]);
        assert_eq!(o.mu(), 5);
        assert_eq!(o.term_strings(), vec!["1", "z", "y", "x", "z^2"]);
        assert!(matches!(
            OrderIdeal::parse(&xyz(), &["x"]),
            Err(BbsError::NotDivisorClosed { .. })
        ));
        assert_eq!(oi(&["1"]).mu(), 1);
        assert!(matches!(
            OrderIdeal::parse(&xyz(), &["1", "x", "y", "x*y*z"]),
            Err(BbsError::NotDivisorClosed { .. })
        ));
        assert!(matches!(
            OrderIdeal::parse(&xyz(), &["1", "2*x"]),
            Err(BbsError::NotAMonomial(_))
        ));
    }

    #[test]
    fn borders() {
        let s = BorderStructure::new(&oi(&["1", "x", "y", "z", "z^2"]));
        assert_eq!(
            s.border_strings(),
            vec!["y*z", "x*z", "y^2", "x*y", "x^2", "z^3", "y*z^2", "x*z^2"]
        );
        let s = BorderStructure::new(&oi(&["1", "x", "y", "z"]));
        assert_eq!(s.border_strings(), vec!["z^2", "y*z", "x*z", "y^2", "x*y", "x^2"]);
        // the border of {1,x,y,z,yz} itself
        let s = BorderStructure::new(&oi(&["1", "x", "y", "z", "y*z"]));
        assert_eq!(
            s.border_strings(),
            vec!["z^2", "x*z", "y^2", "x*y", "x^2", "y*z^2", "y^2*z", "x*y*z"]
        );
        // and of {1,x,y,z,xy}
        let s = BorderStructure::new(&oi(&["1", "x", "y", "z", "x*y"]));
        assert_eq!(
            s.border_strings(),
            vec!["z^2", "y*z", "x*z", "y^2", "x^2", "x*y*z", "x*y^2", "x^2*y"]
        );
        let two = default_var_names(2);
        let s = BorderStructure::new(&OrderIdeal::parse(&two, &["1"]).unwrap());
        assert_eq!(s.border_strings(), vec!["y", "x"]);
    }

    #[test]
    fn multiplication_matrices() {
        let one = default_var_names(1);
        let b = BBScheme::new(&OrderIdeal::parse(&one, &["1", "x"]).unwrap());
        let a = &b.matrices[0];
        assert_eq!(a.to_strings(), vec![vec!["0", "c11"], vec!["1", "c21"]]);
        assert!(b.ideal().is_zero());

        let b = BBScheme::new(&oi(&["1", "x", "y", "z"]));
        // x * 1 = x = t_4
        let a1 = &b.matrices[0];
        let col: Vec<String> = (0..4).map(|i| a1.get(i, 0).to_string()).collect();
        assert_eq!(col, vec!["0", "0", "0", "1"]);

        let b = BBScheme::new(&oi(&["1", "x", "y", "z", "z^2"]));
        let a3 = &b.matrices[2];
        let col: Vec<String> = (0..5).map(|i| a3.get(i, 1).to_string()).collect();
        assert_eq!(col, vec!["0", "0", "0", "0", "1"]);
    }

    #[test]
    fn arrow_grading_and_maxdeg() {
        let b = BBScheme::new(&oi(&["1", "x", "y", "z"]));
        let w = b.arrow_weights();
        assert_eq!(w.len(), 24);
        assert!(w[..6].iter().all(|&x| x == 2));
        assert!(w[6..].iter().all(|&x| x == 1));
        assert!(b.maxdeg);
        assert_eq!(b.ring.m(), 0);

        let b = BBScheme::new(&oi(&["1", "x", "y", "z", "z^2"]));
        assert_eq!(
            b.arrow_weights(),
            vec![
                2, 2, 2, 2, 2, 3, 3, 3, 1, 1, 1, 1, 1, 2, 2, 2, 1, 1, 1, 1, 1, 2, 2, 2, 1, 1, 1, 1,
                1, 2, 2, 2, 0, 0, 0, 0, 0, 1, 1, 1
            ]
        );
        assert_eq!(b.ring.params(), &["c51", "c52", "c53", "c54", "c55"]);
        assert!(b.maxdeg);

        let two = default_var_names(2);
        assert!(!OrderIdeal::parse(&two, &["1", "x", "x^2", "x^3"]).unwrap().is_maxdeg());
    }

    #[test]
    fn commutator_ideal_is_graded_and_vanishes_at_origin() {
        for terms in [
            &["1", "x", "y", "z"][..],
            &["1", "x", "y", "z", "z^2"][..],
            &["1", "x", "y", "z", "x*y"][..],
        ] {
            let b = BBScheme::new(&oi(terms));
            let gens = b.commutator_entries();
            let origin = b.origin();
            for g in &gens {
                assert!(g.is_homogeneous(), "{g}");
                assert!(g.evaluate(&origin).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn reembedding_by_substitution() {
        let r = RingSpec::standard(&[] as &[&str], &["u", "v", "w"]).unwrap();
        let i = Ideal::parse(&r, &["u - v^2", "w - u*v", "w^2 - v^6"]).unwrap();
        let e = separating_reembedding(&i, &["u", "w"]).unwrap();
        assert_eq!(e.ideal.ring().vars(), &["v"]);
        assert!(e.ideal.is_zero());
        let elim = i.eliminate_names(&["u", "w"]).unwrap();
        assert!(elim.is_zero());
        let bad = Ideal::parse(&r, &["u^2 - v"]).unwrap();
        assert!(matches!(
            separating_reembedding(&bad, &["u"]),
            Err(BbsError::NotSeparating(_))
        ));
    }

    #[test]
    fn json_input() {
        let o = OrderIdeal::from_json("[[0,0,0],[1,0,0],[0,1,0],[0,0,1],[0,0,2]]").unwrap();
        assert_eq!(o.mu(), 5);
        assert_eq!(o.names(), &xyz());
        let o = OrderIdeal::from_json(r#"{"vars":["a","b"],"terms":["1","a","b"]}"#).unwrap();
        assert_eq!(o.term_strings(), vec!["1", "b", "a"]);
        assert!(OrderIdeal::from_json("{}").is_err());
    }

    #[test]
    fn larger_schemes() {
        // generator counts and linear-part ranks cross-checked with sympy
        let b = BBScheme::new(&oi(&["1", "x", "y", "z", "z^2"]));
        let g = b.commutator_entries();
        assert_eq!(g.len(), 60);
        assert_eq!(linear_part_dimension(&g), 19);
        let b = BBScheme::new(&oi(&["1", "x", "y", "z", "y*z"]));
        let g = b.commutator_entries();
        assert_eq!(g.len(), 60);
        assert_eq!(linear_part_dimension(&g), 25);
        assert!(!b.structure.border_strings().contains(&"x^2*y".to_string()));
    }

    #[test]
    fn reembedding_of_quintic_scheme() {
        let z = "c11 c12 c13 c14 c15 c16 c17 c18 c21 c22 c23 c24 c25 c27 c28 c37 c38 c47 c48";
        let zs: Vec<&str> = z.split(' ').collect();
        let b = BBScheme::new(&oi(&["1", "x", "y", "z", "z^2"]));
        let e = separating_reembedding(&b.ideal(), &zs).unwrap();
        assert_eq!(e.ideal.ring().n(), 21);
        assert_eq!(e.solved.len(), 19);
        // no linear parts survive: the origin is a singular point
        assert_eq!(linear_part_dimension(e.ideal.generators()), 0);
        let b = BBScheme::new(&oi(&["1", "x", "y", "z", "x*y"]));
        assert!(matches!(
            separating_reembedding(&b.ideal(), &zs),
            Err(BbsError::NotSeparating(_))
        ));
    }
}
