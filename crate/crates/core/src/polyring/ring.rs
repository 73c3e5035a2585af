use std::collections::HashSet;
use std::sync::Arc;

use super::order::TermOrder;
use super::PolyError;

/// Variable layout of a polynomial ring `K[a_1..a_m][x_1..x_k]`.
///
/// Parameters are stored first and carry weight 0; fiber variables follow with
/// their own integer weights.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingSpec {
    params: Vec<String>,
    vars: Vec<String>,
    weights: Vec<i64>,
    full_weights: Vec<i64>,
    order: TermOrder,
}

impl RingSpec {
    pub fn new<S: AsRef<str>>(
        params: &[S],
        vars: &[S],
        weights: &[i64],
    ) -> Result<Arc<RingSpec>, PolyError> {
        let params: Vec<String> = params.iter().map(|s| s.as_ref().to_string()).collect();
        let vars: Vec<String> = vars.iter().map(|s| s.as_ref().to_string()).collect();
        if weights.len() != vars.len() {
            return Err(PolyError::DimensionMismatch {
                expected: vars.len(),
                found: weights.len(),
            });
        }
        let mut seen = HashSet::new();
        for name in params.iter().chain(vars.iter()) {
            if !valid_name(name) {
                return Err(PolyError::BadName(name.clone()));
            }
            if !seen.insert(name.as_str()) {
                return Err(PolyError::DuplicateName(name.clone()));
            }
        }
        let mut full_weights = vec![0; params.len()];
        full_weights.extend_from_slice(weights);
        let order = TermOrder::WeightedDegRevLex(full_weights.clone());
        Ok(Arc::new(RingSpec {
            params,
            vars,
            weights: weights.to_vec(),
            full_weights,
            order,
        }))
    }

    /// Ring with standard weights 1 on every fiber variable.
    pub fn standard<S: AsRef<str>>(params: &[S], vars: &[S]) -> Result<Arc<RingSpec>, PolyError> {
        let w = vec![1; vars.len()];
        Self::new(params, vars, &w)
    }

    pub fn m(&self) -> usize {
        self.params.len()
    }

    pub fn k(&self) -> usize {
        self.vars.len()
    }

    pub fn n(&self) -> usize {
        self.params.len() + self.vars.len()
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    /// Weights of the fiber variables.
    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    /// Weights of all variables, parameters contributing 0.
    pub fn full_weights(&self) -> &[i64] {
        &self.full_weights
    }

    pub fn name(&self, idx: usize) -> &str {
        if idx < self.params.len() {
            &self.params[idx]
        } else {
            &self.vars[idx - self.params.len()]
        }
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.params.iter().chain(self.vars.iter()).map(|s| s.as_str())
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names().position(|n| n == name)
    }

    pub fn is_param(&self, idx: usize) -> bool {
        idx < self.params.len()
    }

    /// Index range of the fiber variables.
    pub fn var_range(&self) -> std::ops::Range<usize> {
        self.params.len()..self.n()
    }

    /// The ring's default order: weighted degrevlex by the full weight vector
    /// (parameters weigh 0), ties broken by plain degrevlex.
    pub fn default_order(&self) -> &TermOrder {
        &self.order
    }

    /// The parameter ring `A = K[a_1..a_m]`.
    pub fn base_ring(&self) -> Arc<RingSpec> {
        let empty: [String; 0] = [];
        RingSpec::new(&self.params, &empty, &[]).expect("base ring of a valid ring")
    }

    /// The fiber ring `K[x_1..x_k]` with the same weights.
    pub fn fiber_ring(&self) -> Arc<RingSpec> {
        let empty: [String; 0] = [];
        RingSpec::new(&empty, &self.vars, &self.weights).expect("fiber ring of a valid ring")
    }

    /// Same variables, all of them treated as fiber variables (weights of the
    /// parameters become 0).
    pub fn flattened(&self) -> Arc<RingSpec> {
        let empty: [String; 0] = [];
        let names: Vec<String> = self.names().map(str::to_string).collect();
        RingSpec::new(&empty, &names, &self.full_weights).expect("flattened ring")
    }

    /// Copy of this ring with one extra fiber variable appended.
    pub fn with_extra_var(&self, name: &str, weight: i64) -> Result<Arc<RingSpec>, PolyError> {
        let mut vars = self.vars.clone();
        vars.push(name.to_string());
        let mut w = self.weights.clone();
        w.push(weight);
        RingSpec::new(&self.params, &vars, &w)
    }

    /// A name of the form `stem`, `stem1`, `stem2`.. that is not used yet.
    pub fn fresh_name(&self, stem: &str) -> String {
        if self.index_of(stem).is_none() {
            return stem.to_string();
        }
        (1..)
            .map(|i| format!("{stem}{i}"))
            .find(|c| self.index_of(c).is_none())
            .expect("infinite supply of names")
    }
}

/// Identifiers are `[A-Za-z_][A-Za-z0-9_]*` optionally followed by a bracketed
/// comma separated list of integers, e.g. `c[5,3]`.
pub(crate) fn valid_name(name: &str) -> bool {
    let (stem, idx) = match name.find('[') {
        Some(p) => (&name[..p], Some(&name[p..])),
        None => (name, None),
    };
    let mut chars = stem.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    if !chars.all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return false;
    }
    match idx {
        None => true,
        Some(s) => {
            s.len() >= 3
                && s.ends_with(']')
                && s[1..s.len() - 1]
                    .split(',')
                    .all(|p| !p.is_empty() && p.chars().all(|c| c.is_ascii_digit()))
        }
    }
}

pub(crate) fn same_ring(a: &Arc<RingSpec>, b: &Arc<RingSpec>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layout() {
        let r = RingSpec::new(&["a", "b"], &["x", "y", "z"], &[1, 2, 2]).unwrap();
        assert_eq!((r.m(), r.k(), r.n()), (2, 3, 5));
        assert_eq!(r.full_weights(), &[0, 0, 1, 2, 2]);
        assert_eq!(r.index_of("y"), Some(3));
        assert_eq!(r.name(1), "b");
        assert!(r.is_param(1) && !r.is_param(2));
        assert_eq!(r.base_ring().n(), 2);
        assert_eq!(r.fiber_ring().weights(), &[1, 2, 2]);
    }

    #[test]
    fn rejects_duplicates_and_bad_names() {
        assert!(matches!(
            RingSpec::new(&["a"], &["a"], &[1]),
            Err(PolyError::DuplicateName(_))
        ));
        assert!(RingSpec::new(&["1a"], &["x"], &[1]).is_err());
        assert!(RingSpec::new(&["a"], &["x"], &[1, 2]).is_err());
        assert!(valid_name("c[5,3]"));
        assert!(!valid_name("c[5,]"));
        assert!(!valid_name("c[]"));
    }

    #[test]
    fn fresh_names_avoid_collisions() {
        let r = RingSpec::standard(&["t"], &["t1", "x"]).unwrap();
        assert_eq!(r.fresh_name("t"), "t2");
        assert_eq!(r.fresh_name("y"), "y");
    }
}
