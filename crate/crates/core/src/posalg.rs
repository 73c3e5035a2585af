//! Positive algebras `R = P/I` over `A = K[a_1..a_m]`, with `P = A[x_1..x_k]`
//! graded by strictly positive weights on the fiber variables.
//!
//! Local invariants at zero points are read off from ranks of the linear-part
//! matrix and from Krull dimensions of fiber ideals; local rings are never built.

use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Deserialize;
use thiserror::Error;

use crate::ideals::{GbError, GroebnerBasis, Ideal};
use crate::matrices::{MatrixError, PolyMatrix};
use crate::polyring::{
    parse_all, to_fraction_coeffs, Monomial, PolyError, Polynomial, RatFunc, RingSpec, Q,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosAlgError {
    #[error("fiber variable `{var}` has non-positive weight {weight}")]
    NonPositiveWeight { var: String, weight: i64 },
    #[error("generator `{generator}` is not homogeneous (degrees {degrees:?})")]
    Inhomogeneous { generator: String, degrees: Vec<i64> },
    #[error("the ideal meets the base ring: `{witness}` lies in it")]
    MeetsBase { witness: String },
    #[error("point is not on the scheme: generator `{generator}` takes the value {value}")]
    NotOnScheme { generator: String, value: String },
    #[error("no dimension at the zero point: pass it explicitly, declare equidimensionality or give components through it")]
    DimensionUnknown,
    #[error("malformed descriptor: {0}")]
    Descriptor(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Gb(#[from] GbError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// A prime component `P/p` of known Krull dimension.
#[derive(Clone, Debug)]
pub struct Component {
    pub prime: Vec<Polynomial<Q>>,
    pub dim: usize,
}

/// A validated positive algebra.
#[derive(Clone, Debug)]
pub struct PositiveAlgebra {
    ring: Arc<RingSpec>,
    gens: Vec<Polynomial<Q>>,
    ideal: Ideal,
    /// Minimal primes with their dimensions, when known.
    pub components: Option<Vec<Component>>,
    /// Generators of the radical, when known.
    pub radical: Option<Vec<Polynomial<Q>>>,
    /// All minimal primes have the same dimension.
    pub equidimensional: bool,
}

/// JSON form: `{params, vars, weights, generators, components?, radical?, equidimensional?}`.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Descriptor {
    #[serde(default)]
    pub params: Vec<String>,
    pub vars: Vec<String>,
    pub weights: Option<Vec<i64>>,
    pub generators: Vec<String>,
    pub components: Option<Vec<ComponentDescriptor>>,
    pub radical: Option<Vec<String>>,
    #[serde(default)]
    pub equidimensional: bool,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentDescriptor {
    pub prime_gens: Vec<String>,
    pub dim: usize,
}

impl Descriptor {
    pub fn ring(&self) -> Result<Arc<RingSpec>, PosAlgError> {
        let w = self.weights.clone().unwrap_or_else(|| vec![1; self.vars.len()]);
        Ok(RingSpec::new(&self.params, &self.vars, &w)?)
    }
}

impl PositiveAlgebra {
    /// Check positivity of the weights, homogeneity of every generator and
    /// `I ∩ A = 0`.
    ///
    /// With positive weights the ideal is graded and its degree-0 part is
    /// `I ∩ A`, generated by the degree-0 generators; these all lie in `A`.
    /// So `I ∩ A = 0` exactly when no generator has degree 0.
    pub fn validate(ring: &Arc<RingSpec>, gens: Vec<Polynomial<Q>>) -> Result<Self, PosAlgError> {
        for (v, &w) in ring.vars().iter().zip(ring.weights()) {
            if w <= 0 {
                return Err(PosAlgError::NonPositiveWeight {
                    var: v.clone(),
                    weight: w,
                });
            }
        }
        for g in &gens {
            if !crate::polyring::same_ring(g.ring(), ring) {
                return Err(GbError::RingMismatch.into());
            }
            let degs = g.w_degrees();
            if degs.len() > 1 {
                return Err(PosAlgError::Inhomogeneous {
                    generator: g.to_string(),
                    degrees: degs.into_iter().collect(),
                });
            }
            if degs.first() == Some(&0) {
                return Err(PosAlgError::MeetsBase {
                    witness: g.to_string(),
                });
            }
        }
        let ideal = Ideal::new(ring, gens.clone())?;
        Ok(PositiveAlgebra {
            ring: ring.clone(),
            gens,
            ideal,
            components: None,
            radical: None,
            equidimensional: false,
        })
    }

    pub fn parse<S: AsRef<str>>(ring: &Arc<RingSpec>, gens: &[S]) -> Result<Self, PosAlgError> {
        Self::validate(ring, parse_all(gens, ring)?)
    }

    pub fn from_descriptor(d: &Descriptor) -> Result<Self, PosAlgError> {
        let ring = d.ring()?;
        let mut pa = Self::parse(&ring, &d.generators)?;
        if let Some(cs) = &d.components {
            pa.components = Some(
                cs.iter()
                    .map(|c| {
                        Ok(Component {
                            prime: parse_all(&c.prime_gens, &ring)?,
                            dim: c.dim,
                        })
                    })
                    .collect::<Result<_, PosAlgError>>()?,
            );
        }
        if let Some(r) = &d.radical {
            pa.radical = Some(parse_all(r, &ring)?);
        }
        pa.equidimensional = d.equidimensional;
        Ok(pa)
    }

    pub fn from_json(text: &str) -> Result<Self, PosAlgError> {
        let d: Descriptor =
            serde_json::from_str(text).map_err(|e| PosAlgError::Descriptor(e.to_string()))?;
        Self::from_descriptor(&d)
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial<Q>] {
        &self.gens
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn m(&self) -> usize {
        self.ring.m()
    }

    pub fn k(&self) -> usize {
        self.ring.k()
    }

    pub fn n(&self) -> usize {
        self.ring.n()
    }

    /// The generators sorted ascending by degree (stable).
    pub fn degree_sorted(&self) -> Self {
        let mut out = self.clone();
        out.gens.sort_by_key(|g| g.w_degree().unwrap_or(0));
        out
    }

    /// `(Γ, 0, …, 0)`.
    pub fn zero_point(&self, gamma: &[Q]) -> Result<Vec<Q>, PosAlgError> {
        self.check_gamma(gamma)?;
        let mut p = gamma.to_vec();
        p.resize(self.n(), Q::zero());
        Ok(p)
    }

    fn check_gamma(&self, gamma: &[Q]) -> Result<(), PosAlgError> {
        if gamma.len() != self.m() {
            return Err(PolyError::DimensionMismatch {
                expected: self.m(),
                found: gamma.len(),
            }
            .into());
        }
        Ok(())
    }

    /// First generator not vanishing at `point`, if any.
    pub fn check_on_scheme(&self, point: &[Q]) -> Result<(), PosAlgError> {
        for g in &self.gens {
            let v = g.evaluate(point)?;
            if !v.is_zero() {
                return Err(PosAlgError::NotOnScheme {
                    generator: g.to_string(),
                    value: v.to_string(),
                });
            }
        }
        Ok(())
    }

    /// Coefficient matrix of the linear parts: row `i` holds the coefficients
    /// of `x_1..x_k` in the linear part of generator `i`.
    pub fn lin_coeff_matrix(&self) -> PolyMatrix {
        let mut mat = PolyMatrix::zeros(&self.ring, self.gens.len(), self.k());
        for (i, g) in self.gens.iter().enumerate() {
            for (j, c) in lin_coefficients(g).into_iter().enumerate() {
                mat.set(i, j, c);
            }
        }
        mat
    }

    /// The linear parts of the generators, zero forms included; they generate
    /// the module of linear parts of `I`.
    pub fn lin_module(&self) -> Vec<Polynomial<Q>> {
        self.gens.iter().map(lin_a).collect()
    }

    /// Specialized generators in the fiber ring `K[X]`, zeros included.
    pub fn specialized_generators(&self, gamma: &[Q]) -> Result<Vec<Polynomial<Q>>, PosAlgError> {
        self.check_gamma(gamma)?;
        let fiber = self.ring.fiber_ring();
        Ok(self
            .gens
            .iter()
            .map(|g| g.specialize_into(gamma, &fiber))
            .collect::<Result<_, _>>()?)
    }

    /// The fiber ideal `I_Γ ⊆ K[X]`.
    pub fn fiber_ideal(&self, gamma: &[Q]) -> Result<Ideal, PosAlgError> {
        let fiber = self.ring.fiber_ring();
        let gens = self.specialized_generators(gamma)?;
        Ok(Ideal::new(&fiber, gens)?.with_budget(self.ideal.budget()))
    }

    /// Krull dimension of the fiber over `Γ`.
    pub fn fiber_dimension(&self, gamma: &[Q]) -> Result<usize, PosAlgError> {
        // I ⊆ ⟨X⟩, so the origin lies on every fiber and the fiber ideal is proper
        Ok(self
            .fiber_ideal(gamma)?
            .krull_dimension()?
            .expect("fiber ideals of a positive algebra are proper"))
    }

    /// Krull dimension of `L[X]/I L[X]` with `L` the fraction field of `A`.
    pub fn generic_fiber_dimension(&self) -> Result<usize, PosAlgError> {
        let fiber = self.ring.fiber_ring();
        let gens: Vec<Polynomial<RatFunc>> = self
            .gens
            .iter()
            .filter(|g| !g.is_zero())
            .map(to_fraction_coeffs)
            .collect();
        if gens.is_empty() {
            return Ok(self.k());
        }
        let gb = GroebnerBasis::compute(&fiber, &gens, fiber.default_order(), self.ideal.budget())?;
        Ok(gb
            .krull_dimension()
            .expect("generic fiber ideals of a positive algebra are proper"))
    }

    /// Krull dimension of `R`.
    pub fn dimension(&self) -> Result<usize, PosAlgError> {
        Ok(self
            .ideal
            .krull_dimension()?
            .expect("ideals of a positive algebra are proper"))
    }

    /// Curve through `point = (Γ, π)` and its zero point `Γ_0`:
    /// `x_i ↦ π_i t^{w_i}`, `a_j ↦ γ_j`. Passes `Γ_0` at `t = 0` and the point at `t = 1`.
    pub fn connecting_curve(&self, point: &[Q]) -> Result<Segment, PosAlgError> {
        if point.len() != self.n() {
            return Err(PolyError::DimensionMismatch {
                expected: self.n(),
                found: point.len(),
            }
            .into());
        }
        self.check_on_scheme(point)?;
        let line = t_ring();
        let t = Polynomial::var(&line, 0);
        let m = self.m();
        let w = self.ring.weights();
        let images: Vec<Polynomial<Q>> = (0..self.n())
            .map(|i| {
                if i < m {
                    Polynomial::constant(&line, point[i].clone())
                } else {
                    t.pow(w[i - m] as u32).scale(&point[i])
                }
            })
            .collect();
        let seg = Segment {
            kind: SegmentKind::FiberCurve,
            images,
            from: self.zero_point(&point[..m])?,
            to: point.to_vec(),
            from_t: Q::zero(),
            to_t: Q::one(),
        };
        self.verify_segment(&seg)?;
        Ok(seg)
    }

    /// Line from `Γ_0^{(1)}` to `Γ_0^{(2)}` inside the zero section.
    pub fn base_line(&self, g1: &[Q], g2: &[Q]) -> Result<Segment, PosAlgError> {
        let from = self.zero_point(g1)?;
        let to = self.zero_point(g2)?;
        let line = t_ring();
        let t = Polynomial::var(&line, 0);
        let one_minus_t = Polynomial::one(&line).sub(&t);
        let images: Vec<Polynomial<Q>> = from
            .iter()
            .zip(&to)
            .map(|(a, b)| one_minus_t.scale(a).add(&t.scale(b)))
            .collect();
        let seg = Segment {
            kind: SegmentKind::BaseLine,
            images,
            from,
            to,
            from_t: Q::zero(),
            to_t: Q::one(),
        };
        self.verify_segment(&seg)?;
        Ok(seg)
    }

    /// Chain of at most three irreducible curves from `p1` to `p2`: down to the
    /// zero point of `p1`, along the zero section, up to `p2`. Constant pieces
    /// are dropped; equal endpoints give a single constant segment.
    pub fn connect_points(&self, p1: &[Q], p2: &[Q]) -> Result<ConnectingPath, PosAlgError> {
        let m = self.m();
        let c1 = self.connecting_curve(p1)?;
        let c2 = self.connecting_curve(p2)?;
        if p1 == p2 {
            let line = t_ring();
            return Ok(ConnectingPath {
                segments: vec![Segment {
                    kind: SegmentKind::Constant,
                    images: p1.iter().map(|c| Polynomial::constant(&line, c.clone())).collect(),
                    from: p1.to_vec(),
                    to: p1.to_vec(),
                    from_t: Q::zero(),
                    to_t: Q::one(),
                }],
            });
        }
        let mut segments = Vec::new();
        if !c1.is_constant() {
            segments.push(c1.reversed());
        }
        if p1[..m] != p2[..m] {
            segments.push(self.base_line(&p1[..m], &p2[..m])?);
        }
        if !c2.is_constant() {
            segments.push(c2);
        }
        Ok(ConnectingPath { segments })
    }

    /// Substituting the segment into every generator gives zero.
    pub fn verify_segment(&self, seg: &Segment) -> Result<(), PosAlgError> {
        let line = seg.images[0].ring().clone();
        for g in &self.gens {
            let s = g.substitute(&line, &seg.images);
            if !s.is_zero() {
                return Err(PosAlgError::NotOnScheme {
                    generator: g.to_string(),
                    value: s.to_string(),
                });
            }
        }
        Ok(())
    }

    /// Kernel of `P → K[t]` for the curve through `point`, as an ideal of `P`.
    pub fn curve_ideal(&self, point: &[Q]) -> Result<Ideal, PosAlgError> {
        let seg = self.connecting_curve(point)?;
        let t_name = self.ring.fresh_name("t");
        let big = self.ring.with_extra_var(&t_name, 1)?;
        let ti = big.index_of(&t_name).expect("added");
        let mut images: Vec<Polynomial<Q>> = vec![Polynomial::zero(&big)];
        images[0] = Polynomial::var(&big, ti);
        let gens: Vec<Polynomial<Q>> = seg
            .images
            .iter()
            .enumerate()
            .map(|(i, img)| Polynomial::var(&big, i).sub(&img.substitute(&big, &images)))
            .collect();
        Ok(Ideal::new(&big, gens)?.eliminate(&[ti])?)
    }

    /// Cotangent dimensions, fiber dimension and embedding codimensions at `Γ_0`.
    /// `d_zero` is the dimension of `R` at `Γ_0`; without it, it is taken from
    /// the component data, or is `dim R` for equidimensional `R`, or stays unknown.
    pub fn local_invariants(&self, gamma: &[Q], d_zero: Option<usize>) -> Result<LocalInvariants, PosAlgError> {
        let rank = self.lin_coeff_matrix().specialize(gamma)?.rank();
        let cot_zero = self.n() - rank;
        let cot_fiber = self.k() - rank;
        let fiber_dim = self.fiber_dimension(gamma)?;
        let d_zero = match d_zero {
            Some(d) => Some(d),
            None => self.dimension_at_zero_point(gamma).ok(),
        };
        Ok(LocalInvariants {
            gamma: gamma.to_vec(),
            m: self.m(),
            lin_rank: rank,
            cot_dim_zero_point: cot_zero,
            cot_dim_fiber_origin: cot_fiber,
            fiber_dim,
            dim_zero_point: d_zero,
        })
    }

    /// Dimension of `R` at `Γ_0` from component data or equidimensionality.
    pub fn dimension_at_zero_point(&self, gamma: &[Q]) -> Result<usize, PosAlgError> {
        let point = self.zero_point(gamma)?;
        if let Some(cs) = &self.components {
            let mut best = None;
            for c in cs {
                let through = c
                    .prime
                    .iter()
                    .map(|p| p.evaluate(&point))
                    .collect::<Result<Vec<_>, _>>()?
                    .iter()
                    .all(Zero::is_zero);
                if through {
                    best = best.max(Some(c.dim));
                }
            }
            return best.ok_or(PosAlgError::DimensionUnknown);
        }
        if self.equidimensional {
            return self.dimension();
        }
        Err(PosAlgError::DimensionUnknown)
    }
}

/// Numeric invariants at a zero point `Γ_0` and at the origin of its fiber.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalInvariants {
    pub gamma: Vec<Q>,
    pub m: usize,
    pub lin_rank: usize,
    pub cot_dim_zero_point: usize,
    pub cot_dim_fiber_origin: usize,
    pub fiber_dim: usize,
    pub dim_zero_point: Option<usize>,
}

impl LocalInvariants {
    /// Embedding codimension of the fiber at its origin.
    pub fn ecod_fiber(&self) -> usize {
        self.cot_dim_fiber_origin - self.fiber_dim
    }

    /// Embedding codimension of `R` at `Γ_0`, when its dimension is known.
    pub fn ecod_zero_point(&self) -> Option<i64> {
        self.dim_zero_point
            .map(|d| self.cot_dim_zero_point as i64 - d as i64)
    }

    pub fn fiber_regular(&self) -> bool {
        self.ecod_fiber() == 0
    }

    pub fn zero_point_regular(&self) -> Option<bool> {
        self.ecod_zero_point().map(|e| e == 0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SegmentKind {
    FiberCurve,
    BaseLine,
    Constant,
}

/// A polynomial curve `t ↦ images(t)` traversed from `from_t` to `to_t`.
#[derive(Clone, Debug)]
pub struct Segment {
    pub kind: SegmentKind,
    /// One image per coordinate, in `K[t]`.
    pub images: Vec<Polynomial<Q>>,
    pub from: Vec<Q>,
    pub to: Vec<Q>,
    pub from_t: Q,
    pub to_t: Q,
}

impl Segment {
    pub fn at(&self, t: &Q) -> Vec<Q> {
        self.images
            .iter()
            .map(|p| p.evaluate(std::slice::from_ref(t)).expect("one variable"))
            .collect()
    }

    pub fn is_constant(&self) -> bool {
        self.images.iter().all(Polynomial::is_constant)
    }

    pub fn reversed(&self) -> Segment {
        Segment {
            kind: self.kind,
            images: self.images.clone(),
            from: self.to.clone(),
            to: self.from.clone(),
            from_t: self.to_t.clone(),
            to_t: self.from_t.clone(),
        }
    }

    /// The images, as strings.
    pub fn image_strings(&self) -> Vec<String> {
        self.images.iter().map(ToString::to_string).collect()
    }
}

#[derive(Clone, Debug)]
pub struct ConnectingPath {
    pub segments: Vec<Segment>,
}

impl ConnectingPath {
    /// Endpoints agree with the images and consecutive segments meet.
    pub fn is_consistent(&self) -> bool {
        let ends_ok = self
            .segments
            .iter()
            .all(|s| s.at(&s.from_t) == s.from && s.at(&s.to_t) == s.to);
        let joins_ok = self.segments.windows(2).all(|w| w[0].to == w[1].from);
        ends_ok && joins_ok
    }
}

fn t_ring() -> Arc<RingSpec> {
    RingSpec::standard(&[] as &[&str], &["t"]).expect("valid")
}

/// Coefficients in `A` of `x_1..x_k` in `f`, as polynomials of the full ring.
pub fn lin_coefficients(f: &Polynomial<Q>) -> Vec<Polynomial<Q>> {
    let ring = f.ring();
    let m = ring.m();
    let mut buckets: Vec<Vec<(Monomial, Q)>> = vec![Vec::new(); ring.k()];
    for (mono, c) in f.terms() {
        let e = mono.exponents();
        if e[m..].iter().map(|&x| x as u64).sum::<u64>() == 1 {
            let j = e[m..].iter().position(|&x| x == 1).expect("degree one");
            let mut a = mono.clone();
            a.set_exp(m + j, 0);
            buckets[j].push((a, c.clone()));
        }
    }
    buckets
        .into_iter()
        .map(|b| Polynomial::from_terms(ring, b))
        .collect()
}

/// The `A`-linear part `f_1 x_1 + … + f_k x_k` of `f`.
pub fn lin_a(f: &Polynomial<Q>) -> Polynomial<Q> {
    let ring = f.ring();
    let m = ring.m();
    let terms = f
        .terms()
        .iter()
        .filter(|(mono, _)| mono.exponents()[m..].iter().map(|&x| x as u64).sum::<u64>() == 1)
        .cloned()
        .collect();
    Polynomial::from_terms(ring, terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{q, qf};
    use proptest::prelude::*;

    fn ring(params: &[&str], vars: &[&str], w: &[i64]) -> Arc<RingSpec> {
        RingSpec::new(params, vars, w).unwrap()
    }

    fn qs(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| q(x)).collect()
    }

    fn connecting_example() -> PositiveAlgebra {
        let vars: Vec<String> = (1..=12).map(|i| format!("x{i}")).collect();
        let r = RingSpec::new(&["a1".to_string(), "a2".to_string()], &vars, &[2, 2, 3, 3, 1, 1, 2, 2, 1, 1, 2, 2])
            .unwrap();
        PositiveAlgebra::parse(
            &r,
            &[
                "x3 - a1*x4 - x2*x9 + x1*x5",
                "x7 - a1*x8 - x6*x10",
                "x12 - a2*x11 - x6*x9",
                "x2*x6 - x2*x9 + x1*x5",
                "x8 - x2 - a2*x7 - x5*x6",
                "x11 - x2 - a1*x12 - x9*x10 - x9^2",
            ],
        )
        .unwrap()
    }

    fn pi1() -> Vec<Q> {
        let mut p = qs(&[2, 1]);
        p.push(qf(1, 2));
        p.extend(qs(&[3, 5, 1, -6, 1, 3, 0, 0, 3, -3, -3]));
        p
    }

    fn pi2() -> Vec<Q> {
        qs(&[1, 4, 7, -9, 2, 2, 0, 0, 3, 3, 0, 0, 3, 12])
    }

    #[test]
    fn validation() {
        let pa = connecting_example();
        assert_eq!(pa.generators().len(), 6);
        let r = ring(&["a"], &["x"], &[1]);
        assert!(matches!(
            PositiveAlgebra::parse(&r, &["a"]),
            Err(PosAlgError::MeetsBase { witness }) if witness == "a"
        ));
        assert!(matches!(
            PositiveAlgebra::parse(&r, &["x + x^2"]),
            Err(PosAlgError::Inhomogeneous { .. })
        ));
        let r0 = ring(&["a"], &["x", "y"], &[1, 0]);
        assert!(matches!(
            PositiveAlgebra::parse(&r0, &["x"]),
            Err(PosAlgError::NonPositiveWeight { .. })
        ));
    }

    #[test]
    fn degree_zero_certificate_agrees_with_elimination() {
        let r = ring(&["a", "b"], &["x", "y"], &[1, 2]);
        for gens in [
            &["a*x - b*x", "y - x^2"][..],
            &["a*x", "b*y"][..],
            &["x*y - a*x^3", "b^2*y^2"][..],
        ] {
            let pa = PositiveAlgebra::parse(&r, gens).unwrap();
            assert!(pa.ideal().eliminate_names(&["x", "y"]).unwrap().is_zero());
        }
    }

    #[test]
    fn linear_parts() {
        let r = ring(&["a"], &["x1", "x2", "x3"], &[1, 1, 1]);
        let f = crate::polyring::parse_poly("a - a*x1 + x2 + a^2*x2 + a^2*x1^2 - x3^2", &r).unwrap();
        assert_eq!(lin_a(&f).to_string(), crate::polyring::parse_poly("-a*x1 + (1+a^2)*x2", &r).unwrap().to_string());
        assert!(lin_a(&crate::polyring::parse_poly("a^3", &r).unwrap()).is_zero());
        assert!(lin_a(&crate::polyring::parse_poly("x1*x2 - a*x3^2", &r).unwrap()).is_zero());
    }

    #[test]
    fn linear_part_matrix() {
        let r = ring(&["a"], &["x", "y", "z"], &[1, 2, 2]);
        let pa = PositiveAlgebra::parse(&r, &["y - a*y + a^2*z - x^2"]).unwrap();
        let l = pa.lin_coeff_matrix();
        let p = |t: &str| crate::polyring::parse_poly(t, pa.ring()).unwrap();
        assert!(l.get(0, 0).is_zero());
        assert_eq!(l.get(0, 1), &p("1 - a"));
        assert_eq!(l.get(0, 2), &p("a^2"));
        assert_eq!(l.generic_rank(), 1);
        assert_eq!(pa.generic_fiber_dimension().unwrap(), 2);

        let r = ring(&["a", "b"], &["x", "y"], &[1, 1]);
        let pa = PositiveAlgebra::parse(&r, &["a*x", "b*y^2"]).unwrap();
        assert_eq!(pa.lin_coeff_matrix().to_strings(), vec![vec!["a", "0"], vec!["0", "0"]]);
        let pa = PositiveAlgebra::parse(&r, &["a*x", "a*y^2"]).unwrap();
        let lm = pa.lin_module();
        assert_eq!(lm[0].to_string(), "a*x");
        assert!(lm[1].is_zero());
        let pa = PositiveAlgebra::parse(&r, &["x^2", "x*y"]).unwrap();
        assert!(pa.lin_coeff_matrix().is_zero());
        let pa = PositiveAlgebra::parse(&r, &[] as &[&str]).unwrap();
        assert!(pa.lin_module().is_empty());
        assert_eq!(pa.generic_fiber_dimension().unwrap(), 2);
    }

    #[test]
    fn fibers() {
        let r = ring(&["a", "b"], &["x", "y"], &[1, 1]);
        let pa = PositiveAlgebra::parse(&r, &["a*x", "b*y^2"]).unwrap();
        let f = pa.fiber_ideal(&qs(&[1, 1])).unwrap();
        let expect = Ideal::parse(f.ring(), &["x", "y^2"]).unwrap();
        assert!(f.equals(&expect).unwrap());
        assert!(pa.fiber_ideal(&qs(&[0, 0])).unwrap().is_zero());
        assert_eq!(pa.fiber_dimension(&qs(&[0, 0])).unwrap(), 2);
        assert!(pa.fiber_ideal(&qs(&[1])).is_err());

        let r = ring(&["a"], &["x", "y", "z"], &[2, 2, 1]);
        let pa = PositiveAlgebra::parse(&r, &["a*x + z^2", "a*y + z^2"]).unwrap();
        assert_eq!(pa.generic_fiber_dimension().unwrap(), 1);

        let r = ring(&[], &["x", "y"], &[1, 1]);
        let pa = PositiveAlgebra::parse(&r, &["x*y"]).unwrap();
        let f = pa.fiber_ideal(&[]).unwrap();
        assert_eq!(f.generators()[0].to_string(), "x*y");
    }

    #[test]
    fn connecting_curves() {
        let pa = connecting_example();
        let c = pa.connecting_curve(&pi1()).unwrap();
        let imgs = c.image_strings();
        assert_eq!(&imgs[2..6], &["1/2*t^2", "3*t^2", "5*t^3", "t^3"]);
        assert_eq!(imgs[0], "2");
        assert_eq!(c.at(&q(0)), pa.zero_point(&qs(&[2, 1])).unwrap());
        assert_eq!(c.at(&q(1)), pi1());
        let c = pa.connecting_curve(&pi2()).unwrap();
        assert_eq!(&c.image_strings()[2..], &[
            "7*t^2", "-9*t^2", "2*t^3", "2*t^3", "0", "0", "3*t^2", "3*t^2", "0", "0", "3*t^2", "12*t^2"
        ]);

        let path = pa.connect_points(&pi1(), &pi2()).unwrap();
        assert_eq!(path.segments.len(), 3);
        assert!(path.is_consistent());
        let mid = &path.segments[1];
        assert_eq!(mid.kind, SegmentKind::BaseLine);
        assert_eq!(&mid.image_strings()[..2], &["-t + 2", "3*t + 1"]);
        assert!(mid.image_strings()[2..].iter().all(|s| s == "0"));
        assert_eq!(path.segments[0].from, pi1());
        assert_eq!(path.segments[2].to, pi2());

        let mut off = pi1();
        off[3] = q(1);
        assert!(matches!(pa.connecting_curve(&off), Err(PosAlgError::NotOnScheme { .. })));
    }

    #[test]
    fn degenerate_paths() {
        let pa = connecting_example();
        let p = pa.connect_points(&pi1(), &pi1()).unwrap();
        assert_eq!(p.segments.len(), 1);
        assert!(p.segments[0].is_constant());
        let z1 = pa.zero_point(&qs(&[2, 1])).unwrap();
        let z2 = pa.zero_point(&qs(&[1, 4])).unwrap();
        let p = pa.connect_points(&z1, &z2).unwrap();
        assert_eq!(p.segments.len(), 1);
        assert_eq!(p.segments[0].kind, SegmentKind::BaseLine);
        let c = pa.connecting_curve(&z1).unwrap();
        assert!(c.is_constant());
    }

    #[test]
    fn curve_kernel() {
        let r = ring(&["a"], &["x", "y"], &[1, 2]);
        let pa = PositiveAlgebra::parse(&r, &["a*y - x^2"]).unwrap();
        let k = pa.curve_ideal(&qs(&[1, 2, 4])).unwrap();
        let expect = Ideal::parse(&r, &["a - 1", "y - x^2"]).unwrap();
        assert!(k.equals(&expect).unwrap());
    }

    #[test]
    fn local_invariant_identities() {
        let r = ring(&["a", "b"], &["x", "y"], &[1, 1]);
        let mut pa = PositiveAlgebra::parse(&r, &["a*x + b*y"]).unwrap();
        let li = pa.local_invariants(&qs(&[0, 0]), Some(3)).unwrap();
        assert_eq!(li.fiber_dim, 2);
        assert_eq!(li.ecod_zero_point(), Some(1));
        assert_eq!(li.fiber_dim as i64, li.ecod_zero_point().unwrap() + 3 - 2);
        assert!(pa.local_invariants(&qs(&[0, 0]), None).unwrap().dim_zero_point.is_none());
        pa.equidimensional = true;
        assert_eq!(pa.local_invariants(&qs(&[0, 0]), None).unwrap().dim_zero_point, Some(3));

        let pa = PositiveAlgebra::parse(&r, &["a*x", "b*y^2"]).unwrap();
        let li = pa.local_invariants(&qs(&[0, 0]), None).unwrap();
        assert_eq!(li.ecod_fiber(), 0);

        let pa = PositiveAlgebra::parse(&r, &[] as &[&str]).unwrap();
        let li = pa.local_invariants(&qs(&[5, 7]), Some(4)).unwrap();
        assert_eq!((li.ecod_fiber(), li.ecod_zero_point()), (0, Some(0)));
    }

    #[test]
    fn components_give_local_dimension() {
        let text = r#"{"params":["a"],"vars":["x","y"],"weights":[1,1],
            "generators":["a*x","a*y"],
            "components":[{"prime_gens":["a"],"dim":2},{"prime_gens":["x","y"],"dim":1}]}"#;
        let pa = PositiveAlgebra::from_json(text).unwrap();
        assert_eq!(pa.dimension_at_zero_point(&qs(&[0])).unwrap(), 2);
        assert_eq!(pa.dimension_at_zero_point(&qs(&[3])).unwrap(), 1);
        assert!(PositiveAlgebra::from_json(r#"{"vars":["x"],"generators":["x"],"bogus":1}"#).is_err());
    }

    fn small_family(c: &[i64]) -> PositiveAlgebra {
        let r = ring(&["a", "b"], &["x", "y", "z"], &[1, 1, 2]);
        let g1 = format!("({})*a*z + ({})*b*x^2 + ({})*x*y + ({})*z", c[0], c[1], c[2], c[3]);
        let g2 = format!("({})*a^2*z + ({})*b*x*y + z - a*b*y^2", c[4], c[5]);
        PositiveAlgebra::parse(&r, &[g1, g2]).unwrap()
    }

    fn coeffs() -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(-2i64..=2, 6)
    }

    fn gammas() -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(-3i64..=3, 2)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn linear_rank_is_stable_under_combinations(
            c in coeffs(),
            h in prop::collection::vec(-2i64..=2, 4),
            gamma in gammas(),
        ) {
            let pa = small_family(&c);
            let r = pa.ring().clone();
            let p = |t: String| crate::polyring::parse_poly(&t, &r).unwrap();
            let g = pa.generators();
            let f = p(format!("({})*a + ({})*b^2 + ({})", h[0], h[1], h[2])).mul(&g[0])
                .add(&p(format!("({})*a*b + ({})", h[3], h[0])).mul(&g[1]));
            let mut gens = g.to_vec();
            gens.push(f);
            gens.push(p("x".into()).mul(&g[1]));
            let big = PositiveAlgebra::validate(&r, gens).unwrap();
            let gm = qs(&gamma);
            prop_assert_eq!(
                big.lin_coeff_matrix().specialize(&gm).unwrap().rank(),
                pa.lin_coeff_matrix().specialize(&gm).unwrap().rank()
            );
        }

        #[test]
        fn specializing_commutes_with_linear_parts(c in coeffs(), gamma in gammas()) {
            let pa = small_family(&c);
            let gm = qs(&gamma);
            let direct = pa.specialized_generators(&gm).unwrap();
            let pb = PositiveAlgebra::validate(&pa.ring().fiber_ring(), direct).unwrap();
            prop_assert_eq!(
                pb.lin_coeff_matrix().specialize(&[]).unwrap(),
                pa.lin_coeff_matrix().specialize(&gm).unwrap()
            );
        }

        #[test]
        fn codimension_inequality_on_hypersurfaces(c in coeffs(), gamma in gammas()) {
            // principal ideals are unmixed, so the local dimension is n - 1
            let mut pa = small_family(&c);
            let g = pa.generators()[0].clone();
            prop_assume!(!g.is_zero());
            pa = PositiveAlgebra::validate(pa.ring(), vec![g]).unwrap();
            pa.equidimensional = true;
            let li = pa.local_invariants(&qs(&gamma), None).unwrap();
            prop_assert_eq!(li.dim_zero_point, Some(pa.n() - 1));
            prop_assert_eq!(li.cot_dim_fiber_origin + li.m, li.cot_dim_zero_point);
            let ez = li.ecod_zero_point().unwrap();
            prop_assert!(0 <= ez);
            prop_assert!(li.ecod_fiber() as i64 <= ez);
        }
    }
}
