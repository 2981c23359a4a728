//! Measurements, function spaces and perception pairs on finite domains.
//!
//! A measurement is a real function on an indexed finite set (vertices or
//! edges), stored as a vector of exact rationals. Precomposition with a
//! permutation `g` is [`Measurement::pull_back`]: `(φ∘g)[i] = φ[g(i)]`.
//!
//! The pseudometrics on points and on automorphisms are defined as suprema
//! over a space of measurements; here they are always taken over an explicit
//! finite sample.

use std::collections::HashSet;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::perm::{FiniteGroup, Permutation};
use crate::rational::{self, Rational};
use crate::verdict::Verdict;

/// Tolerance used by the floating-point helpers.
pub const FLOAT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Measurement {
    domain: Option<String>,
    values: Vec<Rational>,
}

impl Measurement {
    pub fn new(values: Vec<Rational>) -> Self {
        Measurement { domain: None, values }
    }

    /// A measurement tagged with the name of the set it lives on.
    pub fn on(domain: impl Into<String>, values: Vec<Rational>) -> Self {
        Measurement { domain: Some(domain.into()), values }
    }

    pub fn from_ints(values: &[i64]) -> Self {
        Measurement::new(values.iter().map(|&v| rational::int(v)).collect())
    }

    pub fn from_f64(values: &[f64]) -> Result<Self> {
        Ok(Measurement::new(values.iter().map(|&v| rational::from_f64(v)).collect::<Result<_>>()?))
    }

    pub fn zeros(n: usize) -> Self {
        Measurement::new(vec![Rational::zero(); n])
    }

    /// The `i`-th standard basis vector of `ℝⁿ`.
    pub fn basis(n: usize, i: usize) -> Self {
        let mut values = vec![Rational::zero(); n];
        values[i] = rational::one();
        Measurement::new(values)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Rational> {
        self.values
    }

    pub fn domain(&self) -> Option<&str> {
        self.domain.as_deref()
    }

    pub fn with_domain(mut self, domain: impl Into<String>) -> Self {
        self.domain = Some(domain.into());
        self
    }

    pub fn check_compatible(&self, other: &Measurement) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::DomainMismatch { expected: self.len(), found: other.len() });
        }
        if let (Some(a), Some(b)) = (&self.domain, &other.domain) {
            if a != b {
                return Err(Error::DomainLabelMismatch { left: a.clone(), right: b.clone() });
            }
        }
        Ok(())
    }

    /// `φ ∘ g`.
    pub fn pull_back(&self, g: &Permutation) -> Result<Measurement> {
        if g.degree() != self.len() {
            return Err(Error::DomainMismatch { expected: self.len(), found: g.degree() });
        }
        Ok(Measurement {
            domain: self.domain.clone(),
            values: (0..self.len()).map(|i| self.values[g.image(i)].clone()).collect(),
        })
    }

    pub fn sup_norm(&self) -> Rational {
        self.values.iter().map(|v| v.abs()).max().unwrap_or_else(Rational::zero)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.values.iter().map(rational::to_f64).collect()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.values.iter().map(rational::format).collect()
    }
}

impl Serialize for Measurement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        rational::vec_serde::serialize(&self.values, s)
    }
}

impl<'de> Deserialize<'de> for Measurement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(Measurement::new(rational::vec_serde::deserialize(d)?))
    }
}

/// `‖a − b‖_∞`.
pub fn sup_distance(a: &Measurement, b: &Measurement) -> Result<Rational> {
    a.check_compatible(b)?;
    Ok(a.values.iter().zip(&b.values).map(|(x, y)| (x - y).abs()).max().unwrap_or_else(Rational::zero))
}

/// Floating-point counterpart of [`sup_distance`].
pub fn sup_distance_f64(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::DomainMismatch { expected: a.len(), found: b.len() });
    }
    Ok(a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max))
}

/// Equality up to [`FLOAT_TOLERANCE`] in the sup norm.
pub fn approx_eq(a: &[f64], b: &[f64]) -> bool {
    sup_distance_f64(a, b).is_ok_and(|d| d <= FLOAT_TOLERANCE)
}

/// `D_X(x₁, x₂) = max_φ |φ(x₁) − φ(x₂)|` over a finite sample.
pub fn point_pseudodistance(x1: usize, x2: usize, sample: &[Measurement]) -> Result<Rational> {
    if sample.is_empty() {
        return Err(Error::EmptySample);
    }
    sample
        .iter()
        .map(|phi| {
            if x1 >= phi.len() || x2 >= phi.len() {
                return Err(Error::OutOfRange(format!("point index beyond domain of size {}", phi.len())));
            }
            Ok((&phi.values[x1] - &phi.values[x2]).abs())
        })
        .try_fold(Rational::zero(), |acc, d| Ok(acc.max(d?)))
}

/// `D_Aut(f, g) = max_φ ‖φ∘f − φ∘g‖_∞` over a finite sample.
pub fn aut_pseudodistance(f: &Permutation, g: &Permutation, sample: &[Measurement]) -> Result<Rational> {
    if sample.is_empty() {
        return Err(Error::EmptySample);
    }
    sample.iter().try_fold(Rational::zero(), |acc, phi| {
        let d = sup_distance(&phi.pull_back(f)?, &phi.pull_back(g)?)?;
        Ok(acc.max(d))
    })
}

/// All `0/1` vectors of length `n`, first coordinate most significant.
pub fn binary_sample(n: usize) -> Vec<Measurement> {
    (0..1u64 << n)
        .map(|code| Measurement::new((0..n).map(|i| rational::int(((code >> (n - 1 - i)) & 1) as i64)).collect()))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Norm {
    L1,
    L2,
    Sup,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Constraint {
    /// `Σ coeffs[i]·φ[i] = rhs`.
    Linear {
        #[serde(with = "rational::vec_serde")]
        coeffs: Vec<Rational>,
        #[serde(with = "rational::serde_str", default = "rational::zero")]
        rhs: Rational,
    },
    /// `‖φ‖ ≤ radius`; invariant under every coordinate permutation.
    NormBall {
        norm: Norm,
        #[serde(with = "rational::serde_str")]
        radius: Rational,
    },
}

impl Constraint {
    pub fn linear(coeffs: &[i64], rhs: i64) -> Self {
        Constraint::Linear { coeffs: coeffs.iter().map(|&c| rational::int(c)).collect(), rhs: rational::int(rhs) }
    }

    pub fn is_satisfied(&self, phi: &Measurement) -> Result<bool> {
        match self {
            Constraint::Linear { coeffs, rhs } => {
                if coeffs.len() != phi.len() {
                    return Err(Error::DomainMismatch { expected: coeffs.len(), found: phi.len() });
                }
                let lhs: Rational = coeffs.iter().zip(phi.values()).map(|(c, v)| c * v).sum();
                Ok(lhs == *rhs)
            }
            Constraint::NormBall { norm, radius } => Ok(match norm {
                Norm::Sup => phi.sup_norm() <= *radius,
                Norm::L1 => phi.values().iter().map(|v| v.abs()).sum::<Rational>() <= *radius,
                Norm::L2 => phi.values().iter().map(|v| v * v).sum::<Rational>() <= radius * radius,
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SpaceKind {
    /// All of `ℝⁿ`.
    Full,
    Constrained {
        constraints: Vec<Constraint>,
    },
    Explicit {
        members: Vec<Measurement>,
    },
}

/// A space `Φ` of measurements on a domain of fixed size.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionSpace {
    pub size: usize,
    #[serde(flatten)]
    pub kind: SpaceKind,
}

impl FunctionSpace {
    pub fn full(size: usize) -> Self {
        FunctionSpace { size, kind: SpaceKind::Full }
    }

    pub fn constrained(size: usize, constraints: Vec<Constraint>) -> Result<Self> {
        for c in &constraints {
            if let Constraint::Linear { coeffs, .. } = c {
                if coeffs.len() != size {
                    return Err(Error::DomainMismatch { expected: size, found: coeffs.len() });
                }
            }
        }
        Ok(FunctionSpace { size, kind: SpaceKind::Constrained { constraints } })
    }

    pub fn explicit(size: usize, members: Vec<Measurement>) -> Result<Self> {
        if let Some(bad) = members.iter().find(|m| m.len() != size) {
            return Err(Error::DomainMismatch { expected: size, found: bad.len() });
        }
        let mut seen = HashSet::new();
        let members = members.into_iter().filter(|m| seen.insert(m.values.clone())).collect();
        Ok(FunctionSpace { size, kind: SpaceKind::Explicit { members } })
    }

    pub fn members(&self) -> Option<&[Measurement]> {
        match &self.kind {
            SpaceKind::Explicit { members } => Some(members),
            _ => None,
        }
    }

    pub fn contains(&self, phi: &Measurement) -> Result<bool> {
        if phi.len() != self.size {
            return Err(Error::DomainMismatch { expected: self.size, found: phi.len() });
        }
        match &self.kind {
            SpaceKind::Full => Ok(true),
            SpaceKind::Constrained { constraints } => {
                for c in constraints {
                    if !c.is_satisfied(phi)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            SpaceKind::Explicit { members } => Ok(members.iter().any(|m| m.values == phi.values)),
        }
    }

    /// Augmented rows `[coeffs | rhs]` of the linear constraints.
    pub(crate) fn linear_rows(&self) -> Vec<Vec<Rational>> {
        match &self.kind {
            SpaceKind::Constrained { constraints } => constraints
                .iter()
                .filter_map(|c| match c {
                    Constraint::Linear { coeffs, rhs } => {
                        let mut row = coeffs.clone();
                        row.push(rhs.clone());
                        Some(row)
                    }
                    Constraint::NormBall { .. } => None,
                })
                .collect(),
            _ => Vec::new(),
        }
    }

    fn smallest_radius(&self) -> Option<Rational> {
        match &self.kind {
            SpaceKind::Constrained { constraints } => constraints
                .iter()
                .filter_map(|c| match c {
                    Constraint::NormBall { radius, .. } => Some(radius.clone()),
                    Constraint::Linear { .. } => None,
                })
                .min(),
            _ => None,
        }
    }

    /// A finite family of members spanning the linear part of the space: a
    /// particular solution followed by particular + each nullspace direction,
    /// shrunk into every norm ball. `None` if the space is empty.
    pub(crate) fn spanning_members(&self) -> Result<Option<Vec<Measurement>>> {
        match &self.kind {
            SpaceKind::Full => Ok(Some((0..self.size).map(|i| Measurement::basis(self.size, i)).collect())),
            SpaceKind::Explicit { members } => Ok(Some(members.clone())),
            SpaceKind::Constrained { .. } => {
                let rows = self.linear_rows();
                let radius = self.smallest_radius();
                if radius.is_some() && rows.iter().any(|r| !r[self.size].is_zero()) {
                    return Err(Error::UnsupportedConstraint(
                        "norm balls combined with inhomogeneous linear constraints".into(),
                    ));
                }
                if radius.as_ref().is_some_and(|r| r.is_negative()) {
                    return Ok(None);
                }
                let Some(solution) = linalg::solve_augmented(&rows, self.size) else {
                    return Ok(None);
                };
                let mut out = vec![Measurement::new(solution.particular.clone())];
                for d in solution.directions {
                    let mut v: Vec<Rational> = d.iter().zip(&solution.particular).map(|(a, b)| a + b).collect();
                    if let Some(r) = &radius {
                        // particular is zero here; scale so the L1 norm is at most r.
                        let l1: Rational = v.iter().map(|x| x.abs()).sum();
                        if !l1.is_zero() && !r.is_zero() {
                            let t = r / l1;
                            v.iter_mut().for_each(|x| *x = &*x * &t);
                        } else if r.is_zero() {
                            v.iter_mut().for_each(|x| *x = Rational::zero());
                        }
                    }
                    out.push(Measurement::new(v));
                }
                Ok(Some(out))
            }
        }
    }
}

/// Witness that `φ ∘ g` leaves the space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosureWitness {
    pub measurement: Measurement,
    pub element: Vec<usize>,
}

/// Checks that `φ∘g ∈ Φ` for every `φ ∈ Φ` and `g ∈ G` (hence also for `g⁻¹`).
///
/// Explicit spaces are checked exhaustively. For constrained spaces each
/// linear constraint is transported through `g` and the two systems are
/// compared in reduced row echelon form; norm balls are permutation
/// invariant and need no check.
pub fn verify_perception_pair(space: &FunctionSpace, group: &FiniteGroup) -> Result<Verdict<ClosureWitness>> {
    if group.degree() != space.size {
        return Err(Error::DomainMismatch { expected: space.size, found: group.degree() });
    }
    match &space.kind {
        SpaceKind::Full => Ok(Verdict::Holds),
        SpaceKind::Explicit { members } => {
            let set: HashSet<&Vec<Rational>> = members.iter().map(|m| &m.values).collect();
            for g in group.elements() {
                for phi in members {
                    let moved = phi.pull_back(g)?;
                    if !set.contains(&moved.values) {
                        return Ok(Verdict::Fails(ClosureWitness {
                            measurement: phi.clone(),
                            element: g.images().to_vec(),
                        }));
                    }
                }
            }
            Ok(Verdict::Holds)
        }
        SpaceKind::Constrained { .. } => {
            let Some(span) = space.spanning_members()? else {
                return Ok(Verdict::Holds);
            };
            let rows = space.linear_rows();
            let canonical = linalg::canonical_affine(&rows);
            for g in group.elements() {
                let mapped: Vec<Vec<Rational>> = rows
                    .iter()
                    .map(|row| {
                        let mut r: Vec<Rational> = (0..space.size).map(|k| row[g.image(k)].clone()).collect();
                        r.push(row[space.size].clone());
                        r
                    })
                    .collect();
                if linalg::canonical_affine(&mapped) != canonical {
                    for phi in &span {
                        if !space.contains(&phi.pull_back(g)?)? {
                            return Ok(Verdict::Fails(ClosureWitness {
                                measurement: phi.clone(),
                                element: g.images().to_vec(),
                            }));
                        }
                    }
                    unreachable!("an affine map fixing a spanning family fixes the space");
                }
            }
            Ok(Verdict::Holds)
        }
    }
}

/// A function space together with a group that preserves it.
#[derive(Debug, Clone)]
pub struct PerceptionPair {
    space: FunctionSpace,
    group: FiniteGroup,
}

impl PerceptionPair {
    pub fn new(space: FunctionSpace, group: FiniteGroup) -> Result<Self> {
        match verify_perception_pair(&space, &group)? {
            Verdict::Holds => Ok(PerceptionPair { space, group }),
            Verdict::Fails(w) => Err(Error::NotPerceptionPair(format!(
                "{:?} leaves the space under {:?}",
                w.measurement.to_strings(),
                w.element
            ))),
        }
    }

    /// `(ℝⁿ, G)`.
    pub fn full(group: FiniteGroup) -> Self {
        PerceptionPair { space: FunctionSpace::full(group.degree()), group }
    }

    pub fn space(&self) -> &FunctionSpace {
        &self.space
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }
}
