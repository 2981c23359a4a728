//! Group equivariant operators built from permutants and permutant measures.
//!
//! A [`LinearOperator`] stores a dense exact table with rows indexed by `Y`
//! and columns by `X`, so `F(φ)(y) = Σ_x coeffs[y][x] φ(x)`. For a linear
//! map, `F(φ∘g) = F(φ)∘T(g)` for all `φ` reduces to the standard basis and
//! the generators of `G`, and non-expansivity in the sup norm is the bound
//! `max_y Σ_x |coeffs[y][x]| ≤ 1`.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::perception::{self, FunctionSpace, Measurement, PerceptionPair};
use crate::perm::{FiniteGroup, Labels, Permutation};
use crate::permutant::{
    is_permutant_measure, ActionContext, ContextDocument, GeneralizedPermutant, Mapping, PermutantMeasure,
};
use crate::rational::{self, Rational};
use crate::verdict::Verdict;

/// Largest `|X|!` accepted by [`decompose_to_measure`].
pub const DECOMPOSE_CAP: usize = 5040;

#[derive(Debug, Clone, PartialEq)]
pub struct LinearOperator {
    context: ActionContext,
    coeffs: Vec<Vec<Rational>>,
    source_space: FunctionSpace,
    target_space: FunctionSpace,
    is_geo: bool,
    is_geneo: bool,
}

/// `F(e_basis ∘ g) ≠ F(e_basis) ∘ T(g)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivarianceWitness {
    pub basis: String,
    pub generator: String,
}

impl LinearOperator {
    /// Wraps a table and sets the flags from [`Self::verify_equivariance`]
    /// and [`Self::verify_nonexpansive`].
    pub fn new(context: ActionContext, coeffs: Vec<Vec<Rational>>) -> Result<Self> {
        if coeffs.len() != context.y_size() {
            return Err(Error::DomainMismatch { expected: context.y_size(), found: coeffs.len() });
        }
        if let Some(row) = coeffs.iter().find(|r| r.len() != context.x_size()) {
            return Err(Error::DomainMismatch { expected: context.x_size(), found: row.len() });
        }
        let mut op = LinearOperator {
            source_space: FunctionSpace::full(context.x_size()),
            target_space: FunctionSpace::full(context.y_size()),
            context,
            coeffs,
            is_geo: false,
            is_geneo: false,
        };
        op.is_geo = op.verify_equivariance().holds();
        op.is_geneo = op.is_geo && op.verify_nonexpansive();
        Ok(op)
    }

    /// `F(φ) = (1/|H|) Σ_{h∈H} φ∘h`.
    pub fn from_permutant(permutant: &GeneralizedPermutant) -> Result<Self> {
        if permutant.is_empty() {
            return Err(Error::EmptyPermutant);
        }
        let ctx = permutant.context();
        let size = rational::int(permutant.len() as i64);
        let mut coeffs = vec![vec![Rational::zero(); ctx.x_size()]; ctx.y_size()];
        for h in permutant.members() {
            for (y, row) in coeffs.iter_mut().enumerate() {
                row[h.image(y)] += Rational::one();
            }
        }
        for v in coeffs.iter_mut().flatten() {
            *v = &*v / &size;
        }
        LinearOperator::new(ctx.clone(), coeffs)
    }

    /// `F_μ(φ) = Σ_f μ(f) φ∘f`. Flagged GENEO when it is equivariant and
    /// `Σ|μ| ≤ 1`.
    pub fn from_measure(measure: &PermutantMeasure) -> Result<Self> {
        if let Verdict::Fails(w) = is_permutant_measure(measure) {
            return Err(Error::InvalidMeasure(format!(
                "weight {} on {} but {} on its image {} under {}",
                rational::format(&w.weight),
                w.mapping,
                rational::format(&w.image_weight),
                w.image,
                w.element
            )));
        }
        let ctx = measure.context();
        let mut coeffs = vec![vec![Rational::zero(); ctx.x_size()]; ctx.y_size()];
        for (f, w) in measure.weights() {
            for (y, row) in coeffs.iter_mut().enumerate() {
                row[f.image(y)] += w;
            }
        }
        let mut op = LinearOperator::new(ctx.clone(), coeffs)?;
        op.is_geneo = op.is_geo && measure.total_variation() <= Rational::one();
        Ok(op)
    }

    pub fn identity(context: &ActionContext) -> Result<Self> {
        if !context.is_endo() {
            return Err(Error::NotEndomorphic);
        }
        let n = context.x_size();
        let coeffs =
            (0..n).map(|y| (0..n).map(|x| if x == y { Rational::one() } else { Rational::zero() }).collect()).collect();
        LinearOperator::new(context.clone(), coeffs)
    }

    pub fn zero(context: &ActionContext) -> Result<Self> {
        LinearOperator::new(context.clone(), vec![vec![Rational::zero(); context.x_size()]; context.y_size()])
    }

    /// `c · F`.
    pub fn scaled(&self, c: &Rational) -> Result<Self> {
        let coeffs = self.coeffs.iter().map(|r| r.iter().map(|v| v * c).collect()).collect();
        LinearOperator::new(self.context.clone(), coeffs)
    }

    /// Attaches source and target spaces. Both must form perception pairs with
    /// `G` and `K`; the flags are cleared if `F(Φ) ⊄ Ψ` on a generating family.
    pub fn with_spaces(mut self, source: FunctionSpace, target: FunctionSpace) -> Result<Self> {
        PerceptionPair::new(source.clone(), self.context.group().clone())?;
        PerceptionPair::new(target.clone(), self.context.target_group().clone())?;
        self.source_space = source;
        self.target_space = target;
        if !self.verify_closure()?.holds() {
            self.is_geo = false;
            self.is_geneo = false;
        }
        Ok(self)
    }

    pub fn context(&self) -> &ActionContext {
        &self.context
    }

    pub fn coeffs(&self) -> &[Vec<Rational>] {
        &self.coeffs
    }

    pub fn source_space(&self) -> &FunctionSpace {
        &self.source_space
    }

    pub fn target_space(&self) -> &FunctionSpace {
        &self.target_space
    }

    pub fn is_geo(&self) -> bool {
        self.is_geo
    }

    pub fn is_geneo(&self) -> bool {
        self.is_geneo
    }

    pub fn apply(&self, phi: &Measurement) -> Result<Measurement> {
        if phi.len() != self.context.x_size() {
            return Err(Error::DomainMismatch { expected: self.context.x_size(), found: phi.len() });
        }
        Ok(Measurement::new(
            self.coeffs.iter().map(|row| row.iter().zip(phi.values()).map(|(c, v)| c * v).sum()).collect(),
        ))
    }

    pub fn apply_f64(&self, phi: &[f64]) -> Result<Vec<f64>> {
        if phi.len() != self.context.x_size() {
            return Err(Error::DomainMismatch { expected: self.context.x_size(), found: phi.len() });
        }
        Ok(self.coeffs.iter().map(|row| row.iter().zip(phi).map(|(c, v)| rational::to_f64(c) * v).sum()).collect())
    }

    /// Exact check of `coeffs[y][g⁻¹(x)] = coeffs[T(g)(y)][x]` for every
    /// generator `g`, which is `F(e_x ∘ g) = F(e_x) ∘ T(g)` on the basis.
    pub fn verify_equivariance(&self) -> Verdict<EquivarianceWitness> {
        let ctx = &self.context;
        for g in ctx.group().generators() {
            let tg = ctx.t(g).expect("generator is a member");
            let ginv = g.inverse();
            for x in 0..ctx.x_size() {
                let gx = ginv.image(x);
                if (0..ctx.y_size()).any(|y| self.coeffs[y][gx] != self.coeffs[tg.image(y)][x]) {
                    return Verdict::Fails(EquivarianceWitness {
                        basis: ctx.x_labels().name(x).to_string(),
                        generator: g.format_cycles(ctx.x_labels()),
                    });
                }
            }
        }
        Verdict::Holds
    }

    /// Sup-norm operator norm, `max_y Σ_x |coeffs[y][x]|`.
    pub fn operator_norm(&self) -> Rational {
        self.coeffs.iter().map(|row| row.iter().map(|v| v.abs()).sum::<Rational>()).max().unwrap_or_else(Rational::zero)
    }

    pub fn verify_nonexpansive(&self) -> bool {
        self.operator_norm() <= Rational::one()
    }

    /// Checks `F(φ) ∈ Ψ` for a generating family of `Φ`.
    pub fn verify_closure(&self) -> Result<Verdict<Measurement>> {
        let Some(family) = self.source_space.spanning_members()? else {
            return Ok(Verdict::Holds);
        };
        for phi in family {
            if !self.target_space.contains(&self.apply(&phi)?)? {
                return Ok(Verdict::Fails(phi));
            }
        }
        Ok(Verdict::Holds)
    }

    /// `F(φ∘g) = F(φ)∘T(g)` on random measurements and random group elements.
    pub fn spot_check_equivariance<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        samples: usize,
    ) -> Verdict<EquivarianceWitness> {
        Operator::from(self.clone()).sampled_check(rng, samples).equivariance
    }

    pub fn to_document(&self) -> OperatorDocument {
        OperatorDocument {
            context: self.context.to_document(),
            coeffs: self.coeffs.clone(),
            flags: Some(Flags { geo: self.is_geo, geneo: self.is_geneo }),
            source_space: Some(self.source_space.clone()),
            target_space: Some(self.target_space.clone()),
        }
    }

    /// Rebuilds an operator; stored flags are ignored and recomputed.
    pub fn from_document(doc: &OperatorDocument) -> Result<Self> {
        let ctx = ActionContext::from_document(&doc.context)?;
        let op = LinearOperator::new(ctx, doc.coeffs.clone())?;
        match (&doc.source_space, &doc.target_space) {
            (None, None) => Ok(op),
            (s, t) => {
                let s = s.clone().unwrap_or_else(|| FunctionSpace::full(op.context.x_size()));
                let t = t.clone().unwrap_or_else(|| FunctionSpace::full(op.context.y_size()));
                op.with_spaces(s, t)
            }
        }
    }

    pub fn parse_json(text: &str) -> Result<Self> {
        let doc: OperatorDocument = serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        LinearOperator::from_document(&doc)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flags {
    pub geo: bool,
    pub geneo: bool,
}

/// JSON form of a linear operator: the context fields (`source`, `target`,
/// `homomorphism`), the table as rational strings, and the flags.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorDocument {
    #[serde(flatten)]
    pub context: ContextDocument,
    #[serde(with = "rational::matrix_serde")]
    pub coeffs: Vec<Vec<Rational>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flags: Option<Flags>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source_space: Option<FunctionSpace>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_space: Option<FunctionSpace>,
}

/// Why a diagonal scaling was turned down.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum ScalingRejection {
    /// `d` is not constant on this orbit of `G` on coordinates.
    Orbit { orbit: Vec<usize> },
    /// `F(φ)` leaves the space for this member `φ`.
    Closure { measurement: Measurement },
}

#[derive(Debug, Clone)]
pub enum ScalingOutcome {
    Accepted(LinearOperator),
    Rejected(ScalingRejection),
}

impl ScalingOutcome {
    pub fn is_accepted(&self) -> bool {
        matches!(self, ScalingOutcome::Accepted(_))
    }
}

/// `φ ↦ (φ¹/d₁, …, φⁿ/dₙ)` as an endo-operator of the pair. Accepted iff `d`
/// is constant on every point orbit of `G` and the operator maps the space
/// into itself.
pub fn diagonal_scaling(d: &[Rational], pair: &PerceptionPair) -> Result<ScalingOutcome> {
    let n = pair.group().degree();
    if d.len() != n {
        return Err(Error::DomainMismatch { expected: n, found: d.len() });
    }
    if let Some(bad) = d.iter().find(|v| **v < Rational::one()) {
        return Err(Error::OutOfRange(format!("scaling factor {} is below 1", rational::format(bad))));
    }
    for orbit in pair.group().point_orbits() {
        if orbit.iter().any(|&i| d[i] != d[orbit[0]]) {
            return Ok(ScalingOutcome::Rejected(ScalingRejection::Orbit { orbit }));
        }
    }
    let ctx = ActionContext::classical(pair.group().clone(), Labels::numeric(n))?;
    let coeffs =
        (0..n).map(|y| (0..n).map(|x| if x == y { d[y].recip() } else { Rational::zero() }).collect()).collect();
    let op = LinearOperator::new(ctx, coeffs)?;
    let op = LinearOperator { source_space: pair.space().clone(), target_space: pair.space().clone(), ..op };
    if let Verdict::Fails(measurement) = op.verify_closure()? {
        return Ok(ScalingOutcome::Rejected(ScalingRejection::Closure { measurement }));
    }
    Ok(ScalingOutcome::Accepted(op))
}

fn check_convex(weights: &[Rational]) -> Result<()> {
    if weights.iter().any(|w| w.is_negative()) || weights.iter().sum::<Rational>() != Rational::one() {
        return Err(Error::OutOfRange("weights must be nonnegative and sum to 1".into()));
    }
    Ok(())
}

/// `Σ λᵢ Fᵢ` for operators over the same context.
pub fn convex_combination(ops: &[LinearOperator], weights: &[Rational]) -> Result<LinearOperator> {
    let first = ops.first().ok_or_else(|| Error::Incompatible("no operators to combine".into()))?;
    if ops.len() != weights.len() {
        return Err(Error::Incompatible(format!("{} operators but {} weights", ops.len(), weights.len())));
    }
    check_convex(weights)?;
    if ops.iter().any(|op| op.context != first.context) {
        return Err(Error::Incompatible("operators act over different contexts".into()));
    }
    let mut coeffs = vec![vec![Rational::zero(); first.context.x_size()]; first.context.y_size()];
    for (op, w) in ops.iter().zip(weights) {
        for (acc, row) in coeffs.iter_mut().zip(&op.coeffs) {
            for (a, v) in acc.iter_mut().zip(row) {
                *a += w * v;
            }
        }
    }
    let combined = LinearOperator::new(first.context.clone(), coeffs)?;
    Ok(LinearOperator {
        source_space: first.source_space.clone(),
        target_space: first.target_space.clone(),
        ..combined
    })
}

/// `F₂ ∘ F₁` where `F₁` goes `X → Y` under `T₁` and `F₂` goes `Y → Z` under `T₂`.
pub fn compose(f2: &LinearOperator, f1: &LinearOperator) -> Result<LinearOperator> {
    if f1.context.target_group() != f2.context.group() || f1.context.y_size() != f2.context.x_size() {
        return Err(Error::Incompatible("target of the inner operator is not the source of the outer one".into()));
    }
    let ctx = f1.context.then(&f2.context)?;
    let coeffs = f2
        .coeffs
        .iter()
        .map(|row| (0..f1.context.x_size()).map(|x| row.iter().zip(&f1.coeffs).map(|(a, r)| a * &r[x]).sum()).collect())
        .collect();
    let composed = LinearOperator::new(ctx, coeffs)?;
    Ok(LinearOperator { source_space: f1.source_space.clone(), target_space: f2.target_space.clone(), ..composed })
}

#[derive(Debug, Clone)]
enum OperatorKind {
    Linear(LinearOperator),
    Min(Box<Operator>, Box<Operator>),
    Max(Box<Operator>, Box<Operator>),
    /// `outer ∘ inner`.
    Chain(Box<Operator>, Box<Operator>),
    Convex(Vec<(Rational, Operator)>),
}

/// A possibly nonlinear operator assembled from linear ones.
#[derive(Debug, Clone)]
pub struct Operator {
    context: ActionContext,
    kind: OperatorKind,
}

impl From<LinearOperator> for Operator {
    fn from(op: LinearOperator) -> Self {
        Operator { context: op.context.clone(), kind: OperatorKind::Linear(op) }
    }
}

/// Outcome of [`Operator::sampled_check`].
#[derive(Debug, Clone)]
pub struct SampledReport {
    pub equivariance: Verdict<EquivarianceWitness>,
    /// Pair of inputs on which `‖F(φ₁) − F(φ₂)‖ > ‖φ₁ − φ₂‖`.
    pub nonexpansivity: Verdict<(Measurement, Measurement)>,
    pub samples: usize,
}

impl Operator {
    pub fn context(&self) -> &ActionContext {
        &self.context
    }

    pub fn as_linear(&self) -> Option<&LinearOperator> {
        match &self.kind {
            OperatorKind::Linear(op) => Some(op),
            _ => None,
        }
    }

    fn same_context(a: &Operator, b: &Operator) -> Result<()> {
        if a.context != b.context {
            return Err(Error::Incompatible("operators act over different contexts".into()));
        }
        Ok(())
    }

    pub fn pointwise_min(a: Operator, b: Operator) -> Result<Operator> {
        Operator::same_context(&a, &b)?;
        Ok(Operator { context: a.context.clone(), kind: OperatorKind::Min(Box::new(a), Box::new(b)) })
    }

    pub fn pointwise_max(a: Operator, b: Operator) -> Result<Operator> {
        Operator::same_context(&a, &b)?;
        Ok(Operator { context: a.context.clone(), kind: OperatorKind::Max(Box::new(a), Box::new(b)) })
    }

    pub fn chain(outer: Operator, inner: Operator) -> Result<Operator> {
        if inner.context.target_group() != outer.context.group() || inner.context.y_size() != outer.context.x_size() {
            return Err(Error::Incompatible("target of the inner operator is not the source of the outer one".into()));
        }
        let context = inner.context.then(&outer.context)?;
        Ok(Operator { context, kind: OperatorKind::Chain(Box::new(outer), Box::new(inner)) })
    }

    pub fn convex(parts: Vec<(Rational, Operator)>) -> Result<Operator> {
        let first = parts.first().ok_or_else(|| Error::Incompatible("no operators to combine".into()))?;
        let weights: Vec<Rational> = parts.iter().map(|(w, _)| w.clone()).collect();
        check_convex(&weights)?;
        for (_, op) in &parts {
            Operator::same_context(&first.1, op)?;
        }
        Ok(Operator { context: first.1.context.clone(), kind: OperatorKind::Convex(parts) })
    }

    pub fn evaluate(&self, phi: &Measurement) -> Result<Measurement> {
        match &self.kind {
            OperatorKind::Linear(op) => op.apply(phi),
            OperatorKind::Min(a, b) | OperatorKind::Max(a, b) => {
                let (u, v) = (a.evaluate(phi)?, b.evaluate(phi)?);
                let take_min = matches!(self.kind, OperatorKind::Min(..));
                Ok(Measurement::new(
                    u.values()
                        .iter()
                        .zip(v.values())
                        .map(|(p, q)| if (p <= q) == take_min { p.clone() } else { q.clone() })
                        .collect(),
                ))
            }
            OperatorKind::Chain(outer, inner) => outer.evaluate(&inner.evaluate(phi)?),
            OperatorKind::Convex(parts) => {
                let mut acc = vec![Rational::zero(); self.context.y_size()];
                for (w, op) in parts {
                    for (a, v) in acc.iter_mut().zip(op.evaluate(phi)?.values()) {
                        *a += w * v;
                    }
                }
                Ok(Measurement::new(acc))
            }
        }
    }

    /// Checks equivariance on every generator and a random group element,
    /// and non-expansivity on pairs, for `samples` random rational inputs.
    /// Evidence only; nothing here is a proof for nonlinear operators.
    pub fn sampled_check<R: Rng + ?Sized>(&self, rng: &mut R, samples: usize) -> SampledReport {
        let ctx = &self.context;
        let n = ctx.x_size();
        let random = |rng: &mut R| {
            Measurement::new((0..n).map(|_| rational::ratio(rng.gen_range(-12..=12), rng.gen_range(1..=6))).collect())
        };
        let mut equivariance = Verdict::Holds;
        let mut nonexpansivity = Verdict::Holds;
        for _ in 0..samples {
            let phi = random(rng);
            let psi = random(rng);
            let f_phi = self.evaluate(&phi).expect("input sized to the source");
            if equivariance.holds() {
                let mut elements: Vec<&Permutation> = ctx.group().generators().iter().collect();
                elements.extend(ctx.group().elements().choose(rng));
                for g in elements {
                    let lhs = self.evaluate(&phi.pull_back(g).expect("same size")).expect("sized");
                    let rhs = f_phi.pull_back(ctx.t(g).expect("member")).expect("same size");
                    if lhs != rhs {
                        equivariance = Verdict::Fails(EquivarianceWitness {
                            basis: format!("{:?}", phi.to_strings()),
                            generator: g.format_cycles(ctx.x_labels()),
                        });
                        break;
                    }
                }
            }
            if nonexpansivity.holds() {
                let f_psi = self.evaluate(&psi).expect("sized");
                let out = perception::sup_distance(&f_phi, &f_psi).expect("same size");
                let inp = perception::sup_distance(&phi, &psi).expect("same size");
                if out > inp {
                    nonexpansivity = Verdict::Fails((phi, psi));
                }
            }
        }
        SampledReport { equivariance, nonexpansivity, samples }
    }
}

/// `D_GENEO(F₁, F₂) = max_φ ‖F₁(φ) − F₂(φ)‖_∞` over a finite sample.
pub fn geneo_distance(f1: &Operator, f2: &Operator, sample: &[Measurement]) -> Result<Rational> {
    if f1.context.x_size() != f2.context.x_size() || f1.context.y_size() != f2.context.y_size() {
        return Err(Error::Incompatible("operators have different shapes".into()));
    }
    if sample.is_empty() {
        return Err(Error::EmptySample);
    }
    sample.iter().try_fold(Rational::zero(), |acc, phi| {
        Ok(acc.max(perception::sup_distance(&f1.evaluate(phi)?, &f2.evaluate(phi)?)?))
    })
}

/// Finds an α-invariant measure `μ` on the permutations of `X` with
/// `Σ|μ| ≤ 1` and `F(φ) = Σ_h μ(h) φ∘h`.
///
/// Weights are constant on conjugation classes under `G`. Supports of one or
/// two classes are tried first, smallest total support first and then in
/// canonical class order; otherwise an L1-minimal solution is computed.
/// The result follows the same convention as [`LinearOperator::from_measure`],
/// so rebuilding from it reproduces `F`. [`inverse_convention`] converts it
/// to the `φ∘h⁻¹` form.
pub fn decompose_to_measure(op: &LinearOperator) -> Result<PermutantMeasure> {
    let ctx = op.context();
    if !ctx.is_endo() {
        return Err(Error::NotEndomorphic);
    }
    let n = ctx.x_size();
    let factorial = (1..=n).try_fold(1usize, |acc, k| acc.checked_mul(k)).unwrap_or(usize::MAX);
    if factorial > DECOMPOSE_CAP {
        return Err(Error::CapExceeded { what: "|X|!", size: factorial as u128, cap: DECOMPOSE_CAP as u128 });
    }
    if !ctx.group().is_transitive() {
        return Err(Error::NotTransitive);
    }
    if let Verdict::Fails(w) = op.verify_equivariance() {
        return Err(Error::NotEquivariant(format!("basis {} under {}", w.basis, w.generator)));
    }

    let all = FiniteGroup::symmetric(n)?;
    let mut classes: Vec<Vec<Mapping>> = Vec::new();
    let mut seen: BTreeSet<Mapping> = BTreeSet::new();
    for h in all.elements() {
        let m = Mapping::from_permutation(h);
        if seen.contains(&m) {
            continue;
        }
        let class: Vec<Mapping> = crate::permutant::orbit(&m, ctx)?.members().iter().cloned().collect();
        seen.extend(class.iter().cloned());
        classes.push(class);
    }
    // Column k: the table of F for weight 1 on every member of class k.
    let columns: Vec<Vec<Rational>> = classes
        .iter()
        .map(|class| {
            let mut col = vec![Rational::zero(); n * n];
            for h in class {
                for y in 0..n {
                    col[y * n + h.image(y)] += Rational::one();
                }
            }
            col
        })
        .collect();
    let target: Vec<Rational> = op.coeffs().iter().flatten().cloned().collect();
    let sizes: Vec<Rational> = classes.iter().map(|c| rational::int(c.len() as i64)).collect();
    let build = |weights: Vec<(usize, Rational)>| {
        PermutantMeasure::new(
            ctx.clone(),
            weights.into_iter().flat_map(|(k, w)| classes[k].iter().map(move |m| (m.clone(), w.clone()))),
        )
    };

    if target.iter().all(Zero::is_zero) {
        return build(Vec::new());
    }

    let mut candidates: Vec<Vec<usize>> = (0..classes.len()).map(|k| vec![k]).collect();
    for a in 0..classes.len() {
        for b in a + 1..classes.len() {
            candidates.push(vec![a, b]);
        }
    }
    candidates.sort_by_key(|c| (c.len(), c.iter().map(|&k| classes[k].len()).sum::<usize>()));
    for support in &candidates {
        let augmented: Vec<Vec<Rational>> = (0..n * n)
            .map(|i| {
                let mut row: Vec<Rational> = support.iter().map(|&k| columns[k][i].clone()).collect();
                row.push(target[i].clone());
                row
            })
            .collect();
        let Some(solution) = linalg::solve_augmented(&augmented, support.len()) else {
            continue;
        };
        let w = solution.particular;
        if w.iter().any(Zero::is_zero) {
            continue;
        }
        let l1: Rational = w.iter().zip(support).map(|(v, &k)| v.abs() * &sizes[k]).sum();
        if l1 <= Rational::one() {
            return build(support.iter().copied().zip(w).collect());
        }
    }

    let x = linalg::min_weighted_l1(&columns, &target, &sizes).ok_or(Error::NoDecomposition)?;
    let l1: Rational = x.iter().zip(&sizes).map(|(v, s)| v.abs() * s).sum();
    if l1 > Rational::one() {
        return Err(Error::NoDecomposition);
    }
    build(x.into_iter().enumerate().filter(|(_, w)| !w.is_zero()).collect())
}

/// `μ'(h) = μ(h⁻¹)` for a measure on permutations.
pub fn inverse_convention(measure: &PermutantMeasure) -> Result<PermutantMeasure> {
    let weights = measure
        .weights()
        .iter()
        .map(|(m, w)| {
            let p = m
                .to_permutation()
                .ok_or_else(|| Error::InvalidMeasure("support contains a non-bijective map".into()))?;
            Ok((Mapping::from_permutation(&p.inverse()), w.clone()))
        })
        .collect::<Result<Vec<_>>>()?;
    PermutantMeasure::new(measure.context().clone(), weights)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::permutant::{hexagon_triangle_context, orbit, transposition_permutant, Model};
    use crate::rational::{int, ratio};
    use rand::SeedableRng;

    fn f4() -> LinearOperator {
        LinearOperator::from_permutant(&transposition_permutant(4, Model::Edge).unwrap()).unwrap()
    }

    fn sixths(v: &[i64]) -> Measurement {
        Measurement::new(v.iter().map(|&x| ratio(x, 6)).collect())
    }

    #[test]
    fn f4_codes() {
        let f = f4();
        assert!(f.is_geo() && f.is_geneo());
        assert_eq!(f.apply(&Measurement::from_ints(&[1, 1, 1, 0, 0, 0])).unwrap(), sixths(&[4, 4, 4, 2, 2, 2]));
        assert_eq!(f.apply(&Measurement::from_ints(&[0, 0, 0, 1, 1, 1])).unwrap(), sixths(&[2, 2, 2, 4, 4, 4]));
        assert_eq!(f.apply(&Measurement::zeros(6)).unwrap(), Measurement::zeros(6));
        let ones = Measurement::from_ints(&[1; 6]);
        assert_eq!(f.apply(&ones).unwrap(), ones);
        assert!(f.apply(&Measurement::zeros(5)).is_err());
        assert_eq!(f.operator_norm(), rational::one());
    }

    #[test]
    fn identity_permutant_gives_identity() {
        let ctx = f4().context().clone();
        let id =
            GeneralizedPermutant::new(ctx.clone(), [Mapping::from_permutation(&Permutation::identity(6))]).unwrap();
        assert_eq!(LinearOperator::from_permutant(&id).unwrap(), LinearOperator::identity(&ctx).unwrap());
    }

    #[test]
    fn empty_permutant_is_rejected() {
        let ctx = f4().context().clone();
        let empty = GeneralizedPermutant::new(ctx, []).unwrap();
        assert_eq!(LinearOperator::from_permutant(&empty), Err(Error::EmptyPermutant));
    }

    #[test]
    fn aec_operator_averages_two_pullbacks() {
        let ctx = hexagon_triangle_context();
        let h = orbit(&ctx.parse_mapping("aec").unwrap(), &ctx).unwrap();
        let f = LinearOperator::from_permutant(&h).unwrap();
        let half = ratio(1, 2);
        let z = rational::zero();
        assert_eq!(f.coeffs()[0], vec![half.clone(), z.clone(), z.clone(), half.clone(), z.clone(), z.clone()]);
        assert!(f.is_geneo());
    }

    #[test]
    fn measures_match_permutants() {
        let h = transposition_permutant(4, Model::Edge).unwrap();
        let mu = PermutantMeasure::uniform(&h, ratio(1, 6)).unwrap();
        let from_mu = LinearOperator::from_measure(&mu).unwrap();
        assert_eq!(from_mu.coeffs(), f4().coeffs());
        let zero = LinearOperator::from_measure(&PermutantMeasure::new(h.context().clone(), []).unwrap()).unwrap();
        assert!(zero.is_geneo());
        assert!(zero.coeffs().iter().flatten().all(Zero::is_zero));
        let heavy = LinearOperator::from_measure(&PermutantMeasure::uniform(&h, int(1)).unwrap()).unwrap();
        assert!(heavy.is_geo() && !heavy.is_geneo());
    }

    #[test]
    fn invalid_measure_is_rejected() {
        let ctx = hexagon_triangle_context();
        let mu = PermutantMeasure::new(ctx.clone(), [(ctx.parse_mapping("aec").unwrap(), int(1))]).unwrap();
        assert!(matches!(LinearOperator::from_measure(&mu), Err(Error::InvalidMeasure(_))));
    }

    #[test]
    fn nonexpansive_examples() {
        let ctx = f4().context().clone();
        let twice = LinearOperator::identity(&ctx).unwrap().scaled(&int(2)).unwrap();
        assert!(!twice.verify_nonexpansive());
        assert!(twice.is_geo() && !twice.is_geneo());
    }

    fn k4_delta_pair() -> PerceptionPair {
        let g = Graph::complete(4);
        let delta = Permutation::parse_cycles("(r,s)(q,t)", g.edge_labels()).unwrap();
        let group = FiniteGroup::generate(6, &[delta]).unwrap();
        let space =
            FunctionSpace::constrained(6, vec![perception::Constraint::linear(&[1, 0, 0, 0, 0, 1], 0)]).unwrap();
        PerceptionPair::new(space, group).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn diagonal_scaling_edge_example() {
        let pair = k4_delta_pair();
        let ok = diagonal_scaling(&ints(&[2, 3, 5, 5, 3, 2]), &pair).unwrap();
        let ScalingOutcome::Accepted(op) = ok else { panic!("expected acceptance") };
        assert!(op.is_geneo());
        assert!(diagonal_scaling(&ints(&[1; 6]), &pair).unwrap().is_accepted());
        let bad = diagonal_scaling(&ints(&[1, 2, 3, 4, 5, 6]), &pair).unwrap();
        assert!(matches!(bad, ScalingOutcome::Rejected(ScalingRejection::Orbit { .. })));
        // Equivariant but not closed: d1 ≠ d6.
        let open = diagonal_scaling(&ints(&[2, 3, 5, 5, 3, 4]), &pair).unwrap();
        assert!(matches!(open, ScalingOutcome::Rejected(ScalingRejection::Closure { .. })));
        assert!(diagonal_scaling(&vec![ratio(1, 2); 6], &pair).is_err());
    }

    #[test]
    fn equivariance_fails_for_unbalanced_scaling() {
        let pair = k4_delta_pair();
        let ctx = ActionContext::classical(pair.group().clone(), Labels::chars("pqrstu")).unwrap();
        let coeffs = (0..6)
            .map(|y| (0..6).map(|x| if x == y { ratio(1, y as i64 + 1) } else { rational::zero() }).collect())
            .collect();
        let op = LinearOperator::new(ctx, coeffs).unwrap();
        assert!(!op.verify_equivariance().holds());
        assert!(!op.is_geo());
    }

    #[test]
    fn combinators() {
        let f = f4();
        let ctx = f.context().clone();
        let id = LinearOperator::identity(&ctx).unwrap();
        assert_eq!(convex_combination(std::slice::from_ref(&f), &[int(1)]).unwrap(), f);
        assert!(convex_combination(std::slice::from_ref(&f), &[ratio(1, 2)]).is_err());
        assert_eq!(compose(&id, &f).unwrap().coeffs(), f.coeffs());
        let half = convex_combination(&[f.clone(), id.clone()], &[ratio(1, 2), ratio(1, 2)]).unwrap();
        assert!(half.is_geneo());

        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let min = Operator::pointwise_min(f.clone().into(), f.clone().into()).unwrap();
        for _ in 0..10 {
            let phi = Measurement::new((0..6).map(|_| int(rng.gen_range(-5..5))).collect());
            assert_eq!(min.evaluate(&phi).unwrap(), f.apply(&phi).unwrap());
        }
        let max = Operator::pointwise_max(f.clone().into(), id.clone().into()).unwrap();
        let report = max.sampled_check(&mut rng, 20);
        assert!(report.equivariance.holds() && report.nonexpansivity.holds());
    }

    #[test]
    fn geneo_distance_examples() {
        let f: Operator = f4().into();
        let zero: Operator = LinearOperator::zero(f.context()).unwrap().into();
        let sample = perception::binary_sample(6);
        assert_eq!(geneo_distance(&f, &f, &sample).unwrap(), rational::zero());
        assert_eq!(geneo_distance(&f, &zero, &sample).unwrap(), rational::one());
        assert_eq!(geneo_distance(&f, &zero, &[]), Err(Error::EmptySample));
    }

    #[test]
    fn decompose_identity_and_f4() {
        let f = f4();
        let id = LinearOperator::identity(f.context()).unwrap();
        let mu = decompose_to_measure(&id).unwrap();
        assert_eq!(mu.weights().len(), 1);
        let (m, w) = mu.weights().iter().next().unwrap();
        assert!(m.to_permutation().unwrap().is_identity());
        assert_eq!(*w, rational::one());

        let mu = decompose_to_measure(&f).unwrap();
        assert_eq!(LinearOperator::from_measure(&mu).unwrap().coeffs(), f.coeffs());
        assert_eq!(mu.weights().len(), 6);
        assert!(mu.weights().values().all(|w| *w == ratio(1, 6)));
        assert_eq!(inverse_convention(&mu).unwrap(), mu);
    }

    #[test]
    fn decompose_refusals() {
        let pair = k4_delta_pair();
        let ctx = ActionContext::classical(pair.group().clone(), Labels::chars("pqrstu")).unwrap();
        let id = LinearOperator::identity(&ctx).unwrap();
        assert_eq!(decompose_to_measure(&id), Err(Error::NotTransitive));

        let f = f4();
        let mut coeffs = f.coeffs().to_vec();
        coeffs[0][0] = ratio(1, 2);
        let skew = LinearOperator::new(f.context().clone(), coeffs).unwrap();
        assert!(matches!(decompose_to_measure(&skew), Err(Error::NotEquivariant(_))));

        let hex = LinearOperator::zero(&hexagon_triangle_context()).unwrap();
        assert_eq!(decompose_to_measure(&hex), Err(Error::NotEndomorphic));

        let twice = LinearOperator::identity(f.context()).unwrap().scaled(&int(2)).unwrap();
        assert_eq!(decompose_to_measure(&twice), Err(Error::NoDecomposition));
    }

    #[test]
    fn operator_document_round_trip() {
        let f = f4();
        let text = serde_json::to_string(&f.to_document()).unwrap();
        let back = LinearOperator::parse_json(&text).unwrap();
        assert_eq!(back.coeffs(), f.coeffs());
        assert!(back.is_geneo());
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert!(value.get("source").is_some() && value.get("coeffs").is_some());
    }
}
