//! The action `α(g, f) = g ∘ f ∘ T(g⁻¹)` of `G` on the maps `Y → X`, its
//! orbits, generalized permutants (α-closed sets of maps) and permutant
//! measures (α-invariant signed weightings of maps).

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::perm::{FiniteGroup, GroupDocument, Homomorphism, Labels, Permutation};
use crate::rational::{self, Rational};
use crate::verdict::Verdict;

/// Default bound on `|X|^|Y|` for exhaustive orbit enumeration.
pub const DEFAULT_MAPPING_CAP: u128 = 1_000_000;

/// A function `h : Y → X` given by its image table.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mapping {
    images: Vec<usize>,
    target_size: usize,
}

impl Mapping {
    pub fn new(images: Vec<usize>, target_size: usize) -> Result<Self> {
        if let Some(&bad) = images.iter().find(|&&x| x >= target_size) {
            return Err(Error::OutOfRange(format!("image index {bad} in a target of size {target_size}")));
        }
        Ok(Mapping { images, target_size })
    }

    pub fn from_permutation(p: &Permutation) -> Self {
        Mapping { images: p.images().to_vec(), target_size: p.degree() }
    }

    /// The mapping as a permutation, if it is a bijection of a set onto itself.
    pub fn to_permutation(&self) -> Option<Permutation> {
        if self.images.len() != self.target_size {
            return None;
        }
        Permutation::from_images(self.images.clone()).ok()
    }

    pub fn source_size(&self) -> usize {
        self.images.len()
    }

    pub fn target_size(&self) -> usize {
        self.target_size
    }

    pub fn image(&self, y: usize) -> usize {
        self.images[y]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Number of distinct points hit.
    pub fn image_size(&self) -> usize {
        self.images.iter().collect::<HashSet<_>>().len()
    }

    /// Target labels in source order: `"aec"` for single-character labels,
    /// comma separated otherwise.
    pub fn format(&self, target_labels: &Labels) -> String {
        let names = self.images.iter().map(|&x| target_labels.name(x));
        if target_labels.all_single_char() {
            names.collect()
        } else {
            names.collect::<Vec<_>>().join(",")
        }
    }

    pub fn parse(text: &str, target_labels: &Labels, source_size: usize) -> Result<Self> {
        let text = text.trim();
        let names: Vec<String> = if text.contains(',') || !target_labels.all_single_char() {
            text.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
        } else {
            text.chars().map(String::from).collect()
        };
        if names.len() != source_size {
            return Err(Error::DomainMismatch { expected: source_size, found: names.len() });
        }
        let images = names.iter().map(|n| target_labels.index_of(n)).collect::<Result<Vec<_>>>()?;
        Mapping::new(images, target_labels.len())
    }
}

struct ContextInner {
    group: FiniteGroup,
    homomorphism: Homomorphism,
    x_labels: Labels,
    y_labels: Labels,
    /// `T(g)⁻¹` for every `g`, in the canonical element order of `G`.
    t_inverse: Vec<Permutation>,
    /// Indices of the generators of `G`.
    generator_idx: Vec<usize>,
}

/// The data `(G, K, T)` needed for the α action. Cheap to clone.
#[derive(Clone)]
pub struct ActionContext(Arc<ContextInner>);

impl fmt::Debug for ActionContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ActionContext")
            .field("x", &self.0.x_labels)
            .field("y", &self.0.y_labels)
            .field("group_order", &self.0.group.order())
            .finish()
    }
}

impl PartialEq for ActionContext {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.homomorphism == other.0.homomorphism
    }
}

impl ActionContext {
    pub fn new(homomorphism: Homomorphism, x_labels: Labels, y_labels: Labels) -> Result<Self> {
        let group = homomorphism.source().clone();
        if x_labels.len() != group.degree() {
            return Err(Error::DomainMismatch { expected: group.degree(), found: x_labels.len() });
        }
        if y_labels.len() != homomorphism.target().degree() {
            return Err(Error::DomainMismatch { expected: homomorphism.target().degree(), found: y_labels.len() });
        }
        let t_inverse = (0..group.order()).map(|i| homomorphism.image_at(i).inverse()).collect();
        let generator_idx =
            group.generators().iter().map(|g| group.index_of(g).expect("generator is a member")).collect();
        Ok(ActionContext(Arc::new(ContextInner { group, homomorphism, x_labels, y_labels, t_inverse, generator_idx })))
    }

    /// `Y = X`, `K = G`, `T = id`: the setting of classical permutants.
    pub fn classical(group: FiniteGroup, labels: Labels) -> Result<Self> {
        let hom = Homomorphism::identity(&group);
        ActionContext::new(hom, labels.clone(), labels)
    }

    /// `G` = permutations of `X` fixing the first `y_size` points as a set,
    /// `K = S_Y`, `T` = restriction to `Y`.
    pub fn restriction(x_labels: Labels, y_size: usize) -> Result<Self> {
        let n = x_labels.len();
        if y_size == 0 || y_size > n {
            return Err(Error::OutOfRange(format!("subset size {y_size} for a set of size {n}")));
        }
        let mut gens = Vec::new();
        for (lo, hi) in [(0, y_size), (y_size, n)] {
            if hi - lo >= 2 {
                gens.push(Permutation::transposition(n, lo, lo + 1)?);
                gens.push(Permutation::from_cycles(n, &[(lo..hi).collect()])?);
            }
        }
        gens.dedup();
        let group = FiniteGroup::generate(n, &gens)?;
        let target = FiniteGroup::symmetric(y_size)?;
        let hom = Homomorphism::from_fn(&group, &target, |g| {
            Permutation::from_images(g.images()[..y_size].to_vec()).expect("Y is preserved")
        })?;
        let y_labels = Labels::new(x_labels.names()[..y_size].iter().cloned())?;
        ActionContext::new(hom, x_labels, y_labels)
    }

    pub fn from_document(doc: &ContextDocument) -> Result<Self> {
        let source = doc.source.to_group()?;
        match (&doc.target, &doc.homomorphism) {
            (None, None) => ActionContext::classical(source, doc.source.labels.clone()),
            (Some(t), Some(images)) => {
                let target = t.to_group()?;
                let images =
                    images.iter().map(|s| Permutation::parse_cycles(s, &t.labels)).collect::<Result<Vec<_>>>()?;
                let hom = Homomorphism::from_generator_images(&source, &target, &images)?;
                ActionContext::new(hom, doc.source.labels.clone(), t.labels.clone())
            }
            (Some(_), None) => Err(Error::Malformed("a target group needs `homomorphism` generator images".into())),
            (None, Some(_)) => Err(Error::Malformed("`homomorphism` given without a target group".into())),
        }
    }

    pub fn parse_json(text: &str) -> Result<Self> {
        let doc: ContextDocument = serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        ActionContext::from_document(&doc)
    }

    pub fn to_document(&self) -> ContextDocument {
        let source = self.group().to_document(&self.0.x_labels);
        if self.is_endo() {
            return ContextDocument { source, target: None, homomorphism: None };
        }
        let target = self.target_group().to_document(&self.0.y_labels);
        let images = self
            .group()
            .generators()
            .iter()
            .map(|g| self.t(g).expect("generator").format_cycles(&self.0.y_labels))
            .collect();
        ContextDocument { source, target: Some(target), homomorphism: Some(images) }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.0.group
    }

    pub fn target_group(&self) -> &FiniteGroup {
        self.0.homomorphism.target()
    }

    pub fn homomorphism(&self) -> &Homomorphism {
        &self.0.homomorphism
    }

    pub fn x_labels(&self) -> &Labels {
        &self.0.x_labels
    }

    pub fn y_labels(&self) -> &Labels {
        &self.0.y_labels
    }

    pub fn x_size(&self) -> usize {
        self.0.x_labels.len()
    }

    pub fn y_size(&self) -> usize {
        self.0.y_labels.len()
    }

    /// `Y = X` and `T = id_G`.
    pub fn is_endo(&self) -> bool {
        self.0.homomorphism.is_identity_map()
    }

    pub fn t(&self, g: &Permutation) -> Result<&Permutation> {
        self.0.homomorphism.image(g)
    }

    pub(crate) fn generator_indices(&self) -> &[usize] {
        &self.0.generator_idx
    }

    /// Chains `self : G → K` with `next : K → L`, keeping `X` from `self`
    /// and `Z` from `next`.
    pub fn then(&self, next: &ActionContext) -> Result<ActionContext> {
        if self.y_labels().len() != next.x_size() {
            return Err(Error::Incompatible("contexts do not chain".into()));
        }
        let hom = self.homomorphism().then(next.homomorphism())?;
        ActionContext::new(hom, self.x_labels().clone(), next.y_labels().clone())
    }

    pub fn check_mapping(&self, f: &Mapping) -> Result<()> {
        if f.source_size() != self.y_size() {
            return Err(Error::DomainMismatch { expected: self.y_size(), found: f.source_size() });
        }
        if f.target_size() != self.x_size() {
            return Err(Error::DomainMismatch { expected: self.x_size(), found: f.target_size() });
        }
        Ok(())
    }

    /// Image word such as `"bfd"` or `"p,q,r"`. When `X = Y`, cycle notation
    /// such as `"(A,C)"` or `"id"` is accepted too.
    pub fn parse_mapping(&self, text: &str) -> Result<Mapping> {
        let t = text.trim();
        if self.is_endo() && (t.starts_with('(') || t == "id") {
            return Ok(Mapping::from_permutation(&Permutation::parse_cycles(t, self.x_labels())?));
        }
        Mapping::parse(text, self.x_labels(), self.y_size())
    }

    /// Accepts a compact string or an array of labels or indices.
    pub fn mapping_from_json(&self, value: &Value) -> Result<Mapping> {
        match value {
            Value::String(s) => self.parse_mapping(s),
            Value::Array(items) => {
                let images = items
                    .iter()
                    .map(|v| match v {
                        Value::String(s) => self.x_labels().index_of(s),
                        Value::Number(n) => {
                            n.as_u64().map(|i| i as usize).ok_or_else(|| Error::Malformed(format!("bad index {n}")))
                        }
                        other => Err(Error::Malformed(format!("bad mapping entry {other}"))),
                    })
                    .collect::<Result<Vec<_>>>()?;
                let m = Mapping::new(images, self.x_size())?;
                self.check_mapping(&m)?;
                Ok(m)
            }
            other => Err(Error::Malformed(format!("expected a mapping, found {other}"))),
        }
    }

    pub fn format_mapping(&self, f: &Mapping) -> String {
        f.format(self.x_labels())
    }

    /// `α` with `g` given by its index in the canonical order of `G`.
    pub(crate) fn alpha_at(&self, g_idx: usize, f: &Mapping) -> Mapping {
        let g = &self.0.group.elements()[g_idx];
        let tinv = &self.0.t_inverse[g_idx];
        Mapping {
            images: (0..f.images.len()).map(|y| g.image(f.images[tinv.image(y)])).collect(),
            target_size: f.target_size,
        }
    }
}

/// JSON form of an action context. Omitting `target` means `Y = X`, `K = G`
/// and `T = id`; otherwise `homomorphism` lists the images of the source
/// generators in cycle notation over the target labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContextDocument {
    pub source: GroupDocument,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<GroupDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub homomorphism: Option<Vec<String>>,
}

/// `α(g, f) = g ∘ f ∘ T(g⁻¹)`, i.e. `y ↦ g(f(T(g)⁻¹(y)))`.
pub fn alpha_action(g: &Permutation, f: &Mapping, ctx: &ActionContext) -> Result<Mapping> {
    ctx.check_mapping(f)?;
    let idx = ctx.group().index_of(g).ok_or_else(|| Error::NotInGroup(g.format_cycles(ctx.x_labels())))?;
    Ok(ctx.alpha_at(idx, f))
}

fn orbit_set(f: &Mapping, ctx: &ActionContext) -> BTreeSet<Mapping> {
    let mut seen = BTreeSet::from([f.clone()]);
    let mut queue = VecDeque::from([f.clone()]);
    while let Some(h) = queue.pop_front() {
        for &g in ctx.generator_indices() {
            let next = ctx.alpha_at(g, &h);
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    seen
}

/// An α-closed set of maps `Y → X`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralizedPermutant {
    context: ActionContext,
    members: BTreeSet<Mapping>,
}

impl GeneralizedPermutant {
    /// Validates closure; fails with the escaping pair otherwise.
    pub fn new(context: ActionContext, members: impl IntoIterator<Item = Mapping>) -> Result<Self> {
        let members: BTreeSet<Mapping> = members.into_iter().collect();
        match is_generalized_permutant(&members, &context)? {
            Verdict::Holds => Ok(GeneralizedPermutant { context, members }),
            Verdict::Fails(w) => {
                Err(Error::NotPermutant(format!("α({}, {}) = {} leaves the set", w.element, w.mapping, w.image)))
            }
        }
    }

    pub fn context(&self) -> &ActionContext {
        &self.context
    }

    pub fn members(&self) -> &BTreeSet<Mapping> {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, f: &Mapping) -> bool {
        self.members.contains(f)
    }

    /// Smallest member in canonical order.
    pub fn representative(&self) -> Option<&Mapping> {
        self.members.first()
    }

    pub fn union(&self, other: &GeneralizedPermutant) -> Result<GeneralizedPermutant> {
        if self.context != other.context {
            return Err(Error::Incompatible("permutants over different contexts".into()));
        }
        Ok(GeneralizedPermutant {
            context: self.context.clone(),
            members: self.members.union(&other.members).cloned().collect(),
        })
    }

    pub fn formatted(&self) -> Vec<String> {
        self.members.iter().map(|m| self.context.format_mapping(m)).collect()
    }

    /// Reads `["aec", ...]` or `{"members": [...]}`.
    pub fn from_json(value: &Value, context: &ActionContext) -> Result<Self> {
        let items = match value {
            Value::Array(items) => items,
            Value::Object(obj) => match obj.get("members") {
                Some(Value::Array(items)) => items,
                _ => return Err(Error::Malformed("expected a `members` array".into())),
            },
            _ => return Err(Error::Malformed("expected an array of mappings".into())),
        };
        let members = items.iter().map(|v| context.mapping_from_json(v)).collect::<Result<Vec<_>>>()?;
        GeneralizedPermutant::new(context.clone(), members)
    }
}

/// The α-orbit of `f`.
pub fn orbit(f: &Mapping, ctx: &ActionContext) -> Result<GeneralizedPermutant> {
    ctx.check_mapping(f)?;
    Ok(GeneralizedPermutant { context: ctx.clone(), members: orbit_set(f, ctx) })
}

/// Complete partition of `X^Y` into α-orbits.
#[derive(Debug, Clone)]
pub struct OrbitCensus {
    /// Orbits in order of their smallest member.
    pub orbits: Vec<GeneralizedPermutant>,
    /// Orbit size → number of orbits of that size.
    pub counts: BTreeMap<usize, usize>,
    pub total: usize,
}

impl OrbitCensus {
    pub fn orbit_of(&self, f: &Mapping) -> Option<&GeneralizedPermutant> {
        self.orbits.iter().find(|o| o.contains(f))
    }
}

pub fn all_orbits(ctx: &ActionContext) -> Result<OrbitCensus> {
    all_orbits_with_cap(ctx, DEFAULT_MAPPING_CAP)
}

pub fn all_orbits_with_cap(ctx: &ActionContext, cap: u128) -> Result<OrbitCensus> {
    let n = ctx.x_size() as u128;
    let k = ctx.y_size() as u32;
    let total = n.checked_pow(k).unwrap_or(u128::MAX);
    if total > cap {
        return Err(Error::CapExceeded { what: "number of mappings", size: total, cap });
    }
    let total = total as usize;
    let decode = |mut code: usize| {
        let mut images = vec![0; k as usize];
        for slot in images.iter_mut().rev() {
            *slot = code % n as usize;
            code /= n as usize;
        }
        Mapping { images, target_size: n as usize }
    };
    let encode = |m: &Mapping| m.images.iter().fold(0usize, |acc, &x| acc * n as usize + x);
    let mut visited = vec![false; total];
    let mut orbits = Vec::new();
    let mut counts = BTreeMap::new();
    for code in 0..total {
        if visited[code] {
            continue;
        }
        let members = orbit_set(&decode(code), ctx);
        for m in &members {
            visited[encode(m)] = true;
        }
        *counts.entry(members.len()).or_insert(0) += 1;
        orbits.push(GeneralizedPermutant { context: ctx.clone(), members });
    }
    Ok(OrbitCensus { orbits, counts, total })
}

/// `α(element, mapping) = image` escapes the set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PermutantWitness {
    pub mapping: String,
    pub element: String,
    pub image: String,
}

/// Checks α-closure directly and, independently, that the set is a union of
/// orbits of its members. The two answers always agree.
pub fn is_generalized_permutant(members: &BTreeSet<Mapping>, ctx: &ActionContext) -> Result<Verdict<PermutantWitness>> {
    for m in members {
        ctx.check_mapping(m)?;
    }
    let mut escape = None;
    'outer: for h in members {
        for &g in ctx.generator_indices() {
            let image = ctx.alpha_at(g, h);
            if !members.contains(&image) {
                escape = Some(PermutantWitness {
                    mapping: ctx.format_mapping(h),
                    element: ctx.group().elements()[g].format_cycles(ctx.x_labels()),
                    image: ctx.format_mapping(&image),
                });
                break 'outer;
            }
        }
    }
    let mut union = BTreeSet::new();
    for h in members {
        if !union.contains(h) {
            union.extend(orbit_set(h, ctx));
        }
    }
    let is_union = union == *members;
    assert_eq!(escape.is_none(), is_union, "closure and orbit-union characterizations disagree");
    Ok(match escape {
        None => Verdict::Holds,
        Some(w) => Verdict::Fails(w),
    })
}

/// A finitely supported signed weighting of maps `Y → X`.
#[derive(Debug, Clone, PartialEq)]
pub struct PermutantMeasure {
    context: ActionContext,
    weights: BTreeMap<Mapping, Rational>,
}

/// `weight(α(element, mapping))` differs from `weight(mapping)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MeasureWitness {
    pub mapping: String,
    pub element: String,
    pub image: String,
    #[serde(with = "rational::serde_str")]
    pub weight: Rational,
    #[serde(with = "rational::serde_str")]
    pub image_weight: Rational,
}

impl PermutantMeasure {
    /// Stores the weights without checking invariance; zero weights are dropped.
    pub fn new(context: ActionContext, weights: impl IntoIterator<Item = (Mapping, Rational)>) -> Result<Self> {
        let mut map: BTreeMap<Mapping, Rational> = BTreeMap::new();
        for (m, w) in weights {
            context.check_mapping(&m)?;
            *map.entry(m).or_insert_with(Rational::zero) += w;
        }
        map.retain(|_, w| !w.is_zero());
        Ok(PermutantMeasure { context, weights: map })
    }

    /// Weight `w` on every member of `H`.
    pub fn uniform(permutant: &GeneralizedPermutant, w: Rational) -> Result<Self> {
        PermutantMeasure::new(permutant.context().clone(), permutant.members().iter().map(|m| (m.clone(), w.clone())))
    }

    pub fn context(&self) -> &ActionContext {
        &self.context
    }

    pub fn weight(&self, f: &Mapping) -> Rational {
        self.weights.get(f).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn weights(&self) -> &BTreeMap<Mapping, Rational> {
        &self.weights
    }

    pub fn support(&self) -> impl Iterator<Item = &Mapping> {
        self.weights.keys()
    }

    /// `Σ |μ(f)|`.
    pub fn total_variation(&self) -> Rational {
        self.weights.values().map(|w| w.abs()).sum()
    }

    /// Reads `[{"mapping": "aec", "weight": "1/2"}, ...]`.
    pub fn from_json(value: &Value, context: &ActionContext) -> Result<Self> {
        let items = match value {
            Value::Array(items) => items,
            Value::Object(obj) => match obj.get("weights") {
                Some(Value::Array(items)) => items,
                _ => return Err(Error::Malformed("expected a `weights` array".into())),
            },
            _ => return Err(Error::Malformed("expected an array of weighted mappings".into())),
        };
        let weights = items
            .iter()
            .map(|item| {
                let mapping = item.get("mapping").ok_or_else(|| Error::Malformed("entry without `mapping`".into()))?;
                let weight = item.get("weight").ok_or_else(|| Error::Malformed("entry without `weight`".into()))?;
                Ok((context.mapping_from_json(mapping)?, rational::from_json(weight)?))
            })
            .collect::<Result<Vec<_>>>()?;
        PermutantMeasure::new(context.clone(), weights)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.weights
                .iter()
                .map(|(m, w)| serde_json::json!({"mapping": self.context.format_mapping(m), "weight": rational::format(w)}))
                .collect(),
        )
    }
}

/// Atom-level α-invariance: `μ(α(g, f)) = μ(f)` for every generator `g`
/// and every `f` in the support.
pub fn is_permutant_measure(measure: &PermutantMeasure) -> Verdict<MeasureWitness> {
    let ctx = measure.context();
    for (f, w) in measure.weights() {
        for &g in ctx.generator_indices() {
            let image = ctx.alpha_at(g, f);
            let image_weight = measure.weight(&image);
            if image_weight != *w {
                return Verdict::Fails(MeasureWitness {
                    mapping: ctx.format_mapping(f),
                    element: ctx.group().elements()[g].format_cycles(ctx.x_labels()),
                    image: ctx.format_mapping(&image),
                    weight: w.clone(),
                    image_weight,
                });
            }
        }
    }
    Verdict::Holds
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Vertex,
    Edge,
}

/// All transpositions of the vertices of `K_n`, or the edge permutations they
/// induce, as a permutant for `Aut(K_n)` acting on itself by conjugation.
pub fn transposition_permutant(n: usize, model: Model) -> Result<GeneralizedPermutant> {
    if !(2..=6).contains(&n) {
        return Err(Error::OutOfRange(format!("complete graph order {n} outside 2..=6")));
    }
    let graph = Graph::complete(n);
    let swaps: Vec<Permutation> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .map(|(i, j)| Permutation::transposition(n, i, j))
        .collect::<Result<_>>()?;
    match model {
        Model::Vertex => {
            let ctx = ActionContext::classical(graph.vertex_automorphism_group()?, graph.vertex_labels().clone())?;
            GeneralizedPermutant::new(ctx, swaps.iter().map(Mapping::from_permutation))
        }
        Model::Edge => {
            let ctx = ActionContext::classical(graph.edge_automorphism_group()?, graph.edge_labels().clone())?;
            let members = swaps
                .iter()
                .map(|s| graph.induced_edge_permutation(s).map(|p| Mapping::from_permutation(&p)))
                .collect::<Result<Vec<_>>>()?;
            GeneralizedPermutant::new(ctx, members)
        }
    }
}

/// The C₆ → C₃ setting: `X` the edges `a..f` of a hexagon, `Y` the edges
/// `g, h, i` of a triangle, `G = D₆ = ⟨α, β⟩`, `K = D₃ = ⟨γ, δ⟩`, with
/// `T(α) = γ` and `T(β) = δ`.
pub fn hexagon_triangle_context() -> ActionContext {
    let x = Labels::chars("abcdef");
    let y = Labels::chars("ghi");
    let p = |s: &str, l: &Labels| Permutation::parse_cycles(s, l).expect("valid cycles");
    let g6 = FiniteGroup::generate(6, &[p("(a,b,c,d,e,f)", &x), p("(a,f)(b,e)(c,d)", &x)]).expect("D6");
    let g3 = FiniteGroup::generate(3, &[p("(g,h,i)", &y), p("(g,i)", &y)]).expect("D3");
    let hom = Homomorphism::from_generator_images(&g6, &g3, &[p("(g,h,i)", &y), p("(g,i)", &y)]).expect("dihedral map");
    ActionContext::new(hom, x, y).expect("consistent sizes")
}
