//! Permutations of `0..n`, cycle notation, explicit finite groups and
//! homomorphisms between them.
//!
//! Labels only matter for parsing and printing; every computation works on
//! integer indices. A permutation is stored as its image table, so
//! `p.image(i) == images[i]`, and composition follows function notation:
//! `(p ∘ q)(x) = p(q(x))`.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on enumerated group orders: `10!`.
pub const DEFAULT_GROUP_CAP: usize = 3_628_800;

/// Environment variable overriding [`DEFAULT_GROUP_CAP`].
pub const GROUP_CAP_ENV: &str = "GENEO_MAX_GROUP";

/// The group-order cap in effect: `GENEO_MAX_GROUP` if set and valid,
/// otherwise [`DEFAULT_GROUP_CAP`].
pub fn group_cap() -> usize {
    std::env::var(GROUP_CAP_ENV).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_GROUP_CAP)
}

/// Names for the points of an indexed finite set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Labels(Vec<String>);

impl Labels {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut seen = HashSet::new();
        for name in &names {
            if name.is_empty() || name.contains(['(', ')', ',']) || name.chars().any(char::is_whitespace) {
                return Err(Error::Malformed(format!("invalid label `{name}`")));
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::RepeatedLabel(name.clone()));
            }
        }
        Ok(Labels(names))
    }

    /// One label per character, e.g. `Labels::chars("abcdef")`.
    pub fn chars(s: &str) -> Self {
        Labels::new(s.chars().map(String::from)).expect("distinct single-character labels")
    }

    /// `count` consecutive letters starting at `first` (`'A'`, `'a'`, ...),
    /// falling back to `first` followed by an index once the alphabet runs out.
    pub fn letters(first: char, count: usize) -> Self {
        let start = first as u32;
        let span = if first.is_ascii_uppercase() {
            'Z' as u32 - start + 1
        } else if first.is_ascii_lowercase() {
            'z' as u32 - start + 1
        } else {
            0
        };
        if count as u32 <= span {
            Labels((0..count as u32).map(|i| char::from_u32(start + i).unwrap().to_string()).collect())
        } else {
            Labels((0..count).map(|i| format!("{first}{i}")).collect())
        }
    }

    /// Labels `0`, `1`, ..., `n-1`.
    pub fn numeric(n: usize) -> Self {
        Labels((0..n).map(|i| i.to_string()).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn name(&self, index: usize) -> &str {
        &self.0[index]
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.0.iter().position(|l| l == name).ok_or_else(|| Error::UnknownLabel(name.to_string()))
    }

    pub fn all_single_char(&self) -> bool {
        self.0.iter().all(|l| l.chars().count() == 1)
    }
}

/// A bijection of `0..n`, stored as its image table.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n {
                return Err(Error::NotBijective { size: n, reason: format!("image {i} out of range") });
            }
            if std::mem::replace(&mut seen[i], true) {
                return Err(Error::NotBijective { size: n, reason: format!("image {i} repeated") });
            }
        }
        Ok(Permutation { images })
    }

    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Self> {
        if i >= n || j >= n {
            return Err(Error::OutOfRange(format!("transposition ({i} {j}) on {n} points")));
        }
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(i, j);
        Ok(Permutation { images })
    }

    /// Builds a permutation from disjoint cycles of indices.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                if a >= n {
                    return Err(Error::OutOfRange(format!("point {a} on {n} points")));
                }
                if std::mem::replace(&mut used[a], true) {
                    return Err(Error::RepeatedLabel(a.to_string()));
                }
                images[a] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DomainMismatch { expected: self.degree(), found: other.degree() });
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Permutation) -> Permutation {
        Permutation { images: other.images.iter().map(|&i| self.images[i]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Permutation { images }
    }

    /// `self ∘ other ∘ self⁻¹`.
    pub fn conjugate(&self, other: &Permutation) -> Result<Permutation> {
        Ok(self.compose(other)?.compose_unchecked(&self.inverse()))
    }

    /// Non-trivial cycles, each starting at its smallest point, sorted by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut next = self.images[start];
            while next != start {
                seen[next] = true;
                cycle.push(next);
                next = self.images[next];
            }
            out.push(cycle);
        }
        out
    }

    /// Number of cycles including fixed points.
    pub fn cycle_count(&self) -> usize {
        let fixed = self.images.iter().enumerate().filter(|(i, j)| i == *j).count();
        fixed + self.cycles().len()
    }

    /// Smallest `k ≥ 1` with `self^k = id`.
    pub fn order(&self) -> usize {
        fn gcd(a: usize, b: usize) -> usize {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        self.cycles().iter().fold(1, |acc, c| acc / gcd(acc, c.len()) * c.len())
    }

    /// Parses a product of disjoint cycles such as `(A,C)(B,D)` or `(r s)(q t)`,
    /// or the literal `id`.
    pub fn parse_cycles(text: &str, labels: &Labels) -> Result<Permutation> {
        let n = labels.len();
        let trimmed = text.trim();
        if trimmed == "id" || trimmed == "()" || trimmed.is_empty() {
            return Ok(Permutation::identity(n));
        }
        let mut images: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        let mut rest = trimmed;
        while !rest.is_empty() {
            let Some(body) = rest.strip_prefix('(') else {
                return Err(Error::Malformed(format!("expected `(` in `{text}`")));
            };
            let Some(close) = body.find(')') else {
                return Err(Error::Malformed(format!("unclosed cycle in `{text}`")));
            };
            let inner = &body[..close];
            if inner.contains('(') {
                return Err(Error::Malformed(format!("nested cycle in `{text}`")));
            }
            let points: Vec<usize> = inner
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| labels.index_of(t))
                .collect::<Result<_>>()?;
            if points.is_empty() {
                return Err(Error::Malformed(format!("empty cycle in `{text}`")));
            }
            for (k, &a) in points.iter().enumerate() {
                if std::mem::replace(&mut used[a], true) {
                    return Err(Error::RepeatedLabel(labels.name(a).to_string()));
                }
                images[a] = points[(k + 1) % points.len()];
            }
            rest = body[close + 1..].trim_start();
        }
        Ok(Permutation { images })
    }

    /// Disjoint cycles sorted by smallest moved index, fixed points omitted;
    /// the identity prints as `id`.
    pub fn format_cycles(&self, labels: &Labels) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "id".to_string();
        }
        let mut out = String::new();
        for cycle in cycles {
            out.push('(');
            for (k, &p) in cycle.iter().enumerate() {
                if k > 0 {
                    out.push(',');
                }
                out.push_str(labels.name(p));
            }
            out.push(')');
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_cycles(&Labels::numeric(self.degree())))
    }
}

/// An explicitly enumerated permutation group.
///
/// Elements are kept sorted by image table, which fixes the order of every
/// downstream enumeration. Equality compares elements, not generators.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    degree: usize,
    elements: Vec<Permutation>,
    generators: Vec<Permutation>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}

impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// The closure of `generators` under composition, capped at [`group_cap`].
    pub fn generate(degree: usize, generators: &[Permutation]) -> Result<Self> {
        Self::generate_with_cap(degree, generators, group_cap())
    }

    pub fn generate_with_cap(degree: usize, generators: &[Permutation], cap: usize) -> Result<Self> {
        for g in generators {
            if g.degree() != degree {
                return Err(Error::DomainMismatch { expected: degree, found: g.degree() });
            }
        }
        let elements = closure(degree, generators, cap)?;
        Ok(FiniteGroup { degree, elements, generators: generators.to_vec() })
    }

    /// The trivial group on `degree` points.
    pub fn trivial(degree: usize) -> Self {
        FiniteGroup { degree, elements: vec![Permutation::identity(degree)], generators: Vec::new() }
    }

    /// `S_n`, generated by `(0 1)` and `(0 1 … n-1)`.
    pub fn symmetric(degree: usize) -> Result<Self> {
        if degree < 2 {
            return Ok(Self::trivial(degree));
        }
        let swap = Permutation::transposition(degree, 0, 1)?;
        if degree == 2 {
            return Self::generate(degree, &[swap]);
        }
        let cycle = Permutation::from_cycles(degree, &[(0..degree).collect()])?;
        Self::generate(degree, &[swap, cycle])
    }

    /// Builds a group from a complete element list, checking closure and
    /// choosing a generating set greedily in canonical order.
    pub fn from_elements(degree: usize, elements: Vec<Permutation>) -> Result<Self> {
        let cap = group_cap();
        if elements.len() > cap {
            return Err(Error::CapExceeded { what: "group order", size: elements.len() as u128, cap: cap as u128 });
        }
        let mut elements = elements;
        for g in &elements {
            if g.degree() != degree {
                return Err(Error::DomainMismatch { expected: degree, found: g.degree() });
            }
        }
        elements.push(Permutation::identity(degree));
        elements.sort();
        elements.dedup();
        let set: HashSet<&Permutation> = elements.iter().collect();
        // Closure under composition with each element (finite, so inverses follow).
        let mut generators: Vec<Permutation> = Vec::new();
        let mut span: HashSet<Permutation> = HashSet::from([Permutation::identity(degree)]);
        for g in &elements {
            if !span.contains(g) {
                generators.push(g.clone());
                span = closure(degree, &generators, cap)?.into_iter().collect();
                if span.iter().any(|s| !set.contains(s)) {
                    return Err(Error::Malformed("element list is not closed under composition".into()));
                }
            }
        }
        Ok(FiniteGroup { degree, elements, generators })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn index_of(&self, g: &Permutation) -> Option<usize> {
        self.elements.binary_search(g).ok()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.index_of(g).is_some()
    }

    /// Orbits of the natural action on points, each sorted, ordered by smallest point.
    pub fn point_orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for start in 0..self.degree {
            if seen[start] {
                continue;
            }
            let mut orbit: Vec<usize> = self.elements.iter().map(|g| g.image(start)).collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &p in &orbit {
                seen[p] = true;
            }
            out.push(orbit);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.point_orbits().len() <= 1
    }

    pub fn to_document(&self, labels: &Labels) -> GroupDocument {
        GroupDocument {
            labels: labels.clone(),
            order: self.order(),
            generators: self.generators.iter().map(|g| g.format_cycles(labels)).collect(),
            elements: self.elements.iter().map(|g| g.format_cycles(labels)).collect(),
        }
    }
}

/// JSON form of a group: labels, generators and all elements in cycle notation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDocument {
    pub labels: Labels,
    #[serde(default)]
    pub order: usize,
    pub generators: Vec<String>,
    #[serde(default)]
    pub elements: Vec<String>,
}

impl GroupDocument {
    /// Rebuilds the group from its generators.
    pub fn to_group(&self) -> Result<FiniteGroup> {
        let gens =
            self.generators.iter().map(|s| Permutation::parse_cycles(s, &self.labels)).collect::<Result<Vec<_>>>()?;
        FiniteGroup::generate(self.labels.len(), &gens)
    }
}

fn closure(degree: usize, generators: &[Permutation], cap: usize) -> Result<Vec<Permutation>> {
    let id = Permutation::identity(degree);
    let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in generators {
            let y = x.compose_unchecked(g);
            if !seen.contains(&y) {
                if seen.len() >= cap {
                    return Err(Error::CapExceeded {
                        what: "group order",
                        size: seen.len() as u128 + 1,
                        cap: cap as u128,
                    });
                }
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    let mut elements: Vec<Permutation> = seen.into_iter().collect();
    elements.sort();
    Ok(elements)
}

/// A verified group homomorphism `T : G → K`, stored as a lookup table over
/// the canonical element order of `G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homomorphism {
    source: FiniteGroup,
    target: FiniteGroup,
    table: Vec<usize>,
}

/// Above this source order the all-pairs check is replaced by the
/// element × generator check, which is already a proof.
const EXHAUSTIVE_PAIR_LIMIT: usize = 1000;

impl Homomorphism {
    pub fn identity(group: &FiniteGroup) -> Self {
        Homomorphism { source: group.clone(), target: group.clone(), table: (0..group.order()).collect() }
    }

    /// Extends `generator images` (aligned with `source.generators()`) along
    /// the Cayley graph and verifies the result.
    pub fn from_generator_images(source: &FiniteGroup, target: &FiniteGroup, images: &[Permutation]) -> Result<Self> {
        if images.len() != source.generators().len() {
            return Err(Error::NotHomomorphism(format!(
                "{} generator images given for {} generators",
                images.len(),
                source.generators().len()
            )));
        }
        let mut image_idx = Vec::with_capacity(images.len());
        for img in images {
            image_idx.push(target.index_of(img).ok_or_else(|| Error::NotInGroup(img.to_string()))?);
        }
        let mut table: Vec<Option<usize>> = vec![None; source.order()];
        let id = source.index_of(&source.identity()).expect("identity present");
        let tid = target.index_of(&target.identity()).expect("identity present");
        table[id] = Some(tid);
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            let tx = &target.elements()[table[x].unwrap()];
            for (s, &ts) in source.generators().iter().zip(&image_idx) {
                let y = source.index_of(&source.elements()[x].compose_unchecked(s)).expect("closed");
                let ty = target.index_of(&tx.compose_unchecked(&target.elements()[ts])).expect("closed");
                match table[y] {
                    None => {
                        table[y] = Some(ty);
                        queue.push_back(y);
                    }
                    Some(prev) if prev != ty => {
                        return Err(Error::NotHomomorphism(format!(
                            "generator images are inconsistent at {}",
                            source.elements()[y]
                        )));
                    }
                    Some(_) => {}
                }
            }
        }
        let table = table.into_iter().map(|t| t.expect("generators reach every element")).collect();
        let hom = Homomorphism { source: source.clone(), target: target.clone(), table };
        hom.verify()?;
        Ok(hom)
    }

    /// Tabulates `f` over the source group and verifies the result.
    pub fn from_fn(
        source: &FiniteGroup,
        target: &FiniteGroup,
        f: impl Fn(&Permutation) -> Permutation,
    ) -> Result<Self> {
        let table = source
            .elements()
            .iter()
            .map(|g| {
                let img = f(g);
                target.index_of(&img).ok_or_else(|| Error::NotInGroup(img.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        let hom = Homomorphism { source: source.clone(), target: target.clone(), table };
        hom.verify()?;
        Ok(hom)
    }

    fn verify(&self) -> Result<()> {
        let id = self.source.index_of(&self.source.identity()).expect("identity present");
        if !self.target.elements()[self.table[id]].is_identity() {
            return Err(Error::NotHomomorphism("identity is not mapped to identity".into()));
        }
        let gens: Vec<usize> =
            self.source.generators().iter().map(|s| self.source.index_of(s).expect("member")).collect();
        self.check_pairs((0..self.source.order()).flat_map(|a| gens.iter().map(move |&b| (a, b))))?;
        if self.source.order() <= EXHAUSTIVE_PAIR_LIMIT {
            self.verify_exhaustive()?;
        }
        Ok(())
    }

    /// Checks `T(g₁∘g₂) = T(g₁)∘T(g₂)` over every pair.
    pub fn verify_exhaustive(&self) -> Result<()> {
        let n = self.source.order();
        self.check_pairs((0..n).flat_map(|a| (0..n).map(move |b| (a, b))))
    }

    fn check_pairs(&self, pairs: impl Iterator<Item = (usize, usize)>) -> Result<()> {
        let src = self.source.elements();
        let tgt = self.target.elements();
        for (a, b) in pairs {
            let ab = self.source.index_of(&src[a].compose_unchecked(&src[b])).expect("closed");
            let lhs = &tgt[self.table[ab]];
            let rhs = tgt[self.table[a]].compose_unchecked(&tgt[self.table[b]]);
            if *lhs != rhs {
                return Err(Error::NotHomomorphism(format!("T({} ∘ {}) differs", src[a], src[b])));
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &FiniteGroup {
        &self.source
    }

    pub fn target(&self) -> &FiniteGroup {
        &self.target
    }

    pub fn image(&self, g: &Permutation) -> Result<&Permutation> {
        let i = self.source.index_of(g).ok_or_else(|| Error::NotInGroup(g.to_string()))?;
        Ok(self.image_at(i))
    }

    /// Image of the `i`-th source element in canonical order.
    pub fn image_at(&self, i: usize) -> &Permutation {
        &self.target.elements()[self.table[i]]
    }

    pub fn is_identity_map(&self) -> bool {
        self.source == self.target && self.table.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &Homomorphism) -> Result<Homomorphism> {
        if self.target != next.source {
            return Err(Error::Incompatible("homomorphisms do not chain".into()));
        }
        let table = self.table.iter().map(|&k| next.table[k]).collect();
        Ok(Homomorphism { source: self.source.clone(), target: next.target.clone(), table })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c6() -> Labels {
        Labels::chars("abcdef")
    }

    #[test]
    fn involution_composes_to_identity() {
        let l = Labels::numeric(3);
        let t = Permutation::parse_cycles("(1 2)", &l).unwrap();
        assert!(t.compose(&t).unwrap().is_identity());
    }

    #[test]
    fn compose_with_identity() {
        let p = Permutation::parse_cycles("(a,c,e)(b,f)", &c6()).unwrap();
        assert_eq!(p.compose(&Permutation::identity(6)).unwrap(), p);
    }

    #[test]
    fn six_cycle_squared() {
        let a = Permutation::parse_cycles("(a,b,c,d,e,f)", &c6()).unwrap();
        assert_eq!(a.compose(&a).unwrap().format_cycles(&c6()), "(a,c,e)(b,d,f)");
    }

    #[test]
    fn compose_rejects_mismatched_degree() {
        let p = Permutation::identity(3);
        let q = Permutation::identity(4);
        assert!(matches!(p.compose(&q), Err(Error::DomainMismatch { .. })));
    }

    #[test]
    fn inverses() {
        let l = Labels::chars("ABCD");
        assert!(Permutation::identity(4).inverse().is_identity());
        let t = Permutation::parse_cycles("(A,B)", &l).unwrap();
        assert_eq!(t.inverse(), t);
        let a = Permutation::parse_cycles("(a,b,c,d,e,f)", &c6()).unwrap();
        assert_eq!(a.inverse().format_cycles(&c6()), "(a,f,e,d,c,b)");
        assert!(a.compose(&a.inverse()).unwrap().is_identity());
    }

    #[test]
    fn parse_double_transposition() {
        let l = Labels::chars("ABCD");
        let p = Permutation::parse_cycles("(A,C)(B,D)", &l).unwrap();
        assert_eq!(p.images(), &[2, 3, 0, 1]);
        assert!(Permutation::parse_cycles("id", &l).unwrap().is_identity());
        assert_eq!(p.format_cycles(&l), "(A,C)(B,D)");
        assert_eq!(Permutation::identity(4).format_cycles(&l), "id");
    }

    #[test]
    fn parse_accepts_space_separated_cycles() {
        let l = Labels::chars("pqrstu");
        let p = Permutation::parse_cycles("(r s)(q t)", &l).unwrap();
        assert_eq!(p.format_cycles(&l), "(q,t)(r,s)");
    }

    #[test]
    fn parse_errors() {
        let l = Labels::chars("ABCD");
        assert_eq!(Permutation::parse_cycles("(A,E)", &l), Err(Error::UnknownLabel("E".into())));
        assert_eq!(Permutation::parse_cycles("(A,B)(B,C)", &l), Err(Error::RepeatedLabel("B".into())));
        assert!(matches!(Permutation::parse_cycles("(A,B", &l), Err(Error::Malformed(_))));
        assert!(matches!(Permutation::parse_cycles("A,B)", &l), Err(Error::Malformed(_))));
        assert!(matches!(Permutation::parse_cycles("(A,(B))", &l), Err(Error::Malformed(_))));
    }

    #[test]
    fn from_images_validates() {
        assert!(Permutation::from_images(vec![1, 0, 2]).is_ok());
        assert!(Permutation::from_images(vec![1, 1, 2]).is_err());
        assert!(Permutation::from_images(vec![0, 3]).is_err());
    }

    #[test]
    fn klein_group_from_two_transpositions() {
        let l = Labels::chars("ABCD");
        let gens = ["(A,C)", "(B,D)"].map(|s| Permutation::parse_cycles(s, &l).unwrap());
        let g = FiniteGroup::generate(4, &gens).unwrap();
        let names: Vec<String> = g.elements().iter().map(|p| p.format_cycles(&l)).collect();
        assert_eq!(g.order(), 4);
        for want in ["id", "(A,C)", "(B,D)", "(A,C)(B,D)"] {
            assert!(names.contains(&want.to_string()), "{want}");
        }
    }

    #[test]
    fn empty_generators_give_trivial_group() {
        let g = FiniteGroup::generate(5, &[]).unwrap();
        assert_eq!(g.order(), 1);
        assert!(g.elements()[0].is_identity());
    }

    #[test]
    fn dihedral_of_order_twelve() {
        let alpha = Permutation::parse_cycles("(a,b,c,d,e,f)", &c6()).unwrap();
        let beta = Permutation::parse_cycles("(a,f)(b,e)(c,d)", &c6()).unwrap();
        let g = FiniteGroup::generate(6, &[alpha.clone(), beta.clone()]).unwrap();
        assert_eq!(g.order(), 12);
        assert_eq!(alpha.order(), 6);
        assert_eq!(beta.compose(&alpha).unwrap().order(), 2);
    }

    #[test]
    fn group_cap_is_enforced() {
        let s = FiniteGroup::symmetric(5).unwrap();
        let err = FiniteGroup::generate_with_cap(5, s.generators(), 100).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { .. }));
    }

    #[test]
    fn generators_must_share_degree() {
        let err = FiniteGroup::generate(3, &[Permutation::identity(4)]).unwrap_err();
        assert!(matches!(err, Error::DomainMismatch { .. }));
    }

    #[test]
    fn from_elements_rejects_unclosed_sets() {
        let l = Labels::chars("ABC");
        let t = Permutation::parse_cycles("(A,B)", &l).unwrap();
        let u = Permutation::parse_cycles("(B,C)", &l).unwrap();
        assert!(FiniteGroup::from_elements(3, vec![t, u]).is_err());
    }

    #[test]
    fn dihedral_homomorphism_from_presentations() {
        let ly = Labels::chars("ghi");
        let alpha = Permutation::parse_cycles("(a,b,c,d,e,f)", &c6()).unwrap();
        let beta = Permutation::parse_cycles("(a,f)(b,e)(c,d)", &c6()).unwrap();
        let gamma = Permutation::parse_cycles("(g,h,i)", &ly).unwrap();
        let delta = Permutation::parse_cycles("(g,i)", &ly).unwrap();
        let g = FiniteGroup::generate(6, &[alpha.clone(), beta]).unwrap();
        let k = FiniteGroup::generate(3, &[gamma.clone(), delta.clone()]).unwrap();
        let t = Homomorphism::from_generator_images(&g, &k, &[gamma.clone(), delta]).unwrap();
        t.verify_exhaustive().unwrap();
        assert_eq!(t.image(&alpha).unwrap(), &gamma);
        assert!(t.image(&g.identity()).unwrap().is_identity());
    }

    #[test]
    fn inconsistent_generator_images_are_rejected() {
        // Sending the 6-cycle to a transposition and the reflection to a 3-cycle breaks (βα)² = 1.
        let ly = Labels::chars("ghi");
        let alpha = Permutation::parse_cycles("(a,b,c,d,e,f)", &c6()).unwrap();
        let beta = Permutation::parse_cycles("(a,f)(b,e)(c,d)", &c6()).unwrap();
        let g = FiniteGroup::generate(6, &[alpha, beta]).unwrap();
        let k = FiniteGroup::symmetric(3).unwrap();
        let bad =
            [Permutation::parse_cycles("(g,h)", &ly).unwrap(), Permutation::parse_cycles("(g,h,i)", &ly).unwrap()];
        assert!(matches!(Homomorphism::from_generator_images(&g, &k, &bad), Err(Error::NotHomomorphism(_))));
    }

    #[test]
    fn group_document_round_trip() {
        let l = Labels::chars("ABCD");
        let g = FiniteGroup::symmetric(4).unwrap();
        let doc = g.to_document(&l);
        assert_eq!(doc.elements.len(), 24);
        let json = serde_json::to_string(&doc).unwrap();
        let back: GroupDocument = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_group().unwrap(), g);
    }
}
