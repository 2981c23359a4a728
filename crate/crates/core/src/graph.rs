//! Simple undirected graphs with labeled vertices and edges.
//!
//! Edges keep the order in which they were given; every edge-indexed vector
//! in the crate uses that order. Indicator vectors over edges are packed into
//! a `u64` with the first edge as the most significant bit, so numeric order
//! equals lexicographic order of the `0/1` strings.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{FiniteGroup, Homomorphism, Labels, Permutation};

/// Default cap on the number of vertices for automorphism search.
pub const DEFAULT_VERTEX_CAP: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_labels: Labels,
    edges: Vec<(usize, usize)>,
    edge_labels: Labels,
    edge_index: HashMap<(usize, usize), usize>,
}

/// JSON form: `{"vertices":["A",...], "edges":[{"label":"p","ends":["A","B"]},...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDocument {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub edges: Vec<EdgeDocument>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeDocument {
    pub label: String,
    pub ends: [String; 2],
}

fn key(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl Graph {
    pub fn new(vertex_labels: Labels, edges: Vec<(usize, usize)>, edge_labels: Labels) -> Result<Self> {
        if edges.len() != edge_labels.len() {
            return Err(Error::InvalidGraph(format!("{} edges but {} edge labels", edges.len(), edge_labels.len())));
        }
        let n = vertex_labels.len();
        let mut edge_index = HashMap::with_capacity(edges.len());
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!("edge {} has an endpoint out of range", edge_labels.name(i))));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!(
                    "loop at {} (edge {})",
                    vertex_labels.name(u),
                    edge_labels.name(i)
                )));
            }
            if edge_index.insert(key(u, v), i).is_some() {
                return Err(Error::InvalidGraph(format!(
                    "duplicate edge {{{},{}}}",
                    vertex_labels.name(u),
                    vertex_labels.name(v)
                )));
            }
        }
        Ok(Graph { vertex_labels, edges, edge_labels, edge_index })
    }

    pub fn from_document(doc: &GraphDocument) -> Result<Self> {
        let vertex_labels = Labels::new(doc.vertices.iter().cloned())?;
        let edge_labels = Labels::new(doc.edges.iter().map(|e| e.label.clone()))?;
        let edges = doc
            .edges
            .iter()
            .map(|e| Ok((vertex_labels.index_of(&e.ends[0])?, vertex_labels.index_of(&e.ends[1])?)))
            .collect::<Result<Vec<_>>>()?;
        Graph::new(vertex_labels, edges, edge_labels)
    }

    pub fn parse_json(text: &str) -> Result<Self> {
        let doc: GraphDocument = serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        Graph::from_document(&doc)
    }

    pub fn to_document(&self) -> GraphDocument {
        GraphDocument {
            vertices: self.vertex_labels.names().to_vec(),
            edges: self
                .edges
                .iter()
                .enumerate()
                .map(|(i, &(u, v))| EdgeDocument {
                    label: self.edge_labels.name(i).to_string(),
                    ends: [self.vertex_labels.name(u).to_string(), self.vertex_labels.name(v).to_string()],
                })
                .collect(),
        }
    }

    /// `K_n` with vertices `A, B, ...`. For `n = 4` the edges follow the
    /// `p..u` scheme `AB, BC, AC, AD, BD, CD`; otherwise edges are the
    /// lexicographic vertex pairs labeled `a, b, ...`.
    pub fn complete(n: usize) -> Self {
        let vertices = Labels::letters('A', n);
        if n == 4 {
            let edges = vec![(0, 1), (1, 2), (0, 2), (0, 3), (1, 3), (2, 3)];
            return Graph::new(vertices, edges, Labels::chars("pqrstu")).expect("valid K4");
        }
        let edges: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let labels = Labels::letters('a', edges.len());
        Graph::new(vertices, edges, labels).expect("valid complete graph")
    }

    /// The cycle `v0 v1 … v(n-1) v0` with edges `{v_i, v_(i+1)}` in order and
    /// the closing edge `{v0, v(n-1)}` last.
    pub fn cycle(vertex_labels: Labels, edge_labels: Labels) -> Result<Self> {
        let n = vertex_labels.len();
        if n < 3 {
            return Err(Error::InvalidGraph("a cycle needs at least 3 vertices".into()));
        }
        let mut edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
        edges.push((0, n - 1));
        Graph::new(vertex_labels, edges, edge_labels)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_labels(&self) -> &Labels {
        &self.vertex_labels
    }

    pub fn edge_labels(&self) -> &Labels {
        &self.edge_labels
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        self.edge_index.get(&key(u, v)).copied()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count()];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    fn adjacency(&self) -> Vec<Vec<bool>> {
        let n = self.vertex_count();
        let mut adj = vec![vec![false; n]; n];
        for &(u, v) in &self.edges {
            adj[u][v] = true;
            adj[v][u] = true;
        }
        adj
    }

    /// All vertex permutations preserving adjacency (`Aut(V_Γ)`), found by
    /// backtracking with degree pruning.
    pub fn vertex_automorphism_group(&self) -> Result<FiniteGroup> {
        self.vertex_automorphism_group_with_cap(DEFAULT_VERTEX_CAP)
    }

    pub fn vertex_automorphism_group_with_cap(&self, vertex_cap: usize) -> Result<FiniteGroup> {
        let n = self.vertex_count();
        if n > vertex_cap {
            return Err(Error::CapExceeded { what: "vertex count", size: n as u128, cap: vertex_cap as u128 });
        }
        let adj = self.adjacency();
        let deg = self.degrees();
        let mut found = Vec::new();
        let mut image = vec![usize::MAX; n];
        let mut used = vec![false; n];
        search(0, &adj, &deg, &mut image, &mut used, &mut found);
        FiniteGroup::from_elements(n, found)
    }

    /// The edge permutation `e ↦ {vp(u), vp(v)}` induced by a vertex automorphism.
    pub fn induced_edge_permutation(&self, vp: &Permutation) -> Result<Permutation> {
        if vp.degree() != self.vertex_count() {
            return Err(Error::DomainMismatch { expected: self.vertex_count(), found: vp.degree() });
        }
        let images = self
            .edges
            .iter()
            .enumerate()
            .map(|(i, &(u, v))| {
                let (a, b) = (vp.image(u), vp.image(v));
                self.edge_between(a, b).ok_or_else(|| {
                    Error::NotAutomorphism(format!(
                        "edge {} maps to the non-edge {{{},{}}}",
                        self.edge_labels.name(i),
                        self.vertex_labels.name(a),
                        self.vertex_labels.name(b)
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::from_images(images)
    }

    /// `Aut(E_Γ)`: the image of the vertex automorphism group on edges.
    pub fn edge_automorphism_group(&self) -> Result<FiniteGroup> {
        let vertex_group = self.vertex_automorphism_group()?;
        self.edge_group_from(&vertex_group)
    }

    fn edge_group_from(&self, vertex_group: &FiniteGroup) -> Result<FiniteGroup> {
        let mut images =
            vertex_group.elements().iter().map(|g| self.induced_edge_permutation(g)).collect::<Result<Vec<_>>>()?;
        images.sort();
        images.dedup();
        FiniteGroup::from_elements(self.edge_count(), images)
    }

    /// The induced map `Aut(V_Γ) → Aut(E_Γ)` as a homomorphism.
    pub fn induced_edge_homomorphism(&self) -> Result<Homomorphism> {
        let vertex_group = self.vertex_automorphism_group()?;
        let edge_group = self.edge_group_from(&vertex_group)?;
        Homomorphism::from_fn(&vertex_group, &edge_group, |g| self.induced_edge_permutation(g).expect("automorphism"))
    }
}

fn search(
    v: usize,
    adj: &[Vec<bool>],
    deg: &[usize],
    image: &mut Vec<usize>,
    used: &mut Vec<bool>,
    found: &mut Vec<Permutation>,
) {
    let n = adj.len();
    if v == n {
        found.push(Permutation::from_images(image.clone()).expect("bijective by construction"));
        return;
    }
    for w in 0..n {
        if used[w] || deg[w] != deg[v] {
            continue;
        }
        if (0..v).any(|u| adj[u][v] != adj[image[u]][w]) {
            continue;
        }
        image[v] = w;
        used[w] = true;
        search(v + 1, adj, deg, image, used, found);
        used[w] = false;
    }
    image[v] = usize::MAX;
}

/// Orbits of `{0,1}^m` under the edge automorphism group of `K_n`.
#[derive(Debug, Clone)]
pub struct SubgraphClasses {
    pub n: usize,
    pub edge_count: usize,
    /// `class_of[v]` is the class id of indicator vector `v`.
    pub class_of: Vec<usize>,
    /// Lexicographically smallest vector of each class, in class-id order.
    pub representatives: Vec<u64>,
}

impl SubgraphClasses {
    pub fn class_count(&self) -> usize {
        self.representatives.len()
    }
}

/// Packs a `0/1` vector with the first entry as the most significant bit.
pub fn pack_indicator(bits: &[u8]) -> u64 {
    bits.iter().fold(0, |acc, &b| (acc << 1) | u64::from(b != 0))
}

pub fn unpack_indicator(code: u64, m: usize) -> Vec<u8> {
    (0..m).map(|i| ((code >> (m - 1 - i)) & 1) as u8).collect()
}

pub fn indicator_string(code: u64, m: usize) -> String {
    unpack_indicator(code, m).iter().map(|b| if *b == 1 { '1' } else { '0' }).collect()
}

/// `φ ∘ g` on packed indicator vectors.
pub(crate) fn pull_back_indicator(code: u64, g: &Permutation) -> u64 {
    let m = g.degree();
    let mut out = 0u64;
    for i in 0..m {
        let bit = (code >> (m - 1 - g.image(i))) & 1;
        out |= bit << (m - 1 - i);
    }
    out
}

/// Partitions all edge subsets of `K_n` into isomorphism classes.
pub fn subgraph_isomorphism_classes(n: usize) -> Result<SubgraphClasses> {
    if n > 6 {
        return Err(Error::CapExceeded { what: "complete graph order", size: n as u128, cap: 6 });
    }
    let graph = Graph::complete(n);
    let group = graph.edge_automorphism_group()?;
    let m = graph.edge_count();
    let total = 1usize << m;
    let mut class_of = vec![usize::MAX; total];
    let mut representatives = Vec::new();
    for v in 0..total {
        if class_of[v] != usize::MAX {
            continue;
        }
        let id = representatives.len();
        representatives.push(v as u64);
        for g in group.elements() {
            class_of[pull_back_indicator(v as u64, g) as usize] = id;
        }
    }
    Ok(SubgraphClasses { n, edge_count: m, class_of, representatives })
}
