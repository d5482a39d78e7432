//! Finite simplicial complexes with a full face lattice.
//!
//! Used for vertex links of cube complexes and for the defining complex `L`
//! of a right-angled Coxeter group. Simplices are stored as sorted vertex
//! index vectors; the face lattice is materialized, which is fine at the
//! sizes this crate targets.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SimplicialComplexDoc {
    pub vertices: Vec<String>,
    pub maximal_simplices: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertex_names: Vec<String>,
    name_index: HashMap<String, u32>,
    /// Every nonempty simplex, as sorted vertex indices.
    faces: BTreeSet<Vec<u32>>,
    maximal: Vec<Vec<u32>>,
}

impl SimplicialComplex {
    /// Builds a complex from vertex names and arbitrary (not necessarily
    /// maximal) simplices given by name. Faces are closed off and the
    /// maximal family re-derived.
    pub fn new(vertices: Vec<String>, simplices: &[Vec<String>]) -> Result<Self> {
        let mut name_index = HashMap::new();
        for (i, name) in vertices.iter().enumerate() {
            if name_index.insert(name.clone(), i as u32).is_some() {
                return Err(Error::Schema(format!("duplicate vertex {name:?}")));
            }
        }
        let mut by_index = Vec::with_capacity(simplices.len());
        for s in simplices {
            let mut ix: Vec<u32> = Vec::with_capacity(s.len());
            for name in s {
                let &i = name_index
                    .get(name)
                    .ok_or_else(|| Error::UnknownVertex(name.clone()))?;
                ix.push(i);
            }
            ix.sort_unstable();
            ix.dedup();
            if ix.len() != s.len() {
                return Err(Error::Schema(format!("simplex {s:?} repeats a vertex")));
            }
            if ix.len() > 16 {
                return Err(Error::Schema(format!("simplex {s:?} has dimension > 15")));
            }
            by_index.push(ix);
        }
        Ok(Self::from_indexed(vertices, name_index, by_index))
    }

    pub(crate) fn from_indexed(
        vertex_names: Vec<String>,
        name_index: HashMap<String, u32>,
        simplices: Vec<Vec<u32>>,
    ) -> Self {
        let mut faces = BTreeSet::new();
        for v in 0..vertex_names.len() as u32 {
            faces.insert(vec![v]);
        }
        for s in &simplices {
            // All nonempty subsets; simplices are small so 2^k is fine.
            for mask in 1u32..(1 << s.len()) {
                let sub: Vec<u32> = (0..s.len())
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| s[i])
                    .collect();
                faces.insert(sub);
            }
        }
        let maximal = derive_maximal(&faces);
        Self {
            vertex_names,
            name_index,
            faces,
            maximal,
        }
    }

    pub fn from_doc(doc: &SimplicialComplexDoc) -> Result<Self> {
        Self::new(doc.vertices.clone(), &doc.maximal_simplices)
    }

    pub fn load(json: &str) -> Result<Self> {
        let doc: SimplicialComplexDoc = serde_json::from_str(json)?;
        Self::from_doc(&doc)
    }

    pub fn to_doc(&self) -> SimplicialComplexDoc {
        SimplicialComplexDoc {
            vertices: self.vertex_names.clone(),
            maximal_simplices: self
                .maximal
                .iter()
                .map(|s| s.iter().map(|&v| self.vertex_names[v as usize].clone()).collect())
                .collect(),
        }
    }

    pub fn n_vertices(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertex_names
    }

    pub fn vertex_name(&self, v: u32) -> &str {
        &self.vertex_names[v as usize]
    }

    pub fn vertex_index(&self, name: &str) -> Option<u32> {
        self.name_index.get(name).copied()
    }

    pub fn has_face(&self, sorted: &[u32]) -> bool {
        self.faces.contains(sorted)
    }

    pub fn faces(&self) -> impl Iterator<Item = &Vec<u32>> {
        self.faces.iter()
    }

    pub fn maximal_simplices(&self) -> &[Vec<u32>] {
        &self.maximal
    }

    /// Number of simplices of the given dimension.
    pub fn count_dim(&self, dim: usize) -> usize {
        self.faces.iter().filter(|s| s.len() == dim + 1).count()
    }

    pub fn dim(&self) -> usize {
        self.faces.iter().map(|s| s.len() - 1).max().unwrap_or(0)
    }

    /// Edges of the 1-skeleton as sorted index pairs.
    pub fn edges(&self) -> Vec<[u32; 2]> {
        self.faces
            .iter()
            .filter(|s| s.len() == 2)
            .map(|s| [s[0], s[1]])
            .collect()
    }

    pub fn adjacency(&self) -> Vec<BTreeSet<u32>> {
        let mut adj = vec![BTreeSet::new(); self.n_vertices()];
        for e in self.edges() {
            adj[e[0] as usize].insert(e[1]);
            adj[e[1] as usize].insert(e[0]);
        }
        adj
    }

    /// Link of a vertex: simplices `s` with `s ∪ {v}` a simplex, `v ∉ s`.
    pub fn link(&self, v: u32) -> SimplicialComplex {
        let mut simplices = Vec::new();
        for s in &self.faces {
            if s.binary_search(&v).is_ok() && s.len() > 1 {
                let rest: Vec<u32> = s.iter().copied().filter(|&u| u != v).collect();
                simplices.push(rest);
            }
        }
        self.induced_on_simplices(simplices)
    }

    /// Full subcomplex on the given vertex set.
    pub fn full_subcomplex(&self, keep: &HashSet<u32>) -> SimplicialComplex {
        let simplices: Vec<Vec<u32>> = self
            .faces
            .iter()
            .filter(|s| s.iter().all(|v| keep.contains(v)))
            .cloned()
            .collect();
        self.induced_on_simplices(simplices)
    }

    fn induced_on_simplices(&self, simplices: Vec<Vec<u32>>) -> SimplicialComplex {
        let mut used: BTreeSet<u32> = BTreeSet::new();
        for s in &simplices {
            used.extend(s.iter().copied());
        }
        let old_to_new: HashMap<u32, u32> = used
            .iter()
            .enumerate()
            .map(|(new, &old)| (old, new as u32))
            .collect();
        let vertex_names: Vec<String> = used
            .iter()
            .map(|&v| self.vertex_names[v as usize].clone())
            .collect();
        let name_index = vertex_names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), i as u32))
            .collect();
        let renamed: Vec<Vec<u32>> = simplices
            .into_iter()
            .map(|s| s.into_iter().map(|v| old_to_new[&v]).collect())
            .collect();
        SimplicialComplex::from_indexed(vertex_names, name_index, renamed)
    }

    pub fn is_connected(&self) -> bool {
        if self.n_vertices() == 0 {
            return true;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; self.n_vertices()];
        let mut queue = VecDeque::from([0u32]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &u in &adj[v as usize] {
                if !seen[u as usize] {
                    seen[u as usize] = true;
                    count += 1;
                    queue.push_back(u);
                }
            }
        }
        count == self.n_vertices()
    }

    /// Flag check: every clique of the 1-skeleton must span a simplex.
    /// Returns a minimal non-spanning clique (all proper subsets span) on
    /// failure, `None` when the complex is flag.
    pub fn flag_violation(&self) -> Option<Vec<u32>> {
        let adj = self.adjacency();
        // Level k holds all k-cliques, each known to span; grow one level at
        // a time so the first failure found is minimal.
        let mut level: Vec<Vec<u32>> = self.edges().iter().map(|e| e.to_vec()).collect();
        while !level.is_empty() {
            let mut next = Vec::new();
            for clique in &level {
                let last = *clique.last().unwrap();
                let mut common: Option<BTreeSet<u32>> = None;
                for &v in clique {
                    let nbrs: BTreeSet<u32> =
                        adj[v as usize].iter().copied().filter(|&u| u > last).collect();
                    common = Some(match common {
                        None => nbrs,
                        Some(c) => c.intersection(&nbrs).copied().collect(),
                    });
                }
                for u in common.unwrap_or_default() {
                    let mut bigger = clique.clone();
                    bigger.push(u);
                    if !self.has_face(&bigger) {
                        return Some(bigger);
                    }
                    next.push(bigger);
                }
            }
            level = next;
        }
        None
    }

    pub fn is_flag(&self) -> bool {
        self.flag_violation().is_none()
    }

    /// True when the 1-skeleton is a single cycle of the given length.
    pub fn is_cycle_of_length(&self, len: usize) -> bool {
        if self.n_vertices() != len || len < 3 {
            return false;
        }
        let adj = self.adjacency();
        adj.iter().all(|n| n.len() == 2) && self.is_connected() && self.count_dim(1) == len
    }
}

fn derive_maximal(faces: &BTreeSet<Vec<u32>>) -> Vec<Vec<u32>> {
    let mut maximal = Vec::new();
    for s in faces {
        let mut is_max = true;
        // A simplex is maximal iff no coface with one extra vertex exists.
        'outer: for t in faces {
            if t.len() == s.len() + 1 && s.iter().all(|v| t.binary_search(v).is_ok()) {
                is_max = false;
                break 'outer;
            }
        }
        if is_max {
            maximal.push(s.clone());
        }
    }
    maximal
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("v{i}")).collect()
    }

    fn sx(spec: &[&[usize]]) -> Vec<Vec<String>> {
        spec.iter()
            .map(|s| s.iter().map(|i| format!("v{i}")).collect())
            .collect()
    }

    #[test]
    fn face_closure_and_maximal() {
        let c = SimplicialComplex::new(names(3), &sx(&[&[0, 1, 2]])).unwrap();
        assert_eq!(c.count_dim(0), 3);
        assert_eq!(c.count_dim(1), 3);
        assert_eq!(c.count_dim(2), 1);
        assert_eq!(c.maximal_simplices(), &[vec![0, 1, 2]]);
    }

    #[test]
    fn hollow_triangle_is_not_flag() {
        let c = SimplicialComplex::new(names(3), &sx(&[&[0, 1], &[1, 2], &[0, 2]])).unwrap();
        assert_eq!(c.flag_violation(), Some(vec![0, 1, 2]));
    }

    #[test]
    fn full_triangle_is_flag() {
        let c = SimplicialComplex::new(names(3), &sx(&[&[0, 1, 2]])).unwrap();
        assert!(c.is_flag());
    }

    #[test]
    fn minimal_violation_is_reported_at_the_smallest_size() {
        // Hollow tetrahedron boundary missing one triangle: the empty triangle
        // {1,2,3} is the minimal violation even though {0,1,2,3} also fails.
        let c = SimplicialComplex::new(
            names(4),
            &sx(&[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2], &[1, 3], &[2, 3]]),
        )
        .unwrap();
        assert_eq!(c.flag_violation(), Some(vec![1, 2, 3]));
    }

    #[test]
    fn link_of_cycle_vertex_is_two_points() {
        let c =
            SimplicialComplex::new(names(4), &sx(&[&[0, 1], &[1, 2], &[2, 3], &[3, 0]])).unwrap();
        let l = c.link(0);
        assert_eq!(l.n_vertices(), 2);
        assert_eq!(l.count_dim(1), 0);
    }

    #[test]
    fn roundtrip_doc() {
        let c = SimplicialComplex::new(names(3), &sx(&[&[0, 1, 2]])).unwrap();
        let json = serde_json::to_string(&c.to_doc()).unwrap();
        let c2 = SimplicialComplex::load(&json).unwrap();
        assert_eq!(c, c2);
    }

    #[test]
    fn duplicate_vertex_in_simplex_is_rejected() {
        let r = SimplicialComplex::new(names(2), &[vec!["v0".into(), "v0".into()]]);
        assert!(matches!(r, Err(Error::Schema(_))));
    }
}
