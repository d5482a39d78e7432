//! Finite cube complexes in canonical binary corner order.
//!
//! A `d`-cube is stored as a tuple of `2^d` vertices where the corner with
//! bitmask `b` sits at index `b`; corner `b` and corner `b ^ (1 << a)` are
//! joined by an edge in direction `a`. Facet extraction is then pure index
//! arithmetic. Loading closes the input cubes under faces, so fixtures only
//! need to list maximal cubes.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::simplicial::SimplicialComplex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SquareId(pub u32);

impl VertexId {
    pub fn ix(self) -> usize {
        self.0 as usize
    }
}
impl EdgeId {
    pub fn ix(self) -> usize {
        self.0 as usize
    }
}
impl SquareId {
    pub fn ix(self) -> usize {
        self.0 as usize
    }
}

/// A cube of dimension ≥ 1, corners in canonical binary order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cube {
    pub corners: Vec<VertexId>,
}

impl Cube {
    pub fn dim(&self) -> usize {
        self.corners.len().trailing_zeros() as usize
    }

    /// Facet on the side `side` of axis `axis`: corners with bit `axis`
    /// fixed, remaining bits in order.
    pub fn facet(&self, axis: usize, side: usize) -> Cube {
        let d = self.dim();
        debug_assert!(axis < d);
        let mut corners = Vec::with_capacity(1 << (d - 1));
        for b in 0..1usize << (d - 1) {
            let low = b & ((1 << axis) - 1);
            let high = (b >> axis) << (axis + 1);
            corners.push(self.corners[low | (side << axis) | high]);
        }
        Cube { corners }
    }

    /// The edge of this cube in direction `axis` at corner position `b`
    /// (bit `axis` of `b` must be 0).
    pub fn edge_at(&self, axis: usize, b: usize) -> (VertexId, VertexId) {
        (self.corners[b], self.corners[b | (1 << axis)])
    }
}

/// Scale parameters shared by the grid/cocycle machinery: a basepoint and
/// three nested edge-path radii R0 ≤ R1 ≤ R.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScaleParams {
    pub x0: VertexId,
    pub r0: u32,
    pub r1: u32,
    pub r: u32,
}

impl ScaleParams {
    pub fn new(x0: VertexId, r0: u32, r1: u32, r: u32) -> Result<Self> {
        if r0 > r1 || r1 > r {
            return Err(Error::BadScale(format!("need R0 <= R1 <= R, got {r0}, {r1}, {r}")));
        }
        Ok(Self { x0, r0, r1, r })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CubeComplexDoc {
    pub vertices: Vec<String>,
    pub cubes: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basepoint: Option<String>,
}

#[derive(Clone, Debug)]
pub struct CubeComplex {
    vertex_names: Vec<String>,
    name_index: HashMap<String, VertexId>,
    /// by_dim[d] holds the d-cubes sorted by corner tuple; d starts at 1.
    by_dim: Vec<Vec<Cube>>,
    edge_index: HashMap<(VertexId, VertexId), EdgeId>,
    square_index: HashMap<[VertexId; 4], SquareId>,
    adjacency: Vec<Vec<(VertexId, EdgeId)>>,
    square_edges: Vec<[EdgeId; 4]>,
    edge_squares: Vec<Vec<SquareId>>,
    basepoint: Option<VertexId>,
}

impl PartialEq for CubeComplex {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_names == other.vertex_names
            && self.by_dim == other.by_dim
            && self.basepoint == other.basepoint
    }
}
impl Eq for CubeComplex {}

/// Lexicographically least corner tuple over the symmetries of the cube
/// (axis permutations and reflections). Cubes are deduplicated and compared
/// in this form.
fn canonical_corners(corners: &[VertexId]) -> Vec<VertexId> {
    let d = corners.len().trailing_zeros() as usize;
    if d == 1 {
        let mut c = corners.to_vec();
        c.sort_unstable();
        return c;
    }
    let mut best: Option<Vec<VertexId>> = None;
    let mut perm: Vec<usize> = (0..d).collect();
    permute(&mut perm, 0, &mut |perm| {
        for flip in 0..1usize << d {
            let mut candidate = vec![VertexId(0); corners.len()];
            for (b, &v) in corners.iter().enumerate() {
                let mut target = 0usize;
                for (a, &pa) in perm.iter().enumerate() {
                    if (b ^ flip) >> a & 1 == 1 {
                        target |= 1 << pa;
                    }
                }
                candidate[target] = v;
            }
            if best.as_ref().map_or(true, |b| candidate < *b) {
                best = Some(candidate);
            }
        }
    });
    best.unwrap()
}

fn permute<F: FnMut(&[usize])>(items: &mut [usize], k: usize, f: &mut F) {
    if k == items.len() {
        f(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, f);
        items.swap(k, i);
    }
}

impl CubeComplex {
    /// Builds a complex from vertex names and cube corner tuples (by name),
    /// validating shapes and closing under faces.
    pub fn new(
        vertices: Vec<String>,
        cubes: &[Vec<String>],
        basepoint: Option<&str>,
    ) -> Result<Self> {
        let mut name_index = HashMap::with_capacity(vertices.len());
        for (i, name) in vertices.iter().enumerate() {
            if name_index.insert(name.clone(), VertexId(i as u32)).is_some() {
                return Err(Error::Schema(format!("duplicate vertex {name:?}")));
            }
        }
        let mut resolved = Vec::with_capacity(cubes.len());
        for tuple in cubes {
            let mut corners = Vec::with_capacity(tuple.len());
            for name in tuple {
                let &v = name_index
                    .get(name)
                    .ok_or_else(|| Error::Schema(format!("cube uses unknown vertex {name:?}")))?;
                corners.push(v);
            }
            resolved.push(corners);
        }
        let basepoint = match basepoint {
            None => None,
            Some(name) => Some(
                *name_index
                    .get(name)
                    .ok_or_else(|| Error::UnknownVertex(name.to_string()))?,
            ),
        };
        Self::from_resolved(vertices, name_index, resolved, basepoint)
    }

    pub(crate) fn from_resolved(
        vertex_names: Vec<String>,
        name_index: HashMap<String, VertexId>,
        cubes: Vec<Vec<VertexId>>,
        basepoint: Option<VertexId>,
    ) -> Result<Self> {
        // Closure under faces, deduplicating by sorted vertex set and
        // checking that coinciding vertex sets carry the same cube structure.
        let mut seen: HashMap<Vec<VertexId>, Cube> = HashMap::new();
        let mut queue: VecDeque<Vec<VertexId>> = VecDeque::new();

        for corners in cubes {
            validate_shape(&corners)?;
            queue.push_back(corners);
        }
        while let Some(corners) = queue.pop_front() {
            let canon = canonical_corners(&corners);
            let mut key = corners.clone();
            key.sort_unstable();
            match seen.get(&key) {
                Some(existing) if existing.corners == canon => continue,
                Some(_) => {
                    return Err(Error::BadCubeShape(
                        "two cubes on the same vertex set glue differently".into(),
                    ))
                }
                None => {}
            }
            let cube = Cube { corners: canon };
            let d = cube.dim();
            if d >= 2 {
                for axis in 0..d {
                    for side in 0..2 {
                        queue.push_back(cube.facet(axis, side).corners);
                    }
                }
            }
            seen.insert(key, cube);
        }

        let max_dim = seen.values().map(Cube::dim).max().unwrap_or(0);
        let mut by_dim: Vec<Vec<Cube>> = vec![Vec::new(); max_dim + 1];
        for cube in seen.into_values() {
            by_dim[cube.dim()].push(cube);
        }
        for cubes in &mut by_dim {
            cubes.sort_unstable();
        }

        let mut edge_index = HashMap::new();
        let mut adjacency = vec![Vec::new(); vertex_names.len()];
        if by_dim.len() > 1 {
            for (i, e) in by_dim[1].iter().enumerate() {
                let (u, v) = (e.corners[0], e.corners[1]);
                edge_index.insert((u, v), EdgeId(i as u32));
                adjacency[u.ix()].push((v, EdgeId(i as u32)));
                adjacency[v.ix()].push((u, EdgeId(i as u32)));
            }
        }
        let mut square_index = HashMap::new();
        let mut square_edges = Vec::new();
        let mut edge_squares = vec![Vec::new(); edge_index.len()];
        if by_dim.len() > 2 {
            for (i, s) in by_dim[2].iter().enumerate() {
                let mut key = [s.corners[0], s.corners[1], s.corners[2], s.corners[3]];
                key.sort_unstable();
                square_index.insert(key, SquareId(i as u32));
                let pairs = [
                    s.edge_at(0, 0b00),
                    s.edge_at(0, 0b10),
                    s.edge_at(1, 0b00),
                    s.edge_at(1, 0b01),
                ];
                let mut ids = [EdgeId(0); 4];
                for (j, (u, v)) in pairs.into_iter().enumerate() {
                    let id = edge_index[&norm(u, v)];
                    ids[j] = id;
                    edge_squares[id.ix()].push(SquareId(i as u32));
                }
                square_edges.push(ids);
            }
        }

        Ok(Self {
            vertex_names,
            name_index,
            by_dim,
            edge_index,
            square_index,
            adjacency,
            square_edges,
            edge_squares,
            basepoint,
        })
    }

    pub fn from_doc(doc: &CubeComplexDoc) -> Result<Self> {
        Self::new(doc.vertices.clone(), &doc.cubes, doc.basepoint.as_deref())
    }

    /// Parses the JSON document form.
    pub fn load(json: &str) -> Result<Self> {
        let doc: CubeComplexDoc = serde_json::from_str(json)?;
        Self::from_doc(&doc)
    }

    /// Canonical document: vertices in stored order, maximal cubes sorted by
    /// dimension then corner tuple. `load(export(x)) == x`.
    pub fn to_doc(&self) -> CubeComplexDoc {
        let mut cubes = Vec::new();
        for d in 1..self.by_dim.len() {
            // A d-cube is maximal iff it is not a facet of any (d+1)-cube.
            let mut facets: Vec<Vec<VertexId>> = Vec::new();
            if d + 1 < self.by_dim.len() {
                for c in &self.by_dim[d + 1] {
                    for axis in 0..=d {
                        for side in 0..2 {
                            let mut key = c.facet(axis, side).corners;
                            key.sort_unstable();
                            facets.push(key);
                        }
                    }
                }
                facets.sort_unstable();
            }
            for c in &self.by_dim[d] {
                let mut key = c.corners.clone();
                key.sort_unstable();
                if facets.binary_search(&key).is_err() {
                    cubes.push(
                        c.corners
                            .iter()
                            .map(|&v| self.vertex_names[v.ix()].clone())
                            .collect(),
                    );
                }
            }
        }
        CubeComplexDoc {
            vertices: self.vertex_names.clone(),
            cubes,
            basepoint: self.basepoint.map(|v| self.vertex_names[v.ix()].clone()),
        }
    }

    pub fn n_vertices(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertex_names[v.ix()]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertex_names
    }

    pub fn vertex(&self, name: &str) -> Result<VertexId> {
        self.name_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn basepoint(&self) -> Option<VertexId> {
        self.basepoint
    }

    pub fn with_basepoint(mut self, v: VertexId) -> Self {
        self.basepoint = Some(v);
        self
    }

    pub fn n_edges(&self) -> usize {
        self.by_dim.get(1).map_or(0, Vec::len)
    }

    pub fn n_squares(&self) -> usize {
        self.by_dim.get(2).map_or(0, Vec::len)
    }

    pub fn dim(&self) -> usize {
        self.by_dim.len().saturating_sub(1)
    }

    pub fn cubes_of_dim(&self, d: usize) -> &[Cube] {
        self.by_dim.get(d).map_or(&[], Vec::as_slice)
    }

    pub fn edge(&self, e: EdgeId) -> (VertexId, VertexId) {
        let c = &self.by_dim[1][e.ix()];
        (c.corners[0], c.corners[1])
    }

    pub fn edge_name(&self, e: EdgeId) -> String {
        let (u, v) = self.edge(e);
        format!("{}--{}", self.vertex_name(u), self.vertex_name(v))
    }

    pub fn edge_id(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        self.edge_index.get(&norm(u, v)).copied()
    }

    pub fn square(&self, s: SquareId) -> &Cube {
        &self.by_dim[2][s.ix()]
    }

    /// The four boundary edges of a square: direction-0 pair then
    /// direction-1 pair.
    pub fn square_edge_ids(&self, s: SquareId) -> [EdgeId; 4] {
        self.square_edges[s.ix()]
    }

    pub fn square_id_by_corners(&self, corners: &[VertexId]) -> Option<SquareId> {
        let mut key = [corners[0], corners[1], corners[2], corners[3]];
        key.sort_unstable();
        self.square_index.get(&key).copied()
    }

    pub fn squares_on_edge(&self, e: EdgeId) -> &[SquareId] {
        &self.edge_squares[e.ix()]
    }

    pub fn neighbors(&self, v: VertexId) -> &[(VertexId, EdgeId)] {
        &self.adjacency[v.ix()]
    }

    /// BFS edge-path distances from `from`; unreachable vertices get
    /// `u32::MAX`.
    pub fn distances_from(&self, from: VertexId) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.n_vertices()];
        dist[from.ix()] = 0;
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            for &(u, _) in &self.adjacency[v.ix()] {
                if dist[u.ix()] == u32::MAX {
                    dist[u.ix()] = dist[v.ix()] + 1;
                    queue.push_back(u);
                }
            }
        }
        dist
    }

    /// Full subcomplex on the vertices at edge-path distance ≤ r from x0;
    /// a cube survives iff all of its corners do. The basepoint of the ball
    /// is x0.
    pub fn ball(&self, x0: VertexId, r: u32) -> Result<CubeComplex> {
        if x0.ix() >= self.n_vertices() {
            return Err(Error::UnknownVertex(format!("#{}", x0.0)));
        }
        let dist = self.distances_from(x0);
        let keep: Vec<bool> = dist.iter().map(|&d| d <= r).collect();
        let vertex_names: Vec<String> = self
            .vertex_names
            .iter()
            .enumerate()
            .filter(|(i, _)| keep[*i])
            .map(|(_, n)| n.clone())
            .collect();
        let mut cubes = Vec::new();
        for d in 1..self.by_dim.len() {
            for c in &self.by_dim[d] {
                if c.corners.iter().all(|v| keep[v.ix()]) {
                    cubes.push(
                        c.corners
                            .iter()
                            .map(|&v| self.vertex_names[v.ix()].clone())
                            .collect::<Vec<_>>(),
                    );
                }
            }
        }
        CubeComplex::new(vertex_names, &cubes, Some(self.vertex_name(x0)))
    }

    /// The link of `v`: one (k-1)-simplex per k-cube at `v`, with link
    /// vertices the neighbors of `v`. Distinct cubes inducing the same
    /// vertex set collapse to one simplex.
    pub fn vertex_link(&self, v: VertexId) -> Result<SimplicialComplex> {
        if v.ix() >= self.n_vertices() {
            return Err(Error::UnknownVertex(format!("#{}", v.0)));
        }
        let mut simplices: Vec<Vec<String>> = Vec::new();
        for d in 1..self.by_dim.len() {
            for c in &self.by_dim[d] {
                if let Some(b) = c.corners.iter().position(|&u| u == v) {
                    let simplex: Vec<String> = (0..d)
                        .map(|a| self.vertex_names[c.corners[b ^ (1 << a)].ix()].clone())
                        .collect();
                    simplices.push(simplex);
                }
            }
        }
        let mut vertices: Vec<String> = self
            .adjacency[v.ix()]
            .iter()
            .map(|&(u, _)| self.vertex_names[u.ix()].clone())
            .collect();
        vertices.sort();
        SimplicialComplex::new(vertices, &simplices)
    }

    /// Gromov link condition, combinatorial form: every vertex link flag.
    pub fn check_npc(&self) -> NpcReport {
        let mut vertices = Vec::with_capacity(self.n_vertices());
        let mut pass = true;
        for i in 0..self.n_vertices() {
            let link = self
                .vertex_link(VertexId(i as u32))
                .expect("vertex ids are dense");
            let violation = link.flag_violation().map(|clique| {
                clique
                    .iter()
                    .map(|&u| link.vertex_name(u).to_string())
                    .collect::<Vec<_>>()
            });
            pass &= violation.is_none();
            vertices.push(NpcVertexReport {
                vertex: self.vertex_names[i].clone(),
                flag: violation.is_none(),
                violation,
            });
        }
        NpcReport { pass, vertices }
    }

    /// DOT rendering of the 1-skeleton. `edge_class` assigns a color class
    /// per edge (hyperplane ids in practice).
    pub fn to_dot(&self, edge_class: Option<&[u32]>) -> String {
        const PALETTE: [&str; 10] = [
            "#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#a65628", "#f781bf",
            "#17becf", "#666666", "#b8860b",
        ];
        let mut out = String::from("graph complex {\n");
        for name in &self.vertex_names {
            out.push_str(&format!("  {:?};\n", name));
        }
        for i in 0..self.n_edges() {
            let (u, v) = self.edge(EdgeId(i as u32));
            match edge_class {
                Some(classes) => {
                    let color = PALETTE[classes[i] as usize % PALETTE.len()];
                    out.push_str(&format!(
                        "  {:?} -- {:?} [color=\"{}\" label=\"h{}\"];\n",
                        self.vertex_name(u),
                        self.vertex_name(v),
                        color,
                        classes[i]
                    ));
                }
                None => {
                    out.push_str(&format!(
                        "  {:?} -- {:?};\n",
                        self.vertex_name(u),
                        self.vertex_name(v)
                    ));
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

fn norm(u: VertexId, v: VertexId) -> (VertexId, VertexId) {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

fn validate_shape(corners: &[VertexId]) -> Result<()> {
    let n = corners.len();
    if n < 2 || !n.is_power_of_two() {
        return Err(Error::BadCubeShape(format!(
            "cube arity {n} is not 2^d for d >= 1"
        )));
    }
    let mut sorted = corners.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != n {
        if n == 2 {
            return Err(Error::NonSimpleSkeleton("loop edge".into()));
        }
        return Err(Error::BadCubeShape("cube repeats a vertex".into()));
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NpcVertexReport {
    pub vertex: String,
    pub flag: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NpcReport {
    pub pass: bool,
    pub vertices: Vec<NpcVertexReport>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn single_square_counts() {
        let c = fixtures::square();
        assert_eq!(c.n_vertices(), 4);
        assert_eq!(c.n_edges(), 4);
        assert_eq!(c.n_squares(), 1);
    }

    #[test]
    fn three_cube_counts() {
        let c = fixtures::cube3();
        assert_eq!(c.n_vertices(), 8);
        assert_eq!(c.n_edges(), 12);
        assert_eq!(c.n_squares(), 6);
        assert_eq!(c.cubes_of_dim(3).len(), 1);
    }

    #[test]
    fn loop_edge_is_rejected() {
        let r = CubeComplex::new(
            vec!["a".into()],
            &[vec!["a".into(), "a".into()]],
            None,
        );
        assert!(matches!(r, Err(Error::NonSimpleSkeleton(_))));
    }

    #[test]
    fn bad_arity_is_rejected() {
        let r = CubeComplex::new(
            vec!["a".into(), "b".into(), "c".into()],
            &[vec!["a".into(), "b".into(), "c".into()]],
            None,
        );
        assert!(matches!(r, Err(Error::BadCubeShape(_))));
    }

    #[test]
    fn inconsistent_gluing_is_rejected() {
        // Same four vertices, opposite-edge structure differs.
        let r = CubeComplex::new(
            vec!["a".into(), "b".into(), "c".into(), "d".into()],
            &[
                vec!["a".into(), "b".into(), "c".into(), "d".into()],
                vec!["a".into(), "b".into(), "d".into(), "c".into()],
            ],
            None,
        );
        assert!(matches!(r, Err(Error::BadCubeShape(_))));
    }

    #[test]
    fn same_square_in_rotated_order_is_deduplicated() {
        // [a,b,c,d] and [d,c,b,a] describe the same square.
        let c = CubeComplex::new(
            vec!["a".into(), "b".into(), "c".into(), "d".into()],
            &[
                vec!["a".into(), "b".into(), "c".into(), "d".into()],
                vec!["d".into(), "c".into(), "b".into(), "a".into()],
            ],
            None,
        )
        .unwrap();
        assert_eq!(c.n_squares(), 1);
    }

    #[test]
    fn ball_radius_zero_is_a_point() {
        let c = fixtures::cube3();
        let b = c.ball(VertexId(0), 0).unwrap();
        assert_eq!(b.n_vertices(), 1);
        assert_eq!(b.n_edges(), 0);
    }

    #[test]
    fn ball_at_saturation_is_whole_complex() {
        let c = fixtures::cube3();
        let b = c.ball(VertexId(0), 10).unwrap();
        assert_eq!(b.n_vertices(), 8);
        assert_eq!(b.cubes_of_dim(3).len(), 1);
    }

    #[test]
    fn z2_ball_is_a_diamond() {
        let c = fixtures::z2_grid(8);
        let x0 = c.vertex("x4y4").unwrap();
        let b = c.ball(x0, 2).unwrap();
        assert_eq!(b.n_vertices(), 13);
    }

    #[test]
    fn balls_are_nested() {
        let c = fixtures::z2_grid(6);
        let x0 = c.vertex("x3y3").unwrap();
        let b1 = c.ball(x0, 1).unwrap();
        let b2 = c.ball(x0, 2).unwrap();
        for name in b1.vertex_names() {
            assert!(b2.vertex(name).is_ok());
        }
        for d in 1..=2 {
            for cube in b1.cubes_of_dim(d) {
                let names: Vec<String> = cube
                    .corners
                    .iter()
                    .map(|&v| b1.vertex_name(v).to_string())
                    .collect();
                let translated: Vec<VertexId> =
                    names.iter().map(|n| b2.vertex(n).unwrap()).collect();
                let canon = canonical_corners(&translated);
                assert!(b2.cubes_of_dim(d).iter().any(|c2| c2.corners == canon));
            }
        }
    }

    #[test]
    fn link_of_cube_corner_is_triangle() {
        let c = fixtures::cube3();
        let l = c.vertex_link(VertexId(0)).unwrap();
        assert_eq!(l.n_vertices(), 3);
        assert_eq!(l.count_dim(2), 1);
        assert!(l.is_flag());
    }

    #[test]
    fn link_of_square_corner_is_edge() {
        let c = fixtures::square();
        let l = c.vertex_link(VertexId(0)).unwrap();
        assert_eq!(l.n_vertices(), 2);
        assert_eq!(l.count_dim(1), 1);
    }

    #[test]
    fn link_simplex_counts_match_cube_counts() {
        let c = fixtures::z3_ball(2);
        let v = c.vertex("x0y0z0").unwrap();
        let l = c.vertex_link(v).unwrap();
        for k in 0..=2 {
            let cubes_at_v = c
                .cubes_of_dim(k + 1)
                .iter()
                .filter(|cube| cube.corners.contains(&v))
                .count();
            assert_eq!(l.count_dim(k), cubes_at_v);
        }
    }

    #[test]
    fn npc_passes_on_cube() {
        assert!(fixtures::cube3().check_npc().pass);
    }

    #[test]
    fn npc_report_matches_link_flagness() {
        let c = fixtures::hollow_digon();
        let report = c.check_npc();
        for (i, entry) in report.vertices.iter().enumerate() {
            let link = c.vertex_link(VertexId(i as u32)).unwrap();
            assert_eq!(entry.flag, link.is_flag());
        }
    }

    #[test]
    fn export_then_load_is_identity() {
        for c in [fixtures::square(), fixtures::cube3(), fixtures::z2_grid(3)] {
            let json = serde_json::to_string(&c.to_doc()).unwrap();
            let c2 = CubeComplex::load(&json).unwrap();
            assert_eq!(c, c2);
        }
    }

    #[test]
    fn dot_export_mentions_every_edge() {
        let c = fixtures::square();
        let dot = c.to_dot(None);
        assert_eq!(dot.matches(" -- ").count(), 4);
    }
}
