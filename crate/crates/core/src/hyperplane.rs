//! Hyperplanes as edge parallelism classes, halfspaces, midcube complexes,
//! and intersection components.

use std::collections::{HashMap, VecDeque};

use crate::complex::{CubeComplex, EdgeId, ScaleParams, SquareId, VertexId};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HypId(pub u32);

impl HypId {
    pub fn ix(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug)]
pub struct Hyperplane {
    pub id: HypId,
    /// Edge class, sorted by edge id.
    pub edges: Vec<EdgeId>,
    /// Squares with two class edges, sorted.
    pub carrier_squares: Vec<SquareId>,
}

#[derive(Clone, Debug)]
pub struct HyperplaneSet {
    hyperplanes: Vec<Hyperplane>,
    edge_class: Vec<u32>,
}

impl HyperplaneSet {
    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Hyperplane> {
        self.hyperplanes.iter()
    }

    pub fn get(&self, h: HypId) -> &Hyperplane {
        &self.hyperplanes[h.ix()]
    }

    /// The class of an edge.
    pub fn class_of(&self, e: EdgeId) -> HypId {
        HypId(self.edge_class[e.ix()])
    }

    /// Per-edge class table (for DOT coloring).
    pub fn edge_classes(&self) -> &[u32] {
        &self.edge_class
    }

    /// The two hyperplanes dual to a square: class of the direction-0 edges
    /// and class of the direction-1 edges. Equal ids signal a self-crossing
    /// quotient square.
    pub fn square_classes(&self, complex: &CubeComplex, s: SquareId) -> (HypId, HypId) {
        let ids = complex.square_edge_ids(s);
        (self.class_of(ids[0]), self.class_of(ids[2]))
    }
}

/// Partition of the edges into parallelism classes: union-find over opposite
/// edge pairs of every square. Hyperplane ids are assigned by least edge id.
pub fn hyperplanes(complex: &CubeComplex) -> HyperplaneSet {
    let n = complex.n_edges();
    let mut uf = UnionFind::new(n);
    for i in 0..complex.n_squares() {
        let ids = complex.square_edge_ids(SquareId(i as u32));
        uf.union(ids[0].ix(), ids[1].ix());
        uf.union(ids[2].ix(), ids[3].ix());
    }
    let mut class_members: HashMap<usize, Vec<EdgeId>> = HashMap::new();
    for e in 0..n {
        class_members
            .entry(uf.find(e))
            .or_default()
            .push(EdgeId(e as u32));
    }
    let mut classes: Vec<Vec<EdgeId>> = class_members.into_values().collect();
    classes.sort_by_key(|members| members[0]);

    let mut edge_class = vec![0u32; n];
    let mut hyperplanes = Vec::with_capacity(classes.len());
    for (i, members) in classes.into_iter().enumerate() {
        for e in &members {
            edge_class[e.ix()] = i as u32;
        }
        hyperplanes.push(Hyperplane {
            id: HypId(i as u32),
            edges: members,
            carrier_squares: Vec::new(),
        });
    }
    for s in 0..complex.n_squares() {
        let ids = complex.square_edge_ids(SquareId(s as u32));
        let mut touched = [edge_class[ids[0].ix()], edge_class[ids[2].ix()]];
        touched.sort_unstable();
        hyperplanes[touched[0] as usize]
            .carrier_squares
            .push(SquareId(s as u32));
        if touched[1] != touched[0] {
            hyperplanes[touched[1] as usize]
                .carrier_squares
                .push(SquareId(s as u32));
        }
    }
    HyperplaneSet {
        hyperplanes,
        edge_class,
    }
}

#[derive(Clone, Debug)]
pub struct HalfspacePair {
    pub hyperplane: HypId,
    /// side[v] is false on the side of the least vertex, true on the other.
    pub side: Vec<bool>,
}

impl HalfspacePair {
    pub fn side_of(&self, v: VertexId) -> bool {
        self.side[v.ix()]
    }

    pub fn sides(&self) -> (Vec<VertexId>, Vec<VertexId>) {
        let mut s0 = Vec::new();
        let mut s1 = Vec::new();
        for (i, &s) in self.side.iter().enumerate() {
            if s {
                s1.push(VertexId(i as u32));
            } else {
                s0.push(VertexId(i as u32));
            }
        }
        (s0, s1)
    }
}

/// Components of the 1-skeleton after deleting the class edges; exactly two
/// or the hyperplane is not two-sided.
pub fn halfspaces(
    complex: &CubeComplex,
    set: &HyperplaneSet,
    h: HypId,
) -> Result<HalfspacePair> {
    let n = complex.n_vertices();
    let mut comp = vec![u32::MAX; n];
    let mut n_comp = 0u32;
    for start in 0..n {
        if comp[start] != u32::MAX {
            continue;
        }
        let c = n_comp;
        n_comp += 1;
        comp[start] = c;
        let mut queue = VecDeque::from([VertexId(start as u32)]);
        while let Some(v) = queue.pop_front() {
            for &(u, e) in complex.neighbors(v) {
                if set.class_of(e) == h || comp[u.ix()] != u32::MAX {
                    continue;
                }
                comp[u.ix()] = c;
                queue.push_back(u);
            }
        }
    }
    if n_comp != 2 {
        return Err(Error::NonSeparating {
            hyperplane: h.0,
            components: n_comp as usize,
        });
    }
    // Every class edge must join the sides; no other edge may.
    for e in 0..complex.n_edges() {
        let (u, v) = complex.edge(EdgeId(e as u32));
        let crosses = comp[u.ix()] != comp[v.ix()];
        if crosses != (set.class_of(EdgeId(e as u32)) == h) {
            return Err(Error::NonSeparating {
                hyperplane: h.0,
                components: n_comp as usize,
            });
        }
    }
    let side0 = comp[0];
    Ok(HalfspacePair {
        hyperplane: h,
        side: comp.into_iter().map(|c| c != side0).collect(),
    })
}

/// Midcube complex of a hyperplane: vertices are the class edges, and each
/// (k+1)-cube carrying class edges contributes the k-cube of edges parallel
/// to the class inside it.
pub fn hyperplane_complex(
    complex: &CubeComplex,
    set: &HyperplaneSet,
    h: HypId,
) -> Result<CubeComplex> {
    let vertex_names: Vec<String> = set.get(h).edges.iter().map(|&e| complex.edge_name(e)).collect();
    let mut cubes: Vec<Vec<String>> = Vec::new();
    for d in 2..=complex.dim() {
        for cube in complex.cubes_of_dim(d) {
            for axis in 0..d {
                let (u, v) = cube.edge_at(axis, 0);
                let e = complex.edge_id(u, v).expect("cube edges exist after closure");
                if set.class_of(e) != h {
                    continue;
                }
                let mut corners = Vec::with_capacity(1 << (d - 1));
                for sub in 0..1usize << (d - 1) {
                    let low = sub & ((1 << axis) - 1);
                    let high = (sub >> axis) << (axis + 1);
                    let b = low | high;
                    let (x, y) = cube.edge_at(axis, b);
                    let e = complex.edge_id(x, y).expect("closure");
                    corners.push(complex.edge_name(e));
                }
                cubes.push(corners);
            }
        }
    }
    CubeComplex::new(vertex_names, &cubes, None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionComponent {
    pub pair: (HypId, HypId),
    /// Squares dual to both hyperplanes, connected through 3-cubes, all
    /// corners outside the exclusion ball. Sorted by square id.
    pub squares: Vec<SquareId>,
}

/// Connected components (through 3-cubes) of the squares dual to both `h`
/// and `k`, restricted to squares with every corner at distance > R0 from
/// the basepoint. Components are ordered by least square id.
pub fn intersection_components(
    complex: &CubeComplex,
    set: &HyperplaneSet,
    h: HypId,
    k: HypId,
    scale: &ScaleParams,
) -> Vec<IntersectionComponent> {
    assert_ne!(h, k, "intersection requires two distinct hyperplanes");
    let dist = complex.distances_from(scale.x0);
    let eligible = |s: SquareId| -> bool {
        let (a, b) = set.square_classes(complex, s);
        let dual = (a, b) == (h, k) || (a, b) == (k, h);
        dual && complex
            .square(s)
            .corners
            .iter()
            .all(|&v| dist[v.ix()] > scale.r0)
    };
    let mut members: Vec<SquareId> = (0..complex.n_squares() as u32)
        .map(SquareId)
        .filter(|&s| eligible(s))
        .collect();
    if members.is_empty() {
        return Vec::new();
    }
    let index: HashMap<SquareId, usize> = members.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let mut uf = UnionFind::new(members.len());
    for cube in complex.cubes_of_dim(3) {
        // Opposite square faces of a 3-cube: fix one axis, vary its side.
        for axis in 0..3 {
            let f0 = cube.facet(axis, 0);
            let f1 = cube.facet(axis, 1);
            let s0 = complex.square_id_by_corners(&f0.corners);
            let s1 = complex.square_id_by_corners(&f1.corners);
            if let (Some(s0), Some(s1)) = (s0, s1) {
                if let (Some(&i0), Some(&i1)) = (index.get(&s0), index.get(&s1)) {
                    uf.union(i0, i1);
                }
            }
        }
    }
    members.sort_unstable();
    let mut by_root: HashMap<usize, Vec<SquareId>> = HashMap::new();
    for &s in &members {
        by_root.entry(uf.find(index[&s])).or_default().push(s);
    }
    let mut components: Vec<Vec<SquareId>> = by_root.into_values().collect();
    for c in &mut components {
        c.sort_unstable();
    }
    components.sort_by_key(|c| c[0]);
    let pair = if h < k { (h, k) } else { (k, h) };
    components
        .into_iter()
        .map(|squares| IntersectionComponent { pair, squares })
        .collect()
}

/// Crossing graph: one node per hyperplane, an edge iff some square is dual
/// to both. Edges sorted, self-crossings skipped.
pub fn crossing_graph(complex: &CubeComplex, set: &HyperplaneSet) -> Vec<(HypId, HypId)> {
    let mut edges: Vec<(HypId, HypId)> = (0..complex.n_squares() as u32)
        .map(|s| set.square_classes(complex, SquareId(s)))
        .filter(|(a, b)| a != b)
        .map(|(a, b)| if a < b { (a, b) } else { (b, a) })
        .collect();
    edges.sort_unstable();
    edges.dedup();
    edges
}

struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn square_has_two_hyperplanes_of_two_edges() {
        let c = fixtures::square();
        let set = hyperplanes(&c);
        assert_eq!(set.len(), 2);
        for h in set.iter() {
            assert_eq!(h.edges.len(), 2);
            assert_eq!(h.carrier_squares.len(), 1);
        }
    }

    #[test]
    fn tree_hyperplanes_are_singletons() {
        let c = fixtures::tree();
        let set = hyperplanes(&c);
        assert_eq!(set.len(), c.n_edges());
        assert!(set.iter().all(|h| h.edges.len() == 1));
    }

    #[test]
    fn grid_has_2n_hyperplanes() {
        for n in [2usize, 4, 6] {
            let c = fixtures::z2_grid(n);
            let set = hyperplanes(&c);
            assert_eq!(set.len(), 2 * n);
        }
    }

    #[test]
    fn hyperplanes_partition_the_edges() {
        let c = fixtures::z3_ball(3);
        let set = hyperplanes(&c);
        let mut count = 0;
        for h in set.iter() {
            for &e in &h.edges {
                assert_eq!(set.class_of(e), h.id);
                count += 1;
            }
        }
        assert_eq!(count, c.n_edges());
    }

    #[test]
    fn square_halfspaces_are_two_by_two() {
        let c = fixtures::square();
        let set = hyperplanes(&c);
        for h in set.iter() {
            let pair = halfspaces(&c, &set, h.id).unwrap();
            let (s0, s1) = pair.sides();
            assert_eq!(s0.len(), 2);
            assert_eq!(s1.len(), 2);
        }
    }

    #[test]
    fn path_edge_splits_two_and_two() {
        let c = fixtures::path(3);
        let set = hyperplanes(&c);
        let mid = set.class_of(c.edge_id(c.vertex("p1").unwrap(), c.vertex("p2").unwrap()).unwrap());
        let pair = halfspaces(&c, &set, mid).unwrap();
        let (s0, s1) = pair.sides();
        assert_eq!(s0.len(), 2);
        assert_eq!(s1.len(), 2);
    }

    #[test]
    fn mobius_rungs_are_non_separating() {
        let c = fixtures::mobius_band();
        let set = hyperplanes(&c);
        let rung = set.class_of(
            c.edge_id(c.vertex("a0").unwrap(), c.vertex("b0").unwrap())
                .unwrap(),
        );
        assert_eq!(set.get(rung).edges.len(), 3);
        let r = halfspaces(&c, &set, rung);
        assert!(matches!(r, Err(Error::NonSeparating { components: 1, .. })));
    }

    #[test]
    fn square_hyperplane_complex_is_an_edge() {
        let c = fixtures::square();
        let set = hyperplanes(&c);
        let hc = hyperplane_complex(&c, &set, HypId(0)).unwrap();
        assert_eq!(hc.n_vertices(), 2);
        assert_eq!(hc.n_edges(), 1);
    }

    #[test]
    fn cube_hyperplane_complex_is_a_square() {
        let c = fixtures::cube3();
        let set = hyperplanes(&c);
        assert_eq!(set.len(), 3);
        for h in set.iter() {
            let hc = hyperplane_complex(&c, &set, h.id).unwrap();
            assert_eq!(hc.n_vertices(), 4);
            assert_eq!(hc.n_edges(), 4);
            assert_eq!(hc.n_squares(), 1);
        }
    }

    #[test]
    fn single_square_intersection_with_outside_basepoint() {
        let c = fixtures::square_with_pendant();
        let set = hyperplanes(&c);
        let (h, k) = set.square_classes(&c, SquareId(0));
        let scale = ScaleParams::new(c.vertex("p").unwrap(), 0, 0, 0).unwrap();
        let comps = intersection_components(&c, &set, h, k, &scale);
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].squares.len(), 1);
    }

    #[test]
    fn parallel_grid_lines_do_not_intersect() {
        let c = fixtures::z2_grid(4);
        let set = hyperplanes(&c);
        // Two distinct vertical lines never share a square.
        let e1 = c.edge_id(c.vertex("x0y0").unwrap(), c.vertex("x1y0").unwrap()).unwrap();
        let e2 = c.edge_id(c.vertex("x2y0").unwrap(), c.vertex("x3y0").unwrap()).unwrap();
        let (h, k) = (set.class_of(e1), set.class_of(e2));
        assert_ne!(h, k);
        let scale = ScaleParams::new(c.basepoint().unwrap(), 0, 0, 0).unwrap();
        assert!(intersection_components(&c, &set, h, k, &scale).is_empty());
    }

    #[test]
    fn z3_axis_planes_intersect_in_two_rays() {
        let c = fixtures::z3_ball(4);
        let set = hyperplanes(&c);
        let x0 = c.vertex("x0y0z0").unwrap();
        let ex = c.edge_id(x0, c.vertex("x1y0z0").unwrap()).unwrap();
        let ey = c.edge_id(x0, c.vertex("x0y1z0").unwrap()).unwrap();
        let (h, k) = (set.class_of(ex), set.class_of(ey));
        let scale = ScaleParams::new(x0, 1, 2, 3).unwrap();
        let comps = intersection_components(&c, &set, h, k, &scale);
        assert_eq!(comps.len(), 2);
    }

    #[test]
    fn components_partition_doubly_dual_squares_at_r0_zero() {
        let c = fixtures::z3_ball(3);
        let set = hyperplanes(&c);
        let scale = ScaleParams::new(c.vertex("x0y0z1").unwrap(), 0, 0, 0).unwrap();
        for &(h, k) in crossing_graph(&c, &set).iter() {
            let comps = intersection_components(&c, &set, h, k, &scale);
            let mut all: Vec<SquareId> = comps.iter().flat_map(|c| c.squares.clone()).collect();
            all.sort_unstable();
            let dist = c.distances_from(scale.x0);
            let expected: Vec<SquareId> = (0..c.n_squares() as u32)
                .map(SquareId)
                .filter(|&s| {
                    let (a, b) = set.square_classes(&c, s);
                    ((a, b) == (h, k) || (a, b) == (k, h))
                        && c.square(s).corners.iter().all(|&v| dist[v.ix()] > 0)
                })
                .collect();
            assert_eq!(all, expected);
        }
    }

    #[test]
    fn crossing_graph_shapes() {
        let sq = fixtures::square();
        let set = hyperplanes(&sq);
        assert_eq!(crossing_graph(&sq, &set).len(), 1);

        let tr = fixtures::tree();
        let set = hyperplanes(&tr);
        assert!(crossing_graph(&tr, &set).is_empty());

        let cu = fixtures::cube3();
        let set = hyperplanes(&cu);
        assert_eq!(crossing_graph(&cu, &set).len(), 3);
    }

    #[test]
    fn grid_crossing_graph_is_complete_bipartite() {
        let n = 4;
        let c = fixtures::z2_grid(n);
        let set = hyperplanes(&c);
        assert_eq!(crossing_graph(&c, &set).len(), n * n);
    }
}
