//! Grids of hyperplanes and connectors, orientations, the assembled Z/2
//! edge cocycle, and parity functions on the truncated complex.
//!
//! All radii are ambient edge-path distances from the basepoint. A cell is
//! "outside" radius r iff every one of its vertices is at distance > r; a
//! vertex of a hyperplane complex (an ambient edge dual to the hyperplane)
//! sits at the distance of its nearer endpoint.
//!
//! The finite stand-in for the boundary circle of a hyperplane is its
//! *horizon cycle* at radius R1: the set of hyperplane-complex edges with
//! one endpoint inside the R1-ball and one outside, cyclically ordered by
//! shared midcube squares. (The induced subgraph on vertices at distance
//! exactly R1 is edgeless — skeleta of simply connected cube complexes are
//! bipartite — so the annular cut is the object that carries the circle
//! structure.) When that cut is not a single cycle we refuse rather than
//! approximate.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::complex::{CubeComplex, EdgeId, ScaleParams, SquareId, VertexId};
use crate::error::{Error, Result};
use crate::gf2::{Gf2System, Outcome};
use crate::hyperplane::{
    crossing_graph, intersection_components, HypId, HyperplaneSet, IntersectionComponent,
};

/// Z/2 type of a connector relative to its (sorted) support pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TypePair {
    pub on_first: bool,
    pub on_second: bool,
}

impl TypePair {
    pub fn label(self) -> &'static str {
        match (self.on_first, self.on_second) {
            (false, false) => "00",
            (false, true) => "01",
            (true, false) => "10",
            (true, true) => "11",
        }
    }
}

/// A connector: a nonempty union of intersection components of one
/// crossing pair, sitting outside the R0-ball.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Connector {
    pub pair: (HypId, HypId),
    /// Body as a sorted set of squares dual to both support hyperplanes.
    pub squares: Vec<SquareId>,
}

impl Connector {
    pub fn from_components(components: &[IntersectionComponent], picks: &[usize]) -> Result<Self> {
        if picks.is_empty() || components.is_empty() {
            return Err(Error::Schema("connector body is empty".into()));
        }
        let pair = components[0].pair;
        let mut squares = Vec::new();
        for &i in picks {
            let c = components
                .get(i)
                .ok_or_else(|| Error::Schema(format!("no intersection component {i}")))?;
            if c.pair != pair {
                return Err(Error::Schema("components belong to different pairs".into()));
            }
            squares.extend_from_slice(&c.squares);
        }
        squares.sort_unstable();
        squares.dedup();
        Ok(Self { pair, squares })
    }

    pub fn supports(&self, h: HypId) -> bool {
        self.pair.0 == h || self.pair.1 == h
    }

    /// Connectors are disjoint when their support pairs differ or their
    /// bodies share no square.
    pub fn disjoint_from(&self, other: &Connector) -> bool {
        if self.pair != other.pair {
            return true;
        }
        let set: HashSet<SquareId> = self.squares.iter().copied().collect();
        other.squares.iter().all(|s| !set.contains(s))
    }
}

/// A grid: hyperplanes plus pairwise disjoint connectors, admissible on
/// every member hyperplane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grid {
    pub hyperplanes: Vec<HypId>,
    pub connectors: Vec<Connector>,
    pub scale: ScaleParams,
}

impl Grid {
    /// Validates supports, pairwise disjointness, and per-hyperplane
    /// admissibility (connector types must sum to zero).
    pub fn new(
        complex: &CubeComplex,
        set: &HyperplaneSet,
        mut hyperplanes: Vec<HypId>,
        mut connectors: Vec<Connector>,
        scale: ScaleParams,
    ) -> Result<Self> {
        hyperplanes.sort_unstable();
        hyperplanes.dedup();
        connectors.sort_by(|a, b| (a.pair, &a.squares).cmp(&(b.pair, &b.squares)));
        connectors.dedup();
        for c in &connectors {
            if !hyperplanes.contains(&c.pair.0) || !hyperplanes.contains(&c.pair.1) {
                return Err(Error::Schema(
                    "connector supported on a hyperplane outside the grid".into(),
                ));
            }
            if c.squares.is_empty() {
                return Err(Error::Schema("connector body is empty".into()));
            }
        }
        for (i, a) in connectors.iter().enumerate() {
            for b in &connectors[i + 1..] {
                if !a.disjoint_from(b) {
                    return Err(Error::OverlappingConnectors);
                }
            }
        }
        let grid = Self {
            hyperplanes,
            connectors,
            scale,
        };
        let dist = complex.distances_from(scale.x0);
        for &h in &grid.hyperplanes {
            let on_h: Vec<&Connector> = grid.connectors.iter().filter(|c| c.supports(h)).collect();
            if on_h.is_empty() {
                continue;
            }
            let wall = WallGraph::build(complex, set, h, &dist);
            let horizon = wall.horizon(scale.r1)?;
            let mut sum = false;
            for c in on_h {
                sum ^= type_on(&wall, &horizon, c);
            }
            if sum {
                // Odd total type: the flip system on the truncated wall is
                // inconsistent; surface the gf2 certificate.
                let (_, _, system) = wall.flip_system(scale.r1, &grid.connectors)?;
                let cert = match system.solve() {
                    Outcome::Inconsistent(cert) => cert.rows,
                    Outcome::Solved(_) => Vec::new(),
                };
                return Err(Error::NotAdmissible {
                    hyperplane: h.0,
                    certificate: cert,
                });
            }
        }
        Ok(grid)
    }

    pub fn connectors_on(&self, h: HypId) -> Vec<&Connector> {
        self.connectors.iter().filter(|c| c.supports(h)).collect()
    }
}

/// The hyperplane complex of one hyperplane, kept in ambient terms:
/// vertices are the class edges, links are the carrier squares, midcube
/// squares are the 3-cubes dual to the hyperplane.
#[derive(Clone, Debug)]
pub struct WallGraph {
    pub hyp: HypId,
    pub verts: Vec<EdgeId>,
    vert_ix: HashMap<EdgeId, u32>,
    pub links: Vec<WallLink>,
    pub midsquares: Vec<[u32; 4]>,
    /// Ambient distance of each wall vertex: distance of the nearer
    /// endpoint of the ambient edge.
    pub vert_dist: Vec<u32>,
}

#[derive(Clone, Copy, Debug)]
pub struct WallLink {
    pub a: u32,
    pub b: u32,
    pub square: SquareId,
}

impl WallGraph {
    pub fn build(complex: &CubeComplex, set: &HyperplaneSet, h: HypId, dist: &[u32]) -> Self {
        let verts = set.get(h).edges.clone();
        let vert_ix: HashMap<EdgeId, u32> = verts
            .iter()
            .enumerate()
            .map(|(i, &e)| (e, i as u32))
            .collect();
        let vert_dist = verts
            .iter()
            .map(|&e| {
                let (u, v) = complex.edge(e);
                dist[u.ix()].min(dist[v.ix()])
            })
            .collect();

        let mut links = Vec::new();
        let mut link_of_square: HashMap<SquareId, u32> = HashMap::new();
        for &s in &set.get(h).carrier_squares {
            let ids = complex.square_edge_ids(s);
            for pair in [[ids[0], ids[1]], [ids[2], ids[3]]] {
                if set.class_of(pair[0]) == h {
                    link_of_square.insert(s, links.len() as u32);
                    links.push(WallLink {
                        a: vert_ix[&pair[0]],
                        b: vert_ix[&pair[1]],
                        square: s,
                    });
                }
            }
        }

        let mut midsquares = Vec::new();
        for cube in complex.cubes_of_dim(3) {
            for axis in 0..3 {
                let (u, v) = cube.edge_at(axis, 0);
                let e = complex.edge_id(u, v).expect("closure");
                if set.class_of(e) != h {
                    continue;
                }
                let rest: Vec<usize> = (0..3).filter(|&a| a != axis).collect();
                let mut quad = [0u32; 4];
                let mut ok = true;
                for (i, &r) in rest.iter().enumerate() {
                    for side in 0..2 {
                        let facet = cube.facet(r, side);
                        match complex
                            .square_id_by_corners(&facet.corners)
                            .and_then(|s| link_of_square.get(&s))
                        {
                            Some(&l) => quad[2 * i + side] = l,
                            None => ok = false,
                        }
                    }
                }
                if ok {
                    midsquares.push(quad);
                }
            }
        }
        Self {
            hyp: h,
            verts,
            vert_ix,
            links,
            midsquares,
            vert_dist,
        }
    }

    pub fn vertex_index(&self, e: EdgeId) -> Option<u32> {
        self.vert_ix.get(&e).copied()
    }

    /// The horizon cycle at radius r1: all cut links (one endpoint at
    /// distance ≤ r1, the other > r1) in cyclic order. Errors unless the
    /// cut is one simple cycle of length ≥ 3 in which every midcube square
    /// holds 0 or 2 cut links.
    pub fn horizon(&self, r1: u32) -> Result<Vec<u32>> {
        let reject = |reason: &str| Error::NoHorizonCycle {
            hyperplane: self.hyp.0,
            radius: r1,
            reason: reason.to_string(),
        };
        let is_cut = |l: &WallLink| -> bool {
            (self.vert_dist[l.a as usize] <= r1) != (self.vert_dist[l.b as usize] <= r1)
        };
        let cut: Vec<u32> = (0..self.links.len() as u32)
            .filter(|&i| is_cut(&self.links[i as usize]))
            .collect();
        if cut.is_empty() {
            return Err(reject("no cut links at this radius"));
        }
        if cut.len() < 3 {
            return Err(reject("fewer than three cut links"));
        }
        let cut_set: HashSet<u32> = cut.iter().copied().collect();
        let mut nbrs: HashMap<u32, Vec<u32>> = cut.iter().map(|&l| (l, Vec::new())).collect();
        for quad in &self.midsquares {
            let members: Vec<u32> = {
                let mut m: Vec<u32> = quad.iter().copied().filter(|l| cut_set.contains(l)).collect();
                m.sort_unstable();
                m.dedup();
                m
            };
            match members.len() {
                0 => {}
                2 => {
                    nbrs.get_mut(&members[0]).unwrap().push(members[1]);
                    nbrs.get_mut(&members[1]).unwrap().push(members[0]);
                }
                _ => return Err(reject("midcube square with an odd or full cut")),
            }
        }
        for list in nbrs.values_mut() {
            list.sort_unstable();
            list.dedup();
        }
        if nbrs.values().any(|l| l.len() != 2) {
            return Err(reject("cut is not 2-regular"));
        }
        // Walk the cycle from the least cut link, least neighbor first.
        let start = *cut.iter().min().unwrap();
        let mut order = vec![start];
        let mut prev = start;
        let mut cur = nbrs[&start][0];
        while cur != start {
            order.push(cur);
            let next = *nbrs[&cur].iter().find(|&&n| n != prev).unwrap();
            prev = cur;
            cur = next;
        }
        if order.len() != cut.len() {
            return Err(reject("cut is not a single cycle"));
        }
        Ok(order)
    }

    /// The flip-edge coboundary system on the wall vertices outside r1.
    /// Returns (domain vertices, per-row link index, system).
    pub fn flip_system(
        &self,
        r1: u32,
        connectors: &[Connector],
    ) -> Result<(Vec<u32>, Vec<u32>, Gf2System)> {
        let flips: HashSet<SquareId> = connectors
            .iter()
            .filter(|c| c.supports(self.hyp))
            .flat_map(|c| c.squares.iter().copied())
            .collect();
        let domain: Vec<u32> = (0..self.verts.len() as u32)
            .filter(|&v| self.vert_dist[v as usize] > r1)
            .collect();
        if domain.is_empty() {
            return Err(Error::DomainTooSmall {
                hyperplane: self.hyp.0,
                radius: r1,
            });
        }
        let col: HashMap<u32, usize> = domain.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut system = Gf2System::new(domain.len());
        let mut row_links = Vec::new();
        for (i, l) in self.links.iter().enumerate() {
            if let (Some(&ca), Some(&cb)) = (col.get(&l.a), col.get(&l.b)) {
                system.add_row(&[ca, cb], flips.contains(&l.square));
                row_links.push(i as u32);
            }
        }
        Ok((domain, row_links, system))
    }
}

/// Type of a connector relative to the wall's hyperplane: parity of the
/// horizon-cycle links whose carrier square lies in the body.
fn type_on(wall: &WallGraph, horizon: &[u32], connector: &Connector) -> bool {
    let body: HashSet<SquareId> = connector.squares.iter().copied().collect();
    horizon
        .iter()
        .filter(|&&l| body.contains(&wall.links[l as usize].square))
        .count()
        % 2
        == 1
}

/// Both connector types, via the horizon cycles of both support
/// hyperplanes. Errors with `NoHorizonCycle` when either horizon is not a
/// single cycle.
pub fn connector_type(
    complex: &CubeComplex,
    set: &HyperplaneSet,
    connector: &Connector,
    scale: &ScaleParams,
) -> Result<TypePair> {
    let dist = complex.distances_from(scale.x0);
    let mut types = [false; 2];
    for (i, h) in [connector.pair.0, connector.pair.1].into_iter().enumerate() {
        let wall = WallGraph::build(complex, set, h, &dist);
        let horizon = wall.horizon(scale.r1)?;
        types[i] = type_on(&wall, &horizon, connector);
    }
    Ok(TypePair {
        on_first: types[0],
        on_second: types[1],
    })
}

/// Whether the Z/2 sum of `type_h` over the family is zero. The empty
/// family is admissible without needing a horizon.
pub fn check_admissible(
    complex: &CubeComplex,
    set: &HyperplaneSet,
    h: HypId,
    connectors: &[Connector],
    scale: &ScaleParams,
) -> Result<bool> {
    let on_h: Vec<&Connector> = connectors.iter().filter(|c| c.supports(h)).collect();
    if on_h.is_empty() {
        return Ok(true);
    }
    let dist = complex.distances_from(scale.x0);
    let wall = WallGraph::build(complex, set, h, &dist);
    let horizon = wall.horizon(scale.r1)?;
    let mut sum = false;
    for c in on_h {
        sum ^= type_on(&wall, &horizon, c);
    }
    Ok(!sum)
}

/// An orientation of one hyperplane: Z/2 values on its wall vertices
/// outside R1, flipping exactly across connector bodies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation {
    pub hyp: HypId,
    pub r1: u32,
    pub values: BTreeMap<EdgeId, bool>,
}

impl Orientation {
    /// The companion orientation differing by the constant 1.
    pub fn flipped(&self) -> Orientation {
        Orientation {
            hyp: self.hyp,
            r1: self.r1,
            values: self.values.iter().map(|(&e, &v)| (e, !v)).collect(),
        }
    }

    /// Pointwise sum with another orientation of the same hyperplane.
    pub fn plus(&self, other: &Orientation) -> Orientation {
        assert_eq!(self.hyp, other.hyp);
        assert_eq!(self.r1, other.r1);
        let values = self
            .values
            .iter()
            .map(|(&e, &v)| (e, v ^ other.values.get(&e).copied().unwrap_or(false)))
            .collect();
        Orientation {
            hyp: self.hyp,
            r1: self.r1,
            values,
        }
    }
}

/// Solves the flip-edge coboundary system of `h` outside R1 and returns the
/// two solutions (canonicalized so the least domain vertex of the first is
/// 0). Errors: `NotAdmissible` with a gf2 certificate when inconsistent,
/// `DisconnectedHorizon` when the truncated wall is disconnected,
/// `DomainTooSmall` when nothing lies outside R1.
pub fn orient_hyperplane(
    complex: &CubeComplex,
    set: &HyperplaneSet,
    h: HypId,
    connectors: &[Connector],
    scale: &ScaleParams,
) -> Result<(Orientation, Orientation)> {
    let dist = complex.distances_from(scale.x0);
    let wall = WallGraph::build(complex, set, h, &dist);
    let (domain, _, system) = wall.flip_system(scale.r1, connectors)?;
    let solution = match system.solve() {
        Outcome::Solved(x) => x,
        Outcome::Inconsistent(cert) => {
            return Err(Error::NotAdmissible {
                hyperplane: h.0,
                certificate: cert.rows,
            })
        }
    };
    let kernel = system.kernel_basis();
    if kernel.len() != 1 {
        return Err(Error::DisconnectedHorizon {
            hyperplane: h.0,
            components: kernel.len(),
        });
    }
    let mut values: BTreeMap<EdgeId, bool> = domain
        .iter()
        .enumerate()
        .map(|(i, &v)| (wall.verts[v as usize], solution[i]))
        .collect();
    if *values.values().next().unwrap() {
        for v in values.values_mut() {
            *v = !*v;
        }
    }
    let first = Orientation {
        hyp: h,
        r1: scale.r1,
        values,
    };
    let second = first.flipped();
    Ok((first, second))
}

/// A grid together with one chosen orientation per hyperplane.
#[derive(Clone, Debug)]
pub struct OrientedGrid {
    pub grid: Grid,
    pub orientations: BTreeMap<HypId, Orientation>,
}

/// Orients every hyperplane of the grid; `seeds[h] = true` picks the
/// companion solution.
pub fn orient_grid(
    complex: &CubeComplex,
    set: &HyperplaneSet,
    grid: &Grid,
    seeds: &BTreeMap<HypId, bool>,
) -> Result<OrientedGrid> {
    let mut orientations = BTreeMap::new();
    for &h in &grid.hyperplanes {
        let on_h: Vec<Connector> = grid.connectors_on(h).into_iter().cloned().collect();
        let (zero, one) = orient_hyperplane(complex, set, h, &on_h, &grid.scale)?;
        let pick = if seeds.get(&h).copied().unwrap_or(false) {
            one
        } else {
            zero
        };
        orientations.insert(h, pick);
    }
    Ok(OrientedGrid {
        grid: grid.clone(),
        orientations,
    })
}

/// Z/2 edge cocycle on the ambient edges outside B(x0, R1); zero on edges
/// not dual to a grid hyperplane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeCocycle {
    pub scale: ScaleParams,
    pub values: Vec<bool>,
}

impl EdgeCocycle {
    pub fn zero(complex: &CubeComplex, scale: ScaleParams) -> Self {
        Self {
            scale,
            values: vec![false; complex.n_edges()],
        }
    }

    pub fn value(&self, e: EdgeId) -> bool {
        self.values[e.ix()]
    }

    pub fn support(&self) -> Vec<EdgeId> {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, &v)| v)
            .map(|(i, _)| EdgeId(i as u32))
            .collect()
    }
}

/// Sums the chosen orientations into the ambient edge cocycle: each edge
/// dual to a grid hyperplane picks up the value of its wall vertex.
pub fn assemble_cocycle(complex: &CubeComplex, oriented: &OrientedGrid) -> Result<EdgeCocycle> {
    let mut cocycle = EdgeCocycle::zero(complex, oriented.grid.scale);
    for &h in &oriented.grid.hyperplanes {
        let orientation = oriented
            .orientations
            .get(&h)
            .ok_or_else(|| Error::Schema(format!("missing orientation for hyperplane {}", h.0)))?;
        if orientation.r1 != oriented.grid.scale.r1 {
            return Err(Error::BadScale("orientation radius differs from grid".into()));
        }
        if orientation.values.is_empty() {
            return Err(Error::DomainTooSmall {
                hyperplane: h.0,
                radius: oriented.grid.scale.r1,
            });
        }
        for (&e, &v) in &orientation.values {
            if v {
                cocycle.values[e.ix()] ^= true;
            }
        }
    }
    Ok(cocycle)
}

/// Squares outside B(x0, R1) whose four boundary edges sum to 1; empty for
/// a genuine cocycle.
pub fn verify_cocycle(complex: &CubeComplex, cocycle: &EdgeCocycle) -> Vec<SquareId> {
    let dist = complex.distances_from(cocycle.scale.x0);
    let mut violations = Vec::new();
    for s in 0..complex.n_squares() as u32 {
        let sq = SquareId(s);
        if !complex
            .square(sq)
            .corners
            .iter()
            .all(|&v| dist[v.ix()] > cocycle.scale.r1)
        {
            continue;
        }
        let sum = complex
            .square_edge_ids(sq)
            .iter()
            .fold(false, |acc, &e| acc ^ cocycle.value(e));
        if sum {
            violations.push(sq);
        }
    }
    violations
}

/// A parity function: Z/2 on the vertices outside B(x0, R), with the
/// cocycle it cobounds as provenance.
#[derive(Clone, Debug)]
pub struct ParityFunction {
    pub scale: ScaleParams,
    pub values: Vec<bool>,
    pub in_domain: Vec<bool>,
    pub cocycle: EdgeCocycle,
}

impl ParityFunction {
    pub fn value(&self, v: VertexId) -> Option<bool> {
        self.in_domain[v.ix()].then(|| self.values[v.ix()])
    }
}

#[derive(Clone, Debug)]
pub enum ParityOutcome {
    Solved(ParityFunction),
    /// Domain edges whose cocycle values sum to 1 while every vertex is hit
    /// an even number of times: the finite shadow of a nontrivial class.
    Inconsistent(Vec<EdgeId>),
}

/// Solves δπ = α on the vertices outside B(x0, R). Inconsistency is a
/// result carrying a re-summable certificate, not an error. The solution is
/// canonicalized: the least vertex of every connected component of the
/// truncated complex gets value 0.
pub fn solve_parity(
    complex: &CubeComplex,
    cocycle: &EdgeCocycle,
    scale: &ScaleParams,
) -> Result<ParityOutcome> {
    if scale.r < cocycle.scale.r1 || scale.x0 != cocycle.scale.x0 {
        return Err(Error::BadScale(
            "parity radius must contain the cocycle truncation".into(),
        ));
    }
    let dist = complex.distances_from(scale.x0);
    let in_domain: Vec<bool> = dist.iter().map(|&d| d > scale.r).collect();
    let domain: Vec<u32> = (0..complex.n_vertices() as u32)
        .filter(|&v| in_domain[v as usize])
        .collect();
    let col: HashMap<u32, usize> = domain.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut system = Gf2System::new(domain.len());
    let mut row_edges: Vec<EdgeId> = Vec::new();
    for e in 0..complex.n_edges() as u32 {
        let (u, v) = complex.edge(EdgeId(e));
        if let (Some(&cu), Some(&cv)) = (col.get(&u.0), col.get(&v.0)) {
            let before = system.n_rows();
            let idx = system.add_row(&[cu, cv], cocycle.value(EdgeId(e)));
            if system.n_rows() > before {
                debug_assert_eq!(idx, row_edges.len());
                row_edges.push(EdgeId(e));
            }
        }
    }
    match system.solve() {
        Outcome::Inconsistent(cert) => Ok(ParityOutcome::Inconsistent(
            cert.rows.iter().map(|&r| row_edges[r]).collect(),
        )),
        Outcome::Solved(x) => {
            let mut values = vec![false; complex.n_vertices()];
            for (i, &v) in domain.iter().enumerate() {
                values[v as usize] = x[i];
            }
            // Canonicalize per component of the truncated complex.
            let mut seen = vec![false; complex.n_vertices()];
            for &start in &domain {
                if seen[start as usize] {
                    continue;
                }
                let mut members = vec![VertexId(start)];
                seen[start as usize] = true;
                let mut queue = VecDeque::from([VertexId(start)]);
                while let Some(v) = queue.pop_front() {
                    for &(u, _) in complex.neighbors(v) {
                        if in_domain[u.ix()] && !seen[u.ix()] {
                            seen[u.ix()] = true;
                            members.push(u);
                            queue.push_back(u);
                        }
                    }
                }
                if values[start as usize] {
                    for v in members {
                        values[v.ix()] = !values[v.ix()];
                    }
                }
            }
            Ok(ParityOutcome::Solved(ParityFunction {
                scale: *scale,
                values,
                in_domain,
                cocycle: cocycle.clone(),
            }))
        }
    }
}

/// Δπ(x, y) = π(x) + π(y); independent of the constant ambiguity per
/// component.
pub fn delta_parity(
    complex: &CubeComplex,
    parity: &ParityFunction,
    x: VertexId,
    y: VertexId,
) -> Result<bool> {
    let value = |v: VertexId| {
        parity
            .value(v)
            .ok_or_else(|| Error::OutOfDomain(complex.vertex_name(v).to_string()))
    };
    Ok(value(x)? ^ value(y)?)
}

/// Grid addition: hyperplane union, connector symmetric difference.
/// Connectors across the two grids must be pairwise disjoint or identical.
pub fn add_grids(
    complex: &CubeComplex,
    set: &HyperplaneSet,
    g1: &Grid,
    g2: &Grid,
) -> Result<Grid> {
    if g1.scale != g2.scale {
        return Err(Error::BadScale("grids use different scales".into()));
    }
    for a in &g1.connectors {
        for b in &g2.connectors {
            if a != b && !a.disjoint_from(b) {
                return Err(Error::OverlappingConnectors);
            }
        }
    }
    let mut hyperplanes = g1.hyperplanes.clone();
    hyperplanes.extend_from_slice(&g2.hyperplanes);
    let mut connectors = Vec::new();
    for c in &g1.connectors {
        if !g2.connectors.contains(c) {
            connectors.push(c.clone());
        }
    }
    for c in &g2.connectors {
        if !g1.connectors.contains(c) {
            connectors.push(c.clone());
        }
    }
    Grid::new(complex, set, hyperplanes, connectors, g1.scale)
}

/// Orientation sum for an added grid: XOR where both grids orient a
/// hyperplane, the single orientation elsewhere.
pub fn add_oriented(
    complex: &CubeComplex,
    set: &HyperplaneSet,
    o1: &OrientedGrid,
    o2: &OrientedGrid,
) -> Result<OrientedGrid> {
    let grid = add_grids(complex, set, &o1.grid, &o2.grid)?;
    let mut orientations = BTreeMap::new();
    for &h in &grid.hyperplanes {
        let orientation = match (o1.orientations.get(&h), o2.orientations.get(&h)) {
            (Some(a), Some(b)) => a.plus(b),
            (Some(a), None) => a.clone(),
            (None, Some(b)) => b.clone(),
            (None, None) => unreachable!("hyperplane came from one of the grids"),
        };
        orientations.insert(h, orientation);
    }
    Ok(OrientedGrid { grid, orientations })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CensusEntry {
    pub pair: (u32, u32),
    pub component: usize,
    pub size: usize,
    pub type_pair: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Census {
    pub histogram: BTreeMap<String, usize>,
    pub entries: Vec<CensusEntry>,
    pub no_horizon_pairs: Vec<(u32, u32)>,
}

type HorizonCache = HashMap<HypId, Option<(WallGraph, Vec<u32>)>>;

/// Builds (or fetches) the wall graph plus horizon of `h`, returning
/// whether the horizon exists.
fn ensure_horizon(
    cache: &mut HorizonCache,
    complex: &CubeComplex,
    set: &HyperplaneSet,
    dist: &[u32],
    r1: u32,
    h: HypId,
) -> bool {
    cache
        .entry(h)
        .or_insert_with(|| {
            let wall = WallGraph::build(complex, set, h, dist);
            match wall.horizon(r1) {
                Ok(order) => Some((wall, order)),
                Err(_) => None,
            }
        })
        .is_some()
}

/// Types of every intersection component of every crossing pair whose two
/// horizon cycles exist; pairs without horizons are reported separately.
pub fn connector_census(
    complex: &CubeComplex,
    set: &HyperplaneSet,
    scale: &ScaleParams,
) -> Census {
    let dist = complex.distances_from(scale.x0);
    let mut horizon_cache: HorizonCache = HashMap::new();
    let mut histogram: BTreeMap<String, usize> = ["00", "01", "10", "11"]
        .iter()
        .map(|k| (k.to_string(), 0))
        .collect();
    let mut entries = Vec::new();
    let mut no_horizon = Vec::new();
    for (h, k) in crossing_graph(complex, set) {
        let ok_h = ensure_horizon(&mut horizon_cache, complex, set, &dist, scale.r1, h);
        let ok_k = ensure_horizon(&mut horizon_cache, complex, set, &dist, scale.r1, k);
        if !(ok_h && ok_k) {
            no_horizon.push((h.0, k.0));
            continue;
        }
        let components = intersection_components(complex, set, h, k, scale);
        for (i, comp) in components.iter().enumerate() {
            let connector = Connector {
                pair: comp.pair,
                squares: comp.squares.clone(),
            };
            let (wall_h, hor_h) = horizon_cache[&h].as_ref().unwrap();
            let (wall_k, hor_k) = horizon_cache[&k].as_ref().unwrap();
            let (first, second) = if comp.pair.0 == h {
                (
                    type_on(wall_h, hor_h, &connector),
                    type_on(wall_k, hor_k, &connector),
                )
            } else {
                (
                    type_on(wall_k, hor_k, &connector),
                    type_on(wall_h, hor_h, &connector),
                )
            };
            let tp = TypePair {
                on_first: first,
                on_second: second,
            };
            *histogram.get_mut(tp.label()).unwrap() += 1;
            entries.push(CensusEntry {
                pair: (comp.pair.0 .0, comp.pair.1 .0),
                component: i,
                size: comp.squares.len(),
                type_pair: tp.label().to_string(),
            });
        }
    }
    Census {
        histogram,
        entries,
        no_horizon_pairs: no_horizon,
    }
}

/// All hyperplane grids (single hyperplane, no connectors) with a nonempty
/// domain outside R1.
pub fn hyperplane_grids(
    complex: &CubeComplex,
    set: &HyperplaneSet,
    scale: &ScaleParams,
) -> Vec<Grid> {
    let dist = complex.distances_from(scale.x0);
    let mut grids = Vec::new();
    for h in set.iter() {
        let outside = h.edges.iter().any(|&e| {
            let (u, v) = complex.edge(e);
            dist[u.ix()].min(dist[v.ix()]) > scale.r1
        });
        if outside {
            grids.push(Grid {
                hyperplanes: vec![h.id],
                connectors: Vec::new(),
                scale: *scale,
            });
        }
    }
    grids
}

/// Cycle grids over triangles of the crossing graph: three pairwise
/// crossing hyperplanes with a type-(1,1) connector on each pair.
pub fn cycle_grids(complex: &CubeComplex, set: &HyperplaneSet, scale: &ScaleParams) -> Vec<Grid> {
    let crossings = crossing_graph(complex, set);
    let cross_set: HashSet<(HypId, HypId)> = crossings.iter().copied().collect();
    let dist = complex.distances_from(scale.x0);
    let mut cache: HorizonCache = HashMap::new();
    let mut grids = Vec::new();
    let ids: Vec<HypId> = set.iter().map(|h| h.id).collect();
    for (i, &h1) in ids.iter().enumerate() {
        for (j, &h2) in ids.iter().enumerate().skip(i + 1) {
            if !cross_set.contains(&(h1, h2)) {
                continue;
            }
            for &h3 in ids.iter().skip(j + 1) {
                if !cross_set.contains(&(h2, h3)) || !cross_set.contains(&(h1, h3)) {
                    continue;
                }
                let ok = [h1, h2, h3]
                    .into_iter()
                    .all(|h| ensure_horizon(&mut cache, complex, set, &dist, scale.r1, h));
                if !ok {
                    continue;
                }
                let mut connectors = Vec::new();
                let mut ok = true;
                for (a, b) in [(h1, h2), (h2, h3), (h1, h3)] {
                    let comps = intersection_components(complex, set, a, b, scale);
                    let pick = comps.iter().find(|comp| {
                        let connector = Connector {
                            pair: comp.pair,
                            squares: comp.squares.clone(),
                        };
                        let (wa, ha) = cache[&comp.pair.0].as_ref().unwrap();
                        let (wb, hb) = cache[&comp.pair.1].as_ref().unwrap();
                        type_on(wa, ha, &connector) && type_on(wb, hb, &connector)
                    });
                    match pick {
                        Some(comp) => connectors.push(Connector {
                            pair: comp.pair,
                            squares: comp.squares.clone(),
                        }),
                        None => {
                            ok = false;
                            break;
                        }
                    }
                }
                if !ok {
                    continue;
                }
                if let Ok(grid) = Grid::new(complex, set, vec![h1, h2, h3], connectors, *scale) {
                    grids.push(grid);
                }
            }
        }
    }
    grids
}

/// Arc grids: a hyperplane h and two others, joined by disjoint connectors
/// of type (1,0) relative to h. Under the ambient-distance horizon the two
/// sides of any square straddle the cut radius together, so both components
/// of a connector type always coincide and this search comes back empty on
/// every bundled fixture; it is kept as the honest search for the shape.
pub fn arc_grids(complex: &CubeComplex, set: &HyperplaneSet, scale: &ScaleParams) -> Vec<Grid> {
    let crossings = crossing_graph(complex, set);
    let dist = complex.distances_from(scale.x0);
    let mut cache: HorizonCache = HashMap::new();
    // Connectors of type (1,0) with respect to their first hyperplane.
    let mut candidates: HashMap<HypId, Vec<(HypId, Connector)>> = HashMap::new();
    for &(h, k) in &crossings {
        let ok_h = ensure_horizon(&mut cache, complex, set, &dist, scale.r1, h);
        let ok_k = ensure_horizon(&mut cache, complex, set, &dist, scale.r1, k);
        if !(ok_h && ok_k) {
            continue;
        }
        for comp in intersection_components(complex, set, h, k, scale) {
            let connector = Connector {
                pair: comp.pair,
                squares: comp.squares,
            };
            let (wa, ha) = cache[&comp.pair.0].as_ref().unwrap();
            let (wb, hb) = cache[&comp.pair.1].as_ref().unwrap();
            let t0 = type_on(wa, ha, &connector);
            let t1 = type_on(wb, hb, &connector);
            if t0 && !t1 {
                candidates
                    .entry(comp.pair.0)
                    .or_default()
                    .push((comp.pair.1, connector.clone()));
            }
            if t1 && !t0 {
                candidates
                    .entry(comp.pair.1)
                    .or_default()
                    .push((comp.pair.0, connector));
            }
        }
    }
    let mut grids = Vec::new();
    for (h, list) in candidates {
        for (i, (k1, c1)) in list.iter().enumerate() {
            for (k2, c2) in &list[i + 1..] {
                if k1 == k2 || !c1.disjoint_from(c2) {
                    continue;
                }
                if let Ok(grid) = Grid::new(
                    complex,
                    set,
                    vec![h, *k1, *k2],
                    vec![c1.clone(), c2.clone()],
                    *scale,
                ) {
                    grids.push(grid);
                }
            }
        }
    }
    grids
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScaleDoc {
    pub x0: String,
    #[serde(rename = "R0")]
    pub r0: u32,
    #[serde(rename = "R1")]
    pub r1: u32,
    #[serde(rename = "R")]
    pub r: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConnectorDoc {
    pub pair: (u32, u32),
    pub components: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GridDoc {
    pub hyperplanes: Vec<u32>,
    pub connectors: Vec<ConnectorDoc>,
    pub scale: ScaleDoc,
    #[serde(default)]
    pub orientation_seed: BTreeMap<String, u8>,
}

impl ScaleDoc {
    pub fn resolve(&self, complex: &CubeComplex) -> Result<ScaleParams> {
        ScaleParams::new(complex.vertex(&self.x0)?, self.r0, self.r1, self.r)
    }
}

/// Builds a validated grid plus orientation seeds from the document form.
/// Connector components index into `intersection_components` of their pair
/// at the document's scale.
pub fn grid_from_doc(
    complex: &CubeComplex,
    set: &HyperplaneSet,
    doc: &GridDoc,
) -> Result<(Grid, BTreeMap<HypId, bool>)> {
    let scale = doc.scale.resolve(complex)?;
    let mut hyperplanes = Vec::new();
    for &h in &doc.hyperplanes {
        if h as usize >= set.len() {
            return Err(Error::Schema(format!("no hyperplane {h}")));
        }
        hyperplanes.push(HypId(h));
    }
    let mut connectors = Vec::new();
    for c in &doc.connectors {
        let (h, k) = (HypId(c.pair.0), HypId(c.pair.1));
        if h == k || h.ix() >= set.len() || k.ix() >= set.len() {
            return Err(Error::Schema(format!("bad connector pair {:?}", c.pair)));
        }
        let comps = intersection_components(complex, set, h, k, &scale);
        connectors.push(Connector::from_components(&comps, &c.components)?);
    }
    let mut seeds = BTreeMap::new();
    for (key, &v) in &doc.orientation_seed {
        let h: u32 = key
            .parse()
            .map_err(|_| Error::Schema(format!("bad orientation seed key {key:?}")))?;
        seeds.insert(HypId(h), v != 0);
    }
    Ok((Grid::new(complex, set, hyperplanes, connectors, scale)?, seeds))
}
