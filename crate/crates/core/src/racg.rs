//! Right-angled Coxeter groups presented by a flag complex L: ShortLex
//! geodesic normal forms, Davis-complex balls, and the validators for the
//! torus-link counterexample apparatus.
//!
//! Generators are the vertices of L (ordered as in L), two generators
//! commute iff they span an edge. The word problem is solved by left-greedy
//! commutation-aware rewriting: right-multiplication either cancels the
//! rightmost movable occurrence of the letter or appends it, and geodesics
//! are put in ShortLex form by repeatedly extracting the least letter whose
//! prefix commutes.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::complex::CubeComplex;
use crate::error::{Error, Result};
use crate::simplicial::SimplicialComplex;

/// Default vertex cap for [`davis_ball`].
pub const DEFAULT_BALL_CAP: usize = 200_000;

#[derive(Clone, Debug)]
pub struct RacgPresentation {
    generator_names: Vec<String>,
    name_index: HashMap<String, u16>,
    commuting: Vec<Vec<bool>>,
    link_complex: SimplicialComplex,
}

impl RacgPresentation {
    /// Presentation read off a defining complex: generators are vertices,
    /// commuting pairs are edges.
    pub fn from_link(l: &SimplicialComplex) -> Self {
        let n = l.n_vertices();
        let generator_names: Vec<String> = l.vertex_names().to_vec();
        let name_index = generator_names
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i as u16))
            .collect();
        let mut commuting = vec![vec![false; n]; n];
        for e in l.edges() {
            commuting[e[0] as usize][e[1] as usize] = true;
            commuting[e[1] as usize][e[0] as usize] = true;
        }
        Self {
            generator_names,
            name_index,
            commuting,
            link_complex: l.clone(),
        }
    }

    pub fn n_generators(&self) -> usize {
        self.generator_names.len()
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    pub fn generator(&self, name: &str) -> Result<u16> {
        self.name_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn commutes(&self, s: u16, t: u16) -> bool {
        self.commuting[s as usize][t as usize]
    }

    pub fn link_complex(&self) -> &SimplicialComplex {
        &self.link_complex
    }

    fn element_name(&self, word: &[u16]) -> String {
        if word.is_empty() {
            "e".to_string()
        } else {
            word.iter()
                .map(|&s| self.generator_names[s as usize].as_str())
                .collect::<Vec<_>>()
                .join(".")
        }
    }
}

/// A group element held as its ShortLex-least geodesic word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    word: Vec<u16>,
}

impl GroupElement {
    pub fn identity() -> Self {
        Self { word: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn word(&self) -> &[u16] {
        &self.word
    }

    pub fn name(&self, p: &RacgPresentation) -> String {
        p.element_name(&self.word)
    }
}

/// ShortLex-least geodesic representative of `word`. Two words map to the
/// same element iff they represent the same group element.
pub fn normal_form(p: &RacgPresentation, word: &[String]) -> Result<GroupElement> {
    let mut w = Vec::with_capacity(word.len());
    for name in word {
        let s = p.generator(name)?;
        w = multiply_right(p, &w, s);
    }
    Ok(GroupElement { word: w })
}

pub fn normal_form_indices(p: &RacgPresentation, letters: &[u16]) -> GroupElement {
    let mut w = Vec::with_capacity(letters.len());
    for &s in letters {
        w = multiply_right(p, &w, s);
    }
    GroupElement { word: w }
}

/// Right-multiplies the geodesic ShortLex word `w` by generator `s`.
///
/// `w·s` is shorter iff some occurrence of `s` can be moved to the end of
/// `w` through commuting letters; in a geodesic word only the rightmost
/// occurrence can qualify.
pub(crate) fn multiply_right(p: &RacgPresentation, w: &[u16], s: u16) -> Vec<u16> {
    for i in (0..w.len()).rev() {
        if w[i] == s {
            let mut out = w.to_vec();
            out.remove(i);
            return shortlex(p, out);
        }
        if !p.commutes(w[i], s) {
            break;
        }
    }
    let mut out = w.to_vec();
    out.push(s);
    shortlex(p, out)
}

/// Whether `ℓ(w·s) < ℓ(w)` for a geodesic `w` (a descent).
pub(crate) fn is_descent(p: &RacgPresentation, w: &[u16], s: u16) -> bool {
    for i in (0..w.len()).rev() {
        if w[i] == s {
            return true;
        }
        if !p.commutes(w[i], s) {
            return false;
        }
    }
    false
}

/// Lexicographically least word in the commutation class of a geodesic:
/// greedily extract the least letter whose whole prefix commutes with it.
fn shortlex(p: &RacgPresentation, mut rest: Vec<u16>) -> Vec<u16> {
    let mut out = Vec::with_capacity(rest.len());
    while !rest.is_empty() {
        let mut best: Option<(u16, usize)> = None;
        for i in 0..rest.len() {
            if (0..i).all(|j| p.commutes(rest[j], rest[i])) {
                match best {
                    Some((b, _)) if b <= rest[i] => {}
                    _ => best = Some((rest[i], i)),
                }
            }
        }
        let (letter, pos) = best.expect("first letter is always available");
        rest.remove(pos);
        out.push(letter);
    }
    out
}

/// Full subcomplex of the Davis complex on the elements of length ≤ radius.
///
/// Vertices are group elements (named by their normal form joined with `.`,
/// identity `e`), edges are pairs (g, gs), and d-cubes are cosets g⟨σ⟩ of
/// clique subgroups (σ a (d-1)-simplex of L) with all 2^d corners inside
/// the ball. The basepoint is the identity.
pub fn davis_ball(p: &RacgPresentation, radius: u32, cap: usize) -> Result<CubeComplex> {
    if p.generator_names.iter().any(|n| n == "e") {
        return Err(Error::Schema("generator name 'e' is reserved".into()));
    }
    // Conservative growth estimate to refuse absurd requests before BFS.
    let mut projected: usize = 1;
    let mut sphere: usize = 1;
    for _ in 0..radius {
        sphere = sphere.saturating_mul(p.n_generators().max(1));
        projected = projected.saturating_add(sphere);
        if projected > cap.saturating_mul(64) {
            break;
        }
    }

    let mut ids: HashMap<Vec<u16>, u32> = HashMap::new();
    let mut elements: Vec<Vec<u16>> = Vec::new();
    let mut queue = VecDeque::new();
    ids.insert(Vec::new(), 0);
    elements.push(Vec::new());
    queue.push_back(0u32);

    while let Some(id) = queue.pop_front() {
        let w = elements[id as usize].clone();
        if w.len() as u32 == radius {
            continue;
        }
        for s in 0..p.n_generators() as u16 {
            let next = multiply_right(p, &w, s);
            if next.len() <= w.len() {
                continue;
            }
            if !ids.contains_key(&next) {
                let nid = elements.len() as u32;
                if elements.len() >= cap {
                    return Err(Error::BallTooLarge {
                        projected: projected.max(elements.len() + 1),
                        cap,
                    });
                }
                ids.insert(next.clone(), nid);
                elements.push(next);
                queue.push_back(nid);
            }
        }
    }

    let names: Vec<String> = elements.iter().map(|w| p.element_name(w)).collect();

    // Cliques of L are its simplices; a d-cube per coset g⟨σ⟩ with g the
    // minimal-length representative (no letter of σ is a descent of g).
    let mut cubes: Vec<Vec<String>> = Vec::new();
    for w in &elements {
        for s in 0..p.n_generators() as u16 {
            if !is_descent(p, w, s) {
                let next = multiply_right(p, w, s);
                if next.len() as u32 <= radius {
                    cubes.push(vec![p.element_name(w), p.element_name(&next)]);
                }
            }
        }
    }
    let simplices: Vec<Vec<u16>> = p
        .link_complex
        .faces()
        .filter(|f| f.len() >= 2)
        .map(|f| f.iter().map(|&v| v as u16).collect())
        .collect();
    for w in &elements {
        for sigma in &simplices {
            let d = sigma.len();
            if w.len() + d > radius as usize {
                continue;
            }
            if sigma.iter().any(|&s| is_descent(p, w, s)) {
                continue;
            }
            let mut corners = Vec::with_capacity(1 << d);
            for b in 0..1usize << d {
                let mut g = w.clone();
                for (i, &s) in sigma.iter().enumerate() {
                    if b >> i & 1 == 1 {
                        g = multiply_right(p, &g, s);
                    }
                }
                corners.push(p.element_name(&g));
            }
            cubes.push(corners);
        }
    }

    CubeComplex::new(names, &cubes, Some("e"))
}

/// A simplex whose removal (together with everything touching it, i.e. the
/// full subcomplex on the remaining vertices) disconnects L.
pub fn find_separating_simplex(l: &SimplicialComplex) -> Result<Option<Vec<String>>> {
    if !l.is_connected() {
        return Err(Error::DisconnectedInput);
    }
    let mut simplices: Vec<&Vec<u32>> = l.faces().collect();
    simplices.sort_by_key(|s| (s.len(), s.as_slice().to_vec()));
    for sigma in simplices {
        let keep: HashSet<u32> = (0..l.n_vertices() as u32)
            .filter(|v| !sigma.contains(v))
            .collect();
        if keep.is_empty() {
            continue;
        }
        let rest = l.full_subcomplex(&keep);
        if rest.n_vertices() > 0 && !rest.is_connected() {
            return Ok(Some(
                sigma.iter().map(|&v| l.vertex_name(v).to_string()).collect(),
            ));
        }
    }
    Ok(None)
}

/// An induced 4-cycle of the 1-skeleton (edges a-b, b-c, c-d, d-a present,
/// diagonals absent), the standard hyperbolicity obstruction for flag L.
pub fn find_empty_square(l: &SimplicialComplex) -> Result<Option<[String; 4]>> {
    if let Some(clique) = l.flag_violation() {
        return Err(Error::NotFlag(
            clique.iter().map(|&v| l.vertex_name(v).to_string()).collect(),
        ));
    }
    let adj = l.adjacency();
    let n = l.n_vertices() as u32;
    for a in 0..n {
        for c in a + 1..n {
            if adj[a as usize].contains(&c) {
                continue;
            }
            let common: Vec<u32> = adj[a as usize]
                .intersection(&adj[c as usize])
                .copied()
                .collect();
            for (i, &b) in common.iter().enumerate() {
                for &d in &common[i + 1..] {
                    if !adj[b as usize].contains(&d) {
                        let name = |v: u32| l.vertex_name(v).to_string();
                        return Ok(Some([name(a), name(b), name(c), name(d)]));
                    }
                }
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LinkReport {
    pub vertices: usize,
    pub edges: usize,
    pub triangles: usize,
    pub connected: bool,
    pub flag: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flag_violation: Option<Vec<String>>,
    pub all_vertex_links_6_cycles: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bad_link_vertex: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub separating_simplex: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub empty_square: Option<[String; 4]>,
    /// Every edge lies in exactly two triangles and every vertex link is
    /// connected.
    pub closed_surface: bool,
    pub pass: bool,
}

/// Runs the whole battery of checks a counterexample link must satisfy.
pub fn validate_counterexample_link(l: &SimplicialComplex) -> LinkReport {
    let vertices = l.n_vertices();
    let edges = l.count_dim(1);
    let triangles = l.count_dim(2);
    let connected = l.is_connected();

    let flag_violation = l
        .flag_violation()
        .map(|c| c.iter().map(|&v| l.vertex_name(v).to_string()).collect::<Vec<_>>());
    let flag = flag_violation.is_none();

    let mut all_links_6 = true;
    let mut bad_link_vertex = None;
    let mut links_connected = true;
    for v in 0..vertices as u32 {
        let link = l.link(v);
        links_connected &= link.is_connected() && link.n_vertices() > 0;
        if !link.is_cycle_of_length(6) && all_links_6 {
            all_links_6 = false;
            bad_link_vertex = Some(l.vertex_name(v).to_string());
        }
    }

    let mut edge_in_two_triangles = true;
    for e in l.edges() {
        let count = l
            .faces()
            .filter(|f| f.len() == 3 && f.contains(&e[0]) && f.contains(&e[1]))
            .count();
        if count != 2 {
            edge_in_two_triangles = false;
            break;
        }
    }
    let closed_surface = edge_in_two_triangles && links_connected && l.dim() == 2;

    let separating_simplex = if connected {
        find_separating_simplex(l).expect("connectivity checked")
    } else {
        None
    };
    let empty_square = if flag {
        find_empty_square(l).expect("flagness checked")
    } else {
        None
    };

    let pass = connected
        && flag
        && all_links_6
        && separating_simplex.is_none()
        && empty_square.is_none()
        && closed_surface;

    LinkReport {
        vertices,
        edges,
        triangles,
        connected,
        flag,
        flag_violation,
        all_vertex_links_6_cycles: all_links_6,
        bad_link_vertex,
        separating_simplex,
        empty_square,
        closed_surface,
        pass,
    }
}

/// Flag torus triangulation as a quotient of the regular triangular lattice
/// (vertices Z^2, triangles {v, v+e1, v+e1+e2} and {v, v+e2, v+e1+e2}) by
/// the lattice spanned by `u` and `w`. The default (8,0), (0,6) quotient has
/// 48 vertices and 96 triangles.
pub fn generate_torus_link(u: (i64, i64), w: (i64, i64)) -> Result<SimplicialComplex> {
    let det = u.0 * w.1 - u.1 * w.0;
    if det == 0 {
        return Err(Error::Schema("quotient vectors are linearly dependent".into()));
    }
    // Hermite-style basis for the lattice: (p, 0) and (q, r) with p, r > 0,
    // so representatives are 0 <= x < p, 0 <= y < r.
    fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
        if b == 0 {
            (a, 1, 0)
        } else {
            let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
            (g, y, x - a.div_euclid(b) * y)
        }
    }
    let (g, alpha, beta) = ext_gcd(u.1, w.1);
    let (r, alpha, beta) = if g < 0 { (-g, -alpha, -beta) } else { (g, alpha, beta) };
    let v2 = (alpha * u.0 + beta * w.0, r);
    let p = det.abs() / r;

    let reduce = move |mut x: i64, mut y: i64| -> (i64, i64) {
        let k = y.div_euclid(r);
        x -= k * v2.0;
        y -= k * r;
        x = x.rem_euclid(p);
        (x, y)
    };

    let n = (det.abs()) as usize;
    let mut names = Vec::with_capacity(n);
    let mut index: HashMap<(i64, i64), usize> = HashMap::new();
    for y in 0..r {
        for x in 0..p {
            index.insert((x, y), names.len());
            names.push(format!("g{x}_{y}"));
        }
    }
    if names.len() != n {
        return Err(Error::Schema("lattice reduction failed".into()));
    }

    let mut triangles = Vec::with_capacity(2 * n);
    for y in 0..r {
        for x in 0..p {
            for tri in [
                [(x, y), (x + 1, y), (x + 1, y + 1)],
                [(x, y), (x, y + 1), (x + 1, y + 1)],
            ] {
                let corners: Vec<(i64, i64)> = tri.iter().map(|&(a, b)| reduce(a, b)).collect();
                let mut sorted = corners.clone();
                sorted.sort_unstable();
                sorted.dedup();
                if sorted.len() != 3 {
                    return Err(Error::Schema(
                        "quotient is too small: a lattice triangle degenerates".into(),
                    ));
                }
                triangles.push(
                    corners
                        .iter()
                        .map(|c| names[index[c]].clone())
                        .collect::<Vec<String>>(),
                );
            }
        }
    }
    SimplicialComplex::new(names, &triangles)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn pentagon() -> RacgPresentation {
        RacgPresentation::from_link(&fixtures::l_cycle(5))
    }

    fn nf(p: &RacgPresentation, letters: &[u16]) -> Vec<u16> {
        normal_form_indices(p, letters).word().to_vec()
    }

    #[test]
    fn involution_cancels() {
        let p = pentagon();
        assert_eq!(nf(&p, &[0, 0]), Vec::<u16>::new());
    }

    #[test]
    fn commuting_letters_sort() {
        let p = pentagon();
        // s1 and s0 are adjacent on the 5-cycle, hence commute.
        assert_eq!(nf(&p, &[1, 0]), vec![0, 1]);
        // s2 and s0 do not commute.
        assert_eq!(nf(&p, &[2, 0]), vec![2, 0]);
    }

    #[test]
    fn normal_form_is_idempotent_and_length_non_increasing() {
        let p = pentagon();
        let mut state = 9001u64;
        for _ in 0..200 {
            let mut word = Vec::new();
            for _ in 0..12 {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                word.push((state >> 33) as u16 % 5);
            }
            let once = nf(&p, &word);
            assert!(once.len() <= word.len());
            let twice = nf(&p, &once);
            assert_eq!(once, twice);
        }
    }

    /// Exhaustive closure under commutation swaps and adjacent cancellation;
    /// the ShortLex-least geodesic is recovered independently of the greedy
    /// rewriting path.
    fn oracle_minimum(p: &RacgPresentation, word: &[u16]) -> Vec<u16> {
        let mut seen: HashSet<Vec<u16>> = HashSet::new();
        let mut queue = VecDeque::from([word.to_vec()]);
        seen.insert(word.to_vec());
        let mut best = word.to_vec();
        while let Some(w) = queue.pop_front() {
            if w.len() < best.len() || (w.len() == best.len() && w < best) {
                best = w.clone();
            }
            for i in 0..w.len().saturating_sub(1) {
                if w[i] == w[i + 1] {
                    let mut shorter = w.clone();
                    shorter.drain(i..=i + 1);
                    if seen.insert(shorter.clone()) {
                        queue.push_back(shorter);
                    }
                } else if p.commutes(w[i], w[i + 1]) {
                    let mut swapped = w.clone();
                    swapped.swap(i, i + 1);
                    if seen.insert(swapped.clone()) {
                        queue.push_back(swapped);
                    }
                }
            }
        }
        best
    }

    #[test]
    fn normal_form_matches_exhaustive_oracle() {
        let p = pentagon();
        let mut state = 42u64;
        for _ in 0..120 {
            let len = 4 + (state % 9) as usize;
            let mut word = Vec::new();
            for _ in 0..len {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                word.push((state >> 33) as u16 % 5);
            }
            assert_eq!(nf(&p, &word), oracle_minimum(&p, &word), "word {word:?}");
        }
    }

    #[test]
    fn davis_ball_of_a_point_is_an_edge() {
        let p = RacgPresentation::from_link(&fixtures::l_vertex());
        let b = davis_ball(&p, 1, DEFAULT_BALL_CAP).unwrap();
        assert_eq!(b.n_vertices(), 2);
        assert_eq!(b.n_edges(), 1);
    }

    #[test]
    fn davis_ball_of_an_edge_is_a_square() {
        let p = RacgPresentation::from_link(&fixtures::l_edge());
        let b = davis_ball(&p, 2, DEFAULT_BALL_CAP).unwrap();
        assert_eq!(b.n_vertices(), 4);
        assert_eq!(b.n_edges(), 4);
        assert_eq!(b.n_squares(), 1);
    }

    #[test]
    fn pentagon_ball_radius_2_has_21_vertices() {
        let b = davis_ball(&pentagon(), 2, DEFAULT_BALL_CAP).unwrap();
        assert_eq!(b.n_vertices(), 21);
    }

    #[test]
    fn ball_cap_is_enforced() {
        let r = davis_ball(&pentagon(), 6, 10);
        assert!(matches!(r, Err(Error::BallTooLarge { .. })));
    }

    #[test]
    fn davis_balls_are_coherent() {
        let p = pentagon();
        let big = davis_ball(&p, 3, DEFAULT_BALL_CAP).unwrap();
        let small = davis_ball(&p, 2, DEFAULT_BALL_CAP).unwrap();
        let e = big.vertex("e").unwrap();
        assert_eq!(big.ball(e, 2).unwrap(), small);
    }

    #[test]
    fn interior_links_match_l() {
        // Interior margin is dim(L) + 1; for a 1-dimensional L the link of
        // any vertex at distance <= r - 2 must equal L on neighbor names.
        let l = fixtures::l_cycle(5);
        let p = RacgPresentation::from_link(&l);
        let b = davis_ball(&p, 3, DEFAULT_BALL_CAP).unwrap();
        let e = b.vertex("e").unwrap();
        let dist = b.distances_from(e);
        for v in 0..b.n_vertices() {
            if dist[v] + 2 > 3 {
                continue;
            }
            let link = b.vertex_link(crate::complex::VertexId(v as u32)).unwrap();
            assert_eq!(link.n_vertices(), 5);
            assert_eq!(link.count_dim(1), 5, "vertex {}", b.vertex_name(crate::complex::VertexId(v as u32)));
            assert_eq!(link.count_dim(2), 0);
        }
    }

    #[test]
    fn wedge_of_triangles_has_separating_vertex() {
        let found = find_separating_simplex(&fixtures::l_wedge_of_triangles()).unwrap();
        assert_eq!(found, Some(vec!["s0".to_string()]));
    }

    #[test]
    fn cycle_has_no_separating_simplex() {
        assert_eq!(find_separating_simplex(&fixtures::l_cycle(5)).unwrap(), None);
    }

    #[test]
    fn two_triangles_on_an_edge_separate_along_it() {
        let l = SimplicialComplex::new(
            (0..4).map(|i| format!("s{i}")).collect(),
            &[
                vec!["s0".into(), "s1".into(), "s2".into()],
                vec!["s0".into(), "s1".into(), "s3".into()],
            ],
        )
        .unwrap();
        let found = find_separating_simplex(&l).unwrap();
        assert_eq!(found, Some(vec!["s0".to_string(), "s1".to_string()]));
    }

    #[test]
    fn disconnected_input_is_an_error() {
        let l = SimplicialComplex::new(
            vec!["a".into(), "b".into()],
            &[],
        )
        .unwrap();
        assert!(matches!(
            find_separating_simplex(&l),
            Err(Error::DisconnectedInput)
        ));
    }

    #[test]
    fn four_cycle_is_an_empty_square() {
        let sq = find_empty_square(&fixtures::l_cycle(4)).unwrap();
        let sq = sq.expect("4-cycle is its own empty square");
        assert_eq!(sq.len(), 4);
    }

    #[test]
    fn five_cycle_has_no_empty_square() {
        assert_eq!(find_empty_square(&fixtures::l_cycle(5)).unwrap(), None);
    }

    #[test]
    fn empty_square_requires_flag_input() {
        let hollow = SimplicialComplex::new(
            vec!["a".into(), "b".into(), "c".into()],
            &[
                vec!["a".into(), "b".into()],
                vec!["b".into(), "c".into()],
                vec!["a".into(), "c".into()],
            ],
        )
        .unwrap();
        assert!(matches!(find_empty_square(&hollow), Err(Error::NotFlag(_))));
    }

    #[test]
    fn empty_square_matches_brute_force_on_small_complexes() {
        for l in [
            fixtures::l_cycle(4),
            fixtures::l_cycle(5),
            fixtures::l_cycle(6),
            fixtures::l_octahedron(),
            fixtures::l_wedge_of_triangles(),
            fixtures::l_path(5),
        ] {
            let adj = l.adjacency();
            let n = l.n_vertices() as u32;
            let mut brute = None;
            'outer: for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        for d in 0..n {
                            let all = [a, b, c, d];
                            let mut sorted = all.to_vec();
                            sorted.sort_unstable();
                            sorted.dedup();
                            if sorted.len() != 4 {
                                continue;
                            }
                            let has = |x: u32, y: u32| adj[x as usize].contains(&y);
                            if has(a, b)
                                && has(b, c)
                                && has(c, d)
                                && has(d, a)
                                && !has(a, c)
                                && !has(b, d)
                            {
                                brute = Some(());
                                break 'outer;
                            }
                        }
                    }
                }
            }
            let found = find_empty_square(&l).unwrap();
            assert_eq!(found.is_some(), brute.is_some(), "on {:?}", l.vertex_names());
        }
    }

    #[test]
    fn default_torus_is_a_valid_counterexample_link() {
        let l = generate_torus_link((8, 0), (0, 6)).unwrap();
        let report = validate_counterexample_link(&l);
        assert_eq!(report.vertices, 48);
        assert_eq!(report.edges, 144);
        assert_eq!(report.triangles, 96);
        assert!(report.pass, "{report:?}");
    }

    #[test]
    fn five_cycle_fails_surface_check() {
        let report = validate_counterexample_link(&fixtures::l_cycle(5));
        assert!(!report.closed_surface);
        assert!(!report.pass);
    }

    #[test]
    fn octahedron_fails_6_cycle_and_empty_square_checks() {
        let report = validate_counterexample_link(&fixtures::l_octahedron());
        assert!(!report.all_vertex_links_6_cycles);
        assert!(report.empty_square.is_some());
        assert!(!report.pass);
    }

    #[test]
    fn degenerate_quotient_is_rejected() {
        assert!(generate_torus_link((1, 0), (0, 1)).is_err());
        assert!(generate_torus_link((2, 0), (4, 0)).is_err());
    }

    #[test]
    fn skewed_quotient_reduces_correctly() {
        // det = 48 with a skew basis; still a valid 48-vertex torus.
        let l = generate_torus_link((8, 2), (0, 6)).unwrap();
        assert_eq!(l.n_vertices(), 48);
        assert_eq!(l.count_dim(2), 96);
    }
}
