//! Bundled fixture generators shared by tests, the acceptance suite, and the
//! CLI. Everything here is deterministic.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::CubeComplex;
use crate::gf2::Gf2System;
use crate::simplicial::SimplicialComplex;

fn build(vertices: Vec<String>, cubes: Vec<Vec<String>>, basepoint: Option<&str>) -> CubeComplex {
    CubeComplex::new(vertices, &cubes, basepoint).expect("fixture is well-formed")
}

/// One square on vertices a, b, c, d (corner order [a, b, c, d]).
pub fn square() -> CubeComplex {
    build(
        vec!["a".into(), "b".into(), "c".into(), "d".into()],
        vec![vec!["a".into(), "b".into(), "c".into(), "d".into()]],
        Some("a"),
    )
}

/// One 3-cube, corners named by their bitmask.
pub fn cube3() -> CubeComplex {
    let vertices: Vec<String> = (0..8).map(|b| format!("{b:03b}")).collect();
    build(vertices.clone(), vec![vertices], Some("000"))
}

/// Path graph on n edges, vertices p0..pn.
pub fn path(n: usize) -> CubeComplex {
    let vertices: Vec<String> = (0..=n).map(|i| format!("p{i}")).collect();
    let cubes = (0..n)
        .map(|i| vec![format!("p{i}"), format!("p{}", i + 1)])
        .collect();
    build(vertices, cubes, Some("p0"))
}

/// A small tree: three branches of length 2 from a root.
pub fn tree() -> CubeComplex {
    let vertices: Vec<String> = ["r", "a1", "a2", "b1", "b2", "c1", "c2"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let cubes = vec![
        vec!["r".into(), "a1".into()],
        vec!["a1".into(), "a2".into()],
        vec!["r".into(), "b1".into()],
        vec!["b1".into(), "b2".into()],
        vec!["r".into(), "c1".into()],
        vec!["c1".into(), "c2".into()],
    ];
    build(vertices, cubes, Some("r"))
}

/// (n+1) x (n+1) square grid, vertices x{i}y{j}, basepoint at the center
/// cell x{n/2}y{n/2}.
pub fn z2_grid(n: usize) -> CubeComplex {
    let mut vertices = Vec::new();
    for i in 0..=n {
        for j in 0..=n {
            vertices.push(format!("x{i}y{j}"));
        }
    }
    let mut cubes = Vec::new();
    for i in 0..n {
        for j in 0..n {
            cubes.push(vec![
                format!("x{i}y{j}"),
                format!("x{}y{j}", i + 1),
                format!("x{i}y{}", j + 1),
                format!("x{}y{}", i + 1, j + 1),
            ]);
        }
    }
    let center = format!("x{}y{}", n / 2, n / 2);
    build(vertices, cubes, Some(&center))
}

fn z3_name(x: i32, y: i32, z: i32) -> String {
    format!("x{x}y{y}z{z}")
}

/// L1 ball of radius r in the Z^3 grid: full subcomplex on the lattice
/// points with |x|+|y|+|z| <= r (a cell survives iff all its corners do).
/// Basepoint at the origin.
pub fn z3_ball(r: i32) -> CubeComplex {
    let inside = |x: i32, y: i32, z: i32| x.abs() + y.abs() + z.abs() <= r;
    let mut vertices = Vec::new();
    for x in -r..=r {
        for y in -r..=r {
            for z in -r..=r {
                if inside(x, y, z) {
                    vertices.push(z3_name(x, y, z));
                }
            }
        }
    }
    let mut cubes = Vec::new();
    // Cells of each dimension anchored at their least corner; spanned axes
    // are chosen by bitmask.
    for x in -r..=r {
        for y in -r..=r {
            for z in -r..=r {
                for axes in 1u8..8 {
                    let d = axes.count_ones() as usize;
                    let span: Vec<usize> = (0..3).filter(|a| axes >> a & 1 == 1).collect();
                    let mut corners = Vec::with_capacity(1 << d);
                    let mut ok = true;
                    for b in 0..1usize << d {
                        let mut c = [x, y, z];
                        for (i, &a) in span.iter().enumerate() {
                            c[a] += (b >> i & 1) as i32;
                        }
                        ok &= inside(c[0], c[1], c[2]);
                        corners.push(z3_name(c[0], c[1], c[2]));
                    }
                    if ok {
                        cubes.push(corners);
                    }
                }
            }
        }
    }
    build(vertices, cubes, Some("x0y0z0"))
}

/// Two squares glued along two adjacent edges sharing the corner v; the link
/// of v collapses to a single edge.
pub fn hollow_digon() -> CubeComplex {
    build(
        vec!["v".into(), "u".into(), "w".into(), "p".into(), "q".into()],
        vec![
            vec!["v".into(), "u".into(), "w".into(), "p".into()],
            vec!["v".into(), "u".into(), "w".into(), "q".into()],
        ],
        Some("v"),
    )
}

/// Three squares in a cycle with a flip: the rung edges form one hyperplane
/// whose removal leaves a single component.
pub fn mobius_band() -> CubeComplex {
    build(
        vec![
            "a0".into(),
            "b0".into(),
            "a1".into(),
            "b1".into(),
            "a2".into(),
            "b2".into(),
        ],
        vec![
            vec!["a0".into(), "b0".into(), "a1".into(), "b1".into()],
            vec!["a1".into(), "b1".into(), "a2".into(), "b2".into()],
            vec!["a2".into(), "b2".into(), "b0".into(), "a0".into()],
        ],
        None,
    )
}

/// One square plus a pendant edge; the pendant vertex serves as a basepoint
/// off the square.
pub fn square_with_pendant() -> CubeComplex {
    build(
        vec![
            "a".into(),
            "b".into(),
            "c".into(),
            "d".into(),
            "p".into(),
        ],
        vec![
            vec!["a".into(), "b".into(), "c".into(), "d".into()],
            vec!["p".into(), "a".into()],
        ],
        Some("p"),
    )
}

fn l_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("s{i}")).collect()
}

/// L = a single vertex (RACG Z/2).
pub fn l_vertex() -> SimplicialComplex {
    SimplicialComplex::new(l_names(1), &[]).unwrap()
}

/// L = a single edge (RACG (Z/2)^2).
pub fn l_edge() -> SimplicialComplex {
    SimplicialComplex::new(l_names(2), &[vec!["s0".into(), "s1".into()]]).unwrap()
}

/// L = a full triangle (RACG (Z/2)^3).
pub fn l_triangle() -> SimplicialComplex {
    SimplicialComplex::new(l_names(3), &[vec!["s0".into(), "s1".into(), "s2".into()]]).unwrap()
}

/// L = path graph with k vertices.
pub fn l_path(k: usize) -> SimplicialComplex {
    let simplices: Vec<Vec<String>> = (0..k.saturating_sub(1))
        .map(|i| vec![format!("s{i}"), format!("s{}", i + 1)])
        .collect();
    SimplicialComplex::new(l_names(k), &simplices).unwrap()
}

/// L = cycle graph with k vertices (k >= 3).
pub fn l_cycle(k: usize) -> SimplicialComplex {
    assert!(k >= 3);
    let simplices: Vec<Vec<String>> = (0..k)
        .map(|i| vec![format!("s{i}"), format!("s{}", (i + 1) % k)])
        .collect();
    SimplicialComplex::new(l_names(k), &simplices).unwrap()
}

/// Octahedron boundary: the 3-fold join of pairs of non-adjacent vertices.
/// Flag, but every vertex link is a 4-cycle.
pub fn l_octahedron() -> SimplicialComplex {
    let names = l_names(6);
    // Antipodal pairs: (0,1), (2,3), (4,5).
    let mut simplices = Vec::new();
    for a in [0, 1] {
        for b in [2, 3] {
            for c in [4, 5] {
                simplices.push(vec![format!("s{a}"), format!("s{b}"), format!("s{c}")]);
            }
        }
    }
    SimplicialComplex::new(names, &simplices).unwrap()
}

/// Two triangles sharing a single vertex s0.
pub fn l_wedge_of_triangles() -> SimplicialComplex {
    SimplicialComplex::new(
        l_names(5),
        &[
            vec!["s0".into(), "s1".into(), "s2".into()],
            vec!["s0".into(), "s3".into(), "s4".into()],
        ],
    )
    .unwrap()
}

/// Random sparse GF(2) system with `n` rows and columns and at most
/// `max_weight` nonzeros per row, made consistent by deriving the right-hand
/// side from a planted solution. Returns the system and the planted vector.
pub fn random_consistent_gf2(seed: u64, n: usize, max_weight: usize) -> (Gf2System, Vec<bool>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let planted: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
    let mut system = Gf2System::new(n);
    for _ in 0..n {
        let w = rng.gen_range(1..=max_weight);
        let mut cols: Vec<usize> = (0..w).map(|_| rng.gen_range(0..n)).collect();
        cols.sort_unstable();
        cols.dedup();
        let rhs = cols.iter().fold(false, |acc, &c| acc ^ planted[c]);
        system.add_row(&cols, rhs);
    }
    (system, planted)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z3_ball_counts() {
        let c = z3_ball(1);
        // Octahedron of 7 lattice points: the 6 axis edges survive but no
        // square or cube fits inside.
        assert_eq!(c.n_vertices(), 7);
        assert_eq!(c.n_edges(), 6);
        assert_eq!(c.n_squares(), 0);
        let c = z3_ball(3);
        assert!(c.cubes_of_dim(3).len() > 0);
        // Full subcomplex: every vertex reachable from the origin.
        let dist = c.distances_from(c.basepoint().unwrap());
        assert!(dist.iter().all(|&d| d != u32::MAX));
    }

    #[test]
    fn octahedron_links_are_4_cycles() {
        let l = l_octahedron();
        assert!(l.is_flag());
        for v in 0..6 {
            assert!(l.link(v).is_cycle_of_length(4));
        }
    }
}
