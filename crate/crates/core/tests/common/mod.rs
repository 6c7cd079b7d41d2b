#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use cremona::fixtures::{
    fan_disk, grid_klein, grid_torus, mobius_strip, paper_example, random_disk,
};
use cremona::{
    move1, move1_inverse, move2, move2_inverse, orient_face_path, path_lift, rational,
    self_stress_basis, validate_surface, vertex_loop, AffineFunctionQ, FaceId, FacePath,
    FrameworkQ, Orientation, OrientedFacePath, Point, Rational, RawSurface, StressVectorQ,
    SurfaceComplex, VertexId,
};

pub fn q(n: i64) -> Rational {
    rational(n, 1)
}

/// Four triangles on `K4`, drawn with one vertex inside the others.
pub fn tetrahedron() -> FrameworkQ {
    let s = validate_surface(&RawSurface::from_faces([
        ("abc", vec!["a", "b", "c"]),
        ("adb", vec!["a", "d", "b"]),
        ("bdc", vec!["b", "d", "c"]),
        ("cda", vec!["c", "d", "a"]),
    ]))
    .unwrap();
    let pts = [(0, 0), (6, 0), (1, 5), (2, 2)];
    FrameworkQ::new(
        s,
        pts.iter().map(|&(x, y)| Point::new(q(x), q(y))).collect(),
    )
    .unwrap()
}

/// Every fixture family the property suites sweep, by name.
pub fn catalogue() -> Vec<(String, FrameworkQ)> {
    let mut out = vec![
        ("paper-example".to_string(), paper_example()),
        ("fan-disk".to_string(), fan_disk()),
        ("tetrahedron".to_string(), tetrahedron()),
    ];
    for (m, n) in [(3, 3), (4, 3), (4, 4)] {
        out.push((format!("grid-torus {m} {n}"), grid_torus(m, n).unwrap()));
        out.push((format!("grid-klein {m} {n}"), grid_klein(m, n).unwrap()));
    }
    for m in [3, 5] {
        out.push((format!("mobius-strip {m}"), mobius_strip(m).unwrap()));
    }
    for (seed, v) in [(1, 6), (2, 9), (3, 12)] {
        out.push((
            format!("random-disk {seed} {v}"),
            random_disk(seed, v).unwrap(),
        ));
    }
    out
}

pub fn random_combination(fw: &FrameworkQ, rng: &mut ChaCha8Rng) -> StressVectorQ {
    let basis = self_stress_basis(fw);
    let coeffs: Vec<Rational> = basis
        .vectors
        .iter()
        .map(|_| q(rng.gen_range(-3..=3)))
        .collect();
    StressVectorQ::combination(fw.complex().edge_count(), &basis.vectors, &coeffs)
}

pub fn random_walk(s: &SurfaceComplex, rng: &mut ChaCha8Rng, max_len: usize) -> FacePath {
    let mut path = FacePath::single(FaceId(rng.gen_range(0..s.face_count())));
    for _ in 0..rng.gen_range(0..=max_len) {
        let nbrs = s.dual_neighbors(path.end());
        let Some(&(g, e)) = nbrs.choose(rng) else {
            break;
        };
        path.faces.push(g);
        path.crossings.push(e);
    }
    path
}

pub fn random_oriented_walk(
    s: &SurfaceComplex,
    rng: &mut ChaCha8Rng,
    max_len: usize,
) -> OrientedFacePath {
    let o = if rng.gen_bool(0.5) {
        Orientation::Positive
    } else {
        Orientation::Negative
    };
    orient_face_path(s, &random_walk(s, rng, max_len), o).unwrap()
}

/// Applies one randomly chosen elementary move (or inverse) that is valid
/// for `path`, or returns `None` after a bounded number of attempts.
pub fn random_move(
    s: &SurfaceComplex,
    path: &OrientedFacePath,
    rng: &mut ChaCha8Rng,
) -> Option<OrientedFacePath> {
    for _ in 0..20 {
        if path.is_empty() {
            return None;
        }
        let k = rng.gen_range(0..path.len());
        let e = path.crossings[k].edge;
        let edge = s.edge(e);
        let attempt = match rng.gen_range(0..4) {
            0 => {
                let g = *edge.faces.choose(rng).unwrap();
                let aux = *s.face_edges(g).choose(rng).unwrap();
                move1(s, path, k, g, aux)
            }
            1 => {
                let pivot = if rng.gen_bool(0.5) {
                    edge.ends.0
                } else {
                    edge.ends.1
                };
                move2(s, path, k, pivot)
            }
            2 => move1_inverse(s, path, k),
            _ => {
                let pivot = if rng.gen_bool(0.5) {
                    edge.ends.0
                } else {
                    edge.ends.1
                };
                move2_inverse(s, path, k, pivot)
            }
        };
        if let Ok(p) = attempt {
            return Some(p);
        }
    }
    None
}

pub fn interior_vertices(s: &SurfaceComplex) -> Vec<VertexId> {
    s.vertices().filter(|&v| s.is_interior_vertex(v)).collect()
}

pub fn vertex_loop_lift(fw: &FrameworkQ, w: &StressVectorQ, v: VertexId) -> AffineFunctionQ {
    let s = fw.complex();
    let l = orient_face_path(s, &vertex_loop(s, v).unwrap(), Orientation::Positive).unwrap();
    path_lift(fw, w, &l).unwrap()
}

/// The row of faces `q0_0, q1_0, …` once around a grid, back to `q0_0`.
pub fn grid_row_loop(s: &SurfaceComplex, m: usize) -> FacePath {
    let face = |i: usize| s.face_by_label(&format!("q{}_0", i % m)).unwrap();
    let mut path = FacePath::single(face(0));
    for i in 0..m {
        let shared = s
            .face_edges(face(i))
            .iter()
            .copied()
            .find(|&e| s.face_has_edge(face(i + 1), e))
            .unwrap();
        path.faces.push(face(i + 1));
        path.crossings.push(shared);
    }
    path
}

/// The column of faces `q0_0, q0_1, …, q0_{n-1}`, then across the seam.
pub fn grid_column_loop(s: &SurfaceComplex, n: usize) -> FacePath {
    let face = |j: usize| s.face_by_label(&format!("q0_{j}")).unwrap();
    let mut path = FacePath::single(face(0));
    for j in 1..n {
        let shared = s
            .face_edges(face(j - 1))
            .iter()
            .copied()
            .find(|&e| s.face_has_edge(face(j), e))
            .unwrap();
        path.faces.push(face(j));
        path.crossings.push(shared);
    }
    let top = face(n - 1);
    let v00 = s.vertex_by_label("v0_0").unwrap();
    let seam = s
        .face_edges(top)
        .iter()
        .copied()
        .find(|&e| {
            let (a, b) = s.edge(e).ends;
            let labels = [s.vertex_label(a), s.vertex_label(b)];
            labels.iter().all(|l| l.ends_with("_0")) && (a == v00 || b == v00)
        })
        .unwrap();
    path.faces.push(s.other_face(seam, top).unwrap());
    path.crossings.push(seam);
    // With the flipped seam this lands on q{m-1}_0, next to q0_0.
    if path.end() != face(0) {
        let back = s
            .face_edges(path.end())
            .iter()
            .copied()
            .find(|&e| s.face_has_edge(face(0), e))
            .unwrap();
        path.faces.push(face(0));
        path.crossings.push(back);
    }
    path
}

/// Whether the integer vector `target` lies in the GF(2) span of `rows`.
pub fn in_span_mod2(rows: &[Vec<i64>], target: &[i64]) -> bool {
    let bit = |x: i64| x.rem_euclid(2) as u8;
    let mut basis: Vec<Vec<u8>> = Vec::new();
    let reduce = |basis: &Vec<Vec<u8>>, mut v: Vec<u8>| {
        for b in basis {
            let lead = b.iter().position(|&x| x == 1).unwrap();
            if v[lead] == 1 {
                for (x, y) in v.iter_mut().zip(b) {
                    *x ^= y;
                }
            }
        }
        v
    };
    for r in rows {
        let v = reduce(&basis, r.iter().map(|&x| bit(x)).collect());
        if v.contains(&1) {
            let lead = v.iter().position(|&x| x == 1).unwrap();
            for b in basis.iter_mut() {
                if b[lead] == 1 {
                    for (x, y) in b.iter_mut().zip(&v) {
                        *x ^= y;
                    }
                }
            }
            basis.push(v);
        }
    }
    reduce(&basis, target.iter().map(|&x| bit(x)).collect())
        .iter()
        .all(|&x| x == 0)
}

/// Exact decimal rounding of a rational to `digits` significant digits
/// (half away from zero), as a string that parses as `f64`.
pub fn round_significant(x: &Rational, digits: usize) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let neg = x.is_negative();
    let a = x.abs();
    let ten = Rational::from_integer(BigInt::from(10));
    // Find e with 10^(digits-1) <= a * 10^e < 10^digits.
    let lo = Rational::from_integer(BigInt::from(10).pow(digits as u32 - 1));
    let hi = lo.clone() * ten.clone();
    let mut e: i64 = 0;
    let mut scaled = a.clone();
    while scaled < lo {
        scaled *= ten.clone();
        e += 1;
    }
    while scaled >= hi {
        scaled /= ten.clone();
        e -= 1;
    }
    let half = rational(1, 2);
    let mut m = (scaled + half).floor().to_integer();
    if m == hi.to_integer() {
        m /= 10;
        e -= 1;
    }
    format!("{}{}e{}", if neg { "-" } else { "" }, m, -e)
}
