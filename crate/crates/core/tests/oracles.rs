//! Independent recomputations checked against the library.

mod common;

use std::collections::BTreeSet;

use num_traits::Zero;

use common::*;
use cremona::{is_self_stress, self_stress_basis, topology_report, FrameworkQ, Rational};

/// Unordered vertex pairs read straight off the face cycles.
fn edge_pairs(fw: &FrameworkQ) -> Vec<(usize, usize)> {
    let s = fw.complex();
    let mut set = BTreeSet::new();
    for f in s.face_ids() {
        let vs = s.face(f);
        for k in 0..vs.len() {
            let (a, b) = (vs[k].0, vs[(k + 1) % vs.len()].0);
            set.insert((a.min(b), a.max(b)));
        }
    }
    set.into_iter().collect()
}

/// Plain Gauss-Jordan rank over the rationals.
fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let k = rows[i][c].clone() / pivot.clone();
                let pivot_row = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(pivot_row).skip(c) {
                    *x -= y * k.clone();
                }
            }
        }
        r += 1;
    }
    r
}

fn stress_dimension(fw: &FrameworkQ) -> usize {
    let edges = edge_pairs(fw);
    let n = fw.complex().vertex_count();
    let mut rows = vec![vec![q(0); edges.len()]; 2 * n];
    for (j, &(a, b)) in edges.iter().enumerate() {
        let (pa, pb) = (&fw.positions()[a], &fw.positions()[b]);
        rows[2 * a][j] = pa.x.clone() - pb.x.clone();
        rows[2 * a + 1][j] = pa.y.clone() - pb.y.clone();
        rows[2 * b][j] = pb.x.clone() - pa.x.clone();
        rows[2 * b + 1][j] = pb.y.clone() - pa.y.clone();
    }
    edges.len() - rank(rows)
}

#[test]
fn stress_dimension_matches_dense_elimination() {
    for (name, fw) in catalogue() {
        let basis = self_stress_basis(&fw);
        assert_eq!(basis.dimension(), stress_dimension(&fw), "{name}");
        for w in &basis.vectors {
            assert!(is_self_stress(&fw, w).unwrap(), "{name}");
        }
    }
}

#[test]
fn edge_count_matches_face_cycles() {
    for (name, fw) in catalogue() {
        assert_eq!(fw.complex().edge_count(), edge_pairs(&fw).len(), "{name}");
    }
}

#[test]
fn euler_characteristic_from_counts() {
    for (name, fw) in catalogue() {
        let s = fw.complex();
        let chi = s.vertex_count() as i64 - edge_pairs(&fw).len() as i64 + s.face_count() as i64;
        let r = topology_report(s);
        assert_eq!(r.euler_characteristic, chi, "{name}");
        // b1 = 1 - chi with boundary, 2 - chi closed orientable, 1 - chi closed non-orientable.
        let b1 = match (r.is_closed, r.is_orientable) {
            (true, true) => 2 - chi,
            _ => 1 - chi,
        };
        assert_eq!(r.betti1_rank as i64, b1, "{name}");
    }
}

#[test]
fn known_surfaces() {
    let expect = |name: &str, chi: i64, closed: bool, orientable: bool| {
        let (_, fw) = catalogue().into_iter().find(|(n, _)| n == name).unwrap();
        let r = topology_report(fw.complex());
        assert_eq!(
            (r.euler_characteristic, r.is_closed, r.is_orientable),
            (chi, closed, orientable),
            "{name}"
        );
    };
    expect("paper-example", 0, true, true);
    expect("tetrahedron", 2, true, true);
    expect("fan-disk", 1, false, true);
    expect("grid-torus 4 3", 0, true, true);
    expect("grid-klein 4 4", 0, true, false);
    expect("mobius-strip 5", 0, false, false);
    expect("random-disk 2 9", 1, false, true);
}
