use cremona::fixtures::{paper_example, paper_reference_heights};
use cremona::{
    cotree_loop_basis, fundamental_domain_lifting, is_self_stress, lift_all_faces,
    monodromy_free_basis, monodromy_signature, rational, recover_stress, self_stress_basis,
    AffineFunctionQ, FaceId, FrameworkQ, LiftError, StressVectorQ,
};

fn reference_heights(fw: &FrameworkQ) -> Vec<AffineFunctionQ> {
    let (table, _) = paper_reference_heights();
    let mut heights = vec![AffineFunctionQ::zero(); fw.complex().face_count()];
    for (label, h) in table {
        heights[fw.complex().face_by_label(label).unwrap().0] = h;
    }
    heights
}

fn golden_stress(fw: &FrameworkQ) -> StressVectorQ {
    let base = fw.complex().face_by_label("f0").unwrap();
    recover_stress(fw, base, &reference_heights(fw)).unwrap()
}

/// Weights read off by hand from the fold equations at each edge.
fn hand_weight(a: &str, b: &str) -> i64 {
    let key = |x: &str, y: &str| {
        if x < y {
            format!("{x}{y}")
        } else {
            format!("{y}{x}")
        }
    };
    match key(a, b).as_str() {
        "p1p4" | "p1p7" => 8,
        "p4p7" => -4,
        "p5p6" | "p5p9" => -8,
        "p6p9" => 4,
        "p4p6" | "p7p9" => 3,
        "p1p5" => -6,
        _ => 0,
    }
}

#[test]
fn recovered_stress_matches_hand_oracle() {
    let fw = paper_example();
    let w = golden_stress(&fw);
    let s = fw.complex();
    for e in s.edge_ids() {
        let (a, b) = s.edge(e).ends;
        assert_eq!(
            w.weight(e),
            &rational(hand_weight(s.vertex_label(a), s.vertex_label(b)), 1),
            "edge {}{}",
            s.vertex_label(a),
            s.vertex_label(b)
        );
    }
    assert!(is_self_stress(&fw, &w).unwrap());
    assert_eq!(self_stress_basis(&fw).dimension(), 4);
}

#[test]
fn fundamental_domain_reproduces_reference_modulo_32() {
    let fw = paper_example();
    let w = golden_stress(&fw);
    let base = fw.complex().face_by_label("f0").unwrap();
    let d = fundamental_domain_lifting(&fw, &w, base).unwrap();
    let reference = reference_heights(&fw);
    for (f, h) in d.lifting.heights.iter().enumerate() {
        let diff = h.clone() - reference[f].clone();
        assert!(diff.is_constant(), "face {f}: {h}");
        assert!(
            cremona::scalar::is_multiple_of(&diff.c, &rational(32, 1)),
            "face {f}: {h}"
        );
    }
    assert!(!d.is_single_valued());
    for (_, m) in &d.monodromy_generators {
        assert!(m.is_constant());
        assert!(cremona::scalar::is_multiple_of(&m.c, &rational(32, 1)));
    }
    assert!(matches!(
        lift_all_faces(&fw, &w, base),
        Err(LiftError::NotMonodromyFree { .. })
    ));
}

#[test]
fn signature_has_one_trivial_and_one_32_generator() {
    let fw = paper_example();
    let w = golden_stress(&fw);
    let basis = cotree_loop_basis(fw.complex(), FaceId(0)).unwrap();
    let sig = monodromy_signature(&fw, &w, &basis);
    assert_eq!(sig.representatives.len(), 2);
    assert_eq!(sig.trivial_count(), 1);
    assert_eq!(sig.image_rank, 1);
    assert_eq!(
        sig.lattice_generator,
        Some(AffineFunctionQ::constant(rational(32, 1)))
    );
    let free = monodromy_free_basis(&fw);
    assert!(!free.contains(&w));
}
