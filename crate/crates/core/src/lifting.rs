//! Liftings of self-stresses to piecewise-affine height functions.
//!
//! Heights are taken along the breadth-first dual spanning tree from the
//! base face. A face's height is relative to its tree orientation; on a
//! non-orientable surface the two faces of a cut edge may carry
//! incompatible tree orientations, and then their heights match up to sign.

use crate::affine::AffineFunction;
use crate::cotree::{cotree_loop_basis, CotreeLoopBasis};
use crate::framework::{is_self_stress, Framework, StressVector};
use crate::linalg::{Matrix, SolveError};
use crate::monodromy::monodromy_matrix;
use crate::path::LiftError;
use crate::scalar::Scalar;
use crate::topology::{EdgeId, FaceId, Orientation, SurfaceComplex};

#[derive(Debug, Clone, PartialEq)]
pub struct LiftingResult<T> {
    pub base_face: FaceId,
    /// Indexed by face id.
    pub heights: Vec<AffineFunction<T>>,
    /// Tree orientation each height refers to, indexed by face id.
    pub orientations: Vec<Orientation>,
}

impl<T: Scalar> LiftingResult<T> {
    pub fn height(&self, f: FaceId) -> &AffineFunction<T> {
        &self.heights[f.0]
    }

    /// `+1` if crossing `e` out of `f` (in its recorded orientation) arrives
    /// at the other face in that face's recorded orientation, else `-1`.
    pub fn crossing_sign(&self, s: &SurfaceComplex, e: EdgeId, f: FaceId) -> Option<T> {
        let g = s.other_face(e, f)?;
        let arrival = s.agreeing_orientation(f, self.orientations[f.0], e, g);
        Some(if arrival == self.orientations[g.0] {
            T::one()
        } else {
            -T::one()
        })
    }

    /// Height jump across interior edge `e` at each endpoint, measured as
    /// `h_g - h_f` with `g` read in the orientation arriving from `f`
    /// (where `f = faces[0]`). Zero at both endpoints means the lifting
    /// is continuous across `e`.
    pub fn jump_at_endpoints(&self, fw: &Framework<T>, e: EdgeId) -> Option<[T; 2]> {
        let s = fw.complex();
        let edge = s.edge(e);
        let [f, g] = [edge.faces[0], *edge.faces.get(1)?];
        let sign = self.crossing_sign(s, e, f)?;
        let diff = self.heights[g.0].scale(&sign) - self.heights[f.0].clone();
        let (a, b) = edge.ends;
        Some([a, b].map(|v| diff.eval_at(fw.position(v))))
    }
}

/// A lifting over the dual spanning tree, plus the lift around each
/// cotree loop (the jump across its cut edge).
#[derive(Debug, Clone, PartialEq)]
pub struct FundamentalDomainLifting<T> {
    pub lifting: LiftingResult<T>,
    pub cut_edges: Vec<EdgeId>,
    pub monodromy_generators: Vec<(EdgeId, AffineFunction<T>)>,
}

impl<T: Scalar> FundamentalDomainLifting<T> {
    pub fn is_single_valued(&self) -> bool {
        self.monodromy_generators.iter().all(|(_, m)| m.is_zero())
    }

    pub fn generator(&self, e: EdgeId) -> Option<&AffineFunction<T>> {
        self.monodromy_generators
            .iter()
            .find(|(c, _)| *c == e)
            .map(|(_, m)| m)
    }
}

fn tree_heights<T: Scalar>(
    fw: &Framework<T>,
    w: &StressVector<T>,
    basis: &CotreeLoopBasis,
) -> LiftingResult<T> {
    let s = fw.complex();
    let mut heights = vec![AffineFunction::zero(); s.face_count()];
    for &g in &basis.discovery_order()[1..] {
        let (f, e) = basis.parent(g).expect("non-root has a parent");
        let (p, q) = s.directed_edge(f, basis.tree_orientation(f), e);
        let step = AffineFunction::edge_function(fw.position(p), fw.position(q)).scale(w.weight(e));
        heights[g.0] = heights[f.0].clone() + step;
    }
    LiftingResult {
        base_face: basis.base(),
        heights,
        orientations: s.face_ids().map(|f| basis.tree_orientation(f)).collect(),
    }
}

fn prepare<T: Scalar>(
    fw: &Framework<T>,
    w: &StressVector<T>,
    base: FaceId,
) -> Result<CotreeLoopBasis, LiftError> {
    let basis = cotree_loop_basis(fw.complex(), base)?;
    if !is_self_stress(fw, w)? {
        return Err(LiftError::NotSelfStress);
    }
    Ok(basis)
}

fn edge_name(s: &SurfaceComplex, e: EdgeId) -> String {
    let (a, b) = s.edge(e).ends;
    format!("{}-{}", s.vertex_label(a), s.vertex_label(b))
}

/// The lifting of a monodromy-free self-stress, zero on `base`.
pub fn lift_all_faces<T: Scalar>(
    fw: &Framework<T>,
    w: &StressVector<T>,
    base: FaceId,
) -> Result<LiftingResult<T>, LiftError> {
    let basis = prepare(fw, w, base)?;
    let m = monodromy_matrix(fw, &basis);
    for (l, e) in m.cut_edges.iter().enumerate() {
        if !m.evaluate_loop(l, w).is_zero() {
            return Err(LiftError::NotMonodromyFree {
                edge: edge_name(fw.complex(), *e),
            });
        }
    }
    Ok(tree_heights(fw, w, &basis))
}

pub fn fundamental_domain_lifting<T: Scalar>(
    fw: &Framework<T>,
    w: &StressVector<T>,
    base: FaceId,
) -> Result<FundamentalDomainLifting<T>, LiftError> {
    let basis = prepare(fw, w, base)?;
    let m = monodromy_matrix(fw, &basis);
    let monodromy_generators = m.cut_edges.iter().copied().zip(m.evaluate(w)).collect();
    Ok(FundamentalDomainLifting {
        lifting: tree_heights(fw, w, &basis),
        cut_edges: m.cut_edges,
        monodromy_generators,
    })
}

/// Recovers the stress whose lifting from `base` has the given heights.
///
/// Tree edges must fold exactly. A cut edge whose jump folds is read off
/// directly; otherwise (and on boundary edges) the weight is fixed by
/// equilibrium, which must determine it uniquely.
pub fn recover_stress<T: Scalar>(
    fw: &Framework<T>,
    base: FaceId,
    heights: &[AffineFunction<T>],
) -> Result<StressVector<T>, LiftError> {
    recover(fw, base, heights, None)
}

/// As [`recover_stress`], where `generators` gives the lift around each
/// cut edge's loop. Every interior edge must then fold exactly.
pub fn recover_stress_with_periods<T: Scalar>(
    fw: &Framework<T>,
    base: FaceId,
    heights: &[AffineFunction<T>],
    generators: &[(EdgeId, AffineFunction<T>)],
) -> Result<StressVector<T>, LiftError> {
    recover(fw, base, heights, Some(generators))
}

fn recover<T: Scalar>(
    fw: &Framework<T>,
    base: FaceId,
    heights: &[AffineFunction<T>],
    generators: Option<&[(EdgeId, AffineFunction<T>)]>,
) -> Result<StressVector<T>, LiftError> {
    let s = fw.complex();
    if heights.len() != s.face_count() {
        return Err(LiftError::MissingFaceHeight {
            expected: s.face_count(),
            got: heights.len(),
        });
    }
    let basis = cotree_loop_basis(s, base)?;
    let mut known: Vec<Option<T>> = vec![None; s.edge_count()];

    for &g in &basis.discovery_order()[1..] {
        let (f, e) = basis.parent(g).expect("non-root has a parent");
        let (p, q) = s.directed_edge(f, basis.tree_orientation(f), e);
        let jump = heights[g.0].clone() - heights[f.0].clone();
        let w = jump
            .edge_multiple(fw.position(p), fw.position(q))
            .ok_or_else(|| LiftError::FoldMismatch {
                edge: edge_name(s, e),
            })?;
        known[e.0] = Some(w);
    }

    for &e in basis.cotree_edges() {
        let edge = s.edge(e);
        let (f, g) = (edge.faces[0], edge.faces[1]);
        let of = basis.tree_orientation(f);
        let (p, q) = s.directed_edge(f, of, e);
        let sign = if s.agreeing_orientation(f, of, e, g) == basis.tree_orientation(g) {
            T::one()
        } else {
            -T::one()
        };
        let mut jump = heights[g.0].scale(&sign) - heights[f.0].clone();
        if let Some(gens) = generators {
            let m = gens
                .iter()
                .find(|(c, _)| *c == e)
                .map(|(_, m)| m.clone())
                .unwrap_or_else(AffineFunction::zero);
            jump = jump + m;
        }
        match jump.edge_multiple(fw.position(p), fw.position(q)) {
            Some(w) => known[e.0] = Some(w),
            None if generators.is_some() => {
                return Err(LiftError::FoldMismatch {
                    edge: edge_name(s, e),
                })
            }
            None => {}
        }
    }

    let unknown: Vec<usize> = (0..s.edge_count())
        .filter(|&e| known[e].is_none())
        .collect();
    let mut weights: Vec<T> = known
        .iter()
        .map(|w| w.clone().unwrap_or_else(T::zero))
        .collect();
    let a = fw.equilibrium_matrix();
    let residual = a.mul_vec(&weights);
    if unknown.is_empty() {
        return if residual.iter().all(|r| r.is_negligible()) {
            Ok(StressVector::from_weights(fw, weights)?)
        } else {
            Err(LiftError::InconsistentStress)
        };
    }
    let sub = Matrix::from_rows(
        unknown.len(),
        (0..a.rows())
            .map(|r| unknown.iter().map(|&c| a.get(r, c).clone()).collect())
            .collect(),
    );
    let rhs: Vec<T> = residual.into_iter().map(|r| -r).collect();
    let solved = sub.solve_unique(&rhs).map_err(|err| match err {
        SolveError::Inconsistent => LiftError::InconsistentStress,
        SolveError::Underdetermined { free } => LiftError::UnderdeterminedStress { free },
    })?;
    for (&e, w) in unknown.iter().zip(solved) {
        weights[e] = w;
    }
    Ok(StressVector::from_weights(fw, weights)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::framework::Point;
    use crate::scalar::rational;
    use crate::topology::{validate_surface, RawSurface};
    use num_rational::BigRational;

    fn fan() -> (Framework<BigRational>, StressVector<BigRational>) {
        let s = validate_surface(&RawSurface::from_faces([
            ("OAB", vec!["O", "A", "B"]),
            ("OBC", vec!["O", "B", "C"]),
            ("OCA", vec!["O", "C", "A"]),
        ]))
        .unwrap();
        let pts = [(1, 1), (0, 0), (3, 0), (0, 3)];
        let fw = Framework::new(
            s,
            pts.iter()
                .map(|&(x, y)| Point::new(rational(x, 1), rational(y, 1)))
                .collect(),
        )
        .unwrap();
        let (one, rim) = (rational(1, 1), rational(-1, 3));
        let w = StressVector::from_labeled(
            &fw,
            [
                ("O", "A", one.clone()),
                ("O", "B", one.clone()),
                ("O", "C", one),
                ("A", "B", rim.clone()),
                ("B", "C", rim.clone()),
                ("C", "A", rim),
            ],
        )
        .unwrap();
        (fw, w)
    }

    #[test]
    fn fan_lifts_to_a_cone() {
        let (fw, w) = fan();
        let l = lift_all_faces(&fw, &w, FaceId(0)).unwrap();
        assert!(l.height(FaceId(0)).is_zero());
        assert_ne!(l.heights[1], l.heights[2]);
        let o = fw.position(fw.complex().vertex_by_label("O").unwrap());
        let apex: Vec<_> = l.heights.iter().map(|h| h.eval_at(o)).collect();
        assert!(apex.iter().all(|z| *z == apex[0]));
        for e in fw.complex().edge_ids() {
            if let Some(j) = l.jump_at_endpoints(&fw, e) {
                assert!(j.iter().all(|z| z == &rational(0, 1)));
            }
        }
    }

    #[test]
    fn recover_round_trips_on_fan() {
        let (fw, w) = fan();
        let l = lift_all_faces(&fw, &w, FaceId(1)).unwrap();
        assert_eq!(recover_stress(&fw, FaceId(1), &l.heights).unwrap(), w);
    }

    #[test]
    fn flat_heights_give_zero_stress() {
        let (fw, _) = fan();
        let flat = vec![AffineFunction::constant(rational(2, 1)); 3];
        assert!(recover_stress(&fw, FaceId(0), &flat).unwrap().is_zero());
    }

    #[test]
    fn fold_mismatch_and_missing_heights() {
        let (fw, _) = fan();
        let mut bad = vec![AffineFunction::zero(); 3];
        bad[1] = AffineFunction::constant(rational(1, 1));
        assert!(matches!(
            recover_stress(&fw, FaceId(0), &bad),
            Err(LiftError::FoldMismatch { .. })
        ));
        assert!(matches!(
            recover_stress(&fw, FaceId(0), &bad[..2]),
            Err(LiftError::MissingFaceHeight {
                expected: 3,
                got: 2
            })
        ));
    }

    #[test]
    fn non_self_stress_is_rejected() {
        let (fw, mut w) = fan();
        w.set_weight(EdgeId(0), rational(5, 1));
        assert_eq!(
            lift_all_faces(&fw, &w, FaceId(0)),
            Err(LiftError::NotSelfStress)
        );
        assert!(matches!(
            fundamental_domain_lifting(&fw, &w, FaceId(0)),
            Err(LiftError::NotSelfStress)
        ));
    }

    #[test]
    fn zero_stress_gives_flat_domain() {
        let (fw, _) = fan();
        let d = fundamental_domain_lifting(&fw, &StressVector::zero(6), FaceId(2)).unwrap();
        assert!(d.is_single_valued());
        assert!(d.lifting.heights.iter().all(|h| h.is_zero()));
    }
}
