//! Oriented face-paths, elementary lifts and the two elementary homotopy
//! moves.
//!
//! Orientation is stored per step, not per face: on a non-orientable
//! surface a path may revisit a face with the opposite orientation. When a
//! step crosses into a different face, that face is oriented to agree with
//! the previous one (the two boundaries run along the crossing edge in
//! opposite directions). A step that stays on the same face keeps its
//! orientation and lifts to zero.

use thiserror::Error;

use crate::affine::AffineFunction;
use crate::cotree::FacePath;
use crate::framework::{Framework, StressError, StressVector};
use crate::scalar::Scalar;
use crate::topology::{EdgeId, FaceId, Orientation, SurfaceComplex, TopologyError, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LiftError {
    #[error("step {position}: edge is not shared by the faces it joins")]
    NotAdjacent { position: usize },
    #[error("path has {faces} faces but {crossings} crossings")]
    LengthMismatch { faces: usize, crossings: usize },
    #[error("{0}")]
    PreconditionViolated(String),
    #[error("vertex {0} is on the boundary; its faces do not form a loop")]
    BoundaryVertex(String),
    #[error("stress is not a self-stress")]
    NotSelfStress,
    #[error("stress has nonzero monodromy around the loop crossing {edge}")]
    NotMonodromyFree { edge: String },
    #[error("heights do not fold along edge {edge}")]
    FoldMismatch { edge: String },
    #[error("heights leave {free} edge weight(s) undetermined")]
    UnderdeterminedStress { free: usize },
    #[error("heights are not the lifting of any self-stress")]
    InconsistentStress,
    #[error("expected {expected} face heights, got {got}")]
    MissingFaceHeight { expected: usize, got: usize },
    #[error(transparent)]
    Stress(#[from] StressError),
    #[error(transparent)]
    Topology(#[from] TopologyError),
}

/// A crossing edge directed as the earlier face's oriented boundary runs
/// along it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub edge: EdgeId,
    pub from: VertexId,
    pub to: VertexId,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrientedFacePath {
    pub steps: Vec<(FaceId, Orientation)>,
    pub crossings: Vec<Crossing>,
}

impl OrientedFacePath {
    pub fn len(&self) -> usize {
        self.crossings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.crossings.is_empty()
    }

    pub fn start(&self) -> (FaceId, Orientation) {
        self.steps[0]
    }

    pub fn end(&self) -> (FaceId, Orientation) {
        *self.steps.last().expect("paths have at least one step")
    }

    pub fn faces(&self) -> Vec<FaceId> {
        self.steps.iter().map(|&(f, _)| f).collect()
    }

    pub fn unoriented(&self) -> FacePath {
        FacePath {
            faces: self.faces(),
            crossings: self.crossings.iter().map(|c| c.edge).collect(),
        }
    }

    /// The same faces in reverse order, starting from the final orientation.
    pub fn reversed(&self, s: &SurfaceComplex) -> OrientedFacePath {
        let (_, o) = self.end();
        orient_face_path(s, &self.unoriented().reversed(), o)
            .expect("reversal of a valid path is valid")
    }
}

/// Orients `path` starting from `initial` on its first face.
pub fn orient_face_path(
    s: &SurfaceComplex,
    path: &FacePath,
    initial: Orientation,
) -> Result<OrientedFacePath, LiftError> {
    if path.faces.len() != path.crossings.len() + 1 {
        return Err(LiftError::LengthMismatch {
            faces: path.faces.len(),
            crossings: path.crossings.len(),
        });
    }
    for &f in &path.faces {
        if f.0 >= s.face_count() {
            return Err(TopologyError::UnknownFace(format!("#{}", f.0)).into());
        }
    }
    let mut steps = vec![(path.faces[0], initial)];
    let mut crossings = Vec::with_capacity(path.crossings.len());
    for (k, &e) in path.crossings.iter().enumerate() {
        let (f, o) = steps[k];
        let g = path.faces[k + 1];
        if e.0 >= s.edge_count() || !s.face_has_edge(f, e) || !s.face_has_edge(g, e) {
            return Err(LiftError::NotAdjacent { position: k });
        }
        let (from, to) = s.directed_edge(f, o, e);
        crossings.push(Crossing { edge: e, from, to });
        let next = if f == g {
            o
        } else {
            s.agreeing_orientation(f, o, e, g)
        };
        steps.push((g, next));
    }
    Ok(OrientedFacePath { steps, crossings })
}

/// Lift contributed by crossing `crossing` from `from` into `to`:
/// `x ↦ w(pq) · det(p - q, p - x)` for distinct faces, zero otherwise.
pub fn elementary_lift<T: Scalar>(
    fw: &Framework<T>,
    w: &StressVector<T>,
    from: FaceId,
    to: FaceId,
    crossing: (VertexId, VertexId),
) -> Result<AffineFunction<T>, LiftError> {
    let s = fw.complex();
    let (p, q) = crossing;
    let label = |v: VertexId| {
        s.vertex_labels()
            .get(v.0)
            .cloned()
            .unwrap_or_else(|| format!("#{}", v.0))
    };
    let e = s
        .edge_between(p, q)
        .ok_or_else(|| StressError::UnknownEdgeKey(label(p), label(q)))?;
    if !s.face_has_edge(from, e) || !s.face_has_edge(to, e) {
        return Err(LiftError::NotAdjacent { position: 0 });
    }
    if from == to {
        return Ok(AffineFunction::zero());
    }
    Ok(AffineFunction::edge_function(fw.position(p), fw.position(q)).scale(w.weight(e)))
}

/// Sum of the elementary lifts along `path`.
pub fn path_lift<T: Scalar>(
    fw: &Framework<T>,
    w: &StressVector<T>,
    path: &OrientedFacePath,
) -> Result<AffineFunction<T>, LiftError> {
    let mut total = AffineFunction::zero();
    for (k, c) in path.crossings.iter().enumerate() {
        let lift = elementary_lift(fw, w, path.steps[k].0, path.steps[k + 1].0, (c.from, c.to))
            .map_err(|err| match err {
                LiftError::NotAdjacent { .. } => LiftError::NotAdjacent { position: k },
                other => other,
            })?;
        total = total + lift;
    }
    Ok(total)
}

fn check_position(path: &OrientedFacePath, position: usize) -> Result<(), LiftError> {
    if position >= path.crossings.len() {
        return Err(LiftError::PreconditionViolated(format!(
            "position {position} is past the last crossing ({})",
            path.crossings.len()
        )));
    }
    Ok(())
}

/// First elementary move: replaces step `position` (f_i → f_{i+1} across
/// edge `e`) by f_i → g → g → f_{i+1}, crossing `e`, then `aux_edge` of `g`,
/// then `e` again.
pub fn move1(
    s: &SurfaceComplex,
    path: &OrientedFacePath,
    position: usize,
    g: FaceId,
    aux_edge: EdgeId,
) -> Result<OrientedFacePath, LiftError> {
    check_position(path, position)?;
    let e = path.crossings[position].edge;
    if g.0 >= s.face_count() || !s.face_has_edge(g, e) {
        return Err(LiftError::PreconditionViolated(format!(
            "face #{} does not contain the crossing edge at position {position}",
            g.0
        )));
    }
    if aux_edge.0 >= s.edge_count() || !s.face_has_edge(g, aux_edge) {
        return Err(LiftError::PreconditionViolated(format!(
            "auxiliary edge #{} is not an edge of face #{}",
            aux_edge.0, g.0
        )));
    }
    let mut raw = path.unoriented();
    raw.faces.splice(position + 1..position + 1, [g, g]);
    raw.crossings
        .splice(position + 1..position + 1, [aux_edge, e]);
    orient_face_path(s, &raw, path.start().1)
}

/// Inverse of [`move1`]: removes the doubled face at `position + 1`.
pub fn move1_inverse(
    s: &SurfaceComplex,
    path: &OrientedFacePath,
    position: usize,
) -> Result<OrientedFacePath, LiftError> {
    let raw = path.unoriented();
    let ok = position + 3 < raw.faces.len()
        && raw.faces[position + 1] == raw.faces[position + 2]
        && raw.crossings[position] == raw.crossings[position + 2];
    if !ok {
        return Err(LiftError::PreconditionViolated(format!(
            "no doubled face after position {position}"
        )));
    }
    let mut shorter = raw;
    shorter.faces.drain(position + 1..position + 3);
    shorter.crossings.drain(position + 1..position + 3);
    orient_face_path(s, &shorter, path.start().1)
}

/// Faces and crossings met walking once around `v`, starting at `start`
/// and leaving it through its edge at `v` other than `avoid`. Ends at the
/// face across `avoid` from `start`.
fn star_walk(
    s: &SurfaceComplex,
    v: VertexId,
    start: FaceId,
    avoid: EdgeId,
) -> Result<(Vec<FaceId>, Vec<EdgeId>), LiftError> {
    let star = s.vertex_star(v);
    if !star.closed {
        return Err(LiftError::BoundaryVertex(s.vertex_label(v).to_string()));
    }
    let k = star.faces.len();
    let i =
        star.faces.iter().position(|&f| f == start).ok_or_else(|| {
            LiftError::PreconditionViolated("face does not contain the pivot".into())
        })?;
    // crossings[j] joins faces[j] and faces[j + 1 mod k].
    let forward = star.crossings[(i + k - 1) % k] == avoid;
    let mut faces = vec![start];
    let mut crossings = Vec::with_capacity(k - 1);
    for step in 1..k {
        if forward {
            crossings.push(star.crossings[(i + step - 1) % k]);
            faces.push(star.faces[(i + step) % k]);
        } else {
            crossings.push(star.crossings[(i + k - step) % k]);
            faces.push(star.faces[(i + k - step) % k]);
        }
    }
    Ok((faces, crossings))
}

/// Second elementary move: after step `position` (f_i → f_{i+1} across
/// edge `e`, with `pivot` an endpoint of `e`) inserts a full loop of faces
/// around `pivot`, so the path becomes f_i → g_1 → … → g_k → f_{i+1} with
/// g_1 = f_{i+1} and g_k the face across `e` from f_{i+1}.
pub fn move2(
    s: &SurfaceComplex,
    path: &OrientedFacePath,
    position: usize,
    pivot: VertexId,
) -> Result<OrientedFacePath, LiftError> {
    check_position(path, position)?;
    let e = path.crossings[position].edge;
    if !s.edge(e).has_vertex(pivot) {
        return Err(LiftError::PreconditionViolated(format!(
            "pivot {} is not an endpoint of the crossing edge",
            s.vertex_label(pivot)
        )));
    }
    let next = path.steps[position + 1].0;
    let (star_faces, star_crossings) = star_walk(s, pivot, next, e)?;
    let mut raw = path.unoriented();
    let mut insert_faces = star_faces;
    insert_faces.remove(0);
    let mut insert_crossings = star_crossings;
    insert_crossings.push(e);
    // Path so far ends at f_{i+1} = g_1; append g_2..g_k, then f_{i+1}.
    insert_faces.push(next);
    raw.faces.splice(position + 2..position + 2, insert_faces);
    raw.crossings
        .splice(position + 1..position + 1, insert_crossings);
    orient_face_path(s, &raw, path.start().1)
}

/// Inverse of [`move2`]: removes the loop around `pivot` inserted after
/// step `position`.
pub fn move2_inverse(
    s: &SurfaceComplex,
    path: &OrientedFacePath,
    position: usize,
    pivot: VertexId,
) -> Result<OrientedFacePath, LiftError> {
    check_position(path, position)?;
    let star = s.vertex_star(pivot);
    if !star.closed {
        return Err(LiftError::BoundaryVertex(s.vertex_label(pivot).to_string()));
    }
    let k = star.faces.len();
    let raw = path.unoriented();
    if position + 1 + k > raw.crossings.len() {
        return Err(LiftError::PreconditionViolated(format!(
            "no loop around {} after position {position}",
            s.vertex_label(pivot)
        )));
    }
    let mut shorter = raw.clone();
    shorter.faces.drain(position + 2..position + 2 + k);
    shorter.crossings.drain(position + 1..position + 1 + k);
    let candidate = orient_face_path(s, &shorter, path.start().1)?;
    match move2(s, &candidate, position, pivot) {
        Ok(expanded) if expanded.unoriented() == raw => Ok(candidate),
        _ => Err(LiftError::PreconditionViolated(format!(
            "no loop around {} after position {position}",
            s.vertex_label(pivot)
        ))),
    }
}

/// The face-loop once around interior vertex `v`, starting and ending at
/// the first face of its star.
pub fn vertex_loop(s: &SurfaceComplex, v: VertexId) -> Result<FacePath, LiftError> {
    let star = s.vertex_star(v);
    if !star.closed {
        return Err(LiftError::BoundaryVertex(s.vertex_label(v).to_string()));
    }
    let mut faces = star.faces.clone();
    faces.push(star.faces[0]);
    Ok(FacePath {
        faces,
        crossings: star.crossings,
    })
}
