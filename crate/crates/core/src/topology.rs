//! Combinatorial polygonal surfaces.
//!
//! A surface is given by its faces, each a cyclic sequence of vertex labels.
//! Edges are derived from consecutive vertices and carry the list of faces
//! they bound (one for a boundary edge, two for an interior edge). All ids
//! are dense indices in input order: vertices in declaration order (or first
//! appearance), faces in input order, edges in order of first traversal.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaceId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeId(pub usize);

/// Orientation of a face relative to its input cyclic order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Positive,
    Negative,
}

impl Orientation {
    pub fn flipped(self) -> Self {
        match self {
            Orientation::Positive => Orientation::Negative,
            Orientation::Negative => Orientation::Positive,
        }
    }

    pub fn sign(self) -> i64 {
        match self {
            Orientation::Positive => 1,
            Orientation::Negative => -1,
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orientation::Positive => "+",
            Orientation::Negative => "-",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TopologyError {
    #[error("surface has no faces")]
    Empty,
    #[error("face {face} has {len} vertices; at least 3 are required")]
    DegenerateFace { face: String, len: usize },
    #[error("face {face} visits vertex {vertex} more than once")]
    RepeatedVertexInFace { face: String, vertex: String },
    #[error("face {face} references unknown vertex {vertex}")]
    UnknownVertex { face: String, vertex: String },
    #[error("duplicate vertex id {0}")]
    DuplicateVertex(String),
    #[error("duplicate face id {0}")]
    DuplicateFace(String),
    #[error("edge {0}-{1} lies in three or more faces")]
    EdgeOverused(String, String),
    #[error("vertex/edge graph is disconnected (vertex {0} unreachable)")]
    DisconnectedSkeleton(String),
    #[error("dual graph is disconnected (face {0} unreachable)")]
    DisconnectedDual(String),
    #[error("boundary vertex {0} lies on more than two boundary edges")]
    AmbiguousBoundaryVertex(String),
    #[error("faces around vertex {0} do not form a single fan or cycle")]
    NonManifoldVertex(String),
    #[error("unknown face {0}")]
    UnknownFace(String),
}

/// Unvalidated input: optional vertex declarations plus faces.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawSurface {
    /// Declared vertex labels. When empty, vertices are taken from the faces
    /// in order of first appearance.
    pub vertices: Vec<String>,
    pub faces: Vec<(String, Vec<String>)>,
}

impl RawSurface {
    pub fn from_faces<F, V>(faces: impl IntoIterator<Item = (F, Vec<V>)>) -> Self
    where
        F: Into<String>,
        V: Into<String>,
    {
        RawSurface {
            vertices: Vec::new(),
            faces: faces
                .into_iter()
                .map(|(id, vs)| (id.into(), vs.into_iter().map(Into::into).collect()))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    /// Endpoints in the direction of the first face that traverses the edge.
    pub ends: (VertexId, VertexId),
    /// Incident faces in input order; length 1 or 2.
    pub faces: Vec<FaceId>,
}

impl Edge {
    pub fn is_interior(&self) -> bool {
        self.faces.len() == 2
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.ends.0 == v || self.ends.1 == v
    }

    pub fn other_vertex(&self, v: VertexId) -> VertexId {
        if self.ends.0 == v {
            self.ends.1
        } else {
            self.ends.0
        }
    }
}

/// The faces around one vertex in cyclic (or fan) order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexStar {
    pub vertex: VertexId,
    pub faces: Vec<FaceId>,
    /// `crossings[k]` is the edge through the vertex shared by `faces[k]`
    /// and `faces[k + 1]`; for a closed star the last entry joins the last
    /// face back to the first.
    pub crossings: Vec<EdgeId>,
    pub closed: bool,
}

/// A validated polygonal surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceComplex {
    vertex_labels: Vec<String>,
    face_labels: Vec<String>,
    faces: Vec<Vec<VertexId>>,
    face_edges: Vec<Vec<EdgeId>>,
    edges: Vec<Edge>,
    edge_lookup: HashMap<(VertexId, VertexId), EdgeId>,
    vertex_lookup: HashMap<String, VertexId>,
    face_lookup: HashMap<String, FaceId>,
}

fn key(a: VertexId, b: VertexId) -> (VertexId, VertexId) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Checks the raw input and builds the complex.
pub fn validate_surface(raw: &RawSurface) -> Result<SurfaceComplex, TopologyError> {
    if raw.faces.is_empty() {
        return Err(TopologyError::Empty);
    }

    let mut vertex_labels = Vec::new();
    let mut vertex_lookup = HashMap::new();
    let explicit = !raw.vertices.is_empty();
    for label in &raw.vertices {
        if vertex_lookup
            .insert(label.clone(), VertexId(vertex_labels.len()))
            .is_some()
        {
            return Err(TopologyError::DuplicateVertex(label.clone()));
        }
        vertex_labels.push(label.clone());
    }

    let mut face_labels = Vec::new();
    let mut face_lookup = HashMap::new();
    let mut faces = Vec::new();
    for (label, cycle) in &raw.faces {
        if face_lookup
            .insert(label.clone(), FaceId(faces.len()))
            .is_some()
        {
            return Err(TopologyError::DuplicateFace(label.clone()));
        }
        if cycle.len() < 3 {
            return Err(TopologyError::DegenerateFace {
                face: label.clone(),
                len: cycle.len(),
            });
        }
        let mut ids = Vec::with_capacity(cycle.len());
        for v in cycle {
            let id = match vertex_lookup.get(v) {
                Some(&id) => id,
                None if !explicit => {
                    let id = VertexId(vertex_labels.len());
                    vertex_lookup.insert(v.clone(), id);
                    vertex_labels.push(v.clone());
                    id
                }
                None => {
                    return Err(TopologyError::UnknownVertex {
                        face: label.clone(),
                        vertex: v.clone(),
                    })
                }
            };
            if ids.contains(&id) {
                return Err(TopologyError::RepeatedVertexInFace {
                    face: label.clone(),
                    vertex: v.clone(),
                });
            }
            ids.push(id);
        }
        face_labels.push(label.clone());
        faces.push(ids);
    }

    let mut edges: Vec<Edge> = Vec::new();
    let mut edge_lookup = HashMap::new();
    let mut face_edges = Vec::with_capacity(faces.len());
    for (f, cycle) in faces.iter().enumerate() {
        let mut own = Vec::with_capacity(cycle.len());
        for k in 0..cycle.len() {
            let (a, b) = (cycle[k], cycle[(k + 1) % cycle.len()]);
            let id = *edge_lookup.entry(key(a, b)).or_insert_with(|| {
                edges.push(Edge {
                    ends: (a, b),
                    faces: Vec::new(),
                });
                EdgeId(edges.len() - 1)
            });
            let edge = &mut edges[id.0];
            if edge.faces.len() == 2 {
                return Err(TopologyError::EdgeOverused(
                    vertex_labels[edge.ends.0 .0].clone(),
                    vertex_labels[edge.ends.1 .0].clone(),
                ));
            }
            edge.faces.push(FaceId(f));
            own.push(id);
        }
        face_edges.push(own);
    }

    let complex = SurfaceComplex {
        vertex_labels,
        face_labels,
        faces,
        face_edges,
        edges,
        edge_lookup,
        vertex_lookup,
        face_lookup,
    };
    complex.check_skeleton_connected()?;
    complex.check_dual_connected()?;
    for v in complex.vertices() {
        complex.check_vertex_star(v)?;
    }
    Ok(complex)
}

impl SurfaceComplex {
    pub fn vertex_count(&self) -> usize {
        self.vertex_labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertex_labels.len()).map(VertexId)
    }

    pub fn face_ids(&self) -> impl Iterator<Item = FaceId> + '_ {
        (0..self.faces.len()).map(FaceId)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e.0]
    }

    /// Vertex cycle of a face, in input order.
    pub fn face(&self, f: FaceId) -> &[VertexId] {
        &self.faces[f.0]
    }

    /// Edges of a face; entry `k` joins corners `k` and `k + 1`.
    pub fn face_edges(&self, f: FaceId) -> &[EdgeId] {
        &self.face_edges[f.0]
    }

    pub fn vertex_label(&self, v: VertexId) -> &str {
        &self.vertex_labels[v.0]
    }

    pub fn face_label(&self, f: FaceId) -> &str {
        &self.face_labels[f.0]
    }

    pub fn vertex_labels(&self) -> &[String] {
        &self.vertex_labels
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<VertexId> {
        self.vertex_lookup.get(label).copied()
    }

    pub fn face_by_label(&self, label: &str) -> Result<FaceId, TopologyError> {
        self.face_lookup
            .get(label)
            .copied()
            .ok_or_else(|| TopologyError::UnknownFace(label.to_string()))
    }

    pub fn edge_between(&self, a: VertexId, b: VertexId) -> Option<EdgeId> {
        self.edge_lookup.get(&key(a, b)).copied()
    }

    pub fn face_has_edge(&self, f: FaceId, e: EdgeId) -> bool {
        self.face_edges[f.0].contains(&e)
    }

    /// Whether the input cycle of `f` runs from `a` to `b`.
    pub fn traverses(&self, f: FaceId, a: VertexId, b: VertexId) -> bool {
        let cycle = &self.faces[f.0];
        let n = cycle.len();
        (0..n).any(|k| cycle[k] == a && cycle[(k + 1) % n] == b)
    }

    /// The edge `e` directed as the boundary of `f` with orientation `o`
    /// runs along it. `e` must belong to `f`.
    pub fn directed_edge(&self, f: FaceId, o: Orientation, e: EdgeId) -> (VertexId, VertexId) {
        let (a, b) = self.edges[e.0].ends;
        let forward = if self.traverses(f, a, b) {
            (a, b)
        } else {
            (b, a)
        };
        match o {
            Orientation::Positive => forward,
            Orientation::Negative => (forward.1, forward.0),
        }
    }

    /// Orientation that `g` must take to agree with `f` (oriented `o`)
    /// across their common edge `e`: the two boundaries run along `e` in
    /// opposite directions.
    pub fn agreeing_orientation(
        &self,
        f: FaceId,
        o: Orientation,
        e: EdgeId,
        g: FaceId,
    ) -> Orientation {
        let (p, q) = self.directed_edge(f, o, e);
        if self.traverses(g, q, p) {
            Orientation::Positive
        } else {
            Orientation::Negative
        }
    }

    /// The face on the other side of `e` from `f`, if `e` is interior.
    pub fn other_face(&self, e: EdgeId, f: FaceId) -> Option<FaceId> {
        let faces = &self.edges[e.0].faces;
        match faces.as_slice() {
            [a, b] if *a == f => Some(*b),
            [a, b] if *b == f => Some(*a),
            _ => None,
        }
    }

    pub fn interior_edge_count(&self) -> usize {
        self.edges.iter().filter(|e| e.is_interior()).count()
    }

    pub fn boundary_edge_count(&self) -> usize {
        self.edges.len() - self.interior_edge_count()
    }

    /// Dual neighbours of `f` as `(neighbour, shared edge)`, sorted by
    /// neighbour input order, ties broken by the position of the edge in
    /// `f`'s cycle.
    pub fn dual_neighbors(&self, f: FaceId) -> Vec<(FaceId, EdgeId)> {
        let mut out: Vec<(FaceId, EdgeId)> = self.face_edges[f.0]
            .iter()
            .filter_map(|&e| self.other_face(e, f).map(|g| (g, e)))
            .collect();
        out.sort_by_key(|&(g, _)| g);
        out
    }

    /// Corner edges of `f` at `v`: the edge arriving at `v` and the edge
    /// leaving it, in input cyclic order.
    fn corner_edges(&self, f: FaceId, v: VertexId) -> Option<(EdgeId, EdgeId)> {
        let cycle = &self.faces[f.0];
        let n = cycle.len();
        let k = cycle.iter().position(|&x| x == v)?;
        Some((
            self.face_edges[f.0][(k + n - 1) % n],
            self.face_edges[f.0][k],
        ))
    }

    fn faces_at(&self, v: VertexId) -> Vec<FaceId> {
        self.face_ids()
            .filter(|&f| self.faces[f.0].contains(&v))
            .collect()
    }

    /// Walks around `v`. Closed stars start at the first incident face and
    /// leave it through the edge following `v` in that face's cycle; open
    /// stars start at the end of the fan with a boundary edge.
    pub fn vertex_star(&self, v: VertexId) -> VertexStar {
        let incident = self.faces_at(v);
        let boundary_start = incident.iter().copied().find_map(|f| {
            let (_, out) = self.corner_edges(f, v)?;
            (!self.edges[out.0].is_interior()).then_some((f, out))
        });
        let (start, start_entry) = match boundary_start {
            Some((f, out)) => (f, out),
            None => {
                let f = incident[0];
                let (entry, _) = self.corner_edges(f, v).expect("face contains vertex");
                (f, entry)
            }
        };
        let mut faces = vec![start];
        let mut crossings = Vec::new();
        let (mut current, mut entry) = (start, start_entry);
        loop {
            let (a, b) = self.corner_edges(current, v).expect("face contains vertex");
            let exit = if a == entry { b } else { a };
            match self.other_face(exit, current) {
                None => {
                    return VertexStar {
                        vertex: v,
                        faces,
                        crossings,
                        closed: false,
                    }
                }
                Some(next) => {
                    crossings.push(exit);
                    if next == start {
                        return VertexStar {
                            vertex: v,
                            faces,
                            crossings,
                            closed: true,
                        };
                    }
                    if faces.contains(&next) || faces.len() > incident.len() {
                        // Only reachable on unvalidated input.
                        return VertexStar {
                            vertex: v,
                            faces,
                            crossings,
                            closed: false,
                        };
                    }
                    faces.push(next);
                    current = next;
                    entry = exit;
                }
            }
        }
    }

    pub fn is_interior_vertex(&self, v: VertexId) -> bool {
        self.vertex_star(v).closed
    }

    fn check_vertex_star(&self, v: VertexId) -> Result<(), TopologyError> {
        let boundary = self
            .edges
            .iter()
            .filter(|e| !e.is_interior() && e.has_vertex(v))
            .count();
        if boundary > 2 {
            return Err(TopologyError::AmbiguousBoundaryVertex(
                self.vertex_labels[v.0].clone(),
            ));
        }
        let star = self.vertex_star(v);
        if star.faces.len() != self.faces_at(v).len() {
            return Err(TopologyError::NonManifoldVertex(
                self.vertex_labels[v.0].clone(),
            ));
        }
        Ok(())
    }

    fn check_skeleton_connected(&self) -> Result<(), TopologyError> {
        let n = self.vertex_count();
        let mut adjacency = vec![Vec::new(); n];
        for e in &self.edges {
            adjacency[e.ends.0 .0].push(e.ends.1 .0);
            adjacency[e.ends.1 .0].push(e.ends.0 .0);
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &w in &adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        match seen.iter().position(|s| !s) {
            Some(v) => Err(TopologyError::DisconnectedSkeleton(
                self.vertex_labels[v].clone(),
            )),
            None => Ok(()),
        }
    }

    fn check_dual_connected(&self) -> Result<(), TopologyError> {
        let mut seen = vec![false; self.face_count()];
        let mut queue = VecDeque::from([FaceId(0)]);
        seen[0] = true;
        while let Some(f) = queue.pop_front() {
            for (g, _) in self.dual_neighbors(f) {
                if !seen[g.0] {
                    seen[g.0] = true;
                    queue.push_back(g);
                }
            }
        }
        match seen.iter().position(|s| !s) {
            Some(f) => Err(TopologyError::DisconnectedDual(self.face_labels[f].clone())),
            None => Ok(()),
        }
    }

    /// A copy with vertices and faces relabelled through the given maps.
    /// Ids keep their positions, so only labels change.
    pub fn relabeled(
        &self,
        vertex: impl Fn(&str) -> String,
        face: impl Fn(&str) -> String,
    ) -> SurfaceComplex {
        let mut out = self.clone();
        out.vertex_labels = self.vertex_labels.iter().map(|l| vertex(l)).collect();
        out.face_labels = self.face_labels.iter().map(|l| face(l)).collect();
        out.vertex_lookup = out
            .vertex_labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), VertexId(i)))
            .collect();
        out.face_lookup = out
            .face_labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), FaceId(i)))
            .collect();
        out
    }

    /// The raw description this complex was built from (up to label
    /// normalization).
    pub fn to_raw(&self) -> RawSurface {
        RawSurface {
            vertices: self.vertex_labels.clone(),
            faces: self
                .face_ids()
                .map(|f| {
                    (
                        self.face_labels[f.0].clone(),
                        self.faces[f.0]
                            .iter()
                            .map(|v| self.vertex_labels[v.0].clone())
                            .collect(),
                    )
                })
                .collect(),
        }
    }
}

/// Topological invariants of a surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TopologyReport {
    pub euler_characteristic: i64,
    pub is_closed: bool,
    pub is_orientable: bool,
    /// Rank of the first homology over the rationals.
    pub betti1_rank: usize,
    pub boundary_component_count: usize,
}

/// Propagates orientations breadth-first over the dual graph from face 0.
/// Returns the per-face orientation if it is consistent on every interior
/// edge.
pub fn coherent_orientation(s: &SurfaceComplex) -> Option<Vec<Orientation>> {
    let mut orient: Vec<Option<Orientation>> = vec![None; s.face_count()];
    orient[0] = Some(Orientation::Positive);
    let mut queue = VecDeque::from([FaceId(0)]);
    while let Some(f) = queue.pop_front() {
        let of = orient[f.0].expect("queued faces are oriented");
        for (g, e) in s.dual_neighbors(f) {
            let want = s.agreeing_orientation(f, of, e, g);
            match orient[g.0] {
                None => {
                    orient[g.0] = Some(want);
                    queue.push_back(g);
                }
                Some(og) if og != want => return None,
                Some(_) => {}
            }
        }
    }
    Some(
        orient
            .into_iter()
            .map(|o| o.expect("dual graph is connected"))
            .collect(),
    )
}

fn boundary_components(s: &SurfaceComplex) -> usize {
    let boundary: Vec<&Edge> = s.edges().iter().filter(|e| !e.is_interior()).collect();
    let mut parent: Vec<usize> = (0..s.vertex_count()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut on_boundary = vec![false; s.vertex_count()];
    for e in &boundary {
        let (a, b) = (e.ends.0 .0, e.ends.1 .0);
        on_boundary[a] = true;
        on_boundary[b] = true;
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra] = rb;
    }
    (0..s.vertex_count())
        .filter(|&v| on_boundary[v] && find(&mut parent, v) == v)
        .count()
}

pub fn topology_report(s: &SurfaceComplex) -> TopologyReport {
    let chi = s.vertex_count() as i64 - s.edge_count() as i64 + s.face_count() as i64;
    let is_closed = s.boundary_edge_count() == 0;
    let is_orientable = coherent_orientation(s).is_some();
    let betti1 = 1 - chi + i64::from(is_closed && is_orientable);
    TopologyReport {
        euler_characteristic: chi,
        is_closed,
        is_orientable,
        betti1_rank: usize::try_from(betti1).expect("connected surface has b1 >= 0"),
        boundary_component_count: boundary_components(s),
    }
}
