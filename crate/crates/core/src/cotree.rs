//! Dual spanning trees, cotree loops and their homology classes.

use std::collections::VecDeque;

use crate::linalg::{Echelon, Matrix};
use crate::scalar::Scalar;
use crate::topology::{EdgeId, FaceId, Orientation, SurfaceComplex, TopologyError};

/// An unoriented face-path: consecutive faces share `crossings[k]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacePath {
    pub faces: Vec<FaceId>,
    pub crossings: Vec<EdgeId>,
}

impl FacePath {
    pub fn single(f: FaceId) -> Self {
        FacePath {
            faces: vec![f],
            crossings: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.crossings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.crossings.is_empty()
    }

    pub fn start(&self) -> FaceId {
        self.faces[0]
    }

    pub fn end(&self) -> FaceId {
        *self.faces.last().expect("paths have at least one face")
    }

    pub fn is_loop(&self) -> bool {
        self.start() == self.end()
    }

    pub fn reversed(&self) -> FacePath {
        FacePath {
            faces: self.faces.iter().rev().copied().collect(),
            crossings: self.crossings.iter().rev().copied().collect(),
        }
    }

    /// Appends `other`, which must start where `self` ends.
    pub fn concat(&self, other: &FacePath) -> FacePath {
        assert_eq!(self.end(), other.start());
        let mut out = self.clone();
        out.faces.extend_from_slice(&other.faces[1..]);
        out.crossings.extend_from_slice(&other.crossings);
        out
    }

    /// Whether each crossing is an edge of both faces it joins.
    pub fn is_valid(&self, s: &SurfaceComplex) -> bool {
        self.faces.len() == self.crossings.len() + 1
            && self.crossings.iter().enumerate().all(|(k, &e)| {
                s.face_has_edge(self.faces[k], e) && s.face_has_edge(self.faces[k + 1], e)
            })
    }
}

/// Breadth-first dual spanning tree rooted at a base face, together with
/// one face-loop per interior edge outside the tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CotreeLoopBasis {
    base: FaceId,
    parent: Vec<Option<(FaceId, EdgeId)>>,
    depth: Vec<usize>,
    orientation: Vec<Orientation>,
    order: Vec<FaceId>,
    tree_edges: Vec<EdgeId>,
    is_tree_edge: Vec<bool>,
    cotree_edges: Vec<EdgeId>,
    loops: Vec<FacePath>,
}

impl CotreeLoopBasis {
    pub fn base(&self) -> FaceId {
        self.base
    }

    /// Tree edges in discovery order.
    pub fn tree_edges(&self) -> &[EdgeId] {
        &self.tree_edges
    }

    pub fn is_tree_edge(&self, e: EdgeId) -> bool {
        self.is_tree_edge[e.0]
    }

    /// Interior non-tree edges in edge order; `loops()[k]` crosses
    /// `cotree_edges()[k]`.
    pub fn cotree_edges(&self) -> &[EdgeId] {
        &self.cotree_edges
    }

    pub fn loops(&self) -> &[FacePath] {
        &self.loops
    }

    pub fn parent(&self, f: FaceId) -> Option<(FaceId, EdgeId)> {
        self.parent[f.0]
    }

    /// Orientation of `f` reached along the tree from the base face
    /// oriented positively.
    pub fn tree_orientation(&self, f: FaceId) -> Orientation {
        self.orientation[f.0]
    }

    /// Faces in breadth-first discovery order (base first).
    pub fn discovery_order(&self) -> &[FaceId] {
        &self.order
    }

    fn path_to_base(&self, mut f: FaceId) -> FacePath {
        let mut path = FacePath::single(f);
        while let Some((p, e)) = self.parent[f.0] {
            path.faces.push(p);
            path.crossings.push(e);
            f = p;
        }
        path
    }
}

pub fn cotree_loop_basis(
    s: &SurfaceComplex,
    base: FaceId,
) -> Result<CotreeLoopBasis, TopologyError> {
    if base.0 >= s.face_count() {
        return Err(TopologyError::UnknownFace(format!("#{}", base.0)));
    }
    let n = s.face_count();
    let mut parent = vec![None; n];
    let mut depth = vec![0; n];
    let mut orientation = vec![Orientation::Positive; n];
    let mut seen = vec![false; n];
    let mut is_tree_edge = vec![false; s.edge_count()];
    let mut tree_edges = Vec::new();
    let mut order = vec![base];
    seen[base.0] = true;
    let mut queue = VecDeque::from([base]);
    while let Some(f) = queue.pop_front() {
        for (g, e) in s.dual_neighbors(f) {
            if seen[g.0] {
                continue;
            }
            seen[g.0] = true;
            parent[g.0] = Some((f, e));
            depth[g.0] = depth[f.0] + 1;
            orientation[g.0] = s.agreeing_orientation(f, orientation[f.0], e, g);
            is_tree_edge[e.0] = true;
            tree_edges.push(e);
            order.push(g);
            queue.push_back(g);
        }
    }

    let mut basis = CotreeLoopBasis {
        base,
        parent,
        depth,
        orientation,
        order,
        tree_edges,
        is_tree_edge,
        cotree_edges: Vec::new(),
        loops: Vec::new(),
    };
    for e in s.edge_ids() {
        let edge = s.edge(e);
        if !edge.is_interior() || basis.is_tree_edge[e.0] {
            continue;
        }
        let (f, g) = (edge.faces[0], edge.faces[1]);
        let out = basis.path_to_base(f).reversed();
        let crossing = FacePath {
            faces: vec![f, g],
            crossings: vec![e],
        };
        let back = basis.path_to_base(g);
        basis.cotree_edges.push(e);
        basis.loops.push(out.concat(&crossing).concat(&back));
    }
    Ok(basis)
}

/// The tree path between two faces (through their lowest common ancestor).
pub fn tree_face_path(
    s: &SurfaceComplex,
    basis: &CotreeLoopBasis,
    from: FaceId,
    to: FaceId,
) -> Result<FacePath, TopologyError> {
    for f in [from, to] {
        if f.0 >= s.face_count() {
            return Err(TopologyError::UnknownFace(format!("#{}", f.0)));
        }
    }
    let mut up = FacePath::single(from);
    let mut down = FacePath::single(to);
    let (mut a, mut b) = (from, to);
    while a != b {
        if basis.depth[a.0] >= basis.depth[b.0] {
            let (p, e) = basis.parent[a.0].expect("non-root has a parent");
            up.faces.push(p);
            up.crossings.push(e);
            a = p;
        } else {
            let (p, e) = basis.parent[b.0].expect("non-root has a parent");
            down.faces.push(p);
            down.crossings.push(e);
            b = p;
        }
    }
    Ok(up.concat(&down.reversed()))
}

/// First homology over a field, expressed in cotree coordinates.
///
/// Every face-loop is a cycle of the dual graph; its coordinates are the
/// signed crossing counts of the cotree edges (each dual edge directed from
/// its first incident face to its second). Boundaries are spanned by the
/// loops around interior vertices.
#[derive(Debug, Clone)]
pub struct LoopHomology<T> {
    cotree_column: Vec<Option<usize>>,
    boundaries: Echelon<T>,
    free: Vec<usize>,
}

impl<T: Scalar> LoopHomology<T> {
    pub fn new(s: &SurfaceComplex, basis: &CotreeLoopBasis) -> Self {
        let mut cotree_column = vec![None; s.edge_count()];
        for (k, e) in basis.cotree_edges().iter().enumerate() {
            cotree_column[e.0] = Some(k);
        }
        let k = basis.cotree_edges().len();
        let mut this = LoopHomology {
            cotree_column,
            boundaries: Matrix::<T>::zeros(0, k).echelon(),
            free: Vec::new(),
        };
        let rows: Vec<Vec<T>> = s
            .vertices()
            .map(|v| s.vertex_star(v))
            .filter(|star| star.closed)
            .map(|star| {
                let mut faces = star.faces.clone();
                faces.push(star.faces[0]);
                this.cycle_coordinates(
                    s,
                    &FacePath {
                        faces,
                        crossings: star.crossings,
                    },
                )
            })
            .collect();
        this.boundaries = Matrix::from_rows(k, rows).echelon();
        this.free = this.boundaries.free_columns();
        this
    }

    /// Dimension of the homology space.
    pub fn rank(&self) -> usize {
        self.free.len()
    }

    /// Signed cotree crossing counts of a face-loop. Steps that stay on the
    /// same face do not move and contribute nothing.
    pub fn cycle_coordinates(&self, s: &SurfaceComplex, path: &FacePath) -> Vec<T> {
        let mut coords = vec![T::zero(); self.boundaries.reduced.cols()];
        for (k, &e) in path.crossings.iter().enumerate() {
            let (from, to) = (path.faces[k], path.faces[k + 1]);
            if from == to {
                continue;
            }
            if let Some(col) = self.cotree_column[e.0] {
                let forward = s.edge(e).faces[0] == from;
                let step = if forward { T::one() } else { -T::one() };
                coords[col] = coords[col].clone() + step;
            }
        }
        coords
    }

    /// Coordinates of the loop's class in the quotient basis.
    pub fn class_of(&self, s: &SurfaceComplex, path: &FacePath) -> Vec<T> {
        let reduced = self.boundaries.reduce(&self.cycle_coordinates(s, path));
        self.free.iter().map(|&c| reduced[c].clone()).collect()
    }

    pub fn is_null_homologous(&self, s: &SurfaceComplex, path: &FacePath) -> bool {
        self.class_of(s, path).iter().all(|x| x.is_negligible())
    }

    /// Indices of cotree loops whose classes form a basis of homology,
    /// chosen greedily in loop order.
    pub fn basis_loops(&self, s: &SurfaceComplex, basis: &CotreeLoopBasis) -> Vec<usize> {
        self.basis_loops_from(s, basis, 0..basis.loops().len())
    }

    /// Like [`basis_loops`](Self::basis_loops), scanning loops in `order`.
    pub fn basis_loops_from(
        &self,
        s: &SurfaceComplex,
        basis: &CotreeLoopBasis,
        order: impl IntoIterator<Item = usize>,
    ) -> Vec<usize> {
        let mut chosen = Vec::new();
        let mut rows: Vec<Vec<T>> = Vec::new();
        for k in order {
            if chosen.len() == self.rank() {
                break;
            }
            let mut trial = rows.clone();
            trial.push(self.class_of(s, &basis.loops()[k]));
            if Matrix::from_rows(self.rank(), trial.clone()).rank() == trial.len() {
                rows = trial;
                chosen.push(k);
            }
        }
        chosen
    }
}
