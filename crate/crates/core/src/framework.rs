//! Planar frameworks on polygonal surfaces and their self-stresses.

use std::collections::HashMap;

use thiserror::Error;

use crate::linalg::{dot, Matrix};
use crate::scalar::Scalar;
use crate::topology::{EdgeId, SurfaceComplex, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StressError {
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("vertex {0} has no position")]
    MissingPosition(String),
    #[error("edge {0}-{1} has coincident endpoints")]
    CoincidentEndpoints(String, String),
    #[error("{0}-{1} is not an edge of the framework")]
    UnknownEdgeKey(String, String),
    #[error("stress has {got} weights but the framework has {expected} edges")]
    WrongLength { expected: usize, got: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Point<T> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> Point<T> {
    pub fn new(x: T, y: T) -> Self {
        Point { x, y }
    }

    pub fn sub(&self, other: &Point<T>) -> Point<T> {
        Point::new(
            self.x.clone() - other.x.clone(),
            self.y.clone() - other.y.clone(),
        )
    }

    /// `self.x * other.y - self.y * other.x`
    pub fn det(&self, other: &Point<T>) -> T {
        self.x.clone() * other.y.clone() - self.y.clone() * other.x.clone()
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Point<U> {
        Point {
            x: f(&self.x),
            y: f(&self.y),
        }
    }
}

/// A surface together with a planar position for every vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct Framework<T> {
    complex: SurfaceComplex,
    positions: Vec<Point<T>>,
}

impl<T: Scalar> Framework<T> {
    /// `positions[v]` is the position of vertex `v`.
    pub fn new(complex: SurfaceComplex, positions: Vec<Point<T>>) -> Result<Self, StressError> {
        if positions.len() != complex.vertex_count() {
            let missing = complex
                .vertex_labels()
                .get(positions.len())
                .cloned()
                .unwrap_or_default();
            return Err(StressError::MissingPosition(missing));
        }
        for e in complex.edges() {
            let (a, b) = e.ends;
            if positions[a.0] == positions[b.0] {
                return Err(StressError::CoincidentEndpoints(
                    complex.vertex_label(a).to_string(),
                    complex.vertex_label(b).to_string(),
                ));
            }
        }
        Ok(Framework { complex, positions })
    }

    /// Looks positions up by vertex label.
    pub fn from_labeled(
        complex: SurfaceComplex,
        positions: &HashMap<String, Point<T>>,
    ) -> Result<Self, StressError> {
        let ordered = complex
            .vertex_labels()
            .iter()
            .map(|l| {
                positions
                    .get(l)
                    .cloned()
                    .ok_or_else(|| StressError::MissingPosition(l.clone()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Framework::new(complex, ordered)
    }

    pub fn complex(&self) -> &SurfaceComplex {
        &self.complex
    }

    pub fn position(&self, v: VertexId) -> &Point<T> {
        &self.positions[v.0]
    }

    pub fn positions(&self) -> &[Point<T>] {
        &self.positions
    }

    /// The same surface with every coordinate mapped through `f`.
    pub fn map_scalar<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Result<Framework<U>, StressError> {
        Framework::new(
            self.complex.clone(),
            self.positions.iter().map(|p| p.map(&f)).collect(),
        )
    }

    fn vertex_by_label(&self, label: &str) -> Result<VertexId, StressError> {
        self.complex
            .vertex_by_label(label)
            .ok_or_else(|| StressError::UnknownVertex(label.to_string()))
    }

    /// The `2|V| x |E|` equilibrium matrix: rows `2v` and `2v + 1` hold the
    /// x and y components of `p_v - p_u` in the column of each edge `uv`.
    pub fn equilibrium_matrix(&self) -> Matrix<T> {
        let mut m = Matrix::zeros(2 * self.complex.vertex_count(), self.complex.edge_count());
        for (j, e) in self.complex.edges().iter().enumerate() {
            let (a, b) = e.ends;
            let d = self.positions[a.0].sub(&self.positions[b.0]);
            m.set(2 * a.0, j, d.x.clone());
            m.set(2 * a.0 + 1, j, d.y.clone());
            m.set(2 * b.0, j, -d.x);
            m.set(2 * b.0 + 1, j, -d.y);
        }
        m
    }
}

/// Edge weights indexed by [`EdgeId`]; absent edges carry weight zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StressVector<T> {
    weights: Vec<T>,
}

impl<T: Scalar> StressVector<T> {
    pub fn zero(edge_count: usize) -> Self {
        StressVector {
            weights: vec![T::zero(); edge_count],
        }
    }

    pub fn from_weights(fw: &Framework<T>, weights: Vec<T>) -> Result<Self, StressError> {
        if weights.len() != fw.complex.edge_count() {
            return Err(StressError::WrongLength {
                expected: fw.complex.edge_count(),
                got: weights.len(),
            });
        }
        Ok(StressVector { weights })
    }

    /// Builds a stress from `(vertex label, vertex label, weight)` triples.
    /// Unlisted edges get weight zero; a repeated pair keeps the last weight.
    pub fn from_labeled<'a>(
        fw: &Framework<T>,
        entries: impl IntoIterator<Item = (&'a str, &'a str, T)>,
    ) -> Result<Self, StressError> {
        let mut w = StressVector::zero(fw.complex.edge_count());
        for (a, b, weight) in entries {
            let (va, vb) = (fw.vertex_by_label(a)?, fw.vertex_by_label(b)?);
            let e = fw
                .complex
                .edge_between(va, vb)
                .ok_or_else(|| StressError::UnknownEdgeKey(a.to_string(), b.to_string()))?;
            w.weights[e.0] = weight;
        }
        Ok(w)
    }

    pub fn weight(&self, e: EdgeId) -> &T {
        &self.weights[e.0]
    }

    pub fn set_weight(&mut self, e: EdgeId, value: T) {
        self.weights[e.0] = value;
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.weights.iter().all(|w| w.is_negligible())
    }

    pub fn scaled(&self, factor: &T) -> Self {
        StressVector {
            weights: self
                .weights
                .iter()
                .map(|w| w.clone() * factor.clone())
                .collect(),
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        StressVector {
            weights: self
                .weights
                .iter()
                .zip(&other.weights)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    /// `Σ coefficients[k] * vectors[k]`
    pub fn combination(edge_count: usize, vectors: &[StressVector<T>], coefficients: &[T]) -> Self {
        let mut out = StressVector::zero(edge_count);
        for (v, c) in vectors.iter().zip(coefficients) {
            out = out.plus(&v.scaled(c));
        }
        out
    }
}

/// Linearly independent self-stresses spanning the self-stress space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StressBasis<T> {
    pub vectors: Vec<StressVector<T>>,
}

impl<T: Scalar> StressBasis<T> {
    pub fn dimension(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Rank of the span, computed exactly.
    pub fn rank(&self) -> usize {
        let Some(first) = self.vectors.first() else {
            return 0;
        };
        Matrix::from_rows(
            first.len(),
            self.vectors.iter().map(|v| v.weights.clone()).collect(),
        )
        .rank()
    }

    /// Whether `w` lies in the span of the basis.
    pub fn contains(&self, w: &StressVector<T>) -> bool {
        let mut rows: Vec<Vec<T>> = self.vectors.iter().map(|v| v.weights.clone()).collect();
        let before = self.rank();
        rows.push(w.weights.clone());
        Matrix::from_rows(w.len(), rows).rank() == before
    }
}

/// `Σ_j w_ij (p_i - p_j)` over the edges at `vertex`.
pub fn equilibrium_residual<T: Scalar>(
    fw: &Framework<T>,
    w: &StressVector<T>,
    vertex: &str,
) -> Result<Point<T>, StressError> {
    let v = fw.vertex_by_label(vertex)?;
    Ok(residual_at(fw, w, v))
}

pub(crate) fn residual_at<T: Scalar>(
    fw: &Framework<T>,
    w: &StressVector<T>,
    v: VertexId,
) -> Point<T> {
    let mut sum = Point::new(T::zero(), T::zero());
    for (j, e) in fw.complex.edges().iter().enumerate() {
        if !e.has_vertex(v) {
            continue;
        }
        let d = fw.positions[v.0].sub(&fw.positions[e.other_vertex(v).0]);
        let weight = &w.weights[j];
        sum = Point::new(sum.x + weight.clone() * d.x, sum.y + weight.clone() * d.y);
    }
    sum
}

pub fn is_self_stress<T: Scalar>(
    fw: &Framework<T>,
    w: &StressVector<T>,
) -> Result<bool, StressError> {
    if w.len() != fw.complex.edge_count() {
        return Err(StressError::WrongLength {
            expected: fw.complex.edge_count(),
            got: w.len(),
        });
    }
    let m = fw.equilibrium_matrix();
    Ok((0..m.rows()).all(|r| dot(m.row(r), &w.weights).is_negligible()))
}

/// Exact basis of the kernel of the equilibrium matrix, one vector per free
/// edge column in edge order.
pub fn self_stress_basis<T: Scalar>(fw: &Framework<T>) -> StressBasis<T> {
    StressBasis {
        vectors: fw
            .equilibrium_matrix()
            .null_space()
            .into_iter()
            .map(|weights| StressVector { weights })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;
    use crate::topology::{validate_surface, RawSurface};
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> BigRational {
        rational(n, d)
    }

    fn fan() -> Framework<BigRational> {
        let s = validate_surface(&RawSurface::from_faces([
            ("OAB", vec!["O", "A", "B"]),
            ("OBC", vec!["O", "B", "C"]),
            ("OCA", vec!["O", "C", "A"]),
        ]))
        .unwrap();
        let pos: HashMap<String, Point<BigRational>> =
            [("A", 0, 0), ("B", 3, 0), ("C", 0, 3), ("O", 1, 1)]
                .into_iter()
                .map(|(l, x, y)| (l.to_string(), Point::new(q(x, 1), q(y, 1))))
                .collect();
        Framework::from_labeled(s, &pos).unwrap()
    }

    fn fan_stress(fw: &Framework<BigRational>, rim: BigRational) -> StressVector<BigRational> {
        StressVector::from_labeled(
            fw,
            [
                ("O", "A", q(1, 1)),
                ("O", "B", q(1, 1)),
                ("O", "C", q(1, 1)),
                ("A", "B", rim.clone()),
                ("B", "C", rim.clone()),
                ("C", "A", rim),
            ],
        )
        .unwrap()
    }

    #[test]
    fn zero_stress_is_balanced() {
        let fw = fan();
        let w = StressVector::zero(6);
        for v in ["O", "A", "B", "C"] {
            assert_eq!(
                equilibrium_residual(&fw, &w, v).unwrap(),
                Point::new(q(0, 1), q(0, 1))
            );
        }
        assert!(is_self_stress(&fw, &w).unwrap());
    }

    #[test]
    fn spokes_balance_at_center() {
        let fw = fan();
        let w = fan_stress(&fw, q(0, 1));
        assert_eq!(
            equilibrium_residual(&fw, &w, "O").unwrap(),
            Point::new(q(0, 1), q(0, 1))
        );
        assert_eq!(
            equilibrium_residual(&fw, &w, "A").unwrap(),
            Point::new(q(-1, 1), q(-1, 1))
        );
        assert!(!is_self_stress(&fw, &w).unwrap());
        assert!(is_self_stress(&fw, &fan_stress(&fw, q(-1, 3))).unwrap());
    }

    #[test]
    fn fan_has_one_dimensional_stress_space() {
        let fw = fan();
        let basis = self_stress_basis(&fw);
        assert_eq!(basis.dimension(), 1);
        assert!(basis.contains(&fan_stress(&fw, q(-1, 3))));
        assert!(is_self_stress(&fw, &basis.vectors[0]).unwrap());
    }

    #[test]
    fn triangle_has_no_stress() {
        let s = validate_surface(&RawSurface::from_faces([("t", vec!["a", "b", "c"])])).unwrap();
        let fw = Framework::new(
            s,
            vec![
                Point::new(q(0, 1), q(0, 1)),
                Point::new(q(2, 1), q(0, 1)),
                Point::new(q(1, 1), q(5, 3)),
            ],
        )
        .unwrap();
        assert!(self_stress_basis(&fw).is_empty());
    }

    #[test]
    fn errors() {
        let fw = fan();
        assert!(matches!(
            equilibrium_residual(&fw, &StressVector::zero(6), "Z"),
            Err(StressError::UnknownVertex(_))
        ));
        assert!(matches!(
            StressVector::from_labeled(&fw, [("A", "O", q(1, 1)), ("A", "Q", q(1, 1))]),
            Err(StressError::UnknownVertex(_))
        ));
        let s = fw.complex().clone();
        let same = vec![Point::new(q(0, 1), q(0, 1)); 4];
        assert!(matches!(
            Framework::new(s, same),
            Err(StressError::CoincidentEndpoints(..))
        ));
        assert!(matches!(
            is_self_stress(&fw, &StressVector::zero(2)),
            Err(StressError::WrongLength { .. })
        ));
    }

    #[test]
    fn f64_carrier_agrees_on_dimension() {
        let fw = fan().map_scalar(crate::scalar::Scalar::to_f64).unwrap();
        assert_eq!(self_stress_basis(&fw).dimension(), 1);
    }
}
