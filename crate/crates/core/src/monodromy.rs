use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::affine::AffineFunction;
use crate::cotree::{cotree_loop_basis, CotreeLoopBasis, FacePath, LoopHomology};
use crate::framework::{self_stress_basis, Framework, StressBasis, StressVector};
use crate::linalg::{dot, Matrix};
use crate::path::orient_face_path;
use crate::scalar::Scalar;
use crate::topology::{EdgeId, FaceId};

/// Loop lifts as linear maps of the stress: rows `3l`, `3l + 1`, `3l + 2`
/// hold the `a`, `b`, `c` coefficients of loop `l` as functionals on edge
/// weights.
#[derive(Debug, Clone)]
pub struct MonodromyMatrix<T> {
    pub cut_edges: Vec<EdgeId>,
    pub loops: Vec<FacePath>,
    pub matrix: Matrix<T>,
}

impl<T: Scalar> MonodromyMatrix<T> {
    pub fn loop_count(&self) -> usize {
        self.loops.len()
    }

    pub fn evaluate_loop(&self, l: usize, w: &StressVector<T>) -> AffineFunction<T> {
        let row = |r: usize| dot(self.matrix.row(r), w.weights());
        AffineFunction::new(row(3 * l), row(3 * l + 1), row(3 * l + 2))
    }

    pub fn evaluate(&self, w: &StressVector<T>) -> Vec<AffineFunction<T>> {
        (0..self.loop_count())
            .map(|l| self.evaluate_loop(l, w))
            .collect()
    }

    /// The matrix composed with a stress basis: `3k × d`.
    pub fn restricted(&self, stresses: &StressBasis<T>) -> Matrix<T> {
        let cols: Vec<Vec<T>> = stresses
            .vectors
            .iter()
            .map(|v| v.weights().to_vec())
            .collect();
        self.matrix.mul_columns(&cols)
    }

    /// Rank of the loop conditions on the span of `stresses`.
    pub fn rank_on(&self, stresses: &StressBasis<T>) -> usize {
        if stresses.is_empty() {
            return 0;
        }
        self.restricted(stresses).rank()
    }
}

pub fn monodromy_matrix<T: Scalar>(
    fw: &Framework<T>,
    basis: &CotreeLoopBasis,
) -> MonodromyMatrix<T> {
    let s = fw.complex();
    let loops = basis.loops().to_vec();
    let mut matrix = Matrix::zeros(3 * loops.len(), s.edge_count());
    for (l, raw) in loops.iter().enumerate() {
        let start = basis.tree_orientation(raw.start());
        let path = orient_face_path(s, raw, start).expect("cotree loops are valid face-paths");
        for (k, c) in path.crossings.iter().enumerate() {
            if path.steps[k].0 == path.steps[k + 1].0 {
                continue;
            }
            let f = AffineFunction::edge_function(fw.position(c.from), fw.position(c.to));
            for (i, coeff) in f.coefficients().into_iter().enumerate() {
                matrix.add_to(3 * l + i, c.edge.0, coeff);
            }
        }
    }
    MonodromyMatrix {
        cut_edges: basis.cotree_edges().to_vec(),
        loops,
        matrix,
    }
}

/// Basis of the self-stresses whose lift around every cotree loop is zero.
pub fn monodromy_free_basis<T: Scalar>(fw: &Framework<T>) -> StressBasis<T> {
    let stresses = self_stress_basis(fw);
    if stresses.is_empty() || fw.complex().face_count() == 0 {
        return stresses;
    }
    let basis = cotree_loop_basis(fw.complex(), FaceId(0)).expect("face 0 exists");
    let m = monodromy_matrix(fw, &basis);
    if m.loop_count() == 0 {
        return stresses;
    }
    let edges = fw.complex().edge_count();
    let vectors = m
        .restricted(&stresses)
        .null_space()
        .into_iter()
        .map(|c| StressVector::combination(edges, &stresses.vectors, &c))
        .collect();
    StressBasis { vectors }
}

/// Monodromy of one stress on a basis of first homology.
#[derive(Debug, Clone, PartialEq)]
pub struct MonodromySignature {
    /// Cotree loop index and its lift, for loops whose classes form a
    /// homology basis. Zero-lift loops are chosen first.
    pub representatives: Vec<(usize, AffineFunction<BigRational>)>,
    /// Dimension of the span of all loop lifts.
    pub image_rank: usize,
    /// Generator of the lattice of loop lifts when they span a line,
    /// normalized so its first nonzero coefficient is positive.
    pub lattice_generator: Option<AffineFunction<BigRational>>,
}

impl MonodromySignature {
    pub fn trivial_count(&self) -> usize {
        self.representatives
            .iter()
            .filter(|(_, f)| f.is_zero())
            .count()
    }

    pub fn is_monodromy_free(&self) -> bool {
        self.image_rank == 0
    }
}

pub fn monodromy_signature(
    fw: &Framework<BigRational>,
    w: &StressVector<BigRational>,
    basis: &CotreeLoopBasis,
) -> MonodromySignature {
    let s = fw.complex();
    let values = monodromy_matrix(fw, basis).evaluate(w);
    let homology = LoopHomology::<BigRational>::new(s, basis);
    let order = (0..values.len())
        .filter(|&l| values[l].is_zero())
        .chain((0..values.len()).filter(|&l| !values[l].is_zero()));
    let representatives = homology
        .basis_loops_from(s, basis, order)
        .into_iter()
        .map(|l| (l, values[l].clone()))
        .collect();
    let rows: Vec<Vec<BigRational>> = values.iter().map(|f| f.coefficients().to_vec()).collect();
    let image_rank = Matrix::from_rows(3, rows).rank();
    let lattice_generator = (image_rank == 1).then(|| lattice_generator(&values));
    MonodromySignature {
        representatives,
        image_rank,
        lattice_generator,
    }
}

/// Generator of the group spanned by collinear affine functions.
fn lattice_generator(values: &[AffineFunction<BigRational>]) -> AffineFunction<BigRational> {
    let lead = values
        .iter()
        .find(|f| !f.is_zero())
        .expect("rank one has a nonzero value");
    let lead_coeffs = lead.coefficients();
    let j = lead_coeffs
        .iter()
        .position(|x| !x.is_zero())
        .expect("nonzero");
    let mut numer = BigInt::zero();
    let mut denom = BigInt::one();
    for f in values {
        let r = f.coefficients()[j].clone() / lead_coeffs[j].clone();
        numer = numer.gcd(r.numer());
        denom = denom.lcm(r.denom());
    }
    let g = lead.scale(&BigRational::new(numer, denom));
    if g.coefficients()
        .iter()
        .find(|x| !x.is_zero())
        .is_some_and(|x| x.is_negative())
    {
        -g
    } else {
        g
    }
}
