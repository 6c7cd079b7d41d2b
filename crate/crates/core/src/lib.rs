//! Exact Maxwell–Cremona liftings of self-stressed frameworks drawn from
//! polygonal surfaces into the plane.
//!
//! The core is generic over the scalar type. Exact work uses
//! [`Rational`]; the `*F64` aliases give a floating-point preview.

pub mod affine;
pub mod cotree;
pub mod fixtures;
pub mod framework;
pub mod io;
pub mod lifting;
pub mod linalg;
pub mod monodromy;
pub mod path;
pub mod scalar;
pub mod topology;

pub use affine::AffineFunction;
pub use cotree::{cotree_loop_basis, tree_face_path, CotreeLoopBasis, FacePath, LoopHomology};
pub use fixtures::{FixtureError, FixtureSpec};
pub use framework::{
    equilibrium_residual, is_self_stress, self_stress_basis, Framework, Point, StressBasis,
    StressError, StressVector,
};
pub use io::{
    export_obj, parse_stress, parse_surface, serialize_surface, write_stress, FormatError,
    SurfaceFile,
};
pub use lifting::{
    fundamental_domain_lifting, lift_all_faces, recover_stress, recover_stress_with_periods,
    FundamentalDomainLifting, LiftingResult,
};
pub use monodromy::{
    monodromy_free_basis, monodromy_matrix, monodromy_signature, MonodromyMatrix,
    MonodromySignature,
};
pub use path::{
    elementary_lift, move1, move1_inverse, move2, move2_inverse, orient_face_path, path_lift,
    vertex_loop, Crossing, LiftError, OrientedFacePath,
};
pub use scalar::{rational, Scalar};
pub use topology::{
    coherent_orientation, topology_report, validate_surface, EdgeId, FaceId, Orientation,
    RawSurface, SurfaceComplex, TopologyError, TopologyReport, VertexId,
};

pub type Rational = num_rational::BigRational;

pub type FrameworkQ = Framework<Rational>;
pub type StressVectorQ = StressVector<Rational>;
pub type StressBasisQ = StressBasis<Rational>;
pub type AffineFunctionQ = AffineFunction<Rational>;
pub type PointQ = Point<Rational>;

pub type FrameworkF64 = Framework<f64>;
pub type StressVectorF64 = StressVector<f64>;
pub type AffineFunctionF64 = AffineFunction<f64>;
pub type LiftingResultQ = LiftingResult<Rational>;
pub type FundamentalDomainLiftingQ = FundamentalDomainLifting<Rational>;
