//! Exact classification of quantum-plane structures on GL(2).
//!
//! A plane with commutative coordinates and differential relations
//! `xi^2 = h0 xi eta`, `eta^2 = r0 xi eta`, `eta xi = -p0 xi eta` is brought by
//! an explicit linear change of generators to either the Drinfeld-Jimbo plane
//! of `GL_{q,p}(2)` (with `q = 1`) or the Jordanian plane of `GL_{h,h'}(2)`
//! (with `h = 0`). All arithmetic is exact over `Q` or one quadratic
//! extension `Q(sqrt(D))`.
//!
//! - [`field`]: rationals and `a + b*sqrt(D)` scalars
//! - [`plane`]: relation coefficients, normal forms, changes of generators
//! - [`classify`]: the case analysis on the discriminant
//! - [`matrixalg`]: quantum-matrix relations and the induced similarity
//! - [`report`]: text and JSON reports
//! - [`sampling`]: seeded random parameters and the self-test driver

pub mod classify;
pub mod cli;
pub mod field;
pub mod linalg;
pub mod matrixalg;
pub mod plane;
pub mod report;
pub mod sampling;

pub use classify::{classify, CaseTag, Classification, PlaneParams};
pub use field::{ExtensionTag, FieldError, Rational, Scalar};
pub use matrixalg::{check_similarity, entry_substitution, manin_relations, ManinRelationSet, QuadraticRelation};
pub use plane::{
    dj_plane, input_plane, jordanian_plane, transform_coord, transform_diff, Plane, PlaneError, Transform2,
};
