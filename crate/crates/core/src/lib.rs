//! Exact computations for representations of type-A quivers: degeneration
//! posets, Bongartz data of minimal degenerations, Poincaré polynomials of quiver
//! Grassmannians (by a stratification recursion and by finite-field point counts)
//! and numerical checks of surjectivity for specialization maps.

pub mod error;
pub mod explicit;
pub mod grass;
pub mod homalg;
pub mod degen;
pub mod linalg;
pub mod pointcount;
pub mod poly;
pub mod quiver;
pub mod specialize;
pub mod text;

pub use error::{Error, Result};
pub use explicit::{explicit_of, hom_basis, ExplicitHom, ExplicitRep};
pub use homalg::{euler_form, PathAlgebra, Subquotient, TauDirection};
pub use quiver::{enumerate_rep_classes, intervals_of, Arrow, DimVector, Interval, RepClass, TypeAQuiver};
pub use grass::{Grassmannians, StratumRecord};
pub use pointcount::{betti_oracle, point_count, OracleOptions};
pub use poly::PoincarePoly;
pub use specialize::{check_cover, check_degeneration, pbw_rep, verify_theorem, SpecializationReport, VerifyOptions, VerifySummary};
pub use text::{parse_dim, parse_quiver, parse_rep};
