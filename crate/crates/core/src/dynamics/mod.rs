//! Degree growth, base-points and their persistence under iteration.

pub mod basepoints;
pub mod growth;
pub mod jonquieres;
pub mod persistence;

pub use basepoints::{proper_base_points, BaseLocus, BasePoint, PointCluster};
pub use growth::{classify_growth, lambda_estimate, theil_sen_slope, GrowthClass, GrowthReport, LambdaEstimate};
pub use jonquieres::{conjugate_iterate_degrees, jonquieres_bp_count, mu_estimate, mu_from_degrees, preserves_pencil, validate_profile, MuEstimate, MultiplicityProfile};
pub use persistence::{persistence_scan, BaseCount, IterateRecord, PersistenceReport};
