//! Exact-rational geometry of straight cycles on the flat torus: cycle
//! configurations, intersections, gradings, and certified triangle
//! enumeration.

mod config;
mod grading;
mod line;
mod triangles;

pub use config::{
    geometric_dimensions, hom_points, place_default_dots, validate_config, ConfigReport,
    TorusConfig,
};
pub use grading::{grading_lifts, maslov_index, GradingOutcome, InfeasibilityWitness, FLOOR_MARGIN};
pub use line::{class_det, intersections, LiftedLine, TorusError, TorusLine};
pub use triangles::{
    enumerate_candidate_triangles, enumerate_triangles, enumerate_triangles_with,
    puncture_covering_radius, TriangleGroups, TrianglePatch,
};
