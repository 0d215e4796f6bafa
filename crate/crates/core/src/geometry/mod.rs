//! Geodesics of the exterior of a ball and the diffracted rays built from
//! them.

mod homotopy;
mod integrator;
mod ray;
mod scene;
pub mod vec3;

pub use homotopy::{
    crossing_number, minimal_geodesic, planar_diffracted_ray, winding_number, HomotopyClass, PlanarPath, PlanarSegment, Point2,
};
pub use integrator::{
    acceleration, bifurcate, classify_contact, geodesic_integrate, normal_curvature, BoundaryChart, BoundaryGeodesicState,
    ContactClass, ContactConfig, SphereChart, Trajectory, TrajectorySample, BOUNDARY_TOL,
};
pub use ray::{
    arc_angle, arc_frame, conjugate_point_count, ray_jacobian, ray_spread_amplitude, sphere_diffracted_ray, RayPath, Segment,
};
pub use scene::{ObstacleScene, SourceDistance};
