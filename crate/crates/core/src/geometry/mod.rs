//! Surfaces, the auxiliary fan surface, measurement lines, sampling grids
//! and panel meshes.

mod fan;
mod line;
mod mesh;
mod profile;

pub use fan::{fan_surface, AuxiliarySurface, FAN_PLANE_HEIGHT};
pub use line::{measurement_line, sampling_grid, GridSpec, MeasurementLine, SamplingGrid};
pub use mesh::{
    discretize, BoundaryMesh, MeshOptions, Panel, PanelPoint, Piece, Refinement, WINDOW_MARGIN, WINDOW_WAVELENGTHS,
};
pub use profile::{
    example_profile, Bump, ProfileShape, Surface, SurfaceProfile, DEFAULT_BASE, DEFAULT_BLEND, DEFAULT_TRUNCATION,
};
