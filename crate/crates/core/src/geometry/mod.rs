//! Grid geometry: meshes, regions, strips and tiles.

pub mod mesh;
pub mod region;
pub mod strip;

pub(crate) use mesh::PathIndex;
pub use mesh::{Mesh, MeshParseError, MeshViolation};
pub use region::{cycle_interior, region_colors, BitGrid, Rect, Region, RegionError};
pub use strip::{
    boundary_strips, breadth, crop, lift, pad, strip_rect, strip_region, tiles, trim, Frame, Orientation, PaddedStrip,
    StripError, StripPacking, Tile, TileKind, Window,
};
