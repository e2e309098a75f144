pub mod audit;
pub mod bezier;
pub mod detect;
pub mod cap;
pub mod energy;
pub mod error;
pub mod frame;
pub mod io;
pub mod isophote;
pub mod knots;
pub mod meshes;
pub mod net;
pub mod point;
pub mod spline;
pub mod stencil;
pub mod surface;
pub mod t2;
pub mod tessellate;
pub mod tmesh;

pub use bezier::{BBPatch, Dir, Edge, Jet};
pub use error::{GtError, Result};
pub use point::{Affine3, Point3};
