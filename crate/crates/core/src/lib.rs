//! Decoupled implicit-explicit BDF / Galerkin finite element solver for the
//! two-dimensional thermistor (Joule heating) problem on the unit square.
//!
//! ```no_run
//! use thermistor::{run_simulation, ErrorReport, ElemKind, ManufacturedProblem, SchemeConfig, SchemeKind, TauRule};
//!
//! let cfg = SchemeConfig::new(SchemeKind::Bdf2, 16, ElemKind::Quad, TauRule::SqrtH);
//! let sim = run_simulation(&cfg, &ManufacturedProblem).unwrap();
//! let report = ErrorReport::from_simulation(&sim, &ManufacturedProblem);
//! println!("{:.3e}", report.u.l2);
//! ```

pub mod analysis;
pub mod error;
pub mod fem;
pub mod harness;
pub mod manufactured;
pub mod mesh;
pub mod problem;
pub mod schemes;

pub use analysis::{eoc, ErrorReport, FieldErrors};
pub use error::{Error, Result};
pub use manufactured::ManufacturedProblem;
pub use mesh::{build_mesh, macroelements, ElemKind, Mesh};
pub use problem::ProblemData;
pub use schemes::{run_simulation, SchemeConfig, SchemeKind, StartMode, TauRule};
