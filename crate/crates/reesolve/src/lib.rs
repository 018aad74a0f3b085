//! Exact symbolic computation for hypersurface singularities in positive
//! characteristic: weighted Rees algebras, Hasse differential operators,
//! singular loci, elimination algebras, the tau invariant, chart-wise
//! monoidal transformations and the strong monomial contact exponents, with
//! a scenario runner reproducing two worked resolutions chart by chart.
//!
//! See the `book/` directory for a guided tour; its code snippets are
//! compiled as doc-tests through the [`guide`] module.
//!
//! # Quick example
//!
//! ```
//! use reesolve::prelude::*;
//!
//! let field = FieldCtx::new(2, 1)?;
//! let ring = RingCtx::new(field, vec!["Z".into(), "X".into(), "Y".into()]);
//! let f = parse_poly("Z^2+Y^7+X^4*Y", &ring)?;
//! let algebra = ReesAlgebra::new(ring.clone(), vec![WeightedGenerator::new(f, 2)]);
//!
//! // the differential closure picks up (Y^6+X^4)W
//! let closed = algebra.diff_closure();
//! assert_eq!(closed.to_string(), "[(Z^2+Y^7+X^4*Y)W^2, (Y^6+X^4)W^1]");
//! # Ok::<(), reesolve::Error>(())
//! ```

pub mod blowup;
pub mod cone;
pub mod elim;
pub mod error;
pub mod field;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod rees;
pub mod repl;
pub mod scenario;

mod builtin;
mod guide;

pub use builtin::{builtin_scenario, golden_report, BUILTIN_NAMES};
pub use error::{Error, Result};

/// The common imports for working with the library.
pub mod prelude {
    pub use crate::blowup::{
        blowup_chart, check_elim_commutes, is_permissible, lift_center, normalize_center, Center,
        Chart, Divisor,
    };
    pub use crate::cone::{diff_close_homogeneous, initial_ideal, tau, vertex_space};
    pub use crate::elim::{
        elimination_algebra, is_transversal, monic_form, specialize_invariant, MonicForm,
        UniversalInvariant,
    };
    pub use crate::error::{Error, Result};
    pub use crate::field::{FieldCtx, Fq};
    pub use crate::monomial::{
        clean_pe_powers, condition_c, divisor_slope, point_slope, resolve_monomial,
        strong_exponent, MonomialAlgebra, Slope,
    };
    pub use crate::parse::parse_poly;
    pub use crate::poly::{enumerate_points, MultiIndex, Poly, RingCtx};
    pub use crate::rees::{DiffClosed, ReesAlgebra, SingIdeal, WeightedGenerator};
    pub use crate::scenario::{run_scenario, Report, ResolutionState, Scenario, Step};
}
