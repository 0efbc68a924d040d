//! Exact computations with left-invariant contact structures on Lie algebras.
//!
//! All input data are Gaussian rationals ([`Scalar`]), so identities are
//! checked with zero tolerance. A floating path exists only where the
//! mathematics leaves the rationals. The polar construction of associated
//! metrics is one such place. Eigenbases for irrational spectra are another.
//!
//! ```
//! use contact_lie::{catalog, metric};
//!
//! let entry = catalog::entry("heisenberg3").unwrap();
//! let c = entry.contact_structure().unwrap();
//! assert_eq!(c.top_coefficient().to_string(), "-1/2");
//! let g = entry.metric().unwrap();
//! assert!(metric::is_kcontact(&c, g).unwrap());
//! ```

pub mod algebra;
pub mod catalog;
pub mod contact;
pub mod error;
pub mod extension;
pub mod forms;
pub mod io;
pub mod linalg;
pub mod metric;
pub mod normal_form;
pub mod poly;
pub mod sample;
pub mod scalar;
pub mod spectral;

pub use algebra::{Endomorphism, FieldKind, LieAlgebra, Vector};
pub use contact::ContactStructure;
pub use error::{Error, ErrorClass, Result};
pub use forms::AlternatingForm;
pub use linalg::Matrix;
pub use metric::MetricData;
pub use poly::Polynomial;
pub use scalar::{Field, Scalar, FLOAT_TOLERANCE};
