//! Combinatorial Cohen–Macaulay and virtual Cohen–Macaulay checks for
//! simplicial complexes over products of projective spaces.

pub mod complex;
pub mod error;
pub mod format;
pub mod homology;
pub mod linalg;
pub mod map;
pub mod monomial;
pub mod shelling;
pub mod stanley_reisner;
pub mod toric;
pub mod virtual_cm;

pub use complex::{Face, SimplicialComplex, VertexLabeling};
pub use error::{Error, Result};
pub use homology::{Field, HomologyVector, IntegerGroup, IntegerHomologyVector};
pub use map::SimplicialMap;
pub use monomial::{Monomial, MonomialIdeal};
pub use toric::{Ambient, ToricContext};
