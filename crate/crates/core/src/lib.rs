//! Exact spectra, bentness predicates and constructions for Boolean, generalized
//! and vectorial functions over GF(2^n).
//!
//! All arithmetic is exact: spectra live in `Z[zeta_{2^K}]` (see [`cyclo`]).

#![no_std]

extern crate alloc;

pub mod boolfn;
pub mod constructions;
pub mod cyclo;
pub mod error;
pub mod field;
pub mod genfn;
pub mod linalg;
pub mod reference;
pub mod star;
pub mod transform;
pub mod vect;

pub use boolfn::{BoolFn, Flavor, WalshSpectrum};
pub use constructions::{AmTriple, Permutation};
pub use cyclo::CycInt;
pub use error::{ConstructionError, CycError, FieldError, FnError, GroupError};
pub use field::{Field, SubfieldEmbedding};
pub use genfn::{GenFn, GenSpectrum, ShiftDirection};
pub use star::{Partition, StarGroup};
pub use vect::VectFn;
