//! Exact homological algebra over small principal ideal rings and Koszul
//! DG-rings: Smith forms, free complexes, semi-free resolutions, local
//! cohomology and completion via telescopes, and homological dimensions.

pub mod cache;
pub mod complex;
pub mod dg;
pub mod cli;
pub mod dimension;
pub mod error;
pub mod harness;
pub mod json;
pub mod local;
pub mod mutation;
pub mod ring;

pub use error::{Error, Result};
pub use ring::matrix::{DomainMatrix, Matrix};
pub use ring::module::{module_invariants, module_iso_test, subquotient, ModuleInvariants, ModulePresentation};
pub use ring::smith::{smith_normal_form, SmithDecomposition};
pub use ring::{Coefficients, Domain, Poly, RingElement, RingSpec, Value};
pub use complex::{cohomology, is_quasi_iso, CohomologyTable, ComplexMap, FreeComplex};
