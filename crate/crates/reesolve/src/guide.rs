//! The book chapters under `book/src/` double as doc-tests: each chapter is
//! included here verbatim, so `cargo test --doc` compiles and runs every
//! code snippet the guide shows. This keeps the prose and the library in
//! sync by construction.

#[doc = include_str!("../../../book/src/rees-algebras.md")]
pub mod rees_algebras {}

#[doc = include_str!("../../../book/src/hasse-derivatives.md")]
pub mod hasse_derivatives {}

#[doc = include_str!("../../../book/src/blowups.md")]
pub mod blowups {}

#[doc = include_str!("../../../book/src/elimination.md")]
pub mod elimination {}

#[doc = include_str!("../../../book/src/tau.md")]
pub mod tau {}

#[doc = include_str!("../../../book/src/monomial-contact.md")]
pub mod monomial_contact {}

#[doc = include_str!("../../../book/src/worked-resolutions.md")]
pub mod worked_resolutions {}
