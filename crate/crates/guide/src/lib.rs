//! The book's chapters double as doc-tests.
//!
//! mdbook cannot link the library crate when it runs snippet tests, so each
//! chapter is included here as a module doc and `cargo test --doc -p guide`
//! compiles and runs every `rust` code fence in the book. A failing snippet
//! names its chapter module in the test output.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/exact-arithmetic.md")]
pub mod exact_arithmetic {}

#[doc = include_str!("../../../book/src/cyclotomic-fields.md")]
pub mod cyclotomic_fields {}

#[doc = include_str!("../../../book/src/representing-primes.md")]
pub mod representing_primes {}

#[doc = include_str!("../../../book/src/brezing-weng.md")]
pub mod brezing_weng {}

#[doc = include_str!("../../../book/src/validation.md")]
pub mod validation {}

#[doc = include_str!("../../../book/src/small-degrees.md")]
pub mod small_degrees {}

#[doc = include_str!("../../../book/src/instantiation.md")]
pub mod instantiation {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
