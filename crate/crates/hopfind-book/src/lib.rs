//! Doc-test shim for the book: each chapter of `book/src` is included as
//! module documentation so `cargo test --doc -p hopfind-book` compiles and
//! runs every code block. This keeps the book and the library in sync; a
//! snippet that drifts from the API fails the build.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/cyclotomic.md")]
pub mod cyclotomic {}

#[doc = include_str!("../../../book/src/hopf.md")]
pub mod hopf {}

#[doc = include_str!("../../../book/src/indicators.md")]
pub mod indicators {}

#[doc = include_str!("../../../book/src/sequences.md")]
pub mod sequences {}

#[doc = include_str!("../../../book/src/qcomb.md")]
pub mod qcomb {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
