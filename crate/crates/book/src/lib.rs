//! Compiles the guide under `book/` so its listings run as doc-tests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/state-vectors.md")]
pub mod state_vectors {}
#[doc = include_str!("../../../book/src/fourier.md")]
pub mod fourier {}
#[doc = include_str!("../../../book/src/encoding.md")]
pub mod encoding {}
#[doc = include_str!("../../../book/src/filtering.md")]
pub mod filtering {}
#[doc = include_str!("../../../book/src/transpose.md")]
pub mod transpose {}
#[doc = include_str!("../../../book/src/classical.md")]
pub mod classical {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
