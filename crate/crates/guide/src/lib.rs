//! The book chapters, compiled as doc-tests so their snippets stay in sync.
#![doc = include_str!("../../../book/src/introduction.md")]

#[doc = include_str!("../../../book/src/seeds.md")]
pub mod seeds {}

#[doc = include_str!("../../../book/src/classical.md")]
pub mod classical {}

#[doc = include_str!("../../../book/src/quantum.md")]
pub mod quantum {}

#[doc = include_str!("../../../book/src/heisenberg.md")]
pub mod heisenberg {}

#[doc = include_str!("../../../book/src/rewriting.md")]
pub mod rewriting {}

#[doc = include_str!("../../../book/src/dilog.md")]
pub mod dilog {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}

#[doc = include_str!("../../../book/src/reproduction.md")]
pub mod reproduction {}

#[doc = include_str!("../../../README.md")]
pub mod readme {}
