//! Code listings from the `book/` guide, compiled and run as doc-tests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/words.md")]
pub mod words {}

#[doc = include_str!("../../../book/src/syllables.md")]
pub mod syllables {}

#[doc = include_str!("../../../book/src/rectangles.md")]
pub mod rectangles {}

#[doc = include_str!("../../../book/src/covering.md")]
pub mod covering {}

#[doc = include_str!("../../../book/src/braids.md")]
pub mod braids {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}

#[doc = include_str!("../../../README.md")]
pub mod readme {}
