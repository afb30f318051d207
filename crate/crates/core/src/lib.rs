// dense index loops read best in the exact linear algebra
#![allow(clippy::needless_range_loop)]

pub mod certificate;
pub mod fan;
pub mod ggraph;
pub mod group;
pub mod linalg;
pub mod monomial;
pub mod planar;
pub mod report;
pub mod resolution;
