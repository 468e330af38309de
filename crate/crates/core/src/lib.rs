pub mod blowup;
pub mod cartan;
pub mod chevalley;
pub mod cohomology;
pub mod error;
pub mod graph;
pub mod multipoly;
pub mod qpoly;
pub mod tau;
pub mod toda_flow;
pub mod verify;
pub mod weyl;

pub use error::{Error, Result};
