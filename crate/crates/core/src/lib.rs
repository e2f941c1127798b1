pub mod analysis;
pub mod catalog;
pub mod cohomology;
pub mod error;
pub mod gf;
pub mod io;
pub mod liep;
pub mod linalg;
pub mod rep;
pub mod suite;
pub mod uenv;
