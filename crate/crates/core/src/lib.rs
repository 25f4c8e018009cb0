//! Visualization processes modeled as diagrams of finite sets.
//!
//! [`finset`] holds sets and total maps, [`diagram`] checks axioms and
//! commutativity over simple paths, [`process`] binds the eight object and
//! fourteen morphism roles, and [`analysis`] derives render properties, chart
//! junk, intension and question answering. [`spec_io`] reads and writes the
//! `.viscat` text format and [`cli`] backs the `viscat` binary.

pub mod diagram;
pub mod finset;
pub mod process;
pub mod analysis;
pub mod spec_io;
pub mod cli;
