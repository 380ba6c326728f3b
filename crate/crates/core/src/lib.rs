pub mod error;
pub mod lattice;
pub mod laurent;
pub mod paths;
pub mod snakes;
pub mod qchar;
pub mod tsystem;
pub mod b2restrict;
pub mod sl2core;
