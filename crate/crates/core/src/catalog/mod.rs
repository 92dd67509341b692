//! Named objects: `H`, its automorphisms, simple modules, the direct sums
//! `Omega_*`, and the lifted families `U*`.

pub mod hopf;
pub mod iso;
pub mod keys;
pub mod lift;
pub mod modules;
