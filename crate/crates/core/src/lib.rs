//! Exact and numerical verification of quantum lens spaces obtained by gluing two
//! quantum solid tori along a quantum torus.

pub mod comodule;
pub mod cover;
pub mod galois;
pub mod lens;
pub mod linalg;
pub mod ncalg;
pub mod reps;
pub mod scalar;
