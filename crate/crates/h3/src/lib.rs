pub mod characters;
pub mod cli;
pub mod group;
pub mod linalg;
pub mod reps;
pub mod scalar;
pub mod verma;
pub mod verify;
