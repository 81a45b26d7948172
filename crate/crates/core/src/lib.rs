//! Dessins d'enfants, coset enumeration, finite geometries and Pauli-group
//! contextuality.

pub mod contextuality;
pub mod dessin;
pub mod fpgroup;
pub mod geometry;
pub mod belyi;
pub mod parallel;
pub mod pauli;
pub mod perm;
