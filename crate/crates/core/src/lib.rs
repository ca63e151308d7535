pub mod algebra;
pub mod boettcher;
pub mod error;
pub mod family;
pub mod orbit;
pub mod sphere;
pub mod render;
pub mod verify;
