pub mod analyze;
pub mod dispersion;
pub mod simulate;
pub mod stability;
pub mod vapor;
