pub mod moy;

pub use moy::moy_polynomial;
