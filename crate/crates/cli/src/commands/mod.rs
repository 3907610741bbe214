pub mod experiments;
pub mod generate;
pub mod lattice;
pub mod solve;

pub fn millis(d: std::time::Duration) -> f64 {
    d.as_secs_f64() * 1000.0
}
