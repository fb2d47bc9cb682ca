#![allow(dead_code)]
pub mod reference;

use abnrl::radial::{RadialFn, RadialGrid, RadialSpinor};
use num_complex::Complex64;
use std::sync::Arc;

/// Smooth bump in log r, supported on [e^{-2.5}, e^{2.5}].
pub fn bump(r: f64) -> f64 {
    let s = r.ln() / 2.5;
    if s.abs() < 1.0 {
        (-1.0 / (1.0 - s * s)).exp()
    } else {
        0.0
    }
}

pub fn bump_fn(grid: &Arc<RadialGrid>) -> RadialFn {
    RadialFn::from_fn(grid.clone(), |r| Complex64::new(bump(r), 0.5 * bump(r))).unwrap()
}

pub fn bump_spinor(grid: &Arc<RadialGrid>) -> RadialSpinor {
    RadialSpinor::from_fn(grid.clone(), |r| {
        [Complex64::new(bump(r), 0.3 * bump(r)), Complex64::new(0.0, -r * bump(r))]
    })
    .unwrap()
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}
