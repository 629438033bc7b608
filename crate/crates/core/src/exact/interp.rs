use num_traits::Zero;

use super::{DensePoly, Rational};
use crate::error::{ensure, Result};

/// The unique polynomial of degree `< points.len()` through every point.
///
/// Built from Newton divided differences, then expanded into the monomial
/// basis.
pub fn lagrange_interpolate(points: &[(Rational, Rational)]) -> Result<DensePoly> {
    ensure!(!points.is_empty(), "interpolation needs at least one point");
    for (i, (xi, _)) in points.iter().enumerate() {
        for (xj, _) in &points[i + 1..] {
            ensure!(xi != xj, "duplicate interpolation node x = {xi}");
        }
    }

    let n = points.len();
    let mut table: Vec<Rational> = points.iter().map(|(_, y)| y.clone()).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            let num = &table[i] - &table[i - 1];
            let den = &points[i].0 - &points[i - level].0;
            table[i] = num / den;
        }
    }

    // Horner over the Newton basis: c_{n-1}, then (x - x_i) * acc + c_i.
    let mut acc = DensePoly::constant(table[n - 1].clone());
    for i in (0..n - 1).rev() {
        let shift = DensePoly::from_coeffs(vec![-points[i].0.clone(), Rational::from_integer(1.into())]);
        acc = &(&acc * &shift) + &DensePoly::constant(table[i].clone());
    }
    if acc.coeffs().iter().all(Zero::is_zero) {
        return Ok(DensePoly::zero());
    }
    Ok(acc)
}
