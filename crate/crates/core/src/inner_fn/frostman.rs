use num_complex::Complex64;

use super::InnerError;

/// Pointwise Frostman shift `θ_a = (θ - a)/(1 - conj(a)θ)` of an inner function.
pub fn frostman_shift<F>(theta: F, a: Complex64) -> Result<impl Fn(Complex64) -> Complex64, InnerError>
where
    F: Fn(Complex64) -> Complex64,
{
    if !(a.norm() < 1.0) {
        return Err(InnerError::FrostmanParameter(a.norm()));
    }
    Ok(move |z: Complex64| {
        let t = theta(z);
        (t - a) / (Complex64::new(1.0, 0.0) - a.conj() * t)
    })
}

/// Upper bound `2|a|/(1-|a|)` for `‖θ - θ_a‖_∞`.
pub fn frostman_bound(a: Complex64) -> f64 {
    2.0 * a.norm() / (1.0 - a.norm())
}
