//! Modified Bessel function of the first kind, order zero.

use crate::error::{Error, Result};

/// Arguments up to this value use the power series, larger ones the
/// asymptotic expansion.
pub const SERIES_CUTOFF: f64 = 15.0;

/// `I0(x)` for `x >= 0`.
///
/// Fails with [`Error::Overflow`] once `I0(x)` exceeds `f64::MAX`
/// (around `x = 713.98`); [`bessel_i0_scaled`] has no such limit.
pub fn bessel_i0(x: f64) -> Result<f64> {
    check_arg(x)?;
    if x <= SERIES_CUTOFF {
        return Ok(power_series(x));
    }
    let value = asymptotic_scaled(x) * x.exp();
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Overflow { x })
    }
}

/// `exp(-x) I0(x)` for `x >= 0`, finite for every finite argument.
pub fn bessel_i0_scaled(x: f64) -> f64 {
    assert!(x >= 0.0, "bessel_i0_scaled requires x >= 0, got {x}");
    if x <= SERIES_CUTOFF {
        power_series(x) * (-x).exp()
    } else {
        asymptotic_scaled(x)
    }
}

fn check_arg(x: f64) -> Result<()> {
    if x.is_nan() || x < 0.0 {
        return Err(Error::InvalidInput(format!(
            "I0 requires a nonnegative argument, got {x}"
        )));
    }
    if x.is_infinite() {
        return Err(Error::Overflow { x });
    }
    Ok(())
}

// sum_m (x^2/4)^m / (m!)^2; all terms positive, no cancellation
fn power_series(x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut m = 1.0;
    while term > f64::EPSILON * 1e-2 * sum {
        term *= q / (m * m);
        sum += term;
        m += 1.0;
    }
    sum
}

// exp(-x) I0(x) ~ (2 pi x)^{-1/2} sum_k ((2k-1)!!)^2 / (k! (8x)^k)
fn asymptotic_scaled(x: f64) -> f64 {
    let mut term = 1.0f64;
    let mut sum = 1.0;
    let mut k = 1.0f64;
    loop {
        let next = term * (2.0 * k - 1.0).powi(2) / (8.0 * x * k);
        // divergent series: stop at the smallest term
        if next >= term || next < f64::EPSILON * 1e-2 * sum {
            break;
        }
        sum += next;
        term = next;
        k += 1.0;
    }
    sum / (2.0 * std::f64::consts::PI * x).sqrt()
}
