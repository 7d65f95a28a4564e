//! Scalar special functions and log-domain helpers shared across the crate.

pub use statrs::function::beta::ln_beta;
pub use statrs::function::gamma::{digamma, ln_gamma};

/// Trigamma function psi'(x), the second derivative of ln Gamma.
///
/// Recurrence psi'(x) = psi'(x+1) + 1/x^2 below 10, then the asymptotic
/// expansion (Abramowitz & Stegun 6.4.11).
pub fn trigamma(x: f64) -> f64 {
    if x <= 0.0 {
        return f64::NAN;
    }
    let mut shifted = x;
    let mut acc = 0.0;
    while shifted < 10.0 {
        acc += 1.0 / (shifted * shifted);
        shifted += 1.0;
    }
    let inv = 1.0 / shifted;
    let inv2 = inv * inv;
    let inv3 = inv2 * inv;
    let inv5 = inv3 * inv2;
    let inv7 = inv5 * inv2;
    acc + inv + inv2 / 2.0 + inv3 / 6.0 - inv5 / 30.0 + inv7 / 42.0
}

/// log(exp(a) + exp(b)) without overflow; handles -inf operands.
pub fn log_add_exp(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

/// log sum of exp over a slice; -inf for an empty or all -inf input.
pub fn log_sum_exp(values: &[f64]) -> f64 {
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if hi == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    let sum: f64 = values.iter().map(|v| (v - hi).exp()).sum();
    hi + sum.ln()
}

/// Standard logistic function 1 / (1 + exp(-x)).
pub fn logistic(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        e / (1.0 + e)
    }
}

/// Log odds of p; caller guarantees p in (0, 1).
pub fn logit(p: f64) -> f64 {
    (p / (1.0 - p)).ln()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trigamma_reference_values() {
        // pi^2/6, pi^2/6 - 1, and psi'(10) from standard tables.
        assert!((trigamma(1.0) - 1.6449340668482264).abs() < 1e-12);
        assert!((trigamma(2.0) - 0.6449340668482264).abs() < 1e-12);
        assert!((trigamma(10.0) - 0.10516633568168575).abs() < 1e-12);
        assert!((trigamma(0.5) - 4.9348022005446793).abs() < 1e-10);
    }

    #[test]
    fn log_sum_exp_matches_direct() {
        let xs = [-2.0, 0.5, 1.25, -10.0];
        let direct: f64 = xs.iter().map(|x| x.exp()).sum::<f64>().ln();
        assert!((log_sum_exp(&xs) - direct).abs() < 1e-14);
    }

    #[test]
    fn log_add_exp_neg_infinity() {
        assert_eq!(log_add_exp(f64::NEG_INFINITY, 1.5), 1.5);
        assert_eq!(log_add_exp(1.5, f64::NEG_INFINITY), 1.5);
        assert_eq!(
            log_add_exp(f64::NEG_INFINITY, f64::NEG_INFINITY),
            f64::NEG_INFINITY
        );
    }

    #[test]
    fn logistic_is_stable_in_the_tails() {
        assert!((logistic(800.0) - 1.0).abs() < 1e-15);
        assert!(logistic(-800.0) > 0.0);
        assert!((logistic(0.0) - 0.5).abs() < 1e-15);
    }
}
