//! Estrada indices and overflow-safe sums of exponentials.

use serde::Serialize;

use crate::spectra::Spectrum;

/// Exponent above which `e^x` is handled in the log domain.
pub const OVERFLOW_EXPONENT: f64 = 700.0;

/// Neumaier's compensated summation.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(xs: I) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for x in xs {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// `ln(sum e^{x_i})` without overflow. Returns `-inf` for an empty slice.
pub fn log_sum_exp(xs: &[f64]) -> f64 {
    let max = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !max.is_finite() {
        return max;
    }
    max + compensated_sum(xs.iter().map(|x| (x - max).exp())).ln()
}

/// A finite sum `sum_k c_k e^{x_k}`, the shape of every index and bound
/// handled here. Coefficients may be negative as long as the total is
/// positive.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ExpSeries {
    terms: Vec<(f64, f64)>,
}

impl ExpSeries {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `coef * e^{exponent}`; zero coefficients are dropped.
    pub fn term(mut self, coef: f64, exponent: f64) -> Self {
        if coef != 0.0 {
            self.terms.push((coef, exponent));
        }
        self
    }

    /// Adds a constant.
    pub fn constant(self, c: f64) -> Self {
        self.term(c, 0.0)
    }

    pub fn extend(mut self, other: &ExpSeries) -> Self {
        self.terms.extend_from_slice(&other.terms);
        self
    }

    pub fn max_exponent(&self) -> f64 {
        self.terms
            .iter()
            .map(|&(_, x)| x)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// True when some term would overflow a direct evaluation.
    pub fn needs_log_domain(&self) -> bool {
        self.max_exponent() > OVERFLOW_EXPONENT
    }

    /// Direct evaluation, or `None` when [`needs_log_domain`](Self::needs_log_domain).
    pub fn value(&self) -> Option<f64> {
        if self.needs_log_domain() {
            return None;
        }
        Some(compensated_sum(
            self.terms.iter().map(|&(c, x)| c * x.exp()),
        ))
    }

    /// Natural log of the sum. NaN if the sum is not positive.
    pub fn ln(&self) -> f64 {
        let logs = |positive: bool| -> Vec<f64> {
            self.terms
                .iter()
                .filter(|&&(c, _)| (c > 0.0) == positive)
                .map(|&(c, x)| c.abs().ln() + x)
                .collect()
        };
        let pos = log_sum_exp(&logs(true));
        let neg = log_sum_exp(&logs(false));
        if neg == f64::NEG_INFINITY {
            pos
        } else {
            // ln(P - N) = ln P + ln(1 - N/P)
            pos + (-(neg - pos).exp_m1()).ln()
        }
    }
}

/// A sum of exponentials of a spectrum: the Estrada index of the adjacency
/// spectrum or the distance Estrada index of the distance spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EstradaValue {
    /// Direct sum; infinite when `overflowed`.
    pub value: f64,
    /// Natural log of the sum, via log-sum-exp.
    pub log_value: f64,
    /// Some eigenvalue exceeds [`OVERFLOW_EXPONENT`].
    pub overflowed: bool,
}

/// The exponential series `sum_i e^{lambda_i}` of a spectrum.
pub fn spectrum_series(s: &Spectrum) -> ExpSeries {
    s.values()
        .iter()
        .fold(ExpSeries::new(), |acc, &x| acc.term(1.0, x))
}

pub fn estrada_index(s: &Spectrum) -> EstradaValue {
    let overflowed = s.values().iter().any(|&x| x > OVERFLOW_EXPONENT);
    let value = if overflowed {
        f64::INFINITY
    } else {
        compensated_sum(s.values().iter().map(|x| x.exp()))
    };
    EstradaValue {
        value,
        log_value: log_sum_exp(s.values()),
        overflowed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::E;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1.0)
    }

    #[test]
    fn complete_graph_closed_form() {
        // {n-1, -1 x (n-1)} for n = 3.
        let s = Spectrum::from_unsorted(vec![2.0, -1.0, -1.0]);
        let v = estrada_index(&s);
        assert!((v.value - 8.124_815_110_053).abs() < 1e-6);
        assert!(rel(v.value, E * E + 2.0 / E) < 1e-15);
        assert!((v.value.ln() - v.log_value).abs() < 1e-12);
        assert!(!v.overflowed);
    }

    #[test]
    fn zero_spectrum() {
        let v = estrada_index(&Spectrum::from_unsorted(vec![0.0; 7]));
        assert_eq!(v.value, 7.0);
        assert!((v.log_value - 7f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn overflow_is_flagged_and_log_stays_finite() {
        let v = estrada_index(&Spectrum::from_unsorted(vec![800.0, 1.0, -3.0]));
        assert!(v.overflowed);
        assert!(v.value.is_infinite());
        assert!((v.log_value - 800.0).abs() < 1e-12);
    }

    #[test]
    fn series_log_matches_direct() {
        let s = ExpSeries::new()
            .term(1.0, 3.0)
            .term(2.0, -1.5)
            .constant(4.0);
        let direct = 3f64.exp() + 2.0 * (-1.5f64).exp() + 4.0;
        assert!(rel(s.value().unwrap(), direct) < 1e-15);
        assert!((s.ln() - direct.ln()).abs() < 1e-15);
    }

    #[test]
    fn series_with_negative_term() {
        let s = ExpSeries::new()
            .term(1.0, 5.0)
            .term(-1.0, 2.0)
            .constant(1.0);
        let direct = 5f64.exp() - 2f64.exp() + 1.0;
        assert!(rel(s.value().unwrap(), direct) < 1e-15);
        assert!((s.ln() - direct.ln()).abs() < 1e-14);

        let huge = ExpSeries::new().term(1.0, 1000.0).term(-1.0, 999.0);
        assert!(huge.value().is_none());
        let want = 1000.0 + (1.0 - (-1f64).exp()).ln();
        assert!((huge.ln() - want).abs() < 1e-12);
    }

    #[test]
    fn compensated_sum_recovers_cancelled_terms() {
        let xs = [1e16, 1.0, -1e16, 1.0];
        assert_eq!(compensated_sum(xs), 2.0);
    }
}
