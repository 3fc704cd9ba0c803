//! Small numeric helpers shared by the model and dynamics modules.

/// Neumaier-compensated sum. The annual means are compared against 1e-9
/// tolerances over 104,832 terms, so plain accumulation is not enough
/// headroom; this keeps the error at O(eps) independent of length.
pub(crate) fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

pub(crate) fn mean(values: &[f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    compensated_sum(values.iter().copied()) / values.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensated_sum_recovers_cancellation() {
        // 1 + 1e-16 repeated: plain f64 summation loses the small terms
        let xs = std::iter::once(1.0).chain(std::iter::repeat_n(1e-16, 10_000));
        let got = compensated_sum(xs);
        assert!((got - (1.0 + 1e-12)).abs() < 1e-15);
    }

    #[test]
    fn mean_of_empty_is_zero() {
        assert_eq!(mean(&[]), 0.0);
    }
}
