/// Composite trapezoid sum of uniformly spaced samples.
pub(crate) fn trapezoid(values: &[f64], step: f64) -> f64 {
    match values.len() {
        0 | 1 => 0.0,
        n => {
            let inner: f64 = values[1..n - 1].iter().sum();
            step * (inner + 0.5 * (values[0] + values[n - 1]))
        }
    }
}

/// Trapezoid weight of sample `i` out of `n`.
#[inline]
pub(crate) fn trapezoid_weight(i: usize, n: usize) -> f64 {
    if i == 0 || i + 1 == n {
        0.5
    } else {
        1.0
    }
}

#[cfg(test)]
/// `count` uniformly spaced points from `min` to `max` inclusive.
pub(crate) fn linspace(min: f64, max: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![min];
    }
    let step = (max - min) / (count - 1) as f64;
    (0..count).map(|i| min + i as f64 * step).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trapezoid_is_exact_for_lines() {
        let xs = linspace(0.0, 2.0, 11);
        let ys: Vec<f64> = xs.iter().map(|x| 3.0 * x + 1.0).collect();
        assert!((trapezoid(&ys, 0.2) - 8.0).abs() < 1e-14);
    }

    #[test]
    fn degenerate_inputs() {
        assert_eq!(trapezoid(&[], 1.0), 0.0);
        assert_eq!(trapezoid(&[5.0], 1.0), 0.0);
        assert_eq!(linspace(1.0, 3.0, 1), vec![1.0]);
        assert_eq!(trapezoid_weight(0, 3), 0.5);
        assert_eq!(trapezoid_weight(1, 3), 1.0);
    }
}
