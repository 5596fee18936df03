/// Median and 90th percentile of a sample.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Summary {
    pub median: f64,
    pub p90: f64,
}

impl Summary {
    /// Sorts `xs` in place. Nearest-rank percentiles; an empty sample gives zeros.
    pub fn of(xs: &mut [f64]) -> Summary {
        if xs.is_empty() {
            return Summary { median: 0.0, p90: 0.0 };
        }
        xs.sort_by(f64::total_cmp);
        let rank = |p: f64| xs[((p * xs.len() as f64).ceil() as usize).clamp(1, xs.len()) - 1];
        Summary { median: rank(0.5), p90: rank(0.9) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nearest_rank() {
        let mut v: Vec<f64> = (1..=10).rev().map(f64::from).collect();
        assert_eq!(Summary::of(&mut v), Summary { median: 5.0, p90: 9.0 });
        assert_eq!(Summary::of(&mut [3.0]), Summary { median: 3.0, p90: 3.0 });
        assert_eq!(Summary::of(&mut []), Summary { median: 0.0, p90: 0.0 });
    }
}
