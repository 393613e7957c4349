//! Compensated summation used by every sum over eigenvalue prefixes.

/// Kahan-Babuska-Neumaier compensated accumulator.
///
/// Sums are accumulated in a fixed (ascending-index) order so that CLI
/// output is bit-stable across platforms.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct KahanSum {
    sum: f64,
    compensation: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        // Once the raw sum leaves the finite range the compensation term is
        // meaningless (inf - inf); report the raw sum instead.
        if self.sum.is_finite() {
            self.sum + self.compensation
        } else {
            self.sum
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sums_exactly_on_small_integers() {
        let mut acc = KahanSum::new();
        for x in 1..=1000 {
            acc.add(f64::from(x));
        }
        assert_eq!(acc.value(), 500_500.0);
    }

    #[test]
    fn recovers_cancellation_lost_by_naive_order() {
        // 1 + 1e-16 added 10^4 times: naive summation drops every tiny term.
        let mut acc = KahanSum::new();
        acc.add(1.0);
        for _ in 0..10_000 {
            acc.add(1e-16);
        }
        assert!((acc.value() - (1.0 + 1e-12)).abs() < 1e-15);
    }
}
