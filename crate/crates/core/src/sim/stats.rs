//! Order-fixed accumulation of sample moments.

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub(crate) struct Compensated {
    sum: f64,
    comp: f64,
}

impl Compensated {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn merge(&mut self, other: &Compensated) {
        self.add(other.sum);
        self.add(other.comp);
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// First and second moments of a pair `(x, y)`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub(crate) struct PairMoments {
    pub(crate) count: u64,
    x: Compensated,
    y: Compensated,
    xx: Compensated,
    yy: Compensated,
    xy: Compensated,
}

impl PairMoments {
    pub(crate) fn push(&mut self, x: f64, y: f64) {
        self.count += 1;
        self.x.add(x);
        self.y.add(y);
        self.xx.add(x * x);
        self.yy.add(y * y);
        self.xy.add(x * y);
    }

    pub(crate) fn merge(&mut self, other: &PairMoments) {
        self.count += other.count;
        self.x.merge(&other.x);
        self.y.merge(&other.y);
        self.xx.merge(&other.xx);
        self.yy.merge(&other.yy);
        self.xy.merge(&other.xy);
    }

    pub(crate) fn mean_x(&self) -> f64 {
        self.x.value() / self.count as f64
    }

    pub(crate) fn mean_y(&self) -> f64 {
        self.y.value() / self.count as f64
    }

    fn centered(&self, sum_prod: f64, mean_a: f64, mean_b: f64) -> f64 {
        let n = self.count as f64;
        if self.count < 2 {
            return 0.0;
        }
        ((sum_prod - n * mean_a * mean_b) / (n - 1.0)).max(0.0)
    }

    /// Unbiased sample variances and covariance `(var x, var y, cov xy)`.
    pub(crate) fn covariance(&self) -> (f64, f64, f64) {
        let (mx, my) = (self.mean_x(), self.mean_y());
        let n = self.count as f64;
        let cov = if self.count < 2 {
            0.0
        } else {
            (self.xy.value() - n * mx * my) / (n - 1.0)
        };
        (self.centered(self.xx.value(), mx, mx), self.centered(self.yy.value(), my, my), cov)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensation_recovers_small_terms() {
        let mut c = Compensated::default();
        c.add(1.0);
        for _ in 0..10 {
            c.add(1e-17);
        }
        c.add(-1.0);
        assert!((c.value() - 1e-16).abs() < 1e-30);
    }

    #[test]
    fn moments() {
        let mut m = PairMoments::default();
        for (x, y) in [(1.0, 2.0), (2.0, 4.0), (3.0, 6.0)] {
            m.push(x, y);
        }
        let (vx, vy, cxy) = m.covariance();
        assert_eq!(m.mean_x(), 2.0);
        assert!((vx - 1.0).abs() < 1e-15 && (vy - 4.0).abs() < 1e-15 && (cxy - 2.0).abs() < 1e-15);
    }
}
