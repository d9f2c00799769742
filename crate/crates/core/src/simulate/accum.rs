use serde::Serialize;

/// Streaming mean / variance (Welford), mergeable across chunks.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct Moments {
    pub n: u64,
    pub mean: f64,
    m2: f64,
}

impl Moments {
    pub fn push(&mut self, x: f64) {
        self.n += 1;
        let delta = x - self.mean;
        self.mean += delta / self.n as f64;
        self.m2 += delta * (x - self.mean);
    }

    /// Chan et al. pairwise combination.
    pub fn merge(&mut self, other: &Moments) {
        if other.n == 0 {
            return;
        }
        if self.n == 0 {
            *self = *other;
            return;
        }
        let n = self.n + other.n;
        let delta = other.mean - self.mean;
        let (na, nb) = (self.n as f64, other.n as f64);
        self.mean += delta * nb / n as f64;
        self.m2 += other.m2 + delta * delta * na * nb / n as f64;
        self.n = n;
    }

    /// Unbiased sample variance; `NaN` below two samples.
    pub fn variance(&self) -> f64 {
        if self.n < 2 {
            f64::NAN
        } else {
            self.m2 / (self.n - 1) as f64
        }
    }

    /// Standard error of the mean; `+∞` below two samples.
    pub fn std_err(&self) -> f64 {
        if self.n < 2 {
            f64::INFINITY
        } else {
            (self.variance() / self.n as f64).sqrt()
        }
    }
}

impl FromIterator<f64> for Moments {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut m = Moments::default();
        iter.into_iter().for_each(|x| m.push(x));
        m
    }
}

/// Sum of products for zero-mean variables, used for correlation checks.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RawMoments {
    pub xx: f64,
    pub yy: f64,
    pub xy: f64,
}

impl RawMoments {
    pub fn push(&mut self, x: f64, y: f64) {
        self.xx += x * x;
        self.yy += y * y;
        self.xy += x * y;
    }

    pub fn merge(&mut self, other: &RawMoments) {
        self.xx += other.xx;
        self.yy += other.yy;
        self.xy += other.xy;
    }

    pub fn correlation(&self) -> f64 {
        self.xy / (self.xx * self.yy).sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merge_matches_single_pass() {
        let xs: Vec<f64> = (0..1000).map(|i| ((i * 37) % 101) as f64 * 0.1 - 3.0).collect();
        let all: Moments = xs.iter().copied().collect();
        let mut parts = Moments::default();
        for chunk in xs.chunks(77) {
            parts.merge(&chunk.iter().copied().collect());
        }
        assert_eq!(all.n, parts.n);
        assert!((all.mean - parts.mean).abs() < 1e-12);
        assert!((all.variance() - parts.variance()).abs() < 1e-10);
    }

    #[test]
    fn single_sample() {
        let m: Moments = [2.5].into_iter().collect();
        assert_eq!(m.mean, 2.5);
        assert!(m.std_err().is_infinite());
    }
}
