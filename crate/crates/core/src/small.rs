//! Machine-integer kernel with checked arithmetic. Every operation returns
//! `None` on overflow so callers can fall back to the big-integer path.

use num_traits::ToPrimitive;

use crate::matrix::ExchangeMatrix;

#[derive(Clone, PartialEq, Eq, Debug)]
pub(crate) struct SmallMatrix {
    pub n: usize,
    pub b: Vec<i64>,
}

#[inline]
pub(crate) fn bracket(a: i64, b: i64) -> Option<i64> {
    if a > 0 && b > 0 {
        a.checked_mul(b)
    } else if a < 0 && b < 0 {
        a.checked_mul(b).map(|v| -v)
    } else {
        Some(0)
    }
}

impl SmallMatrix {
    pub fn from_matrix(m: &ExchangeMatrix) -> Option<Self> {
        let b = m.entries().iter().map(|v| v.to_i64()).collect::<Option<Vec<_>>>()?;
        // keep |b| well away from i64::MIN so negation is always safe
        if b.iter().any(|&v| v == i64::MIN) {
            return None;
        }
        Some(SmallMatrix { n: m.n(), b })
    }

    /// Mutation at 0-based vertex `k`.
    pub fn mutate(&self, k: usize) -> Option<Self> {
        let n = self.n;
        let mut out = self.b.clone();
        for i in 0..n {
            for j in 0..n {
                let v = self.b[i * n + j];
                out[i * n + j] = if i == k || j == k {
                    v.checked_neg()?
                } else {
                    // i128 so only a result outside i64 falls back
                    let (a, c) = (self.b[i * n + k] as i128, self.b[k * n + j] as i128);
                    let t = if (a > 0 && c > 0) || (a < 0 && c < 0) { a.signum() * a.abs() * c.abs() } else { 0 };
                    i64::try_from(v as i128 + t).ok()?
                };
            }
        }
        Some(SmallMatrix { n, b: out })
    }

    /// Whether relabelling `self` by the 0-based image map gives `other`.
    pub fn permuted_equals(&self, image: &[usize], other: &SmallMatrix) -> bool {
        let n = self.n;
        (0..n).all(|i| (0..n).all(|j| other.b[image[i] * n + image[j]] == self.b[i * n + j]))
    }
}
