//! Exchange matrices and vertex relabelings.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Skew-symmetric integer matrix of signed arrow counts.
///
/// Vertices are 1-based in every public method.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ExchangeMatrix {
    n: usize,
    b: Vec<BigInt>,
}

impl ExchangeMatrix {
    pub fn zero(n: usize) -> Self {
        ExchangeMatrix { n, b: vec![BigInt::zero(); n * n] }
    }

    /// Builds a matrix from rows, checking shape and skew-symmetry.
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        let mut b = Vec::with_capacity(n * n);
        for (r, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::RaggedMatrix { row: r + 1, len: row.len(), n });
            }
            b.extend(row);
        }
        let m = ExchangeMatrix { n, b };
        for i in 0..n {
            for j in i..n {
                if m.b[i * n + j] != -&m.b[j * n + i] {
                    return Err(Error::NotSkewSymmetric { i: i + 1, j: j + 1 });
                }
            }
        }
        Ok(m)
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect(),
        )
    }

    /// Builds a matrix from weighted arrows `(i, j, w)`: adds `w` arrows i → j.
    pub fn from_arrows<W: Into<BigInt> + Clone>(n: usize, arrows: &[(usize, usize, W)]) -> Result<Self> {
        let mut m = Self::zero(n);
        for (i, j, w) in arrows {
            m.check_vertex(*i)?;
            m.check_vertex(*j)?;
            if i == j {
                return Err(Error::NotSkewSymmetric { i: *i, j: *j });
            }
            let w: BigInt = w.clone().into();
            m.b[(i - 1) * n + (j - 1)] += &w;
            m.b[(j - 1) * n + (i - 1)] -= &w;
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        assert!(i >= 1 && i <= self.n && j >= 1 && j <= self.n, "vertex out of range");
        &self.b[(i - 1) * self.n + (j - 1)]
    }

    pub fn try_get(&self, i: usize, j: usize) -> Result<&BigInt> {
        self.check_vertex(i)?;
        self.check_vertex(j)?;
        Ok(self.get(i, j))
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        self.b.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    /// Row-major entries, the order used for lexicographic comparison.
    pub fn entries(&self) -> &[BigInt] {
        &self.b
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v == 0 || v > self.n {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    pub fn max_abs(&self) -> BigInt {
        self.b.iter().map(|v| v.abs()).max().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.b.iter().all(Zero::is_zero)
    }

    /// Mutation at vertex `k`.
    pub fn mutate(&self, k: usize) -> Result<Self> {
        self.check_vertex(k)?;
        let n = self.n;
        let k0 = k - 1;
        let mut out = self.b.clone();
        for i in 0..n {
            for j in 0..n {
                if i == k0 || j == k0 {
                    out[i * n + j] = -&self.b[i * n + j];
                } else {
                    let e = bracket_product(&self.b[i * n + k0], &self.b[k0 * n + j]);
                    if !e.is_zero() {
                        out[i * n + j] += e;
                    }
                }
            }
        }
        Ok(ExchangeMatrix { n, b: out })
    }

    /// ε_{i,j,l} = ½(|b_ij| b_jl + b_ij |b_jl|).
    pub fn epsilon(&self, i: usize, j: usize, l: usize) -> Result<BigInt> {
        Ok(bracket_product(self.try_get(i, j)?, self.try_get(j, l)?))
    }

    /// Relabels vertices: the result C has C[s(i)][s(j)] = B[i][j].
    pub fn permute(&self, s: &Permutation) -> Result<Self> {
        if s.n() != self.n {
            return Err(Error::DegreeMismatch { expected: self.n, found: s.n() });
        }
        let n = self.n;
        let mut out = vec![BigInt::zero(); n * n];
        for i in 0..n {
            let si = s.image[i];
            for j in 0..n {
                out[si * n + s.image[j]] = self.b[i * n + j].clone();
            }
        }
        Ok(ExchangeMatrix { n, b: out })
    }

    pub fn negated(&self) -> Self {
        ExchangeMatrix { n: self.n, b: self.b.iter().map(|v| -v).collect() }
    }

    /// True iff the graph with an edge for every nonzero entry is connected.
    pub fn is_connected(&self) -> bool {
        let n = self.n;
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for w in 0..n {
                if !seen[w] && !self.b[v * n + w].is_zero() {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Arrows `(i, j, w)` with `w = b_ij > 0`.
    pub fn arrows(&self) -> Vec<(usize, usize, BigInt)> {
        let n = self.n;
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let w = &self.b[i * n + j];
                if w.is_positive() {
                    out.push((i + 1, j + 1, w.clone()));
                }
            }
        }
        out
    }
}

/// ½(|a| b + a |b|): equals a·b when both are positive, −a·b when both are negative, else 0.
pub(crate) fn bracket_product(a: &BigInt, b: &BigInt) -> BigInt {
    match (a.sign(), b.sign()) {
        (num_bigint::Sign::Plus, num_bigint::Sign::Plus) => a * b,
        (num_bigint::Sign::Minus, num_bigint::Sign::Minus) => -(a * b),
        _ => BigInt::zero(),
    }
}

impl Ord for ExchangeMatrix {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then_with(|| self.b.cmp(&other.b))
    }
}

impl PartialOrd for ExchangeMatrix {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExchangeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (r, row) in self.b.chunks(self.n).enumerate() {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (c, v) in row.iter().enumerate() {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Bijection of {1..n}, stored 0-based together with its inverse.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Permutation {
    image: Vec<usize>,
    inverse: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        let v: Vec<usize> = (0..n).collect();
        Permutation { image: v.clone(), inverse: v }
    }

    /// From a 1-based image list: `image[i-1] = σ(i)`.
    pub fn from_images(image: &[usize]) -> Result<Self> {
        let n = image.len();
        let mut inverse = vec![usize::MAX; n];
        let mut zero_based = Vec::with_capacity(n);
        for (i, &v) in image.iter().enumerate() {
            if v == 0 || v > n {
                return Err(Error::InvalidPermutation(format!("image {v} outside 1..={n}")));
            }
            if inverse[v - 1] != usize::MAX {
                return Err(Error::InvalidPermutation(format!("{v} hit twice")));
            }
            inverse[v - 1] = i;
            zero_based.push(v - 1);
        }
        Ok(Permutation { image: zero_based, inverse })
    }

    /// From disjoint cycles in 1-based cycle notation.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut image: Vec<usize> = (1..=n).collect();
        let mut used = vec![false; n + 1];
        for c in cycles {
            for (pos, &v) in c.iter().enumerate() {
                if v == 0 || v > n || used[v] {
                    return Err(Error::InvalidPermutation(format!("bad cycle entry {v}")));
                }
                used[v] = true;
                image[v - 1] = c[(pos + 1) % c.len()];
            }
        }
        Self::from_images(&image)
    }

    pub fn n(&self) -> usize {
        self.image.len()
    }

    /// σ(i), 1-based.
    pub fn apply(&self, i: usize) -> usize {
        self.image[i - 1] + 1
    }

    /// σ⁻¹(i), 1-based.
    pub fn apply_inverse(&self, i: usize) -> usize {
        self.inverse[i - 1] + 1
    }

    pub fn images(&self) -> Vec<usize> {
        self.image.iter().map(|v| v + 1).collect()
    }

    pub fn inverse(&self) -> Self {
        Permutation { image: self.inverse.clone(), inverse: self.image.clone() }
    }

    /// `self ∘ other`: i ↦ self(other(i)).
    pub fn compose(&self, other: &Permutation) -> Result<Self> {
        if self.n() != other.n() {
            return Err(Error::DegreeMismatch { expected: self.n(), found: other.n() });
        }
        let image: Vec<usize> = other.image.iter().map(|&v| self.image[v] + 1).collect();
        Self::from_images(&image)
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut out = Permutation::identity(self.n());
        for _ in 0..e.unsigned_abs() {
            out = base.compose(&out).expect("same degree");
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut c = Vec::new();
            let mut v = s;
            while !seen[v] {
                seen[v] = true;
                c.push(v + 1);
                v = self.image[v];
            }
            out.push(c);
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in self.cycles() {
            let parts: Vec<String> = c.iter().map(|v| v.to_string()).collect();
            write!(f, "({})", parts.join(","))?;
        }
        Ok(())
    }
}
