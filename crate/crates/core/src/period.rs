//! Period-1 and period-2 predicates, the period-1 builder, and the μ1 partner.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{bracket_product, ExchangeMatrix, Permutation};
use crate::small::SmallMatrix;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Shape {
    /// σ = (1, 2, …, N)
    OneCycle,
    /// σ = (1, …, k−1)(k, …, N)
    TwoCycle,
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Shape::OneCycle => "one-cycle",
            Shape::TwoCycle => "two-cycle",
        })
    }
}

impl FromStr for Shape {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace(['_', '-'], "").as_str() {
            "one" | "onecycle" | "1" => Ok(Shape::OneCycle),
            "two" | "twocycle" | "2" => Ok(Shape::TwoCycle),
            _ => Err(Error::Parse(format!("unknown shape {s:?} (expected one or two)"))),
        }
    }
}

/// One defining equation σ μ_k μ_1 (Q) = Q.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Period2Spec {
    n: usize,
    shape: Shape,
    k: usize,
}

impl Period2Spec {
    /// A spec in the reduced range: OneCycle 2 ≤ k ≤ ⌊(n+1)/2⌋, TwoCycle 2 ≤ k ≤ ⌊(n+2)/2⌋.
    pub fn new(n: usize, shape: Shape, k: usize) -> Result<Self> {
        let s = Self::general(n, shape, k)?;
        if !s.is_canonical() {
            return Err(Error::InvalidSpec(format!(
                "k={k} outside 2..={} for {shape} with n={n}",
                s.canonical_max_k()
            )));
        }
        Ok(s)
    }

    /// Any spec with 2 ≤ k ≤ n.
    pub fn general(n: usize, shape: Shape, k: usize) -> Result<Self> {
        if n < 2 || k < 2 || k > n {
            return Err(Error::InvalidSpec(format!("need 2 <= k <= n, got n={n}, k={k}")));
        }
        Ok(Period2Spec { n, shape, k })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn k(&self) -> usize {
        self.k
    }

    fn canonical_max_k(&self) -> usize {
        match self.shape {
            Shape::OneCycle => (self.n + 1) / 2,
            Shape::TwoCycle => (self.n + 2) / 2,
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.k <= self.canonical_max_k()
    }

    pub fn sigma(&self) -> Permutation {
        let n = self.n;
        let cycles = match self.shape {
            Shape::OneCycle => vec![(1..=n).collect::<Vec<_>>()],
            Shape::TwoCycle => vec![(1..self.k).collect(), (self.k..=n).collect()],
        };
        Permutation::from_cycles(n, &cycles).expect("disjoint cycles")
    }

    /// ν = σ⁻¹, the relabeling carried along the orbit.
    pub fn nu(&self) -> Permutation {
        self.sigma().inverse()
    }

    /// All specs in the reduced range for `n` vertices.
    pub fn all_canonical(n: usize) -> Vec<Self> {
        let mut out = Vec::new();
        for shape in [Shape::OneCycle, Shape::TwoCycle] {
            for k in 2..=n {
                if let Ok(s) = Self::new(n, shape, k) {
                    out.push(s);
                }
            }
        }
        out
    }
}

impl fmt::Display for Period2Spec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n={}, {}, k={})", self.n, self.shape, self.k)
    }
}

fn check_degree(b: &ExchangeMatrix, spec: &Period2Spec) -> Result<()> {
    if b.n() != spec.n {
        return Err(Error::DegreeMismatch { expected: spec.n, found: b.n() });
    }
    Ok(())
}

/// σ μ_k μ_1 (B) = B, evaluated as permute(μ_k(μ_1(B)), σ) = B.
pub fn is_period2(b: &ExchangeMatrix, spec: &Period2Spec) -> Result<bool> {
    check_degree(b, spec)?;
    let sigma = spec.sigma();
    if let Some(s) = SmallMatrix::from_matrix(b) {
        if let Some(m) = s.mutate(0).and_then(|m| m.mutate(spec.k - 1)) {
            let image: Vec<usize> = sigma.images().iter().map(|v| v - 1).collect();
            return Ok(m.permuted_equals(&image, &s));
        }
    }
    Ok(b.mutate(1)?.mutate(spec.k)?.permute(&sigma)? == *b)
}

/// ρ μ_1 (B) = B with ρ = (1, 2, …, N), read as μ_1(B)[ρ(i)][ρ(j)] = B[i][j],
/// i.e. permute(B, ρ) = μ_1(B).
pub fn is_period1(b: &ExchangeMatrix) -> bool {
    let n = b.n();
    let rho: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    if let Some(s) = SmallMatrix::from_matrix(b) {
        if let Some(m) = s.mutate(0) {
            return s.permuted_equals(&rho, &m);
        }
    }
    let rho = Permutation::from_images(&rho.iter().map(|v| v + 1).collect::<Vec<_>>())
        .expect("cyclic shift");
    match (b.mutate(1), b.permute(&rho)) {
        (Ok(m), Ok(p)) => m == p,
        _ => false,
    }
}

/// Checks the palindrome condition b_{1,j} = b_{1,N+2−j}; `row[j-2]` holds b_{1,j}.
pub fn first_row_is_palindrome(row: &[BigInt]) -> Result<()> {
    let n = row.len() + 1;
    for j in 2..=n {
        let mirror = n + 2 - j;
        if row[j - 2] != row[mirror - 2] {
            return Err(Error::NotPalindrome { j, mirror });
        }
    }
    Ok(())
}

/// The period-1 matrix with first row (b_{1,2}, …, b_{1,N}).
pub fn period1_from_row(row: &[BigInt]) -> Result<ExchangeMatrix> {
    first_row_is_palindrome(row)?;
    let n = row.len() + 1;
    let b1 = |j: usize| -> BigInt { if j == 1 { BigInt::zero() } else { row[j - 2].clone() } };
    let mut rows = vec![vec![BigInt::zero(); n]; n];
    for j in 2..=n {
        rows[0][j - 1] = b1(j);
        rows[j - 1][0] = -b1(j);
    }
    for i in 2..=n {
        for j in 2..i {
            // b_{i,j} = b_{i−j+1,1} + Σ_{m=2}^{j} ε_{m,1,i−j+m}
            let mut v = -b1(i - j + 1);
            for m in 2..=j {
                v += bracket_product(&-b1(m), &b1(i - j + m));
            }
            rows[j - 1][i - 1] = -&v;
            rows[i - 1][j - 1] = v;
        }
    }
    ExchangeMatrix::from_rows(rows)
}

/// The companion period-2 quiver μ_1(B), relabelled so that it solves the
/// equation with k' = N−k+1 (one cycle) or k' = N−k+2 (two cycles).
pub fn mu1_partner(b: &ExchangeMatrix, spec: &Period2Spec) -> Result<(ExchangeMatrix, Period2Spec)> {
    if !is_period2(b, spec)? {
        return Err(Error::NotPeriod2(spec.to_string()));
    }
    let n = spec.n;
    let k = spec.k;
    let q1 = b.mutate(1)?;
    // shift i ↦ i+k−1 mod N, applied inversely
    let shift: Vec<usize> = (1..=n).map(|i| (i + k - 2) % n + 1).collect();
    let shift = Permutation::from_images(&shift)?;
    let q2 = q1.permute(&shift.inverse())?;
    match spec.shape {
        Shape::OneCycle => {
            let s2 = Period2Spec::general(n, Shape::OneCycle, n - k + 1)?;
            Ok((q2, s2))
        }
        Shape::TwoCycle => {
            let kp = n - k + 2;
            // rotate the second cycle kp..N one step forward
            let rot: Vec<usize> = (1..=n)
                .map(|x| if x < kp { x } else if x < n { x + 1 } else { kp })
                .collect();
            let q3 = q2.permute(&Permutation::from_images(&rot)?)?;
            let s2 = Period2Spec::general(n, Shape::TwoCycle, kp)?;
            Ok((q3, s2))
        }
    }
}

/// A relabeling `s` with permute(a, s) = b, by exhaustive search over all N! permutations.
pub fn find_relabeling(a: &ExchangeMatrix, b: &ExchangeMatrix) -> Option<Permutation> {
    let n = a.n();
    if b.n() != n {
        return None;
    }
    let sa = SmallMatrix::from_matrix(a);
    let sb = SmallMatrix::from_matrix(b);
    for p in (0..n).permutations(n) {
        let hit = match (&sa, &sb) {
            (Some(x), Some(y)) => x.permuted_equals(&p, y),
            _ => {
                let perm = Permutation::from_images(&p.iter().map(|v| v + 1).collect::<Vec<_>>())
                    .expect("permutation");
                a.permute(&perm).map(|m| m == *b).unwrap_or(false)
            }
        };
        if hit {
            return Some(
                Permutation::from_images(&p.iter().map(|v| v + 1).collect::<Vec<_>>())
                    .expect("permutation"),
            );
        }
    }
    None
}
