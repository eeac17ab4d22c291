//! Seeds and seed mutation: the exchange relation for cluster variables
//! and the coefficient update for y-variables.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::matrix::ExchangeMatrix;
use crate::rational::{format_rational, Rational};

/// Values a cluster variable may take. Division reports failure through
/// `Err` so that strict symbolic runs can stop at a non-Laurent quotient.
pub trait ClusterValue: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn one_like(&self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn pow(&self, e: u32) -> Self;
    fn is_zero(&self) -> bool;
    fn divide(&self, d: &Self) -> Result<Self>;
}

impl ClusterValue for Rational {
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn pow(&self, e: u32) -> Self {
        num_traits::pow::Pow::pow(self, e)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn divide(&self, d: &Self) -> Result<Self> {
        crate::rational::checked_div(self, d)
    }
}

/// Strict symbolic mode: a quotient that is not a Laurent polynomial is an
/// error.
impl ClusterValue for LaurentPoly {
    fn one_like(&self) -> Self {
        LaurentPoly::one(self.nvars())
    }
    fn add(&self, other: &Self) -> Self {
        LaurentPoly::add(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        LaurentPoly::mul(self, other)
    }
    fn pow(&self, e: u32) -> Self {
        LaurentPoly::pow(self, e)
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn divide(&self, d: &Self) -> Result<Self> {
        self.exact_div(d)?.ok_or(Error::NotLaurent { step: 0, vertex: 0 })
    }
}

/// Lenient symbolic mode: a value is either a Laurent polynomial or, when
/// a division fails to be exact, an unreduced fraction of two.
#[derive(Clone, PartialEq, Debug)]
pub enum Symbolic {
    Laurent(LaurentPoly),
    Fraction(LaurentPoly, LaurentPoly),
}

impl Symbolic {
    pub fn is_laurent(&self) -> bool {
        matches!(self, Symbolic::Laurent(_))
    }

    fn parts(&self) -> (LaurentPoly, LaurentPoly) {
        match self {
            Symbolic::Laurent(p) => (p.clone(), LaurentPoly::one(p.nvars())),
            Symbolic::Fraction(n, d) => (n.clone(), d.clone()),
        }
    }

    fn reduce(num: LaurentPoly, den: LaurentPoly) -> Symbolic {
        match num.exact_div(&den) {
            Ok(Some(q)) => Symbolic::Laurent(q),
            _ => Symbolic::Fraction(num, den),
        }
    }
}

impl fmt::Display for Symbolic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbolic::Laurent(p) => write!(f, "{p}"),
            Symbolic::Fraction(n, d) => write!(f, "({n})/({d})"),
        }
    }
}

impl ClusterValue for Symbolic {
    fn one_like(&self) -> Self {
        let n = self.parts().0.nvars();
        Symbolic::Laurent(LaurentPoly::one(n))
    }
    fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (Symbolic::Laurent(a), Symbolic::Laurent(b)) => Symbolic::Laurent(a.add(b)),
            _ => {
                let (a, b) = self.parts();
                let (c, d) = other.parts();
                Symbolic::reduce(a.mul(&d).add(&c.mul(&b)), b.mul(&d))
            }
        }
    }
    fn mul(&self, other: &Self) -> Self {
        match (self, other) {
            (Symbolic::Laurent(a), Symbolic::Laurent(b)) => Symbolic::Laurent(a.mul(b)),
            _ => {
                let (a, b) = self.parts();
                let (c, d) = other.parts();
                Symbolic::reduce(a.mul(&c), b.mul(&d))
            }
        }
    }
    fn pow(&self, e: u32) -> Self {
        match self {
            Symbolic::Laurent(p) => Symbolic::Laurent(p.pow(e)),
            Symbolic::Fraction(n, d) => Symbolic::Fraction(n.pow(e), d.pow(e)),
        }
    }
    fn is_zero(&self) -> bool {
        self.parts().0.is_zero()
    }
    fn divide(&self, d: &Self) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::ZeroDivision(String::new()));
        }
        let (a, b) = self.parts();
        let (c, e) = d.parts();
        Ok(Symbolic::reduce(a.mul(&e), b.mul(&c)))
    }
}

/// An exchange matrix with cluster variables and optional y-variables.
#[derive(Clone, PartialEq, Debug)]
pub struct Seed<V> {
    pub b: ExchangeMatrix,
    pub x: Vec<V>,
    pub y: Option<Vec<Rational>>,
}

impl<V: ClusterValue> Seed<V> {
    pub fn new(b: ExchangeMatrix, x: Vec<V>, y: Option<Vec<Rational>>) -> Result<Self> {
        let n = b.n();
        if x.len() != n {
            return Err(Error::DegreeMismatch { expected: n, found: x.len() });
        }
        if let Some(y) = &y {
            if y.len() != n {
                return Err(Error::DegreeMismatch { expected: n, found: y.len() });
            }
            if let Some(bad) = y.iter().find(|v| !v.is_positive()) {
                return Err(Error::Mismatch(format!(
                    "y-values must be strictly positive, got {}",
                    format_rational(bad)
                )));
            }
        }
        Ok(Seed { b, x, y })
    }

    pub fn n(&self) -> usize {
        self.b.n()
    }

    /// The two monomials of the exchange relation at `k` (1-based):
    /// products over arrows into and out of `k`. Empty products are 1.
    pub fn exchange_monomials(&self, k: usize) -> Result<(V, V)> {
        self.b.check_vertex(k)?;
        let one = self.x[k - 1].one_like();
        let (mut into, mut out) = (one.clone(), one);
        for i in 1..=self.n() {
            let bik = self.b.get(i, k);
            if bik.is_positive() {
                into = into.mul(&self.x[i - 1].pow(exponent(bik)?));
            } else if bik.is_negative() {
                out = out.mul(&self.x[i - 1].pow(exponent(&-bik)?));
            }
        }
        Ok((into, out))
    }
}

fn exponent(b: &BigInt) -> Result<u32> {
    b.to_u32().ok_or_else(|| Error::ExponentTooLarge(b.to_string()))
}

fn sgn(b: &BigInt) -> i32 {
    if b.is_positive() {
        1
    } else if b.is_negative() {
        -1
    } else {
        0
    }
}

/// y'_k = 1/y_k and y'_j = y_j (1 + y_k^{sgn b_jk})^{b_jk}.
pub fn mutate_y(b: &ExchangeMatrix, y: &[Rational], k: usize) -> Result<Vec<Rational>> {
    b.check_vertex(k)?;
    let yk = &y[k - 1];
    if Zero::is_zero(yk) {
        return Err(Error::ZeroDivision(format!(" at y{k}")));
    }
    let mut out = y.to_vec();
    for j in 1..=b.n() {
        if j == k {
            out[j - 1] = yk.recip();
            continue;
        }
        let bjk = b.get(j, k);
        let base = match sgn(bjk) {
            0 => continue,
            1 => Rational::one() + yk,
            _ => Rational::one() + yk.recip(),
        };
        out[j - 1] = &y[j - 1] * crate::rational::pow_big(&base, bjk)?;
    }
    Ok(out)
}

/// Mutation of a whole seed at the 1-based vertex `k`.
pub fn mutate_seed<V: ClusterValue>(s: &Seed<V>, k: usize) -> Result<Seed<V>> {
    s.b.check_vertex(k)?;
    let xk = &s.x[k - 1];
    if xk.is_zero() {
        return Err(Error::ZeroDivision(format!(" at x{k}")));
    }
    let (into, out) = s.exchange_monomials(k)?;
    let mut x = s.x.clone();
    x[k - 1] = into.add(&out).divide(xk).map_err(|e| match e {
        Error::NotLaurent { .. } => Error::NotLaurent { step: 0, vertex: k },
        e => e,
    })?;
    let y = s.y.as_ref().map(|y| mutate_y(&s.b, y, k)).transpose()?;
    Ok(Seed { b: s.b.mutate(k)?, x, y })
}

/// The seed with x_i = x_i as symbols and no y-variables.
pub fn symbolic_seed(b: &ExchangeMatrix) -> Seed<LaurentPoly> {
    let n = b.n();
    Seed { b: b.clone(), x: (1..=n).map(|i| LaurentPoly::var(n, i)).collect(), y: None }
}

pub fn lenient_seed(b: &ExchangeMatrix) -> Seed<Symbolic> {
    let s = symbolic_seed(b);
    Seed { b: s.b, x: s.x.into_iter().map(Symbolic::Laurent).collect(), y: None }
}
