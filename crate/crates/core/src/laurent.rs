//! Sparse Laurent polynomials with integer coefficients in the initial
//! cluster variables x1..xn.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Exponent = Vec<i32>;

/// Terms are kept in a `BTreeMap` keyed by exponent vector, so equality is
/// structural and the last key is the lexicographic leading monomial.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Exponent, BigInt>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    /// The variable x_i (1-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= nvars, "variable x{i} out of range");
        let mut e = vec![0; nvars];
        e[i - 1] = 1;
        Self::monomial(nvars, e, BigInt::one())
    }

    pub fn monomial(nvars: usize, exp: Exponent, c: BigInt) -> Self {
        assert_eq!(exp.len(), nvars);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly { nvars, terms }
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exponent, BigInt)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars);
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, BigInt> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    fn add_term(&mut self, e: Exponent, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn same_ring(&self, other: &Self) {
        assert_eq!(self.nvars, other.nvars, "Laurent polynomials over different variable sets");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_ring(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.same_ring(other);
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Division by a single term. The coefficient must divide every
    /// coefficient of `self`.
    pub fn monomial_div(&self, q: &Self) -> Result<Self> {
        self.same_ring(q);
        if q.is_zero() {
            return Err(Error::ZeroDivision(" by the zero polynomial".into()));
        }
        if !q.is_monomial() {
            return Err(Error::NonMonomialDivisor);
        }
        let (qe, qc) = q.terms.iter().next().unwrap();
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let (d, r) = c.div_rem(qc);
            if !r.is_zero() {
                return Err(Error::Mismatch(format!("coefficient {c} is not divisible by {qc}")));
            }
            out.terms.insert(e.iter().zip(qe).map(|(a, b)| a - b).collect(), d);
        }
        Ok(out)
    }

    /// Componentwise minimum exponent; all zeros for the zero polynomial.
    fn min_exponent(&self) -> Exponent {
        let mut m: Option<Exponent> = None;
        for e in self.terms.keys() {
            m = Some(match m {
                None => e.clone(),
                Some(m) => m.iter().zip(e).map(|(a, b)| *a.min(b)).collect(),
            });
        }
        m.unwrap_or_else(|| vec![0; self.nvars])
    }

    fn shift(&self, by: &[i32]) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(by).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Splits off the largest monomial factor: `self = x^m * rest` where
    /// `rest` is a polynomial not divisible by any variable.
    pub fn monomial_content(&self) -> (Exponent, Self) {
        let m = self.min_exponent();
        let neg: Vec<i32> = m.iter().map(|v| -v).collect();
        (m, self.shift(&neg))
    }

    /// The Laurent quotient `self / d` if it exists with integer
    /// coefficients, else `None`.
    ///
    /// After removing monomial factors the divisor is a polynomial not
    /// divisible by any variable, so a Laurent quotient exists only if the
    /// polynomial quotient does. That is decided by lexicographic long
    /// division.
    pub fn exact_div(&self, d: &Self) -> Result<Option<Self>> {
        self.same_ring(d);
        if d.is_zero() {
            return Err(Error::ZeroDivision(" by the zero polynomial".into()));
        }
        if self.is_zero() {
            return Ok(Some(Self::zero(self.nvars)));
        }
        if d.is_monomial() {
            return Ok(self.monomial_div(d).ok());
        }
        let (mn, mut r) = self.monomial_content();
        let (md, dp) = d.monomial_content();
        let (lead_e, lead_c) = dp.terms.iter().next_back().unwrap();
        let mut q = Self::zero(self.nvars);
        while let Some((re, rc)) = r.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            let e: Exponent = re.iter().zip(lead_e).map(|(a, b)| a - b).collect();
            if e.iter().any(|v| *v < 0) {
                return Ok(None);
            }
            let (c, rem) = rc.div_rem(lead_c);
            if !rem.is_zero() {
                return Ok(None);
            }
            for (de, dc) in &dp.terms {
                r.add_term(e.iter().zip(de).map(|(a, b)| a + b).collect(), -(&c * dc));
            }
            q.add_term(e, c);
        }
        let by: Vec<i32> = mn.iter().zip(&md).map(|(a, b)| a - b).collect();
        Ok(Some(q.shift(&by)))
    }

    /// Evaluates at integer-or-rational point; negative exponents need
    /// nonzero coordinates.
    pub fn eval(&self, at: &[crate::rational::Rational]) -> Result<crate::rational::Rational> {
        use crate::rational::{pow, Rational};
        assert_eq!(at.len(), self.nvars);
        let mut s = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = Rational::from_integer(c.clone());
            for (x, k) in at.iter().zip(e) {
                if *k != 0 {
                    t *= pow(x, i64::from(*k))?;
                }
            }
            s += t;
        }
        Ok(s)
    }

    /// True when no exponent is negative.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|v| *v >= 0))
    }

    pub fn has_positive_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_positive())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest monomial first
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let constant = e.iter().all(|v| *v == 0);
            let mag = c.abs();
            if idx == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut first = true;
            if !mag.is_one() || constant {
                write!(f, "{mag}")?;
                first = false;
            }
            for (i, k) in e.iter().enumerate() {
                if *k == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "x{}", i + 1)?;
                if *k != 1 {
                    write!(f, "^{k}")?;
                }
            }
        }
        Ok(())
    }
}
