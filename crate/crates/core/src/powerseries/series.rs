use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Power series over the rationals, truncated after `x^order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesOp {
    Add,
    Sub,
    Mul,
}

impl TruncatedSeries {
    /// Series from leading coefficients; missing ones are zero and extra
    /// ones are dropped.
    pub fn new(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order + 1, Rational::zero());
        TruncatedSeries { coeffs }
    }

    pub fn from_integers<I, T>(values: I, order: usize) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let coeffs = values
            .into_iter()
            .take(order + 1)
            .map(|v| Rational::from_integer(v.into()))
            .collect();
        Self::new(coeffs, order)
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        Self::new(vec![c], order)
    }

    /// `c * x^power`.
    pub fn monomial(c: Rational, power: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if power <= order {
            s.coeffs[power] = c;
        }
        s
    }

    /// Truncated `e^x`.
    pub fn exp(order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut fact = BigInt::one();
        for n in 0..=order {
            if n > 0 {
                fact *= n;
            }
            coeffs.push(Rational::new(BigInt::one(), fact.clone()));
        }
        Self::new(coeffs, order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &Rational {
        &self.coeffs[n]
    }

    /// True when every coefficient has denominator one.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn arith(&self, other: &Self, op: SeriesOp) -> Result<Self> {
        self.check_order(other)?;
        Ok(match op {
            SeriesOp::Add => self.zip_with(other, |a, b| a + b),
            SeriesOp::Sub => self.zip_with(other, |a, b| a - b),
            SeriesOp::Mul => self.mul_unchecked(other),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.arith(other, SeriesOp::Add)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.arith(other, SeriesOp::Sub)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.arith(other, SeriesOp::Mul)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Rational, &Rational) -> Rational) -> Self {
        TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let order = self.order();
        let mut out = vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=order - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        TruncatedSeries { coeffs: out }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.order());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// Multiplicative inverse, solved coefficient by coefficient.
    pub fn reciprocal(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let inv0 = a0.recip();
        let order = self.order();
        let mut out: Vec<Rational> = Vec::with_capacity(order + 1);
        out.push(inv0.clone());
        for n in 1..=order {
            let mut acc = Rational::zero();
            for i in 1..=n {
                if !self.coeffs[i].is_zero() {
                    acc += &self.coeffs[i] * &out[n - i];
                }
            }
            out.push(-acc * &inv0);
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// `self / other`.
    pub fn div(&self, other: &Self) -> Result<Self> {
        self.mul(&other.reciprocal()?)
    }

    /// `self(inner(x))`, evaluated by Horner's rule.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        self.check_order(inner)?;
        if !inner.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let order = self.order();
        let mut acc = Self::zero(order);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul_unchecked(inner);
            acc.coeffs[0] += c;
        }
        Ok(acc)
    }

    /// Same coefficients, truncated or zero-extended to `order`.
    pub fn with_order(&self, order: usize) -> Self {
        Self::new(self.coeffs.clone(), order)
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(x^{})", self.order() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(v: &[i64], order: usize) -> TruncatedSeries {
        TruncatedSeries::from_integers(v.iter().copied(), order)
    }

    #[test]
    fn arith_examples() {
        let n = 6;
        assert_eq!(ints(&[1, 1], n).mul(&ints(&[1, -1], n)).unwrap(), ints(&[1, 0, -1], n));
        let s = ints(&[3, 1, 4, 1, 5], n);
        assert_eq!(s.add(&TruncatedSeries::zero(n)).unwrap(), s);
        assert_eq!(ints(&[1, 1, 1], n).sub(&ints(&[1, 1], n)).unwrap(), ints(&[0, 0, 1], n));
        assert_eq!(
            ints(&[1], 3).add(&ints(&[1], 4)),
            Err(Error::OrderMismatch { left: 3, right: 4 })
        );
    }

    #[test]
    fn reciprocal_examples() {
        let n = 10;
        assert_eq!(ints(&[1, -1], n).reciprocal().unwrap(), ints(&[1; 11], n));
        let fib = ints(&[1, -1, -1], n).reciprocal().unwrap();
        assert_eq!(*fib.coeff(5), Rational::from_integer(8.into()));
        assert_eq!(ints(&[1], n).reciprocal().unwrap(), ints(&[1], n));
        assert_eq!(ints(&[0, 1], n).reciprocal(), Err(Error::ZeroConstantTerm));
    }

    #[test]
    fn compose_examples() {
        let n = 10;
        let geometric = ints(&[1; 11], n);
        let x2 = ints(&[0, 0, 1], n);
        assert_eq!(geometric.compose(&x2).unwrap(), ints(&[1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1], n));

        let f = ints(&[2, 7, 1, 8], n);
        let x = ints(&[0, 1], n);
        assert_eq!(x.compose(&f.sub(&ints(&[2], n)).unwrap()).unwrap(), f.sub(&ints(&[2], n)).unwrap());

        // x/(1-x) composed with itself is x/(1-2x)
        let mobius = ints(&[0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1], n);
        let twice = mobius.compose(&mobius).unwrap();
        let expected: Vec<i64> = (0..=n).map(|i| if i == 0 { 0 } else { 1 << (i - 1) }).collect();
        assert_eq!(twice, ints(&expected, n));

        assert_eq!(f.compose(&ints(&[1, 1], n)), Err(Error::NonzeroConstantTerm));
    }

    #[test]
    fn exp_coefficients() {
        let e = TruncatedSeries::exp(5);
        assert_eq!(*e.coeff(5), Rational::new(1.into(), 120.into()));
        assert!(!e.is_integral());
    }

    fn small_series(order: usize) -> impl Strategy<Value = TruncatedSeries> {
        prop::collection::vec((-20i64..=20, 1i64..=6), order + 1).prop_map(move |v| {
            TruncatedSeries::new(
                v.into_iter()
                    .map(|(p, q)| Rational::new(p.into(), q.into()))
                    .collect(),
                order,
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn ring_axioms(a in small_series(6), b in small_series(6), c in small_series(6)) {
            let ab_c = a.mul(&b).unwrap().mul(&c).unwrap();
            let a_bc = a.mul(&b.mul(&c).unwrap()).unwrap();
            prop_assert_eq!(ab_c, a_bc);
            let lhs = a.mul(&b.add(&c).unwrap()).unwrap();
            let rhs = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        }

        #[test]
        fn reciprocal_round_trip(a in small_series(8)) {
            prop_assume!(!a.coeff(0).is_zero());
            let prod = a.mul(&a.reciprocal().unwrap()).unwrap();
            prop_assert_eq!(prod, TruncatedSeries::one(8));
        }

        #[test]
        fn compose_with_identity(a in small_series(8)) {
            let x = TruncatedSeries::monomial(Rational::one(), 1, 8);
            prop_assert_eq!(a.compose(&x).unwrap(), a);
        }
    }
}
