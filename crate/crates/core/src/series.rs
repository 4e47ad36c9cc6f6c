//! Truncated formal power series in the deformation parameter h.
//!
//! A series carries its truncation order N as data and all arithmetic is
//! performed mod h^(N+1). Mixing orders is an error rather than a silent
//! re-truncation: a check that "passes" at a lower order than requested is
//! worse than a loud failure.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Coefficient ring of a truncated series. Implemented by [`Scalar`],
/// enveloping-algebra elements, tensors and function-model elements.
///
/// `zero_like`/`one_like` produce the ring unit and zero compatible with
/// `self` (same Lie-algebra spec, arity or dimension).
pub trait Coeff: Clone + PartialEq + fmt::Display {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    /// Multiplicative inverse in the coefficient ring, if one exists.
    fn inv_ref(&self) -> Option<Self>;
}

impl Coeff for Scalar {
    fn zero_like(&self) -> Self {
        Scalar::zero()
    }
    fn one_like(&self) -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn is_one(&self) -> bool {
        Scalar::is_one(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn inv_ref(&self) -> Option<Self> {
        self.inv()
    }
}

/// Degree-N truncation of a formal power series over `C`.
/// Invariant: `coeffs.len() == order + 1`.
#[derive(Clone, PartialEq)]
pub struct TruncatedSeries<C: Coeff> {
    order: usize,
    coeffs: Vec<C>,
}

impl<C: Coeff> TruncatedSeries<C> {
    pub fn new(order: usize, coeffs: Vec<C>) -> Result<Self> {
        if coeffs.len() != order + 1 {
            return Err(Error::CoefficientCount {
                expected: order + 1,
                got: coeffs.len(),
            });
        }
        Ok(TruncatedSeries { order, coeffs })
    }

    /// The constant series `c + 0*h + ...`.
    pub fn constant(c: C, order: usize) -> Self {
        let zero = c.zero_like();
        let mut coeffs = vec![zero; order + 1];
        coeffs[0] = c;
        TruncatedSeries { order, coeffs }
    }

    /// The monomial `c * h^k`, zero if `k > order`.
    pub fn monomial(c: C, k: usize, order: usize) -> Self {
        let zero = c.zero_like();
        let mut coeffs = vec![zero; order + 1];
        if k <= order {
            coeffs[k] = c;
        }
        TruncatedSeries { order, coeffs }
    }

    pub fn zero_like_of(sample: &C, order: usize) -> Self {
        TruncatedSeries::constant(sample.zero_like(), order)
    }

    pub fn one_like_of(sample: &C, order: usize) -> Self {
        TruncatedSeries::constant(sample.one_like(), order)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, k: usize) -> &C {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(C::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(C::is_zero)
    }

    /// Lowest k with a nonzero coefficient.
    pub fn lowest_nonzero_order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    fn check_order(&self, rhs: &Self) -> Result<()> {
        if self.order != rhs.order {
            return Err(Error::OrderMismatch {
                left: self.order,
                right: rhs.order,
            });
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_order(rhs)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a.add_ref(b))
            .collect();
        Ok(TruncatedSeries {
            order: self.order,
            coeffs,
        })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(C::neg_ref).collect(),
        }
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.check_order(rhs)?;
        let zero = self.coeffs[0].zero_like();
        let mut coeffs = vec![zero; self.order + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if i + j > self.order {
                    break;
                }
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].add_ref(&a.mul_ref(b));
            }
        }
        Ok(TruncatedSeries {
            order: self.order,
            coeffs,
        })
    }

    /// Coefficient-wise scaling by a ring element.
    pub fn scale(&self, c: &C) -> Self {
        TruncatedSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(|a| c.mul_ref(a)).collect(),
        }
    }

    /// Multiplication by h^k, dropping coefficients past the order.
    pub fn shift(&self, k: usize) -> Self {
        let zero = self.coeffs[0].zero_like();
        let mut coeffs = vec![zero; self.order + 1];
        for (j, a) in self.coeffs.iter().enumerate() {
            if j + k <= self.order {
                coeffs[j + k] = a.clone();
            }
        }
        TruncatedSeries {
            order: self.order,
            coeffs,
        }
    }

    /// Order-by-order inverse: requires an invertible zeroth coefficient.
    pub fn invert(&self) -> Result<Self> {
        let head_inv = self.coeffs[0].inv_ref().ok_or_else(|| Error::NotInvertible {
            what: format!("zeroth coefficient {}", self.coeffs[0]),
        })?;
        let mut inv = Vec::with_capacity(self.order + 1);
        inv.push(head_inv.clone());
        for k in 1..=self.order {
            // b_k = -a_0^{-1} * sum_{j=1..k} a_j b_{k-j}
            let mut acc = self.coeffs[0].zero_like();
            for j in 1..=k {
                acc = acc.add_ref(&self.coeffs[j].mul_ref(&inv[k - j]));
            }
            inv.push(head_inv.mul_ref(&acc).neg_ref());
        }
        Ok(TruncatedSeries {
            order: self.order,
            coeffs: inv,
        })
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> TruncatedSeries<D> {
        TruncatedSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn try_map<D: Coeff>(&self, f: impl Fn(&C) -> Result<D>) -> Result<TruncatedSeries<D>> {
        let coeffs = self.coeffs.iter().map(f).collect::<Result<Vec<_>>>()?;
        Ok(TruncatedSeries {
            order: self.order,
            coeffs,
        })
    }
}

/// A coefficient ring that is also a Q(i)-module. All coefficient rings in
/// this crate are Q(i)-algebras, which gives the series ring exp and log.
pub trait ScalarModule {
    fn scalar_mul(&self, s: &Scalar) -> Self;
}

impl ScalarModule for Scalar {
    fn scalar_mul(&self, s: &Scalar) -> Self {
        self * s
    }
}

impl<C: Coeff + ScalarModule> TruncatedSeries<C> {
    /// Coefficient-wise scaling by a base-field scalar.
    pub fn scale_scalar(&self, s: &Scalar) -> Self {
        self.map(|c| c.scalar_mul(s))
    }

    /// Truncated exponential of a series with zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm {
                term: self.coeffs[0].to_string(),
            });
        }
        let mut result = TruncatedSeries::one_like_of(&self.coeffs[0], self.order);
        let mut power = result.clone();
        let mut factorial = Scalar::one();
        for k in 1..=self.order {
            power = power.mul(self)?;
            factorial = &factorial * &Scalar::from_int(k as i64);
            let inv_fact = factorial.inv().expect("nonzero factorial");
            result = result.add(&power.scale_scalar(&inv_fact))?;
        }
        Ok(result)
    }

    /// Truncated logarithm of a series with unit constant term.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::NotInvertible {
                what: format!("log requires unit constant term, found {}", self.coeffs[0]),
            });
        }
        let one = TruncatedSeries::one_like_of(&self.coeffs[0], self.order);
        let u = self.sub(&one)?;
        let mut result = TruncatedSeries::zero_like_of(&self.coeffs[0], self.order);
        let mut power = one;
        for k in 1..=self.order {
            power = power.mul(&u)?;
            let sign = if k % 2 == 0 { -1 } else { 1 };
            let c = Scalar::from_ratio(sign, k as i64);
            result = result.add(&power.scale_scalar(&c))?;
        }
        Ok(result)
    }
}

impl<C: Coeff> fmt::Display for TruncatedSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let head = match k {
                0 => String::new(),
                1 => "h*".to_string(),
                _ => format!("h^{k}*"),
            };
            parts.push(format!("{head}({c})"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl<C: Coeff> fmt::Debug for TruncatedSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn series(vals: &[i64]) -> TruncatedSeries<Scalar> {
        TruncatedSeries::new(vals.len() - 1, vals.iter().map(|&v| s(v)).collect()).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let a = series(&[1, 1, 0]);
        let b = series(&[1, -1, 0]);
        assert_eq!(a.mul(&b).unwrap(), series(&[1, 0, -1]));
    }

    #[test]
    fn unit_is_neutral() {
        let a = series(&[3, -2, 5, 7]);
        let one = TruncatedSeries::constant(s(1), 3);
        assert_eq!(one.mul(&a).unwrap(), a);
    }

    #[test]
    fn cauchy_product_truncates() {
        // (1 + h + h^2)(1 + h) = 1 + 2h + 2h^2 mod h^3
        let a = series(&[1, 1, 1]);
        let b = series(&[1, 1, 0]);
        assert_eq!(a.mul(&b).unwrap(), series(&[1, 2, 2]));
    }

    #[test]
    fn order_mismatch_is_an_error() {
        let a = series(&[1, 1]);
        let b = series(&[1, 1, 0]);
        assert!(matches!(
            a.mul(&b),
            Err(Error::OrderMismatch { left: 1, right: 2 })
        ));
        assert!(a.add(&b).is_err());
    }

    #[test]
    fn invert_geometric() {
        // 1/(1+h) = 1 - h + h^2 - h^3
        let a = series(&[1, 1, 0, 0]);
        assert_eq!(a.invert().unwrap(), series(&[1, -1, 1, -1]));
    }

    #[test]
    fn invert_with_nonunit_head() {
        // 1/(2+h) = 1/2 - h/4 + h^2/8; oracle: multiply back and compare with 1.
        let a = series(&[2, 1, 0]);
        let inv = a.invert().unwrap();
        assert_eq!(
            inv.coeffs(),
            &[
                Scalar::from_ratio(1, 2),
                Scalar::from_ratio(-1, 4),
                Scalar::from_ratio(1, 8)
            ]
        );
        assert!(a.mul(&inv).unwrap().is_one());
    }

    #[test]
    fn invert_zero_head_fails() {
        let a = series(&[0, 1, 0]);
        assert!(matches!(a.invert(), Err(Error::NotInvertible { .. })));
    }

    #[test]
    fn exp_log_roundtrip() {
        let a = series(&[0, 2, -1, 3, 0, 1, 0]);
        let e = a.exp().unwrap();
        assert_eq!(e.log().unwrap(), a);
    }

    #[test]
    fn exp_rejects_constant_term() {
        let a = series(&[1, 1]);
        assert!(matches!(a.exp(), Err(Error::NonzeroConstantTerm { .. })));
    }

    #[test]
    fn shift_drops_top() {
        let a = series(&[1, 2, 3]);
        assert_eq!(a.shift(1), series(&[0, 1, 2]));
        assert_eq!(a.shift(4), series(&[0, 0, 0]));
    }
}
