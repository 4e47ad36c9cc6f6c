//! Fourier polynomials on the n-torus: finite sums of modes
//! `e_m(x) = exp(i <m, x>)` with truncated-series coefficients.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::series::TruncatedSeries;

use super::FunctionElement;

/// A trigonometric polynomial with coefficients in Q(i)[[h]] mod h^{N+1}.
/// Modes multiply by adding mode vectors; generators act diagonally with
/// eigenvalue `i*m_j`, which is what makes star products of modes reduce to
/// exact scalar factors.
#[derive(Clone, PartialEq)]
pub struct FourierFunction {
    dim: usize,
    order: usize,
    terms: BTreeMap<Vec<i64>, TruncatedSeries<Scalar>>,
}

impl FourierFunction {
    pub fn zero(dim: usize, order: usize) -> Self {
        FourierFunction {
            dim,
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(dim: usize, order: usize) -> Self {
        Self::mode(dim, order, vec![0; dim])
    }

    /// The basis mode `e_m` with coefficient 1.
    pub fn mode(dim: usize, order: usize, m: Vec<i64>) -> Self {
        assert_eq!(m.len(), dim);
        let mut f = Self::zero(dim, order);
        f.add_term(m, TruncatedSeries::constant(Scalar::one(), order));
        f
    }

    pub fn with_coeff(dim: usize, order: usize, m: Vec<i64>, c: TruncatedSeries<Scalar>) -> Self {
        assert_eq!(m.len(), dim);
        let mut f = Self::zero(dim, order);
        f.add_term(m, c);
        f
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &TruncatedSeries<Scalar>)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &[i64]) -> TruncatedSeries<Scalar> {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| TruncatedSeries::constant(Scalar::zero(), self.order))
    }

    fn add_term(&mut self, m: Vec<i64>, c: TruncatedSeries<Scalar>) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&c).expect("uniform order");
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    fn check_dim(&self, rhs: &Self) -> Result<()> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: rhs.dim,
            });
        }
        if self.order != rhs.order {
            return Err(Error::OrderMismatch {
                left: self.order,
                right: rhs.order,
            });
        }
        Ok(())
    }
}

impl FunctionElement for FourierFunction {
    fn dim(&self) -> usize {
        self.dim
    }

    fn series_order(&self) -> usize {
        self.order
    }

    fn zero_like(&self) -> Self {
        Self::zero(self.dim, self.order)
    }

    fn one_like(&self) -> Self {
        Self::one(self.dim, self.order)
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_dim(rhs)?;
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    fn neg(&self) -> Self {
        FourierFunction {
            dim: self.dim,
            order: self.order,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg()))
                .collect(),
        }
    }

    fn mul(&self, rhs: &Self) -> Result<Self> {
        self.check_dim(rhs)?;
        let mut out = Self::zero(self.dim, self.order);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m: Vec<i64> = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                out.add_term(m, ca.mul(cb)?);
            }
        }
        Ok(out)
    }

    fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return self.zero_like();
        }
        FourierFunction {
            dim: self.dim,
            order: self.order,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.scale(s)))
                .collect(),
        }
    }

    fn scale_series(&self, s: &TruncatedSeries<Scalar>) -> Result<Self> {
        let mut out = Self::zero(self.dim, self.order);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.mul(s)?);
        }
        Ok(out)
    }

    fn shift_h(&self, k: usize) -> Self {
        let mut out = Self::zero(self.dim, self.order);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.shift(k));
        }
        out
    }

    fn partial(&self, j: usize) -> Result<Self> {
        if j >= self.dim {
            return Err(Error::DimensionMismatch {
                left: j,
                right: self.dim,
            });
        }
        let mut out = Self::zero(self.dim, self.order);
        for (m, c) in &self.terms {
            let ev = &Scalar::i() * &Scalar::from_int(m[j]);
            out.add_term(m.clone(), c.scale(&ev));
        }
        Ok(out)
    }

    fn coeff_of_h(&self, k: usize) -> Self {
        let mut out = Self::zero(self.dim, self.order);
        for (m, c) in &self.terms {
            out.add_term(
                m.clone(),
                TruncatedSeries::constant(c.coeff(k).clone(), self.order),
            );
        }
        out
    }

    fn is_h_constant(&self) -> bool {
        self.terms
            .values()
            .all(|c| c.coeffs()[1..].iter().all(Scalar::is_zero))
    }

    fn split_terms(&self) -> Vec<Self> {
        self.terms
            .iter()
            .map(|(m, c)| Self::with_coeff(self.dim, self.order, m.clone(), c.clone()))
            .collect()
    }

    fn constant_value(&self) -> Option<Scalar> {
        if self.terms.is_empty() {
            return Some(Scalar::zero());
        }
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next().unwrap();
        if m.iter().any(|&x| x != 0) {
            return None;
        }
        c.coeffs()[1..]
            .iter()
            .all(Scalar::is_zero)
            .then(|| c.coeff(0).clone())
    }

    fn diagonal_eigenvalue(&self, row: &[Scalar]) -> Option<Scalar> {
        if self.terms.len() != 1 {
            return None;
        }
        let m = self.terms.keys().next().unwrap();
        let mut acc = Scalar::zero();
        for (j, c) in row.iter().enumerate() {
            if c.is_zero() || m[j] == 0 {
                continue;
            }
            acc += &(c * &(&Scalar::i() * &Scalar::from_int(m[j])));
        }
        Some(acc)
    }

    /// All modes with components bounded by `cutoff` in absolute value.
    fn basis(dim: usize, order: usize, cutoff: usize) -> Vec<Self> {
        let c = cutoff as i64;
        let mut out = Vec::new();
        let mut m = vec![-c; dim];
        loop {
            out.push(Self::mode(dim, order, m.clone()));
            let mut j = 0;
            loop {
                if j == dim {
                    return out;
                }
                if m[j] < c {
                    m[j] += 1;
                    break;
                }
                m[j] = -c;
                j += 1;
            }
        }
    }
}

impl fmt::Display for FourierFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mode = format!(
                    "e({})",
                    m.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
                );
                format!("({c})*{mode}")
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for FourierFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_multiply_by_adding_mode_vectors() {
        let u = FourierFunction::mode(2, 2, vec![1, 0]);
        let v = FourierFunction::mode(2, 2, vec![0, 1]);
        assert_eq!(u.mul(&v).unwrap(), FourierFunction::mode(2, 2, vec![1, 1]));
    }

    #[test]
    fn partial_acts_diagonally() {
        let u = FourierFunction::mode(2, 1, vec![3, -2]);
        let d = u.partial(0).unwrap();
        assert_eq!(d, u.scale(&(&Scalar::i() * &Scalar::from_int(3))));
        let constant = FourierFunction::one(2, 1);
        assert!(constant.partial(1).unwrap().is_zero());
    }

    #[test]
    fn cancellation_removes_terms() {
        let u = FourierFunction::mode(2, 1, vec![1, 0]);
        assert!(u.add(&u.neg()).unwrap().is_zero());
    }

    #[test]
    fn basis_size() {
        assert_eq!(FourierFunction::basis(2, 0, 2).len(), 25);
        assert_eq!(FourierFunction::basis(2, 0, 1).len(), 9);
    }

    #[test]
    fn dimension_mismatch() {
        let u = FourierFunction::mode(2, 1, vec![1, 0]);
        let w = FourierFunction::mode(1, 1, vec![1]);
        assert!(u.mul(&w).is_err());
    }
}
