//! Polynomials on R^n with truncated-series coefficients.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::series::TruncatedSeries;

use super::{coordinate_name, FunctionElement};

/// A polynomial in the coordinates with coefficients in Q(i)[[h]] mod h^{N+1},
/// keyed by multi-exponents.
#[derive(Clone, PartialEq)]
pub struct PolyFunction {
    dim: usize,
    order: usize,
    terms: BTreeMap<Vec<u32>, TruncatedSeries<Scalar>>,
}

impl PolyFunction {
    pub fn zero(dim: usize, order: usize) -> Self {
        PolyFunction {
            dim,
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(dim: usize, order: usize) -> Self {
        Self::monomial(dim, order, vec![0; dim])
    }

    /// The coordinate monomial `x^e` with coefficient 1.
    pub fn monomial(dim: usize, order: usize, e: Vec<u32>) -> Self {
        assert_eq!(e.len(), dim);
        let mut f = Self::zero(dim, order);
        f.add_term(e, TruncatedSeries::constant(Scalar::one(), order));
        f
    }

    /// The j-th coordinate function.
    pub fn coordinate(dim: usize, order: usize, j: usize) -> Self {
        assert!(j < dim);
        let mut e = vec![0; dim];
        e[j] = 1;
        Self::monomial(dim, order, e)
    }

    pub fn with_coeff(dim: usize, order: usize, e: Vec<u32>, c: TruncatedSeries<Scalar>) -> Self {
        assert_eq!(e.len(), dim);
        let mut f = Self::zero(dim, order);
        f.add_term(e, c);
        f
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &TruncatedSeries<Scalar>)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[u32]) -> TruncatedSeries<Scalar> {
        self.terms
            .get(e)
            .cloned()
            .unwrap_or_else(|| TruncatedSeries::constant(Scalar::zero(), self.order))
    }

    fn add_term(&mut self, e: Vec<u32>, c: TruncatedSeries<Scalar>) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(entry) => {
                entry.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut entry) => {
                let sum = entry.get().add(&c).expect("uniform order");
                if sum.is_zero() {
                    entry.remove();
                } else {
                    *entry.get_mut() = sum;
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

impl FunctionElement for PolyFunction {
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
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    fn neg(&self) -> Self {
        PolyFunction {
            dim: self.dim,
            order: self.order,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.neg()))
                .collect(),
        }
    }

    fn mul(&self, rhs: &Self) -> Result<Self> {
        self.check_dim(rhs)?;
        let mut out = Self::zero(self.dim, self.order);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca.mul(cb)?);
            }
        }
        Ok(out)
    }

    fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return self.zero_like();
        }
        PolyFunction {
            dim: self.dim,
            order: self.order,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.scale(s)))
                .collect(),
        }
    }

    fn scale_series(&self, s: &TruncatedSeries<Scalar>) -> Result<Self> {
        let mut out = Self::zero(self.dim, self.order);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.mul(s)?);
        }
        Ok(out)
    }

    fn shift_h(&self, k: usize) -> Self {
        let mut out = Self::zero(self.dim, self.order);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.shift(k));
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
        for (e, c) in &self.terms {
            if e[j] == 0 {
                continue;
            }
            let mut de = e.clone();
            de[j] -= 1;
            out.add_term(de, c.scale(&Scalar::from_int(e[j] as i64)));
        }
        Ok(out)
    }

    fn coeff_of_h(&self, k: usize) -> Self {
        let mut out = Self::zero(self.dim, self.order);
        for (e, c) in &self.terms {
            out.add_term(
                e.clone(),
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

    /// All monomials of total degree at most `cutoff`.
    fn basis(dim: usize, order: usize, cutoff: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let mut e = vec![0u32; dim];
        loop {
            if e.iter().map(|&x| x as usize).sum::<usize>() <= cutoff {
                out.push(Self::monomial(dim, order, e.clone()));
            }
            let mut j = 0;
            loop {
                if j == dim {
                    return out;
                }
                if (e[j] as usize) < cutoff {
                    e[j] += 1;
                    break;
                }
                e[j] = 0;
                j += 1;
            }
        }
    }
}

impl fmt::Display for PolyFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut mono = String::new();
                for (j, &p) in e.iter().enumerate() {
                    if p == 0 {
                        continue;
                    }
                    if !mono.is_empty() {
                        mono.push('*');
                    }
                    mono.push_str(&coordinate_name(self.dim, j));
                    if p > 1 {
                        mono.push_str(&format!("^{p}"));
                    }
                }
                if mono.is_empty() {
                    format!("({c})")
                } else {
                    format!("({c})*{mono}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for PolyFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euler_operator_on_monomial() {
        // x d/dx on x^3 gives 3x^3.
        let x3 = PolyFunction::monomial(1, 0, vec![3]);
        let x = PolyFunction::coordinate(1, 0, 0);
        let result = x.mul(&x3.partial(0).unwrap()).unwrap();
        assert_eq!(result, x3.scale(&Scalar::from_int(3)));
    }

    #[test]
    fn partial_drops_constants() {
        let one = PolyFunction::one(2, 1);
        assert!(one.partial(0).unwrap().is_zero());
    }

    #[test]
    fn basis_of_degree_three() {
        // Univariate: 1, x, x^2, x^3.
        assert_eq!(PolyFunction::basis(1, 0, 3).len(), 4);
        // Bivariate degree <= 2: 1, x, y, x^2, xy, y^2.
        assert_eq!(PolyFunction::basis(2, 0, 2).len(), 6);
    }
}
