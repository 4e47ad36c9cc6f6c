//! Tensor powers of the enveloping algebra: U(g)^(x)k.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::series::{Coeff, ScalarModule};

use super::element::{render_coefficient, PbwMonomial, UEAElement};
use super::spec::{check_same_spec, LieAlgebraSpec};

/// A finite linear combination of k-tuples of PBW monomials. Invariants as
/// for [`UEAElement`]: each leg normal-ordered, no zero coefficients.
#[derive(Clone)]
pub struct TensorElement {
    spec: Arc<LieAlgebraSpec>,
    arity: usize,
    terms: BTreeMap<Vec<PbwMonomial>, Scalar>,
}

impl PartialEq for TensorElement {
    fn eq(&self, other: &Self) -> bool {
        self.arity == other.arity
            && super::spec::same_spec(&self.spec, &other.spec)
            && self.terms == other.terms
    }
}

impl TensorElement {
    pub fn zero(spec: &Arc<LieAlgebraSpec>, arity: usize) -> Self {
        assert!(arity >= 1, "tensor arity must be positive");
        TensorElement {
            spec: Arc::clone(spec),
            arity,
            terms: BTreeMap::new(),
        }
    }

    /// `1 (x) ... (x) 1`.
    pub fn unit(spec: &Arc<LieAlgebraSpec>, arity: usize) -> Self {
        let mut t = Self::zero(spec, arity);
        t.add_term(
            vec![PbwMonomial::unit(spec.dim()); arity],
            Scalar::one(),
        );
        t
    }

    /// Outer product of the given leg elements.
    pub fn from_legs(legs: &[UEAElement]) -> Result<Self> {
        assert!(!legs.is_empty());
        let spec = legs[0].spec();
        for leg in &legs[1..] {
            check_same_spec(spec, leg.spec())?;
        }
        let mut out = Self::zero(spec, legs.len());
        let mut keys: Vec<(Vec<PbwMonomial>, Scalar)> = vec![(Vec::new(), Scalar::one())];
        for leg in legs {
            let mut next = Vec::new();
            for (prefix, c) in &keys {
                for (m, cm) in leg.terms() {
                    let mut key = prefix.clone();
                    key.push(m.clone());
                    next.push((key, c * cm));
                }
            }
            keys = next;
        }
        for (key, c) in keys {
            out.add_term(key, c);
        }
        Ok(out)
    }

    pub fn spec(&self) -> &Arc<LieAlgebraSpec> {
        &self.spec
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<PbwMonomial>, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.as_scalar().is_some_and(|c| c.is_one())
    }

    /// `Some(c)` iff the tensor is `c * 1(x)...(x)1` (including zero).
    pub fn as_scalar(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => {
                let (key, c) = self.terms.iter().next().unwrap();
                key.iter().all(PbwMonomial::is_unit).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub(crate) fn add_term(&mut self, key: Vec<PbwMonomial>, c: Scalar) {
        debug_assert_eq!(key.len(), self.arity);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = &*e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    fn check_compatible(&self, rhs: &Self) -> Result<()> {
        check_same_spec(&self.spec, &rhs.spec)?;
        if self.arity != rhs.arity {
            return Err(Error::ArityMismatch {
                left: self.arity,
                right: rhs.arity,
            });
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_compatible(rhs)?;
        let mut out = self.clone();
        for (key, c) in &rhs.terms {
            out.add_term(key.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        TensorElement {
            spec: Arc::clone(&self.spec),
            arity: self.arity,
            terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return TensorElement::zero(&self.spec, self.arity);
        }
        TensorElement {
            spec: Arc::clone(&self.spec),
            arity: self.arity,
            terms: self.terms.iter().map(|(k, c)| (k.clone(), c * s)).collect(),
        }
    }

    /// Leg-wise product, extended bilinearly.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.check_compatible(rhs)?;
        let mut out = TensorElement::zero(&self.spec, self.arity);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &rhs.terms {
                // Per-leg PBW products, then the outer product of the results.
                let legs: Vec<UEAElement> = (0..self.arity)
                    .map(|l| {
                        let mut word = ka[l].word();
                        word.extend(kb[l].word());
                        UEAElement::from_word(&self.spec, &word, Scalar::one())
                    })
                    .collect();
                let mut partial: Vec<(Vec<PbwMonomial>, Scalar)> =
                    vec![(Vec::new(), ca * cb)];
                for leg in &legs {
                    let mut next = Vec::new();
                    for (prefix, c) in &partial {
                        for (m, cm) in leg.terms() {
                            let mut key = prefix.clone();
                            key.push(m.clone());
                            next.push((key, c * cm));
                        }
                    }
                    partial = next;
                }
                for (key, c) in partial {
                    out.add_term(key, c);
                }
            }
        }
        Ok(out)
    }

    /// Inserts `front` unit legs before and `back` unit legs after,
    /// e.g. `pad(0, 1)` sends F to F(x)1.
    pub fn pad(&self, front: usize, back: usize) -> Self {
        let unit = PbwMonomial::unit(self.spec.dim());
        let mut out = TensorElement::zero(&self.spec, self.arity + front + back);
        for (key, c) in &self.terms {
            let mut k = vec![unit.clone(); front];
            k.extend(key.iter().cloned());
            k.extend(vec![unit.clone(); back]);
            out.add_term(k, c.clone());
        }
        out
    }

    /// Applies the coproduct to one leg (1-based), increasing the arity.
    pub fn coproduct_on_leg(&self, leg: usize) -> Result<Self> {
        if leg == 0 || leg > self.arity {
            return Err(Error::LegOutOfRange {
                leg,
                arity: self.arity,
            });
        }
        let mut out = TensorElement::zero(&self.spec, self.arity + 1);
        for (key, c) in &self.terms {
            let expanded =
                UEAElement::monomial(&self.spec, key[leg - 1].clone(), Scalar::one()).coproduct();
            for (pair, cp) in expanded.terms() {
                let mut k = Vec::with_capacity(self.arity + 1);
                k.extend(key[..leg - 1].iter().cloned());
                k.push(pair[0].clone());
                k.push(pair[1].clone());
                k.extend(key[leg..].iter().cloned());
                out.add_term(k, c * cp);
            }
        }
        Ok(out)
    }

    /// Applies the counit to one leg (1-based), decreasing the arity; an
    /// arity-2 input yields the remaining leg as a plain element via
    /// [`TensorElement::into_element`] after this call, or use that directly.
    pub fn counit_on_leg(&self, leg: usize) -> Result<Self> {
        if leg == 0 || leg > self.arity || self.arity < 2 {
            return Err(Error::LegOutOfRange {
                leg,
                arity: self.arity,
            });
        }
        let mut out = TensorElement::zero(&self.spec, self.arity - 1);
        for (key, c) in &self.terms {
            if !key[leg - 1].is_unit() {
                continue;
            }
            let mut k = key.clone();
            k.remove(leg - 1);
            out.add_term(k, c.clone());
        }
        Ok(out)
    }

    /// Converts an arity-1 tensor into an algebra element.
    pub fn into_element(&self) -> Result<UEAElement> {
        if self.arity != 1 {
            return Err(Error::ArityMismatch {
                left: self.arity,
                right: 1,
            });
        }
        let mut out = UEAElement::zero(&self.spec);
        for (key, c) in &self.terms {
            out = out.add(&UEAElement::monomial(&self.spec, key[0].clone(), c.clone()))?;
        }
        Ok(out)
    }

    /// Leading term in graded-lexicographic order on the concatenated
    /// exponent vectors. In the associated graded algebra leading terms
    /// multiply, which is what makes exact division well-defined.
    fn leading_term(&self) -> Option<(&Vec<PbwMonomial>, &Scalar)> {
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| cmp_graded(a, b))
    }

    /// Exact right division: finds Z with `Z * divisor == self`, or an error
    /// if no such element of U(g)^(x)k exists. Greedy elimination of leading
    /// terms in graded-lex order; sound because the associated graded algebra
    /// is a polynomial ring (a domain), so leading terms are multiplicative.
    pub fn div_right_exact(&self, divisor: &Self) -> Result<Self> {
        self.check_compatible(divisor)?;
        let (dt, dc) = divisor.leading_term().ok_or_else(|| Error::NotInvertible {
            what: "division by zero tensor".into(),
        })?;
        let dc_inv = dc.inv().expect("nonzero leading coefficient");
        let mut quotient = TensorElement::zero(&self.spec, self.arity);
        let mut rem = self.clone();
        loop {
            let (rt, rc) = match rem.leading_term() {
                Some((t, c)) => (t.clone(), c.clone()),
                None => break,
            };
            let mut q_key = Vec::with_capacity(self.arity);
            for (rm, dm) in rt.iter().zip(dt.iter()) {
                let mut exps = Vec::with_capacity(rm.0.len());
                for (&re, &de) in rm.0.iter().zip(dm.0.iter()) {
                    if re < de {
                        return Err(Error::NotInvertible {
                            what: format!("{divisor} does not right-divide {self}"),
                        });
                    }
                    exps.push(re - de);
                }
                q_key.push(PbwMonomial(exps));
            }
            let q_coeff = &rc * &dc_inv;
            let q_term = {
                let mut t = TensorElement::zero(&self.spec, self.arity);
                t.add_term(q_key, q_coeff);
                t
            };
            rem = rem.sub(&q_term.mul(divisor)?)?;
            quotient = quotient.add(&q_term)?;
        }
        Ok(quotient)
    }
}

/// Graded-lex comparison of tensor monomial keys: total degree first, then
/// lexicographic on the concatenated exponent vectors.
fn cmp_graded(a: &[PbwMonomial], b: &[PbwMonomial]) -> Ordering {
    let da: u32 = a.iter().map(PbwMonomial::degree).sum();
    let db: u32 = b.iter().map(PbwMonomial::degree).sum();
    da.cmp(&db).then_with(|| {
        a.iter()
            .flat_map(|m| m.0.iter())
            .cmp(b.iter().flat_map(|m| m.0.iter()))
    })
}

impl Coeff for TensorElement {
    fn zero_like(&self) -> Self {
        TensorElement::zero(&self.spec, self.arity)
    }
    fn one_like(&self) -> Self {
        TensorElement::unit(&self.spec, self.arity)
    }
    fn is_zero(&self) -> bool {
        TensorElement::is_zero(self)
    }
    fn is_one(&self) -> bool {
        TensorElement::is_unit(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self.add(rhs).expect("series coefficients share spec and arity")
    }
    fn neg_ref(&self) -> Self {
        self.neg()
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self.mul(rhs).expect("series coefficients share spec and arity")
    }
    fn inv_ref(&self) -> Option<Self> {
        // As for U(g) itself, the units of the tensor algebra are scalars.
        let c = self.as_scalar()?;
        Some(TensorElement::unit(&self.spec, self.arity).scale(&c.inv()?))
    }
}

impl ScalarModule for TensorElement {
    fn scalar_mul(&self, s: &Scalar) -> Self {
        self.scale(s)
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (k, (key, c)) in self.terms.iter().enumerate() {
            let mut coeff = render_coefficient(c, false);
            if k > 0 {
                if let Some(stripped) = coeff.strip_prefix('-') {
                    out.push_str(" - ");
                    coeff = stripped.to_string();
                } else {
                    out.push_str(" + ");
                }
            }
            let legs: Vec<String> = key
                .iter()
                .map(|m| {
                    UEAElement::monomial(&self.spec, m.clone(), Scalar::one()).to_string()
                })
                .collect();
            if !coeff.is_empty() && coeff != "-" {
                out.push_str(&coeff);
                out.push('*');
            } else {
                out.push_str(&coeff);
            }
            out.push_str(&legs.join("(x)"));
        }
        write!(f, "{out}")
    }
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abelian2() -> Arc<LieAlgebraSpec> {
        LieAlgebraSpec::abelian("r2", vec!["X".into(), "Y".into()])
    }

    fn ax_b() -> Arc<LieAlgebraSpec> {
        LieAlgebraSpec::from_brackets(
            "ab",
            vec!["H".into(), "E".into()],
            &[(0, 1, vec![(1, Scalar::one())])],
        )
        .unwrap()
    }

    fn gen_tensor(spec: &Arc<LieAlgebraSpec>, i: usize, j: usize) -> TensorElement {
        TensorElement::from_legs(&[
            UEAElement::generator(spec, i),
            UEAElement::generator(spec, j),
        ])
        .unwrap()
    }

    #[test]
    fn unit_is_neutral() {
        let spec = ax_b();
        let t = gen_tensor(&spec, 1, 0);
        let unit = TensorElement::unit(&spec, 2);
        assert_eq!(unit.mul(&t).unwrap(), t);
        assert_eq!(t.mul(&unit).unwrap(), t);
    }

    #[test]
    fn commuting_legs_multiply_independently() {
        let spec = abelian2();
        let x1 = TensorElement::from_legs(&[
            UEAElement::generator(&spec, 0),
            UEAElement::one(&spec),
        ])
        .unwrap();
        let y2 = TensorElement::from_legs(&[
            UEAElement::one(&spec),
            UEAElement::generator(&spec, 1),
        ])
        .unwrap();
        assert_eq!(x1.mul(&y2).unwrap(), gen_tensor(&spec, 0, 1));
    }

    #[test]
    fn leg_products_straighten() {
        // (E(x)1)(H(x)1) = (HE - E)(x)1 with [H,E] = E.
        let spec = ax_b();
        let e1 = TensorElement::from_legs(&[
            UEAElement::generator(&spec, 1),
            UEAElement::one(&spec),
        ])
        .unwrap();
        let h1 = TensorElement::from_legs(&[
            UEAElement::generator(&spec, 0),
            UEAElement::one(&spec),
        ])
        .unwrap();
        let eh = UEAElement::generator(&spec, 1)
            .mul(&UEAElement::generator(&spec, 0))
            .unwrap();
        let expected =
            TensorElement::from_legs(&[eh, UEAElement::one(&spec)]).unwrap();
        assert_eq!(e1.mul(&h1).unwrap(), expected);
    }

    #[test]
    fn arity_mismatch_is_an_error() {
        let spec = abelian2();
        let t2 = TensorElement::unit(&spec, 2);
        let t3 = TensorElement::unit(&spec, 3);
        assert!(matches!(
            t2.mul(&t3),
            Err(Error::ArityMismatch { left: 2, right: 3 })
        ));
    }

    #[test]
    fn coproduct_on_legs_of_primitives() {
        let spec = abelian2();
        let xy = gen_tensor(&spec, 0, 1);
        let one = UEAElement::one(&spec);
        let x = UEAElement::generator(&spec, 0);
        let y = UEAElement::generator(&spec, 1);
        // (coproduct (x) Id)(X(x)Y) = X(x)1(x)Y + 1(x)X(x)Y
        let left = xy.coproduct_on_leg(1).unwrap();
        let expected = TensorElement::from_legs(&[x.clone(), one.clone(), y.clone()])
            .unwrap()
            .add(&TensorElement::from_legs(&[one.clone(), x.clone(), y.clone()]).unwrap())
            .unwrap();
        assert_eq!(left, expected);
        // (Id (x) coproduct)(X(x)Y) = X(x)Y(x)1 + X(x)1(x)Y
        let right = xy.coproduct_on_leg(2).unwrap();
        let expected = TensorElement::from_legs(&[x.clone(), y.clone(), one.clone()])
            .unwrap()
            .add(&TensorElement::from_legs(&[x, one, y]).unwrap())
            .unwrap();
        assert_eq!(right, expected);
    }

    #[test]
    fn coproduct_on_unit_tensor() {
        let spec = abelian2();
        let unit2 = TensorElement::unit(&spec, 2);
        assert_eq!(
            unit2.coproduct_on_leg(1).unwrap(),
            TensorElement::unit(&spec, 3)
        );
    }

    #[test]
    fn leg_out_of_range() {
        let spec = abelian2();
        let unit2 = TensorElement::unit(&spec, 2);
        assert!(matches!(
            unit2.coproduct_on_leg(3),
            Err(Error::LegOutOfRange { leg: 3, arity: 2 })
        ));
    }

    #[test]
    fn counit_kills_generator_legs() {
        let spec = abelian2();
        let xy = gen_tensor(&spec, 0, 1);
        assert!(xy.counit_on_leg(1).unwrap().is_zero());
        let t = TensorElement::from_legs(&[
            UEAElement::one(&spec),
            UEAElement::generator(&spec, 1),
        ])
        .unwrap();
        let reduced = t.counit_on_leg(1).unwrap().into_element().unwrap();
        assert_eq!(reduced, UEAElement::generator(&spec, 1));
    }

    #[test]
    fn exact_division_roundtrip() {
        // (1(x)1 + X(x)Y) right-divides any product Z * (1(x)1 + X(x)Y).
        let spec = abelian2();
        let d = TensorElement::unit(&spec, 2)
            .add(&gen_tensor(&spec, 0, 1))
            .unwrap();
        let z = gen_tensor(&spec, 1, 0)
            .scale(&Scalar::from_ratio(2, 3))
            .add(&TensorElement::unit(&spec, 2).scale(&Scalar::i()))
            .unwrap();
        let product = z.mul(&d).unwrap();
        assert_eq!(product.div_right_exact(&d).unwrap(), z);
    }

    #[test]
    fn exact_division_nonabelian() {
        let spec = ax_b();
        let d = TensorElement::unit(&spec, 2)
            .add(&gen_tensor(&spec, 0, 1))
            .unwrap();
        let z = gen_tensor(&spec, 1, 1)
            .add(&gen_tensor(&spec, 0, 0).scale(&Scalar::from_int(-3)))
            .unwrap();
        let product = z.mul(&d).unwrap();
        assert_eq!(product.div_right_exact(&d).unwrap(), z);
    }

    #[test]
    fn inexact_division_fails() {
        let spec = abelian2();
        let d = TensorElement::unit(&spec, 2)
            .add(&gen_tensor(&spec, 0, 1))
            .unwrap();
        let x1 = TensorElement::from_legs(&[
            UEAElement::generator(&spec, 0),
            UEAElement::one(&spec),
        ])
        .unwrap();
        assert!(x1.div_right_exact(&d).is_err());
    }
}
