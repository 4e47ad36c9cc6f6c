//! Elements of the universal enveloping algebra in the PBW basis.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num::{BigInt, BigRational, One, Zero};

use crate::error::Result;
use crate::scalar::Scalar;
use crate::series::{Coeff, ScalarModule};

use super::spec::{check_same_spec, LieAlgebraSpec};
use super::tensor::TensorElement;

/// A normal-ordered PBW monomial, stored as the exponent vector of the
/// generators in declaration order: `X_0^{e_0} ... X_{d-1}^{e_{d-1}}`.
/// The empty monomial (all zeros) is the algebra unit.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct PbwMonomial(pub Vec<u32>);

impl PbwMonomial {
    pub fn unit(dim: usize) -> Self {
        PbwMonomial(vec![0; dim])
    }

    pub fn generator(dim: usize, i: usize) -> Self {
        let mut e = vec![0; dim];
        e[i] = 1;
        PbwMonomial(e)
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// The monomial as a word of generator indices in non-decreasing order.
    pub fn word(&self) -> Vec<usize> {
        let mut w = Vec::with_capacity(self.degree() as usize);
        for (i, &e) in self.0.iter().enumerate() {
            for _ in 0..e {
                w.push(i);
            }
        }
        w
    }

    fn display(&self, spec: &LieAlgebraSpec) -> String {
        if self.is_unit() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for (i, &e) in self.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(spec.generator_name(i).to_string()),
                _ => parts.push(format!("{}^{}", spec.generator_name(i), e)),
            }
        }
        parts.join("*")
    }
}

/// A finite Q(i)-linear combination of PBW monomials. Invariant: every
/// stored monomial is normal-ordered (by construction) and no zero
/// coefficients are kept.
#[derive(Clone)]
pub struct UEAElement {
    spec: Arc<LieAlgebraSpec>,
    terms: BTreeMap<PbwMonomial, Scalar>,
}

impl PartialEq for UEAElement {
    fn eq(&self, other: &Self) -> bool {
        super::spec::same_spec(&self.spec, &other.spec) && self.terms == other.terms
    }
}

impl UEAElement {
    pub fn zero(spec: &Arc<LieAlgebraSpec>) -> Self {
        UEAElement {
            spec: Arc::clone(spec),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(spec: &Arc<LieAlgebraSpec>) -> Self {
        Self::scalar(spec, Scalar::one())
    }

    pub fn scalar(spec: &Arc<LieAlgebraSpec>, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(PbwMonomial::unit(spec.dim()), c);
        }
        UEAElement {
            spec: Arc::clone(spec),
            terms,
        }
    }

    pub fn generator(spec: &Arc<LieAlgebraSpec>, i: usize) -> Self {
        assert!(i < spec.dim(), "generator index out of range");
        let mut terms = BTreeMap::new();
        terms.insert(PbwMonomial::generator(spec.dim(), i), Scalar::one());
        UEAElement {
            spec: Arc::clone(spec),
            terms,
        }
    }

    pub fn monomial(spec: &Arc<LieAlgebraSpec>, m: PbwMonomial, c: Scalar) -> Self {
        assert_eq!(m.0.len(), spec.dim(), "monomial length must equal dim");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        UEAElement {
            spec: Arc::clone(spec),
            terms,
        }
    }

    /// PBW straightening: rewrites an arbitrary word of generator indices in
    /// the normal-ordered basis. Out-of-order adjacent pairs are swapped,
    /// `X_j X_i -> X_i X_j + [X_j, X_i]`, recursing on the bracket term;
    /// each step strictly decreases (inversions, length) lexicographically.
    pub fn from_word(spec: &Arc<LieAlgebraSpec>, word: &[usize], coeff: Scalar) -> Self {
        let mut out = UEAElement::zero(spec);
        if coeff.is_zero() {
            return out;
        }
        let mut stack: Vec<(Vec<usize>, Scalar)> = vec![(word.to_vec(), coeff)];
        while let Some((w, c)) = stack.pop() {
            match (0..w.len().saturating_sub(1)).find(|&p| w[p] > w[p + 1]) {
                None => {
                    let mut exps = vec![0u32; spec.dim()];
                    for &i in &w {
                        exps[i] += 1;
                    }
                    out.add_term(PbwMonomial(exps), c);
                }
                Some(p) => {
                    let (hi, lo) = (w[p], w[p + 1]);
                    let mut swapped = w.clone();
                    swapped.swap(p, p + 1);
                    stack.push((swapped, c.clone()));
                    for (k, bc) in spec.bracket_terms(hi, lo) {
                        let mut shorter: Vec<usize> = w[..p].to_vec();
                        shorter.push(k);
                        shorter.extend_from_slice(&w[p + 2..]);
                        stack.push((shorter, &c * bc));
                    }
                }
            }
        }
        out
    }

    pub fn spec(&self) -> &Arc<LieAlgebraSpec> {
        &self.spec
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PbwMonomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &PbwMonomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_scalar().is_some_and(|c| c.is_one())
    }

    /// `Some(c)` iff the element is `c * 1` (including zero).
    pub fn as_scalar(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_unit().then(|| c.clone())
            }
            _ => None,
        }
    }

    fn add_term(&mut self, m: PbwMonomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
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

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        check_same_spec(&self.spec, &rhs.spec)?;
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        UEAElement {
            spec: Arc::clone(&self.spec),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return UEAElement::zero(&self.spec);
        }
        UEAElement {
            spec: Arc::clone(&self.spec),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    /// Product in U(g): concatenate words and straighten, extended bilinearly.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        check_same_spec(&self.spec, &rhs.spec)?;
        let mut out = UEAElement::zero(&self.spec);
        for (ma, ca) in &self.terms {
            let wa = ma.word();
            for (mb, cb) in &rhs.terms {
                let mut word = wa.clone();
                word.extend(mb.word());
                let product = UEAElement::from_word(&self.spec, &word, ca * cb);
                for (m, c) in product.terms {
                    out.add_term(m, c);
                }
            }
        }
        Ok(out)
    }

    pub fn commutator(&self, rhs: &Self) -> Result<Self> {
        self.mul(rhs)?.sub(&rhs.mul(self)?)
    }

    /// The coproduct, the unique algebra morphism with primitive generators:
    /// `coproduct(X) = X(x)1 + 1(x)X`. Computed per generator power by the
    /// binomial expansion, then multiplied out leg-wise.
    pub fn coproduct(&self) -> TensorElement {
        let mut out = TensorElement::zero(&self.spec, 2);
        for (m, c) in &self.terms {
            let mut acc = TensorElement::unit(&self.spec, 2).scale(c);
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                acc = acc
                    .mul(&primitive_power_coproduct(&self.spec, i, e))
                    .expect("same spec");
            }
            out = out.add(&acc).expect("same spec");
        }
        out
    }

    /// The counit: the coefficient of the empty monomial.
    pub fn counit(&self) -> Scalar {
        self.coeff(&PbwMonomial::unit(self.spec.dim()))
    }
}

/// `coproduct(X_i^e) = sum_j C(e,j) X_i^j (x) X_i^{e-j}`.
fn primitive_power_coproduct(spec: &Arc<LieAlgebraSpec>, i: usize, e: u32) -> TensorElement {
    let dim = spec.dim();
    let mut out = TensorElement::zero(spec, 2);
    let mut binom = BigRational::one();
    for j in 0..=e {
        if j > 0 {
            // C(e, j) = C(e, j-1) * (e - j + 1) / j
            binom = binom * BigRational::new(BigInt::from(e - j + 1), BigInt::from(j));
        }
        let mut left = vec![0u32; dim];
        left[i] = j;
        let mut right = vec![0u32; dim];
        right[i] = e - j;
        out.add_term(
            vec![PbwMonomial(left), PbwMonomial(right)],
            Scalar::new(binom.clone(), BigRational::from_integer(BigInt::from(0))),
        );
    }
    out
}

impl Coeff for UEAElement {
    fn zero_like(&self) -> Self {
        UEAElement::zero(&self.spec)
    }
    fn one_like(&self) -> Self {
        UEAElement::one(&self.spec)
    }
    fn is_zero(&self) -> bool {
        UEAElement::is_zero(self)
    }
    fn is_one(&self) -> bool {
        UEAElement::is_one(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self.add(rhs).expect("series coefficients share one spec")
    }
    fn neg_ref(&self) -> Self {
        self.neg()
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self.mul(rhs).expect("series coefficients share one spec")
    }
    fn inv_ref(&self) -> Option<Self> {
        // The units of U(g) are the nonzero scalars.
        let c = self.as_scalar()?;
        Some(UEAElement::scalar(&self.spec, c.inv()?))
    }
}

impl ScalarModule for UEAElement {
    fn scalar_mul(&self, s: &Scalar) -> Self {
        self.scale(s)
    }
}

impl fmt::Display for UEAElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mut coeff = render_coefficient(c, m.is_unit());
            if k > 0 {
                if let Some(stripped) = coeff.strip_prefix('-') {
                    out.push_str(" - ");
                    coeff = stripped.to_string();
                } else {
                    out.push_str(" + ");
                }
            }
            out.push_str(&coeff);
            if !m.is_unit() {
                if !coeff.is_empty() && coeff != "-" {
                    out.push('*');
                }
                out.push_str(&m.display(&self.spec));
            }
        }
        write!(f, "{out}")
    }
}

impl fmt::Debug for UEAElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Renders a term coefficient, dropping unit coefficients on non-unit
/// monomials and parenthesizing genuinely complex values.
pub(crate) fn render_coefficient(c: &Scalar, keep_unit: bool) -> String {
    if c.is_one() && !keep_unit {
        return String::new();
    }
    if (-c).is_one() && !keep_unit {
        return "-".to_string();
    }
    let s = c.to_string();
    if (!c.re().is_zero() && !c.im().is_zero()) || s.contains('/') {
        format!("({s})")
    } else {
        s
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

    #[test]
    fn empty_word_is_unit() {
        let spec = abelian2();
        assert!(UEAElement::from_word(&spec, &[], Scalar::one()).is_one());
    }

    #[test]
    fn abelian_straightening_sorts() {
        let spec = abelian2();
        let yx = UEAElement::from_word(&spec, &[1, 0], Scalar::one());
        let xy = UEAElement::from_word(&spec, &[0, 1], Scalar::one());
        assert_eq!(yx, xy);
    }

    #[test]
    fn ax_b_straightening() {
        // With [H,E] = E: E*H = H*E + [E,H] = H*E - E.
        let spec = ax_b();
        let eh = UEAElement::from_word(&spec, &[1, 0], Scalar::one());
        let he = UEAElement::from_word(&spec, &[0, 1], Scalar::one());
        let e = UEAElement::generator(&spec, 1);
        assert_eq!(eh, he.sub(&e).unwrap());
        assert_eq!(eh.to_string(), "-E + H*E");
    }

    #[test]
    fn mul_matches_straightening() {
        let spec = ax_b();
        let h = UEAElement::generator(&spec, 0);
        let e = UEAElement::generator(&spec, 1);
        let eh = e.mul(&h).unwrap();
        assert_eq!(eh, UEAElement::from_word(&spec, &[1, 0], Scalar::one()));
        let one = UEAElement::one(&spec);
        assert_eq!(one.mul(&eh).unwrap(), eh);
    }

    #[test]
    fn spec_mismatch_is_an_error() {
        let a = UEAElement::one(&abelian2());
        let b = UEAElement::one(&ax_b());
        assert!(a.mul(&b).is_err());
        assert!(a.add(&b).is_err());
    }

    #[test]
    fn coproduct_of_unit_and_generator() {
        let spec = abelian2();
        let one = UEAElement::one(&spec);
        assert!(one.coproduct().is_unit());
        let x = UEAElement::generator(&spec, 0);
        let d = x.coproduct();
        // X(x)1 + 1(x)X
        let expected = TensorElement::from_legs(&[x.clone(), UEAElement::one(&spec)])
            .unwrap()
            .add(&TensorElement::from_legs(&[UEAElement::one(&spec), x]).unwrap())
            .unwrap();
        assert_eq!(d, expected);
    }

    #[test]
    fn coproduct_of_square_is_binomial() {
        // coproduct(X^2) = X^2(x)1 + 2 X(x)X + 1(x)X^2; oracle: square of coproduct(X).
        let spec = abelian2();
        let x = UEAElement::generator(&spec, 0);
        let x2 = x.mul(&x).unwrap();
        let direct = x2.coproduct();
        let oracle = x.coproduct().mul(&x.coproduct()).unwrap();
        assert_eq!(direct, oracle);
    }

    #[test]
    fn counit_projects_to_constant_term() {
        let spec = ax_b();
        let h = UEAElement::generator(&spec, 0);
        let e = UEAElement::generator(&spec, 1);
        assert_eq!(UEAElement::one(&spec).counit(), Scalar::one());
        assert_eq!(h.counit(), Scalar::zero());
        // eps(3 + H*E + 5*H) = 3
        let v = UEAElement::scalar(&spec, Scalar::from_int(3))
            .add(&h.mul(&e).unwrap())
            .unwrap()
            .add(&h.scale(&Scalar::from_int(5)))
            .unwrap();
        assert_eq!(v.counit(), Scalar::from_int(3));
    }

    #[test]
    fn units_are_scalars_only() {
        let spec = ax_b();
        let two = UEAElement::scalar(&spec, Scalar::from_int(2));
        assert_eq!(
            two.inv_ref().unwrap(),
            UEAElement::scalar(&spec, Scalar::from_ratio(1, 2))
        );
        let h = UEAElement::generator(&spec, 0);
        assert!(h.inv_ref().is_none());
        let one_plus_h = UEAElement::one(&spec).add(&h).unwrap();
        assert!(one_plus_h.inv_ref().is_none());
    }
}
