//! Twist star products on a function model: evaluation, the star-product
//! axioms, extraction of the bidifferential coefficients B_k, first-order
//! Poisson compatibility, and equivalence transformations.

use crate::error::{Error, Result};
use crate::model::{poisson_bracket, ActionAssignment, FunctionElement};
use crate::report::Report;
use crate::scalar::Scalar;
use crate::series::TruncatedSeries;
use crate::twist::Twist;
use crate::uea::{check_same_spec, LieAlgebraSpec, TensorElement, UEAElement};

use std::sync::Arc;

/// Applies an inverse-twist series to a pair of model elements through two
/// (possibly distinct) actions and multiplies pointwise:
/// `sum_k h^k sum_terms c * (left-action m1 f) * (right-action m2 g)`.
pub(crate) fn apply_pair<F: FunctionElement>(
    series: &TruncatedSeries<TensorElement>,
    left: (&ActionAssignment<F>, &F),
    right: (&ActionAssignment<F>, &F),
) -> Result<F> {
    let (la, f) = left;
    let (ra, g) = right;
    let mut out = f.zero_like();
    for (k, tensor) in series.coeffs().iter().enumerate() {
        if tensor.is_zero() {
            continue;
        }
        let mut level = f.zero_like();
        for (legs, c) in tensor.terms() {
            let lf = la.represent(
                &UEAElement::monomial(la.spec(), legs[0].clone(), Scalar::one()),
                f,
            )?;
            let rg = ra.represent(
                &UEAElement::monomial(ra.spec(), legs[1].clone(), Scalar::one()),
                g,
            )?;
            level = level.add(&lf.mul(&rg)?.scale(c))?;
        }
        out = out.add(&level.shift_h(k))?;
    }
    Ok(out)
}

/// A twist star product `f * g = m o F^{-1} (act (x) act) (f (x) g)` on a
/// function model with a validated action.
#[derive(Clone)]
pub struct StarAlgebra<F: FunctionElement> {
    assign: ActionAssignment<F>,
    twist: Twist,
    f_inv: TruncatedSeries<TensorElement>,
}

impl<F: FunctionElement> StarAlgebra<F> {
    /// Builds the star algebra after verifying that the twist passes the
    /// cocycle and counitality checks (which is what makes the product
    /// associative and unital).
    pub fn new(assign: ActionAssignment<F>, twist: Twist) -> Result<Self> {
        check_same_spec(assign.spec(), twist.spec())?;
        let counit = twist.check_counitality();
        if !counit.passed() {
            return Err(Error::InvalidTwist {
                details: format!("counitality fails: {counit}"),
            });
        }
        let cocycle = twist.check_cocycle();
        if !cocycle.passed() {
            return Err(Error::InvalidTwist {
                details: format!("cocycle condition fails: {cocycle}"),
            });
        }
        Ok(Self::new_unchecked(assign, twist))
    }

    /// Builds the star algebra without validating the twist. Deliberately
    /// available so that a defective twist's knock-on associativity failure
    /// can be demonstrated.
    pub fn new_unchecked(assign: ActionAssignment<F>, twist: Twist) -> Self {
        let f_inv = twist.inverse();
        StarAlgebra {
            assign,
            twist,
            f_inv,
        }
    }

    pub fn assign(&self) -> &ActionAssignment<F> {
        &self.assign
    }

    pub fn twist(&self) -> &Twist {
        &self.twist
    }

    pub fn order(&self) -> usize {
        self.twist.order()
    }

    pub fn inverse_twist(&self) -> &TruncatedSeries<TensorElement> {
        &self.f_inv
    }

    /// `f * g`, truncated at the carried order.
    pub fn star(&self, f: &F, g: &F) -> Result<F> {
        if f.dim() != self.assign.model_dim() || g.dim() != self.assign.model_dim() {
            return Err(Error::DimensionMismatch {
                left: f.dim(),
                right: self.assign.model_dim(),
            });
        }
        apply_pair(&self.f_inv, (&self.assign, f), (&self.assign, g))
    }

    /// The coefficient of h^k in `f * g` for h-constant inputs: the value of
    /// the bidifferential operator B_k.
    pub fn extract_bk(&self, f: &F, g: &F, k: usize) -> Result<F> {
        for (name, v) in [("left", f), ("right", g)] {
            if !v.is_h_constant() {
                return Err(Error::NotHConstant {
                    what: format!("{name} input {v}"),
                });
            }
        }
        Ok(self.star(f, g)?.coeff_of_h(k))
    }

    /// Unitality: `f * 1 == f == 1 * f` for every sample.
    pub fn check_unitality(&self, samples: &[F]) -> Result<Report> {
        let mut report = Report::new("star-unitality");
        let one = match samples.first() {
            Some(f) => f.one_like(),
            None => return Ok(report),
        };
        for (idx, f) in samples.iter().enumerate() {
            let left = self.star(&one, f)?;
            let right = self.star(f, &one)?;
            let ok = &left == f && &right == f;
            if !ok {
                report.fail();
                report.witness(format!("sample {idx}"), f);
                if &left != f {
                    report.witness(format!("1 * sample {idx}"), left);
                }
                if &right != f {
                    report.witness(format!("sample {idx} * 1"), right);
                }
            }
        }
        let all_ok = report.passed();
        report.detail(0, all_ok, format!("{} samples", samples.len()));
        Ok(report)
    }

    /// Associativity `(f*g)*h == f*(g*h)`, exactly, on every triple.
    /// Failures record the lowest failing order in h and the first witness.
    pub fn check_associativity(&self, triples: &[(F, F, F)]) -> Result<Report> {
        let mut report = Report::new("star-associativity");
        let mut failures_by_order = vec![0usize; self.order() + 1];
        let mut witnessed = false;
        for (idx, (f, g, h)) in triples.iter().enumerate() {
            let left = self.star(&self.star(f, g)?, h)?;
            let right = self.star(f, &self.star(g, h)?)?;
            let diff = left.sub(&right)?;
            if let Some(k) = diff.lowest_nonzero_h_order() {
                failures_by_order[k] += 1;
                report.fail_at(k);
                if !witnessed {
                    report.witness(format!("triple {idx}"), format!("({f}, {g}, {h})"));
                    report.witness("difference", diff);
                    witnessed = true;
                }
            }
        }
        for (k, &count) in failures_by_order.iter().enumerate() {
            report.detail(
                k,
                count == 0,
                format!("{count} of {} triples fail at this order", triples.len()),
            );
        }
        Ok(report)
    }

    /// First-order Poisson compatibility
    /// `B_1(f,g) - B_1(g,f) == i {f, g}` on every pair. Defined for
    /// two-dimensional models with the standard symplectic structure.
    pub fn check_first_order_poisson(&self, pairs: &[(F, F)]) -> Result<Report> {
        let mut report = Report::new("first-order-poisson");
        if self.assign.model_dim() != 2 {
            return Err(Error::NoPoissonStructure {
                dim: self.assign.model_dim(),
            });
        }
        let mut ok_all = true;
        for (idx, (f, g)) in pairs.iter().enumerate() {
            let b1fg = self.extract_bk(f, g, 1)?;
            let b1gf = self.extract_bk(g, f, 1)?;
            let antisym = b1fg.sub(&b1gf)?;
            let bracket = poisson_bracket(f, g)?.scale(&Scalar::i());
            if antisym != bracket {
                ok_all = false;
                report.fail_at(1);
                if report.witnesses.is_empty() {
                    report.witness(format!("pair {idx}"), format!("({f}, {g})"));
                    report.witness("B1(f,g) - B1(g,f)", &antisym);
                    report.witness("i{f,g}", &bracket);
                }
            }
        }
        report.detail(1, ok_all, format!("{} pairs", pairs.len()));
        Ok(report)
    }
}

/// A differential operator on the model: a finite sum of
/// (multiply by coefficient function) o (PBW monomial action) terms.
#[derive(Clone)]
pub struct DiffOperator<F: FunctionElement> {
    terms: Vec<(F, UEAElement)>,
}

impl<F: FunctionElement> DiffOperator<F> {
    pub fn new(terms: Vec<(F, UEAElement)>) -> Self {
        DiffOperator { terms }
    }

    /// Pure PBW action with unit coefficient.
    pub fn from_element(coeff_one: &F, u: UEAElement) -> Self {
        DiffOperator {
            terms: vec![(coeff_one.one_like(), u)],
        }
    }

    /// Multiplication operator by a fixed function.
    pub fn multiplication(by: F, spec: &Arc<LieAlgebraSpec>) -> Self {
        DiffOperator {
            terms: vec![(by, UEAElement::one(spec))],
        }
    }

    pub fn apply(&self, assign: &ActionAssignment<F>, f: &F) -> Result<F> {
        let mut out = f.zero_like();
        for (coeff, u) in &self.terms {
            out = out.add(&coeff.mul(&assign.represent(u, f)?)?)?;
        }
        Ok(out)
    }

    fn is_h_constant(&self) -> bool {
        self.terms.iter().all(|(c, _)| c.is_h_constant())
    }
}

/// An equivalence transformation `T = Id + sum h^k T_k` with each T_k a
/// differential operator on the model; `T(1) = 1` is enforced at
/// construction, and the head Id makes T invertible mod h^{N+1}.
#[derive(Clone)]
pub struct EquivalenceMap<F: FunctionElement> {
    assign: ActionAssignment<F>,
    /// ops[k-1] is T_k.
    ops: Vec<DiffOperator<F>>,
}

impl<F: FunctionElement> EquivalenceMap<F> {
    pub fn new(assign: ActionAssignment<F>, ops: Vec<DiffOperator<F>>) -> Result<Self> {
        let order = assign.order();
        if ops.len() != order {
            return Err(Error::CoefficientCount {
                expected: order,
                got: ops.len(),
            });
        }
        let sample = ops
            .iter()
            .flat_map(|op| op.terms.first())
            .map(|(c, _)| c.clone())
            .next();
        let one = match sample {
            Some(c) => c.one_like(),
            None => return Ok(EquivalenceMap { assign, ops }),
        };
        for (k, op) in ops.iter().enumerate() {
            if !op.is_h_constant() {
                return Err(Error::NotHConstant {
                    what: format!("operator T_{}", k + 1),
                });
            }
            let on_unit = op.apply(&assign, &one)?;
            if !on_unit.is_zero() {
                let t_of_one = one.add(&on_unit.shift_h(k + 1))?;
                return Err(Error::UnitNotFixed {
                    value: t_of_one.to_string(),
                });
            }
        }
        Ok(EquivalenceMap { assign, ops })
    }

    pub fn order(&self) -> usize {
        self.assign.order()
    }

    /// `T(f) = f + sum_k h^k T_k(f)`.
    pub fn apply(&self, f: &F) -> Result<F> {
        let mut out = f.clone();
        for (k, op) in self.ops.iter().enumerate() {
            out = out.add(&op.apply(&self.assign, f)?.shift_h(k + 1))?;
        }
        Ok(out)
    }

    /// `T^{-1}(f)`, solved order by order: with g = T^{-1}(f),
    /// `g_m = f_m - sum_{k=1..m} T_k(g_{m-k})`.
    pub fn apply_inverse(&self, f: &F) -> Result<F> {
        let order = self.order();
        let mut parts: Vec<F> = Vec::with_capacity(order + 1);
        for m in 0..=order {
            let mut g_m = f.coeff_of_h(m);
            for k in 1..=m {
                let tk_g = self.ops[k - 1].apply(&self.assign, &parts[m - k])?;
                g_m = g_m.sub(&tk_g.coeff_of_h(0))?;
            }
            parts.push(g_m);
        }
        let mut out = f.zero_like();
        for (m, p) in parts.iter().enumerate() {
            out = out.add(&p.shift_h(m))?;
        }
        Ok(out)
    }
}

/// The transported product `f *' g := T(T^{-1}(f) * T^{-1}(g))`, which
/// satisfies `T(f * g) = T(f) *' T(g)` by construction.
pub struct TransformedStar<F: FunctionElement> {
    base: StarAlgebra<F>,
    map: EquivalenceMap<F>,
}

impl<F: FunctionElement> TransformedStar<F> {
    pub fn new(base: StarAlgebra<F>, map: EquivalenceMap<F>) -> Result<Self> {
        if base.order() != map.order() {
            return Err(Error::OrderMismatch {
                left: base.order(),
                right: map.order(),
            });
        }
        Ok(TransformedStar { base, map })
    }

    pub fn star(&self, f: &F, g: &F) -> Result<F> {
        let tf = self.map.apply_inverse(f)?;
        let tg = self.map.apply_inverse(g)?;
        self.map.apply(&self.base.star(&tf, &tg)?)
    }

    pub fn map(&self) -> &EquivalenceMap<F> {
        &self.map
    }

    pub fn base(&self) -> &StarAlgebra<F> {
        &self.base
    }
}

/// Independent oracle for the noncommutative-torus relation: the truncated
/// scalar exponential `exp(c*h)` computed coefficient by coefficient.
pub fn scalar_exponential(c: &Scalar, order: usize) -> TruncatedSeries<Scalar> {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut acc = Scalar::one();
    coeffs.push(acc.clone());
    for k in 1..=order {
        acc = &(&acc * c) * &Scalar::from_int(k as i64).inv().expect("k > 0");
        coeffs.push(acc.clone());
    }
    TruncatedSeries::new(order, coeffs).expect("length matches")
}

/// The noncommutative torus relation `U*V == exp(-i h) (V*U)` for the basic
/// modes U = e_(1,0), V = e_(0,1) of a two-torus star algebra.
pub fn check_torus_relation(
    star: &StarAlgebra<crate::model::FourierFunction>,
) -> Result<Report> {
    use crate::model::FourierFunction;
    let mut report = Report::new("noncommutative-torus-relation");
    let order = star.order();
    let u = FourierFunction::mode(2, order, vec![1, 0]);
    let v = FourierFunction::mode(2, order, vec![0, 1]);
    let uv = star.star(&u, &v)?;
    let vu = star.star(&v, &u)?;
    let phase = scalar_exponential(&-&Scalar::i(), order);
    let rhs = vu.scale_series(&phase)?;
    let ok = uv == rhs;
    if !ok {
        report.fail();
        report.witness("U*V", &uv);
        report.witness("exp(-ih)*(V*U)", &rhs);
    }
    report.detail(0, ok, "U*V == exp(-ih)*(V*U)");
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Derivation, FourierFunction, PolyFunction};
    use crate::uea::LieAlgebraSpec;
    use std::sync::Arc;

    fn torus_star(order: usize) -> StarAlgebra<FourierFunction> {
        let spec = LieAlgebraSpec::abelian("r2", vec!["X".into(), "Y".into()]);
        let sample = FourierFunction::zero(2, order);
        let assign = ActionAssignment::new(
            &spec,
            vec![
                Derivation::partial(2, 0, &sample),
                Derivation::partial(2, 1, &sample),
            ],
        )
        .unwrap();
        let yx = TensorElement::from_legs(&[
            UEAElement::generator(&spec, 1),
            UEAElement::generator(&spec, 0),
        ])
        .unwrap();
        let xy = TensorElement::from_legs(&[
            UEAElement::generator(&spec, 0),
            UEAElement::generator(&spec, 1),
        ])
        .unwrap();
        let exponent = TruncatedSeries::monomial(
            yx.sub(&xy)
                .unwrap()
                .scale(&(&Scalar::i() * &Scalar::from_ratio(1, 2))),
            1,
            order,
        );
        StarAlgebra::new(assign, Twist::exponential(&exponent).unwrap()).unwrap()
    }

    fn plane_star(order: usize) -> StarAlgebra<PolyFunction> {
        let spec = LieAlgebraSpec::abelian("r2", vec!["X".into(), "Y".into()]);
        let sample = PolyFunction::zero(2, order);
        let assign = ActionAssignment::new(
            &spec,
            vec![
                Derivation::partial(2, 0, &sample),
                Derivation::partial(2, 1, &sample),
            ],
        )
        .unwrap();
        let yx = TensorElement::from_legs(&[
            UEAElement::generator(&spec, 1),
            UEAElement::generator(&spec, 0),
        ])
        .unwrap();
        let xy = TensorElement::from_legs(&[
            UEAElement::generator(&spec, 0),
            UEAElement::generator(&spec, 1),
        ])
        .unwrap();
        let exponent = TruncatedSeries::monomial(
            yx.sub(&xy)
                .unwrap()
                .scale(&(&Scalar::i() * &Scalar::from_ratio(1, 2))),
            1,
            order,
        );
        StarAlgebra::new(assign, Twist::exponential(&exponent).unwrap()).unwrap()
    }

    #[test]
    fn star_with_unit_is_identity() {
        let star = torus_star(4);
        let samples = FourierFunction::basis(2, 4, 1);
        assert!(star.check_unitality(&samples).unwrap().passed());
    }

    #[test]
    fn moyal_product_of_basic_modes() {
        // e_(1,0) * e_(0,1) = exp(-ih/2) e_(1,1): coefficients 1, -i/2, -1/8, ...
        let star = torus_star(2);
        let u = FourierFunction::mode(2, 2, vec![1, 0]);
        let v = FourierFunction::mode(2, 2, vec![0, 1]);
        let uv = star.star(&u, &v).unwrap();
        let phase = scalar_exponential(
            &(&-&Scalar::i() * &Scalar::from_ratio(1, 2)),
            2,
        );
        assert_eq!(
            phase.coeffs(),
            &[
                Scalar::one(),
                &-&Scalar::i() * &Scalar::from_ratio(1, 2),
                Scalar::from_ratio(-1, 8),
            ]
        );
        let expected = FourierFunction::mode(2, 2, vec![1, 1])
            .scale_series(&phase)
            .unwrap();
        assert_eq!(uv, expected);
    }

    #[test]
    fn plane_coordinates_have_canonical_commutator() {
        // x * y - y * x = ih on the polynomial plane.
        let star = plane_star(3);
        let x = PolyFunction::coordinate(2, 3, 0);
        let y = PolyFunction::coordinate(2, 3, 1);
        let comm = star
            .star(&x, &y)
            .unwrap()
            .sub(&star.star(&y, &x).unwrap())
            .unwrap();
        let ih = PolyFunction::one(2, 3).scale(&Scalar::i()).shift_h(1);
        assert_eq!(comm, ih);
    }

    #[test]
    fn b0_is_pointwise_and_b1_of_unit_vanishes() {
        let star = torus_star(3);
        let u = FourierFunction::mode(2, 3, vec![1, 0]);
        let v = FourierFunction::mode(2, 3, vec![0, 1]);
        assert_eq!(star.extract_bk(&u, &v, 0).unwrap(), u.mul(&v).unwrap());
        let one = FourierFunction::one(2, 3);
        assert!(star.extract_bk(&u, &one, 1).unwrap().is_zero());
        // B1(e_(1,0), e_(0,1)) = -(i/2) e_(1,1)
        assert_eq!(
            star.extract_bk(&u, &v, 1).unwrap(),
            FourierFunction::mode(2, 3, vec![1, 1])
                .scale(&(&-&Scalar::i() * &Scalar::from_ratio(1, 2)))
        );
    }

    #[test]
    fn bk_rejects_h_dependent_inputs() {
        let star = torus_star(2);
        let u = FourierFunction::mode(2, 2, vec![1, 0]).shift_h(1);
        let v = FourierFunction::mode(2, 2, vec![0, 1]);
        assert!(matches!(
            star.extract_bk(&u, &v, 1),
            Err(Error::NotHConstant { .. })
        ));
    }

    #[test]
    fn torus_relation_holds() {
        let star = torus_star(6);
        assert!(check_torus_relation(&star).unwrap().passed());
    }

    #[test]
    fn poisson_check_passes_for_moyal() {
        let star = torus_star(2);
        let basis = FourierFunction::basis(2, 2, 1);
        let pairs: Vec<_> = basis
            .iter()
            .flat_map(|f| basis.iter().map(move |g| (f.clone(), g.clone())))
            .collect();
        assert!(star.check_first_order_poisson(&pairs).unwrap().passed());
    }

    #[test]
    fn symmetric_twist_fails_poisson_check() {
        // exp(h (X(x)X)) has symmetric B1, so the antisymmetrization vanishes
        // and the bracket identity must fail on noncommuting pairs.
        let spec = LieAlgebraSpec::abelian("r2", vec!["X".into(), "Y".into()]);
        let sample = FourierFunction::zero(2, 2);
        let assign = ActionAssignment::new(
            &spec,
            vec![
                Derivation::partial(2, 0, &sample),
                Derivation::partial(2, 1, &sample),
            ],
        )
        .unwrap();
        let xx = TensorElement::from_legs(&[
            UEAElement::generator(&spec, 0),
            UEAElement::generator(&spec, 0),
        ])
        .unwrap();
        let star = StarAlgebra::new(
            assign,
            Twist::exponential(&TruncatedSeries::monomial(xx, 1, 2)).unwrap(),
        )
        .unwrap();
        let u = FourierFunction::mode(2, 2, vec![1, 0]);
        let v = FourierFunction::mode(2, 2, vec![0, 1]);
        let report = star
            .check_first_order_poisson(&[(u, v)])
            .unwrap();
        assert!(!report.passed());
    }

    #[test]
    fn sabotaged_twist_breaks_associativity_at_the_cocycle_order() {
        // exp(h H(x)E) on ax+b fails the cocycle at order 2; the induced
        // product must fail associativity at the same order.
        let spec = LieAlgebraSpec::from_brackets(
            "ab",
            vec!["H".into(), "E".into()],
            &[(0, 1, vec![(1, Scalar::one())])],
        )
        .unwrap();
        let order = 4;
        let x = PolyFunction::coordinate(1, order, 0);
        let assign = ActionAssignment::new(
            &spec,
            vec![
                Derivation::new(vec![x.neg()]),
                Derivation::new(vec![PolyFunction::one(1, order)]),
            ],
        )
        .unwrap();
        assert!(assign.validate(3).passed());
        let he = TensorElement::from_legs(&[
            UEAElement::generator(&spec, 0),
            UEAElement::generator(&spec, 1),
        ])
        .unwrap();
        let twist =
            Twist::exponential(&TruncatedSeries::monomial(he, 1, order)).unwrap();
        let cocycle = twist.check_cocycle();
        assert_eq!(cocycle.lowest_failing_order, Some(2));
        assert!(StarAlgebra::new(assign.clone(), twist.clone()).is_err());
        let star = StarAlgebra::new_unchecked(assign, twist);
        let basis = PolyFunction::basis(1, order, 3);
        let mut triples = Vec::new();
        for f in &basis {
            for g in &basis {
                for h in &basis {
                    triples.push((f.clone(), g.clone(), h.clone()));
                }
            }
        }
        let report = star.check_associativity(&triples).unwrap();
        assert!(!report.passed());
        assert_eq!(report.lowest_failing_order, cocycle.lowest_failing_order);
    }

    #[test]
    fn equivalence_map_intertwines() {
        // T = Id + h d/dx d/dy on the Moyal torus.
        let star = torus_star(3);
        let spec = star.assign().spec().clone();
        let sample = FourierFunction::one(2, 3);
        let dxdy = UEAElement::generator(&spec, 0)
            .mul(&UEAElement::generator(&spec, 1))
            .unwrap();
        let mut ops = vec![DiffOperator::from_element(&sample, dxdy)];
        for _ in 1..3 {
            ops.push(DiffOperator::new(Vec::new()));
        }
        let t = EquivalenceMap::new(star.assign().clone(), ops).unwrap();
        let primed = TransformedStar::new(star.clone(), t).unwrap();
        let basis = FourierFunction::basis(2, 3, 1);
        for f in &basis {
            for g in &basis {
                let lhs = primed.map().apply(&star.star(f, g).unwrap()).unwrap();
                let rhs = primed
                    .star(
                        &primed.map().apply(f).unwrap(),
                        &primed.map().apply(g).unwrap(),
                    )
                    .unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn identity_equivalence_gives_the_same_product() {
        let star = torus_star(2);
        let ops = vec![DiffOperator::new(Vec::new()); 2];
        let t = EquivalenceMap::new(star.assign().clone(), ops).unwrap();
        let primed = TransformedStar::new(star.clone(), t).unwrap();
        let u = FourierFunction::mode(2, 2, vec![1, 0]);
        let v = FourierFunction::mode(2, 2, vec![0, -1]);
        assert_eq!(primed.star(&u, &v).unwrap(), star.star(&u, &v).unwrap());
    }

    #[test]
    fn equivalence_map_must_fix_the_unit() {
        let star = torus_star(2);
        let mode = FourierFunction::mode(2, 2, vec![1, 0]);
        let ops = vec![
            DiffOperator::multiplication(mode, star.assign().spec()),
            DiffOperator::new(Vec::new()),
        ];
        assert!(matches!(
            EquivalenceMap::new(star.assign().clone(), ops),
            Err(Error::UnitNotFixed { .. })
        ));
    }

    #[test]
    fn inverse_of_equivalence_map_roundtrips() {
        let star = torus_star(3);
        let spec = star.assign().spec().clone();
        let sample = FourierFunction::one(2, 3);
        let dx = UEAElement::generator(&spec, 0);
        let ops = vec![
            DiffOperator::from_element(&sample, dx.clone()),
            DiffOperator::from_element(&sample, dx.mul(&dx).unwrap()),
            DiffOperator::new(Vec::new()),
        ];
        let t = EquivalenceMap::new(star.assign().clone(), ops).unwrap();
        for f in FourierFunction::basis(2, 3, 1) {
            let g = t.apply_inverse(&f).unwrap();
            assert_eq!(t.apply(&g).unwrap(), f);
            let h = t.apply(&f).unwrap();
            assert_eq!(t.apply_inverse(&h).unwrap(), f);
        }
    }
}
