//! Equivariant bimodules over function models and their twist deformation:
//! deformed left/right actions, the module laws, equivariance under the
//! twisted coproduct, and the endomorphism representation psi.
//!
//! The carriers are free rank-1 modules (sections of a trivial bundle), so
//! the undeformed actions are pointwise multiplication; only the trivial
//! bundle admits this deformation, which is one half of the dichotomy the
//! chern module exhibits on the other side.

use crate::error::{Error, Result};
use crate::model::{ActionAssignment, FunctionElement};
use crate::report::Report;
use crate::scalar::Scalar;
use crate::series::TruncatedSeries;
use crate::star::apply_pair;
use crate::twist::Twist;
use crate::uea::{check_same_spec, same_spec, TensorElement, UEAElement};

/// A U(g)-equivariant A-B bimodule on free rank-1 carriers: the algebra
/// models A and B and the section carrier N share a function model, the
/// left/right actions are pointwise multiplication, and each slot carries
/// its own Lie-algebra action.
#[derive(Clone)]
pub struct EquivariantBimodule<F: FunctionElement> {
    a: ActionAssignment<F>,
    b: ActionAssignment<F>,
    n: ActionAssignment<F>,
}

impl<F: FunctionElement> EquivariantBimodule<F> {
    pub fn new(
        a: ActionAssignment<F>,
        b: ActionAssignment<F>,
        n: ActionAssignment<F>,
    ) -> Result<Self> {
        check_same_spec(a.spec(), b.spec())?;
        check_same_spec(a.spec(), n.spec())?;
        for other in [&b, &n] {
            if other.model_dim() != a.model_dim() {
                return Err(Error::DimensionMismatch {
                    left: other.model_dim(),
                    right: a.model_dim(),
                });
            }
            if other.order() != a.order() {
                return Err(Error::OrderMismatch {
                    left: other.order(),
                    right: a.order(),
                });
            }
        }
        Ok(EquivariantBimodule { a, b, n })
    }

    /// The trivial bundle with one action shared by A, B and the sections.
    pub fn trivial(assign: ActionAssignment<F>) -> Self {
        EquivariantBimodule {
            a: assign.clone(),
            b: assign.clone(),
            n: assign,
        }
    }

    pub fn a_assign(&self) -> &ActionAssignment<F> {
        &self.a
    }

    pub fn b_assign(&self) -> &ActionAssignment<F> {
        &self.b
    }

    pub fn n_assign(&self) -> &ActionAssignment<F> {
        &self.n
    }

    pub fn order(&self) -> usize {
        self.a.order()
    }

    /// Undeformed equivariance at order zero: for every generator x,
    /// `x(a s b) == (x a) s b + a (x s) b + a s (x b)` on basis triples.
    /// This is the infinitesimal (primitive-element) form of the
    /// three-legged coproduct compatibility.
    pub fn validate(&self, cutoff: usize) -> Report {
        let mut report = Report::new("bimodule-equivariance-h0");
        let spec = self.a.spec().clone();
        let basis = F::basis(self.a.model_dim(), self.a.order(), cutoff);
        let mut all_ok = true;
        'outer: for i in 0..spec.dim() {
            for a in &basis {
                for s in &basis {
                    for b in &basis {
                        let asb = a.mul(s).and_then(|v| v.mul(b)).expect("same model");
                        let lhs = self.n.act_generator(i, &asb).expect("dims");
                        let rhs = self
                            .a
                            .act_generator(i, a)
                            .and_then(|xa| xa.mul(s).and_then(|v| v.mul(b)))
                            .and_then(|t1| {
                                let t2 = self
                                    .n
                                    .act_generator(i, s)
                                    .and_then(|xs| a.mul(&xs).and_then(|v| v.mul(b)))?;
                                let t3 = self
                                    .b
                                    .act_generator(i, b)
                                    .and_then(|xb| a.mul(s).and_then(|v| v.mul(&xb)))?;
                                t1.add(&t2)?.add(&t3)
                            })
                            .expect("dims");
                        if lhs != rhs {
                            all_ok = false;
                            report.fail_at(0);
                            report.witness(
                                format!("generator {}", spec.generator_name(i)),
                                format!("triple ({a}, {s}, {b})"),
                            );
                            break 'outer;
                        }
                    }
                }
            }
        }
        report.detail(0, all_ok, "Leibniz equivariance on basis triples");
        report
    }
}

/// The deformed bimodule: pointwise multiplications composed with the
/// inverse twist acting through the slot actions.
#[derive(Clone)]
pub struct DeformedModule<F: FunctionElement> {
    base: EquivariantBimodule<F>,
    twist: Twist,
    f_inv: TruncatedSeries<TensorElement>,
}

impl<F: FunctionElement> DeformedModule<F> {
    /// Deforms after validating the twist (cocycle + counitality + spec).
    pub fn new(base: EquivariantBimodule<F>, twist: Twist) -> Result<Self> {
        check_same_spec(base.a.spec(), twist.spec())?;
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
        Ok(Self::new_unchecked(base, twist))
    }

    /// Deforms without twist validation; the module-law checks then expose
    /// exactly which law breaks and at which order.
    pub fn new_unchecked(base: EquivariantBimodule<F>, twist: Twist) -> Self {
        let f_inv = twist.inverse();
        DeformedModule { base, twist, f_inv }
    }

    pub fn base(&self) -> &EquivariantBimodule<F> {
        &self.base
    }

    pub fn twist(&self) -> &Twist {
        &self.twist
    }

    pub fn order(&self) -> usize {
        self.base.order()
    }

    /// Deformed left action `lambda_F(a, s)`.
    pub fn lambda(&self, a: &F, s: &F) -> Result<F> {
        apply_pair(&self.f_inv, (&self.base.a, a), (&self.base.n, s))
    }

    /// Deformed right action `rho_F(s, b)`.
    pub fn rho(&self, s: &F, b: &F) -> Result<F> {
        apply_pair(&self.f_inv, (&self.base.n, s), (&self.base.b, b))
    }

    /// The deformed product on the left algebra A.
    pub fn star_a(&self, a: &F, a2: &F) -> Result<F> {
        apply_pair(&self.f_inv, (&self.base.a, a), (&self.base.a, a2))
    }

    /// The deformed product on the right algebra B.
    pub fn star_b(&self, b: &F, b2: &F) -> Result<F> {
        apply_pair(&self.f_inv, (&self.base.b, b), (&self.base.b, b2))
    }

    /// The four module laws, exactly on the given samples:
    /// (i) `lambda_F(a *_A a', s) == lambda_F(a, lambda_F(a', s))`,
    /// (ii) `lambda_F(1, s) == s`,
    /// (iii) `rho_F(rho_F(s, b), b') == rho_F(s, b *_B b')`,
    /// (iv) `lambda_F(a, rho_F(s, b)) == rho_F(lambda_F(a, s), b)`.
    pub fn check_module_axioms(&self, samples: &ModuleSamples<F>) -> Result<Report> {
        let mut report = Report::new("module-axioms");
        let mut law_ok = [true; 4];

        for (idx, s) in samples.sections.iter().enumerate() {
            let one = s.one_like();
            let left_unit = self.lambda(&one, s)?;
            if &left_unit != s {
                law_ok[1] = false;
                report.fail_at(
                    left_unit
                        .sub(s)?
                        .lowest_nonzero_h_order()
                        .unwrap_or(0),
                );
                if report.witnesses.is_empty() {
                    report.witness(format!("unit law at section {idx}"), left_unit);
                }
            }
        }

        for (ai, a) in samples.left.iter().enumerate() {
            for (aj, a2) in samples.left.iter().enumerate() {
                for (si, s) in samples.sections.iter().enumerate() {
                    let assoc_left = self.lambda(&self.star_a(a, a2)?, s)?;
                    let assoc_right = self.lambda(a, &self.lambda(a2, s)?)?;
                    if assoc_left != assoc_right {
                        law_ok[0] = false;
                        let k = assoc_left
                            .sub(&assoc_right)?
                            .lowest_nonzero_h_order()
                            .unwrap_or(0);
                        report.fail_at(k);
                        if report.witnesses.is_empty() {
                            report.witness(
                                "left action law",
                                format!("samples (a{ai}, a{aj}, s{si})"),
                            );
                        }
                    }
                }
            }
        }

        for b in &samples.right {
            for b2 in &samples.right {
                for s in &samples.sections {
                    let l = self.rho(&self.rho(s, b)?, b2)?;
                    let r = self.rho(s, &self.star_b(b, b2)?)?;
                    if l != r {
                        law_ok[2] = false;
                        let k = l.sub(&r)?.lowest_nonzero_h_order().unwrap_or(0);
                        report.fail_at(k);
                        if report.witnesses.is_empty() {
                            report.witness("right action law", format!("({b}, {b2}, {s})"));
                        }
                    }
                }
            }
        }

        for a in &samples.left {
            for s in &samples.sections {
                for b in &samples.right {
                    let l = self.lambda(a, &self.rho(s, b)?)?;
                    let r = self.rho(&self.lambda(a, s)?, b)?;
                    if l != r {
                        law_ok[3] = false;
                        let k = l.sub(&r)?.lowest_nonzero_h_order().unwrap_or(0);
                        report.fail_at(k);
                        if report.witnesses.is_empty() {
                            report.witness("commuting actions", format!("({a}, {s}, {b})"));
                        }
                    }
                }
            }
        }

        report.detail(0, law_ok[0], "left action law");
        report.detail(0, law_ok[1], "left unit law");
        report.detail(0, law_ok[2], "right action law");
        report.detail(0, law_ok[3], "commuting actions");
        Ok(report)
    }

    /// Equivariance of the deformed actions under the twisted coproduct:
    /// for each generator x,
    /// `x (lambda_F(a, rho_F(s, b))) == sum lambda_F(x1 a, rho_F(x2 s, x3 b))`
    /// where `x1 (x) x2 (x) x3` runs over `(Id (x) Delta_F) Delta_F (x)`.
    pub fn check_equivariance(&self, samples: &ModuleSamples<F>) -> Result<Report> {
        let mut report = Report::new("module-equivariance");
        let spec = self.base.a.spec().clone();
        let mut all_ok = true;
        for i in 0..spec.dim() {
            let x = UEAElement::generator(&spec, i);
            let dx = self.twist.twisted_coproduct(&x)?;
            let iterated = self.twist.twisted_coproduct_on_leg(&dx, 2)?;
            for a in &samples.left {
                for s in &samples.sections {
                    for b in &samples.right {
                        let inner = self.lambda(a, &self.rho(s, b)?)?;
                        let lhs = self.base.n.represent(&x, &inner)?;
                        let mut rhs = inner.zero_like();
                        for (k, tensor) in iterated.coeffs().iter().enumerate() {
                            if tensor.is_zero() {
                                continue;
                            }
                            let mut level = inner.zero_like();
                            for (legs, c) in tensor.terms() {
                                let xa = self.base.a.represent(
                                    &UEAElement::monomial(&spec, legs[0].clone(), Scalar::one()),
                                    a,
                                )?;
                                let xs = self.base.n.represent(
                                    &UEAElement::monomial(&spec, legs[1].clone(), Scalar::one()),
                                    s,
                                )?;
                                let xb = self.base.b.represent(
                                    &UEAElement::monomial(&spec, legs[2].clone(), Scalar::one()),
                                    b,
                                )?;
                                let value = self.lambda(&xa, &self.rho(&xs, &xb)?)?;
                                level = level.add(&value.scale(c))?;
                            }
                            rhs = rhs.add(&level.shift_h(k))?;
                        }
                        if lhs != rhs {
                            all_ok = false;
                            let k = lhs.sub(&rhs)?.lowest_nonzero_h_order().unwrap_or(0);
                            report.fail_at(k);
                            if report.witnesses.is_empty() {
                                report.witness(
                                    format!("generator {}", spec.generator_name(i)),
                                    format!("samples ({a}, {s}, {b})"),
                                );
                            }
                        }
                    }
                }
            }
        }
        report.detail(0, all_ok, "twisted-coproduct equivariance");
        Ok(report)
    }

    /// The endomorphism `psi(f): s -> lambda_F(f, s)` of the deformed right
    /// module. Its contract (verified by the check suites): multiplicative
    /// in f, right-linear over the deformed right action, and equal to
    /// multiplication by f at order zero.
    pub fn psi(&self, f: &F) -> PsiEndomorphism<'_, F> {
        PsiEndomorphism {
            module: self,
            symbol: f.clone(),
        }
    }
}

/// Sample sets for the module check suites.
pub struct ModuleSamples<F: FunctionElement> {
    pub left: Vec<F>,
    pub right: Vec<F>,
    pub sections: Vec<F>,
}

impl<F: FunctionElement> ModuleSamples<F> {
    /// The full basis cube within the cutoff, used by the exhaustive checks.
    pub fn basis_cube(dim: usize, order: usize, cutoff: usize) -> Self {
        let basis = F::basis(dim, order, cutoff);
        ModuleSamples {
            left: basis.clone(),
            right: basis.clone(),
            sections: basis,
        }
    }
}

/// `psi(f)` as a reusable map on sections.
pub struct PsiEndomorphism<'a, F: FunctionElement> {
    module: &'a DeformedModule<F>,
    symbol: F,
}

impl<F: FunctionElement> PsiEndomorphism<'_, F> {
    pub fn apply(&self, s: &F) -> Result<F> {
        self.module.lambda(&self.symbol, s)
    }

    pub fn symbol(&self) -> &F {
        &self.symbol
    }
}

/// Consistency of the deformation with the star product: on the trivial
/// module the deformed left action IS the star product.
pub fn check_specialization<F: FunctionElement>(
    module: &DeformedModule<F>,
    star: &crate::star::StarAlgebra<F>,
    samples: &[(F, F)],
) -> Result<Report> {
    let mut report = Report::new("module-star-specialization");
    if !same_spec(module.base().a_assign().spec(), star.assign().spec()) {
        return Err(Error::SpecMismatch {
            left: module.base().a_assign().spec().name().to_string(),
            right: star.assign().spec().name().to_string(),
        });
    }
    let mut all_ok = true;
    for (f, g) in samples {
        let via_module = module.lambda(f, g)?;
        let via_star = star.star(f, g)?;
        if via_module != via_star {
            all_ok = false;
            report.fail();
            if report.witnesses.is_empty() {
                report.witness("lambda_F(f, g)", &via_module);
                report.witness("f * g", &via_star);
            }
        }
    }
    report.detail(0, all_ok, format!("{} pairs", samples.len()));
    Ok(report)
}
