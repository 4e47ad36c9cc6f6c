//! Concrete function models carrying Lie-algebra actions by derivations:
//! Fourier polynomials on the torus and polynomials on R^n.

mod fourier;
mod poly;

use std::fmt;
use std::sync::Arc;

pub use fourier::FourierFunction;
pub use poly::PolyFunction;

use crate::error::{Error, Result};
use crate::report::Report;
use crate::scalar::Scalar;
use crate::series::TruncatedSeries;
use crate::uea::{check_same_spec, LieAlgebraSpec, PbwMonomial, UEAElement};

/// An element of a function model of C^inf(M)[[h]] at truncation order N.
/// Everything the star/module machinery needs is expressed through this
/// interface, so both models share one code path.
pub trait FunctionElement: Clone + PartialEq + fmt::Display + fmt::Debug {
    fn dim(&self) -> usize;
    fn series_order(&self) -> usize;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Result<Self>;
    fn neg(&self) -> Self;
    /// Pointwise product.
    fn mul(&self, rhs: &Self) -> Result<Self>;
    fn scale(&self, s: &Scalar) -> Self;
    fn scale_series(&self, s: &TruncatedSeries<Scalar>) -> Result<Self>;
    /// Multiplication by h^k, truncating at the carried order.
    fn shift_h(&self, k: usize) -> Self;
    fn partial(&self, j: usize) -> Result<Self>;
    /// The coefficient of h^k, as an h-constant element.
    fn coeff_of_h(&self, k: usize) -> Self;
    fn is_h_constant(&self) -> bool;
    /// Deterministic spanning family used by exhaustive sample checks.
    fn basis(dim: usize, order: usize, cutoff: usize) -> Vec<Self>;

    fn sub(&self, rhs: &Self) -> Result<Self> {
        self.add(&rhs.neg())
    }

    /// Lowest order in h with a nonzero coefficient.
    fn lowest_nonzero_h_order(&self) -> Option<usize> {
        (0..=self.series_order()).find(|&k| !self.coeff_of_h(k).is_zero())
    }

    /// Decomposition into single-term functions (one basis mode or monomial
    /// each, carrying its coefficient). Summing the parts restores `self`.
    fn split_terms(&self) -> Vec<Self>;

    /// `Some(s)` iff the function is the h-constant scalar `s * 1`.
    fn constant_value(&self) -> Option<Scalar>;

    /// Eigenvalue of the constant-coefficient derivation
    /// `sum_j row[j] d/dx_j` on a single-term function, when the term is an
    /// eigenvector of every coordinate derivative. `None` when the model's
    /// basis does not diagonalize derivatives or the function has several
    /// terms; callers fall back to the generic composition path.
    fn diagonal_eigenvalue(&self, _row: &[Scalar]) -> Option<Scalar> {
        None
    }
}

pub(crate) fn coordinate_name(dim: usize, j: usize) -> String {
    if dim <= 3 {
        ["x", "y", "z"][j].to_string()
    } else {
        format!("x{}", j + 1)
    }
}

/// A derivation (formal vector field) `sum_j coeffs[j] * d/dx_j` with
/// coefficient functions in the model.
#[derive(Clone, PartialEq, Debug)]
pub struct Derivation<F: FunctionElement> {
    coeffs: Vec<F>,
}

impl<F: FunctionElement> Derivation<F> {
    pub fn new(coeffs: Vec<F>) -> Self {
        assert!(!coeffs.is_empty());
        assert!(coeffs.iter().all(|c| c.dim() == coeffs[0].dim()));
        Derivation { coeffs }
    }

    /// The plain coordinate derivation d/dx_j.
    pub fn partial(dim: usize, j: usize, sample: &F) -> Self {
        let mut coeffs = vec![sample.zero_like(); dim];
        coeffs[j] = sample.one_like();
        Derivation { coeffs }
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn apply(&self, f: &F) -> Result<F> {
        let mut out = f.zero_like();
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            out = out.add(&c.mul(&f.partial(j)?)?)?;
        }
        Ok(out)
    }

    /// The commutator of two derivations, again a derivation:
    /// `[D, E]_j = D(E_j) - E(D_j)`.
    pub fn commutator(&self, rhs: &Self) -> Result<Self> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for j in 0..self.coeffs.len() {
            let a = self.apply(&rhs.coeffs[j])?;
            let b = rhs.apply(&self.coeffs[j])?;
            out.push(a.sub(&b)?);
        }
        Ok(Derivation { coeffs: out })
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Derivation {
            coeffs: self.coeffs.iter().map(|c| c.scale(s)).collect(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a.add(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(Derivation { coeffs })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(F::is_zero)
    }
}

impl<F: FunctionElement> fmt::Display for Derivation<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dim = self.coeffs[0].dim();
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| format!("({c})*d/d{}", coordinate_name(dim, j)))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// An action of a Lie algebra on a function model: one derivation per
/// generator. [`ActionAssignment::validate`] checks the Lie-homomorphism
/// property exactly on a spanning family.
#[derive(Clone)]
pub struct ActionAssignment<F: FunctionElement> {
    spec: Arc<LieAlgebraSpec>,
    images: Vec<Derivation<F>>,
    dim: usize,
    order: usize,
}

impl<F: FunctionElement> ActionAssignment<F> {
    pub fn new(spec: &Arc<LieAlgebraSpec>, images: Vec<Derivation<F>>) -> Result<Self> {
        if images.len() != spec.dim() {
            return Err(Error::InvalidLieAlgebra {
                details: format!(
                    "action must assign one derivation per generator: got {} for {}",
                    images.len(),
                    spec.dim()
                ),
            });
        }
        let dim = images[0].coeffs()[0].dim();
        let order = images[0].coeffs()[0].series_order();
        for d in &images {
            for c in d.coeffs() {
                if c.dim() != dim {
                    return Err(Error::DimensionMismatch {
                        left: c.dim(),
                        right: dim,
                    });
                }
                if c.series_order() != order {
                    return Err(Error::OrderMismatch {
                        left: c.series_order(),
                        right: order,
                    });
                }
            }
        }
        Ok(ActionAssignment {
            spec: Arc::clone(spec),
            images,
            dim,
            order,
        })
    }

    pub fn spec(&self) -> &Arc<LieAlgebraSpec> {
        &self.spec
    }

    pub fn model_dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn image(&self, i: usize) -> &Derivation<F> {
        &self.images[i]
    }

    /// Checks `[image(X_i), image(X_j)] == sum_k c_ijk image(X_k)` as
    /// derivations, by comparing coefficient functions exactly, and
    /// additionally by applying both sides to a spanning test family.
    pub fn validate(&self, cutoff: usize) -> Report {
        let mut report = Report::new(format!(
            "action-homomorphism({} on dim {})",
            self.spec.name(),
            self.dim
        ));
        let family = F::basis(self.dim, self.order, cutoff);
        for i in 0..self.spec.dim() {
            for j in (i + 1)..self.spec.dim() {
                let lhs = match self.images[i].commutator(&self.images[j]) {
                    Ok(d) => d,
                    Err(e) => {
                        report.fail();
                        report.witness("error", e);
                        continue;
                    }
                };
                let mut rhs: Option<Derivation<F>> = None;
                for (k, c) in self.spec.bracket_terms(i, j) {
                    let term = self.images[k].scale(c);
                    rhs = Some(match rhs {
                        None => term,
                        Some(r) => r.add(&term).expect("uniform dims"),
                    });
                }
                let defect = match rhs {
                    None => lhs.clone(),
                    Some(r) => lhs
                        .add(&r.scale(&Scalar::from_int(-1)))
                        .expect("uniform dims"),
                };
                let coeff_ok = defect.is_zero();
                let mut family_ok = true;
                if !coeff_ok {
                    report.fail();
                    report.witness(
                        format!(
                            "[{}, {}] defect",
                            self.spec.generator_name(i),
                            self.spec.generator_name(j)
                        ),
                        &defect,
                    );
                }
                for f in &family {
                    let applied = defect.apply(f).expect("dims match");
                    if !applied.is_zero() {
                        family_ok = false;
                        report.fail();
                        report.witness(
                            format!(
                                "[{}, {}] applied to {}",
                                self.spec.generator_name(i),
                                self.spec.generator_name(j),
                                f
                            ),
                            applied,
                        );
                        break;
                    }
                }
                report.detail(
                    0,
                    coeff_ok && family_ok,
                    format!(
                        "[{}, {}]",
                        self.spec.generator_name(i),
                        self.spec.generator_name(j)
                    ),
                );
            }
        }
        report
    }

    pub fn act_generator(&self, i: usize, f: &F) -> Result<F> {
        if f.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                left: f.dim(),
                right: self.dim,
            });
        }
        self.images[i].apply(f)
    }

    fn apply_monomial(&self, m: &PbwMonomial, f: &F) -> Result<F> {
        // X_{i1}...X_{ik} acts as act_{i1} o ... o act_{ik}: rightmost first.
        let word = m.word();
        let mut acc = f.clone();
        for &i in word.iter().rev() {
            acc = self.images[i].apply(&acc)?;
        }
        Ok(acc)
    }

    /// The module action of U(g): PBW monomials act by composition of the
    /// generator derivations, extended linearly.
    pub fn represent(&self, u: &UEAElement, f: &F) -> Result<F> {
        check_same_spec(&self.spec, u.spec())?;
        if f.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                left: f.dim(),
                right: self.dim,
            });
        }
        let mut out = f.zero_like();
        for (m, c) in u.terms() {
            out = out.add(&self.apply_monomial(m, f)?.scale(c))?;
        }
        Ok(out)
    }
}

/// The Poisson bracket of the standard symplectic structure on a
/// two-dimensional model: `{f, g} = d_x f d_y g - d_y f d_x g`.
pub fn poisson_bracket<F: FunctionElement>(f: &F, g: &F) -> Result<F> {
    if f.dim() != 2 {
        return Err(Error::NoPoissonStructure { dim: f.dim() });
    }
    let a = f.partial(0)?.mul(&g.partial(1)?)?;
    let b = f.partial(1)?.mul(&g.partial(0)?)?;
    a.sub(&b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn torus_action() -> ActionAssignment<FourierFunction> {
        let spec = LieAlgebraSpec::abelian("r2", vec!["X".into(), "Y".into()]);
        let sample = FourierFunction::zero(2, 2);
        let images = vec![
            Derivation::partial(2, 0, &sample),
            Derivation::partial(2, 1, &sample),
        ];
        ActionAssignment::new(&spec, images).unwrap()
    }

    /// [H,E] = E realized on polynomials by H -> -x d/dx, E -> d/dx.
    fn ax_b_action(order: usize) -> ActionAssignment<PolyFunction> {
        let spec = LieAlgebraSpec::from_brackets(
            "ab",
            vec!["H".into(), "E".into()],
            &[(0, 1, vec![(1, Scalar::one())])],
        )
        .unwrap();
        let x = PolyFunction::coordinate(1, order, 0);
        let zero = PolyFunction::zero(1, order);
        let images = vec![
            Derivation::new(vec![x.neg()]),
            Derivation::new(vec![zero.one_like()]),
        ];
        ActionAssignment::new(&spec, images).unwrap()
    }

    #[test]
    fn torus_partials_are_a_homomorphism() {
        assert!(torus_action().validate(2).passed());
    }

    #[test]
    fn ax_b_action_is_a_homomorphism() {
        assert!(ax_b_action(2).validate(3).passed());
    }

    #[test]
    fn euler_assignment_with_wrong_sign_fails() {
        // H -> +x d/dx realizes [H,E] = -E, not [H,E] = E.
        let spec = LieAlgebraSpec::from_brackets(
            "ab",
            vec!["H".into(), "E".into()],
            &[(0, 1, vec![(1, Scalar::one())])],
        )
        .unwrap();
        let x = PolyFunction::coordinate(1, 1, 0);
        let one = PolyFunction::one(1, 1);
        let images = vec![Derivation::new(vec![x]), Derivation::new(vec![one])];
        let action = ActionAssignment::new(&spec, images).unwrap();
        assert!(!action.validate(3).passed());
    }

    #[test]
    fn generator_action_is_diagonal_on_modes() {
        let action = torus_action();
        let e = FourierFunction::mode(2, 2, vec![3, 1]);
        let out = action.act_generator(0, &e).unwrap();
        assert_eq!(out, e.scale(&(&Scalar::i() * &Scalar::from_int(3))));
    }

    #[test]
    fn represent_unit_is_identity() {
        let action = torus_action();
        let spec = action.spec().clone();
        let f = FourierFunction::mode(2, 2, vec![1, -1]);
        let one = UEAElement::one(&spec);
        assert_eq!(action.represent(&one, &f).unwrap(), f);
    }

    #[test]
    fn represent_is_multiplicative() {
        // represent(E*H, f) == represent(E, represent(H, f)) on x^2.
        let action = ax_b_action(1);
        let spec = action.spec().clone();
        let h = UEAElement::generator(&spec, 0);
        let e = UEAElement::generator(&spec, 1);
        let eh = e.mul(&h).unwrap();
        let x2 = PolyFunction::monomial(1, 1, vec![2]);
        let composed = action
            .represent(&e, &action.represent(&h, &x2).unwrap())
            .unwrap();
        assert_eq!(action.represent(&eh, &x2).unwrap(), composed);
    }

    #[test]
    fn poisson_bracket_of_basic_modes() {
        // {e_(1,0), e_(0,1)} = (i)(i) e_(1,1) = -e_(1,1).
        let u = FourierFunction::mode(2, 1, vec![1, 0]);
        let v = FourierFunction::mode(2, 1, vec![0, 1]);
        let b = poisson_bracket(&u, &v).unwrap();
        assert_eq!(
            b,
            FourierFunction::mode(2, 1, vec![1, 1]).scale(&Scalar::from_int(-1))
        );
        assert!(poisson_bracket(&u, &u).unwrap().is_zero());
        let one = FourierFunction::one(2, 1);
        assert!(poisson_bracket(&u, &one).unwrap().is_zero());
    }

    #[test]
    fn poisson_bracket_needs_dimension_two() {
        let f = PolyFunction::one(1, 0);
        assert!(matches!(
            poisson_bracket(&f, &f),
            Err(Error::NoPoissonStructure { dim: 1 })
        ));
    }
}
