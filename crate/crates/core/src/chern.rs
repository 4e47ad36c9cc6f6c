//! Line bundles over the 2-torus with connections: Chern numbers by
//! curvature quadrature, constant-curvature representatives of each degree,
//! and the flat connection extracted from an equivariant section action.
//!
//! This is the one floating-point module: the Chern number is an integer,
//! so a 1e-10 tolerance against an integer target is unambiguous.
//!
//! Conventions, fixed here once: coordinates have period 2*pi, the
//! curvature two-form component is `F_xy = curl(A) + i*c0` with `c0` the
//! real constant offset standing in for the non-exact part of the curvature
//! of a degree-d bundle, and
//! `chern_number = Re[(i / 2*pi) * integral of F_xy]`.
//! Under these choices `standard_connection(d)` with `c0 = -d/(2*pi)`
//! integrates to exactly d.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;

pub use num::complex::Complex64;

use crate::error::{Error, Result};

/// Tolerance for comparing a computed Chern number with its integer target.
pub const CHERN_TOLERANCE: f64 = 1e-10;

/// Coefficient magnitude below which a trigonometric polynomial coefficient
/// is considered zero in the exact-identity checks of this module.
const COEFF_EPS: f64 = 1e-12;

/// A doubly periodic trigonometric polynomial
/// `sum c_(m,n) exp(i(m x + n y))` with complex coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct TrigPoly {
    terms: BTreeMap<(i64, i64), Complex64>,
}

impl TrigPoly {
    pub fn zero() -> Self {
        TrigPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Complex64) -> Self {
        Self::mode(0, 0, c)
    }

    pub fn mode(m: i64, n: i64, c: Complex64) -> Self {
        let mut t = Self::zero();
        t.add_term(m, n, c);
        t
    }

    /// `c * cos(m x + n y)`.
    pub fn cosine(m: i64, n: i64, c: Complex64) -> Self {
        let half = c * Complex64::new(0.5, 0.0);
        let mut t = Self::mode(m, n, half);
        t.add_term(-m, -n, half);
        t
    }

    /// `c * sin(m x + n y)`.
    pub fn sine(m: i64, n: i64, c: Complex64) -> Self {
        let half = c / Complex64::new(0.0, 2.0);
        let mut t = Self::mode(m, n, half);
        t.add_term(-m, -n, -half);
        t
    }

    fn add_term(&mut self, m: i64, n: i64, c: Complex64) {
        if c.norm() == 0.0 {
            return;
        }
        let entry = self.terms.entry((m, n)).or_insert(Complex64::new(0.0, 0.0));
        *entry += c;
        if entry.norm() < COEFF_EPS {
            self.terms.remove(&(m, n));
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (&(m, n), &c) in &rhs.terms {
            out.add_term(m, n, c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        TrigPoly {
            terms: self.terms.iter().map(|(&k, &c)| (k, -c)).collect(),
        }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        TrigPoly {
            terms: self.terms.iter().map(|(&k, &c)| (k, c * s)).collect(),
        }
    }

    pub fn partial_x(&self) -> Self {
        TrigPoly {
            terms: self
                .terms
                .iter()
                .filter(|((m, _), _)| *m != 0)
                .map(|(&(m, n), &c)| ((m, n), c * Complex64::new(0.0, m as f64)))
                .collect(),
        }
    }

    pub fn partial_y(&self) -> Self {
        TrigPoly {
            terms: self
                .terms
                .iter()
                .filter(|((_, n), _)| *n != 0)
                .map(|(&(m, n), &c)| ((m, n), c * Complex64::new(0.0, n as f64)))
                .collect(),
        }
    }

    pub fn eval(&self, x: f64, y: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (&(m, n), &c) in &self.terms {
            let phase = (m as f64) * x + (n as f64) * y;
            acc += c * Complex64::new(phase.cos(), phase.sin());
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.terms.values().all(|c| c.norm() < COEFF_EPS)
    }

    pub fn max_mode(&self) -> i64 {
        self.terms
            .keys()
            .map(|(m, n)| m.abs().max(n.abs()))
            .max()
            .unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64), &Complex64)> {
        self.terms.iter()
    }
}

impl fmt::Display for TrigPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&(m, n), c)| format!("({:.6}{:+.6}i)*e({m},{n})", c.re, c.im))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// A connection 1-form `A = A_x dx + A_y dy` on a line bundle over the
/// 2-torus, plus the constant curvature offset `c0` carrying the
/// topologically nontrivial part of the curvature for degree-d bundles.
#[derive(Clone, Debug, PartialEq)]
pub struct ConnectionT2 {
    pub a_x: TrigPoly,
    pub a_y: TrigPoly,
    pub c0: f64,
}

impl ConnectionT2 {
    pub fn flat() -> Self {
        ConnectionT2 {
            a_x: TrigPoly::zero(),
            a_y: TrigPoly::zero(),
            c0: 0.0,
        }
    }

    /// The periodic part of the curvature: `curl(A) = d_x A_y - d_y A_x`.
    pub fn curl(&self) -> TrigPoly {
        self.a_y.partial_x().add(&self.a_x.partial_y().neg())
    }

    /// Adds the exact form `d(phi)` to the connection; a gauge-type change
    /// that must leave the Chern number untouched.
    pub fn perturb_by_exact_form(&self, phi: &TrigPoly) -> Self {
        ConnectionT2 {
            a_x: self.a_x.add(&phi.partial_x()),
            a_y: self.a_y.add(&phi.partial_y()),
            c0: self.c0,
        }
    }
}

/// `(i / 2*pi) * integral of F_xy` by the trapezoidal rule on an n-by-n
/// periodic grid, which is exact (to rounding) for trigonometric integrands
/// whose modes are below the grid size.
pub fn chern_number_of_connection(conn: &ConnectionT2, grid: usize) -> Result<f64> {
    if grid == 0 {
        return Err(Error::Unsupported("grid must be positive".into()));
    }
    let curl = conn.curl();
    let max_mode = conn.a_x.max_mode().max(conn.a_y.max_mode());
    if max_mode as usize >= grid {
        return Err(Error::Unsupported(format!(
            "grid {grid} too coarse for mode {max_mode}; quadrature would alias"
        )));
    }
    let n = grid as f64;
    let step = 2.0 * PI / n;
    let mut mean = Complex64::new(0.0, 0.0);
    for ix in 0..grid {
        let x = step * ix as f64;
        for iy in 0..grid {
            let y = step * iy as f64;
            mean += curl.eval(x, y);
        }
    }
    mean /= n * n;
    let f_total = mean + Complex64::new(0.0, conn.c0);
    // (i/2pi) * F * (2pi)^2 = i * 2pi * F
    let chern = Complex64::new(0.0, 2.0 * PI) * f_total;
    Ok(chern.re)
}

/// A smooth complex line bundle over the 2-torus presented by its degree
/// and a connection; the constructor verifies that the two agree.
#[derive(Clone, Debug)]
pub struct LineBundleT2 {
    degree: i64,
    connection: ConnectionT2,
}

impl LineBundleT2 {
    pub fn new(degree: i64, connection: ConnectionT2, grid: usize) -> Result<Self> {
        let computed = chern_number_of_connection(&connection, grid)?;
        if (computed - degree as f64).abs() > CHERN_TOLERANCE {
            return Err(Error::DegreeMismatch {
                declared: degree,
                computed,
            });
        }
        Ok(LineBundleT2 { degree, connection })
    }

    /// The constant-curvature representative of degree d: `A = 0` and
    /// `c0 = -d / 2*pi`.
    pub fn standard(degree: i64) -> Self {
        LineBundleT2 {
            degree,
            connection: ConnectionT2 {
                a_x: TrigPoly::zero(),
                a_y: TrigPoly::zero(),
                c0: -(degree as f64) / (2.0 * PI),
            },
        }
    }

    /// The constant-curvature connection of degree d with the topological
    /// offset filled in, for composing with trig-polynomial perturbations.
    pub fn standard_connection(degree: i64) -> ConnectionT2 {
        Self::standard(degree).connection
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn connection(&self) -> &ConnectionT2 {
        &self.connection
    }

    pub fn chern_number(&self, grid: usize) -> Result<f64> {
        chern_number_of_connection(&self.connection, grid)
    }
}

/// One operator of a section action on the trivial bundle: a first-order
/// operator `sum_j deriv[j] d_j + (linear . (x, y)) + multiplier`. The
/// linear part is representable so that non-periodic candidates (which is
/// what a degree != 0 bundle would need) can be expressed and rejected.
#[derive(Clone, Debug)]
pub struct SectionOperator {
    pub deriv: [Complex64; 2],
    pub linear: [Complex64; 2],
    pub multiplier: TrigPoly,
}

impl SectionOperator {
    /// The plain partial derivative in slot `j`.
    pub fn partial(j: usize) -> Self {
        let mut deriv = [Complex64::new(0.0, 0.0); 2];
        deriv[j] = Complex64::new(1.0, 0.0);
        SectionOperator {
            deriv,
            linear: [Complex64::new(0.0, 0.0); 2],
            multiplier: TrigPoly::zero(),
        }
    }

    pub fn with_multiplier(mut self, m: TrigPoly) -> Self {
        self.multiplier = m;
        self
    }

    pub fn with_linear(mut self, coeff_x: Complex64, coeff_y: Complex64) -> Self {
        self.linear = [coeff_x, coeff_y];
        self
    }

    fn linear_is_zero(&self) -> bool {
        self.linear.iter().all(|c| c.norm() < COEFF_EPS)
    }

    fn describe_linear(&self) -> String {
        format!(
            "({:.6}{:+.6}i)*x + ({:.6}{:+.6}i)*y",
            self.linear[0].re, self.linear[0].im, self.linear[1].re, self.linear[1].im
        )
    }
}

/// Section-action data: one operator per frame vector `d_x, d_y`.
#[derive(Clone, Debug)]
pub struct SectionAction {
    pub op_x: SectionOperator,
    pub op_y: SectionOperator,
}

impl SectionAction {
    /// The action by plain partial derivatives.
    pub fn plain() -> Self {
        SectionAction {
            op_x: SectionOperator::partial(0),
            op_y: SectionOperator::partial(1),
        }
    }
}

const LEIBNIZ_TEST_MODES: [(i64, i64); 4] = [(1, 0), (0, 1), (1, 2), (-2, 1)];

/// Builds the (necessarily flat) connection defined by an equivariant action
/// of the translation Lie algebra on sections of the trivial bundle:
/// `A_j = (op_j - d_j)` applied to the unit section.
///
/// Rejections: a non-periodic (linear) coefficient, a Leibniz-rule failure
/// against multiplication by test functions, or non-commuting operators.
/// Every accepted action yields a Chern number within tolerance of zero.
pub fn flat_connection_from_action(action: &SectionAction, grid: usize) -> Result<LineBundleT2> {
    for (name, op) in [("op_x", &action.op_x), ("op_y", &action.op_y)] {
        if !op.linear_is_zero() {
            return Err(Error::NonPeriodic {
                what: format!("{name} multiplier {}", op.describe_linear()),
            });
        }
    }
    // Leibniz: op_j(f s) - (d_j f) s - f op_j(s) must vanish for test
    // functions f; the multiplier cancels, leaving (deriv - e_j) . grad f.
    for (slot, (name, op)) in [("op_x", &action.op_x), ("op_y", &action.op_y)]
        .into_iter()
        .enumerate()
    {
        for &(m, n) in &LEIBNIZ_TEST_MODES {
            let f = TrigPoly::mode(m, n, Complex64::new(1.0, 0.0));
            let mut defect = f
                .partial_x()
                .scale(op.deriv[0])
                .add(&f.partial_y().scale(op.deriv[1]));
            let own = if slot == 0 { f.partial_x() } else { f.partial_y() };
            defect = defect.add(&own.neg());
            if !defect.is_zero() {
                return Err(Error::LeibnizViolation {
                    operator: name.to_string(),
                    function: format!("e({m},{n})"),
                });
            }
        }
    }
    // Commutation: [op_x, op_y] = d_x(m_y) - d_y(m_x) as a multiplication
    // operator once the derivative parts are the plain partials.
    let commutator = action
        .op_y
        .multiplier
        .partial_x()
        .add(&action.op_x.multiplier.partial_y().neg());
    if !commutator.is_zero() {
        return Err(Error::NonCommutingAction {
            commutator: commutator.to_string(),
        });
    }
    let connection = ConnectionT2 {
        a_x: action.op_x.multiplier.clone(),
        a_y: action.op_y.multiplier.clone(),
        c0: 0.0,
    };
    LineBundleT2::new(0, connection, grid)
}

#[cfg(test)]
mod tests {
    use super::*;

    const GRID: usize = 64;

    #[test]
    fn flat_connection_has_zero_chern_number() {
        let bundle = LineBundleT2::standard(0);
        assert_eq!(bundle.chern_number(GRID).unwrap(), 0.0);
    }

    #[test]
    fn standard_connections_integrate_to_their_degree() {
        for d in -3..=3 {
            let bundle = LineBundleT2::standard(d);
            let c = bundle.chern_number(GRID).unwrap();
            assert!(
                (c - d as f64).abs() < CHERN_TOLERANCE,
                "degree {d}: got {c}"
            );
        }
    }

    #[test]
    fn exact_form_perturbations_do_not_move_the_chern_number() {
        // phi = sin(x + 2y)
        let phi = TrigPoly::sine(1, 2, Complex64::new(1.0, 0.0));
        let conn = LineBundleT2::standard_connection(1).perturb_by_exact_form(&phi);
        let c = chern_number_of_connection(&conn, GRID).unwrap();
        assert!((c - 1.0).abs() < 1e-10);
        // The perturbation alone integrates to zero.
        let pure = ConnectionT2::flat().perturb_by_exact_form(&phi);
        assert!(chern_number_of_connection(&pure, GRID).unwrap().abs() < 1e-12);
    }

    #[test]
    fn doubling_the_grid_is_stable() {
        let phi = TrigPoly::cosine(3, 1, Complex64::new(0.5, 0.25));
        let conn = LineBundleT2::standard_connection(2).perturb_by_exact_form(&phi);
        let a = chern_number_of_connection(&conn, 64).unwrap();
        let b = chern_number_of_connection(&conn, 128).unwrap();
        assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn coarse_grids_are_rejected() {
        let conn = ConnectionT2 {
            a_x: TrigPoly::mode(9, 0, Complex64::new(1.0, 0.0)),
            a_y: TrigPoly::zero(),
            c0: 0.0,
        };
        assert!(chern_number_of_connection(&conn, 8).is_err());
    }

    #[test]
    fn plain_partials_give_the_flat_bundle() {
        let bundle = flat_connection_from_action(&SectionAction::plain(), GRID).unwrap();
        assert_eq!(bundle.degree(), 0);
        assert!(bundle.chern_number(GRID).unwrap().abs() < CHERN_TOLERANCE);
    }

    #[test]
    fn constant_shifts_remain_flat() {
        let action = SectionAction {
            op_x: SectionOperator::partial(0)
                .with_multiplier(TrigPoly::constant(Complex64::new(0.0, 0.7))),
            op_y: SectionOperator::partial(1)
                .with_multiplier(TrigPoly::constant(Complex64::new(0.0, -0.3))),
        };
        let bundle = flat_connection_from_action(&action, GRID).unwrap();
        assert!(bundle.chern_number(GRID).unwrap().abs() < CHERN_TOLERANCE);
    }

    #[test]
    fn linear_multiplier_is_rejected_as_non_periodic() {
        // op_y = d_y + i x: the candidate a degree-1 bundle would need.
        let action = SectionAction {
            op_x: SectionOperator::partial(0),
            op_y: SectionOperator::partial(1)
                .with_linear(Complex64::new(0.0, 1.0), Complex64::new(0.0, 0.0)),
        };
        assert!(matches!(
            flat_connection_from_action(&action, GRID),
            Err(Error::NonPeriodic { .. })
        ));
    }

    #[test]
    fn wrong_derivative_part_violates_leibniz() {
        let mut op = SectionOperator::partial(0);
        op.deriv[1] = Complex64::new(0.5, 0.0);
        let action = SectionAction {
            op_x: op,
            op_y: SectionOperator::partial(1),
        };
        assert!(matches!(
            flat_connection_from_action(&action, GRID),
            Err(Error::LeibnizViolation { .. })
        ));
    }

    #[test]
    fn non_commuting_multipliers_are_rejected() {
        let action = SectionAction {
            op_x: SectionOperator::partial(0),
            op_y: SectionOperator::partial(1)
                .with_multiplier(TrigPoly::sine(1, 0, Complex64::new(0.0, 1.0))),
        };
        assert!(matches!(
            flat_connection_from_action(&action, GRID),
            Err(Error::NonCommutingAction { .. })
        ));
    }
}
