//! Cocycle twists F in (U(g) (x) U(g))[[h]] and their calculus: counitality,
//! the 2-cocycle condition, the twisted coproduct, gauge normalization to
//! F = 1(x)1 mod h, and inversion.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::report::Report;
use crate::series::TruncatedSeries;
use crate::uea::{check_same_spec, LieAlgebraSpec, TensorElement, UEAElement};

/// A 2-tensor series with zeroth coefficient exactly 1(x)1 (the normalized
/// form every deformation formula assumes). Raw series with a different
/// invertible head enter through [`Twist::gauge_normalize`].
#[derive(Clone, PartialEq)]
pub struct Twist {
    spec: Arc<LieAlgebraSpec>,
    series: TruncatedSeries<TensorElement>,
}

impl Twist {
    /// Wraps a normalized 2-tensor series. Fails unless every coefficient is
    /// an arity-2 tensor over one spec and the zeroth coefficient is 1(x)1.
    pub fn new(series: TruncatedSeries<TensorElement>) -> Result<Self> {
        let spec = Arc::clone(series.coeff(0).spec());
        for c in series.coeffs() {
            check_same_spec(&spec, c.spec())?;
            if c.arity() != 2 {
                return Err(Error::ArityMismatch {
                    left: c.arity(),
                    right: 2,
                });
            }
        }
        if !series.coeff(0).is_unit() {
            return Err(Error::InvalidTwist {
                details: format!(
                    "zeroth coefficient is {}, not 1(x)1; apply gauge normalization first",
                    series.coeff(0)
                ),
            });
        }
        Ok(Twist { spec, series })
    }

    /// The trivial twist 1(x)1 at the given order.
    pub fn identity(spec: &Arc<LieAlgebraSpec>, order: usize) -> Self {
        Twist {
            spec: Arc::clone(spec),
            series: TruncatedSeries::constant(TensorElement::unit(spec, 2), order),
        }
    }

    /// `exp` of a 2-tensor series with zero constant term, computed as the
    /// finite truncated sum; the result starts at 1(x)1 by construction.
    pub fn exponential(exponent: &TruncatedSeries<TensorElement>) -> Result<Self> {
        Twist::new(exponent.exp()?)
    }

    /// Gauge replacement F -> F * F0^{-1}. Requires the head F0 to commute
    /// with the coproduct of every generator (which extends to all of U(g)
    /// because the coproduct is an algebra map and commutants are
    /// subalgebras), and every coefficient to be exactly right-divisible by
    /// F0 in U(g)(x)U(g), where the units are the nonzero scalars.
    pub fn gauge_normalize(series: &TruncatedSeries<TensorElement>) -> Result<Self> {
        let head = series.coeff(0);
        let spec = Arc::clone(head.spec());
        if head.is_zero() {
            return Err(Error::NotInvertible {
                what: "zeroth coefficient is 0".into(),
            });
        }
        if head.is_unit() {
            return Twist::new(series.clone());
        }
        for i in 0..spec.dim() {
            let dx = UEAElement::generator(&spec, i).coproduct();
            if head.mul(&dx)? != dx.mul(head)? {
                return Err(Error::GaugeCommutation {
                    generator: spec.generator_name(i).to_string(),
                });
            }
        }
        let mut coeffs = Vec::with_capacity(series.order() + 1);
        for (k, c) in series.coeffs().iter().enumerate() {
            let q = c
                .div_right_exact(head)
                .map_err(|_| Error::GaugeDivision { order: k })?;
            coeffs.push(q);
        }
        Twist::new(TruncatedSeries::new(series.order(), coeffs)?)
    }

    pub fn spec(&self) -> &Arc<LieAlgebraSpec> {
        &self.spec
    }

    pub fn order(&self) -> usize {
        self.series.order()
    }

    pub fn series(&self) -> &TruncatedSeries<TensorElement> {
        &self.series
    }

    /// F^{-1} mod h^{N+1}; exact, and `F * F^{-1} == 1(x)1` by construction.
    pub fn inverse(&self) -> TruncatedSeries<TensorElement> {
        self.series
            .invert()
            .expect("normalized twists have invertible head")
    }

    /// Counitality (applying the counit to either leg must give 1): checks
    /// `(eps(x)Id)(F_k)` and `(Id(x)eps)(F_k)` for every order k.
    pub fn check_counitality(&self) -> Report {
        let mut report = Report::new(format!("counitality({})", self.spec.name()));
        let mut bad_left: Vec<(usize, UEAElement)> = Vec::new();
        let mut bad_right: Vec<(usize, UEAElement)> = Vec::new();
        for (k, c) in self.series.coeffs().iter().enumerate() {
            let left = c
                .counit_on_leg(1)
                .and_then(|t| t.into_element())
                .expect("arity 2");
            let right = c
                .counit_on_leg(2)
                .and_then(|t| t.into_element())
                .expect("arity 2");
            let expected = if k == 0 {
                UEAElement::one(&self.spec)
            } else {
                UEAElement::zero(&self.spec)
            };
            let ok = left == expected && right == expected;
            report.detail(
                k,
                ok,
                format!("(eps(x)Id) = {left}, (Id(x)eps) = {right}"),
            );
            if !ok {
                report.fail_at(k);
            }
            if left != expected {
                bad_left.push((k, left));
            }
            if right != expected {
                bad_right.push((k, right));
            }
        }
        if !bad_left.is_empty() {
            report.witness("(eps(x)Id)(F)", render_element_series(&bad_left));
        }
        if !bad_right.is_empty() {
            report.witness("(Id(x)eps)(F)", render_element_series(&bad_right));
        }
        report
    }

    /// The 2-cocycle condition
    /// `(F(x)1)(coproduct(x)Id)(F) == (1(x)F)(Id(x)coproduct)(F)`,
    /// compared exactly order by order. On failure the report carries the
    /// lowest failing order and the difference tensor at that order.
    pub fn check_cocycle(&self) -> Report {
        let mut report = Report::new(format!("cocycle({})", self.spec.name()));
        let lhs = self.cocycle_lhs();
        let rhs = self.cocycle_rhs();
        let mut first_diff: Option<(usize, TensorElement)> = None;
        for k in 0..=self.series.order() {
            let diff = lhs
                .coeff(k)
                .sub(rhs.coeff(k))
                .expect("arity 3 both sides");
            let ok = diff.is_zero();
            report.detail(k, ok, if ok { "0 == 0".into() } else { format!("difference {diff}") });
            if !ok {
                report.fail_at(k);
                if first_diff.is_none() {
                    first_diff = Some((k, diff));
                }
            }
        }
        if let Some((k, diff)) = first_diff {
            report.witness(format!("difference at order {k}"), diff);
        }
        report
    }

    /// `(F(x)1)(coproduct(x)Id)(F)` as an arity-3 series.
    pub fn cocycle_lhs(&self) -> TruncatedSeries<TensorElement> {
        let f_pad = self.series.map(|c| c.pad(0, 1));
        let f_cop = self
            .series
            .try_map(|c| c.coproduct_on_leg(1))
            .expect("arity 2");
        f_pad.mul(&f_cop).expect("same order")
    }

    /// `(1(x)F)(Id(x)coproduct)(F)` as an arity-3 series.
    pub fn cocycle_rhs(&self) -> TruncatedSeries<TensorElement> {
        let f_pad = self.series.map(|c| c.pad(1, 0));
        let f_cop = self
            .series
            .try_map(|c| c.coproduct_on_leg(2))
            .expect("arity 2");
        f_pad.mul(&f_cop).expect("same order")
    }

    /// Mirrored-convention cross-check: the inverse J = F^{-1} of a cocycle
    /// twist satisfies `(coproduct(x)Id)(J)(J(x)1) == (Id(x)coproduct)(J)(1(x)J)`.
    pub fn check_inverse_convention(&self) -> Report {
        let mut report = Report::new(format!("inverse-convention({})", self.spec.name()));
        let j = self.inverse();
        let lhs = j
            .try_map(|c| c.coproduct_on_leg(1))
            .expect("arity 2")
            .mul(&j.map(|c| c.pad(0, 1)))
            .expect("same order");
        let rhs = j
            .try_map(|c| c.coproduct_on_leg(2))
            .expect("arity 2")
            .mul(&j.map(|c| c.pad(1, 0)))
            .expect("same order");
        for k in 0..=self.series.order() {
            let diff = lhs.coeff(k).sub(rhs.coeff(k)).expect("arity 3");
            let ok = diff.is_zero();
            report.detail(k, ok, if ok { "0 == 0".into() } else { format!("difference {diff}") });
            if !ok {
                report.fail_at(k);
            }
        }
        report
    }

    /// The twisted coproduct `F coproduct(x) F^{-1}` as a 2-tensor series.
    pub fn twisted_coproduct(&self, x: &UEAElement) -> Result<TruncatedSeries<TensorElement>> {
        check_same_spec(&self.spec, x.spec())?;
        let middle = TruncatedSeries::constant(x.coproduct(), self.series.order());
        self.series.mul(&middle)?.mul(&self.inverse())
    }

    /// Applies the twisted coproduct to one leg of a 2-tensor series,
    /// producing the arity-3 series `(pad F) (leg coproduct)(s) (pad F)^{-1}`.
    /// With `leg = 1` this is `(twisted coproduct (x) Id)`, with `leg = 2`
    /// it is `(Id (x) twisted coproduct)`.
    pub fn twisted_coproduct_on_leg(
        &self,
        s: &TruncatedSeries<TensorElement>,
        leg: usize,
    ) -> Result<TruncatedSeries<TensorElement>> {
        let f_pad = match leg {
            1 => self.series.map(|c| c.pad(0, 1)),
            2 => self.series.map(|c| c.pad(1, 0)),
            _ => {
                return Err(Error::LegOutOfRange { leg, arity: 2 });
            }
        };
        let cop = s.try_map(|c| c.coproduct_on_leg(leg))?;
        f_pad.mul(&cop)?.mul(&f_pad.invert()?)
    }
}

fn render_element_series(parts: &[(usize, UEAElement)]) -> String {
    let rendered: Vec<String> = parts
        .iter()
        .map(|(k, v)| match k {
            0 => format!("{v}"),
            1 => format!("h*({v})"),
            _ => format!("h^{k}*({v})"),
        })
        .collect();
    rendered.join(" + ")
}

impl fmt::Display for Twist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.series)
    }
}

impl fmt::Debug for Twist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Twist({})", self.series)
    }
}
