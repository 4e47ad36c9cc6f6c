//! Exact Gaussian-rational arithmetic: the coefficient field Q(i).
//!
//! Every algebraic identity in the engine is checked by exact equality, so
//! the base field must be exact. Arbitrary-precision rationals make overflow
//! impossible by construction.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num::{BigInt, BigRational, One, Signed, Zero};

/// An element a + b*i of Q(i), with exact rational parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar {
    re: BigRational,
    im: BigRational,
}

impl Scalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Scalar { re, im }
    }

    pub fn zero() -> Self {
        Scalar {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }

    pub fn one() -> Self {
        Scalar {
            re: BigRational::one(),
            im: BigRational::zero(),
        }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Scalar {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar {
            re: BigRational::from_integer(BigInt::from(n)),
            im: BigRational::zero(),
        }
    }

    /// Exact rational `num/den`. Panics if `den == 0`.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar {
            re: BigRational::new(BigInt::from(num), BigInt::from(den)),
            im: BigRational::zero(),
        }
    }

    /// Exact Gaussian rational `rn/rd + in/id * i`.
    pub fn from_parts(rn: i64, rd: i64, inum: i64, iden: i64) -> Self {
        assert!(rd != 0 && iden != 0, "zero denominator");
        Scalar {
            re: BigRational::new(BigInt::from(rn), BigInt::from(rd)),
            im: BigRational::new(BigInt::from(inum), BigInt::from(iden)),
        }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Scalar {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let norm = &self.re * &self.re + &self.im * &self.im;
        Some(Scalar {
            re: &self.re / &norm,
            im: -&self.im / &norm,
        })
    }

    /// Exact division. Panics if `rhs` is zero; use `inv` to test first.
    pub fn div_exact(&self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv().expect("division by zero scalar")
    }

    /// Integer power (non-negative).
    pub fn pow(&self, n: usize) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Approximate complex value; used only by the floating-point Chern module
    /// and by diagnostics. The symbolic engine never rounds.
    pub fn to_f64_pair(&self) -> (f64, f64) {
        fn approx(r: &BigRational) -> f64 {
            let n = r.numer();
            let d = r.denom();
            // Good enough for diagnostics; values at desk scale are small.
            let nf: f64 = n.to_string().parse().unwrap_or(f64::NAN);
            let df: f64 = d.to_string().parse().unwrap_or(f64::NAN);
            nf / df
        }
        (approx(&self.re), approx(&self.im))
    }

    /// Canonical exact rendering `a/b+c/d*i`, both parts always present with
    /// the sign folded into the numerator. Used by the machine report format.
    pub fn to_exact_string(&self) -> String {
        format!(
            "{}/{}{}{}/{}*i",
            self.re.numer(),
            self.re.denom(),
            if self.im.is_negative() { "-" } else { "+" },
            self.im.numer().abs(),
            self.im.denom(),
        )
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    /// Human-readable form: zero parts omitted, `i` coefficient folded.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        if !self.re.is_zero() {
            parts.push(fmt_rational(&self.re));
        }
        if !self.im.is_zero() {
            let m = self.im.abs();
            let body = if m.is_one() {
                "i".to_string()
            } else {
                format!("{}*i", fmt_rational(&m))
            };
            if self.im.is_negative() {
                parts.push(format!("-{body}"));
            } else {
                parts.push(body);
            }
        }
        let mut s = String::new();
        for (k, p) in parts.iter().enumerate() {
            if k > 0 && !p.starts_with('-') {
                s.push('+');
            }
            s.push_str(p);
        }
        write!(f, "{s}")
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        // (a+bi)(c+di) = (ac - bd) + (ad + bc)i
        Scalar {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self.div_exact(rhs)
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_squared_is_minus_one() {
        assert_eq!(&Scalar::i() * &Scalar::i(), Scalar::from_int(-1));
    }

    #[test]
    fn inverse_roundtrip() {
        let z = Scalar::from_parts(3, 4, -2, 5);
        let w = z.inv().unwrap();
        assert_eq!(&z * &w, Scalar::one());
        assert!(Scalar::zero().inv().is_none());
    }

    #[test]
    fn exact_string_form() {
        assert_eq!(Scalar::from_ratio(1, 2).to_exact_string(), "1/2+0/1*i");
        assert_eq!(Scalar::from_parts(0, 1, -3, 4).to_exact_string(), "0/1-3/4*i");
    }

    #[test]
    fn display_folds_signs() {
        assert_eq!(Scalar::zero().to_string(), "0");
        assert_eq!(Scalar::i().to_string(), "i");
        assert_eq!(Scalar::from_parts(1, 2, -1, 1).to_string(), "1/2-i");
        assert_eq!(Scalar::from_parts(-2, 1, 1, 3).to_string(), "-2+1/3*i");
    }
}
