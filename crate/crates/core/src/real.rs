//! Binary floating point at a fixed 128-bit working precision.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::OnceLock;

use dashu_float::round::mode::HalfEven;
use dashu_float::{Context, FBig};
use dashu_int::UBig;
use serde::{Serialize, Serializer};

/// Working precision in bits for every `Real` operation.
pub const WORKING_PRECISION: usize = 128;

/// Significant decimal digits used when a `Real` is rendered as text.
pub const DISPLAY_DIGITS: usize = 15;

type Big = FBig<HalfEven, 2>;

fn ctx() -> Context<HalfEven> {
    Context::new(WORKING_PRECISION)
}

fn ln2() -> &'static Big {
    static LN2: OnceLock<Big> = OnceLock::new();
    LN2.get_or_init(|| ctx().ln(Big::from(2u8).repr()).value())
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Real(Big);

impl Real {
    pub fn zero() -> Self {
        Real(Big::ZERO)
    }

    pub fn one() -> Self {
        Real(Big::ONE)
    }

    pub fn from_u64(v: u64) -> Self {
        Real(ctx().add(Big::from(v).repr(), Big::ZERO.repr()).value())
    }

    pub fn from_ubig(v: &UBig) -> Self {
        Real(ctx().add(Big::from(v.clone()).repr(), Big::ZERO.repr()).value())
    }

    pub fn from_ratio(p: u64, q: u64) -> Self {
        assert!(q != 0, "zero denominator");
        Real(ctx().div(Big::from(p).repr(), Big::from(q).repr()).value())
    }

    /// Exact for finite input.
    pub fn from_f64(v: f64) -> Self {
        let b = Big::try_from(v).expect("finite f64");
        Real(ctx().add(b.repr(), Big::ZERO.repr()).value())
    }

    pub fn is_zero(&self) -> bool {
        self.0 == Big::ZERO
    }

    pub fn is_positive(&self) -> bool {
        self.0 > Big::ZERO
    }

    /// Natural logarithm; the argument must be positive.
    pub fn ln(&self) -> Real {
        assert!(self.is_positive(), "ln of a non-positive value");
        if self.0 == Big::ONE {
            return Real::zero();
        }
        Real(ctx().ln(self.0.repr()).value())
    }

    pub fn log2(&self) -> Real {
        let l = self.ln();
        if l.is_zero() {
            return l;
        }
        Real(ctx().div(l.0.repr(), ln2().repr()).value())
    }

    pub fn exp(&self) -> Real {
        if self.is_zero() {
            return Real::one();
        }
        Real(ctx().exp(self.0.repr()).value())
    }

    /// `2^self`.
    pub fn exp2(&self) -> Real {
        if self.is_zero() {
            return Real::one();
        }
        Real(ctx().exp(ctx().mul(self.0.repr(), ln2().repr()).value().repr()).value())
    }

    pub fn sqrt(&self) -> Real {
        assert!(!(self.0 < Big::ZERO), "sqrt of a negative value");
        if self.is_zero() {
            return Real::zero();
        }
        let half = self.ln() / Real::from_u64(2);
        half.exp()
    }

    pub fn abs(&self) -> Real {
        if self.0 < Big::ZERO {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().value()
    }

    /// Decimal rendering with `digits` significant digits; plain notation for
    /// moderate magnitudes, scientific otherwise.
    pub fn to_decimal(&self, digits: usize) -> String {
        let d: FBig<HalfEven, 10> = self.0.clone().with_base_and_precision::<10>(digits).value();
        let f = self.to_f64().abs();
        if self.is_zero() || (1e-4..1e15).contains(&f) {
            format!("{d}")
        } else {
            format!("{d:e}")
        }
    }
}

impl From<u64> for Real {
    fn from(v: u64) -> Self {
        Real::from_u64(v)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $op:ident) => {
        impl $tr for Real {
            type Output = Real;
            fn $m(self, rhs: Real) -> Real {
                Real(ctx().$op(self.0.repr(), rhs.0.repr()).value())
            }
        }
        impl<'a> $tr<&'a Real> for &'a Real {
            type Output = Real;
            fn $m(self, rhs: &'a Real) -> Real {
                Real(ctx().$op(self.0.repr(), rhs.0.repr()).value())
            }
        }
    };
}

binop!(Add, add, add);
binop!(Sub, sub, sub);
binop!(Mul, mul, mul);
binop!(Div, div, div);

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(-self.0)
    }
}

impl PartialEq<f64> for Real {
    fn eq(&self, other: &f64) -> bool {
        self.to_f64() == *other
    }
}

impl PartialOrd<f64> for Real {
    fn partial_cmp(&self, other: &f64) -> Option<Ordering> {
        self.to_f64().partial_cmp(other)
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal(DISPLAY_DIGITS))
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Real({})", self.to_decimal(30))
    }
}

impl Serialize for Real {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
