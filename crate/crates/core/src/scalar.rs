//! Scalar abstraction shared by the closed-form modules.
//!
//! The asymptotic formulas and entropy functions are written once against
//! [`Scalar`] and instantiated for `f32` and `f64`. Lattice quantities such as
//! the granularity `⌈nα⌉ − nα` additionally work over exact rationals through
//! [`LatticeScalar`].

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_rational::Ratio;
use num_traits::{Float, FloatConst, FromPrimitive, Num, NumAssign, ToPrimitive};

/// Floating point type usable by the analytic pricing code.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + NumAssign + LatticeScalar + Debug + Display + Sum + Send + Sync + 'static
{
    /// Lossy conversion from an `f64` literal.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    fn from_count(n: u64) -> Self {
        Self::from_u64(n).expect("count representable")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Number types on which `n·α` can be placed on the integer lattice.
pub trait LatticeScalar: Copy + PartialOrd + Num + FromPrimitive + ToPrimitive {
    /// `⌈x⌉`, except that a float within a few ulps of an integer is snapped
    /// to that integer so that e.g. `100 × 0.07` counts as 7.
    fn lattice_ceil(self) -> Self;
}

macro_rules! float_lattice {
    ($t:ty) => {
        impl LatticeScalar for $t {
            fn lattice_ceil(self) -> Self {
                let r = self.round();
                if (self - r).abs() <= 8.0 * <$t>::EPSILON * self.abs().max(1.0) {
                    r
                } else {
                    self.ceil()
                }
            }
        }
    };
}

float_lattice!(f32);
float_lattice!(f64);

macro_rules! ratio_lattice {
    ($t:ty) => {
        impl LatticeScalar for Ratio<$t> {
            fn lattice_ceil(self) -> Self {
                self.ceil()
            }
        }
    };
}

ratio_lattice!(i64);
ratio_lattice!(i128);

/// Position of the attachment point `n·α` on the loss-count lattice.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AttachmentLattice<S> {
    pub n: u64,
    /// `⌈nα⌉` (snapped).
    pub ceil: u64,
    /// `⌈nα⌉ − nα ∈ [0, 1)`.
    pub granularity: S,
}

impl<S: LatticeScalar> AttachmentLattice<S> {
    pub fn new(n: u64, alpha: S) -> Self {
        let scaled = S::from_u64(n).expect("count representable") * alpha;
        let ceil = scaled.lattice_ceil();
        let granularity = if ceil <= scaled { S::zero() } else { ceil - scaled };
        AttachmentLattice {
            n,
            ceil: ceil.to_u64().expect("non-negative lattice point"),
            granularity,
        }
    }

    /// Smallest default count `k` with `k > nα`, i.e. the first count at which
    /// the tranche takes a loss.
    pub fn first_loss_count(&self) -> u64 {
        if self.granularity == S::zero() {
            self.ceil + 1
        } else {
            self.ceil
        }
    }

    /// `γ = k − nα` for a default count `k`, assembled from exact integer parts.
    pub fn excess(&self, k: u64) -> S {
        let whole = k as i64 - self.ceil as i64;
        S::from_i64(whole).expect("count representable") + self.granularity
    }
}

/// `⌈nα⌉ − nα`, exactly zero when `nα` is an integer.
pub fn granularity<S: LatticeScalar>(n: u64, alpha: S) -> S {
    AttachmentLattice::new(n, alpha).granularity
}
