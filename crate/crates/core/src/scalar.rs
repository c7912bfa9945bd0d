//! The ring bound shared by all weight-generic code.

use std::fmt::Debug;
use std::ops::{Neg, Sub};

use num_traits::{One, Zero};

/// Commutative ring with exact equality, enough for adjacency determinant
/// work: addition, subtraction, multiplication, negation, and the constants
/// zero and one.
///
/// Edge membership is defined by `!w.is_zero()`, so `PartialEq`/`Zero` carry
/// semantic weight here. The blanket impl picks up [`crate::Rational`] (the
/// instantiation everything in this crate is verified against) as well as the
/// machine numeric types; exactness guarantees obviously only hold for exact
/// scalars.
pub trait Scalar:
    Clone + Debug + PartialEq + Zero + One + Neg<Output = Self> + Sub<Output = Self>
{
}

impl<T> Scalar for T where
    T: Clone + Debug + PartialEq + Zero + One + Neg<Output = T> + Sub<Output = T>
{
}

/// `base^exp` by repeated multiplication; `exp = 0` gives one.
pub fn pow<S: Scalar>(base: &S, exp: usize) -> S {
    let mut acc = S::one();
    for _ in 0..exp {
        acc = acc * base.clone();
    }
    acc
}

/// `2^exp` in the ring (`1 + 1` multiplied out).
pub fn two_pow<S: Scalar>(exp: usize) -> S {
    pow(&(S::one() + S::one()), exp)
}
