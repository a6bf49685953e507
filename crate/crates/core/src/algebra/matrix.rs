use alloc::sync::Arc;
use core::fmt;

use super::ring::{AlgebraError, Elem, QuotientRing};

/// A 2×2 matrix `[[a, b], [c, d]]` over a quotient ring.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix2 {
    pub entries: [Elem; 4],
}

impl Matrix2 {
    pub fn new(a: Elem, b: Elem, c: Elem, d: Elem) -> Self {
        Matrix2 {
            entries: [a, b, c, d],
        }
    }

    pub fn identity(ring: &Arc<QuotientRing>) -> Self {
        Self::new(
            Elem::one(ring),
            Elem::zero(ring),
            Elem::zero(ring),
            Elem::one(ring),
        )
    }

    pub fn diag(x: Elem, y: Elem) -> Self {
        let z = Elem::zero(x.ring());
        Self::new(x, z.clone(), z, y)
    }

    pub fn mul(&self, o: &Matrix2) -> Matrix2 {
        let [a, b, c, d] = &self.entries;
        let [e, f, g, h] = &o.entries;
        Matrix2::new(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)
    }

    pub fn det(&self) -> Elem {
        let [a, b, c, d] = &self.entries;
        a * d - b * c
    }

    pub fn trace(&self) -> Elem {
        &self.entries[0] + &self.entries[3]
    }

    pub fn inv(&self) -> Result<Matrix2, AlgebraError> {
        let k = self.det().inv()?;
        let [a, b, c, d] = &self.entries;
        Ok(Matrix2::new(d * &k, -b * &k, -c * &k, a * &k))
    }

    pub fn pow(&self, mut n: u32) -> Matrix2 {
        let mut base = self.clone();
        let mut acc = Matrix2::identity(self.entries[0].ring());
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        *self == Matrix2::identity(self.entries[0].ring())
    }
}

impl fmt::Display for Matrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.entries;
        write!(f, "[[{a}, {b}], [{c}, {d}]]")
    }
}

impl fmt::Debug for Matrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix2({self})")
    }
}
