use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("{0} is not invertible in the quotient ring")]
    NotInvertible(String),
    #[error("defining polynomial for {0} must be monic of degree at least 1")]
    NotMonic(String),
}

/// `ℚ[x_0, …, x_{n-1}] / (f_0, …, f_{n-1})` where `f_k` is monic in `x_k`
/// with coefficients in the ring generated by `x_0, …, x_{k-1}`.
///
/// Elements are dense coefficient arrays in mixed radix, `x_0` varying
/// fastest, so an element of a lower level is a prefix of the array.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientRing {
    names: Vec<String>,
    degrees: Vec<usize>,
    /// For generator `k` of degree `d`: `x_k^d = Σ_j reduce[k][j]·x_k^j`,
    /// coefficients of size `dims[k]`.
    reduce: Vec<Vec<Vec<BigRational>>>,
    /// `dims[k]` = product of the first `k` degrees.
    dims: Vec<usize>,
}

impl QuotientRing {
    /// The field ℚ.
    pub fn rationals() -> Self {
        QuotientRing {
            names: Vec::new(),
            degrees: Vec::new(),
            reduce: Vec::new(),
            dims: vec![1],
        }
    }

    /// Adjoin `name` subject to `Σ coeffs[j]·name^j = 0`; `coeffs` lie in the
    /// current ring, lowest degree first, and the last one must be 1.
    pub fn adjoin(&self, name: &str, coeffs: &[Elem]) -> Result<QuotientRing, AlgebraError> {
        let d = coeffs.len().saturating_sub(1);
        if d == 0 || !coeffs[d].is_one() {
            return Err(AlgebraError::NotMonic(name.into()));
        }
        let dim = self.dim();
        let mut next = self.clone();
        next.names.push(name.into());
        next.degrees.push(d);
        next.reduce.push(
            coeffs[..d]
                .iter()
                .map(|c| c.coeffs[..dim].iter().map(|q| -q.clone()).collect())
                .collect(),
        );
        next.dims.push(dim * d);
        Ok(next)
    }

    pub fn dim(&self) -> usize {
        *self.dims.last().unwrap()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn into_shared(self) -> Arc<QuotientRing> {
        Arc::new(self)
    }

    fn mul_level(&self, k: usize, a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        if k == 0 {
            return vec![&a[0] * &b[0]];
        }
        let d = self.degrees[k - 1];
        let s = self.dims[k - 1];
        let zero_chunk = || vec![BigRational::zero(); s];
        let mut prod: Vec<Vec<BigRational>> = (0..2 * d - 1).map(|_| zero_chunk()).collect();
        for i in 0..d {
            let ai = &a[i * s..(i + 1) * s];
            if ai.iter().all(Zero::is_zero) {
                continue;
            }
            for j in 0..d {
                let bj = &b[j * s..(j + 1) * s];
                if bj.iter().all(Zero::is_zero) {
                    continue;
                }
                let p = self.mul_level(k - 1, ai, bj);
                for (x, y) in prod[i + j].iter_mut().zip(p) {
                    *x += y;
                }
            }
        }
        for e in (d..2 * d - 1).rev() {
            let c = core::mem::replace(&mut prod[e], zero_chunk());
            if c.iter().all(Zero::is_zero) {
                continue;
            }
            for (j, r) in self.reduce[k - 1].iter().enumerate() {
                let p = self.mul_level(k - 1, &c, r);
                for (x, y) in prod[e - d + j].iter_mut().zip(p) {
                    *x += y;
                }
            }
        }
        prod.truncate(d);
        prod.into_iter().flatten().collect()
    }
}

/// An element of a [`QuotientRing`] in reduced normal form.
#[derive(Clone)]
pub struct Elem {
    ring: Arc<QuotientRing>,
    coeffs: Vec<BigRational>,
}

impl PartialEq for Elem {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl Eq for Elem {}

impl Elem {
    pub fn zero(ring: &Arc<QuotientRing>) -> Self {
        Elem {
            ring: ring.clone(),
            coeffs: vec![BigRational::zero(); ring.dim()],
        }
    }

    pub fn rational(ring: &Arc<QuotientRing>, q: BigRational) -> Self {
        let mut e = Self::zero(ring);
        e.coeffs[0] = q;
        e
    }

    pub fn int(ring: &Arc<QuotientRing>, n: i64) -> Self {
        Self::rational(ring, BigRational::from_integer(BigInt::from(n)))
    }

    pub fn frac(ring: &Arc<QuotientRing>, n: i64, d: i64) -> Self {
        Self::rational(ring, BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn one(ring: &Arc<QuotientRing>) -> Self {
        Self::int(ring, 1)
    }

    /// The generator `x_k`.
    pub fn generator(ring: &Arc<QuotientRing>, k: usize) -> Self {
        let mut e = Self::zero(ring);
        if ring.degrees[k] == 1 {
            // x_k equals minus the constant term of its defining polynomial.
            for (x, y) in e.coeffs.iter_mut().zip(&ring.reduce[k][0]) {
                *x = y.clone();
            }
        } else {
            e.coeffs[ring.dims[k]] = BigRational::one();
        }
        e
    }

    pub fn ring(&self) -> &Arc<QuotientRing> {
        &self.ring
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    fn with(&self, coeffs: Vec<BigRational>) -> Self {
        Elem {
            ring: self.ring.clone(),
            coeffs,
        }
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Elem::one(&self.ring);
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            n >>= 1;
        }
        acc
    }

    /// Multiplicative inverse, by solving `self·y = 1` exactly.
    pub fn inv(&self) -> Result<Self, AlgebraError> {
        let n = self.ring.dim();
        // Column j of the matrix is self · (j-th basis monomial).
        let mut m: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); n + 1]; n];
        for j in 0..n {
            let mut basis = vec![BigRational::zero(); n];
            basis[j] = BigRational::one();
            let col = self.ring.mul_level(self.ring.names.len(), &self.coeffs, &basis);
            for (i, v) in col.into_iter().enumerate() {
                m[i][j] = v;
            }
        }
        m[0][n] = BigRational::one();
        let singular = || AlgebraError::NotInvertible(alloc::format!("{self}"));
        for col in 0..n {
            let pivot = (col..n).find(|&r| !m[r][col].is_zero()).ok_or_else(singular)?;
            m.swap(col, pivot);
            let p = m[col][col].clone();
            for x in m[col].iter_mut() {
                *x /= &p;
            }
            for r in 0..n {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for c in col..=n {
                        let t = &f * &m[col][c];
                        m[r][c] -= t;
                    }
                }
            }
        }
        Ok(self.with(m.into_iter().map(|row| row[n].clone()).collect()))
    }
}

impl<'a> Add<&'a Elem> for &'a Elem {
    type Output = Elem;
    fn add(self, rhs: &Elem) -> Elem {
        self.with(self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect())
    }
}

impl<'a> Sub<&'a Elem> for &'a Elem {
    type Output = Elem;
    fn sub(self, rhs: &Elem) -> Elem {
        self.with(self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect())
    }
}

impl<'a> Mul<&'a Elem> for &'a Elem {
    type Output = Elem;
    fn mul(self, rhs: &Elem) -> Elem {
        self.with(self.ring.mul_level(self.ring.names.len(), &self.coeffs, &rhs.coeffs))
    }
}

impl Neg for &Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        self.with(self.coeffs.iter().map(|a| -a).collect())
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr<Elem> for Elem {
            type Output = Elem;
            fn $f(self, rhs: Elem) -> Elem {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Elem> for Elem {
            type Output = Elem;
            fn $f(self, rhs: &Elem) -> Elem {
                (&self).$f(rhs)
            }
        }
        impl $tr<Elem> for &Elem {
            type Output = Elem;
            fn $f(self, rhs: Elem) -> Elem {
                self.$f(&rhs)
            }
        }
    )*};
}

owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        -&self
    }
}

/// Polynomial notation in the generator names, highest monomial first,
/// e.g. `l^3 - 2/3*p + 1`.
impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ring = &self.ring;
        let mut first = true;
        for idx in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[idx];
            if c.is_zero() {
                continue;
            }
            let mut mono = String::new();
            let mut rest = idx;
            for k in (0..ring.names.len()).rev() {
                let e = rest / ring.dims[k];
                rest %= ring.dims[k];
                if e > 0 {
                    if !mono.is_empty() {
                        mono.push('*');
                    }
                    mono.push_str(&ring.names[k]);
                    if e > 1 {
                        mono.push_str(&alloc::format!("^{e}"));
                    }
                }
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            match (mono.is_empty(), abs.is_one()) {
                (true, _) => write!(f, "{abs}")?,
                (false, true) => f.write_str(&mono)?,
                (false, false) => write!(f, "{abs}*{mono}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Elem({self})")
    }
}
