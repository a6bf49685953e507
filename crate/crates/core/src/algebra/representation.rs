//! Two-dimensional representations of four catalog types, with `u = v = 1`
//! and the free off-diagonal parameter `b` normalized to 1.

use alloc::sync::Arc;
use alloc::vec::Vec;

use super::matrix::Matrix2;
use super::ring::{AlgebraError, Elem, QuotientRing};
use crate::catalog::{CatalogError, TypeLabel};
use crate::word::Word;

/// Root choice for the representation parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Branch {
    /// B_ii: `l^2 - l + 1 = 0`. B_vi, H_iii: 10th cyclotomic. H_ii:
    /// `l^2 + l + 1 = 0`, `3p^2 + 3p + 2 = 0`.
    I,
    /// H_ii only: `l^2 - l + 1 = 0`, `3p^2 - 3p + 2 = 0`.
    II,
    /// B_ii only: `l = -1`, where the image is abelian.
    Degenerate,
}

impl Branch {
    pub fn as_str(self) -> &'static str {
        match self {
            Branch::I => "i",
            Branch::II => "ii",
            Branch::Degenerate => "degenerate",
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum RepError {
    #[error("no matrix representation is defined for {0}")]
    UnsupportedType(TypeLabel),
    #[error("branch {} is not defined for {label}", branch.as_str())]
    InvalidBranch { label: TypeLabel, branch: Branch },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}

#[derive(Clone, Debug)]
pub struct Representation {
    pub label: TypeLabel,
    pub branch: Branch,
    pub ring: Arc<QuotientRing>,
    /// Images of `a`, `b`, `c`.
    pub matrices: [Matrix2; 3],
}

impl Representation {
    /// Product of the images of the letters of `w`, left to right.
    pub fn eval(&self, w: &Word) -> Matrix2 {
        w.letters()
            .iter()
            .fold(Matrix2::identity(&self.ring), |acc, l| {
                acc.mul(&self.matrices[l.index()])
            })
    }
}

fn simple_ring(coeffs: &[i64]) -> Result<Arc<QuotientRing>, AlgebraError> {
    let q = QuotientRing::rationals().into_shared();
    let cs: Vec<Elem> = coeffs.iter().map(|&c| Elem::int(&q, c)).collect();
    Ok(QuotientRing::rationals().adjoin("l", &cs)?.into_shared())
}

fn int(r: &Arc<QuotientRing>, n: i64) -> Elem {
    Elem::int(r, n)
}

pub fn build_representation(label: TypeLabel, branch: Branch) -> Result<Representation, RepError> {
    let invalid = RepError::InvalidBranch { label, branch };
    let matrices = match label {
        TypeLabel::Bii => {
            let ring = match branch {
                Branch::I => simple_ring(&[1, -1, 1])?,
                Branch::Degenerate => simple_ring(&[1, 1])?,
                Branch::II => return Err(invalid),
            };
            let l = Elem::generator(&ring, 0);
            let (one, zero) = (int(&ring, 1), int(&ring, 0));
            (
                ring.clone(),
                [
                    Matrix2::new(one.clone(), l.pow(2), zero.clone(), one.clone()),
                    Matrix2::diag(l.clone(), l.inv()?),
                    Matrix2::new(one.clone(), one.clone(), zero, one),
                ],
            )
        }
        TypeLabel::Bvi | TypeLabel::Hiii => {
            if branch != Branch::I {
                return Err(invalid);
            }
            let ring = simple_ring(&[1, -1, 1, -1, 1])?;
            let l = Elem::generator(&ring, 0);
            let one = int(&ring, 1);
            let l2m1 = &l.pow(2) - &one;
            let a = -(&l * &l2m1).inv()?;
            let d = &l.pow(3) * &l2m1.inv()?;
            let b = one.clone();
            let num = &(&(-&l.pow(4)) + &l.pow(2)) - &one;
            let c = if label == TypeLabel::Bvi {
                &num * &(&one - &l.pow(2)).pow(2).inv()?
            } else {
                &num * &l2m1.pow(2).inv()?
            };
            let l4 = l.pow(4);
            let l4i = l4.inv()?;
            let cm = if label == TypeLabel::Bvi {
                Matrix2::new(-&(&l4 * &a), -&(&b * &l4i), -&(&l4 * &c), -&(&d * &l4i))
            } else {
                Matrix2::new(a.clone(), &b * &l4i, &l4 * &c, d.clone())
            };
            (
                ring.clone(),
                [
                    Matrix2::diag(l.clone(), l.inv()?),
                    Matrix2::new(a, b, c, d),
                    cm,
                ],
            )
        }
        TypeLabel::Hii => {
            let sign = match branch {
                Branch::I => 1,
                Branch::II => -1,
                Branch::Degenerate => return Err(invalid),
            };
            let base = simple_ring(&[1, sign, 1])?;
            let pc = [Elem::frac(&base, 2, 3), int(&base, sign), int(&base, 1)];
            let ring = base.adjoin("p", &pc)?.into_shared();
            let l = Elem::generator(&ring, 0);
            let p = Elem::generator(&ring, 1);
            let third = Elem::frac(&ring, 1, 3);
            let one = int(&ring, 1);
            let three_p_inv = (&int(&ring, 3) * &p).inv()?;
            let (a, d, q, r) = if sign == 1 {
                (
                    &(&l - &one) * &third,
                    &(&(-&l) - &int(&ring, 2)) * &third,
                    -&(&(&l + &int(&ring, 2)) * &three_p_inv),
                    &(&p * &(&one - &l)) * &third,
                )
            } else {
                (
                    &(&l + &one) * &third,
                    &(&(-&l) + &int(&ring, 2)) * &third,
                    &(&(-&l) + &int(&ring, 2)) * &three_p_inv,
                    -&(&(&p * &(&l + &one)) * &third),
                )
            };
            let s = &int(&ring, 2) * &three_p_inv;
            (
                ring.clone(),
                [
                    Matrix2::diag(l.clone(), l.inv()?),
                    Matrix2::new(a, one, Elem::frac(&ring, -2, 3), d),
                    Matrix2::new(p, q, r, s),
                ],
            )
        }
        other => return Err(RepError::UnsupportedType(other)),
    };
    Ok(Representation {
        label,
        branch,
        ring: matrices.0,
        matrices: matrices.1,
    })
}

#[derive(Clone, Debug)]
pub struct RelationCheck {
    pub relation: usize,
    pub lhs: Word,
    pub rhs: Word,
    pub holds: bool,
    pub lhs_value: Matrix2,
    pub rhs_value: Matrix2,
}

#[derive(Clone, Debug)]
pub struct RepresentationReport {
    pub label: TypeLabel,
    pub branch: Branch,
    pub checks: Vec<RelationCheck>,
    /// Determinants of the images of `a`, `b`, `c`.
    pub determinants: [Elem; 3],
}

impl RepresentationReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelationCheck> {
        self.checks.iter().filter(|c| !c.holds)
    }

    pub fn invertible(&self) -> bool {
        self.determinants.iter().all(|d| !d.is_zero())
    }
}

/// Evaluate both sides of every relation of the type's catalog presentation,
/// as written.
pub fn verify_representation(rep: &Representation) -> Result<RepresentationReport, RepError> {
    let pres = rep.label.presentation()?;
    let checks = pres
        .relations()
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let lhs_value = rep.eval(&r.lhs);
            let rhs_value = rep.eval(&r.rhs);
            RelationCheck {
                relation: i,
                lhs: r.lhs.clone(),
                rhs: r.rhs.clone(),
                holds: lhs_value == rhs_value,
                lhs_value,
                rhs_value,
            }
        })
        .collect();
    let [x, y, z] = &rep.matrices;
    Ok(RepresentationReport {
        label: rep.label,
        branch: rep.branch,
        checks,
        determinants: [x.det(), y.det(), z.det()],
    })
}

/// `X·Y·X⁻¹·Y⁻¹` for a pair of generator images.
#[derive(Clone, Debug)]
pub struct Commutator {
    pub x: usize,
    pub y: usize,
    pub value: Matrix2,
}

/// The first pair among `(a,b)`, `(a,c)`, `(b,c)` with a nontrivial
/// commutator, or `None` when all three commute.
pub fn nonabelian_witness(rep: &Representation) -> Result<Option<Commutator>, RepError> {
    for (x, y) in [(0, 1), (0, 2), (1, 2)] {
        let (mx, my) = (&rep.matrices[x], &rep.matrices[y]);
        let value = mx.mul(my).mul(&mx.inv()?).mul(&my.inv()?);
        if !value.is_identity() {
            return Ok(Some(Commutator { x, y, value }));
        }
    }
    Ok(None)
}
