//! Inner and outer spaces, generalized grades, partial orthogonality and balance.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::index::Blade;
use crate::linalg::{Matrix, Subspace};
use crate::multivector::Multivector;
use crate::scalar::Scalar;

/// Matrix with one column per basis vector `v_j`, holding the coordinates of `f(v_j)`.
/// Only blades that actually occur get a row.
fn column_matrix<S: Scalar>(
    m: &Multivector<S>,
    f: impl Fn(&Multivector<S>) -> Result<Multivector<S>>,
) -> Result<Matrix<S>> {
    let n = m.dim();
    let mut rows: BTreeMap<Blade, Vec<S>> = BTreeMap::new();
    for j in 0..n {
        let img = f(&Multivector::basis(n, Blade::from_mask(1 << j))?)?;
        for (b, c) in img.terms() {
            rows.entry(b).or_insert_with(|| vec![S::zero(); n])[j] = c.clone();
        }
    }
    let rows: Vec<Vec<S>> = rows.into_values().collect();
    if rows.is_empty() {
        return Ok(Matrix::zeros(0, n));
    }
    Matrix::from_rows(&rows)
}

/// `{v : v ^ M = 0}`; the whole space when `M = 0`.
pub fn inner_space<S: Scalar>(m: &Multivector<S>) -> Result<Subspace<S>> {
    let n = m.dim();
    if m.is_zero() {
        return Ok(Subspace::full(n));
    }
    let a = column_matrix(m, |v| v.wedge(m))?;
    if a.rows() == 0 {
        return Ok(Subspace::full(n));
    }
    Subspace::span(n, &a.null_space())
}

/// `{v : v _| M = 0}^perp`, the smallest subspace whose exterior algebra contains `M`.
///
/// This is the row space of the matrix whose column `j` holds `v_j _| M`, in both
/// the Euclidean and the Hermitian case.
pub fn outer_space<S: Scalar>(m: &Multivector<S>) -> Result<Subspace<S>> {
    let n = m.dim();
    let a = column_matrix(m, |v| v.lcontr(m))?;
    let rows: Vec<Vec<S>> = (0..a.rows()).map(|i| a.row(i)).collect();
    Subspace::span(n, &rows)
}

/// Dimensions of the inner and outer spaces with the extreme nonzero grades.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GradeProfile {
    pub igrade: usize,
    pub bgrade: usize,
    pub tgrade: usize,
    pub ograde: usize,
}

pub fn grade_profile<S: Scalar>(m: &Multivector<S>) -> Result<GradeProfile> {
    let (Some(bgrade), Some(tgrade)) = (m.bottom_grade(), m.top_grade()) else {
        return Err(Error::ZeroMultivector);
    };
    Ok(GradeProfile { igrade: inner_space(m)?.rank(), bgrade, tgrade, ograde: outer_space(m)?.rank() })
}

/// Partial orthogonality `U pperp V`: some nonzero `u` in `U` is orthogonal to all of `V`.
pub fn is_pperp<S: Scalar>(u: &Subspace<S>, v: &Subspace<S>) -> Result<bool> {
    Ok(!v.orth_complement().intersection(u)?.is_zero())
}

fn total<S: Scalar>(parts: &[Multivector<S>]) -> Result<Multivector<S>> {
    let first = parts.first().ok_or_else(|| Error::Domain("a decomposition needs at least one part".into()))?;
    crate::multivector::sum(first.dim(), parts)
}

/// `i(sum M_k) = intersection of i(M_k)`.
pub fn is_inner_balanced<S: Scalar>(parts: &[Multivector<S>]) -> Result<bool> {
    let m = total(parts)?;
    let mut cap = Subspace::full(m.dim());
    for p in parts {
        cap = cap.intersection(&inner_space(p)?)?;
    }
    Ok(inner_space(&m)? == cap)
}

/// `o(sum M_k) = sum of o(M_k)`.
pub fn is_outer_balanced<S: Scalar>(parts: &[Multivector<S>]) -> Result<bool> {
    let m = total(parts)?;
    let mut acc = Subspace::zero(m.dim());
    for p in parts {
        acc = acc.sum(&outer_space(p)?)?;
    }
    Ok(outer_space(&m)? == acc)
}

/// Both balance predicates.
pub fn is_balanced<S: Scalar>(parts: &[Multivector<S>]) -> Result<bool> {
    Ok(is_inner_balanced(parts)? && is_outer_balanced(parts)?)
}

/// A multivector is a blade exactly when it is nonzero and its inner and outer spaces agree.
pub fn is_blade<S: Scalar>(m: &Multivector<S>) -> Result<bool> {
    Ok(!m.is_zero() && inner_space(m)? == outer_space(m)?)
}
