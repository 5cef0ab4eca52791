//! Sparse multivectors over an orthonormal basis `v_1, ..., v_n`.
//!
//! Conventions (all fixed by adjointness under the Hermitian pairing):
//!
//! * `<L, M _| N> = <M ^ L, N>`, so `v_r _| v_s = eps_{r (s\r)} v_{s\r}` when `r` is a subset of `s`.
//! * `<L, N |_ M> = <L ^ M, N>`, so `v_s |_ v_r = eps_{(s\r) r} v_{s\r}`.
//! * The left contraction is conjugate linear in its left operand, the right
//!   contraction in its right operand, and `<M, N>` in `M`.
//! * Right dual `*M = M _| Omega`, left dual `Omega |_ M`, with `Omega = v_{1..n}`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use crate::error::{check_dim, Error, Result};
use crate::index::{Blade, IndexTuple};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq)]
pub struct Multivector<S> {
    dim: usize,
    terms: BTreeMap<Blade, S>,
}

impl<S: Scalar> Multivector<S> {
    pub fn zero(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Multivector { dim, terms: BTreeMap::new() })
    }

    pub fn scalar(dim: usize, value: S) -> Result<Self> {
        Self::from_terms(dim, [(Blade::SCALAR, value)])
    }

    pub fn one(dim: usize) -> Result<Self> {
        Self::scalar(dim, S::one())
    }

    /// The canonical basis blade `v_b`.
    pub fn basis(dim: usize, blade: Blade) -> Result<Self> {
        Self::from_terms(dim, [(blade, S::one())])
    }

    /// `v_{i1} ^ ... ^ v_{ip}` for distinct indices in any order.
    pub fn basis_tuple(dim: usize, indices: &[u8]) -> Result<Self> {
        let t = IndexTuple::new(indices)?;
        let (sign, blade) = t.to_signed_blade();
        Self::from_terms(dim, [(blade, S::from_i64(sign.into()))])
    }

    /// Sums the given terms; repeated blades are combined and zeros dropped.
    pub fn from_terms<I>(dim: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Blade, S)>,
    {
        check_dim(dim)?;
        let mut mv = Multivector { dim, terms: BTreeMap::new() };
        for (b, c) in terms {
            if b.max_index() > dim {
                return Err(Error::IndexOutOfRange { index: b.max_index(), dim });
            }
            mv.add_term(b, c);
        }
        Ok(mv)
    }

    /// The vector `sum_i coords[i] v_{i+1}`.
    pub fn vector(coords: &[S]) -> Result<Self> {
        let dim = coords.len();
        Self::from_terms(dim, coords.iter().enumerate().map(|(i, c)| (Blade::from_mask(1 << i), c.clone())))
    }

    /// Exterior product of a list of vectors given by coordinates; `1` for an empty list.
    pub fn wedge_vectors(dim: usize, vectors: &[Vec<S>]) -> Result<Self> {
        let mut acc = Self::one(dim)?;
        for v in vectors {
            if v.len() != dim {
                return Err(Error::DimensionMismatch { left: dim, right: v.len() });
            }
            acc = acc.wedge(&Self::vector(v)?)?;
        }
        Ok(acc)
    }

    fn add_term(&mut self, b: Blade, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&b) {
            Some(e) => {
                let sum = e.clone() + c;
                if sum.is_zero() {
                    self.terms.remove(&b);
                } else {
                    *e = sum;
                }
            }
            None => {
                self.terms.insert(b, c);
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero terms in blade order (grade, then lexicographic).
    pub fn terms(&self) -> impl Iterator<Item = (Blade, &S)> + '_ {
        self.terms.iter().map(|(b, c)| (*b, c))
    }

    pub fn coeff(&self, b: Blade) -> S {
        self.terms.get(&b).cloned().unwrap_or_else(S::zero)
    }

    /// Coordinates of the grade-1 component.
    pub fn vector_coords(&self) -> Vec<S> {
        (0..self.dim).map(|i| self.coeff(Blade::from_mask(1 << i))).collect()
    }

    pub fn scalar_part(&self) -> S {
        self.coeff(Blade::SCALAR)
    }

    fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { left: self.dim, right: other.dim })
        }
    }

    /// Same value viewed in a larger or equal dimension.
    pub fn embed(&self, dim: usize) -> Result<Self> {
        Self::from_terms(dim, self.terms.iter().map(|(b, c)| (*b, c.clone())))
    }

    pub fn map_coeffs(&self, f: impl Fn(&S) -> S) -> Self {
        let mut out = Multivector { dim: self.dim, terms: BTreeMap::new() };
        for (b, c) in &self.terms {
            out.add_term(*b, f(c));
        }
        out
    }

    pub fn scale(&self, s: &S) -> Self {
        self.map_coeffs(|c| c.clone() * s.clone())
    }

    /// Coefficientwise conjugation.
    pub fn conj(&self) -> Self {
        self.map_coeffs(S::conj)
    }

    /// Grades with a nonzero component, ascending.
    pub fn grades(&self) -> Vec<usize> {
        let mut g: Vec<usize> = self.terms.keys().map(|b| b.grade()).collect();
        g.sort_unstable();
        g.dedup();
        g
    }

    /// The grade when the multivector is nonzero and homogeneous.
    pub fn homogeneous_grade(&self) -> Option<usize> {
        match self.grades().as_slice() {
            [g] => Some(*g),
            _ => None,
        }
    }

    pub fn bottom_grade(&self) -> Option<usize> {
        self.terms.keys().map(|b| b.grade()).min()
    }

    pub fn top_grade(&self) -> Option<usize> {
        self.terms.keys().map(|b| b.grade()).max()
    }

    pub fn grade_part(&self, p: usize) -> Self {
        Multivector {
            dim: self.dim,
            terms: self.terms.iter().filter(|(b, _)| b.grade() == p).map(|(b, c)| (*b, c.clone())).collect(),
        }
    }

    fn sign_by_grade(&self, sign: impl Fn(usize) -> bool) -> Self {
        self.map_coeffs_by_blade(|b, c| if sign(b.grade()) { -c.clone() } else { c.clone() })
    }

    fn map_coeffs_by_blade(&self, f: impl Fn(Blade, &S) -> S) -> Self {
        let mut out = Multivector { dim: self.dim, terms: BTreeMap::new() };
        for (b, c) in &self.terms {
            out.add_term(*b, f(*b, c));
        }
        out
    }

    /// `sum_p (-1)^p <M>_p`.
    pub fn grade_involution(&self) -> Self {
        self.sign_by_grade(|p| p % 2 == 1)
    }

    /// `k` composed grade involutions.
    pub fn grade_involution_k(&self, k: usize) -> Self {
        if k % 2 == 0 {
            self.clone()
        } else {
            self.grade_involution()
        }
    }

    /// `sum_p (-1)^(p(p-1)/2) <M>_p`.
    pub fn reversion(&self) -> Self {
        self.sign_by_grade(|p| (p * p.saturating_sub(1) / 2) % 2 == 1)
    }

    fn product(
        &self,
        other: &Self,
        rule: impl Fn(Blade, Blade) -> Option<(i8, Blade)>,
        coeff: impl Fn(&S, &S) -> S,
    ) -> Result<Self> {
        self.check_same_dim(other)?;
        let mut out = Multivector { dim: self.dim, terms: BTreeMap::new() };
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                if let Some((sign, blade)) = rule(*a, *b) {
                    let c = coeff(x, y);
                    out.add_term(blade, if sign < 0 { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    /// Exterior product.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        self.product(other, |a, b| a.wedge_sign(b).map(|s| (s, a | b)), |x, y| x.clone() * y.clone())
    }

    /// Left contraction `self _| other`, conjugate linear in `self`.
    pub fn lcontr(&self, other: &Self) -> Result<Self> {
        self.product(other, lcontr_rule, |x, y| x.conj() * y.clone())
    }

    /// Right contraction `self |_ other`, conjugate linear in `other`.
    pub fn rcontr(&self, other: &Self) -> Result<Self> {
        self.product(
            other,
            |s, r| {
                if r.is_subset(s) {
                    let rest = s.minus(r);
                    Some((rest.concat_sign(r), rest))
                } else {
                    None
                }
            },
            |x, y| x.clone() * y.conj(),
        )
    }

    /// Euclidean Clifford (geometric) product; bilinear.
    pub fn clifford(&self, other: &Self) -> Result<Self> {
        self.product(
            other,
            |a, b| Some((if a.pairs_gt(b) % 2 == 0 { 1 } else { -1 }, a ^ b)),
            |x, y| x.clone() * y.clone(),
        )
    }

    /// Hermitian pairing, conjugate linear in `self`; basis blades are orthonormal.
    pub fn inner(&self, other: &Self) -> Result<S> {
        self.check_same_dim(other)?;
        let mut acc = S::zero();
        for (b, x) in &self.terms {
            if let Some(y) = other.terms.get(b) {
                acc = acc + x.conj() * y.clone();
            }
        }
        Ok(acc)
    }

    /// `<M, M>`.
    pub fn norm_sqr(&self) -> S {
        self.terms.values().fold(S::zero(), |acc, c| acc + c.norm_sqr())
    }

    pub fn pseudoscalar(dim: usize) -> Result<Self> {
        Self::basis(dim, Blade::pseudoscalar(dim))
    }

    /// Right dual `M _| Omega`.
    pub fn hodge_right(&self) -> Self {
        let omega = Blade::pseudoscalar(self.dim);
        self.map_blades(
            |b| {
                let rest = omega.minus(b);
                (b.concat_sign(rest), rest)
            },
            true,
        )
    }

    /// Left dual `Omega |_ M`.
    pub fn hodge_left(&self) -> Self {
        let omega = Blade::pseudoscalar(self.dim);
        self.map_blades(
            |b| {
                let rest = omega.minus(b);
                (rest.concat_sign(b), rest)
            },
            true,
        )
    }

    fn map_blades(&self, f: impl Fn(Blade) -> (i8, Blade), conjugate: bool) -> Self {
        let mut out = Multivector { dim: self.dim, terms: BTreeMap::new() };
        for (b, c) in &self.terms {
            let (sign, nb) = f(*b);
            let c = if conjugate { c.conj() } else { c.clone() };
            out.add_term(nb, if sign < 0 { -c } else { c });
        }
        out
    }
}

fn lcontr_rule(r: Blade, s: Blade) -> Option<(i8, Blade)> {
    if r.is_subset(s) {
        let rest = s.minus(r);
        Some((r.concat_sign(rest), rest))
    } else {
        None
    }
}

impl<S: Scalar> Add for &Multivector<S> {
    type Output = Multivector<S>;

    /// # Panics
    /// If the dimensions differ.
    fn add(self, rhs: &Multivector<S>) -> Multivector<S> {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in multivector sum");
        let mut out = self.clone();
        for (b, c) in &rhs.terms {
            out.add_term(*b, c.clone());
        }
        out
    }
}

impl<S: Scalar> Add for Multivector<S> {
    type Output = Multivector<S>;
    fn add(self, rhs: Multivector<S>) -> Multivector<S> {
        &self + &rhs
    }
}

impl<S: Scalar> Sub for &Multivector<S> {
    type Output = Multivector<S>;

    /// # Panics
    /// If the dimensions differ.
    fn sub(self, rhs: &Multivector<S>) -> Multivector<S> {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in multivector difference");
        let mut out = self.clone();
        for (b, c) in &rhs.terms {
            out.add_term(*b, -c.clone());
        }
        out
    }
}

impl<S: Scalar> Sub for Multivector<S> {
    type Output = Multivector<S>;
    fn sub(self, rhs: Multivector<S>) -> Multivector<S> {
        &self - &rhs
    }
}

impl<S: Scalar> Neg for &Multivector<S> {
    type Output = Multivector<S>;
    fn neg(self) -> Multivector<S> {
        self.map_coeffs(|c| -c.clone())
    }
}

impl<S: Scalar> Neg for Multivector<S> {
    type Output = Multivector<S>;
    fn neg(self) -> Multivector<S> {
        -&self
    }
}

impl<S: fmt::Debug> fmt::Debug for Multivector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (b, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c:?}*{b:?}")?;
        }
        write!(f, " [n={}]", self.dim)
    }
}

/// Sum of a list of multivectors of dimension `dim`.
pub fn sum<S: Scalar>(dim: usize, parts: &[Multivector<S>]) -> Result<Multivector<S>> {
    let mut acc = Multivector::zero(dim)?;
    for p in parts {
        acc.check_same_dim(p)?;
        acc = &acc + p;
    }
    Ok(acc)
}
