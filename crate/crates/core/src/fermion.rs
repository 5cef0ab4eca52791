//! Creation and annihilation operators on the basis blades of the exterior algebra,
//! their supercommutators, and closed forms for them.
//!
//! `a+_r = v_r ^ (.)` adds the indices of `r`, `a_r = v_r _| (.)` removes them.
//! Sums of products of the two are held in [`NormalOrderedOperator`].

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{check_dim, Error, Result};
use crate::index::{Blade, IndexTuple};
use crate::linalg::Matrix;
use crate::multivector::Multivector;
use crate::scalar::Scalar;

/// Largest dimension accepted by [`operator_matrix`].
pub const MAX_MATRIX_DIM: usize = 12;

fn signed_basis<S: Scalar>(dim: usize, r: &IndexTuple) -> Result<Multivector<S>> {
    r.check_bound(dim)?;
    Multivector::basis_tuple(dim, r.entries())
}

/// `a+_r M = v_r ^ M`. The tuple need not be increasing; its order sets the sign.
pub fn create<S: Scalar>(r: &IndexTuple, m: &Multivector<S>) -> Result<Multivector<S>> {
    signed_basis(m.dim(), r)?.wedge(m)
}

/// `a_r M = v_r _| M`. The tuple need not be increasing; its order sets the sign.
pub fn annihilate<S: Scalar>(r: &IndexTuple, m: &Multivector<S>) -> Result<Multivector<S>> {
    signed_basis(m.dim(), r)?.lcontr(m)
}

/// `a+_r v_s` on basis blades: `Some((sign, r | s))`, or `None` when it vanishes.
pub fn create_blade(r: Blade, s: Blade) -> Option<(i8, Blade)> {
    r.wedge_sign(s).map(|sign| (sign, r | s))
}

/// `a_r v_s` on basis blades: `Some((sign, s \ r))`, or `None` when it vanishes.
pub fn annihilate_blade(r: Blade, s: Blade) -> Option<(i8, Blade)> {
    if !r.is_subset(s) {
        return None;
    }
    let rest = s.minus(r);
    Some((r.concat_sign(rest), rest))
}

/// Which factor of each term acts first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Order {
    /// `a+_c a_d`: annihilate, then create.
    CreateAnnihilate,
    /// `a_d a+_c`: create, then annihilate.
    AnnihilateCreate,
}

/// `sum coeff * a+_create a_annihilate` (or `a_annihilate a+_create` for
/// [`Order::AnnihilateCreate`]), with no zero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct NormalOrderedOperator<S> {
    dim: usize,
    order: Order,
    terms: BTreeMap<(Blade, Blade), S>,
}

impl<S: Scalar> NormalOrderedOperator<S> {
    pub fn zero(dim: usize, order: Order) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self { dim, order, terms: BTreeMap::new() })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        Self::term(dim, Order::CreateAnnihilate, S::one(), Blade::SCALAR, Blade::SCALAR)
    }

    /// A single term `coeff * a+_create a_annihilate` in the given order.
    pub fn term(dim: usize, order: Order, coeff: S, create: Blade, annihilate: Blade) -> Result<Self> {
        let mut op = Self::zero(dim, order)?;
        op.add_term(coeff, create, annihilate)?;
        Ok(op)
    }

    pub fn creation(dim: usize, r: Blade) -> Result<Self> {
        Self::term(dim, Order::CreateAnnihilate, S::one(), r, Blade::SCALAR)
    }

    pub fn annihilation(dim: usize, r: Blade) -> Result<Self> {
        Self::term(dim, Order::CreateAnnihilate, S::one(), Blade::SCALAR, r)
    }

    /// `m_i = a_i a+_i`, projecting onto the blades disjoint from `i`.
    pub fn vacancy(dim: usize, i: Blade) -> Result<Self> {
        Self::term(dim, Order::AnnihilateCreate, S::one(), i, i)
    }

    /// `n_i = a+_i a_i`, projecting onto the blades containing `i`.
    pub fn occupancy(dim: usize, i: Blade) -> Result<Self> {
        Self::term(dim, Order::CreateAnnihilate, S::one(), i, i)
    }

    pub fn add_term(&mut self, coeff: S, create: Blade, annihilate: Blade) -> Result<()> {
        for b in [create, annihilate] {
            if b.max_index() > self.dim {
                return Err(Error::IndexOutOfRange { index: b.max_index(), dim: self.dim });
            }
        }
        let key = (create, annihilate);
        let v = match self.terms.remove(&key) {
            Some(old) => old + coeff,
            None => coeff,
        };
        if !v.is_zero() {
            self.terms.insert(key, v);
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> Order {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(coeff, create, annihilate)` in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&S, Blade, Blade)> + '_ {
        self.terms.iter().map(|(&(c, a), s)| (s, c, a))
    }

    pub fn scale(&self, s: &S) -> Self {
        let mut out = Self { dim: self.dim, order: self.order, terms: BTreeMap::new() };
        for (c, cr, an) in self.terms() {
            let v = c.clone() * s.clone();
            if !v.is_zero() {
                out.terms.insert((cr, an), v);
            }
        }
        out
    }

    /// Common parity of all terms (`|create| + |annihilate|` mod 2); 0 for the zero operator.
    pub fn parity(&self) -> Result<usize> {
        let mut it = self.terms.keys().map(|(c, a)| (c.grade() + a.grade()) % 2);
        let first = it.next().unwrap_or(0);
        if it.all(|p| p == first) {
            Ok(first)
        } else {
            Err(Error::MixedParity)
        }
    }

    /// Image of a single basis blade, as sparse `(blade, coeff)` pairs.
    pub fn apply_blade(&self, s: Blade) -> BTreeMap<Blade, S> {
        let mut out: BTreeMap<Blade, S> = BTreeMap::new();
        for (c, cr, an) in self.terms() {
            let hit = match self.order {
                Order::CreateAnnihilate => {
                    annihilate_blade(an, s).and_then(|(s1, b)| create_blade(cr, b).map(|(s2, b)| (s1 * s2, b)))
                }
                Order::AnnihilateCreate => {
                    create_blade(cr, s).and_then(|(s1, b)| annihilate_blade(an, b).map(|(s2, b)| (s1 * s2, b)))
                }
            };
            if let Some((sign, b)) = hit {
                let v = if sign < 0 { -c.clone() } else { c.clone() };
                let e = out.entry(b).or_insert_with(S::zero);
                *e = e.clone() + v;
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    pub fn apply(&self, m: &Multivector<S>) -> Result<Multivector<S>> {
        if m.dim() != self.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: m.dim() });
        }
        let mut acc: BTreeMap<Blade, S> = BTreeMap::new();
        for (b, x) in m.terms() {
            for (t, y) in self.apply_blade(b) {
                let e = acc.entry(t).or_insert_with(S::zero);
                *e = e.clone() + y * x.clone();
            }
        }
        Multivector::from_terms(self.dim, acc)
    }
}

impl<S: core::fmt::Debug> core::fmt::Debug for NormalOrderedOperator<S> {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&(c, a), s)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match self.order {
                Order::CreateAnnihilate => write!(f, "{s:?} a+{c:?} a{a:?}")?,
                Order::AnnihilateCreate => write!(f, "{s:?} a{a:?} a+{c:?}")?,
            }
        }
        Ok(())
    }
}

/// `[S, T] M = S(T M) - (-1)^(|S||T|) T(S M)`; both operators must have uniform parity.
pub fn scom_apply<S: Scalar>(
    s: &NormalOrderedOperator<S>,
    t: &NormalOrderedOperator<S>,
    m: &Multivector<S>,
) -> Result<Multivector<S>> {
    let ps = s.parity()?;
    let pt = t.parity()?;
    let st = s.apply(&t.apply(m)?)?;
    let ts = t.apply(&s.apply(m)?)?;
    Ok(if ps * pt % 2 == 1 { st + ts } else { st - ts })
}

/// Which factor stands first in the bracket being expanded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Bracket {
    /// `[a+_i, a_j]`.
    DaggerFirst,
    /// `[a_i, a+_j]`.
    PlainFirst,
}

fn sign<S: Scalar>(odd: bool) -> S {
    if odd {
        -S::one()
    } else {
        S::one()
    }
}

fn check_blade(dim: usize, b: Blade) -> Result<()> {
    if b.max_index() > dim {
        return Err(Error::IndexOutOfRange { index: b.max_index(), dim });
    }
    Ok(())
}

/// Expansion of `[a+_i, a_j]` in `a+ a` terms (`DaggerFirst`), or of `[a_i, a+_j]`
/// in `a a+` terms (`PlainFirst`), summing over nonempty `l` inside `i & j`.
pub fn scom_expand<S: Scalar>(dim: usize, i: Blade, j: Blade, bracket: Bracket) -> Result<NormalOrderedOperator<S>> {
    check_dim(dim)?;
    check_blade(dim, i)?;
    check_blade(dim, j)?;
    let sym = i ^ j;
    let order = match bracket {
        Bracket::DaggerFirst => Order::CreateAnnihilate,
        Bracket::PlainFirst => Order::AnnihilateCreate,
    };
    let mut op = NormalOrderedOperator::zero(dim, order)?;
    for l in (i & j).subsets().filter(|l| !l.is_scalar()) {
        let pairs = match bracket {
            Bracket::DaggerFirst => sym.pairs_gt(l),
            Bracket::PlainFirst => l.pairs_gt(sym),
        };
        let odd = (1 + l.grade() + pairs as usize) % 2 == 1;
        let (create, annihilate) = match bracket {
            Bracket::DaggerFirst => (i.minus(l), j.minus(l)),
            Bracket::PlainFirst => (j.minus(l), i.minus(l)),
        };
        op.add_term(sign(odd), create, annihilate)?;
    }
    Ok(op)
}

/// `[a_i, a+_i] = sum_{j < i} (-1)^|j| a+_j a_j` (`PlainFirst`) and
/// `[a+_i, a_i] = sum_{j < i} (-1)^|j| a_j a+_j` (`DaggerFirst`), over proper subsets.
/// Zero for the empty `i`.
pub fn scom_expand_diagonal<S: Scalar>(dim: usize, i: Blade, bracket: Bracket) -> Result<NormalOrderedOperator<S>> {
    check_dim(dim)?;
    check_blade(dim, i)?;
    let order = match bracket {
        Bracket::PlainFirst => Order::CreateAnnihilate,
        Bracket::DaggerFirst => Order::AnnihilateCreate,
    };
    let mut op = NormalOrderedOperator::zero(dim, order)?;
    for j in i.subsets().filter(|&j| j != i) {
        op.add_term(sign(j.grade() % 2 == 1), j, j)?;
    }
    Ok(op)
}

/// The seven disjoint index sets cut out by `i`, `j`, `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct VennPartition {
    pub a: Blade,
    pub b: Blade,
    pub c: Blade,
    pub d: Blade,
    pub e: Blade,
    pub x: Blade,
    pub y: Blade,
}

impl VennPartition {
    pub fn new(i: Blade, j: Blade, k: Blade) -> Self {
        Self {
            a: i.minus(j | k),
            b: (j & k).minus(i),
            c: i & j & k,
            d: (i & j).minus(k),
            e: k.minus(i | j),
            x: j.minus(i | k),
            y: (i & k).minus(j),
        }
    }

    /// `(i, j, k)`, rebuilt from the pieces.
    pub fn inputs(&self) -> (Blade, Blade, Blade) {
        let i = self.a | self.c | self.d | self.y;
        let j = self.b | self.c | self.d | self.x;
        let k = self.b | self.c | self.e | self.y;
        (i, j, k)
    }
}

/// `[a+_i, a_j] v_k` in closed form: `Some((sign, a | c | e))`, or `None` when it vanishes.
pub fn scom_direct(i: Blade, j: Blade, k: Blade) -> Option<(i8, Blade)> {
    let p = VennPartition::new(i, j, k);
    if !(p.x | p.y).is_scalar() {
        return None;
    }
    let factor: i8 = match (p.d.is_scalar(), p.c.is_scalar()) {
        (true, false) => 1,
        (false, true) => -1,
        _ => return None,
    };
    let exponent = p.d.grade() + (p.a | p.b).pairs_gt(p.d | p.e) as usize;
    let s = if exponent % 2 == 0 { factor } else { -factor };
    Some((s, p.a | p.c | p.e))
}

/// All `2^n` basis blades in canonical order.
pub fn fock_basis(n: usize) -> Result<Vec<Blade>> {
    if n > MAX_MATRIX_DIM {
        return Err(Error::Resource(alloc::format!("operator matrices are limited to n <= {MAX_MATRIX_DIM}, got {n}")));
    }
    let mut v: Vec<Blade> = (0..1u32 << n).map(Blade::from_mask).collect();
    v.sort();
    Ok(v)
}

/// Matrix of the operator on the basis of [`fock_basis`]; column `k` is the image of blade `k`.
pub fn operator_matrix<S: Scalar>(op: &NormalOrderedOperator<S>) -> Result<Matrix<S>> {
    let basis = fock_basis(op.dim())?;
    let pos: BTreeMap<Blade, usize> = basis.iter().enumerate().map(|(k, &b)| (b, k)).collect();
    let mut m = Matrix::zeros(basis.len(), basis.len());
    for (col, &b) in basis.iter().enumerate() {
        for (t, v) in op.apply_blade(b) {
            m.set(pos[&t], col, v);
        }
    }
    Ok(m)
}

/// `ST - (-1)^(ps pt) TS` on matrices.
pub fn scom_matrix<S: Scalar>(s: &Matrix<S>, ps: usize, t: &Matrix<S>, pt: usize) -> Result<Matrix<S>> {
    let st = s.mul(t)?;
    let ts = t.mul(s)?;
    let odd = ps * pt % 2 == 1;
    let mut out = Matrix::zeros(st.rows(), st.cols());
    for r in 0..st.rows() {
        for c in 0..st.cols() {
            let v = if odd {
                st.get(r, c).clone() + ts.get(r, c).clone()
            } else {
                st.get(r, c).clone() - ts.get(r, c).clone()
            };
            out.set(r, c, v);
        }
    }
    Ok(out)
}
