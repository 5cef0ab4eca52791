#![allow(dead_code, unused_imports)]

pub mod fermion;
pub mod identities;

use grassmann_core::index::blades_of_grade;
use grassmann_core::{Blade, Gaussian, LinearMap, Matrix, Multivector, Rational, Scalar, Subspace};
use proptest::prelude::*;

pub type Mv = Multivector<Rational>;
pub type Gv = Multivector<Gaussian>;
/// Raw `(mask, numerator, denominator)` terms.
pub type Terms = Vec<(u32, i64, i64)>;

/// Scalars that can be drawn from a pair of small integers.
pub trait Coeff: Scalar + 'static {
    fn pick(re: i64, im: i64) -> Self;
}

impl Coeff for Rational {
    fn pick(re: i64, _im: i64) -> Self {
        Rational::from_i64(re)
    }
}

impl Coeff for Gaussian {
    fn pick(re: i64, im: i64) -> Self {
        Gaussian::from_ints(re, im)
    }
}

pub fn q(v: i64) -> Rational {
    Rational::from_i64(v)
}

pub fn e(n: usize, idx: &[u8]) -> Mv {
    Mv::basis_tuple(n, idx).unwrap()
}

pub fn span<S: Scalar>(n: usize, vs: &[Vec<S>]) -> Subspace<S> {
    Subspace::span(n, vs).unwrap()
}

fn full_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

pub fn build<S: Coeff>(n: usize, terms: &[(u32, i64, i64)]) -> Multivector<S> {
    let m = full_mask(n);
    Multivector::from_terms(n, terms.iter().map(|&(b, re, im)| (Blade::from_mask(b & m), S::pick(re, im)))).unwrap()
}

fn small() -> impl Strategy<Value = (i64, i64)> {
    (-3i64..=3, -3i64..=3)
}

/// A multivector on `n` coordinates with up to `max` terms.
pub fn mv<S: Coeff>(n: usize, max: usize) -> impl Strategy<Value = Multivector<S>> {
    prop::collection::vec((0u32..(1u32 << n), -3i64..=3, -3i64..=3), 0..=max).prop_map(move |t| build::<S>(n, &t))
}

pub fn nonzero_mv<S: Coeff>(n: usize, max: usize) -> impl Strategy<Value = Multivector<S>> {
    mv::<S>(n, max.max(1)).prop_filter("nonzero", |m| !m.is_zero())
}

/// A homogeneous multivector of grade `p` on `n` coordinates (possibly zero).
pub fn homogeneous<S: Coeff>(n: usize, p: usize, max: usize) -> impl Strategy<Value = Multivector<S>> {
    let blades = blades_of_grade(n, p);
    prop::collection::vec((prop::sample::select(blades), small()), 0..=max)
        .prop_map(move |t| Multivector::from_terms(n, t.into_iter().map(|(b, (re, im))| (b, S::pick(re, im)))).unwrap())
}

pub fn vector<S: Coeff>(n: usize) -> impl Strategy<Value = Vec<S>> {
    prop::collection::vec(small(), n).prop_map(|v| v.into_iter().map(|(a, b)| S::pick(a, b)).collect())
}

pub fn nonzero_vector<S: Coeff>(n: usize) -> impl Strategy<Value = Vec<S>> {
    vector::<S>(n).prop_filter("nonzero", |v| v.iter().any(|x| !x.is_zero()))
}

pub fn vectors<S: Coeff>(n: usize, k: usize) -> impl Strategy<Value = Vec<Vec<S>>> {
    prop::collection::vec(vector::<S>(n), k)
}

/// A nonzero blade on `n` coordinates of grade `k`, with its factors.
pub fn blade<S: Coeff>(n: usize, k: usize) -> impl Strategy<Value = (Multivector<S>, Vec<Vec<S>>)> {
    vectors::<S>(n, k).prop_filter_map("independent", move |vs| {
        let b = Multivector::wedge_vectors(n, &vs).unwrap();
        (!b.is_zero()).then_some((b, vs))
    })
}

/// A random multivector in the exterior algebra of the span of `vs`.
pub fn in_algebra<S: Scalar>(n: usize, vs: &[Vec<S>], coeffs: &[S]) -> Multivector<S> {
    let k = vs.len();
    let mut acc = Multivector::zero(n).unwrap();
    for (mask, c) in (0u32..(1u32 << k)).zip(coeffs.iter().cycle()) {
        let picked: Vec<Vec<S>> = (0..k).filter(|i| mask & (1 << i) != 0).map(|i| vs[i].clone()).collect();
        let w = if picked.is_empty() {
            Multivector::one(n).unwrap()
        } else {
            Multivector::wedge_vectors(n, &picked).unwrap()
        };
        acc = acc + w.scale(c);
    }
    acc
}

pub fn coeffs<S: Coeff>(len: usize) -> impl Strategy<Value = Vec<S>> {
    prop::collection::vec(small(), len).prop_map(|v| v.into_iter().map(|(a, b)| S::pick(a, b)).collect())
}

/// A random invertible linear map on `n` coordinates.
pub fn invertible<S: Coeff>(n: usize) -> impl Strategy<Value = LinearMap<S>> {
    vectors::<S>(n, n).prop_filter_map("invertible", move |cols| {
        let m = Matrix::from_cols(n, &cols).unwrap();
        m.inverse().is_some().then(|| LinearMap::new(m).unwrap())
    })
}

pub fn linear_map<S: Coeff>(n: usize) -> impl Strategy<Value = LinearMap<S>> {
    vectors::<S>(n, n).prop_map(move |cols| LinearMap::new(Matrix::from_cols(n, &cols).unwrap()).unwrap())
}

/// The column vectors of a subspace basis as multivectors.
pub fn as_vector<S: Scalar>(v: &[S]) -> Multivector<S> {
    Multivector::vector(v).unwrap()
}

/// A random orthogonal map on `n` coordinates: Givens rotations by the (3, 4, 5) angle,
/// a coordinate permutation and sign flips.
pub fn orthogonal<S: Coeff>(n: usize) -> impl Strategy<Value = LinearMap<S>> {
    let rot = (0..n, 0..n, any::<bool>(), any::<bool>());
    (
        prop::collection::vec(rot, 0..=3),
        Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
        prop::collection::vec(any::<bool>(), n),
    )
        .prop_map(move |(rots, perm, flips)| {
            let mut m = Matrix::<S>::zeros(n, n);
            for (j, &p) in perm.iter().enumerate() {
                m.set(p, j, if flips[j] { -S::one() } else { S::one() });
            }
            for (a, b, swap, neg) in rots {
                if a == b {
                    continue;
                }
                let (c, s) = if swap { (4, 3) } else { (3, 4) };
                let c = S::from_ratio(c, 5);
                let s = if neg { -S::from_ratio(s, 5) } else { S::from_ratio(s, 5) };
                let mut g = Matrix::<S>::identity(n);
                g.set(a, a, c.clone());
                g.set(b, b, c);
                g.set(a, b, -s.clone());
                g.set(b, a, s);
                m = g.mul(&m).unwrap();
            }
            LinearMap::new(m).unwrap()
        })
}

/// Terms restricted to coordinates `lo..lo+len` (bit positions).
pub fn shift_terms(terms: &[(u32, i64, i64)], lo: usize, len: usize) -> Vec<(u32, i64, i64)> {
    let mask = if len == 0 { 0 } else { (1u32 << len) - 1 };
    terms.iter().map(|&(b, r, i)| ((b & mask) << lo, r, i)).collect()
}

pub fn raw_terms(max: usize) -> impl Strategy<Value = Vec<(u32, i64, i64)>> {
    prop::collection::vec((0u32..64, -3i64..=3, -3i64..=3), 1..=max)
}
