use super::*;
use grassmann_core::index::increasing_tuples;
use grassmann_core::spaces::outer_space;
use grassmann_core::{Blade, Gaussian, IndexTuple, Multivector, Rational, Scalar, Subspace};
use proptest::prelude::*;

pub type R = Result<(), TestCaseError>;

pub fn cfg() -> ProptestConfig {
    ProptestConfig::with_cases(256)
}

pub fn div<S: Scalar>(m: &Multivector<S>, s: &S) -> Multivector<S> {
    m.scale(&(S::one() / s.clone()))
}

pub fn pair<S: Coeff>() -> impl Strategy<Value = (Multivector<S>, Multivector<S>)> {
    (1usize..=5).prop_flat_map(|n| (mv::<S>(n, 6), mv::<S>(n, 6)))
}

pub fn triple<S: Coeff>() -> impl Strategy<Value = (Multivector<S>, Multivector<S>, Multivector<S>)> {
    (1usize..=5).prop_flat_map(|n| (mv::<S>(n, 6), mv::<S>(n, 6), mv::<S>(n, 6)))
}

pub fn with_vector<S: Coeff>() -> impl Strategy<Value = (Vec<S>, Multivector<S>, Multivector<S>)> {
    (1usize..=5).prop_flat_map(|n| (vector::<S>(n), mv::<S>(n, 6), mv::<S>(n, 6)))
}

pub fn duality<S: Coeff>(m: &Multivector<S>, n: &Multivector<S>) -> R {
    prop_assert_eq!(m.wedge(n).unwrap().hodge_right(), n.lcontr(&m.hodge_right()).unwrap());
    prop_assert_eq!(m.rcontr(n).unwrap().hodge_right(), n.wedge(&m.hodge_right()).unwrap());
    Ok(())
}

pub fn leibniz<S: Coeff>(v: &[S], m: &Multivector<S>, n: &Multivector<S>) -> R {
    let v = as_vector(v).embed(m.dim()).unwrap();
    let mh = m.grade_involution();
    let lhs = v.lcontr(&m.wedge(n).unwrap()).unwrap();
    let rhs = v.lcontr(m).unwrap().wedge(n).unwrap() + mh.wedge(&v.lcontr(n).unwrap()).unwrap();
    prop_assert_eq!(lhs, rhs);
    let lhs = v.wedge(&m.lcontr(n).unwrap()).unwrap();
    let rhs = m.rcontr(&v).unwrap().lcontr(n).unwrap() + mh.lcontr(&v.wedge(n).unwrap()).unwrap();
    prop_assert_eq!(lhs, rhs);
    Ok(())
}

pub fn adjoint<S: Coeff>(l: &Multivector<S>, m: &Multivector<S>, n: &Multivector<S>) -> R {
    prop_assert_eq!(l.inner(&m.lcontr(n).unwrap()).unwrap(), m.wedge(l).unwrap().inner(n).unwrap());
    prop_assert_eq!(l.inner(&n.rcontr(m).unwrap()).unwrap(), l.wedge(m).unwrap().inner(n).unwrap());
    prop_assert_eq!(l.inner(m).unwrap(), m.inner(l).unwrap().conj());
    Ok(())
}

pub fn factor_out<S: Coeff>(v: &[S], m: &Multivector<S>, n0: &Multivector<S>) -> R {
    let dim = m.dim();
    let v = as_vector(v);
    let nv = v.norm_sqr();
    // random M: both sides of each equivalence agree
    let rebuilt = v.wedge(&div(&v.lcontr(m).unwrap(), &nv)).unwrap();
    prop_assert_eq!(v.wedge(m).unwrap().is_zero(), &rebuilt == m);
    let rebuilt = v.lcontr(&div(&v.wedge(m).unwrap(), &nv)).unwrap();
    prop_assert_eq!(v.lcontr(m).unwrap().is_zero(), &rebuilt == m);
    // constructed M in the image
    let m1 = v.wedge(n0).unwrap();
    prop_assert!(v.wedge(&m1).unwrap().is_zero());
    prop_assert_eq!(v.wedge(&div(&v.lcontr(&m1).unwrap(), &nv)).unwrap(), m1);
    let m2 = v.lcontr(n0).unwrap();
    prop_assert!(v.lcontr(&m2).unwrap().is_zero());
    prop_assert_eq!(v.lcontr(&div(&v.wedge(&m2).unwrap(), &nv)).unwrap(), m2);
    prop_assert_eq!(v.dim(), dim);
    Ok(())
}

pub fn blade_reconstruction<S: Coeff>(b: &Multivector<S>, vs: &[Vec<S>], n0: &Multivector<S>) -> R {
    let nb = b.norm_sqr();
    let bspan = Subspace::span(b.dim(), vs).unwrap();
    let carved = n0.lcontr(b).unwrap();
    let l = div(&b.rcontr(&carved).unwrap(), &nb);
    prop_assert_eq!(l.lcontr(b).unwrap(), carved);
    prop_assert!(outer_space(&l).unwrap().is_subspace_of(&bspan).unwrap());
    let factored = b.wedge(n0).unwrap();
    let l = div(&b.lcontr(&factored).unwrap(), &nb);
    prop_assert_eq!(b.wedge(&l).unwrap(), factored);
    prop_assert!(outer_space(&l).unwrap().is_subspace_of(&bspan.orth_complement()).unwrap());
    Ok(())
}

pub fn triple_products<S: Coeff>(vs: &[Vec<S>], sub: &[Vec<S>], cs: &[S], m: &Multivector<S>) -> R {
    let n = m.dim();
    let b = Multivector::wedge_vectors(n, vs).unwrap();
    // A from combinations of the factors of B, so [A] lies in [B]
    let a_vecs: Vec<Vec<S>> = sub
        .iter()
        .map(|c| {
            (0..n).map(|t| vs.iter().zip(c).fold(S::zero(), |acc, (v, ci)| acc + ci.clone() * v[t].clone())).collect()
        })
        .collect();
    let a = Multivector::wedge_vectors(n, &a_vecs).unwrap();
    if !a.is_zero() {
        let pa = m.project(&Subspace::span(n, &a_vecs).unwrap()).unwrap();
        prop_assert_eq!(a.rcontr(m).unwrap().lcontr(&b).unwrap(), pa.wedge(&a.lcontr(&b).unwrap()).unwrap());
    }
    let l = in_algebra(n, vs, cs);
    prop_assert_eq!(m.rcontr(&l).unwrap().lcontr(&b).unwrap(), l.wedge(&m.lcontr(&b).unwrap()).unwrap());
    Ok(())
}

pub fn wedge_of<S: Scalar>(n: usize, vs: &[Vec<S>], mask: u32) -> Multivector<S> {
    let picked: Vec<Vec<S>> = (0..vs.len()).filter(|i| mask & (1 << i) != 0).map(|i| vs[i].clone()).collect();
    if picked.is_empty() {
        Multivector::one(n).unwrap()
    } else {
        Multivector::wedge_vectors(n, &picked).unwrap()
    }
}

pub fn higher_order<S: Coeff>(vs: &[Vec<S>], m: &Multivector<S>, n: &Multivector<S>) -> R {
    let dim = m.dim();
    let p = vs.len();
    let all = wedge_of(dim, vs, (1 << p) - 1);
    let mp = m.grade_involution_k(p);
    let mut rhs1 = Multivector::zero(dim).unwrap();
    let mut rhs2 = Multivector::zero(dim).unwrap();
    for i in 0u32..(1 << p) {
        let ic = ((1u32 << p) - 1) & !i;
        let vi = wedge_of(dim, vs, i);
        let vic = wedge_of(dim, vs, ic);
        let vih = vi.grade_involution();
        let (bi, bic) = (Blade::from_mask(i), Blade::from_mask(ic));
        let t1 = mp.rcontr(&vih).unwrap().wedge(&vic.lcontr(n).unwrap()).unwrap();
        let t2 = vih.lcontr(&mp).unwrap().lcontr(&vic.wedge(n).unwrap()).unwrap();
        rhs1 = rhs1 + t1.scale(&S::from_i64(bic.concat_sign(bi).into()));
        rhs2 = rhs2 + t2.scale(&S::from_i64(bi.concat_sign(bic).into()));
    }
    prop_assert_eq!(all.lcontr(&m.wedge(n).unwrap()).unwrap(), rhs1);
    prop_assert_eq!(all.wedge(&m.lcontr(n).unwrap()).unwrap(), rhs2);
    Ok(())
}

pub fn projection_images<S: Coeff>(b: &Multivector<S>, vs: &[Vec<S>], m: &Multivector<S>) -> R {
    let n = m.dim();
    let nb = b.norm_sqr();
    let perp = Subspace::span(n, vs).unwrap().orth_complement();
    let ie = b.lcontr(&b.wedge(m).unwrap()).unwrap();
    prop_assert_eq!(&ie, &m.project(&perp).unwrap().scale(&nb));
    let ei = b.wedge(&b.lcontr(m).unwrap()).unwrap();
    let r1 = m.scale(&nb) - ie;
    let r2 = m.scale(&nb) - ei;
    // residuals are orthogonal to the images of the contraction and the wedge
    for w in 0u32..(1 << n) {
        let w = Multivector::basis(n, Blade::from_mask(w)).unwrap();
        prop_assert!(b.lcontr(&w).unwrap().inner(&r1).unwrap().is_zero());
        prop_assert!(b.wedge(&w).unwrap().inner(&r2).unwrap().is_zero());
    }
    Ok(())
}

pub fn separated_factors<S: Coeff>(
    t: &grassmann_core::LinearMap<S>,
    a: usize,
    m0: &[(u32, i64, i64)],
    n0: &[(u32, i64, i64)],
    v: &[S],
) -> R {
    let n = t.source();
    let b = (n - a).min(2);
    let lo: Vec<(u32, i64, i64)> = m0.iter().map(|&(x, r, i)| (x & ((1 << a) - 1), r, i)).collect();
    let hi: Vec<(u32, i64, i64)> = n0.iter().map(|&(x, r, i)| ((x & ((1 << b) - 1)) << a, r, i)).collect();
    let m = t.outermorphism(&build::<S>(n, &lo)).unwrap();
    let nn = t.outermorphism(&build::<S>(n, &hi)).unwrap();
    if m.is_zero() || nn.is_zero() {
        return Ok(());
    }
    let occupied = outer_space(&m).unwrap().sum(&outer_space(&nn).unwrap()).unwrap();
    let free = occupied.orth_complement();
    let vs: Vec<Multivector<S>> =
        core::iter::once(as_vector(v)).chain(free.basis().iter().map(|w| as_vector(w))).collect();
    for v in vs {
        let a1 = v.lcontr(&m.wedge(&nn).unwrap()).unwrap().is_zero();
        let a2 = v.lcontr(&m.clifford(&nn).unwrap()).unwrap().is_zero();
        let a3 = v.lcontr(&m).unwrap().is_zero() && v.lcontr(&nn).unwrap().is_zero();
        prop_assert_eq!(a1, a3);
        prop_assert_eq!(a2, a3);
    }
    Ok(())
}

pub type BladeWithFactors<S> = (Multivector<S>, Vec<Vec<S>>);

pub fn blade_and_mv<S: Coeff>() -> impl Strategy<Value = (BladeWithFactors<S>, Multivector<S>)> {
    (1usize..=5).prop_flat_map(|n| (Just(n), 1..=n)).prop_flat_map(|(n, k)| (blade::<S>(n, k), mv::<S>(n, 6)))
}

pub type TripleInput<S> = (Vec<Vec<S>>, Vec<Vec<S>>, Vec<S>, Multivector<S>);

pub fn triple_inputs<S: Coeff>() -> impl Strategy<Value = TripleInput<S>> {
    (1usize..=5)
        .prop_flat_map(|n| (Just(n), 1..=n))
        .prop_flat_map(|(n, k)| (Just(n), Just(k), 1..=k))
        .prop_flat_map(|(n, k, j)| (vectors::<S>(n, k), vectors::<S>(k, j), coeffs::<S>(1 << k), mv::<S>(n, 6)))
        .prop_filter("B nonzero", |(vs, _, _, m)| !Multivector::wedge_vectors(m.dim(), vs).unwrap().is_zero())
}

pub fn higher_inputs<S: Coeff>() -> impl Strategy<Value = (Vec<Vec<S>>, Multivector<S>, Multivector<S>)> {
    (1usize..=5, 1usize..=3).prop_flat_map(|(n, p)| (vectors::<S>(n, p), mv::<S>(n, 5), mv::<S>(n, 5)))
}

pub fn separated_inputs<S: Coeff>() -> impl Strategy<Value = (grassmann_core::LinearMap<S>, usize, Terms, Terms, Vec<S>)>
{
    (2usize..=5).prop_flat_map(|n| (Just(n), 1..n)).prop_flat_map(|(n, a)| {
        let terms = || prop::collection::vec((0u32..32, -3i64..=3, -3i64..=3), 1..=4);
        (invertible::<S>(n), Just(a), terms(), terms(), vector::<S>(n))
    })
}
