use super::*;
use grassmann_core::fermion::{
    annihilate, annihilate_blade, create, create_blade, operator_matrix, scom_apply, scom_direct, scom_expand,
    scom_expand_diagonal, scom_matrix, Bracket, NormalOrderedOperator, VennPartition,
};
use grassmann_core::{Blade, Gaussian, IndexTuple, Matrix, Multivector, Rational};
use proptest::prelude::*;
use std::collections::BTreeMap;

pub type Op = NormalOrderedOperator<Rational>;
pub type State = BTreeMap<Blade, i64>;

pub fn ket(k: Blade) -> State {
    BTreeMap::from([(k, 1)])
}

pub fn act(state: &State, f: impl Fn(Blade) -> Option<(i8, Blade)>) -> State {
    let mut out = State::new();
    for (&b, &c) in state {
        if let Some((s, t)) = f(b) {
            *out.entry(t).or_insert(0) += i64::from(s) * c;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

pub fn up(r: Blade) -> impl Fn(Blade) -> Option<(i8, Blade)> {
    move |s| create_blade(r, s)
}

pub fn down(r: Blade) -> impl Fn(Blade) -> Option<(i8, Blade)> {
    move |s| annihilate_blade(r, s)
}

pub fn combine(a: State, b: State, sign: i64) -> State {
    let mut out = a;
    for (t, c) in b {
        *out.entry(t).or_insert(0) += sign * c;
    }
    out.retain(|_, c| *c != 0);
    out
}

pub fn bracket_sign(i: Blade, j: Blade) -> i64 {
    if i.grade() * j.grade() % 2 == 1 {
        -1
    } else {
        1
    }
}

/// `[a+_i, a_j] v_k` by composing the blade actions.
pub fn dagger_first(i: Blade, j: Blade, k: Blade) -> State {
    let st = act(&act(&ket(k), down(j)), up(i));
    let ts = act(&act(&ket(k), up(i)), down(j));
    combine(st, ts, -bracket_sign(i, j))
}

/// `[a_i, a+_j] v_k` by composing the blade actions.
pub fn plain_first(i: Blade, j: Blade, k: Blade) -> State {
    let st = act(&act(&ket(k), up(j)), down(i));
    let ts = act(&act(&ket(k), down(i)), up(j));
    combine(st, ts, -bracket_sign(i, j))
}

pub fn as_state(op: &Op, k: Blade) -> State {
    op.apply_blade(k)
        .into_iter()
        .map(|(b, c)| {
            assert!(c.is_integer());
            (b, i64::try_from(c.to_integer()).unwrap())
        })
        .collect()
}

pub fn all(n: usize) -> Vec<Blade> {
    (0..1u32 << n).map(Blade::from_mask).collect()
}

pub fn scaled(k: Blade, c: i64) -> State {
    let mut s = ket(k);
    s.insert(k, c);
    s.retain(|_, c| *c != 0);
    s
}

pub fn expansions_match_composition_exhaustively() {
    let n = 5;
    for i in all(n) {
        for j in all(n) {
            let e7: Op = scom_expand(n, i, j, Bracket::DaggerFirst).unwrap();
            let e8: Op = scom_expand(n, i, j, Bracket::PlainFirst).unwrap();
            assert_eq!(e7.is_zero(), i.is_disjoint(j));
            for k in all(n) {
                let direct = dagger_first(i, j, k);
                assert_eq!(as_state(&e7, k), direct, "dagger first {i:?} {j:?} {k:?}");
                assert_eq!(as_state(&e8, k), plain_first(i, j, k), "plain first {i:?} {j:?} {k:?}");
                let closed = scom_direct(i, j, k).map(|(s, b)| scaled(b, s.into())).unwrap_or_default();
                assert_eq!(closed, direct, "closed form {i:?} {j:?} {k:?}");

                let p = VennPartition::new(i, j, k);
                let vanishing = !(j.minus(i | k)).is_scalar()
                    || !(i & k).minus(j).is_scalar()
                    || (!(i & j).minus(k).is_scalar() && !(i & j & k).is_scalar())
                    || i.is_disjoint(j);
                assert_eq!(direct.is_empty(), vanishing);
                assert_eq!(p.inputs(), (i, j, k));

                // the adjoint of one bracket is the other, up to sign
                let adj = dagger_first(i, j, k);
                for (t, c) in adj {
                    let back = plain_first(i, j, t);
                    assert_eq!(back.get(&k).copied().unwrap_or(0), -bracket_sign(i, j) * c);
                }
            }
        }
    }
}

pub fn diagonal_expansions_match_composition() {
    let n = 5;
    for i in all(n) {
        let plain: Op = scom_expand_diagonal(n, i, Bracket::PlainFirst).unwrap();
        let dagger: Op = scom_expand_diagonal(n, i, Bracket::DaggerFirst).unwrap();
        for k in all(n) {
            assert_eq!(as_state(&plain, k), plain_first(i, i, k));
            let d = dagger_first(i, i, k);
            assert_eq!(as_state(&dagger, k), d);
            let expected = if i.is_scalar() {
                State::new()
            } else if i.is_subset(k) {
                ket(k)
            } else if i.is_disjoint(k) {
                scaled(k, if i.grade() % 2 == 1 { 1 } else { -1 })
            } else {
                State::new()
            };
            assert_eq!(d, expected, "{i:?} {k:?}");
        }
    }
}

pub fn matrix_of(op: &Op) -> Matrix<Rational> {
    operator_matrix(op).unwrap()
}

pub fn expansions_match_matrix_composition() {
    for n in 1..=5 {
        let ups: Vec<Matrix<Rational>> = all(n).into_iter().map(|r| matrix_of(&Op::creation(n, r).unwrap())).collect();
        let downs: Vec<Matrix<Rational>> =
            all(n).into_iter().map(|r| matrix_of(&Op::annihilation(n, r).unwrap())).collect();
        let zero = Matrix::<Rational>::zeros(1 << n, 1 << n);
        for i in all(n) {
            for j in all(n) {
                let (pi, pj) = (i.grade(), j.grade());
                let (ui, di) = (&ups[i.mask() as usize], &downs[i.mask() as usize]);
                let (uj, dj) = (&ups[j.mask() as usize], &downs[j.mask() as usize]);
                let e7 = scom_matrix(ui, pi, dj, pj).unwrap();
                let e8 = scom_matrix(di, pi, uj, pj).unwrap();
                assert_eq!(matrix_of(&scom_expand(n, i, j, Bracket::DaggerFirst).unwrap()), e7);
                assert_eq!(matrix_of(&scom_expand(n, i, j, Bracket::PlainFirst).unwrap()), e8);
                assert_eq!(scom_matrix(di, pi, dj, pj).unwrap(), zero);
                assert_eq!(scom_matrix(ui, pi, uj, pj).unwrap(), zero);
                if i == j {
                    assert_eq!(matrix_of(&scom_expand_diagonal(n, i, Bracket::DaggerFirst).unwrap()), e7);
                    assert_eq!(matrix_of(&scom_expand_diagonal(n, i, Bracket::PlainFirst).unwrap()), e8);
                }
                // swapping the bracket, and taking adjoints
                let swapped = scom_matrix(dj, pj, ui, pi).unwrap();
                let sign = q(-bracket_sign(i, j));
                assert_eq!(e7, scale(&swapped, &sign));
                assert_eq!(e7.transpose(), scale(&e8, &sign));
            }
        }
    }
}

pub fn scale(m: &Matrix<Rational>, s: &Rational) -> Matrix<Rational> {
    let mut out = m.clone();
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            out.set(r, c, m.get(r, c) * s);
        }
    }
    out
}

pub fn brackets_with_the_same_indices_differ_when_indices_differ() {
    let n = 2;
    let (i, j) = (Blade::from_mask(0b01), Blade::from_mask(0b11));
    let e7 = matrix_of(&scom_expand(n, i, j, Bracket::DaggerFirst).unwrap());
    let e8 = matrix_of(&scom_expand(n, i, j, Bracket::PlainFirst).unwrap());
    assert_ne!(e7, scale(&e8, &q(-bracket_sign(i, j))));
    // equal on the diagonal
    let e7 = matrix_of(&scom_expand(n, j, j, Bracket::DaggerFirst).unwrap());
    let e8 = matrix_of(&scom_expand(n, j, j, Bracket::PlainFirst).unwrap());
    assert_eq!(e7, scale(&e8, &q(-bracket_sign(j, j))));
}

pub fn occupancy_and_vacancy_projectors() {
    let n = 4;
    let id = matrix_of(&Op::identity(n).unwrap());
    let m = |i: Blade| matrix_of(&Op::vacancy(n, i).unwrap());
    let nn = |i: Blade| matrix_of(&Op::occupancy(n, i).unwrap());
    for i in all(n) {
        for k in all(n) {
            let mv = as_state(&Op::vacancy(n, i).unwrap(), k);
            let nv = as_state(&Op::occupancy(n, i).unwrap(), k);
            assert_eq!(mv, if i.is_disjoint(k) { ket(k) } else { State::new() });
            assert_eq!(nv, if i.is_subset(k) { ket(k) } else { State::new() });
        }
        for j in all(n) {
            assert_eq!(m(i).mul(&m(j)).unwrap(), m(i | j));
            assert_eq!(nn(i).mul(&nn(j)).unwrap(), nn(i | j));
            assert_eq!(m(i).mul(&nn(j)).unwrap(), nn(j).mul(&m(i)).unwrap());
        }
        let singles = |f: &dyn Fn(Blade) -> Matrix<Rational>| {
            i.indices().fold(id.clone(), |acc, x| acc.mul(&f(Blade::vector(x).unwrap())).unwrap())
        };
        assert_eq!(singles(&m), m(i));
        assert_eq!(singles(&nn), nn(i));
        let mut from_n = Matrix::<Rational>::zeros(1 << n, 1 << n);
        let mut from_m = from_n.clone();
        for j in i.subsets() {
            let s = q(if j.grade() % 2 == 1 { -1 } else { 1 });
            from_n = add(&from_n, &scale(&nn(j), &s));
            from_m = add(&from_m, &scale(&m(j), &s));
        }
        assert_eq!(from_n, m(i));
        assert_eq!(from_m, nn(i));
    }
    for x in 1..=n as u8 {
        let v = Blade::vector(x).unwrap();
        assert_eq!(add(&m(v), &nn(v)), id);
    }
}

pub fn add(a: &Matrix<Rational>, b: &Matrix<Rational>) -> Matrix<Rational> {
    let mut out = a.clone();
    for r in 0..a.rows() {
        for c in 0..a.cols() {
            out.set(r, c, a.get(r, c) + b.get(r, c));
        }
    }
    out
}

pub fn tuple(v: &[u8]) -> IndexTuple {
    IndexTuple::new(v).unwrap()
}

pub fn products_of_like_operators() {
    let n = 4;
    let tuples: Vec<Vec<u8>> = (0u32..1 << n)
        .flat_map(|mask| {
            let idx: Vec<u8> = (1..=n as u8).filter(|x| mask & (1 << (x - 1)) != 0).collect();
            [idx.clone(), idx.into_iter().rev().collect()]
        })
        .collect();
    for r in &tuples {
        for s in &tuples {
            let joined: Vec<u8> = r.iter().chain(s).copied().collect();
            let reversed: Vec<u8> = s.iter().chain(r).copied().collect();
            let disjoint = r.iter().all(|x| !s.contains(x));
            for k in all(n) {
                let v = Mv::basis(n, k).unwrap();
                let up2 = create(&tuple(r), &create(&tuple(s), &v).unwrap()).unwrap();
                let down2 = annihilate(&tuple(r), &annihilate(&tuple(s), &v).unwrap()).unwrap();
                if disjoint {
                    assert_eq!(up2, create(&tuple(&joined), &v).unwrap());
                    assert_eq!(down2, annihilate(&tuple(&reversed), &v).unwrap());
                } else {
                    assert!(up2.is_zero() && down2.is_zero());
                }
            }
        }
    }
}

pub fn vacancy_and_occupancy_intertwine_with_duals() {
    let n = 4;
    for i in all(n) {
        let m = Op::vacancy(n, i).unwrap();
        let nn = Op::occupancy(n, i).unwrap();
        for k in all(n) {
            let v = Mv::basis(n, k).unwrap();
            for star in [Mv::hodge_right, Mv::hodge_left] {
                assert_eq!(star(&m.apply(&v).unwrap()), nn.apply(&star(&v)).unwrap());
                assert_eq!(star(&nn.apply(&v).unwrap()), m.apply(&star(&v)).unwrap());
            }
        }
    }
}

pub fn blade_in(n: usize) -> impl Strategy<Value = Blade> {
    (0u32..1 << n).prop_map(Blade::from_mask)
}

pub fn bracket_case<S: Coeff>() -> impl Strategy<Value = (Blade, Blade, Multivector<S>)> {
    (1usize..=8).prop_flat_map(|n| (blade_in(n), blade_in(n), mv::<S>(n, 6)))
}

pub fn bracket_on_states<S: Coeff>(i: Blade, j: Blade, m: &Multivector<S>) -> Result<(), TestCaseError> {
    let n = m.dim();
    let ui = NormalOrderedOperator::<S>::creation(n, i).unwrap();
    let dj = NormalOrderedOperator::<S>::annihilation(n, j).unwrap();
    let di = NormalOrderedOperator::<S>::annihilation(n, i).unwrap();
    let uj = NormalOrderedOperator::<S>::creation(n, j).unwrap();
    let e7 = scom_expand::<S>(n, i, j, Bracket::DaggerFirst).unwrap();
    let e8 = scom_expand::<S>(n, i, j, Bracket::PlainFirst).unwrap();
    prop_assert_eq!(e7.apply(m).unwrap(), scom_apply(&ui, &dj, m).unwrap());
    prop_assert_eq!(e8.apply(m).unwrap(), scom_apply(&di, &uj, m).unwrap());
    prop_assert!(scom_apply(&ui, &uj, m).unwrap().is_zero());
    prop_assert!(scom_apply(&di, &dj, m).unwrap().is_zero());
    // a single term of the closed form per basis blade
    let mut closed = Multivector::<S>::zero(n).unwrap();
    for (k, c) in m.terms() {
        if let Some((s, b)) = scom_direct(i, j, k) {
            closed = closed + Multivector::basis(n, b).unwrap().scale(&(c.clone() * S::from_i64(s.into())));
        }
    }
    prop_assert_eq!(closed, e7.apply(m).unwrap());
    Ok(())
}
