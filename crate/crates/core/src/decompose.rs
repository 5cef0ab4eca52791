//! Blade factorizations `M = B ^ N`, blade carvings `M = N _| B` and balanced blade decompositions.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::index::Blade;
use crate::linalg::{Matrix, Subspace};
use crate::multivector::Multivector;
use crate::scalar::Scalar;
use crate::spaces::{inner_space, is_blade, outer_space};

/// Largest exterior algebra `Lambda V` (by number of basis elements) an exact solve will set up.
pub const MAX_SOLVE_BASIS: usize = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct FactorFlags {
    pub tight: bool,
    pub orthogonal: bool,
    pub maximal: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct CarveFlags {
    pub tight: bool,
    pub internal: bool,
    pub minimal: bool,
}

/// `M = b ^ n` with `b` a nonzero blade.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization<S> {
    pub b: Multivector<S>,
    pub n: Multivector<S>,
    pub flags: FactorFlags,
}

/// `M = n _| b` with `b` a nonzero blade.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Carving<S> {
    pub n: Multivector<S>,
    pub b: Multivector<S>,
    pub flags: CarveFlags,
}

/// `[B]`, the span of a nonzero blade.
pub fn blade_span<S: Scalar>(b: &Multivector<S>) -> Result<Subspace<S>> {
    if !is_blade(b)? {
        return Err(Error::NotABlade);
    }
    inner_space(b)
}

fn nonzero<S: Scalar>(m: &Multivector<S>) -> Result<()> {
    if m.is_zero() {
        Err(Error::ZeroMultivector)
    } else {
        Ok(())
    }
}

fn divide_by_norm<S: Scalar>(m: &Multivector<S>, b: &Multivector<S>) -> Multivector<S> {
    let inv = S::one() / b.norm_sqr();
    m.scale(&inv)
}

/// Maximal orthogonal factorization: `B` is the wedge of the canonical basis of `i(M)`
/// (`B = 1` when `i(M) = {0}`) and `N = (B _| M) / |B|^2`.
pub fn factor_maximal_orthogonal<S: Scalar>(m: &Multivector<S>) -> Result<Factorization<S>> {
    nonzero(m)?;
    let b = inner_space(m)?.blade()?;
    let n = divide_by_norm(&b.lcontr(m)?, &b);
    let flags = classify_factorization(m, &b, &n)?;
    Ok(Factorization { b, n, flags })
}

/// Orthogonal factorization with a given inner blade: `N = (B _| M) / |B|^2`.
pub fn factor_orthogonal_with<S: Scalar>(m: &Multivector<S>, b: &Multivector<S>) -> Result<Factorization<S>> {
    let span = blade_span(b)?;
    if !span.is_subspace_of(&inner_space(m)?)? {
        return Err(Error::NotInnerBlade);
    }
    let n = divide_by_norm(&b.lcontr(m)?, b);
    let flags = classify_factorization(m, b, &n)?;
    Ok(Factorization { b: b.clone(), n, flags })
}

/// Basis `w_t` of `Lambda V`: wedges of the canonical basis of `V` over all index subsets.
fn exterior_basis<S: Scalar>(v: &Subspace<S>) -> Result<Vec<Multivector<S>>> {
    let k = v.rank();
    if k >= usize::BITS as usize || (1usize << k) > MAX_SOLVE_BASIS {
        return Err(Error::Resource(format!(
            "exterior algebra of a {k}-dimensional subspace is too large to solve over"
        )));
    }
    let n = v.ambient();
    let vecs: Vec<Multivector<S>> = v.basis().iter().map(|x| Multivector::vector(x)).collect::<Result<_>>()?;
    let mut out = Vec::with_capacity(1 << k);
    for mask in 0u32..(1u32 << k) {
        let mut w = Multivector::one(n)?;
        for (i, x) in vecs.iter().enumerate() {
            if mask & (1 << i) != 0 {
                w = w.wedge(x)?;
            }
        }
        out.push(w);
    }
    Ok(out)
}

/// Solves `sum_t c_t cols[t] = target` exactly; `None` when inconsistent.
fn solve_combination<S: Scalar>(cols: &[Multivector<S>], target: &Multivector<S>) -> Result<Option<Vec<S>>> {
    let mut index: BTreeMap<Blade, usize> = BTreeMap::new();
    for m in cols.iter().chain(core::iter::once(target)) {
        for (b, _) in m.terms() {
            let next = index.len();
            index.entry(b).or_insert(next);
        }
    }
    if index.is_empty() {
        return Ok(Some(vec![S::zero(); cols.len()]));
    }
    let mut a = Matrix::zeros(index.len(), cols.len());
    for (j, m) in cols.iter().enumerate() {
        for (b, c) in m.terms() {
            a.set(index[&b], j, c.clone());
        }
    }
    let mut rhs = vec![S::zero(); index.len()];
    for (b, c) in target.terms() {
        rhs[index[&b]] = c.clone();
    }
    a.solve(&rhs)
}

fn combine<S: Scalar>(n: usize, basis: &[Multivector<S>], coeffs: &[S]) -> Result<Multivector<S>> {
    let mut acc = Multivector::zero(n)?;
    for (w, c) in basis.iter().zip(coeffs) {
        if !c.is_zero() {
            acc = &acc + &w.scale(c);
        }
    }
    Ok(acc)
}

fn check_complement<S: Scalar>(target: &Subspace<S>, v: &Subspace<S>, what: &'static str) -> Result<()> {
    if v.ambient() != target.ambient() {
        return Err(Error::DimensionMismatch { left: target.ambient(), right: v.ambient() });
    }
    if target.rank() + v.rank() != target.ambient() || target.sum(v)?.rank() != target.ambient() {
        return Err(Error::NotAComplement(what));
    }
    Ok(())
}

/// The unique `N` in `Lambda V` with `M = B ^ N`, for an inner blade `B` and a complement `V` of `[B]`.
pub fn factor_in_complement<S: Scalar>(
    m: &Multivector<S>,
    b: &Multivector<S>,
    v: &Subspace<S>,
) -> Result<Multivector<S>> {
    let span = blade_span(b)?;
    if span.ambient() != m.dim() {
        return Err(Error::DimensionMismatch { left: m.dim(), right: span.ambient() });
    }
    if !span.is_subspace_of(&inner_space(m)?)? {
        return Err(Error::NotInnerBlade);
    }
    check_complement(&span, v, "V must be a complement of [B]")?;
    let basis = exterior_basis(v)?;
    let images: Vec<Multivector<S>> = basis.iter().map(|w| b.wedge(w)).collect::<Result<_>>()?;
    let c = solve_combination(&images, m)?.ok_or(Error::NotAFactorization)?;
    combine(m.dim(), &basis, &c)
}

/// Flags of the factorization `M = B ^ N`.
pub fn classify_factorization<S: Scalar>(
    m: &Multivector<S>,
    b: &Multivector<S>,
    n: &Multivector<S>,
) -> Result<FactorFlags> {
    let span = blade_span(b)?;
    if &b.wedge(n)? != m {
        return Err(Error::NotAFactorization);
    }
    let on = outer_space(n)?;
    Ok(FactorFlags {
        tight: on.intersection(&span)?.is_zero(),
        orthogonal: on.is_subspace_of(&span.orth_complement())?,
        maximal: span == inner_space(m)?,
    })
}

/// Minimal internal carving: `B` is the wedge of the canonical basis of `o(M)` and
/// `N = (B |_ M) / |B|^2`.
pub fn carve_minimal_internal<S: Scalar>(m: &Multivector<S>) -> Result<Carving<S>> {
    nonzero(m)?;
    let b = outer_space(m)?.blade()?;
    let n = divide_by_norm(&b.rcontr(m)?, &b);
    let flags = classify_carving(m, &n, &b)?;
    Ok(Carving { n, b, flags })
}

/// Internal carving with a given outer blade: `N = (B |_ M) / |B|^2`.
pub fn carve_internal_with<S: Scalar>(m: &Multivector<S>, b: &Multivector<S>) -> Result<Carving<S>> {
    let span = blade_span(b)?;
    if !outer_space(m)?.is_subspace_of(&span)? {
        return Err(Error::NotOuterBlade);
    }
    let n = divide_by_norm(&b.rcontr(m)?, b);
    let flags = classify_carving(m, &n, b)?;
    Ok(Carving { n, b: b.clone(), flags })
}

/// The unique `N` in `Lambda V` with `M = N _| B`, for an outer blade `B` and a complement
/// `V` of `[B]^perp`.
pub fn carve_in_complement<S: Scalar>(
    m: &Multivector<S>,
    b: &Multivector<S>,
    v: &Subspace<S>,
) -> Result<Multivector<S>> {
    let span = blade_span(b)?;
    if span.ambient() != m.dim() {
        return Err(Error::DimensionMismatch { left: m.dim(), right: span.ambient() });
    }
    if !outer_space(m)?.is_subspace_of(&span)? {
        return Err(Error::NotOuterBlade);
    }
    check_complement(&span.orth_complement(), v, "V must be a complement of [B]^perp")?;
    let basis = exterior_basis(v)?;
    let images: Vec<Multivector<S>> = basis.iter().map(|w| w.lcontr(b)).collect::<Result<_>>()?;
    // N _| B is conjugate linear in N, so the solve yields conj(c_t)
    let d = solve_combination(&images, m)?.ok_or(Error::NotACarving)?;
    let c: Vec<S> = d.iter().map(S::conj).collect();
    combine(m.dim(), &basis, &c)
}

/// Flags of the carving `M = N _| B`.
pub fn classify_carving<S: Scalar>(m: &Multivector<S>, n: &Multivector<S>, b: &Multivector<S>) -> Result<CarveFlags> {
    let span = blade_span(b)?;
    if &n.lcontr(b)? != m {
        return Err(Error::NotACarving);
    }
    let on = outer_space(n)?;
    Ok(CarveFlags {
        tight: on.intersection(&span.orth_complement())?.is_zero(),
        internal: on.is_subspace_of(&span)?,
        minimal: span == outer_space(m)?,
    })
}

/// Balanced blade decomposition `M = sum_t B ^ A_t`.
///
/// `B ^ N` is the maximal orthogonal factorization and `N = sum_t A_t` is the expansion of `N`
/// in the wedge basis built from the canonical basis of `o(N)`.
pub fn balanced_blade_decomposition<S: Scalar>(m: &Multivector<S>) -> Result<Vec<Multivector<S>>> {
    let f = factor_maximal_orthogonal(m)?;
    let basis = exterior_basis(&outer_space(&f.n)?)?;
    let c = solve_combination(&basis, &f.n)?
        .ok_or_else(|| Error::Domain("N does not lie in the exterior algebra of o(N)".into()))?;
    let mut out = Vec::new();
    for (w, ct) in basis.iter().zip(&c) {
        if !ct.is_zero() {
            out.push(f.b.wedge(&w.scale(ct))?);
        }
    }
    Ok(out)
}

/// Largest `k` with `H ^ ... ^ H` (`k` factors) nonzero, for a nonzero bivector `H`.
pub fn bivector_rank<S: Scalar>(h: &Multivector<S>) -> Result<usize> {
    match h.homogeneous_grade() {
        None if h.is_zero() => return Err(Error::ZeroMultivector),
        None => return Err(Error::NotHomogeneous),
        Some(2) => {}
        Some(g) => return Err(Error::WrongGrade { expected: 2, found: g }),
    }
    let mut k = 1;
    let mut power = h.clone();
    loop {
        power = power.wedge(h)?;
        if power.is_zero() {
            return Ok(k);
        }
        k += 1;
    }
}
