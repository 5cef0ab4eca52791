//! Deciding whether a multivector is simple (a blade).
//!
//! Deterministic deciders: equality of inner and outer spaces, the first- and
//! second-order Cartan criteria, and Plücker relation systems. A seeded sampler
//! gives a one-sided check based on contracting random blades into `H`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::{self, Write as _};
use core::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::index::{blades_of_grade, Blade};
use crate::multivector::Multivector;
use crate::scalar::Scalar;
use crate::spaces::{inner_space, outer_space};

/// Upper bound on the number of `(j, k)` pairs a relation system may enumerate.
pub const MAX_PLUCKER_PAIRS: u128 = 4_000_000;

/// `true` iff `i(M) = o(M)`. Zero is rejected rather than declared simple.
pub fn is_simple<S: Scalar>(m: &Multivector<S>) -> Result<bool> {
    if m.is_zero() {
        return Err(Error::ZeroMultivector);
    }
    Ok(inner_space(m)? == outer_space(m)?)
}

/// Outcome of the three equivalent Cartan-type criteria.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CartanVerdict {
    pub i: bool,
    pub ii: bool,
    pub iii: bool,
}

impl CartanVerdict {
    pub fn all(&self) -> bool {
        self.i && self.ii && self.iii
    }

    pub fn agree(&self) -> bool {
        self.i == self.ii && self.ii == self.iii
    }
}

fn homogeneous_grade<S: Scalar>(h: &Multivector<S>) -> Result<usize> {
    if h.is_zero() {
        return Err(Error::ZeroMultivector);
    }
    h.homogeneous_grade().ok_or(Error::NotHomogeneous)
}

fn basis_of_grade<S: Scalar>(n: usize, g: Option<usize>) -> Result<Vec<Multivector<S>>> {
    match g {
        Some(g) if g <= n => blades_of_grade(n, g).into_iter().map(|b| Multivector::basis(n, b)).collect(),
        _ => Ok(Vec::new()),
    }
}

/// Criteria with `F` ranging over a basis of grade `p - d` and `G` over grade `p + d`:
/// (i) `(F _| H) ^ H = 0`, (ii) `(H _| G) _| H = 0`, (iii) `<F _| H, H _| G> = 0`.
fn cartan<S: Scalar>(h: &Multivector<S>, p: usize, d: usize) -> Result<CartanVerdict> {
    let n = h.dim();
    let fs: Vec<Multivector<S>> =
        basis_of_grade::<S>(n, p.checked_sub(d))?.iter().map(|f| f.lcontr(h)).collect::<Result<_>>()?;
    let gs: Vec<Multivector<S>> =
        basis_of_grade::<S>(n, Some(p + d))?.iter().map(|g| h.lcontr(g)).collect::<Result<_>>()?;
    let mut i = true;
    for fh in &fs {
        if !fh.wedge(h)?.is_zero() {
            i = false;
            break;
        }
    }
    let mut ii = true;
    for hg in &gs {
        if !hg.lcontr(h)?.is_zero() {
            ii = false;
            break;
        }
    }
    let mut iii = true;
    'outer: for fh in fs.iter().filter(|x| !x.is_zero()) {
        for hg in &gs {
            if !fh.inner(hg)?.is_zero() {
                iii = false;
                break 'outer;
            }
        }
    }
    Ok(CartanVerdict { i, ii, iii })
}

/// First-order criteria over bases of grades `p - 1` and `p + 1`.
pub fn cartan_first_order<S: Scalar>(h: &Multivector<S>) -> Result<CartanVerdict> {
    let p = homogeneous_grade(h)?;
    cartan(h, p, 1)
}

/// Second-order criteria over bases of grades `p - 2` and `p + 2`; grades below 2 are simple.
pub fn cartan_second_order<S: Scalar>(h: &Multivector<S>) -> Result<CartanVerdict> {
    let p = homogeneous_grade(h)?;
    if p < 2 {
        return Ok(CartanVerdict { i: true, ii: true, iii: true });
    }
    cartan(h, p, 2)
}

/// Result of [`eastwood_sample`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EastwoodReport {
    /// `false` proves `H` is not simple; `true` is only evidence.
    pub passed: bool,
    pub trials: usize,
    /// Trials where `B _| H` was nonzero and got tested.
    pub checked: usize,
    /// Trials where `B _| H` vanished.
    pub vacuous: usize,
}

/// Draws random `r`-blades `B` (wedges of vectors with entries in `-3..=3`) and checks that
/// every nonzero `B _| H` is simple. Stops at the first failure.
pub fn eastwood_sample<S: Scalar>(h: &Multivector<S>, r: usize, trials: usize, seed: u64) -> Result<EastwoodReport> {
    let p = homogeneous_grade(h)?;
    if p < 3 || r == 0 || r > p - 2 {
        return Err(Error::Domain(alloc::format!(
            "sampling needs grade p >= 3 and 1 <= r <= p - 2, got p = {p}, r = {r}"
        )));
    }
    let n = h.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = EastwoodReport { passed: true, trials, checked: 0, vacuous: 0 };
    for _ in 0..trials {
        let vectors: Vec<Vec<S>> =
            (0..r).map(|_| (0..n).map(|_| S::from_i64(rng.gen_range(-3..=3))).collect()).collect();
        let b = Multivector::wedge_vectors(n, &vectors)?;
        let c = b.lcontr(h)?;
        if c.is_zero() {
            report.vacuous += 1;
            continue;
        }
        report.checked += 1;
        if !is_simple(&c)? {
            report.passed = false;
            break;
        }
    }
    Ok(report)
}

/// The four ways of writing the Plücker system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PluckerForm {
    /// `sum_{k in K \ J} (-1)^<J^K|k> l_{J u k} l_{K \ k}`, `|J| = p - 1`, `|K| = p + 1`.
    Classical,
    /// `sum_i (-1)^i l_{J k_i} l_{K \ k_i}` with signed, possibly unordered, indices.
    ClassicalSigned,
    /// `sum_{K2 in K \ J} (-1)^<J^K|K2> l_{J u K2} l_{K \ K2}`, `|J| = p - 2`, `|K| = p + 2`.
    Reduced,
    /// `sum_{i<l} (-1)^(i+l) l_{J k_i k_l} l_{K \ k_i k_l}` with signed indices.
    ReducedExpanded,
}

impl PluckerForm {
    pub const ALL: [PluckerForm; 4] =
        [PluckerForm::Classical, PluckerForm::ClassicalSigned, PluckerForm::Reduced, PluckerForm::ReducedExpanded];

    pub fn name(self) -> &'static str {
        match self {
            PluckerForm::Classical => "classical",
            PluckerForm::ClassicalSigned => "classical-signed",
            PluckerForm::Reduced => "reduced",
            PluckerForm::ReducedExpanded => "reduced-expanded",
        }
    }

    /// Size difference between `J` and `p`.
    fn order(self) -> usize {
        match self {
            PluckerForm::Classical | PluckerForm::ClassicalSigned => 1,
            PluckerForm::Reduced | PluckerForm::ReducedExpanded => 2,
        }
    }
}

impl fmt::Display for PluckerForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PluckerForm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        PluckerForm::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Domain(alloc::format!("unknown relation form `{s}`")))
    }
}

/// `coeff * l_first * l_second` with `first <= second`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub first: Blade,
    pub second: Blade,
    pub coeff: i64,
}

/// A quadratic relation `sum coeff * l_first * l_second = 0` among the coordinates of a
/// grade-`p` multivector in dimension `n`, kept in canonical form: like monomials combined,
/// zeros dropped, monomials sorted, leading coefficient positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PluckerRelation {
    pub p: usize,
    pub n: usize,
    monomials: Vec<Monomial>,
}

impl PluckerRelation {
    /// Canonicalizes arbitrary terms; `None` when they cancel completely.
    pub fn from_terms(p: usize, n: usize, terms: impl IntoIterator<Item = (i64, Blade, Blade)>) -> Option<Self> {
        let mut ms: Vec<Monomial> = terms
            .into_iter()
            .filter(|t| t.0 != 0)
            .map(|(c, a, b)| {
                let (first, second) = if a <= b { (a, b) } else { (b, a) };
                Monomial { first, second, coeff: c }
            })
            .collect();
        ms.sort();
        let mut merged: Vec<Monomial> = Vec::with_capacity(ms.len());
        for m in ms {
            match merged.last_mut() {
                Some(last) if (last.first, last.second) == (m.first, m.second) => last.coeff += m.coeff,
                _ => merged.push(m),
            }
        }
        merged.retain(|m| m.coeff != 0);
        if merged.is_empty() {
            return None;
        }
        if merged[0].coeff < 0 {
            for m in &mut merged {
                m.coeff = -m.coeff;
            }
        }
        Some(PluckerRelation { p, n, monomials: merged })
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    /// The relation divided by the gcd of its coefficients.
    pub fn primitive(&self) -> Self {
        let g = self.monomials.iter().fold(0i64, |g, m| num_integer::gcd(g, m.coeff));
        let mut out = self.clone();
        if g > 1 {
            for m in &mut out.monomials {
                m.coeff /= g;
            }
        }
        out
    }

    pub fn evaluate<S: Scalar>(&self, h: &Multivector<S>) -> S {
        self.monomials.iter().fold(S::zero(), |acc, m| {
            let v = h.coeff(m.first) * h.coeff(m.second);
            acc + S::from_i64(m.coeff) * v
        })
    }
}

fn fmt_indices(b: Blade, out: &mut String) {
    out.push_str("l{");
    for (k, i) in b.indices().enumerate() {
        if k > 0 {
            out.push(',');
        }
        let _ = write!(out, "{i}");
    }
    out.push('}');
}

/// Canonical text such as `+l{1,2}*l{3,4} -l{1,3}*l{2,4} +l{1,4}*l{2,3} = 0`.
impl fmt::Display for PluckerRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        for (k, m) in self.monomials.iter().enumerate() {
            if k > 0 {
                s.push(' ');
            }
            s.push(if m.coeff < 0 { '-' } else { '+' });
            if m.coeff.abs() != 1 {
                let _ = write!(s, "{}*", m.coeff.abs());
            }
            fmt_indices(m.first, &mut s);
            s.push('*');
            fmt_indices(m.second, &mut s);
        }
        write!(f, "{s} = 0")
    }
}

/// `lambda_{r}` for a sequence of indices: sign of sorting and the sorted blade, or `None`
/// on a repeated index.
fn signed_coordinate(seq: &[u8]) -> Option<(i64, Blade)> {
    let mut inversions = 0usize;
    let mut mask = 0u32;
    for (a, &x) in seq.iter().enumerate() {
        let bit = 1u32 << (x - 1);
        if mask & bit != 0 {
            return None;
        }
        mask |= bit;
        inversions += seq[a + 1..].iter().filter(|&&y| y < x).count();
    }
    Some((if inversions % 2 == 0 { 1 } else { -1 }, Blade::from_mask(mask)))
}

fn parity(k: u32) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The relation contributed by one `(J, K)` pair; `None` if it is trivial or the sizes do not fit.
pub fn plucker_relation(p: usize, n: usize, form: PluckerForm, j: Blade, k: Blade) -> Option<PluckerRelation> {
    let d = form.order();
    if p < d || j.grade() != p - d || k.grade() != p + d || j.max_index() > n || k.max_index() > n {
        return None;
    }
    let jk = j ^ k;
    let kk: Vec<u8> = k.indices().collect();
    let js: Vec<u8> = j.indices().collect();
    let mut terms: Vec<(i64, Blade, Blade)> = Vec::new();
    match form {
        PluckerForm::Classical => {
            for x in k.minus(j).indices() {
                let kx = Blade::from_mask(1 << (x - 1));
                terms.push((parity(jk.pairs_gt(kx)), j | kx, k.minus(kx)));
            }
        }
        PluckerForm::ClassicalSigned => {
            for (i, &x) in kk.iter().enumerate() {
                let mut seq = js.clone();
                seq.push(x);
                if let Some((s, b)) = signed_coordinate(&seq) {
                    let rest = k.minus(Blade::from_mask(1 << (x - 1)));
                    terms.push((parity(i as u32) * s, b, rest));
                }
            }
        }
        PluckerForm::Reduced => {
            for k2 in k.minus(j).subsets().filter(|b| b.grade() == 2) {
                terms.push((parity(jk.pairs_gt(k2)), j | k2, k.minus(k2)));
            }
        }
        PluckerForm::ReducedExpanded => {
            for i in 0..kk.len() {
                for l in i + 1..kk.len() {
                    let mut seq = js.clone();
                    seq.push(kk[i]);
                    seq.push(kk[l]);
                    if let Some((s, b)) = signed_coordinate(&seq) {
                        let pair = Blade::from_mask((1 << (kk[i] - 1)) | (1 << (kk[l] - 1)));
                        terms.push((parity((i + l) as u32) * s, b, k.minus(pair)));
                    }
                }
            }
        }
    }
    PluckerRelation::from_terms(p, n, terms)
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Every nontrivial relation of the chosen form, one per `(J, K)` pair, in pair order.
pub fn plucker_generate(p: usize, n: usize, form: PluckerForm) -> Result<Vec<PluckerRelation>> {
    Ok(plucker_generate_sourced(p, n, form)?.into_iter().map(|(_, _, r)| r).collect())
}

/// Like [`plucker_generate`], keeping the `(J, K)` pair each relation came from.
pub fn plucker_generate_sourced(p: usize, n: usize, form: PluckerForm) -> Result<Vec<(Blade, Blade, PluckerRelation)>> {
    crate::error::check_dim(n)?;
    if p == 0 || p > n {
        return Err(Error::Domain(alloc::format!("need 1 <= p <= n, got p = {p}, n = {n}")));
    }
    let d = form.order();
    if p < d {
        return Ok(Vec::new());
    }
    let pairs = binomial(n, p - d) * binomial(n, p + d);
    if pairs > MAX_PLUCKER_PAIRS {
        return Err(Error::Resource(alloc::format!("{pairs} index pairs exceed the limit of {MAX_PLUCKER_PAIRS}")));
    }
    let js = blades_of_grade(n, p - d);
    let ks = blades_of_grade(n, p + d);
    let mut out = Vec::new();
    for &j in &js {
        for &k in &ks {
            if let Some(r) = plucker_relation(p, n, form, j, k) {
                out.push((j, k, r));
            }
        }
    }
    Ok(out)
}

/// Removes repeated relations (canonical form already fixes the global sign); sorted output.
pub fn plucker_dedupe(rels: impl IntoIterator<Item = PluckerRelation>) -> Vec<PluckerRelation> {
    let mut v: Vec<PluckerRelation> = rels.into_iter().collect();
    v.sort();
    v.dedup();
    v
}

/// Histogram `(monomial count, number of relations)`, ascending by count.
pub fn plucker_histogram(rels: &[PluckerRelation]) -> Vec<(usize, usize)> {
    let mut counts = alloc::collections::BTreeMap::new();
    for r in rels {
        *counts.entry(r.len()).or_insert(0usize) += 1;
    }
    counts.into_iter().collect()
}

/// Value of each relation at the coordinates of `H`.
pub fn plucker_evaluate<S: Scalar>(rels: &[PluckerRelation], h: &Multivector<S>) -> Result<Vec<S>> {
    let grade = if h.is_zero() { None } else { Some(h.homogeneous_grade().ok_or(Error::NotHomogeneous)?) };
    for r in rels {
        if r.n != h.dim() {
            return Err(Error::DimensionMismatch { left: r.n, right: h.dim() });
        }
        if let Some(g) = grade {
            if g != r.p {
                return Err(Error::WrongGrade { expected: r.p, found: g });
            }
        }
    }
    Ok(rels.iter().map(|r| r.evaluate(h)).collect())
}

/// Whether a homogeneous `H` satisfies every relation of the given deduplicated system.
pub fn plucker_is_simple<S: Scalar>(h: &Multivector<S>, form: PluckerForm) -> Result<bool> {
    let p = homogeneous_grade(h)?;
    if p == 0 {
        return Ok(true);
    }
    let rels = plucker_dedupe(plucker_generate(p, h.dim(), form)?);
    Ok(plucker_evaluate(&rels, h)?.iter().all(|v| v.is_zero()))
}
