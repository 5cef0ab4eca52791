//! Index tuples, permutation signs and basis-blade bitsets.
//!
//! An [`IndexTuple`] is a sequence of pairwise distinct indices in `1..=q`
//! that need not be increasing. A [`Blade`] is the set of indices of a
//! canonical basis multivector `v_{i1} ^ ... ^ v_{ip}` with `i1 < ... < ip`,
//! stored as a bitset where bit `i - 1` stands for index `i`.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{Error, Result, MAX_DIM};

/// A tuple of pairwise distinct indices, each in `1..=32`. The empty tuple is allowed.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IndexTuple(Vec<u8>);

impl IndexTuple {
    pub fn new(entries: &[u8]) -> Result<Self> {
        let mut seen = 0u64;
        for &i in entries {
            if i == 0 || usize::from(i) > MAX_DIM {
                return Err(Error::IndexOutOfRange { index: i.into(), dim: MAX_DIM });
            }
            if seen & (1 << i) != 0 {
                return Err(Error::RepeatedIndex(i.into()));
            }
            seen |= 1 << i;
        }
        Ok(IndexTuple(entries.to_vec()))
    }

    /// Builds a tuple whose entries must be strictly increasing.
    pub fn increasing(entries: &[u8]) -> Result<Self> {
        let t = Self::new(entries)?;
        if !t.is_increasing() {
            return Err(Error::NotIncreasing);
        }
        Ok(t)
    }

    pub fn empty() -> Self {
        IndexTuple(Vec::new())
    }

    pub fn entries(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_increasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] < w[1])
    }

    /// Checks every entry is at most `q`.
    pub fn check_bound(&self, q: usize) -> Result<()> {
        match self.0.iter().find(|&&i| usize::from(i) > q) {
            Some(&i) => Err(Error::IndexOutOfRange { index: i.into(), dim: q }),
            None => Ok(()),
        }
    }

    /// Unordered concatenation `rs`. Fails if the tuples share an index.
    pub fn concat(&self, other: &IndexTuple) -> Result<IndexTuple> {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        IndexTuple::new(&v)
    }

    /// The ascending reordering of the tuple together with the sign of the
    /// sorting permutation.
    pub fn sort_with_sign(&self) -> (IndexTuple, i8) {
        let mut v = self.0.clone();
        let mut sign = 1i8;
        // insertion sort, one sign flip per adjacent transposition
        for i in 1..v.len() {
            let mut j = i;
            while j > 0 && v[j - 1] > v[j] {
                v.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        (IndexTuple(v), sign)
    }

    pub fn to_blade(&self) -> Blade {
        Blade(self.0.iter().fold(0u32, |m, &i| m | 1 << (i - 1)))
    }

    /// Ascending reordering as a blade, with the sign of the reordering.
    pub fn to_signed_blade(&self) -> (i8, Blade) {
        let (_, sign) = self.sort_with_sign();
        (sign, self.to_blade())
    }
}

impl fmt::Debug for IndexTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, ")")
    }
}

impl From<Blade> for IndexTuple {
    fn from(b: Blade) -> Self {
        IndexTuple(b.indices().collect())
    }
}

/// All strictly increasing `p`-tuples from `1..=q`, in lexicographic order.
/// For `p = 0` this is the single empty tuple.
pub fn increasing_tuples(q: usize, p: usize) -> Result<Vec<IndexTuple>> {
    if q > MAX_DIM {
        return Err(Error::DimensionCap(q));
    }
    if p > q {
        return Err(Error::Domain(alloc::format!("tuple length {p} exceeds {q}")));
    }
    let mut out = Vec::new();
    let mut cur: Vec<u8> = (1..=p as u8).collect();
    loop {
        out.push(IndexTuple(cur.clone()));
        // advance to the next combination
        let mut k = p;
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            if usize::from(cur[k]) < q - (p - 1 - k) {
                cur[k] += 1;
                for l in k + 1..p {
                    cur[l] = cur[l - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Number of pairs `(i, j)` with `i` in `r`, `j` in `s` and `i > j`.
pub fn pairs_gt(r: &IndexTuple, s: &IndexTuple) -> usize {
    r.0.iter().map(|&i| s.0.iter().filter(|&&j| i > j).count()).sum()
}

fn require_increasing(t: &IndexTuple) -> Result<Blade> {
    if t.is_increasing() {
        Ok(t.to_blade())
    } else {
        Err(Error::NotIncreasing)
    }
}

/// Ordered union of two increasing tuples.
pub fn union(i: &IndexTuple, j: &IndexTuple) -> Result<IndexTuple> {
    Ok((require_increasing(i)? | require_increasing(j)?).into())
}

/// Ordered intersection of two increasing tuples.
pub fn intersection(i: &IndexTuple, j: &IndexTuple) -> Result<IndexTuple> {
    Ok((require_increasing(i)? & require_increasing(j)?).into())
}

/// Ordered difference `i \ j` of two increasing tuples.
pub fn difference(i: &IndexTuple, j: &IndexTuple) -> Result<IndexTuple> {
    Ok(require_increasing(i)?.minus(require_increasing(j)?).into())
}

/// Ordered symmetric difference of two increasing tuples.
pub fn symmetric_difference(i: &IndexTuple, j: &IndexTuple) -> Result<IndexTuple> {
    Ok((require_increasing(i)? ^ require_increasing(j)?).into())
}

/// `(1, ..., q) \ i`.
pub fn complement(i: &IndexTuple, q: usize) -> Result<IndexTuple> {
    i.check_bound(q)?;
    Ok(require_increasing(i)?.complement(q).into())
}

/// A set of indices in `1..=32`; names the canonical basis blade with those
/// indices in ascending order. Ordered by grade, then lexicographically.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Blade(u32);

impl Blade {
    pub const SCALAR: Blade = Blade(0);

    pub const fn from_mask(mask: u32) -> Self {
        Blade(mask)
    }

    /// Blade from distinct indices given in any order (the order is ignored).
    pub fn from_indices(indices: &[u8]) -> Result<Self> {
        Ok(IndexTuple::new(indices)?.to_blade())
    }

    /// The blade of a single basis vector.
    pub fn vector(i: u8) -> Result<Self> {
        Self::from_indices(&[i])
    }

    /// The blade `1..=n`.
    pub fn pseudoscalar(n: usize) -> Self {
        Blade::full(n)
    }

    fn full(n: usize) -> Self {
        if n >= 32 {
            Blade(u32::MAX)
        } else {
            Blade((1u32 << n) - 1)
        }
    }

    pub const fn mask(self) -> u32 {
        self.0
    }

    pub const fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_scalar(self) -> bool {
        self.0 == 0
    }

    /// Indices in ascending order.
    pub fn indices(self) -> impl Iterator<Item = u8> + Clone {
        let mut m = self.0;
        core::iter::from_fn(move || {
            if m == 0 {
                None
            } else {
                let i = m.trailing_zeros();
                m &= m - 1;
                Some(i as u8 + 1)
            }
        })
    }

    /// Largest index, or 0 for the scalar blade.
    pub fn max_index(self) -> usize {
        32 - self.0.leading_zeros() as usize
    }

    pub fn contains(self, i: u8) -> bool {
        (1..=32).contains(&i) && self.0 & (1 << (i - 1)) != 0
    }

    pub fn is_subset(self, other: Blade) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Blade) -> bool {
        self.0 & other.0 == 0
    }

    pub fn minus(self, other: Blade) -> Blade {
        Blade(self.0 & !other.0)
    }

    pub fn complement(self, n: usize) -> Blade {
        Blade(!self.0 & Blade::full(n).0)
    }

    /// Number of pairs `(i, j)` with `i` in `self`, `j` in `other`, `i > j`.
    pub fn pairs_gt(self, other: Blade) -> u32 {
        let mut total = 0;
        let mut m = other.0;
        while m != 0 {
            let j = m.trailing_zeros();
            m &= m - 1;
            if j < 31 {
                total += (self.0 >> (j + 1)).count_ones();
            }
        }
        total
    }

    /// Sign of the permutation sorting the concatenation of two disjoint
    /// blades: `(-1)^pairs_gt(self, other)`.
    pub fn concat_sign(self, other: Blade) -> i8 {
        if self.pairs_gt(other) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// `v_self ^ v_other = sign * v_(self | other)`, or `None` when they overlap.
    pub fn wedge_sign(self, other: Blade) -> Option<i8> {
        if self.is_disjoint(other) {
            Some(self.concat_sign(other))
        } else {
            None
        }
    }

    /// Subsets of `self`, smallest mask first.
    pub fn subsets(self) -> impl Iterator<Item = Blade> {
        let full = self.0;
        let mut cur = Some(0u32);
        core::iter::from_fn(move || {
            let s = cur?;
            cur = if s == full { None } else { Some((s.wrapping_sub(full)) & full) };
            Some(Blade(s))
        })
    }
}

impl core::ops::BitOr for Blade {
    type Output = Blade;
    fn bitor(self, rhs: Blade) -> Blade {
        Blade(self.0 | rhs.0)
    }
}

impl core::ops::BitAnd for Blade {
    type Output = Blade;
    fn bitand(self, rhs: Blade) -> Blade {
        Blade(self.0 & rhs.0)
    }
}

impl core::ops::BitXor for Blade {
    type Output = Blade;
    fn bitxor(self, rhs: Blade) -> Blade {
        Blade(self.0 ^ rhs.0)
    }
}

impl Ord for Blade {
    fn cmp(&self, other: &Self) -> Ordering {
        self.grade().cmp(&other.grade()).then_with(|| {
            let d = self.0 ^ other.0;
            if d == 0 {
                Ordering::Equal
            } else if self.0 & (d & d.wrapping_neg()) != 0 {
                // the smallest differing index belongs to self
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

impl PartialOrd for Blade {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "1");
        }
        write!(f, "e")?;
        let big = self.max_index() > 9;
        if big {
            write!(f, "{{")?;
        }
        for (k, i) in self.indices().enumerate() {
            if big && k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        if big {
            write!(f, "}}")?;
        }
        Ok(())
    }
}

/// All blades of grade `p` in dimension `n`, in [`Blade`] order.
pub fn blades_of_grade(n: usize, p: usize) -> Vec<Blade> {
    match increasing_tuples(n, p) {
        Ok(ts) => ts.iter().map(IndexTuple::to_blade).collect(),
        Err(_) => Vec::new(),
    }
}
