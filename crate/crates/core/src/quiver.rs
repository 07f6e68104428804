//! Type-A quivers, dimension vectors, interval modules and isoclasses of
//! representations (multisets of intervals).

use std::cmp::Ordering;
use std::fmt;
use std::ops::Deref;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Orientation of the edge between vertices `k` and `k + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Arrow {
    /// `k -> k + 1`
    Forward,
    /// `k + 1 -> k`
    Backward,
}

impl Arrow {
    pub fn flag(self) -> char {
        match self {
            Arrow::Forward => 'F',
            Arrow::Backward => 'B',
        }
    }
}

/// An orientation of the path graph on `n` vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TypeAQuiver {
    n: usize,
    orient: Vec<Arrow>,
}

impl TypeAQuiver {
    pub fn new(n: usize, orient: Vec<Arrow>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("a quiver needs at least one vertex".into()));
        }
        if orient.len() != n - 1 {
            return Err(Error::Invalid(format!(
                "A{n} needs {} orientation flags, got {}",
                n - 1,
                orient.len()
            )));
        }
        Ok(TypeAQuiver { n, orient })
    }

    /// `1 -> 2 -> ... -> n`
    pub fn equioriented(n: usize) -> Self {
        assert!(n >= 1);
        TypeAQuiver { n, orient: vec![Arrow::Forward; n - 1] }
    }

    /// All `2^(n-1)` orientations of `A_n`, in lexicographic flag order.
    pub fn all_orientations(n: usize) -> Vec<Self> {
        assert!(n >= 1);
        (0..1usize << (n - 1))
            .map(|mask| {
                let orient = (0..n - 1)
                    .map(|k| if mask >> (n - 2 - k) & 1 == 0 { Arrow::Forward } else { Arrow::Backward })
                    .collect();
                TypeAQuiver { n, orient }
            })
            .collect()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn orientation(&self) -> &[Arrow] {
        &self.orient
    }

    pub fn num_edges(&self) -> usize {
        self.n - 1
    }

    /// `(source, target)` of edge `k`, 0-based vertices.
    pub fn edge(&self, k: usize) -> (usize, usize) {
        match self.orient[k] {
            Arrow::Forward => (k, k + 1),
            Arrow::Backward => (k + 1, k),
        }
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.num_edges()).map(move |k| self.edge(k))
    }

    pub fn zero_dim(&self) -> DimVector {
        DimVector(vec![0; self.n])
    }

    pub fn check_dim(&self, d: &DimVector) -> Result<()> {
        if d.len() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "dimension vector {d} has {} entries, quiver has {} vertices",
                d.len(),
                self.n
            )));
        }
        Ok(())
    }

    /// Vertices reachable from `v` along arrows (0-based, as an inclusive range).
    /// This is the support of the projective cover of the simple at `v`.
    pub fn projective(&self, v: usize) -> Interval {
        let mut lo = v;
        while lo > 0 && self.orient[lo - 1] == Arrow::Backward {
            lo -= 1;
        }
        let mut hi = v;
        while hi + 1 < self.n && self.orient[hi] == Arrow::Forward {
            hi += 1;
        }
        Interval { a: lo + 1, b: hi + 1 }
    }

    /// Vertices from which `v` is reachable: support of the injective hull of the simple at `v`.
    pub fn injective(&self, v: usize) -> Interval {
        let mut lo = v;
        while lo > 0 && self.orient[lo - 1] == Arrow::Forward {
            lo -= 1;
        }
        let mut hi = v;
        while hi + 1 < self.n && self.orient[hi] == Arrow::Backward {
            hi += 1;
        }
        Interval { a: lo + 1, b: hi + 1 }
    }
}

impl fmt::Display for TypeAQuiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A{}:", self.n)?;
        for a in &self.orient {
            write!(f, "{}", a.flag())?;
        }
        Ok(())
    }
}

impl Serialize for TypeAQuiver {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Per-vertex dimensions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct DimVector(pub Vec<usize>);

impl DimVector {
    pub fn new(entries: Vec<usize>) -> Self {
        DimVector(entries)
    }

    pub fn zeros(n: usize) -> Self {
        DimVector(vec![0; n])
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &DimVector) -> bool {
        self.len() == other.len() && self.iter().zip(other.iter()).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &DimVector) -> DimVector {
        assert_eq!(self.len(), other.len());
        DimVector(self.iter().zip(other.iter()).map(|(a, b)| a + b).collect())
    }

    /// `self - other`, or `None` if some entry would go negative.
    pub fn checked_sub(&self, other: &DimVector) -> Option<DimVector> {
        if self.len() != other.len() {
            return None;
        }
        self.iter()
            .zip(other.iter())
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(DimVector)
    }

    /// Entries as signed integers; used where differences may go negative.
    pub fn signed(&self) -> Vec<i64> {
        self.iter().map(|&x| x as i64).collect()
    }

    /// Every `e` with `0 <= e <= self` componentwise, in lexicographic order.
    pub fn box_below(&self) -> Vec<DimVector> {
        let mut out = vec![DimVector(Vec::with_capacity(self.len()))];
        for &bound in self.iter() {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..=bound).map(move |x| {
                        let mut v = prefix.0.clone();
                        v.push(x);
                        DimVector(v)
                    })
                })
                .collect();
        }
        out
    }
}

impl Deref for DimVector {
    type Target = [usize];
    fn deref(&self) -> &[usize] {
        &self.0
    }
}

impl From<Vec<usize>> for DimVector {
    fn from(v: Vec<usize>) -> Self {
        DimVector(v)
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// The interval module `M[a,b]`, vertices 1-based, `1 <= a <= b <= n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    pub a: usize,
    pub b: usize,
}

impl Interval {
    pub fn new(a: usize, b: usize) -> Result<Self> {
        if a == 0 || a > b {
            return Err(Error::Invalid(format!("[{a},{b}] is not an interval")));
        }
        Ok(Interval { a, b })
    }

    /// Checks `b <= n` as well.
    pub fn in_quiver(a: usize, b: usize, q: &TypeAQuiver) -> Result<Self> {
        let u = Interval::new(a, b)?;
        if b > q.n() {
            return Err(Error::Invalid(format!("[{a},{b}] exceeds the {} vertices of {q}", q.n())));
        }
        Ok(u)
    }

    /// Does the support contain the 0-based vertex `v`?
    pub fn contains(&self, v: usize) -> bool {
        self.a <= v + 1 && v < self.b
    }

    pub fn len(&self) -> usize {
        self.b - self.a + 1
    }

    pub fn dim(&self, n: usize) -> DimVector {
        DimVector((0..n).map(|v| self.contains(v) as usize).collect())
    }

    /// Reads an interval off a 0/1 indicator vector.
    pub fn from_indicator(v: &[i64]) -> Option<Interval> {
        if v.iter().any(|&x| x != 0 && x != 1) {
            return None;
        }
        let first = v.iter().position(|&x| x == 1)?;
        let last = v.iter().rposition(|&x| x == 1)?;
        if v[first..=last].iter().all(|&x| x == 1) {
            Some(Interval { a: first + 1, b: last + 1 })
        } else {
            None
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.a, self.b)
    }
}

impl Serialize for Interval {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// All `n(n+1)/2` intervals, lexicographic in `(a, b)`.
pub fn intervals_of(q: &TypeAQuiver) -> Vec<Interval> {
    let n = q.n();
    (1..=n).flat_map(|a| (a..=n).map(move |b| Interval { a, b })).collect()
}

/// Isoclass of a representation: a multiset of intervals.
///
/// Stored as `(interval, multiplicity)` pairs sorted by interval with positive
/// multiplicities, so structural equality is multiset equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RepClass {
    summands: Vec<(Interval, usize)>,
}

impl RepClass {
    pub fn empty() -> Self {
        RepClass::default()
    }

    pub fn single(u: Interval) -> Self {
        RepClass { summands: vec![(u, 1)] }
    }

    pub fn from_pairs<I: IntoIterator<Item = (Interval, usize)>>(pairs: I) -> Self {
        let mut m = RepClass::empty();
        for (u, k) in pairs {
            m.add(u, k);
        }
        m
    }

    pub fn from_intervals<I: IntoIterator<Item = Interval>>(it: I) -> Self {
        RepClass::from_pairs(it.into_iter().map(|u| (u, 1)))
    }

    /// Semisimple class `S_1^{d_1} + ... + S_n^{d_n}`.
    pub fn semisimple(d: &DimVector) -> Self {
        RepClass::from_pairs(d.iter().enumerate().map(|(v, &k)| (Interval { a: v + 1, b: v + 1 }, k)))
    }

    pub fn add(&mut self, u: Interval, k: usize) {
        if k == 0 {
            return;
        }
        match self.summands.binary_search_by(|(w, _)| w.cmp(&u)) {
            Ok(i) => self.summands[i].1 += k,
            Err(i) => self.summands.insert(i, (u, k)),
        }
    }

    pub fn summands(&self) -> &[(Interval, usize)] {
        &self.summands
    }

    pub fn multiplicity(&self, u: &Interval) -> usize {
        self.summands
            .binary_search_by(|(w, _)| w.cmp(u))
            .map(|i| self.summands[i].1)
            .unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    /// Number of indecomposable summands counted with multiplicity.
    pub fn num_copies(&self) -> usize {
        self.summands.iter().map(|(_, k)| k).sum()
    }

    /// Summand copies in canonical order, each interval repeated by multiplicity.
    pub fn copies(&self) -> impl Iterator<Item = Interval> + '_ {
        self.summands.iter().flat_map(|&(u, k)| std::iter::repeat_n(u, k))
    }

    pub fn dim(&self, n: usize) -> DimVector {
        let mut d = vec![0; n];
        for &(u, k) in &self.summands {
            for x in &mut d[u.a - 1..u.b] {
                *x += k;
            }
        }
        DimVector(d)
    }

    /// Multiset sum.
    pub fn union(&self, other: &RepClass) -> RepClass {
        let mut out = self.clone();
        for &(u, k) in &other.summands {
            out.add(u, k);
        }
        out
    }

    /// Multiset intersection.
    pub fn intersection(&self, other: &RepClass) -> RepClass {
        RepClass::from_pairs(
            self.summands.iter().map(|&(u, k)| (u, k.min(other.multiplicity(&u)))),
        )
    }

    /// Multiset difference, `None` unless `other` is a sub-multiset.
    pub fn difference(&self, other: &RepClass) -> Option<RepClass> {
        let mut out = self.clone();
        for &(u, k) in &other.summands {
            let i = out.summands.binary_search_by(|(w, _)| w.cmp(&u)).ok()?;
            let have = out.summands[i].1;
            match have.cmp(&k) {
                Ordering::Less => return None,
                Ordering::Equal => {
                    out.summands.remove(i);
                }
                Ordering::Greater => out.summands[i].1 -= k,
            }
        }
        Some(out)
    }

    /// Removes one copy of `u`; `None` if absent.
    pub fn without_one(&self, u: &Interval) -> Option<RepClass> {
        self.difference(&RepClass::single(*u))
    }

    pub fn check_in(&self, q: &TypeAQuiver) -> Result<()> {
        match self.summands.iter().find(|(u, _)| u.b > q.n()) {
            Some((u, _)) => Err(Error::Invalid(format!("{u} exceeds the {} vertices of {q}", q.n()))),
            None => Ok(()),
        }
    }
}

impl PartialOrd for RepClass {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order: lexicographic on the expanded copy sequences.
impl Ord for RepClass {
    fn cmp(&self, other: &Self) -> Ordering {
        self.copies().cmp(other.copies())
    }
}

/// Canonical text, e.g. `[1,1],[1,2]x2`; the zero representation prints as the empty string.
impl fmt::Display for RepClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (u, k)) in self.summands.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{u}")?;
            if *k > 1 {
                write!(f, "x{k}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for RepClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Every isoclass of dimension vector `d`, each exactly once, in canonical order.
pub fn enumerate_rep_classes(q: &TypeAQuiver, d: &DimVector) -> Result<Vec<RepClass>> {
    q.check_dim(d)?;
    let intervals = intervals_of(q);
    let mut out = Vec::new();
    let mut current = Vec::new();
    let mut rest = d.0.clone();
    fill(&intervals, 0, &mut rest, &mut current, &mut out);
    out.sort();
    Ok(out)
}

// Intervals are processed in (a, b) order, so once every interval starting at
// `a` is decided the remaining dimension at vertex `a` must be zero.
fn fill(
    intervals: &[Interval],
    idx: usize,
    rest: &mut [usize],
    current: &mut Vec<(Interval, usize)>,
    out: &mut Vec<RepClass>,
) {
    if idx == intervals.len() {
        if rest.iter().all(|&x| x == 0) {
            out.push(RepClass::from_pairs(current.iter().copied()));
        }
        return;
    }
    let u = intervals[idx];
    let max = (u.a - 1..u.b).map(|v| rest[v]).min().unwrap_or(0);
    for k in (0..=max).rev() {
        for x in &mut rest[u.a - 1..u.b] {
            *x -= k;
        }
        let closes_vertex = idx + 1 == intervals.len() || intervals[idx + 1].a != u.a;
        if !closes_vertex || rest[u.a - 1] == 0 {
            if k > 0 {
                current.push((u, k));
            }
            fill(intervals, idx + 1, rest, current, out);
            if k > 0 {
                current.pop();
            }
        }
        for x in &mut rest[u.a - 1..u.b] {
            *x += k;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(a: usize, b: usize) -> Interval {
        Interval::new(a, b).unwrap()
    }

    #[test]
    fn intervals_small() {
        assert_eq!(intervals_of(&TypeAQuiver::equioriented(1)), vec![iv(1, 1)]);
        assert_eq!(intervals_of(&TypeAQuiver::equioriented(2)), vec![iv(1, 1), iv(1, 2), iv(2, 2)]);
        assert_eq!(intervals_of(&TypeAQuiver::equioriented(3)).len(), 6);
    }

    #[test]
    fn dims() {
        assert_eq!(RepClass::empty().dim(3), DimVector::zeros(3));
        let m = RepClass::from_pairs([(iv(1, 2), 2), (iv(1, 1), 1)]);
        assert_eq!(m.dim(2), DimVector(vec![3, 2]));
        let m = RepClass::from_intervals([iv(1, 3), iv(2, 2)]);
        assert_eq!(m.dim(3), DimVector(vec![1, 2, 1]));
    }

    #[test]
    fn enumerate_small() {
        let q2 = TypeAQuiver::equioriented(2);
        let classes = enumerate_rep_classes(&q2, &DimVector(vec![1, 1])).unwrap();
        assert_eq!(
            classes,
            vec![RepClass::from_intervals([iv(1, 1), iv(2, 2)]), RepClass::single(iv(1, 2))]
        );
        let q3 = TypeAQuiver::equioriented(3);
        let classes = enumerate_rep_classes(&q3, &DimVector(vec![1, 1, 1])).unwrap();
        assert_eq!(classes.len(), 4);
        for m in [
            RepClass::single(iv(1, 3)),
            RepClass::from_intervals([iv(1, 2), iv(3, 3)]),
            RepClass::from_intervals([iv(1, 1), iv(2, 3)]),
            RepClass::from_intervals([iv(1, 1), iv(2, 2), iv(3, 3)]),
        ] {
            assert!(classes.contains(&m));
        }
        assert_eq!(enumerate_rep_classes(&q3, &DimVector::zeros(3)).unwrap(), vec![RepClass::empty()]);
    }

    #[test]
    fn multiset_ops() {
        let m = RepClass::from_pairs([(iv(1, 2), 2), (iv(1, 1), 1)]);
        let n = RepClass::from_pairs([(iv(1, 2), 1), (iv(2, 2), 1)]);
        assert_eq!(m.intersection(&n), RepClass::single(iv(1, 2)));
        assert_eq!(m.difference(&n), None);
        assert_eq!(
            m.difference(&RepClass::single(iv(1, 2))).unwrap(),
            RepClass::from_intervals([iv(1, 1), iv(1, 2)])
        );
        assert_eq!(m.union(&n).num_copies(), 5);
        assert_eq!(m.to_string(), "[1,1],[1,2]x2");
    }

    #[test]
    fn orientations_and_projectives() {
        let qs = TypeAQuiver::all_orientations(3);
        assert_eq!(qs.len(), 4);
        assert_eq!(qs[0].to_string(), "A3:FF");
        let q = TypeAQuiver::new(3, vec![Arrow::Forward, Arrow::Backward]).unwrap();
        assert_eq!(q.projective(0), iv(1, 2));
        assert_eq!(q.projective(1), iv(2, 2));
        assert_eq!(q.injective(1), iv(1, 3));
        assert!(TypeAQuiver::new(3, vec![Arrow::Forward; 3]).is_err());
    }

    #[test]
    fn indicator() {
        assert_eq!(Interval::from_indicator(&[0, 1, 1]), Some(iv(2, 3)));
        assert_eq!(Interval::from_indicator(&[1, 0, 1]), None);
        assert_eq!(Interval::from_indicator(&[-1, 0]), None);
        assert_eq!(Interval::from_indicator(&[0, 0]), None);
    }
}
