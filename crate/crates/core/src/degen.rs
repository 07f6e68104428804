//! The degeneration order on isoclasses of a fixed dimension vector, its covers
//! (minimal degenerations) and the Bongartz data attached to each cover.
//!
//! For Dynkin quivers the degeneration order is the Hom order:
//! `M <= N` iff `[U, M] <= [U, N]` for every indecomposable `U`. The
//! semisimple class is the unique maximum.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{internal, Error, Result};
use crate::explicit::hom_basis;
use crate::homalg::{PathAlgebra, Subquotient, TauDirection};
use crate::quiver::{enumerate_rep_classes, DimVector, Interval, RepClass, TypeAQuiver};

pub fn hom_leq(alg: &PathAlgebra, m: &RepClass, n: &RepClass) -> Result<bool> {
    let (dm, dn) = (m.dim(alg.n()), n.dim(alg.n()));
    if dm != dn {
        return Err(Error::DimensionMismatch(format!("{m} has dimension {dm}, {n} has {dn}")));
    }
    Ok(leq_vectors(&alg.hom_vector(m), &alg.hom_vector(n)))
}

fn leq_vectors(a: &[usize], b: &[usize]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

#[derive(Clone, Debug)]
struct BitSet(Vec<u64>);

impl BitSet {
    fn new(n: usize) -> Self {
        BitSet(vec![0; n.div_ceil(64)])
    }
    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn disjoint(&self, other: &BitSet) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & b == 0)
    }
}

/// Degeneration poset of one dimension vector.
#[derive(Clone, Debug)]
pub struct DegenPoset {
    pub quiver: TypeAQuiver,
    pub dim: DimVector,
    pub nodes: Vec<RepClass>,
    leq: Vec<Vec<bool>>,
    /// `(i, j)` with `nodes[i]` covered by `nodes[j]`, sorted.
    pub covers: Vec<(usize, usize)>,
}

impl DegenPoset {
    fn build(alg: &PathAlgebra, dim: DimVector, nodes: Vec<RepClass>) -> Result<Self> {
        let hv: Vec<Vec<usize>> = nodes.iter().map(|m| alg.hom_vector(m)).collect();
        let k = nodes.len();
        let leq: Vec<Vec<bool>> =
            (0..k).into_par_iter().map(|i| (0..k).map(|j| leq_vectors(&hv[i], &hv[j])).collect()).collect();
        for i in 0..k {
            for j in i + 1..k {
                if leq[i][j] && leq[j][i] {
                    return Err(internal!("{} and {} have equal Hom vectors", nodes[i], nodes[j]));
                }
            }
        }
        let mut above = vec![BitSet::new(k); k];
        let mut below = vec![BitSet::new(k); k];
        for i in 0..k {
            for j in 0..k {
                if i != j && leq[i][j] {
                    above[i].insert(j);
                    below[j].insert(i);
                }
            }
        }
        let mut covers: Vec<(usize, usize)> = (0..k)
            .into_par_iter()
            .flat_map_iter(|i| {
                let (above, below, leq) = (&above, &below, &leq);
                (0..k).filter(move |&j| i != j && leq[i][j] && above[i].disjoint(&below[j])).map(move |j| (i, j))
            })
            .collect();
        covers.sort();
        Ok(DegenPoset { quiver: alg.quiver().clone(), dim, nodes, leq, covers })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn le(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    pub fn index_of(&self, m: &RepClass) -> Option<usize> {
        self.nodes.binary_search(m).ok()
    }

    pub fn is_cover(&self, i: usize, j: usize) -> bool {
        self.covers.binary_search(&(i, j)).is_ok()
    }

    /// Nodes above every other node.
    pub fn maxima(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| (0..self.len()).all(|j| !self.leq[i][j] || i == j)).collect()
    }

    pub fn minima(&self) -> Vec<usize> {
        (0..self.len()).filter(|&j| (0..self.len()).all(|i| !self.leq[i][j] || i == j)).collect()
    }

    /// Covers `(i, j)` as class pairs.
    pub fn cover_pairs(&self) -> impl Iterator<Item = (&RepClass, &RepClass)> {
        self.covers.iter().map(|&(i, j)| (&self.nodes[i], &self.nodes[j]))
    }
}

pub fn degeneration_poset(alg: &PathAlgebra, d: &DimVector) -> Result<DegenPoset> {
    let nodes = enumerate_rep_classes(alg.quiver(), d)?;
    DegenPoset::build(alg, d.clone(), nodes)
}

/// The convex sub-poset `{c : m <= c <= n}`. Its covers are covers of the full poset.
pub fn interval_poset(alg: &PathAlgebra, m: &RepClass, n: &RepClass) -> Result<DegenPoset> {
    if !hom_leq(alg, m, n)? {
        return Err(Error::NotADegeneration(format!("{m} is not below {n} in the Hom order")));
    }
    let d = m.dim(alg.n());
    let (hm, hn) = (alg.hom_vector(m), alg.hom_vector(n));
    let nodes = enumerate_rep_classes(alg.quiver(), &d)?
        .into_iter()
        .filter(|c| {
            let h = alg.hom_vector(c);
            leq_vectors(&hm, &h) && leq_vectors(&h, &hn)
        })
        .collect();
    DegenPoset::build(alg, d, nodes)
}

/// Whether `m < n` is a minimal degeneration.
pub fn is_cover(alg: &PathAlgebra, m: &RepClass, n: &RepClass) -> Result<bool> {
    if m == n || !hom_leq(alg, m, n)? {
        return Ok(false);
    }
    Ok(interval_poset(alg, m, n)?.len() == 2)
}

/// Data attached to a minimal degeneration `M < N`:
/// `M = Y1 + X' + S'`, `N = X1 + S1 + X' + S'` with `0 -> X1 -> Y1 -> S1 -> 0`
/// nonsplit, together with the boundary modules `X_S`, `S^X` and `S/S^X`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BongartzData {
    pub m: RepClass,
    pub n: RepClass,
    pub x1: Interval,
    pub s1: Interval,
    pub y1: RepClass,
    pub xprime: RepClass,
    pub sprime: RepClass,
    pub common: RepClass,
    pub x_s: RepClass,
    pub s_x: RepClass,
    pub s_mod: RepClass,
}

impl BongartzData {
    /// `X = X1 + X'`.
    pub fn x(&self) -> RepClass {
        self.xprime.union(&RepClass::single(self.x1))
    }

    /// `S = S1 + S'`.
    pub fn s(&self) -> RepClass {
        self.sprime.union(&RepClass::single(self.s1))
    }
}

/// Bongartz data of a cover; fails with [`Error::NotACover`] otherwise.
pub fn bongartz_data(alg: &PathAlgebra, m: &RepClass, n: &RepClass) -> Result<BongartzData> {
    m.check_in(alg.quiver())?;
    n.check_in(alg.quiver())?;
    if !is_cover(alg, m, n)? {
        return Err(Error::NotACover(format!("{m} < {n}")));
    }
    bongartz_data_of_cover(alg, m, n)
}

/// As [`bongartz_data`] for a pair already known to be a cover.
pub fn bongartz_data_of_cover(alg: &PathAlgebra, m: &RepClass, n: &RepClass) -> Result<BongartzData> {
    let common = m.intersection(n);
    let m_extra = m.difference(&common).expect("intersection is a sub-multiset");
    let n_extra = n.difference(&common).expect("intersection is a sub-multiset");
    let extras: Vec<Interval> = n_extra.copies().collect();
    if extras.len() != 2 {
        return Err(internal!("cover {m} < {n} has {} extra summands in N, expected 2", extras.len()));
    }
    let (a, b) = (extras[0], extras[1]);
    let (x1, s1) = match (alg.ext_interval(&b, &a), alg.ext_interval(&a, &b)) {
        (1, 0) => (a, b),
        (0, 1) => (b, a),
        (e1, e2) => {
            return Err(internal!("extras {a}, {b} of {m} < {n} have Ext dimensions ({e1}, {e2})"));
        }
    };
    let y1 = alg.middle_term(&x1, &s1)?;
    if y1 != m_extra {
        return Err(internal!("middle term {y1} differs from the extra summands {m_extra} of {m}"));
    }

    let (sprime, xprime) = split_common(alg, &common, &x1, &s1, &y1)?;

    let tau_s1 = alg
        .tau(&s1, TauDirection::Forward)
        .ok_or_else(|| internal!("S1 = {s1} is projective but Ext^1(S1, X1) != 0"))?;
    let to_tau = hom_basis(alg.interval_rep(&x1), alg.interval_rep(&tau_s1))?;
    if to_tau.len() != 1 {
        return Err(internal!("Hom({x1}, tau {s1}) has dimension {}, expected 1", to_tau.len()));
    }
    let x1_s1 = alg.subquotient_class(&to_tau[0], Subquotient::Kernel)?;

    let tau_inv_x1 = alg
        .tau(&x1, TauDirection::Inverse)
        .ok_or_else(|| internal!("X1 = {x1} is injective but Ext^1(S1, X1) != 0"))?;
    let from_tau = hom_basis(alg.interval_rep(&tau_inv_x1), alg.interval_rep(&s1))?;
    if from_tau.len() != 1 {
        return Err(internal!("Hom(tau^- {x1}, {s1}) has dimension {}, expected 1", from_tau.len()));
    }
    let s_x = alg.subquotient_class(&from_tau[0], Subquotient::Image)?;
    let s1_mod = alg.subquotient_class(&from_tau[0], Subquotient::Cokernel)?;

    let bd = BongartzData {
        m: m.clone(),
        n: n.clone(),
        x1,
        s1,
        x_s: xprime.union(&x1_s1),
        s_mod: s1_mod.union(&sprime),
        y1,
        xprime,
        sprime,
        common,
        s_x,
    };
    let failures = theorem_conditions(alg, &bd)?;
    if !failures.is_empty() {
        return Err(internal!("Bongartz conditions fail for {m} < {n}: {}", failures.join("; ")));
    }
    Ok(bd)
}

// Splits the common part into (S', X').
//
// A class C may sit in X' only if Ext(S1, C) = Ext(X1, C) = 0. The classes that
// cannot are forced into S', and S' is closed under C in S', Ext(C, D) != 0
// implies D in S'. Everything left goes to X'. For summands other than X1 and S1
// this is the set of classes preceding Y1 in an Ext-compatible linear order.
fn split_common(
    alg: &PathAlgebra,
    common: &RepClass,
    x1: &Interval,
    s1: &Interval,
    y1: &RepClass,
) -> Result<(RepClass, RepClass)> {
    let classes: Vec<Interval> = common.summands().iter().map(|(u, _)| *u).collect();

    // The Ext relation on the common classes other than X1, S1, together with Y1, must be acyclic.
    let mut nodes: Vec<RepClass> =
        classes.iter().filter(|u| *u != x1 && *u != s1).map(|u| RepClass::single(*u)).collect();
    nodes.push(y1.clone());
    ext_topological_order(alg, &nodes)?;

    let mut in_s: Vec<bool> =
        classes.iter().map(|c| alg.ext_interval(s1, c) != 0 || alg.ext_interval(x1, c) != 0).collect();
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..classes.len() {
            if !in_s[i] {
                continue;
            }
            for j in 0..classes.len() {
                if !in_s[j] && alg.ext_interval(&classes[i], &classes[j]) != 0 {
                    in_s[j] = true;
                    changed = true;
                }
            }
        }
    }
    let (mut sprime, mut xprime) = (RepClass::empty(), RepClass::empty());
    for (i, (u, k)) in common.summands().iter().enumerate() {
        if in_s[i] {
            sprime.add(*u, *k);
        } else {
            xprime.add(*u, *k);
        }
    }
    Ok((sprime, xprime))
}

/// An order of `nodes` with `Ext^1(A, B) = 0` whenever `A` comes before `B`,
/// smallest available node first. Fails on an Ext cycle.
pub fn ext_topological_order(alg: &PathAlgebra, nodes: &[RepClass]) -> Result<Vec<usize>> {
    let k = nodes.len();
    // B must precede A when Ext(A, B) != 0
    let mut preds = vec![0usize; k];
    let mut succ = vec![Vec::new(); k];
    for a in 0..k {
        for b in 0..k {
            if a != b && alg.ext_dim(&nodes[a], &nodes[b])? != 0 {
                preds[a] += 1;
                succ[b].push(a);
            }
        }
    }
    let mut ready: std::collections::BTreeSet<(RepClass, usize)> =
        (0..k).filter(|&i| preds[i] == 0).map(|i| (nodes[i].clone(), i)).collect();
    let mut order = Vec::with_capacity(k);
    while let Some((_, i)) = ready.pop_first() {
        order.push(i);
        for &a in &succ[i] {
            preds[a] -= 1;
            if preds[a] == 0 {
                ready.insert((nodes[a].clone(), a));
            }
        }
    }
    if order.len() != k {
        let names: Vec<String> = nodes.iter().map(|n| format!("{{{n}}}")).collect();
        return Err(internal!("Ext cycle among {}", names.join(", ")));
    }
    Ok(order)
}

/// Conditions (i)-(iv) of the type-A Bongartz theorem; returns the failing ones.
pub fn theorem_conditions(alg: &PathAlgebra, bd: &BongartzData) -> Result<Vec<String>> {
    let mut failures = Vec::new();
    let x1 = RepClass::single(bd.x1);
    let s1 = RepClass::single(bd.s1);
    if bd.common != bd.xprime.union(&bd.sprime) {
        failures.push("common part is not X' + S'".to_string());
    }
    if bd.y1.union(&bd.common) != bd.m {
        failures.push("(i) M != Y1 + X' + S'".to_string());
    }
    if x1.union(&s1).union(&bd.common) != bd.n {
        failures.push("(ii) N != X1 + S1 + X' + S'".to_string());
    }
    let gen = alg.ext_dim(&bd.s(), &bd.x())?;
    if gen != alg.ext_dim(&s1, &x1)? || gen != 1 {
        failures.push(format!("(iii) Ext^1(S1 + S', X1 + X') = {gen}"));
    }
    let e1 = alg.ext_dim(&x1, &bd.xprime)?;
    let e2 = alg.ext_dim(&bd.sprime, &s1)?;
    if e1 != 0 || e2 != 0 {
        failures.push(format!("(iv) Ext^1(X1, X') = {e1}, Ext^1(S', S1) = {e2}"));
    }
    Ok(failures)
}

/// Re-derives the boundary modules from the whole sequence `0 -> X -> M -> S -> 0`
/// and compares them with the data: `Ext^1(S, X) = 1`, the Bongartz conditions,
/// `Ker(X -> tau S) = X_S`, `Im(tau^- X -> S) = S^X` and its cokernel `= S/S^X`.
pub fn boundary_check(alg: &PathAlgebra, bd: &BongartzData) -> Result<bool> {
    Ok(boundary_failures(alg, bd)?.is_empty())
}

pub fn boundary_failures(alg: &PathAlgebra, bd: &BongartzData) -> Result<Vec<String>> {
    let mut failures = theorem_conditions(alg, bd)?;
    let (x, s) = (bd.x(), bd.s());

    let to_tau = hom_basis(&alg.explicit(&x), &alg.explicit(&alg.tau_class(&s, TauDirection::Forward)))?;
    if to_tau.len() == 1 {
        let ker = alg.subquotient_class(&to_tau[0], Subquotient::Kernel)?;
        if ker != bd.x_s {
            failures.push(format!("Ker(X -> tau S) = {{{ker}}} but X_S = {{{}}}", bd.x_s));
        }
    } else {
        failures.push(format!("Hom(X, tau S) has dimension {}", to_tau.len()));
    }

    let from_tau = hom_basis(&alg.explicit(&alg.tau_class(&x, TauDirection::Inverse)), &alg.explicit(&s))?;
    if from_tau.len() == 1 {
        let im = alg.subquotient_class(&from_tau[0], Subquotient::Image)?;
        let coker = alg.subquotient_class(&from_tau[0], Subquotient::Cokernel)?;
        if im != bd.s_x {
            failures.push(format!("Im(tau^- X -> S) = {{{im}}} but S^X = {{{}}}", bd.s_x));
        }
        if coker != bd.s_mod {
            failures.push(format!("S / Im(tau^- X -> S) = {{{coker}}} but S/S^X = {{{}}}", bd.s_mod));
        }
    } else {
        failures.push(format!("Hom(tau^- X, S) has dimension {}", from_tau.len()));
    }

    let s_dim = bd.s1.dim(alg.n());
    if !bd.s_x.dim(alg.n()).le(&s_dim) {
        failures.push("S^X is not inside S1".to_string());
    }
    Ok(failures)
}
