//! Hom and Ext dimensions, the Euler form, the Auslander-Reiten translate and
//! isoclass identification for representations of a type-A quiver.
//!
//! [`PathAlgebra`] is built once per quiver. Construction computes the Hom
//! table between interval modules by exact linear algebra, checks it against the
//! combinatorial interval rule, and fixes the Coxeter-matrix convention used for
//! the translate.

use std::collections::HashMap;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{internal, Error, Result};
use crate::explicit::{explicit_of, hom_basis, hom_dim_explicit, ExplicitHom, ExplicitRep};
use crate::linalg::{q, Matrix, Q};
use crate::quiver::{enumerate_rep_classes, intervals_of, Interval, RepClass, TypeAQuiver};

/// `<d, e> = sum_i d_i e_i - sum_{i -> j} d_i e_j`.
pub fn euler_form(quiver: &TypeAQuiver, d: &[i64], e: &[i64]) -> Result<i64> {
    if d.len() != quiver.n() || e.len() != quiver.n() {
        return Err(Error::DimensionMismatch(format!(
            "Euler form on {quiver} needs two vectors of length {}, got {} and {}",
            quiver.n(),
            d.len(),
            e.len()
        )));
    }
    let diag: i64 = d.iter().zip(e).map(|(a, b)| a * b).sum();
    let arrows: i64 = quiver.edges().map(|(s, t)| d[s] * e[t]).sum();
    Ok(diag - arrows)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TauDirection {
    Forward,
    Inverse,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subquotient {
    Kernel,
    Image,
    Cokernel,
}

/// Combinatorial Hom rule between interval modules: `Hom(U, V)` is one-dimensional
/// iff the supports meet in a nonempty `I` that is a quotient of `U` (boundary
/// arrows inside `U` leave `I`) and a sub of `V` (boundary arrows inside `V` enter `I`).
pub fn interval_hom_rule(q: &TypeAQuiver, u: Interval, v: Interval) -> usize {
    use crate::quiver::Arrow::{Backward, Forward};
    let (lo, hi) = (u.a.max(v.a), u.b.min(v.b));
    if lo > hi {
        return 0;
    }
    let o = q.orientation();
    // edge between 1-based vertices lo-1 and lo has 0-based index lo-2
    let quotient_ok = (lo == u.a || o[lo - 2] == Backward) && (hi == u.b || o[hi - 1] == Forward);
    let sub_ok = (lo == v.a || o[lo - 2] == Forward) && (hi == v.b || o[hi - 1] == Backward);
    (quotient_ok && sub_ok) as usize
}

/// Per-quiver homological data. Immutable once built.
#[derive(Debug)]
pub struct PathAlgebra {
    quiver: TypeAQuiver,
    intervals: Vec<Interval>,
    index: HashMap<Interval, usize>,
    explicit: Vec<ExplicitRep>,
    hom: Vec<Vec<usize>>,
    ext: Vec<Vec<usize>>,
    coxeter: Matrix,
    tau_fwd: Vec<Option<usize>>,
    tau_inv: Vec<Option<usize>>,
    projective: Vec<bool>,
    injective: Vec<bool>,
}

impl PathAlgebra {
    pub fn new(quiver: &TypeAQuiver) -> Result<Self> {
        let q = quiver.clone();
        let n = q.n();
        let intervals = intervals_of(&q);
        let index: HashMap<Interval, usize> = intervals.iter().enumerate().map(|(i, &u)| (u, i)).collect();
        let explicit: Vec<ExplicitRep> =
            intervals.iter().map(|&u| explicit_of(&q, &RepClass::single(u))).collect();

        let mut hom = vec![vec![0; intervals.len()]; intervals.len()];
        for (i, &u) in intervals.iter().enumerate() {
            for (j, &v) in intervals.iter().enumerate() {
                let h = hom_dim_explicit(&explicit[i], &explicit[j])?;
                if h > 1 {
                    return Err(internal!("dim Hom({u}, {v}) = {h} > 1"));
                }
                if i == j && h != 1 {
                    return Err(internal!("End({u}) has dimension {h}"));
                }
                let rule = interval_hom_rule(&q, u, v);
                if rule != h {
                    return Err(internal!("Hom({u}, {v}): linear algebra gives {h}, interval rule {rule}"));
                }
                hom[i][j] = h;
            }
        }

        let mut ext = vec![vec![0; intervals.len()]; intervals.len()];
        for (i, u) in intervals.iter().enumerate() {
            for (j, v) in intervals.iter().enumerate() {
                let chi = euler_form(&q, &u.dim(n).signed(), &v.dim(n).signed())?;
                let e = hom[i][j] as i64 - chi;
                if e < 0 {
                    return Err(internal!("negative Ext({u}, {v}) = {e}"));
                }
                ext[i][j] = e as usize;
            }
        }

        let projectives: Vec<Interval> = (0..n).map(|v| q.projective(v)).collect();
        let injectives: Vec<Interval> = (0..n).map(|v| q.injective(v)).collect();
        let projective: Vec<bool> = intervals.iter().map(|u| projectives.contains(u)).collect();
        let injective: Vec<bool> = intervals.iter().map(|u| injectives.contains(u)).collect();

        // Cartan matrix: column v is dim P_v.
        let cols: Vec<Vec<Q>> = projectives.iter().map(|p| p.dim(n).iter().map(|&x| q_usize(x)).collect()).collect();
        let cartan = Matrix::from_columns(n, &cols);
        let cartan_inv = cartan.inverse().ok_or_else(|| internal!("Cartan matrix of {q} is singular"))?;
        let candidates = [
            cartan.transpose().mul(&cartan_inv).neg(),
            cartan.mul(&cartan_inv.transpose()).neg(),
        ];
        let mut chosen = None;
        for phi in candidates {
            let Some(fwd) = translate_table(&phi, &intervals, &index, n) else { continue };
            if fwd.iter().zip(&projective).all(|(t, &p)| t.is_none() == p) {
                chosen = Some((phi, fwd));
                break;
            }
        }
        let (coxeter, tau_fwd) =
            chosen.ok_or_else(|| internal!("no Coxeter convention separates projectives on {q}"))?;
        let phi_inv = coxeter.inverse().ok_or_else(|| internal!("Coxeter matrix is singular"))?;
        let tau_inv = translate_table(&phi_inv, &intervals, &index, n)
            .ok_or_else(|| internal!("inverse Coxeter transform misbehaves on {q}"))?;
        if tau_inv.iter().zip(&injective).any(|(t, &i)| t.is_none() != i) {
            return Err(internal!("inverse translate does not vanish exactly on injectives of {q}"));
        }

        Ok(PathAlgebra { quiver: q, intervals, index, explicit, hom, ext, coxeter, tau_fwd, tau_inv, projective, injective })
    }

    pub fn quiver(&self) -> &TypeAQuiver {
        &self.quiver
    }

    pub fn n(&self) -> usize {
        self.quiver.n()
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn coxeter_matrix(&self) -> &Matrix {
        &self.coxeter
    }

    fn idx(&self, u: &Interval) -> usize {
        *self.index.get(u).unwrap_or_else(|| panic!("{u} is not an interval of {}", self.quiver))
    }

    pub fn interval_rep(&self, u: &Interval) -> &ExplicitRep {
        &self.explicit[self.idx(u)]
    }

    /// `[U, V]` from the table.
    pub fn hom_interval(&self, u: &Interval, v: &Interval) -> usize {
        self.hom[self.idx(u)][self.idx(v)]
    }

    /// `[U, V]^1` from the table.
    pub fn ext_interval(&self, u: &Interval, v: &Interval) -> usize {
        self.ext[self.idx(u)][self.idx(v)]
    }

    /// `dim Hom(m, n)`, bilinear over summands.
    pub fn hom_dim(&self, m: &RepClass, n: &RepClass) -> usize {
        let mut total = 0;
        for (u, a) in m.summands() {
            let i = self.idx(u);
            for (v, b) in n.summands() {
                total += a * b * self.hom[i][self.idx(v)];
            }
        }
        total
    }

    /// `dim Ext^1(m, n) = [m, n] - <dim m, dim n>`.
    pub fn ext_dim(&self, m: &RepClass, n: &RepClass) -> Result<usize> {
        let nv = self.n();
        let chi = euler_form(&self.quiver, &m.dim(nv).signed(), &n.dim(nv).signed())?;
        let e = self.hom_dim(m, n) as i64 - chi;
        if e < 0 {
            return Err(internal!("negative Ext^1({m}, {n}) = {e}"));
        }
        Ok(e as usize)
    }

    /// `([U, m])_U` over all intervals in canonical order.
    pub fn hom_vector(&self, m: &RepClass) -> Vec<usize> {
        self.intervals
            .iter()
            .enumerate()
            .map(|(i, _)| m.summands().iter().map(|(v, k)| k * self.hom[i][self.idx(v)]).sum())
            .collect()
    }

    pub fn is_projective(&self, u: &Interval) -> bool {
        self.projective[self.idx(u)]
    }

    pub fn is_injective(&self, u: &Interval) -> bool {
        self.injective[self.idx(u)]
    }

    /// Auslander-Reiten translate; `None` on projectives (forward) or injectives (inverse).
    pub fn tau(&self, u: &Interval, dir: TauDirection) -> Option<Interval> {
        let i = self.idx(u);
        let t = match dir {
            TauDirection::Forward => self.tau_fwd[i],
            TauDirection::Inverse => self.tau_inv[i],
        };
        t.map(|j| self.intervals[j])
    }

    /// Translate of a whole class, dropping summands sent to zero.
    pub fn tau_class(&self, m: &RepClass, dir: TauDirection) -> RepClass {
        RepClass::from_pairs(m.summands().iter().filter_map(|(u, k)| self.tau(u, dir).map(|t| (t, *k))))
    }

    /// The isoclass of an explicit representation, from its Hom counts out of
    /// every interval module.
    pub fn iso_identify(&self, f: &ExplicitRep) -> Result<RepClass> {
        if f.quiver() != &self.quiver {
            return Err(Error::Invalid(format!("representation of {} given to {}", f.quiver(), self.quiver)));
        }
        let k = self.intervals.len();
        let mut counts = Matrix::zeros(k, 1);
        for (i, u) in self.explicit.iter().enumerate() {
            counts[(i, 0)] = q_usize(hom_dim_explicit(u, f)?);
        }
        let mut table = Matrix::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                table[(i, j)] = q_usize(self.hom[i][j]);
            }
        }
        let sol = table.solve(&counts).ok_or_else(|| internal!("Hom table of {} is singular", self.quiver))?;
        let mut m = RepClass::empty();
        for j in 0..k {
            let x = &sol[(j, 0)];
            if !x.is_integer() || x.is_negative() {
                return Err(Error::Invalid(format!(
                    "multiplicity {x} of {} is not a non-negative integer",
                    self.intervals[j]
                )));
            }
            m.add(self.intervals[j], x.to_integer().to_usize().unwrap());
        }
        if m.dim(self.n()) != f.dim_vector() {
            return Err(internal!("identified {m} but the representation has dimension {}", f.dim_vector()));
        }
        Ok(m)
    }

    pub fn explicit(&self, m: &RepClass) -> ExplicitRep {
        explicit_of(&self.quiver, m)
    }

    /// Kernel, image or cokernel of `h`, identified up to isomorphism.
    pub fn subquotient_class(&self, h: &ExplicitHom, which: Subquotient) -> Result<RepClass> {
        let rep = match which {
            Subquotient::Kernel => h.kernel(),
            Subquotient::Image => h.image(),
            Subquotient::Cokernel => h.cokernel(),
        };
        self.iso_identify(&rep)
    }

    /// The middle term of the nonsplit extension `0 -> x1 -> Y -> s1 -> 0`.
    pub fn middle_term(&self, x1: &Interval, s1: &Interval) -> Result<RepClass> {
        let ext = self.ext_interval(s1, x1);
        if ext != 1 {
            return Err(Error::Invalid(format!("middle_term needs Ext^1({s1}, {x1}) = 1, found {ext}")));
        }
        let split = RepClass::from_intervals([*x1, *s1]);
        let d = split.dim(self.n());
        let split_hv = self.hom_vector(&split);
        let source = self.interval_rep(x1);
        let quotient = RepClass::single(*s1);
        let mut found = Vec::new();
        for y in enumerate_rep_classes(&self.quiver, &d)? {
            // an extension of s1 by x1 degenerates to the split sum
            if y == split || self.hom_vector(&y).iter().zip(&split_hv).any(|(a, b)| a > b) {
                continue;
            }
            let basis = hom_basis(source, &self.explicit(&y))?;
            if basis.is_empty() {
                continue;
            }
            for coeffs in coefficient_sweep(basis.len()) {
                let h = ExplicitHom::combination(&basis, &coeffs);
                if h.is_injective() && self.subquotient_class(&h, Subquotient::Cokernel)? == quotient {
                    found.push(y);
                    break;
                }
            }
        }
        match found.len() {
            1 => Ok(found.pop().unwrap()),
            k => Err(internal!("{k} middle terms found for 0 -> {x1} -> ? -> {s1} -> 0")),
        }
    }
}

fn q_usize(x: usize) -> Q {
    q(x as i64)
}

fn translate_table(
    phi: &Matrix,
    intervals: &[Interval],
    index: &HashMap<Interval, usize>,
    n: usize,
) -> Option<Vec<Option<usize>>> {
    let mut out = Vec::with_capacity(intervals.len());
    for u in intervals {
        let col = Matrix::from_columns(n, &[u.dim(n).iter().map(|&x| q_usize(x)).collect()]);
        let image = phi.mul(&col).to_i64()?;
        out.push(Interval::from_indicator(&image).map(|t| index[&t]));
    }
    Some(out)
}

/// Deterministic coefficient vectors: every nonzero pattern in `{0, 1, -1}^k`,
/// then a few vectors with distinct growing integer entries.
pub fn coefficient_sweep(k: usize) -> Vec<Vec<Q>> {
    let mut out = Vec::new();
    let total = 3usize.pow(k as u32);
    for code in 1..total {
        let mut c = code;
        let v = (0..k)
            .map(|_| {
                let digit = c % 3;
                c /= 3;
                match digit {
                    0 => Q::zero(),
                    1 => Q::one(),
                    _ => -Q::one(),
                }
            })
            .collect();
        out.push(v);
    }
    for base in 2..6i64 {
        out.push((0..k as u32).map(|i| q(base.pow(i + 1))).collect());
    }
    out
}
