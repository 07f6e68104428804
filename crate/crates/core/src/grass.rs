//! Poincaré polynomials of quiver Grassmannians `Gr_e(M)` by stratification.
//!
//! For a split sequence `0 -> X -> X + S -> S -> 0` with `Ext^1(S, X) = 0` the
//! map `N -> (N ∩ X, image of N in S)` makes each stratum an affine bundle of rank
//! `<g, dim X - f>` over `Gr_f(X) x Gr_g(S)`, giving
//!
//! ```text
//! P(e; X + S) = sum_{f + g = e} q^{<g, dim X - f>} P(f; X) P(g; S).
//! ```
//!
//! Peeling one interval at a time reduces everything to interval Grassmannians,
//! which are a point or empty.

use std::sync::Arc;

use dashmap::DashMap;
use serde::Serialize;

use crate::degen::BongartzData;
use crate::error::{internal, Error, Result};
use crate::homalg::{euler_form, PathAlgebra};
use crate::poly::PoincarePoly;
use crate::quiver::{DimVector, Interval, RepClass, TypeAQuiver};

/// `Gr_e(U)` for an interval module: a point when `e` is a 0/1 vector supported in
/// `U` and closed under the arrows inside `U`, otherwise empty.
pub fn gr_interval(q: &TypeAQuiver, u: &Interval, e: &DimVector) -> PoincarePoly {
    let inside = e.iter().enumerate().all(|(v, &x)| x == 0 || (x == 1 && u.contains(v)));
    let closed = q.edges().all(|(s, t)| !(u.contains(s) && u.contains(t)) || e[s] == 0 || e[t] == 1);
    if inside && closed {
        PoincarePoly::one()
    } else {
        PoincarePoly::zero()
    }
}

/// Tie-break among intervals that may be peeled next.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PeelTie {
    #[default]
    Lexicographic,
    ReverseLexicographic,
}

/// Summand copies ordered so that `Ext^1(U_i, U_j) = 0` for `i < j`.
pub fn peel_order(alg: &PathAlgebra, m: &RepClass) -> Result<Vec<Interval>> {
    peel_order_with(alg, m, PeelTie::Lexicographic)
}

pub fn peel_order_with(alg: &PathAlgebra, m: &RepClass, tie: PeelTie) -> Result<Vec<Interval>> {
    let mut rest = m.clone();
    let mut order = Vec::with_capacity(m.num_copies());
    while !rest.is_empty() {
        let u = first_peel(alg, &rest, tie)?;
        let k = rest.multiplicity(&u);
        order.extend(std::iter::repeat_n(u, k));
        rest = rest.difference(&RepClass::from_pairs([(u, k)])).expect("summand present");
    }
    Ok(order)
}

/// An interval `S` of `m` with `Ext^1(S, V) = 0` for every summand `V`.
fn first_peel(alg: &PathAlgebra, m: &RepClass, tie: PeelTie) -> Result<Interval> {
    let free = |u: &Interval| m.summands().iter().all(|(v, _)| alg.ext_interval(u, v) == 0);
    let candidate = match tie {
        PeelTie::Lexicographic => m.summands().iter().map(|(u, _)| *u).find(free),
        PeelTie::ReverseLexicographic => m.summands().iter().rev().map(|(u, _)| *u).find(free),
    };
    candidate.ok_or_else(|| internal!("Ext cycle among the summands of {m}"))
}

/// Memoized Poincaré polynomials for one quiver.
///
/// The cache is shared between threads and only ever grows; entries are never
/// overwritten with different values.
pub struct Grassmannians {
    alg: Arc<PathAlgebra>,
    tie: PeelTie,
    cache: DashMap<(RepClass, DimVector), PoincarePoly>,
}

impl Grassmannians {
    pub fn new(alg: Arc<PathAlgebra>) -> Self {
        Grassmannians::with_tie(alg, PeelTie::Lexicographic)
    }

    pub fn with_tie(alg: Arc<PathAlgebra>, tie: PeelTie) -> Self {
        Grassmannians { alg, tie, cache: DashMap::new() }
    }

    pub fn for_quiver(q: &TypeAQuiver) -> Result<Self> {
        Ok(Grassmannians::new(Arc::new(PathAlgebra::new(q)?)))
    }

    pub fn alg(&self) -> &PathAlgebra {
        &self.alg
    }

    pub fn alg_arc(&self) -> Arc<PathAlgebra> {
        Arc::clone(&self.alg)
    }

    pub fn quiver(&self) -> &TypeAQuiver {
        self.alg.quiver()
    }

    pub fn cache_len(&self) -> usize {
        self.cache.len()
    }

    /// Poincaré polynomial of `Gr_e(m)`.
    pub fn betti(&self, m: &RepClass, e: &DimVector) -> Result<PoincarePoly> {
        let q = self.alg.quiver();
        q.check_dim(e)?;
        m.check_in(q)?;
        self.betti_inner(m, e)
    }

    fn betti_inner(&self, m: &RepClass, e: &DimVector) -> Result<PoincarePoly> {
        let q = self.alg.quiver();
        let n = q.n();
        let d = m.dim(n);
        if !e.le(&d) {
            return Ok(PoincarePoly::zero());
        }
        if m.num_copies() <= 1 {
            return Ok(match m.copies().next() {
                Some(u) => gr_interval(q, &u, e),
                None => PoincarePoly::one(),
            });
        }
        let key = (m.clone(), e.clone());
        if let Some(p) = self.cache.get(&key) {
            return Ok(p.clone());
        }

        let s = first_peel(&self.alg, m, self.tie)?;
        let x = m.without_one(&s).expect("peeled summand present");
        let dx = x.dim(n);
        let mut total = PoincarePoly::zero();
        for f in e.box_below() {
            let g = e.checked_sub(&f).expect("f <= e");
            if !f.le(&dx) {
                continue;
            }
            let ps = gr_interval(q, &s, &g);
            if ps.is_zero() {
                continue;
            }
            let px = self.betti_inner(&x, &f)?;
            if px.is_zero() {
                continue;
            }
            let rest = dx.checked_sub(&f).expect("f <= dim X");
            let rank = euler_form(q, &g.signed(), &rest.signed())?;
            if rank < 0 {
                return Err(internal!(
                    "negative affine rank {rank} on a nonempty stratum of Gr_{e}({m}) at f = {f}, g = {g}"
                ));
            }
            total = &total + &(&px * &ps).shift(rank as usize);
        }
        self.cache.insert(key, total.clone());
        Ok(total)
    }

    /// Stratum records of `Gr_e(N)` for the cover described by `bd`.
    ///
    /// With `X = X1 + X'`, `S = S1 + S'` and `s = dim S^X`, each `f + g = e`
    /// gives two records. `i = 1`: base `P(f; X_S) P(g - s; S/S^X)`, shift
    /// `<g, dim X - f> + 1`. `i = 0`: base `P(f; X) P(g; S)` minus the `i = 1`
    /// base, shift `<g, dim X - f>`. Zero bases carry shift 0.
    pub fn strata_table(&self, bd: &BongartzData, e: &DimVector) -> Result<Vec<StratumRecord>> {
        let q = self.alg.quiver();
        q.check_dim(e)?;
        let n = q.n();
        let (x, s) = (bd.x(), bd.s());
        let dx = x.dim(n);
        let sx = bd.s_x.dim(n);
        let mut out = Vec::new();
        for f in e.box_below() {
            let g = e.checked_sub(&f).expect("f <= e");
            let full = &self.betti_inner(&x, &f)? * &self.betti_inner(&s, &g)?;
            let closed = match g.checked_sub(&sx) {
                Some(rest) => &self.betti_inner(&bd.x_s, &f)? * &self.betti_inner(&bd.s_mod, &rest)?,
                None => PoincarePoly::zero(),
            };
            let open = &full - &closed;
            if !open.is_nonnegative() {
                return Err(internal!(
                    "Gr_{f}(X) x Gr_{g}(S) minus the closed part has negative count {open} for {} < {}",
                    bd.m,
                    bd.n
                ));
            }
            let rank = euler_form(q, &g.signed(), &subtract_signed(&dx, &f))?;
            for (i, base, shift) in [(1u8, closed, rank + 1), (0u8, open, rank)] {
                let shift = if base.is_zero() {
                    0
                } else if shift < 0 {
                    return Err(internal!(
                        "negative shift {shift} on nonempty stratum (f = {f}, g = {g}, i = {i}) of {} < {}",
                        bd.m,
                        bd.n
                    ));
                } else {
                    shift as usize
                };
                out.push(StratumRecord { f: f.clone(), g: g.clone(), i, shift, base_poly: base });
            }
        }
        Ok(out)
    }
}

fn subtract_signed(a: &DimVector, b: &DimVector) -> Vec<i64> {
    a.iter().zip(b.iter()).map(|(&x, &y)| x as i64 - y as i64).collect()
}

/// One part of the partition of the total space of a minimal degeneration,
/// indexed by `(f, g, i)`: an affine bundle of rank `shift` over a base with
/// Poincaré polynomial `base_poly`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StratumRecord {
    pub f: DimVector,
    pub g: DimVector,
    pub i: u8,
    pub shift: usize,
    pub base_poly: PoincarePoly,
}

impl StratumRecord {
    pub fn contribution(&self) -> PoincarePoly {
        self.base_poly.shift(self.shift)
    }
}

/// `sum q^shift base` over the records with `i` in `which`.
pub fn strata_sum(records: &[StratumRecord], which: &[u8]) -> PoincarePoly {
    records.iter().filter(|r| which.contains(&r.i)).map(StratumRecord::contribution).sum()
}

/// `prod_v [d_v choose e_v]_q`, the Poincaré polynomial of `Gr_e` of the semisimple class.
pub fn gaussian_product(d: &DimVector, e: &DimVector) -> Result<PoincarePoly> {
    if d.len() != e.len() {
        return Err(Error::DimensionMismatch(format!("{d} vs {e}")));
    }
    Ok(d.iter().zip(e.iter()).fold(PoincarePoly::one(), |acc, (&dv, &ev)| {
        &acc * &PoincarePoly::gaussian_binomial(dv, ev)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degen::bongartz_data;

    fn iv(a: usize, b: usize) -> Interval {
        Interval::new(a, b).unwrap()
    }

    fn dv(v: &[usize]) -> DimVector {
        DimVector(v.to_vec())
    }

    fn grass(n: usize) -> Grassmannians {
        Grassmannians::for_quiver(&TypeAQuiver::equioriented(n)).unwrap()
    }

    #[test]
    fn interval_grassmannians() {
        let q = TypeAQuiver::equioriented(2);
        let p1 = iv(1, 2);
        assert_eq!(gr_interval(&q, &p1, &dv(&[0, 0])), PoincarePoly::one());
        assert_eq!(gr_interval(&q, &p1, &dv(&[1, 0])), PoincarePoly::zero());
        assert_eq!(gr_interval(&q, &p1, &dv(&[0, 1])), PoincarePoly::one());
        assert_eq!(gr_interval(&q, &p1, &dv(&[1, 1])), PoincarePoly::one());
        assert_eq!(gr_interval(&q, &iv(1, 1), &dv(&[0, 1])), PoincarePoly::zero());
    }

    #[test]
    fn peel_orders() {
        let g2 = grass(2);
        assert_eq!(peel_order(g2.alg(), &RepClass::single(iv(1, 2))).unwrap(), vec![iv(1, 2)]);
        let ss = RepClass::from_intervals([iv(1, 1), iv(2, 2)]);
        assert_eq!(peel_order(g2.alg(), &ss).unwrap(), vec![iv(2, 2), iv(1, 1)]);
        let g3 = grass(3);
        let m = RepClass::from_intervals([iv(1, 2), iv(3, 3)]);
        assert_eq!(peel_order(g3.alg(), &m).unwrap(), vec![iv(3, 3), iv(1, 2)]);
    }

    #[test]
    fn recursion_examples() {
        let g = grass(2);
        let m = RepClass::from_intervals([iv(1, 2), iv(1, 1)]);
        assert_eq!(g.betti(&m, &dv(&[1, 1])).unwrap().coeffs(), &[1, 1]);
        let p1_cubed = RepClass::from_pairs([(iv(1, 2), 3)]);
        assert_eq!(g.betti(&p1_cubed, &dv(&[1, 2])).unwrap().coeffs(), &[1, 2, 2, 1]);
        let pbw = RepClass::from_pairs([(iv(1, 2), 2), (iv(1, 1), 1), (iv(2, 2), 1)]);
        let p = g.betti(&pbw, &dv(&[1, 2])).unwrap();
        assert_eq!(p.coeffs(), &[1, 2, 3, 1]);
        assert_eq!(p.euler_characteristic(), 7);
        assert_eq!(g.betti(&RepClass::empty(), &dv(&[0, 0])).unwrap(), PoincarePoly::one());
        assert_eq!(g.betti(&RepClass::empty(), &dv(&[1, 0])).unwrap(), PoincarePoly::zero());
    }

    #[test]
    fn strata_a2() {
        let g = grass(2);
        let m = RepClass::single(iv(1, 2));
        let n = RepClass::from_intervals([iv(1, 1), iv(2, 2)]);
        let bd = bongartz_data(g.alg(), &m, &n).unwrap();

        let recs = g.strata_table(&bd, &dv(&[1, 0])).unwrap();
        let nonzero: Vec<_> = recs.iter().filter(|r| !r.base_poly.is_zero()).collect();
        assert_eq!(nonzero.len(), 1);
        assert_eq!((&nonzero[0].f, &nonzero[0].g, nonzero[0].i, nonzero[0].shift), (&dv(&[0, 0]), &dv(&[1, 0]), 1, 0));
        assert_eq!(nonzero[0].base_poly, PoincarePoly::one());

        let recs = g.strata_table(&bd, &dv(&[1, 1])).unwrap();
        let nonzero: Vec<_> = recs.iter().filter(|r| !r.base_poly.is_zero()).collect();
        assert_eq!(nonzero.len(), 1);
        assert_eq!((&nonzero[0].f, &nonzero[0].g, nonzero[0].i, nonzero[0].shift), (&dv(&[0, 1]), &dv(&[1, 0]), 0, 0));
    }

    #[test]
    fn strata_a3() {
        let g = grass(3);
        let m = RepClass::from_intervals([iv(1, 2), iv(3, 3)]);
        let n = RepClass::from_intervals([iv(1, 1), iv(2, 2), iv(3, 3)]);
        let bd = bongartz_data(g.alg(), &m, &n).unwrap();
        let recs = g.strata_table(&bd, &dv(&[1, 0, 0])).unwrap();
        let nonzero: Vec<_> = recs.iter().filter(|r| !r.base_poly.is_zero()).collect();
        assert_eq!(nonzero.len(), 1);
        let r = nonzero[0];
        assert_eq!((&r.f, &r.g, r.i, r.shift), (&dv(&[0, 0, 0]), &dv(&[1, 0, 0]), 1, 0));
        assert_eq!(r.base_poly, PoincarePoly::one());
    }

    #[test]
    fn semisimple_is_gaussian_product() {
        let g = grass(3);
        let d = dv(&[2, 1, 2]);
        let ss = RepClass::semisimple(&d);
        for e in d.box_below() {
            assert_eq!(g.betti(&ss, &e).unwrap(), gaussian_product(&d, &e).unwrap(), "e = {e}");
        }
    }
}
