//! Point counts of quiver Grassmannians over prime fields, and Poincaré
//! polynomials recovered from them by interpolation.
//!
//! This path shares nothing with the stratification recursion beyond the
//! explicit matrices of the representation: it counts tuples of subspaces
//! `U_v <= F_p^{d_v}` with `dim U_v = e_v` and `M_a(U_s) <= U_t` for every arrow.
//!
//! Subspaces are enumerated through their reduced row echelon forms on one of the
//! two alternating vertex classes of the path. The remaining vertices only see
//! enumerated neighbours, so their admissible subspaces are exactly those between
//! `W` (the sum of the images of incoming maps) and `K` (the intersection of the
//! preimages under outgoing maps), of which there are `[dim K - dim W, e - dim W]_p`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{internal, Error, Result};
use crate::explicit::explicit_of;
use crate::linalg::Matrix;
use crate::poly::PoincarePoly;
use crate::quiver::{DimVector, RepClass, TypeAQuiver};

/// Largest prime accepted by the counters.
pub const MAX_PRIME: u64 = 1 << 20;

/// Largest number of subspace tuples [`point_count_exhaustive`] will visit.
pub const EXHAUSTIVE_LIMIT: u128 = 10_000_000;

type FpMatrix = Vec<Vec<u64>>;

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut base, mut exp, mut acc) = (a % p, p - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Rank of a row list over `F_p`.
fn rank_mod(rows: &[Vec<u64>], cols: usize, p: u64) -> usize {
    let mut m: FpMatrix = rows.to_vec();
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, piv);
        let inv = inv_mod(m[r][c], p);
        for x in m[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..cols {
                    m[i][j] = (m[i][j] + (p - f) * m[r][j]) % p;
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

fn apply(mat: &FpMatrix, v: &[u64], p: u64) -> Vec<u64> {
    mat.iter().map(|row| row.iter().zip(v).fold(0, |acc, (a, b)| (acc + a * b) % p)).collect()
}

fn row_times(row: &[u64], mat: &FpMatrix, p: u64) -> Vec<u64> {
    let cols = mat.first().map_or(0, Vec::len);
    let mut out = vec![0; cols];
    for (a, mrow) in row.iter().zip(mat) {
        if *a != 0 {
            for (o, b) in out.iter_mut().zip(mrow) {
                *o = (*o + a * b) % p;
            }
        }
    }
    out
}

/// A subspace in reduced row echelon form with its annihilator.
#[derive(Clone, Debug)]
struct Subspace {
    basis: FpMatrix,
    /// rows `n` with `n . u = 0` for all `u` in the subspace; their common kernel is the subspace
    annihilator: FpMatrix,
}

/// Every `e`-dimensional subspace of `F_p^d`, one reduced row echelon form each.
fn subspaces(d: usize, e: usize, p: u64) -> Vec<Subspace> {
    let mut out = Vec::new();
    let mut pivots = Vec::with_capacity(e);
    pivot_sets(d, e, 0, &mut pivots, &mut |piv| {
        let free: Vec<(usize, usize)> = piv
            .iter()
            .enumerate()
            .flat_map(|(r, &c)| ((c + 1)..d).filter(|j| !piv.contains(j)).map(move |j| (r, j)))
            .collect();
        let total = (p as u128).pow(free.len() as u32);
        for code in 0..total {
            let mut basis = vec![vec![0u64; d]; e];
            for (r, &c) in piv.iter().enumerate() {
                basis[r][c] = 1;
            }
            let mut x = code;
            for &(r, j) in &free {
                basis[r][j] = (x % p as u128) as u64;
                x /= p as u128;
            }
            let annihilator = (0..d)
                .filter(|j| !piv.contains(j))
                .map(|f| {
                    let mut v = vec![0u64; d];
                    v[f] = 1;
                    for (r, &c) in piv.iter().enumerate() {
                        v[c] = (p - basis[r][f]) % p;
                    }
                    v
                })
                .collect();
            out.push(Subspace { basis, annihilator });
        }
    });
    out
}

fn pivot_sets(d: usize, e: usize, start: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if cur.len() == e {
        f(cur);
        return;
    }
    for c in start..d {
        if d - c < e - cur.len() {
            break;
        }
        cur.push(c);
        pivot_sets(d, e, c + 1, cur, f);
        cur.pop();
    }
}

/// `[n choose k]_p`, the number of `k`-dimensional subspaces of `F_p^n`.
///
/// Panics if the count does not fit in a `u128`.
pub fn subspace_count(n: usize, k: usize, p: u64) -> u128 {
    checked_subspace_count(n, k, p).expect("subspace count overflows u128")
}

fn checked_subspace_count(n: usize, k: usize, p: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let p = p as u128;
    let mut c: u128 = 1;
    for i in 0..k {
        let num = p.checked_pow((n - i) as u32)? - 1;
        let den = p.checked_pow((i + 1) as u32)? - 1;
        c = c.checked_mul(num)? / den;
    }
    Some(c)
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|k| k * k <= p).all(|k| p % k != 0)
}

/// The first `k` primes.
pub fn first_primes(k: usize) -> Vec<u64> {
    (2u64..).filter(|&p| is_prime(p)).take(k).collect()
}

fn check_prime(p: u64) -> Result<()> {
    if !is_prime(p) || p > MAX_PRIME {
        return Err(Error::Invalid(format!("{p} is not a prime below {MAX_PRIME}")));
    }
    Ok(())
}

struct ModRep {
    dims: Vec<usize>,
    maps: Vec<FpMatrix>,
}

fn reduce_mod(q: &TypeAQuiver, m: &RepClass, p: u64) -> Result<ModRep> {
    let rep = explicit_of(q, m);
    let maps = rep.maps().iter().map(|mat| to_fp(mat, p)).collect::<Result<_>>()?;
    Ok(ModRep { dims: rep.dims().to_vec(), maps })
}

fn to_fp(mat: &Matrix, p: u64) -> Result<FpMatrix> {
    let entries = mat.to_i64().ok_or_else(|| internal!("non-integral matrix cannot be reduced mod {p}"))?;
    let cols = mat.cols();
    Ok((0..mat.rows())
        .map(|i| entries[i * cols..(i + 1) * cols].iter().map(|&x| x.rem_euclid(p as i64) as u64).collect())
        .collect())
}

/// Number of `F_p`-points of `Gr_e(m)`.
pub fn point_count(q: &TypeAQuiver, m: &RepClass, e: &DimVector, p: u64) -> Result<u128> {
    point_count_budgeted(q, m, e, p, u128::MAX)
}

fn enumeration_plan(q: &TypeAQuiver, d: &DimVector, e: &DimVector, p: u64) -> (Vec<usize>, u128) {
    let cost = |parity: usize| -> u128 {
        (0..q.n()).filter(|v| v % 2 == parity).fold(1u128, |acc, v| acc.saturating_mul(checked_subspace_count(d[v], e[v], p).unwrap_or(u128::MAX)))
    };
    let (even, odd) = (cost(0), cost(1));
    let parity = if odd < even { 1 } else { 0 };
    ((0..q.n()).filter(|v| v % 2 == parity).collect(), even.min(odd))
}

fn point_count_budgeted(q: &TypeAQuiver, m: &RepClass, e: &DimVector, p: u64, budget: u128) -> Result<u128> {
    check_prime(p)?;
    q.check_dim(e)?;
    m.check_in(q)?;
    let d = m.dim(q.n());
    if !e.le(&d) {
        return Ok(0);
    }
    // every partial sum and product below is bounded by the count of all subspace tuples
    let bound = (0..q.n()).try_fold(1u128, |acc, v| acc.checked_mul(checked_subspace_count(d[v], e[v], p)?));
    if bound.is_none() {
        return Err(Error::TooLarge(format!("point count of Gr_{e}({m}) over F_{p} exceeds 128 bits")));
    }
    let (enumerated, cost) = enumeration_plan(q, &d, e, p);
    if cost > budget {
        return Err(Error::TooLarge(format!("{cost} subspace tuples for Gr_{e}({m}) over F_{p}")));
    }
    let rep = reduce_mod(q, m, p)?;
    let spaces: Vec<Vec<Subspace>> = enumerated.iter().map(|&v| subspaces(d[v], e[v], p)).collect();
    let mut chosen: Vec<Option<&Subspace>> = vec![None; q.n()];
    Ok(count_rec(q, &rep, e, p, &enumerated, &spaces, 0, &mut chosen))
}

#[allow(clippy::too_many_arguments)]
fn count_rec<'a>(
    q: &TypeAQuiver,
    rep: &ModRep,
    e: &DimVector,
    p: u64,
    enumerated: &[usize],
    spaces: &'a [Vec<Subspace>],
    depth: usize,
    chosen: &mut Vec<Option<&'a Subspace>>,
) -> u128 {
    if depth == enumerated.len() {
        return (0..q.n())
            .filter(|v| chosen[*v].is_none())
            .map(|v| free_vertex_count(q, rep, e, p, v, chosen))
            .try_fold(1u128, |acc, c| if c == 0 { None } else { Some(acc * c) })
            .unwrap_or(0);
    }
    let v = enumerated[depth];
    let mut total = 0u128;
    for s in &spaces[depth] {
        chosen[v] = Some(s);
        total += count_rec(q, rep, e, p, enumerated, spaces, depth + 1, chosen);
    }
    chosen[v] = None;
    total
}

// Subspaces of dimension e_v at v between W (images from in-neighbours) and
// K (common preimage of out-neighbours' subspaces).
fn free_vertex_count(q: &TypeAQuiver, rep: &ModRep, e: &DimVector, p: u64, v: usize, chosen: &[Option<&Subspace>]) -> u128 {
    let dv = rep.dims[v];
    let mut images: Vec<Vec<u64>> = Vec::new();
    let mut constraints: Vec<Vec<u64>> = Vec::new();
    for k in 0..q.num_edges() {
        let (s, t) = q.edge(k);
        if t == v {
            let u = chosen[s].expect("neighbours of a free vertex are enumerated");
            images.extend(u.basis.iter().map(|b| apply(&rep.maps[k], b, p)));
        } else if s == v {
            let u = chosen[t].expect("neighbours of a free vertex are enumerated");
            constraints.extend(u.annihilator.iter().map(|nrow| row_times(nrow, &rep.maps[k], p)));
        }
    }
    let w = rank_mod(&images, dv, p);
    let k = dv - rank_mod(&constraints, dv, p);
    let contained = images.iter().all(|img| constraints.iter().all(|c| c.iter().zip(img).fold(0, |acc, (a, b)| (acc + a * b) % p) == 0));
    if !contained || e[v] < w || e[v] > k {
        return 0;
    }
    subspace_count(k - w, e[v] - w, p)
}

/// Reference counter enumerating a subspace at every vertex and testing every arrow.
/// Only usable for very small cases; it exists to cross-check [`point_count`].
pub fn point_count_exhaustive(q: &TypeAQuiver, m: &RepClass, e: &DimVector, p: u64) -> Result<u128> {
    check_prime(p)?;
    q.check_dim(e)?;
    m.check_in(q)?;
    let d = m.dim(q.n());
    if !e.le(&d) {
        return Ok(0);
    }
    let tuples = (0..q.n()).try_fold(1u128, |acc, v| acc.checked_mul(checked_subspace_count(d[v], e[v], p)?));
    if tuples.is_none_or(|t| t > EXHAUSTIVE_LIMIT) {
        return Err(Error::TooLarge(format!("too many subspace tuples for Gr_{e}({m}) over F_{p}")));
    }
    let rep = reduce_mod(q, m, p)?;
    let spaces: Vec<Vec<Subspace>> = (0..q.n()).map(|v| subspaces(d[v], e[v], p)).collect();
    let mut idx = vec![0usize; q.n()];
    let mut total = 0u128;
    if spaces.iter().any(Vec::is_empty) {
        return Ok(0);
    }
    loop {
        let ok = (0..q.num_edges()).all(|k| {
            let (s, t) = q.edge(k);
            let (us, ut) = (&spaces[s][idx[s]], &spaces[t][idx[t]]);
            us.basis.iter().all(|b| {
                let img = apply(&rep.maps[k], b, p);
                ut.annihilator.iter().all(|n| n.iter().zip(&img).fold(0, |acc, (x, y)| (acc + x * y) % p) == 0)
            })
        });
        total += ok as u128;
        let mut v = 0;
        loop {
            if v == q.n() {
                return Ok(total);
            }
            idx[v] += 1;
            if idx[v] < spaces[v].len() {
                break;
            }
            idx[v] = 0;
            v += 1;
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct OracleOptions {
    /// Maximum number of enumerated subspace tuples per prime.
    pub budget: u128,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions { budget: 20_000_000 }
    }
}

/// Poincaré polynomial of `Gr_e(m)` from point counts: with `D = sum e_i (d_i - e_i)`
/// count over the first `D + 1` primes, interpolate, and confirm at one more prime.
pub fn betti_oracle(q: &TypeAQuiver, m: &RepClass, e: &DimVector, opts: OracleOptions) -> Result<PoincarePoly> {
    q.check_dim(e)?;
    m.check_in(q)?;
    let d = m.dim(q.n());
    if !e.le(&d) {
        return Ok(PoincarePoly::zero());
    }
    let degree: usize = d.iter().zip(e.iter()).map(|(di, ei)| ei * (di - ei)).sum();
    let primes = first_primes(degree + 2);
    let counts: Vec<u128> = primes
        .par_iter()
        .map(|&p| point_count_budgeted(q, m, e, p, opts.budget))
        .collect::<Result<_>>()?;
    let points: Vec<(i128, i128)> =
        primes.iter().zip(&counts).take(degree + 1).map(|(&p, &c)| (p as i128, c as i128)).collect();
    let coeffs = interpolate(&points);
    let mut ints = Vec::with_capacity(coeffs.len());
    for c in &coeffs {
        if !c.is_integer() || c.is_negative() {
            return Err(internal!(
                "point counts of Gr_{e}({m}) interpolate to a non-integral or negative coefficient {c}"
            ));
        }
        ints.push(c.to_integer().to_i64().ok_or_else(|| internal!("coefficient {c} out of range"))?);
    }
    let poly = PoincarePoly::new(ints);
    let (witness, expected) = (primes[degree + 1], counts[degree + 1]);
    if poly.eval(witness as i128) != expected as i128 {
        return Err(internal!(
            "interpolated {poly} for Gr_{e}({m}) predicts {} points over F_{witness}, counted {expected}",
            poly.eval(witness as i128)
        ));
    }
    Ok(poly)
}

/// Coefficients (low degree first) of the unique polynomial of degree `< points.len()`
/// through the given points, by Newton divided differences.
pub fn interpolate(points: &[(i128, i128)]) -> Vec<BigRational> {
    let k = points.len();
    let xs: Vec<BigRational> = points.iter().map(|&(x, _)| BigRational::from_integer(BigInt::from(x))).collect();
    let mut table: Vec<BigRational> = points.iter().map(|&(_, y)| BigRational::from_integer(BigInt::from(y))).collect();
    for level in 1..k {
        for i in (level..k).rev() {
            table[i] = (&table[i] - &table[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    // Horner on the Newton form
    let mut coeffs: Vec<BigRational> = vec![BigRational::zero(); k.max(1)];
    for i in (0..k).rev() {
        // coeffs <- coeffs * (x - xs[i]) + table[i]
        let mut next = vec![BigRational::zero(); k.max(1)];
        for (j, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if j + 1 < next.len() {
                next[j + 1] += c;
            }
            next[j] -= c * &xs[i];
        }
        next[0] += &table[i];
        coeffs = next;
    }
    while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
    if coeffs.len() == 1 && coeffs[0].is_zero() {
        coeffs.clear();
    }
    coeffs
}
