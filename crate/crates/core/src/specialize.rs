//! Graded-dimension checks for specialization maps along degenerations.
//!
//! Along a minimal degeneration `M < N` the map `H*(Gr_e(N)) -> H*(Gr_e(M))` is
//! surjective, so `P_M <= P_N` coefficientwise, and its kernel is carried exactly
//! by the `i = 1` strata of the partition of `Gr_e(N)`.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::degen::{
    bongartz_data, bongartz_data_of_cover, boundary_failures, degeneration_poset, hom_leq, interval_poset, BongartzData,
};
use crate::error::{internal, Error, Result};
use crate::grass::{gaussian_product, strata_sum, Grassmannians, StratumRecord};
use crate::homalg::PathAlgebra;
use crate::poly::PoincarePoly;
use crate::quiver::{enumerate_rep_classes, DimVector, Interval, RepClass, TypeAQuiver};

/// One link `M < N` of a chain at a fixed `e`.
#[derive(Clone, Debug, Serialize)]
pub struct CoverReport {
    pub m: RepClass,
    pub n: RepClass,
    pub bongartz: BongartzData,
    pub p_n: PoincarePoly,
    pub p_m: PoincarePoly,
    pub kernel: PoincarePoly,
    pub strata: Vec<StratumRecord>,
    pub i1_sum: PoincarePoly,
    pub monotone: bool,
    pub identity_ok: bool,
}

/// Specialization from `N` down to `M` along a saturated chain.
#[derive(Clone, Debug, Serialize)]
pub struct SpecializationReport {
    pub quiver: TypeAQuiver,
    pub e: DimVector,
    pub m: RepClass,
    pub n: RepClass,
    pub p_n: PoincarePoly,
    pub p_m: PoincarePoly,
    pub kernel: PoincarePoly,
    /// links from the top `N` down to `M`
    pub chain: Vec<CoverReport>,
    pub monotone: bool,
    pub identity_ok: bool,
    /// per-link kernels add up to the end-to-end kernel
    pub telescopes: bool,
}

impl SpecializationReport {
    pub fn ok(&self) -> bool {
        self.monotone && self.identity_ok && self.telescopes
    }
}

fn cover_report(g: &Grassmannians, bd: BongartzData, e: &DimVector) -> Result<CoverReport> {
    let p_n = g.betti(&bd.n, e)?;
    let p_m = g.betti(&bd.m, e)?;
    let kernel = &p_n - &p_m;
    let strata = g.strata_table(&bd, e)?;
    let i1_sum = strata_sum(&strata, &[1]);
    Ok(CoverReport {
        m: bd.m.clone(),
        n: bd.n.clone(),
        monotone: kernel.is_nonnegative(),
        identity_ok: kernel == i1_sum,
        bongartz: bd,
        p_n,
        p_m,
        kernel,
        strata,
        i1_sum,
    })
}

fn aggregate(g: &Grassmannians, m: &RepClass, n: &RepClass, e: &DimVector, chain: Vec<CoverReport>) -> Result<SpecializationReport> {
    let p_n = g.betti(n, e)?;
    let p_m = g.betti(m, e)?;
    let kernel = &p_n - &p_m;
    let link_sum: PoincarePoly = chain.iter().map(|c| c.kernel.clone()).sum();
    Ok(SpecializationReport {
        quiver: g.quiver().clone(),
        e: e.clone(),
        m: m.clone(),
        n: n.clone(),
        monotone: kernel.is_nonnegative() && chain.iter().all(|c| c.monotone),
        identity_ok: chain.iter().all(|c| c.identity_ok),
        telescopes: link_sum == kernel,
        p_n,
        p_m,
        kernel,
        chain,
    })
}

/// Report for a single cover `m < n`; fails with [`Error::NotACover`] otherwise.
pub fn check_cover(g: &Grassmannians, m: &RepClass, n: &RepClass, e: &DimVector) -> Result<SpecializationReport> {
    g.quiver().check_dim(e)?;
    let bd = bongartz_data(g.alg(), m, n)?;
    let link = cover_report(g, bd, e)?;
    aggregate(g, m, n, e, vec![link])
}

/// The saturated chain from `n` down to `m` taking, at each step, the first
/// lower cover in canonical order that stays above `m`.
pub fn greedy_chain(g: &Grassmannians, m: &RepClass, n: &RepClass) -> Result<Vec<(RepClass, RepClass)>> {
    let poset = interval_poset(g.alg(), m, n)?;
    let bottom = poset.index_of(m).ok_or_else(|| internal!("{m} missing from its own interval"))?;
    let top = poset.index_of(n).ok_or_else(|| internal!("{n} missing from its own interval"))?;
    let mut links = Vec::new();
    let mut cur = top;
    while cur != bottom {
        let next = poset
            .covers
            .iter()
            .find(|&&(i, j)| j == cur && poset.le(bottom, i))
            .map(|&(i, _)| i)
            .ok_or_else(|| internal!("no lower cover of {} above {m}", poset.nodes[cur]))?;
        links.push((poset.nodes[next].clone(), poset.nodes[cur].clone()));
        cur = next;
    }
    Ok(links)
}

/// Report for an arbitrary degeneration `m <= n` through a greedy saturated chain.
pub fn check_degeneration(g: &Grassmannians, m: &RepClass, n: &RepClass, e: &DimVector) -> Result<SpecializationReport> {
    let q = g.quiver();
    q.check_dim(e)?;
    m.check_in(q)?;
    n.check_in(q)?;
    if m.dim(q.n()) != n.dim(q.n()) {
        return Err(Error::DimensionMismatch(format!("{m} and {n} have different dimension vectors")));
    }
    if !hom_leq(g.alg(), m, n)? {
        return Err(Error::NotADegeneration(format!("{m} is not below {n} in the Hom order")));
    }
    let chain = greedy_chain(g, m, n)?
        .into_iter()
        .map(|(lo, hi)| cover_report(g, bongartz_data_of_cover(g.alg(), &lo, &hi)?, e))
        .collect::<Result<Vec<_>>>()?;
    aggregate(g, m, n, e, chain)
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
    /// Refuse dimension vectors with more isomorphism classes than this.
    pub max_classes: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { jobs: None, max_classes: 5000 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CoverSummary {
    pub m: RepClass,
    pub n: RepClass,
    pub x1: Interval,
    pub s1: Interval,
    pub bongartz_ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoverCheck {
    pub cover: usize,
    pub e: DimVector,
    pub p_n: PoincarePoly,
    pub p_m: PoincarePoly,
    pub kernel: PoincarePoly,
    pub monotone: bool,
    pub identity_ok: bool,
}

/// Outcome of [`verify_theorem`]. Failures are data: `failures` counts them and
/// `failure_details` describes each.
#[derive(Clone, Debug, Serialize)]
pub struct VerifySummary {
    pub quiver: TypeAQuiver,
    pub dim: DimVector,
    pub sub: Vec<DimVector>,
    pub nodes: usize,
    pub covers: Vec<CoverSummary>,
    pub checks: Vec<CoverCheck>,
    pub gaussian_checks: usize,
    pub gaussian_failures: usize,
    pub failures: usize,
    pub failure_details: Vec<String>,
    pub wall_time_ms: u128,
}

impl VerifySummary {
    pub fn nonzero_kernels(&self) -> impl Iterator<Item = &CoverCheck> {
        self.checks.iter().filter(|c| !c.kernel.is_zero())
    }
}

/// Runs every check at dimension vector `d`: for each cover and each `0 <= e <= d`
/// monotonicity and the kernel identity, for each cover the Bongartz and boundary
/// conditions, and for each class the bound by the Gaussian product (an equality
/// for the semisimple class).
pub fn verify_theorem(g: &Grassmannians, d: &DimVector, opts: VerifyOptions) -> Result<VerifySummary> {
    match opts.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|err| Error::Invalid(format!("thread pool: {err}")))?
            .install(|| verify_inner(g, d, opts)),
        None => verify_inner(g, d, opts),
    }
}

fn verify_inner(g: &Grassmannians, d: &DimVector, opts: VerifyOptions) -> Result<VerifySummary> {
    let start = Instant::now();
    let q = g.quiver();
    q.check_dim(d)?;
    let classes = enumerate_rep_classes(q, d)?;
    if classes.len() > opts.max_classes {
        return Err(Error::TooLarge(format!("{} classes of dimension {d} (limit {})", classes.len(), opts.max_classes)));
    }
    let poset = degeneration_poset(g.alg(), d)?;
    let subs = d.box_below();
    let mut failures = Vec::new();

    let bds: Vec<BongartzData> = poset
        .covers
        .par_iter()
        .map(|&(i, j)| bongartz_data_of_cover(g.alg(), &poset.nodes[i], &poset.nodes[j]))
        .collect::<Result<_>>()?;
    let mut covers = Vec::with_capacity(bds.len());
    for bd in &bds {
        let problems = boundary_failures(g.alg(), bd)?;
        for p in &problems {
            failures.push(format!("{} < {}: {p}", bd.m, bd.n));
        }
        covers.push(CoverSummary { m: bd.m.clone(), n: bd.n.clone(), x1: bd.x1, s1: bd.s1, bongartz_ok: problems.is_empty() });
    }

    let tasks: Vec<(usize, &DimVector)> = (0..bds.len()).flat_map(|c| subs.iter().map(move |e| (c, e))).collect();
    let checks: Vec<CoverCheck> = tasks
        .par_iter()
        .map(|&(c, e)| {
            let r = cover_report(g, bds[c].clone(), e)?;
            Ok(CoverCheck {
                cover: c,
                e: e.clone(),
                p_n: r.p_n,
                p_m: r.p_m,
                kernel: r.kernel,
                monotone: r.monotone,
                identity_ok: r.identity_ok,
            })
        })
        .collect::<Result<_>>()?;
    for c in &checks {
        let cov = &covers[c.cover];
        if !c.monotone {
            failures.push(format!("{} < {} at e = {}: P_M = {} exceeds P_N = {}", cov.m, cov.n, c.e, c.p_m, c.p_n));
        }
        if !c.identity_ok {
            failures.push(format!("{} < {} at e = {}: kernel {} differs from the i = 1 strata", cov.m, cov.n, c.e, c.kernel));
        }
    }

    let semisimple = RepClass::semisimple(d);
    let node_tasks: Vec<(&RepClass, &DimVector)> =
        poset.nodes.iter().flat_map(|m| subs.iter().map(move |e| (m, e))).collect();
    let gaussian: Vec<Option<String>> = node_tasks
        .par_iter()
        .map(|&(m, e)| {
            let p = g.betti(m, e)?;
            let bound = gaussian_product(d, e)?;
            Ok(if !p.le(&bound) {
                Some(format!("P({m}, {e}) = {p} exceeds the Gaussian product {bound}"))
            } else if *m == semisimple && p != bound {
                Some(format!("semisimple P({m}, {e}) = {p} differs from the Gaussian product {bound}"))
            } else {
                None
            })
        })
        .collect::<Result<_>>()?;
    let gaussian_failures = gaussian.iter().flatten().count();
    failures.extend(gaussian.into_iter().flatten());

    Ok(VerifySummary {
        quiver: q.clone(),
        dim: d.clone(),
        sub: subs.clone(),
        nodes: poset.len(),
        covers,
        checks,
        gaussian_checks: node_tasks.len(),
        gaussian_failures,
        failures: failures.len(),
        failure_details: failures,
        wall_time_ms: start.elapsed().as_millis(),
    })
}

/// `M^i = P_1^{n+1-k} + sum_l (I_{i_l} + P_{i_l + 1})` on the equioriented `A_n`,
/// with `d = (n+1, ..., n+1)` and `e = (1, 2, ..., n)`.
pub fn pbw_rep(n: usize, i_tuple: &[usize]) -> Result<(RepClass, DimVector, DimVector)> {
    if n < 2 {
        return Err(Error::Invalid(format!("need n >= 2, got {n}")));
    }
    if i_tuple.is_empty() {
        return Err(Error::Invalid("empty index tuple".into()));
    }
    if i_tuple.windows(2).any(|w| w[0] >= w[1]) || i_tuple.iter().any(|&i| i < 1 || i > n - 1) {
        return Err(Error::Invalid(format!("indices {i_tuple:?} must increase strictly within 1..={}", n - 1)));
    }
    let q = TypeAQuiver::equioriented(n);
    let k = i_tuple.len();
    let mut m = RepClass::from_pairs([(q.projective(0), n + 1 - k)]);
    for &i in i_tuple {
        m.add(q.injective(i - 1), 1);
        m.add(q.projective(i), 1);
    }
    let d = DimVector(vec![n + 1; n]);
    let e = DimVector((1..=n).collect());
    if m.dim(n) != d {
        return Err(internal!("dim {m} = {} instead of {d}", m.dim(n)));
    }
    let generic = RepClass::from_pairs([(q.projective(0), n + 1)]);
    let alg = PathAlgebra::new(&q)?;
    if !hom_leq(&alg, &generic, &m)? {
        return Err(internal!("{generic} does not degenerate to {m}"));
    }
    Ok((m, d, e))
}
