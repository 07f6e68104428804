//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
//!
//! Run with `cargo test -p qgrass --test acceptance` (add `--release` for speed).

use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;

use qgrass::degen::{ext_topological_order, theorem_conditions, bongartz_data_of_cover};
use qgrass::explicit::hom_dim_explicit;
use qgrass::grass::{Grassmannians, PeelTie};
use qgrass::pointcount::{point_count, point_count_exhaustive};
use qgrass::specialize::{check_degeneration, pbw_rep, verify_theorem, VerifyOptions, VerifySummary};
use qgrass::text::{parse_quiver, parse_rep};
use qgrass::{
    betti_oracle, enumerate_rep_classes, euler_form, explicit_of, DimVector, Interval, OracleOptions, PathAlgebra,
    PoincarePoly, RepClass, TauDirection, TypeAQuiver,
};

type Outcome = Result<String, String>;

fn dims_up_to_total(n: usize, total: usize) -> Vec<DimVector> {
    DimVector(vec![total; n]).box_below().into_iter().filter(|d| d.total() <= total).collect()
}

fn iv(a: usize, b: usize) -> Interval {
    Interval::new(a, b).unwrap()
}

fn dv(v: &[usize]) -> DimVector {
    DimVector(v.to_vec())
}

fn err(e: qgrass::Error) -> String {
    e.to_string()
}

/// Recursion and point-count oracle agree on A2 and A3, every orientation, |d| <= 5.
fn oracle_equivalence() -> Outcome {
    let mut cases = Vec::new();
    for n in 2..=3 {
        for q in TypeAQuiver::all_orientations(n) {
            let g = Arc::new(Grassmannians::for_quiver(&q).map_err(err)?);
            for d in dims_up_to_total(n, 5) {
                for m in enumerate_rep_classes(&q, &d).map_err(err)? {
                    for e in d.box_below() {
                        cases.push((Arc::clone(&g), m.clone(), e));
                    }
                }
            }
        }
    }
    let mismatches: Vec<String> = cases
        .par_iter()
        .filter_map(|(g, m, e)| {
            let q = g.quiver();
            let rec = g.betti(m, e);
            let orc = betti_oracle(q, m, e, OracleOptions::default());
            match (rec, orc) {
                (Ok(a), Ok(b)) if a == b => None,
                (a, b) => Some(format!("{q} {{{m}}} e={e}: recursion {a:?}, oracle {b:?}")),
            }
        })
        .collect();
    if mismatches.is_empty() {
        Ok(format!("{} cases agree", cases.len()))
    } else {
        Err(format!("{} of {} cases differ, first: {}", mismatches.len(), cases.len(), mismatches[0]))
    }
}

struct Sweep {
    summaries: Vec<(Arc<PathAlgebra>, VerifySummary)>,
    secs: f64,
}

fn sweep_targets() -> Vec<(TypeAQuiver, DimVector)> {
    let mut out = Vec::new();
    for n in 1..=3 {
        for q in TypeAQuiver::all_orientations(n) {
            for d in DimVector(vec![2; n]).box_below() {
                out.push((q.clone(), d));
            }
        }
    }
    let q4 = TypeAQuiver::equioriented(4);
    for d in DimVector(vec![2; 4]).box_below() {
        out.push((q4.clone(), d));
    }
    out
}

fn run_sweep() -> Result<Sweep, String> {
    let start = Instant::now();
    let mut summaries = Vec::new();
    let mut current: Option<(TypeAQuiver, Grassmannians)> = None;
    for (q, d) in sweep_targets() {
        if current.as_ref().map(|(cq, _)| cq != &q).unwrap_or(true) {
            current = Some((q.clone(), Grassmannians::for_quiver(&q).map_err(err)?));
        }
        let g = &current.as_ref().unwrap().1;
        let s = verify_theorem(g, &d, VerifyOptions::default()).map_err(|e| format!("{q} d={d}: {e}"))?;
        summaries.push((g.alg_arc(), s));
    }
    Ok(Sweep { summaries, secs: start.elapsed().as_secs_f64() })
}

/// Every cover M < N and every e: P(M, e) <= P(N, e) coefficientwise.
fn monotonicity(sweep: &Sweep) -> Outcome {
    let (mut checks, mut covers) = (0, 0);
    for (_, s) in &sweep.summaries {
        covers += s.covers.len();
        for c in &s.checks {
            checks += 1;
            if !c.monotone {
                let cov = &s.covers[c.cover];
                return Err(format!("{} {{{}}} < {{{}}} e={}: {} vs {}", s.quiver, cov.m, cov.n, c.e, c.p_m, c.p_n));
            }
        }
    }
    Ok(format!("{covers} covers, {checks} (cover, e) checks over {} dimension vectors, sweep {:.1}s", sweep.summaries.len(), sweep.secs))
}

/// P_N - P_M equals the sum over the i = 1 strata.
fn kernel_identity(sweep: &Sweep) -> Outcome {
    let mut checks = 0;
    let mut nonzero = 0;
    for (_, s) in &sweep.summaries {
        for c in &s.checks {
            checks += 1;
            nonzero += usize::from(!c.kernel.is_zero());
            if !c.identity_ok {
                let cov = &s.covers[c.cover];
                return Err(format!("{} {{{}}} < {{{}}} e={}: kernel {}", s.quiver, cov.m, cov.n, c.e, c.kernel));
            }
        }
    }
    Ok(format!("{checks} identities hold, {nonzero} with nonzero kernel"))
}

/// P(M, e) bounded by the Gaussian product, with equality for the semisimple class.
fn gaussian_bound(sweep: &Sweep) -> Outcome {
    let mut checks = 0;
    for (_, s) in &sweep.summaries {
        checks += s.gaussian_checks;
        if s.gaussian_failures > 0 {
            let detail = s.failure_details.iter().find(|f| f.contains("Gaussian")).cloned().unwrap_or_default();
            return Err(format!("{} d={}: {} failures, e.g. {detail}", s.quiver, s.dim, s.gaussian_failures));
        }
    }
    Ok(format!("{checks} (class, e) bounds hold"))
}

/// Bongartz conditions, boundary modules, and middle terms on every cover.
fn bongartz(sweep: &Sweep) -> Outcome {
    let mut covers = 0;
    for (alg, s) in &sweep.summaries {
        for cov in &s.covers {
            covers += 1;
            if !cov.bongartz_ok {
                return Err(format!("{} {{{}}} < {{{}}}: {:?}", s.quiver, cov.m, cov.n, s.failure_details));
            }
            let common = cov.m.intersection(&cov.n);
            let m_extra = cov.m.difference(&common).expect("sub-multiset");
            let y1 = alg.middle_term(&cov.x1, &cov.s1).map_err(err)?;
            if y1 != m_extra {
                return Err(format!("{} {{{}}} < {{{}}}: middle term {{{y1}}}", s.quiver, cov.m, cov.n));
            }
            let bd = bongartz_data_of_cover(alg, &cov.m, &cov.n).map_err(err)?;
            let fails = theorem_conditions(alg, &bd).map_err(err)?;
            if !fails.is_empty() {
                return Err(format!("{} {{{}}} < {{{}}}: {}", s.quiver, cov.m, cov.n, fails.join("; ")));
            }
        }
    }
    Ok(format!("{covers} covers satisfy the conditions and reconstruct their middle terms"))
}

/// Pinned values for the equioriented A2 at e = (1, 2).
fn pinned_values() -> Outcome {
    let q = TypeAQuiver::equioriented(2);
    let g = Grassmannians::for_quiver(&q).map_err(err)?;
    let e = dv(&[1, 2]);
    let p1_cubed = RepClass::from_pairs([(iv(1, 2), 3)]);
    let (pbw, _, pbw_e) = pbw_rep(2, &[1]).map_err(err)?;
    let expect = |what: &str, got: &PoincarePoly, want: &[i64]| -> Result<(), String> {
        if got.coeffs() == want {
            Ok(())
        } else {
            Err(format!("{what}: got {got}, expected {}", PoincarePoly::new(want.to_vec())))
        }
    };
    if pbw_e != e || pbw != RepClass::from_pairs([(iv(1, 2), 2), (iv(1, 1), 1), (iv(2, 2), 1)]) {
        return Err(format!("PBW representation {{{pbw}}} at {pbw_e}"));
    }
    expect("betti(P1^3)", &g.betti(&p1_cubed, &e).map_err(err)?, &[1, 2, 2, 1])?;
    expect("oracle(P1^3)", &betti_oracle(&q, &p1_cubed, &e, OracleOptions::default()).map_err(err)?, &[1, 2, 2, 1])?;
    let p_pbw = g.betti(&pbw, &e).map_err(err)?;
    expect("betti(M^(1))", &p_pbw, &[1, 2, 3, 1])?;
    expect("oracle(M^(1))", &betti_oracle(&q, &pbw, &e, OracleOptions::default()).map_err(err)?, &[1, 2, 3, 1])?;
    if p_pbw.euler_characteristic() != 7 {
        return Err(format!("Euler characteristic {}", p_pbw.euler_characteristic()));
    }
    let report = check_degeneration(&g, &p1_cubed, &pbw, &e).map_err(err)?;
    expect("kernel", &report.kernel, &[0, 0, 1])?;
    if !report.ok() {
        return Err("PBW degeneration report flags a failure".into());
    }
    let smart = point_count(&q, &p1_cubed, &e, 2).map_err(err)?;
    let brute = point_count_exhaustive(&q, &p1_cubed, &e, 2).map_err(err)?;
    if (smart, brute) != (21, 21) {
        return Err(format!("point counts over F_2: {smart}, {brute}"));
    }
    Ok("1 + 2q + 2q^2 + q^3, 1 + 2q + 3q^2 + q^3 (chi 7), kernel q^2, 21 points over F_2".into())
}

/// Ext acyclicity, peel independence, hereditary identity, AR formula, translate
/// inverses and text round trips on n <= 4, all orientations, |d| <= 5.
fn structural() -> Outcome {
    let mut counts = [0usize; 6];
    for n in 1..=4 {
        for q in TypeAQuiver::all_orientations(n) {
            let alg = Arc::new(PathAlgebra::new(&q).map_err(err)?);
            let ivs: Vec<Interval> = alg.intervals().to_vec();
            let singles: Vec<RepClass> = ivs.iter().map(|u| RepClass::single(*u)).collect();
            ext_topological_order(&alg, &singles).map_err(err)?;
            counts[0] += 1;

            for s in &ivs {
                if let Some(t) = alg.tau(s, TauDirection::Forward) {
                    if alg.tau(&t, TauDirection::Inverse) != Some(*s) {
                        return Err(format!("{q}: tau^- tau {s} != {s}"));
                    }
                    counts[4] += 1;
                }
                for x in &ivs {
                    let ar = match alg.tau(s, TauDirection::Forward) {
                        Some(t) => hom_dim_explicit(alg.interval_rep(x), alg.interval_rep(&t)).map_err(err)?,
                        None => 0,
                    };
                    if alg.ext_interval(s, x) != ar {
                        return Err(format!("{q}: Ext({s}, {x}) = {} but Hom({x}, tau {s}) = {ar}", alg.ext_interval(s, x)));
                    }
                    counts[3] += 1;
                }
            }

            let lex = Grassmannians::with_tie(Arc::clone(&alg), PeelTie::Lexicographic);
            let rev = Grassmannians::with_tie(Arc::clone(&alg), PeelTie::ReverseLexicographic);
            let mut small = Vec::new();
            for d in dims_up_to_total(n, 5) {
                let classes = enumerate_rep_classes(&q, &d).map_err(err)?;
                for m in &classes {
                    let text = m.to_string();
                    if parse_rep(&text, &q).map_err(err)? != *m {
                        return Err(format!("{q}: '{text}' does not parse back"));
                    }
                    if alg.iso_identify(&explicit_of(&q, m)).map_err(err)? != *m {
                        return Err(format!("{q}: {{{m}}} not recovered from its matrices"));
                    }
                    counts[5] += 1;
                    for e in d.box_below() {
                        let (a, b) = (lex.betti(m, &e).map_err(err)?, rev.betti(m, &e).map_err(err)?);
                        if a != b {
                            return Err(format!("{q} {{{m}}} e={e}: peel orders give {a} and {b}"));
                        }
                        counts[1] += 1;
                    }
                }
                if d.total() <= 3 {
                    small.extend(classes);
                }
            }
            if parse_quiver(&q.to_string()).map_err(err)? != q {
                return Err(format!("{q} does not parse back"));
            }

            for m in &small {
                let fm = explicit_of(&q, m);
                for k in &small {
                    let fk = explicit_of(&q, k);
                    let hom = hom_dim_explicit(&fm, &fk).map_err(err)? as i64;
                    let ext = hom_dim_explicit(&fk, &explicit_of(&q, &alg.tau_class(m, TauDirection::Forward)))
                        .map_err(err)? as i64;
                    let chi = euler_form(&q, &m.dim(n).signed(), &k.dim(n).signed()).map_err(err)?;
                    if hom - ext != chi || alg.ext_dim(m, k).map_err(err)? as i64 != ext {
                        return Err(format!("{q}: hom {hom} - ext {ext} != <{{{m}}}, {{{k}}}> = {chi}"));
                    }
                    counts[2] += 1;
                }
            }
        }
    }
    Ok(format!(
        "{} acyclic Ext graphs, {} peel comparisons, {} hereditary pairs, {} AR pairs, {} translate inverses, {} round trips",
        counts[0], counts[1], counts[2], counts[3], counts[4], counts[5]
    ))
}

fn report(id: usize, name: &str, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = f();
    let secs = start.elapsed().as_secs_f64();
    match outcome {
        Ok(detail) => {
            println!("PASS [{id}] {name}: {detail} ({secs:.1}s)");
            true
        }
        Err(detail) => {
            println!("FAIL [{id}] {name}: {detail} ({secs:.1}s)");
            false
        }
    }
}

fn main() -> ExitCode {
    let mut ok = true;
    ok &= report(1, "oracle equivalence", oracle_equivalence);
    match run_sweep() {
        Ok(sweep) => {
            ok &= report(2, "specialization monotonicity", || monotonicity(&sweep));
            ok &= report(3, "kernel decomposition", || kernel_identity(&sweep));
            ok &= report(4, "Gaussian product bound", || gaussian_bound(&sweep));
            ok &= report(5, "Bongartz validation", || bongartz(&sweep));
        }
        Err(e) => {
            for (id, name) in [(2, "specialization monotonicity"), (3, "kernel decomposition"), (4, "Gaussian product bound"), (5, "Bongartz validation")] {
                println!("FAIL [{id}] {name}: sweep aborted: {e}");
            }
            ok = false;
        }
    }
    ok &= report(6, "pinned values", pinned_values);
    ok &= report(7, "structural invariants", structural);
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
