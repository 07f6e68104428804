//! Cross-checks between independent computations of the same quantity.

use std::collections::HashMap;

use qgrass::grass::gaussian_product;
use qgrass::pointcount::{first_primes, point_count, point_count_exhaustive, subspace_count};
use qgrass::{
    betti_oracle, enumerate_rep_classes, intervals_of, DimVector, Grassmannians, Interval, OracleOptions, PoincarePoly,
    RepClass, TypeAQuiver,
};

fn iv(a: usize, b: usize) -> Interval {
    Interval::new(a, b).unwrap()
}

fn dv(v: &[usize]) -> DimVector {
    DimVector(v.to_vec())
}

// Coefficient of x^d in prod_U 1 / (1 - x^dim U), by unbounded knapsack over the intervals.
fn multiset_count(q: &TypeAQuiver, d: &DimVector) -> u64 {
    let boxes = d.box_below();
    let mut ways: HashMap<DimVector, u64> = boxes.iter().map(|b| (b.clone(), u64::from(b.is_zero()))).collect();
    for u in intervals_of(q) {
        let ind = u.dim(q.n());
        let mut sorted = boxes.clone();
        sorted.sort_by_key(DimVector::total);
        for b in sorted {
            if let Some(rest) = b.checked_sub(&ind) {
                let add = ways[&rest];
                *ways.get_mut(&b).unwrap() += add;
            }
        }
    }
    ways[d]
}

#[test]
fn enumeration_matches_generating_function() {
    for n in 1..=4 {
        let q = TypeAQuiver::equioriented(n);
        for d in DimVector(vec![3; n]).box_below() {
            let classes = enumerate_rep_classes(&q, &d).unwrap();
            assert_eq!(classes.len() as u64, multiset_count(&q, &d), "d = {d}");
            assert!(classes.windows(2).all(|w| w[0] < w[1]));
            assert!(classes.iter().all(|m| m.dim(n) == d));
        }
    }
}

#[test]
fn enumeration_examples() {
    let q2 = TypeAQuiver::equioriented(2);
    assert_eq!(enumerate_rep_classes(&q2, &dv(&[1, 1])).unwrap().len(), 2);
    let q3 = TypeAQuiver::equioriented(3);
    let classes = enumerate_rep_classes(&q3, &dv(&[1, 1, 1])).unwrap();
    let text: Vec<String> = classes.iter().map(ToString::to_string).collect();
    assert_eq!(text, ["[1,1],[2,2],[3,3]", "[1,1],[2,3]", "[1,2],[3,3]", "[1,3]"]);
    assert_eq!(enumerate_rep_classes(&q3, &dv(&[0, 0, 0])).unwrap(), vec![RepClass::empty()]);
}

#[test]
fn smart_and_exhaustive_counts_agree() {
    for q in TypeAQuiver::all_orientations(3) {
        for d in dv(&[2, 1, 2]).box_below() {
            for m in enumerate_rep_classes(&q, &d).unwrap() {
                for e in d.box_below() {
                    for p in [2, 3] {
                        let a = point_count(&q, &m, &e, p).unwrap();
                        let b = point_count_exhaustive(&q, &m, &e, p).unwrap();
                        assert_eq!(a, b, "{q} {{{m}}} e={e} p={p}");
                    }
                }
            }
        }
    }
}

#[test]
fn semisimple_counts_are_gaussian() {
    let q = TypeAQuiver::equioriented(3);
    let d = dv(&[2, 3, 1]);
    let ss = RepClass::semisimple(&d);
    for e in d.box_below() {
        for p in first_primes(3) {
            let expected: u128 = d.iter().zip(e.iter()).map(|(&a, &b)| subspace_count(a, b, p)).product();
            assert_eq!(point_count(&q, &ss, &e, p).unwrap(), expected);
        }
        assert_eq!(
            Grassmannians::for_quiver(&q).unwrap().betti(&ss, &e).unwrap(),
            gaussian_product(&d, &e).unwrap()
        );
    }
}

#[test]
fn recursion_matches_oracle_on_a4() {
    for q in TypeAQuiver::all_orientations(4) {
        let g = Grassmannians::for_quiver(&q).unwrap();
        for d in [dv(&[1, 2, 2, 1]), dv(&[2, 1, 1, 2]), dv(&[1, 1, 2, 1])] {
            for m in enumerate_rep_classes(&q, &d).unwrap() {
                for e in d.box_below() {
                    let rec = g.betti(&m, &e).unwrap();
                    let orc = betti_oracle(&q, &m, &e, OracleOptions::default()).unwrap();
                    assert_eq!(rec, orc, "{q} {{{m}}} e={e}");
                }
            }
        }
    }
}

#[test]
fn worked_examples() {
    let q = TypeAQuiver::equioriented(2);
    let g = Grassmannians::for_quiver(&q).unwrap();
    assert_eq!(g.betti(&RepClass::single(iv(1, 2)), &dv(&[0, 1])).unwrap(), PoincarePoly::one());
    assert_eq!(g.betti(&RepClass::single(iv(1, 2)), &dv(&[1, 0])).unwrap(), PoincarePoly::zero());
    let pair = RepClass::from_intervals([iv(1, 2), iv(1, 2)]);
    assert_eq!(g.betti(&pair, &dv(&[1, 1])).unwrap().coeffs(), &[1, 1]);
    assert_eq!(g.betti(&RepClass::empty(), &dv(&[0, 0])).unwrap(), PoincarePoly::one());
}

#[test]
fn oracle_guard() {
    let q = TypeAQuiver::equioriented(1);
    let big = RepClass::from_pairs([(iv(1, 1), 12)]);
    let tight = OracleOptions { budget: 1000 };
    assert!(matches!(betti_oracle(&q, &big, &dv(&[6]), tight), Err(qgrass::Error::TooLarge(_))));
}
