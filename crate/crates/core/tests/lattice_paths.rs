use std::collections::BTreeMap;

use symcomb::lgv_paths::*;
use symcomb::polyring::{Bindings, LaurentPoly, Monomial, Var};

fn at_w(p: &LaurentPoly, w: i64) -> LaurentPoly {
    p.substitute(&Bindings::new().int(Var::W, w)).unwrap()
}

fn mono(exps: &[i32], w: i32) -> LaurentPoly {
    LaurentPoly::term(Monomial::x_pow(exps).mul(&Monomial::var_pow(Var::W, w)), 1)
}

/// Weights with the overall factor removed, as a sorted multiset of display strings.
fn stripped_weights(n: usize, m: usize) -> Vec<String> {
    let fams = enumerate_path_families(n, m, FamilyMode::BelowDisjoint, WMode::Symbolic).unwrap();
    let mut v: Vec<String> = fams
        .iter()
        .map(|(f, _)| f.path_weight(WMode::Symbolic).scale(f.signed_bijection_sign()).to_string())
        .collect();
    v.sort();
    v
}

fn sorted(list: Vec<LaurentPoly>) -> Vec<String> {
    let mut v: Vec<String> = list.into_iter().map(|p| p.to_string()).collect();
    v.sort();
    v
}

#[test]
fn two_paths_odd_fixture() {
    // the printed list has a missing product sign in one item; read as -X1^-1 X2
    let expected = sorted(vec![
        mono(&[0, 0], 1).scale(-1),
        mono(&[1, 0], 0).scale(-1),
        mono(&[-1, 0], 0).scale(-1),
        mono(&[0, 1], 0).scale(-1),
        mono(&[0, -1], 0).scale(-1),
        mono(&[-1, 1], 0).scale(-1),
        mono(&[-1, -1], 0).scale(-1),
        mono(&[0, 0], 0).scale(-1),
        mono(&[1, 1], 0).scale(-1),
        mono(&[1, -1], 0).scale(-1),
    ]);
    assert_eq!(stripped_weights(2, 3), expected);
    let factor = overall_factor(2, 3, WMode::Symbolic).scale(-1);
    let total = path_family_sum(2, 3, FamilyMode::BelowDisjoint, WMode::Symbolic).unwrap();
    let listed: LaurentPoly = expected_polys_odd().iter().fold(LaurentPoly::zero(), |a, b| a + b.clone());
    assert_eq!(total, &listed * &factor);
}

fn expected_polys_odd() -> Vec<LaurentPoly> {
    vec![
        mono(&[0, 0], 1),
        mono(&[1, 0], 0),
        mono(&[-1, 0], 0),
        mono(&[0, 1], 0),
        mono(&[0, -1], 0),
        mono(&[-1, 1], 0),
        mono(&[-1, -1], 0),
        mono(&[0, 0], 0),
        mono(&[1, 1], 0),
        mono(&[1, -1], 0),
    ]
    .into_iter()
    .map(|p| p.scale(-1))
    .collect()
}

#[test]
fn two_paths_even_fixture() {
    let mut extra = vec![
        mono(&[0, 0], 0).scale(-1),
        mono(&[0, 0], 1).scale(-1),
        mono(&[1, 0], 0).scale(-1),
        mono(&[-1, 0], 0).scale(-1),
        mono(&[0, 1], 0).scale(-1),
        mono(&[0, -1], 0).scale(-1),
        mono(&[0, 0], 0).scale(-1),
        mono(&[0, 0], 1),
    ];
    extra.extend(expected_polys_odd());
    assert_eq!(stripped_weights(2, 2), sorted(extra));
}

#[test]
fn family_sums_equal_determinant() {
    for (n, m) in [(1, 0), (1, 1), (1, 2), (2, 1), (2, 2), (2, 3), (2, 4), (3, 2), (3, 3)] {
        let rhs = rhs_determinant(n, m).unwrap();
        assert_eq!(path_family_sum(n, m, FamilyMode::AllSigned, WMode::Symbolic).unwrap(), rhs, "n={n} m={m}");
        assert_eq!(path_family_sum(n, m, FamilyMode::BelowDisjoint, WMode::Symbolic).unwrap(), rhs, "n={n} m={m}");
    }
}

#[test]
fn nonintersecting_reduction_for_numeric_w() {
    for (n, m) in [(1, 1), (2, 2), (2, 3), (2, 4), (3, 2), (3, 3)] {
        let rhs = rhs_determinant(n, m).unwrap();
        for (wmode, w) in [(WMode::Zero, 0), (WMode::One, 1)] {
            let ni = path_family_sum(n, m, FamilyMode::NonIntersecting, wmode).unwrap();
            let all = path_family_sum(n, m, FamilyMode::AllSigned, wmode).unwrap();
            assert_eq!(ni, all, "n={n} m={m} w={w}");
            assert_eq!(ni, at_w(&rhs, w), "n={n} m={m} w={w}");
        }
    }
}

#[test]
fn plane_partition_generating_functions() {
    let cases = [
        (1, 0, Parity::Odd),
        (1, 1, Parity::Even),
        (2, 0, Parity::Odd),
        (2, 2, Parity::Odd),
        (2, 1, Parity::Even),
        (2, 2, Parity::Even),
        (3, 1, Parity::Odd),
        (3, 2, Parity::Odd),
        (3, 2, Parity::Even),
    ];
    for (n, l, parity) in cases {
        let rhs = at_w(&rhs_determinant(n, parity.m(l)).unwrap(), 0);
        assert_eq!(enumerate_pp_pairs(n, l, parity).unwrap(), rhs, "n={n} l={l} {parity:?}");
    }
    let single = pp_pairs(1, 0, Parity::Odd);
    assert_eq!(single.len(), 1);
    assert!(single[0].0.p[0].is_empty() && single[0].0.q[0].is_empty());
    assert!(enumerate_pp_pairs(3, 0, Parity::Odd).is_err());
}

#[test]
fn paths_to_pairs_is_a_weight_preserving_bijection() {
    for (n, l, parity) in [(1, 0, Parity::Odd), (2, 1, Parity::Even), (2, 2, Parity::Odd), (2, 2, Parity::Even), (3, 1, Parity::Odd), (3, 2, Parity::Even)] {
        let m = parity.m(l);
        let fams = enumerate_path_families(n, m, FamilyMode::NonIntersecting, WMode::Zero).unwrap();
        let mut mapped: BTreeMap<PlanePartitionPair, LaurentPoly> = BTreeMap::new();
        for (f, w) in &fams {
            let pair = paths_to_plane_partitions(f, l, parity).unwrap();
            assert!(pair.is_valid(n, l, parity), "{pair:?}");
            assert_eq!(f.nonintersecting_sign(), 1);
            assert!(mapped.insert(pair, w.clone()).is_none(), "map not injective");
        }
        let direct: BTreeMap<PlanePartitionPair, LaurentPoly> = pp_pairs(n, l, parity).into_iter().collect();
        assert_eq!(mapped, direct, "n={n} l={l} {parity:?}");
    }
}

fn family(steps: &[&str], l: usize, parity: Parity) -> PathFamily {
    let n = steps.len();
    let fam = PathFamily {
        paths: steps
            .iter()
            .enumerate()
            .map(|(k, s)| path_from_steps(k + 1, StartKind::Second, n - k, s))
            .collect(),
    };
    for p in &fam.paths {
        assert!(p.is_valid());
        assert!(endpoints(n, parity.m(l), p.end_index, true).contains(&p.end()), "path {} ends at {:?}", p.start_index, p.end());
    }
    let mut seen = std::collections::HashSet::new();
    for p in &fam.paths {
        for pt in p.points() {
            assert!(seen.insert(pt), "paths meet at {pt:?}");
        }
    }
    fam
}

const SEVEN_PATHS: [&str; 7] = [
    "DDDDDDD U HHVHHH",
    "DDDD U DDD U DD U VHHVH",
    "DDD U DDD U DDD U D UU HVHV",
    "DDD UU DDDDDD UU DD UU D U VVV",
    "DDDDD UU DD U DD UU DDD UUUU VV",
    "U DDDDDD U DD UU DDD U D UUUUUU V",
    "UU DDDDDDD U D UU DDDD UUUUUUUU",
];

#[test]
fn seven_paths_odd() {
    let fam = family(&SEVEN_PATHS, 12, Parity::Odd);
    let pair = paths_to_plane_partitions(&fam, 12, Parity::Odd).unwrap();
    let p: Vec<Vec<u32>> = vec![
        vec![12, 12, 12, 12, 12, 12, 12, 11, 9, 9, 9, 9],
        vec![11, 11, 11, 11, 11, 11, 10, 10, 8, 8, 8, 7],
        vec![10, 10, 10, 10, 10, 8, 8, 7, 7, 5, 5, 5],
        vec![8, 8, 8, 6, 6, 6, 6, 6, 6, 4, 4, 2],
        vec![6, 6, 6, 5, 5, 5, 4, 4, 4, 3],
        vec![4, 4, 4, 4, 3, 3, 3, 2, 2],
        vec![2, 2, 2, 2, 2, 2, 2],
    ];
    let q: Vec<Vec<u32>> = vec![vec![6, 5, 4, 2, 1], vec![5, 3, 2], vec![3, 1], vec![], vec![], vec![], vec![]];
    assert_eq!(pair.p, p);
    assert_eq!(pair.q, q);
    assert!(pair.is_valid(7, 12, Parity::Odd));
    let fw = fam.path_weight(WMode::Zero) * overall_factor(7, 25, WMode::Zero);
    assert_eq!(pair.weight(Parity::Odd, 12), fw);
}

#[test]
fn seven_paths_even() {
    let steps = [
        SEVEN_PATHS[0],
        SEVEN_PATHS[1],
        SEVEN_PATHS[2],
        SEVEN_PATHS[3],
        "DDDDD UU DD U DD UU DDD UUUU VH",
        "U DDDDDD U DD UU DDD U D UUUUUU H",
        "UU DDDDDDD U D UU DDDD UUUUUUUU D",
    ];
    let fam = family(&steps, 13, Parity::Even);
    let pair = paths_to_plane_partitions(&fam, 13, Parity::Even).unwrap();
    assert!(pair.is_valid(7, 13, Parity::Even));
    // rows 2..7 of P and the top three rows of Q are as drawn
    let odd = paths_to_plane_partitions(&family(&SEVEN_PATHS, 12, Parity::Odd), 12, Parity::Odd).unwrap();
    assert_eq!(pair.p[1..], odd.p[1..]);
    assert_eq!(pair.q[..3], odd.q[..3]);
    // the last step of the seventh path lies on the axis at distance 0, so the first
    // row of P gains an entry 1
    let mut first = odd.p[0].clone();
    first.push(1);
    assert_eq!(pair.p[0], first);
    // inner cells sit in the rows of the paths that end at the second point of E'
    assert_eq!(pair.q_inner, vec![true, true, true, true, false, false, false]);
    assert_eq!(pair.q[4], vec![2]);
    assert_eq!(pair.q[5], vec![1]);
    assert_eq!(pair.completed_q()[..4].iter().map(|r| r[0]).collect::<Vec<_>>(), vec![7, 6, 5, 4]);
}

#[test]
fn lgv_matrix_small_entries() {
    // n = 1: the single path generating function
    for m in 1..=4 {
        assert_eq!(lgv_entry_matrix(1, m), path_matrix(1, m, WMode::Symbolic));
    }
    for (n, m) in [(2, 5), (3, 2), (3, 5)] {
        assert_eq!(lgv_entry_matrix(n, m), path_matrix(n, m, WMode::Symbolic), "n={n} m={m}");
    }
}

#[test]
fn report_verifiers() {
    for n in 1..=2 {
        for m in 1..=3 {
            for w in [WMode::Symbolic, WMode::Zero, WMode::One] {
                let r = verify_path_families(n, m, w);
                assert!(r.verified(), "n={n} m={m} {w:?}: {:?}", r.first_mismatch);
            }
        }
    }
    for n in 1..=2 {
        for l in 1..=2 {
            for p in [Parity::Odd, Parity::Even] {
                assert!(verify_plane_partitions(n, l, p).verified(), "n={n} l={l} {p:?}");
            }
        }
    }
    for n in 1..=2 {
        assert!(verify_two_line_arrays(n, 3).verified());
    }
}
