use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use symcomb::polyring::LaurentPoly;
use symcomb::rsk::*;
use symcomb::schur_gt::GTPattern;

/// Every symmetric `n × n` matrix with entries in `0..=max`.
fn all_symmetric(n: usize, max: u32) -> Vec<SymMatrix> {
    let slots: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let total = (max as usize + 1).pow(slots.len() as u32);
    (0..total)
        .map(|mut code| {
            let mut e = vec![vec![0u32; n]; n];
            for &(i, j) in &slots {
                let v = (code % (max as usize + 1)) as u32;
                code /= max as usize + 1;
                e[i][j] = v;
                e[j][i] = v;
            }
            SymMatrix::new(e).unwrap()
        })
        .collect()
}

#[test]
fn symmetric_variant_exhaustive() {
    let mut checked = 0;
    for n in 1..=3 {
        for a in all_symmetric(n, 2) {
            let t = rsk_symmetric_forward(&a);
            assert!(t.is_valid(), "{a:?}");
            assert_eq!(rsk_symmetric_inverse(&t, n).unwrap(), a);
            assert_eq!(t, rsk_symmetric_classical(&a), "{a:?}");
            assert_eq!(t.weight(), a.weight());
            assert_eq!(gt_forward(&a).unwrap(), t.to_gt(n).unwrap());
            checked += 1;
        }
    }
    assert_eq!(checked, 3 + 27 + 729);
}

#[test]
fn symmetric_variant_entries_up_to_three() {
    let all = all_symmetric(3, 3);
    assert_eq!(all.len(), 4096);
    for a in all {
        let t = rsk_symmetric_forward(&a);
        assert_eq!(rsk_symmetric_inverse(&t, 3).unwrap(), a);
        assert_eq!(t, rsk_symmetric_classical(&a));
    }
}

#[test]
fn classical_symmetry_for_symmetric_matrices() {
    for a in all_symmetric(3, 1) {
        let (p, q) = rsk_two_line(&a.classical_array());
        assert_eq!(p, q);
    }
}

/// All tableaux with at most `size` cells and entries `≤ n`.
fn all_tableaux(n: u32, size: usize) -> Vec<SSYT> {
    let mut out = vec![SSYT::new()];
    let mut frontier = vec![SSYT::new()];
    for _ in 0..size {
        let mut next = Vec::new();
        for t in &frontier {
            for x in 1..=n {
                let mut u = t.clone();
                u.insert(x);
                next.push(u);
            }
        }
        next.sort_by(|a, b| format!("{a:?}").cmp(&format!("{b:?}")));
        next.dedup();
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

#[test]
fn inverse_then_forward_is_identity() {
    for t in all_tableaux(3, 5) {
        let a = rsk_symmetric_inverse(&t, 3).unwrap();
        assert_eq!(rsk_symmetric_forward(&a), t);
    }
}

#[test]
fn max_path_bounds_first_row() {
    for n in 2..=3 {
        for a in all_symmetric(n, 2) {
            let t = rsk_symmetric_forward(&a);
            let first = t.rows.first().map_or(0, |r| r.len()) as u64;
            let stat = max_path_statistic(&a);
            for m in 0..=12u64 {
                assert_eq!(stat <= m, first <= m, "{a:?}");
            }
        }
    }
}

fn worked_tableau() -> SSYT {
    SSYT {
        rows: vec![
            vec![1, 1, 1, 2, 2, 3, 5],
            vec![2, 2, 4, 5, 7, 8],
            vec![4, 5, 5, 7, 8],
            vec![5, 6, 6, 8],
            vec![7, 8],
        ],
    }
}

fn pattern(rows: &[&[i64]]) -> GTPattern {
    GTPattern { rows: rows.iter().map(|r| r.to_vec()).collect() }
}

#[test]
fn worked_pattern_insertion() {
    let before = pattern(&[
        &[3],
        &[2, 5],
        &[0, 2, 6],
        &[0, 1, 3, 6],
        &[0, 1, 3, 4, 7],
        &[0, 0, 3, 3, 4, 7],
        &[0, 0, 1, 3, 4, 5, 7],
        &[0, 0, 0, 2, 4, 5, 6, 7],
    ]);
    let after = pattern(&[
        &[3],
        &[2, 5],
        &[0, 2, 7],
        &[0, 1, 3, 7],
        &[0, 1, 3, 5, 7],
        &[0, 0, 3, 3, 5, 7],
        &[0, 0, 1, 3, 5, 5, 7],
        &[0, 0, 0, 2, 5, 5, 6, 7],
    ]);
    assert_eq!(worked_tableau().to_gt(8).unwrap(), before);
    assert_eq!(gt_insert(&before, 3), after);
    let mut t = worked_tableau();
    t.insert(3);
    assert_eq!(
        t.rows,
        vec![vec![1, 1, 1, 2, 2, 3, 3], vec![2, 2, 4, 5, 5, 8], vec![4, 5, 5, 7, 7], vec![5, 6, 6, 8, 8], vec![7, 8]]
    );
    assert_eq!(SSYT::from_gt(&after), t);
}

#[test]
fn gt_insert_matches_row_insertion_on_random_words() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let n: u32 = rng.gen_range(1..=6);
        let len = rng.gen_range(0..=12);
        let mut t = SSYT::new();
        for _ in 0..len {
            t.insert(rng.gen_range(1..=n));
        }
        let x = rng.gen_range(1..=n + 2);
        let rows = n.max(x) as usize;
        let p = t.to_gt(rows).unwrap();
        let mut u = t.clone();
        u.insert(x);
        let q = gt_insert(&p, x as usize);
        assert_eq!(q, u.to_gt(rows).unwrap());
    }
}

proptest! {
    #[test]
    fn classical_insertion_keeps_content(word in proptest::collection::vec(1u32..6, 0..20)) {
        let (p, q) = rsk_classical(&word);
        prop_assert!(p.is_valid());
        prop_assert!(q.is_valid());
        prop_assert_eq!(p.shape(), q.shape());
        let mut got: Vec<u32> = p.rows.concat();
        got.sort();
        let mut want = word.clone();
        want.sort();
        prop_assert_eq!(got, want);
    }
}

fn y(i: usize, e: i32) -> LaurentPoly {
    LaurentPoly::var_pow(symcomb::polyring::Var::X(i), e)
}

#[test]
fn split_patterns_match_determinant() {
    let mut lambdas: Vec<Vec<i64>> = Vec::new();
    for a in 0..=2i64 {
        lambdas.push(vec![2 * a]);
        for b in 0..=a {
            lambdas.push(vec![2 * a, 2 * b]);
        }
    }
    for a in 0..=1i64 {
        lambdas.push(vec![2 * a + 1]);
        for b in 0..=a {
            lambdas.push(vec![2 * a + 1, 2 * b + 1]);
        }
    }
    lambdas.push(vec![3, 3]);
    for l in lambdas {
        let r = verify_split(&l);
        assert!(r.verified(), "{l:?}: {:?}", r.first_mismatch);
    }
}

#[test]
fn empty_last_part_needs_no_extra_factor() {
    // λ = (0): a single pattern of weight 1, while halving the determinant gives 1/2
    let gf = enumerate_split_ortho(&[0]).unwrap();
    assert_eq!(gf, LaurentPoly::one());
    assert_eq!(so_odd_determinant(&[0]).unwrap(), LaurentPoly::one());
    // λ = (1,0): the determinant alone already equals the enumeration
    let gf = enumerate_split_ortho(&[2, 0]).unwrap();
    assert_eq!(gf, so_odd_determinant(&[2, 0]).unwrap());
    assert_eq!(gf.at_x_one().as_constant().unwrap(), 5.into());
}

#[test]
fn decreasing_orientation_is_unbounded() {
    for l in [vec![0], vec![2], vec![2, 0]] {
        let small = enumerate_split_ortho_patterns(&l, Orientation::Decreasing, 4).unwrap().len();
        let large = enumerate_split_ortho_patterns(&l, Orientation::Decreasing, 8).unwrap().len();
        assert!(large > small, "{l:?}");
        let inc4 = enumerate_split_ortho_patterns(&l, Orientation::Increasing, 4).unwrap().len();
        let inc8 = enumerate_split_ortho_patterns(&l, Orientation::Increasing, 8).unwrap().len();
        assert_eq!(inc4, inc8);
    }
}

#[test]
fn half_integer_single_row() {
    assert_eq!(enumerate_split_ortho(&[1]).unwrap(), y(1, -1) + y(1, 1));
}

#[test]
fn orthogonal_identity() {
    let r = verify_orthogonal(1, 1);
    assert!(r.verified());
    for n in 1..=2 {
        for m in 1..=4 {
            let r = verify_orthogonal(n, m);
            assert!(r.verified(), "n={n} m={m}: {:?}", r.first_mismatch);
        }
    }
    assert!(verify_orthogonal(3, 2).verified());
}

#[test]
fn roundtrip_report() {
    let r = verify_rsk_roundtrip(3, 2);
    assert!(r.verified());
    assert_eq!(r.lhs_terms, 729);
    assert_eq!(all_symmetric_matrices(3, 2), all_symmetric(3, 2));
}
