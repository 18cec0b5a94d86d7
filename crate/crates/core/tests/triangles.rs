use itertools::Itertools;

use symcomb::agtp::{agtp_genfun_bialternant, enumerate_agtp};
use symcomb::ast::*;
use symcomb::polyring::{sum, Bindings, LaurentPoly, Var};

#[test]
fn triangle_counts() {
    let counts: Vec<usize> = (1..=5).map(|n| enumerate_ast(n).len()).collect();
    assert_eq!(counts, vec![1, 2, 7, 42, 429]);
    assert!(enumerate_ast(4).iter().all(|(t, s)| t.is_valid() && s.one_columns.len() == 3));
}

#[test]
fn one_column_theorem() {
    for n in 1..=5 {
        let r = verify_ast_theorem(n);
        assert!(r.verified(), "n={n}: {:?}", r.first_mismatch);
    }
}

#[test]
fn three_row_coefficient() {
    let g = ast_genfun(3);
    let c = g.coeff(&symcomb::polyring::Monomial::x_pow(&[0, 2]));
    let count = enumerate_ast(3).iter().filter(|(_, s)| s.rho == 1 && s.one_columns == vec![0, 2]).count();
    assert_eq!(c, count.into());
}

#[test]
fn bounded_constant_term() {
    for n in 1..=4usize {
        let top = if n == 1 { 0 } else { 2 * n - 3 };
        for p in 0..=top {
            for q in p..=top {
                let r = verify_ast_bounded(n, p, q);
                assert!(r.verified(), "n={n} p={p} q={q}: {:?}", r.first_mismatch);
            }
        }
        let all = ast_bounded_constant_term(n, 0, top).unwrap();
        let at_one = all.substitute(&Bindings::new().int(Var::T, 1)).unwrap();
        assert_eq!(at_one, LaurentPoly::constant(enumerate_ast(n).len() as i64));
    }
}

#[test]
fn bounded_determinant_form() {
    for n in 1..=4usize {
        let top = if n == 1 { 0 } else { 2 * n - 3 };
        for (p, q) in [(0, top), (0, 0), (top, top)] {
            let r = verify_ast_determinant_form(n, p, q);
            assert!(r.verified(), "n={n} p={p} q={q}: {:?}", r.first_mismatch);
        }
    }
}

#[test]
fn operator_count_matches_generating_function() {
    for len in 1..=4 {
        for bottom in (0..=5i64).combinations(len) {
            let by_op = agtp_count_at_one(&bottom).unwrap();
            let gf = agtp_genfun_bialternant(&bottom).unwrap().at_x_one();
            assert_eq!(by_op, gf, "{bottom:?}");
        }
    }
    for bottom in [vec![1, 2, 3], vec![0, 2]] {
        let enumerated = sum(enumerate_agtp(&bottom).iter().map(|(_, w)| w)).at_x_one();
        assert_eq!(agtp_count_at_one(&bottom).unwrap(), enumerated);
    }
}
