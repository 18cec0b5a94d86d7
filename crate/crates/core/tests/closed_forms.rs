use num_bigint::BigInt;

use symcomb::agtp::LhsMode;
use symcomb::closed_forms::*;

#[test]
fn formulas_match_generating_function_at_one() {
    for n in 1..=4usize {
        for m in n as i64 - 1..=6 {
            let at0 = lhs_at_one(n, m, 0, LhsMode::Normalized).unwrap();
            assert_eq!(product_formula_w0(n, m).unwrap(), at0, "w=0 n={n} m={m}");
            let at1 = lhs_at_one(n, m, -1, LhsMode::Normalized).unwrap();
            assert_eq!(product_formula_wm1(n, m).unwrap(), at1, "w=-1 n={n} m={m}");
        }
    }
}

#[test]
fn diagonal_sequence_is_plain_left_side() {
    let want: Vec<BigInt> = [1, 4, 60, 3328, 678912].iter().map(|&x| BigInt::from(x)).collect();
    for n in 1..=5usize {
        let m = n as i64 - 1;
        let plain = lhs_at_one(n, m, -1, LhsMode::Plain).unwrap();
        assert_eq!(plain, want[n - 1], "n={n}");
        assert_eq!(diagonal_sequence(n).unwrap(), want[n - 1]);
        assert_eq!(product_formula_wm1(n, m).unwrap(), &want[n - 1] << n);
    }
}
