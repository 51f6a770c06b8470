use bofill::corpus::{random_matrix, rng};
use bofill::{cokernel, rational_rank, row_span_contains, smith_normal_form, IntMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::Rng;

fn small(a: &IntMatrix) -> Vec<Vec<i128>> {
    (0..a.rows())
        .map(|i| {
            a.row(i)
                .iter()
                .map(|x| i128::try_from(x).unwrap())
                .collect()
        })
        .collect()
}

/// Cofactor determinant, independent of any elimination code.
fn det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, &x)| x)
                            .collect()
                    })
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Determinantal divisors d_k = gcd of all k×k minors; invariant factors are d_k / d_{k−1}.
fn invariant_factors(a: &[Vec<i128>], rows: usize, cols: usize) -> Vec<i128> {
    let mut prev = 1i128;
    let mut out = vec![];
    for k in 1..=rows.min(cols) {
        let mut g = 0i128;
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let minor: Vec<Vec<i128>> = rs
                    .iter()
                    .map(|&r| cs.iter().map(|&c| a[r][c]).collect())
                    .collect();
                g = g.gcd(&det(&minor));
            }
        }
        if g == 0 {
            break;
        }
        out.push(g / prev);
        prev = g;
    }
    out
}

fn matrix_strategy(max: usize) -> impl Strategy<Value = IntMatrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        prop::collection::vec(-9i64..=9, r * c).prop_map(move |v| {
            let rows: Vec<Vec<i64>> = v.chunks(c).map(|x| x.to_vec()).collect();
            IntMatrix::from_rows(&rows)
        })
    })
}

fn check_snf_contract(a: &IntMatrix) {
    let s = smith_normal_form(a);
    assert_eq!(
        s.u.mul(a).unwrap().mul(&s.v).unwrap(),
        s.d,
        "U·A·V = D for {a}"
    );
    assert!(s.u.determinant().unwrap().abs().is_one());
    assert!(s.v.determinant().unwrap().abs().is_one());
    for i in 0..s.d.rows() {
        for j in 0..s.d.cols() {
            if i != j {
                assert!(s.d[(i, j)].is_zero());
            }
        }
    }
    let diag = s.diagonal();
    for w in diag.windows(2) {
        assert!(!w[0].is_negative());
        if w[0].is_zero() {
            assert!(w[1].is_zero(), "zeros trail: {diag:?}");
        } else {
            assert!(w[1].is_multiple_of(&w[0]), "divisor chain: {diag:?}");
        }
    }
}

proptest! {
    #[test]
    fn snf_contract(a in matrix_strategy(8)) {
        check_snf_contract(&a);
    }

    #[test]
    fn snf_matches_determinantal_divisors(a in matrix_strategy(4)) {
        let s = smith_normal_form(&a);
        let nonzero: Vec<i128> = s.diagonal().iter().filter(|x| !x.is_zero()).map(|x| i128::try_from(x).unwrap()).collect();
        prop_assert_eq!(nonzero, invariant_factors(&small(&a), a.rows(), a.cols()));
    }

    #[test]
    fn rational_rank_agrees_with_snf(a in matrix_strategy(7)) {
        prop_assert_eq!(rational_rank(&a), smith_normal_form(&a).rank());
    }

    #[test]
    fn determinant_matches_cofactors(a in (1usize..=5).prop_flat_map(|n| prop::collection::vec(-9i64..=9, n * n).prop_map(move |v| (n, v)))) {
        let (n, v) = a;
        let rows: Vec<Vec<i64>> = v.chunks(n).map(|x| x.to_vec()).collect();
        let m = IntMatrix::from_rows(&rows);
        prop_assert_eq!(m.determinant().unwrap(), BigInt::from(det(&small(&m))));
    }

    #[test]
    fn cokernel_invariant_under_row_operations(a in matrix_strategy(6), seed in any::<u64>()) {
        let mut r = rng(seed);
        let rows = a.rows();
        // Random unimodular left factor: a product of elementary row operations.
        let mut u = IntMatrix::identity(rows);
        for _ in 0..6 {
            let (i, j) = (r.gen_range(0..rows), r.gen_range(0..rows));
            if i != j {
                let mut el: Vec<Vec<i64>> = (0..rows).map(|k| (0..rows).map(|l| i64::from(k == l)).collect()).collect();
                el[i][j] = r.gen_range(-3..=3);
                u = IntMatrix::from_rows(&el).mul(&u).unwrap();
            }
        }
        prop_assert_eq!(cokernel(&u.mul(&a).unwrap()), cokernel(&a));
    }

    #[test]
    fn row_span_membership(a in matrix_strategy(5), coeffs in prop::collection::vec(-4i64..=4, 5)) {
        let mut v = vec![BigInt::zero(); a.cols()];
        for i in 0..a.rows() {
            for (x, y) in v.iter_mut().zip(a.row(i)) {
                *x += y * coeffs[i];
            }
        }
        prop_assert!(row_span_contains(&a, &v).unwrap());
    }
}

#[test]
fn cokernel_order_is_abs_determinant() {
    let mut r = rng(7);
    for _ in 0..200 {
        let a = random_matrix(&mut r, 4, 4, 9);
        let d = a.determinant().unwrap();
        let g = cokernel(&a);
        if d.is_zero() {
            assert!(!g.is_finite());
        } else {
            assert_eq!(g.order().unwrap(), d.abs());
        }
    }
}

#[test]
fn large_entries_do_not_overflow() {
    let a = IntMatrix::from_rows(&[[i64::MAX, i64::MAX - 1], [i64::MAX - 2, i64::MAX]]);
    check_snf_contract(&a);
}
