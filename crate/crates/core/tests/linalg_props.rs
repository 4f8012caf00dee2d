use cubicgauss::field::is_prime_u64;
use cubicgauss::linalg::{kernel, rref, solve};
use cubicgauss::{FieldElement, FieldKind, Matrix, Subspace};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Independent oracle: integer Bareiss elimination with row swaps.
fn bareiss_rank(rows: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let (n, m) = (a.len(), a.first().map_or(0, |r| r.len()));
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..m {
        let Some(p) = (rank..n).find(|&i| !a[i][col].is_zero()) else { continue };
        a.swap(rank, p);
        for i in rank + 1..n {
            for j in col + 1..m {
                let v = (&a[rank][col] * &a[i][j] - &a[i][col] * &a[rank][j]) / &prev;
                a[i][j] = v;
            }
            a[i][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
        if rank == n {
            break;
        }
    }
    rank
}

fn primes_above(start: u64, count: usize) -> Vec<u64> {
    (start..).filter(|&n| is_prime_u64(n)).take(count).collect()
}

fn matrix_strategy(max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-4i64..=4, c), r))
}

fn to_field(rows: &[Vec<i64>], f: FieldKind) -> Matrix {
    Matrix::from_i64(f, rows)
}

proptest! {
    #[test]
    fn rref_is_idempotent_and_row_equivalent(rows in matrix_strategy(7)) {
        for f in [FieldKind::Rational, FieldKind::Prime(101)] {
            let m = to_field(&rows, f);
            let r = rref(&m);
            prop_assert_eq!(&rref(&r.matrix), &r);
            let a = Subspace::span(f, m.cols(), &m.row_vecs()).unwrap();
            let b = Subspace::span(f, m.cols(), &r.matrix.row_vecs()).unwrap();
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn rref_is_canonical_under_row_operations(rows in matrix_strategy(6), seed in any::<u64>()) {
        let f = FieldKind::Rational;
        let m = to_field(&rows, f);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut mixed = m.row_vecs();
        mixed.reverse();
        let n = mixed.len();
        if n > 1 {
            let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if i != j {
                let c = f.from_i64(rng.gen_range(-3..=3));
                let add: Vec<FieldElement> = mixed[j].iter().map(|e| e * &c).collect();
                for (x, y) in mixed[i].iter_mut().zip(add) {
                    *x += &y;
                }
            }
        }
        let mixed = Matrix::from_rows(f, m.cols(), mixed).unwrap();
        prop_assert_eq!(rref(&m), rref(&mixed));
    }

    #[test]
    fn rank_matches_bareiss_and_bounds_mod_p(rows in matrix_strategy(7)) {
        let q = to_field(&rows, FieldKind::Rational).rank();
        prop_assert_eq!(q, bareiss_rank(&rows));
        let ranks: Vec<usize> = primes_above(1 << 20, 20).into_iter().map(|p| to_field(&rows, FieldKind::Prime(p)).rank()).collect();
        prop_assert!(ranks.iter().all(|&r| r <= q));
        prop_assert_eq!(ranks.iter().copied().max().unwrap(), q);
    }

    #[test]
    fn kernel_vectors_are_annihilated(rows in matrix_strategy(7)) {
        for f in [FieldKind::Rational, FieldKind::Prime(1_000_003)] {
            let m = to_field(&rows, f);
            let k = kernel(&m);
            prop_assert_eq!(k.len() + m.rank(), m.cols());
            for v in &k {
                prop_assert!(m.mul_vec(v).unwrap().iter().all(|e| e.is_zero()));
            }
        }
    }

    #[test]
    fn solve_substitutes_back(rows in matrix_strategy(6), x in prop::collection::vec(-5i64..=5, 6)) {
        let f = FieldKind::Rational;
        let m = to_field(&rows, f);
        let x: Vec<FieldElement> = x.iter().take(m.cols()).map(|&a| f.from_i64(a)).collect();
        let b = m.mul_vec(&x).unwrap();
        let sol = solve(&m, &b).unwrap().expect("consistent by construction");
        prop_assert_eq!(m.mul_vec(&sol.particular).unwrap(), b);
    }

    #[test]
    fn subspace_sum_and_intersection_dimensions(a in matrix_strategy(5), b in matrix_strategy(5)) {
        let cols = a[0].len().min(b[0].len());
        let f = FieldKind::Prime(10007);
        let trim = |rows: &[Vec<i64>]| -> Vec<Vec<FieldElement>> {
            rows.iter().map(|r| r[..cols].iter().map(|&x| f.from_i64(x)).collect()).collect()
        };
        let u = Subspace::span(f, cols, &trim(&a)).unwrap();
        let v = Subspace::span(f, cols, &trim(&b)).unwrap();
        let s = u.sum(&v).unwrap();
        let i = u.intersection(&v).unwrap();
        prop_assert_eq!(s.dim() + i.dim(), u.dim() + v.dim());
        prop_assert!(i.is_subspace_of(&u) && i.is_subspace_of(&v));
        prop_assert!(u.is_subspace_of(&s) && v.is_subspace_of(&s));
    }
}

#[test]
fn inconsistent_system_has_no_solution() {
    let f = FieldKind::Rational;
    let m = Matrix::from_i64(f, &[vec![1, 1], vec![2, 2]]);
    assert!(solve(&m, &[f.from_i64(1), f.from_i64(3)]).unwrap().is_none());
}

#[test]
fn rank_45_by_45_against_bareiss() {
    let mut rng = ChaCha8Rng::seed_from_u64(45);
    for target in [45usize, 44, 39, 30] {
        // Product of 45×target and target×45 integer matrices: rank ≤ target, generically equal.
        let b: Vec<Vec<i64>> = (0..45).map(|_| (0..target).map(|_| rng.gen_range(-3..=3)).collect()).collect();
        let c: Vec<Vec<i64>> = (0..target).map(|_| (0..45).map(|_| rng.gen_range(-3..=3)).collect()).collect();
        let rows: Vec<Vec<i64>> = (0..45)
            .map(|i| (0..45).map(|j| (0..target).map(|k| b[i][k] * c[k][j]).sum()).collect())
            .collect();
        let oracle = bareiss_rank(&rows);
        assert_eq!(Matrix::from_i64(FieldKind::Rational, &rows).rank(), oracle);
        assert_eq!(oracle, target);
        assert_eq!(Matrix::from_i64(FieldKind::Prime(cubicgauss::field::DEFAULT_PRIME), &rows).rank(), oracle);
    }
}

#[test]
fn large_entries_stay_exact() {
    // Hilbert matrix of order 12 is nonsingular; its inverse has huge integer entries.
    let f = FieldKind::Rational;
    let rows: Vec<Vec<FieldElement>> = (0..12)
        .map(|i| (0..12).map(|j| f.from_ratio(1, (i + j + 1) as i64).unwrap()).collect())
        .collect();
    let m = Matrix::from_rows(f, 12, rows).unwrap();
    assert_eq!(m.rank(), 12);
    let e0: Vec<FieldElement> = (0..12).map(|i| if i == 0 { f.one() } else { f.zero() }).collect();
    let x = solve(&m, &e0).unwrap().unwrap().particular;
    // First column of the inverse Hilbert matrix starts with n² = 144.
    assert_eq!(x[0], f.from_i64(144));
    assert_eq!(m.mul_vec(&x).unwrap(), e0);
}
