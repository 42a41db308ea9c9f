//! Exact integral LLL reduction (Gram data kept as the scaled integers
//! lambda_{i,j} and subdeterminants d_i, so no rationals appear).
//!
//! The recognition lattices here are tiny (dimension <= 20) but carry
//! entries of thousands of bits, which is exactly the regime where the
//! all-integer formulation stays both exact and fast.

use rug::Integer;

/// Reduce the rows of `basis` in place with delta = 3/4 and return
/// the reduced rows sorted by squared Euclidean norm.
pub fn reduce(basis: Vec<Vec<Integer>>) -> Vec<Vec<Integer>> {
    let n = basis.len();
    if n <= 1 {
        return basis;
    }
    let mut b = basis;

    // lambda[i][j] for j < i, and d[0..=n] with d[0] = 1
    let mut lambda = vec![vec![Integer::new(); n]; n];
    let mut d = vec![Integer::from(1); n + 1];

    // initial Gram data
    #[allow(clippy::needless_range_loop)]
    for i in 0..n {
        for j in 0..=i {
            let mut u = dot(&b[i], &b[j]);
            for k in 0..j {
                u = (Integer::from(&d[k + 1] * &u) - Integer::from(&lambda[i][k] * &lambda[j][k]))
                    / &d[k];
            }
            if j < i {
                lambda[i][j] = u;
            } else {
                d[i + 1] = u;
            }
        }
        assert!(d[i + 1] != 0, "lattice basis rows are linearly dependent");
    }

    let mut k = 1;
    while k < n {
        red(&mut b, &mut lambda, &d, k, k - 1);
        // Lovasz with delta = 3/4:
        // swap when 4 (d[k+1] d[k-1] + lambda^2) < 3 d[k]^2
        let lam = lambda[k][k - 1].clone();
        let lhs = (Integer::from(&d[k + 1] * &d[k - 1]) + Integer::from(&lam * &lam)) * 4u32;
        let rhs = Integer::from(&d[k] * &d[k]) * 3u32;
        if lhs < rhs {
            swap_step(&mut b, &mut lambda, &mut d, k);
            k = k.max(2) - 1;
        } else {
            for l in (0..k.saturating_sub(1)).rev() {
                red(&mut b, &mut lambda, &d, k, l);
            }
            k += 1;
        }
    }

    b.sort_by_key(|row| dot(row, row));
    b
}

/// Relation-lattice reduction with progressive column scaling.
///
/// Reducing [e_i | round(10^S v_i)] in one shot forces every Gram entry
/// to ~10^(2S); raising the scale in windows and re-reducing keeps the
/// working integers near the window size instead, which is dramatically
/// faster for the 500-900 digit scales used here. The accumulated
/// transform rows are returned together with the final scaled column.
pub fn reduce_relation_progressive(
    values: &[rug::Float],
    total_scale_digits: i64,
    step_digits: i64,
) -> Vec<Vec<Integer>> {
    let n = values.len();
    let prec = values.iter().map(|v| v.prec()).max().unwrap_or(64);
    let mut transform: Vec<Vec<Integer>> = (0..n)
        .map(|i| {
            let mut row = vec![Integer::new(); n];
            row[i] = Integer::from(1);
            row
        })
        .collect();

    let mut scale = 0i64;
    let mut rows: Vec<Vec<Integer>> = Vec::new();
    while scale < total_scale_digits {
        scale = (scale + step_digits).min(total_scale_digits);
        let factor = crate::precision::pow10(prec, scale);
        rows = transform
            .iter()
            .map(|t| {
                let mut combo = rug::Float::with_val(prec, 0u32);
                for (c, v) in t.iter().zip(values) {
                    combo += rug::Float::with_val(prec, v * c);
                }
                let scaled = combo * &factor;
                let mut row = t.clone();
                row.push(
                    scaled
                        .to_integer_round(rug::float::Round::Nearest)
                        .map(|(z, _)| z)
                        .unwrap_or_default(),
                );
                row
            })
            .collect();
        rows = reduce(rows);
        transform = rows.iter().map(|r| r[..n].to_vec()).collect();
    }
    rows
}

fn dot(a: &[Integer], b: &[Integer]) -> Integer {
    let mut acc = Integer::new();
    for (x, y) in a.iter().zip(b) {
        acc += Integer::from(x * y);
    }
    acc
}

/// Size-reduce row k against row l (l < k).
#[allow(clippy::needless_range_loop)]
fn red(b: &mut [Vec<Integer>], lambda: &mut [Vec<Integer>], d: &[Integer], k: usize, l: usize) {
    // |2 lambda_{k,l}| <= d_{l+1} means already reduced
    let two_lam = Integer::from(&lambda[k][l] * 2u32);
    if two_lam.clone().abs() <= d[l + 1] {
        return;
    }
    // q = round(lambda_{k,l} / d_{l+1})
    let q = round_div(&lambda[k][l], &d[l + 1]);
    for idx in 0..b[k].len() {
        let sub = Integer::from(&q * &b[l][idx]);
        b[k][idx] -= sub;
    }
    let sub = Integer::from(&q * &d[l + 1]);
    lambda[k][l] -= sub;
    for i in 0..l {
        let sub = Integer::from(&q * &lambda[l][i]);
        lambda[k][i] -= sub;
    }
}

/// Exchange rows k and k-1 and patch the Gram data.
#[allow(clippy::needless_range_loop)] // index bookkeeping mirrors the Gram recurrences
fn swap_step(b: &mut [Vec<Integer>], lambda: &mut [Vec<Integer>], d: &mut [Integer], k: usize) {
    let n = b.len();
    b.swap(k, k - 1);
    for j in 0..k.saturating_sub(1) {
        let tmp = lambda[k][j].clone();
        lambda[k][j] = lambda[k - 1][j].clone();
        lambda[k - 1][j] = tmp;
    }
    let lam = lambda[k][k - 1].clone();
    // new d_k
    let bb = (Integer::from(&d[k - 1] * &d[k + 1]) + Integer::from(&lam * &lam)) / &d[k];
    for i in k + 1..n {
        let t = lambda[i][k].clone();
        lambda[i][k] = (Integer::from(&d[k + 1] * &lambda[i][k - 1]) - Integer::from(&lam * &t))
            / &d[k];
        lambda[i][k - 1] = (Integer::from(&bb * &t) + Integer::from(&lam * &lambda[i][k]))
            / &d[k + 1];
    }
    d[k] = bb;
}

/// Nearest-integer division (ties toward +infinity; any consistent
/// rounding works for size reduction).
fn round_div(num: &Integer, den: &Integer) -> Integer {
    use rug::ops::DivRounding;
    debug_assert!(*den > 0);
    let half = Integer::from(den >> 1u32);
    Integer::from(num + &half).div_floor(den)
}
