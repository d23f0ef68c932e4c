//! Brute-force point counts, independent of the closed formulas in the crate.
#![allow(dead_code)]

use std::collections::HashSet;

/// Invertible and determinant-one 2x2 matrices over F_p, counted by tallying
/// the products `ad` and `bc` over all pairs (an O(p^2) regrouping of the
/// p^4 enumeration).
pub fn gl2_sl2_by_products(p: u64) -> (u64, u64) {
    let n = p as usize;
    let mut hist = vec![0u64; n];
    for a in 0..p {
        for d in 0..p {
            hist[(a * d % p) as usize] += 1;
        }
    }
    let total = p * p;
    let gl = hist.iter().map(|&c| c * (total - c)).sum();
    // det = ad - bc = 1  <=>  ad = bc + 1
    let sl = (0..n).map(|v| hist[(v + 1) % n] * hist[v]).sum();
    (gl, sl)
}

/// Literal p^4 loop.
pub fn gl2_sl2_literal(p: u64) -> (u64, u64) {
    let (mut gl, mut sl) = (0, 0);
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                for d in 0..p {
                    let det = (a * d + p * p - b * c) % p;
                    if det != 0 {
                        gl += 1;
                    }
                    if det == 1 {
                        sl += 1;
                    }
                }
            }
        }
    }
    (gl, sl)
}

/// Determinant over F_p by Gaussian elimination.
pub fn det_mod(mut m: Vec<Vec<u64>>, p: u64) -> u64 {
    let n = m.len();
    let inv = |x: u64| -> u64 {
        let mut r = 1u64;
        let mut b = x % p;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    };
    let mut det = 1u64;
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_multiple_of(p)) else {
            return 0;
        };
        if piv != col {
            m.swap(piv, col);
            det = (p - det) % p;
        }
        det = det * m[col][col] % p;
        let iv = inv(m[col][col]);
        let pivot = m[col].clone();
        for row in m.iter_mut().skip(col + 1) {
            let f = row[col] * iv % p;
            for (x, &y) in row.iter_mut().zip(&pivot).skip(col) {
                *x = (*x + p * p - f * y % p) % p;
            }
        }
    }
    det
}

fn all_matrices(n: usize, p: u64) -> impl Iterator<Item = Vec<Vec<u64>>> {
    let cells = (n * n) as u32;
    (0..p.pow(cells)).map(move |mut code| {
        let mut m = vec![vec![0u64; n]; n];
        for cell in 0..n * n {
            m[cell / n][cell % n] = code % p;
            code /= p;
        }
        m
    })
}

/// `(|GL(n, F_p)|, |SL(n, F_p)|)` by enumerating all p^{n^2} matrices.
pub fn gl_sl_enumerate(n: usize, p: u64) -> (u64, u64) {
    let (mut gl, mut sl) = (0, 0);
    for m in all_matrices(n, p) {
        match det_mod(m, p) {
            0 => {}
            1 => {
                gl += 1;
                sl += 1
            }
            _ => gl += 1,
        }
    }
    (gl, sl)
}

/// `|Sp(2n, F_p)|` (rank-n symplectic group) by enumerating 2n x 2n matrices
/// and testing `M^T J M = J`.
pub fn sp_enumerate(n: usize, p: u64) -> u64 {
    let size = 2 * n;
    let j = |r: usize, c: usize| -> u64 {
        if r < n && c == r + n {
            1
        } else if r >= n && c + n == r {
            p - 1
        } else {
            0
        }
    };
    let mut count = 0;
    for m in all_matrices(size, p) {
        let mut ok = true;
        'outer: for r in 0..size {
            for c in 0..size {
                let mut s = 0u64;
                for a in 0..size {
                    for b in 0..size {
                        s += m[a][r] * j(a, b) % p * m[b][c];
                    }
                }
                if s % p != j(r, c) {
                    ok = false;
                    break 'outer;
                }
            }
        }
        if ok {
            count += 1;
        }
    }
    count
}

/// Points of `x^2 + y^2 = 1` among all p^2 pairs.
pub fn circle_enumerate(p: u64) -> u64 {
    let mut n = 0;
    for x in 0..p {
        for y in 0..p {
            if (x * x + y * y) % p == 1 % p {
                n += 1;
            }
        }
    }
    n
}

/// Projective points of `y^2 = x^3 + a4 x + a6` over F_p: all p^2 affine
/// pairs plus the point at infinity.
pub fn elliptic_enumerate(a4: i64, a6: i64, p: u64) -> u64 {
    let m = p as i64;
    let mut n = 1;
    for x in 0..m {
        let rhs = ((x * x % m) * x + a4.rem_euclid(m) * x + a6.rem_euclid(m)).rem_euclid(m);
        for y in 0..m {
            if y * y % m == rhs {
                n += 1;
            }
        }
    }
    n
}

/// Vectors of F_p^k, as coordinate arrays.
fn vectors(k: usize, p: u64) -> Vec<Vec<u64>> {
    (0..p.pow(k as u32))
        .map(|mut code| {
            (0..k)
                .map(|_| {
                    let c = code % p;
                    code /= p;
                    c
                })
                .collect()
        })
        .collect()
}

/// `|A^n(F_p)|` by listing F_p^n.
pub fn affine_enumerate(n: usize, p: u64) -> u64 {
    vectors(n, p).len() as u64
}

/// `|P^n(F_p)|`: nonzero vectors of F_p^{n+1} whose first nonzero entry is 1.
pub fn proj_enumerate(n: usize, p: u64) -> u64 {
    vectors(n + 1, p)
        .into_iter()
        .filter(|v| v.iter().find(|&&c| c != 0) == Some(&1))
        .count() as u64
}

/// Number of m-dimensional subspaces of F_p^n, found as distinct spans.
pub fn grassmannian_enumerate(n: usize, m: usize, p: u64) -> u64 {
    let all = vectors(n, p);
    let coeffs = vectors(m, p);
    let mut spans: HashSet<Vec<Vec<u64>>> = HashSet::new();
    let mut idx = vec![0usize; m];
    loop {
        let gens: Vec<&Vec<u64>> = idx.iter().map(|&i| &all[i]).collect();
        let mut span: Vec<Vec<u64>> = coeffs
            .iter()
            .map(|c| {
                (0..n)
                    .map(|k| gens.iter().zip(c).map(|(g, &ci)| g[k] * ci).sum::<u64>() % p)
                    .collect()
            })
            .collect();
        span.sort();
        span.dedup();
        if span.len() as u64 == p.pow(m as u32) {
            spans.insert(span);
        }
        // next non-decreasing index tuple
        let mut pos = m;
        loop {
            if pos == 0 {
                return spans.len() as u64;
            }
            pos -= 1;
            if idx[pos] + 1 < all.len() {
                idx[pos] += 1;
                for q in pos + 1..m {
                    idx[q] = idx[pos];
                }
                break;
            }
        }
    }
}

/// Integer coefficients of `Phi_n`, lowest degree first, by dividing
/// `x^n - 1` by every `Phi_d` with `d | n`, `d < n`.
pub fn cyclotomic_coeffs(n: usize) -> Vec<i64> {
    let mut num = vec![0i64; n + 1];
    num[0] = -1;
    num[n] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = poly_div_exact(&num, &cyclotomic_coeffs(d));
        }
    }
    num
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let qn = rem.len() - 1 - dn;
    let mut q = vec![0i64; qn + 1];
    for i in (0..=qn).rev() {
        let c = rem[i + dn] / den[dn];
        q[i] = c;
        for j in 0..=dn {
            rem[i + j] -= c * den[j];
        }
    }
    assert!(rem.iter().all(|&c| c == 0), "division not exact");
    q
}

/// Evaluates an integer polynomial at `x` exactly.
pub fn eval_poly(coeffs: &[i64], x: u64) -> num_bigint::BigInt {
    let x = num_bigint::BigInt::from(x);
    coeffs
        .iter()
        .rev()
        .fold(num_bigint::BigInt::from(0), |acc, &c| acc * &x + c)
}
