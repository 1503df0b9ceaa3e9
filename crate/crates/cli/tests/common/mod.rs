//! Brute-force reference computations on cyclic groups `Z/n`, written
//! directly from the defining identities with dense indexing and their own
//! elimination routine. Nothing here goes through the library's solver,
//! degree decomposition or sparse vectors.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use witt_core::Scalar;

/// Rank of an integer matrix by fraction-free (Bareiss) elimination.
pub fn bareiss_rank(rows: &[Vec<i64>], ncols: usize) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .filter(|r| r.iter().any(|&x| x != 0))
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let nrows = m.len();
    let mut prev = BigInt::from(1);
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(p) = (rank..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for r in rank + 1..nrows {
            for c in col + 1..ncols {
                let v = (&m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c]) / &prev;
                m[r][c] = v;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[rank][col].abs();
        if prev.is_zero() {
            prev = BigInt::from(1);
        }
        rank += 1;
    }
    rank
}

/// The linear system for `2φ([e_a,e_b]) = [φ(e_a),e_b] + [e_a,φ(e_b)]` on
/// `Z/n`, with unknown `M[c][a]` (the coefficient of `e_c` in `φ(e_a)`) at
/// column `c·n + a`. One row per `(a, b, c)`.
pub fn halfder_rows(f: &[i64]) -> Vec<Vec<i64>> {
    let n = f.len();
    let idx = |c: usize, a: usize| c * n + a;
    let mut rows = Vec::with_capacity(n * n * n);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let mut row = vec![0i64; n * n];
                // 2 [e_a,e_b] = 2 (f(b) − f(a)) e_{a+b}
                row[idx(c, (a + b) % n)] += 2 * (f[b] - f[a]);
                // [M e_a, e_b] at e_c comes from e_{c−b}
                let cb = (c + n - b) % n;
                row[idx(cb, a)] -= f[b] - f[cb];
                // [e_a, M e_b] at e_c comes from e_{c−a}
                let ca = (c + n - a) % n;
                row[idx(ca, b)] -= f[ca] - f[a];
                rows.push(row);
            }
        }
    }
    rows
}

/// `dim Δ(V(f))` on `Z/n` for an integer-valued table.
pub fn halfder_dim(f: &[i64]) -> usize {
    let n = f.len();
    n * n - bareiss_rank(&halfder_rows(f), n * n)
}

/// Whether the dense matrix `m[c][a]` satisfies every row of the system.
pub fn satisfies_halfder(f: &[i64], m: &[Vec<Scalar>]) -> bool {
    let n = f.len();
    halfder_rows(f).iter().all(|row| {
        let mut acc = Scalar::zero();
        for (k, &coef) in row.iter().enumerate() {
            if coef != 0 {
                acc += &(&Scalar::from_int(coef) * &m[k / n][k % n]);
            }
        }
        acc.is_zero()
    })
}

/// `(f(a+b) − f(a) − f(b))(f(a) − f(b)) = 0` for all pairs.
pub fn lie_condition(f: &[Scalar]) -> bool {
    let n = f.len();
    (0..n).all(|a| {
        (0..n).all(|b| {
            let d = &(&f[(a + b) % n] - &f[a]) - &f[b];
            (&d * &(&f[a] - &f[b])).is_zero()
        })
    })
}

/// Dense `n × n × n` product tensor: `t[a][b][c]` is the coefficient of
/// `e_c` in `e_a ∗ e_b`.
pub type Tensor = Vec<Vec<Vec<Scalar>>>;

fn bracket_coeff(f: &[Scalar], a: usize, b: usize) -> Scalar {
    &f[b] - &f[a]
}

/// Checks commutativity, associativity and `2z∗[x,y] = [z∗x,y] + [x,z∗y]`
/// over all basis triples by dense summation.
pub fn tpp_axioms(f: &[Scalar], t: &Tensor) -> (bool, bool, bool) {
    let n = f.len();
    let zero = || vec![Scalar::zero(); n];
    let comm = (0..n).all(|a| (0..n).all(|b| t[a][b] == t[b][a]));
    let mul_vec_basis = |v: &[Scalar], z: usize| {
        let mut out = zero();
        for (c, vc) in v.iter().enumerate() {
            if !vc.is_zero() {
                for d in 0..n {
                    out[d] += &(vc * &t[c][z][d]);
                }
            }
        }
        out
    };
    let basis_mul_vec = |z: usize, v: &[Scalar]| {
        let mut out = zero();
        for (c, vc) in v.iter().enumerate() {
            if !vc.is_zero() {
                for d in 0..n {
                    out[d] += &(vc * &t[z][c][d]);
                }
            }
        }
        out
    };
    // [v, e_y] and [e_x, v] for dense v
    let bracket_vec_basis = |v: &[Scalar], y: usize| {
        let mut out = zero();
        for (c, vc) in v.iter().enumerate() {
            out[(c + y) % n] += &(vc * &bracket_coeff(f, c, y));
        }
        out
    };
    let bracket_basis_vec = |x: usize, v: &[Scalar]| {
        let mut out = zero();
        for (c, vc) in v.iter().enumerate() {
            out[(x + c) % n] += &(vc * &bracket_coeff(f, x, c));
        }
        out
    };
    let mut assoc = true;
    let mut leibniz = true;
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                assoc &= mul_vec_basis(&t[x][y], z) == basis_mul_vec(x, &t[y][z]);
                let mut xy = zero();
                xy[(x + y) % n] = bracket_coeff(f, x, y);
                let lhs: Vec<Scalar> = basis_mul_vec(z, &xy).iter().map(|c| c * &Scalar::from_int(2)).collect();
                let r1 = bracket_vec_basis(&t[z][x], y);
                let r2 = bracket_basis_vec(x, &t[z][y]);
                let rhs: Vec<Scalar> = r1.iter().zip(&r2).map(|(a, b)| a + b).collect();
                leibniz &= lhs == rhs;
            }
        }
    }
    (comm, assoc, leibniz)
}

/// Sanity checks of the elimination routine on hand-computed matrices.
pub fn self_check() -> Result<(), String> {
    let cases: [(&[Vec<i64>], usize, usize); 4] = [
        (&[vec![1, 2], vec![2, 4]], 2, 1),
        (&[vec![0, 1], vec![1, 0], vec![1, 1]], 2, 2),
        (&[], 3, 0),
        (&[vec![2, 4, 6], vec![1, 3, 5], vec![3, 7, 11]], 3, 2),
    ];
    for (rows, ncols, want) in cases {
        let got = bareiss_rank(rows, ncols);
        if got != want {
            return Err(format!("oracle rank {got} != {want} on {rows:?}"));
        }
    }
    Ok(())
}
