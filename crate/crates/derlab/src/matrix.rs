//! Exact determinants of polynomial matrices.

use crate::poly::Poly;
use crate::ring::RingSpec;

/// Determinant of a square matrix of polynomials. Cofactor expansion for
/// small matrices, fraction-free elimination with row pivoting above 4x4;
/// both routes are exact.
pub fn determinant(ring: RingSpec, rows: &[Vec<Poly>]) -> Poly {
    let n = rows.len();
    assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
    if n <= 4 {
        det_cofactor(ring, rows)
    } else {
        det_bareiss(ring, rows)
    }
}

fn det_cofactor(ring: RingSpec, rows: &[Vec<Poly>]) -> Poly {
    match rows.len() {
        0 => Poly::one(ring),
        1 => rows[0][0].clone(),
        n => {
            let mut acc = Poly::zero(ring);
            for (j, entry) in rows[0].iter().enumerate() {
                if entry.is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Poly>> = rows[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(k, _)| *k != j)
                            .map(|(_, p)| p.clone())
                            .collect()
                    })
                    .collect();
                debug_assert_eq!(minor.len(), n - 1);
                let term = entry * &det_cofactor(ring, &minor);
                acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

fn det_bareiss(ring: RingSpec, rows: &[Vec<Poly>]) -> Poly {
    let n = rows.len();
    let mut m: Vec<Vec<Poly>> = rows.to_vec();
    let mut sign_flip = false;
    let mut prev = Poly::one(ring);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign_flip = !sign_flip;
                }
                None => return Poly::zero(ring),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                // exactness is guaranteed by the Sylvester identity
                m[i][j] = num
                    .div_exact(&prev)
                    .expect("fraction-free elimination step must divide exactly");
            }
            m[i][k] = Poly::zero(ring);
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_flip {
        -&det
    } else {
        det
    }
}
