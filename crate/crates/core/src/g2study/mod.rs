//! The group `C̃ = N(Q)` of order 1152 with `Q = O₂(C̃) ≅ Q₈∘Q₈` and
//! `C̃/Q ≅ S₃×S₃`, assembled from two commuting copies of `SL₂(3)` acting on
//! `F₃² ⊗ F₃²`, and the optional `Aut(G₂(3))` data pipeline.
//!
//! Matrices act on row vectors from the right; a matrix of `GL_n(3)` is
//! turned into a permutation of the `3ⁿ - 1` nonzero vectors, where the
//! vector `v` is point `Σ vₖ 3ᵏ - 1`.

mod ingest;
mod q8;
mod tilde_c;

pub use ingest::ingest_autg23;
pub use q8::{
    build_q8_central_product, q8_central_product_from_direct_product, ExtraspecialInvariants,
    Q8CentralProduct,
};
pub use tilde_c::{
    assemble_tilde_c, assemble_variant, t_solutions, uniqueness_tilde_c, verify_tilde_c,
    TildeCModel,
};

use crate::engine::{Perm, PermGroup};
use crate::modrep::linalg::Matrix;

const P: u8 = 3;

fn mat2(rows: [[u8; 2]; 2]) -> Matrix {
    Matrix {
        p: P,
        rows: rows.iter().map(|r| r.to_vec()).collect(),
    }
}

/// `A ⊗ B` on `F₃² ⊗ F₃²` with basis `e_a ⊗ e_b ↦ 2a + b`.
fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.dim() * b.dim();
    let mut rows = vec![vec![0u8; n]; n];
    for (ra, row_a) in a.rows.iter().enumerate() {
        for (rb, row_b) in b.rows.iter().enumerate() {
            for (ca, &x) in row_a.iter().enumerate() {
                for (cb, &y) in row_b.iter().enumerate() {
                    rows[ra * b.dim() + rb][ca * b.dim() + cb] = (x * y) % P;
                }
            }
        }
    }
    Matrix { p: P, rows }
}

/// The coordinate swap `e_a ⊗ e_b ↦ e_b ⊗ e_a`.
fn tensor_swap() -> Matrix {
    let mut rows = vec![vec![0u8; 4]; 4];
    for a in 0..2 {
        for b in 0..2 {
            rows[2 * a + b][2 * b + a] = 1;
        }
    }
    Matrix { p: P, rows }
}

fn negate(m: &Matrix) -> Matrix {
    Matrix {
        p: P,
        rows: m
            .rows
            .iter()
            .map(|r| r.iter().map(|&x| (P - x) % P).collect())
            .collect(),
    }
}

fn point_of(v: &[u8]) -> u32 {
    v.iter()
        .rev()
        .fold(0u32, |acc, &x| acc * P as u32 + x as u32)
        - 1
}

fn vector_of(point: u32, n: usize) -> Vec<u8> {
    let mut k = point + 1;
    (0..n)
        .map(|_| {
            let x = (k % P as u32) as u8;
            k /= P as u32;
            x
        })
        .collect()
}

fn nonzero_count(n: usize) -> usize {
    (P as usize).pow(n as u32) - 1
}

/// The permutation of nonzero vectors induced by an invertible matrix.
fn perm_of(m: &Matrix) -> Perm {
    let n = m.dim();
    let images = (0..nonzero_count(n) as u32)
        .map(|pt| point_of(&m.apply(&vector_of(pt, n))))
        .collect();
    Perm::from_images(images).expect("invertible matrix permutes nonzero vectors")
}

/// Every element of `GL₂(3)`.
fn gl2() -> Vec<Matrix> {
    let mut out = Vec::new();
    for code in 0..81u32 {
        let e: Vec<u8> = (0..4).map(|k| ((code / 3u32.pow(k)) % 3) as u8).collect();
        let det = (e[0] as i32 * e[3] as i32 - e[1] as i32 * e[2] as i32).rem_euclid(3);
        if det != 0 {
            out.push(mat2([[e[0], e[1]], [e[2], e[3]]]));
        }
    }
    out
}

/// `SL₂(3)` on the 8 nonzero vectors of `F₃²`.
fn sl23_group() -> PermGroup {
    let gens = [mat2([[0, 1], [2, 0]]), mat2([[1, 1], [0, 1]])];
    PermGroup::new(8, gens.iter().map(perm_of).collect()).expect("degree 8 generators")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::FiniteGroup;

    #[test]
    fn point_numbering_round_trips() {
        for pt in 0..80 {
            assert_eq!(point_of(&vector_of(pt, 4)), pt);
        }
        assert_eq!(gl2().len(), 48);
        assert_eq!(
            FiniteGroup::from_perm_group(&sl23_group()).unwrap().order(),
            24
        );
    }

    #[test]
    fn kronecker_products_multiply_factorwise() {
        let g = gl2();
        let (a, b, c, d) = (&g[3], &g[17], &g[29], &g[40]);
        assert_eq!(kron(a, b).mul(&kron(c, d)), kron(&a.mul(c), &b.mul(d)));
        let y = tensor_swap();
        assert_eq!(y.mul(&kron(a, b)).mul(&y), kron(b, a));
    }
}
