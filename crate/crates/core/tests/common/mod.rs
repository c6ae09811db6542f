//! Reference matrices, transcribed row by row.
#![allow(dead_code)]

use etf_forge::{Domain, ExactMatrix};

pub fn signs(rows: &[&[i64]]) -> ExactMatrix {
    ExactMatrix::from_int_rows(Domain::REAL_SIGNS, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
}

pub fn harmonic_6x16() -> ExactMatrix {
    signs(&[
        &[1, -1, 1, -1, 1, -1, 1, -1, 1, -1, 1, -1, 1, -1, 1, -1],
        &[1, 1, -1, -1, 1, 1, -1, -1, 1, 1, -1, -1, 1, 1, -1, -1],
        &[1, -1, -1, 1, 1, -1, -1, 1, 1, -1, -1, 1, 1, -1, -1, 1],
        &[1, -1, 1, -1, -1, 1, -1, 1, 1, -1, 1, -1, -1, 1, -1, 1],
        &[1, 1, -1, -1, 1, 1, -1, -1, -1, -1, 1, 1, -1, -1, 1, 1],
        &[1, -1, -1, 1, -1, 1, 1, -1, -1, 1, 1, -1, 1, -1, -1, 1],
    ])
}

pub fn tetrahedron() -> ExactMatrix {
    signs(&[&[1, -1, 1, -1], &[1, 1, -1, -1], &[1, -1, -1, 1]])
}

/// Blocks {1,2}, {3,4}, {1,3}, {2,4}, {1,4}, {2,3}.
pub fn incidence_6x4() -> ExactMatrix {
    ExactMatrix::from_int_rows(
        Domain::RATIONAL,
        &[
            vec![1, 1, 0, 0],
            vec![0, 0, 1, 1],
            vec![1, 0, 1, 0],
            vec![0, 1, 0, 1],
            vec![1, 0, 0, 1],
            vec![0, 1, 1, 0],
        ],
    )
}

pub fn lift_12x12() -> ExactMatrix {
    let rows: [[i64; 12]; 12] = [
        [1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0],
        [0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0],
        [0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0],
        [0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1],
        [0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0],
    ];
    ExactMatrix::from_int_rows(Domain::RATIONAL, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
}

pub fn steiner_6x16() -> ExactMatrix {
    signs(&[
        &[1, -1, 1, -1, 1, -1, 1, -1, 0, 0, 0, 0, 0, 0, 0, 0],
        &[0, 0, 0, 0, 0, 0, 0, 0, 1, -1, 1, -1, 1, -1, 1, -1],
        &[1, 1, -1, -1, 0, 0, 0, 0, 1, 1, -1, -1, 0, 0, 0, 0],
        &[0, 0, 0, 0, 1, 1, -1, -1, 0, 0, 0, 0, 1, 1, -1, -1],
        &[1, -1, -1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, -1, -1, 1],
        &[0, 0, 0, 0, 1, -1, -1, 1, 1, -1, -1, 1, 0, 0, 0, 0],
    ])
}

pub fn steiner_6x16_second() -> ExactMatrix {
    signs(&[
        &[1, -1, 1, -1, -1, 1, -1, 1, 0, 0, 0, 0, 0, 0, 0, 0],
        &[0, 0, 0, 0, 0, 0, 0, 0, 1, -1, 1, -1, -1, 1, -1, 1],
        &[1, 1, -1, -1, 0, 0, 0, 0, -1, -1, 1, 1, 0, 0, 0, 0],
        &[0, 0, 0, 0, 1, 1, -1, -1, 0, 0, 0, 0, -1, -1, 1, 1],
        &[1, -1, -1, 1, 0, 0, 0, 0, 0, 0, 0, 0, -1, 1, 1, -1],
        &[0, 0, 0, 0, 1, -1, -1, 1, -1, 1, 1, -1, 0, 0, 0, 0],
    ])
}

/// I₄ ⊗ 𝟙₄ᵀ, printed with the factor √2 outside.
pub fn steiner_tail() -> ExactMatrix {
    let mut rows = vec![vec![0i64; 16]; 4];
    for (i, row) in rows.iter_mut().enumerate() {
        row[4 * i..4 * i + 4].fill(1);
    }
    ExactMatrix::from_int_rows(Domain::REAL_SIGNS, &rows)
}

/// [Φ⊗Ψ̃; Φ̃⊗Ψ] with Φ = Ψ = [1 1 1 1] and Φ̃ = Ψ̃ the tetrahedron.
pub fn tensor_6x16() -> ExactMatrix {
    signs(&[
        &[1, -1, 1, -1, 1, -1, 1, -1, 1, -1, 1, -1, 1, -1, 1, -1],
        &[1, 1, -1, -1, 1, 1, -1, -1, 1, 1, -1, -1, 1, 1, -1, -1],
        &[1, -1, -1, 1, 1, -1, -1, 1, 1, -1, -1, 1, 1, -1, -1, 1],
        &[1, 1, 1, 1, -1, -1, -1, -1, 1, 1, 1, 1, -1, -1, -1, -1],
        &[1, 1, 1, 1, 1, 1, 1, 1, -1, -1, -1, -1, -1, -1, -1, -1],
        &[1, 1, 1, 1, -1, -1, -1, -1, -1, -1, -1, -1, 1, 1, 1, 1],
    ])
}

/// The tetrahedron after negating all but its first column.
pub fn signed_tetrahedron() -> ExactMatrix {
    signs(&[&[1, 1, -1, 1], &[1, -1, 1, 1], &[1, 1, 1, -1]])
}

/// Design with the incidence matrix above, blocks in printed order.
pub fn incidence_6x4_design() -> etf_forge::design::Design {
    etf_forge::design::Design::from_incidence(&incidence_6x4()).unwrap()
}

/// 6×4 design with F = sylvester(1), G = sylvester(2), G₁ = columns 2..4.
pub fn steiner_inputs_6x16(l: usize) -> etf_forge::construct::SteinerInputs {
    use etf_forge::hadamard::sylvester;
    etf_forge::construct::SteinerInputs::new(incidence_6x4_design(), sylvester(1), sylvester(2))
        .unwrap()
        .with_g_column(0)
        .unwrap()
        .with_l(l)
        .unwrap()
}
