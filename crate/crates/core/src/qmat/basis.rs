//! Basis conventions.
//!
//! Computational ordering is `|00>, |01>, |10>, |11>` with the first factor
//! as the most significant bit. The Bell states are numbered so that the
//! nonlocal unitary `U_d` has phases `exp(-i lambda_k)` on `phi_k`:
//!
//! | k | state                     | XX | YY | ZZ |
//! |---|---------------------------|----|----|----|
//! | 1 | `(|00> + |11>)/sqrt 2`    | +1 | -1 | +1 |
//! | 2 | `(|00> - |11>)/sqrt 2`    | -1 | +1 | +1 |
//! | 3 | `(|01> - |10>)/sqrt 2`    | -1 | -1 | -1 |
//! | 4 | `(|01> + |10>)/sqrt 2`    | +1 | +1 | -1 |
//!
//! `phi_3` is the singlet `|psi->`.

use nalgebra::{Matrix2, Matrix4, Vector4};
use num_complex::Complex64;
use std::f64::consts::FRAC_1_SQRT_2;

pub type C64 = Complex64;
pub type Mat2 = Matrix2<C64>;
pub type Mat4 = Matrix4<C64>;
pub type Vec4 = Vector4<C64>;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);
const I: C64 = C64::new(0.0, 1.0);

pub fn identity2() -> Mat2 {
    Mat2::identity()
}

pub fn identity4() -> Mat4 {
    Mat4::identity()
}

/// Pauli matrix `s_1, s_2, s_3` for `index = 0, 1, 2`.
pub fn pauli(index: usize) -> Mat2 {
    match index {
        0 => Mat2::new(ZERO, ONE, ONE, ZERO),
        1 => Mat2::new(ZERO, -I, I, ZERO),
        2 => Mat2::new(ONE, ZERO, ZERO, -ONE),
        _ => panic!("Pauli index {index} out of range"),
    }
}

pub fn kron(a: &Mat2, b: &Mat2) -> Mat4 {
    a.kronecker(b)
}

/// `s_i (x) s_j`.
pub fn pauli_product(i: usize, j: usize) -> Mat4 {
    kron(&pauli(i), &pauli(j))
}

/// Bell state `phi_k` for `k = 1..=4` in the table above.
pub fn bell_state(k: usize) -> Vec4 {
    let h = C64::new(FRAC_1_SQRT_2, 0.0);
    match k {
        1 => Vec4::new(h, ZERO, ZERO, h),
        2 => Vec4::new(h, ZERO, ZERO, -h),
        3 => Vec4::new(ZERO, h, -h, ZERO),
        4 => Vec4::new(ZERO, h, h, ZERO),
        _ => panic!("Bell index {k} out of range"),
    }
}

pub fn bell_projector(k: usize) -> Mat4 {
    let v = bell_state(k);
    v * v.adjoint()
}
