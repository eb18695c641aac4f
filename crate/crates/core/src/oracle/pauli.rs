use num_complex::Complex;

use super::CMatrix;

/// Single-qubit Pauli operators (plus identity).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn matrix(self) -> CMatrix {
        let z = Complex::new(0.0, 0.0);
        let one = Complex::new(1.0, 0.0);
        let i = Complex::new(0.0, 1.0);
        match self {
            Pauli::I => CMatrix::from_row_slice(2, 2, &[one, z, z, one]),
            Pauli::X => CMatrix::from_row_slice(2, 2, &[z, one, one, z]),
            Pauli::Y => CMatrix::from_row_slice(2, 2, &[z, -i, i, z]),
            Pauli::Z => CMatrix::from_row_slice(2, 2, &[one, z, z, -one]),
        }
    }
}

/// Peripheral setting `b_0 = sin(delta) Z + cos(delta) X`.
pub(crate) fn b0(delta: f64) -> CMatrix {
    Pauli::Z.matrix() * Complex::new(delta.sin(), 0.0)
        + Pauli::X.matrix() * Complex::new(delta.cos(), 0.0)
}

/// Peripheral setting `b_1 = -sin(delta) Z + cos(delta) X`.
pub(crate) fn b1(delta: f64) -> CMatrix {
    Pauli::Z.matrix() * Complex::new(-delta.sin(), 0.0)
        + Pauli::X.matrix() * Complex::new(delta.cos(), 0.0)
}
