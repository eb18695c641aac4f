//! Brute-force verification layer: explicit density-matrix evolution of the
//! sharing protocol, independent of the closed forms it certifies.

mod channel;
mod correlator;
mod density;
mod pauli;
mod tensor;

pub use channel::{lemma3_expand, ppm_channel};
pub use correlator::{
    branch_factor_sim, oracle_s, untouched_factor_sim, CorrelatorSide, OracleValue,
};
pub use density::BranchDensity;
pub use pauli::Pauli;
pub use tensor::full_tensor_s;

use nalgebra::DMatrix;
use num_complex::Complex;

pub(crate) type CMatrix = DMatrix<Complex<f64>>;

/// Eigenvalues of a Hermitian matrix via the real symmetric embedding
/// `[[Re, -Im], [Im, Re]]` (each eigenvalue appears twice; duplicates are
/// collapsed by taking every second entry of the sorted list).
pub(crate) fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let n = m.nrows();
    let mut real = DMatrix::<f64>::zeros(2 * n, 2 * n);
    for r in 0..n {
        for c in 0..n {
            let z = m[(r, c)];
            real[(r, c)] = z.re;
            real[(r, c + n)] = -z.im;
            real[(r + n, c)] = z.im;
            real[(r + n, c + n)] = z.re;
        }
    }
    let mut eigs: Vec<f64> = real.symmetric_eigen().eigenvalues.iter().copied().collect();
    eigs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    eigs.into_iter().step_by(2).collect()
}

/// Kronecker product folding a list of square matrices left to right.
pub(crate) fn kron_all(mats: &[&CMatrix]) -> CMatrix {
    let mut out = CMatrix::from_element(1, 1, Complex::new(1.0, 0.0));
    for m in mats {
        out = out.kronecker(m);
    }
    out
}

pub(crate) fn real_trace(m: &CMatrix) -> f64 {
    m.trace().re
}
