use num_complex::Complex;

use super::{hermitian_eigenvalues, kron_all, real_trace, CMatrix};
use crate::config::NoiseModel;
use crate::error::{Error, Result};
use crate::oracle::pauli::Pauli;

/// Two-qubit state of one branch in the ordered basis `|b a>` (peripheral
/// party first, hub-adjacent party second).
#[derive(Debug, Clone, PartialEq)]
pub struct BranchDensity {
    rho: CMatrix,
}

impl BranchDensity {
    /// Source state `cos(theta)|00> + sin(theta)|11>` after the chosen noise.
    ///
    /// Depolarizing mixes the full two-qubit state towards `I/4`; damping
    /// acts on the hub-adjacent qubit alone.
    pub fn initial(theta: f64, noise: NoiseModel) -> Result<Self> {
        if !(theta > 0.0 && theta <= std::f64::consts::FRAC_PI_4 + 1e-15) {
            return Err(Error::domain("theta", theta, "(0, pi/4]"));
        }
        noise.validate()?;
        let mut psi = CMatrix::zeros(4, 1);
        psi[(0, 0)] = Complex::new(theta.cos(), 0.0);
        psi[(3, 0)] = Complex::new(theta.sin(), 0.0);
        let rho = &psi * psi.adjoint();
        let rho = match noise {
            NoiseModel::None => rho,
            NoiseModel::Depolarizing { p } => {
                rho * Complex::new(1.0 - p, 0.0)
                    + CMatrix::identity(4, 4) * Complex::new(p / 4.0, 0.0)
            }
            NoiseModel::AmplitudeDamping { p } => {
                let zero = Complex::new(0.0, 0.0);
                let k0 = CMatrix::from_row_slice(
                    2,
                    2,
                    &[
                        Complex::new(1.0, 0.0),
                        zero,
                        zero,
                        Complex::new((1.0 - p).sqrt(), 0.0),
                    ],
                );
                let k1 = CMatrix::from_row_slice(
                    2,
                    2,
                    &[zero, Complex::new(p.sqrt(), 0.0), zero, zero],
                );
                let mut out = CMatrix::zeros(4, 4);
                for k in [&k0, &k1] {
                    let e = kron_all(&[&Pauli::I.matrix(), k]);
                    out += &e * &rho * e.adjoint();
                }
                out
            }
        };
        Ok(BranchDensity { rho })
    }

    /// Wraps an explicit 4x4 density matrix after validating it.
    pub fn new(rho: CMatrix, tol: f64) -> Result<Self> {
        if rho.nrows() != 4 || rho.ncols() != 4 {
            return Err(Error::Matrix(format!(
                "expected a 4x4 matrix, got {}x{}",
                rho.nrows(),
                rho.ncols()
            )));
        }
        let state = BranchDensity { rho };
        state.validate(tol)?;
        Ok(state)
    }

    pub(crate) fn from_matrix(rho: CMatrix) -> Self {
        debug_assert_eq!(rho.nrows(), 4);
        BranchDensity { rho }
    }

    pub(crate) fn matrix(&self) -> &CMatrix {
        &self.rho
    }

    pub fn trace(&self) -> f64 {
        real_trace(&self.rho)
    }

    /// `Tr((b ⊗ a) rho)` for observables on the peripheral / hub-adjacent
    /// qubits respectively.
    pub fn expectation(&self, bob_op: &CMatrix, alice_op: &CMatrix) -> f64 {
        real_trace(&(kron_all(&[bob_op, alice_op]) * &self.rho))
    }

    /// Checks Hermiticity, unit trace, and positive semidefiniteness.
    pub fn validate(&self, tol: f64) -> Result<()> {
        let diff = (&self.rho - self.rho.adjoint()).norm();
        if diff > tol {
            return Err(Error::Matrix(format!("not Hermitian (|rho - rho^H| = {diff:e})")));
        }
        let tr = self.trace();
        if (tr - 1.0).abs() > tol {
            return Err(Error::Matrix(format!("trace {tr} != 1")));
        }
        let eigs = hermitian_eigenvalues(&self.rho);
        if let Some(&min) = eigs.first() {
            if min < -tol {
                return Err(Error::Matrix(format!("negative eigenvalue {min:e}")));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::pauli::Pauli;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn initial_states_are_valid_densities() {
        for noise in [
            NoiseModel::None,
            NoiseModel::Depolarizing { p: 0.3 },
            NoiseModel::AmplitudeDamping { p: 0.25 },
        ] {
            let rho = BranchDensity::initial(0.6, noise).unwrap();
            rho.validate(1e-12).unwrap();
        }
    }

    #[test]
    fn pure_state_correlators() {
        let rho = BranchDensity::initial(FRAC_PI_4, NoiseModel::None).unwrap();
        let (x, z) = (Pauli::X.matrix(), Pauli::Z.matrix());
        assert_abs_diff_eq!(rho.expectation(&x, &x), 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(rho.expectation(&z, &z), 1.0, epsilon = 1e-14);
        // partial entanglement: <XX> = sin 2 theta, <Z I> = cos 2 theta
        let rho = BranchDensity::initial(0.5, NoiseModel::None).unwrap();
        assert_abs_diff_eq!(rho.expectation(&x, &x), 1f64.sin(), epsilon = 1e-14);
        assert_abs_diff_eq!(
            rho.expectation(&z, &Pauli::I.matrix()),
            1f64.cos(),
            epsilon = 1e-14
        );
    }

    #[test]
    fn depolarizing_scales_correlators() {
        let p = 0.2;
        let clean = BranchDensity::initial(0.6, NoiseModel::None).unwrap();
        let noisy = BranchDensity::initial(0.6, NoiseModel::Depolarizing { p }).unwrap();
        let (x, z) = (Pauli::X.matrix(), Pauli::Z.matrix());
        for (b, a) in [(&x, &x), (&z, &z), (&x, &z)] {
            assert_abs_diff_eq!(
                noisy.expectation(b, a),
                (1.0 - p) * clean.expectation(b, a),
                epsilon = 1e-14
            );
        }
    }

    #[test]
    fn damping_matrix_entries() {
        let (theta, p) = (0.7, 0.2);
        let rho = BranchDensity::initial(theta, NoiseModel::AmplitudeDamping { p }).unwrap();
        let (c, s) = (theta.cos(), theta.sin());
        let m = rho.matrix();
        assert_abs_diff_eq!(m[(0, 0)].re, c * c, epsilon = 1e-14);
        assert_abs_diff_eq!(m[(1, 1)].re, 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(m[(2, 2)].re, p * s * s, epsilon = 1e-14);
        assert_abs_diff_eq!(m[(3, 3)].re, (1.0 - p) * s * s, epsilon = 1e-14);
        assert_abs_diff_eq!(m[(0, 3)].re, c * s * (1.0 - p).sqrt(), epsilon = 1e-14);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(BranchDensity::initial(0.0, NoiseModel::None).is_err());
        assert!(BranchDensity::initial(0.5, NoiseModel::Depolarizing { p: 1.5 }).is_err());
    }
}
