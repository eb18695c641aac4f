use num_complex::Complex;

use super::{kron_all, CMatrix};
use crate::error::{Error, Result};
use crate::oracle::density::BranchDensity;
use crate::oracle::pauli::Pauli;

/// Unselected state update after one sharing round with coin bias `alpha`:
/// `rho -> (3 - alpha)/4 rho + 1/4 X rho X + alpha/4 Z rho Z`, the Paulis
/// acting on the hub-adjacent qubit.
pub fn ppm_channel(rho: &BranchDensity, alpha: f64) -> Result<BranchDensity> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::domain("alpha", alpha, "[0, 1]"));
    }
    let m = rho.matrix();
    let x = kron_all(&[&Pauli::I.matrix(), &Pauli::X.matrix()]);
    let z = kron_all(&[&Pauli::I.matrix(), &Pauli::Z.matrix()]);
    let out = m * Complex::new((3.0 - alpha) / 4.0, 0.0)
        + &x * m * &x * Complex::new(0.25, 0.0)
        + &z * m * &z * Complex::new(alpha / 4.0, 0.0);
    Ok(BranchDensity::from_matrix(out))
}

/// Expands the product channel over `m <= 3` branches as an explicit sum over
/// the `3^m` Pauli label assignments, with weight
/// `alpha^q (3 - alpha)^{m-p-q} / 4^m` for `p` X-labels and `q` Z-labels.
/// Returns the joint `4^m x 4^m` output matrix.
pub fn lemma3_expand(rhos: &[BranchDensity], alpha: f64) -> Result<CMatrix> {
    if rhos.is_empty() || rhos.len() > 3 {
        return Err(Error::Size(format!(
            "label expansion supports 1..=3 branches, got {}",
            rhos.len()
        )));
    }
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::domain("alpha", alpha, "[0, 1]"));
    }
    let m = rhos.len();
    let dim = 4usize.pow(m as u32);
    let labels = [Pauli::I, Pauli::X, Pauli::Z];
    let mut out = CMatrix::zeros(dim, dim);
    for assignment in 0..3usize.pow(m as u32) {
        let mut coeff = 1.0f64;
        let mut factors: Vec<CMatrix> = Vec::with_capacity(m);
        let mut idx = assignment;
        for rho in rhos {
            let label = labels[idx % 3];
            idx /= 3;
            coeff *= match label {
                Pauli::I => (3.0 - alpha) / 4.0,
                Pauli::X => 0.25,
                Pauli::Z => alpha / 4.0,
                Pauli::Y => unreachable!(),
            };
            let k = kron_all(&[&Pauli::I.matrix(), &label.matrix()]);
            factors.push(&k * rho.matrix() * &k);
        }
        let refs: Vec<&CMatrix> = factors.iter().collect();
        out += kron_all(&refs) * Complex::new(coeff, 0.0);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::NoiseModel;
    use approx::assert_abs_diff_eq;

    #[test]
    fn channel_preserves_density_properties() {
        let rho = BranchDensity::initial(0.6, NoiseModel::None).unwrap();
        let out = ppm_channel(&rho, 0.37).unwrap();
        out.validate(1e-12).unwrap();
    }

    #[test]
    fn channel_scales_correlators() {
        // <X ⊗ X> picks up (2 - alpha)/2, <Z ⊗ Z> picks up 1/2
        let alpha = 0.41;
        let rho = BranchDensity::initial(0.55, NoiseModel::None).unwrap();
        let out = ppm_channel(&rho, alpha).unwrap();
        let (x, z) = (Pauli::X.matrix(), Pauli::Z.matrix());
        assert_abs_diff_eq!(
            out.expectation(&x, &x),
            (2.0 - alpha) / 2.0 * rho.expectation(&x, &x),
            epsilon = 1e-14
        );
        assert_abs_diff_eq!(
            out.expectation(&z, &z),
            0.5 * rho.expectation(&z, &z),
            epsilon = 1e-14
        );
        // the peripheral marginal is untouched
        assert_abs_diff_eq!(
            out.expectation(&z, &Pauli::I.matrix()),
            rho.expectation(&z, &Pauli::I.matrix()),
            epsilon = 1e-14
        );
    }

    #[test]
    fn maximally_mixed_is_a_fixed_point() {
        let mixed = BranchDensity::from_matrix(
            CMatrix::identity(4, 4) * Complex::new(0.25, 0.0),
        );
        let out = ppm_channel(&mixed, 0.8).unwrap();
        assert!((out.matrix() - mixed.matrix()).norm() < 1e-15);
    }

    #[test]
    fn expansion_factorizes_over_branches() {
        let alpha = 0.63;
        for m in 1..=3usize {
            let rhos: Vec<BranchDensity> = (0..m)
                .map(|i| BranchDensity::initial(0.3 + 0.1 * i as f64, NoiseModel::None).unwrap())
                .collect();
            let expanded = lemma3_expand(&rhos, alpha).unwrap();
            let per_branch: Vec<CMatrix> = rhos
                .iter()
                .map(|r| ppm_channel(r, alpha).unwrap().matrix().clone())
                .collect();
            let refs: Vec<&CMatrix> = per_branch.iter().collect();
            let product = kron_all(&refs);
            assert!(
                (expanded - product).norm() < 1e-13,
                "m = {m}: expansion disagrees with the product channel"
            );
        }
    }

    #[test]
    fn expansion_rejects_oversize() {
        let rho = BranchDensity::initial(0.5, NoiseModel::None).unwrap();
        assert!(lemma3_expand(&[], 0.5).is_err());
        assert!(lemma3_expand(&vec![rho; 4], 0.5).is_err());
    }
}
