use num_complex::Complex;

use super::{kron_all, real_trace, CMatrix};
use crate::config::NoiseModel;
use crate::error::{Error, Result};
use crate::oracle::density::BranchDensity;
use crate::oracle::pauli::{b0, b1, Pauli};

fn lueders(rho: &CMatrix, observable: &CMatrix) -> CMatrix {
    let dim = rho.nrows();
    let half = Complex::new(0.5, 0.0);
    let plus = (CMatrix::identity(dim, dim) + observable) * half;
    let minus = (CMatrix::identity(dim, dim) - observable) * half;
    &plus * rho * &plus + &minus * rho * &minus
}

/// Embeds a single-branch (two-qubit) operator at branch `i` of `n`.
fn embed(i: usize, op: &CMatrix, n: usize) -> CMatrix {
    let id4 = CMatrix::identity(4, 4);
    let mut parts: Vec<&CMatrix> = vec![&id4; n];
    parts[i] = op;
    kron_all(&parts)
}

/// Bell value of the whole network evaluated on the joint `4^n`-dimensional
/// state with no per-branch factorization: earlier rounds are applied as
/// non-selective instruments (uniform input, coin mixture, projective state
/// update) on each shared branch, and the final correlators are summed over
/// all input strings with the alternating signs of the second correlator.
///
/// Exists to certify that the factorized simulation is faithful; limited to
/// `n <= 3` to keep the dimension at 64.
pub fn full_tensor_s(
    n: u32,
    m: u32,
    j: u32,
    theta: f64,
    delta: f64,
    alphas: &[f64],
    noise: NoiseModel,
) -> Result<f64> {
    if n > 3 {
        return Err(Error::Size(format!(
            "joint-state evaluation supports n <= 3, got {n}"
        )));
    }
    if n < 1 || m < 1 || m > n {
        return Err(Error::domain("m", m as f64, "1 <= m <= n"));
    }
    if j < 1 || j as usize > alphas.len() {
        return Err(Error::domain("j", j as f64, "1 <= j <= len(alphas)"));
    }
    for &a in &alphas[..j as usize] {
        if !(0.0..=1.0).contains(&a) {
            return Err(Error::domain("alpha", a, "[0, 1]"));
        }
    }
    let n = n as usize;
    let m = m as usize;

    let branch = BranchDensity::initial(theta, noise)?;
    let branch_refs: Vec<&CMatrix> = (0..n).map(|_| branch.matrix()).collect();
    let mut rho = kron_all(&branch_refs);

    let x_on_a = kron_all(&[&Pauli::I.matrix(), &Pauli::X.matrix()]);
    let z_on_a = kron_all(&[&Pauli::I.matrix(), &Pauli::Z.matrix()]);
    for &alpha in &alphas[..(j - 1) as usize] {
        for i in 0..m {
            let lx = lueders(&rho, &embed(i, &x_on_a, n));
            let lz = lueders(&rho, &embed(i, &z_on_a, n));
            rho = lx * Complex::new(0.5, 0.0)
                + lz * Complex::new(alpha / 2.0, 0.0)
                + &rho * Complex::new((1.0 - alpha) / 2.0, 0.0);
        }
    }

    let alpha_j = alphas[(j - 1) as usize];
    // effective hub-side observable for input 1 on a shared branch:
    // coin heads -> sharp Z, tails -> fixed +1 outcome
    let a1_shared = Pauli::Z.matrix() * Complex::new(alpha_j, 0.0)
        + Pauli::I.matrix() * Complex::new(1.0 - alpha_j, 0.0);
    let (b_i, b_j) = (b0(delta), b1(delta));

    let mut i_corr = 0.0;
    let mut j_corr = 0.0;
    for x in 0..(1usize << n) {
        let mut factors_i: Vec<CMatrix> = Vec::with_capacity(n);
        let mut factors_j: Vec<CMatrix> = Vec::with_capacity(n);
        for i in 0..n {
            let xi = (x >> i) & 1;
            let a_op = if xi == 0 {
                Pauli::X.matrix()
            } else if i < m {
                a1_shared.clone()
            } else {
                Pauli::Z.matrix()
            };
            factors_i.push(kron_all(&[&b_i, &a_op]));
            factors_j.push(kron_all(&[&b_j, &a_op]));
        }
        let refs_i: Vec<&CMatrix> = factors_i.iter().collect();
        let refs_j: Vec<&CMatrix> = factors_j.iter().collect();
        let sign = if (x.count_ones() & 1) == 0 { 1.0 } else { -1.0 };
        i_corr += real_trace(&(kron_all(&refs_i) * &rho));
        j_corr += sign * real_trace(&(kron_all(&refs_j) * &rho));
    }
    let root = 1.0 / n as f64;
    Ok(i_corr.abs().powf(root) + j_corr.abs().powf(root))
}
