//! Baseline channel estimators over a steering-vector dictionary.
//!
//! * [`ls_estimate`] — the observation itself (unbiased, no model).
//! * [`single_atom_estimate`] — pick the atom most correlated with the
//!   observation and project onto it.
//! * [`mp_estimate`] — matching pursuit: repeat the single-atom step on the
//!   residual; re-selection of an index is permitted.
//! * [`omp_estimate`] — orthogonal matching pursuit: after each selection the
//!   coefficients of all selected atoms are refit by least squares (modified
//!   Gram-Schmidt with reorthogonalization); an index is never selected twice.
//!
//! All dictionary estimators require unit-norm atoms so that the correlation
//! coefficient doubles as the projection coefficient.

use ndarray::Array1;
use num_complex::Complex64;

use crate::array::Dictionary;
use crate::error::{Error, Result};
use crate::kernels::{argmax_modulus, axpy, conj_dot, correlations, norm, norm_sq};

/// Output of a dictionary-based estimator.
#[derive(Debug, Clone)]
pub struct EstimateResult {
    pub h_hat: Array1<Complex64>,
    /// Atom indices in selection order.
    pub selected_indices: Vec<usize>,
    /// Coefficients aligned with `selected_indices`.
    pub coefficients: Vec<Complex64>,
    /// `|x - h_hat|`.
    pub residual_norm: f64,
    /// Set when a linearly dependent atom had to be dropped (OMP only).
    pub rank_deficient: bool,
}

/// Least squares estimate: the observation unchanged.
pub fn ls_estimate(x: &Array1<Complex64>) -> Array1<Complex64> {
    x.clone()
}

fn check_inputs(x: &Array1<Complex64>, dict: &Dictionary, k: usize) -> Result<()> {
    if !dict.is_normalized() {
        return Err(Error::UnnormalizedDictionary);
    }
    if x.len() != dict.n_antennas() {
        return Err(Error::LengthMismatch {
            expected: dict.n_antennas(),
            got: x.len(),
        });
    }
    if k == 0 {
        return Err(Error::ZeroIterations);
    }
    Ok(())
}

/// Best single-atom projection: select the atom of maximal `|a^H x|` (ties
/// to the lowest index) and project the observation onto it.
pub fn single_atom_estimate(x: &Array1<Complex64>, dict: &Dictionary) -> Result<EstimateResult> {
    mp_estimate(x, dict, 1)
}

/// Matching pursuit with `k` greedy iterations on the running residual.
pub fn mp_estimate(x: &Array1<Complex64>, dict: &Dictionary, k: usize) -> Result<EstimateResult> {
    check_inputs(x, dict, k)?;
    let xs = x.as_slice().expect("owned vector");
    let mut residual = xs.to_vec();
    let mut corr = vec![Complex64::default(); dict.n_atoms()];
    let mut selected = Vec::with_capacity(k);
    let mut coefficients = Vec::with_capacity(k);
    let atoms_flat = dict.atoms().as_slice().expect("contiguous atoms");
    let n = dict.n_antennas();
    for _ in 0..k {
        correlations(dict.atoms(), &residual, &mut corr);
        let s = argmax_modulus(&corr);
        let c = corr[s];
        axpy(-c, &atoms_flat[s * n..(s + 1) * n], &mut residual);
        selected.push(s);
        coefficients.push(c);
    }
    let h_hat = Array1::from_iter(xs.iter().zip(residual.iter()).map(|(x, r)| x - r));
    let residual_norm = norm(&residual);
    Ok(EstimateResult {
        h_hat,
        selected_indices: selected,
        coefficients,
        residual_norm,
        rank_deficient: false,
    })
}

/// Orthogonal matching pursuit with `k` iterations.
///
/// The selection rule matches matching pursuit but skips indices already
/// selected (or dropped); after each selection, coefficients are refit by
/// least squares over all selected atoms using modified Gram-Schmidt with one
/// reorthogonalization pass. An atom that is (numerically) linearly dependent
/// on the selected set is dropped, the result is flagged, and selection
/// continues.
pub fn omp_estimate(x: &Array1<Complex64>, dict: &Dictionary, k: usize) -> Result<EstimateResult> {
    check_inputs(x, dict, k)?;
    let xs = x.as_slice().expect("owned vector");
    let n = dict.n_antennas();
    let n_atoms = dict.n_atoms();
    let atoms_flat = dict.atoms().as_slice().expect("contiguous atoms");
    let x_norm = norm(xs);

    let mut residual = xs.to_vec();
    let mut corr = vec![Complex64::default(); n_atoms];
    let mut tried = vec![false; n_atoms];
    // Orthonormal basis of the selected atoms and the upper-triangular
    // factor, stored column by column: r_cols[j][i] = q_i^H a_{s_j}.
    let mut basis: Vec<Vec<Complex64>> = Vec::new();
    let mut r_cols: Vec<Vec<Complex64>> = Vec::new();
    let mut selected: Vec<usize> = Vec::new();
    let mut rank_deficient = false;

    while selected.len() < k {
        if norm(&residual) <= 1e-12 * x_norm {
            break;
        }
        correlations(dict.atoms(), &residual, &mut corr);
        let mut best: Option<usize> = None;
        let mut best_sq = -1.0;
        for (j, z) in corr.iter().enumerate() {
            if tried[j] {
                continue;
            }
            let m = z.norm_sqr();
            if m > best_sq {
                best_sq = m;
                best = Some(j);
            }
        }
        let Some(s) = best else {
            break; // every atom tried
        };
        tried[s] = true;

        let atom = &atoms_flat[s * n..(s + 1) * n];
        let mut v = atom.to_vec();
        let mut r_col = Vec::with_capacity(basis.len() + 1);
        for q in &basis {
            let p = conj_dot(q, &v);
            axpy(-p, q, &mut v);
            r_col.push(p);
        }
        // Second Gram-Schmidt pass for numerical orthogonality.
        for (i, q) in basis.iter().enumerate() {
            let p = conj_dot(q, &v);
            axpy(-p, q, &mut v);
            r_col[i] += p;
        }
        let v_norm = norm(&v);
        if v_norm <= 1e-10 * norm(atom) {
            rank_deficient = true;
            continue;
        }
        let inv = 1.0 / v_norm;
        for z in v.iter_mut() {
            *z *= inv;
        }
        r_col.push(Complex64::new(v_norm, 0.0));
        let p = conj_dot(&v, &residual);
        axpy(-p, &v, &mut residual);
        basis.push(v);
        r_cols.push(r_col);
        selected.push(s);
    }

    // Back-substitute R c = Q^H x for the least squares coefficients.
    let m = selected.len();
    let qtx: Vec<Complex64> = basis.iter().map(|q| conj_dot(q, xs)).collect();
    let mut coefficients = vec![Complex64::default(); m];
    for i in (0..m).rev() {
        let mut acc = qtx[i];
        for j in (i + 1)..m {
            acc -= r_cols[j][i] * coefficients[j];
        }
        coefficients[i] = acc / r_cols[i][i];
    }

    let mut h_hat = vec![Complex64::default(); n];
    for (idx, c) in selected.iter().zip(coefficients.iter()) {
        axpy(*c, &atoms_flat[idx * n..(idx + 1) * n], &mut h_hat);
    }
    let residual_norm = xs
        .iter()
        .zip(h_hat.iter())
        .map(|(x, h)| (x - h).norm_sqr())
        .sum::<f64>()
        .sqrt();
    Ok(EstimateResult {
        h_hat: Array1::from_vec(h_hat),
        selected_indices: selected,
        coefficients,
        residual_norm,
        rank_deficient,
    })
}

#[allow(dead_code)]
pub(crate) fn relative_error(a: &Array1<Complex64>, b: &Array1<Complex64>) -> f64 {
    let num: f64 = a
        .iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt();
    let den = norm_sq(b.as_slice().expect("owned")).sqrt();
    if den == 0.0 {
        num
    } else {
        num / den
    }
}
