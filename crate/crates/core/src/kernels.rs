//! Hot-path complex vector kernels shared by the estimators and the network.
//!
//! Split real/imaginary accumulators let the correlation pass (the dominant
//! cost, one pass over an `A x N` matrix per greedy step) autovectorize.

use ndarray::Array2;
use num_complex::Complex64;

/// `sum_i conj(a[i]) * b[i]`.
#[inline]
pub(crate) fn conj_dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    debug_assert_eq!(a.len(), b.len());
    let mut re = 0.0f64;
    let mut im = 0.0f64;
    for (w, x) in a.iter().zip(b.iter()) {
        re += w.re * x.re + w.im * x.im;
        im += w.re * x.im - w.im * x.re;
    }
    Complex64::new(re, im)
}

/// `y[i] += alpha * x[i]`.
#[inline]
pub(crate) fn axpy(alpha: Complex64, x: &[Complex64], y: &mut [Complex64]) {
    debug_assert_eq!(x.len(), y.len());
    for (yi, xi) in y.iter_mut().zip(x.iter()) {
        *yi += alpha * xi;
    }
}

#[inline]
pub(crate) fn norm_sq(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.re * z.re + z.im * z.im).sum()
}

#[inline]
pub(crate) fn norm(v: &[Complex64]) -> f64 {
    norm_sq(v).sqrt()
}

/// Correlations of every atom (row of `atoms`) against `r`:
/// `out[j] = conj(atoms[j, :]) . r`.
///
/// `atoms` must be in standard (row-major) layout.
pub(crate) fn correlations(atoms: &Array2<Complex64>, r: &[Complex64], out: &mut [Complex64]) {
    let (n_atoms, n) = atoms.dim();
    debug_assert_eq!(r.len(), n);
    debug_assert_eq!(out.len(), n_atoms);
    let flat = atoms
        .as_slice()
        .expect("atom matrix must be contiguous row-major");
    for (j, slot) in out.iter_mut().enumerate() {
        *slot = conj_dot(&flat[j * n..(j + 1) * n], r);
    }
}

/// Index of the entry of greatest modulus; ties resolve to the lowest index.
///
/// The degenerate all-zero input returns index 0.
#[inline]
pub(crate) fn argmax_modulus(v: &[Complex64]) -> usize {
    debug_assert!(!v.is_empty());
    let mut best = 0usize;
    let mut best_sq = v[0].norm_sqr();
    for (j, z) in v.iter().enumerate().skip(1) {
        let m = z.norm_sqr();
        if m > best_sq {
            best_sq = m;
            best = j;
        }
    }
    best
}

/// Largest and second-largest modulus in `v` (equal when `v` has one entry).
#[inline]
pub(crate) fn top_two_moduli(v: &[Complex64]) -> (f64, f64) {
    let mut top = 0.0f64;
    let mut second = 0.0f64;
    for z in v {
        let m = z.norm();
        if m > top {
            second = top;
            top = m;
        } else if m > second {
            second = m;
        }
    }
    if v.len() < 2 {
        (top, top)
    } else {
        (top, second)
    }
}
