//! Antenna arrays, steering vectors and steering-vector dictionaries.
//!
//! Positions are stored in wavelength units, so the steering phase for a
//! direction-of-arrival unit vector `u` is simply `-2*pi*(a . u)` and the
//! wavelength never appears explicitly. Azimuth `theta` maps to
//! `u = (cos theta, sin theta, 0)`; broadside of the x-aligned uniform
//! linear array is `theta = pi/2`.

use std::f64::consts::PI;

use ndarray::{Array1, Array2, ArrayView1};
use num_complex::Complex64;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::kernels;
use crate::rng::rng_from_seed;

/// A physical antenna array: per-antenna complex gains and 3-D positions in
/// wavelength units.
#[derive(Debug, Clone, PartialEq)]
pub struct AntennaArray {
    gains: Vec<Complex64>,
    positions: Vec<[f64; 3]>,
}

impl AntennaArray {
    /// Builds an array from explicit gains and positions (wavelength units).
    pub fn new(gains: Vec<Complex64>, positions: Vec<[f64; 3]>) -> Result<Self> {
        if gains.is_empty() || gains.len() != positions.len() {
            return Err(Error::BadArrayShape {
                gains: gains.len(),
                positions: positions.len(),
            });
        }
        Ok(Self { gains, positions })
    }

    /// Nominal uniform linear array: `n` unit-gain antennas on the x-axis at
    /// half-wavelength spacing, centroid at the origin.
    pub fn ula(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::BadArrayShape {
                gains: 0,
                positions: 0,
            });
        }
        let gains = vec![Complex64::new(1.0, 0.0); n];
        let positions = (1..=n)
            .map(|i| [(i as f64 - (n as f64 + 1.0) / 2.0) * 0.5, 0.0, 0.0])
            .collect();
        Ok(Self { gains, positions })
    }

    pub fn n_antennas(&self) -> usize {
        self.gains.len()
    }

    pub fn gains(&self) -> &[Complex64] {
        &self.gains
    }

    pub fn positions(&self) -> &[[f64; 3]] {
        &self.positions
    }

    /// Array response to a plane wave from azimuth `azimuth` (radians):
    /// entry `i` is `g_i * exp(-j*2*pi*(a_i . u))` with
    /// `u = (cos azimuth, sin azimuth, 0)`. No normalization is applied.
    pub fn steering_vector(&self, azimuth: f64) -> Array1<Complex64> {
        let (sin_az, cos_az) = azimuth.sin_cos();
        let v: Vec<Complex64> = self
            .gains
            .iter()
            .zip(self.positions.iter())
            .map(|(g, p)| {
                let phase = -2.0 * PI * (p[0] * cos_az + p[1] * sin_az);
                g * Complex64::from_polar(1.0, phase)
            })
            .collect();
        Array1::from_vec(v)
    }

    /// Returns a perturbed copy of this array: additive circular complex
    /// Gaussian noise on the gains and Gaussian displacement of the x
    /// coordinate, deterministic in `spec.rng_seed`.
    ///
    /// Draw order is fixed per antenna: gain real part, gain imaginary part,
    /// x displacement.
    pub fn perturbed(&self, spec: &PerturbationSpec) -> AntennaArray {
        let mut rng = rng_from_seed(spec.rng_seed);
        // CN(0, sigma_g^2): each real component has variance sigma_g^2 / 2.
        let gain_part = Normal::new(0.0, spec.sigma_g / std::f64::consts::SQRT_2)
            .expect("validated non-negative std");
        let pos_part = Normal::new(0.0, spec.sigma_p).expect("validated non-negative std");
        let mut gains = Vec::with_capacity(self.gains.len());
        let mut positions = Vec::with_capacity(self.positions.len());
        for (g, p) in self.gains.iter().zip(self.positions.iter()) {
            let dg = Complex64::new(gain_part.sample(&mut rng), gain_part.sample(&mut rng));
            let dx = pos_part.sample(&mut rng);
            gains.push(g + dg);
            positions.push([p[0] + dx, p[1], p[2]]);
        }
        AntennaArray { gains, positions }
    }
}

/// Uncertainty model for an imperfectly known array: complex gain noise of
/// total variance `sigma_g^2` per antenna and x-position noise of standard
/// deviation `sigma_p` (wavelength units).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerturbationSpec {
    pub sigma_g: f64,
    pub sigma_p: f64,
    pub rng_seed: u64,
}

impl PerturbationSpec {
    pub fn new(sigma_g: f64, sigma_p: f64, rng_seed: u64) -> Result<Self> {
        if !(sigma_g.is_finite() && sigma_p.is_finite() && sigma_g >= 0.0 && sigma_p >= 0.0) {
            return Err(Error::BadPerturbation { sigma_g, sigma_p });
        }
        Ok(Self {
            sigma_g,
            sigma_p,
            rng_seed,
        })
    }
}

/// A dictionary of steering vectors sampled on an azimuth grid.
///
/// Atoms are stored one per row of an `(n_atoms, n_antennas)` matrix; row `j`
/// is the steering vector of `azimuths()[j]`, scaled to unit l2 norm when the
/// dictionary is normalized.
#[derive(Debug, Clone, PartialEq)]
pub struct Dictionary {
    atoms: Array2<Complex64>,
    azimuths: Vec<f64>,
    normalized: bool,
}

impl Dictionary {
    /// Builds a dictionary from explicit atoms. `atoms` has one atom per row;
    /// `azimuths` must match the row count. When `normalized` is set, every
    /// row must already have unit l2 norm (checked to 1e-12 relative).
    pub fn from_atoms(
        atoms: Array2<Complex64>,
        azimuths: Vec<f64>,
        normalized: bool,
    ) -> Result<Self> {
        let (n_atoms, _) = atoms.dim();
        if n_atoms == 0 {
            return Err(Error::EmptyDictionary);
        }
        if azimuths.len() != n_atoms {
            return Err(Error::DictionaryShape {
                detail: format!("{} azimuths for {} atoms", azimuths.len(), n_atoms),
            });
        }
        if atoms.as_slice().is_none() {
            return Err(Error::DictionaryShape {
                detail: "atom matrix must be contiguous row-major".into(),
            });
        }
        if normalized {
            for (j, row) in atoms.rows().into_iter().enumerate() {
                let norm = kernels::norm(row.as_slice().expect("contiguous row"));
                if (norm - 1.0).abs() > 1e-12 {
                    return Err(Error::DictionaryShape {
                        detail: format!("atom {j} has norm {norm}, expected 1"),
                    });
                }
            }
        }
        Ok(Self {
            atoms,
            azimuths,
            normalized,
        })
    }

    pub fn n_atoms(&self) -> usize {
        self.atoms.dim().0
    }

    pub fn n_antennas(&self) -> usize {
        self.atoms.dim().1
    }

    /// The `(n_atoms, n_antennas)` atom matrix, one atom per row.
    pub fn atoms(&self) -> &Array2<Complex64> {
        &self.atoms
    }

    pub fn atom(&self, j: usize) -> ArrayView1<'_, Complex64> {
        self.atoms.row(j)
    }

    pub fn azimuths(&self) -> &[f64] {
        &self.azimuths
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }
}

/// Builds a steering-vector dictionary over `n_atoms` azimuths evenly spaced
/// on `[0, pi)` (`azimuth_j = j*pi/n_atoms`).
///
/// The half circle avoids the front-back ambiguity of a linear array, which
/// would otherwise duplicate atoms. With `normalize`, columns are scaled to
/// unit l2 norm so that correlation maximization followed by coefficient
/// reuse is an orthogonal projection per atom.
pub fn build_dictionary(
    array: &AntennaArray,
    n_atoms: usize,
    normalize: bool,
) -> Result<Dictionary> {
    if n_atoms == 0 {
        return Err(Error::EmptyDictionary);
    }
    let n = array.n_antennas();
    let mut atoms = Array2::zeros((n_atoms, n));
    let mut azimuths = Vec::with_capacity(n_atoms);
    for j in 0..n_atoms {
        let azimuth = j as f64 * PI / n_atoms as f64;
        azimuths.push(azimuth);
        let mut sv = array.steering_vector(azimuth);
        if normalize {
            let norm = kernels::norm(sv.as_slice().expect("owned vector"));
            if norm > 0.0 {
                sv.mapv_inplace(|z| z / norm);
            }
        }
        atoms.row_mut(j).assign(&sv);
    }
    Dictionary::from_atoms(atoms, azimuths, normalize)
}
