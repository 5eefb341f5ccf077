//! Sparse multipath channel generation and noisy observation streams.
//!
//! A channel is a weighted sum of steering vectors of the *true* (possibly
//! perturbed) array; an observation is the channel plus circular complex
//! Gaussian noise calibrated per sample so that the input SNR
//! `|h|^2 / (N sigma^2)` is exact for every observation.
//!
//! [`ChannelStream`] produces an unbounded deterministic sequence of
//! observations: the k-th sample depends only on `(rng_seed, k)`, so batches
//! can be replayed or regenerated from any position.

use std::f64::consts::PI;
use std::io::Write;

use ndarray::Array1;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, Normal};

use crate::array::AntennaArray;
use crate::error::{Error, Result};
use crate::kernels;
use crate::rng::{rng_from_seed, subseed};

/// One propagation path: direction of arrival and complex gain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathSpec {
    pub azimuth: f64,
    pub gain: Complex64,
}

/// A ground-truth channel with its noisy observation.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelSample {
    pub h_true: Array1<Complex64>,
    pub x_observed: Array1<Complex64>,
    /// Total noise variance per complex entry.
    pub noise_var: f64,
    pub paths: Vec<PathSpec>,
}

/// Distribution of the number of paths per channel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathCountLaw {
    Constant(usize),
    /// Uniform on `{1, ..., max}`.
    UniformUpTo(usize),
}

impl PathCountLaw {
    fn validate(&self) -> Result<()> {
        let min = match self {
            PathCountLaw::Constant(c) => *c,
            PathCountLaw::UniformUpTo(m) => *m,
        };
        if min == 0 {
            return Err(Error::Config("path count bound must be >= 1".into()));
        }
        Ok(())
    }

    fn sample<R: Rng>(&self, rng: &mut R) -> usize {
        match self {
            PathCountLaw::Constant(c) => *c,
            PathCountLaw::UniformUpTo(m) => rng.random_range(1..=*m),
        }
    }
}

/// Configuration of an observation stream.
#[derive(Debug, Clone)]
pub struct ChannelStreamConfig {
    /// The true (generally perturbed) array generating the channels.
    pub true_array: AntennaArray,
    pub snr_in_db: f64,
    pub path_count_law: PathCountLaw,
    pub rng_seed: u64,
}

/// Deterministic unbounded stream of channel observations.
#[derive(Debug, Clone)]
pub struct ChannelStream {
    cfg: ChannelStreamConfig,
    position: u64,
}

impl ChannelStream {
    pub fn new(cfg: ChannelStreamConfig) -> Result<Self> {
        if !cfg.snr_in_db.is_finite() {
            return Err(Error::Config(format!(
                "snr_in_db must be finite, got {}",
                cfg.snr_in_db
            )));
        }
        cfg.path_count_law.validate()?;
        Ok(Self { cfg, position: 0 })
    }

    pub fn config(&self) -> &ChannelStreamConfig {
        &self.cfg
    }

    /// Number of samples produced so far.
    pub fn position(&self) -> u64 {
        self.position
    }

    /// Draws the next `batch_size` samples and advances the stream.
    pub fn next_batch(&mut self, batch_size: usize) -> Result<Vec<ChannelSample>> {
        if batch_size == 0 {
            return Err(Error::EmptyBatch);
        }
        let start = self.position;
        let batch = (0..batch_size as u64)
            .map(|i| self.sample_at(start + i))
            .collect::<Result<Vec<_>>>()?;
        self.position = start + batch_size as u64;
        Ok(batch)
    }

    /// Generates the sample at stream position `k`, independent of the
    /// current position. Depends only on `(rng_seed, k)`.
    ///
    /// Per-sample draw order: path count, azimuths, path magnitudes, path
    /// phases, then noise.
    pub fn sample_at(&self, k: u64) -> Result<ChannelSample> {
        let mut rng = rng_from_seed(subseed(self.cfg.rng_seed, k));
        let p = self.cfg.path_count_law.sample(&mut rng);

        let azimuths: Vec<f64> = (0..p).map(|_| rng.random_range(0.0..PI)).collect();

        // Magnitudes: |CN(0,1)| draws, sorted so the strongest path comes
        // first, scaled by 1/sqrt(P) to keep E|beta|^2 = 1 for every P.
        let std_part = Normal::new(0.0, std::f64::consts::FRAC_1_SQRT_2).expect("const std");
        let mut magnitudes: Vec<f64> = (0..p)
            .map(|_| Complex64::new(std_part.sample(&mut rng), std_part.sample(&mut rng)).norm())
            .collect();
        magnitudes.sort_by(|a, b| b.partial_cmp(a).expect("finite magnitudes"));
        let scale = 1.0 / (p as f64).sqrt();

        let paths: Vec<PathSpec> = azimuths
            .into_iter()
            .zip(magnitudes)
            .map(|(azimuth, rho)| {
                let phase = rng.random_range(0.0..2.0 * PI);
                PathSpec {
                    azimuth,
                    gain: Complex64::from_polar(rho * scale, phase),
                }
            })
            .collect();

        let h_true = make_multipath(&self.cfg.true_array, &paths)?;
        let (x_observed, noise_var) = add_noise(&h_true, self.cfg.snr_in_db, &mut rng)?;
        Ok(ChannelSample {
            h_true,
            x_observed,
            noise_var,
            paths,
        })
    }
}

/// Single-path channel with unit gain: the raw steering vector at `azimuth`.
pub fn make_single_path(array: &AntennaArray, azimuth: f64) -> Array1<Complex64> {
    array.steering_vector(azimuth)
}

/// Multipath channel `h = sum_p gain_p * e(azimuth_p)` on the given array.
pub fn make_multipath(array: &AntennaArray, paths: &[PathSpec]) -> Result<Array1<Complex64>> {
    if paths.is_empty() {
        return Err(Error::NoPaths);
    }
    let mut h = Array1::zeros(array.n_antennas());
    for path in paths {
        let sv = array.steering_vector(path.azimuth);
        h.zip_mut_with(&sv, |acc, s| *acc += path.gain * s);
    }
    Ok(h)
}

/// Adds circular complex Gaussian noise calibrated to the requested input
/// SNR: `sigma^2 = |h|^2 / (N * 10^(snr_db/10))`, total variance per complex
/// entry. Returns the observation and `sigma^2`.
pub fn add_noise<R: Rng>(
    h: &Array1<Complex64>,
    snr_in_db: f64,
    rng: &mut R,
) -> Result<(Array1<Complex64>, f64)> {
    let h_slice = h.as_slice().expect("owned vector");
    let energy = kernels::norm_sq(h_slice);
    if energy == 0.0 {
        return Err(Error::ZeroChannel);
    }
    let n = h.len() as f64;
    let snr_linear = 10f64.powf(snr_in_db / 10.0);
    let noise_var = energy / (n * snr_linear);
    let part = Normal::new(0.0, (noise_var / 2.0).sqrt())
        .map_err(|_| Error::Config(format!("invalid snr_in_db {snr_in_db}")))?;
    let x = h.mapv(|z| z + Complex64::new(part.sample(rng), part.sample(rng)));
    Ok((x, noise_var))
}

/// Writes samples as CSV for offline inspection: one row per sample with
/// columns `sample_index,n,snr_db,n_paths` followed by the interleaved
/// re/im entries of `h` and then of `x`.
pub fn dump_samples_csv<W: Write>(
    out: &mut W,
    samples: &[ChannelSample],
    start_index: u64,
    snr_in_db: f64,
) -> std::io::Result<()> {
    writeln!(out, "# mpnet-csv schema=1")?;
    let n = samples.first().map_or(0, |s| s.h_true.len());
    let mut header = String::from("sample_index,n,snr_db,n_paths");
    for i in 0..n {
        header.push_str(&format!(",h_re{i},h_im{i}"));
    }
    for i in 0..n {
        header.push_str(&format!(",x_re{i},x_im{i}"));
    }
    writeln!(out, "{header}")?;
    for (offset, s) in samples.iter().enumerate() {
        let mut row = format!(
            "{},{},{},{}",
            start_index + offset as u64,
            s.h_true.len(),
            snr_in_db,
            s.paths.len()
        );
        for z in s.h_true.iter() {
            row.push_str(&format!(",{:.17e},{:.17e}", z.re, z.im));
        }
        for z in s.x_observed.iter() {
            row.push_str(&format!(",{:.17e},{:.17e}", z.re, z.im));
        }
        writeln!(out, "{row}")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::array::PerturbationSpec;
    use approx::assert_abs_diff_eq;

    fn test_stream(seed: u64) -> ChannelStream {
        let array = AntennaArray::ula(16).unwrap();
        ChannelStream::new(ChannelStreamConfig {
            true_array: array,
            snr_in_db: 10.0,
            path_count_law: PathCountLaw::UniformUpTo(5),
            rng_seed: seed,
        })
        .unwrap()
    }

    #[test]
    fn single_path_matches_steering_vector() {
        let a = AntennaArray::ula(8).unwrap();
        let h = make_single_path(&a, 1.1);
        assert_eq!(h, a.steering_vector(1.1));
    }

    #[test]
    fn opposite_gains_cancel() {
        let a = AntennaArray::ula(8).unwrap();
        let paths = [
            PathSpec {
                azimuth: 0.4,
                gain: Complex64::new(1.0, 0.0),
            },
            PathSpec {
                azimuth: 0.4,
                gain: Complex64::new(-1.0, 0.0),
            },
        ];
        let h = make_multipath(&a, &paths).unwrap();
        assert!(h.iter().all(|z| z.norm() < 1e-15));
    }

    #[test]
    fn multipath_matches_weighted_column_sum() {
        // Independent route: build the same channel as an explicit
        // matrix-vector product over a 3-atom matrix.
        let a = AntennaArray::ula(8)
            .unwrap()
            .perturbed(&PerturbationSpec::new(0.2, 0.1, 3).unwrap());
        let paths = [
            PathSpec {
                azimuth: 0.3,
                gain: Complex64::new(0.5, -1.0),
            },
            PathSpec {
                azimuth: 1.7,
                gain: Complex64::new(-0.25, 0.1),
            },
            PathSpec {
                azimuth: 2.8,
                gain: Complex64::new(0.0, 2.0),
            },
        ];
        let h = make_multipath(&a, &paths).unwrap();

        let cols: Vec<Array1<Complex64>> =
            paths.iter().map(|p| a.steering_vector(p.azimuth)).collect();
        for i in 0..a.n_antennas() {
            let mut acc = Complex64::new(0.0, 0.0);
            for (col, p) in cols.iter().zip(paths.iter()) {
                acc += p.gain * col[i];
            }
            assert_abs_diff_eq!(h[i].re, acc.re, epsilon = 1e-13);
            assert_abs_diff_eq!(h[i].im, acc.im, epsilon = 1e-13);
        }
    }

    #[test]
    fn multipath_is_linear_in_gains() {
        let a = AntennaArray::ula(8).unwrap();
        let paths: Vec<PathSpec> = vec![
            PathSpec {
                azimuth: 0.2,
                gain: Complex64::new(0.3, 0.7),
            },
            PathSpec {
                azimuth: 2.0,
                gain: Complex64::new(-1.1, 0.4),
            },
        ];
        let doubled: Vec<PathSpec> = paths
            .iter()
            .map(|p| PathSpec {
                azimuth: p.azimuth,
                gain: p.gain * 2.0,
            })
            .collect();
        let h = make_multipath(&a, &paths).unwrap();
        let h2 = make_multipath(&a, &doubled).unwrap();
        // Doubling is exact in floating point.
        for (a, b) in h.iter().zip(h2.iter()) {
            assert_eq!(*a * 2.0, *b);
        }
    }

    #[test]
    fn empty_paths_rejected() {
        let a = AntennaArray::ula(8).unwrap();
        assert!(matches!(make_multipath(&a, &[]), Err(Error::NoPaths)));
    }

    #[test]
    fn noise_vanishes_at_huge_snr() {
        let a = AntennaArray::ula(16).unwrap();
        let h = make_single_path(&a, 0.9);
        let mut rng = rng_from_seed(4);
        let (x, _) = add_noise(&h, 300.0, &mut rng).unwrap();
        let diff: f64 = x
            .iter()
            .zip(h.iter())
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt();
        let norm = kernels::norm(h.as_slice().unwrap());
        assert!(diff / norm < 1e-10);
    }

    #[test]
    fn noise_variance_follows_snr_definition() {
        // |h|^2 = 64 on a unit-gain ULA of 64 antennas, SNR 10 dB -> 0.1.
        let a = AntennaArray::ula(64).unwrap();
        let h = make_single_path(&a, 1.3);
        let mut rng = rng_from_seed(4);
        let (_, var) = add_noise(&h, 10.0, &mut rng).unwrap();
        assert_abs_diff_eq!(var, 0.1, epsilon = 1e-12);
    }

    #[test]
    fn zero_channel_rejected() {
        let h = Array1::from_vec(vec![Complex64::new(0.0, 0.0); 4]);
        let mut rng = rng_from_seed(0);
        assert!(matches!(
            add_noise(&h, 10.0, &mut rng),
            Err(Error::ZeroChannel)
        ));
    }

    #[test]
    fn realized_noise_energy_concentrates() {
        // Mean of |x-h|^2 / (N sigma^2) over many draws is 1 with std
        // 1/sqrt(N*M); assert at 3 sigma.
        let a = AntennaArray::ula(64).unwrap();
        let h = make_single_path(&a, 0.7);
        let mut rng = rng_from_seed(21);
        let m = 2000;
        let mut acc = 0.0;
        for _ in 0..m {
            let (x, var) = add_noise(&h, 10.0, &mut rng).unwrap();
            let e: f64 = x.iter().zip(h.iter()).map(|(a, b)| (a - b).norm_sqr()).sum();
            acc += e / (64.0 * var);
        }
        let mean = acc / m as f64;
        let bound = 3.0 / ((64.0 * m as f64).sqrt());
        assert!(
            (mean - 1.0).abs() < bound,
            "mean {mean} outside 1 +- {bound}"
        );
    }

    #[test]
    fn batches_are_deterministic_and_sized() {
        let mut s1 = test_stream(77);
        let mut s2 = test_stream(77);
        let b1 = s1.next_batch(200).unwrap();
        let b2 = s2.next_batch(200).unwrap();
        assert_eq!(b1.len(), 200);
        assert_eq!(b1, b2);
        let mut s3 = test_stream(78);
        assert_ne!(b1, s3.next_batch(200).unwrap());
    }

    #[test]
    fn samples_depend_only_on_seed_and_position() {
        let mut split = test_stream(5);
        let mut whole = test_stream(5);
        let mut first = split.next_batch(3).unwrap();
        first.extend(split.next_batch(2).unwrap());
        let all = whole.next_batch(5).unwrap();
        assert_eq!(first, all);
        assert_eq!(split.position(), 5);
    }

    #[test]
    fn constant_law_fixes_path_count() {
        let array = AntennaArray::ula(8).unwrap();
        let mut s = ChannelStream::new(ChannelStreamConfig {
            true_array: array,
            snr_in_db: 10.0,
            path_count_law: PathCountLaw::Constant(1),
            rng_seed: 3,
        })
        .unwrap();
        for sample in s.next_batch(50).unwrap() {
            assert_eq!(sample.paths.len(), 1);
        }
    }

    #[test]
    fn uniform_law_stays_in_range_and_sorts_magnitudes() {
        let mut s = test_stream(9);
        for sample in s.next_batch(100).unwrap() {
            let p = sample.paths.len();
            assert!((1..=5).contains(&p));
            let mags: Vec<f64> = sample.paths.iter().map(|p| p.gain.norm()).collect();
            for w in mags.windows(2) {
                assert!(w[0] >= w[1]);
            }
            assert!(sample
                .paths
                .iter()
                .all(|p| (0.0..PI).contains(&p.azimuth)));
        }
    }

    #[test]
    fn zero_batch_size_rejected() {
        let mut s = test_stream(1);
        assert!(matches!(s.next_batch(0), Err(Error::EmptyBatch)));
    }

    #[test]
    fn observation_equals_channel_plus_noise_energy() {
        let mut s = test_stream(33);
        for sample in s.next_batch(20).unwrap() {
            let n = sample.h_true.len() as f64;
            let e: f64 = sample
                .x_observed
                .iter()
                .zip(sample.h_true.iter())
                .map(|(x, h)| (x - h).norm_sqr())
                .sum();
            // Very loose per-sample check; the statistical test above is the
            // calibrated one.
            assert!(e > 0.0 && e < 30.0 * n * sample.noise_var);
        }
    }

    #[test]
    fn csv_dump_has_expected_shape() {
        let mut s = test_stream(2);
        let batch = s.next_batch(3).unwrap();
        let mut buf = Vec::new();
        dump_samples_csv(&mut buf, &batch, 0, 10.0).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 2 + 3);
        assert!(lines[0].starts_with("# mpnet-csv schema=1"));
        let cols = lines[1].split(',').count();
        assert_eq!(cols, 4 + 4 * 16);
        for row in &lines[2..] {
            assert_eq!(row.split(',').count(), cols);
        }
    }
}
