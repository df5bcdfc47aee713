//! Gabor filter bank and texture descriptors.
//!
//! Kernel form: `g(x,y) = exp(-(x'^2 + g^2 y'^2)/(2 s^2)) * cos(2 pi x'/l + psi)`
//! with `x' = x cos t + y sin t`, `y' = -x sin t + y cos t`, coordinates
//! centered at the kernel midpoint. Kernels are mean-corrected so constant
//! images produce zero response.

use super::{FeatureVector, DESCRIPTOR_GABOR_V1};
use crate::error::{Error, Result};
use crate::imaging::GrayImage;

/// Parameters of one Gabor kernel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaborParams {
    /// Orientation in radians.
    pub theta: f64,
    /// Gaussian envelope standard deviation in pixels.
    pub sigma: f64,
    /// Wavelength in pixels per cycle.
    pub lambda: f64,
    /// Spatial aspect ratio in (0, 1].
    pub gamma: f64,
    /// Phase offset in radians.
    pub psi: f64,
    /// Odd kernel side length.
    pub ksize: usize,
}

impl GaborParams {
    fn validate(&self) {
        assert!(self.ksize >= 3 && self.ksize % 2 == 1, "ksize must be odd and >= 3");
        assert!(self.sigma > 0.0 && self.lambda > 0.0, "sigma and lambda must be positive");
        assert!(self.gamma > 0.0 && self.gamma <= 1.0, "gamma must be in (0,1]");
    }
}

/// An ordered set of Gabor kernels.
#[derive(Debug, Clone, PartialEq)]
pub struct GaborBank {
    pub kernels: Vec<GaborParams>,
}

pub const GABOR_ORIENTATIONS: [f64; 4] = [
    0.0,
    std::f64::consts::FRAC_PI_4,
    std::f64::consts::FRAC_PI_2,
    3.0 * std::f64::consts::FRAC_PI_4,
];

/// (sigma, lambda) pairs bracketing typical ridge spacing at 16-32 px inputs.
pub const GABOR_SCALES: [(f64, f64); 2] = [(2.0, 4.0), (4.0, 8.0)];

impl GaborBank {
    /// The default 4-orientation x 2-scale bank, ordered scale-major.
    pub fn with_ksize(ksize: usize) -> Self {
        let mut kernels = Vec::with_capacity(8);
        for &(sigma, lambda) in &GABOR_SCALES {
            for &theta in &GABOR_ORIENTATIONS {
                kernels.push(GaborParams {
                    theta,
                    sigma,
                    lambda,
                    gamma: 0.5,
                    psi: 0.0,
                    ksize,
                });
            }
        }
        Self { kernels }
    }

    /// Default bank for a given input side length: 9x9 kernels for 32 px
    /// inputs and larger, 7x7 below that.
    pub fn default_for_size(input_size: usize) -> Self {
        Self::with_ksize(if input_size >= 32 { 9 } else { 7 })
    }

    pub fn len(&self) -> usize {
        self.kernels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kernels.is_empty()
    }
}

fn kernel_values(p: &GaborParams) -> Vec<f64> {
    let half = (p.ksize / 2) as isize;
    let (ct, st) = (p.theta.cos(), p.theta.sin());
    let mut values = Vec::with_capacity(p.ksize * p.ksize);
    for y in -half..=half {
        for x in -half..=half {
            let (xf, yf) = (x as f64, y as f64);
            let xp = xf * ct + yf * st;
            let yp = -xf * st + yf * ct;
            let envelope = (-(xp * xp + p.gamma * p.gamma * yp * yp) / (2.0 * p.sigma * p.sigma))
                .exp();
            let carrier = (2.0 * std::f64::consts::PI * xp / p.lambda + p.psi).cos();
            values.push(envelope * carrier);
        }
    }
    values
}

/// Build one mean-corrected kernel as a row-major `ksize x ksize` matrix.
pub fn gabor_kernel(p: &GaborParams) -> Vec<f64> {
    p.validate();
    let mut values = kernel_values(p);
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    for v in &mut values {
        *v -= mean;
    }
    values
}

#[inline]
fn reflect(ix: isize, n: usize) -> usize {
    // Mirror with edge repeat: -1 -> 0, n -> n-1.
    let n = n as isize;
    let mut i = ix;
    if i < 0 {
        i = -i - 1;
    }
    if i >= n {
        i = 2 * n - i - 1;
    }
    i as usize
}

/// Correlate the image with every kernel in the bank (reflect padding,
/// "same" output size), preserving bank order.
pub fn apply_gabor_bank(img: &GrayImage, bank: &GaborBank) -> Result<Vec<GrayImage>> {
    let ksize = bank.kernels.iter().map(|k| k.ksize).max().unwrap_or(0);
    if ksize > img.width || ksize > img.height {
        return Err(Error::KernelLargerThanImage {
            ksize,
            width: img.width,
            height: img.height,
        });
    }
    bank.kernels
        .iter()
        .map(|params| {
            let kernel = gabor_kernel(params);
            let half = (params.ksize / 2) as isize;
            let mut map = GrayImage::constant(img.width, img.height, 0.0);
            for y in 0..img.height as isize {
                for x in 0..img.width as isize {
                    let mut acc = 0.0;
                    let mut ki = 0;
                    for dy in -half..=half {
                        let sy = reflect(y + dy, img.height);
                        for dx in -half..=half {
                            let sx = reflect(x + dx, img.width);
                            acc += kernel[ki] * img.get(sx, sy);
                            ki += 1;
                        }
                    }
                    map.set(x as usize, y as usize, acc);
                }
            }
            Ok(map)
        })
        .collect()
}

/// The "gabor-v1" descriptor: per response map, (mean, standard deviation)
/// plus 4x4 block-averaged magnitudes. Length = kernels * 18.
pub fn gabor_features(img: &GrayImage, bank: &GaborBank) -> Result<FeatureVector> {
    let maps = apply_gabor_bank(img, bank)?;
    let mut values = Vec::with_capacity(maps.len() * 18);
    for map in &maps {
        let n = map.pixels.len() as f64;
        let mean = map.pixels.iter().sum::<f64>() / n;
        let var = map.pixels.iter().map(|p| (p - mean) * (p - mean)).sum::<f64>() / n;
        values.push(mean);
        values.push(var.sqrt());
        for by in 0..4 {
            for bx in 0..4 {
                let y0 = by * map.height / 4;
                let y1 = (by + 1) * map.height / 4;
                let x0 = bx * map.width / 4;
                let x1 = (bx + 1) * map.width / 4;
                let mut acc = 0.0;
                let mut cnt = 0.0;
                for y in y0..y1 {
                    for x in x0..x1 {
                        acc += map.get(x, y).abs();
                        cnt += 1.0;
                    }
                }
                values.push(if cnt > 0.0 { acc / cnt } else { 0.0 });
            }
        }
    }
    Ok(FeatureVector::new(values, DESCRIPTOR_GABOR_V1))
}
