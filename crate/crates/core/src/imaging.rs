//! Grayscale conversion, bilinear resizing, and [0,1] normalization.
//!
//! All operations are pure; `GrayImage` is also the container for filter
//! response maps, so pixel values are only guaranteed to be in [0,1] after
//! [`normalize`].

use crate::error::{Error, Result};
use image::DynamicImage;

/// Row-major 2-D raster of real values.
#[derive(Debug, Clone, PartialEq)]
pub struct GrayImage {
    pub width: usize,
    pub height: usize,
    pub pixels: Vec<f64>,
}

impl GrayImage {
    pub fn new(width: usize, height: usize, pixels: Vec<f64>) -> Self {
        assert_eq!(width * height, pixels.len(), "pixel buffer size mismatch");
        Self {
            width,
            height,
            pixels,
        }
    }

    pub fn constant(width: usize, height: usize, value: f64) -> Self {
        Self::new(width, height, vec![value; width * height])
    }

    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut pixels = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                pixels.push(f(x, y));
            }
        }
        Self::new(width, height, pixels)
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.pixels[y * self.width + x]
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, v: f64) {
        self.pixels[y * self.width + x] = v;
    }

    pub fn mean(&self) -> f64 {
        self.pixels.iter().sum::<f64>() / self.pixels.len() as f64
    }
}

/// Collapse a decoded 8-bit raster to one channel.
///
/// Three-channel input uses the 0.299/0.587/0.114 luminance weights; output
/// values stay in [0, 255].
pub fn to_gray(raw: &DynamicImage) -> Result<GrayImage> {
    match raw {
        DynamicImage::ImageLuma8(img) => {
            let (w, h) = (img.width() as usize, img.height() as usize);
            let pixels = img.pixels().map(|p| p.0[0] as f64).collect();
            Ok(GrayImage::new(w, h, pixels))
        }
        DynamicImage::ImageRgb8(img) => {
            let (w, h) = (img.width() as usize, img.height() as usize);
            let pixels = img
                .pixels()
                .map(|p| 0.299 * p.0[0] as f64 + 0.587 * p.0[1] as f64 + 0.114 * p.0[2] as f64)
                .collect();
            Ok(GrayImage::new(w, h, pixels))
        }
        other => Err(Error::UnsupportedChannelCount {
            channels: other.color().channel_count(),
        }),
    }
}

/// Bilinear resize with half-pixel-centered sampling.
pub fn resize(img: &GrayImage, width: usize, height: usize) -> GrayImage {
    assert!(width >= 1 && height >= 1, "target size must be positive");
    if width == img.width && height == img.height {
        return img.clone();
    }
    let sx = img.width as f64 / width as f64;
    let sy = img.height as f64 / height as f64;
    GrayImage::from_fn(width, height, |x, y| {
        let src_x = ((x as f64 + 0.5) * sx - 0.5).clamp(0.0, (img.width - 1) as f64);
        let src_y = ((y as f64 + 0.5) * sy - 0.5).clamp(0.0, (img.height - 1) as f64);
        let x0 = src_x.floor() as usize;
        let y0 = src_y.floor() as usize;
        let x1 = (x0 + 1).min(img.width - 1);
        let y1 = (y0 + 1).min(img.height - 1);
        let fx = src_x - x0 as f64;
        let fy = src_y - y0 as f64;
        let top = img.get(x0, y0) * (1.0 - fx) + img.get(x1, y0) * fx;
        let bot = img.get(x0, y1) * (1.0 - fx) + img.get(x1, y1) * fx;
        top * (1.0 - fy) + bot * fy
    })
}

/// Scale pixel values from [0,255] into [0,1].
pub fn normalize(img: &GrayImage) -> GrayImage {
    GrayImage::new(
        img.width,
        img.height,
        img.pixels.iter().map(|p| p / 255.0).collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn to_gray_single_channel_passthrough() {
        let img = image::GrayImage::from_pixel(2, 2, image::Luma([200]));
        let g = to_gray(&DynamicImage::ImageLuma8(img)).unwrap();
        assert_eq!(g.get(0, 0), 200.0);
    }

    #[test]
    fn to_gray_equal_rgb_channels() {
        let img = image::RgbImage::from_pixel(1, 1, image::Rgb([100, 100, 100]));
        let g = to_gray(&DynamicImage::ImageRgb8(img)).unwrap();
        assert!((g.get(0, 0) - 100.0).abs() < 1e-9);
    }

    #[test]
    fn to_gray_pure_red() {
        // 0.299 * 255 = 76.245
        let img = image::RgbImage::from_pixel(1, 1, image::Rgb([255, 0, 0]));
        let g = to_gray(&DynamicImage::ImageRgb8(img)).unwrap();
        assert!((g.get(0, 0) - 76.245).abs() < 1e-9);
    }

    #[test]
    fn to_gray_rejects_rgba() {
        let img = image::RgbaImage::from_pixel(1, 1, image::Rgba([1, 2, 3, 4]));
        let err = to_gray(&DynamicImage::ImageRgba8(img)).unwrap_err();
        assert!(matches!(
            err,
            Error::UnsupportedChannelCount { channels: 4 }
        ));
    }

    #[test]
    fn resize_constant_stays_constant() {
        let img = GrayImage::constant(64, 64, 0.5);
        let out = resize(&img, 32, 32);
        assert_eq!(out.width, 32);
        assert!(out.pixels.iter().all(|&p| (p - 0.5).abs() < 1e-12));
    }

    #[test]
    fn resize_same_size_is_identity() {
        let img = GrayImage::from_fn(5, 4, |x, y| (x * 7 + y) as f64);
        let out = resize(&img, 5, 4);
        assert_eq!(out.pixels, img.pixels);
    }

    #[test]
    fn resize_upsample_row_matches_hand_bilinear() {
        // 2x1 [0,1] -> 4x1; hand-evaluated half-pixel bilinear weights.
        let img = GrayImage::new(2, 1, vec![0.0, 1.0]);
        let out = resize(&img, 4, 1);
        let expected = [0.0, 0.25, 0.75, 1.0];
        for (got, want) in out.pixels.iter().zip(expected) {
            assert!((got - want).abs() < 1e-12, "{got} vs {want}");
        }
        assert!(out.pixels.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn normalize_endpoints() {
        let img = GrayImage::new(3, 1, vec![255.0, 0.0, 128.0]);
        let out = normalize(&img);
        assert_eq!(out.pixels[0], 1.0);
        assert_eq!(out.pixels[1], 0.0);
        assert!((out.pixels[2] - 128.0 / 255.0).abs() < 1e-15);
    }

    proptest! {
        // Bilinear output is a convex combination of inputs, so bounds hold.
        #[test]
        fn resize_preserves_bounds(
            w in 1usize..12, h in 1usize..12,
            ow in 1usize..24, oh in 1usize..24,
            values in proptest::collection::vec(0.0f64..1.0, 1..144),
        ) {
            let n = w * h;
            prop_assume!(values.len() >= n);
            let img = GrayImage::new(w, h, values[..n].to_vec());
            let lo = img.pixels.iter().cloned().fold(f64::INFINITY, f64::min);
            let hi = img.pixels.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let out = resize(&img, ow, oh);
            for &p in &out.pixels {
                prop_assert!(p >= lo - 1e-9 && p <= hi + 1e-9);
            }
        }
    }
}
