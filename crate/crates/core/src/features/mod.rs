//! Non-neural feature paths: Gabor filter bank, HOG descriptor, PCA, SMOTE.

mod gabor;
mod hog;
mod pca;
mod smote;

pub use gabor::{apply_gabor_bank, gabor_features, gabor_kernel, GaborBank, GaborParams};
pub use hog::hog_features;
pub use pca::{pca_fit, pca_transform, PcaModel};
pub use smote::smote_resample;

use serde::{Deserialize, Serialize};

pub const DESCRIPTOR_GABOR_V1: &str = "gabor-v1";
pub const DESCRIPTOR_HOG_V1: &str = "hog-v1";
pub const DESCRIPTOR_PIXELS_V1: &str = "pixels-v1";
pub const DESCRIPTOR_GABOR_MAPS_V1: &str = "gabor-maps-v1";
pub const DESCRIPTOR_PCA_V1: &str = "pca-v1";
pub const DESCRIPTOR_SMOTE_V1: &str = "smote-v1";

/// A fixed-length descriptor tagged with the recipe that produced it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureVector {
    pub values: Vec<f64>,
    pub descriptor_id: String,
}

impl FeatureVector {
    pub fn new(values: Vec<f64>, descriptor_id: &str) -> Self {
        Self {
            values,
            descriptor_id: descriptor_id.to_string(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Flatten normalized image pixels into a raw feature vector.
pub fn pixel_features(img: &crate::imaging::GrayImage) -> FeatureVector {
    FeatureVector::new(img.pixels.clone(), DESCRIPTOR_PIXELS_V1)
}
