//! SOCOFing-style dataset loading, synthetic generation, and seeded splits.
//!
//! Expected on-disk layout:
//!
//! ```text
//! <root>/
//!   Real/                      1__M_Left_index_finger.BMP ...
//!   Altered/
//!     Altered-Easy/            1__M_Left_index_finger_Obl.BMP ...
//!     Altered-Medium/
//!     Altered-Hard/
//! ```
//!
//! Filenames follow `<id>__<G>_<Hand>_<finger>_finger[_<suffix>].<ext>` with a
//! BMP or PNG extension (case-insensitive). Files that do not match are
//! skipped with a logged warning and counted in the load summary.

mod synth;

pub use synth::{generate_synthetic, SynthConfig};

use crate::error::{Error, Result};
use crate::imaging::{self, GrayImage};
use crate::rng;
use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::path::{Path, PathBuf};

/// The 4-way classification target.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum AlterationClass {
    Real = 0,
    Easy = 1,
    Medium = 2,
    Hard = 3,
}

impl AlterationClass {
    pub const ALL: [AlterationClass; 4] = [
        AlterationClass::Real,
        AlterationClass::Easy,
        AlterationClass::Medium,
        AlterationClass::Hard,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(ix: usize) -> Option<Self> {
        Self::ALL.get(ix).copied()
    }

    pub fn name(self) -> &'static str {
        match self {
            AlterationClass::Real => "Real",
            AlterationClass::Easy => "Easy",
            AlterationClass::Medium => "Medium",
            AlterationClass::Hard => "Hard",
        }
    }

    /// Directory for this class relative to the dataset root.
    pub fn dir(self) -> &'static str {
        match self {
            AlterationClass::Real => "Real",
            AlterationClass::Easy => "Altered/Altered-Easy",
            AlterationClass::Medium => "Altered/Altered-Medium",
            AlterationClass::Hard => "Altered/Altered-Hard",
        }
    }
}

impl fmt::Display for AlterationClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Gender {
    M,
    F,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Hand {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Finger {
    Thumb,
    Index,
    Middle,
    Ring,
    Little,
}

impl Finger {
    pub const ALL: [Finger; 5] = [
        Finger::Thumb,
        Finger::Index,
        Finger::Middle,
        Finger::Ring,
        Finger::Little,
    ];

    fn as_str(self) -> &'static str {
        match self {
            Finger::Thumb => "thumb",
            Finger::Index => "index",
            Finger::Middle => "middle",
            Finger::Ring => "ring",
            Finger::Little => "little",
        }
    }
}

/// One fingerprint image with its parsed identity fields.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FingerprintRecord {
    pub subject_id: u32,
    pub gender: Gender,
    pub hand: Hand,
    pub finger: Finger,
    pub alteration: AlterationClass,
    pub image_path: PathBuf,
}

/// An ordered, deterministic collection of records.
#[derive(Debug, Clone, Default)]
pub struct Dataset {
    /// Sorted lexicographically by `image_path`.
    pub records: Vec<FingerprintRecord>,
    pub class_counts: [usize; 4],
    /// Files skipped during loading (malformed names, undecodable images).
    pub skipped: usize,
}

impl Dataset {
    fn from_records(mut records: Vec<FingerprintRecord>, skipped: usize) -> Self {
        records.sort_by(|a, b| a.image_path.cmp(&b.image_path));
        let mut class_counts = [0usize; 4];
        for r in &records {
            class_counts[r.alteration.index()] += 1;
        }
        Self {
            records,
            class_counts,
            skipped,
        }
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Number of classes with at least one record.
    pub fn classes_present(&self) -> usize {
        self.class_counts.iter().filter(|&&c| c > 0).count()
    }

    /// The `loaded=<n> skipped=<m>` summary line.
    pub fn load_summary(&self) -> String {
        format!("loaded={} skipped={}", self.len(), self.skipped)
    }
}

/// Train/test split parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SplitSpec {
    pub train_fraction: f64,
    pub seed: u64,
    pub stratified: bool,
}

impl Default for SplitSpec {
    fn default() -> Self {
        Self {
            train_fraction: 0.8,
            seed: 0,
            stratified: true,
        }
    }
}

fn filename_regex() -> &'static regex::Regex {
    use std::sync::OnceLock;
    static RE: OnceLock<regex::Regex> = OnceLock::new();
    RE.get_or_init(|| {
        regex::Regex::new(
            r"^(\d+)__([MF])_(Left|Right)_(thumb|index|middle|ring|little)_finger(?:_([A-Za-z0-9]+))?\.(?i:bmp|png)$",
        )
        .unwrap()
    })
}

/// Parse one SOCOFing-style filename. The alteration class comes from the
/// directory the file was found in, not from the name.
pub fn parse_filename(name: &str, source_dir_class: AlterationClass) -> Result<FingerprintRecord> {
    let caps = filename_regex()
        .captures(name)
        .ok_or_else(|| Error::MalformedFilename {
            name: name.to_string(),
        })?;
    let subject_id: u32 = caps[1].parse().map_err(|_| Error::MalformedFilename {
        name: name.to_string(),
    })?;
    if subject_id == 0 {
        return Err(Error::MalformedFilename {
            name: name.to_string(),
        });
    }
    let gender = match &caps[2] {
        "M" => Gender::M,
        _ => Gender::F,
    };
    let hand = match &caps[3] {
        "Left" => Hand::Left,
        _ => Hand::Right,
    };
    let finger = match &caps[4] {
        "thumb" => Finger::Thumb,
        "index" => Finger::Index,
        "middle" => Finger::Middle,
        "ring" => Finger::Ring,
        _ => Finger::Little,
    };
    Ok(FingerprintRecord {
        subject_id,
        gender,
        hand,
        finger,
        alteration: source_dir_class,
        image_path: PathBuf::from(name),
    })
}

/// Decode an image file to a grayscale raster with values in [0,255].
pub fn load_image(path: &Path) -> Result<GrayImage> {
    let raw = image::open(path).map_err(|source| Error::ImageDecode {
        path: path.to_path_buf(),
        source,
    })?;
    imaging::to_gray(&raw)
}

/// Load every decodable image under the SOCOFing directory layout.
///
/// Records come back sorted lexicographically by path; malformed filenames and
/// undecodable files are skipped with a warning.
pub fn load_dataset(root: &Path) -> Result<Dataset> {
    let class_dirs: Vec<(AlterationClass, PathBuf)> = AlterationClass::ALL
        .iter()
        .map(|&c| (c, root.join(c.dir())))
        .filter(|(_, d)| d.is_dir())
        .collect();
    if class_dirs.is_empty() {
        return Err(Error::MissingRoot {
            path: root.to_path_buf(),
        });
    }

    let mut records = Vec::new();
    let mut skipped = 0usize;
    for (class, dir) in class_dirs {
        let entries = std::fs::read_dir(&dir).map_err(|source| Error::IoFailure {
            path: dir.clone(),
            source,
        })?;
        for entry in entries {
            let entry = entry.map_err(|source| Error::IoFailure {
                path: dir.clone(),
                source,
            })?;
            let path = entry.path();
            if !path.is_file() {
                continue;
            }
            let name = match path.file_name().and_then(|n| n.to_str()) {
                Some(n) => n.to_string(),
                None => {
                    skipped += 1;
                    continue;
                }
            };
            match parse_filename(&name, class) {
                Ok(mut record) => {
                    record.image_path = path.clone();
                    if let Err(err) = load_image(&path) {
                        log::warn!("skipping undecodable image {}: {err}", path.display());
                        skipped += 1;
                        continue;
                    }
                    records.push(record);
                }
                Err(err) => {
                    log::warn!("skipping {}: {err}", path.display());
                    skipped += 1;
                }
            }
        }
    }

    if records.is_empty() {
        return Err(Error::EmptyDataset);
    }
    Ok(Dataset::from_records(records, skipped))
}

/// Seeded train/test split.
///
/// Stratified mode shuffles each class independently and takes
/// `floor(train_fraction * n_class)` records for training, so the per-class
/// train fraction deviates from the spec by less than one record.
pub fn split(ds: &Dataset, spec: &SplitSpec) -> Result<(Dataset, Dataset)> {
    assert!(
        spec.train_fraction > 0.0 && spec.train_fraction < 1.0,
        "train_fraction must be in (0,1)"
    );
    let mut rng = rng::stream(spec.seed, "split", &[]);
    let mut train = Vec::new();
    let mut test = Vec::new();

    if spec.stratified {
        for class in AlterationClass::ALL {
            let ix: Vec<usize> = (0..ds.records.len())
                .filter(|&i| ds.records[i].alteration == class)
                .collect();
            if ix.is_empty() {
                continue;
            }
            if ix.len() < 2 {
                return Err(Error::ClassTooSmall {
                    class: class.index(),
                    count: ix.len(),
                    min: 2,
                });
            }
            let mut shuffled = ix;
            shuffled.shuffle(&mut rng);
            let n_train = (spec.train_fraction * shuffled.len() as f64).floor() as usize;
            for (k, &i) in shuffled.iter().enumerate() {
                if k < n_train {
                    train.push(ds.records[i].clone());
                } else {
                    test.push(ds.records[i].clone());
                }
            }
        }
    } else {
        let mut ix: Vec<usize> = (0..ds.records.len()).collect();
        ix.shuffle(&mut rng);
        let n_train = (spec.train_fraction * ix.len() as f64).floor() as usize;
        for (k, &i) in ix.iter().enumerate() {
            if k < n_train {
                train.push(ds.records[i].clone());
            } else {
                test.push(ds.records[i].clone());
            }
        }
    }

    Ok((
        Dataset::from_records(train, 0),
        Dataset::from_records(test, 0),
    ))
}
