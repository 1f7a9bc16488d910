//! Word segmentation and handwritten/printed text classification.
//!
//! A scanned page is binarized with Otsu's threshold, cleaned of specks and
//! ruling lines, and split into words by horizontal dilation. Every word image
//! is described by nine statistical texture features computed from its
//! intensity histogram and from local standard deviation, range and entropy
//! filters. Words are then classified by a k-nearest-neighbor vote over
//! standardized features and evaluated with K-fold cross-validation.
//!
//! ```
//! use hwprint::corpus::{synthesize_word, SynthesisParams};
//! use hwprint::features::extract_features;
//!
//! let word = synthesize_word(&SynthesisParams::handwritten(7)).unwrap();
//! let features = extract_features(&word);
//! assert!(features.local_std > 0.0);
//! ```
//!
//! See the `examples/` directory for one runnable program per stage.

pub mod classifier;
pub mod corpus;
pub mod error;
pub mod evaluation;
pub mod features;
pub mod imaging;
pub mod segmentation;

pub use classifier::{knn_fit, knn_predict, KnnModel, Label, Prediction};
pub use corpus::LabeledSample;
pub use error::{Error, Result};
pub use evaluation::{cross_validate, CvParams, CvReport};
pub use features::{extract_features, FeatureVector};
pub use imaging::{BBox, BinaryImage, GrayImage};
pub use segmentation::{segment_words, SegmentationConfig, WordRegion};
