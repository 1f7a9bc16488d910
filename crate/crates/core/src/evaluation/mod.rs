//! K-fold cross-validation and accuracy reporting.

mod report;

pub use report::{format_percent, format_report, RenderedReport, ReportLayout};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::classifier::{knn_fit, Label};
use crate::corpus::LabeledSample;
use crate::error::{Error, Result};
use crate::features::FeatureVector;

/// Generator and shuffle used for fold assignment. Recorded in every report.
pub const RNG_ALGORITHM: &str = "ChaCha8Rng::seed_from_u64 + Fisher-Yates SliceRandom::shuffle (rand 0.8)";

/// Fold index of every sample.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldAssignment {
    pub folds: Vec<usize>,
    pub num_folds: usize,
    pub seed: u64,
    pub stratified: bool,
}

impl FoldAssignment {
    pub fn fold_of(&self, sample: usize) -> usize {
        self.folds[sample]
    }

    /// Sample indices of `fold`, ascending.
    pub fn members(&self, fold: usize) -> Vec<usize> {
        (0..self.folds.len()).filter(|&i| self.folds[i] == fold).collect()
    }

    pub fn sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.num_folds];
        for &f in &self.folds {
            sizes[f] += 1;
        }
        sizes
    }
}

/// Seeded shuffle followed by round-robin dealing into `num_folds` folds.
///
/// In stratified mode each class is shuffled on its own and dealt in turn,
/// continuing from the fold where the previous class stopped, so both the
/// per-class and the overall fold sizes differ by at most one.
pub fn kfold_partition(labels: &[Label], num_folds: usize, seed: u64, stratified: bool) -> Result<FoldAssignment> {
    let n = labels.len();
    if num_folds < 2 {
        return Err(Error::Config(format!("need at least 2 folds, got {num_folds}")));
    }
    if num_folds > n {
        return Err(Error::Config(format!("{num_folds} folds requested for {n} samples")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut folds = vec![0usize; n];
    if stratified {
        let mut dealt = 0usize;
        for class in Label::ALL {
            let mut members: Vec<usize> = (0..n).filter(|&i| labels[i] == class).collect();
            members.shuffle(&mut rng);
            for &i in &members {
                folds[i] = dealt % num_folds;
                dealt += 1;
            }
        }
    } else {
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng);
        for (pos, &i) in order.iter().enumerate() {
            folds[i] = pos % num_folds;
        }
    }
    Ok(FoldAssignment {
        folds,
        num_folds,
        seed,
        stratified,
    })
}

/// Counts of (true class, predicted class) pairs, rows indexed by truth.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ConfusionMatrix {
    pub counts: [[u64; 2]; 2],
}

impl ConfusionMatrix {
    pub fn from_counts(counts: [[u64; 2]; 2]) -> Self {
        ConfusionMatrix { counts }
    }

    pub fn record(&mut self, truth: Label, predicted: Label) {
        self.counts[truth.code()][predicted.code()] += 1;
    }

    pub fn get(&self, truth: Label, predicted: Label) -> u64 {
        self.counts[truth.code()][predicted.code()]
    }

    pub fn row_total(&self, truth: Label) -> u64 {
        self.counts[truth.code()].iter().sum()
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }

    pub fn correct(&self) -> u64 {
        self.counts[0][0] + self.counts[1][1]
    }

    /// `100 * correct / total` for one class, or `None` for an empty row.
    pub fn class_accuracy(&self, truth: Label) -> Option<f64> {
        let total = self.row_total(truth);
        (total > 0).then(|| 100.0 * self.get(truth, truth) as f64 / total as f64)
    }

    /// Class accuracy in hundredths of a percent, rounded half up.
    pub fn class_accuracy_hundredths(&self, truth: Label) -> Option<u64> {
        let total = self.row_total(truth) as u128;
        let hits = self.get(truth, truth) as u128;
        (total > 0).then(|| round_half_up(10_000 * hits, total) as u64)
    }

    /// Unweighted mean of the two class accuracies in hundredths of a percent,
    /// rounded half up from the exact rational value.
    pub fn average_accuracy_hundredths(&self) -> Option<u64> {
        let (r0, r1) = (
            self.row_total(Label::Handwritten) as u128,
            self.row_total(Label::Printed) as u128,
        );
        if r0 == 0 || r1 == 0 {
            return None;
        }
        let (d0, d1) = (self.counts[0][0] as u128, self.counts[1][1] as u128);
        Some(round_half_up(5_000 * (d0 * r1 + d1 * r0), r0 * r1) as u64)
    }
}

fn round_half_up(num: u128, den: u128) -> u128 {
    (2 * num + den) / (2 * den)
}

pub fn confusion_matrix(truth: &[Label], predicted: &[Label]) -> Result<ConfusionMatrix> {
    if truth.len() != predicted.len() || truth.is_empty() {
        return Err(Error::Data(format!(
            "confusion matrix needs equal non-empty label lists, got {} and {}",
            truth.len(),
            predicted.len()
        )));
    }
    let mut cm = ConfusionMatrix::default();
    for (&t, &p) in truth.iter().zip(predicted) {
        cm.record(t, p);
    }
    Ok(cm)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CvParams {
    pub num_folds: usize,
    pub k: usize,
    pub seed: u64,
    pub stratified: bool,
    /// Evaluate folds on separate threads. The result is identical either way.
    pub parallel: bool,
}

impl Default for CvParams {
    fn default() -> Self {
        CvParams {
            num_folds: 10,
            k: 5,
            seed: 42,
            stratified: false,
            parallel: false,
        }
    }
}

/// Pooled cross-validation outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct CvReport {
    pub confusion: ConfusionMatrix,
    /// Percent correct per class, indexed by [`Label::code`].
    pub class_accuracy: [f64; 2],
    /// Unweighted mean of `class_accuracy`.
    pub average_accuracy: f64,
    pub num_folds: usize,
    pub k: usize,
    pub seed: u64,
    pub stratified: bool,
    pub rng: &'static str,
    /// Held-out prediction for every sample.
    pub predictions: Vec<Label>,
}

impl CvReport {
    /// Builds a report from pooled counts; both classes must be present.
    pub fn from_confusion(confusion: ConfusionMatrix, params: &CvParams, predictions: Vec<Label>) -> Result<Self> {
        let acc = |l| {
            confusion
                .class_accuracy(l)
                .ok_or_else(|| Error::Data(format!("no {l} samples were validated")))
        };
        let class_accuracy = [acc(Label::Handwritten)?, acc(Label::Printed)?];
        Ok(CvReport {
            confusion,
            class_accuracy,
            average_accuracy: (class_accuracy[0] + class_accuracy[1]) / 2.0,
            num_folds: params.num_folds,
            k: params.k,
            seed: params.seed,
            stratified: params.stratified,
            rng: RNG_ALGORITHM,
            predictions,
        })
    }

    pub fn accuracy(&self, label: Label) -> f64 {
        self.class_accuracy[label.code()]
    }

    /// `"H/P/Avg"` with two decimals each, e.g. `99.00/99.52/99.26`.
    pub fn summary(&self) -> String {
        let cm = &self.confusion;
        let h = cm.class_accuracy_hundredths(Label::Handwritten).expect("validated");
        let p = cm.class_accuracy_hundredths(Label::Printed).expect("validated");
        let a = cm.average_accuracy_hundredths().expect("validated");
        format!("{}/{}/{}", format_percent(h), format_percent(p), format_percent(a))
    }
}

/// K-fold cross-validation of a labeled sample set.
pub fn cross_validate(dataset: &[LabeledSample], params: &CvParams) -> Result<CvReport> {
    let features: Vec<FeatureVector> = dataset.iter().map(|s| s.features).collect();
    let labels: Vec<Label> = dataset.iter().map(|s| s.label).collect();
    cross_validate_vectors(&features, &labels, params)
}

/// [`cross_validate`] on parallel feature and label slices.
///
/// Each fold refits the standardizer and the model on the other folds only;
/// held-out predictions are pooled into one confusion matrix.
pub fn cross_validate_vectors(features: &[FeatureVector], labels: &[Label], params: &CvParams) -> Result<CvReport> {
    if features.len() != labels.len() {
        return Err(Error::Data(format!(
            "{} feature vectors but {} labels",
            features.len(),
            labels.len()
        )));
    }
    for class in Label::ALL {
        if !labels.contains(&class) {
            return Err(Error::Data(format!("dataset has no {class} samples")));
        }
    }
    let assignment = kfold_partition(labels, params.num_folds, params.seed, params.stratified)?;

    let run_fold = |fold: usize| -> Result<Vec<(usize, Label)>> {
        let (mut train_x, mut train_y, mut held_out) = (Vec::new(), Vec::new(), Vec::new());
        for (i, &f) in assignment.folds.iter().enumerate() {
            if f == fold {
                held_out.push(i);
            } else {
                train_x.push(features[i]);
                train_y.push(labels[i]);
            }
        }
        let model = knn_fit(&train_x, &train_y, params.k)?;
        Ok(held_out
            .into_iter()
            .map(|i| (i, model.predict(&features[i]).label))
            .collect())
    };

    let per_fold: Vec<Result<Vec<(usize, Label)>>> = if params.parallel {
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..params.num_folds)
                .map(|fold| scope.spawn(move || run_fold(fold)))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("fold worker panicked"))
                .collect()
        })
    } else {
        (0..params.num_folds).map(run_fold).collect()
    };

    let mut predictions = vec![Label::Handwritten; labels.len()];
    for fold in per_fold {
        for (i, label) in fold? {
            predictions[i] = label;
        }
    }
    let confusion = confusion_matrix(labels, &predictions)?;
    CvReport::from_confusion(confusion, params, predictions)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alternating(n: usize) -> Vec<Label> {
        (0..n).map(|i| Label::ALL[i % 2]).collect()
    }

    #[test]
    fn fold_sizes() {
        let a = kfold_partition(&alternating(10), 10, 1, false).unwrap();
        assert_eq!(a.sizes(), vec![1; 10]);
        let b = kfold_partition(&alternating(103), 10, 1, false).unwrap();
        let mut sizes = b.sizes();
        sizes.sort_unstable();
        assert_eq!(sizes, [10, 10, 10, 10, 10, 10, 10, 11, 11, 11]);
        assert_eq!(b.sizes().iter().filter(|&&s| s == 11).count(), 3);
    }

    #[test]
    fn partition_errors() {
        assert!(kfold_partition(&alternating(5), 6, 0, false).unwrap_err().is_config());
        assert!(kfold_partition(&alternating(5), 1, 0, false).is_err());
    }

    #[test]
    fn stratified_balances_each_class() {
        let mut labels = vec![Label::Handwritten; 23];
        labels.extend(vec![Label::Printed; 14]);
        let a = kfold_partition(&labels, 5, 9, true).unwrap();
        let sizes = a.sizes();
        assert!(sizes.iter().max().unwrap() - sizes.iter().min().unwrap() <= 1);
        for class in Label::ALL {
            let mut per = vec![0; 5];
            for (i, &f) in a.folds.iter().enumerate() {
                if labels[i] == class {
                    per[f] += 1;
                }
            }
            assert!(
                per.iter().max().unwrap() - per.iter().min().unwrap() <= 1,
                "{class}: {per:?}"
            );
        }
    }

    #[test]
    fn confusion_tallies() {
        use Label::*;
        let cm = confusion_matrix(&[Handwritten, Printed, Printed], &[Handwritten, Printed, Printed]).unwrap();
        assert_eq!(cm.counts, [[1, 0], [0, 2]]);
        let cm = confusion_matrix(&[Handwritten; 4], &[Printed; 4]).unwrap();
        assert_eq!(cm.get(Handwritten, Printed), 4);
        assert_eq!(cm.class_accuracy(Printed), None);
        assert!(confusion_matrix(&[], &[]).is_err());
        assert!(confusion_matrix(&[Printed], &[]).is_err());
    }

    #[test]
    fn hundredths_round_half_up() {
        // 1/8 = 12.5% exactly; 1/3 = 33.333..%; 2/3 = 66.666..%
        let cm = ConfusionMatrix::from_counts([[1, 7], [1, 2]]);
        assert_eq!(cm.class_accuracy_hundredths(Label::Handwritten), Some(1250));
        assert_eq!(cm.class_accuracy_hundredths(Label::Printed), Some(6667));
        // (12.5 + 66.666..) / 2 = 39.58333..
        assert_eq!(cm.average_accuracy_hundredths(), Some(3958));
        // 1/800 = 0.125% rounds up to 0.13
        let cm = ConfusionMatrix::from_counts([[1, 799], [1, 0]]);
        assert_eq!(cm.class_accuracy_hundredths(Label::Handwritten), Some(13));
    }

    #[test]
    fn report_needs_both_classes() {
        let cm = ConfusionMatrix::from_counts([[3, 0], [0, 0]]);
        assert!(CvReport::from_confusion(cm, &CvParams::default(), vec![]).is_err());
    }
}
