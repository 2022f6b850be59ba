#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "latentlabel/data_model.hpp"
#include "latentlabel/metrics.hpp"
#include "latentlabel/solver.hpp"

namespace latentlabel {

struct GridSpec {
  std::vector<double> alpha_values;
  std::vector<double> beta_values;
  std::vector<Eigen::Index> k_values;

  // The 15 alpha/beta values and k in 10..100 used for model selection.
  static GridSpec defaults();
};

struct SyntheticSpec {
  Eigen::Index n_samples = 136;
  Eigen::Index k_true = 10;
  Eigen::Index c = 31;
  std::vector<Eigen::Index> modality_dims = {55, 143};
  double v_sparsity = 0.2;      // fraction of nonzeros in the planted V
  double noise_sd = 1.5;
  double label_threshold = 1.0;
  std::uint64_t seed = 0;
};

struct Hyper {
  double alpha = 0.3;
  double beta = 0.1;
  Eigen::Index k = 50;
};

// (train_ids, test_ids), both ascending.
using FoldSplit =
    std::pair<std::vector<Eigen::Index>, std::vector<Eigen::Index>>;

// Seeded permutation cut into `folds` blocks; every block except the last
// takes ceil(n/folds) samples as long as the later folds keep at least one
// each, matching the 14/14/../10 layout for n=136, folds=10.
std::vector<FoldSplit> kfold_splits(Eigen::Index n, Eigen::Index folds,
                                    std::uint64_t seed);

// Reorders samples so the held-out rows sit at the end with labels zeroed
// (kernel columns stay put: anchors are frozen). order[i] is the original
// index of new row i.
struct MaskedFold {
  MultiModalView view;
  LabelMatrix labels;
  std::vector<Eigen::Index> order;
};
MaskedFold mask_fold(const MultiModalView& view, const LabelMatrix& labels,
                     const std::vector<Eigen::Index>& test_ids);

struct GridCell {
  double alpha = 0.0;
  double beta = 0.0;
  Eigen::Index k = 0;
  double validation_hamming = 0.0;
  bool failed = false;
  std::string error;
};

struct GridResult {
  Hyper best;
  std::vector<GridCell> table;  // alpha-major, then beta, then k
  std::vector<Eigen::Index> holdout_ids;
  std::uint64_t seed = 0;
};

// One transductive fit per cell on the 90% split, scored by Hamming loss on
// the held-out 10%; ties keep the earliest cell in grid order.
GridResult grid_search(const MultiModalView& view, const LabelMatrix& labels,
                       const GridSpec& grid, const SolverConfig& config,
                       double holdout_fraction = 0.1, std::uint64_t seed = 0);

struct MetricSummary {
  double mean = 0.0;
  double sd = 0.0;  // sample standard deviation over repeat x fold values
};

struct CvReport {
  MetricSummary hamming_loss, one_error, coverage_normalized, ranking_loss;
  MetricSummary mean_sensitivity, mean_specificity, mean_accuracy;
  std::vector<EvalReport> per_fold;  // repeat-major order
  Eigen::Index repeats = 0;
  Eigen::Index folds = 0;
  std::uint64_t seed = 0;
};

// Called with the masked labels and the fold's test ids right before each
// fit; must be thread-safe when folds run concurrently.
using CvFitObserver =
    std::function<void(const LabelMatrix&, const std::vector<Eigen::Index>&)>;

// Repeats x folds transductive refits; every fold is refit with its labels
// masked and scored on the withheld block.
CvReport repeated_cv(const MultiModalView& view, const LabelMatrix& labels,
                     const Hyper& hyper, Eigen::Index repeats,
                     Eigen::Index folds, const SolverConfig& config,
                     std::uint64_t seed = 0, const CvFitObserver& observer = {});

// Concatenation of the raw-feature modalities, the design matrix of the
// binary-relevance baseline.
Eigen::MatrixXd raw_feature_matrix(const MultiModalView& view);

struct BinaryRelevanceModel {
  Eigen::MatrixXd W;  // d x c ridge weights
  double lambda = 0.0;
};

// Per-label ridge regression on the concatenated feature view; lambda picked
// from the candidate list by holdout Hamming loss.
BinaryRelevanceModel binary_relevance_fit(
    const MultiModalView& view, const LabelMatrix& labels,
    const std::vector<double>& lambdas = {1e-3, 1e-1, 1.0, 10.0},
    std::uint64_t seed = 0);

struct BinaryRelevancePrediction {
  Eigen::MatrixXd scores;
  Eigen::MatrixXd labels;  // 1 where score > 0.5
};
BinaryRelevancePrediction binary_relevance_predict(
    const BinaryRelevanceModel& model, const Eigen::MatrixXd& features);

struct SyntheticData {
  MultiModalView view;   // raw-feature modalities X_i = Z A_i + noise
  LabelMatrix labels;    // Y = 1[Z V* > threshold], all rows labeled
  ModelState planted;    // ground truth: P = Z, V = V*, U_i = pinv(A_i)
};
SyntheticData generate_synthetic(const SyntheticSpec& spec);

}  // namespace latentlabel
