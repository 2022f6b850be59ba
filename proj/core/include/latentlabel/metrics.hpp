#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

namespace latentlabel {

struct LabelCounts {
  Eigen::Index tp = 0;
  Eigen::Index fp = 0;
  Eigen::Index tn = 0;
  Eigen::Index fn = 0;
};

struct ConfusionSummary {
  std::vector<LabelCounts> per_label;
  // Means over labels whose denominator is nonzero.
  double mean_sensitivity = 0.0;
  double mean_specificity = 0.0;
  double mean_accuracy = 0.0;
};

// Fraction of cells where prediction and truth disagree.
double hamming_loss(const Eigen::MatrixXd& pred, const Eigen::MatrixXd& truth);

// Fraction of samples whose top-scored label (ties: lowest index) is not
// relevant. Samples with an empty true set are skipped.
double one_error(const Eigen::MatrixXd& scores, const Eigen::MatrixXd& truth,
                 Eigen::Index* skipped = nullptr);

struct CoverageResult {
  double raw = 0.0;         // mean (worst rank of a true label - 1)
  double normalized = 0.0;  // raw / c
};

// Ranks are 1-based by descending score; tied true labels take the worst
// rank in their tie group. Samples with an empty true set are skipped.
CoverageResult coverage(const Eigen::MatrixXd& scores,
                        const Eigen::MatrixXd& truth,
                        Eigen::Index* skipped = nullptr);

// Mean fraction of (relevant, irrelevant) pairs ordered incorrectly; ties
// count one half. Samples lacking either a true or a false label are skipped.
double ranking_loss(const Eigen::MatrixXd& scores, const Eigen::MatrixXd& truth,
                    Eigen::Index* skipped = nullptr);

// Per-label confusion counts plus means of sensitivity tp/(tp+fn),
// specificity tn/(tn+fp) and accuracy (tp+tn)/m; labels with a zero
// denominator are left out of the corresponding mean.
ConfusionSummary label_confusion(const Eigen::MatrixXd& pred,
                                 const Eigen::MatrixXd& truth);

struct EvalReport {
  double hamming_loss = 0.0;
  double one_error = 0.0;
  double coverage_raw = 0.0;
  double coverage_normalized = 0.0;
  double ranking_loss = 0.0;
  double mean_sensitivity = 0.0;
  double mean_specificity = 0.0;
  double mean_accuracy = 0.0;
  std::vector<LabelCounts> per_label_confusion;
  Eigen::Index skipped_one_error = 0;
  Eigen::Index skipped_coverage = 0;
  Eigen::Index skipped_ranking = 0;
};

EvalReport evaluate(const Eigen::MatrixXd& scores, const Eigen::MatrixXd& pred,
                    const Eigen::MatrixXd& truth);

// Flat JSON object of the metric values.
std::string report_to_json(const EvalReport& report);

// Fixed-width table for terminal output.
std::string report_table(const EvalReport& report);

}  // namespace latentlabel
