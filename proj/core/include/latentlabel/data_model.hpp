#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>
#include <vector>

namespace latentlabel {

enum class ModalityKind { RawFeature, Kernel };

// One representation of the sample set: raw per-sample features, or a
// similarity matrix whose columns correspond to a frozen anchor set.
struct ModalityMatrix {
  Eigen::MatrixXd values;  // (n+m) x d_i
  ModalityKind kind = ModalityKind::RawFeature;
  std::vector<std::string> anchor_ids;  // kernel views: one id per column

  Eigen::Index rows() const { return values.rows(); }
  Eigen::Index cols() const { return values.cols(); }
};

struct MultiModalView {
  std::vector<ModalityMatrix> modalities;  // length s, shared row count
  std::vector<std::string> sample_ids;     // one per row

  Eigen::Index rows() const {
    return modalities.empty() ? 0 : modalities.front().rows();
  }
  Eigen::Index modality_count() const {
    return static_cast<Eigen::Index>(modalities.size());
  }
};

// Binary sample-by-label matrix. Rows are ordered training first, test
// after; the transductive mask J = diag(1..1, 0..0) is implied by n_train
// and never stored.
struct LabelMatrix {
  Eigen::MatrixXd values;  // (n_train + n_test) x c, entries in {0,1}
  Eigen::Index n_train = 0;
  Eigen::Index n_test = 0;

  Eigen::Index rows() const { return n_train + n_test; }
  Eigen::Index label_count() const { return values.cols(); }
};

// Fitted model: per-modality transforms U_i, latent sample representation P,
// latent-to-label transform V, and the hyperparameters used to fit them.
struct ModelState {
  std::vector<Eigen::MatrixXd> U;  // d_i x k each
  Eigen::MatrixXd P;               // (n+m) x k
  Eigen::MatrixXd V;               // k x c
  double alpha = 0.0;
  double beta = 0.0;
  Eigen::Index k = 0;
};

enum class ValidationCode { DimensionMismatch, NonBinaryLabel, NonFiniteValue };

struct ValidationIssue {
  ValidationCode code;
  std::string matrix;  // which matrix failed
  Eigen::Index row = -1;
  Eigen::Index col = -1;
  std::string detail;

  std::string str() const;
};

const char* to_string(ValidationCode code);

// Total invariant check; never throws, reports the first violation found.
std::optional<ValidationIssue> validate(const MultiModalView& view,
                                        const LabelMatrix& labels);

// Consistency of a fitted state with the data it claims to fit.
std::optional<ValidationIssue> validate(const ModelState& state,
                                        const MultiModalView& view,
                                        const LabelMatrix& labels);

}  // namespace latentlabel
