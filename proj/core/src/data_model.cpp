#include "latentlabel/data_model.hpp"

#include <cmath>
#include <sstream>

namespace latentlabel {

namespace {

std::optional<ValidationIssue> check_finite(const Eigen::MatrixXd& m,
                                            const std::string& name) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (!std::isfinite(m(i, j))) {
        return ValidationIssue{ValidationCode::NonFiniteValue, name, i, j,
                               "entry is not finite"};
      }
    }
  }
  return std::nullopt;
}

ValidationIssue dim_issue(const std::string& name, const std::string& detail) {
  return ValidationIssue{ValidationCode::DimensionMismatch, name, -1, -1,
                         detail};
}

}  // namespace

const char* to_string(ValidationCode code) {
  switch (code) {
    case ValidationCode::DimensionMismatch:
      return "DimensionMismatch";
    case ValidationCode::NonBinaryLabel:
      return "NonBinaryLabel";
    case ValidationCode::NonFiniteValue:
      return "NonFiniteValue";
  }
  return "Unknown";
}

std::string ValidationIssue::str() const {
  std::ostringstream os;
  os << to_string(code) << ": " << matrix;
  if (row >= 0 || col >= 0) os << "(" << row << "," << col << ")";
  os << ": " << detail;
  return os.str();
}

std::optional<ValidationIssue> validate(const MultiModalView& view,
                                        const LabelMatrix& labels) {
  if (view.modalities.empty()) {
    return dim_issue("view", "view must contain at least one modality");
  }
  if (labels.n_train < 1) {
    return dim_issue("labels", "n_train must be at least 1");
  }
  if (labels.n_test < 0) {
    return dim_issue("labels", "n_test must be nonnegative");
  }
  if (labels.label_count() < 1) {
    return dim_issue("labels", "label matrix needs at least one column");
  }
  if (labels.values.rows() != labels.rows()) {
    std::ostringstream os;
    os << "label matrix has " << labels.values.rows() << " rows, expected "
       << labels.rows() << " (n_train + n_test)";
    return dim_issue("labels", os.str());
  }

  const Eigen::Index n_rows = view.rows();
  if (n_rows != labels.rows()) {
    std::ostringstream os;
    os << "view has " << n_rows << " rows, labels have " << labels.rows();
    return dim_issue("view", os.str());
  }
  if (!view.sample_ids.empty() &&
      static_cast<Eigen::Index>(view.sample_ids.size()) != n_rows) {
    return dim_issue("view.sample_ids", "sample id count does not match rows");
  }

  for (std::size_t i = 0; i < view.modalities.size(); ++i) {
    const auto& mod = view.modalities[i];
    const std::string name = "modality[" + std::to_string(i) + "]";
    if (mod.rows() != n_rows) {
      std::ostringstream os;
      os << "has " << mod.rows() << " rows, expected " << n_rows;
      return dim_issue(name, os.str());
    }
    if (mod.cols() < 1) {
      return dim_issue(name, "modality has no columns");
    }
    if (mod.kind == ModalityKind::Kernel &&
        static_cast<Eigen::Index>(mod.anchor_ids.size()) != mod.cols()) {
      std::ostringstream os;
      os << "kernel modality has " << mod.anchor_ids.size()
         << " anchors but " << mod.cols() << " columns";
      return dim_issue(name, os.str());
    }
    if (auto issue = check_finite(mod.values, name)) return issue;
  }

  for (Eigen::Index i = 0; i < labels.values.rows(); ++i) {
    for (Eigen::Index j = 0; j < labels.values.cols(); ++j) {
      const double y = labels.values(i, j);
      if (y != 0.0 && y != 1.0) {
        std::ostringstream os;
        os << "entry " << y << " is not 0 or 1";
        return ValidationIssue{ValidationCode::NonBinaryLabel, "labels", i, j,
                               os.str()};
      }
      if (i >= labels.n_train && y != 0.0) {
        return ValidationIssue{ValidationCode::NonBinaryLabel, "labels", i, j,
                               "test rows must be all-zero (labels withheld)"};
      }
    }
  }
  return std::nullopt;
}

std::optional<ValidationIssue> validate(const ModelState& state,
                                        const MultiModalView& view,
                                        const LabelMatrix& labels) {
  if (auto issue = validate(view, labels)) return issue;
  if (state.k < 1) return dim_issue("state", "k must be positive");
  if (!(state.alpha >= 0.0) || !(state.beta >= 0.0)) {
    return ValidationIssue{ValidationCode::NonFiniteValue, "state", -1, -1,
                           "alpha and beta must be nonnegative"};
  }
  if (static_cast<Eigen::Index>(state.U.size()) != view.modality_count()) {
    return dim_issue("state.U", "one transform per modality required");
  }
  for (std::size_t i = 0; i < state.U.size(); ++i) {
    const auto& u = state.U[i];
    const std::string name = "state.U[" + std::to_string(i) + "]";
    if (u.rows() != view.modalities[i].cols() || u.cols() != state.k) {
      std::ostringstream os;
      os << "is " << u.rows() << "x" << u.cols() << ", expected "
         << view.modalities[i].cols() << "x" << state.k;
      return dim_issue(name, os.str());
    }
    if (auto issue = check_finite(u, name)) return issue;
  }
  if (state.P.rows() != view.rows() || state.P.cols() != state.k) {
    return dim_issue("state.P", "shape must be (n+m) x k");
  }
  if (state.V.rows() != state.k || state.V.cols() != labels.label_count()) {
    return dim_issue("state.V", "shape must be k x c");
  }
  if (auto issue = check_finite(state.P, "state.P")) return issue;
  if (auto issue = check_finite(state.V, "state.V")) return issue;
  return std::nullopt;
}

}  // namespace latentlabel
