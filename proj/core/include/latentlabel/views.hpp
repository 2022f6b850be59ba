#pragma once

#include <optional>
#include <string>
#include <vector>

#include "latentlabel/data_model.hpp"

namespace latentlabel {

enum class KernelKind { Linear, Gaussian, Bhattacharyya, ChiSquare };

struct KernelSpec {
  KernelKind kind = KernelKind::Linear;
  // Gaussian bandwidth; empty means the median pairwise-distance heuristic.
  std::optional<double> gaussian_sigma;
  // Bhattacharyya/ChiSquare: min-max the columns and L1-normalize the rows
  // before the kernel. Ignored by Linear/Gaussian.
  bool histogram_normalize = true;
};

enum class ScalingKind { None, ZScore, MinMax };

// Per-column scaling fitted over all n+m rows (transductive: test features
// participate in the statistics). x' = (x - center) / scale; constant
// columns get scale 1 so they map to exactly 0.
struct ScalingSpec {
  ScalingKind kind = ScalingKind::None;
  Eigen::VectorXd center;
  Eigen::VectorXd scale;
};

ScalingSpec fit_scaling(ScalingKind kind, const Eigen::MatrixXd& x);
Eigen::MatrixXd apply_scaling(const ScalingSpec& spec, const Eigen::MatrixXd& x);

ModalityMatrix concat_features(const ModalityMatrix& motor,
                               const ModalityMatrix& nonmotor);

double median_pairwise_distance(const Eigen::MatrixXd& x);

// Resolves Auto parameters (the Gaussian bandwidth) against the anchor rows.
KernelSpec resolve_kernel(const KernelSpec& spec, const Eigen::MatrixXd& anchors);

// Raw kernel formula on already-prepared vectors; spec must be resolved.
double kernel_value(const KernelSpec& spec, const Eigen::RowVectorXd& x,
                    const Eigen::RowVectorXd& y);

// Square similarity view over the rows of x (the anchors). Symmetric by
// construction: entries (i,j) and (j,i) come from the same evaluation.
ModalityMatrix gram_matrix(const ModalityMatrix& x, const KernelSpec& spec,
                           std::vector<std::string> anchor_ids = {});

// Similarity of one unseen sample against the anchor rows; elementwise equal
// to the corresponding Gram row when z is an anchor.
Eigen::RowVectorXd kernel_row(const Eigen::RowVectorXd& z,
                              const ModalityMatrix& anchors,
                              const KernelSpec& spec);

// Assembly context frozen alongside the view so unseen samples can be mapped
// into the same modality spaces later.
struct AssembledView {
  MultiModalView view;  // [motor, nonmotor, one view per kernel spec]
  ScalingSpec motor_scaling;
  ScalingSpec nonmotor_scaling;
  Eigen::MatrixXd anchors;          // scaled concatenation, rows = anchor set
  std::vector<KernelSpec> kernels;  // resolved specs
};

AssembledView assemble_view(const ModalityMatrix& motor,
                            const ModalityMatrix& nonmotor,
                            ScalingKind scaling,
                            const std::vector<KernelSpec>& kernels,
                            std::vector<std::string> sample_ids = {});

// Per-modality feature vectors for one unseen sample, consistent with the
// frozen assembly.
std::vector<Eigen::RowVectorXd> sample_features(
    const AssembledView& assembled, const Eigen::RowVectorXd& motor_row,
    const Eigen::RowVectorXd& nonmotor_row);

const char* to_string(KernelKind kind);
const char* to_string(ScalingKind kind);

}  // namespace latentlabel
