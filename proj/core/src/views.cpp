#include "latentlabel/views.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "latentlabel/errors.hpp"

namespace latentlabel {

namespace {

bool is_histogram_kernel(KernelKind kind) {
  return kind == KernelKind::Bhattacharyya || kind == KernelKind::ChiSquare;
}

void check_nonnegative(const Eigen::MatrixXd& x, const std::string& what) {
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      if (x(i, j) < 0.0) {
        std::ostringstream os;
        os << what << "(" << i << "," << j << ") = " << x(i, j)
           << ": histogram kernels need nonnegative entries";
        throw NegativeFeature(os.str());
      }
    }
  }
}

Eigen::MatrixXd l1_normalize_rows(Eigen::MatrixXd x) {
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const double s = x.row(i).sum();
    if (s > 0.0) x.row(i) /= s;
  }
  return x;
}

// Histogram-kernel preprocessing: min-max against the anchor statistics,
// then L1-normalize each row. Entries negative after scaling are an error,
// never shifted silently.
struct HistogramPrep {
  ScalingSpec minmax;
  Eigen::MatrixXd anchors;  // prepared anchor rows
};

HistogramPrep prepare_histogram(const Eigen::MatrixXd& anchors,
                                const std::string& what) {
  HistogramPrep prep;
  prep.minmax = fit_scaling(ScalingKind::MinMax, anchors);
  Eigen::MatrixXd scaled = apply_scaling(prep.minmax, anchors);
  check_nonnegative(scaled, what);
  prep.anchors = l1_normalize_rows(std::move(scaled));
  return prep;
}

Eigen::RowVectorXd prepare_histogram_row(const HistogramPrep& prep,
                                         const Eigen::RowVectorXd& z,
                                         const std::string& what) {
  Eigen::MatrixXd scaled = apply_scaling(prep.minmax, z);
  check_nonnegative(scaled, what);
  return l1_normalize_rows(std::move(scaled)).row(0);
}

std::vector<std::string> default_ids(Eigen::Index n) {
  std::vector<std::string> ids;
  ids.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) ids.push_back(std::to_string(i));
  return ids;
}

}  // namespace

const char* to_string(KernelKind kind) {
  switch (kind) {
    case KernelKind::Linear:
      return "linear";
    case KernelKind::Gaussian:
      return "gaussian";
    case KernelKind::Bhattacharyya:
      return "bhattacharyya";
    case KernelKind::ChiSquare:
      return "chi_square";
  }
  return "unknown";
}

const char* to_string(ScalingKind kind) {
  switch (kind) {
    case ScalingKind::None:
      return "none";
    case ScalingKind::ZScore:
      return "zscore";
    case ScalingKind::MinMax:
      return "minmax";
  }
  return "unknown";
}

ScalingSpec fit_scaling(ScalingKind kind, const Eigen::MatrixXd& x) {
  ScalingSpec spec;
  spec.kind = kind;
  const Eigen::Index d = x.cols();
  spec.center = Eigen::VectorXd::Zero(d);
  spec.scale = Eigen::VectorXd::Ones(d);
  if (kind == ScalingKind::None || x.rows() == 0) return spec;
  for (Eigen::Index j = 0; j < d; ++j) {
    const auto col = x.col(j);
    if (kind == ScalingKind::ZScore) {
      const double mean = col.mean();
      double sd = 0.0;
      if (x.rows() > 1) {
        sd = std::sqrt((col.array() - mean).square().sum() /
                       static_cast<double>(x.rows() - 1));
      }
      spec.center[j] = mean;
      spec.scale[j] = sd > 0.0 ? sd : 1.0;  // constant columns map to 0
    } else {  // MinMax
      const double lo = col.minCoeff();
      const double hi = col.maxCoeff();
      spec.center[j] = lo;
      spec.scale[j] = hi > lo ? hi - lo : 1.0;
    }
  }
  return spec;
}

Eigen::MatrixXd apply_scaling(const ScalingSpec& spec, const Eigen::MatrixXd& x) {
  if (spec.kind == ScalingKind::None && spec.center.size() == 0) return x;
  if (x.cols() != spec.center.size()) {
    std::ostringstream os;
    os << "apply_scaling: input has " << x.cols() << " columns, statistics have "
       << spec.center.size();
    throw DimensionMismatch(os.str());
  }
  return (x.rowwise() - spec.center.transpose()).array().rowwise() /
         spec.scale.transpose().array();
}

ModalityMatrix concat_features(const ModalityMatrix& motor,
                               const ModalityMatrix& nonmotor) {
  if (motor.rows() != nonmotor.rows()) {
    std::ostringstream os;
    os << "concat_features: motor has " << motor.rows() << " rows, non-motor "
       << nonmotor.rows();
    throw DimensionMismatch(os.str());
  }
  ModalityMatrix out;
  out.kind = ModalityKind::RawFeature;
  out.values.resize(motor.rows(), motor.cols() + nonmotor.cols());
  out.values << motor.values, nonmotor.values;
  return out;
}

double median_pairwise_distance(const Eigen::MatrixXd& x) {
  const Eigen::Index n = x.rows();
  if (n < 2) return 1.0;
  std::vector<double> dists;
  dists.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      dists.push_back((x.row(i) - x.row(j)).norm());
    }
  }
  const std::size_t mid = dists.size() / 2;
  std::nth_element(dists.begin(), dists.begin() + static_cast<std::ptrdiff_t>(mid),
                   dists.end());
  return dists[mid];
}

KernelSpec resolve_kernel(const KernelSpec& spec, const Eigen::MatrixXd& anchors) {
  KernelSpec resolved = spec;
  if (spec.kind == KernelKind::Gaussian && !spec.gaussian_sigma) {
    double sigma = median_pairwise_distance(anchors);
    if (!(sigma > 0.0)) sigma = 1.0;  // all rows identical
    resolved.gaussian_sigma = sigma;
  }
  if (resolved.kind == KernelKind::Gaussian && !(*resolved.gaussian_sigma > 0.0)) {
    throw InputError("gaussian kernel: sigma must be positive");
  }
  return resolved;
}

double kernel_value(const KernelSpec& spec, const Eigen::RowVectorXd& x,
                    const Eigen::RowVectorXd& y) {
  switch (spec.kind) {
    case KernelKind::Linear:
      return x.dot(y);
    case KernelKind::Gaussian: {
      const double sigma = *spec.gaussian_sigma;
      return std::exp(-(x - y).squaredNorm() / (2.0 * sigma * sigma));
    }
    case KernelKind::Bhattacharyya: {
      double s = 0.0;
      for (Eigen::Index j = 0; j < x.size(); ++j) s += std::sqrt(x[j] * y[j]);
      return s;
    }
    case KernelKind::ChiSquare: {
      double s = 0.0;
      for (Eigen::Index j = 0; j < x.size(); ++j) {
        const double denom = x[j] + y[j];
        if (denom > 0.0) s += 2.0 * x[j] * y[j] / denom;  // 0/0 term -> 0
      }
      return s;
    }
  }
  throw InputError("kernel_value: unknown kernel kind");
}

ModalityMatrix gram_matrix(const ModalityMatrix& x, const KernelSpec& spec,
                           std::vector<std::string> anchor_ids) {
  const Eigen::Index n = x.rows();
  if (n == 0 || x.cols() == 0) throw EmptyInput("gram_matrix: empty input");
  const KernelSpec resolved = resolve_kernel(spec, x.values);

  Eigen::MatrixXd rows = x.values;
  if (is_histogram_kernel(resolved.kind)) {
    if (resolved.histogram_normalize) {
      rows = prepare_histogram(x.values, "gram input").anchors;
    } else {
      check_nonnegative(rows, "gram input");
    }
  }

  ModalityMatrix out;
  out.kind = ModalityKind::Kernel;
  out.anchor_ids = anchor_ids.empty() ? default_ids(n) : std::move(anchor_ids);
  if (static_cast<Eigen::Index>(out.anchor_ids.size()) != n) {
    throw DimensionMismatch("gram_matrix: anchor id count does not match rows");
  }
  out.values.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      const double v = kernel_value(resolved, rows.row(i), rows.row(j));
      out.values(i, j) = v;
      out.values(j, i) = v;
    }
  }
  return out;
}

Eigen::RowVectorXd kernel_row(const Eigen::RowVectorXd& z,
                              const ModalityMatrix& anchors,
                              const KernelSpec& spec) {
  const Eigen::Index n = anchors.rows();
  if (n == 0 || anchors.cols() == 0) throw EmptyInput("kernel_row: no anchors");
  if (z.size() != anchors.cols()) {
    std::ostringstream os;
    os << "kernel_row: sample has " << z.size() << " features, anchors have "
       << anchors.cols();
    throw DimensionMismatch(os.str());
  }
  const KernelSpec resolved = resolve_kernel(spec, anchors.values);

  Eigen::MatrixXd rows = anchors.values;
  Eigen::RowVectorXd zp = z;
  if (is_histogram_kernel(resolved.kind)) {
    if (resolved.histogram_normalize) {
      const HistogramPrep prep = prepare_histogram(anchors.values, "anchors");
      rows = prep.anchors;
      zp = prepare_histogram_row(prep, z, "sample");
    } else {
      check_nonnegative(rows, "anchors");
      check_nonnegative(zp, "sample");
    }
  }

  Eigen::RowVectorXd out(n);
  for (Eigen::Index a = 0; a < n; ++a) {
    out[a] = kernel_value(resolved, zp, rows.row(a));
  }
  return out;
}

AssembledView assemble_view(const ModalityMatrix& motor,
                            const ModalityMatrix& nonmotor,
                            ScalingKind scaling,
                            const std::vector<KernelSpec>& kernels,
                            std::vector<std::string> sample_ids) {
  if (motor.rows() != nonmotor.rows()) {
    throw DimensionMismatch("assemble_view: feature blocks disagree on rows");
  }
  if (motor.rows() == 0) throw EmptyInput("assemble_view: no samples");

  AssembledView out;
  out.view.sample_ids =
      sample_ids.empty() ? default_ids(motor.rows()) : std::move(sample_ids);
  if (static_cast<Eigen::Index>(out.view.sample_ids.size()) != motor.rows()) {
    throw DimensionMismatch("assemble_view: sample id count does not match rows");
  }

  out.motor_scaling = fit_scaling(scaling, motor.values);
  out.nonmotor_scaling = fit_scaling(scaling, nonmotor.values);

  ModalityMatrix scaled_motor{apply_scaling(out.motor_scaling, motor.values),
                              ModalityKind::RawFeature,
                              {}};
  ModalityMatrix scaled_nonmotor{
      apply_scaling(out.nonmotor_scaling, nonmotor.values),
      ModalityKind::RawFeature,
      {}};

  out.anchors = concat_features(scaled_motor, scaled_nonmotor).values;

  out.view.modalities.push_back(std::move(scaled_motor));
  out.view.modalities.push_back(std::move(scaled_nonmotor));

  ModalityMatrix anchor_mod{out.anchors, ModalityKind::RawFeature, {}};
  for (const auto& spec : kernels) {
    const KernelSpec resolved = resolve_kernel(spec, out.anchors);
    out.kernels.push_back(resolved);
    out.view.modalities.push_back(
        gram_matrix(anchor_mod, resolved, out.view.sample_ids));
  }
  return out;
}

std::vector<Eigen::RowVectorXd> sample_features(
    const AssembledView& assembled, const Eigen::RowVectorXd& motor_row,
    const Eigen::RowVectorXd& nonmotor_row) {
  const Eigen::RowVectorXd m =
      apply_scaling(assembled.motor_scaling, motor_row).row(0);
  const Eigen::RowVectorXd nm =
      apply_scaling(assembled.nonmotor_scaling, nonmotor_row).row(0);

  Eigen::RowVectorXd z(m.size() + nm.size());
  z << m, nm;

  std::vector<Eigen::RowVectorXd> features{m, nm};
  const ModalityMatrix anchor_mod{assembled.anchors, ModalityKind::RawFeature, {}};
  for (const auto& spec : assembled.kernels) {
    features.push_back(kernel_row(z, anchor_mod, spec));
  }
  return features;
}

}  // namespace latentlabel
