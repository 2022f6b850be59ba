#include "latentlabel/metrics.hpp"

#include <cmath>
#include <iomanip>
#include <json.hpp>
#include <limits>
#include <sstream>

#include "latentlabel/errors.hpp"

namespace latentlabel {

namespace {

void check_same_shape(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                      const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    std::ostringstream os;
    os << what << ": shapes " << a.rows() << "x" << a.cols() << " vs "
       << b.rows() << "x" << b.cols();
    throw DimensionMismatch(os.str());
  }
  if (a.rows() == 0 || a.cols() == 0) {
    throw DimensionMismatch(std::string(what) + ": empty input");
  }
}

bool is_positive(double y) { return y != 0.0; }

}  // namespace

double hamming_loss(const Eigen::MatrixXd& pred, const Eigen::MatrixXd& truth) {
  check_same_shape(pred, truth, "hamming_loss");
  Eigen::Index mismatches = 0;
  for (Eigen::Index i = 0; i < pred.rows(); ++i) {
    for (Eigen::Index j = 0; j < pred.cols(); ++j) {
      if (is_positive(pred(i, j)) != is_positive(truth(i, j))) ++mismatches;
    }
  }
  return static_cast<double>(mismatches) /
         static_cast<double>(pred.rows() * pred.cols());
}

double one_error(const Eigen::MatrixXd& scores, const Eigen::MatrixXd& truth,
                 Eigen::Index* skipped) {
  check_same_shape(scores, truth, "one_error");
  Eigen::Index evaluated = 0;
  Eigen::Index errors = 0;
  Eigen::Index skip = 0;
  for (Eigen::Index i = 0; i < scores.rows(); ++i) {
    if (!(truth.row(i).array() != 0.0).any()) {
      ++skip;
      continue;
    }
    Eigen::Index top = 0;
    for (Eigen::Index j = 1; j < scores.cols(); ++j) {
      if (scores(i, j) > scores(i, top)) top = j;  // ties keep the lowest index
    }
    ++evaluated;
    if (!is_positive(truth(i, top))) ++errors;
  }
  if (skipped) *skipped = skip;
  if (evaluated == 0) {
    throw NoEvaluableSamples("one_error: every sample has an empty true set");
  }
  return static_cast<double>(errors) / static_cast<double>(evaluated);
}

CoverageResult coverage(const Eigen::MatrixXd& scores,
                        const Eigen::MatrixXd& truth, Eigen::Index* skipped) {
  check_same_shape(scores, truth, "coverage");
  const Eigen::Index c = scores.cols();
  Eigen::Index evaluated = 0;
  Eigen::Index skip = 0;
  double total = 0.0;
  for (Eigen::Index i = 0; i < scores.rows(); ++i) {
    Eigen::Index worst_rank = 0;
    bool has_true = false;
    for (Eigen::Index j = 0; j < c; ++j) {
      if (!is_positive(truth(i, j))) continue;
      has_true = true;
      // Pessimistic rank: strictly higher scores plus the whole tie group.
      Eigen::Index rank = 0;
      for (Eigen::Index l = 0; l < c; ++l) {
        if (scores(i, l) >= scores(i, j)) ++rank;
      }
      worst_rank = std::max(worst_rank, rank);
    }
    if (!has_true) {
      ++skip;
      continue;
    }
    ++evaluated;
    total += static_cast<double>(worst_rank - 1);
  }
  if (skipped) *skipped = skip;
  if (evaluated == 0) {
    throw NoEvaluableSamples("coverage: every sample has an empty true set");
  }
  CoverageResult out;
  out.raw = total / static_cast<double>(evaluated);
  out.normalized = out.raw / static_cast<double>(c);
  return out;
}

double ranking_loss(const Eigen::MatrixXd& scores, const Eigen::MatrixXd& truth,
                    Eigen::Index* skipped) {
  check_same_shape(scores, truth, "ranking_loss");
  Eigen::Index evaluated = 0;
  Eigen::Index skip = 0;
  double total = 0.0;
  for (Eigen::Index i = 0; i < scores.rows(); ++i) {
    std::vector<Eigen::Index> pos, neg;
    for (Eigen::Index j = 0; j < scores.cols(); ++j) {
      (is_positive(truth(i, j)) ? pos : neg).push_back(j);
    }
    if (pos.empty() || neg.empty()) {
      ++skip;
      continue;
    }
    double bad = 0.0;
    for (Eigen::Index t : pos) {
      for (Eigen::Index f : neg) {
        if (scores(i, t) < scores(i, f)) {
          bad += 1.0;
        } else if (scores(i, t) == scores(i, f)) {
          bad += 0.5;
        }
      }
    }
    total += bad / static_cast<double>(pos.size() * neg.size());
    ++evaluated;
  }
  if (skipped) *skipped = skip;
  if (evaluated == 0) {
    throw NoEvaluableSamples(
        "ranking_loss: no sample has both a true and a false label");
  }
  return total / static_cast<double>(evaluated);
}

ConfusionSummary label_confusion(const Eigen::MatrixXd& pred,
                                 const Eigen::MatrixXd& truth) {
  check_same_shape(pred, truth, "label_confusion");
  const Eigen::Index m = pred.rows();
  const Eigen::Index c = pred.cols();
  ConfusionSummary out;
  out.per_label.resize(static_cast<std::size_t>(c));
  for (Eigen::Index j = 0; j < c; ++j) {
    auto& counts = out.per_label[static_cast<std::size_t>(j)];
    for (Eigen::Index i = 0; i < m; ++i) {
      const bool p = is_positive(pred(i, j));
      const bool y = is_positive(truth(i, j));
      if (p && y)
        ++counts.tp;
      else if (p && !y)
        ++counts.fp;
      else if (!p && y)
        ++counts.fn;
      else
        ++counts.tn;
    }
  }
  double sens_sum = 0.0, spec_sum = 0.0, acc_sum = 0.0;
  Eigen::Index sens_n = 0, spec_n = 0;
  for (const auto& counts : out.per_label) {
    if (counts.tp + counts.fn > 0) {
      sens_sum += static_cast<double>(counts.tp) /
                  static_cast<double>(counts.tp + counts.fn);
      ++sens_n;
    }
    if (counts.tn + counts.fp > 0) {
      spec_sum += static_cast<double>(counts.tn) /
                  static_cast<double>(counts.tn + counts.fp);
      ++spec_n;
    }
    acc_sum += static_cast<double>(counts.tp + counts.tn) /
               static_cast<double>(m);
  }
  const double nan = std::numeric_limits<double>::quiet_NaN();
  out.mean_sensitivity =
      sens_n > 0 ? sens_sum / static_cast<double>(sens_n) : nan;
  out.mean_specificity =
      spec_n > 0 ? spec_sum / static_cast<double>(spec_n) : nan;
  out.mean_accuracy = acc_sum / static_cast<double>(c);
  return out;
}

EvalReport evaluate(const Eigen::MatrixXd& scores, const Eigen::MatrixXd& pred,
                    const Eigen::MatrixXd& truth) {
  EvalReport report;
  report.hamming_loss = hamming_loss(pred, truth);
  report.one_error = one_error(scores, truth, &report.skipped_one_error);
  const CoverageResult cov = coverage(scores, truth, &report.skipped_coverage);
  report.coverage_raw = cov.raw;
  report.coverage_normalized = cov.normalized;
  report.ranking_loss = ranking_loss(scores, truth, &report.skipped_ranking);
  const ConfusionSummary confusion = label_confusion(pred, truth);
  report.per_label_confusion = confusion.per_label;
  report.mean_sensitivity = confusion.mean_sensitivity;
  report.mean_specificity = confusion.mean_specificity;
  report.mean_accuracy = confusion.mean_accuracy;
  return report;
}

std::string report_to_json(const EvalReport& report) {
  nlohmann::json doc;
  doc["hamming_loss"] = report.hamming_loss;
  doc["one_error"] = report.one_error;
  doc["coverage_raw"] = report.coverage_raw;
  doc["coverage_normalized"] = report.coverage_normalized;
  doc["ranking_loss"] = report.ranking_loss;
  doc["mean_sensitivity"] = report.mean_sensitivity;
  doc["mean_specificity"] = report.mean_specificity;
  doc["mean_accuracy"] = report.mean_accuracy;
  doc["skipped_one_error"] = report.skipped_one_error;
  doc["skipped_coverage"] = report.skipped_coverage;
  doc["skipped_ranking"] = report.skipped_ranking;
  return doc.dump(2);
}

std::string report_table(const EvalReport& report) {
  std::ostringstream os;
  os << std::left << std::fixed << std::setprecision(6);
  const auto row = [&os](const char* name, double value) {
    os << "  " << std::setw(22) << name << std::setw(12) << value << '\n';
  };
  os << "metric                  value\n";
  row("hamming_loss", report.hamming_loss);
  row("one_error", report.one_error);
  row("coverage (normalized)", report.coverage_normalized);
  row("ranking_loss", report.ranking_loss);
  row("mean_sensitivity", report.mean_sensitivity);
  row("mean_specificity", report.mean_specificity);
  row("mean_accuracy", report.mean_accuracy);
  return os.str();
}

}  // namespace latentlabel
