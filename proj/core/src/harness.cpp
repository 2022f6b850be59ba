#include "latentlabel/harness.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "latentlabel/errors.hpp"
#include "latentlabel/parallel.hpp"

namespace latentlabel {

namespace {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (salt + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Fisher-Yates with an explicit index draw so the permutation depends only
// on the seed, not on library distribution internals.
std::vector<Eigen::Index> seeded_permutation(Eigen::Index n,
                                             std::uint64_t seed) {
  std::vector<Eigen::Index> perm(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
  std::mt19937_64 rng(seed);
  for (Eigen::Index i = n - 1; i > 0; --i) {
    const auto j = static_cast<Eigen::Index>(
        rng() % static_cast<std::uint64_t>(i + 1));
    std::swap(perm[static_cast<std::size_t>(i)],
              perm[static_cast<std::size_t>(j)]);
  }
  return perm;
}

void require_fully_labeled(const LabelMatrix& labels, const char* what) {
  if (labels.n_test != 0) {
    throw InputError(std::string(what) +
                     ": expects fully labeled data (n_test == 0)");
  }
}

Eigen::MatrixXd rows_at(const Eigen::MatrixXd& m,
                        const std::vector<Eigen::Index>& ids) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(ids.size()), m.cols());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    out.row(static_cast<Eigen::Index>(i)) = m.row(ids[i]);
  }
  return out;
}

// evaluate(), but a metric undefined on this fold (every sample skipped)
// becomes NaN instead of an error.
EvalReport evaluate_lenient(const Eigen::MatrixXd& scores,
                            const Eigen::MatrixXd& pred,
                            const Eigen::MatrixXd& truth) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  EvalReport report;
  report.hamming_loss = hamming_loss(pred, truth);
  try {
    report.one_error = one_error(scores, truth, &report.skipped_one_error);
  } catch (const NoEvaluableSamples&) {
    report.one_error = nan;
    report.skipped_one_error = truth.rows();
  }
  try {
    const CoverageResult cov =
        coverage(scores, truth, &report.skipped_coverage);
    report.coverage_raw = cov.raw;
    report.coverage_normalized = cov.normalized;
  } catch (const NoEvaluableSamples&) {
    report.coverage_raw = nan;
    report.coverage_normalized = nan;
    report.skipped_coverage = truth.rows();
  }
  try {
    report.ranking_loss =
        ranking_loss(scores, truth, &report.skipped_ranking);
  } catch (const NoEvaluableSamples&) {
    report.ranking_loss = nan;
    report.skipped_ranking = truth.rows();
  }
  const ConfusionSummary confusion = label_confusion(pred, truth);
  report.per_label_confusion = confusion.per_label;
  report.mean_sensitivity = confusion.mean_sensitivity;
  report.mean_specificity = confusion.mean_specificity;
  report.mean_accuracy = confusion.mean_accuracy;
  return report;
}

MetricSummary summarize(const std::vector<double>& values) {
  MetricSummary out;
  std::vector<double> kept;
  for (double v : values) {
    if (std::isfinite(v)) kept.push_back(v);
  }
  if (kept.empty()) {
    out.mean = std::numeric_limits<double>::quiet_NaN();
    out.sd = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  double sum = 0.0;
  for (double v : kept) sum += v;
  out.mean = sum / static_cast<double>(kept.size());
  if (kept.size() > 1) {
    double ss = 0.0;
    for (double v : kept) ss += (v - out.mean) * (v - out.mean);
    out.sd = std::sqrt(ss / static_cast<double>(kept.size() - 1));
  }
  return out;
}

}  // namespace

GridSpec GridSpec::defaults() {
  GridSpec grid;
  grid.alpha_values = {1.0,    0.5,  0.3,   0.1,  0.05, 0.01, 0.005, 0.001,
                       5e-4,   1e-4, 5e-5,  1e-5, 1e-6, 1e-8, 1e-10};
  grid.beta_values = grid.alpha_values;
  for (Eigen::Index k = 10; k <= 100; k += 10) grid.k_values.push_back(k);
  return grid;
}

std::vector<FoldSplit> kfold_splits(Eigen::Index n, Eigen::Index folds,
                                    std::uint64_t seed) {
  if (folds < 1 || folds > n) {
    throw InvalidFoldCount("kfold_splits: need 1 <= folds <= n, got folds=" +
                           std::to_string(folds) + ", n=" + std::to_string(n));
  }
  const std::vector<Eigen::Index> perm = seeded_permutation(n, seed);

  // Front folds take ceil(n/folds) while leaving at least one sample for
  // each later fold; the last fold takes the remainder. For n=136, folds=10
  // this is nine folds of 14 and one of 10.
  const Eigen::Index q = (n + folds - 1) / folds;
  std::vector<FoldSplit> splits;
  splits.reserve(static_cast<std::size_t>(folds));
  Eigen::Index offset = 0;
  for (Eigen::Index f = 0; f < folds; ++f) {
    const Eigen::Index remaining = n - offset;
    const Eigen::Index later = folds - 1 - f;
    const Eigen::Index take =
        (f == folds - 1) ? remaining : std::min(q, remaining - later);
    FoldSplit split;
    split.second.assign(perm.begin() + offset, perm.begin() + offset + take);
    std::sort(split.second.begin(), split.second.end());
    split.first.reserve(static_cast<std::size_t>(n - take));
    std::set<Eigen::Index> test_set(split.second.begin(), split.second.end());
    for (Eigen::Index i = 0; i < n; ++i) {
      if (!test_set.count(i)) split.first.push_back(i);
    }
    splits.push_back(std::move(split));
    offset += take;
  }
  return splits;
}

MaskedFold mask_fold(const MultiModalView& view, const LabelMatrix& labels,
                     const std::vector<Eigen::Index>& test_ids) {
  require_fully_labeled(labels, "mask_fold");
  const Eigen::Index n = labels.n_train;
  if (view.rows() != n) {
    throw DimensionMismatch("mask_fold: view rows disagree with labels");
  }
  std::set<Eigen::Index> test_set(test_ids.begin(), test_ids.end());
  if (test_set.size() != test_ids.size()) {
    throw InputError("mask_fold: duplicate test ids");
  }
  for (Eigen::Index id : test_ids) {
    if (id < 0 || id >= n) throw InputError("mask_fold: test id out of range");
  }
  const auto m = static_cast<Eigen::Index>(test_ids.size());

  MaskedFold out;
  out.order.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!test_set.count(i)) out.order.push_back(i);
  }
  out.order.insert(out.order.end(), test_ids.begin(), test_ids.end());

  out.view.modalities.reserve(view.modalities.size());
  for (const auto& mod : view.modalities) {
    ModalityMatrix permuted;
    permuted.kind = mod.kind;
    permuted.anchor_ids = mod.anchor_ids;  // columns stay in anchor order
    permuted.values = rows_at(mod.values, out.order);
    out.view.modalities.push_back(std::move(permuted));
  }
  if (!view.sample_ids.empty()) {
    out.view.sample_ids.reserve(out.order.size());
    for (Eigen::Index id : out.order) {
      out.view.sample_ids.push_back(
          view.sample_ids[static_cast<std::size_t>(id)]);
    }
  }

  out.labels.values = rows_at(labels.values, out.order);
  out.labels.values.bottomRows(m).setZero();
  out.labels.n_train = n - m;
  out.labels.n_test = m;
  return out;
}

GridResult grid_search(const MultiModalView& view, const LabelMatrix& labels,
                       const GridSpec& grid, const SolverConfig& config,
                       double holdout_fraction, std::uint64_t seed) {
  require_fully_labeled(labels, "grid_search");
  if (grid.alpha_values.empty() || grid.beta_values.empty() ||
      grid.k_values.empty()) {
    throw InputError("grid_search: grid must be nonempty");
  }
  if (!(holdout_fraction > 0.0) || !(holdout_fraction < 1.0)) {
    throw InputError("grid_search: holdout fraction must lie in (0,1)");
  }
  const Eigen::Index n = labels.n_train;
  if (n < 2) throw InputError("grid_search: need at least two samples");

  Eigen::Index holdout = static_cast<Eigen::Index>(
      std::llround(static_cast<double>(n) * holdout_fraction));
  holdout = std::clamp<Eigen::Index>(holdout, 1, n - 1);

  const std::vector<Eigen::Index> perm = seeded_permutation(n, seed);
  std::vector<Eigen::Index> holdout_ids(perm.begin(), perm.begin() + holdout);
  std::sort(holdout_ids.begin(), holdout_ids.end());

  const MaskedFold masked = mask_fold(view, labels, holdout_ids);
  const Eigen::MatrixXd truth = rows_at(labels.values, holdout_ids);

  GridResult result;
  result.seed = seed;
  result.holdout_ids = holdout_ids;
  for (double alpha : grid.alpha_values) {
    for (double beta : grid.beta_values) {
      for (Eigen::Index k : grid.k_values) {
        GridCell cell;
        cell.alpha = alpha;
        cell.beta = beta;
        cell.k = k;
        result.table.push_back(cell);
      }
    }
  }

  parallel_for(result.table.size(), [&](std::size_t idx) {
    GridCell& cell = result.table[idx];
    try {
      const auto [state, trace] = fit(masked.view, masked.labels, cell.alpha,
                                      cell.beta, cell.k, config);
      const TransductivePrediction pred =
          predict_transductive(state, masked.view);
      cell.validation_hamming =
          hamming_loss(pred.labels.bottomRows(holdout), truth);
    } catch (const std::exception& e) {
      cell.failed = true;
      cell.error = e.what();
    }
  });

  bool found = false;
  double best = 0.0;
  for (const GridCell& cell : result.table) {
    if (cell.failed) continue;
    if (!found || cell.validation_hamming < best) {
      found = true;
      best = cell.validation_hamming;
      result.best = Hyper{cell.alpha, cell.beta, cell.k};
    }
  }
  if (!found) throw SolverError("grid_search: every grid cell failed");
  return result;
}

CvReport repeated_cv(const MultiModalView& view, const LabelMatrix& labels,
                     const Hyper& hyper, Eigen::Index repeats,
                     Eigen::Index folds, const SolverConfig& config,
                     std::uint64_t seed, const CvFitObserver& observer) {
  require_fully_labeled(labels, "repeated_cv");
  if (repeats < 1) throw InputError("repeated_cv: repeats must be positive");
  const Eigen::Index n = labels.n_train;

  std::vector<std::vector<Eigen::Index>> fold_tests;
  fold_tests.reserve(static_cast<std::size_t>(repeats * folds));
  for (Eigen::Index r = 0; r < repeats; ++r) {
    auto splits = kfold_splits(n, folds, mix_seed(seed, static_cast<std::uint64_t>(r)));
    for (auto& split : splits) fold_tests.push_back(std::move(split.second));
  }

  std::vector<EvalReport> reports(fold_tests.size());
  parallel_for(fold_tests.size(), [&](std::size_t idx) {
    const auto& test_ids = fold_tests[idx];
    const MaskedFold masked = mask_fold(view, labels, test_ids);
    if (observer) observer(masked.labels, test_ids);
    const auto [state, trace] = fit(masked.view, masked.labels, hyper.alpha,
                                    hyper.beta, hyper.k, config);
    const TransductivePrediction pred = predict_transductive(state, masked.view);
    const auto m = static_cast<Eigen::Index>(test_ids.size());
    reports[idx] = evaluate_lenient(pred.scores.bottomRows(m),
                                    pred.labels.bottomRows(m),
                                    rows_at(labels.values, test_ids));
  });

  CvReport out;
  out.per_fold = std::move(reports);
  out.repeats = repeats;
  out.folds = folds;
  out.seed = seed;

  const auto collect = [&](auto member) {
    std::vector<double> values;
    values.reserve(out.per_fold.size());
    for (const auto& r : out.per_fold) values.push_back(r.*member);
    return summarize(values);
  };
  out.hamming_loss = collect(&EvalReport::hamming_loss);
  out.one_error = collect(&EvalReport::one_error);
  out.coverage_normalized = collect(&EvalReport::coverage_normalized);
  out.ranking_loss = collect(&EvalReport::ranking_loss);
  out.mean_sensitivity = collect(&EvalReport::mean_sensitivity);
  out.mean_specificity = collect(&EvalReport::mean_specificity);
  out.mean_accuracy = collect(&EvalReport::mean_accuracy);
  return out;
}

Eigen::MatrixXd raw_feature_matrix(const MultiModalView& view) {
  Eigen::Index d = 0;
  for (const auto& mod : view.modalities) {
    if (mod.kind == ModalityKind::RawFeature) d += mod.cols();
  }
  if (d == 0) {
    throw InputError("raw_feature_matrix: view has no raw-feature modalities");
  }
  Eigen::MatrixXd out(view.rows(), d);
  Eigen::Index offset = 0;
  for (const auto& mod : view.modalities) {
    if (mod.kind != ModalityKind::RawFeature) continue;
    out.middleCols(offset, mod.cols()) = mod.values;
    offset += mod.cols();
  }
  return out;
}

namespace {

Eigen::MatrixXd ridge_solve(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y,
                            double lambda) {
  double lam = lambda;
  for (int attempt = 0; attempt < 7; ++attempt) {
    Eigen::MatrixXd gram = x.transpose() * x;
    gram.diagonal().array() += lam;
    const Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
    if (ldlt.info() == Eigen::Success) {
      Eigen::MatrixXd w = ldlt.solve(x.transpose() * y);
      if (w.allFinite()) return w;
    }
    lam *= 10.0;  // SingularSystem fallback
  }
  throw SingularSystem("binary_relevance: ridge system stayed singular");
}

}  // namespace

BinaryRelevanceModel binary_relevance_fit(const MultiModalView& view,
                                          const LabelMatrix& labels,
                                          const std::vector<double>& lambdas,
                                          std::uint64_t seed) {
  if (labels.n_train < 1) {
    throw InputError("binary_relevance_fit: no training rows");
  }
  if (lambdas.empty()) {
    throw InputError("binary_relevance_fit: lambda list is empty");
  }
  const Eigen::MatrixXd x_all = raw_feature_matrix(view);
  const Eigen::Index n = labels.n_train;
  const Eigen::MatrixXd x = x_all.topRows(n);
  const Eigen::MatrixXd y = labels.values.topRows(n);

  double chosen = lambdas.front();
  if (lambdas.size() > 1 && n >= 2) {
    const Eigen::Index holdout = std::clamp<Eigen::Index>(
        static_cast<Eigen::Index>(std::llround(0.1 * static_cast<double>(n))),
        1, n - 1);
    const std::vector<Eigen::Index> perm = seeded_permutation(n, seed);
    std::vector<Eigen::Index> val_ids(perm.begin(), perm.begin() + holdout);
    std::vector<Eigen::Index> fit_ids(perm.begin() + holdout, perm.end());
    std::sort(val_ids.begin(), val_ids.end());
    std::sort(fit_ids.begin(), fit_ids.end());
    const Eigen::MatrixXd x_fit = rows_at(x, fit_ids);
    const Eigen::MatrixXd y_fit = rows_at(y, fit_ids);
    const Eigen::MatrixXd x_val = rows_at(x, val_ids);
    const Eigen::MatrixXd y_val = rows_at(y, val_ids);

    bool found = false;
    double best = 0.0;
    for (double lambda : lambdas) {
      const Eigen::MatrixXd w = ridge_solve(x_fit, y_fit, lambda);
      const Eigen::MatrixXd pred =
          (x_val * w).unaryExpr([](double v) { return v > 0.5 ? 1.0 : 0.0; });
      const double loss = hamming_loss(pred, y_val);
      if (!found || loss < best) {
        found = true;
        best = loss;
        chosen = lambda;
      }
    }
  }

  BinaryRelevanceModel model;
  model.lambda = chosen;
  model.W = ridge_solve(x, y, chosen);
  return model;
}

BinaryRelevancePrediction binary_relevance_predict(
    const BinaryRelevanceModel& model, const Eigen::MatrixXd& features) {
  if (features.cols() != model.W.rows()) {
    throw DimensionMismatch("binary_relevance_predict: feature width " +
                            std::to_string(features.cols()) +
                            " vs model " + std::to_string(model.W.rows()));
  }
  BinaryRelevancePrediction out;
  out.scores = features * model.W;
  out.labels =
      out.scores.unaryExpr([](double v) { return v > 0.5 ? 1.0 : 0.0; });
  return out;
}

SyntheticData generate_synthetic(const SyntheticSpec& spec) {
  if (spec.n_samples < 1 || spec.k_true < 1 || spec.c < 1) {
    throw InputError("generate_synthetic: counts must be positive");
  }
  if (spec.modality_dims.empty()) {
    throw InputError("generate_synthetic: need at least one modality");
  }
  for (Eigen::Index d : spec.modality_dims) {
    if (d < 1) throw InputError("generate_synthetic: modality dims must be >= 1");
  }
  if (!(spec.v_sparsity > 0.0) || spec.v_sparsity > 1.0) {
    throw InputError("generate_synthetic: v_sparsity must lie in (0,1]");
  }
  if (spec.noise_sd < 0.0) {
    throw InputError("generate_synthetic: noise_sd must be nonnegative");
  }

  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  const auto fill_normal = [&](Eigen::MatrixXd& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = normal(rng);
    }
  };

  const Eigen::Index n = spec.n_samples;
  const Eigen::Index k = spec.k_true;

  Eigen::MatrixXd z(n, k);
  fill_normal(z);

  SyntheticData data;
  data.planted.alpha = 0.0;
  data.planted.beta = 0.0;
  data.planted.k = k;
  data.planted.P = z;

  for (std::size_t i = 0; i < spec.modality_dims.size(); ++i) {
    const Eigen::Index d = spec.modality_dims[i];
    Eigen::MatrixXd a(k, d);
    fill_normal(a);
    Eigen::MatrixXd x = z * a;
    if (spec.noise_sd > 0.0) {
      Eigen::MatrixXd noise(n, d);
      fill_normal(noise);
      x += spec.noise_sd * noise;
    }
    ModalityMatrix mod;
    mod.kind = ModalityKind::RawFeature;
    mod.values = std::move(x);
    data.view.modalities.push_back(std::move(mod));

    // Right inverse of A_i: with zero noise, X_i U_i recovers Z exactly.
    const Eigen::MatrixXd aat = a * a.transpose();
    data.planted.U.push_back(
        a.transpose() * aat.ldlt().solve(Eigen::MatrixXd::Identity(k, k)));
  }

  data.view.sample_ids.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    data.view.sample_ids.push_back("s" + std::to_string(i));
  }

  // Planted V: +-1 entries on a random sparsity pattern, columns scaled to
  // unit norm so every label score is standard normal.
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(k, spec.c);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < spec.c; ++j) {
      if (uniform(rng) < spec.v_sparsity) {
        v(i, j) = uniform(rng) < 0.5 ? 1.0 : -1.0;
      }
    }
  }
  for (Eigen::Index j = 0; j < spec.c; ++j) {
    if (v.col(j).isZero()) {
      const auto row = static_cast<Eigen::Index>(
          rng() % static_cast<std::uint64_t>(k));
      v(row, j) = uniform(rng) < 0.5 ? 1.0 : -1.0;
    }
    v.col(j) /= v.col(j).norm();
  }
  data.planted.V = v;

  const Eigen::MatrixXd scores = z * v;
  data.labels.values = scores.unaryExpr([&spec](double s) {
    return s > spec.label_threshold ? 1.0 : 0.0;
  });
  data.labels.n_train = n;
  data.labels.n_test = 0;
  return data;
}

}  // namespace latentlabel
