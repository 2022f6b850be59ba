#include "latentlabel/solver.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <limits>
#include <sstream>

#include "latentlabel/errors.hpp"

namespace latentlabel {

namespace {

constexpr double kStepUnderflow = 1e-18;

void check_consistent(const ModelState& state, const MultiModalView& view) {
  if (state.U.size() != view.modalities.size()) {
    throw DimensionMismatch("state has " + std::to_string(state.U.size()) +
                            " transforms for " +
                            std::to_string(view.modalities.size()) +
                            " modalities");
  }
  for (std::size_t i = 0; i < state.U.size(); ++i) {
    if (state.U[i].rows() != view.modalities[i].cols() ||
        state.U[i].cols() != state.k) {
      throw DimensionMismatch("U[" + std::to_string(i) +
                              "] shape disagrees with modality/k");
    }
  }
  if (state.P.rows() != view.rows() || state.P.cols() != state.k) {
    throw DimensionMismatch("P shape disagrees with view rows/k");
  }
}

// Armijo backtracking on a quadratic ray: along direction -G the block
// objective satisfies f(rho) = f(0) - rho*gn2 + rho^2*q, so the decrease is
// available in closed form and trials cost nothing.
double armijo_step(double gn2, double q, const SolverConfig& config) {
  if (!std::isfinite(gn2) || !std::isfinite(q)) {
    throw LineSearchFailed("block objective overflowed during line search");
  }
  double rho = config.backtrack_init_step;
  while (rho * gn2 - rho * rho * q < config.armijo_c * rho * gn2) {
    rho *= config.backtrack_shrink;
    if (rho < kStepUnderflow) {
      throw LineSearchFailed("backtracking step underflowed below 1e-18");
    }
  }
  return rho;
}

Eigen::MatrixXd soft_threshold(const Eigen::MatrixXd& x, double eps) {
  return x.unaryExpr([eps](double v) { return shrink(v, eps); });
}

}  // namespace

double shrink(double x, double eps) {
  if (x > eps) return x - eps;
  if (x < -eps) return x + eps;
  return 0.0;
}

double objective(const ModelState& state, const MultiModalView& view,
                 const LabelMatrix& labels) {
  check_consistent(state, view);
  if (state.V.rows() != state.k || state.V.cols() != labels.label_count() ||
      view.rows() != labels.rows()) {
    throw DimensionMismatch("objective: V/labels shapes inconsistent");
  }
  double value = 0.0;
  for (std::size_t i = 0; i < state.U.size(); ++i) {
    value += (view.modalities[i].values * state.U[i] - state.P).squaredNorm();
    value += state.alpha * state.U[i].squaredNorm();
  }
  const Eigen::Index n = labels.n_train;
  value += (labels.values.topRows(n) - state.P.topRows(n) * state.V)
               .squaredNorm();
  value += state.beta * state.V.cwiseAbs().sum();
  return value;
}

Eigen::MatrixXd u_block_gradient(const Eigen::MatrixXd& x,
                                 const Eigen::MatrixXd& u,
                                 const Eigen::MatrixXd& p, double alpha) {
  return 2.0 * (x.transpose() * (x * u - p) + alpha * u);
}

Eigen::MatrixXd v_smooth_gradient(const Eigen::MatrixXd& p,
                                  const LabelMatrix& labels,
                                  const Eigen::MatrixXd& v) {
  const Eigen::Index n = labels.n_train;
  const auto p_tr = p.topRows(n);
  return 2.0 * p_tr.transpose() * (p_tr * v - labels.values.topRows(n));
}

Eigen::MatrixXd p_block_gradient(const ModelState& state,
                                 const MultiModalView& view,
                                 const LabelMatrix& labels) {
  check_consistent(state, view);
  const Eigen::Index n = labels.n_train;
  const double s = static_cast<double>(view.modality_count());
  Eigen::MatrixXd sum_xu =
      Eigen::MatrixXd::Zero(state.P.rows(), state.P.cols());
  for (std::size_t i = 0; i < state.U.size(); ++i) {
    sum_xu.noalias() += view.modalities[i].values * state.U[i];
  }
  Eigen::MatrixXd grad = -2.0 * (sum_xu - s * state.P);
  const Eigen::MatrixXd residual =
      labels.values.topRows(n) - state.P.topRows(n) * state.V;
  grad.topRows(n).noalias() -= 2.0 * residual * state.V.transpose();
  return grad;
}

std::vector<Eigen::MatrixXd> update_U(const ModelState& state,
                                      const MultiModalView& view,
                                      const SolverConfig& config) {
  check_consistent(state, view);
  std::vector<Eigen::MatrixXd> out;
  out.reserve(state.U.size());
  for (std::size_t i = 0; i < state.U.size(); ++i) {
    const Eigen::MatrixXd& x = view.modalities[i].values;
    Eigen::MatrixXd u = state.U[i];
    Eigen::MatrixXd xu = x * u;
    for (int step = 0; step < config.u_inner_steps; ++step) {
      const Eigen::MatrixXd residual = xu - state.P;
      Eigen::MatrixXd grad =
          2.0 * (x.transpose() * residual + state.alpha * u);
      const double gn2 = grad.squaredNorm();
      if (gn2 == 0.0) break;
      const Eigen::MatrixXd xg = x * grad;
      const double q = xg.squaredNorm() + state.alpha * grad.squaredNorm();
      const double rho = armijo_step(gn2, q, config);
      u.noalias() -= rho * grad;
      xu.noalias() -= rho * xg;
    }
    out.push_back(std::move(u));
  }
  return out;
}

FistaResult solve_V_fista(const Eigen::MatrixXd& p, const LabelMatrix& labels,
                          double beta, const Eigen::MatrixXd& v0,
                          const SolverConfig& config) {
  if (beta < 0.0) throw InputError("solve_V_fista: beta must be nonnegative");
  if (v0.rows() != p.cols() || v0.cols() != labels.label_count()) {
    throw DimensionMismatch("solve_V_fista: V0 must be k x c");
  }
  if (p.rows() != labels.rows()) {
    throw DimensionMismatch("solve_V_fista: P rows must match labels");
  }
  const Eigen::Index n = labels.n_train;
  const auto p_tr = p.topRows(n);
  const auto y_tr = labels.values.topRows(n);

  const auto smooth = [&](const Eigen::MatrixXd& v) {
    return (y_tr - p_tr * v).squaredNorm();
  };
  const auto h_value = [&](double smooth_part, const Eigen::MatrixXd& v) {
    return smooth_part + beta * v.cwiseAbs().sum();
  };

  Eigen::MatrixXd v_prev = v0;
  Eigen::MatrixXd gamma = v0;  // Gamma^1 = V^0
  double psi = 1.0;
  double l = 1.0 / config.backtrack_init_step;

  double h_prev = h_value(smooth(v0), v0);
  Eigen::MatrixXd v_best = v0;
  double h_best = h_prev;
  int iters = 0;

  for (int t = 1; t <= config.fista_max_iters; ++t) {
    const Eigen::MatrixXd residual = p_tr * gamma - y_tr;
    const double smooth_gamma = residual.squaredNorm();
    if (!std::isfinite(smooth_gamma)) {
      throw LineSearchFailed("FISTA smooth term overflowed");
    }
    const Eigen::MatrixXd half_grad = p_tr.transpose() * residual;

    Eigen::MatrixXd v_new;
    double smooth_new = 0.0;
    for (;;) {
      v_new = soft_threshold(gamma - half_grad / l, beta / (2.0 * l));
      const Eigen::MatrixXd diff = v_new - gamma;
      smooth_new = smooth(v_new);
      const double bound = smooth_gamma +
                           2.0 * (half_grad.cwiseProduct(diff)).sum() +
                           l * diff.squaredNorm();
      if (smooth_new <= bound + 1e-12 * std::max(1.0, smooth_gamma)) break;
      l /= config.backtrack_shrink;
      if (1.0 / l < kStepUnderflow) {
        throw LineSearchFailed("FISTA step underflowed below 1e-18");
      }
    }
    iters = t;

    const double h_new = h_value(smooth_new, v_new);
    if (h_new < h_best) {
      h_best = h_new;
      v_best = v_new;
    }

    const double psi_next = (1.0 + std::sqrt(1.0 + 4.0 * psi * psi)) / 2.0;
    gamma = v_new + ((psi - 1.0) / psi_next) * (v_new - v_prev);
    psi = psi_next;
    v_prev = v_new;

    if (std::abs(h_prev - h_new) <=
        config.fista_rel_tol * std::max(std::abs(h_prev), 1e-30)) {
      break;
    }
    h_prev = h_new;
  }
  return {std::move(v_best), iters};
}

Eigen::MatrixXd update_P(const ModelState& state, const MultiModalView& view,
                         const LabelMatrix& labels, const SolverConfig& config) {
  check_consistent(state, view);
  const Eigen::Index n = labels.n_train;
  const double s = static_cast<double>(view.modality_count());

  Eigen::MatrixXd sum_xu =
      Eigen::MatrixXd::Zero(state.P.rows(), state.P.cols());
  for (std::size_t i = 0; i < state.U.size(); ++i) {
    sum_xu.noalias() += view.modalities[i].values * state.U[i];
  }

  Eigen::MatrixXd p = state.P;
  for (int step = 0; step < config.p_inner_steps; ++step) {
    const Eigen::MatrixXd residual =
        labels.values.topRows(n) - p.topRows(n) * state.V;
    Eigen::MatrixXd grad = -2.0 * (sum_xu - s * p);
    grad.topRows(n).noalias() -= 2.0 * residual * state.V.transpose();
    const double gn2 = grad.squaredNorm();
    if (gn2 == 0.0) break;
    const Eigen::MatrixXd gv = grad.topRows(n) * state.V;
    const double q = gv.squaredNorm() + s * grad.squaredNorm();
    const double rho = armijo_step(gn2, q, config);
    p.noalias() -= rho * grad;
  }
  return p;
}

ModelState init_state(const MultiModalView& view, const LabelMatrix& labels,
                      Eigen::Index k, double alpha, double beta) {
  const Eigen::Index n_rows = view.rows();
  if (k < 1 || k > n_rows) {
    throw InvalidK("k must lie in [1, n+m], got " + std::to_string(k));
  }
  ModelState state;
  state.alpha = alpha;
  state.beta = beta;
  state.k = k;
  for (const auto& mod : view.modalities) {
    const double d = static_cast<double>(mod.cols());
    state.U.push_back(Eigen::MatrixXd::Constant(
        mod.cols(), k, 1.0 / (d * static_cast<double>(k))));
  }
  state.V = Eigen::MatrixXd::Constant(
      k, labels.label_count(),
      1.0 / (static_cast<double>(k) * static_cast<double>(labels.label_count())));

  // PCA initialization of P over the raw-feature views only. Views that are
  // similarity matrices already live in sample space and are left out.
  Eigen::Index d_total = 0;
  std::vector<const ModalityMatrix*> feature_mods;
  for (const auto& mod : view.modalities) {
    if (mod.kind == ModalityKind::RawFeature) feature_mods.push_back(&mod);
  }
  if (feature_mods.empty()) {
    for (const auto& mod : view.modalities) feature_mods.push_back(&mod);
  }
  for (const auto* mod : feature_mods) d_total += mod->cols();

  Eigen::MatrixXd concat(n_rows, d_total);
  Eigen::Index offset = 0;
  for (const auto* mod : feature_mods) {
    concat.middleCols(offset, mod->cols()) = mod->values;
    offset += mod->cols();
  }
  concat.rowwise() -= concat.colwise().mean();

  Eigen::BDCSVD<Eigen::MatrixXd> svd(concat,
                                     Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sing = svd.singularValues();
  const double tol = sing.size() > 0
                         ? sing[0] * std::numeric_limits<double>::epsilon() *
                               static_cast<double>(std::max(n_rows, d_total))
                         : 0.0;

  state.P = Eigen::MatrixXd::Zero(n_rows, k);
  const Eigen::Index top = std::min<Eigen::Index>(k, sing.size());
  for (Eigen::Index j = 0; j < top; ++j) {
    if (sing[j] <= tol) break;  // beyond the numerical rank: leave zero
    Eigen::VectorXd scores = svd.matrixU().col(j) * sing[j];
    // Deterministic sign: the largest-magnitude loading is made positive.
    const Eigen::VectorXd loading = svd.matrixV().col(j);
    Eigen::Index arg = 0;
    for (Eigen::Index i = 1; i < loading.size(); ++i) {
      if (std::abs(loading[i]) > std::abs(loading[arg])) arg = i;
    }
    if (loading[arg] < 0.0) scores = -scores;
    state.P.col(j) = scores;
  }
  return state;
}

std::pair<ModelState, FitTrace> fit(const MultiModalView& view,
                                    const LabelMatrix& labels, double alpha,
                                    double beta, Eigen::Index k,
                                    const SolverConfig& config) {
  if (auto issue = validate(view, labels)) {
    switch (issue->code) {
      case ValidationCode::DimensionMismatch:
        throw DimensionMismatch(issue->str());
      case ValidationCode::NonBinaryLabel:
        throw NonBinaryLabel(issue->str());
      case ValidationCode::NonFiniteValue:
        throw NonFiniteValue(issue->str());
    }
  }
  if (alpha < 0.0 || beta < 0.0) {
    throw InputError("fit: alpha and beta must be nonnegative");
  }

  const auto start = std::chrono::steady_clock::now();
  ModelState state = init_state(view, labels, k, alpha, beta);
  FitTrace trace;
  double f_prev = objective(state, view, labels);
  trace.objective_per_outer_iter.push_back(f_prev);

  for (int t = 0; t < config.max_outer_iters; ++t) {
    state.U = update_U(state, view, config);
    FistaResult fista =
        solve_V_fista(state.P, labels, beta, state.V, config);
    state.V = std::move(fista.V);
    trace.fista_iters_per_outer.push_back(fista.iters);
    state.P = update_P(state, view, labels, config);

    const double f_new = objective(state, view, labels);
    trace.objective_per_outer_iter.push_back(f_new);
    const double rel =
        (f_prev - f_new) / std::max(std::abs(f_prev), 1e-30);
    f_prev = f_new;
    if (rel < config.outer_rel_tol) break;
  }
  trace.wall_time = std::chrono::steady_clock::now() - start;
  return {std::move(state), std::move(trace)};
}

Prediction predict(const ModelState& state,
                   const std::vector<Eigen::RowVectorXd>& sample) {
  if (sample.size() != state.U.size()) {
    throw DimensionMismatch("predict: expected " +
                            std::to_string(state.U.size()) +
                            " modality vectors, got " +
                            std::to_string(sample.size()));
  }
  const double s = static_cast<double>(state.U.size());
  Eigen::RowVectorXd acc = Eigen::RowVectorXd::Zero(state.k);
  for (std::size_t i = 0; i < sample.size(); ++i) {
    if (sample[i].size() != state.U[i].rows()) {
      std::ostringstream os;
      os << "predict: modality " << i << " has " << sample[i].size()
         << " features, model expects " << state.U[i].rows();
      throw DimensionMismatch(os.str());
    }
    acc.noalias() += sample[i] * state.U[i];
  }
  Prediction out;
  out.scores = (acc / s) * state.V;
  out.labels = out.scores.unaryExpr(
      [](double v) { return v > 0.5 ? 1.0 : 0.0; });
  return out;
}

TransductivePrediction predict_transductive(const ModelState& state,
                                            const MultiModalView& view) {
  check_consistent(state, view);
  const double s = static_cast<double>(view.modality_count());
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(view.rows(), state.k);
  for (std::size_t i = 0; i < state.U.size(); ++i) {
    acc.noalias() += view.modalities[i].values * state.U[i];
  }
  TransductivePrediction out;
  out.scores = (acc / s) * state.V;
  out.labels = out.scores.unaryExpr(
      [](double v) { return v > 0.5 ? 1.0 : 0.0; });
  return out;
}

}  // namespace latentlabel
