#pragma once

#include <chrono>
#include <cstdint>
#include <utility>
#include <vector>

#include "latentlabel/data_model.hpp"

namespace latentlabel {

struct SolverConfig {
  int max_outer_iters = 200;
  double outer_rel_tol = 1e-6;
  int fista_max_iters = 500;
  double fista_rel_tol = 1e-8;
  double backtrack_shrink = 0.5;      // step multiplier, in (0,1)
  double backtrack_init_step = 1.0;
  double armijo_c = 1e-4;             // required decrease per unit step
  int u_inner_steps = 5;              // gradient steps per outer iteration
  int p_inner_steps = 5;
  std::uint64_t seed = 0;
};

struct FitTrace {
  // Objective at initialization, then after each outer iteration.
  std::vector<double> objective_per_outer_iter;
  std::vector<int> fista_iters_per_outer;
  std::chrono::duration<double> wall_time{0};
};

// F(U, P, V) = sum_i(|X_i U_i - P|_F^2 + alpha |U_i|_F^2)
//            + |J(Y - P V)|_F^2 + beta |V|_1,
// with J masking the m test rows out of the prediction residual.
double objective(const ModelState& state, const MultiModalView& view,
                 const LabelMatrix& labels);

// Soft threshold: x -> x -/+ eps outside the dead zone [-eps, eps], else 0.
double shrink(double x, double eps);

// Exact block gradients (they keep the factor 2 of the squared norms).
Eigen::MatrixXd u_block_gradient(const Eigen::MatrixXd& x,
                                 const Eigen::MatrixXd& u,
                                 const Eigen::MatrixXd& p, double alpha);
Eigen::MatrixXd v_smooth_gradient(const Eigen::MatrixXd& p,
                                  const LabelMatrix& labels,
                                  const Eigen::MatrixXd& v);
Eigen::MatrixXd p_block_gradient(const ModelState& state,
                                 const MultiModalView& view,
                                 const LabelMatrix& labels);

// One round of backtracked (Armijo) gradient steps on each U_i with P fixed.
std::vector<Eigen::MatrixXd> update_U(const ModelState& state,
                                      const MultiModalView& view,
                                      const SolverConfig& config);

struct FistaResult {
  Eigen::MatrixXd V;
  int iters = 0;
};

// Accelerated proximal gradient on H(V) = |J(Y-PV)|_F^2 + beta |V|_1.
// Momentum follows psi_{t+1} = (1+sqrt(1+4 psi_t^2))/2; the prox is an
// elementwise soft threshold at beta/(2l) where 1/l is the backtracked step
// for the half-gradient P^T J (P Gamma - Y).
FistaResult solve_V_fista(const Eigen::MatrixXd& p, const LabelMatrix& labels,
                          double beta, const Eigen::MatrixXd& v0,
                          const SolverConfig& config);

// Backtracked gradient steps on
// g(P) = |J(Y-PV)|_F^2 + sum_i |X_i U_i - P|_F^2 with U, V fixed.
Eigen::MatrixXd update_P(const ModelState& state, const MultiModalView& view,
                         const LabelMatrix& labels, const SolverConfig& config);

// U_i and V start uniform (1/(d_i k), 1/(k c)); P starts at the top-k PCA
// scores of the column-centered concatenation of the raw-feature views.
ModelState init_state(const MultiModalView& view, const LabelMatrix& labels,
                      Eigen::Index k, double alpha, double beta);

std::pair<ModelState, FitTrace> fit(const MultiModalView& view,
                                    const LabelMatrix& labels, double alpha,
                                    double beta, Eigen::Index k,
                                    const SolverConfig& config = {});

struct Prediction {
  Eigen::RowVectorXd scores;  // length c
  Eigen::RowVectorXd labels;  // 0/1; score > 0.5 predicts 1, ties predict 0
};

// One sample given per-modality feature vectors z_i (kernel modalities are
// supplied as similarity rows against the frozen anchors).
Prediction predict(const ModelState& state,
                   const std::vector<Eigen::RowVectorXd>& sample);

struct TransductivePrediction {
  Eigen::MatrixXd scores;  // (n+m) x c
  Eigen::MatrixXd labels;
};

// Scores (1/s) sum_i X_i U_i V for every row of the fitted view; rows past
// n_train are the transductive test predictions.
TransductivePrediction predict_transductive(const ModelState& state,
                                            const MultiModalView& view);

}  // namespace latentlabel
