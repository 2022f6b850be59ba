#include <doctest.h>

#include <Eigen/Dense>

#include "latentlabel/solver.hpp"
#include "oracle.hpp"
#include "test_support.hpp"

using namespace latentlabel;
namespace lt = latentlabel::testing;

TEST_SUITE("oracle") {

TEST_CASE("direct objective agrees with the solver evaluation") {
  auto rng = lt::make_rng(21);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto problem = lt::random_problem(rng, {10, 3, 5, 4, 5});
    const auto state = lt::random_state(rng, problem, 0.3, 0.2);
    const double direct =
        oracle::objective_direct(state, problem.view, problem.labels);
    const double solver = objective(state, problem.view, problem.labels);
    CHECK(std::abs(direct - solver) <= 1e-12 * std::max(1.0, std::abs(direct)));
  }
}

TEST_CASE("zero state objective counts training ones") {
  auto rng = lt::make_rng(22);
  auto problem = lt::random_problem(rng);
  ModelState state;
  state.alpha = 0.7;
  state.beta = 0.3;
  state.k = problem.k;
  for (const auto& mod : problem.view.modalities) {
    state.U.push_back(Eigen::MatrixXd::Zero(mod.cols(), problem.k));
  }
  state.P = Eigen::MatrixXd::Zero(problem.view.rows(), problem.k);
  state.V = Eigen::MatrixXd::Zero(problem.k, problem.labels.label_count());
  const double ones =
      problem.labels.values.topRows(problem.labels.n_train).sum();
  CHECK(oracle::objective_direct(state, problem.view, problem.labels) ==
        doctest::Approx(ones).epsilon(1e-14));
}

TEST_CASE("alpha term responds exactly to a single-entry perturbation") {
  auto rng = lt::make_rng(23);
  const auto problem = lt::random_problem(rng, {8, 2, 3, 3, 4});
  auto state = lt::random_state(rng, problem, 0.0, 0.0);
  state.alpha = 0.9;
  const double base =
      oracle::objective_direct(state, problem.view, problem.labels);

  auto perturbed = state;
  const double delta = 0.37;
  const double u = perturbed.U[0](0, 0);
  perturbed.U[0](0, 0) += delta;
  const double changed =
      oracle::objective_direct(perturbed, problem.view, problem.labels);

  // Remove the fit-term difference with alpha = 0 states to isolate alpha's
  // exact contribution alpha*(2 u delta + delta^2).
  auto base0 = state;
  base0.alpha = 0.0;
  auto perturbed0 = perturbed;
  perturbed0.alpha = 0.0;
  const double fit_diff =
      oracle::objective_direct(perturbed0, problem.view, problem.labels) -
      oracle::objective_direct(base0, problem.view, problem.labels);
  CHECK(changed - base - fit_diff ==
        doctest::Approx(state.alpha * (2.0 * u * delta + delta * delta))
            .epsilon(1e-10));
}

TEST_CASE("finite differences recover the gradient of a squared norm") {
  auto rng = lt::make_rng(24);
  const Eigen::MatrixXd x = lt::random_matrix(rng, 4, 3);
  const auto grad = oracle::finite_diff_grad(
      [](const Eigen::MatrixXd& m) { return m.squaredNorm(); }, x);
  CHECK((grad - 2.0 * x).cwiseAbs().maxCoeff() < 1e-6);

  const auto zero = oracle::finite_diff_grad(
      [](const Eigen::MatrixXd&) { return 4.2; }, x);
  CHECK(zero.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("lasso with beta=0 solves the least squares system") {
  auto rng = lt::make_rng(25);
  const Eigen::MatrixXd p = lt::random_matrix(rng, 6, 4);
  LabelMatrix labels;
  labels.n_train = 6;
  labels.n_test = 0;
  labels.values = lt::random_binary(rng, 6, 3);

  const Eigen::MatrixXd v = oracle::lasso_cd(p, labels, 0.0, 1e-13);
  const Eigen::MatrixXd direct =
      (p.transpose() * p).ldlt().solve(p.transpose() * labels.values);
  CHECK((v - direct).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("lasso returns exact zero above the threshold") {
  auto rng = lt::make_rng(26);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::MatrixXd p = lt::random_matrix(rng, 5, 3);
    LabelMatrix labels;
    labels.n_train = 5;
    labels.n_test = 0;
    labels.values = lt::random_binary(rng, 5, 4);
    const double threshold = oracle::zero_solution_threshold(p, labels);

    const Eigen::MatrixXd at = oracle::lasso_cd(p, labels, threshold * 1.001);
    CHECK(at.cwiseAbs().maxCoeff() == 0.0);
    if (threshold > 0.0) {
      const Eigen::MatrixXd below =
          oracle::lasso_cd(p, labels, threshold * 0.9);
      CHECK(below.cwiseAbs().maxCoeff() > 0.0);
    }
  }
}

TEST_CASE("scalar lasso matches a fine grid search") {
  Eigen::MatrixXd p(1, 1);
  p << 0.8;
  LabelMatrix labels;
  labels.n_train = 1;
  labels.n_test = 0;
  labels.values = Eigen::MatrixXd::Constant(1, 1, 1.0);
  const double beta = 0.3;

  const Eigen::MatrixXd v = oracle::lasso_cd(p, labels, beta, 1e-14);
  const double h_cd = oracle::h_value(p, labels, beta, v);

  double h_grid = std::numeric_limits<double>::infinity();
  for (int i = -40000; i <= 40000; ++i) {
    Eigen::MatrixXd probe(1, 1);
    probe << i * 1e-4;
    h_grid = std::min(h_grid, oracle::h_value(p, labels, beta, probe));
  }
  CHECK(h_cd <= h_grid + 1e-10);
}

TEST_CASE("zero-solution threshold hand cases") {
  LabelMatrix labels;
  labels.n_train = 1;
  labels.n_test = 0;

  Eigen::MatrixXd p(1, 1);
  p << 1.0;
  labels.values = Eigen::MatrixXd::Zero(1, 1);
  CHECK(oracle::zero_solution_threshold(p, labels) == 0.0);

  labels.values = Eigen::MatrixXd::Constant(1, 1, 1.0);
  CHECK(oracle::zero_solution_threshold(p, labels) == 2.0);
}

TEST_CASE("ridge fixed point is stationary for the U gradient") {
  auto rng = lt::make_rng(27);
  const Eigen::MatrixXd x = lt::random_matrix(rng, 6, 4);
  const Eigen::MatrixXd p = lt::random_matrix(rng, 6, 3);
  const double alpha = 0.4;
  const Eigen::MatrixXd u = oracle::ridge_fixed_point(x, p, alpha);
  CHECK(u_block_gradient(x, u, p, alpha).cwiseAbs().maxCoeff() < 1e-10);
}

}  // TEST_SUITE
