// latentlabel: multi-modal multi-label learning CLI.
//
// Subcommands: train, predict, cv, grid, synth. All inputs come from a JSON
// config file plus a handful of flag overrides; outputs are JSON/CSV and are
// byte-identical across reruns with the same config and seed.

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>

#include "latentlabel/csv.hpp"
#include "latentlabel/errors.hpp"
#include "latentlabel/harness.hpp"
#include "latentlabel/metrics.hpp"
#include "latentlabel/model_io.hpp"
#include "latentlabel/solver.hpp"
#include "latentlabel/views.hpp"

namespace ll = latentlabel;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitSolver = 3;

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<double> alpha, beta;
  std::optional<Eigen::Index> k;
  std::optional<Eigen::Index> folds, repeats;
};

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw ll::InputError("cannot open config " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ll::InputError(path + ": config parse error: " + e.what());
  }
}

template <typename T>
T get_or(const json& doc, const std::string& key, T fallback) {
  if (!doc.contains(key) || doc.at(key).is_null()) return fallback;
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ll::InputError("config key \"" + key + "\": " + e.what());
  }
}

json section(const json& doc, const std::string& key) {
  return doc.contains(key) ? doc.at(key) : json::object();
}

ll::ScalingKind parse_scaling(const std::string& name) {
  if (name == "none") return ll::ScalingKind::None;
  if (name == "zscore") return ll::ScalingKind::ZScore;
  if (name == "minmax") return ll::ScalingKind::MinMax;
  throw ll::InputError("unknown scaling \"" + name + "\"");
}

std::vector<ll::KernelSpec> parse_kernels(const json& view_cfg) {
  const std::vector<std::string> names = get_or<std::vector<std::string>>(
      view_cfg, "kernels", {"linear", "gaussian", "bhattacharyya", "chi_square"});
  std::optional<double> sigma;
  if (view_cfg.contains("gaussian_sigma") &&
      view_cfg.at("gaussian_sigma").is_number()) {
    sigma = view_cfg.at("gaussian_sigma").get<double>();
  }
  std::vector<ll::KernelSpec> specs;
  for (const auto& name : names) {
    ll::KernelSpec spec;
    if (name == "linear") {
      spec.kind = ll::KernelKind::Linear;
    } else if (name == "gaussian") {
      spec.kind = ll::KernelKind::Gaussian;
      spec.gaussian_sigma = sigma;
    } else if (name == "bhattacharyya") {
      spec.kind = ll::KernelKind::Bhattacharyya;
    } else if (name == "chi_square") {
      spec.kind = ll::KernelKind::ChiSquare;
    } else {
      throw ll::InputError("unknown kernel \"" + name + "\"");
    }
    specs.push_back(spec);
  }
  return specs;
}

ll::SolverConfig parse_solver(const json& doc, std::uint64_t seed) {
  const json cfg = section(doc, "solver");
  ll::SolverConfig config;
  config.max_outer_iters = get_or(cfg, "max_outer_iters", config.max_outer_iters);
  config.outer_rel_tol = get_or(cfg, "outer_rel_tol", config.outer_rel_tol);
  config.fista_max_iters = get_or(cfg, "fista_max_iters", config.fista_max_iters);
  config.fista_rel_tol = get_or(cfg, "fista_rel_tol", config.fista_rel_tol);
  config.backtrack_shrink =
      get_or(cfg, "backtrack_shrink", config.backtrack_shrink);
  config.backtrack_init_step =
      get_or(cfg, "backtrack_init_step", config.backtrack_init_step);
  config.u_inner_steps = get_or(cfg, "u_inner_steps", config.u_inner_steps);
  config.p_inner_steps = get_or(cfg, "p_inner_steps", config.p_inner_steps);
  config.seed = seed;
  return config;
}

ll::Hyper parse_hyper(const json& doc, const Overrides& over) {
  const json cfg = section(doc, "hyper");
  ll::Hyper hyper;
  hyper.alpha = over.alpha.value_or(get_or(cfg, "alpha", 0.3));
  hyper.beta = over.beta.value_or(get_or(cfg, "beta", 0.1));
  hyper.k = over.k.value_or(get_or<Eigen::Index>(cfg, "k", 50));
  return hyper;
}

std::uint64_t resolve_seed(const json& doc, const Overrides& over) {
  return over.seed.value_or(get_or<std::uint64_t>(doc, "seed", 0));
}

std::filesystem::path resolve_out_dir(const json& doc, const Overrides& over) {
  const std::string dir = over.out_dir.value_or(get_or<std::string>(doc, "out_dir", "."));
  std::filesystem::create_directories(dir);
  return dir;
}

struct LoadedData {
  ll::ModalityMatrix motor;
  ll::ModalityMatrix nonmotor;
  ll::LabelMatrix labels;
  std::vector<std::string> sample_ids;   // training rows first
  std::vector<std::string> label_names;  // label CSV header minus id column
};

// Joins the three CSVs by sample id and fixes the transductive order:
// labeled rows first (feature-file order), unlabeled rows after.
LoadedData load_training_data(const json& doc) {
  const json data = section(doc, "data");
  const std::string motor_path = get_or<std::string>(data, "motor", "");
  const std::string nonmotor_path = get_or<std::string>(data, "nonmotor", "");
  const std::string labels_path = get_or<std::string>(data, "labels", "");
  if (motor_path.empty() || nonmotor_path.empty() || labels_path.empty()) {
    throw ll::InputError("config data section needs motor, nonmotor and labels paths");
  }
  const ll::CsvTable motor = ll::read_csv(motor_path);
  const ll::CsvTable nonmotor = ll::read_csv(nonmotor_path);
  const ll::CsvTable labels = ll::read_csv(labels_path);

  if (motor.ids != nonmotor.ids) {
    throw ll::InputError(motor_path + " and " + nonmotor_path +
                         ": sample ids must match row for row");
  }

  std::unordered_map<std::string, Eigen::Index> label_row;
  for (std::size_t i = 0; i < labels.ids.size(); ++i) {
    if (!label_row.emplace(labels.ids[i], static_cast<Eigen::Index>(i)).second) {
      throw ll::InputError(labels_path + ": duplicate sample id \"" +
                           labels.ids[i] + "\"");
    }
  }
  for (const auto& [id, row] : label_row) {
    if (std::find(motor.ids.begin(), motor.ids.end(), id) == motor.ids.end()) {
      throw ll::InputError(labels_path + ": sample id \"" + id +
                           "\" has labels but no features");
    }
  }

  std::vector<Eigen::Index> order;  // feature-row indices, labeled first
  for (std::size_t i = 0; i < motor.ids.size(); ++i) {
    if (label_row.count(motor.ids[i])) {
      order.push_back(static_cast<Eigen::Index>(i));
    }
  }
  const Eigen::Index n_train = static_cast<Eigen::Index>(order.size());
  for (std::size_t i = 0; i < motor.ids.size(); ++i) {
    if (!label_row.count(motor.ids[i])) {
      order.push_back(static_cast<Eigen::Index>(i));
    }
  }
  if (n_train == 0) throw ll::InputError(labels_path + ": no labeled samples");

  LoadedData out;
  const auto n = static_cast<Eigen::Index>(order.size());
  out.motor.values.resize(n, motor.values.cols());
  out.nonmotor.values.resize(n, nonmotor.values.cols());
  out.labels.values = Eigen::MatrixXd::Zero(n, labels.values.cols());
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index src = order[static_cast<std::size_t>(i)];
    out.motor.values.row(i) = motor.values.row(src);
    out.nonmotor.values.row(i) = nonmotor.values.row(src);
    out.sample_ids.push_back(motor.ids[static_cast<std::size_t>(src)]);
    if (i < n_train) {
      out.labels.values.row(i) =
          labels.values.row(label_row.at(motor.ids[static_cast<std::size_t>(src)]));
    }
  }
  out.labels.n_train = n_train;
  out.labels.n_test = n - n_train;
  out.label_names.assign(labels.header.begin() + 1, labels.header.end());
  return out;
}

ll::AssembledView assemble_from_config(const json& doc, const LoadedData& data) {
  const json view_cfg = section(doc, "view");
  const ll::ScalingKind scaling =
      parse_scaling(get_or<std::string>(view_cfg, "scaling", "minmax"));
  const auto kernels = parse_kernels(view_cfg);
  return ll::assemble_view(data.motor, data.nonmotor, scaling, kernels,
                           data.sample_ids);
}

void check_valid(const ll::MultiModalView& view, const ll::LabelMatrix& labels) {
  if (auto issue = ll::validate(view, labels)) {
    throw ll::InputError(issue->str());
  }
}

json summary_to_json(const ll::MetricSummary& s) {
  return json{{"mean", s.mean}, {"sd", s.sd}};
}

int cmd_train(const json& doc, const Overrides& over) {
  const auto out_dir = resolve_out_dir(doc, over);
  const std::uint64_t seed = resolve_seed(doc, over);
  const ll::Hyper hyper = parse_hyper(doc, over);
  const ll::SolverConfig config = parse_solver(doc, seed);

  const LoadedData data = load_training_data(doc);
  const ll::AssembledView assembled = assemble_from_config(doc, data);
  check_valid(assembled.view, data.labels);

  const auto [state, trace] =
      ll::fit(assembled.view, data.labels, hyper.alpha, hyper.beta, hyper.k, config);

  ll::save_model(ll::make_model_file(state, assembled.view),
                 (out_dir / "model.json").string());

  json trace_doc;
  trace_doc["seed"] = seed;
  trace_doc["objective"] = trace.objective_per_outer_iter;
  trace_doc["fista_iters"] = trace.fista_iters_per_outer;
  trace_doc["outer_iterations"] = trace.fista_iters_per_outer.size();
  std::ofstream trace_out(out_dir / "trace.json", std::ios::binary);
  trace_out << trace_doc.dump(2) << '\n';

  std::cout << "model written to " << (out_dir / "model.json").string()
            << " (outer iterations: " << trace.fista_iters_per_outer.size()
            << ")\n";
  return kExitOk;
}

int cmd_predict(const json& doc, const Overrides& over) {
  const auto out_dir = resolve_out_dir(doc, over);
  const json pred_cfg = section(doc, "predict");
  const std::string model_path = get_or<std::string>(pred_cfg, "model", "model.json");
  const ll::ModelFile model = ll::load_model(model_path);

  const json data = section(doc, "data");
  const std::string motor_path = get_or<std::string>(data, "motor", "");
  const std::string nonmotor_path = get_or<std::string>(data, "nonmotor", "");
  if (motor_path.empty() || nonmotor_path.empty()) {
    throw ll::InputError("config data section needs motor and nonmotor paths");
  }
  const ll::CsvTable motor = ll::read_csv(motor_path);
  const ll::CsvTable nonmotor = ll::read_csv(nonmotor_path);
  if (motor.ids != nonmotor.ids) {
    throw ll::InputError(motor_path + " and " + nonmotor_path +
                         ": sample ids must match row for row");
  }

  const json view_cfg = section(doc, "view");
  const ll::ScalingKind scaling =
      parse_scaling(get_or<std::string>(view_cfg, "scaling", "minmax"));
  const auto kernels = parse_kernels(view_cfg);

  const std::string anchors_motor =
      get_or<std::string>(pred_cfg, "anchors_motor", "");
  const std::string anchors_nonmotor =
      get_or<std::string>(pred_cfg, "anchors_nonmotor", "");

  const Eigen::Index c = model.state.V.cols();
  const auto rows = static_cast<Eigen::Index>(motor.ids.size());
  Eigen::MatrixXd scores(rows, c);
  Eigen::MatrixXd labels(rows, c);

  const auto predict_rows = [&](const ll::AssembledView& assembled,
                                bool rows_are_view) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      std::vector<Eigen::RowVectorXd> sample;
      if (rows_are_view) {
        for (const auto& mod : assembled.view.modalities) {
          sample.push_back(mod.values.row(i));
        }
      } else {
        sample = ll::sample_features(assembled, motor.values.row(i),
                                     nonmotor.values.row(i));
      }
      const ll::Prediction p = ll::predict(model.state, sample);
      scores.row(i) = p.scores;
      labels.row(i) = p.labels;
    }
  };

  if (!anchors_motor.empty() || !anchors_nonmotor.empty()) {
    if (anchors_motor.empty() || anchors_nonmotor.empty()) {
      throw ll::InputError("predict: anchors_motor and anchors_nonmotor must be given together");
    }
    const ll::CsvTable am = ll::read_csv(anchors_motor);
    const ll::CsvTable an = ll::read_csv(anchors_nonmotor);
    if (am.ids != an.ids) {
      throw ll::InputError("anchor feature files: sample ids must match row for row");
    }
    const ll::AssembledView assembled = ll::assemble_view(
        ll::ModalityMatrix{am.values, ll::ModalityKind::RawFeature, {}},
        ll::ModalityMatrix{an.values, ll::ModalityKind::RawFeature, {}},
        scaling, kernels, am.ids);
    predict_rows(assembled, false);
  } else {
    // No separate anchor set: the input samples are the anchor set, exactly
    // as at (transductive) training time.
    if (rows == 0) {
      // nothing to assemble; fall through to header-only outputs
    } else {
      const ll::AssembledView assembled = ll::assemble_view(
          ll::ModalityMatrix{motor.values, ll::ModalityKind::RawFeature, {}},
          ll::ModalityMatrix{nonmotor.values, ll::ModalityKind::RawFeature, {}},
          scaling, kernels, motor.ids);
      predict_rows(assembled, true);
    }
  }

  ll::CsvTable score_table;
  score_table.header.push_back("sample_id");
  for (Eigen::Index j = 0; j < c; ++j) {
    score_table.header.push_back("score_" + std::to_string(j));
  }
  score_table.ids = motor.ids;
  score_table.values = scores;
  ll::write_csv((out_dir / "scores.csv").string(), score_table);

  ll::CsvTable label_table;
  label_table.header.push_back("sample_id");
  for (Eigen::Index j = 0; j < c; ++j) {
    label_table.header.push_back("label_" + std::to_string(j));
  }
  label_table.ids = motor.ids;
  label_table.values = labels;
  // Distinct from the labels *input* file, which often sits in the same
  // directory.
  ll::write_csv((out_dir / "predicted_labels.csv").string(), label_table);

  std::cout << "predictions written for " << rows << " samples\n";
  return kExitOk;
}

int cmd_cv(const json& doc, const Overrides& over) {
  const auto out_dir = resolve_out_dir(doc, over);
  const std::uint64_t seed = resolve_seed(doc, over);
  const ll::Hyper hyper = parse_hyper(doc, over);
  const ll::SolverConfig config = parse_solver(doc, seed);
  const json cv_cfg = section(doc, "cv");
  const Eigen::Index repeats =
      over.repeats.value_or(get_or<Eigen::Index>(cv_cfg, "repeats", 100));
  const Eigen::Index folds =
      over.folds.value_or(get_or<Eigen::Index>(cv_cfg, "folds", 10));

  const LoadedData data = load_training_data(doc);
  if (data.labels.n_test != 0) {
    throw ll::InputError("cv: every sample must be labeled");
  }
  const ll::AssembledView assembled = assemble_from_config(doc, data);
  check_valid(assembled.view, data.labels);

  const ll::CvReport report = ll::repeated_cv(assembled.view, data.labels,
                                              hyper, repeats, folds, config, seed);

  json doc_out;
  doc_out["seed"] = seed;
  doc_out["repeats"] = report.repeats;
  doc_out["folds"] = report.folds;
  doc_out["hyper"] = {{"alpha", hyper.alpha}, {"beta", hyper.beta}, {"k", hyper.k}};
  doc_out["metrics"] = {
      {"hamming_loss", summary_to_json(report.hamming_loss)},
      {"one_error", summary_to_json(report.one_error)},
      {"coverage_normalized", summary_to_json(report.coverage_normalized)},
      {"ranking_loss", summary_to_json(report.ranking_loss)},
      {"mean_sensitivity", summary_to_json(report.mean_sensitivity)},
      {"mean_specificity", summary_to_json(report.mean_specificity)},
      {"mean_accuracy", summary_to_json(report.mean_accuracy)}};
  json fold_list = json::array();
  for (const auto& fold : report.per_fold) {
    fold_list.push_back(json::parse(ll::report_to_json(fold)));
  }
  doc_out["per_fold"] = std::move(fold_list);
  std::ofstream out(out_dir / "cv_report.json", std::ios::binary);
  out << doc_out.dump(2) << '\n';

  std::ofstream csv(out_dir / "cv_summary.csv", std::ios::binary);
  csv << "# seed: " << seed << "\n";
  csv << "metric,mean,sd\n";
  const auto line = [&csv](const char* name, const ll::MetricSummary& s) {
    csv << name << ',' << ll::format_double(s.mean) << ','
        << ll::format_double(s.sd) << '\n';
  };
  line("hamming_loss", report.hamming_loss);
  line("one_error", report.one_error);
  line("coverage_normalized", report.coverage_normalized);
  line("ranking_loss", report.ranking_loss);
  line("mean_sensitivity", report.mean_sensitivity);
  line("mean_specificity", report.mean_specificity);
  line("mean_accuracy", report.mean_accuracy);

  std::cout << "cv report written (" << report.per_fold.size() << " folds)\n";
  std::ostringstream table;
  table << std::left << std::fixed << std::setprecision(6);
  table << "  " << std::setw(22) << "metric" << std::setw(12) << "mean"
        << "sd\n";
  const auto table_row = [&table](const char* name, const ll::MetricSummary& s) {
    table << "  " << std::setw(22) << name << std::setw(12) << s.mean << s.sd
          << '\n';
  };
  table_row("hamming_loss", report.hamming_loss);
  table_row("one_error", report.one_error);
  table_row("coverage (normalized)", report.coverage_normalized);
  table_row("ranking_loss", report.ranking_loss);
  table_row("mean_sensitivity", report.mean_sensitivity);
  table_row("mean_specificity", report.mean_specificity);
  table_row("mean_accuracy", report.mean_accuracy);
  std::cout << table.str();
  return kExitOk;
}

int cmd_grid(const json& doc, const Overrides& over) {
  const auto out_dir = resolve_out_dir(doc, over);
  const std::uint64_t seed = resolve_seed(doc, over);
  const ll::SolverConfig config = parse_solver(doc, seed);
  const json grid_cfg = section(doc, "grid");

  ll::GridSpec grid = ll::GridSpec::defaults();
  grid.alpha_values =
      get_or(grid_cfg, "alpha_values", grid.alpha_values);
  grid.beta_values = get_or(grid_cfg, "beta_values", grid.beta_values);
  grid.k_values = get_or(grid_cfg, "k_values", grid.k_values);
  const double holdout = get_or(grid_cfg, "holdout_fraction", 0.1);

  const LoadedData data = load_training_data(doc);
  if (data.labels.n_test != 0) {
    throw ll::InputError("grid: every sample must be labeled");
  }
  const ll::AssembledView assembled = assemble_from_config(doc, data);
  check_valid(assembled.view, data.labels);

  const ll::GridResult result =
      ll::grid_search(assembled.view, data.labels, grid, config, holdout, seed);

  json doc_out;
  doc_out["seed"] = seed;
  doc_out["best"] = {{"alpha", result.best.alpha},
                     {"beta", result.best.beta},
                     {"k", result.best.k}};
  doc_out["holdout_ids"] = result.holdout_ids;
  // The selection holdout is drawn from the same pool later CV folds use;
  // kept that way on purpose, so flag it for downstream readers.
  doc_out["holdout_overlaps_cv_folds"] = true;
  json table = json::array();
  for (const auto& cell : result.table) {
    json row = {{"alpha", cell.alpha}, {"beta", cell.beta}, {"k", cell.k}};
    if (cell.failed) {
      row["failed"] = true;
      row["error"] = cell.error;
    } else {
      row["validation_hamming"] = cell.validation_hamming;
    }
    table.push_back(std::move(row));
  }
  doc_out["table"] = std::move(table);
  std::ofstream out(out_dir / "grid_report.json", std::ios::binary);
  out << doc_out.dump(2) << '\n';

  std::ofstream csv(out_dir / "grid_summary.csv", std::ios::binary);
  csv << "# seed: " << seed << "\n";
  csv << "alpha,beta,k,validation_hamming,failed\n";
  for (const auto& cell : result.table) {
    csv << ll::format_double(cell.alpha) << ',' << ll::format_double(cell.beta)
        << ',' << cell.k << ','
        << (cell.failed ? "" : ll::format_double(cell.validation_hamming))
        << ',' << (cell.failed ? 1 : 0) << '\n';
  }

  std::cout << "best: alpha=" << result.best.alpha
            << " beta=" << result.best.beta << " k=" << result.best.k << "\n";
  return kExitOk;
}

int cmd_synth(const json& doc, const Overrides& over) {
  const auto out_dir = resolve_out_dir(doc, over);
  const std::uint64_t seed = resolve_seed(doc, over);
  const json synth_cfg = section(doc, "synth");

  ll::SyntheticSpec spec;
  spec.n_samples = get_or(synth_cfg, "n_samples", spec.n_samples);
  spec.k_true = get_or(synth_cfg, "k_true", spec.k_true);
  spec.c = get_or(synth_cfg, "c", spec.c);
  spec.modality_dims = get_or(synth_cfg, "modality_dims", spec.modality_dims);
  spec.v_sparsity = get_or(synth_cfg, "v_sparsity", spec.v_sparsity);
  spec.noise_sd = get_or(synth_cfg, "noise_sd", spec.noise_sd);
  spec.label_threshold =
      get_or(synth_cfg, "label_threshold", spec.label_threshold);
  spec.seed = seed;

  const ll::SyntheticData data = ll::generate_synthetic(spec);

  const auto write_block = [&](const std::string& name,
                               const Eigen::MatrixXd& values,
                               const std::string& prefix) {
    ll::CsvTable table;
    table.header.push_back("sample_id");
    for (Eigen::Index j = 0; j < values.cols(); ++j) {
      table.header.push_back(prefix + std::to_string(j));
    }
    table.ids = data.view.sample_ids;
    table.values = values;
    ll::write_csv((out_dir / name).string(), table);
  };

  if (data.view.modalities.size() == 2) {
    write_block("motor.csv", data.view.modalities[0].values, "m");
    write_block("nonmotor.csv", data.view.modalities[1].values, "nm");
  } else {
    for (std::size_t i = 0; i < data.view.modalities.size(); ++i) {
      write_block("features_" + std::to_string(i) + ".csv",
                  data.view.modalities[i].values, "f");
    }
  }
  write_block("labels.csv", data.labels.values, "drug_");

  ll::save_model(ll::make_model_file(data.planted, data.view),
                 (out_dir / "planted_model.json").string());

  json meta;
  meta["seed"] = seed;
  meta["n_samples"] = spec.n_samples;
  meta["k_true"] = spec.k_true;
  meta["c"] = spec.c;
  meta["modality_dims"] = spec.modality_dims;
  meta["v_sparsity"] = spec.v_sparsity;
  meta["noise_sd"] = spec.noise_sd;
  meta["label_threshold"] = spec.label_threshold;
  meta["label_density"] =
      data.labels.values.sum() /
      static_cast<double>(data.labels.values.size());
  std::ofstream out(out_dir / "synth_meta.json", std::ios::binary);
  out << meta.dump(2) << '\n';

  std::cout << "synthetic dataset written to " << out_dir.string() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"latentlabel: multi-modal multi-label prescription model"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  std::string config_path;
  Overrides over;
  app.add_option("--config", config_path, "JSON config file")
      ->check(CLI::ExistingFile);

  std::uint64_t seed_flag = 0;
  std::string out_dir_flag;
  double alpha_flag = 0, beta_flag = 0;
  Eigen::Index k_flag = 0, folds_flag = 0, repeats_flag = 0;
  auto* seed_opt = app.add_option("--seed", seed_flag, "Seed override");
  auto* out_opt = app.add_option("--out-dir", out_dir_flag, "Output directory");
  auto* alpha_opt = app.add_option("--alpha", alpha_flag, "Alpha override");
  auto* beta_opt = app.add_option("--beta", beta_flag, "Beta override");
  auto* k_opt = app.add_option("--k", k_flag, "Latent dimension override");
  auto* folds_opt = app.add_option("--folds", folds_flag, "CV folds override");
  auto* repeats_opt =
      app.add_option("--repeats", repeats_flag, "CV repeats override");

  auto* train = app.add_subcommand("train", "Fit a model and write model/trace JSON");
  auto* predict = app.add_subcommand("predict", "Score samples with a trained model");
  auto* cv = app.add_subcommand("cv", "Repeated k-fold cross-validation");
  auto* grid = app.add_subcommand("grid", "Hyperparameter grid search");
  auto* synth = app.add_subcommand("synth", "Generate a planted synthetic dataset");

  CLI11_PARSE(app, argc, argv);

  if (*seed_opt) over.seed = seed_flag;
  if (*out_opt) over.out_dir = out_dir_flag;
  if (*alpha_opt) over.alpha = alpha_flag;
  if (*beta_opt) over.beta = beta_flag;
  if (*k_opt) over.k = k_flag;
  if (*folds_opt) over.folds = folds_flag;
  if (*repeats_opt) over.repeats = repeats_flag;

  try {
    const json doc = load_config(config_path);
    if (*train) return cmd_train(doc, over);
    if (*predict) return cmd_predict(doc, over);
    if (*cv) return cmd_cv(doc, over);
    if (*grid) return cmd_grid(doc, over);
    if (*synth) return cmd_synth(doc, over);
  } catch (const ll::SolverError& e) {
    std::cerr << "latentlabel: solver failure: " << e.what() << "\n";
    return kExitSolver;
  } catch (const ll::Error& e) {
    std::cerr << "latentlabel: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "latentlabel: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitOk;
}
