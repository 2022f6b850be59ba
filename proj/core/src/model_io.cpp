#include "latentlabel/model_io.hpp"

#include <fstream>
#include <json.hpp>

#include "latentlabel/errors.hpp"

namespace latentlabel {

namespace {

using nlohmann::json;

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const json& rows, const std::string& name) {
  if (!rows.is_array()) throw InputError(name + ": expected an array of rows");
  const Eigen::Index r = static_cast<Eigen::Index>(rows.size());
  Eigen::Index c = 0;
  if (r > 0) {
    if (!rows[0].is_array()) throw InputError(name + ": rows must be arrays");
    c = static_cast<Eigen::Index>(rows[0].size());
  }
  Eigen::MatrixXd m(r, c);
  for (Eigen::Index i = 0; i < r; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    if (static_cast<Eigen::Index>(row.size()) != c) {
      throw InputError(name + ": ragged rows at row " + std::to_string(i));
    }
    for (Eigen::Index j = 0; j < c; ++j) {
      m(i, j) = row[static_cast<std::size_t>(j)].get<double>();
    }
  }
  return m;
}

}  // namespace

std::string model_to_json(const ModelFile& model) {
  json doc;
  doc["alpha"] = model.state.alpha;
  doc["beta"] = model.state.beta;
  doc["k"] = model.state.k;
  json u_list = json::array();
  for (const auto& u : model.state.U) u_list.push_back(matrix_to_json(u));
  doc["U"] = std::move(u_list);
  doc["P"] = matrix_to_json(model.state.P);
  doc["V"] = matrix_to_json(model.state.V);
  doc["modality_dims"] = model.modality_dims;
  doc["anchor_ids"] = model.anchor_ids;
  return doc.dump(2);
}

ModelFile model_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(std::string("model JSON parse error: ") + e.what());
  }
  ModelFile model;
  try {
    model.state.alpha = doc.at("alpha").get<double>();
    model.state.beta = doc.at("beta").get<double>();
    model.state.k = doc.at("k").get<Eigen::Index>();
    for (std::size_t i = 0; i < doc.at("U").size(); ++i) {
      model.state.U.push_back(
          matrix_from_json(doc.at("U")[i], "U[" + std::to_string(i) + "]"));
    }
    model.state.P = matrix_from_json(doc.at("P"), "P");
    model.state.V = matrix_from_json(doc.at("V"), "V");
    model.modality_dims =
        doc.at("modality_dims").get<std::vector<Eigen::Index>>();
    model.anchor_ids =
        doc.at("anchor_ids").get<std::vector<std::vector<std::string>>>();
  } catch (const json::exception& e) {
    throw InputError(std::string("model JSON schema error: ") + e.what());
  }
  if (model.modality_dims.size() != model.state.U.size() ||
      model.anchor_ids.size() != model.state.U.size()) {
    throw DimensionMismatch(
        "model JSON: U, modality_dims and anchor_ids must have equal length");
  }
  for (std::size_t i = 0; i < model.state.U.size(); ++i) {
    if (model.state.U[i].rows() != model.modality_dims[i] ||
        model.state.U[i].cols() != model.state.k) {
      throw DimensionMismatch("model JSON: U[" + std::to_string(i) +
                              "] shape disagrees with modality_dims/k");
    }
  }
  if (model.state.P.cols() != model.state.k ||
      model.state.V.rows() != model.state.k) {
    throw DimensionMismatch("model JSON: P/V shapes disagree with k");
  }
  return model;
}

void save_model(const ModelFile& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open " + path + " for writing");
  out << model_to_json(model) << '\n';
  if (!out) throw InputError("write failed: " + path);
}

ModelFile load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return model_from_json(text);
}

ModelFile make_model_file(const ModelState& state, const MultiModalView& view) {
  ModelFile model;
  model.state = state;
  for (const auto& mod : view.modalities) {
    model.modality_dims.push_back(mod.cols());
    model.anchor_ids.push_back(mod.kind == ModalityKind::Kernel
                                   ? mod.anchor_ids
                                   : std::vector<std::string>{});
  }
  return model;
}

}  // namespace latentlabel
