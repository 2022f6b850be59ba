#pragma once

#include <string>
#include <vector>

#include "latentlabel/data_model.hpp"

namespace latentlabel {

// On-disk form of a fitted model. anchor_ids has one entry per modality
// (empty list for raw-feature modalities) so kernel views can be rebuilt
// against the same anchors at prediction time.
struct ModelFile {
  ModelState state;
  std::vector<Eigen::Index> modality_dims;
  std::vector<std::vector<std::string>> anchor_ids;
};

// JSON document {alpha, beta, k, U, P, V, modality_dims, anchor_ids};
// matrices are arrays of row arrays, numbers round-trip bit-identically.
std::string model_to_json(const ModelFile& model);
ModelFile model_from_json(const std::string& text);

void save_model(const ModelFile& model, const std::string& path);
ModelFile load_model(const std::string& path);

ModelFile make_model_file(const ModelState& state, const MultiModalView& view);

}  // namespace latentlabel
