#pragma once

#include <Eigen/Dense>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "recip/baselines.hpp"
#include "recip/dprr.hpp"
#include "recip/features.hpp"

namespace recip {

// Versioned key-value model file shared by every learned model kind.
// Numbers round-trip exactly.
struct ModelFile {
  std::string kind;  // "dprr", "pd", "ridge", "lasso"
  Eigen::VectorXd w;
  std::optional<Standardization> scaler;
  std::vector<std::pair<std::string, Eigen::VectorXd>> weber_points;  // sorted by target
  std::map<std::string, std::string> params;  // config echo + diagnostics
};

void save_model(const std::string& path, const ModelFile& m);
ModelFile load_model(const std::string& path);

ModelFile to_model_file(const DprrModel& model);
ModelFile to_model_file(const RidgeModel& model, const std::optional<Standardization>& scaler);
ModelFile to_model_file(const LassoModel& model, const std::optional<Standardization>& scaler);

// Rebuilds the prediction-relevant parts of a DPRR/PD model.
DprrModel dprr_from_model_file(const ModelFile& m);

}  // namespace recip
