#pragma once

#include "qmyo/learn.hpp"

#include <filesystem>
#include <string>

namespace qmyo {

inline constexpr int kModelFormatVersion = 1;

/// JSON document: version, n_channels, decode config and, per DOF, both
/// prototypes, the three operators (row-major), angle maxima and overlap.
std::string model_to_json(const ControllerModel& model);
ControllerModel model_from_json(const std::string& text);

void save_model(const std::filesystem::path& path, const ControllerModel& model);
ControllerModel load_model(const std::filesystem::path& path);

}  // namespace qmyo
