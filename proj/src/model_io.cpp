#include "qmyo/model_io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace qmyo {

using nlohmann::json;

namespace {

json matrix_rows(const MatXd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_values(const VecXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

MatXd read_matrix(const json& j, Eigen::Index n, const char* what) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != n) {
    throw SchemaError(std::string("model: ") + what + " must have " + std::to_string(n) + " rows");
  }
  MatXd m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
      throw SchemaError(std::string("model: ") + what + " row " + std::to_string(r) +
                        " must have " + std::to_string(n) + " entries");
    }
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = row[static_cast<std::size_t>(c)].get<double>();
  }
  return m;
}

QuantumState read_state(const json& j, Eigen::Index n, const char* what) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != n) {
    throw SchemaError(std::string("model: ") + what + " must have " + std::to_string(n) +
                      " amplitudes");
  }
  VecXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = j[static_cast<std::size_t>(i)].get<double>();
  return QuantumState::from_unit(std::move(v));
}

}  // namespace

std::string model_to_json(const ControllerModel& model) {
  json doc;
  doc["format"] = "qmyo-model";
  doc["version"] = kModelFormatVersion;
  doc["n_channels"] = model.n_channels;
  doc["decode_config"] = {{"rest_threshold", model.decode_config.rest_threshold},
                          {"overlap_epsilon", model.decode_config.overlap_epsilon},
                          {"clamp_angles", model.decode_config.clamp_angles}};
  json dofs = json::array();
  for (const auto& [dof, ops] : model.dofs) {
    dofs.push_back({{"dof", std::string(to_string(dof))},
                    {"proto_pos", vector_values(ops.proto_pos.amplitudes())},
                    {"proto_neg", vector_values(ops.proto_neg.amplitudes())},
                    {"p_pos", matrix_rows(ops.p_pos)},
                    {"p_neg", matrix_rows(ops.p_neg)},
                    {"p_zero", matrix_rows(ops.p_zero)},
                    {"theta_pos_max", ops.theta_pos_max},
                    {"theta_neg_max", ops.theta_neg_max},
                    {"overlap", ops.overlap}});
  }
  doc["dofs"] = std::move(dofs);
  return doc.dump(2) + "\n";
}

ControllerModel model_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("model: ") + e.what());
  }
  try {
    if (doc.value("format", "") != "qmyo-model") throw SchemaError("model: not a qmyo model file");
    const int version = doc.at("version").get<int>();
    if (version != kModelFormatVersion) {
      throw SchemaError("model: unsupported version " + std::to_string(version));
    }
    ControllerModel model;
    model.n_channels = doc.at("n_channels").get<Eigen::Index>();
    if (model.n_channels < 1) throw SchemaError("model: n_channels must be >= 1");
    const json& cfg = doc.at("decode_config");
    model.decode_config.rest_threshold = cfg.at("rest_threshold").get<double>();
    model.decode_config.overlap_epsilon = cfg.at("overlap_epsilon").get<double>();
    model.decode_config.clamp_angles = cfg.at("clamp_angles").get<bool>();

    const Eigen::Index n = model.n_channels;
    for (const json& entry : doc.at("dofs")) {
      DofOperators ops;
      const Dof dof = parse_dof(entry.at("dof").get<std::string>());
      ops.proto_pos = read_state(entry.at("proto_pos"), n, "proto_pos");
      ops.proto_neg = read_state(entry.at("proto_neg"), n, "proto_neg");
      ops.p_pos = read_matrix(entry.at("p_pos"), n, "p_pos");
      ops.p_neg = read_matrix(entry.at("p_neg"), n, "p_neg");
      ops.p_zero = read_matrix(entry.at("p_zero"), n, "p_zero");
      ops.theta_pos_max = entry.at("theta_pos_max").get<double>();
      ops.theta_neg_max = entry.at("theta_neg_max").get<double>();
      ops.overlap = entry.at("overlap").get<double>();
      if (!model.dofs.emplace(dof, std::move(ops)).second) {
        throw SchemaError("model: duplicate entry for " + std::string(to_string(dof)));
      }
    }
    return model;
  } catch (const json::exception& e) {
    throw SchemaError(std::string("model: ") + e.what());
  }
}

void save_model(const std::filesystem::path& path, const ControllerModel& model) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << model_to_json(model);
}

ControllerModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return model_from_json(ss.str());
}

}  // namespace qmyo
