#include "qmyo/dataset.hpp"

#include "csv.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace qmyo {

std::string format_number(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc{}) throw std::runtime_error("format_number: conversion failed");
  return std::string(buf.data(), ptr);
}

std::size_t FeatureDataset::count(MovementPhase p) const {
  std::size_t n = 0;
  for (const auto& r : rows) n += r.phase == p ? 1 : 0;
  return n;
}

namespace {

enum class Column { Channel, Angle, Phase, Block };

struct ColumnSpec {
  Column kind;
  std::size_t index = 0;
};

std::string where(const std::string& source, std::size_t line_no) {
  return source + ":" + std::to_string(line_no);
}

}  // namespace

FeatureDataset read_feature_dataset(std::istream& is, const std::string& source) {
  FeatureDataset ds;
  ds.source = source;
  std::string line;
  std::size_t line_no = 0;
  std::vector<ColumnSpec> columns;

  while (std::getline(is, line)) {
    ++line_no;
    if (detail::is_blank(line)) continue;
    std::array<bool, kMaxDofs> seen_angle{};
    bool seen_phase = false;
    bool seen_block = false;
    for (auto name : detail::split_fields(line)) {
      if (name.size() > 2 && name.substr(0, 2) == "ch") {
        auto k = detail::parse_int(name.substr(2));
        if (!k || *k != ds.n_channels + 1) {
          throw SchemaError(where(source, line_no) + ": channel columns must be ch1..chN in order, got '" +
                            std::string(name) + "'");
        }
        columns.push_back({Column::Channel, static_cast<std::size_t>(ds.n_channels++)});
      } else if (name == "d1_angle" || name == "d2_angle" || name == "d3_angle") {
        const std::size_t k = static_cast<std::size_t>(name[1] - '1');
        if (seen_angle[k]) throw SchemaError(where(source, line_no) + ": duplicate " + std::string(name));
        seen_angle[k] = true;
        columns.push_back({Column::Angle, k});
      } else if (name == "phase" && !seen_phase) {
        seen_phase = true;
        columns.push_back({Column::Phase});
      } else if (name == "block" && !seen_block) {
        seen_block = true;
        columns.push_back({Column::Block});
      } else {
        throw SchemaError(where(source, line_no) + ": unexpected column '" + std::string(name) + "'");
      }
    }
    break;
  }
  if (columns.empty()) throw SchemaError(source + ": missing header row");
  if (ds.n_channels == 0) throw SchemaError(source + ": header has no channel columns");

  std::set<int> finished_blocks;
  while (std::getline(is, line)) {
    ++line_no;
    if (detail::is_blank(line)) continue;
    const auto fields = detail::split_fields(line);
    if (fields.size() != columns.size()) {
      throw SchemaError(where(source, line_no) + ": expected " + std::to_string(columns.size()) +
                        " fields, got " + std::to_string(fields.size()));
    }
    DatasetRow row;
    row.features.resize(ds.n_channels);
    for (std::size_t i = 0; i < fields.size(); ++i) {
      const ColumnSpec& col = columns[i];
      if (col.kind == Column::Phase) {
        try {
          row.phase = parse_phase(fields[i]);
        } catch (const ParseError& e) {
          throw ParseError(where(source, line_no) + ": " + e.what());
        }
        continue;
      }
      if (col.kind == Column::Block) {
        auto b = detail::parse_int(fields[i]);
        if (!b) throw ParseError(where(source, line_no) + ": bad block id '" + std::string(fields[i]) + "'");
        row.block = static_cast<int>(*b);
        continue;
      }
      auto v = detail::parse_double(fields[i]);
      if (!v || !std::isfinite(*v)) {
        throw ParseError(where(source, line_no) + ": bad number '" + std::string(fields[i]) + "'");
      }
      if (col.kind == Column::Channel) {
        row.features(static_cast<Eigen::Index>(col.index)) = *v;
      } else {
        row.angles[col.index] = *v;
      }
    }
    if (!ds.rows.empty() && ds.rows.back().block != row.block) {
      finished_blocks.insert(ds.rows.back().block);
      if (finished_blocks.count(row.block)) {
        throw SchemaError(where(source, line_no) + ": block " + std::to_string(row.block) +
                          " is not a contiguous run");
      }
    }
    ds.rows.push_back(std::move(row));
  }
  if (ds.rows.empty()) ds.warnings.push_back(source + ": dataset has a header but no rows");
  return ds;
}

FeatureDataset load_feature_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  return read_feature_dataset(in, path.string());
}

void write_feature_dataset(std::ostream& os, const FeatureDataset& ds) {
  for (Eigen::Index c = 0; c < ds.n_channels; ++c) os << "ch" << (c + 1) << ',';
  os << "d1_angle,d2_angle,d3_angle,phase,block\n";
  for (const auto& row : ds.rows) {
    for (Eigen::Index c = 0; c < ds.n_channels; ++c) os << format_number(row.features(c)) << ',';
    for (double a : row.angles) os << format_number(a) << ',';
    os << to_string(row.phase) << ',' << row.block << '\n';
  }
}

void save_feature_dataset(const std::filesystem::path& path, const FeatureDataset& ds) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  write_feature_dataset(out, ds);
}

std::vector<TrainingSample> to_training_samples(const FeatureDataset& ds, std::size_t* rest_rows) {
  std::vector<TrainingSample> out;
  out.reserve(ds.rows.size());
  std::size_t rest = 0;
  for (std::size_t i = 0; i < ds.rows.size(); ++i) {
    const DatasetRow& row = ds.rows[i];
    int active = -1;
    for (std::size_t k = 0; k < kMaxDofs; ++k) {
      if (row.angles[k] == 0.0) continue;
      if (active >= 0) {
        throw DataError(ds.source + ": row " + std::to_string(i + 1) +
                        " activates several DOFs; training data must be single-DOF");
      }
      active = static_cast<int>(k);
    }
    if (active < 0) {
      ++rest;
      continue;
    }
    const double angle = row.angles[static_cast<std::size_t>(active)];
    out.push_back(TrainingSample{{row.features, ds.kind},
                                 static_cast<Dof>(active),
                                 direction_of(angle),
                                 std::abs(angle),
                                 row.phase});
  }
  if (rest_rows) *rest_rows = rest;
  return out;
}

FeatureDataset from_training_set(const TrainingSet& set, Eigen::Index n_channels) {
  FeatureDataset ds;
  ds.n_channels = n_channels;
  ds.source = "synthetic training set";
  int block = -1;
  std::pair<Dof, Direction> previous{Dof::D1, Direction::Rest};
  for (const auto& s : set.samples) {
    if (std::pair{s.dof, s.direction} != previous) {
      ++block;
      previous = {s.dof, s.direction};
    }
    DatasetRow row;
    row.features = s.features.values;
    row.angles[index_of(s.dof)] = static_cast<double>(static_cast<int>(s.direction)) * s.angle;
    row.phase = s.phase;
    row.block = block;
    ds.rows.push_back(std::move(row));
  }
  return ds;
}

FeatureDataset from_test_set(const TestSet& set, Eigen::Index n_channels) {
  FeatureDataset ds;
  ds.n_channels = n_channels;
  ds.source = "synthetic test scenario";
  ds.rows.reserve(set.features.size());
  for (std::size_t i = 0; i < set.features.size(); ++i) {
    DatasetRow row;
    row.features = set.features[i];
    for (std::size_t k = 0; k < kMaxDofs; ++k) {
      row.angles[k] = set.truth(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
    }
    row.block = set.block_ids[i];
    ds.rows.push_back(std::move(row));
  }
  return ds;
}

FeatureDataset features_from_recording(const EmgRecording& rec, double window_ms,
                                       double step_ms, FeatureKind kind, double deadband) {
  FeatureDataset ds;
  ds.n_channels = rec.n_channels();
  ds.kind = kind;
  ds.source = "recording";
  for (const MatXd& w : segment_windows(rec, window_ms, step_ms)) {
    DatasetRow row;
    row.features = extract_feature(w, kind, deadband).values;
    ds.rows.push_back(std::move(row));
  }
  return ds;
}

}  // namespace qmyo
