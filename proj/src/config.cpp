#include "qmyo/config.hpp"

#include "csv.hpp"
#include "qmyo/dataset.hpp"

#include <fstream>
#include <sstream>

namespace qmyo {

void ExperimentConfig::validate() const {
  if (!(window_ms > 0.0)) throw ConfigError("config: window_ms must be > 0");
  if (!(sample_rate > 0.0)) throw ConfigError("config: sample_rate must be > 0");
  if (!(deadband >= 0.0)) throw ConfigError("config: deadband must be >= 0");
  if (!(decode.rest_threshold >= 0.0)) throw ConfigError("config: rest_threshold must be >= 0");
  if (!(decode.overlap_epsilon >= 0.0)) throw ConfigError("config: overlap_epsilon must be >= 0");
  if (!(noise_sigma >= 0.0)) throw ConfigError("config: noise_sigma must be >= 0");
  if (!(angle_min > 0.0) || !(angle_max > angle_min)) {
    throw ConfigError("config: need 0 < angle_min < angle_max");
  }
  if (dofs.empty()) throw ConfigError("config: no DOFs selected");
  for (std::size_t s : training_sizes) {
    if (s == 0) throw ConfigError("config: training sizes must be positive");
  }
}

namespace {

double to_double(const std::string& key, std::string_view value) {
  auto v = detail::parse_double(detail::trim(value));
  if (!v) throw ConfigError("config: " + key + " expects a number, got '" + std::string(value) + "'");
  return *v;
}

std::size_t to_count(const std::string& key, std::string_view value) {
  auto v = detail::parse_int(detail::trim(value));
  if (!v || *v < 0) {
    throw ConfigError("config: " + key + " expects a non-negative integer, got '" +
                      std::string(value) + "'");
  }
  return static_cast<std::size_t>(*v);
}

bool to_bool(const std::string& key, std::string_view value) {
  const auto v = detail::trim(value);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("config: " + key + " expects true/false, got '" + std::string(value) + "'");
}

}  // namespace

void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
  try {
    if (key == "window_ms") {
      cfg.window_ms = to_double(key, value);
    } else if (key == "sample_rate") {
      cfg.sample_rate = to_double(key, value);
    } else if (key == "deadband") {
      cfg.deadband = to_double(key, value);
    } else if (key == "rest_threshold") {
      cfg.decode.rest_threshold = to_double(key, value);
    } else if (key == "overlap_epsilon") {
      cfg.decode.overlap_epsilon = to_double(key, value);
    } else if (key == "clamp_angles") {
      cfg.decode.clamp_angles = to_bool(key, value);
    } else if (key == "block_rule") {
      cfg.block_rule = parse_block_rule(detail::trim(value));
    } else if (key == "training_sizes") {
      cfg.training_sizes.clear();
      for (auto f : detail::split_fields(value)) cfg.training_sizes.push_back(to_count(key, f));
    } else if (key == "seed") {
      cfg.seed = to_count(key, value);
    } else if (key == "dofs") {
      cfg.dofs.clear();
      for (auto f : detail::split_fields(value)) cfg.dofs.push_back(parse_dof(f));
    } else if (key == "noise_sigma") {
      cfg.noise_sigma = to_double(key, value);
    } else if (key == "angle_min") {
      cfg.angle_min = to_double(key, value);
    } else if (key == "angle_max") {
      cfg.angle_max = to_double(key, value);
    } else {
      throw ConfigError("config: unknown key '" + key + "'");
    }
  } catch (const ParseError& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

void apply_config_file(ExperimentConfig& cfg, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (detail::is_blank(line)) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key(detail::trim(std::string_view(line).substr(0, eq)));
    const std::string value(detail::trim(std::string_view(line).substr(eq + 1)));
    try {
      apply_setting(cfg, key, value);
    } catch (const ConfigError& e) {
      throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
}

std::string to_config_text(const ExperimentConfig& cfg) {
  std::ostringstream os;
  auto list = [&os](const auto& items, auto&& fmt) {
    for (std::size_t i = 0; i < items.size(); ++i) os << (i ? "," : "") << fmt(items[i]);
  };
  os << "window_ms = " << format_number(cfg.window_ms) << '\n'
     << "sample_rate = " << format_number(cfg.sample_rate) << '\n'
     << "deadband = " << format_number(cfg.deadband) << '\n'
     << "rest_threshold = " << format_number(cfg.decode.rest_threshold) << '\n'
     << "overlap_epsilon = " << format_number(cfg.decode.overlap_epsilon) << '\n'
     << "clamp_angles = " << (cfg.decode.clamp_angles ? "true" : "false") << '\n'
     << "block_rule = " << to_string(cfg.block_rule) << '\n'
     << "training_sizes = ";
  list(cfg.training_sizes, [](std::size_t s) { return std::to_string(s); });
  os << "\nseed = " << cfg.seed << "\ndofs = ";
  list(cfg.dofs, [](Dof d) { return std::string(to_string(d)); });
  os << "\nnoise_sigma = " << format_number(cfg.noise_sigma) << '\n'
     << "angle_min = " << format_number(cfg.angle_min) << '\n'
     << "angle_max = " << format_number(cfg.angle_max) << '\n';
  return os.str();
}

std::string config_hash(const ExperimentConfig& cfg) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : to_config_text(cfg)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = kHex[h & 0xF];
  return out;
}

}  // namespace qmyo
