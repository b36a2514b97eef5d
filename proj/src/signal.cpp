#include "qmyo/signal.hpp"

#include "csv.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <string>

namespace qmyo {

std::string_view to_string(Dof d) {
  switch (d) {
    case Dof::D1: return "D1";
    case Dof::D2: return "D2";
    case Dof::D3: return "D3";
  }
  return "?";
}

std::string_view to_string(Direction d) {
  switch (d) {
    case Direction::Positive: return "positive";
    case Direction::Negative: return "negative";
    case Direction::Rest: return "rest";
  }
  return "?";
}

std::string_view to_string(MovementPhase p) {
  return p == MovementPhase::Direct ? "direct" : "return";
}

static std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

Dof parse_dof(std::string_view text) {
  const std::string t = lower(detail::trim(text));
  if (t == "d1" || t == "1") return Dof::D1;
  if (t == "d2" || t == "2") return Dof::D2;
  if (t == "d3" || t == "3") return Dof::D3;
  throw ParseError("unknown DOF '" + std::string(text) + "'");
}

MovementPhase parse_phase(std::string_view text) {
  const std::string t = lower(detail::trim(text));
  if (t == "direct" || t == "d" || t.empty()) return MovementPhase::Direct;
  if (t == "return" || t == "r") return MovementPhase::Return;
  throw ParseError("unknown movement phase '" + std::string(text) + "'");
}

std::string_view to_string(FeatureKind k) {
  switch (k) {
    case FeatureKind::MAV: return "MAV";
    case FeatureKind::ZC: return "ZC";
    case FeatureKind::SSC: return "SSC";
    case FeatureKind::WL: return "WL";
  }
  return "?";
}

FeatureKind parse_feature_kind(std::string_view text) {
  const std::string t = lower(detail::trim(text));
  if (t == "mav") return FeatureKind::MAV;
  if (t == "zc") return FeatureKind::ZC;
  if (t == "ssc") return FeatureKind::SSC;
  if (t == "wl") return FeatureKind::WL;
  throw ParseError("unknown feature kind '" + std::string(text) + "'");
}

EmgRecording::EmgRecording(MatXd samples_, double sample_rate_)
    : samples(std::move(samples_)), sample_rate(sample_rate_) {
  if (!(sample_rate > 0.0)) throw std::invalid_argument("EmgRecording: sample_rate must be > 0");
  if (samples.cols() < 1) throw std::invalid_argument("EmgRecording: need at least one channel");
}

Eigen::Index rows_for_duration(double duration_ms, double sample_rate) {
  // tolerate representation error in products like 0.1 * 1024 that should land on an integer
  const double exact = duration_ms * sample_rate / 1000.0;
  return static_cast<Eigen::Index>(std::floor(exact * (1.0 + 1e-12)));
}

std::vector<MatXd> segment_windows(const EmgRecording& rec, double window_ms, double step_ms) {
  if (!(window_ms > 0.0) || !(step_ms > 0.0)) {
    throw std::invalid_argument("segment_windows: window and step must be > 0");
  }
  const Eigen::Index win = rows_for_duration(window_ms, rec.sample_rate);
  const Eigen::Index step = rows_for_duration(step_ms, rec.sample_rate);
  if (win < 2) throw InsufficientSamplesError("segment_windows: window spans fewer than 2 samples");
  if (step < 1) throw InsufficientSamplesError("segment_windows: step spans no samples");
  if (rec.n_samples() < win) {
    throw EmptyInputError("segment_windows: recording of " + std::to_string(rec.n_samples()) +
                          " samples is shorter than one window of " + std::to_string(win));
  }
  const Eigen::Index count = (rec.n_samples() - win) / step + 1;
  std::vector<MatXd> out;
  out.reserve(static_cast<std::size_t>(count));
  for (Eigen::Index k = 0; k < count; ++k) {
    out.emplace_back(rec.samples.middleRows(k * step, win));
  }
  return out;
}

FeatureVector extract_feature(const MatXd& window, FeatureKind kind, double deadband) {
  switch (kind) {
    case FeatureKind::MAV: return mav(window);
    case FeatureKind::ZC: return zero_crossings(window, deadband);
    case FeatureKind::SSC: return slope_sign_changes(window, deadband);
    case FeatureKind::WL: return waveform_length(window);
  }
  throw std::invalid_argument("extract_feature: unknown kind");
}

EmgRecording read_emg_csv(const std::filesystem::path& path, double sample_rate) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  std::string line;
  std::size_t line_no = 0;
  Eigen::Index n_channels = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::is_blank(line)) continue;
    for (auto f : detail::split_fields(line)) {
      const std::string name = lower(f);
      if (name.rfind("ch", 0) != 0) {
        throw SchemaError(path.string() + ":" + std::to_string(line_no) +
                          ": expected header of ch1..chN, got '" + std::string(f) + "'");
      }
      ++n_channels;
    }
    break;
  }
  if (n_channels == 0) throw SchemaError(path.string() + ": missing header row");

  std::vector<double> values;
  Eigen::Index rows = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::is_blank(line)) continue;
    const auto fields = detail::split_fields(line);
    if (static_cast<Eigen::Index>(fields.size()) != n_channels) {
      throw SchemaError(path.string() + ":" + std::to_string(line_no) + ": expected " +
                        std::to_string(n_channels) + " values, got " +
                        std::to_string(fields.size()));
    }
    for (auto f : fields) {
      auto v = detail::parse_double(f);
      if (!v) {
        throw ParseError(path.string() + ":" + std::to_string(line_no) + ": bad number '" +
                         std::string(f) + "'");
      }
      values.push_back(*v);
    }
    ++rows;
  }
  MatXd samples = Eigen::Map<Eigen::Matrix<double, DYN, DYN, Eigen::RowMajor>>(
      values.data(), rows, n_channels);
  return EmgRecording(std::move(samples), sample_rate);
}

void write_emg_csv(const std::filesystem::path& path, const EmgRecording& rec) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  for (Eigen::Index c = 0; c < rec.n_channels(); ++c) {
    out << (c ? "," : "") << "ch" << (c + 1);
  }
  out << '\n';
  std::ostringstream row;
  row.precision(17);
  for (Eigen::Index t = 0; t < rec.n_samples(); ++t) {
    row.str("");
    for (Eigen::Index c = 0; c < rec.n_channels(); ++c) {
      row << (c ? "," : "") << rec.samples(t, c);
    }
    out << row.str() << '\n';
  }
}

}  // namespace qmyo
