#include "horizonkit/config_io.hpp"

#include <fstream>

#include "horizonkit/series_io.hpp"
#include "text_util.hpp"

namespace horizonkit {

namespace {

using detail::split;
using detail::trim;

[[noreturn]] void bad_value(long line_no, std::string_view key,
                            std::string_view value) {
  throw ConfigInvalid("line " + std::to_string(line_no) +
                      ": cannot parse value '" + std::string(value) +
                      "' for key '" + std::string(key) + "'");
}

}  // namespace

ScenarioConfig read_scenario_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw FileError("cannot open '" + path + "'");
  }
  ScenarioConfig config;
  std::string line;
  long line_no = 0;
  std::string section = "scenario";  // keys before any header default here
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string_view text = trim(line);
    if (text.empty()) continue;
    if (text.front() == '[') {
      if (text.back() != ']') {
        throw ConfigInvalid("line " + std::to_string(line_no) +
                            ": malformed section header");
      }
      section = std::string(trim(text.substr(1, text.size() - 2)));
      if (section != "scenario") {
        throw ConfigInvalid("line " + std::to_string(line_no) +
                            ": unknown section '" + section + "'");
      }
      continue;
    }
    const std::size_t eq = text.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigInvalid("line " + std::to_string(line_no) +
                          ": expected key = value");
    }
    const std::string_view key = trim(text.substr(0, eq));
    const std::string_view value = trim(text.substr(eq + 1));

    if (key == "n_params") {
      if (!detail::parse_int(value, config.n_params)) bad_value(line_no, key, value);
    } else if (key == "T") {
      if (!detail::parse_long(value, config.T)) bad_value(line_no, key, value);
    } else if (key == "seasonal_period") {
      if (!detail::parse_int(value, config.seasonal_period)) bad_value(line_no, key, value);
    } else if (key == "shipping_window") {
      std::vector<int> months;
      if (!value.empty()) {
        for (const auto& field : split(value, ',')) {
          int m = 0;
          if (!detail::parse_int(field, m)) bad_value(line_no, key, value);
          months.push_back(m);
        }
      }
      config.shipping_window = std::move(months);
    } else if (key == "doubling_period") {
      if (!detail::parse_long(value, config.doubling_period)) bad_value(line_no, key, value);
    } else if (key == "external_factor") {
      if (!detail::parse_double(value, config.external_factor)) bad_value(line_no, key, value);
    } else if (key == "fine_period") {
      if (!detail::parse_int(value, config.fine_period)) bad_value(line_no, key, value);
    } else if (key == "fine_magnitude") {
      if (!detail::parse_double(value, config.fine_magnitude)) bad_value(line_no, key, value);
    } else if (key == "noise_sigma") {
      if (!detail::parse_double(value, config.noise_sigma)) bad_value(line_no, key, value);
    } else if (key == "seed") {
      if (!detail::parse_uint64(value, config.seed)) bad_value(line_no, key, value);
    } else {
      throw ConfigInvalid("line " + std::to_string(line_no) +
                          ": unknown key '" + std::string(key) + "'");
    }
  }
  return config;
}

void write_scenario_config(const ScenarioConfig& config,
                           const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw FileError("cannot open '" + path + "' for writing");
  }
  out << "[scenario]\n";
  out << "n_params = " << config.n_params << '\n';
  out << "T = " << config.T << '\n';
  out << "seasonal_period = " << config.seasonal_period << '\n';
  out << "shipping_window = ";
  for (std::size_t j = 0; j < config.shipping_window.size(); ++j) {
    if (j > 0) out << ',';
    out << config.shipping_window[j];
  }
  out << '\n';
  out << "doubling_period = " << config.doubling_period << '\n';
  out << "external_factor = " << format_value(config.external_factor) << '\n';
  out << "fine_period = " << config.fine_period << '\n';
  out << "fine_magnitude = " << format_value(config.fine_magnitude) << '\n';
  out << "noise_sigma = " << format_value(config.noise_sigma) << '\n';
  out << "seed = " << config.seed << '\n';
  out.flush();
  if (!out) {
    throw FileError("failed while writing '" + path + "'");
  }
}

}  // namespace horizonkit
