#include "horizonkit/series_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <vector>

#include "text_util.hpp"

namespace horizonkit {

namespace {

using detail::split;
using detail::trim;

std::string line_tag(long line_no) {
  return "line " + std::to_string(line_no) + ": ";
}

std::ofstream open_for_write(const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw FileError("cannot open '" + path + "' for writing");
  }
  return out;
}

void finish_write(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) {
    throw FileError("failed while writing '" + path + "'");
  }
}

double parse_finite(std::string_view field, long line_no) {
  double v = 0.0;
  if (!detail::parse_double(field, v)) {
    throw FormatError(line_tag(line_no) + "cannot parse value '" +
                      std::string(field) + "'");
  }
  if (!std::isfinite(v)) {
    throw FormatError(line_tag(line_no) + "non-finite value '" +
                      std::string(field) + "'");
  }
  return v;
}

}  // namespace

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

Trajectory read_series_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw FileError("cannot open '" + path + "'");
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw FormatError("line 1: empty file, expected header t,<name>,...");
  }
  long line_no = 1;
  const auto header = split(trim(line), ',');
  if (header.size() < 2 || trim(header[0]) != "t") {
    throw FormatError("line 1: header must be t,<name1>,...,<nameN>");
  }
  Trajectory traj;
  for (std::size_t j = 1; j < header.size(); ++j) {
    traj.names.emplace_back(trim(header[j]));
  }
  const std::size_t n = traj.names.size();

  std::vector<std::vector<double>> rows;
  long prev_t = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view text = trim(line);
    if (text.empty()) continue;  // tolerate blank/trailing lines
    const auto fields = split(text, ',');
    if (fields.size() != n + 1) {
      throw FormatError(line_tag(line_no) + "expected " +
                        std::to_string(n + 1) + " fields, got " +
                        std::to_string(fields.size()));
    }
    long t = 0;
    if (!detail::parse_long(fields[0], t)) {
      throw FormatError(line_tag(line_no) + "cannot parse time label '" +
                        std::string(fields[0]) + "'");
    }
    if (rows.empty()) {
      traj.t0 = t;
    } else if (t != prev_t + 1) {
      throw NonContiguousTime(line_tag(line_no) + "t = " + std::to_string(t) +
                              ", expected " + std::to_string(prev_t + 1));
    }
    prev_t = t;
    std::vector<double> row(n);
    for (std::size_t j = 0; j < n; ++j) {
      row[j] = parse_finite(fields[j + 1], line_no);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) {
    throw FormatError("no data rows in '" + path + "'");
  }
  traj.data.resize(static_cast<long>(rows.size()), static_cast<long>(n));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t j = 0; j < n; ++j) {
      traj.data(static_cast<long>(r), static_cast<long>(j)) = rows[r][j];
    }
  }
  return traj;
}

void write_series_csv(const Trajectory& traj, const std::string& path) {
  std::ofstream out = open_for_write(path);
  out << "t";
  for (int i = 0; i < traj.dims(); ++i) {
    const std::string name = i < static_cast<int>(traj.names.size())
                                 ? traj.names[static_cast<std::size_t>(i)]
                                 : "x" + std::to_string(i);
    out << ',' << name;
  }
  out << '\n';
  for (long r = 0; r < traj.length(); ++r) {
    out << (traj.t0 + r);
    for (int i = 0; i < traj.dims(); ++i) {
      out << ',' << format_value(traj.data(r, i));
    }
    out << '\n';
  }
  finish_write(out, path);
}

void write_indicator_csv(const DepthTimeMatrix& matrix,
                         const std::string& path) {
  std::ofstream out = open_for_write(path);
  out << "k,t,W,W_plus,W_minus,n_valid\n";
  for (const DepthRow& row : matrix.rows) {
    for (const IndicatorDecomposition& cell : row.cells) {
      out << row.depth << ',' << cell.t << ',' << format_value(cell.w_total)
          << ',' << format_value(cell.w_plus) << ','
          << format_value(cell.w_minus) << ',' << cell.n_valid << '\n';
    }
  }
  finish_write(out, path);
}

void write_relative_csv(const DepthTimeMatrix& matrix,
                        const std::string& path) {
  std::ofstream out = open_for_write(path);
  out << "k,t,W_rel,degenerate\n";
  for (const DepthRow& row : matrix.rows) {
    if (row.cells.empty()) continue;
    std::vector<double> values;
    values.reserve(row.cells.size());
    for (const IndicatorDecomposition& cell : row.cells) {
      values.push_back(cell.w_total);
    }
    bool degenerate = false;
    try {
      values = relative_to_base(values, 0);
    } catch (const DegenerateBase&) {
      degenerate = true;  // emit the raw row, flagged
    }
    for (std::size_t c = 0; c < row.cells.size(); ++c) {
      out << row.depth << ',' << row.cells[c].t << ','
          << format_value(values[c]) << ',' << (degenerate ? 1 : 0) << '\n';
    }
  }
  finish_write(out, path);
}

void write_summary_csv(const DepthSummary& summary, const std::string& path) {
  std::ofstream out = open_for_write(path);
  out << "k,W\n";
  for (std::size_t j = 0; j < summary.depths.size(); ++j) {
    out << summary.depths[j] << ',' << format_value(summary.totals[j]) << '\n';
  }
  finish_write(out, path);
}

DepthSummary read_depth_summary(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw FileError("cannot open '" + path + "'");
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw FormatError("line 1: empty file");
  }
  const std::string_view header = trim(line);
  const bool is_summary = header == "k,W";
  const bool is_indicator = header == "k,t,W,W_plus,W_minus,n_valid";
  if (!is_summary && !is_indicator) {
    throw FormatError(
        "line 1: expected header 'k,W' or 'k,t,W,W_plus,W_minus,n_valid'");
  }
  DepthSummary summary;
  long line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view text = trim(line);
    if (text.empty()) continue;
    const auto fields = split(text, ',');
    const std::size_t expected = is_summary ? 2 : 6;
    if (fields.size() != expected) {
      throw FormatError(line_tag(line_no) + "expected " +
                        std::to_string(expected) + " fields, got " +
                        std::to_string(fields.size()));
    }
    int k = 0;
    if (!detail::parse_int(fields[0], k)) {
      throw FormatError(line_tag(line_no) + "cannot parse depth '" +
                        std::string(fields[0]) + "'");
    }
    const double w = parse_finite(fields[is_summary ? 1 : 2], line_no);
    if (!summary.depths.empty() && summary.depths.back() == k) {
      summary.totals.back() += w;  // indicator rows accumulate over t
    } else {
      summary.depths.push_back(k);
      summary.totals.push_back(w);
    }
  }
  if (summary.depths.empty()) {
    throw FormatError("no data rows in '" + path + "'");
  }
  return summary;
}

}  // namespace horizonkit
