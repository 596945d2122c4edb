#include "peanut/describe.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include <json.hpp>

#include "peanut/errors.hpp"

namespace peanut {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::string cell(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

nlohmann::json num_or_null(double v) {
  if (std::isnan(v)) return nullptr;
  return v;
}

}  // namespace

double quantile_linear(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) fail(Errc::empty_input, "quantile of empty sample");
  if (p <= 0.0) return sorted.front();
  if (p >= 1.0) return sorted.back();
  const double h = static_cast<double>(sorted.size() - 1) * p;
  const size_t lo = static_cast<size_t>(std::floor(h));
  const size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

DescriptiveStats descriptive_stats(const ObservationFrame& frame) {
  DescriptiveStats out;
  for (const auto& name : frame.column_names()) {
    ColumnStats cs;
    cs.name = name;
    std::vector<double> obs = frame.observed_values(name);
    cs.count = static_cast<int64_t>(obs.size());
    if (obs.empty()) {
      cs.mean = cs.std = cs.min = cs.p25 = cs.p50 = cs.p75 = cs.max = kNan;
      out.columns.push_back(std::move(cs));
      continue;
    }
    std::sort(obs.begin(), obs.end());
    double sum = 0.0;
    for (double v : obs) sum += v;
    cs.mean = sum / static_cast<double>(obs.size());
    if (obs.size() >= 2) {
      double ss = 0.0;
      for (double v : obs) ss += (v - cs.mean) * (v - cs.mean);
      cs.std = std::sqrt(ss / static_cast<double>(obs.size() - 1));
    } else {
      cs.std = kNan;
    }
    cs.min = obs.front();
    cs.max = obs.back();
    cs.p25 = quantile_linear(obs, 0.25);
    cs.p50 = quantile_linear(obs, 0.50);
    cs.p75 = quantile_linear(obs, 0.75);
    out.columns.push_back(std::move(cs));
  }
  return out;
}

MissingnessSummary missingness_summary(const ObservationFrame& frame) {
  MissingnessSummary out;
  out.rows = static_cast<int64_t>(frame.rows());
  for (const auto& name : frame.column_names()) {
    ColumnMissingness cm;
    cm.name = name;
    const auto& mask = frame.mask(name);
    cm.bitmap.assign(mask.begin(), mask.end());
    for (uint8_t b : mask) cm.observed += b ? 1 : 0;
    cm.missing = out.rows - cm.observed;
    cm.fraction = out.rows > 0 ? static_cast<double>(cm.missing) / static_cast<double>(out.rows)
                               : 0.0;
    out.columns.push_back(std::move(cm));
  }
  return out;
}

std::vector<std::pair<std::string, double>> scatter_export(const ObservationFrame& frame,
                                                           const std::string& column) {
  frame.column_index(column);
  const auto& mask = frame.mask(column);
  const auto& values = frame.values(column);
  std::vector<std::pair<std::string, double>> points;
  for (size_t i = 0; i < frame.rows(); ++i) {
    if (mask[i]) points.emplace_back(frame.dates()[i].iso(), values[i]);
  }
  return points;
}

std::string render_stats_table(const DescriptiveStats& stats) {
  const std::vector<std::string> labels = {"count", "mean", "std", "min",
                                           "25%",   "50%",  "75%", "max"};
  std::vector<std::vector<std::string>> grid;
  std::vector<std::string> head = {""};
  for (const auto& c : stats.columns) head.push_back(c.name);
  grid.push_back(head);
  for (size_t r = 0; r < labels.size(); ++r) {
    std::vector<std::string> row = {labels[r]};
    for (const auto& c : stats.columns) {
      double v = kNan;
      switch (r) {
        case 0: v = static_cast<double>(c.count); break;
        case 1: v = c.mean; break;
        case 2: v = c.std; break;
        case 3: v = c.min; break;
        case 4: v = c.p25; break;
        case 5: v = c.p50; break;
        case 6: v = c.p75; break;
        case 7: v = c.max; break;
      }
      row.push_back(cell(v));
    }
    grid.push_back(row);
  }

  std::vector<size_t> width(head.size(), 0);
  for (const auto& row : grid) {
    for (size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  std::string out;
  for (const auto& row : grid) {
    std::string line = row[0];
    line.append(width[0] - row[0].size(), ' ');
    for (size_t c = 1; c < row.size(); ++c) {
      line += "  ";
      line.append(width[c] - row[c].size(), ' ');
      line += row[c];
    }
    out += line;
    out += '\n';
  }
  return out;
}

std::string render_missingness_table(const MissingnessSummary& summary) {
  std::vector<std::vector<std::string>> grid;
  grid.push_back({"column", "observed", "missing", "fraction"});
  for (const auto& c : summary.columns) {
    char frac[32];
    std::snprintf(frac, sizeof(frac), "%.4f", c.fraction);
    grid.push_back({c.name, std::to_string(c.observed), std::to_string(c.missing), frac});
  }
  std::vector<size_t> width(4, 0);
  for (const auto& row : grid) {
    for (size_t c = 0; c < 4; ++c) width[c] = std::max(width[c], row[c].size());
  }
  std::string out = "rows = " + std::to_string(summary.rows) + "\n";
  for (const auto& row : grid) {
    std::string line = row[0];
    line.append(width[0] - row[0].size(), ' ');
    for (size_t c = 1; c < 4; ++c) {
      line += "  ";
      line.append(width[c] - row[c].size(), ' ');
      line += row[c];
    }
    out += line;
    out += '\n';
  }
  return out;
}

std::string stats_json(const DescriptiveStats& stats) {
  nlohmann::json cols = nlohmann::json::object();
  for (const auto& c : stats.columns) {
    cols[c.name] = {{"count", c.count},       {"mean", num_or_null(c.mean)},
                    {"std", num_or_null(c.std)}, {"min", num_or_null(c.min)},
                    {"p25", num_or_null(c.p25)}, {"p50", num_or_null(c.p50)},
                    {"p75", num_or_null(c.p75)}, {"max", num_or_null(c.max)}};
  }
  nlohmann::json doc = {{"kind", "descriptive_stats"}, {"columns", cols}};
  return doc.dump(2) + "\n";
}

std::string missingness_json(const MissingnessSummary& summary) {
  nlohmann::json cols = nlohmann::json::object();
  for (const auto& c : summary.columns) {
    nlohmann::json bits = nlohmann::json::array();
    for (uint8_t b : c.bitmap) bits.push_back(b ? 1 : 0);
    cols[c.name] = {{"observed", c.observed},
                    {"missing", c.missing},
                    {"fraction", c.fraction},
                    {"bitmap", std::move(bits)}};
  }
  nlohmann::json doc = {{"kind", "missingness_summary"},
                        {"rows", summary.rows},
                        {"columns", cols}};
  return doc.dump(2) + "\n";
}

std::string scatter_json(const std::vector<std::pair<std::string, double>>& points,
                         const std::string& column) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [date, value] : points) arr.push_back({{"date", date}, {"value", value}});
  nlohmann::json doc = {{"kind", "scatter"}, {"column", column}, {"points", std::move(arr)}};
  return doc.dump(2) + "\n";
}

}  // namespace peanut
