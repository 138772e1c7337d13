#include "trimer/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ostream.h>
#include <fmt/ranges.h>

namespace trimer {

MomentTable MomentTable::from(const MomentSeries& series) {
  MomentTable table;
  table.times = series.times;
  table.mean = series.mean;
  table.error = series.standard_error;
  return table;
}

namespace {

std::vector<std::string> split(const std::string& line, char sep = ',') {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, sep)) fields.push_back(field);
  if (!line.empty() && line.back() == sep) fields.emplace_back();
  return fields;
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  const auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

double parse_double(const std::string& text, std::string_view what) {
  const std::string t = trim(text);
  double value = 0.0;
  const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || ec != std::errc{} || p != t.data() + t.size()) {
    throw ConfigError(fmt::format("{}: cannot parse number '{}'", what, text));
  }
  return value;
}

// Reads comment metadata and the header; leaves `in` at the first data row.
struct CsvPreamble {
  CsvMetadata meta;
  std::vector<std::string> header;
};

CsvPreamble read_preamble(std::istream& in, std::string_view kind) {
  CsvPreamble pre;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '#') {
      const auto body = line.substr(1);
      const auto colon = body.find(':');
      if (colon != std::string::npos) {
        pre.meta.emplace_back(trim(body.substr(0, colon)), trim(body.substr(colon + 1)));
      }
      continue;
    }
    for (auto& h : split(line)) pre.header.push_back(trim(h));
    return pre;
  }
  throw ConfigError(fmt::format("{} CSV has no header row", kind));
}

const std::string* find_meta(const CsvMetadata& meta, std::string_view key) {
  for (const auto& [k, v] : meta) {
    if (k == key) return &v;
  }
  return nullptr;
}

void expect_header(const std::vector<std::string>& header, const std::vector<std::string>& want,
                   std::string_view kind) {
  if (header != want) {
    throw ConfigError(fmt::format("{} CSV: unexpected header '{}'", kind,
                                  fmt::join(header, ",")));
  }
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error(fmt::format("cannot write {}", path.string()));
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(fmt::format("file not found: {}", path.string()));
  return in;
}

void write_meta(std::ostream& out, const CsvMetadata& meta) {
  for (const auto& [k, v] : meta) fmt::print(out, "# {}: {}\n", k, v);
}

}  // namespace

void write_distribution_csv(std::ostream& out, const NumberDistribution& dist,
                            const CsvMetadata& extra) {
  write_meta(out, {{"well", fmt::format("{}", dist.well)},
                   {"time", fmt::format("{}", dist.time)},
                   {"bin_width", fmt::format("{}", dist.bin_width())},
                   {"sample_count", fmt::format("{}", dist.sample_count())},
                   {"clamped", fmt::format("{}", dist.clamped())}});
  write_meta(out, extra);
  out << "n,p\n";
  for (std::size_t k = 0; k < dist.size(); ++k) {
    fmt::print(out, "{},{}\n", dist.center(k), dist.probability(k));
  }
}

void write_distribution_csv(const std::filesystem::path& path, const NumberDistribution& dist,
                            const CsvMetadata& extra) {
  auto out = open_out(path);
  write_distribution_csv(out, dist, extra);
}

NumberDistribution read_distribution_csv(std::istream& in) {
  const auto pre = read_preamble(in, "distribution");
  expect_header(pre.header, {"n", "p"}, "distribution");

  double bin_width = 1.0;
  std::uint64_t sample_count = 0;
  std::uint64_t clamped = 0;
  int well = 0;
  double time = 0.0;
  if (const auto* v = find_meta(pre.meta, "bin_width")) bin_width = parse_double(*v, "bin_width");
  if (const auto* v = find_meta(pre.meta, "sample_count")) {
    sample_count = static_cast<std::uint64_t>(parse_double(*v, "sample_count"));
  }
  if (const auto* v = find_meta(pre.meta, "clamped")) {
    clamped = static_cast<std::uint64_t>(parse_double(*v, "clamped"));
  }
  if (const auto* v = find_meta(pre.meta, "well")) well = static_cast<int>(parse_double(*v, "well"));
  if (const auto* v = find_meta(pre.meta, "time")) time = parse_double(*v, "time");
  if (!(bin_width > 0.0)) throw ConfigError("distribution CSV: bin_width must be positive");

  std::vector<double> probs;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto fields = split(line);
    if (fields.size() != 2) {
      throw ConfigError(fmt::format("distribution CSV: malformed row '{}'", line));
    }
    const double n = parse_double(fields[0], "distribution n");
    const double p = parse_double(fields[1], "distribution p");
    const double expected = static_cast<double>(probs.size()) * bin_width;
    if (std::abs(n - expected) > 1e-9 * std::max(1.0, expected)) {
      throw ConfigError(fmt::format(
          "distribution CSV: bin centre {} out of sequence (expected {})", n, expected));
    }
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw ConfigError(fmt::format("distribution CSV: invalid probability '{}'", fields[1]));
    }
    probs.push_back(p);
  }
  if (probs.empty()) throw ConfigError("distribution CSV has no rows");

  // Recover integer counts when the file came from binned samples, so the
  // re-read distribution is identical to the one written.
  std::vector<double> weights = probs;
  if (sample_count > 0) {
    const double n = static_cast<double>(sample_count);
    bool integral = true;
    double total = 0.0;
    for (auto& w : weights) {
      const double c = std::round(w * n);
      if (std::abs(w * n - c) > 1e-6) integral = false;
      w = c;
      total += c;
    }
    if (!integral || total != n) weights = probs;
  }
  NumberDistribution dist(bin_width, std::move(weights), sample_count);
  dist.set_clamped(clamped);
  dist.well = well;
  dist.time = time;
  return dist;
}

NumberDistribution read_distribution_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  try {
    return read_distribution_csv(in);
  } catch (const ConfigError& e) {
    throw ConfigError(fmt::format("{}: {}", path.string(), e.what()));
  }
}

namespace {
const std::vector<std::string> kMomentHeader = {"t",       "N1_mean", "N1_err", "N2_mean",
                                                "N2_err",  "N3_mean", "N3_err"};
}

void write_moments_csv(std::ostream& out, const MomentTable& table, const CsvMetadata& meta) {
  write_meta(out, meta);
  fmt::print(out, "{}\n", fmt::join(kMomentHeader, ","));
  for (std::size_t k = 0; k < table.times.size(); ++k) {
    fmt::print(out, "{},{},{},{},{},{},{}\n", table.times[k], table.mean[0][k], table.error[0][k],
               table.mean[1][k], table.error[1][k], table.mean[2][k], table.error[2][k]);
  }
}

void write_moments_csv(const std::filesystem::path& path, const MomentTable& table,
                       const CsvMetadata& meta) {
  auto out = open_out(path);
  write_moments_csv(out, table, meta);
}

MomentTable read_moments_csv(std::istream& in) {
  const auto pre = read_preamble(in, "moments");
  expect_header(pre.header, kMomentHeader, "moments");
  MomentTable table;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto f = split(line);
    if (f.size() != kMomentHeader.size()) {
      throw ConfigError(fmt::format("moments CSV: malformed row '{}'", line));
    }
    table.times.push_back(parse_double(f[0], "moments t"));
    for (std::size_t i = 0; i < kWells; ++i) {
      table.mean[i].push_back(parse_double(f[1 + 2 * i], "moments mean"));
      table.error[i].push_back(parse_double(f[2 + 2 * i], "moments err"));
    }
  }
  return table;
}

MomentTable read_moments_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  try {
    return read_moments_csv(in);
  } catch (const ConfigError& e) {
    throw ConfigError(fmt::format("{}: {}", path.string(), e.what()));
  }
}

void write_comparison_csv(std::ostream& out, const std::vector<ComparisonRow>& rows) {
  out << "pair_label,B,B_err,D\n";
  for (const auto& row : rows) {
    if (row.pair_label.find_first_of(",\n") != std::string::npos) {
      throw ConfigError(fmt::format("pair label '{}' must not contain commas", row.pair_label));
    }
    fmt::print(out, "{},{},{},{}\n", row.pair_label, row.coefficient, row.coefficient_error,
               row.distance);
  }
}

void write_comparison_csv(const std::filesystem::path& path,
                          const std::vector<ComparisonRow>& rows) {
  auto out = open_out(path);
  write_comparison_csv(out, rows);
}

std::vector<ComparisonRow> read_comparison_csv(std::istream& in) {
  const auto pre = read_preamble(in, "comparison");
  expect_header(pre.header, {"pair_label", "B", "B_err", "D"}, "comparison");
  std::vector<ComparisonRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto f = split(line);
    if (f.size() != 4) throw ConfigError(fmt::format("comparison CSV: malformed row '{}'", line));
    rows.push_back({trim(f[0]), parse_double(f[1], "B"), parse_double(f[2], "B_err"),
                    parse_double(f[3], "D")});
  }
  return rows;
}

std::vector<ComparisonRow> read_comparison_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  try {
    return read_comparison_csv(in);
  } catch (const ConfigError& e) {
    throw ConfigError(fmt::format("{}: {}", path.string(), e.what()));
  }
}

}  // namespace trimer
