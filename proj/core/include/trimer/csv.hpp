#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "trimer/statistics.hpp"

namespace trimer {

// Artifact CSV formats. Metadata goes on leading '#' comment lines as
// "# key: value"; every floating-point value is written in shortest
// round-trip form, so write -> read reproduces the data bit for bit.
//
//   distribution: header "n,p"; one row per bin centre.
//   moments:      header "t,N1_mean,N1_err,N2_mean,N2_err,N3_mean,N3_err".
//   comparison:   header "pair_label,B,B_err,D"; B_err is "nan" when no
//                 bootstrap was possible, D is "inf" for disjoint supports.

struct MomentTable {
  std::vector<double> times;
  std::array<std::vector<double>, kWells> mean;
  std::array<std::vector<double>, kWells> error;

  static MomentTable from(const MomentSeries& series);
  friend bool operator==(const MomentTable&, const MomentTable&) = default;
};

struct ComparisonRow {
  std::string pair_label;
  double coefficient = 0.0;
  double coefficient_error = 0.0;
  double distance = 0.0;
};

/// Ordered "# key: value" metadata lines.
using CsvMetadata = std::vector<std::pair<std::string, std::string>>;

void write_distribution_csv(std::ostream& out, const NumberDistribution& dist,
                            const CsvMetadata& extra = {});
void write_distribution_csv(const std::filesystem::path& path, const NumberDistribution& dist,
                            const CsvMetadata& extra = {});
/// Throws ConfigError on malformed input.
NumberDistribution read_distribution_csv(std::istream& in);
NumberDistribution read_distribution_csv(const std::filesystem::path& path);

void write_moments_csv(std::ostream& out, const MomentTable& table, const CsvMetadata& meta = {});
void write_moments_csv(const std::filesystem::path& path, const MomentTable& table,
                       const CsvMetadata& meta = {});
MomentTable read_moments_csv(std::istream& in);
MomentTable read_moments_csv(const std::filesystem::path& path);

void write_comparison_csv(std::ostream& out, const std::vector<ComparisonRow>& rows);
void write_comparison_csv(const std::filesystem::path& path,
                          const std::vector<ComparisonRow>& rows);
std::vector<ComparisonRow> read_comparison_csv(std::istream& in);
std::vector<ComparisonRow> read_comparison_csv(const std::filesystem::path& path);

}  // namespace trimer
