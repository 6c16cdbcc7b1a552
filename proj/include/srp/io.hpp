#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "srp/montecarlo.hpp"

namespace srp {

/// Formats a double with 17 significant digits (round-trip exact), so
/// byte comparison of output files is meaningful.
std::string format_double(double v);

/// Headerless CSV, row-major, one matrix row per line. Ragged rows or
/// non-numeric fields raise ParseError.
Eigen::MatrixXd parse_csv_matrix(const std::string& text);

/// One or more matrices separated by blank lines.
std::vector<Eigen::MatrixXd> parse_csv_matrices(const std::string& text);

Eigen::MatrixXd read_csv_matrix(const std::filesystem::path& path);
std::vector<Eigen::MatrixXd> read_csv_matrices(
    const std::filesystem::path& path);
void write_csv_matrix(const std::filesystem::path& path,
                      const Eigen::MatrixXd& m);

/// Config schema:
/// {kind, N, n | n_list (+ N_list for ambient_sweep), d1, d2, L?,
///  affinity | affinity_grid, spectrum?, epsilons[], trials, master_seed,
///  bins?, support_dim?, omega?}
ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& cfg);

/// FNV-1a over the canonical dump (keys sorted, no whitespace), so the
/// hash tracks semantic content only.
std::uint64_t config_hash(const nlohmann::json& j);

nlohmann::json summary_to_json(const ExperimentSummary& summary,
                               std::int64_t record_cap = 1000);

std::string histogram_csv(const Histogram& h);
std::string per_epsilon_csv(const std::vector<EpsilonRow>& rows);

/// Multi-summary variants carry a leading cell column.
std::string histogram_csv(const std::vector<ExperimentSummary>& cells);
std::string per_epsilon_csv(const std::vector<ExperimentSummary>& cells);

/// Per-cell sweep table: grid coordinates, moments, estimate.
std::string sweep_csv(const std::vector<ExperimentSummary>& cells);

struct RunManifest {
  std::string tool_version;
  std::uint64_t config_hash = 0;
  std::uint64_t master_seed = 0;
  std::string started_at;   // ISO-8601 UTC
  std::string finished_at;
  std::vector<std::string> outputs;
};

nlohmann::json manifest_to_json(const RunManifest& m);

void write_text_file(const std::filesystem::path& path,
                     const std::string& content);
std::string read_text_file(const std::filesystem::path& path);

std::string utc_timestamp();

}  // namespace srp
