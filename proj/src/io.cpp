#include "srp/io.hpp"

#include <cctype>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "srp/errors.hpp"

namespace srp {

namespace {

std::vector<double> parse_csv_row(const std::string& line, int line_no) {
  std::vector<double> row;
  std::size_t pos = 0;
  while (pos <= line.size()) {
    std::size_t comma = line.find(',', pos);
    if (comma == std::string::npos) comma = line.size();
    const std::string field = line.substr(pos, comma - pos);
    try {
      std::size_t used = 0;
      const double v = std::stod(field, &used);
      while (used < field.size() && std::isspace(
                 static_cast<unsigned char>(field[used])))
        ++used;
      if (used != field.size()) throw std::invalid_argument(field);
      row.push_back(v);
    } catch (const std::exception&) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": bad numeric field '" + field + "'");
    }
    pos = comma + 1;
    if (comma == line.size()) break;
  }
  return row;
}

Eigen::MatrixXd rows_to_matrix(const std::vector<std::vector<double>>& rows,
                               int first_line) {
  if (rows.empty()) throw ParseError("empty matrix block");
  const std::size_t cols = rows.front().size();
  for (std::size_t r = 0; r < rows.size(); ++r)
    if (rows[r].size() != cols)
      throw ParseError("line " + std::to_string(first_line + (int)r) +
                       ": ragged row (" + std::to_string(rows[r].size()) +
                       " fields, expected " + std::to_string(cols) + ")");
  Eigen::MatrixXd m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  return m;
}

bool blank(const std::string& line) {
  for (char c : line)
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  return true;
}

template <class T>
T get_field(const nlohmann::json& j, const char* key) {
  if (!j.contains(key))
    throw ParseError(std::string("config missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("config field '") + key + "': " + e.what());
  }
}

template <class T>
T get_field_or(const nlohmann::json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  return get_field<T>(j, key);
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Eigen::MatrixXd parse_csv_matrix(const std::string& text) {
  const auto blocks = parse_csv_matrices(text);
  if (blocks.size() != 1)
    throw ParseError("expected exactly one matrix, found " +
                     std::to_string(blocks.size()));
  return blocks.front();
}

std::vector<Eigen::MatrixXd> parse_csv_matrices(const std::string& text) {
  std::vector<Eigen::MatrixXd> out;
  std::vector<std::vector<double>> rows;
  int line_no = 0, block_start = 1;
  std::istringstream stream(text);
  std::string line;
  while (std::getline(stream, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (blank(line)) {
      if (!rows.empty()) {
        out.push_back(rows_to_matrix(rows, block_start));
        rows.clear();
      }
      block_start = line_no + 1;
      continue;
    }
    rows.push_back(parse_csv_row(line, line_no));
  }
  if (!rows.empty()) out.push_back(rows_to_matrix(rows, block_start));
  if (out.empty()) throw ParseError("no matrix data in input");
  return out;
}

Eigen::MatrixXd read_csv_matrix(const std::filesystem::path& path) {
  return parse_csv_matrix(read_text_file(path));
}

std::vector<Eigen::MatrixXd> read_csv_matrices(
    const std::filesystem::path& path) {
  return parse_csv_matrices(read_text_file(path));
}

void write_csv_matrix(const std::filesystem::path& path,
                      const Eigen::MatrixXd& m) {
  std::string text;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) text += ',';
      text += format_double(m(r, c));
    }
    text += '\n';
  }
  write_text_file(path, text);
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("config must be a JSON object");
  ExperimentConfig cfg;
  cfg.kind = experiment_kind_from_string(get_field<std::string>(j, "kind"));

  const bool lemma = cfg.kind == ExperimentKind::lemma_f_ratio ||
                     cfg.kind == ExperimentKind::lemma_angle ||
                     cfg.kind == ExperimentKind::lemma_support_norm ||
                     cfg.kind == ExperimentKind::lemma_corr_ratio;

  cfg.n = get_field_or<int>(j, "n", 0);
  if (!lemma) {
    cfg.N = get_field_or<int>(j, "N", 0);
    cfg.d1 = get_field<int>(j, "d1");
    cfg.d2 = get_field<int>(j, "d2");
    if (j.contains("affinity_grid"))
      cfg.affinity_grid = get_field<std::vector<double>>(j, "affinity_grid");
    else
      cfg.affinity = get_field<double>(j, "affinity");
    if (j.contains("spectrum"))
      cfg.spectrum = get_field<std::vector<double>>(j, "spectrum");
  }
  if (cfg.kind == ExperimentKind::ambient_sweep) {
    cfg.N_list = get_field<std::vector<int>>(j, "N_list");
    cfg.n_list = get_field<std::vector<int>>(j, "n_list");
  }
  if (cfg.kind == ExperimentKind::rip_set) cfg.L = get_field<int>(j, "L");
  if (cfg.kind == ExperimentKind::lemma_support_norm)
    cfg.support_dim = get_field<int>(j, "support_dim");
  if (cfg.kind == ExperimentKind::lemma_corr_ratio)
    cfg.omega = get_field<double>(j, "omega");

  cfg.epsilons = get_field_or<std::vector<double>>(j, "epsilons", {});
  cfg.trials = get_field_or<std::int64_t>(j, "trials", 10000);
  cfg.master_seed = get_field_or<std::uint64_t>(j, "master_seed", 42);
  cfg.bins = get_field_or<int>(j, "bins", 0);
  return cfg;
}

nlohmann::json config_to_json(const ExperimentConfig& cfg) {
  nlohmann::json j;
  j["kind"] = to_string(cfg.kind);
  j["trials"] = cfg.trials;
  j["master_seed"] = cfg.master_seed;
  j["epsilons"] = cfg.epsilons;
  if (cfg.bins > 0) j["bins"] = cfg.bins;
  if (cfg.n > 0) j["n"] = cfg.n;

  switch (cfg.kind) {
    case ExperimentKind::lemma_f_ratio:
    case ExperimentKind::lemma_angle:
      break;
    case ExperimentKind::lemma_support_norm:
      j["support_dim"] = cfg.support_dim;
      break;
    case ExperimentKind::lemma_corr_ratio:
      j["omega"] = cfg.omega;
      break;
    default:
      j["N"] = cfg.N;
      j["d1"] = cfg.d1;
      j["d2"] = cfg.d2;
      if (!cfg.affinity_grid.empty())
        j["affinity_grid"] = cfg.affinity_grid;
      else
        j["affinity"] = cfg.affinity;
      if (!cfg.spectrum.empty()) j["spectrum"] = cfg.spectrum;
      if (cfg.kind == ExperimentKind::ambient_sweep) {
        j["N_list"] = cfg.N_list;
        j["n_list"] = cfg.n_list;
        j.erase("N");
        j.erase("n");
      }
      if (cfg.kind == ExperimentKind::rip_set) j["L"] = cfg.L;
      break;
  }
  return j;
}

std::uint64_t config_hash(const nlohmann::json& j) {
  const std::string canonical = j.dump();  // objects are key-sorted
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

nlohmann::json summary_to_json(const ExperimentSummary& summary,
                               std::int64_t record_cap) {
  nlohmann::json j;
  j["config"] = config_to_json(summary.config);
  j["trials"] = static_cast<std::int64_t>(summary.records.size());
  j["mean"] = summary.mean;
  j["stddev"] = summary.stddev;
  j["estimate"] = summary.estimate;
  j["wall_time"] = summary.wall_time_sec;
  j["all_assertions_pass"] = summary.all_assertions_pass;

  if (!summary.spectrum.empty()) j["spectrum"] = summary.spectrum;
  if (summary.aff_sq_x > 0 || !summary.spectrum.empty()) {
    j["aff_sq_x"] = summary.aff_sq_x;
    j["dist_sq_x"] = summary.dist_sq_x;
  }
  if (!summary.pair_dist_sq_x.empty())
    j["pair_dist_sq_x"] = summary.pair_dist_sq_x;

  j["histogram"] = {{"edges", summary.histogram.edges},
                    {"counts", summary.histogram.counts}};

  auto rows = nlohmann::json::array();
  for (const auto& row : summary.per_epsilon)
    rows.push_back({{"epsilon", row.epsilon},
                    {"kind", to_string(row.kind)},
                    {"deviation_threshold", row.deviation_threshold},
                    {"empirical_violation", row.empirical_violation},
                    {"theoretical_bound", row.theoretical_bound},
                    {"vacuous", row.vacuous},
                    {"asserted", row.asserted},
                    {"pass", row.pass}});
  j["per_epsilon"] = std::move(rows);

  if (static_cast<std::int64_t>(summary.records.size()) <= record_cap) {
    auto records = nlohmann::json::array();
    for (const auto& r : summary.records)
      records.push_back({{"trial", r.trial_index},
                         {"measured", r.measured},
                         {"estimate", r.estimate},
                         {"deviation", r.deviation},
                         {"seed", r.seed_used}});
    j["records"] = std::move(records);
  }
  return j;
}

std::string histogram_csv(const Histogram& h) {
  std::string text = "bin_left,bin_right,count\n";
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    text += format_double(h.edges[i]);
    text += ',';
    text += format_double(h.edges[i + 1]);
    text += ',';
    text += std::to_string(h.counts[i]);
    text += '\n';
  }
  return text;
}

std::string per_epsilon_csv(const std::vector<EpsilonRow>& rows) {
  std::string text =
      "epsilon,threshold_kind,deviation_threshold,empirical_violation,"
      "theoretical_bound,vacuous\n";
  for (const auto& row : rows) {
    text += format_double(row.epsilon);
    text += ',';
    text += to_string(row.kind);
    text += ',';
    text += format_double(row.deviation_threshold);
    text += ',';
    text += format_double(row.empirical_violation);
    text += ',';
    text += format_double(row.theoretical_bound);
    text += ',';
    text += row.vacuous ? "1" : "0";
    text += '\n';
  }
  return text;
}

std::string histogram_csv(const std::vector<ExperimentSummary>& cells) {
  std::string text = "cell,bin_left,bin_right,count\n";
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const Histogram& h = cells[c].histogram;
    for (std::size_t i = 0; i < h.counts.size(); ++i) {
      text += std::to_string(c);
      text += ',';
      text += format_double(h.edges[i]);
      text += ',';
      text += format_double(h.edges[i + 1]);
      text += ',';
      text += std::to_string(h.counts[i]);
      text += '\n';
    }
  }
  return text;
}

std::string per_epsilon_csv(const std::vector<ExperimentSummary>& cells) {
  std::string text =
      "cell,epsilon,threshold_kind,deviation_threshold,empirical_violation,"
      "theoretical_bound,vacuous\n";
  for (std::size_t c = 0; c < cells.size(); ++c)
    for (const auto& row : cells[c].per_epsilon) {
      text += std::to_string(c);
      text += ',';
      text += format_double(row.epsilon);
      text += ',';
      text += to_string(row.kind);
      text += ',';
      text += format_double(row.deviation_threshold);
      text += ',';
      text += format_double(row.empirical_violation);
      text += ',';
      text += format_double(row.theoretical_bound);
      text += ',';
      text += row.vacuous ? "1" : "0";
      text += '\n';
    }
  return text;
}

std::string sweep_csv(const std::vector<ExperimentSummary>& cells) {
  std::string text = "cell,N,n,d1,d2,aff_sq_x,mean,stddev,estimate\n";
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const auto& s = cells[c];
    text += std::to_string(c);
    text += ',';
    text += std::to_string(s.config.N);
    text += ',';
    text += std::to_string(s.config.n);
    text += ',';
    text += std::to_string(s.config.d1);
    text += ',';
    text += std::to_string(s.config.d2);
    text += ',';
    text += format_double(s.aff_sq_x);
    text += ',';
    text += format_double(s.mean);
    text += ',';
    text += format_double(s.stddev);
    text += ',';
    text += format_double(s.estimate);
    text += '\n';
  }
  return text;
}

nlohmann::json manifest_to_json(const RunManifest& m) {
  nlohmann::json j;
  j["tool_version"] = m.tool_version;
  j["config_hash"] = m.config_hash;
  j["master_seed"] = m.master_seed;
  j["started_at"] = m.started_at;
  j["finished_at"] = m.finished_at;
  j["outputs"] = m.outputs;
  return j;
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << content;
  if (!out) throw Error("failed writing " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace srp
