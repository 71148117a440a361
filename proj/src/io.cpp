#include "subman/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "subman/errors.hpp"

namespace subman {

using nlohmann::json;

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw InputError("write failed for '" + path + "'");
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

double parse_cell(const std::string& field, std::size_t line_no, std::size_t col_no,
                  const std::string& path) {
  double value = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) {
    throw InputError(path + ": line " + std::to_string(line_no) + ", column " +
                     std::to_string(col_no) + ": not a number: '" + field + "'");
  }
  return value;
}

json parse_json_file(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw InputError(path + ": invalid JSON: " + e.what());
  }
}

}  // namespace

Trajectory read_trajectory_csv(const std::string& path) {
  const std::string content = read_file(path);
  std::istringstream in(content);
  std::string line;
  if (!std::getline(in, line)) throw InputError(path + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();

  const std::vector<std::string> header = split_csv_line(line);
  if (header.empty() || header[0] != "t") {
    throw InputError(path + ": line 1, column 1: header must start with 't'");
  }
  if (header.size() < 2) {
    throw InputError(path + ": line 1: no position columns after 't'");
  }
  for (std::size_t c = 1; c < header.size(); ++c) {
    if (header[c].empty()) {
      throw InputError(path + ": line 1, column " + std::to_string(c + 1) +
                       ": empty column name");
    }
  }

  Trajectory traj;
  traj.columns.assign(header.begin() + 1, header.end());
  const std::size_t d = traj.columns.size();

  std::vector<std::vector<double>> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> fields = split_csv_line(line);
    if (fields.size() != d + 1) {
      throw InputError(path + ": line " + std::to_string(line_no) + ": expected " +
                       std::to_string(d + 1) + " fields, got " +
                       std::to_string(fields.size()));
    }
    std::vector<double> row(d + 1);
    for (std::size_t c = 0; c < fields.size(); ++c) {
      row[c] = parse_cell(fields[c], line_no, c + 1, path);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw InputError(path + ": no data rows");

  traj.timestamps.resize(rows.size());
  traj.positions.resize(static_cast<Eigen::Index>(rows.size()),
                        static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    traj.timestamps[i] = rows[i][0];
    for (std::size_t c = 0; c < d; ++c) {
      traj.positions(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) =
          rows[i][c + 1];
    }
  }
  traj.validate();
  return traj;
}

void write_trajectory_csv(const Trajectory& traj, const std::string& path) {
  traj.validate();
  std::ostringstream out;
  out << "t";
  for (const std::string& name : traj.columns) out << ',' << name;
  out << '\n';
  for (std::size_t i = 0; i < traj.timestamps.size(); ++i) {
    out << format_double(traj.timestamps[i]);
    for (Eigen::Index c = 0; c < traj.positions.cols(); ++c) {
      out << ',' << format_double(traj.positions(static_cast<Eigen::Index>(i), c));
    }
    out << '\n';
  }
  write_file(path, out.str());
}

GaitSegmentation read_segmentation_json(const std::string& path) {
  const json doc = parse_json_file(path);
  if (!doc.is_array()) {
    throw InputError(path + ": segmentation must be a JSON array (at $)");
  }
  GaitSegmentation seg;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const json& item = doc[i];
    if (!item.is_object() || !item.contains("t_p") || !item.contains("T_p") ||
        !item["t_p"].is_number() || !item["T_p"].is_number()) {
      throw InputError(path + ": expected {\"t_p\": number, \"T_p\": number} (at $[" +
                       std::to_string(i) + "])");
    }
    seg.strides.push_back({item["t_p"].get<double>(), item["T_p"].get<double>()});
  }
  seg.validate();
  return seg;
}

void write_segmentation_json(const GaitSegmentation& seg, const std::string& path) {
  json doc = json::array();
  for (const Stride& s : seg.strides) {
    doc.push_back({{"t_p", s.t_p}, {"T_p", s.T_p}});
  }
  write_file(path, doc.dump(2) + "\n");
}

namespace {

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const json& rows, const std::string& where) {
  if (!rows.is_array() || rows.empty() || !rows[0].is_array()) {
    throw InputError(where + ": expected a 2-D numeric array");
  }
  const auto nr = static_cast<Eigen::Index>(rows.size());
  const auto nc = static_cast<Eigen::Index>(rows[0].size());
  Eigen::MatrixXd m(nr, nc);
  for (Eigen::Index i = 0; i < nr; ++i) {
    if (static_cast<Eigen::Index>(rows[i].size()) != nc) {
      throw InputError(where + ": ragged rows");
    }
    for (Eigen::Index j = 0; j < nc; ++j) m(i, j) = rows[i][j].get<double>();
  }
  return m;
}

json provenance_to_json(const Provenance& p) {
  return {{"input_hash", p.input_hash},
          {"seed", p.seed},
          {"tool_version", p.tool_version}};
}

Provenance provenance_from_json(const json& j) {
  Provenance p;
  if (j.is_object()) {
    p.input_hash = j.value("input_hash", "");
    p.seed = j.value("seed", std::uint64_t{0});
    p.tool_version = j.value("tool_version", "");
  }
  return p;
}

}  // namespace

void save_estimate(const PartitionEstimate& est, const Provenance& prov,
                   const std::string& path) {
  json fills = json::array();
  for (const FillRecord& f : est.fills()) {
    fills.push_back({{"cell", f.cell}, {"source", f.source}});
  }
  const json doc = {{"kind", "partition"},
                    {"level", est.partition().level()},
                    {"coeffs", matrix_to_json(est.coeffs())},
                    {"counts", est.counts()},
                    {"fills", fills},
                    {"provenance", provenance_to_json(prov)}};
  write_file(path, doc.dump(2) + "\n");
}

void save_estimate(const KernelEstimate& est, const Provenance& prov,
                   const std::string& path) {
  const json doc = {{"kind", "kernel"},
                    {"centers", est.centers()},
                    {"beta", est.beta()},
                    {"lambda", est.lambda()},
                    {"metric", metric_name(est.metric())},
                    {"condition", est.condition()},
                    {"coeffs", matrix_to_json(est.coeffs())},
                    {"provenance", provenance_to_json(prov)}};
  write_file(path, doc.dump(2) + "\n");
}

int LoadedEstimate::dim() const {
  return partition ? partition->dim() : kernel->dim();
}

Eigen::VectorXd LoadedEstimate::eval(double s) const {
  return partition ? (*partition)(s) : (*kernel)(s);
}

Curve LoadedEstimate::as_curve() const {
  return partition ? partition->as_curve() : kernel->as_curve();
}

LoadedEstimate load_estimate(const std::string& path) {
  const json doc = parse_json_file(path);
  if (!doc.is_object() || !doc.contains("kind")) {
    throw InputError(path + ": estimate file missing 'kind'");
  }
  LoadedEstimate out;
  out.kind = doc["kind"].get<std::string>();
  out.provenance = provenance_from_json(doc.value("provenance", json::object()));
  try {
    if (out.kind == "partition") {
      const Partition partition(doc.at("level").get<int>());
      Eigen::MatrixXd coeffs = matrix_from_json(doc.at("coeffs"), path + ": coeffs");
      auto counts = doc.at("counts").get<std::vector<std::size_t>>();
      std::vector<FillRecord> fills;
      for (const json& f : doc.at("fills")) {
        fills.push_back({f.at("cell").get<std::size_t>(),
                         f.at("source").get<std::size_t>()});
      }
      if (coeffs.rows() != static_cast<Eigen::Index>(partition.size()) ||
          counts.size() != partition.size()) {
        throw InputError(path + ": coefficient table does not match the level");
      }
      out.partition.emplace(partition, std::move(coeffs), std::move(counts),
                            std::move(fills));
    } else if (out.kind == "kernel") {
      auto centers = doc.at("centers").get<std::vector<double>>();
      Eigen::MatrixXd coeffs = matrix_from_json(doc.at("coeffs"), path + ": coeffs");
      if (coeffs.rows() != static_cast<Eigen::Index>(centers.size())) {
        throw InputError(path + ": coefficient rows do not match center count");
      }
      out.kernel.emplace(std::move(centers), doc.at("beta").get<double>(),
                         doc.at("lambda").get<double>(),
                         metric_from_name(doc.at("metric").get<std::string>()),
                         std::move(coeffs), doc.value("condition", 0.0));
    } else {
      throw InputError(path + ": unknown estimate kind '" + out.kind + "'");
    }
  } catch (const json::exception& e) {
    throw InputError(path + ": malformed estimate file: " + e.what());
  }
  return out;
}

namespace {

AnalyticCurve curve_from_json(const json& j, const std::string& path) {
  if (!j.is_object() || !j.contains("kind")) {
    throw InputError(path + ": curve spec missing 'kind' (at $.curve)");
  }
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "sawtooth") {
    return AnalyticCurve::sawtooth(j.value("slope", 1.0), j.value("dim", 1));
  }
  if (kind == "fourier") {
    const Eigen::MatrixXd a0 = matrix_from_json(
        json::array({j.at("const")}), path + ": $.curve.const");
    return AnalyticCurve::fourier(
        a0.row(0).transpose(),
        matrix_from_json(j.at("cos"), path + ": $.curve.cos"),
        matrix_from_json(j.at("sin"), path + ": $.curve.sin"));
  }
  if (kind == "step") {
    return AnalyticCurve::step(j.at("jumps").get<std::vector<double>>(),
                               matrix_from_json(j.at("values"),
                                                path + ": $.curve.values"));
  }
  throw InputError(path + ": unknown curve kind '" + kind + "' (at $.curve.kind)");
}

Measure measure_from_json(const json& j, const std::string& path) {
  if (j.is_null()) return Measure::uniform();
  if (!j.is_object() || !j.contains("kind")) {
    throw InputError(path + ": measure spec missing 'kind' (at $.measure)");
  }
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "uniform") return Measure::uniform();
  if (kind == "von-mises") {
    return Measure::von_mises(j.value("mu", 0.0), j.value("kappa", 1.0));
  }
  if (kind == "empirical") {
    return Measure::empirical(j.at("phases").get<std::vector<double>>());
  }
  throw InputError(path + ": unknown measure kind '" + kind + "' (at $.measure.kind)");
}

NoiseModel noise_from_json(const json& j, const std::string& path) {
  if (j.is_null()) return NoiseModel::none();
  if (!j.is_object() || !j.contains("kind")) {
    throw InputError(path + ": noise spec missing 'kind' (at $.noise)");
  }
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "none") return NoiseModel::none();
  if (kind == "gaussian") return NoiseModel::gaussian(j.value("sigma", 0.0));
  throw InputError(path + ": unknown noise kind '" + kind + "' (at $.noise.kind)");
}

}  // namespace

ExperimentConfig read_experiment_config(const std::string& path) {
  const json doc = parse_json_file(path);
  if (!doc.is_object()) throw InputError(path + ": config must be an object (at $)");
  ExperimentConfig cfg;
  try {
    cfg.curve = curve_from_json(doc.at("curve"), path);
    cfg.measure = measure_from_json(doc.value("measure", json()), path);
    cfg.noise = noise_from_json(doc.value("noise", json()), path);
    cfg.levels = doc.at("levels").get<std::vector<int>>();
    cfg.sample_counts = doc.at("sample_counts").get<std::vector<std::size_t>>();
    cfg.betas = doc.value("betas", std::vector<double>{});
    cfg.lambda = doc.value("lambda", 0.0);
    cfg.metric = metric_from_name(doc.value("metric", std::string("chordal")));
    cfg.centers = doc.value("centers", std::size_t{16});
    cfg.trials = doc.value("trials", 50);
    cfg.seed = doc.value("seed", std::uint64_t{0});
    cfg.quad_floor = doc.value("quadrature_points", std::size_t{4096});
    cfg.rate_r = doc.value("rate_r", -1.0);
  } catch (const json::exception& e) {
    throw InputError(path + ": bad experiment config: " + e.what());
  }
  cfg.validate();
  return cfg;
}

SynthSpec read_synth_spec(const std::string& path) {
  const json doc = parse_json_file(path);
  if (!doc.is_object()) throw InputError(path + ": synth spec must be an object (at $)");
  SynthSpec spec;
  try {
    spec.curve = curve_from_json(doc.at("curve"), path);
    spec.measure = measure_from_json(doc.value("measure", json()), path);
    spec.noise = noise_from_json(doc.value("noise", json()), path);
    spec.m = doc.value("m", std::size_t{1000});
    spec.seed = doc.value("seed", std::uint64_t{0});
  } catch (const json::exception& e) {
    throw InputError(path + ": bad synth spec: " + e.what());
  }
  if (spec.m < 1) throw InputError(path + ": m must be >= 1");
  return spec;
}

}  // namespace subman
