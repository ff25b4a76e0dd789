// Copyright (c) 2026 relaybf developers.
// SPDX-License-Identifier: Apache-2.0
#include "relaybf/experiment_io.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

namespace relaybf {

namespace {

std::string format_real(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
  return buf;
}

std::string join_reals(const std::vector<double>& xs, int digits) {
  std::string out;
  for (size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ",";
    out += format_real(xs[i], digits);
  }
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_real(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing junk");
    return v;
  } catch (const std::exception&) {
    throw ValidationError(key + ": expected a number, got '" + value + "'");
  }
}

long long parse_integer(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    const long long v = std::stoll(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing junk");
    return v;
  } catch (const std::exception&) {
    throw ValidationError(key + ": expected an integer, got '" + value + "'");
  }
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    const std::uint64_t v = std::stoull(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing junk");
    return v;
  } catch (const std::exception&) {
    throw ValidationError(key + ": expected an unsigned integer, got '" +
                          value + "'");
  }
}

std::vector<double> parse_grid(const std::string& key,
                               const std::string& value) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) {
      throw ValidationError(key + ": empty list entry");
    }
    out.push_back(parse_real(key, item));
  }
  if (out.empty()) throw ValidationError(key + ": empty list");
  return out;
}

std::map<std::string, std::string> read_flat_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("config: cannot open '" + path + "'");
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ValidationError("config: line " + std::to_string(lineno) +
                            " is not 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ValidationError("config: line " + std::to_string(lineno) +
                            " has an empty key");
    }
    kv[key] = value;
  }
  return kv;
}

}  // namespace

ModeSpec parse_mode(const std::string& text) {
  if (text == "exact") return ModeSpec::make_exact();
  const std::string prefix = "estimated:";
  if (text.rfind(prefix, 0) == 0) {
    const long long n =
        parse_integer("mode", text.substr(prefix.size()));
    if (n < 1) throw ValidationError("mode: estimated snapshot count >= 1");
    return ModeSpec::make_estimated(static_cast<int>(n));
  }
  throw ValidationError("mode: expected 'exact' or 'estimated:N', got '" +
                        text + "'");
}

std::vector<Algorithm> parse_algorithms(const std::string& text) {
  std::vector<Algorithm> algs;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    algs.push_back(algorithm_from_string(item));
  }
  if (algs.empty()) {
    throw ValidationError("algorithms: must name at least one algorithm");
  }
  // canonical order, duplicates dropped
  std::sort(algs.begin(), algs.end());
  algs.erase(std::unique(algs.begin(), algs.end()), algs.end());
  return algs;
}

std::pair<ExperimentSpec, std::vector<std::string>> parse_config(
    ExperimentKind kind, const std::optional<std::string>& path,
    const FlagOverrides& overrides) {
  ExperimentSpec spec;
  spec.kind = kind;
  std::vector<double> snr_grid = {0, 5, 10, 15, 20};
  std::vector<double> m_grid = {3, 4, 5, 6, 7, 8, 9, 10};

  if (path) {
    for (const auto& [key, value] : read_flat_file(*path)) {
      if (key == "k") spec.base.k = static_cast<int>(parse_integer(key, value));
      else if (key == "m") spec.base.m = static_cast<int>(parse_integer(key, value));
      else if (key == "m_min") spec.base.m_min = static_cast<int>(parse_integer(key, value));
      else if (key == "snr_db") spec.base.snr_db = parse_real(key, value);
      else if (key == "inr_db") spec.base.inr_db = parse_real(key, value);
      else if (key == "p_t_dbw") spec.base.p_t_dbw = parse_real(key, value);
      else if (key == "rho") spec.base.rho = parse_real(key, value);
      else if (key == "l_db") spec.base.l_db = parse_real(key, value);
      else if (key == "sigma_s_db") spec.base.sigma_s_db = parse_real(key, value);
      else if (key == "distance") spec.base.distance = parse_real(key, value);
      else if (key == "noise_variance") spec.base.noise_variance = parse_real(key, value);
      else if (key == "trials") spec.trials = static_cast<int>(parse_integer(key, value));
      else if (key == "bits") spec.bits = parse_integer(key, value);
      else if (key == "n_coh") spec.n_coh = static_cast<int>(parse_integer(key, value));
      else if (key == "n_select") spec.n_select = static_cast<int>(parse_integer(key, value));
      else if (key == "seed") spec.master_seed = parse_u64(key, value);
      else if (key == "threads") spec.threads = static_cast<int>(parse_integer(key, value));
      else if (key == "mode") spec.mode = parse_mode(value);
      else if (key == "algorithms") spec.algorithms = parse_algorithms(value);
      else if (key == "snr_grid_db") snr_grid = parse_grid(key, value);
      else if (key == "m_grid") m_grid = parse_grid(key, value);
      else throw ValidationError("config: unknown key '" + key + "'");
    }
  }

  if (overrides.seed) spec.master_seed = *overrides.seed;
  if (overrides.threads) spec.threads = *overrides.threads;
  if (overrides.mode) spec.mode = parse_mode(*overrides.mode);
  if (overrides.algorithms) {
    spec.algorithms = parse_algorithms(*overrides.algorithms);
  }

  spec.x_grid = kind == ExperimentKind::kSinrVsM ? m_grid : snr_grid;
  std::vector<std::string> warnings = spec.validate();
  return {std::move(spec), std::move(warnings)};
}

std::vector<std::pair<std::string, std::string>> spec_echo(
    const ExperimentSpec& spec) {
  std::vector<std::pair<std::string, std::string>> kv;
  const auto put = [&kv](const std::string& k, const std::string& v) {
    kv.emplace_back(k, v);
  };
  put("k", std::to_string(spec.base.k));
  put("m", std::to_string(spec.base.m));
  put("m_min", std::to_string(spec.base.m_min));
  put("snr_db", format_real(spec.base.snr_db, 17));
  put("inr_db", format_real(spec.base.inr_db, 17));
  put("p_t_dbw", format_real(spec.base.p_t_dbw, 17));
  put("rho", format_real(spec.base.rho, 17));
  put("l_db", format_real(spec.base.l_db, 17));
  put("sigma_s_db", format_real(spec.base.sigma_s_db, 17));
  put("distance", format_real(spec.base.distance, 17));
  put("noise_variance", format_real(spec.base.noise_variance, 17));
  put("trials", std::to_string(spec.trials));
  put("bits", std::to_string(spec.bits));
  put("n_coh", std::to_string(spec.n_coh));
  put("n_select", std::to_string(spec.n_select));
  put("mode", spec.mode.str());
  std::string algs;
  for (size_t i = 0; i < spec.algorithms.size(); ++i) {
    if (i) algs += ",";
    algs += to_string(spec.algorithms[i]);
  }
  put("algorithms", algs);
  put(spec.kind == ExperimentKind::kSinrVsM ? "m_grid" : "snr_grid_db",
      join_reals(spec.x_grid, 17));
  put("seed", std::to_string(spec.master_seed));
  put("threads", std::to_string(spec.threads));
  return kv;
}

std::string RunManifest::to_json() const {
  nlohmann::ordered_json j;
  j["library"] = "relaybf";
  j["version"] = kVersion;
  j["kind"] = to_string(spec.kind);
  nlohmann::ordered_json s;
  for (const auto& [k, v] : spec_echo(spec)) s[k] = v;
  j["spec"] = s;
  j["master_seed"] = spec.master_seed;
  nlohmann::ordered_json algs;
  for (const auto& st : stats) {
    algs[to_string(st.algorithm)] = {
        {"mean_solver_calls", st.mean_solver_calls},
        {"max_solver_calls", st.max_solver_calls}};
  }
  j["solver_calls"] = algs;
  j["degenerate_redraws"] = degenerate_redraws;
  j["duration_seconds"] = duration_seconds;
  return j.dump(2) + "\n";
}

std::pair<ExperimentCurve, RunManifest> run_experiment(
    const ExperimentSpec& spec) {
  const auto t0 = std::chrono::steady_clock::now();
  ExperimentCurve curve = run(spec);
  const auto t1 = std::chrono::steady_clock::now();

  RunManifest manifest;
  manifest.spec = spec;
  manifest.duration_seconds =
      std::chrono::duration<double>(t1 - t0).count();
  manifest.degenerate_redraws = curve.degenerate_redraws;
  for (const auto& s : curve.series) {
    RunManifest::AlgorithmStats st;
    st.algorithm = s.algorithm;
    double acc = 0.0;
    for (double c : s.mean_solver_calls) acc += c;
    st.mean_solver_calls =
        s.mean_solver_calls.empty()
            ? 0.0
            : acc / static_cast<double>(s.mean_solver_calls.size());
    st.max_solver_calls = s.max_solver_calls;
    manifest.stats.push_back(st);
  }
  return {std::move(curve), std::move(manifest)};
}

std::string curve_to_csv(const ExperimentCurve& curve) {
  std::string out = "x";
  for (const auto& s : curve.series) {
    out += "," + to_string(s.algorithm) + "_mean";
    out += "," + to_string(s.algorithm) + "_stderr";
  }
  out += "\n";
  for (size_t i = 0; i < curve.x.size(); ++i) {
    out += format_real(curve.x[i], 12);
    for (const auto& s : curve.series) {
      out += "," + format_real(s.mean[i], 12);
      out += "," + format_real(s.stderr_[i], 12);
    }
    out += "\n";
  }
  return out;
}

std::pair<std::string, std::string> write_outputs(const ExperimentCurve& curve,
                                                  const RunManifest& manifest,
                                                  const std::string& out_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    throw IoError("write_outputs: cannot create '" + out_dir +
                  "': " + ec.message());
  }
  const std::string csv_path = (fs::path(out_dir) / "curve.csv").string();
  const std::string manifest_path =
      (fs::path(out_dir) / "manifest.json").string();

  std::ofstream csv(csv_path, std::ios::binary | std::ios::trunc);
  if (!csv) throw IoError("write_outputs: cannot write '" + csv_path + "'");
  csv << curve_to_csv(curve);
  csv.close();
  if (!csv) throw IoError("write_outputs: failed writing '" + csv_path + "'");

  std::ofstream mf(manifest_path, std::ios::binary | std::ios::trunc);
  if (!mf) {
    throw IoError("write_outputs: cannot write '" + manifest_path + "'");
  }
  mf << manifest.to_json();
  mf.close();
  if (!mf) {
    throw IoError("write_outputs: failed writing '" + manifest_path + "'");
  }
  return {csv_path, manifest_path};
}

}  // namespace relaybf
