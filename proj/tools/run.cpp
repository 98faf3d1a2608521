#include "run.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <set>
#include <sstream>
#include <variant>

#include "coxdiv/divergence.hpp"
#include "coxdiv/io/csv.hpp"
#include "coxdiv/io/svg.hpp"
#include "coxdiv/oracles/coxeter_oracle.hpp"
#include "coxdiv/oracles/free_group.hpp"
#include "coxdiv/oracles/grid.hpp"
#include "coxdiv/oracles/sl2.hpp"
#include "coxdiv/walls.hpp"
#include <nlohmann/json.hpp>

namespace coxdiv::cli {
namespace fs = std::filesystem;
using nlohmann::ordered_json;

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::memory_budget:
    case ErrorCode::span_budget:
    case ErrorCode::too_large:
    case ErrorCode::closure_overflow:
    case ErrorCode::arithmetic_overflow:
      return budget_exceeded;
    case ErrorCode::det_violation:
      return internal_error;
    default:
      return config_error;
  }
}

namespace {

const std::set<std::string> common_keys{"command", "workers", "output.dir", "output.prefix"};

const std::map<std::string, std::set<std::string>> command_keys{
    {"divergence",
     {"oracle.kind", "oracle.d", "oracle.rank", "oracle.q", "oracle.degree_bound", "oracle.system",
      "oracle.matrix_file", "query.n", "query.delta", "query.lambda", "query.mode", "query.pair_count", "query.seed",
      "query.horizon_factor", "output.svg"}},
    {"pencil", {"system.name", "system.matrix_file", "scan.radius", "scan.clique_bound"}},
    {"pwt", {"system.name", "system.matrix_file", "scan.radius", "scan.clique_bound", "scan.full_orbit"}},
    {"automaton-stats", {"system.name", "system.matrix_file", "stats.max_length", "stats.language"}},
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const fs::path& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary);
  out << data;
  if (!out) throw Error(ErrorCode::io, "cannot write " + path.string());
}

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error(ErrorCode::io, "SHA-256 failed");
  std::ostringstream hex;
  for (unsigned i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return hex.str();
}

class Settings {
 public:
  Settings(const ConfigMap& map) : map_(map) {}

  bool has(const std::string& key) const { return map_.count(key) != 0; }

  std::string text(const std::string& key, const std::string& fallback) const {
    auto it = map_.find(key);
    return it == map_.end() ? fallback : it->second;
  }

  std::int64_t integer(const std::string& key, std::int64_t fallback, std::int64_t lo, std::int64_t hi) const {
    auto it = map_.find(key);
    if (it == map_.end()) return fallback;
    try {
      std::size_t used = 0;
      long long v = std::stoll(it->second, &used);
      if (used == it->second.size() && v >= lo && v <= hi) return v;
    } catch (const std::exception&) {
    }
    throw Error(ErrorCode::config, key + " must be an integer in [" + std::to_string(lo) + ", " +
                                       std::to_string(hi) + "], got '" + it->second + "'");
  }

  bool flag(const std::string& key, bool fallback) const {
    auto it = map_.find(key);
    if (it == map_.end()) return fallback;
    if (it->second == "true" || it->second == "1" || it->second == "yes") return true;
    if (it->second == "false" || it->second == "0" || it->second == "no") return false;
    throw Error(ErrorCode::config, key + " must be true or false");
  }

  Rational rational(const std::string& key, Rational fallback) const {
    auto it = map_.find(key);
    if (it == map_.end()) return fallback;
    try {
      return parse_rational(it->second);
    } catch (const Error&) {
      throw Error(ErrorCode::config, "invalid " + key + " '" + it->second + "'");
    }
  }

 private:
  const ConfigMap& map_;
};

std::shared_ptr<const CoxeterSystem> load_system(const Settings& s, const std::string& section, std::string& label) {
  const bool named = s.has(section + ".name"), filed = s.has(section + ".matrix_file");
  if (named == filed) throw Error(ErrorCode::config, "give exactly one of " + section + ".name and " + section + ".matrix_file");
  if (named) {
    label = s.text(section + ".name", "");
    auto m = systems::by_name(label);
    if (!m) {
      std::string known;
      for (const auto& n : systems::names()) known += " " + n;
      throw Error(ErrorCode::config, "unknown system '" + label + "'; known:" + known);
    }
    return std::make_shared<const CoxeterSystem>(*m);
  }
  const std::string path = s.text(section + ".matrix_file", "");
  label = fs::path(path).stem().string();
  return std::make_shared<const CoxeterSystem>(parse_coxeter_matrix(read_file(path)));
}

std::size_t memory_budget() {
  const char* env = std::getenv("COXDIV_MEMORY_MB");
  if (!env) return default_memory_budget;
  try {
    std::size_t used = 0;
    unsigned long long mb = std::stoull(env, &used);
    if (used == std::string(env).size() && mb > 0) return static_cast<std::size_t>(mb) << 20;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::config, "COXDIV_MEMORY_MB must be a positive integer");
}

struct Outcome {
  std::string csv;
  std::optional<std::string> svg;
  ordered_json summary = ordered_json::object();
  std::optional<std::uint64_t> seed;
  int exit = ok;
};

Outcome run_divergence(const Settings& s, unsigned workers, std::ostream& out, std::ostream& err) {
  DivergenceQuery q;
  q.n = static_cast<int>(s.integer("query.n", 4, 1, 1000));
  q.delta = s.rational("query.delta", q.delta);
  if (!(q.delta > 0 && q.delta < 1))
    throw Error(ErrorCode::config, "invalid delta '" + s.text("query.delta", "") + "': delta must lie in (0,1)");
  q.lambda = s.rational("query.lambda", q.lambda);
  if (q.lambda < 0) throw Error(ErrorCode::config, "lambda must be >= 0");
  q.horizon_factor = s.rational("query.horizon_factor", q.horizon_factor);
  const std::string mode = s.text("query.mode", "exhaustive");
  if (mode == "sampled")
    q.mode = Mode::sampled;
  else if (mode != "exhaustive")
    throw Error(ErrorCode::config, "query.mode must be exhaustive or sampled");
  q.pair_count = static_cast<std::uint64_t>(s.integer("query.pair_count", 1000, 1, std::int64_t{1} << 40));
  q.seed = static_cast<std::uint64_t>(s.integer("query.seed", 1, 0, INT64_MAX));
  q.workers = workers;
  q.memory_budget = memory_budget();
  q.validate();

  const std::string kind = s.text("oracle.kind", "");
  DivergenceReport report;
  if (kind == "grid") {
    report = divergence_function(GridOracle(static_cast<int>(s.integer("oracle.d", 2, 1, 16))), q);
  } else if (kind == "free") {
    report = divergence_function(FreeGroupOracle(static_cast<int>(s.integer("oracle.rank", 2, 2, 26))), q);
  } else if (kind == "sl2") {
    SL2Oracle oracle(static_cast<int>(s.integer("oracle.q", 2, 2, 3)),
                     static_cast<int>(s.integer("oracle.degree_bound", default_degree_bound, 1, 1 << 20)));
    report = divergence_function(oracle, q);
  } else if (kind == "coxeter") {
    ConfigMap sub;
    for (const auto* key : {"name", "matrix_file"}) {
      std::string full = std::string("oracle.") + (std::string(key) == "name" ? "system" : key);
      if (s.has(full)) sub[std::string("system.") + key] = s.text(full, "");
    }
    std::string label;
    auto sys = load_system(Settings(sub), "system", label);
    report = divergence_function(CoxeterOracle(sys, label), q);
  } else {
    throw Error(ErrorCode::config, "oracle.kind must be one of sl2, coxeter, grid, free");
  }

  Outcome o;
  o.csv = csv::divergence(report);
  if (s.flag("output.svg", true)) o.svg = divergence_svg(report);
  o.seed = q.mode == Mode::sampled ? std::optional(q.seed) : std::nullopt;
  bool unbounded = false, horizon = false;
  for (const auto& r : report.rows) {
    unbounded |= r.unbounded;
    horizon |= r.status == RowStatus::horizon_exceeded;
  }
  o.summary["oracle"] = report.oracle;
  o.summary["mode"] = mode;
  o.summary["source_radius"] = report.source_radius;
  o.summary["ball_size"] = report.ball_size;
  o.summary["vertices_visited"] = report.vertices_visited;
  o.summary["any_unbounded"] = unbounded;
  o.summary["any_horizon_exceeded"] = horizon;
  const auto& last = report.rows.back();
  out << report.oracle << ": Div(" << last.n << ") = "
      << (last.unbounded ? std::string("UNBOUNDED") : last.value ? std::to_string(*last.value) : std::string("-"))
      << " [" << to_string(last.status) << "]\n";
  if (horizon) {
    err << "error: horizon " << q.horizon() << " exceeded before some detour was resolved\n";
    o.exit = budget_exceeded;
  }
  return o;
}

Outcome run_pencil(const Settings& s, unsigned workers, std::ostream& out) {
  std::string label;
  auto sys = load_system(s, "system", label);
  ScanOptions opt;
  opt.workers = workers;
  opt.clique_bound = static_cast<std::size_t>(s.integer("scan.clique_bound", default_clique_bound, 1, 64));
  auto report = lemma1_scan(*sys, static_cast<int>(s.integer("scan.radius", 8, 1, 64)), opt);
  std::vector<csv::PencilCsvRow> rows;
  for (const auto& r : report.rows) rows.push_back({r.n, r.min_parallel, to_string(r.witness)});
  Outcome o;
  o.csv = csv::pencil(rows);
  o.summary["system"] = label;
  o.summary["C_hat"] = report.c_hat;
  out << label << ": C_hat = " << report.c_hat << "\n";
  return o;
}

Outcome run_pwt(const Settings& s, unsigned workers, std::ostream& out) {
  std::string label;
  auto sys = load_system(s, "system", label);
  ScanOptions opt;
  opt.workers = workers;
  opt.clique_bound = static_cast<std::size_t>(s.integer("scan.clique_bound", default_clique_bound, 1, 64));
  opt.full_orbit = s.flag("scan.full_orbit", false);
  auto report = pwt_scan(*sys, static_cast<int>(s.integer("scan.radius", 8, 2, 64)), opt);
  std::vector<csv::PwtCsvRow> rows;
  int missing = 0;
  for (const auto& r : report.rows) {
    rows.push_back({r.wall_id, r.cpp_hat, r.n_scanned});
    missing += !r.cpp_hat;
    out << label << " wall " << r.wall_id << ": Cpp_hat = " << (r.cpp_hat ? std::to_string(*r.cpp_hat) : "NOT_FOUND")
        << "\n";
  }
  Outcome o;
  o.csv = csv::pwt(rows);
  o.summary["system"] = label;
  o.summary["walls"] = report.rows.size();
  o.summary["not_found"] = missing;
  return o;
}

Outcome run_stats(const Settings& s, std::ostream& out) {
  std::string label;
  auto sys = load_system(s, "system", label);
  const std::string language = s.text("stats.language", "shortlex");
  if (language != "shortlex" && language != "reduced")
    throw Error(ErrorCode::config, "stats.language must be shortlex or reduced");
  const auto& automaton = language == "shortlex" ? sys->shortlex_automaton() : sys->reduced_automaton();
  const int max_length = static_cast<int>(s.integer("stats.max_length", 10, 0, 10000));
  auto growth = automaton.growth(max_length);
  std::vector<csv::CountCsvRow> rows;
  for (int k = 0; k <= max_length; ++k) rows.push_back({k, growth[k]});
  Outcome o;
  o.csv = csv::counts(rows);
  o.summary["system"] = label;
  o.summary["language"] = language;
  o.summary["small_roots"] = sys->small_root_set().size();
  o.summary["states"] = automaton.num_states();
  o.summary["finite"] = sys->is_finite();
  out << label << ": " << sys->small_root_set().size() << " small roots, " << automaton.num_states() << " states, "
      << (sys->is_finite() ? "finite" : "infinite") << "\n";
  return o;
}

}  // namespace

ConfigMap load_config_file(const std::string& path) {
  ConfigMap config = parse_config(read_file(path));
  const fs::path base = fs::path(path).parent_path();
  for (const auto* key : {"system.matrix_file", "oracle.matrix_file"}) {
    auto it = config.find(key);
    if (it != config.end() && fs::path(it->second).is_relative()) it->second = (base / it->second).string();
  }
  return config;
}

int run(const std::string& command, const ConfigMap& config, std::ostream& out, std::ostream& err) {
  const auto started = std::chrono::steady_clock::now();
  try {
    auto allowed = command_keys.find(command);
    if (allowed == command_keys.end()) throw Error(ErrorCode::config, "unknown command '" + command + "'");
    if (auto it = config.find("command"); it != config.end() && it->second != command)
      throw Error(ErrorCode::config, "config is for command '" + it->second + "', not '" + command + "'");
    for (const auto& [key, value] : config)
      if (!common_keys.count(key) && !allowed->second.count(key))
        throw Error(ErrorCode::config, "unknown key '" + key + "' for command " + command);

    Settings s(config);
    const auto workers = static_cast<unsigned>(s.integer("workers", 1, 1, 1024));
    const fs::path dir = s.text("output.dir", ".");
    const std::string prefix = s.text("output.prefix", command);

    Outcome o;
    if (command == "divergence")
      o = run_divergence(s, workers, out, err);
    else if (command == "pencil")
      o = run_pencil(s, workers, out);
    else if (command == "pwt")
      o = run_pwt(s, workers, out);
    else
      o = run_stats(s, out);

    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error(ErrorCode::io, "cannot create " + dir.string() + ": " + ec.message());
    ordered_json outputs = ordered_json::array();
    auto emit = [&](const std::string& name, const std::string& data) {
      write_file(dir / name, data);
      outputs.push_back({{"file", name}, {"bytes", data.size()}, {"sha256", sha256_hex(data)}});
      out << "wrote " << (dir / name).string() << "\n";
    };
    emit(prefix + ".csv", o.csv);
    if (o.svg) emit(prefix + ".svg", *o.svg);

    ordered_json manifest;
    manifest["tool"] = "coxdiv";
    manifest["version"] = COXDIV_VERSION;
    manifest["command"] = command;
    manifest["config"] = ordered_json::object();
    for (const auto& [key, value] : config) manifest["config"][key] = value;
    manifest["seed"] = o.seed ? ordered_json(*o.seed) : ordered_json(nullptr);
    manifest["workers"] = workers;
    manifest["runtime_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    manifest["summary"] = o.summary;
    manifest["outputs"] = outputs;
    write_file(dir / (prefix + ".manifest.json"), manifest.dump(2) + "\n");
    return o.exit;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    return budget_exceeded;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return internal_error;
  }
}

}  // namespace coxdiv::cli
