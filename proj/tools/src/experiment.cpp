#include "dshell_cli/experiment.hpp"

#include <openssl/evp.h>

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <Eigen/Core>

namespace dshell::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw std::invalid_argument(where + ": " + what);
}

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) bad(where, "expected an object");
  for (const auto& [k, v] : obj.items())
    if (!allowed.count(k)) bad(where, "unknown key '" + k + "'");
}

template <class T>
T get(const json& obj, const std::string& key, const std::string& where) {
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    bad(where + "." + key, "wrong type");
  }
}

const std::set<std::string> kConfigKeys = {"surface", "mesh", "meshes", "z", "m", "eps", "masses", "targets", "seed",
                                           "states", "residual_states", "scan", "shell_radial"};

void apply_config(const json& o, SuiteConfig& c, const std::string& where) {
  for (const auto& [k, v] : o.items()) {
    const std::string w = where + "." + k;
    if (k == "surface") {
      reject_unknown(v, {"kind", "semiaxes"}, w);
      if (v.contains("kind")) c.surface.kind = get<std::string>(v, "kind", w);
      if (v.contains("semiaxes")) {
        const auto a = get<std::vector<double>>(v, "semiaxes", w);
        if (a.size() != 3) bad(w + ".semiaxes", "expected 3 numbers");
        c.surface.semiaxes = Vec3(a[0], a[1], a[2]);
      }
    } else if (k == "mesh") {
      c.mesh = get<int>(o, k, where);
    } else if (k == "meshes") {
      c.meshes = get<std::vector<int>>(o, k, where);
      if (c.meshes.empty()) bad(w, "empty sweep");
    } else if (k == "z") {
      const auto z = get<std::vector<double>>(o, k, where);
      if (z.size() != 2) bad(w, "expected [re, im]");
      c.z = cplx(z[0], z[1]);
    } else if (k == "m") {
      c.m = get<double>(o, k, where);
    } else if (k == "eps") {
      c.eps = get<std::vector<double>>(o, k, where);
    } else if (k == "masses") {
      c.masses = get<std::vector<double>>(o, k, where);
    } else if (k == "targets") {
      c.targets = get<int>(o, k, where);
    } else if (k == "seed") {
      c.seed = get<unsigned>(o, k, where);
    } else if (k == "states") {
      c.states = get<int>(o, k, where);
    } else if (k == "residual_states") {
      c.residual_states = get<int>(o, k, where);
    } else if (k == "shell_radial") {
      c.shell_radial = get<int>(o, k, where);
    } else if (k == "scan") {
      reject_unknown(v, {"lo", "hi", "points", "mode_window"}, w);
      if (v.contains("lo")) c.scan_lo = get<double>(v, "lo", w);
      if (v.contains("hi")) c.scan_hi = get<double>(v, "hi", w);
      if (v.contains("points")) c.scan_points = get<int>(v, "points", w);
      if (v.contains("mode_window")) c.scan_mode_window = get<int>(v, "mode_window", w);
    }
  }
}

#define DSHELL_BANDS(X)                                                                                              \
  X(algebra_tol) X(spectral_tol) X(expm_tol) X(boundary_tol) X(order_tol) X(residual_ratio) X(residual_floor)        \
      X(refine_ratio) X(jump_factor) X(manufactured_tol) X(error_floor) X(mass_spread_factor) X(confinement_tol)     \
          X(pde_tol) X(rate_halfwidth) X(min_r2) X(shell_slope_max) X(xi_ratio_max) X(dip_match)

void apply_bands(const json& o, Bands& b) {
  std::set<std::string> keys;
#define X(name) keys.insert(#name);
  DSHELL_BANDS(X)
#undef X
  reject_unknown(o, keys, "bands");
#define X(name) \
  if (o.contains(#name)) b.name = get<double>(o, #name, "bands");
  DSHELL_BANDS(X)
#undef X
}

std::string number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12e", v);
  return buf;
}

json finite_or_string(double v) {
  if (std::isfinite(v)) return v;
  return number(v);
}

std::string iso_time() {
  const std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

json environment() {
  json e;
  e["compiler"] = __VERSION__;
  e["cxx_standard"] = static_cast<long>(__cplusplus);
  e["eigen"] = std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
               std::to_string(EIGEN_MINOR_VERSION);
  e["hardware_threads"] = std::thread::hardware_concurrency();
  e["workers"] = worker_count();
  e["schema_version"] = kSchemaVersion;
  return e;
}

std::string plot_script(const std::vector<SuiteResult>& results, const std::vector<PlanCell>& cells) {
  std::ostringstream py;
  py << "# Plots the rate fits of this run. Usage: python3 plot.py (needs matplotlib).\n"
        "import csv, os\n"
        "import matplotlib\n"
        "matplotlib.use('Agg')\n"
        "import matplotlib.pyplot as plt\n\n"
        "here = os.path.dirname(os.path.abspath(__file__))\n"
        "fits = [\n";
  for (size_t i = 0; i < results.size(); ++i)
    for (const auto& f : results[i].fits) {
      py << "    ('" << cells[i].label << "', '" << f.name << "', [";
      for (const auto& [x, y] : f.fit.points) py << "(" << number(x) << ", " << number(y) << "), ";
      py << "], " << number(f.fit.slope) << ", " << number(f.fit.intercept) << "),\n";
    }
  py << "]\n\n"
        "for label, name, pts, slope, intercept in fits:\n"
        "    xs = [p[0] for p in pts]\n"
        "    ys = [p[1] for p in pts]\n"
        "    fig, ax = plt.subplots()\n"
        "    ax.loglog(xs, ys, 'o', label='data')\n"
        "    import math\n"
        "    ax.loglog(xs, [math.exp(intercept) * x ** slope for x in xs], '-', label='slope %.3f' % slope)\n"
        "    ax.set_title(label + ': ' + name)\n"
        "    ax.legend()\n"
        "    fig.savefig(os.path.join(here, label + '_' + name + '.png'), dpi=120)\n"
        "    plt.close(fig)\n";
  return py.str();
}

}  // namespace

json config_to_json(const SuiteConfig& c) {
  json j;
  j["surface"] = {{"kind", c.surface.kind}, {"semiaxes", {c.surface.semiaxes[0], c.surface.semiaxes[1], c.surface.semiaxes[2]}}};
  j["mesh"] = c.mesh;
  j["meshes"] = c.meshes;
  j["z"] = {c.z.real(), c.z.imag()};
  j["m"] = c.m;
  j["eps"] = c.eps;
  j["masses"] = c.masses;
  j["targets"] = c.targets;
  j["seed"] = c.seed;
  j["states"] = c.states;
  j["residual_states"] = c.residual_states;
  j["scan"] = {{"lo", c.scan_lo}, {"hi", c.scan_hi}, {"points", c.scan_points}, {"mode_window", c.scan_mode_window}};
  j["shell_radial"] = c.shell_radial;
  return j;
}

json bands_to_json(const Bands& b) {
  json j;
#define X(name) j[#name] = finite_or_string(b.name);
  DSHELL_BANDS(X)
#undef X
  return j;
}

json result_to_json(const SuiteResult& r) {
  json j;
  j["suite"] = r.suite;
  j["pass"] = r.pass();
  j["seconds"] = r.seconds;
  for (const auto& c : r.checks)
    j["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"value", finite_or_string(c.value)},
                           {"limit", finite_or_string(c.limit)}, {"detail", c.detail}});
  for (const auto& f : r.fits) {
    json pts = json::array();
    for (const auto& [x, y] : f.fit.points) pts.push_back({x, y});
    j["fits"].push_back({{"name", f.name},
                         {"slope", f.fit.slope},
                         {"intercept", f.fit.intercept},
                         {"r2", f.fit.r2},
                         {"band", {finite_or_string(f.fit.band_lo), finite_or_string(f.fit.band_hi)}},
                         {"min_r2", f.fit.min_r2},
                         {"pass", f.fit.pass},
                         {"points", pts}});
  }
  j["notes"] = r.notes;
  return j;
}

std::string git_blob_hash(const std::string& text) {
  const std::string blob = "blob " + std::to_string(text.size()) + std::string(1, '\0') + text;
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(blob.data(), blob.size(), md, &len, EVP_sha1(), nullptr) != 1)
    throw std::runtime_error("sha1 failed");
  std::ostringstream os;
  for (unsigned i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return os.str();
}

ExperimentPlan parse_plan(const json& doc) {
  reject_unknown(doc, {"schema_version", "defaults", "bands", "runs"}, "config");
  if (!doc.contains("schema_version")) bad("config", "missing schema_version");
  const int version = get<int>(doc, "schema_version", "config");
  if (version != kSchemaVersion) bad("config.schema_version", "unsupported version " + std::to_string(version));
  ExperimentPlan plan;
  SuiteConfig defaults;
  if (doc.contains("defaults")) {
    reject_unknown(doc["defaults"], kConfigKeys, "config.defaults");
    apply_config(doc["defaults"], defaults, "config.defaults");
  }
  if (doc.contains("bands")) apply_bands(doc["bands"], plan.bands);
  if (!doc.contains("runs") || !doc["runs"].is_array() || doc["runs"].empty()) bad("config.runs", "expected a nonempty array");
  std::set<std::string> labels;
  for (size_t i = 0; i < doc["runs"].size(); ++i) {
    const json& r = doc["runs"][i];
    const std::string where = "config.runs[" + std::to_string(i) + "]";
    std::set<std::string> allowed = kConfigKeys;
    allowed.insert({"suite", "label"});
    reject_unknown(r, allowed, where);
    PlanCell cell;
    if (!r.contains("suite")) bad(where, "missing suite");
    cell.suite = get<std::string>(r, "suite", where);
    if (!is_suite(cell.suite)) bad(where + ".suite", "unknown suite '" + cell.suite + "'");
    cell.config = defaults;
    json over = r;
    over.erase("suite");
    over.erase("label");
    apply_config(over, cell.config, where);
    cell.label = r.contains("label") ? get<std::string>(r, "label", where) : cell.suite + "-" + std::to_string(i);
    if (!labels.insert(cell.label).second) bad(where + ".label", "duplicate label '" + cell.label + "'");
    try {
      cell.config.validate(cell.suite);
    } catch (const std::invalid_argument& e) {
      bad(where, e.what());
    }
    plan.cells.push_back(std::move(cell));
  }
  plan.config_text = doc.dump(2);
  plan.config_hash = git_blob_hash(plan.config_text);
  return plan;
}

ExperimentPlan load_plan(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw std::invalid_argument("cannot open " + file.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(file.string() + ": " + e.what());
  }
  return parse_plan(doc);
}

ExperimentPlan single_suite_plan(const std::string& suite, int mesh, long seed) {
  json run = {{"suite", suite}, {"label", suite}};
  if (mesh > 0) run["mesh"] = mesh;
  if (seed >= 0) run["seed"] = seed;
  return parse_plan({{"schema_version", kSchemaVersion}, {"runs", json::array({run})}});
}

int worker_count() {
  const char* env = std::getenv("DSHELL_WORKERS");
  if (!env || !*env) return 1;
  char* end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (*end != '\0' || n < 1) return 1;
  return static_cast<int>(std::min<long>(n, 64));
}

void write_csv(const DataTable& t, const fs::path& file) {
  std::ofstream os(file);
  if (!os) throw std::runtime_error("cannot write " + file.string());
  for (size_t c = 0; c < t.columns.size(); ++c) os << (c ? "," : "") << t.columns[c];
  os << "\n";
  for (const auto& row : t.rows) {
    for (size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << number(row[c]);
    os << "\n";
  }
}

RunSummary run_plan(const ExperimentPlan& plan, const fs::path& out, const std::function<void(const std::string&)>& log) {
  fs::create_directories(out);
  const int workers = std::min<int>(worker_count(), static_cast<int>(plan.cells.size()));
  std::vector<SuiteResult> results(plan.cells.size());
  std::vector<std::string> errors(plan.cells.size());
  std::mutex io;
  auto emit = [&](const std::string& s) {
    std::lock_guard<std::mutex> lock(io);
    if (log) log(s);
  };
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < plan.cells.size(); i = next++) {
      const PlanCell& cell = plan.cells[i];
      emit("[" + cell.label + "] start");
      try {
        results[i] = run_suite(cell.suite, cell.config, plan.bands,
                               [&](const std::string& s) { emit("[" + cell.label + "] " + s); });
        std::lock_guard<std::mutex> lock(io);
        write_csv(results[i].table, out / (cell.label + ".csv"));
      } catch (const std::exception& e) {
        errors[i] = e.what();
        emit("[" + cell.label + "] error: " + errors[i]);
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  RunSummary summary;
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["config_hash"] = plan.config_hash;
  doc["config"] = json::parse(plan.config_text);
  doc["bands"] = bands_to_json(plan.bands);
  doc["environment"] = environment();
  doc["generated_at"] = iso_time();
  for (size_t i = 0; i < plan.cells.size(); ++i) {
    json c = {{"label", plan.cells[i].label}, {"config", config_to_json(plan.cells[i].config)},
              {"csv", plan.cells[i].label + ".csv"}};
    if (!errors[i].empty()) {
      c["error"] = errors[i];
      c["pass"] = false;
      summary.pass = false;
    } else {
      c["result"] = result_to_json(results[i]);
      c["pass"] = results[i].pass();
      summary.pass = summary.pass && results[i].pass();
    }
    doc["cells"].push_back(c);
  }
  doc["pass"] = summary.pass;
  std::ofstream(out / "summary.json") << doc.dump(2) << "\n";
  std::ofstream(out / "plot.py") << plot_script(results, plan.cells);
  summary.results = std::move(results);
  return summary;
}

bool print_report(const fs::path& dir, std::ostream& os) {
  std::ifstream in(dir / "summary.json");
  if (!in) throw std::invalid_argument("no summary.json in " + dir.string());
  json doc;
  in >> doc;
  bool pass = true;
  os << "config " << doc.value("config_hash", "?") << "  generated " << doc.value("generated_at", "?") << "\n";
  for (const auto& cell : doc["cells"]) {
    os << "\n== " << cell["label"].get<std::string>() << " (mesh " << cell["config"]["mesh"] << ", seed "
       << cell["config"]["seed"] << ")\n";
    if (cell.contains("error")) {
      os << "  ERROR " << cell["error"].get<std::string>() << "\n";
      pass = false;
      continue;
    }
    const json& r = cell["result"];
    for (const auto& c : r["checks"]) {
      os << "  " << (c["pass"].get<bool>() ? "pass " : "FAIL ") << std::left << std::setw(28)
         << c["name"].get<std::string>() << " " << c["value"].dump() << " (limit " << c["limit"].dump() << ")";
      if (!c["detail"].get<std::string>().empty()) os << "  " << c["detail"].get<std::string>();
      os << "\n";
      pass = pass && c["pass"].get<bool>();
    }
    os << "  " << r["seconds"].get<double>() << " s\n";
  }
  os << "\n" << (pass ? "all checks passed" : "some checks FAILED") << "\n";
  return pass;
}

}  // namespace dshell::cli
