// Verification suites shared by the CLI and the acceptance binary. Each suite
// runs one experiment family and returns raw rows, rate fits and threshold
// checks; thresholds come from Bands, which the caller owns.
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "diracshell/clifford.hpp"
#include "diracshell/geometry.hpp"
#include "diracshell/ratefit.hpp"

namespace dshell {

struct SurfaceSpec {
  std::string kind = "sphere";  // sphere | spheroid | ellipsoid
  Vec3 semiaxes{1.0, 1.0, 1.0};
  SurfaceQuadrature build(int N) const;
  std::string describe() const;
};

struct SuiteConfig {
  SurfaceSpec surface;
  int mesh = 24;
  std::vector<int> meshes;  // refinement ladder; empty: suite default around mesh
  cplx z{0.0, 0.5};
  double m = 1.0;
  std::vector<double> eps{0.2, 0.1, 0.05, 0.025};
  std::vector<double> masses{10, 20, 40, 80};
  int targets = 10;
  unsigned seed = 7;
  int states = 1000;          // symbols: random states for the identities
  int residual_states = 100;  // symbols: states for the transport residuals
  double scan_lo = -3.0, scan_hi = 3.0;
  int scan_points = 61;
  int scan_mode_window = 10;  // modes around m_j = 0 scanned when mesh > 16 (0: all)
  int shell_radial = 6;

  // Throws std::invalid_argument on empty or non-geometric sweeps.
  void validate(const std::string& suite) const;
};

// Thresholds. The defaults are the acceptance calibration; the library never
// applies a band on its own.
struct Bands {
  double algebra_tol = 1e-13;
  double spectral_tol = 1e-12;
  double expm_tol = 1e-10;
  double boundary_tol = 1e-12;
  double order_tol = 0.2;
  double residual_ratio = 3.0;  // second order gives 4 on step halving
  double residual_floor = 1e-10;
  double refine_ratio = 1.5;
  double jump_factor = 3.0;
  double manufactured_tol = 5e-3;
  double error_floor = 1e-8;  // manufactured bumps leave a ~3e-9 Gaussian tail on Sigma
  double mass_spread_factor = 2.0;
  double confinement_tol = 1e-2;
  double pde_tol = 1e-5;
  double rate_halfwidth = 0.3;
  double min_r2 = 0.9;
  double shell_slope_max = -0.7;
  double xi_ratio_max = 3.0;
  double dip_match = 1e-3;  // dip energies across meshes
};

struct Check {
  std::string name;
  bool pass = false;
  double value = 0.0;
  double limit = 0.0;
  std::string detail;
};

struct NamedFit {
  std::string name;
  RateFit fit;
};

struct DataTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  void add(std::vector<double> row) { rows.push_back(std::move(row)); }
};

struct SuiteResult {
  std::string suite;
  std::vector<Check> checks;
  std::vector<NamedFit> fits;
  DataTable table;
  std::vector<std::string> notes;
  double seconds = 0.0;

  bool pass() const;
  const Check* find(const std::string& name) const;
  const RateFit* fit(const std::string& name) const;
};

const std::vector<std::string>& suite_ids();
bool is_suite(const std::string& id);

// Runs one suite. progress (optional) receives one line per completed cell.
SuiteResult run_suite(const std::string& id, const SuiteConfig& cfg, const Bands& bands = {},
                      const std::function<void(const std::string&)>& progress = {});

}  // namespace dshell
