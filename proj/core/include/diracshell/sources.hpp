// Source functions f in L^2(R^3)^4 with known free resolvents, and target sets.
#pragma once

#include <memory>
#include <string>
#include <vector>

#include "diracshell/geometry.hpp"
#include "diracshell/kernel.hpp"
#include "diracshell/potential_ops.hpp"

namespace dshell {

enum class Region { OmegaPlus, Shell, OmegaMinusEps };

std::string region_name(Region r);

// Which region of the (Sigma, eps) configuration contains x. eps = 0 means no
// shell (Omega_-^0 = Omega_-).
Region classify(const ChartDescriptor& sigma, double eps, const Vec3& x);
// Signed distance-like coordinate: t(x) = +dist outside Sigma, -dist inside.
double normal_coordinate(const ChartDescriptor& sigma, const Vec3& x);

class Source {
 public:
  virtual ~Source() = default;
  virtual Region region() const = 0;
  virtual Spinor value(const Vec3& x) const = 0;
  // (D_{sp.m} - z)^{-1} f evaluated at x (f extended by zero).
  virtual Spinor free_resolvent(const SpectralPoint& sp, const Vec3& x) const = 0;
  virtual std::string describe() const = 0;
  // Mode index j on a 2N grid if the field is a single m_j mode, else -1.
  virtual int single_mode(int /*N*/) const { return -1; }
};

using SourcePtr = std::shared_ptr<const Source>;

// Scalar Yukawa/Helmholtz potential of a unit Gaussian e^{-r^2/(2 sigma^2)}:
// U(r) = int G_k(|x - y|) g(y) dy and U'(r), by exact radial reduction.
void gaussian_potential(cplx k, double sigma, double r, cplx& U, cplx& dU);

// f = sum_k A_k exp(-|x - c_k|^2 / (2 sigma_k^2)).
class GaussianSource : public Source {
 public:
  struct Bump {
    Vec3 center;
    double sigma;
    Spinor amplitude;
  };
  GaussianSource(std::vector<Bump> bumps, Region region);
  Region region() const override { return region_; }
  Spinor value(const Vec3& x) const override;
  Spinor free_resolvent(const SpectralPoint& sp, const Vec3& x) const override;
  std::string describe() const override;
  const std::vector<Bump>& bumps() const { return bumps_; }
  // Smallest distance from a bump centre to Sigma in units of its width.
  double margin(const ChartDescriptor& sigma, double eps) const;

 private:
  std::vector<Bump> bumps_;
  Region region_;
};

// u = A exp(-|x - c|^2 / (2 sigma^2)), f = (D_m - z) u for a fixed (z, m).
// The free resolvent at that spectral point is u itself.
class ManufacturedBump : public Source {
 public:
  ManufacturedBump(Vec3 center, double sigma, Spinor amplitude, SpectralPoint sp, Region region);
  Region region() const override { return region_; }
  Spinor value(const Vec3& x) const override;
  Spinor solution(const Vec3& x) const;
  Spinor free_resolvent(const SpectralPoint& sp, const Vec3& x) const override;
  std::string describe() const override;

 private:
  Vec3 c_;
  double sigma_;
  Spinor a_;
  SpectralPoint sp_;
  Region region_;
};

// f(x) = chi(t) h(cos theta) e^{i n phi} A_s in the shell between Sigma and
// Sigma^eps, with x = x_Sigma(u) + t nu(u), u = (theta, phi) and A_s a basis
// spinor. For n = m_j - sigma_s/2 the field is a single m_j mode.
class ShellLayerSource : public Source {
 public:
  ShellLayerSource(const SurfaceQuadrature& sigma, double eps, int spin_component, int azimuthal_n,
                   std::function<double(double)> chi, std::function<double(double)> h, int n_t = 8);
  Region region() const override { return Region::Shell; }
  Spinor value(const Vec3& x) const override;
  Spinor density(const Vec3& u, double t) const;
  Spinor free_resolvent(const SpectralPoint& sp, const Vec3& x) const override;
  std::string describe() const override;
  double eps() const { return eps_; }
  int single_mode(int N) const override;
  int spin_component() const { return s_; }
  int azimuthal_n() const { return n_; }

 private:
  SurfaceQuadrature sigma_;
  double eps_;
  int s_, n_, n_t_;
  std::function<double(double)> chi_, h_;
};

// Target points with region tags.
struct EvaluationSet {
  std::vector<Vec3> points;
  std::vector<Region> regions;
  int size() const { return static_cast<int>(points.size()); }
  std::vector<Vec3> in_region(Region r) const;
  std::vector<int> indices(Region r) const;
};

// Checks every point is at least `guard` away from Sigma (and Sigma^eps).
void check_evaluation_set(const EvaluationSet& e, const ChartDescriptor& sigma, double eps, double guard);

// Seeded random points at normal coordinate in [t0, t1] (negative inside).
EvaluationSet random_targets(const ChartDescriptor& sigma, double eps, int count, double t0, double t1,
                             unsigned seed);

}  // namespace dshell
