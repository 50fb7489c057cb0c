// Block operators between C^4 densities on axisymmetric grids, stored in the
// azimuthal mode basis.
//
// On a grid with 2N azimuthal points per ring, a spinor density of total
// angular momentum m_j = j - N + 1/2 (j = 0..2N-1) has components
//   f(a, b, s) = e^{i n_s(j) phi_b} F(a, s),   n_s(j) = m_j - sigma_s / 2,
// with sigma = (+1, -1, +1, -1). Rotation-equivariant operators are block
// diagonal in j; each block maps F on the source rings to F on the target
// rings. A dense operator is the special case of a single block acting on
// node vectors.
#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "diracshell/kernel.hpp"

namespace dshell {

inline int spin_sigma(int s) { return (s % 2 == 0) ? 1 : -1; }
// Integer azimuthal frequency of component s in mode j on a 2N grid.
inline int mode_freq(int j, int N, int s) { return j - N + (spin_sigma(s) == 1 ? 0 : 1); }

struct ModeLayout {
  int nphi = 0;            // azimuthal points per ring (2N); 0 for a dense layout
  std::vector<int> modes;  // mode indices j present (dense: {0})

  bool modal() const { return nphi > 0; }
  int count() const { return static_cast<int>(modes.size()); }
  bool operator==(const ModeLayout& o) const { return nphi == o.nphi && modes == o.modes; }
  static ModeLayout all_modes(int N);
  static ModeLayout dense();
  static ModeLayout subset(int N, std::vector<int> modes);
};

// Node density (rings x nphi nodes, 4 components each, node-major) to mode
// coefficients: column k holds F for mode layout.modes[k] (4 * rings entries).
Eigen::MatrixXcd to_modes(const Eigen::VectorXcd& f, int rings, const ModeLayout& layout);
Eigen::VectorXcd from_modes(const Eigen::MatrixXcd& F, int rings, const ModeLayout& layout);

enum class OpKind { Layer, Cauchy, Lambda, PS, Volume, Composite, Pointwise };

class BlockOperator {
 public:
  OpKind kind = OpKind::Composite;
  std::string source, target;  // descriptors
  SpectralPoint sp;
  ModeLayout layout;
  int trows = 0;  // target rings (modal) or nodes (dense)
  int scols = 0;  // source rings (modal) or nodes (dense)
  std::vector<Eigen::MatrixXcd> blocks;

  BlockOperator() = default;
  BlockOperator(const ModeLayout& l, int tr, int sc);

  int nmodes() const { return layout.count(); }
  Eigen::MatrixXcd& block(int k) { return blocks[k]; }
  const Eigen::MatrixXcd& block(int k) const { return blocks[k]; }

  // Applies to a node-space density (length 4 * scols * nphi, or 4 * scols).
  Eigen::VectorXcd apply(const Eigen::VectorXcd& f) const;
  // Full node-space matrix (expensive for large grids).
  Eigen::MatrixXcd to_dense() const;

  BlockOperator operator*(const BlockOperator& o) const;
  BlockOperator operator+(const BlockOperator& o) const;
  BlockOperator operator-(const BlockOperator& o) const;
  BlockOperator operator*(cplx a) const;
  BlockOperator adjoint() const;  // Euclidean adjoint per block

  // Ring (or node) sub-block [r0, r0+nr) x [c0, c0+nc).
  BlockOperator sub(int r0, int nr, int c0, int nc) const;

  // Largest singular value of W_t^{1/2} B W_s^{-1/2} over all blocks; weights
  // per ring (modal) or per node (dense).
  double weighted_norm(const std::vector<double>& wt, const std::vector<double>& ws) const;
  double min_singular_value() const;
  double max_abs() const;

  static BlockOperator identity(const ModeLayout& l, int rings);
  static BlockOperator zero(const ModeLayout& l, int tr, int sc);
  // Pointwise multiplication; m holds one matrix per ring (modal: the b = 0
  // node) or per node (dense).
  static BlockOperator pointwise(const ModeLayout& l, const std::vector<SpinorMatrix>& m);
  // [[A, B], [C, D]] with target/source rings concatenated.
  static BlockOperator block2(const BlockOperator& A, const BlockOperator& B, const BlockOperator& C,
                              const BlockOperator& D);
};

struct InverseResult {
  BlockOperator inverse;
  double condition = 0.0;
};

// Dense LU per block; throws std::runtime_error when the 2-norm condition
// number exceeds max_condition.
InverseResult invert(const BlockOperator& op, double max_condition = 1e12);
double condition_number(const BlockOperator& op);

// Solves op x = rhs (node space) by LU per block, with the same condition check.
Eigen::VectorXcd solve(const BlockOperator& op, const Eigen::VectorXcd& rhs, double max_condition = 1e12);

}  // namespace dshell
