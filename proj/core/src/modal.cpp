#include "diracshell/modal.hpp"

#include <cmath>
#include <stdexcept>

namespace dshell {

ModeLayout ModeLayout::all_modes(int N) {
  ModeLayout l;
  l.nphi = 2 * N;
  for (int j = 0; j < 2 * N; ++j) l.modes.push_back(j);
  return l;
}

ModeLayout ModeLayout::dense() {
  ModeLayout l;
  l.nphi = 0;
  l.modes = {0};
  return l;
}

ModeLayout ModeLayout::subset(int N, std::vector<int> modes) {
  ModeLayout l;
  l.nphi = 2 * N;
  for (int j : modes)
    if (j < 0 || j >= 2 * N) throw std::out_of_range("ModeLayout::subset: mode index out of range");
  l.modes = std::move(modes);
  return l;
}

Eigen::MatrixXcd to_modes(const Eigen::VectorXcd& f, int rings, const ModeLayout& layout) {
  if (!layout.modal()) {
    Eigen::MatrixXcd F(f.size(), 1);
    F.col(0) = f;
    return F;
  }
  const int nphi = layout.nphi;
  const int N = nphi / 2;
  if (f.size() != 4 * rings * nphi) throw std::invalid_argument("to_modes: density size mismatch");
  Eigen::MatrixXcd F = Eigen::MatrixXcd::Zero(4 * rings, layout.count());
  std::vector<cplx> tw(nphi);
  for (int k = 0; k < layout.count(); ++k) {
    const int j = layout.modes[k];
    for (int s = 0; s < 4; ++s) {
      const int n = mode_freq(j, N, s);
      for (int b = 0; b < nphi; ++b) tw[b] = std::polar(1.0 / nphi, -2.0 * M_PI * n * b / nphi);
      for (int a = 0; a < rings; ++a) {
        cplx acc = 0.0;
        const int base = a * nphi;
        for (int b = 0; b < nphi; ++b) acc += tw[b] * f[4 * (base + b) + s];
        F(4 * a + s, k) = acc;
      }
    }
  }
  return F;
}

Eigen::VectorXcd from_modes(const Eigen::MatrixXcd& F, int rings, const ModeLayout& layout) {
  if (!layout.modal()) return F.col(0);
  const int nphi = layout.nphi;
  const int N = nphi / 2;
  Eigen::VectorXcd f = Eigen::VectorXcd::Zero(4 * rings * nphi);
  std::vector<cplx> tw(nphi);
  for (int k = 0; k < layout.count(); ++k) {
    const int j = layout.modes[k];
    for (int s = 0; s < 4; ++s) {
      const int n = mode_freq(j, N, s);
      for (int b = 0; b < nphi; ++b) tw[b] = std::polar(1.0, 2.0 * M_PI * n * b / nphi);
      for (int a = 0; a < rings; ++a) {
        const cplx v = F(4 * a + s, k);
        const int base = a * nphi;
        for (int b = 0; b < nphi; ++b) f[4 * (base + b) + s] += tw[b] * v;
      }
    }
  }
  return f;
}

BlockOperator::BlockOperator(const ModeLayout& l, int tr, int sc) : layout(l), trows(tr), scols(sc) {
  blocks.assign(l.count(), Eigen::MatrixXcd::Zero(4 * tr, 4 * sc));
}

Eigen::VectorXcd BlockOperator::apply(const Eigen::VectorXcd& f) const {
  const Eigen::MatrixXcd F = to_modes(f, scols, layout);
  Eigen::MatrixXcd G(4 * trows, nmodes());
  for (int k = 0; k < nmodes(); ++k) G.col(k) = blocks[k] * F.col(k);
  return from_modes(G, trows, layout);
}

Eigen::MatrixXcd BlockOperator::to_dense() const {
  if (!layout.modal()) return blocks[0];
  const int nphi = layout.nphi;
  const int N = nphi / 2;
  Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(4 * trows * nphi, 4 * scols * nphi);
  for (int k = 0; k < nmodes(); ++k) {
    const int j = layout.modes[k];
    const Eigen::MatrixXcd& B = blocks[k];
    for (int a = 0; a < trows; ++a)
      for (int b = 0; b < nphi; ++b)
        for (int s = 0; s < 4; ++s) {
          const cplx eo = std::polar(1.0, 2.0 * M_PI * mode_freq(j, N, s) * b / nphi);
          const int row = 4 * (a * nphi + b) + s;
          for (int c = 0; c < scols; ++c)
            for (int d = 0; d < nphi; ++d)
              for (int t = 0; t < 4; ++t) {
                const cplx ei = std::polar(1.0 / nphi, -2.0 * M_PI * mode_freq(j, N, t) * d / nphi);
                D(row, 4 * (c * nphi + d) + t) += eo * B(4 * a + s, 4 * c + t) * ei;
              }
        }
  }
  return D;
}

namespace {
void check_same(const BlockOperator& a, const BlockOperator& b, const char* what) {
  if (!(a.layout == b.layout)) throw std::invalid_argument(std::string(what) + ": mode layouts differ");
}
}  // namespace

BlockOperator BlockOperator::operator*(const BlockOperator& o) const {
  check_same(*this, o, "BlockOperator product");
  if (scols != o.trows) throw std::invalid_argument("BlockOperator product: inner dimensions differ");
  BlockOperator r(layout, trows, o.scols);
  for (int k = 0; k < nmodes(); ++k) r.blocks[k].noalias() = blocks[k] * o.blocks[k];
  r.sp = sp;
  return r;
}

BlockOperator BlockOperator::operator+(const BlockOperator& o) const {
  check_same(*this, o, "BlockOperator sum");
  if (trows != o.trows || scols != o.scols) throw std::invalid_argument("BlockOperator sum: shapes differ");
  BlockOperator r = *this;
  r.kind = OpKind::Composite;
  for (int k = 0; k < nmodes(); ++k) r.blocks[k] += o.blocks[k];
  return r;
}

BlockOperator BlockOperator::operator-(const BlockOperator& o) const { return *this + o * cplx(-1.0); }

BlockOperator BlockOperator::operator*(cplx a) const {
  BlockOperator r = *this;
  for (auto& b : r.blocks) b *= a;
  return r;
}

BlockOperator BlockOperator::adjoint() const {
  BlockOperator r(layout, scols, trows);
  for (int k = 0; k < nmodes(); ++k) r.blocks[k] = blocks[k].adjoint();
  r.source = target;
  r.target = source;
  return r;
}

BlockOperator BlockOperator::sub(int r0, int nr, int c0, int nc) const {
  if (r0 < 0 || c0 < 0 || r0 + nr > trows || c0 + nc > scols) throw std::out_of_range("BlockOperator::sub");
  BlockOperator r(layout, nr, nc);
  for (int k = 0; k < nmodes(); ++k) r.blocks[k] = blocks[k].block(4 * r0, 4 * c0, 4 * nr, 4 * nc);
  r.sp = sp;
  return r;
}

double BlockOperator::weighted_norm(const std::vector<double>& wt, const std::vector<double>& ws) const {
  if (static_cast<int>(wt.size()) != trows || static_cast<int>(ws.size()) != scols)
    throw std::invalid_argument("weighted_norm: weight size mismatch");
  double best = 0.0;
  for (const auto& B : blocks) {
    Eigen::MatrixXcd S = B;
    for (int a = 0; a < trows; ++a) S.middleRows(4 * a, 4) *= std::sqrt(wt[a]);
    for (int c = 0; c < scols; ++c) S.middleCols(4 * c, 4) /= std::sqrt(ws[c]);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(S);
    if (svd.singularValues().size()) best = std::max(best, svd.singularValues()[0]);
  }
  return best;
}

double BlockOperator::min_singular_value() const {
  double best = INFINITY;
  for (const auto& B : blocks) {
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(B);
    const auto& sv = svd.singularValues();
    if (sv.size()) best = std::min(best, sv[sv.size() - 1]);
  }
  return best;
}

double BlockOperator::max_abs() const {
  double m = 0.0;
  for (const auto& B : blocks)
    if (B.size()) m = std::max(m, B.cwiseAbs().maxCoeff());
  return m;
}

BlockOperator BlockOperator::identity(const ModeLayout& l, int rings) {
  BlockOperator r(l, rings, rings);
  for (auto& b : r.blocks) b.setIdentity();
  r.kind = OpKind::Pointwise;
  return r;
}

BlockOperator BlockOperator::zero(const ModeLayout& l, int tr, int sc) { return BlockOperator(l, tr, sc); }

BlockOperator BlockOperator::pointwise(const ModeLayout& l, const std::vector<SpinorMatrix>& m) {
  const int n = static_cast<int>(m.size());
  BlockOperator r(l, n, n);
  r.kind = OpKind::Pointwise;
  for (auto& b : r.blocks)
    for (int a = 0; a < n; ++a) b.block<4, 4>(4 * a, 4 * a) = m[a];
  return r;
}

BlockOperator BlockOperator::block2(const BlockOperator& A, const BlockOperator& B, const BlockOperator& C,
                                    const BlockOperator& D) {
  check_same(A, B, "block2");
  check_same(A, C, "block2");
  check_same(A, D, "block2");
  if (A.trows != B.trows || C.trows != D.trows || A.scols != C.scols || B.scols != D.scols)
    throw std::invalid_argument("block2: inconsistent block shapes");
  BlockOperator r(A.layout, A.trows + C.trows, A.scols + B.scols);
  r.kind = OpKind::Composite;
  r.sp = A.sp;
  const int ta = 4 * A.trows, sa = 4 * A.scols;
  for (int k = 0; k < A.nmodes(); ++k) {
    r.blocks[k].topLeftCorner(ta, sa) = A.blocks[k];
    r.blocks[k].topRightCorner(ta, 4 * B.scols) = B.blocks[k];
    r.blocks[k].bottomLeftCorner(4 * C.trows, sa) = C.blocks[k];
    r.blocks[k].bottomRightCorner(4 * D.trows, 4 * D.scols) = D.blocks[k];
  }
  return r;
}

double condition_number(const BlockOperator& op) {
  double smax = 0.0, smin = INFINITY;
  for (const auto& B : op.blocks) {
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(B);
    const auto& sv = svd.singularValues();
    if (!sv.size()) continue;
    smax = std::max(smax, sv[0]);
    smin = std::min(smin, sv[sv.size() - 1]);
  }
  return smin > 0.0 ? smax / smin : INFINITY;
}

InverseResult invert(const BlockOperator& op, double max_condition) {
  if (op.trows != op.scols) throw std::invalid_argument("invert: operator is not square");
  InverseResult r;
  r.condition = condition_number(op);
  if (!(r.condition <= max_condition))
    throw std::runtime_error("invert: operator is numerically singular (condition " + std::to_string(r.condition) +
                             ")");
  r.inverse = BlockOperator(op.layout, op.trows, op.scols);
  r.inverse.sp = op.sp;
  r.inverse.kind = OpKind::Composite;
  for (int k = 0; k < op.nmodes(); ++k) r.inverse.blocks[k] = op.blocks[k].partialPivLu().inverse();
  return r;
}

Eigen::VectorXcd solve(const BlockOperator& op, const Eigen::VectorXcd& rhs, double max_condition) {
  if (op.trows != op.scols) throw std::invalid_argument("solve: operator is not square");
  const double cond = condition_number(op);
  if (!(cond <= max_condition))
    throw std::runtime_error("solve: operator is numerically singular (condition " + std::to_string(cond) + ")");
  const Eigen::MatrixXcd F = to_modes(rhs, op.scols, op.layout);
  Eigen::MatrixXcd X(F.rows(), F.cols());
  for (int k = 0; k < op.nmodes(); ++k) X.col(k) = op.blocks[k].partialPivLu().solve(F.col(k));
  return from_modes(X, op.trows, op.layout);
}

}  // namespace dshell
