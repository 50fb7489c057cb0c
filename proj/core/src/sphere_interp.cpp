#include "diracshell/sphere_interp.hpp"

#include <cmath>
#include <stdexcept>

namespace dshell {

void normalized_legendre_column(int L, int n, double x, double* out) {
  if (n < 0 || n > L) throw std::invalid_argument("normalized_legendre_column: need 0 <= n <= L");
  const double s = std::sqrt(std::max(0.0, 1.0 - x * x));
  double pmm = std::sqrt(0.5);
  for (int k = 1; k <= n; ++k) pmm *= std::sqrt((2.0 * k + 1.0) / (2.0 * k)) * s;
  out[0] = pmm;
  if (L == n) return;
  out[1] = x * std::sqrt(2.0 * n + 3.0) * pmm;
  for (int l = n + 2; l <= L; ++l) {
    const double ll = l, nn = n;
    const double a = std::sqrt((4.0 * ll * ll - 1.0) / (ll * ll - nn * nn));
    const double b = std::sqrt(((ll - 1.0) * (ll - 1.0) - nn * nn) / (4.0 * (ll - 1.0) * (ll - 1.0) - 1.0));
    out[l - n] = a * (x * out[l - n - 1] - b * out[l - n - 2]);
  }
}

Eigen::MatrixXd legendre_block(int L, int n, const std::vector<double>& xq) {
  Eigen::MatrixXd P(xq.size(), L + 1 - n);
  std::vector<double> col(L + 1 - n);
  for (size_t q = 0; q < xq.size(); ++q) {
    normalized_legendre_column(L, n, xq[q], col.data());
    for (int l = 0; l <= L - n; ++l) P(q, l) = col[l];
  }
  return P;
}

RingInterpolator::RingInterpolator(const std::vector<double>& ring_cos, const std::vector<double>& ring_gw)
    : ring_cos_(ring_cos), ring_gw_(ring_gw), L_(static_cast<int>(ring_cos.size()) - 1) {
  pc_.resize(L_ + 1);
  for (int n = 0; n <= L_; ++n) {
    pc_[n] = legendre_block(L_, n, ring_cos_);
    for (int c = 0; c < rings(); ++c) pc_[n].row(c) *= ring_gw_[c];
  }
}

Eigen::MatrixXd RingInterpolator::radial(int n, const std::vector<double>& xq) const {
  n = std::abs(n);
  if (n > L_) return Eigen::MatrixXd::Zero(xq.size(), rings());
  return legendre_block(L_, n, xq) * pc_[n].transpose();
}

cplx RingInterpolator::evaluate(const Eigen::VectorXcd& f, const Vec3& u) const {
  const int N = rings();
  const int nb = 2 * N;
  if (f.size() != N * nb) throw std::invalid_argument("RingInterpolator::evaluate: size mismatch");
  const double phi = std::atan2(u[1], u[0]);
  const std::vector<double> xq{std::max(-1.0, std::min(1.0, u[2]))};
  cplx acc = 0.0;
  for (int n = -L_; n <= L_; ++n) {
    const Eigen::MatrixXd R = radial(n, xq);
    for (int c = 0; c < N; ++c) {
      cplx fh = 0.0;
      for (int d = 0; d < nb; ++d) fh += std::exp(cplx(0.0, -n * 2.0 * M_PI * d / nb)) * f[c * nb + d];
      acc += R(0, c) * fh / double(nb) * std::exp(cplx(0.0, n * phi));
    }
  }
  return acc;
}

std::vector<Eigen::MatrixXcd> RingInterpolator::harmonic_coefficients(const Eigen::MatrixXcd& fhat,
                                                                     int ncomp) const {
  const int N = rings();
  if (fhat.rows() != N * ncomp || fhat.cols() != 2 * L_ + 1)
    throw std::invalid_argument("harmonic_coefficients: shape mismatch");
  std::vector<Eigen::MatrixXcd> a(2 * L_ + 1);
  for (int n = -L_; n <= L_; ++n) {
    const Eigen::MatrixXd& P = pc_[std::abs(n)];
    Eigen::MatrixXcd F(N, ncomp);
    for (int c = 0; c < N; ++c)
      for (int k = 0; k < ncomp; ++k) F(c, k) = fhat(c * ncomp + k, n + L_);
    a[n + L_] = P.transpose().cast<cplx>() * F;
  }
  return a;
}

Eigen::MatrixXcd RingInterpolator::synthesize(const std::vector<Eigen::MatrixXcd>& coeffs,
                                              const std::vector<double>& xq,
                                              const std::vector<double>& phiq) const {
  const int ncomp = static_cast<int>(coeffs[0].cols());
  const int Q = static_cast<int>(xq.size());
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(Q, ncomp);
  for (int n = 0; n <= L_; ++n) {
    const Eigen::MatrixXd P = legendre_block(L_, n, xq);
    const Eigen::MatrixXcd vp = P.cast<cplx>() * coeffs[n + L_];
    for (int q = 0; q < Q; ++q) out.row(q) += std::polar(1.0, n * phiq[q]) * vp.row(q);
    if (n == 0) continue;
    const Eigen::MatrixXcd vm = P.cast<cplx>() * coeffs[L_ - n];
    for (int q = 0; q < Q; ++q) out.row(q) += std::polar(1.0, -n * phiq[q]) * vm.row(q);
  }
  return out;
}

}  // namespace dshell
