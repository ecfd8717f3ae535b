#include "telefid/properties.hpp"

#include <algorithm>
#include <cmath>

namespace telefid {

namespace {

constexpr double kSpectrumClamp = 1e-12;

Mat4 sqrt_psd(const Mat4& m) {
  const auto eig = hermitian_eig(m);
  Mat4 out;
  for (std::size_t k = 0; k < 4; ++k) {
    const double root = std::sqrt(std::max(0.0, eig.values[k]));
    if (root == 0.0) continue;
    const auto v = eig.vector(k);
    out += Mat4::outer(v, v) * cplx(root);
  }
  return out;
}

const Mat4& spin_flip() {
  static const Mat4 yy = kron(pauli(2), pauli(2));
  return yy;
}

}  // namespace

double linear_entropy(const DensityMatrix& rho) { return 4.0 / 3.0 * (1.0 - rho.purity()); }

double linear_entropy(const CanonicalForm& c) {
  double s = 0.0;
  for (int i = 0; i < 3; ++i) s += c.r[i] * c.r[i] + c.s[i] * c.s[i] + c.t_abs[i] * c.t_abs[i];
  return 1.0 - s / 3.0;
}

ChshValue chsh(const CanonicalForm& c) {
  std::array<double, 3> sq{c.t_abs[0] * c.t_abs[0], c.t_abs[1] * c.t_abs[1], c.t_abs[2] * c.t_abs[2]};
  std::sort(sq.begin(), sq.end(), std::greater<>());
  ChshValue v;
  v.m = sq[0] + sq[1];
  v.b = 2.0 * std::sqrt(v.m);
  return v;
}

ChshValue chsh(const DensityMatrix& rho) {
  const Svd3 svd = svd3_special(hs_decompose(rho).T);
  ChshValue v;
  v.m = svd.d[0] * svd.d[0] + svd.d[1] * svd.d[1];
  v.b = 2.0 * std::sqrt(v.m);
  return v;
}

double concurrence(const DensityMatrix& rho) {
  const Mat4 root = sqrt_psd(rho.matrix());
  const Mat4 flipped = spin_flip() * rho.matrix().conj() * spin_flip();
  const Mat4 r = root * flipped * root;
  // r is Hermitian up to rounding; symmetrize before diagonalizing.
  const Mat4 sym = (r + r.adjoint()) * cplx(0.5);
  const auto eig = hermitian_eig(sym);
  std::array<double, 4> a{};
  for (std::size_t k = 0; k < 4; ++k) {
    const double mu = eig.values[k];
    a[k] = mu < kSpectrumClamp ? 0.0 : std::sqrt(mu);
  }
  // values are ascending: a[3] is the largest
  return std::max(0.0, a[3] - a[2] - a[1] - a[0]);
}

double negativity(const DensityMatrix& rho) {
  const auto eig = hermitian_eig(partial_transpose(rho));
  return std::max(0.0, -2.0 * eig.values[0]);
}

PropertyReport properties(const DensityMatrix& rho) {
  PropertyReport p;
  p.linear_entropy = linear_entropy(rho);
  const ChshValue c = chsh(rho);
  p.chsh_m = c.m;
  p.chsh_b = c.b;
  p.concurrence = concurrence(rho);
  p.negativity = negativity(rho);
  return p;
}

}  // namespace telefid
