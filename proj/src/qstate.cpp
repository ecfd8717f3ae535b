#include "telefid/qstate.hpp"

#include <string>

#include "telefid/errors.hpp"

namespace telefid {

namespace {

const Mat4& pauli_pair(int i, int j) {
  static const std::array<Mat4, 16> table = [] {
    std::array<Mat4, 16> t;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) t[a * 4 + b] = kron(pauli(a), pauli(b));
    return t;
  }();
  return table[static_cast<std::size_t>(i * 4 + j)];
}

double trace_with(const Mat4& m, const Mat4& p) {
  // Tr(m p) for Hermitian p.
  double s = 0.0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t k = 0; k < 4; ++k) s += (m(i, k) * p(k, i)).real();
  return s;
}

}  // namespace

DensityMatrix validate(const Mat4& m) {
  double asym = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      const cplx x = m(i, j);
      if (!std::isfinite(x.real()) || !std::isfinite(x.imag()))
        throw Error(ErrorKind::NonHermitian, "matrix has non-finite entries");
      asym = std::max(asym, std::abs(x - std::conj(m(j, i))));
    }
  }
  if (asym > kStateTolerance)
    throw Error(ErrorKind::NonHermitian,
                "matrix deviates from Hermitian by " + std::to_string(asym), asym);
  const double tr = m.trace().real();
  if (std::abs(tr - 1.0) > kStateTolerance)
    throw Error(ErrorKind::TraceNotOne, "trace is " + std::to_string(tr), tr);
  const auto eig = hermitian_eig(m);
  if (eig.values[0] < -kStateTolerance)
    throw Error(ErrorKind::NotPositive,
                "worst eigenvalue " + std::to_string(eig.values[0]), eig.values[0]);
  return DensityMatrix(m);
}

double DensityMatrix::purity() const {
  double s = 0.0;
  for (const auto& x : m_.data()) s += std::norm(x);
  return s;
}

HilbertSchmidtForm hs_decompose(const DensityMatrix& rho) {
  HilbertSchmidtForm f;
  const Mat4& m = rho.matrix();
  for (int i = 0; i < 3; ++i) {
    f.R[i] = trace_with(m, pauli_pair(i + 1, 0));
    f.S[i] = trace_with(m, pauli_pair(0, i + 1));
    for (int j = 0; j < 3; ++j) f.T(i, j) = trace_with(m, pauli_pair(i + 1, j + 1));
  }
  return f;
}

Mat4 hs_operator(const HilbertSchmidtForm& f) {
  Mat4 m = pauli_pair(0, 0);
  for (int i = 0; i < 3; ++i) {
    m += pauli_pair(i + 1, 0) * cplx(f.R[i]);
    m += pauli_pair(0, i + 1) * cplx(f.S[i]);
    for (int j = 0; j < 3; ++j)
      if (f.T(i, j) != 0.0) m += pauli_pair(i + 1, j + 1) * cplx(f.T(i, j));
  }
  return m * cplx(0.25);
}

DensityMatrix hs_compose(const HilbertSchmidtForm& f) { return validate(hs_operator(f)); }

Mat4 partial_transpose(const Mat4& m) {
  Mat4 out;
  // index (a b) with a the first-qubit bit.
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b)
      for (std::size_t c = 0; c < 2; ++c)
        for (std::size_t d = 0; d < 2; ++d) out(a * 2 + b, c * 2 + d) = m(a * 2 + d, c * 2 + b);
  return out;
}

Mat4 apply_local(const Mat4& m, const Mat2& u, const Mat2& v) {
  const Mat4 w = kron(u, v);
  return w * m * w.adjoint();
}

DensityMatrix apply_local(const DensityMatrix& rho, const Mat2& u, const Mat2& v) {
  return validate(apply_local(rho.matrix(), u, v));
}

Mat2 trace_out_second(const Mat4& m) {
  Mat2 out;
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t c = 0; c < 2; ++c)
      for (std::size_t b = 0; b < 2; ++b) out(a, c) += m(a * 2 + b, c * 2 + b);
  return out;
}

Mat2 trace_out_first(const Mat4& m) {
  Mat2 out;
  for (std::size_t b = 0; b < 2; ++b)
    for (std::size_t d = 0; d < 2; ++d)
      for (std::size_t a = 0; a < 2; ++a) out(b, d) += m(a * 2 + b, a * 2 + d);
  return out;
}

// ---------------------------------------------------------------------------

PureState2Q::PureState2Q(const CVector<4>& amplitudes) : a_(amplitudes) {
  const double n = norm(a_);
  if (!(n > 0.0) || !std::isfinite(n))
    throw Error(ErrorKind::InvalidArgument, "pure state amplitudes must be nonzero and finite");
  for (auto& x : a_) x /= n;
}

DensityMatrix PureState2Q::density() const { return validate(Mat4::outer(a_, a_)); }

PureState2Q bell_vector(BellState which) {
  const double h = 1.0 / std::sqrt(2.0);
  switch (which) {
    case BellState::PhiPlus: return PureState2Q({h, 0.0, 0.0, h});
    case BellState::PhiMinus: return PureState2Q({h, 0.0, 0.0, -h});
    case BellState::PsiPlus: return PureState2Q({0.0, h, h, 0.0});
    case BellState::PsiMinus: return PureState2Q({0.0, h, -h, 0.0});
  }
  throw Error(ErrorKind::OutOfRange, "unknown Bell state");
}

DensityMatrix make_werner(double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw Error(ErrorKind::OutOfRange, "Werner parameter must lie in [0, 1]", p);
  const auto phi = bell_vector(BellState::PhiPlus).amplitudes();
  return validate(Mat4::outer(phi, phi) * cplx(p) + Mat4::identity() * cplx((1.0 - p) / 4.0));
}

DensityMatrix make_pure_schmidt(double a) {
  if (!(a >= 0.0 && a <= 1.0))
    throw Error(ErrorKind::OutOfRange, "Schmidt coefficient must lie in [0, 1]", a);
  return PureState2Q({a, 0.0, 0.0, std::sqrt(std::max(0.0, 1.0 - a * a))}).density();
}

DensityMatrix make_bell(int k) {
  if (k < 1 || k > 4) throw Error(ErrorKind::OutOfRange, "Bell index must be 1..4", k);
  return bell_vector(static_cast<BellState>(k)).density();
}

DensityMatrix maximally_mixed() { return validate(Mat4::identity() * cplx(0.25)); }

// ---------------------------------------------------------------------------

DensityMatrix sample_random_state(std::uint64_t seed, SampleKind kind) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  if (kind == SampleKind::HaarPure) {
    CVector<4> v{};
    for (auto& x : v) x = cplx(normal(rng), normal(rng));
    return PureState2Q(v).density();
  }
  Mat4 g;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) g(i, j) = cplx(normal(rng), normal(rng));
  Mat4 m = g * g.adjoint();
  m *= cplx(1.0 / m.trace().real());
  return validate(m);
}

Mat2 random_su2(std::mt19937_64& rng) {
  // Uniform unit quaternion.
  std::normal_distribution<double> normal(0.0, 1.0);
  std::array<double, 4> q{};
  double n = 0.0;
  do {
    for (auto& x : q) x = normal(rng);
    n = std::sqrt(q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3]);
  } while (n < 1e-12);
  for (auto& x : q) x /= n;
  Mat2 u;
  u(0, 0) = cplx(q[0], q[3]);
  u(0, 1) = cplx(q[2], q[1]);
  u(1, 0) = cplx(-q[2], q[1]);
  u(1, 1) = cplx(q[0], -q[3]);
  return u;
}

}  // namespace telefid
