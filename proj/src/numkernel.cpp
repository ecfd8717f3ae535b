#include "telefid/numkernel.hpp"

#include <numeric>

#include "telefid/errors.hpp"

namespace telefid {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NonHermitian: return "NonHermitian";
    case ErrorKind::TraceNotOne: return "TraceNotOne";
    case ErrorKind::NotPositive: return "NotPositive";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::MismatchedProperty: return "MismatchedProperty";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::NotEntangled: return "NotEntangled";
    case ErrorKind::DesignTooWeak: return "DesignTooWeak";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

const Mat2& pauli(int index) {
  static const std::array<Mat2, 4> table = [] {
    std::array<Mat2, 4> p;
    p[0] = Mat2::identity();
    p[1](0, 1) = 1.0;
    p[1](1, 0) = 1.0;
    p[2](0, 1) = cplx(0.0, -1.0);
    p[2](1, 0) = cplx(0.0, 1.0);
    p[3](0, 0) = 1.0;
    p[3](1, 1) = -1.0;
    return p;
  }();
  return table.at(static_cast<std::size_t>(index));
}

// ---------------------------------------------------------------------------

double RMatrix3::det() const {
  const auto& m = *this;
  return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
         m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
         m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

double max_abs_diff(const RMatrix3& a, const RMatrix3& b) {
  double worst = 0.0;
  for (std::size_t k = 0; k < 9; ++k) worst = std::max(worst, std::abs(a.a[k] - b.a[k]));
  return worst;
}

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }
Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Rotation3::Rotation3(const RMatrix3& m) : m_(m) {
  const double ortho = max_abs_diff(m.transpose() * m, RMatrix3::identity());
  if (ortho > 1e-10 || std::abs(m.det() - 1.0) > 1e-10)
    throw Error(ErrorKind::InvalidArgument, "matrix is not a proper rotation", ortho);
}

SpinUnitary::SpinUnitary(const Mat2& u) : u_(u) {
  const double unit = max_abs_diff(u * u.adjoint(), Mat2::identity());
  const cplx det = u(0, 0) * u(1, 1) - u(0, 1) * u(1, 0);
  if (unit > 1e-10 || std::abs(det - 1.0) > 1e-10)
    throw Error(ErrorKind::InvalidArgument, "matrix is not special unitary", unit);
}

// ---------------------------------------------------------------------------
// Hermitian eigensolver

template <std::size_t N>
HermitianEig<N> hermitian_eig(const CMatrix<N>& m) {
  double asym = 0.0;
  double scale = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) {
      asym = std::max(asym, std::abs(m(i, j) - std::conj(m(j, i))));
      scale += std::norm(m(i, j));
    }
  if (asym > kHermitianTolerance)
    throw Error(ErrorKind::NonHermitian, "matrix is not Hermitian", asym);
  scale = std::sqrt(scale);

  // Work on the exactly-Hermitian part.
  CMatrix<N> a = m;
  for (std::size_t i = 0; i < N; ++i) {
    a(i, i) = a(i, i).real();
    for (std::size_t j = i + 1; j < N; ++j) {
      const cplx avg = 0.5 * (a(i, j) + std::conj(a(j, i)));
      a(i, j) = avg;
      a(j, i) = std::conj(avg);
    }
  }
  CMatrix<N> v = CMatrix<N>::identity();

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = i + 1; j < N; ++j) s += 2.0 * std::norm(a(i, j));
    return std::sqrt(s);
  };

  for (int sweep = 0; sweep < kJacobiMaxSweeps; ++sweep) {
    if (off_norm() <= kJacobiTolerance * 1e-2 * std::max(scale, 1e-300)) break;
    for (std::size_t p = 0; p + 1 < N; ++p) {
      for (std::size_t q = p + 1; q < N; ++q) {
        const cplx apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        const cplx phase = apq / mag;  // e^{i phi}
        const double theta = 0.5 * std::atan2(2.0 * mag, a(q, q).real() - a(p, p).real());
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        // G restricted to (p, q): [[c, s], [-s e^{-i phi}, c e^{-i phi}]].
        const cplx gqp = -s * std::conj(phase);
        const cplx gqq = c * std::conj(phase);
        for (std::size_t k = 0; k < N; ++k) {
          const cplx akp = a(k, p);
          const cplx akq = a(k, q);
          a(k, p) = akp * c + akq * gqp;
          a(k, q) = akp * s + akq * gqq;
          const cplx vkp = v(k, p);
          const cplx vkq = v(k, q);
          v(k, p) = vkp * c + vkq * gqp;
          v(k, q) = vkp * s + vkq * gqq;
        }
        for (std::size_t k = 0; k < N; ++k) {
          const cplx apk = a(p, k);
          const cplx aqk = a(q, k);
          a(p, k) = c * apk + std::conj(gqp) * aqk;
          a(q, k) = s * apk + std::conj(gqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }

  std::array<std::size_t, N> order;
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a(x, x).real() < a(y, y).real();
  });

  HermitianEig<N> out;
  for (std::size_t k = 0; k < N; ++k) {
    const std::size_t src = order[k];
    out.values[k] = a(src, src).real();
    // Phase convention: largest-magnitude component real and positive.
    std::size_t big = 0;
    for (std::size_t i = 1; i < N; ++i)
      if (std::abs(v(i, src)) > std::abs(v(big, src)) + 1e-14) big = i;
    const cplx ph = std::conj(v(big, src)) / std::abs(v(big, src));
    for (std::size_t i = 0; i < N; ++i) out.vectors(i, k) = v(i, src) * ph;
  }
  return out;
}

template HermitianEig<2> hermitian_eig<2>(const CMatrix<2>&);
template HermitianEig<4> hermitian_eig<4>(const CMatrix<4>&);

// ---------------------------------------------------------------------------
// 3x3 SVD (one-sided Jacobi)

namespace {

Vec3 column(const RMatrix3& m, int c) { return {m(0, c), m(1, c), m(2, c)}; }

Vec3 scaled(const Vec3& v, double s) { return {v[0] * s, v[1] * s, v[2] * s}; }

Vec3 minus(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

// Unit vector orthogonal to every vector in `basis` (at most two entries).
Vec3 complete_basis(const std::array<Vec3, 2>& basis, int count) {
  Vec3 best{};
  double best_norm = -1.0;
  for (int axis = 0; axis < 3; ++axis) {
    Vec3 e{};
    e[axis] = 1.0;
    for (int k = 0; k < count; ++k) e = minus(e, scaled(basis[k], dot(basis[k], e)));
    const double n = norm(e);
    if (n > best_norm + 1e-12) {
      best_norm = n;
      best = scaled(e, 1.0 / n);
    }
  }
  return best;
}

}  // namespace

Svd3 svd3_special(const RMatrix3& t) {
  RMatrix3 a = t;
  RMatrix3 v = RMatrix3::identity();

  constexpr double eps = 1e-15;
  for (int sweep = 0; sweep < 60; ++sweep) {
    bool rotated = false;
    for (int p = 0; p < 2; ++p) {
      for (int q = p + 1; q < 3; ++q) {
        double alpha = 0.0, beta = 0.0, gamma = 0.0;
        for (int k = 0; k < 3; ++k) {
          alpha += a(k, p) * a(k, p);
          beta += a(k, q) * a(k, q);
          gamma += a(k, p) * a(k, q);
        }
        if (gamma == 0.0 || std::abs(gamma) <= eps * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double tn = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + tn * tn);
        const double s = c * tn;
        for (int k = 0; k < 3; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
    if (!rotated) break;
  }

  std::array<double, 3> sigma{};
  for (int k = 0; k < 3; ++k) sigma[k] = norm(column(a, k));
  std::array<int, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return sigma[x] > sigma[y]; });

  std::array<Vec3, 2> u{};
  std::array<Vec3, 2> w{};  // right singular vectors
  std::array<double, 2> d{};
  for (int k = 0; k < 2; ++k) {
    const int src = order[k];
    w[k] = column(v, src);
    d[k] = sigma[src];
    Vec3 col = column(a, src);
    for (int j = 0; j < k; ++j) col = minus(col, scaled(u[j], dot(u[j], col)));
    const double n = norm(col);
    u[k] = n > 1e-200 ? scaled(col, 1.0 / n) : complete_basis(u, k);
    // Sign normalization of the pair on the first significant component of w.
    for (int i = 0; i < 3; ++i) {
      if (std::abs(w[k][i]) > 1e-12) {
        if (w[k][i] < 0.0) {
          w[k] = scaled(w[k], -1.0);
          u[k] = scaled(u[k], -1.0);
        }
        break;
      }
    }
  }
  const Vec3 u2 = cross(u[0], u[1]);
  const Vec3 w2 = cross(w[0], w[1]);
  double d2 = dot(u2, t * w2);
  // recomputed through u2, w2 it can exceed d[1] by rounding
  if (std::abs(d2) > d[1]) d2 = std::copysign(d[1], d2);

  RMatrix3 o1, o2;
  const std::array<Vec3, 3> us{u[0], u[1], u2};
  const std::array<Vec3, 3> ws{w[0], w[1], w2};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      o1(r, c) = us[r][c];
      o2(r, c) = ws[r][c];
    }
  return Svd3{Rotation3(o1), {d[0], d[1], d2}, Rotation3(o2)};
}

// ---------------------------------------------------------------------------
// SO(3) <-> SU(2)

SpinUnitary rotation_to_spin(const Rotation3& o) {
  const RMatrix3 q = o.matrix().transpose();
  const double tr = q(0, 0) + q(1, 1) + q(2, 2);
  double w, x, y, z;
  if (tr > 0.0) {
    const double s = 2.0 * std::sqrt(tr + 1.0);
    w = 0.25 * s;
    x = (q(2, 1) - q(1, 2)) / s;
    y = (q(0, 2) - q(2, 0)) / s;
    z = (q(1, 0) - q(0, 1)) / s;
  } else if (q(0, 0) >= q(1, 1) && q(0, 0) >= q(2, 2)) {
    const double s = 2.0 * std::sqrt(1.0 + q(0, 0) - q(1, 1) - q(2, 2));
    w = (q(2, 1) - q(1, 2)) / s;
    x = 0.25 * s;
    y = (q(0, 1) + q(1, 0)) / s;
    z = (q(0, 2) + q(2, 0)) / s;
  } else if (q(1, 1) >= q(2, 2)) {
    const double s = 2.0 * std::sqrt(1.0 + q(1, 1) - q(0, 0) - q(2, 2));
    w = (q(0, 2) - q(2, 0)) / s;
    x = (q(0, 1) + q(1, 0)) / s;
    y = 0.25 * s;
    z = (q(1, 2) + q(2, 1)) / s;
  } else {
    const double s = 2.0 * std::sqrt(1.0 + q(2, 2) - q(0, 0) - q(1, 1));
    w = (q(1, 0) - q(0, 1)) / s;
    x = (q(0, 2) + q(2, 0)) / s;
    y = (q(1, 2) + q(2, 1)) / s;
    z = 0.25 * s;
  }
  const double n = std::sqrt(w * w + x * x + y * y + z * z);
  w /= n;
  x /= n;
  y /= n;
  z /= n;

  // U(0,0) = w - i z.
  constexpr double tie = 1e-14;
  if (w < -tie || (std::abs(w) <= tie && z > 0.0)) {
    w = -w;
    x = -x;
    y = -y;
    z = -z;
  }

  Mat2 u;
  u(0, 0) = cplx(w, -z);
  u(0, 1) = cplx(-y, -x);
  u(1, 0) = cplx(y, -x);
  u(1, 1) = cplx(w, z);
  return SpinUnitary(u);
}

RMatrix3 spin_to_rotation(const Mat2& u) {
  RMatrix3 a;
  for (int i = 0; i < 3; ++i) {
    const Mat2 rotated = u * pauli(i + 1) * u.adjoint();
    for (int k = 0; k < 3; ++k) a(k, i) = 0.5 * (pauli(k + 1) * rotated).trace().real();
  }
  return a;
}

}  // namespace telefid
