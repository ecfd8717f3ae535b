#pragma once

// Small fixed-size dense algebra: complex 2x2/4x4/8x8 matrices, a cyclic
// Jacobi eigensolver for Hermitian matrices, a proper-rotation 3x3 SVD and
// the SO(3) -> SU(2) lift.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

namespace telefid {

using cplx = std::complex<double>;

template <std::size_t N>
using CVector = std::array<cplx, N>;

using Vec3 = std::array<double, 3>;

/// Row-major N x N complex matrix. Zero-initialized.
template <std::size_t N>
class CMatrix {
 public:
  static constexpr std::size_t dim = N;

  constexpr CMatrix() = default;

  static constexpr CMatrix identity() {
    CMatrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }

  static CMatrix outer(const CVector<N>& a, const CVector<N>& b) {
    CMatrix m;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) m(i, j) = a[i] * std::conj(b[j]);
    return m;
  }

  constexpr cplx& operator()(std::size_t r, std::size_t c) { return a_[r * N + c]; }
  constexpr const cplx& operator()(std::size_t r, std::size_t c) const { return a_[r * N + c]; }

  CMatrix adjoint() const {
    CMatrix m;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) m(i, j) = std::conj((*this)(j, i));
    return m;
  }

  CMatrix transpose() const {
    CMatrix m;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) m(i, j) = (*this)(j, i);
    return m;
  }

  CMatrix conj() const {
    CMatrix m;
    for (std::size_t k = 0; k < N * N; ++k) m.a_[k] = std::conj(a_[k]);
    return m;
  }

  cplx trace() const {
    cplx t = 0.0;
    for (std::size_t i = 0; i < N; ++i) t += (*this)(i, i);
    return t;
  }

  CMatrix& operator+=(const CMatrix& o) {
    for (std::size_t k = 0; k < N * N; ++k) a_[k] += o.a_[k];
    return *this;
  }
  CMatrix& operator-=(const CMatrix& o) {
    for (std::size_t k = 0; k < N * N; ++k) a_[k] -= o.a_[k];
    return *this;
  }
  CMatrix& operator*=(cplx s) {
    for (auto& x : a_) x *= s;
    return *this;
  }

  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
  friend CMatrix operator*(CMatrix a, cplx s) { return a *= s; }
  friend CMatrix operator*(cplx s, CMatrix a) { return a *= s; }

  friend CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    CMatrix m;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t k = 0; k < N; ++k) {
        const cplx aik = a(i, k);
        if (aik == cplx{}) continue;
        for (std::size_t j = 0; j < N; ++j) m(i, j) += aik * b(k, j);
      }
    return m;
  }

  friend CVector<N> operator*(const CMatrix& a, const CVector<N>& v) {
    CVector<N> out{};
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) out[i] += a(i, j) * v[j];
    return out;
  }

  const std::array<cplx, N * N>& data() const { return a_; }

 private:
  std::array<cplx, N * N> a_{};
};

using Mat2 = CMatrix<2>;
using Mat4 = CMatrix<4>;
using Mat8 = CMatrix<8>;

template <std::size_t N, std::size_t M>
CMatrix<N * M> kron(const CMatrix<N>& a, const CMatrix<M>& b) {
  CMatrix<N * M> out;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) {
      const cplx aij = a(i, j);
      if (aij == cplx{}) continue;
      for (std::size_t k = 0; k < M; ++k)
        for (std::size_t l = 0; l < M; ++l) out(i * M + k, j * M + l) = aij * b(k, l);
    }
  return out;
}

template <std::size_t N, std::size_t M>
CVector<N * M> kron(const CVector<N>& a, const CVector<M>& b) {
  CVector<N * M> out{};
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t k = 0; k < M; ++k) out[i * M + k] = a[i] * b[k];
  return out;
}

/// Largest entrywise modulus of a - b.
template <std::size_t N>
double max_abs_diff(const CMatrix<N>& a, const CMatrix<N>& b) {
  double worst = 0.0;
  for (std::size_t k = 0; k < N * N; ++k)
    worst = std::max(worst, std::abs(a.data()[k] - b.data()[k]));
  return worst;
}

template <std::size_t N>
double norm(const CVector<N>& v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return std::sqrt(s);
}

template <std::size_t N>
cplx inner(const CVector<N>& a, const CVector<N>& b) {
  cplx s = 0.0;
  for (std::size_t i = 0; i < N; ++i) s += std::conj(a[i]) * b[i];
  return s;
}

/// Pauli matrices: index 0 is the identity, 1..3 are X, Y, Z with
/// Y = (0, -i; i, 0).
const Mat2& pauli(int index);

// ---------------------------------------------------------------------------
// Real 3x3 algebra

struct RMatrix3 {
  std::array<double, 9> a{};

  static RMatrix3 identity() {
    RMatrix3 m;
    m(0, 0) = m(1, 1) = m(2, 2) = 1.0;
    return m;
  }
  static RMatrix3 diag(const Vec3& d) {
    RMatrix3 m;
    for (int i = 0; i < 3; ++i) m(i, i) = d[i];
    return m;
  }

  double& operator()(int r, int c) { return a[r * 3 + c]; }
  double operator()(int r, int c) const { return a[r * 3 + c]; }

  RMatrix3 transpose() const {
    RMatrix3 m;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m(i, j) = (*this)(j, i);
    return m;
  }
  double det() const;

  friend RMatrix3 operator*(const RMatrix3& x, const RMatrix3& y) {
    RMatrix3 m;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) m(i, j) += x(i, k) * y(k, j);
    return m;
  }
  friend Vec3 operator*(const RMatrix3& x, const Vec3& v) {
    Vec3 out{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) out[i] += x(i, j) * v[j];
    return out;
  }
};

double max_abs_diff(const RMatrix3& a, const RMatrix3& b);
double norm(const Vec3& v);
double dot(const Vec3& a, const Vec3& b);
Vec3 cross(const Vec3& a, const Vec3& b);

/// Proper rotation: orthogonal with determinant +1, both within 1e-10.
class Rotation3 {
 public:
  Rotation3() : m_(RMatrix3::identity()) {}
  /// Throws Error(InvalidArgument) if `m` is not a proper rotation.
  explicit Rotation3(const RMatrix3& m);

  const RMatrix3& matrix() const { return m_; }
  Rotation3 transpose() const { return Rotation3(m_.transpose(), Unchecked{}); }

  friend Rotation3 operator*(const Rotation3& a, const Rotation3& b) {
    return Rotation3(a.m_ * b.m_, Unchecked{});
  }
  friend Vec3 operator*(const Rotation3& a, const Vec3& v) { return a.m_ * v; }

 private:
  struct Unchecked {};
  Rotation3(const RMatrix3& m, Unchecked) : m_(m) {}
  RMatrix3 m_;
};

/// Element of SU(2): unitary with determinant +1, both within 1e-10.
class SpinUnitary {
 public:
  SpinUnitary() : u_(Mat2::identity()) {}
  /// Throws Error(InvalidArgument) if `u` is not special unitary.
  explicit SpinUnitary(const Mat2& u);

  const Mat2& matrix() const { return u_; }

 private:
  Mat2 u_;
};

// ---------------------------------------------------------------------------
// Decompositions

template <std::size_t N>
struct HermitianEig {
  std::array<double, N> values{};  // ascending
  CMatrix<N> vectors;              // column k pairs with values[k]

  CVector<N> vector(std::size_t k) const {
    CVector<N> v{};
    for (std::size_t i = 0; i < N; ++i) v[i] = vectors(i, k);
    return v;
  }
};

inline constexpr double kHermitianTolerance = 1e-9;
inline constexpr double kJacobiTolerance = 1e-12;
inline constexpr int kJacobiMaxSweeps = 100;

/// Cyclic complex Jacobi diagonalization. Throws Error(NonHermitian) when
/// |m - m^dagger| exceeds 1e-9 anywhere.
template <std::size_t N>
HermitianEig<N> hermitian_eig(const CMatrix<N>& m);

extern template HermitianEig<2> hermitian_eig<2>(const CMatrix<2>&);
extern template HermitianEig<4> hermitian_eig<4>(const CMatrix<4>&);

struct Svd3 {
  Rotation3 o1;
  Vec3 d{};  // d[0] >= d[1] >= |d[2]|, sign(d[2]) = sign(det t)
  Rotation3 o2;
};

/// Signed singular value decomposition with proper rotations:
/// o1 * t * o2^T = diag(d).
///
/// Each singular pair (u_k, v_k), k = 0, 1, is sign-normalized so that the
/// first component of v_k with magnitude above 1e-12 is positive; the third
/// pair is fixed by u_2 = u_0 x u_1, v_2 = v_0 x v_1, which puts the sign of
/// det t on d[2].
Svd3 svd3_special(const RMatrix3& t);

/// SU(2) lift of a rotation with U (n.sigma) U^dagger = (o^T n).sigma.
/// The representative has Re U(0,0) >= 0, and Im U(0,0) >= 0 when the real
/// part vanishes.
SpinUnitary rotation_to_spin(const Rotation3& o);

/// Adjoint action of a 2x2 unitary on the Pauli vector:
/// U (n.sigma) U^dagger = (A n).sigma, returns A.
RMatrix3 spin_to_rotation(const Mat2& u);

}  // namespace telefid
