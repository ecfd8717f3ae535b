#pragma once

#include <cstdint>
#include <random>

#include "telefid/numkernel.hpp"

namespace telefid {

inline constexpr double kStateTolerance = 1e-9;

/// A validated two-qubit density matrix in the basis |00>, |01>, |10>, |11>.
/// Only obtainable through validate() or the constructors below, so holding
/// one means the matrix is Hermitian, unit-trace and positive semidefinite
/// (each within 1e-9).
class DensityMatrix {
 public:
  const Mat4& matrix() const { return m_; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

  /// Tr rho^2.
  double purity() const;

  friend DensityMatrix validate(const Mat4& m);

 private:
  explicit DensityMatrix(const Mat4& m) : m_(m) {}
  Mat4 m_;
};

/// Throws Error(NonHermitian | TraceNotOne | NotPositive). NotPositive carries
/// the worst eigenvalue in Error::value().
DensityMatrix validate(const Mat4& m);

/// rho = 1/4 (I + R.sigma x I + I x S.sigma + sum T_ij sigma_i x sigma_j).
struct HilbertSchmidtForm {
  Vec3 R{};
  Vec3 S{};
  RMatrix3 T{};
};

HilbertSchmidtForm hs_decompose(const DensityMatrix& rho);

/// Throws Error(NotPositive) when the coefficients do not describe a state.
DensityMatrix hs_compose(const HilbertSchmidtForm& f);

/// The raw operator sum without validation.
Mat4 hs_operator(const HilbertSchmidtForm& f);

/// Transpose on the second qubit.
Mat4 partial_transpose(const Mat4& m);
inline Mat4 partial_transpose(const DensityMatrix& rho) { return partial_transpose(rho.matrix()); }

/// (U x V) m (U x V)^dagger.
Mat4 apply_local(const Mat4& m, const Mat2& u, const Mat2& v);
DensityMatrix apply_local(const DensityMatrix& rho, const Mat2& u, const Mat2& v);

/// Reduced states of a two-qubit matrix.
Mat2 trace_out_second(const Mat4& m);
Mat2 trace_out_first(const Mat4& m);

// ---------------------------------------------------------------------------
// Pure states and constructors

class PureState2Q {
 public:
  /// Normalizes `amplitudes`; throws Error(InvalidArgument) on a zero vector.
  explicit PureState2Q(const CVector<4>& amplitudes);

  const CVector<4>& amplitudes() const { return a_; }
  DensityMatrix density() const;

 private:
  CVector<4> a_;
};

enum class BellState { PhiPlus = 1, PhiMinus = 2, PsiPlus = 3, PsiMinus = 4 };

PureState2Q bell_vector(BellState which);

/// p |Phi+><Phi+| + (1 - p) I/4, p in [0, 1].
DensityMatrix make_werner(double p);
/// a|00> + sqrt(1 - a^2)|11>, a in [0, 1].
DensityMatrix make_pure_schmidt(double a);
/// k = 1..4 selects Phi+, Phi-, Psi+, Psi-.
DensityMatrix make_bell(int k);
DensityMatrix maximally_mixed();

// ---------------------------------------------------------------------------
// Sampling

enum class SampleKind { GinibreMixed, HaarPure };

/// Deterministic for a fixed seed. Mixed states use G G^dagger / Tr with a
/// complex standard-normal 4x4 G; pure states normalize a complex normal
/// 4-vector.
DensityMatrix sample_random_state(std::uint64_t seed, SampleKind kind);

/// Haar-random element of SU(2) drawn from `rng`.
Mat2 random_su2(std::mt19937_64& rng);

}  // namespace telefid
