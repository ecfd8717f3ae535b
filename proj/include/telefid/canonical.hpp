#pragma once

#include <array>

#include "telefid/qstate.hpp"

namespace telefid {

enum class DetClass { Negative, Zero, Positive };

const char* to_string(DetClass c) noexcept;

/// |det T| below this is classed as zero.
inline constexpr double kDetZeroThreshold = 1e-12;
/// Pairwise gap of t_abs below which the canonical form counts as degenerate.
inline constexpr double kDegeneracyGap = 1e-6;

/// Local-unitary representative with a diagonal correlation matrix
/// diag(lambda_i * t_abs_i).
///
/// The witnessing unitaries satisfy (u1 x u2) rho (u1 x u2)^dagger =
/// canonical_state(*this), with r = o1 R, s = o2 S and diag(lambda t_abs) =
/// o1 T o2^T. Because rotation_to_spin lifts the transpose action, the
/// unitaries are u1 = rotation_to_spin(o1^T), u2 = rotation_to_spin(o2^T).
struct CanonicalForm {
  Vec3 r{};
  Vec3 s{};
  Vec3 t_abs{};                     // descending, nonnegative
  std::array<int, 3> lambda{-1, -1, -1};
  DetClass det_class = DetClass::Negative;
  Rotation3 o1;
  Rotation3 o2;
  SpinUnitary u1;
  SpinUnitary u2;
  bool degenerate = false;

  /// Builds a form directly from canonical parameters, with identity
  /// rotations. det_class follows from the sign of prod(lambda_i t_abs_i).
  static CanonicalForm from_parameters(const Vec3& r, const Vec3& s, const Vec3& t_abs,
                                       const std::array<int, 3>& lambda = {-1, -1, -1});

  double t_sum() const { return t_abs[0] + t_abs[1] + t_abs[2]; }
  HilbertSchmidtForm hs() const;
};

CanonicalForm canonicalize(const DensityMatrix& rho);

/// Throws Error(NotPositive) when the parameters are inconsistent.
DensityMatrix canonical_state(const CanonicalForm& c);

DetClass classify_det(double det) noexcept;

}  // namespace telefid
