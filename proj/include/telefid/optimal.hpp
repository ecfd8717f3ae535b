#pragma once

#include <optional>
#include <string>

#include "telefid/metrics.hpp"

namespace telefid {

enum class PropertyKind { LinearEntropy, ChshB, Concurrence };
enum class LocalVectorConstraint { MustBeZero, Unconstrained, RPlusSZero };

const char* to_string(PropertyKind k) noexcept;
const char* to_string(LocalVectorConstraint c) noexcept;

/// Tolerance for the optimality conditions on t_abs and for the saturation
/// eigenvector test.
inline constexpr double kOptimalityTolerance = 1e-7;
/// Allowed gap between a caller's claimed property value and the measured one.
inline constexpr double kPropertyMatchTolerance = 1e-6;

/// Throws Error(OutOfRange) with the admissible interval in the message:
/// L in [0, 8/9), B in (2, 2 sqrt 2], C in (0, 1].
void require_admissible(PropertyKind kind, double value);

/// Largest maximal fidelity for a fixed property value (closed form).
double largest_max_fidelity(PropertyKind kind, double value);

/// Common magnitude of the optimal |t_ii|.
double optimal_t_abs(PropertyKind kind, double value);

/// L, B or C of a state.
double measure_property(const DensityMatrix& rho, PropertyKind kind);

struct OptimalFamilySpec {
  PropertyKind kind = PropertyKind::LinearEntropy;
  double value = 0.0;
  Vec3 t_abs_target{};
  double f_largest = 0.0;
  LocalVectorConstraint local_vector_constraint = LocalVectorConstraint::MustBeZero;
};

struct OptimalFamilyMember {
  OptimalFamilySpec spec;
  DensityMatrix state;
};

/// 1/4 (I - sqrt(1 - l) sum sigma_i x sigma_i), 0 <= l < 8/9.
OptimalFamilyMember optimal_for_linear_entropy(double l);
/// Canonical representative with r = s = 0 and |t_ii| = b / (2 sqrt 2).
OptimalFamilyMember optimal_for_chsh(double b);
/// |t_ii| = (2c + 1)/3 with s = -r. A nonzero r that breaks positivity is
/// rejected with Error(NotPositive).
OptimalFamilyMember optimal_for_concurrence(double c, const Vec3& r = {});

OptimalFamilyMember construct_optimal(PropertyKind kind, double value, const Vec3& r = {});

// ---------------------------------------------------------------------------

/// Outcome of the partial-transpose eigenvector test for concurrence
/// saturation F = (2 + C)/3.
struct SaturationReport {
  bool saturates = false;
  double lambda_min = 0.0;
  bool eigvec_max_entangled = false;
  CVector<4> eigvec{};
  double reduction_distance = 0.0;  // worst trace distance of a reduction to I/2
  double concurrence = 0.0;
  double t_sum = 0.0;
  double r_plus_s_norm = 0.0;  // on the canonical form
  bool degenerate = false;
  /// For non-degenerate canonical forms: whether (|r + s| < 1e-7 and
  /// sum t_abs > 1) agrees with `saturates`.
  std::optional<bool> r_plus_s_agrees;
};

/// Throws Error(NotEntangled) when the concurrence is zero.
SaturationReport check_fidelity_concurrence_saturation(const DensityMatrix& rho);

/// True if the reductions of |v> (normalized) are both within `tol` trace
/// distance of I/2.
bool is_maximally_entangled(const CVector<4>& v, double tol = kOptimalityTolerance);
double max_entanglement_distance(const CVector<4>& v);

/// Coefficients of v in the basis (Phi+, Phi-, Psi+, Psi-).
CVector<4> bell_coefficients(const CVector<4>& v);

/// |m v - lambda v| <= tol.
bool is_eigenpair(const Mat4& m, const CVector<4>& v, double lambda, double tol);

/// For a saturating rho, checks that (rho')^Gamma with
/// rho' = (U x V) rho (U x V)^dagger has the same minimum eigenvalue with
/// eigenvector (U x conj(V))|Psi>, within 1e-8. Throws
/// Error(PreconditionFailed) if rho does not saturate.
bool unitary_covariance_check(const DensityMatrix& rho, const SpinUnitary& u, const SpinUnitary& v);

// ---------------------------------------------------------------------------

struct OptimalityWitness {
  std::string failed;  // "none" or the failing condition(s)
  double measured_value = 0.0;
  double f_max = 0.0;
  double f_largest = 0.0;
  double t_sum = 0.0;
  double target_sum = 0.0;
  double max_pair_gap = 0.0;
  double delta = 0.0;
  DetClass det_class = DetClass::Zero;
  std::optional<bool> saturation;  // concurrence kind, entangled states only
};

struct OptimalityVerdict {
  bool is_largest_max_fidelity = false;
  bool is_zero_deviation = false;
  bool is_optimal = false;
  OptimalityWitness witness;
};

/// Throws Error(OutOfRange) for an inadmissible value and
/// Error(MismatchedProperty) when the measured property differs from
/// `value` by more than 1e-6. The conditions use the measured property.
OptimalityVerdict check_optimal(const DensityMatrix& rho, PropertyKind kind, double value);

}  // namespace telefid
