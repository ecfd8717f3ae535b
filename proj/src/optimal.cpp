#include "telefid/optimal.hpp"

#include <cmath>
#include <numbers>

#include "telefid/errors.hpp"
#include "telefid/properties.hpp"

namespace telefid {

const char* to_string(PropertyKind k) noexcept {
  switch (k) {
    case PropertyKind::LinearEntropy: return "L";
    case PropertyKind::ChshB: return "B";
    case PropertyKind::Concurrence: return "C";
  }
  return "?";
}

const char* to_string(LocalVectorConstraint c) noexcept {
  switch (c) {
    case LocalVectorConstraint::MustBeZero: return "must_be_zero";
    case LocalVectorConstraint::Unconstrained: return "unconstrained";
    case LocalVectorConstraint::RPlusSZero: return "r_plus_s_zero";
  }
  return "?";
}

void require_admissible(PropertyKind kind, double value) {
  switch (kind) {
    case PropertyKind::LinearEntropy:
      if (!(value >= 0.0 && value < 8.0 / 9.0))
        throw Error(ErrorKind::OutOfRange, "L must lie in [0, 8/9)", value);
      return;
    case PropertyKind::ChshB:
      if (!(value > 2.0 && value <= 2.0 * std::numbers::sqrt2))
        throw Error(ErrorKind::OutOfRange, "B must lie in (2, 2*sqrt(2)]", value);
      return;
    case PropertyKind::Concurrence:
      if (!(value > 0.0 && value <= 1.0))
        throw Error(ErrorKind::OutOfRange, "C must lie in (0, 1]", value);
      return;
  }
}

double largest_max_fidelity(PropertyKind kind, double value) {
  switch (kind) {
    case PropertyKind::LinearEntropy: return 0.5 * (1.0 + std::sqrt(1.0 - value));
    case PropertyKind::ChshB: return 0.5 * (1.0 + value / (2.0 * std::numbers::sqrt2));
    case PropertyKind::Concurrence: return (2.0 + value) / 3.0;
  }
  return 0.0;
}

double optimal_t_abs(PropertyKind kind, double value) {
  switch (kind) {
    case PropertyKind::LinearEntropy: return std::sqrt(1.0 - value);
    case PropertyKind::ChshB: return value / (2.0 * std::numbers::sqrt2);
    case PropertyKind::Concurrence: return (2.0 * value + 1.0) / 3.0;
  }
  return 0.0;
}

double measure_property(const DensityMatrix& rho, PropertyKind kind) {
  switch (kind) {
    case PropertyKind::LinearEntropy: return linear_entropy(rho);
    case PropertyKind::ChshB: return chsh(rho).b;
    case PropertyKind::Concurrence: return concurrence(rho);
  }
  return 0.0;
}

// ---------------------------------------------------------------------------

namespace {

OptimalFamilyMember build_family(PropertyKind kind, double value, const Vec3& r, LocalVectorConstraint constraint) {
  require_admissible(kind, value);
  const double t = optimal_t_abs(kind, value);
  const Vec3 s = {-r[0], -r[1], -r[2]};
  const auto form = CanonicalForm::from_parameters(r, s, {t, t, t});
  OptimalFamilySpec spec{kind, value, {t, t, t}, largest_max_fidelity(kind, value), constraint};
  return OptimalFamilyMember{spec, canonical_state(form)};
}

}  // namespace

OptimalFamilyMember optimal_for_linear_entropy(double l) {
  return build_family(PropertyKind::LinearEntropy, l, {}, LocalVectorConstraint::MustBeZero);
}

OptimalFamilyMember optimal_for_chsh(double b) {
  return build_family(PropertyKind::ChshB, b, {}, LocalVectorConstraint::Unconstrained);
}

OptimalFamilyMember optimal_for_concurrence(double c, const Vec3& r) {
  return build_family(PropertyKind::Concurrence, c, r, LocalVectorConstraint::RPlusSZero);
}

OptimalFamilyMember construct_optimal(PropertyKind kind, double value, const Vec3& r) {
  switch (kind) {
    case PropertyKind::LinearEntropy: return optimal_for_linear_entropy(value);
    case PropertyKind::ChshB: return optimal_for_chsh(value);
    case PropertyKind::Concurrence: return optimal_for_concurrence(value, r);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown property kind");
}

// ---------------------------------------------------------------------------

double max_entanglement_distance(const CVector<4>& v) {
  const double n = norm(v);
  CVector<4> u = v;
  for (auto& x : u) x /= n;
  const Mat4 p = Mat4::outer(u, u);
  double worst = 0.0;
  for (const Mat2& red : {trace_out_second(p), trace_out_first(p)}) {
    // Trace distance of [[a, b], [b*, 1 - a]] to I/2.
    const double da = red(0, 0).real() - 0.5;
    worst = std::max(worst, std::sqrt(da * da + std::norm(red(0, 1))));
  }
  return worst;
}

bool is_maximally_entangled(const CVector<4>& v, double tol) { return max_entanglement_distance(v) <= tol; }

CVector<4> bell_coefficients(const CVector<4>& v) {
  CVector<4> a{};
  for (int k = 0; k < 4; ++k) a[k] = inner(bell_vector(static_cast<BellState>(k + 1)).amplitudes(), v);
  return a;
}

bool is_eigenpair(const Mat4& m, const CVector<4>& v, double lambda, double tol) {
  CVector<4> res = m * v;
  for (std::size_t i = 0; i < 4; ++i) res[i] -= lambda * v[i];
  return norm(res) <= tol;
}

SaturationReport check_fidelity_concurrence_saturation(const DensityMatrix& rho) {
  SaturationReport rep;
  rep.concurrence = concurrence(rho);
  if (rep.concurrence <= 1e-12)
    throw Error(ErrorKind::NotEntangled, "state has zero concurrence", rep.concurrence);

  const auto eig = hermitian_eig(partial_transpose(rho));
  rep.lambda_min = eig.values[0];
  rep.eigvec = eig.vector(0);
  rep.reduction_distance = max_entanglement_distance(rep.eigvec);
  rep.eigvec_max_entangled = rep.reduction_distance <= kOptimalityTolerance;
  rep.saturates = rep.eigvec_max_entangled;

  const CanonicalForm c = canonicalize(rho);
  rep.t_sum = c.t_sum();
  rep.degenerate = c.degenerate;
  rep.r_plus_s_norm = norm(Vec3{c.r[0] + c.s[0], c.r[1] + c.s[1], c.r[2] + c.s[2]});
  if (!c.degenerate) {
    const bool rs_condition = rep.r_plus_s_norm < kOptimalityTolerance && rep.t_sum > 1.0;
    rep.r_plus_s_agrees = rs_condition == rep.saturates;
  }
  return rep;
}

bool unitary_covariance_check(const DensityMatrix& rho, const SpinUnitary& u, const SpinUnitary& v) {
  SaturationReport rep;
  try {
    rep = check_fidelity_concurrence_saturation(rho);
  } catch (const Error& e) {
    throw Error(ErrorKind::PreconditionFailed, std::string("covariance check needs an entangled state: ") + e.what());
  }
  if (!rep.saturates)
    throw Error(ErrorKind::PreconditionFailed, "covariance check needs a saturating state",
                rep.reduction_distance);

  const Mat2& um = u.matrix();
  const Mat2& vm = v.matrix();
  const Mat4 rotated_pt = partial_transpose(apply_local(rho.matrix(), um, vm));
  const auto eig = hermitian_eig(rotated_pt);
  // (V rho V^dag)^T on the second factor is conj(V) rho^T V^T
  const CVector<4> moved = kron(um, vm.conj()) * rep.eigvec;
  return std::abs(eig.values[0] - rep.lambda_min) <= 1e-8 && is_eigenpair(rotated_pt, moved, rep.lambda_min, 1e-8);
}

// ---------------------------------------------------------------------------

OptimalityVerdict check_optimal(const DensityMatrix& rho, PropertyKind kind, double value) {
  require_admissible(kind, value);
  const double measured = measure_property(rho, kind);
  if (std::abs(measured - value) > kPropertyMatchTolerance)
    throw Error(ErrorKind::MismatchedProperty,
                std::string(to_string(kind)) + " of the state is " + std::to_string(measured) + ", not " +
                    std::to_string(value),
                measured);

  const CanonicalForm c = canonicalize(rho);
  const TeleportMetrics m = assess(c);
  const Vec3& t = c.t_abs;

  OptimalityWitness w;
  w.measured_value = measured;
  w.f_max = m.f_max;
  w.f_largest = largest_max_fidelity(kind, measured);
  w.t_sum = c.t_sum();
  w.target_sum = kind == PropertyKind::Concurrence ? 2.0 * measured + 1.0 : 3.0 * optimal_t_abs(kind, measured);
  w.max_pair_gap = std::max({std::abs(t[0] - t[1]), std::abs(t[1] - t[2]), std::abs(t[0] - t[2])});
  w.delta = m.delta;
  w.det_class = c.det_class;

  OptimalityVerdict v;
  v.is_largest_max_fidelity =
      c.det_class == DetClass::Negative && std::abs(w.t_sum - w.target_sum) <= kOptimalityTolerance;
  v.is_zero_deviation = w.max_pair_gap <= kOptimalityTolerance;
  v.is_optimal = v.is_largest_max_fidelity && v.is_zero_deviation;

  if (kind == PropertyKind::Concurrence && measured > 1e-12)
    w.saturation = check_fidelity_concurrence_saturation(rho).saturates;

  if (v.is_optimal) {
    w.failed = "none";
  } else if (!v.is_largest_max_fidelity && !v.is_zero_deviation) {
    w.failed = "largest maximal fidelity not attained; deviation nonzero";
  } else if (!v.is_largest_max_fidelity) {
    w.failed = "largest maximal fidelity not attained";
  } else {
    w.failed = "deviation nonzero";
  }
  v.witness = w;
  return v;
}

}  // namespace telefid
