#include <doctest.h>

#include "expect_error.hpp"
#include "oracles.hpp"
#include "telefid/optimal.hpp"
#include "telefid/properties.hpp"
#include "telefid/sim.hpp"

using namespace telefid;

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

std::vector<double> grid(double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
  return v;
}

}  // namespace

TEST_CASE("linear-entropy family") {
  const auto singlet = optimal_for_linear_entropy(0.0);
  CHECK_LE(max_abs_diff(singlet.state.matrix(), make_bell(4).matrix()), 1e-12);
  CHECK_NEAR(assess(singlet.state).f_max, 1.0, 1e-12);

  const auto quarter = optimal_for_linear_entropy(0.75);
  for (double t : quarter.spec.t_abs_target) CHECK_NEAR(t, 0.5, 1e-15);
  CHECK_NEAR(assess(quarter.state).f_max, 0.75, 1e-12);
  CHECK(quarter.spec.local_vector_constraint == LocalVectorConstraint::MustBeZero);

  CHECK(error_of([] { optimal_for_linear_entropy(8.0 / 9.0); }) == ErrorKind::OutOfRange);
  CHECK(error_of([] { optimal_for_linear_entropy(-0.01); }) == ErrorKind::OutOfRange);
  try {
    optimal_for_linear_entropy(0.9);
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("L must lie in [0, 8/9)") != std::string::npos);
  }

  for (double l : grid(0.0, 0.888, 50)) {
    const auto m = optimal_for_linear_entropy(l);
    const auto f = hs_decompose(m.state);
    CHECK_NEAR(linear_entropy(m.state), l, 1e-9);
    CHECK_NEAR(assess(m.state).f_max, (1 + std::sqrt(1 - l)) / 2, 1e-9);
    CHECK_LT(assess(m.state).delta, 1e-9);
    CHECK_GT(m.spec.f_largest, 2.0 / 3.0);
    CHECK_LE(norm(f.R) + norm(f.S), 1e-12);
    // 1/4 (I - sqrt(1 - l) sum sigma_i x sigma_i)
    CHECK_LE(max_abs_diff(f.T, RMatrix3::diag({-1, -1, -1}) * RMatrix3::diag(m.spec.t_abs_target)), 1e-12);
  }
}

TEST_CASE("chsh family") {
  const auto top = optimal_for_chsh(2 * kSqrt2);
  CHECK_LE(max_abs_diff(top.state.matrix(), make_bell(4).matrix()), 1e-12);

  const auto mid = optimal_for_chsh(2.2);
  for (double t : mid.spec.t_abs_target) CHECK_NEAR(t, 0.777817459305, 1e-11);
  CHECK_NEAR(mid.spec.f_largest, 0.888908729653, 1e-11);
  CHECK(mid.spec.local_vector_constraint == LocalVectorConstraint::Unconstrained);

  CHECK(error_of([] { optimal_for_chsh(2.0); }) == ErrorKind::OutOfRange);
  CHECK(error_of([] { optimal_for_chsh(2 * kSqrt2 + 1e-6); }) == ErrorKind::OutOfRange);

  for (double b : grid(2.0 + 0.8 / 50, 2 * kSqrt2, 50)) {
    const auto m = optimal_for_chsh(b);
    CHECK_NEAR(chsh(m.state).b, b, 1e-9);
    CHECK_NEAR(assess(m.state).f_max, 0.5 * (1 + b / (2 * kSqrt2)), 1e-9);
    CHECK_LT(assess(m.state).delta, 1e-9);
  }
}

TEST_CASE("concurrence family") {
  const auto one = optimal_for_concurrence(1.0);
  CHECK_LE(max_abs_diff(one.state.matrix(), make_bell(4).matrix()), 1e-12);

  const auto half = optimal_for_concurrence(0.5);
  for (double t : half.spec.t_abs_target) CHECK_NEAR(t, 2.0 / 3.0, 1e-15);
  CHECK_NEAR(assess(half.state).f_max, 5.0 / 6.0, 1e-12);

  const auto shifted = optimal_for_concurrence(0.5, {0.1, 0.0, 0.0});
  const auto f = hs_decompose(shifted.state);
  CHECK_NEAR(f.R[0], 0.1, 1e-12);
  CHECK_NEAR(f.S[0], -0.1, 1e-12);
  CHECK_NEAR(concurrence(shifted.state), 0.5, 1e-9);

  CHECK(error_of([] { optimal_for_concurrence(0.5, {0.9, 0.0, 0.0}); }) == ErrorKind::NotPositive);
  CHECK(error_of([] { optimal_for_concurrence(0.0); }) == ErrorKind::OutOfRange);
  CHECK(error_of([] { optimal_for_concurrence(1.01); }) == ErrorKind::OutOfRange);

  for (double c : grid(0.02, 1.0, 50)) {
    const auto m = optimal_for_concurrence(c);
    CHECK_NEAR(concurrence(m.state), c, 1e-9);
    CHECK_NEAR(assess(m.state).f_max, (2 + c) / 3, 1e-9);
    CHECK_LT(assess(m.state).delta, 1e-9);
    CHECK(m.spec.local_vector_constraint == LocalVectorConstraint::RPlusSZero);
  }
}

TEST_CASE("check_optimal examples") {
  for (double p : {0.4, 0.6, 0.8, 1.0}) {
    const auto v = check_optimal(make_werner(p), PropertyKind::Concurrence, (3 * p - 1) / 2);
    CHECK(v.is_optimal);
    CHECK(v.witness.failed == "none");
    CHECK(v.witness.saturation == true);
  }
  for (double a : {0.3, 0.6, 0.9}) {
    const double c = 2 * a * std::sqrt(1 - a * a);
    const auto v = check_optimal(make_pure_schmidt(a), PropertyKind::Concurrence, c);
    CHECK(v.is_largest_max_fidelity);
    CHECK_FALSE(v.is_zero_deviation);
    CHECK_FALSE(v.is_optimal);
    CHECK(v.witness.failed == "deviation nonzero");
  }
  for (double p : {0.4, 0.7, 0.95}) {
    const auto v = check_optimal(make_werner(p), PropertyKind::LinearEntropy, 1 - p * p);
    CHECK(v.is_optimal);
  }
  for (double p : {0.75, 0.9}) {
    const auto v = check_optimal(make_werner(p), PropertyKind::ChshB, 2 * kSqrt2 * p);
    CHECK(v.is_optimal);
  }
}

TEST_CASE("check_optimal rejects and diagnoses") {
  CHECK(error_of([] { check_optimal(make_werner(0.8), PropertyKind::Concurrence, 0.69); }) ==
        ErrorKind::MismatchedProperty);
  CHECK(error_of([] { check_optimal(make_werner(0.8), PropertyKind::Concurrence, 1.2); }) == ErrorKind::OutOfRange);

  // entangled, r + s != 0, unequal magnitudes
  const auto form = CanonicalForm::from_parameters({0.2, 0, 0}, {}, {0.5, 0.4, 0.3});
  const DensityMatrix rho = canonical_state(form);
  const double c = concurrence(rho);
  REQUIRE_GT(c, 0.0);
  const auto v = check_optimal(rho, PropertyKind::Concurrence, c);
  CHECK_FALSE(v.is_largest_max_fidelity);
  CHECK_FALSE(v.is_zero_deviation);
  CHECK(v.witness.failed == "largest maximal fidelity not attained; deviation nonzero");

  // equal magnitudes, but the local vector spends purity
  const auto shifted = CanonicalForm::from_parameters({0.2, 0, 0}, {}, {0.5, 0.5, 0.5});
  const DensityMatrix pos = canonical_state(shifted);
  const auto w = check_optimal(pos, PropertyKind::LinearEntropy, linear_entropy(pos));
  CHECK_FALSE(w.is_largest_max_fidelity);
  CHECK(w.is_zero_deviation);
  CHECK(w.witness.failed == "largest maximal fidelity not attained");
}

TEST_CASE("round trip construct then verify") {
  for (auto kind : {PropertyKind::LinearEntropy, PropertyKind::ChshB, PropertyKind::Concurrence}) {
    const auto values = kind == PropertyKind::LinearEntropy ? grid(0.0, 0.888, 50)
                        : kind == PropertyKind::ChshB       ? grid(2.01, 2 * kSqrt2, 50)
                                                            : grid(0.02, 1.0, 50);
    for (double v : values) {
      const auto m = construct_optimal(kind, v);
      CHECK(check_optimal(m.state, kind, v).is_optimal);
      // any local-unitary image stays optimal
      std::mt19937_64 rng(static_cast<std::uint64_t>(v * 1e6));
      const DensityMatrix moved = apply_local(m.state, oracle::random_spin(rng), oracle::random_spin(rng));
      CHECK(check_optimal(moved, kind, v).is_optimal);
    }
  }
}

TEST_CASE("saturation examples") {
  for (double p : {0.4, 0.7, 1.0}) {
    const auto s = check_fidelity_concurrence_saturation(make_werner(p));
    CHECK(s.saturates);
    CHECK_NEAR(s.lambda_min, -(3 * p - 1) / 4, 1e-9);
  }
  for (double a : {0.2, 0.5, 0.8}) {
    const double c = 2 * a * std::sqrt(1 - a * a);
    const auto s = check_fidelity_concurrence_saturation(make_pure_schmidt(a));
    CHECK(s.saturates);
    CHECK_NEAR(s.lambda_min, -c / 2, 1e-9);
  }
  const auto form = CanonicalForm::from_parameters({0.2, 0, 0}, {}, {0.5, 0.4, 0.3});
  const DensityMatrix rho = canonical_state(form);
  const auto s = check_fidelity_concurrence_saturation(rho);
  CHECK_FALSE(s.saturates);
  CHECK_FALSE(s.degenerate);
  CHECK(s.r_plus_s_agrees == true);
  CHECK_LT(negativity(rho), concurrence(rho) - 1e-6);

  CHECK(error_of([] { check_fidelity_concurrence_saturation(make_werner(0.2)); }) == ErrorKind::NotEntangled);
}

TEST_CASE("saturation identities on random entangled states") {
  int checked = 0, saturating = 0;
  for (std::uint64_t seed = 1; checked < 400; ++seed) {
    const DensityMatrix rho = sample_random_state(seed, seed % 2 ? SampleKind::GinibreMixed : SampleKind::HaarPure);
    const double c = concurrence(rho);
    if (c <= 1e-6) continue;
    ++checked;
    const auto s = check_fidelity_concurrence_saturation(rho);
    const bool sum_test = std::abs(s.t_sum - (2 * c + 1)) <= 1e-7;
    CHECK(sum_test == s.saturates);
    if (s.saturates) {
      ++saturating;
      CHECK_NEAR(s.lambda_min, -c / 2, 1e-7);
      CHECK_NEAR(s.lambda_min, -(s.t_sum - 1) / 4, 1e-7);
    }
    if (s.r_plus_s_agrees) CHECK(*s.r_plus_s_agrees);
  }
  CHECK_GT(saturating, 0);
}

TEST_CASE("Bell-basis uniqueness of the saturating eigenvector") {
  for (int trial = 0; trial < 100; ++trial) {
    const DensityMatrix pure = sample_random_state(500 + trial, SampleKind::HaarPure);
    const CanonicalForm c = canonicalize(pure);
    if (c.det_class != DetClass::Negative) continue;
    const auto s = check_fidelity_concurrence_saturation(canonical_state(c));
    REQUIRE(s.saturates);
    const auto a = bell_coefficients(s.eigvec);
    CHECK_NEAR(std::norm(a[0]), 1.0, 1e-7);
    for (int k = 1; k < 4; ++k) CHECK_LE(std::abs(a[k]), 1e-7);
  }
}

TEST_CASE("unitary covariance") {
  std::mt19937_64 rng(71);
  const DensityMatrix w = make_werner(0.8);
  for (int trial = 0; trial < 50; ++trial)
    CHECK(unitary_covariance_check(w, SpinUnitary(oracle::random_spin(rng)), SpinUnitary(oracle::random_spin(rng))));
  CHECK(unitary_covariance_check(w, SpinUnitary(), SpinUnitary()));

  // corrupted eigenvector: flip the sign of one component
  const auto s = check_fidelity_concurrence_saturation(w);
  const Mat2 u = oracle::random_spin(rng), v = oracle::random_spin(rng);
  const Mat4 pt = partial_transpose(apply_local(w.matrix(), u, v));
  CVector<4> moved = kron(u, v.conj()) * s.eigvec;
  CHECK(is_eigenpair(pt, moved, s.lambda_min, 1e-8));
  moved[0] = -moved[0];
  CHECK_FALSE(is_eigenpair(pt, moved, s.lambda_min, 1e-8));

  const auto form = CanonicalForm::from_parameters({0.2, 0, 0}, {}, {0.5, 0.4, 0.3});
  CHECK(error_of([&] { unitary_covariance_check(canonical_state(form), SpinUnitary(), SpinUnitary()); }) ==
        ErrorKind::PreconditionFailed);
  CHECK(error_of([] { unitary_covariance_check(make_werner(0.1), SpinUnitary(), SpinUnitary()); }) ==
        ErrorKind::PreconditionFailed);
}

TEST_CASE("maximal entanglement test") {
  CHECK(is_maximally_entangled(bell_vector(BellState::PsiPlus).amplitudes()));
  const CVector<4> prod{1.0, 0.0, 0.0, 0.0};
  CHECK_FALSE(is_maximally_entangled(prod));
  CHECK_NEAR(max_entanglement_distance(prod), 0.5, 1e-15);
}

TEST_CASE("admissible ranges and closed forms") {
  // approaches 2/3 from above as L -> 8/9
  CHECK_NEAR(largest_max_fidelity(PropertyKind::LinearEntropy, 0.8888) - 2.0 / 3.0, 6.66533e-5, 1e-9);
  CHECK_GT(largest_max_fidelity(PropertyKind::LinearEntropy, 8.0 / 9.0 - 1e-12), 2.0 / 3.0);
  CHECK_LT(largest_max_fidelity(PropertyKind::LinearEntropy, 8.0 / 9.0 - 1e-12) - 2.0 / 3.0, 1e-11);
  CHECK_NEAR(largest_max_fidelity(PropertyKind::ChshB, 2.01), 0.855321157546, 1e-11);
  CHECK_NEAR(largest_max_fidelity(PropertyKind::Concurrence, 0.5), 5.0 / 6.0, 1e-15);
}
