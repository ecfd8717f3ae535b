#include <doctest.h>

#include "expect_error.hpp"
#include "oracles.hpp"
#include "telefid/canonical.hpp"

using namespace telefid;

namespace {

double max_abs_diff(const Vec3& a, const Vec3& b) {
  return std::max({std::abs(a[0] - b[0]), std::abs(a[1] - b[1]), std::abs(a[2] - b[2])});
}

RMatrix3 signed_diag(const CanonicalForm& c) {
  return RMatrix3::diag({c.lambda[0] * c.t_abs[0], c.lambda[1] * c.t_abs[1], c.lambda[2] * c.t_abs[2]});
}

// Every invariant of a canonical form against the state it came from.
void check_invariants(const DensityMatrix& rho, const CanonicalForm& c) {
  const auto f = hs_decompose(rho);
  CHECK(c.t_abs[0] >= c.t_abs[1]);
  CHECK(c.t_abs[1] >= c.t_abs[2]);
  CHECK(c.t_abs[2] >= 0.0);

  // the symmetric functions of the squared singular values fix them exactly
  const auto inv = oracle::gram_invariants(f.T);
  const Vec3 sq{c.t_abs[0] * c.t_abs[0], c.t_abs[1] * c.t_abs[1], c.t_abs[2] * c.t_abs[2]};
  CHECK_NEAR(sq[0] + sq[1] + sq[2], inv[0], 1e-12);
  CHECK_NEAR(sq[0] * sq[1] + sq[0] * sq[2] + sq[1] * sq[2], inv[1], 1e-12);
  CHECK_NEAR(c.t_abs[0] * c.t_abs[1] * c.t_abs[2], std::abs(f.T.det()), 1e-12);

  const double det = f.T.det();
  if (std::abs(det) >= kDetZeroThreshold) CHECK(c.det_class == (det < 0 ? DetClass::Negative : DetClass::Positive));
  else CHECK(c.det_class == DetClass::Zero);

  if (c.det_class == DetClass::Negative) {
    for (int i = 0; i < 3; ++i) CHECK(c.lambda[i] == -1);
    CHECK_GT(c.t_abs[2], 0.0);
  }
  if (c.det_class == DetClass::Positive) {
    CHECK(c.lambda[0] == -1);
    CHECK(c.lambda[1] == -1);
    CHECK(c.lambda[2] == 1);
  }

  CHECK_LE(max_abs_diff(c.o1 * f.R, c.r), 1e-9);
  CHECK_LE(max_abs_diff(c.o2 * f.S, c.s), 1e-9);
  CHECK_LE(max_abs_diff(c.o1.matrix() * f.T * c.o2.matrix().transpose(), signed_diag(c)), 1e-9);

  // Local unitaries reproduce the canonical state
  const DensityMatrix moved = apply_local(rho, c.u1.matrix(), c.u2.matrix());
  CHECK_LE(max_abs_diff(moved.matrix(), canonical_state(c).matrix()), 1e-9);
  CHECK_LE(max_abs_diff(oracle::correlation_matrix(moved.matrix()), signed_diag(c)), 1e-9);
}

}  // namespace

TEST_CASE("canonicalize examples") {
  SUBCASE("Phi+ goes to the singlet") {
    const CanonicalForm c = canonicalize(make_bell(1));
    CHECK_LE(max_abs_diff(c.t_abs, Vec3{1, 1, 1}), 1e-12);
    CHECK(c.lambda == std::array<int, 3>{-1, -1, -1});
    CHECK_LE(norm(c.r) + norm(c.s), 1e-12);
    CHECK_LE(max_abs_diff(canonical_state(c).matrix(), make_bell(4).matrix()), 1e-12);
    check_invariants(make_bell(1), c);
  }
  SUBCASE("Werner") {
    for (double p : {0.1, 0.4, 0.8}) {
      const CanonicalForm c = canonicalize(make_werner(p));
      CHECK_LE(max_abs_diff(c.t_abs, Vec3{p, p, p}), 1e-12);
      CHECK(c.lambda == std::array<int, 3>{-1, -1, -1});
      CHECK(c.det_class == DetClass::Negative);
      CHECK_LE(norm(c.r) + norm(c.s), 1e-12);
      CHECK(c.degenerate);
    }
  }
  SUBCASE("every Bell state canonicalizes to the singlet") {
    for (int k = 1; k <= 4; ++k) {
      const CanonicalForm c = canonicalize(make_bell(k));
      CHECK_LE(max_abs_diff(canonical_state(c).matrix(), make_bell(4).matrix()), 1e-12);
    }
  }
}

TEST_CASE("canonicalize invariants on random states") {
  int counts[3] = {0, 0, 0};
  for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
    const DensityMatrix rho = sample_random_state(seed, seed % 5 ? SampleKind::GinibreMixed : SampleKind::HaarPure);
    const CanonicalForm c = canonicalize(rho);
    ++counts[static_cast<int>(c.det_class)];
    check_invariants(rho, c);
  }
  CHECK_GT(counts[static_cast<int>(DetClass::Negative)], 0);
  CHECK_GT(counts[static_cast<int>(DetClass::Positive)], 0);
}

TEST_CASE("canonicalize on det-zero states") {
  // product state, rank-one T
  const CVector<4> v{0.6, 0.0, 0.8, 0.0};
  const DensityMatrix prod = PureState2Q(v).density();
  const CanonicalForm c = canonicalize(prod);
  CHECK(c.det_class == DetClass::Zero);
  check_invariants(prod, c);

  // classical correlations, T = diag(0.5, 0, 0) rotated
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const auto form = CanonicalForm::from_parameters({0.1, 0, 0}, {0, 0.2, 0}, {0.6, 0.3, 0.0});
    const DensityMatrix rho = apply_local(canonical_state(form), oracle::random_spin(rng), oracle::random_spin(rng));
    const CanonicalForm d = canonicalize(rho);
    CHECK(d.det_class == DetClass::Zero);
    CHECK_NEAR(d.t_abs[2], 0.0, 1e-9);
    check_invariants(rho, d);
  }
}

TEST_CASE("local-unitary invariance") {
  std::mt19937_64 rng(23);
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const DensityMatrix rho = sample_random_state(seed, SampleKind::GinibreMixed);
    const CanonicalForm a = canonicalize(rho);
    const CanonicalForm b = canonicalize(apply_local(rho, oracle::random_spin(rng), oracle::random_spin(rng)));
    CHECK_LE(max_abs_diff(a.t_abs, b.t_abs), 1e-9);
    CHECK(a.det_class == b.det_class);
    CHECK(a.lambda == b.lambda);
    if (!a.degenerate) {
      // r and s are fixed up to the sign freedom of repeated singular vectors;
      // for distinct values they agree up to per-axis signs
      for (int i = 0; i < 3; ++i) {
        CHECK_NEAR(std::abs(a.r[i]), std::abs(b.r[i]), 1e-7);
        CHECK_NEAR(std::abs(a.s[i]), std::abs(b.s[i]), 1e-7);
      }
    }
  }
}

TEST_CASE("canonical_state examples") {
  const auto singlet = CanonicalForm::from_parameters({}, {}, {1, 1, 1});
  CHECK_LE(max_abs_diff(canonical_state(singlet).matrix(), make_bell(4).matrix()), 1e-12);

  const auto werner_like = CanonicalForm::from_parameters({}, {}, {0.6, 0.6, 0.6});
  CHECK_LE(max_abs_diff(oracle::correlation_matrix(canonical_state(werner_like).matrix()),
                        RMatrix3::diag({-0.6, -0.6, -0.6})),
           1e-12);

  const auto bad = CanonicalForm::from_parameters({1, 0, 0}, {}, {1, 1, 1});
  CHECK(error_of([&] { canonical_state(bad); }) == ErrorKind::NotPositive);
}

TEST_CASE("classify_det threshold") {
  CHECK(classify_det(-1e-3) == DetClass::Negative);
  CHECK(classify_det(1e-3) == DetClass::Positive);
  CHECK(classify_det(5e-13) == DetClass::Zero);
  CHECK(classify_det(-5e-13) == DetClass::Zero);
  CHECK(std::string(to_string(DetClass::Negative)) == "negative");
}

TEST_CASE("canonicalize is deterministic") {
  const DensityMatrix rho = sample_random_state(77, SampleKind::GinibreMixed);
  const CanonicalForm a = canonicalize(rho);
  const CanonicalForm b = canonicalize(rho);
  CHECK(a.u1.matrix().data() == b.u1.matrix().data());
  CHECK(a.u2.matrix().data() == b.u2.matrix().data());
}
