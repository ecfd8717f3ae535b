#include "telefid/metrics.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

namespace telefid {

namespace {

const double kDeviationScale = 1.0 / (3.0 * std::sqrt(10.0));

// The three ways to pick the index k that keeps a positive sign.
constexpr int kPerm[3][3] = {{0, 1, 2}, {0, 2, 1}, {1, 2, 0}};

bool descending(const Vec3& t) { return t[0] >= t[1] && t[1] >= t[2]; }

}  // namespace

double max_fidelity(const CanonicalForm& c) {
  const Vec3& t = c.t_abs;
  if (c.det_class != DetClass::Positive) return 0.5 * (1.0 + c.t_sum() / 3.0);

  double best = -std::numeric_limits<double>::infinity();
  for (const auto& p : kPerm) best = std::max(best, t[p[0]] + t[p[1]] - t[p[2]]);
  if (descending(t)) assert(std::abs(best - (t[0] + t[1] - t[2])) < 1e-15);
  return 0.5 * (1.0 + best / 3.0);
}

double fidelity_deviation(const CanonicalForm& c) {
  const Vec3& t = c.t_abs;
  if (c.det_class != DetClass::Positive) {
    const double a = t[0] - t[1], b = t[1] - t[2], d = t[0] - t[2];
    return kDeviationScale * std::sqrt(a * a + b * b + d * d);
  }
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : kPerm) {
    const double ti = t[p[0]], tj = t[p[1]], tk = t[p[2]];
    const double v = (ti - tj) * (ti - tj) + (ti + tk) * (ti + tk) + (tj + tk) * (tj + tk);
    best = std::min(best, v);
  }
  if (descending(t)) {
    [[maybe_unused]] const double sorted =
        (t[0] - t[1]) * (t[0] - t[1]) + (t[0] + t[2]) * (t[0] + t[2]) + (t[1] + t[2]) * (t[1] + t[2]);
    assert(std::abs(best - sorted) < 1e-14);
  }
  return kDeviationScale * std::sqrt(best);
}

TeleportMetrics assess(const CanonicalForm& c) {
  TeleportMetrics m;
  m.f_max = max_fidelity(c);
  m.delta = fidelity_deviation(c);
  m.det_class = c.det_class;
  // Equivalent to f_max > 2/3 without the rounding at the threshold.
  m.useful = c.det_class == DetClass::Negative && c.t_sum() > 1.0;
  m.universal = m.delta < kUniversalTolerance;
  return m;
}

TeleportMetrics assess(const DensityMatrix& rho) { return assess(canonicalize(rho)); }

}  // namespace telefid
