#include "telefid/canonical.hpp"

#include <cmath>

namespace telefid {

const char* to_string(DetClass c) noexcept {
  switch (c) {
    case DetClass::Negative: return "negative";
    case DetClass::Zero: return "zero";
    case DetClass::Positive: return "positive";
  }
  return "unknown";
}

DetClass classify_det(double det) noexcept {
  if (std::abs(det) < kDetZeroThreshold) return DetClass::Zero;
  return det < 0.0 ? DetClass::Negative : DetClass::Positive;
}

namespace {

bool has_degeneracy(const Vec3& t) {
  return std::abs(t[0] - t[1]) <= kDegeneracyGap || std::abs(t[1] - t[2]) <= kDegeneracyGap ||
         std::abs(t[0] - t[2]) <= kDegeneracyGap;
}

}  // namespace

CanonicalForm CanonicalForm::from_parameters(const Vec3& r, const Vec3& s, const Vec3& t_abs,
                                             const std::array<int, 3>& lambda) {
  CanonicalForm c;
  c.r = r;
  c.s = s;
  c.t_abs = t_abs;
  c.lambda = lambda;
  c.det_class = classify_det(lambda[0] * t_abs[0] * lambda[1] * t_abs[1] * lambda[2] * t_abs[2]);
  c.degenerate = has_degeneracy(t_abs);
  return c;
}

HilbertSchmidtForm CanonicalForm::hs() const {
  HilbertSchmidtForm f;
  f.R = r;
  f.S = s;
  for (int i = 0; i < 3; ++i) f.T(i, i) = lambda[i] * t_abs[i];
  return f;
}

CanonicalForm canonicalize(const DensityMatrix& rho) {
  const HilbertSchmidtForm hs = hs_decompose(rho);
  const Svd3 svd = svd3_special(hs.T);

  // A pi rotation about z flips the first two diagonal signs, giving
  // diag(-d0, -d1, d2); d2 already carries sign(det T).
  RMatrix3 flip = RMatrix3::diag({-1.0, -1.0, 1.0});
  CanonicalForm c;
  c.o1 = Rotation3(flip) * svd.o1;
  c.o2 = svd.o2;
  c.t_abs = {svd.d[0], svd.d[1], std::abs(svd.d[2])};
  c.lambda = {-1, -1, svd.d[2] > 0.0 ? +1 : -1};
  c.det_class = classify_det(hs.T.det());
  c.r = c.o1 * hs.R;
  c.s = c.o2 * hs.S;
  c.u1 = rotation_to_spin(c.o1.transpose());
  c.u2 = rotation_to_spin(c.o2.transpose());
  c.degenerate = has_degeneracy(c.t_abs);
  return c;
}

DensityMatrix canonical_state(const CanonicalForm& c) { return hs_compose(c.hs()); }

}  // namespace telefid
