#pragma once

#include "telefid/canonical.hpp"

namespace telefid {

struct ChshValue {
  double m = 0.0;  // sum of the two largest squared singular values of T
  double b = 0.0;  // 2 sqrt(m)
};

struct PropertyReport {
  double linear_entropy = 0.0;
  double chsh_m = 0.0;
  double chsh_b = 0.0;
  double concurrence = 0.0;
  double negativity = 0.0;
};

/// (4/3)(1 - Tr rho^2).
double linear_entropy(const DensityMatrix& rho);
/// 1 - (1/3) sum(r_i^2 + s_i^2 + t_i^2) on canonical parameters.
double linear_entropy(const CanonicalForm& c);

ChshValue chsh(const DensityMatrix& rho);
ChshValue chsh(const CanonicalForm& c);

/// Wootters concurrence through the Hermitian matrix
/// sqrt(rho) (Y x Y) rho* (Y x Y) sqrt(rho); spectrum values below 1e-12 are
/// clamped to zero before the square roots.
double concurrence(const DensityMatrix& rho);

/// max(0, -2 lambda_min(rho^Gamma)).
double negativity(const DensityMatrix& rho);

PropertyReport properties(const DensityMatrix& rho);

}  // namespace telefid
