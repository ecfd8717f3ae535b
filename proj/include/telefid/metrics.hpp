#pragma once

#include "telefid/canonical.hpp"

namespace telefid {

inline constexpr double kClassicalFidelity = 2.0 / 3.0;
inline constexpr double kUniversalTolerance = 1e-9;

struct TeleportMetrics {
  double f_max = 0.0;  // maximal fidelity
  double delta = 0.0;  // fidelity deviation of the optimal protocol
  DetClass det_class = DetClass::Zero;
  bool useful = false;     // f_max > 2/3
  bool universal = false;  // delta < 1e-9
};

double max_fidelity(const CanonicalForm& c);
double fidelity_deviation(const CanonicalForm& c);

TeleportMetrics assess(const CanonicalForm& c);
TeleportMetrics assess(const DensityMatrix& rho);

}  // namespace telefid
