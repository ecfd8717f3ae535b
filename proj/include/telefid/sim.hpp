#pragma once

// Teleportation simulated as an explicit channel on input (x) resource, with
// exact sphere averages from spherical designs. Used as the independent
// oracle for the closed-form fidelity formulas.

#include <cstdint>
#include <vector>

#include "telefid/qstate.hpp"

namespace telefid {

/// Bloch vector of a pure input qubit.
class BlochInput {
 public:
  /// Throws Error(InvalidArgument) unless |n| = 1 within 1e-12.
  explicit BlochInput(const Vec3& n);
  static BlochInput normalized(const Vec3& n);

  const Vec3& n() const { return n_; }
  /// |psi><psi| = (I + n.sigma) / 2.
  Mat2 projector() const;

 private:
  Vec3 n_;
};

struct QuadratureRule {
  std::vector<BlochInput> nodes;
  std::vector<double> weights;
  int design_strength = 0;
};

/// 12 icosahedron vertices, equal weights: a spherical 5-design.
QuadratureRule icosahedron_rule();
/// 6 octahedron vertices: a 3-design.
QuadratureRule octahedron_rule();

/// Largest error over all monomials x^a y^b z^c with a + b + c <= degree
/// against the exact sphere averages.
double max_moment_error(const QuadratureRule& rule, int degree);

struct ChannelOutput {
  Mat2 output;
  double fidelity = 0.0;
};

/// Standard protocol: Bell measurement on (input, first resource qubit),
/// Pauli correction on the second. `reference` is the Bell state the
/// corrections are matched to; it is teleported perfectly. The default is
/// the singlet, the form every canonical state takes.
ChannelOutput teleport_channel(const DensityMatrix& resource, const BlochInput& input,
                               BellState reference = BellState::PsiMinus);

enum class StatsMethod { DesignExact, MonteCarlo };

struct FidelityStats {
  double mean = 0.0;
  double second_moment = 0.0;
  double deviation = 0.0;
  StatsMethod method = StatsMethod::DesignExact;
  std::size_t n_samples = 0;
  double std_error = 0.0;  // Monte Carlo only
};

/// Throws Error(DesignTooWeak) if rule.design_strength < 4.
FidelityStats fidelity_stats(const DensityMatrix& resource, const QuadratureRule& rule = icosahedron_rule(),
                             BellState reference = BellState::PsiMinus);

/// Uniform random inputs; throws Error(InvalidArgument) for n_samples < 100.
FidelityStats fidelity_stats_mc(const DensityMatrix& resource, std::size_t n_samples, std::uint64_t seed,
                                BellState reference = BellState::PsiMinus);

// ---------------------------------------------------------------------------
// Brute-force checks of the constrained optimizations

inline constexpr int kDefaultGridResolution = 2000;

struct LinearEntropyGrid {
  Vec3 best_t_abs{};
  double best_sum = 0.0;
  double theta = 0.0;
  double phi = 0.0;
  double cell = 0.0;  // grid spacing in both angles
};

/// Maximizes sum |t_ii| on the sphere sum |t_ii|^2 = 3(1 - l) over
/// theta, phi in (0, pi/2) with a cell-centred grid. The second admissible
/// branch of angles maps onto the same magnitudes and is not scanned.
/// Throws Error(OutOfRange) unless 0 <= l < 8/9 and resolution >= 100.
LinearEntropyGrid grid_verify_linear_entropy_optimum(double l, int resolution = kDefaultGridResolution);

struct ChshGrid {
  Vec3 best_t_abs{};
  double best_sum = 0.0;
  double theta = 0.0;
  double cell = 0.0;
};

/// Maximizes |t_ii| + |t_jj| + |t_kk| with |t_ii|^2 + |t_jj|^2 = b^2/4 and
/// |t_kk| swept up to min(|t_ii|, |t_jj|), on grid nodes theta = i pi/(2 res),
/// i = 0..res. Throws Error(OutOfRange) unless
/// 2 < b <= 2 sqrt 2 and resolution >= 100.
ChshGrid grid_verify_chsh_optimum(double b, int resolution = kDefaultGridResolution);

}  // namespace telefid
