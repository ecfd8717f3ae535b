#include "telefid/sim.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "telefid/errors.hpp"

namespace telefid {

BlochInput::BlochInput(const Vec3& n) : n_(n) {
  if (!(std::abs(norm(n) - 1.0) <= 1e-12))
    throw Error(ErrorKind::InvalidArgument, "Bloch input must be a unit vector", norm(n));
}

BlochInput BlochInput::normalized(const Vec3& n) {
  const double len = norm(n);
  if (!(len > 0.0)) throw Error(ErrorKind::InvalidArgument, "Bloch input must be nonzero");
  return BlochInput({n[0] / len, n[1] / len, n[2] / len});
}

Mat2 BlochInput::projector() const {
  Mat2 p = pauli(0);
  for (int i = 0; i < 3; ++i) p += pauli(i + 1) * cplx(n_[i]);
  return p * cplx(0.5);
}

// ---------------------------------------------------------------------------

QuadratureRule icosahedron_rule() {
  const double g = std::numbers::phi;
  QuadratureRule rule;
  rule.design_strength = 5;
  for (double a : {-1.0, 1.0}) {
    for (double b : {-g, g}) {
      rule.nodes.push_back(BlochInput::normalized({0.0, a, b}));
      rule.nodes.push_back(BlochInput::normalized({a, b, 0.0}));
      rule.nodes.push_back(BlochInput::normalized({b, 0.0, a}));
    }
  }
  rule.weights.assign(rule.nodes.size(), 1.0 / static_cast<double>(rule.nodes.size()));
  return rule;
}

QuadratureRule octahedron_rule() {
  QuadratureRule rule;
  rule.design_strength = 3;
  for (int axis = 0; axis < 3; ++axis) {
    for (double sign : {-1.0, 1.0}) {
      Vec3 n{};
      n[axis] = sign;
      rule.nodes.emplace_back(n);
    }
  }
  rule.weights.assign(rule.nodes.size(), 1.0 / 6.0);
  return rule;
}

namespace {

double double_factorial(int n) {
  double r = 1.0;
  for (int k = n; k > 1; k -= 2) r *= k;
  return r;
}

double sphere_moment(int a, int b, int c) {
  if (a % 2 || b % 2 || c % 2) return 0.0;
  return double_factorial(a - 1) * double_factorial(b - 1) * double_factorial(c - 1) /
         double_factorial(a + b + c + 1);
}

}  // namespace

double max_moment_error(const QuadratureRule& rule, int degree) {
  double worst = 0.0;
  for (int a = 0; a <= degree; ++a)
    for (int b = 0; a + b <= degree; ++b)
      for (int c = 0; a + b + c <= degree; ++c) {
        double s = 0.0;
        for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
          const Vec3& n = rule.nodes[k].n();
          s += rule.weights[k] * std::pow(n[0], a) * std::pow(n[1], b) * std::pow(n[2], c);
        }
        worst = std::max(worst, std::abs(s - sphere_moment(a, b, c)));
      }
  return worst;
}

// ---------------------------------------------------------------------------

namespace {

// Pauli W with (I x W)|Phi+> equal to the given Bell state, up to phase.
Mat2 bell_pauli(BellState which) {
  switch (which) {
    case BellState::PhiPlus: return pauli(0);
    case BellState::PhiMinus: return pauli(3);
    case BellState::PsiPlus: return pauli(1);
    case BellState::PsiMinus: return pauli(1) * pauli(3);
  }
  return pauli(0);
}

struct Protocol {
  std::array<Mat8, 4> projectors;  // Bell projector on (input, A) x I_B
  std::array<Mat2, 4> corrections;
};

Protocol make_protocol(BellState reference) {
  Protocol p;
  const Mat2 ref = bell_pauli(reference);
  for (int k = 0; k < 4; ++k) {
    const auto which = static_cast<BellState>(k + 1);
    const auto beta = bell_vector(which).amplitudes();
    p.projectors[k] = kron(Mat4::outer(beta, beta), pauli(0));
    // Bob holds ref * W_k |psi> after outcome k.
    p.corrections[k] = (ref * bell_pauli(which)).adjoint();
  }
  return p;
}

const Protocol& protocol_for(BellState reference) {
  static const std::array<Protocol, 4> table = {
      make_protocol(BellState::PhiPlus), make_protocol(BellState::PhiMinus),
      make_protocol(BellState::PsiPlus), make_protocol(BellState::PsiMinus)};
  return table[static_cast<int>(reference) - 1];
}

Mat2 trace_out_first_pair(const Mat8& m) {
  Mat2 out;
  for (std::size_t j = 0; j < 4; ++j)
    for (std::size_t b = 0; b < 2; ++b)
      for (std::size_t d = 0; d < 2; ++d) out(b, d) += m(j * 2 + b, j * 2 + d);
  return out;
}

}  // namespace

ChannelOutput teleport_channel(const DensityMatrix& resource, const BlochInput& input, BellState reference) {
  const Protocol& proto = protocol_for(reference);
  const Mat2 psi = input.projector();
  const Mat8 joint = kron(psi, resource.matrix());

  ChannelOutput out;
  for (int k = 0; k < 4; ++k) {
    const Mat8& pk = proto.projectors[k];
    const Mat2 bob = trace_out_first_pair(pk * joint * pk);
    const Mat2& c = proto.corrections[k];
    out.output += c * bob * c.adjoint();
  }
  out.fidelity = (psi * out.output).trace().real();
  return out;
}

FidelityStats fidelity_stats(const DensityMatrix& resource, const QuadratureRule& rule, BellState reference) {
  if (rule.design_strength < 4)
    throw Error(ErrorKind::DesignTooWeak, "exact second moments need a spherical 4-design",
                rule.design_strength);
  std::vector<double> f(rule.nodes.size());
  FidelityStats st;
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    f[k] = teleport_channel(resource, rule.nodes[k], reference).fidelity;
    st.mean += rule.weights[k] * f[k];
    st.second_moment += rule.weights[k] * f[k] * f[k];
  }
  // Centred second pass keeps zero deviations at rounding level.
  double var = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) var += rule.weights[k] * (f[k] - st.mean) * (f[k] - st.mean);
  st.deviation = std::sqrt(var);
  st.method = StatsMethod::DesignExact;
  st.n_samples = rule.nodes.size();
  return st;
}

FidelityStats fidelity_stats_mc(const DensityMatrix& resource, std::size_t n_samples, std::uint64_t seed,
                                BellState reference) {
  if (n_samples < 100)
    throw Error(ErrorKind::InvalidArgument, "Monte Carlo needs at least 100 samples",
                static_cast<double>(n_samples));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  double mean = 0.0, m2 = 0.0, sq = 0.0;
  for (std::size_t k = 0; k < n_samples; ++k) {
    Vec3 n{};
    double len = 0.0;
    do {
      n = {normal(rng), normal(rng), normal(rng)};
      len = norm(n);
    } while (len < 1e-12);
    const double f = teleport_channel(resource, BlochInput::normalized(n), reference).fidelity;
    // Welford update
    const double d = f - mean;
    mean += d / static_cast<double>(k + 1);
    m2 += d * (f - mean);
    sq += f * f;
  }
  const double nn = static_cast<double>(n_samples);
  FidelityStats st;
  st.mean = mean;
  st.second_moment = sq / nn;
  st.deviation = std::sqrt(std::max(0.0, m2 / nn));
  st.method = StatsMethod::MonteCarlo;
  st.n_samples = n_samples;
  st.std_error = std::sqrt(std::max(0.0, m2 / (nn - 1.0)) / nn);
  return st;
}

// ---------------------------------------------------------------------------

LinearEntropyGrid grid_verify_linear_entropy_optimum(double l, int resolution) {
  if (!(l >= 0.0 && l < 8.0 / 9.0))
    throw Error(ErrorKind::OutOfRange, "L must lie in [0, 8/9)", l);
  if (resolution < 100) throw Error(ErrorKind::OutOfRange, "grid resolution must be >= 100", resolution);

  const double amp = std::sqrt(3.0 * (1.0 - l));
  const double h = (std::numbers::pi / 2.0) / resolution;
  std::vector<double> s(resolution), c(resolution);
  for (int i = 0; i < resolution; ++i) {
    s[i] = std::sin((i + 0.5) * h);
    c[i] = std::cos((i + 0.5) * h);
  }

  LinearEntropyGrid g;
  g.cell = h;
  g.best_sum = -1.0;
  int bi = 0, bj = 0;
  for (int i = 0; i < resolution; ++i) {
    for (int j = 0; j < resolution; ++j) {
      // theta index i, phi index j
      const double v = amp * (s[i] * c[j] + s[i] * s[j] + c[i]);
      if (v > g.best_sum) {
        g.best_sum = v;
        bi = i;
        bj = j;
      }
    }
  }
  g.theta = (bi + 0.5) * h;
  g.phi = (bj + 0.5) * h;
  g.best_t_abs = {amp * s[bi] * c[bj], amp * s[bi] * s[bj], amp * c[bi]};
  return g;
}

ChshGrid grid_verify_chsh_optimum(double b, int resolution) {
  if (!(b > 2.0 && b <= 2.0 * std::numbers::sqrt2))
    throw Error(ErrorKind::OutOfRange, "B must lie in (2, 2 sqrt 2]", b);
  if (resolution < 100) throw Error(ErrorKind::OutOfRange, "grid resolution must be >= 100", resolution);

  const double root_m = b / 2.0;  // sqrt(M) with M = B^2 / 4
  const double h = (std::numbers::pi / 2.0) / resolution;
  ChshGrid g;
  g.cell = h;
  g.best_sum = -1.0;
  // nodes include both ends; the optimum sits on a kink at pi/4, which a
  // cell-centred grid would straddle
  for (int i = 0; i <= resolution; ++i) {
    const double theta = i * h;
    const double ti = root_m * std::cos(theta);
    const double tj = root_m * std::sin(theta);
    const double cap = std::min(ti, tj);
    for (int k = 0; k <= resolution; ++k) {
      const double tk = cap * k / resolution;
      const double v = ti + tj + tk;
      if (v > g.best_sum) {
        g.best_sum = v;
        g.theta = theta;
        g.best_t_abs = {ti, tj, tk};
      }
    }
  }
  return g;
}

}  // namespace telefid
