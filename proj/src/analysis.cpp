#include "nds/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nds/dynamics.hpp"

namespace nds {

double Matrix3::trace() const { return m[0] + m[4] + m[8]; }

double Matrix3::det() const {
  return m[0] * (m[4] * m[8] - m[5] * m[7]) -
         m[1] * (m[3] * m[8] - m[5] * m[6]) +
         m[2] * (m[3] * m[7] - m[4] * m[6]);
}

double Matrix3::minor_sum() const {
  return (m[4] * m[8] - m[5] * m[7]) + (m[0] * m[8] - m[2] * m[6]) +
         (m[0] * m[4] - m[1] * m[3]);
}

double Matrix3::frobenius_norm() const {
  double s = 0.0;
  for (double e : m) s += e * e;
  return std::sqrt(s);
}

Matrix3 Matrix3::identity() {
  Matrix3 i;
  i.m = {1, 0, 0, 0, 1, 0, 0, 0, 1};
  return i;
}

std::string to_string(FixedPointClass c) {
  switch (c) {
    case FixedPointClass::Node: return "Node";
    case FixedPointClass::Repellor: return "Repellor";
    case FixedPointClass::SaddleIndex1: return "SaddleIndex1";
    case FixedPointClass::SaddleIndex2: return "SaddleIndex2";
    case FixedPointClass::SpiralNode: return "SpiralNode";
    case FixedPointClass::SpiralRepellor: return "SpiralRepellor";
    case FixedPointClass::SpiralSaddleIndex1: return "SpiralSaddleIndex1";
    case FixedPointClass::SpiralSaddleIndex2: return "SpiralSaddleIndex2";
  }
  return "?";
}

std::array<StateVec, 2> solve_fixed_points(const NDSParams& p) {
  p.validate();
  if (p.a == 0.0) {
    throw std::domain_error("solve_fixed_points: degenerate parameters (a = 0)");
  }
  const double disc = p.k * p.k + 4.0 * p.a * p.v;
  if (disc < 0.0) {
    throw std::domain_error("solve_fixed_points: no real fixed points");
  }
  const double root = std::sqrt(disc);

  // a u^2 + B u + C with B = -k, C = -v; the q route avoids cancellation in
  // the small root
  const double b_coef = -p.k;
  const double c_coef = -p.v;
  const double q = -0.5 * (b_coef + std::copysign(root, b_coef));
  double u_big = q / p.a;
  double u_small = (q != 0.0) ? c_coef / q : 0.0;
  if (std::fabs(u_big) < std::fabs(u_small)) std::swap(u_big, u_small);

  const auto point = [&p](double u) {
    return StateVec{p.a * u, -u, u};
  };
  return {point(u_big), point(u_small)};
}

Matrix3 jacobian(const StateVec& s, const NDSParams& p) {
  Matrix3 j;
  j.m = {1.0,        -p.b, -p.b,
         p.c,        1.0 + p.c * p.a, 0.0,
         -p.d * s.u, 0.0,  1.0 + p.d * (-s.x + p.k)};
  return j;
}

namespace {

double cubic_eval(double c2, double c1, double c0, double z) {
  return ((z + c2) * z + c1) * z + c0;
}

Complex cubic_eval(double c2, double c1, double c0, Complex z) {
  return ((z + c2) * z + c1) * z + c0;
}

// A couple of Newton iterations against the monic cubic; keeps the iterate
// with the smallest residual.
Complex refine_root(double c2, double c1, double c0, Complex z) {
  Complex best = z;
  double best_res = std::abs(cubic_eval(c2, c1, c0, z));
  for (int it = 0; it < 4; ++it) {
    const Complex deriv = (3.0 * z + 2.0 * c2) * z + c1;
    if (std::abs(deriv) < 1e-300) break;
    z -= cubic_eval(c2, c1, c0, z) / deriv;
    const double res = std::abs(cubic_eval(c2, c1, c0, z));
    if (res < best_res) {
      best = z;
      best_res = res;
    }
  }
  return best;
}

double refine_real_root(double c2, double c1, double c0, double z) {
  double best = z;
  double best_res = std::fabs(cubic_eval(c2, c1, c0, z));
  for (int it = 0; it < 4; ++it) {
    const double deriv = (3.0 * z + 2.0 * c2) * z + c1;
    if (std::fabs(deriv) < 1e-300) break;
    z -= cubic_eval(c2, c1, c0, z) / deriv;
    const double res = std::fabs(cubic_eval(c2, c1, c0, z));
    if (res < best_res) {
      best = z;
      best_res = res;
    }
  }
  return best;
}

}  // namespace

EigenTriple eigenvalues3(const Matrix3& mat) {
  for (double e : mat.m) {
    if (!std::isfinite(e)) {
      throw std::invalid_argument("eigenvalues3: non-finite entry");
    }
  }

  // characteristic polynomial lambda^3 + c2 lambda^2 + c1 lambda + c0
  const double c2 = -mat.trace();
  const double c1 = mat.minor_sum();
  const double c0 = -mat.det();

  const double q = (c2 * c2 - 3.0 * c1) / 9.0;
  const double r = (2.0 * c2 * c2 * c2 - 9.0 * c2 * c1 + 27.0 * c0) / 54.0;
  const double q3 = q * q * q;

  EigenTriple roots;
  if (r * r < q3) {
    // three distinct real roots (trigonometric branch)
    const double th = std::acos(std::clamp(r / std::sqrt(q3), -1.0, 1.0));
    const double s = -2.0 * std::sqrt(q);
    const double off = c2 / 3.0;
    double x0 = refine_real_root(c2, c1, c0, s * std::cos(th / 3.0) - off);
    double x1 = refine_real_root(
        c2, c1, c0, s * std::cos((th + 2.0 * std::numbers::pi) / 3.0) - off);
    double x2 = refine_real_root(
        c2, c1, c0, s * std::cos((th - 2.0 * std::numbers::pi) / 3.0) - off);
    roots = {Complex(x0, 0.0), Complex(x1, 0.0), Complex(x2, 0.0)};
  } else {
    const double aa =
        -std::copysign(std::cbrt(std::fabs(r) + std::sqrt(r * r - q3)), r);
    const double bb = (aa != 0.0) ? q / aa : 0.0;
    const double off = c2 / 3.0;
    const double real_root = refine_real_root(c2, c1, c0, (aa + bb) - off);
    const double pair_re = -0.5 * (aa + bb) - off;
    const double pair_im = 0.5 * std::sqrt(3.0) * (aa - bb);
    if (pair_im == 0.0) {
      // repeated real root
      const double rep = refine_real_root(c2, c1, c0, pair_re);
      roots = {Complex(real_root, 0.0), Complex(rep, 0.0), Complex(rep, 0.0)};
    } else {
      Complex z = refine_root(c2, c1, c0, Complex(pair_re, std::fabs(pair_im)));
      if (z.imag() <= 0.0) z = Complex(z.real(), std::fabs(pair_im));
      // exact conjugacy by construction
      return {z, std::conj(z), Complex(real_root, 0.0)};
    }
  }

  std::sort(roots.begin(), roots.end(),
            [](const Complex& a, const Complex& b) { return a.real() > b.real(); });
  return roots;
}

namespace {

bool has_complex(const EigenTriple& eigs) {
  for (const auto& e : eigs) {
    if (e.imag() != 0.0) return true;
  }
  return false;
}

void check_conjugate_pairing(const EigenTriple& eigs) {
  int n_complex = 0;
  for (const auto& e : eigs) {
    if (e.imag() != 0.0) ++n_complex;
  }
  if (n_complex == 0) return;
  if (n_complex == 2) {
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j) {
        if (eigs[i].imag() != 0.0 && eigs[j] == std::conj(eigs[i])) return;
      }
    }
  }
  throw std::invalid_argument("classify: eigenvalues are not conjugate-paired");
}

FixedPointClass label_from_counts(bool spiral, int unstable) {
  if (spiral) {
    switch (unstable) {
      case 0: return FixedPointClass::SpiralNode;
      case 1: return FixedPointClass::SpiralSaddleIndex1;
      case 2: return FixedPointClass::SpiralSaddleIndex2;
      default: return FixedPointClass::SpiralRepellor;
    }
  }
  switch (unstable) {
    case 0: return FixedPointClass::Node;
    case 1: return FixedPointClass::SaddleIndex1;
    case 2: return FixedPointClass::SaddleIndex2;
    default: return FixedPointClass::Repellor;
  }
}

}  // namespace

FixedPointClass classify(const EigenTriple& eigs, ClassConvention conv) {
  check_conjugate_pairing(eigs);
  const bool spiral = has_complex(eigs);

  int unstable = 0;
  bool unstable_complex = false;
  for (const auto& e : eigs) {
    const double mod = std::abs(e);
    if (std::fabs(mod - 1.0) < 1e-12) {
      throw std::domain_error("classify: marginal eigenvalue (|lambda| = 1)");
    }
    if (mod > 1.0) {
      ++unstable;
      if (e.imag() != 0.0) unstable_complex = true;
    }
  }

  if (conv == ClassConvention::StrictModulus) {
    return label_from_counts(spiral, unstable);
  }
  // UnstableOnly: the label describes the unstable set, ignoring stable
  // eigenvalues entirely
  if (unstable == 0) {
    return spiral ? FixedPointClass::SpiralNode : FixedPointClass::Node;
  }
  return unstable_complex ? FixedPointClass::SpiralRepellor
                          : FixedPointClass::Repellor;
}

FixedPointClass classify_continuous(const EigenTriple& eigs) {
  check_conjugate_pairing(eigs);
  const bool spiral = has_complex(eigs);
  int unstable = 0;
  for (const auto& e : eigs) {
    if (std::fabs(e.real()) < 1e-12) {
      throw std::domain_error("classify_continuous: marginal eigenvalue");
    }
    if (e.real() > 0.0) ++unstable;
  }
  return label_from_counts(spiral, unstable);
}

std::array<FixedPointReport, 2> analyze_fixed_points(const NDSParams& p) {
  const auto points = solve_fixed_points(p);
  std::array<FixedPointReport, 2> reports;
  for (int i = 0; i < 2; ++i) {
    FixedPointReport& rep = reports[i];
    rep.coords = points[i];
    rep.eigenvalues = eigenvalues3(jacobian(points[i], p));
    rep.class_strict = classify(rep.eigenvalues, ClassConvention::StrictModulus);
    rep.class_unstable = classify(rep.eigenvalues, ClassConvention::UnstableOnly);
    rep.above_threshold = points[i].u > p.theta;
  }
  return reports;
}

std::array<StateVec, 2> rossler_fixed_points(const RosslerParams& p) {
  if (p.a == 0.0) {
    throw std::domain_error("rossler_fixed_points: degenerate parameters (a = 0)");
  }
  const double disc = p.c * p.c - 4.0 * p.a * p.b;
  if (disc < 0.0) {
    throw std::domain_error("rossler_fixed_points: no real equilibria");
  }
  const double root = std::sqrt(disc);

  // a u^2 - c u + b = 0, same stabilized quadratic as the NDS solve
  const double b_coef = -p.c;
  const double c_coef = p.b;
  const double q = -0.5 * (b_coef + std::copysign(root, b_coef));
  double u_big = q / p.a;
  double u_small = (q != 0.0) ? c_coef / q : 0.0;
  if (std::fabs(u_big) < std::fabs(u_small)) std::swap(u_big, u_small);

  const auto point = [&p](double u) {
    return StateVec{p.a * u, -u, u};
  };
  return {point(u_big), point(u_small)};
}

Matrix3 rossler_jacobian(const StateVec& s, const RosslerParams& p) {
  Matrix3 j;
  j.m = {0.0, -1.0, -1.0,
         1.0, p.a,  0.0,
         s.u, 0.0,  s.x - p.c};
  return j;
}

double estimate_lyapunov(const NDSParams& p, const StateVec& initial,
                         std::size_t steps, std::size_t renorm_interval,
                         double separation, const FeedbackConfig& feedback,
                         std::size_t feedback_onset) {
  p.validate();
  feedback.validate();
  if (steps < 10000) {
    throw std::invalid_argument("estimate_lyapunov: steps must be >= 10000");
  }
  if (renorm_interval < 1 || renorm_interval > steps) {
    throw std::invalid_argument("estimate_lyapunov: bad renorm_interval");
  }
  if (!std::isfinite(separation) || !(separation > 0.0)) {
    throw std::invalid_argument("estimate_lyapunov: separation must be > 0");
  }
  if (!initial.finite()) {
    throw std::invalid_argument("estimate_lyapunov: non-finite initial state");
  }

  const bool has_feedback = !feedback.empty();
  const std::size_t cap = has_feedback ? feedback.max_delay() : 1;
  SpikeHistory hist_a(cap);
  SpikeHistory hist_b(cap);

  // perturb along (1,1,1)/sqrt(3) so the offset survives a simultaneous reset
  const double off = separation / std::sqrt(3.0);
  StateVec a = initial;
  StateVec b{initial.x + off, initial.y + off, initial.u + off};
  std::uint8_t gamma_a = 0;
  std::uint8_t gamma_b = 0;

  double log_sum = 0.0;
  for (std::size_t t = 0; t < steps; ++t) {
    const double fa = (has_feedback && t >= feedback_onset)
                          ? feedback_signal(hist_a, feedback, t)
                          : 0.0;
    const double fb = (has_feedback && t >= feedback_onset)
                          ? feedback_signal(hist_b, feedback, t)
                          : 0.0;
    StepResult ra, rb;
    try {
      ra = nds_step(a, p, fa, 0.0);
      rb = nds_step(b, p, fb, 0.0);
    } catch (const std::runtime_error&) {
      throw std::runtime_error("estimate_lyapunov: trajectory diverged");
    }
    hist_a.push(gamma_a);
    hist_b.push(gamma_b);
    a = ra.state;
    b = rb.state;
    gamma_a = ra.spike ? 1 : 0;
    gamma_b = rb.spike ? 1 : 0;
    if (a.max_abs() > kDivergenceBound || b.max_abs() > kDivergenceBound) {
      throw std::runtime_error("estimate_lyapunov: trajectory diverged");
    }

    if ((t + 1) % renorm_interval == 0 || t + 1 == steps) {
      const double d = euclid_dist(a, b);
      if (!(d > 0.0)) {
        throw std::runtime_error("estimate_lyapunov: trajectories merged");
      }
      log_sum += std::log(d / separation);
      const double scale = separation / d;
      b = StateVec{a.x + scale * (b.x - a.x), a.y + scale * (b.y - a.y),
                   a.u + scale * (b.u - a.u)};
    }
  }
  return log_sum / static_cast<double>(steps);
}

}  // namespace nds
