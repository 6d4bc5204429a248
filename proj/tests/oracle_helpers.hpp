#pragma once

// Test-side oracles, kept independent of the library's computation paths:
// a plain quadratic-formula fixed-point solve, central finite differences
// for Jacobians, and a direct complex determinant for eigenvalue residuals.

#include <array>
#include <cmath>
#include <complex>

#include "nds/analysis.hpp"
#include "nds/dynamics.hpp"
#include "nds/rng.hpp"
#include "nds/state.hpp"

namespace oracle {

// both roots of a u^2 - k u - v = 0 via the textbook formula,
// larger magnitude first
inline std::array<double, 2> nds_fixed_point_u(const nds::NDSParams& p) {
  const double disc = p.k * p.k + 4.0 * p.a * p.v;
  const double root = std::sqrt(disc);
  const double u_minus = (p.k - root) / (2.0 * p.a);
  const double u_plus = (p.k + root) / (2.0 * p.a);
  if (std::fabs(u_minus) >= std::fabs(u_plus)) return {u_minus, u_plus};
  return {u_plus, u_minus};
}

// both roots of a u^2 - c u + b = 0 (the Rossler equilibrium u values),
// larger magnitude first
inline std::array<double, 2> rossler_fixed_point_u(const nds::RosslerParams& p) {
  const double disc = p.c * p.c - 4.0 * p.a * p.b;
  const double root = std::sqrt(disc);
  const double u_plus = (p.c + root) / (2.0 * p.a);
  const double u_minus = (p.c - root) / (2.0 * p.a);
  if (std::fabs(u_plus) >= std::fabs(u_minus)) return {u_plus, u_minus};
  return {u_minus, u_plus};
}

// central finite differences of the sub-threshold map at s
inline nds::Matrix3 fd_jacobian(const nds::StateVec& s, nds::NDSParams p) {
  p.theta = 1e18;  // keep every evaluation on the smooth branch
  nds::Matrix3 j;
  const double h = 1e-5;
  for (int col = 0; col < 3; ++col) {
    nds::StateVec plus = s, minus = s;
    double* pf = col == 0 ? &plus.x : col == 1 ? &plus.y : &plus.u;
    double* mf = col == 0 ? &minus.x : col == 1 ? &minus.y : &minus.u;
    *pf += h;
    *mf -= h;
    const nds::StateVec fp = nds::nds_step(plus, p, 0.0, 0.0).state;
    const nds::StateVec fm = nds::nds_step(minus, p, 0.0, 0.0).state;
    j(0, col) = (fp.x - fm.x) / (2.0 * h);
    j(1, col) = (fp.y - fm.y) / (2.0 * h);
    j(2, col) = (fp.u - fm.u) / (2.0 * h);
  }
  return j;
}

// |det(m - lambda I)| by direct complex expansion
inline double eigen_residual(const nds::Matrix3& m, const nds::Complex& lambda) {
  using C = nds::Complex;
  const C a = m(0, 0) - lambda, b = m(0, 1), c = m(0, 2);
  const C d = m(1, 0), e = m(1, 1) - lambda, f = m(1, 2);
  const C g = m(2, 0), h = m(2, 1), i = m(2, 2) - lambda;
  return std::abs(a * (e * i - f * h) - b * (d * i - f * g) +
                  c * (d * h - e * g));
}

inline nds::Matrix3 random_matrix(nds::SplitMix64& rng, double scale) {
  nds::Matrix3 m;
  for (auto& e : m.m) e = rng.uniform(-scale, scale);
  return m;
}

inline nds::StateVec random_state(nds::SplitMix64& rng, double scale) {
  return {rng.uniform(-scale, scale), rng.uniform(-scale, scale),
          rng.uniform(-scale, scale)};
}

}  // namespace oracle
