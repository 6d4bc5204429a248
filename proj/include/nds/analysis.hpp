#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <string>

#include "nds/control.hpp"
#include "nds/state.hpp"

namespace nds {

// Dense 3x3 real matrix, row-major.
struct Matrix3 {
  std::array<double, 9> m{};

  double& operator()(int r, int c) { return m[static_cast<std::size_t>(r * 3 + c)]; }
  double operator()(int r, int c) const { return m[static_cast<std::size_t>(r * 3 + c)]; }

  [[nodiscard]] double trace() const;
  [[nodiscard]] double det() const;
  // sum of the principal 2x2 minors (the second elementary symmetric
  // function of the eigenvalues)
  [[nodiscard]] double minor_sum() const;
  [[nodiscard]] double frobenius_norm() const;

  static Matrix3 identity();
};

using Complex = std::complex<double>;
using EigenTriple = std::array<Complex, 3>;

enum class FixedPointClass {
  Node,
  Repellor,
  SaddleIndex1,
  SaddleIndex2,
  SpiralNode,
  SpiralRepellor,
  SpiralSaddleIndex1,
  SpiralSaddleIndex2,
};

std::string to_string(FixedPointClass c);

// Two labelling conventions for discrete-map eigenvalues:
//   StrictModulus - an eigenvalue is unstable iff |lambda| > 1; stable and
//                   unstable counts both enter the label (saddles possible).
//   UnstableOnly  - the label describes the unstable set alone; stable
//                   eigenvalues are ignored (a repellor with one contracting
//                   direction still reads "Repellor").
enum class ClassConvention { StrictModulus, UnstableOnly };

struct FixedPointReport {
  StateVec coords;
  EigenTriple eigenvalues;  // conjugate pair first (+imag leading), then real
  FixedPointClass class_strict = FixedPointClass::Node;
  FixedPointClass class_unstable = FixedPointClass::Node;
  bool above_threshold = false;  // coords.u > theta: lies in the reset region
};

// The two equilibria of the sub-threshold map: roots of a u^2 - k u - v = 0
// with x* = a u*, y* = -u*. Larger-|u| point first.
std::array<StateVec, 2> solve_fixed_points(const NDSParams& p);

// Jacobian of the smooth (sub-threshold) branch of the NDS map at s.
Matrix3 jacobian(const StateVec& s, const NDSParams& p);

// The three roots of det(m - lambda I) = 0. A complex pair is returned
// adjacent and exactly conjugate, positive imaginary part leading, real root
// last; an all-real triple is sorted descending.
EigenTriple eigenvalues3(const Matrix3& m);

// Classifies a conjugate-paired eigenvalue triple under the chosen
// convention. Throws std::domain_error when any |lambda| sits on the unit
// circle within 1e-12 (marginal case, no classification).
FixedPointClass classify(const EigenTriple& eigs, ClassConvention conv);

// Classification for continuous-flow eigenvalues: unstable iff Re > 0.
FixedPointClass classify_continuous(const EigenTriple& eigs);

// solve -> jacobian -> eigenvalues -> both labels, for both fixed points.
std::array<FixedPointReport, 2> analyze_fixed_points(const NDSParams& p);

// The two equilibria of the Rossler flow: roots of a u^2 - c u + b = 0 with
// x* = a u*, y* = -u*. Larger-|u| point first.
std::array<StateVec, 2> rossler_fixed_points(const RosslerParams& p);

// Jacobian of the continuous Rossler vector field at s.
Matrix3 rossler_jacobian(const StateVec& s, const RosslerParams& p);

// Largest Lyapunov exponent by two-trajectory divergence with periodic
// renormalization to `separation`. Both trajectories run the full map, reset
// included, so the discontinuity is traversed rather than linearized.
// Returns the mean log-stretch per step. Throws std::runtime_error when the
// trajectories diverge or merge exactly.
double estimate_lyapunov(const NDSParams& p, const StateVec& initial,
                         std::size_t steps, std::size_t renorm_interval,
                         double separation,
                         const FeedbackConfig& feedback = {},
                         std::size_t feedback_onset = 0);

}  // namespace nds
