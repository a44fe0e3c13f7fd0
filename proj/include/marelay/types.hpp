// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace marelay {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

inline constexpr double kPi = 3.14159265358979323846;

// ---------------------------------------------------------------------------
// Errors. Everything thrown by the library derives from marelay::Error so
// callers can tell library failures apart from std exceptions of their own.
// ---------------------------------------------------------------------------

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Raised when a placement or region cannot satisfy the region / spacing constraints.
class InfeasibleError : public Error {
  public:
    using Error::Error;
};

/// Raised for a zero channel vector where a link is required (AF beamforming).
class DegenerateChannelError : public Error {
  public:
    using Error::Error;
};

class DimensionError : public Error {
  public:
    using Error::Error;
};

class NumericalError : public Error {
  public:
    using Error::Error;
};

/// Built-in consistency checks (monotone traces, feasibility) that should never fire.
class InvariantViolation : public Error {
  public:
    using Error::Error;
};

// ---------------------------------------------------------------------------
// Geometry
// ---------------------------------------------------------------------------

/// A point or direction in the relay's 2-D moving plane, in meters.
struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
    friend constexpr bool operator==(Vec2 a, Vec2 b) = default;

    double norm() const { return std::hypot(x, y); }
};

/// Ordered antenna positions; entry n is the n-th antenna (0-based).
using Placement = std::vector<Vec2>;

/// Square moving region [-A/2, A/2]^2 with a minimum inter-antenna distance.
struct Region {
    double side_length = 10.0; ///< A, meters
    double min_spacing = 0.5;  ///< D, meters
    double wavelength = 1.0;   ///< lambda, meters

    double half() const { return 0.5 * side_length; }
    void validate() const;
};

/// Relative slack applied to the spacing test so lattice layouts at exactly D pass.
inline constexpr double kSpacingRelTol = 1e-12;

bool inside_region(Vec2 p, const Region &region);

/// True when p keeps distance >= D from every entry of `placement` except `skip`.
bool spacing_ok(Vec2 p, const Placement &placement, std::size_t skip, const Region &region);

/// Region and pairwise-spacing constraints for the whole placement.
bool is_feasible(const Placement &placement, const Region &region);

/// Throws InfeasibleError with a description of the first violated constraint.
void require_feasible(const Placement &placement, const Region &region, const std::string &what);

} // namespace marelay
