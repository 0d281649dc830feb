// SPDX-License-Identifier: Apache-2.0
//
// egbsm: extended geometry-based stochastic channel simulator
// Copyright (C) 2026 The egbsm authors
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
// ------------------------------------------------------------------------

#pragma once

#include <cmath>
#include <numbers>

namespace egbsm {

inline constexpr double pi = std::numbers::pi;
inline constexpr double speed_of_light = 299792458.0;

constexpr double deg2rad(double deg) { return deg * pi / 180.0; }
constexpr double rad2deg(double rad) { return rad * 180.0 / pi; }

inline double wavelength(double carrier_hz) { return speed_of_light / carrier_hz; }

/// Cartesian vector in meters. Global frame is right-handed, z-up.
struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Vec3 operator+(const Vec3 &o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr Vec3 operator-(const Vec3 &o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr Vec3 operator-() const { return {-x, -y, -z}; }
    constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    constexpr Vec3 &operator+=(const Vec3 &o) { x += o.x; y += o.y; z += o.z; return *this; }
    constexpr bool operator==(const Vec3 &) const = default;

    constexpr double dot(const Vec3 &o) const { return x * o.x + y * o.y + z * o.z; }
    constexpr Vec3 cross(const Vec3 &o) const { return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x}; }
    double norm() const { return std::sqrt(dot(*this)); }
    double norm_xy() const { return std::hypot(x, y); }
    Vec3 normalized() const { return *this / norm(); }
    bool finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
};

constexpr Vec3 operator*(double s, const Vec3 &v) { return v * s; }

using Position3 = Vec3;

/// Spherical direction. Azimuth from +x toward +y in [-pi, pi), zenith from +z in [0, pi].
struct DirectionPair {
    double azimuth = 0.0;
    double zenith = pi / 2.0;

    constexpr bool operator==(const DirectionPair &) const = default;
};

/// Wraps an angle to [-pi, pi).
double wrap_azimuth(double rad);

/// Maps arbitrary (azimuth, zenith) to the canonical ranges. Zenith outside [0, pi] is
/// reflected and the azimuth rotated by pi so the pointing direction is preserved.
DirectionPair canonical_direction(double azimuth, double zenith);

Vec3 unit_vector(const DirectionPair &dir);

/// Direction of a (non-zero) vector.
DirectionPair direction_of(const Vec3 &v);

/// Unit vectors of the local spherical basis at a direction.
Vec3 theta_hat(const DirectionPair &dir);
Vec3 phi_hat(const DirectionPair &dir);

/// Orientation as bearing (about z), downtilt (about y) and slant (about x), radians.
/// The rotation applied to local vectors is Rz(bearing) * Ry(downtilt) * Rx(slant).
struct Orientation {
    double bearing = 0.0;
    double downtilt = 0.0;
    double slant = 0.0;

    constexpr bool operator==(const Orientation &) const = default;
};

class Rotation {
  public:
    Rotation() = default;
    explicit Rotation(const Orientation &o);

    Vec3 to_global(const Vec3 &local) const;
    Vec3 to_local(const Vec3 &global) const;

  private:
    double m_[3][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
};

} // namespace egbsm
