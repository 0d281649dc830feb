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

#include "egbsm/geometry.hpp"

#include <algorithm>

namespace egbsm {

double wrap_azimuth(double rad)
{
    double a = std::fmod(rad + pi, 2.0 * pi);
    if (a < 0.0)
        a += 2.0 * pi;
    a -= pi;
    // fmod can land exactly on +pi after the shift for inputs just below -pi
    if (a >= pi)
        a -= 2.0 * pi;
    return a;
}

DirectionPair canonical_direction(double azimuth, double zenith)
{
    double z = std::fmod(zenith, 2.0 * pi);
    if (z < 0.0)
        z += 2.0 * pi;
    if (z > pi) {
        z = 2.0 * pi - z;
        azimuth += pi;
    }
    return {wrap_azimuth(azimuth), z};
}

Vec3 unit_vector(const DirectionPair &dir)
{
    const double st = std::sin(dir.zenith);
    return {st * std::cos(dir.azimuth), st * std::sin(dir.azimuth), std::cos(dir.zenith)};
}

DirectionPair direction_of(const Vec3 &v)
{
    const double r = v.norm();
    const double c = std::clamp(v.z / r, -1.0, 1.0);
    return {wrap_azimuth(std::atan2(v.y, v.x)), std::acos(c)};
}

Vec3 theta_hat(const DirectionPair &dir)
{
    const double ct = std::cos(dir.zenith), st = std::sin(dir.zenith);
    return {ct * std::cos(dir.azimuth), ct * std::sin(dir.azimuth), -st};
}

Vec3 phi_hat(const DirectionPair &dir)
{
    return {-std::sin(dir.azimuth), std::cos(dir.azimuth), 0.0};
}

Rotation::Rotation(const Orientation &o)
{
    const double ca = std::cos(o.bearing), sa = std::sin(o.bearing);
    const double cb = std::cos(o.downtilt), sb = std::sin(o.downtilt);
    const double cg = std::cos(o.slant), sg = std::sin(o.slant);

    // Rz(a) * Ry(b) * Rx(g)
    m_[0][0] = ca * cb;
    m_[0][1] = ca * sb * sg - sa * cg;
    m_[0][2] = ca * sb * cg + sa * sg;
    m_[1][0] = sa * cb;
    m_[1][1] = sa * sb * sg + ca * cg;
    m_[1][2] = sa * sb * cg - ca * sg;
    m_[2][0] = -sb;
    m_[2][1] = cb * sg;
    m_[2][2] = cb * cg;
}

Vec3 Rotation::to_global(const Vec3 &v) const
{
    return {m_[0][0] * v.x + m_[0][1] * v.y + m_[0][2] * v.z,
            m_[1][0] * v.x + m_[1][1] * v.y + m_[1][2] * v.z,
            m_[2][0] * v.x + m_[2][1] * v.y + m_[2][2] * v.z};
}

Vec3 Rotation::to_local(const Vec3 &v) const
{
    return {m_[0][0] * v.x + m_[1][0] * v.y + m_[2][0] * v.z,
            m_[0][1] * v.x + m_[1][1] * v.y + m_[2][1] * v.z,
            m_[0][2] * v.x + m_[1][2] * v.y + m_[2][2] * v.z};
}

} // namespace egbsm
