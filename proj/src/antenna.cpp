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

#include "egbsm/antenna.hpp"

#include <algorithm>
#include <stdexcept>

namespace egbsm {

namespace {

// 38.901 Table 7.3-1 single-element pattern, returned as linear power gain.
double sector38901_gain(const DirectionPair &dir)
{
    const double theta_deg = rad2deg(dir.zenith);
    const double phi_deg = rad2deg(wrap_azimuth(dir.azimuth));
    const double a_vert = -std::min(12.0 * std::pow((theta_deg - 90.0) / 65.0, 2), 30.0);
    const double a_horz = -std::min(12.0 * std::pow(phi_deg / 65.0, 2), 30.0);
    const double a_db = -std::min(-(a_vert + a_horz), 30.0);
    return std::pow(10.0, (8.0 + a_db) / 10.0);
}

} // namespace

double element_power_gain(const AntennaElement &element, const DirectionPair &local_dir)
{
    switch (element.pattern) {
    case PatternKind::isotropic:
        return element.peak_gain;
    case PatternKind::sector38901:
        return sector38901_gain(local_dir);
    case PatternKind::cos_q: {
        // angle off boresight (+x)
        const double c = std::sin(local_dir.zenith) * std::cos(local_dir.azimuth);
        if (c <= 0.0)
            return 0.0;
        return element.peak_gain * std::pow(c, element.q);
    }
    }
    return 0.0;
}

FieldPattern element_field_pattern(const AntennaElement &element, const DirectionPair &local_dir)
{
    const double amp = std::sqrt(element_power_gain(element, local_dir));
    return {amp * std::cos(element.slant), amp * std::sin(element.slant)};
}

Vec3 AntennaArray::element_position(std::size_t index) const
{
    return position + Rotation(orientation).to_global(elements.at(index).local_position);
}

DirectionPair global_to_local_direction(const AntennaArray &array, const DirectionPair &global_dir)
{
    return direction_of(Rotation(array.orientation).to_local(unit_vector(global_dir)));
}

DirectionPair local_to_global_direction(const AntennaArray &array, const DirectionPair &local_dir)
{
    return direction_of(Rotation(array.orientation).to_global(unit_vector(local_dir)));
}

FieldPattern global_field_pattern(const AntennaArray &array, std::size_t element, const DirectionPair &global_dir)
{
    const Rotation rot(array.orientation);
    const DirectionPair local = direction_of(rot.to_local(unit_vector(global_dir)));
    const FieldPattern f = element_field_pattern(array.elements.at(element), local);

    // Project the rotated local polarization basis onto the global one.
    const Vec3 th_l = rot.to_global(theta_hat(local));
    const Vec3 ph_l = rot.to_global(phi_hat(local));
    const Vec3 th_g = theta_hat(global_dir);
    const Vec3 ph_g = phi_hat(global_dir);
    return {f.f_theta * th_l.dot(th_g) + f.f_phi * ph_l.dot(th_g),
            f.f_theta * th_l.dot(ph_g) + f.f_phi * ph_l.dot(ph_g)};
}

AntennaArray make_ula(std::size_t n, double spacing, const AntennaElement &proto)
{
    if (n == 0)
        throw std::invalid_argument("make_ula: array needs at least one element");
    AntennaArray a;
    a.element_spacing = spacing;
    const double mid = 0.5 * static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        AntennaElement e = proto;
        e.local_position = {0.0, (static_cast<double>(i) - mid) * spacing, 0.0};
        a.elements.push_back(e);
    }
    return a;
}

AntennaArray make_upa(std::size_t rows, std::size_t cols, double spacing, const AntennaElement &proto)
{
    if (rows == 0 || cols == 0)
        throw std::invalid_argument("make_upa: array needs at least one element");
    AntennaArray a;
    a.element_spacing = spacing;
    const double rmid = 0.5 * static_cast<double>(rows - 1);
    const double cmid = 0.5 * static_cast<double>(cols - 1);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
            AntennaElement e = proto;
            e.local_position = {0.0, (static_cast<double>(c) - cmid) * spacing,
                                (static_cast<double>(r) - rmid) * spacing};
            a.elements.push_back(e);
        }
    return a;
}

AntennaArray make_dual_port_node(const Position3 &at)
{
    AntennaArray a;
    a.position = at;
    AntennaElement theta_port;
    AntennaElement phi_port;
    phi_port.slant = pi / 2.0;
    a.elements = {theta_port, phi_port};
    return a;
}

} // namespace egbsm
