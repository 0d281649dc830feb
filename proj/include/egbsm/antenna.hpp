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

#include <complex>
#include <cstddef>
#include <vector>

#include "egbsm/geometry.hpp"

namespace egbsm {

using cdouble = std::complex<double>;

enum class PatternKind { isotropic, sector38901, cos_q };

/// One radiating element. Patterns are defined in the array frame with boresight along +x.
struct AntennaElement {
    Vec3 local_position;
    PatternKind pattern = PatternKind::isotropic;
    double q = 0.0;          ///< cos-q exponent, >= 0
    double peak_gain = 1.0;  ///< linear power gain at boresight (cos-q) or of the isotropic element
    double slant = 0.0;      ///< polarization slant angle, radians (0 = theta-polarized)
};

/// Complex field components along the local theta/phi unit vectors.
struct FieldPattern {
    cdouble f_theta;
    cdouble f_phi;

    double power() const { return std::norm(f_theta) + std::norm(f_phi); }
};

/// 2x2 polarimetric (Jones) matrix. Rows index the outgoing component, columns the incoming one.
struct PolarizationMatrix {
    cdouble tt{1.0, 0.0};
    cdouble tp{0.0, 0.0};
    cdouble pt{0.0, 0.0};
    cdouble pp{1.0, 0.0};

    static PolarizationMatrix diagonal(cdouble theta, cdouble phi) { return {theta, 0.0, 0.0, phi}; }

    cdouble entry(std::size_t out, std::size_t in) const
    {
        if (out == 0)
            return in == 0 ? tt : tp;
        return in == 0 ? pt : pp;
    }
};

/// Element power gain at a direction given in the element's (array) frame.
double element_power_gain(const AntennaElement &element, const DirectionPair &local_dir);

/// Field pattern in the array frame, including the slant decomposition.
FieldPattern element_field_pattern(const AntennaElement &element, const DirectionPair &local_dir);

struct AntennaArray {
    Position3 position;
    Orientation orientation;
    std::vector<AntennaElement> elements;
    double element_spacing = 0.0;  ///< metadata only

    std::size_t size() const { return elements.size(); }

    /// Element position in the global frame.
    Vec3 element_position(std::size_t index) const;
};

DirectionPair global_to_local_direction(const AntennaArray &array, const DirectionPair &global_dir);
DirectionPair local_to_global_direction(const AntennaArray &array, const DirectionPair &local_dir);

/// Field pattern of one element expressed in the global theta/phi basis.
FieldPattern global_field_pattern(const AntennaArray &array, std::size_t element, const DirectionPair &global_dir);

/// Uniform linear array along the local y axis, centered on the reference point.
AntennaArray make_ula(std::size_t n, double spacing, const AntennaElement &proto);

/// Uniform planar array in the local y-z plane (rows along z, columns along y).
AntennaArray make_upa(std::size_t rows, std::size_t cols, double spacing, const AntennaElement &proto);

/// Two co-located isotropic ports, theta- then phi-polarized. Used at intermediate nodes.
AntennaArray make_dual_port_node(const Position3 &at);

} // namespace egbsm
