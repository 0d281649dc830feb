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

#include "egbsm/ris.hpp"

#include <cmath>
#include <stdexcept>

namespace egbsm {

void RisPanel::validate() const
{
    if (rows < 1 || cols < 1)
        throw std::invalid_argument("ris: rows and cols must be >= 1");
    if (!(spacing > 0.0))
        throw std::invalid_argument("ris: element spacing must be positive");
    if (q < 0.0 || !(element_gain > 0.0))
        throw std::invalid_argument("ris: q must be >= 0 and element gain positive");
}

Vec3 RisPanel::normal() const
{
    return Rotation(orientation).to_global({1.0, 0.0, 0.0});
}

AntennaArray RisPanel::elements() const
{
    AntennaElement e;
    e.pattern = PatternKind::cos_q;
    e.q = q;
    e.peak_gain = element_gain;
    AntennaArray a = make_upa(rows, cols, spacing, e);
    a.position = position;
    a.orientation = orientation;
    return a;
}

const char *to_string(CodebookKind kind)
{
    switch (kind) {
    case CodebookKind::specular:
        return "specular";
    case CodebookKind::one_bit:
        return "one_bit";
    case CodebookKind::continuous:
        return "continuous";
    }
    return "unknown";
}

std::vector<double> compute_codebook(const RisPanel &panel, const CodebookSpec &spec, double lambda)
{
    panel.validate();
    std::vector<double> phases(panel.size(), 0.0);
    if (spec.kind == CodebookKind::specular)
        return phases;
    const Vec3 n = panel.normal();
    if ((spec.source - panel.position).dot(n) <= 0.0 || (spec.destination - panel.position).dot(n) <= 0.0)
        throw std::invalid_argument("ris: codebook focus point lies behind the panel");
    const AntennaArray a = panel.elements();
    const double k0 = 2.0 * pi / lambda;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const Vec3 p = a.element_position(k);
        // Compensates the propagation phase -k0 * (path length) of the source-element-destination path.
        double phi = std::fmod(k0 * ((p - spec.source).norm() + (p - spec.destination).norm()), 2.0 * pi);
        if (phi < 0.0)
            phi += 2.0 * pi;
        if (spec.kind == CodebookKind::one_bit)
            phi = (phi >= 0.5 * pi && phi < 1.5 * pi) ? pi : 0.0;
        phases[k] = phi;
    }
    return phases;
}

RisNode::RisNode(const RisPanel &panel, std::vector<double> phases, double lambda)
    : array_(panel.elements()), phases_(std::move(phases)), k0_(2.0 * pi / lambda)
{
    panel.validate();
    if (phases_.size() != array_.size())
        throw std::invalid_argument("ris: one phase per element required");
    for (std::size_t k = 0; k < array_.size(); ++k)
        offsets_.push_back(array_.element_position(k) - array_.position);
}

double RisNode::element_amplitude(const DirectionPair &dir) const
{
    return std::sqrt(element_power_gain(array_.elements.front(), global_to_local_direction(array_, dir)));
}

PolarizationMatrix RisNode::response(const DirectionPair &in, const DirectionPair &out) const
{
    const Vec3 u = unit_vector(in) + unit_vector(out);
    cdouble s{0.0, 0.0};
    for (std::size_t k = 0; k < offsets_.size(); ++k)
        s += std::polar(1.0, phases_[k] + k0_ * offsets_[k].dot(u));
    const cdouble g = element_amplitude(in) * element_amplitude(out) * s;
    return PolarizationMatrix::diagonal(g, g);
}

void RisNode::response_grid(std::span<const DirectionPair> ins, std::span<const DirectionPair> outs,
                            std::vector<PolarizationMatrix> &out) const
{
    const std::size_t k_count = offsets_.size();
    std::vector<cdouble> a(ins.size() * k_count), b(outs.size() * k_count);
    std::vector<double> ga(ins.size()), gb(outs.size());
    for (std::size_t i = 0; i < ins.size(); ++i) {
        const Vec3 u = unit_vector(ins[i]);
        ga[i] = element_amplitude(ins[i]);
        for (std::size_t k = 0; k < k_count; ++k)
            a[i * k_count + k] = std::polar(1.0, k0_ * offsets_[k].dot(u));
    }
    for (std::size_t j = 0; j < outs.size(); ++j) {
        const Vec3 u = unit_vector(outs[j]);
        gb[j] = element_amplitude(outs[j]);
        for (std::size_t k = 0; k < k_count; ++k)
            b[j * k_count + k] = std::polar(1.0, phases_[k] + k0_ * offsets_[k].dot(u));
    }
    out.resize(ins.size() * outs.size());
    for (std::size_t i = 0; i < ins.size(); ++i) {
        for (std::size_t j = 0; j < outs.size(); ++j) {
            cdouble s{0.0, 0.0};
            if (ga[i] != 0.0 && gb[j] != 0.0)
                for (std::size_t k = 0; k < k_count; ++k)
                    s += a[i * k_count + k] * b[j * k_count + k];
            const cdouble g = ga[i] * gb[j] * s;
            out[i * outs.size() + j] = PolarizationMatrix::diagonal(g, g);
        }
    }
}

cdouble ris_pattern(const RisPanel &panel, const std::vector<double> &phases, const DirectionPair &in,
                    const DirectionPair &out, double lambda)
{
    return RisNode(panel, phases, lambda).response(in, out).tt;
}

RisChannel build_ris_channel(const RisRequest &req, const TableSet &tables, const SeedTree &drop_seeds)
{
    req.panel.validate();
    RisChannel out;
    LinkRequest a = req.link;
    a.rx = make_dual_port_node(req.panel.position);
    a.rx_velocity = {};
    a.delay_mode = DelayMode::absolute;
    a.eliminate_weak = false;
    a.kind = LinkKind::tx_node;

    LinkRequest b = req.link;
    b.tx = make_dual_port_node(req.panel.position);
    b.tx_velocity = {};
    b.delay_mode = DelayMode::absolute;
    b.eliminate_weak = false;
    b.kind = LinkKind::node_rx;

    out.tx_ris = generate_baseline_link(a, tables, drop_seeds.child("link", 1));
    out.ris_rx = generate_baseline_link(b, tables, drop_seeds.child("link", 2));
    prune_clusters(out.tx_ris, req.prune);
    prune_clusters(out.ris_rx, req.prune);

    const double lambda = wavelength(req.link.carrier_hz);
    out.phases = compute_codebook(req.panel, req.codebook, lambda);
    const RisNode node(req.panel, out.phases, lambda);
    out.concatenated = concatenate(out.tx_ris, node, out.ris_rx, ConcatMode::coherent_element);
    out.concatenated.extensions.push_back("ris");
    return out;
}

} // namespace egbsm
