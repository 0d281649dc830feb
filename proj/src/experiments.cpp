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

#include "egbsm/experiments.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <stdexcept>

#include "egbsm/cir.hpp"
#include "egbsm/metrics.hpp"

namespace egbsm {

namespace {

static_assert(std::endian::native == std::endian::little, "binary dump assumes a little-endian host");

TableSet load_named_tables(const std::string &name)
{
    return load_table_set(resolve_table_path(name));
}

std::ofstream open_output(const std::filesystem::path &file)
{
    std::filesystem::create_directories(file.parent_path());
    std::ofstream os(file, std::ios::binary);
    if (!os)
        throw std::runtime_error("cannot write " + file.string());
    return os;
}

template <class T>
void put(std::ostream &os, T v)
{
    char buf[sizeof(T)];
    std::memcpy(buf, &v, sizeof(T));
    os.write(buf, sizeof(T));
}

void put_string(std::ostream &os, const std::string &s)
{
    put<std::uint32_t>(os, static_cast<std::uint32_t>(s.size()));
    os.write(s.data(), static_cast<std::streamsize>(s.size()));
}

double mean_snr_db(const std::vector<double> &snr_db)
{
    double acc = 0.0;
    for (double s : snr_db)
        acc += std::pow(10.0, s / 10.0);
    return 10.0 * std::log10(acc / static_cast<double>(snr_db.size()));
}

} // namespace

std::string format_number(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string provenance_line(const std::string &schema, const Config &c)
{
    char hash[32];
    std::snprintf(hash, sizeof(hash), "0x%016llx", static_cast<unsigned long long>(config_hash(c)));
    return "#egbsm-csv " + schema + "/1 config_hash=" + hash + " seed=" + std::to_string(c.seed) +
           " drops=" + std::to_string(c.drops) + " tables=" + c.tables;
}

std::vector<RcsSeriesResult> rcs_cdf(const Config &c)
{
    RcsConfig base;
    Position3 target{10.0, 0.0, 10.0};
    Position3 sensor{0.0, 0.0, 0.0};
    if (!c.targets.empty()) {
        base = c.targets.front().rcs;
        target = {c.targets.front().position[0], c.targets.front().position[1], c.targets.front().position[2]};
        sensor = {c.tx.position[0], c.tx.position[1], c.tx.position[2]};
    }
    std::vector<RcsSeries> series = c.rcs_cdf.series;
    if (series.empty())
        series.push_back({"default", c.carrier_hz, base.a_dbsm, base.b2_std_db});

    // Monostatic: the wave leaves the target back toward the sensor on both legs.
    const DirectionPair back = direction_of(sensor - target);
    std::vector<RcsSeriesResult> out;
    for (std::size_t s = 0; s < series.size(); ++s) {
        RcsConfig rc = base;
        rc.a_dbsm = series[s].a_dbsm;
        rc.b2_std_db = series[s].b2_std_db;
        rc.b2 = series[s].b2_std_db > 0.0 ? "gaussian_db" : "degenerate";
        const RcsModel model = build_rcs_model(rc);
        auto stream = SeedTree(c.seed).child("series", s).stream("rcs");
        RcsSeriesResult r;
        r.label = series[s].label;
        r.carrier_hz = series[s].carrier_hz;
        r.rcs_dbsm.resize(static_cast<std::size_t>(c.rcs_cdf.samples));
        for (auto &v : r.rcs_dbsm)
            v = rcs_dbsm(model, back, back, draw_rcs_state(model, stream));
        out.push_back(std::move(r));
    }
    return out;
}

XlCorrResult xl_corr(const Config &config, unsigned threads)
{
    const TableSet tables = load_named_tables(config.tables);
    Config off = config;
    off.extensions.sns = false;
    off.extensions.isac = false;
    off.extensions.ris = false;
    Config on = off;
    on.extensions.sns = true;
    const LinkRequest req = build_link_request(off);
    const std::size_t n_rx = req.rx.size();
    const auto freqs = baseband_grid(config.bandwidth_hz, static_cast<std::size_t>(config.xl_corr.num_freq));

    using Accs = std::vector<CorrelationAccumulator>;
    auto per_drop = [&](std::size_t i) {
        const SeedTree seeds = drop_seed_tree(config.seed, i);
        std::pair<Accs, Accs> acc{Accs(n_rx), Accs(n_rx)};
        for (int pass = 0; pass < 2; ++pass) {
            const ChannelRealization r = generate_comm_link(pass == 0 ? off : on, req, tables, seeds);
            const auto h0 = frequency_response(r, 0, 0, freqs);
            Accs &a = pass == 0 ? acc.first : acc.second;
            for (std::size_t s = 0; s < n_rx; ++s)
                a[s].add(h0, frequency_response(r, 0, s, freqs));
        }
        return acc;
    };
    const auto drops = parallel_map(static_cast<std::size_t>(config.drops), threads, per_drop);

    Accs base(n_rx), sns(n_rx);
    for (const auto &d : drops)
        for (std::size_t s = 0; s < n_rx; ++s) {
            base[s].merge(d.first[s]);
            sns[s].merge(d.second[s]);
        }
    XlCorrResult out;
    for (std::size_t s = 0; s < n_rx; ++s) {
        out.separation.push_back(s);
        out.rho_baseline.push_back(base[s].value());
        out.rho_sns.push_back(sns[s].value());
    }
    return out;
}

std::vector<RisSnrRow> ris_snr(const Config &config, unsigned threads)
{
    if (!config.ris)
        throw std::invalid_argument("ris_snr: the config has no ris section");
    const TableSet tables = load_named_tables(config.tables);
    const LinkRequest link = build_link_request(config);

    struct Combo {
        int rows, cols;
        std::string codebook;
    };
    std::vector<Combo> combos;
    for (const auto &ps : config.ris_snr.panel_sizes)
        for (const auto &cb : config.ris_snr.codebooks)
            combos.push_back({ps[0], ps[1], cb});

    auto per_drop = [&](std::size_t i) {
        const SeedTree seeds = drop_seed_tree(config.seed, i).child("ris", 0);
        std::vector<double> snr;
        for (const auto &cmb : combos) {
            RisConfig rc = *config.ris;
            rc.rows = cmb.rows;
            rc.cols = cmb.cols;
            RisRequest req;
            req.link = link;
            req.panel = build_ris_panel(rc, config.carrier_hz);
            req.codebook.kind = parse_codebook(cmb.codebook);
            req.codebook.source = link.tx.position;
            req.codebook.destination = link.rx.position;
            req.prune = config.prune;
            const RisChannel ch = build_ris_channel(req, tables, seeds);
            snr.push_back(received_snr(ch.concatenated, config.ris_snr.tx_power_dbm, config.ris_snr.noise_dbm));
        }
        return snr;
    };
    const auto drops = parallel_map(static_cast<std::size_t>(config.drops), threads, per_drop);

    std::vector<RisSnrRow> out;
    for (std::size_t k = 0; k < combos.size(); ++k) {
        std::vector<double> col;
        for (const auto &d : drops)
            col.push_back(d[k]);
        out.push_back({combos[k].rows, combos[k].cols, combos[k].codebook, mean_snr_db(col)});
    }
    return out;
}

std::vector<GiniRow> sparsity_gini(const Config &config, unsigned threads)
{
    std::map<std::string, TableSet> sets;
    for (const auto &m : config.sparsity_gini.model_sets)
        if (!sets.count(m.tables))
            sets.emplace(m.tables, load_named_tables(m.tables));
    const bool per_cluster = config.sparsity_gini.granularity == "cluster";

    std::vector<GiniRow> out;
    for (double f : config.sparsity_gini.frequencies_hz) {
        for (const auto &m : config.sparsity_gini.model_sets) {
            Config c = config;
            c.carrier_hz = f;
            c.tables = m.tables;
            c.extensions = {};
            c.extensions.sparsity = m.ick;
            c.targets.clear();
            c.ris.reset();
            const LinkRequest req = build_link_request(c);
            const TableSet &tables = sets.at(m.tables);
            auto per_drop = [&](std::size_t i) {
                const ChannelRealization r = generate_comm_link(c, req, tables, drop_seed_tree(c.seed, i));
                const auto p = per_cluster ? cluster_path_powers(r) : path_powers(r);
                return gini_index(p).value;
            };
            const auto g = parallel_map(static_cast<std::size_t>(c.drops), threads, per_drop);
            double acc = 0.0;
            for (double v : g)
                acc += v;
            out.push_back({f, m.label, m.tables, acc / static_cast<double>(g.size())});
        }
    }
    return out;
}

std::vector<std::filesystem::path> cmd_rcs_cdf(const Config &config, const RunOptions &o)
{
    const auto file = o.out_dir / "rcs_cdf.csv";
    auto os = open_output(file);
    os << provenance_line("rcs_cdf", config) << "\n";
    os << "series,carrier_hz,rcs_dbsm,cdf\n";
    for (const auto &s : rcs_cdf(config)) {
        const std::string f = format_number(s.carrier_hz);
        for (const auto &[v, p] : empirical_cdf(s.rcs_dbsm))
            os << s.label << ',' << f << ',' << format_number(v) << ',' << format_number(p) << '\n';
    }
    return {file};
}

std::vector<std::filesystem::path> cmd_xl_corr(const Config &config, const RunOptions &o)
{
    const auto res = xl_corr(config, o.threads);
    const auto file = o.out_dir / "xl_corr.csv";
    auto os = open_output(file);
    os << provenance_line("xl_corr", config) << "\n";
    os << "separation,rho_baseline,rho_sns\n";
    for (std::size_t k = 0; k < res.separation.size(); ++k)
        os << res.separation[k] << ',' << format_number(res.rho_baseline[k]) << ','
           << format_number(res.rho_sns[k]) << '\n';
    return {file};
}

std::vector<std::filesystem::path> cmd_ris_snr(const Config &config, const RunOptions &o)
{
    const auto rows = ris_snr(config, o.threads);
    const auto file = o.out_dir / "ris_snr.csv";
    auto os = open_output(file);
    os << provenance_line("ris_snr", config) << "\n";
    os << "rows,cols,elements,codebook,mean_snr_db\n";
    for (const auto &r : rows)
        os << r.rows << ',' << r.cols << ',' << r.rows * r.cols << ',' << r.codebook << ','
           << format_number(r.mean_snr_db) << '\n';
    return {file};
}

std::vector<std::filesystem::path> cmd_sparsity_gini(const Config &config, const RunOptions &o)
{
    const auto rows = sparsity_gini(config, o.threads);
    const auto file = o.out_dir / "sparsity_gini.csv";
    auto os = open_output(file);
    os << provenance_line("sparsity_gini", config) << "\n";
    os << "frequency_hz,model_set,tables,mean_gini\n";
    for (const auto &r : rows)
        os << format_number(r.frequency_hz) << ',' << r.model_set << ',' << r.tables << ','
           << format_number(r.mean_gini) << '\n';
    return {file};
}

std::vector<LabeledChannel> drop_channels(const DropOutput &d)
{
    std::vector<LabeledChannel> out;
    if (d.comm)
        out.push_back({"comm", &*d.comm});
    for (std::size_t t = 0; t < d.sensing.size(); ++t)
        out.push_back({"sensing" + std::to_string(t), &d.sensing[t].concatenated});
    if (d.ris)
        out.push_back({"ris", &d.ris->concatenated});
    return out;
}

void write_cir_csv_rows(std::ostream &os, const DropOutput &d)
{
    for (const auto &[label, ch] : drop_channels(d)) {
        std::map<int, int> shared;
        for (const auto &cl : ch->clusters)
            shared[cl.id] = cl.shared_with;
        for (std::size_t q = 0; q < ch->n_rx; ++q)
            for (std::size_t p = 0; p < ch->n_tx; ++p)
                for (const auto &path : ch->link(p, q)) {
                    const auto it = shared.find(path.cluster_id);
                    const int sw = it == shared.end() ? -1 : it->second;
                    os << d.index << ',' << label << ',' << p << ',' << q << ',' << path.cluster_id << ','
                       << path.ray_id << ',' << format_number(path.delay) << ','
                       << format_number(path.amplitude.real()) << ',' << format_number(path.amplitude.imag()) << ','
                       << format_number(rad2deg(path.departure.azimuth)) << ','
                       << format_number(rad2deg(path.departure.zenith)) << ','
                       << format_number(rad2deg(path.arrival.azimuth)) << ','
                       << format_number(rad2deg(path.arrival.zenith)) << ',' << format_number(path.doppler) << ','
                       << (sw >= 0 ? 1 : 0) << '\n';
                }
    }
}

void write_cir_binary_header(std::ostream &os, const Config &c)
{
    os.write("EGBSMCIR", 8);
    put<std::uint32_t>(os, 1);
    put<std::uint64_t>(os, config_hash(c));
    put<std::uint64_t>(os, c.seed);
    put<std::uint64_t>(os, static_cast<std::uint64_t>(c.drops));
}

void write_cir_binary_drop(std::ostream &os, const DropOutput &d)
{
    const auto chans = drop_channels(d);
    put<std::uint64_t>(os, d.index);
    put<std::uint32_t>(os, static_cast<std::uint32_t>(chans.size()));
    for (const auto &[label, ch] : chans) {
        put_string(os, label);
        put<std::uint8_t>(os, static_cast<std::uint8_t>(ch->kind));
        put<std::uint8_t>(os, ch->delay_mode == DelayMode::absolute ? 1 : 0);
        put<double>(os, ch->carrier_hz);
        put<std::uint32_t>(os, static_cast<std::uint32_t>(ch->n_tx));
        put<std::uint32_t>(os, static_cast<std::uint32_t>(ch->n_rx));
        std::map<int, int> shared;
        for (const auto &cl : ch->clusters)
            shared[cl.id] = cl.shared_with;
        for (const auto &list : ch->paths) {
            put<std::uint32_t>(os, static_cast<std::uint32_t>(list.size()));
            for (const auto &p : list) {
                const auto it = shared.find(p.cluster_id);
                put<std::int32_t>(os, p.cluster_id);
                put<std::int32_t>(os, p.ray_id);
                put<double>(os, p.delay);
                put<double>(os, p.amplitude.real());
                put<double>(os, p.amplitude.imag());
                put<double>(os, rad2deg(p.departure.azimuth));
                put<double>(os, rad2deg(p.departure.zenith));
                put<double>(os, rad2deg(p.arrival.azimuth));
                put<double>(os, rad2deg(p.arrival.zenith));
                put<double>(os, p.doppler);
                put<std::int32_t>(os, it == shared.end() ? -1 : it->second);
            }
        }
    }
}

std::vector<std::filesystem::path> cmd_gen_cir(const Config &config, const RunOptions &o)
{
    const TableSet tables = load_named_tables(config.tables);
    std::vector<std::filesystem::path> files{o.out_dir / "cir.csv"};
    auto csv = open_output(files[0]);
    csv << provenance_line("cir", config) << "\n";
    csv << "drop,link,tx,rx,cluster_id,ray_id,delay_s,re,im,aod_deg,zod_deg,aoa_deg,zoa_deg,doppler_hz,shared\n";

    std::ofstream bin, taps;
    if (config.output.binary) {
        files.push_back(o.out_dir / "cir.bin");
        bin = open_output(files.back());
        write_cir_binary_header(bin, config);
    }
    if (config.output.tap_grid) {
        files.push_back(o.out_dir / "taps.csv");
        taps = open_output(files.back());
        taps << provenance_line("taps", config) << "\n";
        taps << "drop,link,tx,rx,tap,re,im\n";
    }

    // Drops are generated in parallel batches and written in index order.
    const std::size_t total = static_cast<std::size_t>(config.drops);
    const std::size_t batch = std::max<std::size_t>(1, 4 * static_cast<std::size_t>(std::max(1u, o.threads)));
    const double t0 = 0.0;
    for (std::size_t start = 0; start < total; start += batch) {
        const std::size_t n = std::min(batch, total - start);
        const auto drops =
            parallel_map(n, o.threads, [&](std::size_t k) { return run_drop(config, tables, start + k); });
        for (const auto &d : drops) {
            write_cir_csv_rows(csv, d);
            if (config.output.binary)
                write_cir_binary_drop(bin, d);
            if (config.output.tap_grid)
                for (const auto &[label, ch] : drop_channels(d)) {
                    const TapGrid g = synthesize_cir_samples(*ch, std::span(&t0, 1), config.bandwidth_hz,
                                                             static_cast<std::size_t>(config.output.num_taps));
                    for (std::size_t q = 0; q < g.n_rx; ++q)
                        for (std::size_t p = 0; p < g.n_tx; ++p)
                            for (std::size_t t = 0; t < g.num_taps; ++t) {
                                const cdouble v = g.at(p, q, 0, t);
                                taps << d.index << ',' << label << ',' << p << ',' << q << ',' << t << ','
                                     << format_number(v.real()) << ',' << format_number(v.imag()) << '\n';
                            }
                }
        }
    }
    return files;
}

} // namespace egbsm
