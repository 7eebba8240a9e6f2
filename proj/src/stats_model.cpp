// Copyright 2026 The voxaug authors
// SPDX-License-Identifier: Apache-2.0

#include "voxaug/stats_model.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>

#include "voxaug/quantize.hpp"
#include "voxaug/rng.hpp"

namespace voxaug {

namespace {

void bump(std::vector<NoduleStatsModel::BinCount>& slot, std::uint32_t bin, std::uint32_t by) {
    auto it = std::lower_bound(slot.begin(), slot.end(), bin,
                               [](const NoduleStatsModel::BinCount& bc, std::uint32_t b) {
                                   return bc.bin < b;
                               });
    if (it != slot.end() && it->bin == bin) it->count += by;
    else slot.insert(it, {bin, by});
}

}  // namespace

NoduleStatsModel build_model(std::span<const AlignedCube> cubes, int bins) {
    if (cubes.empty()) throw Error("build_model: empty cube list");
    if (bins < 2) throw Error("build_model: need at least 2 bins");
    const int side = cubes.front().side;
    for (const AlignedCube& c : cubes)
        if (c.side != side) throw Error("build_model: mixed cube sides");

    NoduleStatsModel m;
    m.side = side;
    m.bins = bins;
    m.cube_count = static_cast<std::uint32_t>(cubes.size());
    m.counts.assign(m.voxel_count(), {});

    for (const AlignedCube& c : cubes)
        for (std::size_t i = 0; i < c.data.size(); ++i)
            if (c.support[i])
                bump(m.counts[i], static_cast<std::uint32_t>(quantize_intensity(c.data[i], bins)),
                     1);
    return m;
}

void merge_models(NoduleStatsModel& dst, const NoduleStatsModel& src) {
    if (dst.side != src.side || dst.bins != src.bins)
        throw Error("merge_models: side/bins mismatch");
    dst.cube_count += src.cube_count;
    for (std::size_t v = 0; v < src.counts.size(); ++v)
        for (const auto& bc : src.counts[v]) bump(dst.counts[v], bc.bin, bc.count);
}

GeneratedNodule sample_nodule(const NoduleStatsModel& m, std::uint64_t seed,
                              double min_support) {
    bool any = false;
    for (const auto& slot : m.counts)
        if (!slot.empty()) {
            any = true;
            break;
        }
    if (!any) throw Error("sample_nodule: model has no populated voxels");

    GeneratedNodule g;
    g.side = m.side;
    g.seed = seed;
    g.cube.assign(m.voxel_count(), 0.0f);
    g.support.assign(m.voxel_count(), 0);

    const std::int64_t n = static_cast<std::int64_t>(m.voxel_count());
#pragma omp parallel for schedule(static) if (n > 32768)
    for (std::int64_t v = 0; v < n; ++v) {
        const auto& slot = m.counts[v];
        if (slot.empty()) continue;
        std::uint64_t total = 0;
        for (const auto& bc : slot) total += bc.count;
        if (m.cube_count > 0 &&
            static_cast<double>(total) / static_cast<double>(m.cube_count) < min_support)
            continue;

        // inverse CDF over counts; entries are bin-sorted, so the draw is
        // reproducible regardless of traversal or thread order
        SplitMix64 rng = substream(seed, static_cast<std::uint64_t>(v));
        const double u = rng.next_double() * static_cast<double>(total);
        double acc = 0.0;
        std::uint32_t chosen = slot.back().bin;
        for (const auto& bc : slot) {
            acc += static_cast<double>(bc.count);
            if (u < acc) {
                chosen = bc.bin;
                break;
            }
        }
        g.cube[v] = bin_midpoint(static_cast<int>(chosen), m.bins);
        g.support[v] = 1;
    }
    return g;
}

namespace {

constexpr char kMagic[4] = {'V', 'X', 'N', 'M'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

struct Reader {
    std::span<const std::uint8_t> bytes;
    std::size_t pos = 0;

    std::uint32_t u32() {
        if (pos + 4 > bytes.size()) throw ParseError("load_model: corrupt payload (truncated)");
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(bytes[pos + i]) << (8 * i);
        pos += 4;
        return v;
    }
    std::uint64_t u64() {
        if (pos + 8 > bytes.size()) throw ParseError("load_model: corrupt payload (truncated)");
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(bytes[pos + i]) << (8 * i);
        pos += 8;
        return v;
    }
};

}  // namespace

std::vector<std::uint8_t> save_model(const NoduleStatsModel& m) {
    std::vector<std::uint8_t> out;
    out.insert(out.end(), kMagic, kMagic + 4);
    put_u32(out, kVersion);
    put_u32(out, static_cast<std::uint32_t>(m.side));
    put_u32(out, static_cast<std::uint32_t>(m.bins));
    put_u32(out, m.cube_count);

    std::uint64_t populated = 0;
    for (const auto& slot : m.counts)
        if (!slot.empty()) ++populated;
    put_u64(out, populated);

    for (std::size_t v = 0; v < m.counts.size(); ++v) {
        if (m.counts[v].empty()) continue;
        put_u32(out, static_cast<std::uint32_t>(v));
        put_u32(out, static_cast<std::uint32_t>(m.counts[v].size()));
        for (const auto& bc : m.counts[v]) {
            put_u32(out, bc.bin);
            put_u32(out, bc.count);
        }
    }
    return out;
}

NoduleStatsModel load_model(std::span<const std::uint8_t> bytes) {
    Reader r{bytes};
    if (bytes.size() < 4 || std::memcmp(bytes.data(), kMagic, 4) != 0)
        throw ParseError("load_model: corrupt payload (bad magic)");
    r.pos = 4;
    const std::uint32_t version = r.u32();
    if (version != kVersion)
        throw ParseError("load_model: version mismatch (file v" + std::to_string(version) +
                         ", reader v" + std::to_string(kVersion) + ")");

    NoduleStatsModel m;
    m.side = static_cast<int>(r.u32());
    m.bins = static_cast<int>(r.u32());
    m.cube_count = r.u32();
    if (m.side <= 0 || m.bins < 2) throw ParseError("load_model: corrupt payload (bad header)");
    m.counts.assign(m.voxel_count(), {});

    const std::uint64_t populated = r.u64();
    for (std::uint64_t rec = 0; rec < populated; ++rec) {
        const std::uint32_t voxel = r.u32();
        if (voxel >= m.voxel_count())
            throw ParseError("load_model: corrupt payload (voxel index out of range)");
        const std::uint32_t entries = r.u32();
        auto& slot = m.counts[voxel];
        slot.reserve(entries);
        std::uint32_t prev_bin = 0;
        for (std::uint32_t e = 0; e < entries; ++e) {
            const std::uint32_t bin = r.u32();
            const std::uint32_t count = r.u32();
            if (bin >= static_cast<std::uint32_t>(m.bins) || count == 0 ||
                (e > 0 && bin <= prev_bin))
                throw ParseError("load_model: corrupt payload (bad bin record)");
            slot.push_back({bin, count});
            prev_bin = bin;
        }
    }
    if (r.pos != bytes.size())
        throw ParseError("load_model: corrupt payload (trailing bytes)");
    return m;
}

void save_model_file(const NoduleStatsModel& m, const std::filesystem::path& path) {
    const auto bytes = save_model(m);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out ||
        !out.write(reinterpret_cast<const char*>(bytes.data()),
                   static_cast<std::streamsize>(bytes.size())))
        throw IoError("save_model_file: cannot write " + path.string());
}

NoduleStatsModel load_model_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("load_model_file: cannot open " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return load_model(bytes);
}

}  // namespace voxaug
