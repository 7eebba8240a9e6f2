// Copyright 2026 The voxaug authors
// SPDX-License-Identifier: Apache-2.0

#include "voxaug/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "voxaug/mhd_io.hpp"
#include "voxaug/rng.hpp"
#include "voxaug/transforms.hpp"

namespace voxaug {

const char* to_string(Provenance p) {
    switch (p) {
        case Provenance::real: return "real";
        case Provenance::generated_stats: return "generated_stats";
        case Provenance::generated_gan_external: return "generated_gan_external";
        case Provenance::traditional_aug: return "traditional_aug";
    }
    return "?";
}

const char* to_string(Split s) { return s == Split::train ? "train" : "test"; }

Provenance provenance_from_string(const std::string& s) {
    if (s == "real") return Provenance::real;
    if (s == "generated_stats") return Provenance::generated_stats;
    if (s == "generated_gan_external") return Provenance::generated_gan_external;
    if (s == "traditional_aug") return Provenance::traditional_aug;
    throw ParseError("manifest: unknown provenance '" + s + "'");
}

Split split_from_string(const std::string& s) {
    if (s == "train") return Split::train;
    if (s == "test") return Split::test;
    throw ParseError("manifest: unknown split '" + s + "'");
}

DatasetManifest read_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("read_manifest: cannot open " + path.string());
    DatasetManifest m;
    std::string line;
    int line_no = 0;
    bool split_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::string cur;
        for (char c : line) {
            if (c == '\t') {
                f.push_back(cur);
                cur.clear();
            } else {
                cur.push_back(c);
            }
        }
        f.push_back(cur);
        if (f.size() != 5)
            throw ParseError("read_manifest: expected 5 tab-separated fields on line " +
                             std::to_string(line_no));
        ManifestEntry e;
        e.patch_path = f[0];
        e.mask_path = f[1] == "-" ? "" : f[1];
        if (f[2] != "0" && f[2] != "1")
            throw ParseError("read_manifest: label must be 0 or 1 on line " +
                             std::to_string(line_no));
        e.label = f[2] == "1" ? 1 : 0;
        e.provenance = provenance_from_string(f[3]);
        const Split s = split_from_string(f[4]);
        if (!split_seen) {
            m.split = s;
            split_seen = true;
        } else if (s != m.split) {
            throw ParseError("read_manifest: mixed splits in one manifest (line " +
                             std::to_string(line_no) + ")");
        }
        m.entries.push_back(std::move(e));
    }
    return m;
}

void write_manifest(const DatasetManifest& m, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("write_manifest: cannot write " + path.string());
    for (const ManifestEntry& e : m.entries) {
        out << e.patch_path << '\t' << (e.mask_path.empty() ? "-" : e.mask_path) << '\t'
            << e.label << '\t' << to_string(e.provenance) << '\t' << to_string(m.split)
            << '\n';
    }
    if (!out) throw IoError("write_manifest: write failure on " + path.string());
}

namespace {

// the traditional augmentation set: 3 axis flips + 3 axial rotations
std::vector<std::pair<std::string, Volume>> traditional_variants(const Volume& v) {
    std::vector<std::pair<std::string, Volume>> out;
    out.emplace_back("flipz", flip_axis(v, 0));
    out.emplace_back("flipy", flip_axis(v, 1));
    out.emplace_back("flipx", flip_axis(v, 2));
    out.emplace_back("rot90", rotate90_axial(v, 1));
    out.emplace_back("rot180", rotate90_axial(v, 2));
    out.emplace_back("rot270", rotate90_axial(v, 3));
    return out;
}

}  // namespace

DatasetManifest assemble_dataset(std::span<const DatasetManifest> sources,
                                 const AssembleOptions& opts) {
    std::vector<ManifestEntry> pool;
    for (const DatasetManifest& src : sources)
        pool.insert(pool.end(), src.entries.begin(), src.entries.end());

    DatasetManifest out;
    out.split = opts.split;

    SplitMix64 rng(opts.seed);
    auto shuffle = [&rng](std::vector<ManifestEntry>& v) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.next_below(i)]);
    };

    if (!opts.balance) {
        shuffle(pool);
        out.entries = std::move(pool);
        return out;
    }
    if (opts.n_per_class <= 0) throw Error("assemble_dataset: n_per_class must be positive");

    std::vector<ManifestEntry> pos, neg;
    for (ManifestEntry& e : pool) (e.label == 1 ? pos : neg).push_back(std::move(e));

    if (static_cast<int>(pos.size()) < opts.n_per_class && opts.allow_augment) {
        if (opts.augment_dir.empty())
            throw Error("assemble_dataset: augmentation requested without an output dir");
        std::filesystem::create_directories(opts.augment_dir);
        const std::size_t originals = pos.size();
        for (std::size_t i = 0;
             i < originals && static_cast<int>(pos.size()) < opts.n_per_class; ++i) {
            const Volume v = read_volume(pos[i].patch_path);
            const std::string stem = std::filesystem::path(pos[i].patch_path).stem().string();
            for (auto& [tag, variant] : traditional_variants(v)) {
                if (static_cast<int>(pos.size()) >= opts.n_per_class) break;
                const std::filesystem::path p =
                    opts.augment_dir / (stem + "_" + tag + ".mhd");
                write_volume(variant, p);
                ManifestEntry e;
                e.patch_path = p.string();
                e.label = 1;
                e.provenance = Provenance::traditional_aug;
                pos.push_back(std::move(e));
            }
        }
    }

    if (static_cast<int>(pos.size()) < opts.n_per_class ||
        static_cast<int>(neg.size()) < opts.n_per_class)
        throw Error("assemble_dataset: insufficient entries (" + std::to_string(pos.size()) +
                    " positive, " + std::to_string(neg.size()) + " negative, need " +
                    std::to_string(opts.n_per_class) + " each)");

    shuffle(pos);
    shuffle(neg);
    pos.resize(opts.n_per_class);
    neg.resize(opts.n_per_class);

    out.entries.reserve(2 * static_cast<std::size_t>(opts.n_per_class));
    out.entries.insert(out.entries.end(), pos.begin(), pos.end());
    out.entries.insert(out.entries.end(), neg.begin(), neg.end());
    shuffle(out.entries);
    return out;
}

std::vector<Sample> materialize(const DatasetManifest& m) {
    std::vector<Sample> samples;
    samples.reserve(m.entries.size());
    for (const ManifestEntry& e : m.entries) {
        Sample s;
        s.patch = read_volume(e.patch_path);
        s.label = e.label;
        samples.push_back(std::move(s));
    }
    return samples;
}

}  // namespace voxaug
