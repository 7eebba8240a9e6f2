// Copyright 2026 The voxaug authors
// SPDX-License-Identifier: Apache-2.0

// voxaug CLI: preprocess CT volumes, build the per-voxel statistics model,
// generate and fuse synthetic nodules, assemble datasets, train the toy
// classifier, and evaluate predictions.

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "voxaug/align.hpp"
#include "voxaug/annotations.hpp"
#include "voxaug/classifier.hpp"
#include "voxaug/connected.hpp"
#include "voxaug/dataset.hpp"
#include "voxaug/experiment.hpp"
#include "voxaug/fusion.hpp"
#include "voxaug/mask.hpp"
#include "voxaug/metrics.hpp"
#include "voxaug/mhd_io.hpp"
#include "voxaug/preprocess.hpp"
#include "voxaug/rng.hpp"
#include "voxaug/stats_model.hpp"

using namespace voxaug;
namespace fs = std::filesystem;

namespace {

std::vector<fs::path> volume_headers_in(const fs::path& dir) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        const auto ext = entry.path().extension();
        if (ext == ".mhd" || ext == ".mha") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    return files;
}

VoxelIndex parse_site(const std::string& s) {
    VoxelIndex idx;
    if (std::sscanf(s.c_str(), "%d,%d,%d", &idx.z, &idx.y, &idx.x) != 3)
        throw Error("expected site as z,y,x, got '" + s + "'");
    return idx;
}

NoiseSpec parse_noise(const std::string& s, std::uint64_t seed) {
    NoiseSpec spec;
    spec.seed = seed;
    const auto colon = s.find(':');
    const std::string kind = s.substr(0, colon);
    if (kind == "gaussian") spec.kind = NoiseKind::gaussian;
    else if (kind == "salt_pepper") spec.kind = NoiseKind::salt_pepper;
    else throw Error("unknown noise kind '" + kind + "' (gaussian|salt_pepper)");
    if (colon == std::string::npos) throw Error("noise needs a magnitude: kind:value");
    spec.magnitude = std::stod(s.substr(colon + 1));
    return spec;
}

// --------------------------------------------------------------- preprocess

int cmd_preprocess(const std::string& in, const std::string& out_dir, double level,
                   double width, double target, const std::string& annotations_csv,
                   const std::string& candidates_csv, int patch_side) {
    fs::create_directories(out_dir);
    const Volume raw = read_volume(in);
    const Volume windowed = window_normalize(raw, WindowSpec{level, width});
    const ResampleSpec spec{{target, target, target}, Interp::trilinear};
    const Volume norm = resample(windowed, spec);
    const fs::path stem = fs::path(out_dir) / fs::path(in).stem();
    write_volume(norm, stem.string() + "_norm.mhd");

    std::vector<Annotation> anns;
    if (!annotations_csv.empty()) {
        anns = read_annotations(annotations_csv, AnnotationKind::annotations);
        Volume mask = make_mask_union(raw, anns);
        const ResampleSpec mask_spec{{target, target, target}, Interp::nearest};
        write_volume(resample(mask, mask_spec), stem.string() + "_mask.mhd");
    }
    if (!candidates_csv.empty()) {
        const auto cands = read_annotations(candidates_csv, AnnotationKind::candidates);
        anns.insert(anns.end(), cands.begin(), cands.end());
    }

    int written = 0;
    for (std::size_t i = 0; i < anns.size(); ++i) {
        VoxelIndex center;
        try {
            center = world_to_voxel(norm, anns[i].center_world);
        } catch (const BoundsError&) {
            std::cerr << "record " << i << ": centre outside volume, skipped\n";
            continue;
        }
        const Volume patch = extract_patch(norm, center, patch_side);
        write_volume(patch, stem.string() + "_patch" + std::to_string(i) + ".mhd");
        ++written;
    }
    std::cout << "normalized volume + " << written << " patches -> " << out_dir << "\n";
    return 0;
}

// --------------------------------------------------------------- build-model

int cmd_build_model(const std::string& cubes_dir, int bins, double threshold,
                    const std::string& out) {
    const auto files = volume_headers_in(cubes_dir);
    if (files.empty()) throw Error("no .mhd/.mha cubes under " + cubes_dir);
    std::vector<AlignedCube> cubes;
    for (const auto& f : files) {
        const Volume cube = read_volume(f);
        const Volume fg = segment_foreground(cube, static_cast<float>(threshold));
        bool empty = true;
        for (float v : fg.data)
            if (v != 0.0f) {
                empty = false;
                break;
            }
        if (empty) {
            std::cerr << f.filename().string() << ": nothing above threshold, skipped\n";
            continue;
        }
        cubes.push_back(align_cube(cube, fg));
    }
    if (cubes.empty()) throw Error("no usable cubes, model not built");
    const NoduleStatsModel model = build_model(cubes, bins);
    save_model_file(model, out);
    std::size_t populated = 0;
    for (const auto& slot : model.counts) populated += !slot.empty();
    std::cout << "model: side " << model.side << ", bins " << model.bins << ", cubes "
              << model.cube_count << ", populated voxels " << populated << " -> " << out
              << "\n";
    return 0;
}

// ------------------------------------------------------------------ generate

int cmd_generate(const std::string& model_path, std::uint64_t seed, int count,
                 double min_support, const std::string& out_dir) {
    fs::create_directories(out_dir);
    const NoduleStatsModel model = load_model_file(model_path);
    for (int k = 0; k < count; ++k) {
        const GeneratedNodule g = sample_nodule(model, seed + static_cast<std::uint64_t>(k),
                                                min_support);
        Volume cube = make_volume({g.side, g.side, g.side}, {1, 1, 1}, {0, 0, 0},
                                  VolumeKind::normalized, 0.0f);
        cube.data = g.cube;
        Volume support = make_volume(cube.dims, cube.spacing, cube.origin, VolumeKind::mask,
                                     0.0f);
        for (std::size_t i = 0; i < g.support.size(); ++i)
            support.data[i] = g.support[i] ? 1.0f : 0.0f;
        const fs::path stem =
            fs::path(out_dir) / ("nodule_" + std::to_string(seed + k));
        write_volume(cube, stem.string() + ".mhd");
        write_volume(support, stem.string() + "_support.mhd");
    }
    std::cout << count << " nodules -> " << out_dir << "\n";
    return 0;
}

// ---------------------------------------------------------------------- fuse

GeneratedNodule load_nodule(const std::string& path) {
    const Volume cube = read_volume(path);
    if (cube.dims[0] != cube.dims[1] || cube.dims[1] != cube.dims[2])
        throw Error("nodule volume must be cubic");
    GeneratedNodule g;
    g.side = cube.dims[0];
    g.cube = cube.data;
    g.support.assign(cube.data.size(), 0);

    fs::path support_path = path;
    support_path.replace_extension();
    support_path += "_support.mhd";
    if (fs::exists(support_path)) {
        const Volume s = read_volume(support_path);
        if (s.dims != cube.dims) throw Error("support mask shape differs from nodule");
        for (std::size_t i = 0; i < s.data.size(); ++i) g.support[i] = s.data[i] != 0.0f;
    } else {
        std::cerr << "no sibling support mask, using nonzero voxels\n";
        for (std::size_t i = 0; i < cube.data.size(); ++i) g.support[i] = cube.data[i] != 0.0f;
    }
    return g;
}

int cmd_fuse(const std::string& host_path, const std::string& nodule_path,
             const std::string& site_str, int auto_sites, std::uint64_t seed,
             double lung_threshold, const std::string& out_dir) {
    const Volume host = read_volume(host_path);
    const GeneratedNodule nodule = load_nodule(nodule_path);
    fs::create_directories(out_dir);
    const fs::path stem = fs::path(out_dir) / fs::path(host_path).stem();

    std::vector<VoxelIndex> sites;
    if (!site_str.empty()) sites.push_back(parse_site(site_str));
    else if (auto_sites > 0)
        sites = propose_sites(host, static_cast<float>(lung_threshold), nodule.side,
                              auto_sites, seed);
    else throw Error("give either --site z,y,x or --auto-sites N");

    Volume fused = host;
    Volume mask = make_volume(host.dims, host.spacing, host.origin, VolumeKind::mask, 0.0f);
    for (const VoxelIndex& site : sites) {
        const FusionResult r = fuse(fused, nodule, site);
        fused = r.fused;
        mask_or(mask, r.mask);
        std::cout << "fused at (" << site.z << "," << site.y << "," << site.x << ")\n";
    }
    write_volume(fused, stem.string() + "_fused.mhd");
    write_volume(mask, stem.string() + "_fused_mask.mhd");
    std::cout << "-> " << stem.string() << "_fused.mhd (+mask)\n";
    return 0;
}

// ------------------------------------------------------------------ evaluate

int cmd_evaluate(const std::string& pred_dir, const std::string& truth_dir) {
    const auto pred_files = volume_headers_in(pred_dir);
    const auto truth_files = volume_headers_in(truth_dir);
    if (pred_files.size() != truth_files.size())
        throw Error("prediction and truth directories hold different file counts");
    std::vector<Volume> preds, truths;
    for (std::size_t i = 0; i < pred_files.size(); ++i) {
        preds.push_back(read_volume(pred_files[i]));
        truths.push_back(read_volume(truth_files[i]));
    }
    const double acc = detection_accuracy(preds, truths);
    double dice_sum = 0.0;
    for (std::size_t i = 0; i < preds.size(); ++i)
        dice_sum += dice_coefficient(preds[i], truths[i]);
    std::cout << "pairs: " << preds.size() << "\n"
              << "detection accuracy (overlap rule): " << acc << "\n"
              << "mean dice (informational): " << dice_sum / preds.size() << "\n";
    return 0;
}

// ------------------------------------------------------------------ assemble

int cmd_assemble(const std::vector<std::string>& source_paths, bool balance, int n,
                 std::uint64_t seed, bool augment, const std::string& augment_dir,
                 const std::string& split, const std::string& out) {
    std::vector<DatasetManifest> sources;
    for (const auto& p : source_paths) sources.push_back(read_manifest(p));
    AssembleOptions opts;
    opts.balance = balance;
    opts.n_per_class = n;
    opts.seed = seed;
    opts.split = split_from_string(split);
    opts.allow_augment = augment;
    opts.augment_dir = augment_dir;
    const DatasetManifest m = assemble_dataset(sources, opts);
    write_manifest(m, out);
    std::cout << m.entries.size() << " entries -> " << out << "\n";
    return 0;
}

// ----------------------------------------------------------------- train-toy

int cmd_train_toy(const std::string& train_path, const std::string& test_path,
                  bool with_embedding, int epochs, std::uint64_t seed,
                  const std::string& noise, int bins, int dim, double lr,
                  const std::string& out) {
    std::vector<Sample> train = materialize(read_manifest(train_path));
    std::vector<Sample> test;
    if (!test_path.empty()) test = materialize(read_manifest(test_path));

    if (!noise.empty()) {
        std::uint64_t k = 0;
        for (Sample& s : train) {
            NoiseSpec spec = parse_noise(noise, mix_seed(seed, k++));
            s.patch = add_noise(s.patch, spec);
        }
        for (Sample& s : test) {
            NoiseSpec spec = parse_noise(noise, mix_seed(seed, k++));
            s.patch = add_noise(s.patch, spec);
        }
    }

    ToyClassifierConfig cfg;
    cfg.bins = bins;
    cfg.dim = dim;
    cfg.lr = lr;
    cfg.seed = seed;
    const TrainResult r = train_toy(train, test, cfg, epochs, with_embedding);
    write_curves_csv(r.curve, out);
    if (!r.curve.empty()) {
        const EpochStats& last = r.curve.back();
        std::cout << "final: loss " << last.loss << ", train acc " << last.train_acc;
        if (!test.empty()) std::cout << ", test acc " << last.test_acc;
        std::cout << "\n";
    }
    std::cout << "curves -> " << out << "\n";
    return 0;
}

// ---------------------------------------------------------------- experiment

int cmd_experiment(const std::string& base_path, const std::string& extra_path,
                   const std::string& test_path, int epochs, std::uint64_t seed, int bins,
                   int dim, double lr, bool with_embedding, const std::string& out_dir) {
    const DatasetManifest base = read_manifest(base_path);
    DatasetManifest extra;
    if (!extra_path.empty()) extra = read_manifest(extra_path);
    const DatasetManifest test = read_manifest(test_path);

    ToyClassifierConfig cfg;
    cfg.bins = bins;
    cfg.dim = dim;
    cfg.lr = lr;
    cfg.seed = seed;
    const ExperimentReport r =
        run_augmentation_experiment(base, extra, test, cfg, epochs, with_embedding);

    fs::create_directories(out_dir);
    const fs::path dir(out_dir);
    write_comparison_csv(r, dir / "comparison.csv");
    write_confusion_csv(r.base, dir / "confusion_base.csv");
    write_confusion_csv(r.augmented, dir / "confusion_augmented.csv");
    write_metric_report_csv(r.base.report, dir / "metrics_base.csv");
    write_metric_report_csv(r.augmented.report, dir / "metrics_augmented.csv");
    write_roc_csv(r.base.roc, dir / "roc_base.csv");
    write_roc_csv(r.augmented.roc, dir / "roc_augmented.csv");
    write_curves_csv(r.base.curve, dir / "curves_base.csv");
    write_curves_csv(r.augmented.curve, dir / "curves_augmented.csv");

    std::cout << "base:      loss " << r.base.final_loss << ", acc "
              << r.base.report.positive.accuracy << ", auc " << r.base.roc.auc << "\n"
              << "augmented: loss " << r.augmented.final_loss << ", acc "
              << r.augmented.report.positive.accuracy << ", auc " << r.augmented.roc.auc
              << "\n"
              << "delta acc: "
              << r.augmented.report.positive.accuracy - r.base.report.positive.accuracy
              << "\nreports -> " << out_dir << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"CT nodule augmentation toolkit"};
    app.require_subcommand(1);

    // preprocess
    std::string pp_in, pp_out = "preprocessed", pp_ann, pp_cand;
    double pp_level = -680.0, pp_width = 600.0, pp_spacing = 1.0;
    int pp_side = 33;
    auto* pp = app.add_subcommand("preprocess",
                                  "window, normalize, resample, extract patches");
    pp->add_option("--in", pp_in, "input volume header (.mhd/.mha)")->required();
    pp->add_option("--out", pp_out, "output directory");
    pp->add_option("--window-level", pp_level, "HU window level");
    pp->add_option("--window-width", pp_width, "HU window width");
    pp->add_option("--target-spacing", pp_spacing, "isotropic target spacing, mm");
    pp->add_option("--annotations", pp_ann, "annotations.csv for masks + patches");
    pp->add_option("--candidates", pp_cand, "candidates.csv for extra patch centres");
    pp->add_option("--patch-side", pp_side, "patch side, odd voxels");

    // build-model
    std::string bm_cubes, bm_out = "model.bin";
    int bm_bins = 256;
    double bm_threshold = 0.6;
    auto* bm = app.add_subcommand("build-model",
                                  "build the per-voxel statistics model from cubes");
    bm->add_option("--cubes", bm_cubes, "directory of normalized nodule cubes")->required();
    bm->add_option("--bins", bm_bins, "gray quantization bins");
    bm->add_option("--threshold", bm_threshold, "foreground threshold in [0,1]");
    bm->add_option("-o,--out", bm_out, "output model file");

    // generate
    std::string gen_model, gen_out = "generated";
    std::uint64_t gen_seed = 0;
    int gen_count = 1;
    double gen_min_support = 0.0;
    auto* gen = app.add_subcommand("generate", "sample synthetic nodules from a model");
    gen->add_option("--model", gen_model, "model file from build-model")->required();
    gen->add_option("--seed", gen_seed, "base RNG seed");
    gen->add_option("--count", gen_count, "number of nodules");
    gen->add_option("--min-support", gen_min_support, "minimum voxel support fraction");
    gen->add_option("-o,--out", gen_out, "output directory");

    // fuse
    std::string fu_host, fu_nodule, fu_site, fu_out = "fused";
    int fu_auto = 0;
    std::uint64_t fu_seed = 0;
    double fu_threshold = 0.35;
    auto* fu = app.add_subcommand("fuse", "implant a nodule into a healthy volume");
    fu->add_option("--host", fu_host, "normalized host volume")->required();
    fu->add_option("--nodule", fu_nodule, "generated nodule volume")->required();
    fu->add_option("--site", fu_site, "implant centre as z,y,x");
    fu->add_option("--auto-sites", fu_auto, "propose N sites instead");
    fu->add_option("--seed", fu_seed, "seed for site proposals");
    fu->add_option("--lung-threshold", fu_threshold, "max mean intensity for a site");
    fu->add_option("--out", fu_out, "output directory");

    // evaluate
    std::string ev_pred, ev_truth;
    auto* ev = app.add_subcommand("evaluate", "mask-overlap detection accuracy");
    ev->add_option("--pred", ev_pred, "directory of predicted masks")->required();
    ev->add_option("--truth", ev_truth, "directory of ground-truth masks")->required();

    // assemble
    std::vector<std::string> as_sources;
    bool as_balance = false, as_augment = false;
    int as_n = 50;
    std::uint64_t as_seed = 0;
    std::string as_augment_dir = "augmented", as_split = "train", as_out = "manifest.tsv";
    auto* as = app.add_subcommand("assemble", "draw a dataset manifest from sources");
    as->add_option("--sources", as_sources, "input manifests")->required()->expected(-1);
    as->add_flag("--balance", as_balance, "equal classes");
    as->add_option("--n", as_n, "entries per class when balancing");
    as->add_option("--seed", as_seed, "sampling seed");
    as->add_flag("--augment", as_augment, "expand short positives by flip/rotation");
    as->add_option("--augment-dir", as_augment_dir, "where augmented volumes go");
    as->add_option("--split", as_split, "train|test");
    as->add_option("-o,--out", as_out, "output manifest");

    // train-toy
    std::string tt_train, tt_test, tt_noise, tt_out = "curves.csv";
    bool tt_with = false, tt_without = false;
    int tt_epochs = 50, tt_bins = 256, tt_dim = 8;
    double tt_lr = 0.1;
    std::uint64_t tt_seed = 0;
    auto* tt = app.add_subcommand("train-toy", "train the embedding toy classifier");
    tt->add_option("--train", tt_train, "training manifest")->required();
    tt->add_option("--test", tt_test, "test manifest");
    tt->add_flag("--with-embedding", tt_with, "use the embedding table");
    tt->add_flag("--no-embedding", tt_without, "mean-intensity baseline");
    tt->add_option("--epochs", tt_epochs, "training epochs");
    tt->add_option("--seed", tt_seed, "RNG seed");
    tt->add_option("--noise", tt_noise, "noise as kind:magnitude, e.g. gaussian:0.1");
    tt->add_option("--bins", tt_bins, "quantization bins");
    tt->add_option("--dim", tt_dim, "embedding dimension M");
    tt->add_option("--lr", tt_lr, "SGD learning rate");
    tt->add_option("--out", tt_out, "curves CSV path");

    // experiment
    std::string ex_base, ex_extra, ex_test, ex_out = "experiment";
    int ex_epochs = 50, ex_bins = 256, ex_dim = 8;
    double ex_lr = 0.1;
    std::uint64_t ex_seed = 0;
    bool ex_no_embedding = false;
    auto* ex = app.add_subcommand("experiment",
                                  "train on base vs base+extra, report both suites");
    ex->add_option("--base", ex_base, "base training manifest")->required();
    ex->add_option("--extra", ex_extra, "extra training manifest");
    ex->add_option("--test", ex_test, "test manifest")->required();
    ex->add_option("--epochs", ex_epochs, "training epochs");
    ex->add_option("--seed", ex_seed, "RNG seed");
    ex->add_option("--bins", ex_bins, "quantization bins");
    ex->add_option("--dim", ex_dim, "embedding dimension M");
    ex->add_option("--lr", ex_lr, "SGD learning rate");
    ex->add_flag("--no-embedding", ex_no_embedding, "mean-intensity baseline");
    ex->add_option("--out", ex_out, "report directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (pp->parsed())
            return cmd_preprocess(pp_in, pp_out, pp_level, pp_width, pp_spacing, pp_ann,
                                  pp_cand, pp_side);
        if (bm->parsed()) return cmd_build_model(bm_cubes, bm_bins, bm_threshold, bm_out);
        if (gen->parsed())
            return cmd_generate(gen_model, gen_seed, gen_count, gen_min_support, gen_out);
        if (fu->parsed())
            return cmd_fuse(fu_host, fu_nodule, fu_site, fu_auto, fu_seed, fu_threshold,
                            fu_out);
        if (ev->parsed()) return cmd_evaluate(ev_pred, ev_truth);
        if (as->parsed())
            return cmd_assemble(as_sources, as_balance, as_n, as_seed, as_augment,
                                as_augment_dir, as_split, as_out);
        if (tt->parsed()) {
            if (tt_with == tt_without)
                throw Error("pick exactly one of --with-embedding / --no-embedding");
            return cmd_train_toy(tt_train, tt_test, tt_with, tt_epochs, tt_seed, tt_noise,
                                 tt_bins, tt_dim, tt_lr, tt_out);
        }
        if (ex->parsed())
            return cmd_experiment(ex_base, ex_extra, ex_test, ex_epochs, ex_seed, ex_bins,
                                  ex_dim, ex_lr, !ex_no_embedding, ex_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
