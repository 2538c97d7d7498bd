// vhc: generate VH object proposals, merge ranked proposal sources under a
// budget, and score proposal sets against ground-truth boxes.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "vhconnect/vhconnect.h"

namespace fs = std::filesystem;

namespace {

template <auto Free>
struct FnDeleter {
    template <typename T>
    void operator()(T* p) const {
        Free(p);
    }
};
using ImagePtr = std::unique_ptr<vhc_image, FnDeleter<&vhc_image_free>>;
using ConfigPtr = std::unique_ptr<vhc_config, FnDeleter<&vhc_config_free>>;
using ProposalsPtr = std::unique_ptr<vhc_proposals, FnDeleter<&vhc_proposals_free>>;
using AnnotationsPtr = std::unique_ptr<vhc_annotations, FnDeleter<&vhc_annotations_free>>;
using SizeTablePtr = std::unique_ptr<vhc_size_table, FnDeleter<&vhc_size_table_free>>;
using SplitPtr = std::unique_ptr<vhc_split, FnDeleter<&vhc_split_free>>;
using ReportPtr = std::unique_ptr<vhc_report, FnDeleter<&vhc_report_free>>;

[[noreturn]] void die(const std::string& message) {
    std::cerr << "vhc: error: " << message << "\n";
    std::exit(1);
}

void check(vhc_status status, const std::string& what) {
    if (status != VHC_OK) die(what + ": " + vhc_last_error());
}

// "tag=path" -> (tag, path)
std::pair<std::string, std::string> parse_tagged_path(const std::string& text) {
    const std::size_t eq = text.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == text.size()) {
        die("expected TAG=FILE, got '" + text + "'");
    }
    return {text.substr(0, eq), text.substr(eq + 1)};
}

bool is_image_file(const fs::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext == ".pgm" || ext == ".ppm" || ext == ".pnm";
}

struct ImageEntry {
    fs::path path;
    std::string id;  // filename stem
};

// Image files of a directory in sorted filename order; ids are stems.
std::vector<ImageEntry> list_images(const std::string& dir) {
    if (!fs::is_directory(dir)) die("'" + dir + "' is not a directory");
    std::vector<ImageEntry> entries;
    for (const fs::directory_entry& e : fs::directory_iterator(dir)) {
        if (e.is_regular_file() && is_image_file(e.path())) {
            entries.push_back(ImageEntry{e.path(), e.path().stem().string()});
        }
    }
    std::sort(entries.begin(), entries.end(),
              [](const ImageEntry& a, const ImageEntry& b) { return a.path < b.path; });
    std::vector<ImageEntry> unique;
    for (ImageEntry& e : entries) {
        if (!unique.empty() && unique.back().id == e.id) {
            std::cerr << "vhc: warning: skipping " << e.path.string()
                      << ": image id '" << e.id << "' already taken\n";
            continue;
        }
        unique.push_back(std::move(e));
    }
    return unique;
}

struct VhOptions {
    int se_size = 0;
    std::vector<double> scales;
    std::vector<int> kernel_lengths;
    double fill_ratio_p = 0.0;
    int max_side = 0;
};

// Registers the generator settings on a subcommand. Config-file keys mirror
// the option names; command-line values win over file values.
void add_vh_options(CLI::App* cmd, VhOptions& opts) {
    cmd->add_option("--se_size", opts.se_size, "Gradient structuring element size (default 3)");
    cmd->add_option("--scales", opts.scales,
                    "Pyramid scale factors in (0,1] (default 1.0 0.5 0.25)");
    cmd->add_option("--kernel_lengths", opts.kernel_lengths,
                    "Closing line kernel lengths (default 9 15 30 45)");
    cmd->add_option("--fill_ratio_p", opts.fill_ratio_p,
                    "Keep structures filling more than this fraction of their box (default 0.5)");
    cmd->add_option("--max_side", opts.max_side,
                    "Downscale inputs whose longer side exceeds this (default 1024)");
}

ConfigPtr build_config(const CLI::App* cmd, const VhOptions& opts) {
    vhc_config* raw = nullptr;
    check(vhc_config_create(&raw), "config");
    ConfigPtr cfg(raw);
    if (cmd->count("--se_size") > 0) {
        check(vhc_config_set_se_size(cfg.get(), opts.se_size), "--se_size");
    }
    if (cmd->count("--scales") > 0) {
        check(vhc_config_set_scales(cfg.get(), opts.scales.data(), opts.scales.size()),
              "--scales");
    }
    if (cmd->count("--kernel_lengths") > 0) {
        std::vector<int32_t> lengths(opts.kernel_lengths.begin(), opts.kernel_lengths.end());
        check(vhc_config_set_kernel_lengths(cfg.get(), lengths.data(), lengths.size()),
              "--kernel_lengths");
    }
    if (cmd->count("--fill_ratio_p") > 0) {
        check(vhc_config_set_fill_ratio(cfg.get(), opts.fill_ratio_p), "--fill_ratio_p");
    }
    if (cmd->count("--max_side") > 0) {
        check(vhc_config_set_max_side(cfg.get(), opts.max_side), "--max_side");
    }
    return cfg;
}

// Sizes for evaluation: either a CSV or the pixel data itself.
SizeTablePtr load_sizes(const std::string& sizes_csv, const std::string& images_dir) {
    vhc_size_table* raw = nullptr;
    if (!sizes_csv.empty()) {
        check(vhc_size_table_load(sizes_csv.c_str(), &raw), sizes_csv);
        return SizeTablePtr(raw);
    }
    check(vhc_size_table_create(&raw), "size table");
    SizeTablePtr table(raw);
    for (const ImageEntry& e : list_images(images_dir)) {
        vhc_image* img = nullptr;
        if (vhc_image_load(e.path.string().c_str(), &img) != VHC_OK) {
            std::cerr << "vhc: warning: skipping " << e.path.string() << ": " << vhc_last_error()
                      << "\n";
            continue;
        }
        ImagePtr image(img);
        int32_t w = 0, h = 0;
        check(vhc_image_size(image.get(), &w, &h), e.path.string());
        check(vhc_size_table_add(table.get(), e.id.c_str(), w, h), e.id);
    }
    return table;
}

int cmd_generate(const CLI::App* cmd, const std::string& images_dir, const std::string& out_path,
                 const std::string& stage_dir, int jobs, const VhOptions& opts) {
    const std::vector<ImageEntry> images = list_images(images_dir);
    if (images.empty()) die("no .pgm/.ppm images in '" + images_dir + "'");

    const ConfigPtr cfg = build_config(cmd, opts);
    if (!stage_dir.empty()) fs::create_directories(stage_dir);

    struct Outcome {
        bool ok = false;
        std::string message;
        ProposalsPtr proposals;
        std::size_t count = 0;
        double seconds = 0.0;
    };
    std::vector<Outcome> outcomes(images.size());
    std::atomic<std::size_t> cursor{0};

    auto worker = [&] {
        for (;;) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= images.size()) return;
            Outcome& result = outcomes[i];
            vhc_image* raw_image = nullptr;
            if (vhc_image_load(images[i].path.string().c_str(), &raw_image) != VHC_OK) {
                result.message = vhc_last_error();
                continue;
            }
            const ImagePtr image(raw_image);
            vhc_proposals* raw_props = nullptr;
            const auto start = std::chrono::steady_clock::now();
            const vhc_status status =
                vhc_generate(image.get(), cfg.get(), images[i].id.c_str(),
                             stage_dir.empty() ? nullptr : stage_dir.c_str(), &raw_props);
            const auto stop = std::chrono::steady_clock::now();
            if (status != VHC_OK) {
                result.message = vhc_last_error();
                continue;
            }
            result.ok = true;
            result.proposals.reset(raw_props);
            result.seconds = std::chrono::duration<double>(stop - start).count();
            vhc_proposals_count(result.proposals.get(), &result.count);
        }
    };

    const std::size_t thread_count =
        std::min<std::size_t>(static_cast<std::size_t>(jobs), images.size());
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < thread_count; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();

    vhc_proposals* raw_merged = nullptr;
    check(vhc_proposals_create("vh", &raw_merged), "proposals");
    ProposalsPtr merged(raw_merged);

    std::size_t processed = 0;
    double total_seconds = 0.0;
    for (std::size_t i = 0; i < images.size(); ++i) {
        if (!outcomes[i].ok) {
            std::cerr << "vhc: warning: skipping " << images[i].path.string() << ": "
                      << outcomes[i].message << "\n";
            continue;
        }
        std::printf("%s: %zu proposals, %.4f s\n", images[i].id.c_str(), outcomes[i].count,
                    outcomes[i].seconds);
        check(vhc_proposals_merge(merged.get(), outcomes[i].proposals.get()), images[i].id);
        ++processed;
        total_seconds += outcomes[i].seconds;
    }
    if (processed == 0) die("no readable images in '" + images_dir + "'");
    std::printf("processed %zu image%s in %.4f s, %.4f s/image\n", processed,
                processed == 1 ? "" : "s", total_seconds,
                total_seconds / static_cast<double>(processed));

    check(vhc_proposals_save(merged.get(), out_path.c_str()), out_path);
    return 0;
}

int cmd_combine(const std::vector<std::string>& tagged_paths, const std::string& split_text,
                std::int64_t budget, const std::string& out_path) {
    std::vector<ProposalsPtr> sources;
    std::vector<const vhc_proposals*> raw_sources;
    for (const std::string& tp : tagged_paths) {
        const auto [tag, path] = parse_tagged_path(tp);
        vhc_proposals* raw = nullptr;
        check(vhc_proposals_load(path.c_str(), tag.c_str(), &raw), path);
        sources.emplace_back(raw);
        raw_sources.push_back(raw);
    }

    vhc_split* raw_split = nullptr;
    check(vhc_split_parse(split_text.c_str(), &raw_split), "--split");
    const SplitPtr split(raw_split);

    vhc_proposals* raw_out = nullptr;
    check(vhc_combine(raw_sources.data(), raw_sources.size(), budget, split.get(), &raw_out),
          "combine");
    const ProposalsPtr combined(raw_out);

    std::size_t rows = 0, image_count = 0;
    vhc_proposals_count(combined.get(), &rows);
    vhc_proposals_image_count(combined.get(), &image_count);
    std::printf("combined %zu source%s into %zu rows over %zu image%s at budget %lld\n",
                sources.size(), sources.size() == 1 ? "" : "s", rows, image_count,
                image_count == 1 ? "" : "s", static_cast<long long>(budget));

    check(vhc_proposals_save(combined.get(), out_path.c_str()), out_path);
    return 0;
}

int cmd_evaluate(const std::string& gt_path, const std::string& tagged_proposals,
                 const std::string& sizes_csv, const std::string& images_dir,
                 std::vector<std::int64_t> budgets, double step, const std::string& out_path) {
    vhc_annotations* raw_gts = nullptr;
    check(vhc_annotations_load(gt_path.c_str(), &raw_gts), gt_path);
    const AnnotationsPtr gts(raw_gts);

    const auto [tag, path] = parse_tagged_path(tagged_proposals);
    vhc_proposals* raw_props = nullptr;
    check(vhc_proposals_load(path.c_str(), tag.c_str(), &raw_props), path);
    const ProposalsPtr proposals(raw_props);

    // The metrics silently score absent images as misses; disjoint id sets
    // are always a wiring mistake, so refuse them.
    std::set<std::string> gt_ids;
    std::size_t gt_count = 0;
    vhc_annotations_count(gts.get(), &gt_count);
    for (std::size_t i = 0; i < gt_count; ++i) {
        const char* id = nullptr;
        vhc_annotations_row(gts.get(), i, &id, nullptr, nullptr);
        gt_ids.insert(id);
    }
    std::size_t prop_count = 0;
    vhc_proposals_count(proposals.get(), &prop_count);
    bool overlap = false;
    for (std::size_t i = 0; i < prop_count && !overlap; ++i) {
        const char* id = nullptr;
        vhc_proposals_row(proposals.get(), i, &id, nullptr, nullptr, nullptr);
        overlap = gt_ids.count(id) > 0;
    }
    if (!overlap) die("ground truth and proposals share no image ids");

    for (std::size_t i = 0; i < budgets.size(); ++i) {
        if (budgets[i] <= 0) die("budgets must be positive");
        if (i > 0 && budgets[i] <= budgets[i - 1]) die("budgets must be strictly ascending");
    }

    const SizeTablePtr sizes = load_sizes(sizes_csv, images_dir);

    vhc_report* raw_report = nullptr;
    check(vhc_evaluate(gts.get(), proposals.get(), budgets.data(), budgets.size(), step,
                       sizes.get(), &raw_report),
          "evaluate");
    const ReportPtr report(raw_report);

    const char* summary = nullptr;
    check(vhc_report_summary(report.get(), &summary), "summary");
    std::fputs(summary, stdout);

    if (!out_path.empty()) check(vhc_report_save_csv(report.get(), out_path.c_str()), out_path);
    return 0;
}

int cmd_stats(const std::string& gt_path, const std::string& sizes_csv,
              const std::string& images_dir, const std::string& out_path) {
    vhc_annotations* raw_gts = nullptr;
    check(vhc_annotations_load(gt_path.c_str(), &raw_gts), gt_path);
    const AnnotationsPtr gts(raw_gts);

    const SizeTablePtr sizes = load_sizes(sizes_csv, images_dir);

    double avg_width = 0.0, avg_height = 0.0, avg_area_ratio = 0.0;
    check(vhc_gt_stats(gts.get(), sizes.get(), &avg_width, &avg_height, &avg_area_ratio),
          "stats");

    std::size_t count = 0;
    vhc_annotations_count(gts.get(), &count);
    std::printf("%zu annotations: avg width %.2f px, avg height %.2f px, avg area ratio %.4f\n",
                count, avg_width, avg_height, avg_area_ratio);

    if (!out_path.empty()) {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) die("cannot open '" + out_path + "' for writing");
        out << "annotations,avg_gt_width,avg_gt_height,avg_gt_area_ratio\n";
        char row[160];
        std::snprintf(row, sizeof row, "%zu,%.6f,%.6f,%.6f\n", count, avg_width, avg_height,
                      avg_area_ratio);
        out << row;
        if (!out) die("failed writing '" + out_path + "'");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"VH-Connect object proposals: generate, combine, evaluate"};
    app.require_subcommand(1);
    // One config option on the root; sections in the file ([generate], ...)
    // address the subcommands. Fallthrough lets --config follow the
    // subcommand name.
    app.set_config("--config", "", "Read options from a config file (INI, one section per subcommand)");

    // generate
    std::string gen_images, gen_out = "proposals.csv", gen_stage_dir;
    int gen_jobs = 1;
    VhOptions vh_opts;
    CLI::App* generate = app.add_subcommand("generate", "Run the VH generator on a directory");
    generate->add_option("--images", gen_images, "Directory of .pgm/.ppm images")
        ->required();
    generate->add_option("--out", gen_out, "Proposal CSV to write (default proposals.csv)");
    generate->add_option("--jobs", gen_jobs, "Worker threads (default 1)")
        ->check(CLI::Range(1, 1024));
    generate->add_option("--stage_dir", gen_stage_dir,
                         "Dump per-scale gradient/edge PGMs into this directory");
    add_vh_options(generate, vh_opts);
    generate->fallthrough();

    // combine
    std::vector<std::string> com_proposals;
    std::string com_split, com_out = "combined.csv";
    std::int64_t com_budget = 0;
    CLI::App* combine = app.add_subcommand("combine", "Merge ranked sources under a budget");
    combine->add_option("--proposals", com_proposals, "Source as TAG=FILE (repeatable)")
        ->required();
    combine->add_option("--split", com_split, "Budget fractions as TAG=F,TAG=F,...")
        ->required();
    combine->add_option("--budget", com_budget, "Total proposals per image")
        ->required()
        ->check(CLI::PositiveNumber);
    combine->add_option("--out", com_out, "Merged CSV to write (default combined.csv)");
    combine->fallthrough();

    // evaluate
    std::string eval_gt, eval_proposals, eval_sizes, eval_images, eval_out;
    std::vector<std::int64_t> eval_budgets;
    double eval_step = 0.01;
    CLI::App* evaluate = app.add_subcommand("evaluate", "Score proposals against ground truth");
    evaluate->add_option("--gt", eval_gt, "Ground-truth CSV")->required();
    evaluate->add_option("--proposals", eval_proposals, "Proposals as TAG=FILE")->required();
    evaluate->add_option("--budget", eval_budgets, "Per-image budgets, ascending (repeatable)")
        ->required();
    evaluate->add_option("--step", eval_step, "Recall threshold grid step (default 0.01)");
    CLI::Option* eval_sizes_opt =
        evaluate->add_option("--sizes", eval_sizes, "Image sizes CSV (image_id,width,height)");
    evaluate->add_option("--images", eval_images, "Directory to read image sizes from")
        ->excludes(eval_sizes_opt);
    evaluate->add_option("--out", eval_out, "Report CSV to write");
    evaluate->fallthrough();

    // stats
    std::string stats_gt, stats_sizes, stats_images, stats_out;
    CLI::App* stats = app.add_subcommand("stats", "Ground-truth box statistics");
    stats->add_option("--gt", stats_gt, "Ground-truth CSV")->required();
    CLI::Option* stats_sizes_opt =
        stats->add_option("--sizes", stats_sizes, "Image sizes CSV (image_id,width,height)");
    stats->add_option("--images", stats_images, "Directory to read image sizes from")
        ->excludes(stats_sizes_opt);
    stats->add_option("--out", stats_out, "Stats CSV to write");
    stats->fallthrough();

    CLI11_PARSE(app, argc, argv);

    if (generate->parsed()) {
        return cmd_generate(generate, gen_images, gen_out, gen_stage_dir, gen_jobs, vh_opts);
    }
    if (combine->parsed()) {
        return cmd_combine(com_proposals, com_split, com_budget, com_out);
    }
    if (evaluate->parsed()) {
        if (eval_sizes.empty() && eval_images.empty()) {
            die("evaluate needs image sizes: pass --sizes or --images");
        }
        return cmd_evaluate(eval_gt, eval_proposals, eval_sizes, eval_images, eval_budgets,
                            eval_step, eval_out);
    }
    if (stats->parsed()) {
        if (stats_sizes.empty() && stats_images.empty()) {
            die("stats needs image sizes: pass --sizes or --images");
        }
        return cmd_stats(stats_gt, stats_sizes, stats_images, stats_out);
    }
    return 0;
}
