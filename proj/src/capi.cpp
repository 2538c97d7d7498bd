#include "vhconnect/vhconnect.h"

#include <cstring>
#include <exception>
#include <iterator>
#include <memory>
#include <new>
#include <string>
#include <variant>
#include <vector>

#include "vhc/boxes.hpp"
#include "vhc/combine.hpp"
#include "vhc/connect.hpp"
#include "vhc/error.hpp"
#include "vhc/evaluate.hpp"
#include "vhc/image.hpp"
#include "vhc/pnm.hpp"
#include "vhc/proposal_io.hpp"

struct vhc_image {
    vhc::PnmImage pixels;
};
struct vhc_config {
    vhc::VhConfig cfg;
};
struct vhc_proposals {
    vhc::ProposalSet set;
};
struct vhc_annotations {
    std::vector<vhc::GroundTruthAnnotation> rows;
};
struct vhc_size_table {
    vhc::SizeTable sizes;
};
struct vhc_split {
    vhc::BudgetSplit split;
};
struct vhc_report {
    std::vector<vhc::EvaluationReport> reports;
    std::string summary;
};

namespace {

thread_local std::string t_last_error;

vhc_status fail(vhc_status code, const char* message) {
    try {
        t_last_error = message;
    } catch (...) {
    }
    return code;
}

// Runs fn, translating the library's exceptions into status codes.
template <typename Fn>
vhc_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const vhc::ParseError& e) {
        return fail(VHC_ERROR_PARSE, e.what());
    } catch (const vhc::IoError& e) {
        return fail(VHC_ERROR_IO, e.what());
    } catch (const vhc::ConfigError& e) {
        return fail(VHC_ERROR_CONFIG, e.what());
    } catch (const vhc::InvalidInputError& e) {
        return fail(VHC_ERROR_INVALID_INPUT, e.what());
    } catch (const std::bad_alloc&) {
        return fail(VHC_ERROR_UNKNOWN, "out of memory");
    } catch (const std::exception& e) {
        return fail(VHC_ERROR_UNKNOWN, e.what());
    } catch (...) {
        return fail(VHC_ERROR_UNKNOWN, "unexpected error");
    }
}

vhc_status null_argument(const char* what) {
    return fail(VHC_ERROR_NULL_ARGUMENT, what);
}

vhc::BoundingBox to_core(const vhc_box& b) {
    return vhc::BoundingBox{b.x_min, b.y_min, b.x_max, b.y_max};
}

vhc_box from_core(const vhc::BoundingBox& b) {
    return vhc_box{static_cast<int32_t>(b.x_min), static_cast<int32_t>(b.y_min),
                   static_cast<int32_t>(b.x_max), static_cast<int32_t>(b.y_max)};
}

const vhc::EvaluationReport* report_block(const vhc_report* report, size_t budget_index) {
    if (budget_index >= report->reports.size()) return nullptr;
    return &report->reports[budget_index];
}

// Applies one field change, keeping the config untouched if the result
// would be invalid.
template <typename Mutate>
vhc_status config_update(vhc_config* cfg, Mutate&& mutate) {
    return guarded([&] {
        vhc::VhConfig next = cfg->cfg;
        mutate(next);
        next.validate();
        cfg->cfg = next;
        return VHC_OK;
    });
}

}  // namespace

extern "C" {

const char* vhc_version(void) {
    return "0.1.0";
}

const char* vhc_status_message(vhc_status status) {
    switch (status) {
        case VHC_OK: return "ok";
        case VHC_ERROR_INVALID_INPUT: return "invalid input";
        case VHC_ERROR_PARSE: return "parse error";
        case VHC_ERROR_IO: return "i/o error";
        case VHC_ERROR_CONFIG: return "configuration error";
        case VHC_ERROR_NULL_ARGUMENT: return "null argument";
        case VHC_ERROR_OUT_OF_RANGE: return "index out of range";
        case VHC_ERROR_UNKNOWN: return "unknown error";
    }
    return "unrecognized status";
}

const char* vhc_last_error(void) {
    return t_last_error.c_str();
}

/* ---- images ---- */

vhc_status vhc_image_load(const char* path, vhc_image** out) {
    if (!path || !out) return null_argument("vhc_image_load: path and out must be non-null");
    return guarded([&] {
        *out = new vhc_image{vhc::load_pnm(path)};
        return VHC_OK;
    });
}

vhc_status vhc_image_from_gray(const uint8_t* data, int32_t width, int32_t height,
                               vhc_image** out) {
    if (!data || !out) return null_argument("vhc_image_from_gray: data and out must be non-null");
    return guarded([&] {
        if (width < 1 || height < 1) {
            throw vhc::InvalidInputError("vhc_image_from_gray: dimensions must be positive");
        }
        const std::size_t n = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
        *out = new vhc_image{
            vhc::GrayImage(width, height, std::vector<std::uint8_t>(data, data + n))};
        return VHC_OK;
    });
}

vhc_status vhc_image_from_rgb(const uint8_t* data, int32_t width, int32_t height,
                              vhc_image** out) {
    if (!data || !out) return null_argument("vhc_image_from_rgb: data and out must be non-null");
    return guarded([&] {
        if (width < 1 || height < 1) {
            throw vhc::InvalidInputError("vhc_image_from_rgb: dimensions must be positive");
        }
        const std::size_t n =
            static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * 3;
        *out = new vhc_image{
            vhc::ColorImage(width, height, std::vector<std::uint8_t>(data, data + n))};
        return VHC_OK;
    });
}

vhc_status vhc_image_size(const vhc_image* image, int32_t* width, int32_t* height) {
    if (!image || !width || !height) {
        return null_argument("vhc_image_size: all arguments must be non-null");
    }
    return guarded([&] {
        std::visit(
            [&](const auto& img) {
                *width = img.width();
                *height = img.height();
            },
            image->pixels);
        return VHC_OK;
    });
}

vhc_status vhc_image_save_pgm(const vhc_image* image, const char* path) {
    if (!image || !path) return null_argument("vhc_image_save_pgm: image and path must be non-null");
    return guarded([&] {
        vhc::save_pgm(vhc::pnm_to_gray(image->pixels), path);
        return VHC_OK;
    });
}

void vhc_image_free(vhc_image* image) {
    delete image;
}

/* ---- generator configuration ---- */

vhc_status vhc_config_create(vhc_config** out) {
    if (!out) return null_argument("vhc_config_create: out must be non-null");
    return guarded([&] {
        *out = new vhc_config{};
        return VHC_OK;
    });
}

vhc_status vhc_config_set_se_size(vhc_config* cfg, int32_t se_size) {
    if (!cfg) return null_argument("vhc_config_set_se_size: cfg must be non-null");
    return config_update(cfg, [&](vhc::VhConfig& c) { c.se_size = se_size; });
}

vhc_status vhc_config_set_scales(vhc_config* cfg, const double* scales, size_t count) {
    if (!cfg || !scales) {
        return null_argument("vhc_config_set_scales: cfg and scales must be non-null");
    }
    return config_update(cfg, [&](vhc::VhConfig& c) {
        c.scales.assign(scales, scales + count);
    });
}

vhc_status vhc_config_set_kernel_lengths(vhc_config* cfg, const int32_t* lengths, size_t count) {
    if (!cfg || !lengths) {
        return null_argument("vhc_config_set_kernel_lengths: cfg and lengths must be non-null");
    }
    return config_update(cfg, [&](vhc::VhConfig& c) {
        c.kernel_lengths.assign(lengths, lengths + count);
    });
}

vhc_status vhc_config_set_fill_ratio(vhc_config* cfg, double p) {
    if (!cfg) return null_argument("vhc_config_set_fill_ratio: cfg must be non-null");
    return config_update(cfg, [&](vhc::VhConfig& c) { c.fill_ratio_p = p; });
}

vhc_status vhc_config_set_max_side(vhc_config* cfg, int32_t max_side) {
    if (!cfg) return null_argument("vhc_config_set_max_side: cfg must be non-null");
    return config_update(cfg, [&](vhc::VhConfig& c) { c.max_side = max_side; });
}

void vhc_config_free(vhc_config* cfg) {
    delete cfg;
}

/* ---- proposal generation ---- */

vhc_status vhc_generate(const vhc_image* image, const vhc_config* cfg, const char* image_id,
                        const char* stage_dir, vhc_proposals** out) {
    if (!image || !image_id || !out) {
        return null_argument("vhc_generate: image, image_id, and out must be non-null");
    }
    return guarded([&] {
        const vhc::VhConfig config = cfg ? cfg->cfg : vhc::VhConfig{};
        const std::string stages = stage_dir ? stage_dir : "";
        const std::vector<vhc::Proposal> proposals = std::visit(
            [&](const auto& img) { return vhc::generate(img, config, image_id, stages); },
            image->pixels);
        auto result = std::make_unique<vhc_proposals>(vhc_proposals{vhc::ProposalSet("vh")});
        for (const vhc::Proposal& p : proposals) {
            result->set.append(p.image_id, p.box, p.source);
        }
        *out = result.release();
        return VHC_OK;
    });
}

/* ---- proposal sets ---- */

vhc_status vhc_proposals_create(const char* source_tag, vhc_proposals** out) {
    if (!source_tag || !out) {
        return null_argument("vhc_proposals_create: source_tag and out must be non-null");
    }
    return guarded([&] {
        *out = new vhc_proposals{vhc::ProposalSet(source_tag)};
        return VHC_OK;
    });
}

vhc_status vhc_proposals_load(const char* path, const char* source_tag, vhc_proposals** out) {
    if (!path || !source_tag || !out) {
        return null_argument("vhc_proposals_load: all arguments must be non-null");
    }
    return guarded([&] {
        *out = new vhc_proposals{vhc::parse_proposals(path, source_tag)};
        return VHC_OK;
    });
}

vhc_status vhc_proposals_save(const vhc_proposals* proposals, const char* path) {
    if (!proposals || !path) {
        return null_argument("vhc_proposals_save: proposals and path must be non-null");
    }
    return guarded([&] {
        vhc::write_proposals(proposals->set, path);
        return VHC_OK;
    });
}

vhc_status vhc_proposals_append(vhc_proposals* proposals, const char* image_id, vhc_box box) {
    if (!proposals || !image_id) {
        return null_argument("vhc_proposals_append: proposals and image_id must be non-null");
    }
    return guarded([&] {
        proposals->set.append(image_id, to_core(box));
        return VHC_OK;
    });
}

vhc_status vhc_proposals_merge(vhc_proposals* dst, const vhc_proposals* src) {
    if (!dst || !src) return null_argument("vhc_proposals_merge: dst and src must be non-null");
    return guarded([&] {
        dst->set.merge_from(src->set);
        return VHC_OK;
    });
}

vhc_status vhc_proposals_count(const vhc_proposals* proposals, size_t* out) {
    if (!proposals || !out) {
        return null_argument("vhc_proposals_count: proposals and out must be non-null");
    }
    *out = proposals->set.size();
    return VHC_OK;
}

vhc_status vhc_proposals_image_count(const vhc_proposals* proposals, size_t* out) {
    if (!proposals || !out) {
        return null_argument("vhc_proposals_image_count: proposals and out must be non-null");
    }
    *out = proposals->set.by_image().size();
    return VHC_OK;
}

vhc_status vhc_proposals_row(const vhc_proposals* proposals, size_t index, const char** image_id,
                             vhc_box* box, int32_t* rank, const char** source) {
    if (!proposals) return null_argument("vhc_proposals_row: proposals must be non-null");
    for (const auto& [id, entries] : proposals->set.by_image()) {
        if (index >= entries.size()) {
            index -= entries.size();
            continue;
        }
        const vhc::ProposalSet::Entry& e = entries[index];
        if (image_id) *image_id = id.c_str();
        if (box) *box = from_core(e.box);
        if (rank) *rank = e.rank;
        if (source) *source = e.source.c_str();
        return VHC_OK;
    }
    return fail(VHC_ERROR_OUT_OF_RANGE, "vhc_proposals_row: index past the last row");
}

void vhc_proposals_free(vhc_proposals* proposals) {
    delete proposals;
}

/* ---- ground truth ---- */

vhc_status vhc_annotations_create(vhc_annotations** out) {
    if (!out) return null_argument("vhc_annotations_create: out must be non-null");
    return guarded([&] {
        *out = new vhc_annotations{};
        return VHC_OK;
    });
}

vhc_status vhc_annotations_load(const char* path, vhc_annotations** out) {
    if (!path || !out) return null_argument("vhc_annotations_load: path and out must be non-null");
    return guarded([&] {
        *out = new vhc_annotations{vhc::parse_ground_truth(path)};
        return VHC_OK;
    });
}

vhc_status vhc_annotations_append(vhc_annotations* annotations, const char* image_id,
                                  const char* class_label, vhc_box box) {
    if (!annotations || !image_id || !class_label) {
        return null_argument("vhc_annotations_append: all arguments must be non-null");
    }
    return guarded([&] {
        const vhc::BoundingBox core = to_core(box);
        if (*image_id == '\0') {
            throw vhc::InvalidInputError("vhc_annotations_append: empty image id");
        }
        if (*class_label == '\0') {
            throw vhc::InvalidInputError("vhc_annotations_append: empty class label");
        }
        if (!core.valid()) {
            throw vhc::InvalidInputError("vhc_annotations_append: invalid box");
        }
        annotations->rows.push_back(vhc::GroundTruthAnnotation{image_id, core, class_label});
        return VHC_OK;
    });
}

vhc_status vhc_annotations_count(const vhc_annotations* annotations, size_t* out) {
    if (!annotations || !out) {
        return null_argument("vhc_annotations_count: annotations and out must be non-null");
    }
    *out = annotations->rows.size();
    return VHC_OK;
}

vhc_status vhc_annotations_row(const vhc_annotations* annotations, size_t index,
                               const char** image_id, const char** class_label, vhc_box* box) {
    if (!annotations) return null_argument("vhc_annotations_row: annotations must be non-null");
    if (index >= annotations->rows.size()) {
        return fail(VHC_ERROR_OUT_OF_RANGE, "vhc_annotations_row: index past the last row");
    }
    const vhc::GroundTruthAnnotation& row = annotations->rows[index];
    if (image_id) *image_id = row.image_id.c_str();
    if (class_label) *class_label = row.class_label.c_str();
    if (box) *box = from_core(row.box);
    return VHC_OK;
}

void vhc_annotations_free(vhc_annotations* annotations) {
    delete annotations;
}

/* ---- image sizes ---- */

vhc_status vhc_size_table_create(vhc_size_table** out) {
    if (!out) return null_argument("vhc_size_table_create: out must be non-null");
    return guarded([&] {
        *out = new vhc_size_table{};
        return VHC_OK;
    });
}

vhc_status vhc_size_table_load(const char* path, vhc_size_table** out) {
    if (!path || !out) return null_argument("vhc_size_table_load: path and out must be non-null");
    return guarded([&] {
        *out = new vhc_size_table{vhc::parse_sizes(path)};
        return VHC_OK;
    });
}

vhc_status vhc_size_table_add(vhc_size_table* table, const char* image_id, int32_t width,
                              int32_t height) {
    if (!table || !image_id) {
        return null_argument("vhc_size_table_add: table and image_id must be non-null");
    }
    return guarded([&] {
        if (*image_id == '\0') {
            throw vhc::InvalidInputError("vhc_size_table_add: empty image id");
        }
        if (width < 1 || height < 1) {
            throw vhc::InvalidInputError("vhc_size_table_add: dimensions must be positive");
        }
        table->sizes[image_id] = vhc::ImageSize{width, height};
        return VHC_OK;
    });
}

void vhc_size_table_free(vhc_size_table* table) {
    delete table;
}

/* ---- budget splitting and combination ---- */

vhc_status vhc_split_parse(const char* text, vhc_split** out) {
    if (!text || !out) return null_argument("vhc_split_parse: text and out must be non-null");
    return guarded([&] {
        *out = new vhc_split{vhc::BudgetSplit::parse(text)};
        return VHC_OK;
    });
}

vhc_status vhc_split_create(vhc_split** out) {
    if (!out) return null_argument("vhc_split_create: out must be non-null");
    return guarded([&] {
        *out = new vhc_split{};
        return VHC_OK;
    });
}

vhc_status vhc_split_add(vhc_split* split, const char* source_tag, double fraction) {
    if (!split || !source_tag) {
        return null_argument("vhc_split_add: split and source_tag must be non-null");
    }
    return guarded([&] {
        split->split.allocations.push_back(vhc::BudgetSplit::Allocation{source_tag, fraction});
        return VHC_OK;
    });
}

vhc_status vhc_split_count(const vhc_split* split, size_t* out) {
    if (!split || !out) return null_argument("vhc_split_count: split and out must be non-null");
    *out = split->split.allocations.size();
    return VHC_OK;
}

vhc_status vhc_split_source(const vhc_split* split, size_t index, const char** source_tag,
                            double* fraction) {
    if (!split) return null_argument("vhc_split_source: split must be non-null");
    if (index >= split->split.allocations.size()) {
        return fail(VHC_ERROR_OUT_OF_RANGE, "vhc_split_source: index past the last allocation");
    }
    const vhc::BudgetSplit::Allocation& a = split->split.allocations[index];
    if (source_tag) *source_tag = a.source_tag.c_str();
    if (fraction) *fraction = a.fraction;
    return VHC_OK;
}

vhc_status vhc_split_budget(const vhc_split* split, int64_t total, int64_t* counts,
                            size_t counts_len) {
    if (!split || !counts) {
        return null_argument("vhc_split_budget: split and counts must be non-null");
    }
    return guarded([&] {
        const auto shares = vhc::split_budget(total, split->split);
        if (counts_len != shares.size()) {
            throw vhc::InvalidInputError(
                "vhc_split_budget: counts length must equal the allocation count");
        }
        for (std::size_t i = 0; i < shares.size(); ++i) counts[i] = shares[i].second;
        return VHC_OK;
    });
}

void vhc_split_free(vhc_split* split) {
    delete split;
}

vhc_status vhc_combine(const vhc_proposals* const* sources, size_t source_count, int64_t total,
                       const vhc_split* split, vhc_proposals** out) {
    if (!sources || !split || !out) {
        return null_argument("vhc_combine: sources, split, and out must be non-null");
    }
    return guarded([&] {
        std::vector<const vhc::ProposalSet*> sets;
        sets.reserve(source_count);
        for (std::size_t i = 0; i < source_count; ++i) {
            if (!sources[i]) throw vhc::InvalidInputError("vhc_combine: null source set");
            sets.push_back(&sources[i]->set);
        }
        *out = new vhc_proposals{vhc::combine(sets, total, split->split)};
        return VHC_OK;
    });
}

/* ---- evaluation ---- */

vhc_status vhc_evaluate(const vhc_annotations* gts, const vhc_proposals* proposals,
                        const int64_t* budgets, size_t budget_count, double step,
                        const vhc_size_table* sizes, vhc_report** out) {
    if (!gts || !proposals || !budgets || !out) {
        return null_argument("vhc_evaluate: gts, proposals, budgets, and out must be non-null");
    }
    return guarded([&] {
        const std::vector<std::int64_t> budget_list(budgets, budgets + budget_count);
        auto result = std::make_unique<vhc_report>();
        result->reports = vhc::evaluate_at_budgets(gts->rows, proposals->set, budget_list, step,
                                                   sizes ? &sizes->sizes : nullptr);
        result->summary = vhc::format_summary(result->reports);
        *out = result.release();
        return VHC_OK;
    });
}

vhc_status vhc_report_budget_count(const vhc_report* report, size_t* out) {
    if (!report || !out) {
        return null_argument("vhc_report_budget_count: report and out must be non-null");
    }
    *out = report->reports.size();
    return VHC_OK;
}

vhc_status vhc_report_budget(const vhc_report* report, size_t budget_index, int64_t* out) {
    if (!report || !out) return null_argument("vhc_report_budget: report and out must be non-null");
    const vhc::EvaluationReport* block = report_block(report, budget_index);
    if (!block) return fail(VHC_ERROR_OUT_OF_RANGE, "vhc_report_budget: no such budget");
    *out = block->proposal_budget;
    return VHC_OK;
}

vhc_status vhc_report_mabo(const vhc_report* report, size_t budget_index, double* out) {
    if (!report || !out) return null_argument("vhc_report_mabo: report and out must be non-null");
    const vhc::EvaluationReport* block = report_block(report, budget_index);
    if (!block) return fail(VHC_ERROR_OUT_OF_RANGE, "vhc_report_mabo: no such budget");
    *out = block->mabo;
    return VHC_OK;
}

vhc_status vhc_report_average_recall(const vhc_report* report, size_t budget_index, double* out) {
    if (!report || !out) {
        return null_argument("vhc_report_average_recall: report and out must be non-null");
    }
    const vhc::EvaluationReport* block = report_block(report, budget_index);
    if (!block) return fail(VHC_ERROR_OUT_OF_RANGE, "vhc_report_average_recall: no such budget");
    *out = block->average_recall;
    return VHC_OK;
}

vhc_status vhc_report_curve_size(const vhc_report* report, size_t budget_index, size_t* out) {
    if (!report || !out) {
        return null_argument("vhc_report_curve_size: report and out must be non-null");
    }
    const vhc::EvaluationReport* block = report_block(report, budget_index);
    if (!block) return fail(VHC_ERROR_OUT_OF_RANGE, "vhc_report_curve_size: no such budget");
    *out = block->recall_curve.thresholds.size();
    return VHC_OK;
}

vhc_status vhc_report_curve_point(const vhc_report* report, size_t budget_index,
                                  size_t point_index, double* threshold, double* recall) {
    if (!report) return null_argument("vhc_report_curve_point: report must be non-null");
    const vhc::EvaluationReport* block = report_block(report, budget_index);
    if (!block) return fail(VHC_ERROR_OUT_OF_RANGE, "vhc_report_curve_point: no such budget");
    if (point_index >= block->recall_curve.thresholds.size()) {
        return fail(VHC_ERROR_OUT_OF_RANGE, "vhc_report_curve_point: no such grid point");
    }
    if (threshold) *threshold = block->recall_curve.thresholds[point_index];
    if (recall) *recall = block->recall_curve.recalls[point_index];
    return VHC_OK;
}

vhc_status vhc_report_class_count(const vhc_report* report, size_t budget_index, size_t* out) {
    if (!report || !out) {
        return null_argument("vhc_report_class_count: report and out must be non-null");
    }
    const vhc::EvaluationReport* block = report_block(report, budget_index);
    if (!block) return fail(VHC_ERROR_OUT_OF_RANGE, "vhc_report_class_count: no such budget");
    *out = block->per_class_abo.size();
    return VHC_OK;
}

vhc_status vhc_report_class_abo(const vhc_report* report, size_t budget_index, size_t class_index,
                                const char** class_label, double* abo) {
    if (!report) return null_argument("vhc_report_class_abo: report must be non-null");
    const vhc::EvaluationReport* block = report_block(report, budget_index);
    if (!block) return fail(VHC_ERROR_OUT_OF_RANGE, "vhc_report_class_abo: no such budget");
    if (class_index >= block->per_class_abo.size()) {
        return fail(VHC_ERROR_OUT_OF_RANGE, "vhc_report_class_abo: no such class");
    }
    auto it = block->per_class_abo.begin();
    std::advance(it, static_cast<std::ptrdiff_t>(class_index));
    if (class_label) *class_label = it->first.c_str();
    if (abo) *abo = it->second;
    return VHC_OK;
}

vhc_status vhc_report_gt_stats(const vhc_report* report, double* avg_width, double* avg_height,
                               double* avg_area_ratio) {
    if (!report) return null_argument("vhc_report_gt_stats: report must be non-null");
    if (report->reports.empty() || !report->reports.front().gt_stats) {
        return fail(VHC_ERROR_INVALID_INPUT,
                    "vhc_report_gt_stats: report was built without a size table");
    }
    const vhc::GtStats& stats = *report->reports.front().gt_stats;
    if (avg_width) *avg_width = stats.avg_width;
    if (avg_height) *avg_height = stats.avg_height;
    if (avg_area_ratio) *avg_area_ratio = stats.avg_area_ratio;
    return VHC_OK;
}

vhc_status vhc_report_save_csv(const vhc_report* report, const char* path) {
    if (!report || !path) {
        return null_argument("vhc_report_save_csv: report and path must be non-null");
    }
    return guarded([&] {
        vhc::write_report_csv(report->reports, path);
        return VHC_OK;
    });
}

vhc_status vhc_report_summary(const vhc_report* report, const char** out) {
    if (!report || !out) {
        return null_argument("vhc_report_summary: report and out must be non-null");
    }
    *out = report->summary.c_str();
    return VHC_OK;
}

void vhc_report_free(vhc_report* report) {
    delete report;
}

/* ---- geometry and statistics helpers ---- */

vhc_status vhc_iou(vhc_box a, vhc_box b, double* out) {
    if (!out) return null_argument("vhc_iou: out must be non-null");
    return guarded([&] {
        const vhc::BoundingBox ca = to_core(a);
        const vhc::BoundingBox cb = to_core(b);
        if (!ca.valid() || !cb.valid()) {
            throw vhc::InvalidInputError("vhc_iou: boxes must have positive area");
        }
        *out = vhc::iou(ca, cb);
        return VHC_OK;
    });
}

vhc_status vhc_gt_stats(const vhc_annotations* gts, const vhc_size_table* sizes,
                        double* avg_width, double* avg_height, double* avg_area_ratio) {
    if (!gts || !sizes) return null_argument("vhc_gt_stats: gts and sizes must be non-null");
    return guarded([&] {
        const vhc::GtStats stats = vhc::gt_stats(gts->rows, sizes->sizes);
        if (avg_width) *avg_width = stats.avg_width;
        if (avg_height) *avg_height = stats.avg_height;
        if (avg_area_ratio) *avg_area_ratio = stats.avg_area_ratio;
        return VHC_OK;
    });
}

} /* extern "C" */
