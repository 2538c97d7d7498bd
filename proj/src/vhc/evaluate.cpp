#include "vhc/evaluate.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>

#include "vhc/error.hpp"

namespace vhc {

namespace {

// Best proposal IoU per annotation; 0 when the image has no proposals.
std::vector<double> best_ious(const std::vector<GroundTruthAnnotation>& gts,
                              const BoxesByImage& proposals) {
    std::vector<double> best(gts.size(), 0.0);
    for (std::size_t i = 0; i < gts.size(); ++i) {
        const auto it = proposals.find(gts[i].image_id);
        if (it == proposals.end()) continue;
        for (const BoundingBox& box : it->second) {
            best[i] = std::max(best[i], iou(gts[i].box, box));
        }
    }
    return best;
}

std::vector<double> threshold_grid(double step) {
    if (!(step >= 1e-6) || !(step <= 0.5)) {
        throw InvalidInputError("recall grid: step must lie in [1e-6, 0.5]");
    }
    std::vector<double> thresholds;
    for (int i = 0;; ++i) {
        const double t = 0.5 + i * step;
        if (t >= 1.0) break;
        thresholds.push_back(t);
    }
    thresholds.push_back(1.0);
    return thresholds;
}

RecallCurve curve_from_best(const std::vector<double>& best, double step) {
    RecallCurve curve;
    curve.thresholds = threshold_grid(step);
    curve.recalls.reserve(curve.thresholds.size());
    for (const double t : curve.thresholds) {
        std::int64_t hit = 0;
        for (const double b : best) {
            if (b >= t) ++hit;
        }
        curve.recalls.push_back(static_cast<double>(hit) / static_cast<double>(best.size()));
    }
    return curve;
}

EvaluationReport report_from_best(const std::vector<GroundTruthAnnotation>& gts,
                                  const std::vector<double>& best, std::int64_t budget,
                                  double step) {
    EvaluationReport report;
    report.proposal_budget = budget;

    std::map<std::string, std::pair<double, std::int64_t>> acc;
    for (std::size_t i = 0; i < gts.size(); ++i) {
        auto& [sum, count] = acc[gts[i].class_label];
        sum += best[i];
        ++count;
    }
    double mabo_sum = 0.0;
    for (const auto& [label, sc] : acc) {
        const double value = sc.first / static_cast<double>(sc.second);
        report.per_class_abo.emplace(label, value);
        mabo_sum += value;
    }
    report.mabo = mabo_sum / static_cast<double>(acc.size());
    report.recall_curve = curve_from_best(best, step);
    report.average_recall = average_recall(report.recall_curve);
    return report;
}

std::string fmt(double v) {
    std::ostringstream s;
    s << std::setprecision(12) << v;
    return s.str();
}

}  // namespace

BoxesByImage boxes_by_image(const ProposalSet& set, std::int64_t limit) {
    BoxesByImage out;
    for (const auto& [id, entries] : set.by_image()) {
        const std::size_t n = limit < 0 ? entries.size()
                                        : std::min(entries.size(), static_cast<std::size_t>(limit));
        std::vector<BoundingBox>& boxes = out[id];
        boxes.reserve(n);
        for (std::size_t i = 0; i < n; ++i) boxes.push_back(entries[i].box);
    }
    return out;
}

double abo(const std::vector<GroundTruthAnnotation>& gts_of_class, const BoxesByImage& proposals) {
    if (gts_of_class.empty()) throw InvalidInputError("abo: class has no annotations");
    const std::vector<double> best = best_ious(gts_of_class, proposals);
    return std::accumulate(best.begin(), best.end(), 0.0) / static_cast<double>(best.size());
}

std::map<std::string, double> per_class_abo(const std::vector<GroundTruthAnnotation>& gts,
                                            const BoxesByImage& proposals) {
    if (gts.empty()) throw InvalidInputError("abo: no annotations");
    const std::vector<double> best = best_ious(gts, proposals);
    std::map<std::string, std::pair<double, std::int64_t>> acc;
    for (std::size_t i = 0; i < gts.size(); ++i) {
        auto& [sum, count] = acc[gts[i].class_label];
        sum += best[i];
        ++count;
    }
    std::map<std::string, double> out;
    for (const auto& [label, sc] : acc) {
        out.emplace(label, sc.first / static_cast<double>(sc.second));
    }
    return out;
}

double mabo(const std::vector<GroundTruthAnnotation>& gts, const BoxesByImage& proposals) {
    const auto abos = per_class_abo(gts, proposals);
    double sum = 0.0;
    for (const auto& [label, value] : abos) sum += value;
    return sum / static_cast<double>(abos.size());
}

double recall_at(double threshold, const std::vector<GroundTruthAnnotation>& gts,
                 const BoxesByImage& proposals) {
    if (!(threshold >= 0.5) || !(threshold <= 1.0)) {
        throw InvalidInputError("recall: threshold must lie in [0.5, 1]");
    }
    if (gts.empty()) throw InvalidInputError("recall: no annotations");
    const std::vector<double> best = best_ious(gts, proposals);
    std::int64_t hit = 0;
    for (const double b : best) {
        if (b >= threshold) ++hit;
    }
    return static_cast<double>(hit) / static_cast<double>(best.size());
}

RecallCurve recall_curve(const std::vector<GroundTruthAnnotation>& gts,
                         const BoxesByImage& proposals, double step) {
    if (gts.empty()) throw InvalidInputError("recall: no annotations");
    return curve_from_best(best_ious(gts, proposals), step);
}

double average_recall(const RecallCurve& curve) {
    if (curve.thresholds.size() != curve.recalls.size() || curve.thresholds.size() < 2) {
        throw InvalidInputError("average recall: malformed curve");
    }
    // Accumulate in extended precision so the constant-1 curve integrates to
    // exactly 0.5: adjacent-threshold differences are exact in double and
    // their sum telescopes without rounding in 80-bit arithmetic.
    long double area = 0.0L;
    for (std::size_t i = 1; i < curve.thresholds.size(); ++i) {
        if (!(curve.thresholds[i] > curve.thresholds[i - 1])) {
            throw InvalidInputError("average recall: thresholds must ascend");
        }
        const long double width =
            static_cast<long double>(curve.thresholds[i]) - curve.thresholds[i - 1];
        const long double mean =
            (static_cast<long double>(curve.recalls[i - 1]) + curve.recalls[i]) * 0.5L;
        area += width * mean;
    }
    return static_cast<double>(area);
}

GtStats gt_stats(const std::vector<GroundTruthAnnotation>& gts, const SizeTable& sizes) {
    if (gts.empty()) throw InvalidInputError("gt stats: no annotations");
    double w_sum = 0.0, h_sum = 0.0, ratio_sum = 0.0;
    for (const GroundTruthAnnotation& gt : gts) {
        const auto it = sizes.find(gt.image_id);
        if (it == sizes.end()) {
            throw ConfigError("gt stats: no size known for image '" + gt.image_id + "'");
        }
        const double image_area =
            static_cast<double>(it->second.width) * static_cast<double>(it->second.height);
        if (!(image_area > 0.0)) {
            throw ConfigError("gt stats: degenerate size for image '" + gt.image_id + "'");
        }
        w_sum += static_cast<double>(gt.box.width());
        h_sum += static_cast<double>(gt.box.height());
        ratio_sum += static_cast<double>(gt.box.area()) / image_area;
    }
    const auto n = static_cast<double>(gts.size());
    return GtStats{w_sum / n, h_sum / n, ratio_sum / n};
}

EvaluationReport evaluate(const std::vector<GroundTruthAnnotation>& gts,
                          const BoxesByImage& proposals, std::int64_t budget, double step) {
    if (gts.empty()) throw InvalidInputError("evaluate: no annotations");
    return report_from_best(gts, best_ious(gts, proposals), budget, step);
}

std::vector<EvaluationReport> evaluate_at_budgets(const std::vector<GroundTruthAnnotation>& gts,
                                                  const ProposalSet& proposals,
                                                  const std::vector<std::int64_t>& budgets,
                                                  double step, const SizeTable* sizes) {
    if (gts.empty()) throw InvalidInputError("evaluate: no annotations");
    if (budgets.empty()) throw InvalidInputError("evaluate: no budgets");
    for (const std::int64_t b : budgets) {
        if (b < 0) throw InvalidInputError("evaluate: budgets must be non-negative");
    }

    std::optional<GtStats> stats;
    if (sizes) stats = gt_stats(gts, *sizes);

    std::map<std::string, std::vector<std::size_t>> gt_by_image;
    for (std::size_t i = 0; i < gts.size(); ++i) {
        gt_by_image[gts[i].image_id].push_back(i);
    }

    // Budgets are processed in ascending order so each image's list is
    // scanned once; best-so-far IoUs carry over from smaller budgets.
    std::vector<std::size_t> order(budgets.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return budgets[a] < budgets[b]; });

    std::vector<double> best(gts.size(), 0.0);
    std::map<std::string, std::size_t> cursors;
    std::vector<EvaluationReport> out(budgets.size());

    for (const std::size_t oi : order) {
        const std::int64_t k = budgets[oi];
        for (const auto& [id, entries] : proposals.by_image()) {
            const auto git = gt_by_image.find(id);
            if (git == gt_by_image.end()) continue;
            std::size_t& from = cursors[id];
            const auto to = static_cast<std::size_t>(
                std::min<std::int64_t>(k, static_cast<std::int64_t>(entries.size())));
            for (; from < to; ++from) {
                for (const std::size_t gi : git->second) {
                    best[gi] = std::max(best[gi], iou(gts[gi].box, entries[from].box));
                }
            }
        }
        out[oi] = report_from_best(gts, best, k, step);
        out[oi].gt_stats = stats;
    }
    return out;
}

void write_report_csv(const std::vector<EvaluationReport>& reports, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");

    out << "metric,class,budget,threshold,value\n";
    bool stats_written = false;
    for (const EvaluationReport& r : reports) {
        if (r.gt_stats && !stats_written) {
            stats_written = true;
            out << "avg_gt_width,ALL,,," << fmt(r.gt_stats->avg_width) << "\n";
            out << "avg_gt_height,ALL,,," << fmt(r.gt_stats->avg_height) << "\n";
            out << "avg_gt_area_ratio,ALL,,," << fmt(r.gt_stats->avg_area_ratio) << "\n";
        }
        for (const auto& [label, value] : r.per_class_abo) {
            out << "abo," << label << "," << r.proposal_budget << ",," << fmt(value) << "\n";
        }
        out << "mabo,ALL," << r.proposal_budget << ",," << fmt(r.mabo) << "\n";
        for (std::size_t i = 0; i < r.recall_curve.thresholds.size(); ++i) {
            out << "recall,ALL," << r.proposal_budget << "," << fmt(r.recall_curve.thresholds[i])
                << "," << fmt(r.recall_curve.recalls[i]) << "\n";
        }
        out << "average_recall,ALL," << r.proposal_budget << ",," << fmt(r.average_recall)
            << "\n";
    }
    out.flush();
    if (!out) throw IoError("failed writing '" + path + "'");
}

std::string format_summary(const std::vector<EvaluationReport>& reports) {
    std::string text = "  budget  classes    mabo  avg_recall  recall@0.5  recall@1.0\n";
    char line[160];
    for (const EvaluationReport& r : reports) {
        std::snprintf(line, sizeof line, "%8lld  %7zu  %6.4f  %10.4f  %10.4f  %10.4f\n",
                      static_cast<long long>(r.proposal_budget), r.per_class_abo.size(), r.mabo,
                      r.average_recall, r.recall_curve.recalls.front(),
                      r.recall_curve.recalls.back());
        text += line;
    }
    if (!reports.empty() && reports.front().gt_stats) {
        const GtStats& s = *reports.front().gt_stats;
        std::snprintf(line, sizeof line,
                      "ground truth: avg width %.2f px, avg height %.2f px, avg area ratio %.4f\n",
                      s.avg_width, s.avg_height, s.avg_area_ratio);
        text += line;
    }
    return text;
}

}  // namespace vhc
