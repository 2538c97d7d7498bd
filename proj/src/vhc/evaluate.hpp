#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vhc/boxes.hpp"
#include "vhc/proposal_io.hpp"

namespace vhc {

/// Recall sampled on an ascending threshold grid over [0.5, 1.0].
struct RecallCurve {
    std::vector<double> thresholds;
    std::vector<double> recalls;
};

struct GtStats {
    double avg_width = 0.0;
    double avg_height = 0.0;
    double avg_area_ratio = 0.0;
};

struct EvaluationReport {
    std::map<std::string, double> per_class_abo;
    double mabo = 0.0;
    RecallCurve recall_curve;
    double average_recall = 0.0;
    std::int64_t proposal_budget = 0;
    std::optional<GtStats> gt_stats;
};

/// Proposal boxes grouped by image id, in rank order.
using BoxesByImage = std::map<std::string, std::vector<BoundingBox>>;

/// Extracts per-image boxes from a set; limit >= 0 keeps only each image's
/// top `limit` rows.
BoxesByImage boxes_by_image(const ProposalSet& set, std::int64_t limit = -1);

/// Mean over the given annotations of the best IoU any proposal in the same
/// image achieves. An annotation whose image has no proposals contributes 0.
/// The caller passes the annotations of one class; empty input is an error.
double abo(const std::vector<GroundTruthAnnotation>& gts_of_class, const BoxesByImage& proposals);

/// abo per class label present in gts.
std::map<std::string, double> per_class_abo(const std::vector<GroundTruthAnnotation>& gts,
                                            const BoxesByImage& proposals);

/// Unweighted mean of abo over the classes present in gts.
double mabo(const std::vector<GroundTruthAnnotation>& gts, const BoxesByImage& proposals);

/// Fraction of all annotations (classes pooled) whose best proposal IoU is
/// at least `threshold`. Threshold must lie in [0.5, 1].
double recall_at(double threshold, const std::vector<GroundTruthAnnotation>& gts,
                 const BoxesByImage& proposals);

/// recall_at on the grid 0.5, 0.5+step, ... with 1.0 always the last point.
RecallCurve recall_curve(const std::vector<GroundTruthAnnotation>& gts,
                         const BoxesByImage& proposals, double step = 0.01);

/// Trapezoidal area under the curve over [0.5, 1.0]; lies in [0, 0.5].
double average_recall(const RecallCurve& curve);

/// Means over all annotations of box width, box height, and box area divided
/// by image area. Every annotation's image must appear in `sizes`.
GtStats gt_stats(const std::vector<GroundTruthAnnotation>& gts, const SizeTable& sizes);

/// Full report against a fixed proposal pool. `budget` only labels the
/// report; truncation is the caller's job (see evaluate_at_budgets).
EvaluationReport evaluate(const std::vector<GroundTruthAnnotation>& gts,
                          const BoxesByImage& proposals, std::int64_t budget, double step = 0.01);

/// One report per budget, each computed on every image's top-k proposals.
/// Reports come back in the order the budgets were given. When `sizes` is
/// non-null the ground-truth statistics are attached to every report.
std::vector<EvaluationReport> evaluate_at_budgets(const std::vector<GroundTruthAnnotation>& gts,
                                                  const ProposalSet& proposals,
                                                  const std::vector<std::int64_t>& budgets,
                                                  double step = 0.01,
                                                  const SizeTable* sizes = nullptr);

/// CSV emission: header `metric,class,budget,threshold,value`, one row per
/// scalar. Budget-independent rows (ground-truth statistics) leave the
/// budget column blank and are written once.
void write_report_csv(const std::vector<EvaluationReport>& reports, const std::string& path);

/// Plain-text table for terminal output.
std::string format_summary(const std::vector<EvaluationReport>& reports);

}  // namespace vhc
