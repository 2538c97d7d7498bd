#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "vhc/boxes.hpp"
#include "vhc/error.hpp"
#include "vhc/evaluate.hpp"
#include "vhc/proposal_io.hpp"

using vhc::BoundingBox;
using vhc::BoxesByImage;
using vhc::GroundTruthAnnotation;
using vhc::InvalidInputError;
using vhc::ProposalSet;

namespace {

GroundTruthAnnotation gt(const char* id, const char* cls, const BoundingBox& box) {
    return GroundTruthAnnotation{id, box, cls};
}

// A proposal with IoU exactly `num`/100 against gt box (0,0,100,100):
// (0, 0, num, 100) intersects num*100 of the union 100*100.
BoundingBox sliver(int num) { return BoundingBox{0, 0, num, 100}; }

const BoundingBox kUnit{0, 0, 100, 100};

}  // namespace

TEST_CASE("abo averages the best overlaps") {
    const std::vector<GroundTruthAnnotation> gts{
        gt("a", "c", kUnit),
        gt("b", "c", kUnit),
    };
    const BoxesByImage proposals{
        {"a", {sliver(80), sliver(10)}},
        {"b", {sliver(40), sliver(20)}},
    };
    CHECK(vhc::abo(gts, proposals) == doctest::Approx(0.6).epsilon(1e-12));
}

TEST_CASE("verbatim proposals give abo one") {
    const std::vector<GroundTruthAnnotation> gts{
        gt("a", "c", {3, 4, 33, 44}),
        gt("a", "c", {50, 50, 70, 90}),
    };
    const BoxesByImage proposals{{"a", {{3, 4, 33, 44}, {50, 50, 70, 90}}}};
    CHECK(vhc::abo(gts, proposals) == 1.0);
}

TEST_CASE("annotations without proposals contribute zero") {
    const std::vector<GroundTruthAnnotation> gts{
        gt("a", "c", kUnit),
        gt("missing", "c", kUnit),
    };
    const BoxesByImage proposals{{"a", {kUnit}}};
    CHECK(vhc::abo(gts, proposals) == 0.5);
    CHECK(vhc::abo(gts, BoxesByImage{}) == 0.0);
}

TEST_CASE("abo of an empty class is an error") {
    CHECK_THROWS_AS(vhc::abo({}, BoxesByImage{}), InvalidInputError);
}

TEST_CASE("mabo averages class abos without weighting") {
    // Class p: one gt at 0.8. Class q: two gts at 0.5 and 0.7, abo 0.6.
    const std::vector<GroundTruthAnnotation> gts{
        gt("a", "p", kUnit),
        gt("b", "q", kUnit),
        gt("c", "q", kUnit),
    };
    const BoxesByImage proposals{
        {"a", {sliver(80)}},
        {"b", {sliver(50)}},
        {"c", {sliver(70)}},
    };
    CHECK(vhc::mabo(gts, proposals) == doctest::Approx(0.7).epsilon(1e-12));
    const auto per_class = vhc::per_class_abo(gts, proposals);
    REQUIRE(per_class.size() == 2);
    CHECK(per_class.at("p") == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(per_class.at("q") == doctest::Approx(0.6).epsilon(1e-12));

    CHECK(vhc::mabo(gts, BoxesByImage{}) == 0.0);
    CHECK_THROWS_AS(vhc::mabo({}, proposals), InvalidInputError);
}

TEST_CASE("recall counts inclusively at the threshold") {
    const std::vector<GroundTruthAnnotation> gts{
        gt("a", "c", kUnit),
        gt("b", "c", kUnit),
        gt("c", "c", kUnit),
    };
    const BoxesByImage proposals{
        {"a", {sliver(55)}},
        {"b", {sliver(70)}},
        {"c", {sliver(90)}},
    };
    CHECK(vhc::recall_at(0.7, gts, proposals) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(vhc::recall_at(0.5, gts, proposals) == 1.0);
    CHECK(vhc::recall_at(1.0, gts, proposals) == 0.0);
    CHECK(vhc::recall_at(0.7, gts, BoxesByImage{}) == 0.0);

    CHECK_THROWS_AS(vhc::recall_at(0.49, gts, proposals), InvalidInputError);
    CHECK_THROWS_AS(vhc::recall_at(1.01, gts, proposals), InvalidInputError);
    CHECK_THROWS_AS(vhc::recall_at(0.7, {}, proposals), InvalidInputError);
}

TEST_CASE("recall grid spans 0.5 to 1.0") {
    const std::vector<GroundTruthAnnotation> gts{gt("a", "c", kUnit)};
    const BoxesByImage proposals{{"a", {kUnit}}};

    const auto fine = vhc::recall_curve(gts, proposals, 0.01);
    REQUIRE(fine.thresholds.size() == 51);
    CHECK(fine.thresholds.front() == 0.5);
    CHECK(fine.thresholds.back() == 1.0);
    CHECK(fine.thresholds[1] == doctest::Approx(0.51).epsilon(1e-12));

    const auto coarse = vhc::recall_curve(gts, proposals, 0.3);
    REQUIRE(coarse.thresholds.size() == 3);
    CHECK(coarse.thresholds[0] == 0.5);
    CHECK(coarse.thresholds[1] == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(coarse.thresholds[2] == 1.0);

    CHECK_THROWS_AS(vhc::recall_curve(gts, proposals, 0.0), InvalidInputError);
    CHECK_THROWS_AS(vhc::recall_curve(gts, proposals, 0.6), InvalidInputError);
}

TEST_CASE("recall curve is non-increasing") {
    std::mt19937 rng(17);
    std::uniform_int_distribution<int> num(0, 100);
    std::vector<GroundTruthAnnotation> gts;
    BoxesByImage proposals;
    for (int i = 0; i < 10; ++i) {
        const std::string id = "img" + std::to_string(i);
        gts.push_back(gt(id.c_str(), "c", kUnit));
        proposals[id].push_back(sliver(std::max(1, num(rng))));
    }
    const auto curve = vhc::recall_curve(gts, proposals, 0.05);
    for (std::size_t i = 1; i < curve.recalls.size(); ++i) {
        CHECK(curve.recalls[i] <= curve.recalls[i - 1]);
    }
}

TEST_CASE("average recall of flat curves") {
    vhc::RecallCurve ones;
    vhc::RecallCurve zeros;
    for (int i = 0; i <= 50; ++i) {
        const double t = i == 50 ? 1.0 : 0.5 + i * 0.01;
        ones.thresholds.push_back(t);
        ones.recalls.push_back(1.0);
        zeros.thresholds.push_back(t);
        zeros.recalls.push_back(0.0);
    }
    CHECK(vhc::average_recall(ones) == 0.5);
    CHECK(vhc::average_recall(zeros) == 0.0);
}

TEST_CASE("average recall of the linear ramp is a quarter") {
    // recall(t) = 2 * (1 - t) falls from 1 at t=0.5 to 0 at t=1.
    vhc::RecallCurve ramp;
    for (int i = 0; i <= 50; ++i) {
        const double t = i == 50 ? 1.0 : 0.5 + i * 0.01;
        ramp.thresholds.push_back(t);
        ramp.recalls.push_back(2.0 * (1.0 - t));
    }
    CHECK(vhc::average_recall(ramp) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("malformed curves are rejected") {
    vhc::RecallCurve bad;
    bad.thresholds = {0.5, 0.6};
    bad.recalls = {1.0};
    CHECK_THROWS_AS(vhc::average_recall(bad), InvalidInputError);
    bad.thresholds = {0.6, 0.5};
    bad.recalls = {1.0, 1.0};
    CHECK_THROWS_AS(vhc::average_recall(bad), InvalidInputError);
}

TEST_CASE("metrics match the brute-force oracle on random instances") {
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> coord(0, 40);
    std::uniform_int_distribution<int> extent(1, 30);
    std::uniform_int_distribution<int> n_gts(1, 8);
    std::uniform_int_distribution<int> n_props(0, 20);
    std::uniform_int_distribution<int> pick_image(0, 2);
    std::uniform_int_distribution<int> pick_class(0, 2);
    const char* images[] = {"i0", "i1", "i2"};
    const char* classes[] = {"c0", "c1", "c2"};

    auto random_box = [&] {
        const int x = coord(rng), y = coord(rng);
        return BoundingBox{x, y, x + extent(rng), y + extent(rng)};
    };

    for (int round = 0; round < 600; ++round) {
        std::vector<GroundTruthAnnotation> gts;
        const int g = n_gts(rng);
        for (int i = 0; i < g; ++i) {
            gts.push_back(gt(images[pick_image(rng)], classes[pick_class(rng)], random_box()));
        }
        BoxesByImage proposals;
        oracle::BoxesByImage oracle_proposals;
        const int p = n_props(rng);
        for (int i = 0; i < p; ++i) {
            const char* id = images[pick_image(rng)];
            const BoundingBox box = random_box();
            proposals[id].push_back(box);
            oracle_proposals[id].push_back(box);
        }

        CHECK(vhc::mabo(gts, proposals) ==
              doctest::Approx(oracle::mabo(gts, oracle_proposals)).epsilon(1e-12));
        for (const double t : {0.5, 0.65, 0.8, 1.0}) {
            CHECK(vhc::recall_at(t, gts, proposals) ==
                  doctest::Approx(oracle::recall_at(t, gts, oracle_proposals)).epsilon(1e-12));
        }
        const auto curve = vhc::recall_curve(gts, proposals, 0.05);
        CHECK(vhc::average_recall(curve) ==
              doctest::Approx(oracle::average_recall(gts, oracle_proposals, 0.05))
                  .epsilon(1e-12));

        std::vector<GroundTruthAnnotation> of_class;
        for (const auto& a : gts) {
            if (a.class_label == std::string("c0")) of_class.push_back(a);
        }
        if (!of_class.empty()) {
            CHECK(vhc::abo(of_class, proposals) ==
                  doctest::Approx(oracle::abo(of_class, oracle_proposals)).epsilon(1e-12));
        }
    }
}

TEST_CASE("adding proposals never lowers the metrics") {
    std::mt19937 rng(55);
    std::uniform_int_distribution<int> coord(0, 40);
    std::uniform_int_distribution<int> extent(1, 30);

    std::vector<GroundTruthAnnotation> gts;
    for (int i = 0; i < 6; ++i) {
        const int x = coord(rng), y = coord(rng);
        gts.push_back(gt("img", i % 2 ? "a" : "b", {x, y, x + extent(rng), y + extent(rng)}));
    }
    BoxesByImage proposals{{"img", {}}};
    double last_mabo = 0.0;
    double last_ar = 0.0;
    for (int i = 0; i < 30; ++i) {
        const int x = coord(rng), y = coord(rng);
        proposals["img"].push_back({x, y, x + extent(rng), y + extent(rng)});
        const double m = vhc::mabo(gts, proposals);
        const double ar = vhc::average_recall(vhc::recall_curve(gts, proposals, 0.05));
        CHECK(m >= last_mabo);
        CHECK(ar >= last_ar);
        last_mabo = m;
        last_ar = ar;
    }
}

TEST_CASE("ground-truth statistics") {
    vhc::SizeTable sizes{{"a", {100, 100}}, {"b", {200, 100}}};

    const auto single = vhc::gt_stats({gt("a", "c", {0, 0, 10, 20})}, sizes);
    CHECK(single.avg_width == 10.0);
    CHECK(single.avg_height == 20.0);
    CHECK(single.avg_area_ratio == 0.02);

    const auto pair = vhc::gt_stats(
        {gt("a", "c", {0, 0, 10, 10}), gt("b", "c", {0, 0, 30, 30})}, sizes);
    CHECK(pair.avg_width == 20.0);
    CHECK(pair.avg_height == 20.0);
    CHECK(pair.avg_area_ratio == doctest::Approx((0.01 + 0.045) / 2).epsilon(1e-12));

    const auto full = vhc::gt_stats({gt("a", "c", {0, 0, 100, 100})}, sizes);
    CHECK(full.avg_area_ratio == 1.0);

    CHECK_THROWS_AS(vhc::gt_stats({gt("missing", "c", {0, 0, 5, 5})}, sizes), vhc::ConfigError);
    CHECK_THROWS_AS(vhc::gt_stats({}, sizes), InvalidInputError);
}

TEST_CASE("boxes_by_image truncates per image") {
    ProposalSet set("vh");
    set.append("a", {0, 0, 10, 10});
    set.append("a", {1, 0, 11, 10});
    set.append("a", {2, 0, 12, 10});
    set.append("b", {0, 0, 10, 10});

    const auto all = vhc::boxes_by_image(set);
    CHECK(all.at("a").size() == 3);
    CHECK(all.at("b").size() == 1);

    const auto top2 = vhc::boxes_by_image(set, 2);
    CHECK(top2.at("a").size() == 2);
    CHECK(top2.at("a")[0] == BoundingBox{0, 0, 10, 10});
    CHECK(top2.at("b").size() == 1);

    CHECK(vhc::boxes_by_image(set, 0).at("a").empty());
}

TEST_CASE("budgeted evaluation truncates per image and keeps input order") {
    ProposalSet set("vh");
    // Image a: rank 1 poor, rank 2 perfect. Truncation at 1 must miss.
    set.append("a", {90, 90, 95, 95});
    set.append("a", kUnit);
    const std::vector<GroundTruthAnnotation> gts{gt("a", "c", kUnit)};

    const auto reports = vhc::evaluate_at_budgets(gts, set, {2, 1}, 0.05);
    REQUIRE(reports.size() == 2);
    CHECK(reports[0].proposal_budget == 2);
    CHECK(reports[1].proposal_budget == 1);
    CHECK(reports[0].mabo == 1.0);
    CHECK(reports[1].mabo < 0.01);
    CHECK_FALSE(reports[0].gt_stats.has_value());
}

TEST_CASE("budget zero scores zero and a large budget matches the full pool") {
    std::mt19937 rng(66);
    std::uniform_int_distribution<int> coord(0, 40);
    std::uniform_int_distribution<int> extent(1, 30);

    ProposalSet set("vh");
    std::vector<GroundTruthAnnotation> gts;
    for (int i = 0; i < 5; ++i) {
        const int x = coord(rng), y = coord(rng);
        gts.push_back(gt("img", "c", {x, y, x + extent(rng), y + extent(rng)}));
    }
    for (int i = 0; i < 12; ++i) {
        const int x = coord(rng), y = coord(rng);
        set.append("img", {x, y, x + extent(rng), y + extent(rng)});
    }

    const auto reports = vhc::evaluate_at_budgets(gts, set, {0, 3, 12, 1000}, 0.05);
    REQUIRE(reports.size() == 4);
    CHECK(reports[0].mabo == 0.0);
    CHECK(reports[0].average_recall == 0.0);

    const auto untruncated = vhc::evaluate(gts, vhc::boxes_by_image(set), 12, 0.05);
    CHECK(reports[2].mabo == untruncated.mabo);
    CHECK(reports[2].average_recall == untruncated.average_recall);
    CHECK(reports[3].mabo == untruncated.mabo);

    // AR grows with the budget.
    for (std::size_t i = 1; i < reports.size(); ++i) {
        CHECK(reports[i].average_recall >= reports[i - 1].average_recall);
    }

    CHECK_THROWS_AS(vhc::evaluate_at_budgets(gts, set, {}, 0.05), InvalidInputError);
    CHECK_THROWS_AS(vhc::evaluate_at_budgets(gts, set, {-1}, 0.05), InvalidInputError);
}

TEST_CASE("attached size table fills the report statistics") {
    ProposalSet set("vh");
    set.append("a", kUnit);
    const std::vector<GroundTruthAnnotation> gts{gt("a", "c", {0, 0, 10, 20})};
    vhc::SizeTable sizes{{"a", {100, 100}}};

    const auto reports = vhc::evaluate_at_budgets(gts, set, {1, 5}, 0.05, &sizes);
    REQUIRE(reports.size() == 2);
    for (const auto& r : reports) {
        REQUIRE(r.gt_stats.has_value());
        CHECK(r.gt_stats->avg_width == 10.0);
        CHECK(r.gt_stats->avg_height == 20.0);
        CHECK(r.gt_stats->avg_area_ratio == 0.02);
    }
}

TEST_CASE("report csv layout") {
    const auto dir = std::filesystem::temp_directory_path() /
                     ("vhc_eval_" + std::to_string(std::random_device{}()));
    std::filesystem::create_directories(dir);
    const std::string path = (dir / "report.csv").string();

    ProposalSet set("vh");
    set.append("a", kUnit);
    const std::vector<GroundTruthAnnotation> gts{
        gt("a", "p", kUnit),
        gt("a", "q", {0, 0, 50, 100}),
    };
    vhc::SizeTable sizes{{"a", {100, 100}}};
    const auto reports = vhc::evaluate_at_budgets(gts, set, {1, 9}, 0.25, &sizes);
    vhc::write_report_csv(reports, path);

    std::ifstream in(path, std::ios::binary);
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);) lines.push_back(line);

    // Header, 3 stats rows, and per budget: 2 abo + mabo + 3 recall + ar.
    REQUIRE(lines.size() == 1 + 3 + 2 * 7);
    CHECK(lines[0] == "metric,class,budget,threshold,value");
    CHECK(lines[1] == "avg_gt_width,ALL,,,75");
    CHECK(lines[2] == "avg_gt_height,ALL,,,100");
    CHECK(lines[3] == "avg_gt_area_ratio,ALL,,,0.75");
    CHECK(lines[4] == "abo,p,1,,1");
    CHECK(lines[5] == "abo,q,1,,0.5");
    CHECK(lines[6] == "mabo,ALL,1,,0.75");
    CHECK(lines[7] == "recall,ALL,1,0.5,1");
    CHECK(lines[8] == "recall,ALL,1,0.75,0.5");
    CHECK(lines[9] == "recall,ALL,1,1,0.5");
    CHECK(lines[10] == "average_recall,ALL,1,,0.3125");
    CHECK(lines[11] == "abo,p,9,,1");

    std::error_code ec;
    std::filesystem::remove_all(dir, ec);
}

TEST_CASE("summary text lists one row per budget") {
    ProposalSet set("vh");
    set.append("a", kUnit);
    const std::vector<GroundTruthAnnotation> gts{gt("a", "c", kUnit)};
    const auto reports = vhc::evaluate_at_budgets(gts, set, {1, 7}, 0.05);
    const std::string text = vhc::format_summary(reports);
    CHECK(text.find("budget") != std::string::npos);
    CHECK(text.find("mabo") != std::string::npos);
    CHECK(text.find("\n") != std::string::npos);
}
