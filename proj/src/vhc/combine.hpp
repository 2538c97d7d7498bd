#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "vhc/boxes.hpp"
#include "vhc/proposal_io.hpp"

namespace vhc {

/// How a total proposal budget is shared between ranked sources. Order
/// matters: remainder units and backfill both walk allocations in
/// declaration order.
struct BudgetSplit {
    struct Allocation {
        std::string source_tag;
        double fraction = 0.0;
    };

    std::vector<Allocation> allocations;

    /// Throws InvalidInputError unless every fraction is positive, the
    /// fractions sum to 1 within 1e-9, and the tags are non-empty and
    /// distinct.
    void validate() const;

    /// Parses "ss=0.5,eb=0.4,vh=0.1" and validates the result.
    static BudgetSplit parse(const std::string& text);
};

/// Integer share per source: floor(fraction * total), with the remainder
/// handed out one unit at a time in declaration order. Shares sum to total.
std::vector<std::pair<std::string, std::int64_t>> split_budget(std::int64_t total,
                                                               const BudgetSplit& split);

/// Merges one image's ranked per-source lists into a single ranked list of
/// at most `total` proposals: per-source heads sized by split_budget are
/// concatenated in allocation order, exact-duplicate boxes are dropped
/// (first occurrence wins), and the freed slots are refilled round-robin
/// from the sources' next-ranked proposals until the budget is met or every
/// source is exhausted. Ranks are rewritten 1..n; each proposal keeps its
/// original source tag. Every tag named by the split must be a key of
/// per_source (an empty list is fine), otherwise ConfigError.
std::vector<Proposal> combine_image(
    const std::map<std::string, std::vector<Proposal>>& per_source, std::int64_t total,
    const BudgetSplit& split);

/// Applies combine_image to every image id appearing in any source named by
/// the split. Source sets are matched to split tags by their source_tag();
/// a split tag with no matching set raises ConfigError. Sets not named by
/// the split are ignored.
ProposalSet combine(const std::vector<const ProposalSet*>& sources, std::int64_t total,
                    const BudgetSplit& split);
ProposalSet combine(const std::vector<ProposalSet>& sources, std::int64_t total,
                    const BudgetSplit& split);

}  // namespace vhc
