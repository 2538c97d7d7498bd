#include "vhc/combine.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>

#include "vhc/error.hpp"

namespace vhc {

void BudgetSplit::validate() const {
    if (allocations.empty()) throw InvalidInputError("budget split: no sources");
    std::set<std::string> tags;
    double sum = 0.0;
    for (const Allocation& a : allocations) {
        if (a.source_tag.empty()) throw InvalidInputError("budget split: empty source tag");
        if (!(a.fraction > 0.0)) {
            throw InvalidInputError("budget split: fraction for '" + a.source_tag +
                                    "' must be positive");
        }
        if (!tags.insert(a.source_tag).second) {
            throw InvalidInputError("budget split: duplicate source tag '" + a.source_tag + "'");
        }
        sum += a.fraction;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw InvalidInputError("budget split: fractions must sum to 1");
    }
}

BudgetSplit BudgetSplit::parse(const std::string& text) {
    BudgetSplit split;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = std::min(text.find(',', pos), text.size());
        const std::string item = text.substr(pos, comma - pos);
        const std::size_t eq = item.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw InvalidInputError("budget split: expected TAG=FRACTION, got '" + item + "'");
        }
        const std::string value = item.substr(eq + 1);
        double fraction = 0.0;
        const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), fraction);
        if (ec != std::errc() || ptr != value.data() + value.size()) {
            throw InvalidInputError("budget split: bad fraction '" + value + "'");
        }
        split.allocations.push_back(Allocation{item.substr(0, eq), fraction});
        pos = comma + 1;
    }
    split.validate();
    return split;
}

std::vector<std::pair<std::string, std::int64_t>> split_budget(std::int64_t total,
                                                               const BudgetSplit& split) {
    split.validate();
    if (total < 0) throw InvalidInputError("split_budget: total must be non-negative");

    std::vector<std::pair<std::string, std::int64_t>> out;
    out.reserve(split.allocations.size());
    std::int64_t assigned = 0;
    for (const BudgetSplit::Allocation& a : split.allocations) {
        const auto share =
            static_cast<std::int64_t>(std::floor(a.fraction * static_cast<double>(total)));
        out.emplace_back(a.source_tag, share);
        assigned += share;
    }

    std::int64_t remainder = total - assigned;
    for (std::size_t i = 0; remainder > 0; i = (i + 1) % out.size()) {
        ++out[i].second;
        --remainder;
    }
    // Fractions may overshoot 1 by the validation tolerance; with very large
    // totals the floor sum can land one past the budget. Trim from the tail.
    for (std::size_t i = out.size(); remainder < 0 && i > 0; --i) {
        const std::int64_t trim = std::min(out[i - 1].second, -remainder);
        out[i - 1].second -= trim;
        remainder += trim;
    }
    return out;
}

std::vector<Proposal> combine_image(
    const std::map<std::string, std::vector<Proposal>>& per_source, std::int64_t total,
    const BudgetSplit& split) {
    const auto shares = split_budget(total, split);

    struct Cursor {
        const std::vector<Proposal>* list;
        std::size_t next = 0;
    };
    std::vector<Cursor> cursors;
    cursors.reserve(shares.size());
    for (const auto& [tag, share] : shares) {
        const auto it = per_source.find(tag);
        if (it == per_source.end()) {
            throw ConfigError("combine: split names unknown source '" + tag + "'");
        }
        cursors.push_back(Cursor{&it->second, 0});
    }

    std::vector<Proposal> out;
    std::set<BoundingBox> seen;

    // Heads: exactly the top share_i rows of each source, duplicates dropped.
    for (std::size_t i = 0; i < cursors.size(); ++i) {
        Cursor& c = cursors[i];
        const std::int64_t want = shares[i].second;
        while (static_cast<std::int64_t>(c.next) < want && c.next < c.list->size()) {
            const Proposal& p = (*c.list)[c.next++];
            if (seen.insert(p.box).second) out.push_back(p);
        }
    }

    // Backfill: cycle the sources in allocation order, each visit moving one
    // new box into the list, until the budget is met or nothing is left.
    bool added = true;
    while (static_cast<std::int64_t>(out.size()) < total && added) {
        added = false;
        for (Cursor& c : cursors) {
            if (static_cast<std::int64_t>(out.size()) >= total) break;
            while (c.next < c.list->size()) {
                const Proposal& p = (*c.list)[c.next++];
                if (seen.insert(p.box).second) {
                    out.push_back(p);
                    added = true;
                    break;
                }
            }
        }
    }

    for (std::size_t i = 0; i < out.size(); ++i) out[i].rank = static_cast<int>(i) + 1;
    return out;
}

ProposalSet combine(const std::vector<const ProposalSet*>& sources, std::int64_t total,
                    const BudgetSplit& split) {
    split.validate();

    std::map<std::string, const ProposalSet*> by_tag;
    for (const ProposalSet* s : sources) {
        if (s == nullptr) throw InvalidInputError("combine: null source set");
        if (!by_tag.emplace(s->source_tag(), s).second) {
            throw ConfigError("combine: duplicate source tag '" + s->source_tag() + "'");
        }
    }

    std::vector<const ProposalSet*> chosen;
    chosen.reserve(split.allocations.size());
    for (const BudgetSplit::Allocation& a : split.allocations) {
        const auto it = by_tag.find(a.source_tag);
        if (it == by_tag.end()) {
            throw ConfigError("combine: split names source '" + a.source_tag +
                              "' but no proposal set carries that tag");
        }
        chosen.push_back(it->second);
    }

    std::set<std::string> ids;
    for (const ProposalSet* s : chosen) {
        for (const auto& [id, entries] : s->by_image()) ids.insert(id);
    }

    ProposalSet out("combined");
    for (const std::string& id : ids) {
        std::map<std::string, std::vector<Proposal>> per_source;
        for (std::size_t i = 0; i < chosen.size(); ++i) {
            std::vector<Proposal>& list = per_source[split.allocations[i].source_tag];
            const auto it = chosen[i]->by_image().find(id);
            if (it == chosen[i]->by_image().end()) continue;
            list.reserve(it->second.size());
            for (const ProposalSet::Entry& e : it->second) {
                list.push_back(Proposal{id, e.box, e.rank, e.source});
            }
        }
        for (const Proposal& p : combine_image(per_source, total, split)) {
            out.append(id, p.box, p.source);
        }
    }
    return out;
}

ProposalSet combine(const std::vector<ProposalSet>& sources, std::int64_t total,
                    const BudgetSplit& split) {
    std::vector<const ProposalSet*> pointers;
    pointers.reserve(sources.size());
    for (const ProposalSet& s : sources) pointers.push_back(&s);
    return combine(pointers, total, split);
}

}  // namespace vhc
