#include "lexglr/glr_parser.hpp"

#include <deque>
#include <functional>
#include <unordered_map>

#include "lexglr/error.hpp"

namespace lexglr {

namespace {

struct GssLink {
    std::uint32_t to;
    ForestItem label;
};

struct GssNode {
    StateId state;
    std::uint32_t position;
    std::vector<GssLink> links;
};

struct PendingReduction {
    std::uint32_t node;
    RuleId rule;
    std::optional<std::size_t> first_link; // restrict paths to start with this link
};

class GlrDriver {
public:
    GlrDriver(std::span<const SymbolId> tokens, const LRTable& table)
        : table_(table), forest_(std::vector<SymbolId>(tokens.begin(), tokens.end())) {}

    Forest run() {
        const auto tokens = forest_.tokens();
        const auto n = static_cast<std::uint32_t>(tokens.size());
        frontier_[0] = add_node(0, 0);
        for (std::uint32_t i = 0; i <= n; ++i) {
            const SymbolId la = i < n ? tokens[i] : table_.end_marker();
            reduce_all(i, la);
            if (i == n) {
                accept(la);
                break;
            }
            if (!shift_all(i, la)) {
                break;
            }
        }
        return std::move(forest_);
    }

private:
    std::uint32_t add_node(StateId state, std::uint32_t position) {
        gss_.push_back({state, position, {}});
        return static_cast<std::uint32_t>(gss_.size() - 1);
    }

    void queue_reductions(std::uint32_t node, SymbolId la, std::optional<std::size_t> link) {
        for (const auto& a : table_.actions(gss_[node].state, la)) {
            if (a.kind == Action::Kind::Reduce) {
                pending_.push_back({node, a.target, link});
            }
        }
    }

    void reduce_all(std::uint32_t position, SymbolId la) {
        for (const auto& [state, node] : frontier_) {
            queue_reductions(node, la, std::nullopt);
        }
        while (!pending_.empty()) {
            const auto job = pending_.front();
            pending_.pop_front();
            const auto length = table_.rhs(job.rule).size();
            std::vector<ForestItem> labels;
            collect_paths(job.node, length, job.first_link, labels, [&](std::uint32_t bottom) {
                std::vector<ForestItem> daughters(labels.rbegin(), labels.rend());
                reduce_path(position, la, job.rule, bottom, std::move(daughters));
            });
        }
    }

    template <typename F>
    void collect_paths(std::uint32_t node, std::size_t remaining, std::optional<std::size_t> first_link,
                       std::vector<ForestItem>& labels, F&& on_path) {
        if (remaining == 0) {
            on_path(node);
            return;
        }
        // Copy: links of frontier nodes may grow while paths are processed.
        const auto links = gss_[node].links;
        for (std::size_t l = 0; l < links.size(); ++l) {
            if (first_link && l != *first_link) {
                continue;
            }
            labels.push_back(links[l].label);
            collect_paths(links[l].to, remaining - 1, std::nullopt, labels, on_path);
            labels.pop_back();
        }
    }

    void reduce_path(std::uint32_t position, SymbolId la, RuleId rule, std::uint32_t bottom,
                     std::vector<ForestItem> daughters) {
        const SymbolId lhs = table_.lhs(rule);
        const auto target = table_.goto_state(gss_[bottom].state, lhs);
        if (!target) {
            return;
        }
        const auto fnode = forest_.intern(lhs, gss_[bottom].position, position);
        forest_.add_alternative(fnode, rule, std::move(daughters));

        auto it = frontier_.find(*target);
        if (it == frontier_.end()) {
            const auto u = add_node(*target, position);
            gss_[u].links.push_back({bottom, ForestItem::node(fnode)});
            frontier_.emplace(*target, u);
            queue_reductions(u, la, std::nullopt);
            return;
        }
        const auto u = it->second;
        for (const auto& link : gss_[u].links) {
            if (link.to == bottom) {
                return; // same (lhs, span) node already labels this link
            }
        }
        gss_[u].links.push_back({bottom, ForestItem::node(fnode)});
        queue_reductions(u, la, gss_[u].links.size() - 1);
    }

    bool shift_all(std::uint32_t position, SymbolId la) {
        std::unordered_map<StateId, std::uint32_t> next;
        for (const auto& [state, node] : frontier_) {
            for (const auto& a : table_.actions(state, la)) {
                if (a.kind != Action::Kind::Shift) {
                    continue;
                }
                auto it = next.find(a.target);
                if (it == next.end()) {
                    it = next.emplace(a.target, add_node(a.target, position + 1)).first;
                }
                gss_[it->second].links.push_back({node, ForestItem::token(position)});
            }
        }
        frontier_ = std::move(next);
        return !frontier_.empty();
    }

    void accept(SymbolId la) {
        for (const auto& [state, node] : frontier_) {
            for (const auto& a : table_.actions(state, la)) {
                if (a.kind != Action::Kind::Accept) {
                    continue;
                }
                for (const auto& link : gss_[node].links) {
                    if (gss_[link.to].state == 0 && gss_[link.to].position == 0 && !link.label.is_token()) {
                        forest_.set_root(link.label.index);
                    }
                }
            }
        }
    }

    const LRTable& table_;
    Forest forest_;
    std::vector<GssNode> gss_;
    std::unordered_map<StateId, std::uint32_t> frontier_;
    std::deque<PendingReduction> pending_;
};

} // namespace

std::vector<SymbolId> encode_tags(const LRTable& table, std::span<const std::string> tags) {
    std::vector<SymbolId> out;
    out.reserve(tags.size());
    for (std::size_t i = 0; i < tags.size(); ++i) {
        const auto id = table.terminal_id(tags[i]);
        if (!id) {
            throw UnknownTerminalError(tags[i], i);
        }
        out.push_back(*id);
    }
    return out;
}

Forest glr_parse(std::span<const SymbolId> tokens, const LRTable& table) {
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (!table.is_terminal(tokens[i])) {
            throw UnknownTerminalError(std::to_string(tokens[i]), i);
        }
    }
    return GlrDriver(tokens, table).run();
}

Forest glr_parse(std::span<const std::string> tags, const LRTable& table) {
    const auto tokens = encode_tags(table, tags);
    return glr_parse(std::span<const SymbolId>(tokens), table);
}

} // namespace lexglr
