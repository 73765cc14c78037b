#include "cyk_oracle.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <tuple>

namespace lexglr::oracle {

namespace {

class Enumerator {
public:
    Enumerator(const LRTable& table, std::span<const SymbolId> tokens) : table_(table), tokens_(tokens) {
        // The augmented rule is last; it is not part of any derivation tree.
        for (RuleId r = 0; r + 1 < table.num_rules(); ++r) {
            by_lhs_[table.lhs(r)].push_back(r);
        }
    }

    const std::vector<DerivNode>& derive(SymbolId symbol, std::uint32_t start, std::uint32_t end) {
        const auto key = std::make_tuple(symbol, start, end);
        if (auto it = memo_.find(key); it != memo_.end()) {
            if (!it->second.done) {
                throw std::logic_error("oracle: cyclic derivation");
            }
            return it->second.trees;
        }
        memo_[key].done = false;
        std::vector<DerivNode> out;
        if (auto it = by_lhs_.find(symbol); it != by_lhs_.end()) {
            for (RuleId r : it->second) {
                expand_rule(r, start, end, out);
            }
        }
        auto& slot = memo_[key];
        slot.trees = std::move(out);
        slot.done = true;
        return slot.trees;
    }

private:
    struct Entry {
        bool done = false;
        std::vector<DerivNode> trees;
    };

    void expand_rule(RuleId rule, std::uint32_t start, std::uint32_t end, std::vector<DerivNode>& out) {
        const auto rhs = table_.rhs(rule);
        if (rhs.size() > end - start) {
            return; // every symbol covers at least one token
        }
        split(rule, rhs, 0, start, end, {}, out);
    }

    // Chooses the span of daughter `i` and recurses; `prefix` holds the daughters so far.
    void split(RuleId rule, std::span<const SymbolId> rhs, std::size_t i, std::uint32_t pos, std::uint32_t end,
               std::vector<DerivNode> prefix, std::vector<DerivNode>& out) {
        if (i == rhs.size()) {
            if (pos == end) {
                out.push_back({static_cast<std::int32_t>(rule), prefix.front().start, end, std::move(prefix)});
            }
            return;
        }
        const std::size_t remaining = rhs.size() - i - 1;
        for (std::uint32_t stop = pos + 1; stop + remaining <= end; ++stop) {
            std::vector<DerivNode> options;
            if (table_.is_terminal(rhs[i]) || rhs[i] == table_.end_marker()) {
                if (stop == pos + 1 && tokens_[pos] == rhs[i]) {
                    options.push_back(DerivNode::token(pos));
                }
            } else {
                options = derive(rhs[i], pos, stop);
            }
            for (auto& option : options) {
                auto next = prefix;
                next.push_back(std::move(option));
                split(rule, rhs, i + 1, stop, end, std::move(next), out);
            }
        }
    }

    const LRTable& table_;
    std::span<const SymbolId> tokens_;
    std::map<SymbolId, std::vector<RuleId>> by_lhs_;
    std::map<std::tuple<SymbolId, std::uint32_t, std::uint32_t>, Entry> memo_;
};

} // namespace

std::vector<DerivNode> enumerate_derivations(const LRTable& table, std::span<const SymbolId> tokens) {
    if (tokens.empty()) {
        return {};
    }
    Enumerator e(table, tokens);
    auto trees = e.derive(table.start_symbol(), 0, static_cast<std::uint32_t>(tokens.size()));
    std::sort(trees.begin(), trees.end());
    return trees;
}

} // namespace lexglr::oracle
