#include "lexglr/gr_extraction.hpp"

#include <algorithm>
#include <optional>

#include "lexglr/error.hpp"

namespace lexglr {

namespace {

class Extractor {
public:
    Extractor(const Grammar& grammar, std::span<const std::string> lemmas) : grammar_(grammar), lemmas_(lemmas) {}

    void visit(const DerivNode& node, const std::optional<std::string>& controller) {
        if (node.is_token()) {
            return;
        }
        const auto& rule = grammar_.rules().at(static_cast<std::size_t>(node.rule));
        auto inherited = controller;
        for (const auto& t : rule.gr_templates) {
            auto gr = instantiate(t, node, controller);
            if (!gr) {
                continue;
            }
            if (gr_is_subject(gr->relation)) {
                inherited = gr->dependent;
            }
            out_.push_back(std::move(*gr));
        }
        for (const auto& child : node.children) {
            visit(child, inherited);
        }
    }

    std::vector<GR> take() {
        std::sort(out_.begin(), out_.end());
        out_.erase(std::unique(out_.begin(), out_.end()), out_.end());
        return std::move(out_);
    }

private:
    // nullopt: the slot cannot be filled. Holds nullopt inside: the slot is `_`.
    std::optional<std::optional<std::string>> fill(const SlotRef& slot, const DerivNode& node,
                                                   const std::optional<std::string>& controller) const {
        switch (slot.kind) {
        case SlotRef::Kind::Unspecified:
            return std::optional<std::string>{};
        case SlotRef::Kind::Literal:
            return std::optional<std::string>{slot.literal};
        case SlotRef::Kind::Self:
            return std::optional<std::string>{lemmas_[head_token(node, grammar_)]};
        case SlotRef::Kind::Control:
            if (!controller) {
                return std::nullopt;
            }
            return controller;
        case SlotRef::Kind::Daughter: {
            const auto* target = follow_path(node, slot.path);
            if (target == nullptr) {
                return std::nullopt;
            }
            return std::optional<std::string>{lemmas_[head_token(*target, grammar_)]};
        }
        }
        return std::nullopt;
    }

    std::optional<GR> instantiate(const GRTemplate& t, const DerivNode& node,
                                  const std::optional<std::string>& controller) const {
        const auto type = fill(t.type_slot, node, controller);
        const auto head = fill(t.head_slot, node, controller);
        const auto dep = fill(t.dependent_slot, node, controller);
        const auto initial = fill(t.initial_slot, node, controller);
        if (!type || !head || !dep || !initial || !*head || !*dep) {
            return std::nullopt;
        }
        return GR{t.relation, *type, **head, **dep, *initial};
    }

    const Grammar& grammar_;
    std::span<const std::string> lemmas_;
    std::vector<GR> out_;
};

} // namespace

std::vector<GR> extract_grs(const DerivNode& tree, const Grammar& grammar, std::span<const std::string> lemmas) {
    if (lemmas.size() != tree.end) {
        throw Error("expected " + std::to_string(tree.end) + " lemmas, got " + std::to_string(lemmas.size()));
    }
    Extractor extractor(grammar, lemmas);
    extractor.visit(tree, std::nullopt);
    return extractor.take();
}

} // namespace lexglr
