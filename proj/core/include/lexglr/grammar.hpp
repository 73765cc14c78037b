#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "lexglr/gr.hpp"
#include "lexglr/vsubcat.hpp"

namespace lexglr {

enum class BarLevel { Lexical, X1, XP };
enum class Repetition { One, Optional, Star, Plus };
enum class RuleKind { Argument, Adjunct };

/// Non-terminals introduced by Kleene normalization start with this character.
inline constexpr char kHelperPrefix = '@';

inline bool is_helper_label(std::string_view label) {
    return !label.empty() && label.front() == kHelperPrefix;
}

struct Category {
    std::string label;
    BarLevel bar_level = BarLevel::XP;
    std::map<std::string, std::string> features;

    friend bool operator==(const Category&, const Category&) = default;
};

struct DaughterSpec {
    Category category;
    Repetition repetition = Repetition::One;

    friend bool operator==(const DaughterSpec&, const DaughterSpec&) = default;
};

/// One filler position of a GR template.
struct SlotRef {
    enum class Kind {
        Unspecified, // `_`
        Literal,     // "to"
        Daughter,    // 2 or 3.1: 1-based daughter path
        Self,        // lexical head of the rule's mother
        Control,     // subject inherited from the nearest dominating clause
    };

    Kind kind = Kind::Unspecified;
    std::string literal;
    std::vector<std::size_t> path;

    friend bool operator==(const SlotRef&, const SlotRef&) = default;
};

struct GRTemplate {
    GRType relation = GRType::Dependent;
    SlotRef type_slot;
    SlotRef head_slot;
    SlotRef dependent_slot;
    SlotRef initial_slot;

    friend bool operator==(const GRTemplate&, const GRTemplate&) = default;
};

struct Rule {
    std::string id;
    Category mother;
    std::vector<DaughterSpec> daughters;
    std::size_t head_index = 0; // 0-based
    RuleKind kind = RuleKind::Argument;
    std::vector<GRTemplate> gr_templates;

    bool is_helper() const { return is_helper_label(mother.label); }
    const DaughterSpec& head() const { return daughters.at(head_index); }
    std::optional<std::string> feature(std::string_view name) const;

    friend bool operator==(const Rule&, const Rule&) = default;
};

/// A validated context-free backbone grammar. Immutable once constructed.
class Grammar {
public:
    Grammar() = default;
    Grammar(std::vector<Rule> rules, std::string start_symbol, std::set<std::string> terminals,
            std::set<std::string> verb_tags);

    const std::vector<Rule>& rules() const noexcept { return rules_; }
    const std::string& start_symbol() const noexcept { return start_; }
    const std::set<std::string>& terminals() const noexcept { return terminals_; }
    /// PoS tags that head verbal rules; empty means "any rule carrying VSUBCAT".
    const std::set<std::string>& verb_tags() const noexcept { return verb_tags_; }

    bool is_terminal(std::string_view symbol) const;
    std::set<std::string> nonterminals() const;
    bool is_normalized() const;

    bool is_verbal_argument_rule(const Rule& rule) const;
    /// VSUBCAT of a verbal argument-rule; nullopt for every other rule.
    std::optional<VSubcat> vsubcat_of(const Rule& rule,
                                      const FrameInventory& inventory = FrameInventory::standard()) const;

    friend bool operator==(const Grammar&, const Grammar&) = default;

private:
    std::vector<Rule> rules_;
    std::string start_;
    std::set<std::string> terminals_;
    std::set<std::string> verb_tags_;
};

/// Parses and validates grammar-file text. Throws GrammarError with a line number.
Grammar parse_grammar(std::string_view text, const FrameInventory& inventory = FrameInventory::standard());
Grammar load_grammar_file(const std::string& path,
                          const FrameInventory& inventory = FrameInventory::standard());

/// Renders a grammar in the file format; `parse_grammar(render_grammar(g)) == g`.
std::string render_grammar(const Grammar& grammar);

/// Expands optional, star and plus daughters. The result has only Repetition::One
/// daughters, no empty rules and no self-loops; star and plus share right-recursive
/// helper non-terminals `@X_list`.
Grammar normalize_kleene(const Grammar& grammar);

/// Bar level implied by a label: terminals are lexical, labels ending in '1' are X1.
BarLevel bar_level_for(std::string_view label, bool terminal);

std::string_view vsubcat_feature_name();

} // namespace lexglr
