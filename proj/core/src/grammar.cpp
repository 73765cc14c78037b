#include "lexglr/grammar.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "lexglr/error.hpp"

namespace lexglr {

namespace {

constexpr std::string_view kVsubcat = "VSUBCAT";
constexpr std::string_view kPhrasal = "PHRASAL";

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_ws(std::string_view s) {
    std::vector<std::string> out;
    std::istringstream in{std::string(s)};
    for (std::string word; in >> word;) {
        out.push_back(word);
    }
    return out;
}

bool is_label_char(char c) {
    if (std::isspace(static_cast<unsigned char>(c))) {
        return false;
    }
    switch (c) {
    case '(':
    case ')':
    case '?':
    case '*':
    case '+':
    case ':':
    case '|':
    case ',':
    case '#':
    case '"':
    case '\'':
    case '[':
    case ']':
    case '=':
        return false;
    default:
        return true;
    }
}

bool is_label(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), is_label_char);
}

// Drops a trailing `#` comment that is not inside a quoted literal.
std::string strip_comment(std::string_view line) {
    char quote = 0;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quote) {
            if (c == quote) {
                quote = 0;
            }
        } else if (c == '"' || c == '\'') {
            quote = c;
        } else if (c == '#') {
            return std::string(line.substr(0, i));
        }
    }
    return std::string(line);
}

// Position of the first `c` outside quotes and parentheses.
std::size_t find_top_level(std::string_view s, char c, std::size_t from = 0) {
    char quote = 0;
    int depth = 0;
    for (std::size_t i = from; i < s.size(); ++i) {
        const char ch = s[i];
        if (quote) {
            if (ch == quote) {
                quote = 0;
            }
            continue;
        }
        if (ch == '"' || ch == '\'') {
            quote = ch;
        } else if (ch == '(') {
            ++depth;
        } else if (ch == ')') {
            --depth;
        } else if (ch == c && depth == 0) {
            return i;
        }
    }
    return std::string_view::npos;
}

std::vector<std::string> split_top_level(std::string_view s, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = find_top_level(s, sep, start);
        if (pos == std::string_view::npos) {
            parts.push_back(trim(s.substr(start)));
            break;
        }
        parts.push_back(trim(s.substr(start, pos - start)));
        start = pos + 1;
    }
    return parts;
}

struct RawDaughter {
    std::string label;
    Repetition repetition = Repetition::One;
    bool head = false;
};

struct RawRule {
    std::size_t line = 0;
    std::string id;
    bool explicit_id = false;
    std::string mother;
    std::map<std::string, std::string> features;
    std::vector<RawDaughter> daughters;
    std::vector<GRTemplate> templates;
};

RawDaughter parse_daughter(const std::string& token, std::size_t line) {
    RawDaughter d;
    std::string rest = token;
    if (!rest.empty()) {
        switch (rest.back()) {
        case '?':
            d.repetition = Repetition::Optional;
            rest.pop_back();
            break;
        case '*':
            d.repetition = Repetition::Star;
            rest.pop_back();
            break;
        case '+':
            d.repetition = Repetition::Plus;
            rest.pop_back();
            break;
        default:
            break;
        }
    }
    constexpr std::string_view head_marker = "(head)";
    if (rest.size() > head_marker.size() && rest.ends_with(head_marker)) {
        d.head = true;
        rest.resize(rest.size() - head_marker.size());
    }
    if (!is_label(rest)) {
        throw GrammarError("malformed daughter '" + token + "'", line);
    }
    if (d.head && d.repetition != Repetition::One) {
        throw GrammarError("head daughter '" + rest + "' cannot carry a repetition marker", line);
    }
    d.label = rest;
    return d;
}

SlotRef parse_slot(const std::string& text, std::size_t line) {
    SlotRef slot;
    if (text == "_") {
        return slot;
    }
    if (text == "self") {
        slot.kind = SlotRef::Kind::Self;
        return slot;
    }
    if (text == "control") {
        slot.kind = SlotRef::Kind::Control;
        return slot;
    }
    if (text.size() >= 2 && (text.front() == '"' || text.front() == '\'') && text.back() == text.front()) {
        slot.kind = SlotRef::Kind::Literal;
        slot.literal = text.substr(1, text.size() - 2);
        if (slot.literal.empty()) {
            throw GrammarError("empty literal slot", line);
        }
        return slot;
    }
    slot.kind = SlotRef::Kind::Daughter;
    std::stringstream in(text);
    for (std::string part; std::getline(in, part, '.');) {
        if (part.empty() || !std::all_of(part.begin(), part.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
            throw GrammarError("malformed template slot '" + text + "'", line);
        }
        const auto index = std::stoul(part);
        if (index == 0) {
            throw GrammarError("daughter indices are 1-based: '" + text + "'", line);
        }
        slot.path.push_back(index);
    }
    if (slot.path.empty() || text.back() == '.') {
        throw GrammarError("malformed template slot '" + text + "'", line);
    }
    return slot;
}

std::vector<GRTemplate> parse_templates(std::string_view text, std::size_t line) {
    std::vector<GRTemplate> out;
    for (const auto& item : split_top_level(text, ',')) {
        if (item.empty()) {
            throw GrammarError("empty GR template", line);
        }
        const auto open = item.find('(');
        if (open == std::string::npos || item.back() != ')') {
            throw GrammarError("malformed GR template '" + item + "'", line);
        }
        const std::string name = trim(std::string_view(item).substr(0, open));
        const auto relation = gr_type_from_name(name);
        if (!relation) {
            throw GrammarError("unknown relation '" + name + "'", line);
        }
        auto args = split_top_level(std::string_view(item).substr(open + 1, item.size() - open - 2), ',');
        if (args.size() != 3 && args.size() != 4) {
            throw GrammarError("GR template '" + item + "' needs 3 or 4 slots", line);
        }
        GRTemplate t;
        t.relation = *relation;
        t.type_slot = parse_slot(args[0], line);
        t.head_slot = parse_slot(args[1], line);
        t.dependent_slot = parse_slot(args[2], line);
        if (args.size() == 4) {
            t.initial_slot = parse_slot(args[3], line);
        }
        out.push_back(std::move(t));
    }
    return out;
}

void check_template(const GRTemplate& t, const std::vector<RawDaughter>& daughters, std::size_t line) {
    using K = SlotRef::Kind;
    const std::string rel(gr_name(t.relation));
    auto check_path = [&](const SlotRef& slot) {
        if (slot.kind != K::Daughter) {
            return;
        }
        const auto first = slot.path.front();
        if (first > daughters.size()) {
            throw GrammarError("template " + rel + " references daughter " + std::to_string(first) +
                                   " of a rule with " + std::to_string(daughters.size()) + " daughters",
                               line);
        }
        const auto rep = daughters[first - 1].repetition;
        if (rep == Repetition::Star || rep == Repetition::Plus) {
            throw GrammarError("template " + rel + " references repeated daughter " + std::to_string(first), line);
        }
    };
    if (t.head_slot.kind != K::Daughter && t.head_slot.kind != K::Self) {
        throw GrammarError("template " + rel + ": head slot must be a daughter index or self", line);
    }
    if (t.dependent_slot.kind != K::Daughter && t.dependent_slot.kind != K::Self &&
        t.dependent_slot.kind != K::Control) {
        throw GrammarError("template " + rel + ": dependent slot must be a daughter index, self or control", line);
    }
    if (t.type_slot.kind == K::Self || t.type_slot.kind == K::Control) {
        throw GrammarError("template " + rel + ": type slot must be _, a literal or a daughter index", line);
    }
    if (!gr_has_type_slot(t.relation) && t.type_slot.kind != K::Unspecified) {
        throw GrammarError("relation " + rel + " has no type slot", line);
    }
    if (t.initial_slot.kind != K::Unspecified && t.initial_slot.kind != K::Literal) {
        throw GrammarError("template " + rel + ": initial slot must be _ or a literal", line);
    }
    if (!gr_has_initial_slot(t.relation) && t.initial_slot.kind != K::Unspecified) {
        throw GrammarError("relation " + rel + " has no initial-function slot", line);
    }
    check_path(t.type_slot);
    check_path(t.head_slot);
    check_path(t.dependent_slot);
}

RawRule parse_rule_line(const std::string& line_text, std::size_t line, const FrameInventory& inventory) {
    RawRule rule;
    rule.line = line;
    std::string text = trim(line_text);

    if (!text.empty() && text.front() == '[') {
        const auto close = text.find(']');
        if (close == std::string::npos) {
            throw GrammarError("unterminated rule identifier", line);
        }
        rule.id = trim(std::string_view(text).substr(1, close - 1));
        if (rule.id.empty() || rule.id.find_first_of(" \t") != std::string::npos) {
            throw GrammarError("malformed rule identifier '" + rule.id + "'", line);
        }
        rule.explicit_id = true;
        text = trim(std::string_view(text).substr(close + 1));
    }

    const auto arrow = text.find("->");
    rule.mother = trim(std::string_view(text).substr(0, arrow));
    if (!is_label(rule.mother)) {
        throw GrammarError("malformed mother category '" + rule.mother + "'", line);
    }
    std::string rhs = text.substr(arrow + 2);

    std::string gr_part;
    if (const auto bar = find_top_level(rhs, '|'); bar != std::string::npos) {
        gr_part = trim(std::string_view(rhs).substr(bar + 1));
        rhs = rhs.substr(0, bar);
        if (!gr_part.starts_with("gr:")) {
            throw GrammarError("expected 'gr:' after '|'", line);
        }
        gr_part = trim(std::string_view(gr_part).substr(3));
    }

    std::string feature_part;
    if (const auto colon = find_top_level(rhs, ':'); colon != std::string::npos) {
        feature_part = trim(std::string_view(rhs).substr(colon + 1));
        rhs = rhs.substr(0, colon);
        if (feature_part.empty()) {
            throw GrammarError("empty feature list after ':'", line);
        }
    }

    for (const auto& token : split_ws(rhs)) {
        rule.daughters.push_back(parse_daughter(token, line));
    }
    if (rule.daughters.empty()) {
        throw GrammarError("rule for '" + rule.mother + "' has no daughters (empty rules are not supported)", line);
    }

    if (!feature_part.empty()) {
        for (const auto& item : split_top_level(feature_part, ',')) {
            const auto eq = item.find('=');
            if (eq == std::string::npos) {
                throw GrammarError("malformed feature '" + item + "' (expected NAME=VALUE)", line);
            }
            const std::string name = trim(std::string_view(item).substr(0, eq));
            const std::string value = trim(std::string_view(item).substr(eq + 1));
            if (!is_label(name) || !is_label(value)) {
                throw GrammarError("malformed feature '" + item + "'", line);
            }
            if (!rule.features.emplace(name, value).second) {
                throw GrammarError("feature " + name + " given twice", line);
            }
            if (name == kVsubcat && !inventory.contains(value)) {
                throw GrammarError("unknown VSUBCAT value '" + value + "'", line);
            }
        }
    }

    if (!gr_part.empty()) {
        rule.templates = parse_templates(gr_part, line);
        for (const auto& t : rule.templates) {
            check_template(t, rule.daughters, line);
        }
    }
    return rule;
}

std::string render_slot(const SlotRef& slot) {
    switch (slot.kind) {
    case SlotRef::Kind::Unspecified:
        return "_";
    case SlotRef::Kind::Literal:
        return "\"" + slot.literal + "\"";
    case SlotRef::Kind::Self:
        return "self";
    case SlotRef::Kind::Control:
        return "control";
    case SlotRef::Kind::Daughter: {
        std::string out;
        for (std::size_t i = 0; i < slot.path.size(); ++i) {
            if (i > 0) {
                out += '.';
            }
            out += std::to_string(slot.path[i]);
        }
        return out;
    }
    }
    return "_";
}

// Throws if the unit-rule graph of a normalized grammar has a cycle
// or some non-terminal derives no terminal string.
void check_normalized_structure(const Grammar& g) {
    std::map<std::string, std::vector<std::string>> unit;
    for (const auto& rule : g.rules()) {
        if (rule.daughters.size() == 1 && !g.is_terminal(rule.daughters[0].category.label)) {
            unit[rule.mother.label].push_back(rule.daughters[0].category.label);
        }
    }
    std::map<std::string, int> color;
    std::function<void(const std::string&)> visit = [&](const std::string& node) {
        color[node] = 1;
        for (const auto& next : unit[node]) {
            if (color[next] == 1) {
                throw GrammarError("unit-rule cycle through '" + next + "'");
            }
            if (color[next] == 0) {
                visit(next);
            }
        }
        color[node] = 2;
    };
    for (const auto& [node, _] : unit) {
        if (color[node] == 0) {
            visit(node);
        }
    }

    std::set<std::string> productive;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& rule : g.rules()) {
            if (productive.contains(rule.mother.label)) {
                continue;
            }
            const bool ok = std::all_of(rule.daughters.begin(), rule.daughters.end(), [&](const DaughterSpec& d) {
                return g.is_terminal(d.category.label) || productive.contains(d.category.label);
            });
            if (ok) {
                productive.insert(rule.mother.label);
                changed = true;
            }
        }
    }
    for (const auto& nt : g.nonterminals()) {
        if (!productive.contains(nt)) {
            throw GrammarError("non-terminal '" + nt + "' derives no terminal string");
        }
    }
}

} // namespace

std::optional<std::string> Rule::feature(std::string_view name) const {
    auto it = mother.features.find(std::string(name));
    if (it == mother.features.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::string_view vsubcat_feature_name() {
    return kVsubcat;
}

BarLevel bar_level_for(std::string_view label, bool terminal) {
    if (terminal) {
        return BarLevel::Lexical;
    }
    if (label.size() > 1 && label.back() == '1') {
        return BarLevel::X1;
    }
    return BarLevel::XP;
}

Grammar::Grammar(std::vector<Rule> rules, std::string start_symbol, std::set<std::string> terminals,
                 std::set<std::string> verb_tags)
    : rules_(std::move(rules)),
      start_(std::move(start_symbol)),
      terminals_(std::move(terminals)),
      verb_tags_(std::move(verb_tags)) {}

bool Grammar::is_terminal(std::string_view symbol) const {
    return terminals_.contains(std::string(symbol));
}

std::set<std::string> Grammar::nonterminals() const {
    std::set<std::string> out;
    for (const auto& rule : rules_) {
        out.insert(rule.mother.label);
    }
    return out;
}

bool Grammar::is_normalized() const {
    return std::all_of(rules_.begin(), rules_.end(), [](const Rule& r) {
        return std::all_of(r.daughters.begin(), r.daughters.end(),
                           [](const DaughterSpec& d) { return d.repetition == Repetition::One; });
    });
}

bool Grammar::is_verbal_argument_rule(const Rule& rule) const {
    if (rule.kind != RuleKind::Argument || rule.is_helper() || rule.daughters.empty()) {
        return false;
    }
    const auto& head = rule.head().category.label;
    if (!is_terminal(head)) {
        return false;
    }
    if (verb_tags_.empty()) {
        return rule.feature(kVsubcat).has_value();
    }
    return verb_tags_.contains(head);
}

std::optional<VSubcat> Grammar::vsubcat_of(const Rule& rule, const FrameInventory& inventory) const {
    if (!is_verbal_argument_rule(rule)) {
        return std::nullopt;
    }
    const auto value = rule.feature(kVsubcat);
    if (!value) {
        return std::nullopt;
    }
    return inventory.find(*value);
}

Grammar parse_grammar(std::string_view text, const FrameInventory& inventory) {
    std::set<std::string> terminals;
    std::set<std::string> verbs;
    std::optional<std::string> start;
    std::size_t start_line = 0;
    std::size_t verbs_line = 0;
    std::vector<RawRule> raw;

    std::istringstream in{std::string(text)};
    std::size_t line_no = 0;
    for (std::string line; std::getline(in, line);) {
        ++line_no;
        const std::string body = trim(strip_comment(line));
        if (body.empty()) {
            continue;
        }
        if (body.find("->") != std::string::npos) {
            raw.push_back(parse_rule_line(body, line_no, inventory));
            continue;
        }
        const auto colon = body.find(':');
        if (colon == std::string::npos) {
            throw GrammarError("syntax error: expected a declaration or a rule", line_no);
        }
        const std::string key = trim(std::string_view(body).substr(0, colon));
        const auto values = split_ws(std::string_view(body).substr(colon + 1));
        for (const auto& v : values) {
            if (!is_label(v)) {
                throw GrammarError("malformed symbol '" + v + "'", line_no);
            }
        }
        if (key == "terminals") {
            terminals.insert(values.begin(), values.end());
        } else if (key == "verbs") {
            verbs.insert(values.begin(), values.end());
            verbs_line = line_no;
        } else if (key == "start") {
            if (values.size() != 1) {
                throw GrammarError("start declaration takes exactly one symbol", line_no);
            }
            if (start) {
                throw GrammarError("start symbol declared twice", line_no);
            }
            start = values.front();
            start_line = line_no;
        } else {
            throw GrammarError("unknown declaration '" + key + "'", line_no);
        }
    }

    std::set<std::string> lhs;
    for (const auto& r : raw) {
        lhs.insert(r.mother);
    }

    std::vector<Rule> rules;
    std::set<std::string> ids;
    std::map<std::string, std::size_t> ordinal;
    for (const auto& r : raw) {
        if (terminals.contains(r.mother)) {
            throw GrammarError("terminal '" + r.mother + "' used as a rule mother", r.line);
        }
        Rule rule;
        rule.id = r.explicit_id ? r.id : r.mother + "/" + std::to_string(++ordinal[r.mother]);
        if (!ids.insert(rule.id).second) {
            throw GrammarError("duplicate rule identifier '" + rule.id + "'", r.line);
        }
        rule.mother.label = r.mother;
        rule.mother.bar_level = bar_level_for(r.mother, false);
        rule.mother.features = r.features;

        std::optional<std::size_t> head;
        for (std::size_t i = 0; i < r.daughters.size(); ++i) {
            const auto& d = r.daughters[i];
            const bool terminal = terminals.contains(d.label);
            if (!terminal && !lhs.contains(d.label)) {
                throw GrammarError("undeclared symbol '" + d.label + "'", r.line);
            }
            rule.daughters.push_back({Category{d.label, bar_level_for(d.label, terminal), {}}, d.repetition});
            if (d.head) {
                if (head) {
                    throw GrammarError("rule marks more than one head daughter", r.line);
                }
                head = i;
            }
        }
        if (!head) {
            if (r.daughters.size() != 1) {
                throw GrammarError("invalid head index: rule with " + std::to_string(r.daughters.size()) +
                                       " daughters must mark one daughter (head)",
                                   r.line);
            }
            head = 0;
        }
        rule.head_index = *head;
        const bool can_vanish = std::all_of(rule.daughters.begin(), rule.daughters.end(), [](const DaughterSpec& d) {
            return d.repetition == Repetition::Optional || d.repetition == Repetition::Star;
        });
        if (can_vanish) {
            throw GrammarError("rule can derive the empty string", r.line);
        }
        rule.kind = (rule.daughters.size() >= 2 && rule.mother.label == rule.head().category.label)
                        ? RuleKind::Adjunct
                        : RuleKind::Argument;
        rule.gr_templates = r.templates;

        const bool head_is_verb = !verbs.empty() && verbs.contains(rule.head().category.label);
        const bool has_vsubcat = rule.mother.features.contains(std::string(kVsubcat));
        if (verbs.empty() || rule.kind != RuleKind::Argument) {
            // Verbal status comes from VSUBCAT alone when no verb tags are declared.
        } else if (head_is_verb && !has_vsubcat && !rule.mother.features.contains(std::string(kPhrasal))) {
            throw GrammarError("verbal argument-rule '" + rule.id + "' carries no VSUBCAT value", r.line);
        }
        if (!verbs.empty() && has_vsubcat && !head_is_verb) {
            throw GrammarError("VSUBCAT on rule '" + rule.id + "' whose head is not a verb tag", r.line);
        }
        if (has_vsubcat && rule.kind == RuleKind::Adjunct) {
            throw GrammarError("VSUBCAT on adjunct-rule '" + rule.id + "'", r.line);
        }
        rules.push_back(std::move(rule));
    }

    for (const auto& v : verbs) {
        if (!terminals.contains(v)) {
            throw GrammarError("verb tag '" + v + "' is not a declared terminal", verbs_line);
        }
    }

    std::string start_symbol;
    if (start) {
        if (!rules.empty() && !lhs.contains(*start)) {
            throw GrammarError("start symbol '" + *start + "' has no rules", start_line);
        }
        start_symbol = *start;
    } else if (!rules.empty()) {
        start_symbol = rules.front().mother.label;
    }

    Grammar grammar(std::move(rules), std::move(start_symbol), std::move(terminals), std::move(verbs));
    check_normalized_structure(normalize_kleene(grammar));
    return grammar;
}

Grammar load_grammar_file(const std::string& path, const FrameInventory& inventory) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open grammar file '" + path + "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse_grammar(buffer.str(), inventory);
    } catch (const GrammarError& e) {
        throw GrammarError(path + ": " + e.what());
    }
}

std::string render_grammar(const Grammar& grammar) {
    std::ostringstream out;
    out << "terminals:";
    for (const auto& t : grammar.terminals()) {
        out << ' ' << t;
    }
    out << '\n';
    if (!grammar.verb_tags().empty()) {
        out << "verbs:";
        for (const auto& v : grammar.verb_tags()) {
            out << ' ' << v;
        }
        out << '\n';
    }
    if (!grammar.start_symbol().empty()) {
        out << "start: " << grammar.start_symbol() << '\n';
    }
    for (const auto& rule : grammar.rules()) {
        out << '[' << rule.id << "] " << rule.mother.label << " ->";
        for (std::size_t i = 0; i < rule.daughters.size(); ++i) {
            const auto& d = rule.daughters[i];
            out << ' ' << d.category.label;
            if (i == rule.head_index) {
                out << "(head)";
            }
            switch (d.repetition) {
            case Repetition::One:
                break;
            case Repetition::Optional:
                out << '?';
                break;
            case Repetition::Star:
                out << '*';
                break;
            case Repetition::Plus:
                out << '+';
                break;
            }
        }
        if (!rule.mother.features.empty()) {
            out << " :";
            bool first = true;
            for (const auto& [name, value] : rule.mother.features) {
                out << (first ? " " : ", ") << name << '=' << value;
                first = false;
            }
        }
        if (!rule.gr_templates.empty()) {
            out << " | gr:";
            for (std::size_t i = 0; i < rule.gr_templates.size(); ++i) {
                const auto& t = rule.gr_templates[i];
                out << (i == 0 ? " " : ", ") << gr_name(t.relation) << '(' << render_slot(t.type_slot) << ", "
                    << render_slot(t.head_slot) << ", " << render_slot(t.dependent_slot);
                if (t.initial_slot.kind != SlotRef::Kind::Unspecified) {
                    out << ", " << render_slot(t.initial_slot);
                }
                out << ')';
            }
        }
        out << '\n';
    }
    return out.str();
}

Grammar normalize_kleene(const Grammar& grammar) {
    std::vector<Rule> out;
    std::vector<Rule> helpers;
    std::set<std::string> helper_made;

    auto helper_for = [&](const Category& item) {
        const std::string name = std::string(1, kHelperPrefix) + item.label + "_list";
        if (helper_made.insert(name).second) {
            Category mother{name, BarLevel::XP, {}};
            Rule rec;
            rec.id = name + "/rec";
            rec.mother = mother;
            rec.daughters = {{item, Repetition::One}, {mother, Repetition::One}};
            rec.head_index = 0;
            rec.kind = RuleKind::Argument;
            Rule base;
            base.id = name + "/base";
            base.mother = mother;
            base.daughters = {{item, Repetition::One}};
            base.head_index = 0;
            base.kind = RuleKind::Argument;
            helpers.push_back(std::move(rec));
            helpers.push_back(std::move(base));
        }
        return Category{name, BarLevel::XP, {}};
    };

    for (const auto& rule : grammar.rules()) {
        const bool marked = std::any_of(rule.daughters.begin(), rule.daughters.end(),
                                        [](const DaughterSpec& d) { return d.repetition != Repetition::One; });
        if (!marked) {
            out.push_back(rule);
            continue;
        }

        // Per daughter: the list of choices; nullopt means "absent".
        std::vector<std::vector<std::optional<Category>>> choices;
        for (const auto& d : rule.daughters) {
            switch (d.repetition) {
            case Repetition::One:
                choices.push_back({d.category});
                break;
            case Repetition::Optional:
                choices.push_back({d.category, std::nullopt});
                break;
            case Repetition::Star:
                choices.push_back({helper_for(d.category), std::nullopt});
                break;
            case Repetition::Plus:
                choices.push_back({helper_for(d.category)});
                break;
            }
        }

        std::vector<std::size_t> pick(choices.size(), 0);
        std::set<std::vector<std::string>> seen;
        std::size_t emitted = 0;
        while (true) {
            Rule expanded;
            expanded.mother = rule.mother;
            expanded.kind = rule.kind;
            std::vector<std::optional<std::size_t>> remap(rule.daughters.size());
            std::vector<std::string> labels;
            for (std::size_t i = 0; i < choices.size(); ++i) {
                const auto& c = choices[i][pick[i]];
                if (c) {
                    remap[i] = expanded.daughters.size();
                    expanded.daughters.push_back({*c, Repetition::One});
                    labels.push_back(c->label);
                }
            }
            const bool self_loop = labels.size() == 1 && labels.front() == rule.mother.label;
            if (!labels.empty() && !self_loop && seen.insert(labels).second) {
                expanded.head_index = *remap[rule.head_index];
                if (expanded.daughters.size() < 2) {
                    expanded.kind = RuleKind::Argument;
                }
                for (const auto& t : rule.gr_templates) {
                    GRTemplate copy = t;
                    bool keep = true;
                    for (SlotRef* slot : {&copy.type_slot, &copy.head_slot, &copy.dependent_slot}) {
                        if (slot->kind != SlotRef::Kind::Daughter) {
                            continue;
                        }
                        const auto& target = remap[slot->path.front() - 1];
                        if (!target) {
                            keep = false;
                            break;
                        }
                        slot->path.front() = *target + 1;
                    }
                    if (keep) {
                        expanded.gr_templates.push_back(std::move(copy));
                    }
                }
                expanded.id = rule.id + "~" + std::to_string(++emitted);
                out.push_back(std::move(expanded));
            }

            bool exhausted = true;
            for (std::size_t k = choices.size(); k > 0; --k) {
                if (++pick[k - 1] < choices[k - 1].size()) {
                    exhausted = false;
                    break;
                }
                pick[k - 1] = 0;
            }
            if (exhausted) {
                break;
            }
        }
    }

    for (auto& h : helpers) {
        out.push_back(std::move(h));
    }
    return Grammar(std::move(out), grammar.start_symbol(), grammar.terminals(), grammar.verb_tags());
}

} // namespace lexglr
