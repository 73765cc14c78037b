#pragma once

#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "lexglr/action_model.hpp"
#include "lexglr/derivation.hpp"
#include "lexglr/grammar.hpp"
#include "lexglr/lr_table.hpp"
#include "lexglr/preprocess.hpp"
#include "lexglr/tree.hpp"

namespace lexglr {

// Readable test failure output for traces.
inline void PrintTo(const TraceStep& step, std::ostream* os) {
    *os << step.state << '/' << step.lookahead << ':' << format_action(step.action);
}

} // namespace lexglr

namespace lexglr::testing {

inline std::string data_path(const std::string& name) { return std::string(LEXGLR_DATA_DIR) + "/" + name; }

/// The shipped demo grammar, its table and a tagger, loaded once per process.
struct Demo {
    LRTable table;
    Tagger tagger;

    static const Demo& get() {
        static const Demo demo;
        return demo;
    }

    ActionModel train(const std::string& treebank) const {
        const auto entries = read_treebank_file(data_path(treebank));
        return train_actions(entries, table).model;
    }

    std::vector<Token> tag(const std::string& sentence) const { return tagger.tag_sentence(sentence); }

private:
    Demo()
        : table(build_table(load_grammar_file(data_path("demo.grammar")))),
          tagger(load_wordlist(data_path("demo.wordlist")),
                 Lemmatizer(load_lemma_exceptions(data_path("demo.lemmas"))), table.grammar().terminals()) {}
};

/// Id of the normalized rule whose identifier is `id`; fails the caller's test otherwise.
inline RuleId rule_id(const LRTable& table, const std::string& id) {
    for (RuleId r = 0; r + 1 < table.num_rules(); ++r) {
        if (table.rule(r).id == id) {
            return r;
        }
    }
    throw std::runtime_error("no rule " + id);
}

} // namespace lexglr::testing
