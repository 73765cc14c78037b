#include <gtest/gtest.h>

#include <algorithm>

#include "cyk_oracle.hpp"
#include "fixtures.hpp"
#include "lexglr/error.hpp"
#include "lexglr/glr_parser.hpp"
#include "random_grammar.hpp"

namespace lexglr {
namespace {

using testing::Demo;

std::vector<DerivNode> sorted(std::vector<DerivNode> v) {
    std::sort(v.begin(), v.end());
    return v;
}

Forest parse_words(const std::string& sentence) {
    const auto tags = token_tags(Demo::get().tag(sentence));
    return glr_parse(tags, Demo::get().table);
}

TEST(Glr, UnambiguousSentence) {
    const Forest f = parse_words("the man saw a telescope.");
    ASSERT_FALSE(f.empty());
    EXPECT_EQ(count_derivations(f), 1u);
}

TEST(Glr, PpAttachmentIsAmbiguous) {
    const Forest f = parse_words("Kim saw a man with a telescope.");
    EXPECT_EQ(count_derivations(f), 2u);
    const auto trees = unpack_all(f);
    ASSERT_EQ(trees.size(), 2u);
    EXPECT_NE(trees[0], trees[1]);
}

TEST(Glr, TwoPpsGiveFourReadings) {
    // v NP PP PP: two readings inside the object NP, two with the last PP as verb argument.
    const Forest f = parse_words("Kim saw a man with a telescope in the park.");
    const auto& table = Demo::get().table;
    const auto tokens = encode_tags(table, token_tags(Demo::get().tag("Kim saw a man with a telescope in the park.")));
    EXPECT_EQ(count_derivations(f), oracle::enumerate_derivations(table, tokens).size());
    EXPECT_EQ(count_derivations(f), 4u);
}

TEST(Glr, PackedNodesAreUniquePerSpan) {
    const Forest f = parse_words("Kim saw a man with a telescope in the park.");
    std::set<std::tuple<SymbolId, std::uint32_t, std::uint32_t>> keys;
    for (std::uint32_t id = 0; id < f.num_nodes(); ++id) {
        const auto& n = f.node(id);
        EXPECT_TRUE(keys.emplace(n.symbol, n.start, n.end).second);
        EXPECT_EQ(f.find(n.symbol, n.start, n.end), id);
    }
}

TEST(Glr, OutOfCoverageGivesEmptyForest) {
    const Forest f = glr_parse(std::vector<std::string>{"det", "det"}, Demo::get().table);
    EXPECT_TRUE(f.empty());
    EXPECT_EQ(count_derivations(f), 0u);
    EXPECT_TRUE(unpack_all(f).empty());
}

TEST(Glr, EmptyInputGivesEmptyForest) {
    EXPECT_TRUE(glr_parse(std::vector<SymbolId>{}, Demo::get().table).empty());
}

TEST(Glr, UnknownTagNamesPosition) {
    try {
        encode_tags(Demo::get().table, std::vector<std::string>{"pn", "v", "zz"});
        FAIL();
    } catch (const UnknownTerminalError& e) {
        EXPECT_EQ(e.symbol(), "zz");
        EXPECT_EQ(e.position(), 2u);
    }
}

TEST(Glr, UnpackLimitThrows) {
    const Forest f = parse_words("Kim saw a man with a telescope in the park.");
    EXPECT_THROW(unpack_all(f, 3), Error);
}

TEST(Glr, MatchesCykOnRandomGrammars) {
    std::size_t checked = 0;
    for (std::uint32_t seed = 100; seed < 110; ++seed) {
        const auto rg = oracle::make_random_grammar(seed, 15, 10);
        const auto table = build_table(parse_grammar(rg.text));
        std::vector<std::string> terminals(table.grammar().terminals().begin(), table.grammar().terminals().end());
        auto inputs = rg.sentences;
        const auto noise = oracle::random_strings(seed, terminals, 10, 8);
        inputs.insert(inputs.end(), noise.begin(), noise.end());
        for (const auto& s : inputs) {
            const auto tokens = encode_tags(table, s);
            const auto expected = oracle::enumerate_derivations(table, tokens);
            const auto actual = sorted(unpack_all(glr_parse(tokens, table)));
            EXPECT_EQ(actual, expected) << rg.text;
            ++checked;
        }
    }
    EXPECT_GE(checked, 100u);
}

TEST(Glr, LeftAndRightRecursionAgreeWithOracle) {
    const auto table = build_table(parse_grammar("terminals: a\nstart: S\nS -> S(head) S\nS -> a\n"));
    for (std::size_t n = 1; n <= 8; ++n) {
        const std::vector<SymbolId> tokens(n, *table.terminal_id("a"));
        const Forest f = glr_parse(tokens, table);
        EXPECT_EQ(sorted(unpack_all(f)), oracle::enumerate_derivations(table, tokens)) << n;
    }
    // Catalan(7) binary bracketings of 8 tokens.
    const std::vector<SymbolId> eight(8, *table.terminal_id("a"));
    EXPECT_EQ(count_derivations(glr_parse(eight, table)), 429u);
}

TEST(Derivation, TraceRoundTrip) {
    const auto& table = Demo::get().table;
    const auto tokens = encode_tags(table, token_tags(Demo::get().tag("Kim saw a man with a telescope in the park.")));
    for (const auto& tree : unpack_all(glr_parse(tokens, table))) {
        const auto trace = compute_trace(tree, tokens, table);
        EXPECT_EQ(trace.back().action, Action::accept());
        EXPECT_EQ(replay_trace(trace, tokens, table), tree);
    }
}

TEST(Derivation, TraceLengthIsShiftsPlusReducesPlusAccept) {
    const auto& table = Demo::get().table;
    const auto tokens = encode_tags(table, std::vector<std::string>{"pn", "v"});
    const auto trees = unpack_all(glr_parse(tokens, table));
    ASSERT_EQ(trees.size(), 1u);
    // shift pn, reduce NP, shift v, reduce VP, reduce S, reduce T, accept
    EXPECT_EQ(compute_trace(trees[0], tokens, table).size(), 7u);
}

TEST(Derivation, InvalidTraceThrows) {
    const auto& table = Demo::get().table;
    const auto tokens = encode_tags(table, std::vector<std::string>{"pn", "v"});
    auto trace = compute_trace(unpack_all(glr_parse(tokens, table))[0], tokens, table);
    trace.pop_back();
    EXPECT_THROW(replay_trace(trace, tokens, table), DerivationError);
    const DerivNode bogus{0, 0, 2, {DerivNode::token(0), DerivNode::token(1)}};
    EXPECT_THROW(compute_trace(bogus, tokens, table), DerivationError);
}

TEST(Derivation, SurfaceTreeSplicesHelpers) {
    const auto& demo = Demo::get();
    const auto toks = demo.tag("Kim saw Gov. Mark Hatfield.");
    const auto tokens = encode_tags(demo.table, token_tags(toks));
    const auto trees = unpack_all(glr_parse(tokens, demo.table));
    ASSERT_EQ(trees.size(), 1u);
    const auto words = token_surfaces(toks);
    EXPECT_EQ(format_tree(to_tree(trees[0], demo.table, tokens, words)),
              "(T (S (NP (pn Kim)) (VP (v saw) (NP (pn Gov.) (pn Mark) (pn Hatfield)))) (punct .))");
    EXPECT_EQ(head_token(trees[0], demo.table.grammar()), 1u);
}

TEST(Forest, FindTreeLocatesGold) {
    const auto& table = Demo::get().table;
    for (const auto& entry : read_treebank_file(testing::data_path("adversarial.trees"))) {
        const auto tokens = encode_tags(table, leaf_tags(entry.tree));
        const Forest f = glr_parse(tokens, table);
        const auto found = find_tree(f, table, entry.tree);
        ASSERT_TRUE(found) << entry.id;
        EXPECT_EQ(to_tree(*found, table, tokens, leaf_words(entry.tree)), entry.tree);
    }
}

TEST(Forest, LiveNodesCoverEveryDerivation) {
    const Forest f = parse_words("Kim saw a man with a telescope in the park.");
    const auto live = live_nodes(f);
    ASSERT_TRUE(f.root());
    EXPECT_TRUE(live[*f.root()]);
    for (std::uint32_t id = 0; id < f.num_nodes(); ++id) {
        if (!live[id]) {
            continue;
        }
        for (const auto& alt : f.node(id).alternatives) {
            for (const auto& d : alt.daughters) {
                if (!d.is_token()) {
                    EXPECT_TRUE(live[d.index]);
                }
            }
        }
    }
}

} // namespace
} // namespace lexglr
