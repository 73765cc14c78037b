#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "fixtures.hpp"
#include "lexglr/error.hpp"
#include "lexglr/glr_parser.hpp"
#include "lexglr/nbest.hpp"

namespace lexglr {
namespace {

using testing::Demo;
using testing::rule_id;

// The (state, punct) class holding the NP-vs-VP attachment reduce/reduce conflict.
StateId attachment_state(const LRTable& table) {
    const RuleId np_mod = rule_id(table, "np_mod");
    for (const auto& c : table.conflicts()) {
        if (c.actions.size() == 2 && c.actions[0] == Action::reduce(np_mod)) {
            return c.state;
        }
    }
    throw std::runtime_error("no attachment conflict");
}

TEST(ActionModel, UntrainedIsUniformWithinClass) {
    const auto& table = Demo::get().table;
    const ActionModel model(table);
    for (const auto* c : model.classes()) {
        for (std::size_t i = 0; i < c->actions.size(); ++i) {
            EXPECT_DOUBLE_EQ(c->probability(i), 1.0 / static_cast<double>(c->actions.size()));
        }
    }
}

TEST(ActionModel, DemoTreebankHandCounts) {
    // Two of the three demo trees attach a PP to the object NP before the full
    // stop; none attaches one to the verb. Add-1: (2+1)/(2+2) and (0+1)/(2+2).
    const auto& table = Demo::get().table;
    const ActionModel model = Demo::get().train("demo.trees");
    const StateId s = attachment_state(table);
    const SymbolId punct = *table.terminal_id("punct");
    const Action np_mod = Action::reduce(rule_id(table, "np_mod"));
    const Action vp_np_pp = Action::reduce(rule_id(table, "vp_np_pp"));
    EXPECT_EQ(model.count(s, punct, np_mod), 2u);
    EXPECT_EQ(model.count(s, punct, vp_np_pp), 0u);
    EXPECT_DOUBLE_EQ(model.probability(s, punct, np_mod), 0.75);
    EXPECT_DOUBLE_EQ(model.probability(s, punct, vp_np_pp), 0.25);
    // No tree ends without punctuation, so that class stays uniform.
    EXPECT_DOUBLE_EQ(model.probability(s, table.end_marker(), np_mod), 0.5);
}

TEST(ActionModel, AdversarialTreebankHandCounts) {
    const auto& table = Demo::get().table;
    const ActionModel model = Demo::get().train("adversarial.trees");
    const StateId s = attachment_state(table);
    const SymbolId punct = *table.terminal_id("punct");
    EXPECT_DOUBLE_EQ(model.probability(s, punct, Action::reduce(rule_id(table, "vp_np_pp"))), 5.0 / 6.0);
}

TEST(ActionModel, HandMultipliedDerivation) {
    // "Kim saw Gov. Mark Hatfield ." goes through two conflict classes, both
    // trained once on the winning action by the demo treebank: 2/3 * 2/3.
    const auto& demo = Demo::get();
    const ActionModel model = demo.train("demo.trees");
    const auto tokens = encode_tags(demo.table, token_tags(demo.tag("Kim saw Gov. Mark Hatfield.")));
    const Forest f = glr_parse(tokens, demo.table);
    const auto best = unpack_n_best(f, demo.table, model, 5);
    ASSERT_EQ(best.size(), 1u);
    EXPECT_NEAR(best[0].logprob, std::log(4.0 / 9.0), 1e-12);
    EXPECT_NEAR(derivation_logprob(best[0].derivation, model), std::log(4.0 / 9.0), 1e-12);
}

TEST(ActionModel, TrainingSkipsUnderivableTrees) {
    std::istringstream in("(T (S (NP (pn Kim)) (VP (v slept))) (punct .))\n"
                          "(T (NP (det the) (n man)))\n");
    const auto entries = read_treebank(in);
    const auto result = train_actions(entries, Demo::get().table);
    EXPECT_EQ(result.used, 1u);
    ASSERT_EQ(result.skipped.size(), 1u);
    EXPECT_EQ(result.skipped[0].id, "2");
}

TEST(ActionModel, UnseenClassUsesFloor) {
    const ActionModel model(Demo::get().table);
    // State 0 never reduces.
    EXPECT_DOUBLE_EQ(model.logprob(0, 0, Action::reduce(0)), kUnseenActionLogProb);
    EXPECT_NEAR(std::exp(kUnseenActionLogProb), 1e-6, 1e-18);
}

TEST(ActionModel, WriteReadRoundTrip) {
    const auto& table = Demo::get().table;
    const ActionModel model = Demo::get().train("demo.trees");
    std::stringstream buf;
    model.write(buf, table);
    const ActionModel back = read_action_model(buf, table);
    ASSERT_EQ(back.classes().size(), model.classes().size());
    for (const auto* c : model.classes()) {
        for (std::size_t i = 0; i < c->actions.size(); ++i) {
            EXPECT_EQ(back.count(c->state, c->lookahead, c->actions[i]), c->counts[i]);
        }
    }
    std::stringstream again;
    back.write(again, table);
    EXPECT_EQ(again.str(), [&] {
        std::stringstream s;
        model.write(s, table);
        return s.str();
    }());
}

TEST(ActionModel, MismatchedTableRejected) {
    const auto& table = Demo::get().table;
    const auto other = build_table(parse_grammar("terminals: a\nstart: S\nS -> a\n"));
    const ActionModel model(table);
    EXPECT_THROW(model.check_compatible(other), ModelMismatchError);
    std::stringstream buf;
    model.write(buf, table);
    EXPECT_THROW(read_action_model(buf, other), ModelMismatchError);
    const auto tokens = encode_tags(other, std::vector<std::string>{"a"});
    EXPECT_THROW(unpack_n_best(glr_parse(tokens, other), other, model, 1), ModelMismatchError);
}

TEST(ActionModel, ObserveRejectsIllegalStep) {
    ActionModel model(Demo::get().table);
    const std::vector<TraceStep> bogus{{0, 0, Action::reduce(3)}};
    EXPECT_THROW(model.observe(bogus), ModelMismatchError);
}

TEST(ActionModel, MalformedFileRejected) {
    std::istringstream in("# signature 0\nnot a row\n");
    EXPECT_THROW(read_action_model(in, Demo::get().table), Error);
}

} // namespace
} // namespace lexglr
