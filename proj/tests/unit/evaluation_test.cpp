#include <gtest/gtest.h>

#include <fstream>

#include "fixtures.hpp"
#include "lexglr/error.hpp"
#include "lexglr/evaluation.hpp"

namespace lexglr {
namespace {

std::vector<GR> grs(std::initializer_list<const char*> items) {
    std::vector<GR> out;
    for (const char* s : items) {
        out.push_back(parse_gr(s));
    }
    return out;
}

TEST(Brackets, WorkedHearExample) {
    const Tree test = parse_tree("(VP will hear (NP a greeting) (PP from (NP Gov. Mark Hatfield)))");
    const Tree gold = parse_tree("(VP will hear (NP a greeting (PP from (NP Gov. Mark Hatfield))))");
    const auto c = bracket_scores(test, gold);
    EXPECT_EQ(c.matched, 3u);
    EXPECT_EQ(c.test_total, 4u);
    EXPECT_EQ(c.gold_total, 4u);
    EXPECT_DOUBLE_EQ(c.recall(), 0.75);
    EXPECT_DOUBLE_EQ(c.precision(), 0.75);
    EXPECT_EQ(c.crossings, 0u);
}

TEST(Brackets, SpansSkipUnaryAndHelpers) {
    const Tree t = parse_tree("(S (NP (n dogs)) (@X (v bark) (adv loudly)))");
    const auto spans = extract_brackets(t);
    ASSERT_EQ(spans.size(), 1u);
    EXPECT_EQ(spans[0].start, 0u);
    EXPECT_EQ(spans[0].end, 3u);
}

TEST(Brackets, Crossing) {
    const Tree test = parse_tree("(S (X a b) c)");
    const Tree gold = parse_tree("(S a (X b c))");
    const auto c = bracket_scores(test, gold);
    EXPECT_EQ(c.crossings, 1u);
    EXPECT_EQ(c.matched, 1u);
    EXPECT_TRUE((Span{0, 2, ""}.crosses(Span{1, 3, ""})));
    EXPECT_FALSE((Span{0, 3, ""}.crosses(Span{1, 3, ""})));
}

TEST(Brackets, DuplicateSpansAreAMultiset) {
    const Tree test = parse_tree("(S (S a b))");
    const Tree gold = parse_tree("(S a b)");
    const auto c = bracket_scores(test, gold);
    EXPECT_EQ(c.test_total, 2u);
    EXPECT_EQ(c.matched, 1u);
}

TEST(Brackets, LengthMismatchThrows) {
    EXPECT_THROW(bracket_scores(parse_tree("(S a b)"), parse_tree("(S a b c)")), Error);
}

TEST(Brackets, Aggregate) {
    const std::vector<BracketCounts> sentences{{3, 4, 4, 0}, {1, 2, 3, 2}};
    const auto r = aggregate_brackets(sentences);
    EXPECT_EQ(r.sentences, 2u);
    EXPECT_DOUBLE_EQ(r.recall, 4.0 / 7.0);
    EXPECT_DOUBLE_EQ(r.precision, 4.0 / 6.0);
    EXPECT_DOUBLE_EQ(r.mean_crossings, 1.0);
    EXPECT_DOUBLE_EQ(r.zero_crossings_pct, 0.5);
    EXPECT_THROW(aggregate_brackets({}), Error);
}

TEST(GRScores, WorkedHearExample) {
    const auto test = grs({"ncsubj(hear,meeting,_)", "dobj(hear,greeting,_)", "iobj(from,hear,Hatfield)"});
    const auto gold = grs({"ncsubj(hear,meeting,_)", "dobj(hear,greeting,_)"});
    const auto c = gr_scores(test, gold);
    EXPECT_EQ(c.matched, 2u);
    EXPECT_EQ(c.test_total, 3u);
    EXPECT_NEAR(c.precision(), 0.667, 0.001);
    EXPECT_DOUBLE_EQ(c.recall(), 1.0);
    EXPECT_EQ(c.correct_by_relation.at(GRType::Dobj), 1u);
}

TEST(GRScores, OneLevelSubsumption) {
    const GR gold = parse_gr("ncsubj(hear,meeting,_)");
    EXPECT_TRUE(gr_match(parse_gr("subj(hear,meeting,_)"), gold));
    EXPECT_FALSE(gr_match(parse_gr("arg(hear,meeting)"), gold));
    EXPECT_FALSE(gr_match(gold, parse_gr("subj(hear,meeting,_)"))); // gold more general than test
    EXPECT_TRUE(gr_match(parse_gr("obj(hear,greeting)"), parse_gr("dobj(hear,greeting,_)")));
    EXPECT_FALSE(gr_match(parse_gr("dobj(hear,meeting,_)"), parse_gr("dobj(hear,greeting,_)")));
}

TEST(GRScores, UnspecifiedFillersOnTestSide) {
    EXPECT_TRUE(gr_match(parse_gr("ncmod(_,man,old)"), parse_gr("ncmod(adj,man,old)")));
    EXPECT_FALSE(gr_match(parse_gr("ncmod(adj,man,old)"), parse_gr("ncmod(_,man,old)")));
    EXPECT_FALSE(gr_match(parse_gr("iobj(to,give,Kim)"), parse_gr("iobj(from,give,Kim)")));
}

TEST(GRScores, OneToOneAssignment) {
    const auto twice = grs({"dobj(see,man,_)", "obj(see,man)"});
    const auto once = grs({"dobj(see,man,_)"});
    const auto c = gr_scores(twice, once);
    EXPECT_EQ(c.matched, 1u);
    // The exact pair is preferred, and a general test relation still finds the specific gold one.
    const auto test = grs({"subj(a,b,_)", "ncsubj(a,b,_)"});
    const auto gold = grs({"ncsubj(a,b,_)", "xsubj(a,b,_)"});
    EXPECT_EQ(gr_scores(test, gold).matched, 2u);
}

TEST(GRScores, EmptySetsScoreOne) {
    const auto c = gr_scores({}, {});
    EXPECT_DOUBLE_EQ(c.recall(), 1.0);
    EXPECT_DOUBLE_EQ(c.precision(), 1.0);
}

TEST(GRReportTest, PerRelationAndSentenceScores) {
    const std::vector<std::vector<GR>> test{grs({"ncsubj(a,b,_)", "dobj(a,c,_)"}), grs({"dobj(x,y,_)"})};
    const std::vector<std::vector<GR>> gold{grs({"ncsubj(a,b,_)"}), grs({"dobj(x,z,_)"})};
    const auto r = evaluate_grs(test, gold);
    EXPECT_EQ(r.matched, 1u);
    EXPECT_EQ(r.by_relation.at(GRType::Dobj).returned, 2u);
    EXPECT_EQ(r.by_relation.at(GRType::Dobj).correct, 0u);
    EXPECT_EQ(r.by_relation.at(GRType::Ncsubj).gold, 1u);
    EXPECT_EQ(r.sentence_precision, (std::vector<double>{0.5, 0.0}));
    EXPECT_EQ(r.sentence_recall, (std::vector<double>{1.0, 0.0}));
    EXPECT_THROW(evaluate_grs(test, std::span(gold).first(1)), Error);
}

TEST(GRReportTest, Histogram) {
    const std::vector<std::vector<GR>> sets{grs({"ncsubj(a,b,_)", "dobj(a,c,_)"}), grs({"dobj(x,y,_)"})};
    const auto h = relation_histogram(sets);
    EXPECT_EQ(h.total, 3u);
    EXPECT_EQ(h.counts.at(GRType::Dobj), 2u);
    EXPECT_DOUBLE_EQ(h.mean_per_sentence, 1.5);
}

TEST(SelfEvaluation, ShippedGoldFiles) {
    for (const char* name : {"demo.trees", "adversarial.trees", "ppsuite.trees", "hear_gold.trees"}) {
        for (const auto& e : read_treebank_file(testing::data_path(name))) {
            const auto c = bracket_scores(e.tree, e.tree);
            EXPECT_EQ(c.recall(), 1.0) << name;
            EXPECT_EQ(c.precision(), 1.0) << name;
            EXPECT_EQ(c.crossings, 0u) << name;
        }
    }
    for (const char* name : {"demo.gr", "ppsuite.gr", "hear_gold.gr"}) {
        std::ifstream in(testing::data_path(name));
        const auto sets = read_gr_file(in);
        const auto r = evaluate_grs(sets, sets);
        EXPECT_EQ(r.recall, 1.0) << name;
        EXPECT_EQ(r.precision, 1.0) << name;
    }
}

} // namespace
} // namespace lexglr
