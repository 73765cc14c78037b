#include <gtest/gtest.h>

#include <sstream>

#include "fixtures.hpp"
#include "lexglr/error.hpp"
#include "lexglr/preprocess.hpp"

namespace lexglr {
namespace {

using Strings = std::vector<std::string>;

TEST(Tokenize, SplitsFinalStopAndCommas) {
    EXPECT_EQ(tokenize("the statewide meeting will hear a greeting from Gov. Mark Hatfield."),
              (Strings{"the", "statewide", "meeting", "will", "hear", "a", "greeting", "from", "Gov.", "Mark",
                       "Hatfield", "."}));
    EXPECT_EQ(tokenize("Kim, Paul and Sandy ."), (Strings{"Kim", ",", "Paul", "and", "Sandy", "."}));
    EXPECT_EQ(tokenize("  spaced   out  "), (Strings{"spaced", "out"}));
    EXPECT_TRUE(tokenize("").empty());
}

TEST(Wordlist, LookupFallsBackToLowercase) {
    std::istringstream in("# c\nthe\tdet\nleave\tv,n\nGov.\tpn\n");
    const Wordlist w = read_wordlist(in);
    EXPECT_EQ(w.size(), 3u);
    EXPECT_EQ(w.lookup("The"), Strings{"det"});
    EXPECT_EQ(w.lookup("leave"), (Strings{"v", "n"}));
    EXPECT_EQ(w.lookup("Gov."), Strings{"pn"});
    EXPECT_TRUE(w.lookup("gov.").empty());
    EXPECT_EQ(w.tags(), (std::set<std::string>{"det", "n", "pn", "v"}));
    std::istringstream bad("the\n");
    EXPECT_THROW(read_wordlist(bad), FormatError);
}

TEST(Lemmatizer, SuffixRules) {
    const Lemmatizer lem;
    const std::vector<std::tuple<const char*, const char*, const char*>> cases{
        {"watched", "v", "watch"}, {"hears", "v", "hear"},   {"intends", "v", "intend"},
        {"places", "v", "place"},  {"placed", "v", "place"}, {"running", "v", "run"},
        {"hoping", "v", "hope"},   {"loved", "v", "love"},   {"agreed", "v", "agreed"},
        {"boxes", "n", "box"},     {"studies", "n", "study"}, {"glasses", "n", "glass"},
        {"bus", "n", "bus"},       {"analysis", "n", "analysis"}, {"Reports", "n", "report"},
        {"meeting", "n", "meeting"}, {"the", "det", "the"},  {"IBM", "pn", "IBM"},
    };
    for (const auto& [surface, tag, lemma] : cases) {
        EXPECT_EQ(lem.lemmatize(surface, tag), lemma) << surface;
    }
}

TEST(Lemmatizer, ExceptionsWinAndAreIdempotent) {
    const auto exceptions = load_lemma_exceptions(testing::data_path("demo.lemmas"));
    const Lemmatizer lem(exceptions);
    EXPECT_EQ(lem.lemmatize("heard", "v"), "hear");
    EXPECT_EQ(lem.lemmatize("children", "n"), "child");
    EXPECT_EQ(lem.lemmatize("greeting", "n"), "greeting");
    for (const char* w : {"heard", "saw", "watches", "running", "children", "studies", "hoping", "box"}) {
        for (const char* tag : {"v", "n"}) {
            const auto once = lem.lemmatize(w, tag);
            EXPECT_EQ(lem.lemmatize(once, tag), once) << w << '/' << tag;
        }
    }
}

TEST(Tagger, UnknownWordsFallBack) {
    const auto& demo = testing::Demo::get();
    const auto tokens = demo.tag("Sandy saw widgets.");
    ASSERT_EQ(tokens.size(), 4u);
    EXPECT_EQ(tokens[0].tag, "pn");
    EXPECT_EQ(tokens[0].lemma, "Sandy");
    EXPECT_EQ(tokens[1].lemma, "see");
    EXPECT_EQ(tokens[2].tag, "n");
    EXPECT_EQ(tokens[2].lemma, "widget");
    EXPECT_EQ(tokens[3].tag, "punct");
}

TEST(Tagger, AllCombinationsInOdometerOrder) {
    const auto& demo = testing::Demo::get();
    const Strings words{"leave", "leave"};
    const auto all = demo.tagger.tag_all(words, 10);
    ASSERT_EQ(all.size(), 4u);
    EXPECT_EQ(token_tags(all[0]), (Strings{"v", "v"}));
    EXPECT_EQ(token_tags(all[1]), (Strings{"v", "n"}));
    EXPECT_EQ(token_tags(all[2]), (Strings{"n", "v"}));
    EXPECT_EQ(demo.tagger.tag_all(words, 3).size(), 3u);
}

TEST(Tagger, RejectsTagsOutsideGrammar) {
    Wordlist w;
    w.add("quickly", {"adv"});
    EXPECT_THROW(Tagger(w, Lemmatizer{}, {"n", "v", "pn"}), Error);
}

} // namespace
} // namespace lexglr
