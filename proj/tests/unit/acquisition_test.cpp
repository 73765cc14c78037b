#include <gtest/gtest.h>

#include <cmath>
#include <fstream>

#include "fixtures.hpp"
#include "lexglr/acquisition.hpp"

namespace lexglr {
namespace {

using testing::Demo;

std::vector<std::vector<Token>> load_corpus(const std::string& name) {
    std::ifstream in(testing::data_path(name));
    std::vector<std::vector<Token>> out;
    for (std::string line; std::getline(in, line);) {
        if (!line.empty()) {
            out.push_back(Demo::get().tag(line));
        }
    }
    return out;
}

TEST(ObservationStore, CapStopsRecording) {
    ObservationStore store(2);
    const auto np = FrameInventory::standard().get("NP");
    EXPECT_TRUE(store.add("see", {np, 0}));
    EXPECT_TRUE(store.add("see", {np, 1}));
    EXPECT_FALSE(store.add("see", {np, 2}));
    EXPECT_TRUE(store.add("hear", {np, 2}));
    EXPECT_EQ(store.count("see"), 2u);
    EXPECT_EQ(store.observations_dropped, 1u);
    EXPECT_EQ(store.observations().at("see").back().sentence, 1u);
}

TEST(Acquisition, ObservesFramesOfTopParse) {
    const auto& demo = Demo::get();
    const auto model = demo.train("adversarial.trees");
    const auto corpus = load_corpus("acquire.txt");
    const auto store = observe_corpus(corpus, demo.table, model);
    EXPECT_EQ(store.sentences_seen, corpus.size());
    EXPECT_EQ(store.sentences_skipped, 1u);
    EXPECT_EQ(store.sentences_parsed + store.sentences_skipped, store.sentences_seen);
    EXPECT_EQ(store.count("put"), 4u);
    for (const auto& o : store.observations().at("put")) {
        EXPECT_EQ(o.frame.symbol(), "NP_PP");
    }
    EXPECT_EQ(store.observations().at("intend").front().frame.symbol(), "VPINF");
}

TEST(Acquisition, ThreadCountDoesNotChangeResult) {
    const auto& demo = Demo::get();
    const auto model = demo.train("adversarial.trees");
    const auto corpus = load_corpus("acquire.txt");
    const auto one = observe_corpus(corpus, demo.table, model, {1000, 1});
    const auto four = observe_corpus(corpus, demo.table, model, {1000, 4});
    ASSERT_EQ(one.observations().size(), four.observations().size());
    for (const auto& [lemma, obs] : one.observations()) {
        const auto& other = four.observations().at(lemma);
        ASSERT_EQ(obs.size(), other.size());
        for (std::size_t i = 0; i < obs.size(); ++i) {
            EXPECT_EQ(obs[i].frame, other[i].frame);
            EXPECT_EQ(obs[i].sentence, other[i].sentence);
        }
    }
}

TEST(Acquisition, HypothesizeFiltersAndRenormalizes) {
    const auto& inv = FrameInventory::standard();
    ObservationStore store;
    for (std::size_t i = 0; i < 6; ++i) {
        store.add("see", {inv.get("NP"), i});
    }
    for (std::size_t i = 0; i < 3; ++i) {
        store.add("see", {inv.get("NP_PP"), i});
    }
    store.add("see", {inv.get("PP"), 9});
    const auto all = hypothesize_entries(store);
    EXPECT_DOUBLE_EQ(*all.relfreq("see", inv.get("PP")), 0.1);
    const auto filtered = hypothesize_entries(store, 2, 0.2);
    EXPECT_FALSE(filtered.relfreq("see", inv.get("PP")));
    EXPECT_DOUBLE_EQ(*filtered.relfreq("see", inv.get("NP")), 6.0 / 9.0);
    const auto strict = hypothesize_entries(store, 1, 0.5);
    EXPECT_DOUBLE_EQ(*strict.relfreq("see", inv.get("NP")), 1.0);
    EXPECT_EQ(strict.entries_for("see").size(), 1u);
}

TEST(Acquisition, EmptyCorpus) {
    const auto& demo = Demo::get();
    const auto store = observe_corpus({}, demo.table, ActionModel(demo.table));
    EXPECT_TRUE(store.empty());
    EXPECT_TRUE(hypothesize_entries(store).empty());
}

} // namespace
} // namespace lexglr
