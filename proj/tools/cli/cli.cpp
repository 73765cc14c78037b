#include "cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lexglr/acquisition.hpp"
#include "lexglr/action_model.hpp"
#include "lexglr/error.hpp"
#include "lexglr/evaluation.hpp"
#include "lexglr/gr.hpp"
#include "lexglr/grammar.hpp"
#include "lexglr/lr_table.hpp"
#include "lexglr/pipeline.hpp"
#include "lexglr/preprocess.hpp"
#include "lexglr/stats.hpp"
#include "lexglr/subcat_lexicon.hpp"
#include "lexglr/tree.hpp"

namespace lexglr::cli {

namespace {

using nlohmann::ordered_json;

/// Missing or unreadable inputs and invalid option values.
class ConfigError : public Error {
public:
    using Error::Error;
};

struct RunConfig {
    std::string grammar;
    std::string wordlist;
    std::string lemma_exceptions;
    std::string model;
    std::string lexicon;
    std::string treebank;
    std::string gold_gr;
    std::string corpus;
    std::string test;
    std::string out;
    std::string format = "text";
    std::size_t n = 1;
    std::size_t cap = 1000;
    double min_count = 1;
    double min_relfreq = 0;
    unsigned threads = 1;
    bool compare = false;
    std::vector<std::string> sentence;

    bool machine() const { return format == "machine-readable"; }
};

std::string require(const std::string& value, const std::string& flag) {
    if (value.empty()) {
        throw ConfigError(flag + " is required");
    }
    return value;
}

void require_file(const std::string& path, const std::string& what) {
    if (!std::filesystem::is_regular_file(path)) {
        throw ConfigError("cannot open " + what + " file '" + path + "'");
    }
}

// Loaders turn malformed configuration files into ConfigError.
template <typename F>
auto load_config(const std::string& path, const std::string& what, F&& loader) {
    require_file(path, what);
    try {
        return loader(path);
    } catch (const FormatError& e) {
        throw ConfigError(what + " file '" + path + "': " + e.what());
    } catch (const ModelMismatchError& e) {
        throw ConfigError(what + " file '" + path + "': " + e.what());
    }
}

std::string fixed(double value) {
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    std::ostringstream os;
    os << std::fixed << std::setprecision(6) << value;
    return os.str();
}

ordered_json json_number(double value) {
    if (!std::isfinite(value)) {
        return nullptr;
    }
    return value;
}

std::vector<std::string> read_lines(const std::string& path) {
    require_file(path, "corpus");
    std::ifstream in(path);
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);) {
        if (line.find_first_not_of(" \t\r") != std::string::npos) {
            lines.push_back(line);
        }
    }
    return lines;
}

class Session {
public:
    explicit Session(const RunConfig& config)
        : config_(config),
          grammar_(load_config(require(config.grammar, "--grammar"), "grammar",
                               [](const std::string& p) { return load_grammar_file(p); })),
          table_(build_table(grammar_)) {}

    const Grammar& grammar() const { return grammar_; }
    const LRTable& table() const { return table_; }

    const ActionModel& model() {
        if (!model_) {
            model_ = load_config(require(config_.model, "--model"), "model",
                                 [&](const std::string& p) { return load_action_model(p, table_); });
        }
        return *model_;
    }

    const SubcatLexicon* lexicon() {
        if (config_.lexicon.empty()) {
            return nullptr;
        }
        if (!lexicon_) {
            lexicon_ = load_config(config_.lexicon, "lexicon", [](const std::string& p) { return load_lexicon(p); });
        }
        return &*lexicon_;
    }

    const Tagger& tagger() {
        if (!tagger_) {
            auto words = load_config(require(config_.wordlist, "--wordlist"), "wordlist",
                                     [](const std::string& p) { return load_wordlist(p); });
            std::vector<LemmaException> exceptions;
            if (!config_.lemma_exceptions.empty()) {
                exceptions = load_config(config_.lemma_exceptions, "lemma exception",
                                         [](const std::string& p) { return load_lemma_exceptions(p); });
            }
            TagClasses classes;
            if (!grammar_.verb_tags().empty()) {
                classes.verbs = grammar_.verb_tags();
            }
            try {
                tagger_.emplace(std::move(words), Lemmatizer(exceptions, classes), grammar_.terminals(), classes);
            } catch (const Error& e) {
                throw ConfigError(e.what());
            }
        }
        return *tagger_;
    }

    std::vector<std::vector<Token>> corpus() {
        std::vector<std::string> lines;
        if (!config_.corpus.empty()) {
            lines = read_lines(config_.corpus);
        } else if (!config_.sentence.empty()) {
            std::string joined;
            for (const auto& w : config_.sentence) {
                joined += (joined.empty() ? "" : " ") + w;
            }
            lines.push_back(joined);
        } else {
            throw ConfigError("--corpus or a sentence is required");
        }
        std::vector<std::vector<Token>> out;
        for (const auto& line : lines) {
            out.push_back(tagger().tag_sentence(line));
        }
        return out;
    }

private:
    const RunConfig& config_;
    Grammar grammar_;
    LRTable table_;
    std::optional<ActionModel> model_;
    std::optional<SubcatLexicon> lexicon_;
    std::optional<Tagger> tagger_;
};

// Output goes to --out when given, otherwise to the command's stream.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) {
                throw ConfigError("cannot write output file '" + path + "'");
            }
        }
        stream_ = path.empty() ? &fallback : &file_;
    }
    std::ostream& get() { return *stream_; }

private:
    std::ofstream file_;
    std::ostream* stream_;
};

std::string join_words(const std::vector<Token>& tokens) {
    std::string s;
    for (const auto& t : tokens) {
        s += (s.empty() ? "" : " ") + t.surface;
    }
    return s;
}

// ---------------------------------------------------------------- commands

int cmd_build_table(const RunConfig& config, std::ostream& out) {
    Session session(config);
    const auto& table = session.table();
    const auto conflicts = table.conflicts();
    if (!config.out.empty()) {
        Sink sink(config.out, out);
        table.dump(sink.get());
    }
    if (config.machine()) {
        ordered_json j;
        j["rules"] = table.num_rules();
        j["states"] = table.num_states();
        j["terminals"] = table.num_terminals();
        j["conflicts"] = ordered_json::array();
        for (const auto& c : conflicts) {
            ordered_json row{{"state", c.state}, {"lookahead", table.symbol_name(c.lookahead)}};
            for (const auto& a : c.actions) {
                row["actions"].push_back(format_action(a));
            }
            j["conflicts"].push_back(row);
        }
        out << j.dump(2) << '\n';
        return kExitOk;
    }
    out << "rules=" << table.num_rules() << '\n'
        << "states=" << table.num_states() << '\n'
        << "terminals=" << table.num_terminals() << '\n'
        << "conflicts=" << conflicts.size() << '\n';
    for (const auto& c : conflicts) {
        out << "conflict state=" << c.state << " lookahead=" << table.symbol_name(c.lookahead) << " actions=";
        for (std::size_t i = 0; i < c.actions.size(); ++i) {
            out << (i ? "," : "") << format_action(c.actions[i]);
        }
        out << '\n';
    }
    return kExitOk;
}

int cmd_train(const RunConfig& config, std::ostream& out, std::ostream& err) {
    Session session(config);
    const auto treebank = load_config(require(config.treebank, "--treebank"), "treebank",
                                      [](const std::string& p) { return read_treebank_file(p); });
    const auto result = train_actions(treebank, session.table());
    for (const auto& s : result.skipped) {
        err << "warning: skipped tree " << s.id << ": " << s.reason << '\n';
    }
    {
        Sink sink(require(config.out, "--out"), out);
        result.model.write(sink.get(), session.table());
    }
    if (config.machine()) {
        ordered_json j{{"sentences", treebank.size()}, {"used", result.used}, {"skipped", ordered_json::array()}};
        for (const auto& s : result.skipped) {
            j["skipped"].push_back({{"id", s.id}, {"reason", s.reason}});
        }
        out << j.dump(2) << '\n';
    } else {
        out << "sentences=" << treebank.size() << '\n'
            << "used=" << result.used << '\n'
            << "skipped=" << result.skipped.size() << '\n';
    }
    return kExitOk;
}

ordered_json analysis_json(const Analysis& a, std::size_t rank) {
    ordered_json j{{"rank", rank},
                   {"structural", json_number(a.ranked.structural_logprob)},
                   {"lexical", json_number(a.ranked.lexical_logprob)},
                   {"total", json_number(a.ranked.total_score)},
                   {"tree", format_tree(a.tree)},
                   {"grs", ordered_json::array()},
                   {"frames", ordered_json::array()}};
    for (const auto& gr : a.grs) {
        j["grs"].push_back(format_gr(gr));
    }
    for (const auto& f : a.ranked.frames) {
        j["frames"].push_back(f.lemma + "/" + f.frame.symbol());
    }
    return j;
}

int cmd_parse(const RunConfig& config, std::ostream& out, std::ostream& err) {
    Session session(config);
    const auto corpus = session.corpus();
    const auto results =
        analyze_corpus(corpus, session.table(), session.model(), session.lexicon(), config.n, config.threads);
    Sink sink(config.out, out);
    auto& os = sink.get();
    const std::string mode = session.lexicon() ? "lexicalized" : "baseline";
    ordered_json j{{"mode", mode}, {"sentences", ordered_json::array()}};
    if (!config.machine()) {
        os << "mode=" << mode << '\n';
    }
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        if (!r.parsed()) {
            err << "warning: sentence " << i + 1 << ": " << r.error.value_or("no parse") << '\n';
        }
        if (config.machine()) {
            ordered_json s{{"index", i + 1}, {"text", join_words(r.tokens)}, {"parsed", r.parsed()}};
            s["analyses"] = ordered_json::array();
            for (std::size_t k = 0; k < r.analyses.size(); ++k) {
                s["analyses"].push_back(analysis_json(r.analyses[k], k + 1));
            }
            if (r.error) {
                s["error"] = *r.error;
            }
            j["sentences"].push_back(s);
            continue;
        }
        os << "sentence=" << i + 1 << " analyses=" << r.analyses.size() << " text=" << join_words(r.tokens) << '\n';
        for (std::size_t k = 0; k < r.analyses.size(); ++k) {
            const auto& a = r.analyses[k];
            os << "analysis=" << k + 1 << " structural=" << fixed(a.ranked.structural_logprob)
               << " lexical=" << fixed(a.ranked.lexical_logprob) << " total=" << fixed(a.ranked.total_score) << '\n'
               << "tree=" << format_tree(a.tree) << '\n';
            for (const auto& gr : a.grs) {
                os << "gr=" << format_gr(gr) << '\n';
            }
        }
    }
    if (config.machine()) {
        os << j.dump(2) << '\n';
    }
    return kExitOk;
}

int cmd_acquire(const RunConfig& config, std::ostream& out) {
    Session session(config);
    const auto corpus = session.corpus();
    const auto store = observe_corpus(corpus, session.table(), session.model(), {config.cap, config.threads});
    const auto lexicon = hypothesize_entries(store, config.min_count, config.min_relfreq);
    {
        Sink sink(require(config.out, "--out"), out);
        lexicon.write(sink.get());
    }
    if (config.machine()) {
        ordered_json j{{"sentences", store.sentences_seen},
                       {"parsed", store.sentences_parsed},
                       {"skipped", store.sentences_skipped},
                       {"entries", lexicon.size()},
                       {"verbs", ordered_json::object()}};
        for (const auto& lemma : lexicon.lemmas()) {
            j["verbs"][lemma] = {{"entries", lexicon.entries_for(lemma).size()},
                                 {"observations", store.count(lemma)}};
        }
        out << j.dump(2) << '\n';
        return kExitOk;
    }
    out << "sentences=" << store.sentences_seen << '\n'
        << "parsed=" << store.sentences_parsed << '\n'
        << "skipped=" << store.sentences_skipped << '\n'
        << "entries=" << lexicon.size() << '\n';
    for (const auto& lemma : lexicon.lemmas()) {
        out << "verb=" << lemma << " entries=" << lexicon.entries_for(lemma).size()
            << " observations=" << store.count(lemma) << '\n';
    }
    return kExitOk;
}

// -------------------------------------------------------------- evaluation

struct ModeOutput {
    std::vector<std::optional<Tree>> trees;
    std::vector<std::vector<GR>> grs;
    std::size_t unparsed = 0;
};

ModeOutput run_mode(Session& session, const std::vector<std::vector<Token>>& corpus, const SubcatLexicon* lexicon,
                    std::size_t n, unsigned threads) {
    ModeOutput mode;
    for (auto& r : analyze_corpus(corpus, session.table(), session.model(), lexicon, n, threads)) {
        if (r.parsed()) {
            mode.trees.emplace_back(r.analyses.front().tree);
            mode.grs.push_back(r.analyses.front().grs);
        } else {
            mode.trees.emplace_back(std::nullopt);
            mode.grs.emplace_back();
            ++mode.unparsed;
        }
    }
    return mode;
}

void check_aligned(std::size_t test, std::size_t gold, const std::string& what) {
    if (test != gold) {
        throw Error(what + ": test has " + std::to_string(test) + " sentences but gold has " + std::to_string(gold) +
                    "; first unaligned index is " + std::to_string(std::min(test, gold) + 1));
    }
}

BracketReport score_brackets(const std::vector<std::optional<Tree>>& test, const std::vector<TreebankEntry>& gold) {
    check_aligned(test.size(), gold.size(), "bracket evaluation");
    std::vector<BracketCounts> counts;
    for (std::size_t i = 0; i < test.size(); ++i) {
        if (test[i]) {
            try {
                counts.push_back(bracket_scores(*test[i], gold[i].tree));
            } catch (const Error& e) {
                throw Error("sentence " + std::to_string(i + 1) + ": " + e.what());
            }
        } else {
            BracketCounts missing;
            missing.gold_total = extract_brackets(gold[i].tree).size();
            counts.push_back(missing);
        }
    }
    return aggregate_brackets(counts);
}

void print_brackets(std::ostream& os, const BracketReport& r) {
    os << "sentences=" << r.sentences << '\n'
       << "recall=" << fixed(r.recall) << '\n'
       << "precision=" << fixed(r.precision) << '\n'
       << "mean_crossings=" << fixed(r.mean_crossings) << '\n'
       << "zero_crossings_pct=" << fixed(100.0 * r.zero_crossings_pct) << '\n';
}

ordered_json brackets_json(const BracketReport& r) {
    return {{"sentences", r.sentences},
            {"matched", r.matched},
            {"test_total", r.test_total},
            {"gold_total", r.gold_total},
            {"recall", r.recall},
            {"precision", r.precision},
            {"mean_crossings", r.mean_crossings},
            {"zero_crossings_pct", 100.0 * r.zero_crossings_pct}};
}

void print_grs(std::ostream& os, const GRReport& r) {
    os << "sentences=" << r.sentences << '\n'
       << "matched=" << r.matched << '\n'
       << "test_total=" << r.test_total << '\n'
       << "gold_total=" << r.gold_total << '\n'
       << "recall=" << fixed(r.recall) << '\n'
       << "precision=" << fixed(r.precision) << '\n';
    for (const auto& [rel, c] : r.by_relation) {
        os << "relation=" << gr_name(rel) << " returned=" << c.returned << " correct=" << c.correct
           << " gold=" << c.gold << '\n';
    }
}

ordered_json grs_json(const GRReport& r) {
    ordered_json j{{"sentences", r.sentences},       {"matched", r.matched},
                   {"test_total", r.test_total},     {"gold_total", r.gold_total},
                   {"recall", r.recall},             {"precision", r.precision},
                   {"relations", ordered_json::object()}};
    for (const auto& [rel, c] : r.by_relation) {
        j["relations"][std::string(gr_name(rel))] = {
            {"returned", c.returned}, {"correct", c.correct}, {"gold", c.gold}};
    }
    return j;
}

std::vector<std::vector<GR>> load_gr_sets(const std::string& path, const std::string& what) {
    return load_config(path, what, [](const std::string& p) {
        std::ifstream in(p);
        return read_gr_file(in);
    });
}

int cmd_compare(const RunConfig& config, std::ostream& out);

int cmd_eval_bracket(const RunConfig& config, std::ostream& out) {
    if (config.compare) {
        return cmd_compare(config, out);
    }
    const auto gold = load_config(require(config.treebank, "--treebank"), "treebank",
                                  [](const std::string& p) { return read_treebank_file(p); });
    std::vector<std::optional<Tree>> test;
    if (!config.test.empty()) {
        for (auto& e : load_config(config.test, "test treebank",
                                   [](const std::string& p) { return read_treebank_file(p); })) {
            test.emplace_back(std::move(e.tree));
        }
    } else {
        Session session(config);
        test = run_mode(session, session.corpus(), session.lexicon(), 1, config.threads).trees;
    }
    const auto report = score_brackets(test, gold);
    Sink sink(config.out, out);
    if (config.machine()) {
        sink.get() << brackets_json(report).dump(2) << '\n';
    } else {
        print_brackets(sink.get(), report);
    }
    return kExitOk;
}

int cmd_eval_gr(const RunConfig& config, std::ostream& out) {
    if (config.compare) {
        return cmd_compare(config, out);
    }
    const auto gold = load_gr_sets(require(config.gold_gr, "--gold-gr"), "gold GR");
    std::vector<std::vector<GR>> test;
    if (!config.test.empty()) {
        test = load_gr_sets(config.test, "test GR");
    } else {
        Session session(config);
        test = run_mode(session, session.corpus(), session.lexicon(), 1, config.threads).grs;
    }
    check_aligned(test.size(), gold.size(), "GR evaluation");
    const auto report = evaluate_grs(test, gold);
    Sink sink(config.out, out);
    if (config.machine()) {
        sink.get() << grs_json(report).dump(2) << '\n';
    } else {
        print_grs(sink.get(), report);
    }
    return kExitOk;
}

ordered_json ttest_json(const TTestResult& t) {
    return {{"t", json_number(t.t)}, {"df", t.df}, {"p", t.p_two_sided}, {"saturated", t.saturated}};
}

int cmd_compare(const RunConfig& config, std::ostream& out) {
    Session session(config);
    if (session.lexicon() == nullptr) {
        throw ConfigError("--lexicon is required for a comparison");
    }
    const auto gold_grs = load_gr_sets(require(config.gold_gr, "--gold-gr"), "gold GR");
    std::optional<std::vector<TreebankEntry>> gold_trees;
    if (!config.treebank.empty()) {
        gold_trees = load_config(config.treebank, "treebank", [](const std::string& p) { return read_treebank_file(p); });
    }
    const auto corpus = session.corpus();
    const auto baseline = run_mode(session, corpus, nullptr, 1, config.threads);
    const auto lexical = run_mode(session, corpus, session.lexicon(), 1, config.threads);

    check_aligned(corpus.size(), gold_grs.size(), "GR evaluation");
    const auto gr_base = evaluate_grs(baseline.grs, gold_grs);
    const auto gr_lex = evaluate_grs(lexical.grs, gold_grs);
    const auto hist_base = relation_histogram(baseline.grs);
    const auto hist_lex = relation_histogram(lexical.grs);
    const auto hist_gold = relation_histogram(gold_grs);
    std::optional<TTestResult> t_precision;
    std::optional<TTestResult> t_recall;
    if (corpus.size() >= 2) {
        t_precision = paired_t_test(gr_lex.sentence_precision, gr_base.sentence_precision);
        t_recall = paired_t_test(gr_lex.sentence_recall, gr_base.sentence_recall);
    }
    std::optional<BracketReport> br_base;
    std::optional<BracketReport> br_lex;
    if (gold_trees) {
        br_base = score_brackets(baseline.trees, *gold_trees);
        br_lex = score_brackets(lexical.trees, *gold_trees);
    }

    Sink sink(config.out, out);
    auto& os = sink.get();
    if (config.machine()) {
        ordered_json j;
        for (const auto& [name, gr, br, mode, hist] :
             {std::tuple{"baseline", &gr_base, &br_base, &baseline, &hist_base},
              std::tuple{"lexicalized", &gr_lex, &br_lex, &lexical, &hist_lex}}) {
            ordered_json m{{"unparsed", mode->unparsed}, {"gr", grs_json(*gr)}};
            if (*br) {
                m["bracket"] = brackets_json(**br);
            }
            m["histogram"] = ordered_json::object();
            for (const auto& [rel, c] : hist->counts) {
                m["histogram"][std::string(gr_name(rel))] = c;
            }
            m["mean_grs_per_sentence"] = hist->mean_per_sentence;
            j[name] = m;
        }
        j["gold"]["histogram"] = ordered_json::object();
        for (const auto& [rel, c] : hist_gold.counts) {
            j["gold"]["histogram"][std::string(gr_name(rel))] = c;
        }
        j["gold"]["mean_grs_per_sentence"] = hist_gold.mean_per_sentence;
        j["ttest"]["precision"] = t_precision ? ttest_json(*t_precision) : ordered_json(nullptr);
        j["ttest"]["recall"] = t_recall ? ttest_json(*t_recall) : ordered_json(nullptr);
        os << j.dump(2) << '\n';
        return kExitOk;
    }
    for (const auto& [name, gr, br, mode, hist] :
         {std::tuple{"baseline", &gr_base, &br_base, &baseline, &hist_base},
          std::tuple{"lexicalized", &gr_lex, &br_lex, &lexical, &hist_lex}}) {
        os << "[" << name << " gr]\n"
           << "unparsed=" << mode->unparsed << '\n';
        print_grs(os, *gr);
        if (*br) {
            os << "[" << name << " bracket]\n";
            print_brackets(os, **br);
        }
        os << "[" << name << " histogram]\n";
        for (const auto& [rel, c] : hist->counts) {
            os << gr_name(rel) << '=' << c << '\n';
        }
        os << "mean_per_sentence=" << fixed(hist->mean_per_sentence) << '\n';
    }
    os << "[gold histogram]\n";
    for (const auto& [rel, c] : hist_gold.counts) {
        os << gr_name(rel) << '=' << c << '\n';
    }
    os << "mean_per_sentence=" << fixed(hist_gold.mean_per_sentence) << '\n';
    for (const auto& [name, t] : {std::pair{"precision", &t_precision}, std::pair{"recall", &t_recall}}) {
        os << "[ttest " << name << "]\n";
        if (*t) {
            os << "t=" << fixed((*t)->t) << '\n'
               << "df=" << (*t)->df << '\n'
               << "p=" << fixed((*t)->p_two_sided) << '\n';
        } else {
            os << "t=nan\ndf=0\np=nan\n";
        }
    }
    return kExitOk;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Probabilistic GLR parsing with subcategorisation-frame reranking"};
    app.require_subcommand(1);
    RunConfig config;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--grammar", config.grammar, "Grammar file");
        cmd->add_option("--format", config.format, "Output format")
            ->check(CLI::IsMember({"text", "machine-readable"}));
        cmd->add_option("--out", config.out, "Output file");
    };
    auto add_parsing = [&](CLI::App* cmd) {
        cmd->add_option("--model", config.model, "Action model file");
        cmd->add_option("--wordlist", config.wordlist, "Wordlist file");
        cmd->add_option("--lemma-exceptions", config.lemma_exceptions, "Lemma exception file");
        cmd->add_option("--lexicon", config.lexicon, "Subcategorisation lexicon file");
        cmd->add_option("--corpus", config.corpus, "Raw corpus, one sentence per line");
        cmd->add_option("--threads", config.threads, "Worker threads")->check(CLI::Range(1u, 256u));
    };

    auto* build = app.add_subcommand("build-table", "Build the LALR(1) table and list its conflicts");
    add_common(build);

    auto* train = app.add_subcommand("train", "Train the action model on a treebank");
    add_common(train);
    train->add_option("--treebank", config.treebank, "Training treebank");

    auto* parse = app.add_subcommand("parse", "Parse sentences and print ranked analyses");
    add_common(parse);
    add_parsing(parse);
    parse->add_option("--n", config.n, "Analyses per sentence")->check(CLI::PositiveNumber);
    parse->add_option("sentence", config.sentence, "Sentence to parse when --corpus is absent");

    auto* acquire = app.add_subcommand("acquire", "Acquire a subcategorisation lexicon from a corpus");
    add_common(acquire);
    add_parsing(acquire);
    acquire->add_option("--cap", config.cap, "Observations kept per verb")->check(CLI::NonNegativeNumber);
    acquire->add_option("--min-count", config.min_count, "Minimum frame count")->check(CLI::NonNegativeNumber);
    acquire->add_option("--min-relfreq", config.min_relfreq, "Minimum relative frequency")
        ->check(CLI::Range(0.0, 1.0));

    auto* eval_bracket = app.add_subcommand("eval-bracket", "Unlabelled bracket evaluation");
    add_common(eval_bracket);
    add_parsing(eval_bracket);
    eval_bracket->add_option("--treebank", config.treebank, "Gold treebank");
    eval_bracket->add_option("--gold-gr", config.gold_gr, "Gold GR file (with --compare)");
    eval_bracket->add_option("--test", config.test, "Test treebank instead of parsing --corpus");
    eval_bracket->add_flag("--compare", config.compare, "Compare baseline and lexicalized parsing");

    auto* eval_gr = app.add_subcommand("eval-gr", "Grammatical relation evaluation");
    add_common(eval_gr);
    add_parsing(eval_gr);
    eval_gr->add_option("--gold-gr", config.gold_gr, "Gold GR file");
    eval_gr->add_option("--treebank", config.treebank, "Gold treebank (with --compare)");
    eval_gr->add_option("--test", config.test, "Test GR file instead of parsing --corpus");
    eval_gr->add_flag("--compare", config.compare, "Compare baseline and lexicalized parsing");

    auto* compare = app.add_subcommand("compare", "Baseline versus lexicalized evaluation with t-tests");
    add_common(compare);
    add_parsing(compare);
    compare->add_option("--gold-gr", config.gold_gr, "Gold GR file");
    compare->add_option("--treebank", config.treebank, "Gold treebank for bracket scores");

    std::vector<const char*> argv;
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    }

    try {
        if (build->parsed()) {
            return cmd_build_table(config, out);
        }
        if (train->parsed()) {
            return cmd_train(config, out, err);
        }
        if (parse->parsed()) {
            return cmd_parse(config, out, err);
        }
        if (acquire->parsed()) {
            return cmd_acquire(config, out);
        }
        if (eval_bracket->parsed()) {
            return cmd_eval_bracket(config, out);
        }
        if (eval_gr->parsed()) {
            return cmd_eval_gr(config, out);
        }
        return cmd_compare(config, out);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}

} // namespace lexglr::cli
