#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lexglr {

struct Token {
    std::string surface;
    std::string tag;
    std::string lemma;

    friend bool operator==(const Token&, const Token&) = default;
};

/// Splits on whitespace and separates punctuation. Commas are always split off;
/// a full stop only ends a token at the end of the sentence, so abbreviations
/// such as "Gov." survive inside it.
std::vector<std::string> tokenize(std::string_view text);

/// Surface form to candidate tags, first tag preferred.
class Wordlist {
public:
    void add(const std::string& surface, std::vector<std::string> tags);
    /// Exact match first, then the lowercased form. Empty if unlisted.
    const std::vector<std::string>& lookup(std::string_view surface) const;
    std::size_t size() const noexcept { return entries_.size(); }
    std::set<std::string> tags() const;

private:
    std::map<std::string, std::vector<std::string>, std::less<>> entries_;
};

/// `surface<TAB>tag[,tag...]` lines.
Wordlist read_wordlist(std::istream& in);
Wordlist load_wordlist(const std::string& path);

/// Which tags the tagger and lemmatizer treat as verbs, nouns and proper nouns.
struct TagClasses {
    std::set<std::string> verbs{"v"};
    std::set<std::string> nouns{"n"};
    std::string proper_noun = "pn";
    std::string noun = "n";

    bool is_verb(std::string_view tag) const { return verbs.find(std::string(tag)) != verbs.end(); }
    bool is_noun(std::string_view tag) const { return nouns.find(std::string(tag)) != nouns.end(); }
};

struct LemmaException {
    std::string surface;
    std::string tag;
    std::string lemma;
};

std::vector<LemmaException> read_lemma_exceptions(std::istream& in);
std::vector<LemmaException> load_lemma_exceptions(const std::string& path);

/// Exception table plus a few English suffix rules. Rules are applied until the
/// form stops changing, which makes lemmatization idempotent.
class Lemmatizer {
public:
    explicit Lemmatizer(std::span<const LemmaException> exceptions = {}, TagClasses classes = {});

    std::string lemmatize(std::string_view surface, std::string_view tag) const;

private:
    std::string strip_once(const std::string& word, std::string_view tag) const;

    TagClasses classes_;
    std::map<std::pair<std::string, std::string>, std::string> exceptions_;
};

class Tagger {
public:
    /// Throws Error if the wordlist or the fallback tags use a tag outside `terminals`.
    Tagger(Wordlist wordlist, Lemmatizer lemmatizer, std::set<std::string> terminals, TagClasses classes = {});

    /// One token per surface form with its preferred tag.
    std::vector<Token> tag(std::span<const std::string> surfaces) const;
    /// Every combination of listed tags, in odometer order (last token varies
    /// fastest), at most `limit` sequences.
    std::vector<std::vector<Token>> tag_all(std::span<const std::string> surfaces, std::size_t limit) const;

    std::vector<Token> tag_sentence(std::string_view text) const;

private:
    std::vector<std::string> candidates(const std::string& surface) const;

    Wordlist wordlist_;
    Lemmatizer lemmatizer_;
    std::set<std::string> terminals_;
    TagClasses classes_;
};

std::vector<std::string> token_tags(std::span<const Token> tokens);
std::vector<std::string> token_lemmas(std::span<const Token> tokens);
std::vector<std::string> token_surfaces(std::span<const Token> tokens);

} // namespace lexglr
