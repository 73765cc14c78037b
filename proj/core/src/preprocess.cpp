#include "lexglr/preprocess.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "lexglr/error.hpp"

namespace lexglr {

namespace {

bool is_punct(char c) {
    return std::ispunct(static_cast<unsigned char>(c)) != 0;
}

bool is_vowel(char c) {
    return std::string_view("aeiou").find(c) != std::string_view::npos;
}

std::string lowercase(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

bool ends_with(std::string_view s, std::string_view suffix) {
    return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

bool has_vowel(std::string_view s) {
    return std::any_of(s.begin(), s.end(), [](char c) { return is_vowel(c) || c == 'y'; });
}

// Restores a stem left by removing -ing or -ed: undoubles a final consonant and
// adds back a silent e after short consonant-vowel-consonant stems.
std::string repair_stem(std::string stem) {
    const auto n = stem.size();
    if (n >= 3 && stem[n - 1] == stem[n - 2] && !is_vowel(stem[n - 1]) &&
        std::string_view("lsz").find(stem[n - 1]) == std::string_view::npos) {
        stem.pop_back();
        return stem;
    }
    if (ends_with(stem, "v") || ends_with(stem, "c")) {
        return stem + "e";
    }
    if (n == 3 && !is_vowel(stem[0]) && is_vowel(stem[1]) && stem[1] != 'e' && !is_vowel(stem[2]) &&
        std::string_view("wxy").find(stem[2]) == std::string_view::npos) {
        return stem + "e";
    }
    return stem;
}

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, '\t')) {
        out.push_back(field);
    }
    return out;
}

} // namespace

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> chunks;
    std::istringstream in{std::string(text)};
    for (std::string chunk; in >> chunk;) {
        chunks.push_back(chunk);
    }
    std::vector<std::string> out;
    for (std::size_t c = 0; c < chunks.size(); ++c) {
        const bool last = c + 1 == chunks.size();
        const auto& chunk = chunks[c];
        if (std::all_of(chunk.begin(), chunk.end(), is_punct)) {
            out.push_back(chunk);
            continue;
        }
        // Commas split everywhere, other punctuation only at the edges.
        std::vector<std::string> pieces;
        std::string piece;
        for (const char ch : chunk) {
            if (ch == ',') {
                if (!piece.empty()) {
                    pieces.push_back(piece);
                    piece.clear();
                }
                pieces.emplace_back(",");
            } else {
                piece += ch;
            }
        }
        if (!piece.empty()) {
            pieces.push_back(piece);
        }
        for (std::size_t p = 0; p < pieces.size(); ++p) {
            std::string word = pieces[p];
            if (word == ",") {
                out.push_back(word);
                continue;
            }
            const bool final_piece = last && p + 1 == pieces.size();
            std::size_t begin = 0;
            while (begin < word.size() && is_punct(word[begin]) && word[begin] != '.' && word[begin] != '-') {
                out.emplace_back(1, word[begin]);
                ++begin;
            }
            std::vector<std::string> trailing;
            std::size_t end = word.size();
            while (end > begin && is_punct(word[end - 1]) && word[end - 1] != '-') {
                const char ch = word[end - 1];
                if (ch == '.' && !final_piece) {
                    break;
                }
                trailing.emplace_back(1, ch);
                --end;
            }
            if (end > begin) {
                out.push_back(word.substr(begin, end - begin));
            }
            out.insert(out.end(), trailing.rbegin(), trailing.rend());
        }
    }
    return out;
}

void Wordlist::add(const std::string& surface, std::vector<std::string> tags) {
    auto& slot = entries_[surface];
    for (auto& t : tags) {
        if (std::find(slot.begin(), slot.end(), t) == slot.end()) {
            slot.push_back(std::move(t));
        }
    }
}

const std::vector<std::string>& Wordlist::lookup(std::string_view surface) const {
    static const std::vector<std::string> none;
    if (auto it = entries_.find(surface); it != entries_.end()) {
        return it->second;
    }
    if (auto it = entries_.find(lowercase(surface)); it != entries_.end()) {
        return it->second;
    }
    return none;
}

std::set<std::string> Wordlist::tags() const {
    std::set<std::string> out;
    for (const auto& [surface, tags] : entries_) {
        out.insert(tags.begin(), tags.end());
    }
    return out;
}

Wordlist read_wordlist(std::istream& in) {
    Wordlist list;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line.front() == '#') {
            continue;
        }
        const auto fields = split_tabs(line);
        if (fields.size() != 2 || fields[0].empty() || fields[1].empty()) {
            throw FormatError("expected surface<TAB>tag[,tag...]", lineno);
        }
        std::vector<std::string> tags;
        std::istringstream tag_in(fields[1]);
        for (std::string tag; std::getline(tag_in, tag, ',');) {
            if (tag.empty()) {
                throw FormatError("empty tag for '" + fields[0] + "'", lineno);
            }
            tags.push_back(tag);
        }
        list.add(fields[0], std::move(tags));
    }
    return list;
}

Wordlist load_wordlist(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open wordlist file '" + path + "'");
    }
    return read_wordlist(in);
}

std::vector<LemmaException> read_lemma_exceptions(std::istream& in) {
    std::vector<LemmaException> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line.front() == '#') {
            continue;
        }
        const auto fields = split_tabs(line);
        if (fields.size() != 3 || fields[0].empty() || fields[1].empty() || fields[2].empty()) {
            throw FormatError("expected surface<TAB>tag<TAB>lemma", lineno);
        }
        out.push_back({fields[0], fields[1], fields[2]});
    }
    return out;
}

std::vector<LemmaException> load_lemma_exceptions(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open lemma exception file '" + path + "'");
    }
    return read_lemma_exceptions(in);
}

Lemmatizer::Lemmatizer(std::span<const LemmaException> exceptions, TagClasses classes)
    : classes_(std::move(classes)) {
    for (const auto& e : exceptions) {
        exceptions_[{lowercase(e.surface), e.tag}] = e.lemma;
    }
    // A lemma must map to itself, or rules could strip it further.
    for (const auto& e : exceptions) {
        exceptions_.emplace(std::make_pair(lowercase(e.lemma), e.tag), e.lemma);
    }
}

std::string Lemmatizer::strip_once(const std::string& w, std::string_view tag) const {
    const bool verb = classes_.is_verb(tag);
    if (!verb && !classes_.is_noun(tag)) {
        return w;
    }
    if (ends_with(w, "ies") && w.size() > 4) {
        return w.substr(0, w.size() - 3) + "y";
    }
    if (ends_with(w, "es") && w.size() > 3) {
        for (const auto* sibilant : {"sses", "xes", "zes", "ches", "shes"}) {
            if (ends_with(w, sibilant)) {
                return w.substr(0, w.size() - 2);
            }
        }
        return w.substr(0, w.size() - 1);
    }
    if (ends_with(w, "s") && w.size() > 2 && !ends_with(w, "ss") && !ends_with(w, "us") && !ends_with(w, "is")) {
        return w.substr(0, w.size() - 1);
    }
    if (!verb) {
        return w;
    }
    if (ends_with(w, "ing")) {
        const auto stem = w.substr(0, w.size() - 3);
        if (stem.size() >= 3 && has_vowel(stem)) {
            return repair_stem(stem);
        }
        return w;
    }
    if (ends_with(w, "ed") && !ends_with(w, "eed")) {
        const auto stem = w.substr(0, w.size() - 2);
        if (stem.size() >= 3 && has_vowel(stem)) {
            return repair_stem(stem);
        }
    }
    return w;
}

std::string Lemmatizer::lemmatize(std::string_view surface, std::string_view tag) const {
    const bool proper = tag == classes_.proper_noun;
    std::string word = proper ? std::string(surface) : lowercase(surface);
    for (;;) {
        if (auto it = exceptions_.find({lowercase(word), std::string(tag)}); it != exceptions_.end()) {
            return it->second;
        }
        if (proper) {
            return word;
        }
        auto next = strip_once(word, tag);
        if (next == word) {
            return word;
        }
        word = std::move(next);
    }
}

Tagger::Tagger(Wordlist wordlist, Lemmatizer lemmatizer, std::set<std::string> terminals, TagClasses classes)
    : wordlist_(std::move(wordlist)),
      lemmatizer_(std::move(lemmatizer)),
      terminals_(std::move(terminals)),
      classes_(std::move(classes)) {
    for (const auto& t : wordlist_.tags()) {
        if (!terminals_.contains(t)) {
            throw Error("wordlist tag '" + t + "' is not a terminal of the grammar");
        }
    }
    for (const auto& t : {classes_.proper_noun, classes_.noun}) {
        if (!terminals_.contains(t)) {
            throw Error("fallback tag '" + t + "' is not a terminal of the grammar");
        }
    }
}

std::vector<std::string> Tagger::candidates(const std::string& surface) const {
    const auto& listed = wordlist_.lookup(surface);
    if (!listed.empty()) {
        return listed;
    }
    const bool capital = !surface.empty() && std::isupper(static_cast<unsigned char>(surface.front()));
    return {capital ? classes_.proper_noun : classes_.noun};
}

std::vector<Token> Tagger::tag(std::span<const std::string> surfaces) const {
    std::vector<Token> out;
    out.reserve(surfaces.size());
    for (const auto& s : surfaces) {
        const auto tag = candidates(s).front();
        out.push_back({s, tag, lemmatizer_.lemmatize(s, tag)});
    }
    return out;
}

std::vector<std::vector<Token>> Tagger::tag_all(std::span<const std::string> surfaces, std::size_t limit) const {
    std::vector<std::vector<std::string>> options;
    for (const auto& s : surfaces) {
        options.push_back(candidates(s));
    }
    std::vector<std::vector<Token>> out;
    std::vector<std::size_t> pick(surfaces.size(), 0);
    while (out.size() < limit) {
        std::vector<Token> seq;
        for (std::size_t i = 0; i < surfaces.size(); ++i) {
            const auto& tag = options[i][pick[i]];
            seq.push_back({surfaces[i], tag, lemmatizer_.lemmatize(surfaces[i], tag)});
        }
        out.push_back(std::move(seq));
        std::size_t k = pick.size();
        for (; k > 0; --k) {
            if (++pick[k - 1] < options[k - 1].size()) {
                break;
            }
            pick[k - 1] = 0;
        }
        if (k == 0) {
            break;
        }
    }
    return out;
}

std::vector<Token> Tagger::tag_sentence(std::string_view text) const {
    const auto words = tokenize(text);
    return tag(words);
}

std::vector<std::string> token_tags(std::span<const Token> tokens) {
    std::vector<std::string> out;
    for (const auto& t : tokens) {
        out.push_back(t.tag);
    }
    return out;
}

std::vector<std::string> token_lemmas(std::span<const Token> tokens) {
    std::vector<std::string> out;
    for (const auto& t : tokens) {
        out.push_back(t.lemma);
    }
    return out;
}

std::vector<std::string> token_surfaces(std::span<const Token> tokens) {
    std::vector<std::string> out;
    for (const auto& t : tokens) {
        out.push_back(t.surface);
    }
    return out;
}

} // namespace lexglr
