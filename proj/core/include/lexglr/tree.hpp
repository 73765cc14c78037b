#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lexglr {

/// A bracketed phrase-structure tree as stored in treebank files.
///
/// Three node shapes occur: internal nodes `(NP ...)`, preterminals `(n dog)`
/// (label is the tag, `word` set, no children) and bare words, which carry a
/// word and an empty label. Bare words let partial bracketings such as
/// `(VP will hear (NP a greeting))` be scored without tags.
struct Tree {
    std::string label;
    std::optional<std::string> word;
    std::vector<Tree> children;

    static Tree preterminal(std::string tag, std::string word) { return {std::move(tag), std::move(word), {}}; }
    static Tree bare_word(std::string word) { return {{}, std::move(word), {}}; }

    bool is_leaf() const noexcept { return word.has_value(); }

    friend bool operator==(const Tree&, const Tree&) = default;
};

struct TreebankEntry {
    std::string id;
    Tree tree;
};

Tree parse_tree(std::string_view text);
std::string format_tree(const Tree& tree);

/// Reads consecutive bracketed trees; a tree may span several lines. Lines
/// starting with `#` are comments. Entries are numbered from 1 as their id.
std::vector<TreebankEntry> read_treebank(std::istream& in);
std::vector<TreebankEntry> read_treebank_file(const std::string& path);
void write_treebank(std::ostream& out, const std::vector<Tree>& trees);

std::size_t leaf_count(const Tree& tree);
std::vector<std::string> leaf_words(const Tree& tree);
/// Tags of the preterminals; throws FormatError if the tree has bare words.
std::vector<std::string> leaf_tags(const Tree& tree);

} // namespace lexglr
