#include "lexglr/tree.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "lexglr/error.hpp"

namespace lexglr {

namespace {

class SexpReader {
public:
    explicit SexpReader(std::string_view text) : text_(text) {}

    bool at_end() {
        skip_space();
        return pos_ >= text_.size();
    }

    std::size_t line() const {
        std::size_t n = 1;
        for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
            n += text_[i] == '\n';
        }
        return n;
    }

    Tree read_tree() {
        skip_space();
        expect('(');
        skip_space();
        if (peek() == '(') {
            // Unlabelled wrapper: ( (S ...) )
            Tree inner = read_tree();
            skip_space();
            expect(')');
            return inner;
        }
        Tree node;
        node.label = read_atom();
        std::vector<Tree> children;
        std::size_t atoms = 0;
        while (true) {
            skip_space();
            if (pos_ >= text_.size()) {
                throw FormatError("unbalanced brackets in tree", line());
            }
            if (peek() == ')') {
                ++pos_;
                break;
            }
            if (peek() == '(') {
                children.push_back(read_tree());
            } else {
                children.push_back(Tree::bare_word(read_atom()));
                ++atoms;
            }
        }
        if (children.empty()) {
            throw FormatError("node '" + node.label + "' has no children", line());
        }
        if (children.size() == 1 && atoms == 1) {
            node.word = std::move(*children.front().word);
            return node;
        }
        node.children = std::move(children);
        return node;
    }

private:
    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    void skip_space() {
        while (pos_ < text_.size()) {
            if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
                ++pos_;
            } else if (text_[pos_] == '#' && (pos_ == 0 || text_[pos_ - 1] == '\n')) {
                while (pos_ < text_.size() && text_[pos_] != '\n') {
                    ++pos_;
                }
            } else {
                break;
            }
        }
    }

    void expect(char c) {
        if (peek() != c) {
            throw FormatError(std::string("expected '") + c + "' in tree", line());
        }
        ++pos_;
    }

    std::string read_atom() {
        const auto start = pos_;
        while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) && text_[pos_] != '(' &&
               text_[pos_] != ')') {
            ++pos_;
        }
        if (start == pos_) {
            throw FormatError("expected a label or word in tree", line());
        }
        return std::string(text_.substr(start, pos_ - start));
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

void format_into(const Tree& tree, std::string& out) {
    if (tree.is_leaf()) {
        if (tree.label.empty()) {
            out += *tree.word;
        } else {
            out += '(' + tree.label + ' ' + *tree.word + ')';
        }
        return;
    }
    out += '(' + tree.label;
    for (const auto& child : tree.children) {
        out += ' ';
        format_into(child, out);
    }
    out += ')';
}

void collect_leaves(const Tree& tree, std::vector<const Tree*>& out) {
    if (tree.is_leaf()) {
        out.push_back(&tree);
        return;
    }
    for (const auto& child : tree.children) {
        collect_leaves(child, out);
    }
}

} // namespace

Tree parse_tree(std::string_view text) {
    SexpReader reader(text);
    Tree tree = reader.read_tree();
    if (!reader.at_end()) {
        throw FormatError("trailing text after tree", reader.line());
    }
    return tree;
}

std::string format_tree(const Tree& tree) {
    std::string out;
    format_into(tree, out);
    return out;
}

std::vector<TreebankEntry> read_treebank(std::istream& in) {
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();
    SexpReader reader(text);
    std::vector<TreebankEntry> entries;
    while (!reader.at_end()) {
        entries.push_back({std::to_string(entries.size() + 1), reader.read_tree()});
    }
    return entries;
}

std::vector<TreebankEntry> read_treebank_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open treebank file '" + path + "'");
    }
    try {
        return read_treebank(in);
    } catch (const FormatError& e) {
        throw FormatError(path + ": " + e.what());
    }
}

void write_treebank(std::ostream& out, const std::vector<Tree>& trees) {
    for (const auto& tree : trees) {
        out << format_tree(tree) << '\n';
    }
}

std::size_t leaf_count(const Tree& tree) {
    std::vector<const Tree*> leaves;
    collect_leaves(tree, leaves);
    return leaves.size();
}

std::vector<std::string> leaf_words(const Tree& tree) {
    std::vector<const Tree*> leaves;
    collect_leaves(tree, leaves);
    std::vector<std::string> out;
    for (const auto* leaf : leaves) {
        out.push_back(*leaf->word);
    }
    return out;
}

std::vector<std::string> leaf_tags(const Tree& tree) {
    std::vector<const Tree*> leaves;
    collect_leaves(tree, leaves);
    std::vector<std::string> out;
    for (const auto* leaf : leaves) {
        if (leaf->label.empty()) {
            throw FormatError("untagged word '" + *leaf->word + "' in tree");
        }
        out.push_back(leaf->label);
    }
    return out;
}

} // namespace lexglr
