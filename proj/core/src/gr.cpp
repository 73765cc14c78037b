#include "lexglr/gr.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "lexglr/error.hpp"

namespace lexglr {

namespace {

struct GRInfo {
    GRType type;
    std::string_view name;
    GRArity arity;
    std::vector<GRType> parents;
};

const std::array<GRInfo, kGRTypeCount>& gr_table() {
    using enum GRType;
    static const std::array<GRInfo, kGRTypeCount> table{{
        {Dependent, "dependent", GRArity::TypeHeadDep, {}},
        {Mod, "mod", GRArity::TypeHeadDep, {Dependent}},
        {Ncmod, "ncmod", GRArity::TypeHeadDep, {Mod}},
        {Xmod, "xmod", GRArity::TypeHeadDep, {Mod}},
        {Cmod, "cmod", GRArity::TypeHeadDep, {Mod}},
        {ArgMod, "arg_mod", GRArity::TypeHeadDepInitial, {Dependent}},
        {Arg, "arg", GRArity::HeadDep, {Dependent}},
        {Subj, "subj", GRArity::HeadDepInitial, {Arg, SubjOrDobj}},
        {Ncsubj, "ncsubj", GRArity::HeadDepInitial, {Subj}},
        {Xsubj, "xsubj", GRArity::HeadDepInitial, {Subj}},
        {Csubj, "csubj", GRArity::HeadDepInitial, {Subj}},
        {SubjOrDobj, "subj_or_dobj", GRArity::HeadDep, {Arg}},
        {Comp, "comp", GRArity::HeadDep, {Arg}},
        {Obj, "obj", GRArity::HeadDep, {Comp}},
        {Dobj, "dobj", GRArity::HeadDepInitial, {Obj, SubjOrDobj}},
        {Obj2, "obj2", GRArity::HeadDep, {Obj}},
        {Iobj, "iobj", GRArity::TypeHeadDep, {Obj}},
        {Clausal, "clausal", GRArity::TypeHeadDep, {Comp}},
        {Xcomp, "xcomp", GRArity::TypeHeadDep, {Clausal}},
        {Ccomp, "ccomp", GRArity::TypeHeadDep, {Clausal}},
    }};
    return table;
}

const GRInfo& info(GRType type) {
    return gr_table()[static_cast<std::size_t>(type)];
}

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

std::optional<std::string> filler(const std::string& s) {
    if (s == "_") {
        return std::nullopt;
    }
    return s;
}

} // namespace

std::string_view gr_name(GRType type) {
    return info(type).name;
}

std::optional<GRType> gr_type_from_name(std::string_view name) {
    for (const auto& entry : gr_table()) {
        if (entry.name == name) {
            return entry.type;
        }
    }
    return std::nullopt;
}

GRArity gr_arity(GRType type) {
    return info(type).arity;
}

bool gr_has_type_slot(GRType type) {
    const auto arity = gr_arity(type);
    return arity == GRArity::TypeHeadDep || arity == GRArity::TypeHeadDepInitial;
}

bool gr_has_initial_slot(GRType type) {
    const auto arity = gr_arity(type);
    return arity == GRArity::HeadDepInitial || arity == GRArity::TypeHeadDepInitial;
}

std::span<const GRType> all_gr_types() {
    static const std::vector<GRType> types = [] {
        std::vector<GRType> out;
        for (const auto& entry : gr_table()) {
            out.push_back(entry.type);
        }
        return out;
    }();
    return types;
}

std::span<const GRType> gr_parents(GRType type) {
    return info(type).parents;
}

bool gr_is_parent(GRType parent, GRType child) {
    const auto parents = gr_parents(child);
    return std::find(parents.begin(), parents.end(), parent) != parents.end();
}

bool gr_is_subject(GRType type) {
    using enum GRType;
    return type == Subj || type == Ncsubj || type == Xsubj || type == Csubj;
}

GR parse_gr(std::string_view text) {
    const std::string line = trim(text);
    const auto open = line.find('(');
    if (open == std::string::npos || line.back() != ')') {
        throw FormatError("malformed relation '" + line + "'");
    }
    const std::string name = trim(line.substr(0, open));
    const auto type = gr_type_from_name(name);
    if (!type) {
        throw FormatError("unknown relation '" + name + "'");
    }

    std::vector<std::string> args;
    std::string body = line.substr(open + 1, line.size() - open - 2);
    std::stringstream ss(body);
    for (std::string arg; std::getline(ss, arg, ',');) {
        args.push_back(trim(arg));
    }
    if (!body.empty() && body.back() == ',') {
        args.emplace_back();
    }
    for (const auto& arg : args) {
        if (arg.empty()) {
            throw FormatError("empty slot in relation '" + line + "'");
        }
    }

    GR gr;
    gr.relation = *type;
    auto need = [&](std::size_t lo, std::size_t hi) {
        if (args.size() < lo || args.size() > hi) {
            throw FormatError("relation '" + name + "' takes " + std::to_string(lo) +
                              (lo == hi ? "" : "-" + std::to_string(hi)) + " slots: '" + line + "'");
        }
    };
    switch (gr_arity(*type)) {
    case GRArity::HeadDep:
        need(2, 2);
        gr.head = args[0];
        gr.dependent = args[1];
        break;
    case GRArity::HeadDepInitial:
        need(2, 3);
        gr.head = args[0];
        gr.dependent = args[1];
        if (args.size() == 3) {
            gr.initial = filler(args[2]);
        }
        break;
    case GRArity::TypeHeadDep:
        need(3, 3);
        gr.type = filler(args[0]);
        gr.head = args[1];
        gr.dependent = args[2];
        break;
    case GRArity::TypeHeadDepInitial:
        need(3, 4);
        gr.type = filler(args[0]);
        gr.head = args[1];
        gr.dependent = args[2];
        if (args.size() == 4) {
            gr.initial = filler(args[3]);
        }
        break;
    }
    if (gr.head == "_" || gr.dependent == "_") {
        throw FormatError("head and dependent must be specified: '" + line + "'");
    }
    return gr;
}

std::string format_gr(const GR& gr) {
    auto slot = [](const std::optional<std::string>& s) { return s ? *s : std::string("_"); };
    std::string out(gr_name(gr.relation));
    out += '(';
    switch (gr_arity(gr.relation)) {
    case GRArity::HeadDep:
        out += gr.head + "," + gr.dependent;
        break;
    case GRArity::HeadDepInitial:
        out += gr.head + "," + gr.dependent + "," + slot(gr.initial);
        break;
    case GRArity::TypeHeadDep:
        out += slot(gr.type) + "," + gr.head + "," + gr.dependent;
        break;
    case GRArity::TypeHeadDepInitial:
        out += slot(gr.type) + "," + gr.head + "," + gr.dependent + "," + slot(gr.initial);
        break;
    }
    out += ')';
    return out;
}

std::ostream& operator<<(std::ostream& os, const GR& gr) {
    return os << format_gr(gr);
}

std::vector<std::vector<GR>> read_gr_file(std::istream& in) {
    std::vector<std::vector<GR>> sentences;
    std::vector<GR> current;
    bool open = false;
    std::size_t line_no = 0;
    for (std::string raw; std::getline(in, raw);) {
        ++line_no;
        const std::string line = trim(raw);
        if (!line.empty() && line.front() == '#') {
            continue;
        }
        if (line.empty()) {
            if (open) {
                sentences.push_back(std::move(current));
                current.clear();
                open = false;
            }
            continue;
        }
        open = true;
        if (line == "-") {
            continue;
        }
        try {
            current.push_back(parse_gr(line));
        } catch (const FormatError& e) {
            throw FormatError(e.what(), line_no);
        }
    }
    if (open) {
        sentences.push_back(std::move(current));
    }
    return sentences;
}

void write_gr_file(std::ostream& out, std::span<const std::vector<GR>> sentences) {
    for (std::size_t i = 0; i < sentences.size(); ++i) {
        if (i > 0) {
            out << '\n';
        }
        if (sentences[i].empty()) {
            out << "-\n";
        }
        for (const auto& gr : sentences[i]) {
            out << format_gr(gr) << '\n';
        }
    }
}

} // namespace lexglr
