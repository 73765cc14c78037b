#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lexglr {

enum class GRType {
    Dependent,
    Mod,
    Ncmod,
    Xmod,
    Cmod,
    ArgMod,
    Arg,
    Subj,
    Ncsubj,
    Xsubj,
    Csubj,
    SubjOrDobj,
    Comp,
    Obj,
    Dobj,
    Obj2,
    Iobj,
    Clausal,
    Xcomp,
    Ccomp,
};

inline constexpr std::size_t kGRTypeCount = 20;

/// How a relation's fillers are written in the surface syntax.
enum class GRArity {
    HeadDep,            // obj2(head,dependent)
    HeadDepInitial,     // ncsubj(head,dependent,initial_gr)
    TypeHeadDep,        // iobj(type,head,dependent)
    TypeHeadDepInitial, // arg_mod(type,head,dependent,initial_gr)
};

std::string_view gr_name(GRType type);
std::optional<GRType> gr_type_from_name(std::string_view name);
GRArity gr_arity(GRType type);
bool gr_has_type_slot(GRType type);
bool gr_has_initial_slot(GRType type);
std::span<const GRType> all_gr_types();

/// Direct parents in the relation hierarchy (root: dependent).
std::span<const GRType> gr_parents(GRType type);
bool gr_is_parent(GRType parent, GRType child);
/// True for subj and the relations below it.
bool gr_is_subject(GRType type);

/// A grammatical relation. Empty optionals are the unspecified filler `_`.
struct GR {
    GRType relation = GRType::Dependent;
    std::optional<std::string> type;
    std::string head;
    std::string dependent;
    std::optional<std::string> initial;

    friend bool operator==(const GR&, const GR&) = default;
    friend auto operator<=>(const GR&, const GR&) = default;
};

/// Parses one relation in surface syntax, e.g. `xcomp(to,intend,leave)`.
GR parse_gr(std::string_view text);
std::string format_gr(const GR& gr);
std::ostream& operator<<(std::ostream& os, const GR& gr);

/// Blocks of relations separated by blank lines, one block per sentence.
/// `#` starts a comment line. A block containing only `-` denotes an empty set.
std::vector<std::vector<GR>> read_gr_file(std::istream& in);
void write_gr_file(std::ostream& out, std::span<const std::vector<GR>> sentences);

} // namespace lexglr
