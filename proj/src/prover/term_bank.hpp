#pragma once

// Hash-consed term storage for the completion engine. Structurally equal
// terms share one id, so equality is id comparison.

#include "bgax/term.hpp"

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace bgax::detail
{

using TermId = std::uint32_t;
inline constexpr TermId no_term = 0xFFFFFFFFU;

// Symbol codes: >= 0 variable index, product, e, then skolem constants
// sym_skolem0, sym_skolem0 - 1, ...
inline constexpr int sym_product = -1;
inline constexpr int sym_e = -2;
inline constexpr int sym_skolem0 = -3;
inline constexpr int max_vars = 64;

inline int skolem_symbol(int k) { return sym_skolem0 - k; }
inline int skolem_index(int sym) { return sym_skolem0 - sym; }

struct Weights
{
    std::uint32_t product = 1;
    std::uint32_t constant = 1; // e and skolem constants
    std::uint32_t variable = 1;
};

struct Node
{
    int sym;
    TermId left = no_term;
    TermId right = no_term;
    std::uint32_t weight = 0;
    std::uint16_t size = 1;
    std::int8_t max_var = -1; // -1: ground
};

// A path from the root: bit i of `bits` selects the child at depth i
// (0 left, 1 right).
struct Position
{
    std::uint64_t bits = 0;
    std::uint8_t depth = 0;

    Position child(int which) const
    {
        Position p = *this;
        if (which)
            p.bits |= std::uint64_t{1} << depth;
        ++p.depth;
        return p;
    }
    bool root() const { return depth == 0; }
    /// "" for the root, otherwise digits 1 (left) / 2 (right).
    std::string str() const;
};

// Symbols at the root and at positions 1, 2, 11, 12, 21, 22, one byte each.
// Used to rule out matches and unifiers before attempting them.
using Fingerprint = std::uint64_t;

namespace fp
{
inline constexpr std::uint8_t absent = 0;    // the position does not exist (parent is a constant)
inline constexpr std::uint8_t below_var = 1; // the position lies under a variable
inline constexpr std::uint8_t variable = 2;
inline constexpr std::uint8_t product = 3;
// Constants: 4 + (sym_e - sym), saturating at 255.

inline bool is_wild(std::uint8_t b) { return b <= variable; }

/// Could an instance of `pattern` equal `t`? (one-way)
inline bool may_match(Fingerprint pattern, Fingerprint t)
{
    for (int i = 0; i < 7; ++i)
    {
        std::uint8_t a = static_cast<std::uint8_t>(pattern >> (8 * i));
        std::uint8_t b = static_cast<std::uint8_t>(t >> (8 * i));
        if (a == b || a == below_var)
            continue;
        if (a == variable ? b == absent : true)
            return false;
    }
    return true;
}

/// Could the two terms have a common instance?
inline bool may_unify(Fingerprint x, Fingerprint y)
{
    for (int i = 0; i < 7; ++i)
    {
        std::uint8_t a = static_cast<std::uint8_t>(x >> (8 * i));
        std::uint8_t b = static_cast<std::uint8_t>(y >> (8 * i));
        if (a != b && !is_wild(a) && !is_wild(b))
            return false;
    }
    return true;
}
} // namespace fp

class TermBank
{
public:
    explicit TermBank(Weights w = {});

    TermId var(int index);
    TermId e() const { return e_; }
    TermId skolem(int k);
    TermId product(TermId l, TermId r);

    const Node &node(TermId t) const { return nodes_[t]; }
    int sym(TermId t) const { return nodes_[t].sym; }
    bool is_var(TermId t) const { return nodes_[t].sym >= 0; }
    bool is_product(TermId t) const { return nodes_[t].sym == sym_product; }
    TermId left(TermId t) const { return nodes_[t].left; }
    TermId right(TermId t) const { return nodes_[t].right; }
    std::uint32_t weight(TermId t) const { return nodes_[t].weight; }
    std::uint32_t size(TermId t) const { return nodes_[t].size; }
    bool ground(TermId t) const { return nodes_[t].max_var < 0; }
    int max_var(TermId t) const { return nodes_[t].max_var; }
    std::size_t node_count() const { return nodes_.size(); }

    TermId at(TermId t, Position p) const;
    Fingerprint fingerprint(TermId t) const;
    TermId replace(TermId t, Position p, TermId with);

    bool occurs(int var, TermId t) const;
    TermId shift_vars(TermId t, int offset);

    // Substitutions are dense arrays of max_vars entries (no_term = unbound).
    using Subst = std::vector<TermId>;
    static Subst empty_subst() { return Subst(max_vars, no_term); }

    /// One-way matching; variables of t are rigid. Records newly bound
    /// variables in `bound` so callers can undo a failed attempt.
    bool match(TermId pattern, TermId t, Subst &s, std::vector<int> &bound) const;
    /// Syntactic unification with occurs check (triangular bindings).
    bool unify(TermId a, TermId b, Subst &s) const;
    /// Fully applies s; unbound variables are replaced by `unbound` unless it is no_term.
    TermId apply(TermId t, const Subst &s, TermId unbound = no_term);
    /// Applies a matcher: bindings are used as-is, not dereferenced further
    /// (the matched term's variables may share indices with the pattern's).
    TermId instantiate(TermId t, const Subst &s, TermId unbound = no_term);

    /// Renames variables by first occurrence (a, then b) to 0, 1, ...
    /// Returns the number of distinct variables.
    int canonical_pair(TermId &a, TermId &b);
    int distinct_vars(TermId a, TermId b) const;

    /// Conversion from / to the public representation. Variables named by
    /// letter; `skolemize` turns them into skolem constants instead.
    TermId from_term(const Term &t, bool skolemize = false);
    /// Variables and skolems are printed through the given names.
    Term to_term(TermId t, const std::string &var_names, const std::string &skolem_names) const;

private:
    TermId deref(TermId t, const Subst &s) const;
    bool occurs_deref(int var, TermId t, const Subst &s) const;
    TermId make_leaf(int sym);

    Weights w_;
    std::vector<Node> nodes_;
    std::unordered_map<std::uint64_t, TermId> products_;
    std::vector<TermId> vars_;
    std::vector<TermId> skolems_;
    TermId e_ = no_term;
};

/// Canonical variable letters for engine output: x, y, z, u, v, w, then the
/// rest of the alphabet without e.
const std::string &canonical_letters();

} // namespace bgax::detail
