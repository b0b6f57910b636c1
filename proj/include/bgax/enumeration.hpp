#pragma once

// Candidate single axioms of the form T = x, where T has a fixed leaf
// multiset (by default one x, one e, two y and two z), and their
// canonical forms under the symmetries that preserve Boolean-group axiomhood.

#include "bgax/term.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace bgax
{

struct CandidateSpec
{
    /// Leaf symbol -> multiplicity of the left side.
    std::map<char, int> leaves{{'e', 1}, {'x', 1}, {'y', 2}, {'z', 2}};
    char rhs = 'x';

    std::size_t leaf_count() const;
    /// rhs is a variable occurring exactly once among the leaves, all symbols valid.
    bool valid() const;
};

struct SymmetryConvention
{
    bool mirror = false;        // reverse every product (the variety is commutative)
    bool variable_swap = false; // rename y <-> z

    std::string name() const;
};

inline constexpr std::size_t max_shape_leaves = 12;

/// All full binary trees with n_leaves leaves, leaves set to e. Order: left
/// subtree size ascending, then left shape, then right shape.
/// Throws std::invalid_argument outside 1..max_shape_leaves.
std::vector<Term> enumerate_shapes(std::size_t n_leaves);

/// Fills the shape's leaves left to right from the given sequence.
Term label_shape(const Term &shape, std::string_view leaves);

/// Every T = rhs over every shape and every distinct labeling of the
/// multiset, shape-major then labelings in lexicographic order (e first).
std::vector<Identity> enumerate_candidates(const CandidateSpec &spec);

/// Orbit minimum under the group generated by the enabled symmetries.
Identity canonicalize(const Identity &id, const SymmetryConvention &conv);

/// Number of distinct canonical forms among the candidates.
std::size_t count_candidates(const CandidateSpec &spec, const SymmetryConvention &conv);

/// The count reported for the original candidate list.
inline constexpr std::size_t reported_candidate_count = 1323;

struct CountRow
{
    SymmetryConvention convention;
    std::size_t count = 0;
};

/// Counts under all four conventions for side-by-side reporting.
std::vector<CountRow> count_under_all_conventions(const CandidateSpec &spec);

} // namespace bgax
