#pragma once

// Finite model search over groupoid tables with a designated constant.

#include "bgax/term.hpp"

#include <compare>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bgax
{

/// Operation table on {0, ..., n-1}; e is interpreted by e_index.
struct CayleyTable
{
    int n = 1;
    int e_index = 0;
    std::vector<int> cells{0}; // row-major, cells[a * n + b] = a·b

    CayleyTable() = default;
    CayleyTable(int n_, int e_index_, std::vector<int> cells_);

    int at(int a, int b) const { return cells[static_cast<std::size_t>(a * n + b)]; }

    /// Throws std::invalid_argument on out-of-range entries or e_index.
    void validate() const;

    friend bool operator==(const CayleyTable &, const CayleyTable &) = default;
    friend auto operator<=>(const CayleyTable &, const CayleyTable &) = default;
};

CayleyTable xor_table();
CayleyTable klein_four_table();
/// Addition modulo n.
CayleyTable cyclic_table(int n);

/// Throws std::out_of_range on an unassigned variable.
int evaluate(const Term &t, const CayleyTable &table, const std::map<char, int> &assignment);

/// Checks both sides agree under all n^k assignments of the k variables.
bool satisfies(const CayleyTable &table, const Identity &id);

enum class ModelMode
{
    find_all,
    find_one,
    count,
};

inline constexpr int max_model_size = 6;

struct ModelQuery
{
    std::vector<Identity> identities;
    int size = 1;
    ModelMode mode = ModelMode::find_all;
    std::size_t limit = std::numeric_limits<std::size_t>::max();
    /// Least-number pruning of isomorphic tables. Off: counts are labeled tables.
    bool least_number = false;
};

struct ModelSearchResult
{
    /// Empty in count mode.
    std::vector<CayleyTable> models;
    std::size_t count = 0;
    std::size_t nodes = 0; // decision points visited
};

/// Backtracking with e fixed at 0 and a set of possible values per cell.
/// After every decision each ground instance is evaluated; where evaluation
/// is blocked at a single unknown cell, values for that cell that would make
/// the two sides differ are removed, and a cell left with one value is
/// assigned. The open cell with the fewest values is decided next (plain
/// row-major order under least_number). Results come in search order, which
/// is deterministic.
/// Throws std::invalid_argument for sizes outside 1..max_model_size.
ModelSearchResult find_models(const ModelQuery &query);

inline constexpr int max_naive_model_size = 3;

/// Every table with e_index 0 satisfying all identities, found by testing
/// each of the n^(n*n) tables in turn; results in table-index order (cells
/// read row-major as base-n digits, first cell most significant). Exists
/// to check find_models against. workers follows bgax/parallel.hpp.
/// Throws std::invalid_argument for sizes outside 1..max_naive_model_size.
std::vector<CayleyTable> enumerate_models_naive(const std::vector<Identity> &identities, int n,
                                                int workers = 0);

/// Associative, e_index a two-sided identity, and every element squares to it.
bool is_boolean_group(const CayleyTable &table);

struct TrivialityVerdict
{
    bool trivializing = false; // no model of size 2..bound
    int bound = 0;
    std::optional<CayleyTable> witness; // first nontrivial model found
};

/// Finite evidence for equivalence to x = e. Throws std::invalid_argument
/// when up_to_n exceeds max_model_size.
TrivialityVerdict is_trivializing(const Identity &id, int up_to_n);

/// {"n":..,"e":..,"rows":[[..],..]}
std::string table_to_json(const CayleyTable &table);
std::string table_to_grid(const CayleyTable &table);

} // namespace bgax
