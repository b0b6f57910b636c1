#pragma once

// Discrimination tree over rule sides, for finding the rules whose pattern
// may generalize a given term. Patterns are stored as their preorder symbol
// strings with every variable collapsed to one wildcard, so retrieval is
// exact except for repeated variables, which the caller checks by matching.

#include "term_bank.hpp"

#include <climits>
#include <utility>
#include <vector>

namespace bgax::detail
{

class DiscTree
{
public:
    struct Entry
    {
        int active;
        bool forward;
    };

    void insert(const TermBank &bank, TermId pattern, Entry entry);

    /// Appends every stored entry whose pattern may match t.
    void retrieve(const TermBank &bank, TermId t, std::vector<Entry> &out);

    bool empty() const { return entry_count_ == 0; }

private:
    static constexpr int wildcard = INT_MIN;

    struct Node
    {
        std::vector<std::pair<int, int>> kids; // symbol -> node
        std::vector<Entry> entries;
    };

    int child(int node, int symbol) const;
    // `pending` holds the query subterms still to be consumed, next on top.
    void collect(const TermBank &bank, int node, std::vector<TermId> &pending, std::vector<Entry> &out) const;

    std::vector<Node> nodes_{1};
    std::size_t entry_count_ = 0;

    std::vector<TermId> pending_; // reused between queries
};

} // namespace bgax::detail
