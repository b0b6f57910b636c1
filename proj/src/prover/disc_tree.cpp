#include "disc_tree.hpp"

namespace bgax::detail
{

int DiscTree::child(int node, int symbol) const
{
    for (const auto &[s, n] : nodes_[static_cast<std::size_t>(node)].kids)
        if (s == symbol)
            return n;
    return -1;
}

void DiscTree::insert(const TermBank &bank, TermId pattern, Entry entry)
{
    int node = 0;
    auto walk = [&](auto &&self, TermId t) -> void {
        int symbol = bank.is_var(t) ? wildcard : bank.sym(t);
        int next = child(node, symbol);
        if (next < 0)
        {
            next = static_cast<int>(nodes_.size());
            nodes_.emplace_back();
            nodes_[static_cast<std::size_t>(node)].kids.emplace_back(symbol, next);
        }
        node = next;
        if (bank.is_product(t))
        {
            self(self, bank.left(t));
            self(self, bank.right(t));
        }
    };
    walk(walk, pattern);
    nodes_[static_cast<std::size_t>(node)].entries.push_back(entry);
    ++entry_count_;
}

void DiscTree::collect(const TermBank &bank, int node, std::vector<TermId> &pending,
                       std::vector<Entry> &out) const
{
    const Node &n = nodes_[static_cast<std::size_t>(node)];
    if (pending.empty())
    {
        out.insert(out.end(), n.entries.begin(), n.entries.end());
        return;
    }
    const TermId u = pending.back();
    const int symbol = bank.sym(u);
    for (const auto &[s, next] : n.kids)
    {
        if (s == wildcard)
        {
            pending.pop_back();
            collect(bank, next, pending, out);
            pending.push_back(u);
        }
        else if (s == symbol)
        {
            pending.pop_back();
            if (bank.is_product(u))
            {
                pending.push_back(bank.right(u));
                pending.push_back(bank.left(u));
                collect(bank, next, pending, out);
                pending.pop_back();
                pending.pop_back();
            }
            else
            {
                collect(bank, next, pending, out);
            }
            pending.push_back(u);
        }
    }
}

void DiscTree::retrieve(const TermBank &bank, TermId t, std::vector<Entry> &out)
{
    pending_.clear();
    pending_.push_back(t);
    collect(bank, 0, pending_, out);
}

} // namespace bgax::detail
