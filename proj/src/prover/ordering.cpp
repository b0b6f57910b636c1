#include "ordering.hpp"

#include <array>

namespace bgax::detail
{

Weights weights_for(const TermOrdering &ord)
{
    return Weights{ord.product_weight, ord.constant_weight, ord.variable_weight};
}

int Ordering::precedence(int sym)
{
    if (sym == sym_product)
        return 1 << 30;
    if (sym == sym_e)
        return 0;
    return 1 + skolem_index(sym);
}

bool Ordering::variable_condition(TermId s, TermId t) const
{
    if (bank_.ground(t))
        return true;
    std::array<int, max_vars> balance{};
    auto count = [&](auto &&self, TermId u, int delta) -> void {
        if (bank_.ground(u))
            return;
        if (bank_.is_var(u))
        {
            balance[static_cast<std::size_t>(bank_.sym(u))] += delta;
            return;
        }
        self(self, bank_.left(u), delta);
        self(self, bank_.right(u), delta);
    };
    count(count, s, 1);
    count(count, t, -1);
    for (int v = 0; v <= bank_.max_var(t); ++v)
        if (balance[static_cast<std::size_t>(v)] < 0)
            return false;
    return true;
}

bool Ordering::kbo_greater(TermId s, TermId t) const
{
    if (s == t)
        return false;
    if (bank_.is_var(t))
        return bank_.occurs(bank_.sym(t), s);
    if (bank_.is_var(s))
        return false;
    if (!variable_condition(s, t))
        return false;
    std::uint32_t ws = bank_.weight(s);
    std::uint32_t wt = bank_.weight(t);
    if (ws != wt)
        return ws > wt;
    int ps = precedence(bank_.sym(s));
    int pt = precedence(bank_.sym(t));
    if (ps != pt)
        return ps > pt;
    // Same head; only products remain (equal constants are identical).
    if (bank_.left(s) != bank_.left(t))
        return kbo_greater(bank_.left(s), bank_.left(t));
    return kbo_greater(bank_.right(s), bank_.right(t));
}

bool Ordering::lpo_greater(TermId s, TermId t) const
{
    if (s == t)
        return false;
    if (bank_.is_var(t))
        return bank_.occurs(bank_.sym(t), s);
    if (bank_.is_var(s))
        return false;
    if (bank_.is_product(s) &&
        (lpo_greater_or_equal(bank_.left(s), t) || lpo_greater_or_equal(bank_.right(s), t)))
        return true;
    int ps = precedence(bank_.sym(s));
    int pt = precedence(bank_.sym(t));
    if (ps > pt)
        return !bank_.is_product(t) || (lpo_greater(s, bank_.left(t)) && lpo_greater(s, bank_.right(t)));
    if (ps < pt || !bank_.is_product(s))
        return false;
    if (bank_.left(s) != bank_.left(t))
        return lpo_greater(bank_.left(s), bank_.left(t)) && lpo_greater(s, bank_.right(t));
    return lpo_greater(bank_.right(s), bank_.right(t));
}

bool Ordering::greater(TermId s, TermId t) const
{
    return params_.kind == OrderingKind::kbo ? kbo_greater(s, t) : lpo_greater(s, t);
}

Comparison Ordering::compare(TermId s, TermId t) const
{
    if (s == t)
        return Comparison::equal;
    if (greater(s, t))
        return Comparison::greater;
    if (greater(t, s))
        return Comparison::less;
    return Comparison::incomparable;
}

} // namespace bgax::detail
