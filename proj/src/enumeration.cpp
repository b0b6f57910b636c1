#include "bgax/enumeration.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace bgax
{

std::size_t CandidateSpec::leaf_count() const
{
    std::size_t n = 0;
    for (const auto &[symbol, count] : leaves)
        n += static_cast<std::size_t>(std::max(count, 0));
    return n;
}

bool CandidateSpec::valid() const
{
    for (const auto &[symbol, count] : leaves)
        if (symbol < 'a' || symbol > 'z' || count < 0)
            return false;
    auto it = leaves.find(rhs);
    return rhs != 'e' && it != leaves.end() && it->second == 1 && leaf_count() > 0;
}

std::string SymmetryConvention::name() const
{
    if (mirror && variable_swap)
        return "mirror+swap";
    if (mirror)
        return "mirror";
    if (variable_swap)
        return "swap";
    return "none";
}

std::vector<Term> enumerate_shapes(std::size_t n_leaves)
{
    if (n_leaves < 1 || n_leaves > max_shape_leaves)
        throw std::invalid_argument("enumerate_shapes: leaf count must be in 1.." +
                                    std::to_string(max_shape_leaves));
    std::vector<std::vector<Term>> by_size(n_leaves + 1);
    by_size[1].push_back(Term::e());
    for (std::size_t n = 2; n <= n_leaves; ++n)
        for (std::size_t k = 1; k < n; ++k)
            for (const Term &l : by_size[k])
                for (const Term &r : by_size[n - k])
                    by_size[n].push_back(Term::product(l, r));
    return std::move(by_size[n_leaves]);
}

namespace
{

Term label_from(const Term &shape, std::string_view leaves, std::size_t &next)
{
    if (shape.is_leaf())
    {
        char c = leaves.at(next++);
        return c == 'e' ? Term::e() : Term::var(c);
    }
    Term l = label_from(shape.left(), leaves, next);
    Term r = label_from(shape.right(), leaves, next);
    return Term::product(std::move(l), std::move(r));
}

// Lexicographic order with e first, matching the term order.
bool symbol_less(char a, char b)
{
    if (a == b)
        return false;
    if (a == 'e')
        return true;
    if (b == 'e')
        return false;
    return a < b;
}

} // namespace

Term label_shape(const Term &shape, std::string_view leaves)
{
    if (leaves.size() != shape.leaf_count())
        throw std::invalid_argument("label_shape: leaf count mismatch");
    std::size_t next = 0;
    return label_from(shape, leaves, next);
}

std::vector<Identity> enumerate_candidates(const CandidateSpec &spec)
{
    if (!spec.valid())
        throw std::invalid_argument("enumerate_candidates: invalid candidate spec");
    std::string multiset;
    for (const auto &[symbol, count] : spec.leaves)
        multiset.append(static_cast<std::size_t>(count), symbol);
    std::sort(multiset.begin(), multiset.end(), symbol_less);

    std::vector<std::string> labelings;
    std::string labeling = multiset;
    do
        labelings.push_back(labeling);
    while (std::next_permutation(labeling.begin(), labeling.end(), symbol_less));

    const Term rhs = Term::var(spec.rhs);
    std::vector<Identity> out;
    for (const Term &shape : enumerate_shapes(multiset.size()))
        for (const std::string &l : labelings)
            out.push_back({label_shape(shape, l), rhs});
    return out;
}

Identity canonicalize(const Identity &id, const SymmetryConvention &conv)
{
    static const std::map<char, char> swap_yz{{'y', 'z'}, {'z', 'y'}};
    Identity best = id;
    auto consider = [&](Identity candidate) {
        if (candidate < best)
            best = std::move(candidate);
    };
    if (conv.mirror)
        consider({mirror(id.lhs), mirror(id.rhs)});
    if (conv.variable_swap)
    {
        Identity swapped{rename(id.lhs, swap_yz), rename(id.rhs, swap_yz)};
        if (conv.mirror)
            consider({mirror(swapped.lhs), mirror(swapped.rhs)});
        consider(std::move(swapped));
    }
    return best;
}

std::size_t count_candidates(const CandidateSpec &spec, const SymmetryConvention &conv)
{
    std::set<Identity> canonical;
    for (const Identity &id : enumerate_candidates(spec))
        canonical.insert(canonicalize(id, conv));
    return canonical.size();
}

std::vector<CountRow> count_under_all_conventions(const CandidateSpec &spec)
{
    std::vector<CountRow> rows;
    for (bool m : {false, true})
        for (bool s : {false, true})
        {
            SymmetryConvention conv{m, s};
            rows.push_back({conv, count_candidates(spec, conv)});
        }
    return rows;
}

} // namespace bgax
