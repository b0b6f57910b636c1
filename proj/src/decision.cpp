#include "bgax/decision.hpp"

#include "bgax/enumeration.hpp"
#include "bgax/parallel.hpp"

#include <omp.h>

#include <array>
#include <cstdint>
#include <stdexcept>

namespace bgax
{

bool parity_decide(const Identity &id)
{
    for (const auto &[symbol, count] : occurrences(id))
        if (symbol != 'e' && count % 2 != 0)
            return false;
    return true;
}

int z2_evaluate(const Term &t, const Z2Assignment &assignment)
{
    switch (t.kind())
    {
    case Term::Kind::constant:
        return 0;
    case Term::Kind::variable:
        return assignment.at(t.symbol());
    case Term::Kind::product:
        return z2_evaluate(t.left(), assignment) ^ z2_evaluate(t.right(), assignment);
    }
    return 0;
}

namespace
{

// Evaluation against a dense letter-indexed assignment; the public
// map-based evaluator is too slow for 2^20 sweeps.
int evaluate_dense(const Term &t, const std::array<int, 26> &values)
{
    if (t.is_constant())
        return 0;
    if (t.is_variable())
        return values[t.symbol() - 'a'];
    return evaluate_dense(t.left(), values) ^ evaluate_dense(t.right(), values);
}

} // namespace

DecisionResult z2_decide(const Identity &id)
{
    std::vector<char> vars = variables(id);
    if (vars.size() > z2_max_variables)
        throw std::invalid_argument("z2_decide: " + std::to_string(vars.size()) +
                                    " variables exceeds the bound of " +
                                    std::to_string(z2_max_variables));

    const std::size_t k = vars.size();
    std::array<int, 26> values{};
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask)
    {
        for (std::size_t i = 0; i < k; ++i)
            values[vars[i] - 'a'] = static_cast<int>((mask >> (k - 1 - i)) & 1U);
        if (evaluate_dense(id.lhs, values) != evaluate_dense(id.rhs, values))
        {
            Z2Assignment witness;
            for (char v : vars)
                witness[v] = values[v - 'a'];
            return {false, std::move(witness)};
        }
    }
    return {true, std::nullopt};
}

namespace
{

// One unit of sweep work: a pair of shapes whose leaves are then labeled in
// every way.
struct ShapePair
{
    Term lhs, rhs;
    std::size_t leaves;
};

Term label_digits(const Term &shape, std::uint64_t &digits, std::string_view symbols)
{
    if (shape.is_leaf())
    {
        char c = symbols[digits % symbols.size()];
        digits /= symbols.size();
        return c == 'e' ? Term::e() : Term::var(c);
    }
    Term l = label_digits(shape.left(), digits, symbols);
    Term r = label_digits(shape.right(), digits, symbols);
    return Term::product(std::move(l), std::move(r));
}

// Checks every labeling of one shape pair; returns the labeling index of the
// first disagreement through `first`.
void sweep_pair(const ShapePair &p, std::string_view symbols, AgreementSweep &acc,
                std::optional<std::uint64_t> &first)
{
    std::uint64_t labelings = 1;
    for (std::size_t i = 0; i < p.leaves; ++i)
        labelings *= symbols.size();
    for (std::uint64_t k = 0; k < labelings; ++k)
    {
        std::uint64_t digits = k;
        Identity id{label_digits(p.lhs, digits, symbols), label_digits(p.rhs, digits, symbols)};
        bool parity = parity_decide(id);
        bool z2 = z2_decide(id).is_theorem;
        ++acc.identities;
        if (parity && z2)
            ++acc.theorems;
        if (parity != z2)
        {
            ++acc.disagreements;
            if (!first)
                first = k;
        }
    }
}

} // namespace

AgreementSweep parity_z2_sweep(std::size_t max_leaves, std::string_view symbols, int workers)
{
    if (symbols.empty())
        throw std::invalid_argument("parity_z2_sweep: empty symbol set");
    for (char c : symbols)
        if (c < 'a' || c > 'z')
            throw std::invalid_argument("parity_z2_sweep: symbols must be lowercase letters");

    std::vector<ShapePair> pairs;
    for (std::size_t total = 2; total <= max_leaves; ++total)
        for (std::size_t a = 1; a < total; ++a)
            for (const Term &l : enumerate_shapes(a))
                for (const Term &r : enumerate_shapes(total - a))
                    pairs.push_back({l, r, total});

    std::vector<AgreementSweep> parts(pairs.size());
    std::vector<std::optional<std::uint64_t>> firsts(pairs.size());
    const int threads = resolve_workers(workers);
    if (threads == 1)
    {
        for (std::size_t i = 0; i < pairs.size(); ++i)
            sweep_pair(pairs[i], symbols, parts[i], firsts[i]);
    }
    else
    {
#pragma omp parallel for num_threads(threads) schedule(dynamic)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(pairs.size()); ++i)
        {
            auto u = static_cast<std::size_t>(i);
            sweep_pair(pairs[u], symbols, parts[u], firsts[u]);
        }
    }

    AgreementSweep out;
    for (std::size_t i = 0; i < pairs.size(); ++i)
    {
        out.identities += parts[i].identities;
        out.theorems += parts[i].theorems;
        out.disagreements += parts[i].disagreements;
        if (firsts[i] && !out.first_disagreement)
        {
            std::uint64_t digits = *firsts[i];
            Term l = label_digits(pairs[i].lhs, digits, symbols);
            Term r = label_digits(pairs[i].rhs, digits, symbols);
            out.first_disagreement = Identity{l, r};
        }
    }
    return out;
}

} // namespace bgax
