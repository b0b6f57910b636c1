#pragma once

// Reference computations the tests compare the library against. Each one is
// written from the definitions, as directly as possible, and shares no code
// with the library beyond the Term accessors.

#include "bgax/term.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace oracle
{

using bgax::Identity;
using bgax::Term;

inline std::uint64_t binomial(unsigned n, unsigned k)
{
    std::uint64_t r = 1;
    for (unsigned i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

/// Number of full binary trees with n leaves.
inline std::uint64_t catalan_trees(unsigned leaves) { return binomial(2 * (leaves - 1), leaves - 1) / leaves; }

inline std::uint64_t multinomial(const std::map<char, int> &parts)
{
    std::uint64_t r = 1;
    unsigned total = 0;
    for (auto [symbol, k] : parts)
    {
        total += static_cast<unsigned>(k);
        r *= binomial(total, static_cast<unsigned>(k));
    }
    return r;
}

/// Every full binary tree over exactly the given leaf sequence.
inline std::vector<Term> trees_over(const std::string &leaves)
{
    if (leaves.size() == 1)
        return {leaves[0] == 'e' ? Term::e() : Term::var(leaves[0])};
    std::vector<Term> out;
    for (std::size_t split = 1; split < leaves.size(); ++split)
        for (const Term &l : trees_over(leaves.substr(0, split)))
            for (const Term &r : trees_over(leaves.substr(split)))
                out.push_back(Term::product(l, r));
    return out;
}

inline Term reverse(const Term &t)
{
    if (t.is_leaf())
        return t;
    return Term::product(reverse(t.right()), reverse(t.left()));
}

inline Term swap_letters(const Term &t, char a, char b)
{
    if (t.is_product())
        return Term::product(swap_letters(t.left(), a, b), swap_letters(t.right(), a, b));
    if (t.symbol() == a)
        return Term::var(b);
    if (t.symbol() == b)
        return Term::var(a);
    return t;
}

inline int parity_of(const Term &t, char v)
{
    if (t.is_product())
        return parity_of(t.left(), v) ^ parity_of(t.right(), v);
    return t.symbol() == v ? 1 : 0;
}

inline Term random_term(std::mt19937_64 &rng, std::size_t leaves, const std::string &symbols)
{
    if (leaves == 1)
    {
        char c = symbols[std::uniform_int_distribution<std::size_t>(0, symbols.size() - 1)(rng)];
        return c == 'e' ? Term::e() : Term::var(c);
    }
    std::size_t left = std::uniform_int_distribution<std::size_t>(1, leaves - 1)(rng);
    return Term::product(random_term(rng, left, symbols), random_term(rng, leaves - left, symbols));
}

/// Value of t in the table cells (row-major, size n); e is element 0.
inline int eval(const Term &t, const std::vector<int> &cells, int n, const std::map<char, int> &env)
{
    if (t.is_product())
        return cells[static_cast<std::size_t>(eval(t.left(), cells, n, env) * n + eval(t.right(), cells, n, env))];
    if (t.is_constant())
        return 0;
    return env.at(t.symbol());
}

inline std::set<char> letters(const Term &t)
{
    if (t.is_product())
    {
        std::set<char> l = letters(t.left());
        l.merge(letters(t.right()));
        return l;
    }
    if (t.is_variable())
        return {t.symbol()};
    return {};
}

inline bool holds(const Identity &id, const std::vector<int> &cells, int n)
{
    std::set<char> vars = letters(id.lhs);
    vars.merge(letters(id.rhs));
    std::vector<char> vs(vars.begin(), vars.end());
    std::map<char, int> env;
    std::function<bool(std::size_t)> all = [&](std::size_t i) {
        if (i == vs.size())
            return eval(id.lhs, cells, n, env) == eval(id.rhs, cells, n, env);
        for (int a = 0; a < n; ++a)
        {
            env[vs[i]] = a;
            if (!all(i + 1))
                return false;
        }
        return true;
    };
    return all(0);
}

/// Every table over {0..n-1} satisfying all identities, as cell vectors.
inline std::set<std::vector<int>> all_models(const std::vector<Identity> &ids, int n)
{
    std::set<std::vector<int>> out;
    std::vector<int> cells(static_cast<std::size_t>(n * n), 0);
    for (;;)
    {
        bool ok = true;
        for (const Identity &id : ids)
            if (!(ok = holds(id, cells, n)))
                break;
        if (ok)
            out.insert(cells);
        std::size_t i = 0;
        while (i < cells.size() && ++cells[i] == n)
            cells[i++] = 0;
        if (i == cells.size())
            return out;
    }
}

/// Associative, 0 is a two-sided identity, every square is 0.
inline bool boolean_group(const std::vector<int> &cells, int n)
{
    auto m = [&](int a, int b) { return cells[static_cast<std::size_t>(a * n + b)]; };
    for (int a = 0; a < n; ++a)
    {
        if (m(0, a) != a || m(a, 0) != a || m(a, a) != 0)
            return false;
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (m(m(a, b), c) != m(a, m(b, c)))
                    return false;
    }
    return true;
}

/// Identities whose models are compared against exhaustive enumeration: the
/// group laws, a few non-group laws and two candidate single axioms.
inline const std::vector<std::string> &model_check_identities()
{
    static const std::vector<std::string> ids = {
        "xx = e",           "ex = x",    "xy·z = x·yz",  "xy = yx",
        "xy = x",           "x = e",     "xe = ex",      "x·yz = y·xz",
        "((e·xy)·yz)z = x", "(ex·yz)y·z = x",
    };
    return ids;
}

} // namespace oracle
