#include "bgax/decision.hpp"
#include "bgax/models.hpp"
#include "bgax/parallel.hpp"
#include "bgax/pipeline.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <set>

using namespace bgax;

namespace
{

std::set<std::vector<int>> cell_set(const std::vector<CayleyTable> &tables)
{
    std::set<std::vector<int>> out;
    for (const CayleyTable &t : tables)
        out.insert(t.cells);
    return out;
}

std::vector<CayleyTable> all_models(const std::vector<Identity> &ids, int n)
{
    ModelQuery q;
    q.identities = ids;
    q.size = n;
    return find_models(q).models;
}

CayleyTable left_projection(int n)
{
    std::vector<int> cells;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            cells.push_back(a);
    return CayleyTable(n, 0, cells);
}

} // namespace

TEST_CASE("tables validate their entries")
{
    CHECK_NOTHROW(xor_table().validate());
    CHECK_THROWS_AS(CayleyTable(2, 0, {0, 1, 1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(CayleyTable(2, 2, {0, 1, 1, 0}), std::invalid_argument);
    CHECK_THROWS_AS(CayleyTable(2, 0, {0, 1, 1}), std::invalid_argument);
}

TEST_CASE("evaluation")
{
    CHECK(evaluate(parse_term("xy"), xor_table(), {{'x', 1}, {'y', 1}}) == 0);
    CHECK(evaluate(Term::e(), cyclic_table(3), {}) == 0);
    CHECK(evaluate(parse_term("((e·xy)·yz)z"), xor_table(), {{'x', 1}, {'y', 0}, {'z', 1}}) == 1);
    CHECK_THROWS_AS(evaluate(parse_term("xy"), xor_table(), {{'x', 1}}), std::out_of_range);
    CHECK(evaluate(parse_term("xy·z"), cyclic_table(5), {{'x', 3}, {'y', 4}, {'z', 4}}) == 1);
}

TEST_CASE("satisfaction")
{
    CHECK(satisfies(xor_table(), parse_identity("((e·xy)·yz)z = x")));
    CHECK_FALSE(satisfies(xor_table(), parse_identity("x·y = x")));
    CayleyTable one;
    for (const char *s : {"x = e", "xy = z", "xy = x", "((e·xy)·yz)z = x"})
        CHECK(satisfies(one, parse_identity(s)));
}

TEST_CASE("Boolean group recognition")
{
    CHECK(is_boolean_group(xor_table()));
    CHECK(is_boolean_group(klein_four_table()));
    CHECK(is_boolean_group(CayleyTable{}));
    CHECK_FALSE(is_boolean_group(cyclic_table(3)));
    CHECK_FALSE(is_boolean_group(cyclic_table(4)));
    CHECK_FALSE(is_boolean_group(left_projection(2)));
}

TEST_CASE("model search examples")
{
    Identity fixture = parse_identity("((e·xy)·yz)z = x");
    std::vector<CayleyTable> two = all_models({fixture}, 2);
    REQUIRE(two.size() == 1);
    CHECK(two[0] == xor_table());
    CHECK(all_models({fixture}, 3).empty());
    std::vector<CayleyTable> four = all_models({fixture}, 4);
    REQUIRE(four.size() == 1);
    CHECK(four[0] == klein_four_table());
    CHECK(all_models({parse_identity("x = e")}, 2).empty());
}

TEST_CASE("model search agrees with exhaustive enumeration up to size 3")
{
    for (const std::string &text : oracle::model_check_identities())
    {
        Identity id = parse_identity(text);
        for (int n = 1; n <= max_naive_model_size; ++n)
        {
            CAPTURE(text);
            CAPTURE(n);
            std::set<std::vector<int>> expected = oracle::all_models({id}, n);
            std::vector<CayleyTable> found = all_models({id}, n);
            CHECK(found.size() == expected.size()); // no duplicates
            CHECK(cell_set(found) == expected);
            CHECK(cell_set(enumerate_models_naive({id}, n, serial_workers)) == expected);

            ModelQuery q;
            q.identities = {id};
            q.size = n;
            q.mode = ModelMode::count;
            CHECK(find_models(q).count == expected.size());
        }
    }
}

TEST_CASE("sets of identities")
{
    std::vector<Identity> group = boolean_group_axioms();
    for (int n = 1; n <= 3; ++n)
        CHECK(cell_set(all_models(group, n)) == oracle::all_models(group, n));
    CHECK(all_models(group, 4).size() == 1);
    CHECK(all_models(group, 5).empty());
}

TEST_CASE("naive enumeration: serial and parallel agree in order")
{
    std::vector<Identity> ids{parse_identity("xy = yx")};
    std::vector<CayleyTable> serial = enumerate_models_naive(ids, 3, serial_workers);
    std::vector<CayleyTable> parallel = enumerate_models_naive(ids, 3, default_workers);
    CHECK(serial.size() == 729);
    CHECK(serial == parallel);
    CHECK(std::is_sorted(serial.begin(), serial.end(),
                         [](const CayleyTable &a, const CayleyTable &b) { return a.cells < b.cells; }));
    CHECK_THROWS_AS(enumerate_models_naive(ids, 4), std::invalid_argument);
}

TEST_CASE("found models satisfy the query")
{
    std::mt19937_64 rng(41);
    for (int i = 0; i < 60; ++i)
    {
        Identity id{oracle::random_term(rng, 2 + static_cast<std::size_t>(i % 4), "exy"),
                    oracle::random_term(rng, 1 + static_cast<std::size_t>(i % 3), "exy")};
        ModelQuery q;
        q.identities = {id};
        q.size = 4;
        q.limit = 200;
        ModelSearchResult r = find_models(q);
        CHECK(r.models.size() <= 200);
        for (const CayleyTable &t : r.models)
        {
            CAPTURE(print_identity(id));
            CHECK(oracle::holds(id, t.cells, t.n));
        }
    }
}

TEST_CASE("search modes and limits")
{
    Identity comm = parse_identity("xy = yx");
    ModelQuery q;
    q.identities = {comm};
    q.size = 3;
    q.mode = ModelMode::find_one;
    CHECK(find_models(q).models.size() == 1);
    q.mode = ModelMode::find_all;
    q.limit = 5;
    ModelSearchResult limited = find_models(q);
    CHECK(limited.models.size() == 5);
    q.limit = std::numeric_limits<std::size_t>::max();
    std::vector<CayleyTable> all = find_models(q).models;
    CHECK(std::equal(limited.models.begin(), limited.models.end(), all.begin())); // prefix of the full order
    CHECK(find_models(q).models == all);                                          // deterministic
    q.size = 0;
    CHECK_THROWS_AS(find_models(q), std::invalid_argument);
    q.size = max_model_size + 1;
    CHECK_THROWS_AS(find_models(q), std::invalid_argument);
}

TEST_CASE("least-number pruning keeps one table per isomorphism class or more")
{
    ModelQuery q;
    q.identities = boolean_group_axioms();
    q.size = 4;
    q.least_number = true;
    std::vector<CayleyTable> pruned = find_models(q).models;
    REQUIRE(pruned.size() == 1);
    CHECK(is_boolean_group(pruned[0]));

    q.identities = {parse_identity("xy = yx")};
    q.size = 3;
    std::vector<CayleyTable> some = find_models(q).models;
    q.least_number = false;
    std::vector<CayleyTable> all = find_models(q).models;
    CHECK(some.size() < all.size());
    std::set<std::vector<int>> full = cell_set(all);
    for (const CayleyTable &t : some)
        CHECK(full.count(t.cells) == 1);
}

TEST_CASE("identities failing parity never hold in the two-element group")
{
    std::mt19937_64 rng(42);
    int failing = 0;
    for (int i = 0; i < 400; ++i)
    {
        Identity id{oracle::random_term(rng, 1 + static_cast<std::size_t>(i % 6), "exyz"),
                    oracle::random_term(rng, 1 + static_cast<std::size_t>(i % 3), "exyz")};
        if (parity_decide(id))
            continue;
        ++failing;
        for (const CayleyTable &t : all_models({id}, 2))
            CHECK(t != xor_table());
        DecisionResult r = z2_decide(id);
        REQUIRE(r.witness);
        CHECK(evaluate(id.lhs, xor_table(), *r.witness) != evaluate(id.rhs, xor_table(), *r.witness));
    }
    CHECK(failing > 100);
}

TEST_CASE("fixture model profile up to size 4")
{
    for (const TaggedFormula &f : fixtures().all())
    {
        CAPTURE(f.tag);
        const std::size_t expected[] = {1, 1, 0, 1};
        for (int n = 1; n <= 4; ++n)
        {
            std::vector<CayleyTable> models = all_models({f.identity}, n);
            CHECK(models.size() == expected[n - 1]);
            for (const CayleyTable &t : models)
                CHECK(oracle::boolean_group(t.cells, t.n));
        }
    }
}

TEST_CASE("triviality evidence")
{
    TrivialityVerdict v = is_trivializing(parse_identity("x = e"), 6);
    CHECK(v.trivializing);
    CHECK(v.bound == 6);
    CHECK_FALSE(v.witness);

    CHECK(is_trivializing(parse_identity("x·y = z"), 6).trivializing);

    TrivialityVerdict proj = is_trivializing(parse_identity("x·y = x"), 6);
    CHECK_FALSE(proj.trivializing);
    REQUIRE(proj.witness);
    CHECK(*proj.witness == left_projection(2));

    CHECK_THROWS_AS(is_trivializing(parse_identity("x = e"), 7), std::invalid_argument);
}

TEST_CASE("table formats")
{
    CHECK(table_to_json(xor_table()) == R"({"n":2,"e":0,"rows":[[0,1],[1,0]]})");
    CHECK(table_to_grid(xor_table()).find("1 0") != std::string::npos);
}
