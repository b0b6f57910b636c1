#include "bgax/pipeline.hpp"
#include "bgax/term.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace bgax;

namespace
{

Term x() { return Term::var('x'); }
Term y() { return Term::var('y'); }
Term z() { return Term::var('z'); }
Term mul(Term a, Term b) { return Term::product(std::move(a), std::move(b)); }

} // namespace

TEST_CASE("juxtaposition binds tighter than the dot, both associate left")
{
    // ((e·xy)·yz)z
    Term expected = mul(mul(mul(Term::e(), mul(x(), y())), mul(y(), z())), z());
    CHECK(parse_term("((e·xy)·yz)z") == expected);
    CHECK(parse_term("e·xy·yz·z") == expected);
    CHECK(parse_term("e·xy·(yz·z)") != expected);
    CHECK(parse_term("xyz") == mul(mul(x(), y()), z()));
    CHECK(parse_term("x·y·z") == mul(mul(x(), y()), z()));
    CHECK(parse_term("x·yz") == mul(x(), mul(y(), z())));
    CHECK(parse_term("xy·z") == mul(mul(x(), y()), z()));
}

TEST_CASE("dot spellings and whitespace")
{
    Term t = parse_term("x·yz");
    CHECK(parse_term("x*yz") == t);
    CHECK(parse_term("x \\cdot yz") == t);
    CHECK(parse_term("  x  ·  y z ") == t);
}

TEST_CASE("malformed terms are rejected with a position")
{
    for (const char *bad : {"", "x··y", "(x", "x)", "()", "·x", "x·", "xE", "x+y", "ab1", "(x·)y"})
    {
        CAPTURE(bad);
        CHECK_THROWS_AS(parse_term(bad), parse_error);
    }
    try
    {
        parse_term("x··y");
        FAIL("no exception");
    }
    catch (const parse_error &err)
    {
        CHECK(err.position() == 3); // second dot, after the two-byte first one
    }
}

TEST_CASE("identities need exactly one '=' and two sides")
{
    Identity id = parse_identity("((e·xy)·yz)z = x");
    CHECK(id.rhs == x());
    CHECK(parse_identity("e = e") == Identity{Term::e(), Term::e()});
    CHECK_THROWS_AS(parse_identity("x = "), parse_error);
    CHECK_THROWS_AS(parse_identity(" = x"), parse_error);
    CHECK_THROWS_AS(parse_identity("x = y = z"), parse_error);
    CHECK_THROWS_AS(parse_identity("xy"), parse_error);
}

TEST_CASE("printing style")
{
    CHECK(print_term(x()) == "x");
    CHECK(print_term(mul(mul(x(), y()), z())) == "xyz");
    CHECK(print_term(mul(x(), mul(y(), z()))) == "x·yz");
    CHECK(print_term(parse_term("((e·xy)·yz)z")) == "(e·xy·yz)z");
    CHECK(print_term(parse_term("e((x·yz)y·z)")) == "e·(x·yz)yz");
    CHECK(print_term(parse_term("x·yz"), PrintStyle::ascii) == "x*yz");
    CHECK(print_identity(parse_identity("xx=e")) == "xx = e");
}

TEST_CASE("print and parse round-trip on random terms")
{
    std::mt19937_64 rng(11);
    for (int i = 0; i < 2000; ++i)
    {
        Term t = oracle::random_term(rng, 1 + static_cast<std::size_t>(i % 14), "exyzuw");
        CAPTURE(print_term(t));
        CHECK(parse_term(print_term(t)) == t);
        CHECK(parse_term(print_term(t, PrintStyle::ascii)) == t);
    }
}

TEST_CASE("every fixture parses to one tree that re-prints stably")
{
    for (const TaggedFormula &f : fixtures().all())
    {
        CAPTURE(f.tag);
        std::string printed = print_identity(f.identity);
        Identity again = parse_identity(printed);
        CHECK(again == f.identity);
        CHECK(print_identity(again) == printed);
    }
}

TEST_CASE("occurrence counts")
{
    Identity fixture = parse_identity("((e·xy)·yz)z = x");
    CHECK(occurrences(fixture.lhs) == Occurrences{{'e', 1}, {'x', 1}, {'y', 2}, {'z', 2}});
    CHECK(occurrences(x()) == Occurrences{{'x', 1}});
    CHECK(occurrences(mul(Term::e(), Term::e())) == Occurrences{{'e', 2}});
    CHECK(occurrences(fixture) == Occurrences{{'e', 1}, {'x', 2}, {'y', 2}, {'z', 2}});
}

TEST_CASE("occurrences are additive over products")
{
    std::mt19937_64 rng(12);
    for (int i = 0; i < 500; ++i)
    {
        Term a = oracle::random_term(rng, 1 + static_cast<std::size_t>(i % 7), "exyz");
        Term b = oracle::random_term(rng, 1 + static_cast<std::size_t>(i % 5), "exyz");
        Occurrences sum = occurrences(a);
        for (auto [symbol, k] : occurrences(b))
            sum[symbol] += k;
        CHECK(occurrences(mul(a, b)) == sum);
    }
}

TEST_CASE("mirror")
{
    CHECK(mirror(mul(x(), mul(y(), z()))) == mul(mul(z(), y()), x()));
    CHECK(mirror(x()) == x());
    std::mt19937_64 rng(13);
    for (int i = 0; i < 100; ++i)
    {
        Term t = oracle::random_term(rng, 1 + static_cast<std::size_t>(i % 12), "exyz");
        CHECK(mirror(mirror(t)) == t);
        CHECK(mirror(t) == oracle::reverse(t));
        CHECK(occurrences(mirror(t)) == occurrences(t));
    }
}

TEST_CASE("term order compares leaf sequences first")
{
    CHECK(Term::e() < x());
    CHECK(x() < y());
    // Same leaves: shape decides, products before leaves in preorder.
    CHECK(parse_term("xy·z") < parse_term("x·yz"));
    CHECK(parse_term("ez") < parse_term("xy"));
    CHECK((parse_term("xy") <=> parse_term("xy")) == 0);
}

TEST_CASE("variables, leaf sequence and renaming")
{
    Identity id = parse_identity("(e·xy·zy)z = x");
    CHECK(variables(id) == std::vector<char>{'x', 'y', 'z'});
    CHECK(leaf_sequence(id.lhs) == "exyzyz");
    CHECK(rename(id.lhs, {{'y', 'z'}, {'z', 'y'}}) == parse_term("(e·xz·yz)y"));
    CHECK_THROWS_AS(Term::var('e'), std::invalid_argument);
    CHECK_THROWS_AS(Term::var('A'), std::invalid_argument);
}

TEST_CASE("formula files")
{
    const char *text = "# comment\n"
                       "\n"
                       "80R4↑: ((e·xy)·yz)z = x\n"
                       "81R1↓: e((x·yz)y·z) = x   # trailing comment\n"
                       "xx = e\n"
                       "bad: x = \n";
    FormulaFile f = parse_formula_file(text);
    REQUIRE(f.formulas.size() == 3);
    CHECK(f.formulas[0].tag == "80R4u");
    CHECK(f.formulas[1].tag == "81R1d");
    CHECK(f.formulas[2].tag == "line5");
    REQUIRE(f.errors.size() == 1);
    CHECK(f.errors[0].line == 6);

    FormulaFile again = parse_formula_file(format_formula_file(f.formulas));
    CHECK(again.errors.empty());
    REQUIRE(again.formulas.size() == 3);
    for (std::size_t i = 0; i < 3; ++i)
    {
        CHECK(again.formulas[i].tag == f.formulas[i].tag);
        CHECK(again.formulas[i].identity == f.formulas[i].identity);
    }
    CHECK(parse_formula_file("").formulas.empty());
}
