#include "bgax/decision.hpp"
#include "bgax/parallel.hpp"
#include "bgax/pipeline.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace bgax;

namespace
{

bool parity_oracle(const Identity &id)
{
    for (char v : std::string("abcdfghijklmnopqrstuvwxyz"))
        if (oracle::parity_of(id.lhs, v) != oracle::parity_of(id.rhs, v))
            return false;
    return true;
}

} // namespace

TEST_CASE("parity criterion examples")
{
    CHECK(parity_decide(parse_identity("((e·xy)·yz)z = x")));
    CHECK(parity_decide(parse_identity("(ex·yz)z·y = x")));
    CHECK(parity_decide(parse_identity("x·y = y·x")));
    CHECK_FALSE(parity_decide(parse_identity("x·y = x")));
    CHECK(parity_decide(parse_identity("x·e = x")));
    CHECK(parity_decide(parse_identity("e = ee")));
    CHECK_FALSE(parity_decide(parse_identity("x = e")));
}

TEST_CASE("Z2 oracle examples")
{
    CHECK(z2_decide(parse_identity("((e·xy)·yz)z = x")).is_theorem);
    CHECK_FALSE(z2_decide(parse_identity("((e·xy)·yz)z = x")).witness);

    DecisionResult r = z2_decide(parse_identity("x·y = x"));
    CHECK_FALSE(r.is_theorem);
    REQUIRE(r.witness);
    CHECK(*r.witness == Z2Assignment{{'x', 0}, {'y', 1}});

    CHECK(z2_decide(parse_identity("e = e")).is_theorem);

    // First variable most significant: x = e fails first at x = 1.
    CHECK(*z2_decide(parse_identity("xy = e")).witness == Z2Assignment{{'x', 0}, {'y', 1}});
}

TEST_CASE("Z2 oracle refuses too many variables")
{
    std::string many = "abcdfghijklmnopqrstuv"; // 21 letters
    Term t = Term::var(many[0]);
    for (std::size_t i = 1; i < many.size(); ++i)
        t = Term::product(t, Term::var(many[i]));
    CHECK_THROWS_AS(z2_decide(Identity{t, t}), std::invalid_argument);
}

TEST_CASE("Z2 evaluation")
{
    Term t = parse_term("((e·xy)·yz)z");
    CHECK(z2_evaluate(t, {{'x', 1}, {'y', 0}, {'z', 1}}) == 1);
    CHECK(z2_evaluate(Term::e(), {}) == 0);
    CHECK_THROWS_AS(z2_evaluate(parse_term("xy"), {{'x', 1}}), std::out_of_range);
}

TEST_CASE("witnesses refute the identity in the two-element group")
{
    std::mt19937_64 rng(21);
    for (int i = 0; i < 3000; ++i)
    {
        Identity id{oracle::random_term(rng, 1 + static_cast<std::size_t>(i % 6), "exyzu"),
                    oracle::random_term(rng, 1 + static_cast<std::size_t>(i % 4), "exyzu")};
        DecisionResult r = z2_decide(id);
        CHECK(r.witness.has_value() == !r.is_theorem);
        if (r.witness)
            CHECK(z2_evaluate(id.lhs, *r.witness) != z2_evaluate(id.rhs, *r.witness));
    }
}

TEST_CASE("parity and Z2 agree with an independent parity count")
{
    std::mt19937_64 rng(22);
    for (int i = 0; i < 5000; ++i)
    {
        Identity id{oracle::random_term(rng, 1 + static_cast<std::size_t>(i % 9), "exyzuv"),
                    oracle::random_term(rng, 1 + static_cast<std::size_t>(i % 5), "exyzuv")};
        bool expected = parity_oracle(id);
        CHECK(parity_decide(id) == expected);
        CHECK(z2_decide(id).is_theorem == expected);
    }
}

TEST_CASE("exhaustive agreement sweep, serial and parallel")
{
    AgreementSweep serial = parity_z2_sweep(5, "exyz", serial_workers);
    AgreementSweep parallel = parity_z2_sweep(5, "exyz", default_workers);
    CHECK(serial.disagreements == 0);
    CHECK_FALSE(serial.first_disagreement);
    CHECK(serial.identities == parallel.identities);
    CHECK(serial.theorems == parallel.theorems);

    // Identity count: sum over leaf splits (l, r) of C(l) C(r) 4^(l+r).
    std::size_t expected = 0;
    for (unsigned total = 2; total <= 5; ++total)
        for (unsigned l = 1; l < total; ++l)
            expected += oracle::catalan_trees(l) * oracle::catalan_trees(total - l) *
                        (std::size_t{1} << (2 * total));
    CHECK(serial.identities == expected);

    // Theorems by brute force over the same identities.
    std::size_t theorems = 0;
    for (unsigned total = 2; total <= 5; ++total)
        for (unsigned l = 1; l < total; ++l)
        {
            std::size_t labelings = std::size_t{1} << (2 * total);
            for (std::size_t code = 0; code < labelings; ++code)
            {
                std::string leaves;
                for (unsigned i = 0; i < total; ++i)
                    leaves += "exyz"[(code >> (2 * i)) & 3];
                std::size_t lt = oracle::trees_over(leaves.substr(0, l)).size();
                std::size_t rt = oracle::trees_over(leaves.substr(l)).size();
                Identity sample{oracle::trees_over(leaves.substr(0, l))[0], oracle::trees_over(leaves.substr(l))[0]};
                if (parity_oracle(sample))
                    theorems += lt * rt; // parity ignores shape
            }
        }
    CHECK(serial.theorems == theorems);
}

TEST_CASE("every fixture passes, and one more z on the left breaks it")
{
    for (const TaggedFormula &f : fixtures().all())
    {
        CAPTURE(f.tag);
        CHECK(parity_decide(f.identity));
        CHECK(z2_decide(f.identity).is_theorem);
        Identity longer{Term::product(f.identity.lhs, Term::var('z')), f.identity.rhs};
        CHECK_FALSE(parity_decide(longer));
        CHECK_FALSE(z2_decide(longer).is_theorem);
    }
}
