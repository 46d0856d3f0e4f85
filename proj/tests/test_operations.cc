#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <dred/digraph.hh>
#include <dred/errors.hh>
#include <dred/operations.hh>

using namespace dred;

namespace
{
    auto kind_of(auto && f) -> std::optional<ErrorKind>
    {
        try {
            f();
        }
        catch (const Error & e) {
            return e.kind();
        }
        return std::nullopt;
    }
}

TEST_CASE("op tables")
{
    auto xor3 = make_op("x", 3, 2, [] (const std::vector<int> & a) { return a[0] ^ a[1] ^ a[2]; });
    CHECK(xor3.values.size() == 8);
    CHECK(xor3({ 1, 1, 0 }) == 0);
    CHECK(xor3.index({ 1, 0, 0 }) == 4);
    CHECK(parse_op(serialize_op(xor3)) == xor3);

    CHECK(kind_of([] { parse_op("op f 2 over 2\n0 0 0\n0 1 1\n1 0 1\n"); }) == ErrorKind::Syntax);
    CHECK(kind_of([] { parse_op("op f 2 over 2\n0 0 0\n0 1 2\n"); }) == ErrorKind::UnknownElement);
    CHECK(kind_of([] { parse_op("op f 2 over 2\n0 0\n"); }) == ErrorKind::ArityMismatch);
    CHECK(kind_of([] { parse_op(""); }) == ErrorKind::Syntax);

    int count = 0;
    for_each_tuple(3, 2, [&] (const std::vector<int> & t) { CHECK(t.size() == 2) ; ++count; });
    CHECK(count == 9);
}

TEST_CASE("identity files")
{
    auto sigma = parse_identities("# majority\nsymbol m 3\nidentity m(x,x,y) = x\nidentity m(x,y,x)=m(y,x,x)\n");
    CHECK(sigma.arity("m") == 3);
    CHECK(! sigma.arity("q"));
    REQUIRE(sigma.identities.size() == 2);
    CHECK(sigma.identities[0].text() == "m(x,x,y) = x");
    CHECK(sigma.identities[1].rhs == Term{ "m", { "y", "x", "x" } });
    CHECK(parse_identities(serialize_identities(sigma)).identities.size() == 2);

    CHECK(kind_of([] { parse_identities("symbol m 3\nidentity m(m(x,y,z),y,z) = x\n"); }) == ErrorKind::NonlinearIdentity);
    CHECK(kind_of([] { parse_identities("symbol m 3\nidentity m(x,y) = x\n"); }) == ErrorKind::ArityMismatch);
    CHECK(kind_of([] { parse_identities("identity q(x) = x\n"); }) == ErrorKind::Syntax);
    CHECK(kind_of([] { parse_identities("symbol m 3\nsymbol m 2\n"); }) == ErrorKind::Syntax);
    CHECK(kind_of([] { parse_identities("symbol m 0\n"); }) == ErrorKind::ArityMismatch);
    CHECK(parse_term("x").is_variable());
}

TEST_CASE("balance and idempotency")
{
    auto maj = majority_identities();
    CHECK(! maj.identities[1].balanced());
    CHECK(maj.identities[0].balanced());
    CHECK(! idempotency_missing(maj));
    for (auto & id : wnu_identities(3).identities)
        CHECK(id.balanced());

    auto no_idem = parse_identities("symbol m 3\nidentity m(x,x,y) = x\n");
    CHECK(idempotency_missing(no_idem) == "m");
    CHECK(kind_of([] { wnu_identities(1); }) == ErrorKind::ArityMismatch);
    CHECK(three_permutability_identities().symbols.size() == 2);
}

TEST_CASE("checking polymorphisms and identities")
{
    auto e = as_structure(single_edge(), Role::Template);
    auto z = as_structure(zigzag(), Role::Template);
    auto maj = make_op("m", 3, 2, [] (const std::vector<int> & a) { return (a[0] + a[1] + a[2]) >= 2 ? 1 : 0; });
    auto first = make_op("m", 3, 2, [] (const std::vector<int> & a) { return a[0]; });
    CHECK(is_polymorphism(maj, e));
    CHECK(satisfies(OpMap{ { "m", maj } }, majority_identities(), 2));
    CHECK(! satisfies(OpMap{ { "m", first } }, majority_identities(), 2));
    auto failure = first_failure(OpMap{ { "m", first } }, majority_identities(), 2);
    REQUIRE(failure);
    CHECK(failure->find("m(y,x,x) = x") != std::string::npos);
    CHECK(kind_of([&] { is_polymorphism(maj, z); }) == ErrorKind::ArityMismatch);
    CHECK(! satisfies(OpMap{ }, majority_identities(), 2));
    CHECK(first_failure(OpMap{ }, majority_identities(), 2)->find("no table") != std::string::npos);

    auto swap = make_op("s", 1, 2, [] (const std::vector<int> & a) { return 1 - a[0]; });
    CHECK(! is_polymorphism(swap, e));
    CHECK(is_polymorphism(swap, as_structure(directed_cycle(2), Role::Template)));
}
