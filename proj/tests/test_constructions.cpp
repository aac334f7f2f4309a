#include <doctest.h>

#include <set>

#include "kloops/constructions.hpp"
#include "kloops/identities.hpp"
#include "kloops/subloop.hpp"
#include "oracles.hpp"

using namespace kloops;

TEST_CASE("cyclic fixtures") {
    CHECK(cyclic_kloop(1).order() == 1);
    LoopStructure z5 = cyclic_kloop(5);
    CHECK(z5.table() == oracle::z_add(5));
    CHECK_THROWS_AS(cyclic_kloop(4), LoopError);
    CHECK_THROWS_AS(cyclic_kloop(0), LoopError);
}

TEST_CASE("groups validate and misbehave correctly") {
    GroupTable h = heisenberg27();
    // (1,0,0)*(0,1,0) = (1,1,1) and (0,1,0)*(1,0,0) = (1,1,0).
    CHECK(h.mul(9, 3) == 13);
    CHECK(h.mul(3, 9) == 12);
    for (int x = 0; x < 27; ++x) CHECK(h.mul(h.mul(x, x), x) == 0);  // exponent 3
    CHECK(oracle::is_assoc(h.table));

    CHECK_THROWS_AS(make_group(parse_table("3\n0 1 2\n1 2 0\n2 1 0")), LoopError);
}

TEST_CASE("half-sandwich loops from odd groups") {
    GroupTable z5g = make_group(oracle::z_add(5));
    CHECK(kloop_from_group(z5g).table() == cyclic_kloop(5).table());

    LoopStructure h = kloop_from_group(heisenberg27());
    CHECK(h.is_kloop());
    CHECK(h.is_uniquely_2_divisible());
    // Class-2 collapse: the half-sandwich of either nonabelian order-27
    // group is an abelian group, so no nonassociativity witness exists.
    CHECK(h.is_associative());

    // The class-3 wreath product is the genuinely nonassociative example.
    LoopStructure w = oracle::wreath81_kloop();
    CHECK(!w.is_associative());
    CHECK(w.is_kloop());

    // Even-order groups have non-injective squaring.
    CHECK_THROWS_AS(kloop_from_group(make_group(oracle::s3_table())), LoopError);
    try {
        kloop_from_group(make_group(oracle::z_add(4)));
        CHECK(false);
    } catch (const LoopError& e) {
        CHECK(e.kind() == ErrorKind::NotTwoDivisibleGroup);
    }
}

TEST_CASE("abelian implies associative half-sandwich") {
    for (int n : {3, 5, 7, 9, 15}) {
        LoopStructure L = kloop_from_group(make_group(oracle::z_add(n)));
        CHECK(L.is_associative());
    }
}

TEST_CASE("twisted-set loops from involutive automorphisms") {
    // alpha = identity: X = {e}.
    GroupTable h = heisenberg27();
    std::vector<int> ident(27);
    std::iota(ident.begin(), ident.end(), 0);
    TwistedSubloop trivial = kloop_from_involution(h, ident);
    CHECK(trivial.loop.order() == 1);
    CHECK(trivial.carrier == std::vector<int>{0});

    // Z5 with negation: X is all of Z5 and the loop is Z5 itself.
    GroupTable z5g = make_group(oracle::z_add(5));
    std::vector<int> negate5{0, 4, 3, 2, 1};
    TwistedSubloop all5 = kloop_from_involution(z5g, negate5);
    CHECK(all5.loop.table() == cyclic_kloop(5).table());
    CHECK(all5.carrier == std::vector<int>{0, 1, 2, 3, 4});

    // Z3 x Z3 with the swap: X = {(t,-t)} has size 3 and is a Z3.
    GroupTable z33 = make_group(direct_product(cyclic_kloop(3), cyclic_kloop(3)).table());
    std::vector<int> swap9(9);
    for (int x = 0; x < 9; ++x) swap9[x] = (x % 3) * 3 + x / 3;
    TwistedSubloop diag = kloop_from_involution(z33, swap9);
    CHECK(diag.loop.order() == 3);
    CHECK(find_isomorphism(diag.loop, cyclic_kloop(3)).has_value());
    // Members of X are exactly the (t, -t) pairs: indices 0, 5, 7.
    std::set<int> members(diag.carrier.begin(), diag.carrier.end());
    CHECK(members == std::set<int>{0, 5, 7});
    // Every member satisfies alpha(x) = x^-1.
    for (int x : diag.carrier) CHECK(swap9[x] == z33.inverse[x]);

    // Error paths.
    std::vector<int> not_auto{1, 2, 3, 4, 0};
    CHECK_THROWS_AS(kloop_from_involution(z5g, not_auto), LoopError);
    std::vector<int> doubling{0, 2, 4, 1, 3};  // automorphism of order 4
    try {
        kloop_from_involution(z5g, doubling);
        CHECK(false);
    } catch (const LoopError& e) {
        CHECK(e.kind() == ErrorKind::NotInvolutive);
    }
    // Z4 with negation: X = {0, 2}, squaring on X is not injective.
    GroupTable z4g = make_group(oracle::z_add(4));
    std::vector<int> negate4{0, 3, 2, 1};
    try {
        kloop_from_involution(z4g, negate4);
        CHECK(false);
    } catch (const LoopError& e) {
        CHECK(e.kind() == ErrorKind::NotTwoDivisibleSet);
    }
}

TEST_CASE("direct products") {
    LoopStructure z3x3 = direct_product(cyclic_kloop(3), cyclic_kloop(3));
    CHECK(z3x3.order() == 9);
    CHECK(z3x3.is_kloop());
    CHECK(z3x3.is_uniquely_2_divisible());
    for (int a = 0; a < 9; ++a) CHECK(power(z3x3, a, 3) == 0);  // elementary abelian

    LoopStructure with_trivial = direct_product(cyclic_kloop(5), cyclic_kloop(1));
    CHECK(with_trivial.table() == cyclic_kloop(5).table());

    CHECK(find_isomorphism(direct_product(cyclic_kloop(3), cyclic_kloop(5)), cyclic_kloop(15))
              .has_value());

    // Flags are conjunctions of the factors' flags.
    LoopStructure z4 = make_loop(oracle::z_add(4));
    LoopStructure mixed = direct_product(cyclic_kloop(3), z4);
    CHECK(mixed.is_kloop());
    CHECK(!mixed.is_uniquely_2_divisible());
}

TEST_CASE("constructed fixtures pass the whole identity suite") {
    for (auto L : {cyclic_kloop(15), direct_product(cyclic_kloop(3), cyclic_kloop(3)),
                   kloop_from_group(heisenberg27())}) {
        CHECK(L.is_kloop());
        CHECK(L.is_uniquely_2_divisible());
        CHECK(check_kloop_identities(L).all_pass());
    }
}

TEST_CASE("enumeration counts match the brute-force oracle up to order 6") {
    for (int n = 1; n <= 6; ++n) {
        // Oracle: generate every loop table, filter Bol + AIP, classify by
        // brute-force canonical form.
        std::set<std::vector<int>> classes;
        for (const CayleyTable& t : oracle::all_loops(n))
            if (oracle::is_bol(t) && oracle::is_aip(t)) classes.insert(oracle::canonical_min(t));
        auto enumerated = enumerate_kloops(n);
        CHECK(enumerated.size() == classes.size());
        for (const CayleyTable& t : enumerated) CHECK(classes.count(t.cells()) == 1);
    }
    // Known class counts: Z_n for prime orders, Z4 + Z2^2 at 4, Z6 alone at
    // 6 (S3 fails AIP).
    CHECK(enumerate_kloops(1).size() == 1);
    CHECK(enumerate_kloops(3).size() == 1);
    CHECK(enumerate_kloops(4).size() == 2);
    CHECK(enumerate_kloops(5).size() == 1);
    CHECK(enumerate_kloops(6).size() == 1);
}

TEST_CASE("enumeration outputs are canonical and valid") {
    auto tables = enumerate_kloops(7);
    CHECK(tables.size() == 1);
    for (const CayleyTable& t : tables) {
        CHECK(oracle::is_bol(t));
        CHECK(oracle::is_aip(t));
        CHECK(oracle::canonical_min(t) == t.cells());
        CHECK(canonicalize(t) == t);
    }
    CHECK_THROWS_AS(enumerate_kloops(9), LoopError);
    try {
        enumerate_kloops(4, 1);
        CHECK(false);
    } catch (const LoopError& e) {
        CHECK(e.kind() == ErrorKind::CapExceeded);
    }
}

TEST_CASE("order-8 enumeration: frozen census") {
    auto tables = enumerate_kloops(8);
    CHECK(tables.size() == 6);
    int nonassoc = 0;
    for (const CayleyTable& t : tables) {
        CHECK(oracle::is_bol(t));
        CHECK(oracle::is_aip(t));
        if (!oracle::is_assoc(t)) ++nonassoc;
    }
    CHECK(nonassoc == 3);
    // The three abelian groups of order 8 all appear.
    LoopStructure z8 = make_loop(oracle::z_add(8));
    LoopStructure z4xz2 = direct_product(make_loop(oracle::z_add(4)), make_loop(oracle::z_add(2)));
    LoopStructure z2cubed = direct_product(
        direct_product(make_loop(oracle::z_add(2)), make_loop(oracle::z_add(2))),
        make_loop(oracle::z_add(2)));
    for (auto* G : {&z8, &z4xz2, &z2cubed}) {
        int hits = 0;
        for (const CayleyTable& t : tables)
            if (find_isomorphism(*G, make_loop(t)).has_value()) ++hits;
        CHECK(hits == 1);
    }
    // Pairwise non-isomorphic.
    for (size_t i = 0; i < tables.size(); ++i)
        for (size_t j = i + 1; j < tables.size(); ++j)
            CHECK(!find_isomorphism(make_loop(tables[i]), make_loop(tables[j])).has_value());
}
