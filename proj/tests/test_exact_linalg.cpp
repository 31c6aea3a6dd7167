#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "loophom/exact_linalg.hpp"
#include "oracles.hpp"

using namespace loophom;

namespace {

bool is_diagonal_chain(const IntMatrix& d, std::size_t rank) {
    for (std::size_t r = 0; r < d.rows(); ++r)
        for (std::size_t c = 0; c < d.cols(); ++c)
            if (r != c && d(r, c) != 0) return false;
    const std::size_t top = std::min(d.rows(), d.cols());
    for (std::size_t i = 0; i < top; ++i) {
        if (d(i, i) < 0) return false;
        if ((i < rank) != (d(i, i) != 0)) return false;
        if (i + 1 < rank && d(i + 1, i + 1) % d(i, i) != 0) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("smith normal form of the zero matrix is trivial") {
    IntMatrix z(2, 3);
    auto s = smith_normal_form(z);
    CHECK(s.D == z);
    CHECK(s.U == IntMatrix::identity(2));
    CHECK(s.V == IntMatrix::identity(3));
    CHECK(s.rank == 0);
}

TEST_CASE("smith normal form of the identity") {
    auto s = smith_normal_form(IntMatrix::identity(3));
    CHECK(s.D == IntMatrix::identity(3));
}

TEST_CASE("smith normal form of [[2,4],[6,8]] is diag(2,4)") {
    IntMatrix m{{2, 4}, {6, 8}};
    // determinantal divisors: gcd(2,4,6,8) = 2, |det| = 8
    auto expected = oracle::invariant_factors(m);
    REQUIRE(expected == std::vector<Int>{2, 4});
    auto s = smith_normal_form(m);
    CHECK(s.D == IntMatrix{{2, 0}, {0, 4}});
    CHECK(s.U * s.D * s.V == m);
}

TEST_CASE("smith normal form invariants on random matrices") {
    std::mt19937 rng(20261018);
    std::uniform_int_distribution<int> dim(1, 6);
    for (int trial = 0; trial < 300; ++trial) {
        const auto m = oracle::random_matrix(rng, dim(rng), dim(rng), -9, 9);
        auto s = smith_normal_form(m);
        REQUIRE(s.U * s.D * s.V == m);
        REQUIRE(s.left * m * s.right == s.D);
        REQUIRE(abs(oracle::determinant(s.U)) == 1);
        REQUIRE(abs(oracle::determinant(s.V)) == 1);
        REQUIRE(is_diagonal_chain(s.D, s.rank));
        if (m.rows() <= 4 && m.cols() <= 4) REQUIRE(s.invariant_factors() == oracle::invariant_factors(m));
    }
}

TEST_CASE("kernel bases") {
    CHECK(kernel_basis(IntMatrix::identity(2)).cols() == 0);

    auto k = kernel_basis(IntMatrix{{1, 1}});
    REQUIRE(k.cols() == 1);
    CHECK(abs(k(0, 0)) == 1);
    CHECK(k(0, 0) == -k(1, 0));

    CHECK(kernel_basis(IntMatrix(1, 3)).cols() == 3);
}

TEST_CASE("kernel rank plus image rank equals column count") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> dim(1, 5);
    for (int trial = 0; trial < 200; ++trial) {
        auto m = oracle::random_matrix(rng, dim(rng), dim(rng), -3, 3);
        auto k = kernel_basis(m);
        CHECK(k.cols() + oracle::rank(m) == m.cols());
        CHECK((m * k).is_zero());
        // kernel basis is saturated: its own invariant factors are all one
        for (const auto& f : oracle::invariant_factors(k)) CHECK(f == 1);
    }
}

TEST_CASE("cokernels") {
    auto c = cokernel(IntMatrix{{2}});
    CHECK(c.free_rank == 0);
    CHECK(c.torsion == std::vector<Int>{2});

    CHECK(cokernel(IntMatrix(2, 0)).free_rank == 2);

    // Z^2/(2Z x 3Z): six classes; (1,1) has order 6, so the group is cyclic
    int order_of_11 = 1;
    while (!(order_of_11 % 2 == 0 && order_of_11 % 3 == 0)) ++order_of_11;
    REQUIRE(order_of_11 == 6);
    auto c6 = cokernel(IntMatrix{{2, 0}, {0, 3}});
    CHECK(c6.free_rank == 0);
    CHECK(c6.torsion == std::vector<Int>{6});
    CHECK(c6.to_string() == "Z/6");
    CHECK(c6.to_primary_string() == "Z/2 + Z/3");
}

TEST_CASE("cokernel is invariant under permutations and unimodular changes") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        auto m = oracle::random_matrix(rng, 3, 4, -5, 5);
        IntMatrix p{{0, 1, 0}, {0, 0, 1}, {1, 0, 0}};
        IntMatrix u{{1, 2, 0}, {0, 1, 0}, {0, -3, 1}};
        IntMatrix v{{1, 0, 0, 0}, {4, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}};
        CHECK(cokernel(p * m) == cokernel(m));
        CHECK(cokernel(u * m * v) == cokernel(m));
    }
}

TEST_CASE("abelian group canonical form") {
    auto g = AbelianGroup::from_cyclic_orders(1, {Int(4), Int(6), Int(1), Int(0)});
    CHECK(g.free_rank == 2);
    CHECK(g.torsion == std::vector<Int>{2, 12});
    CHECK(direct_sum(AbelianGroup{0, {2}}, AbelianGroup{0, {3}}) == AbelianGroup{0, {6}});
    CHECK(AbelianGroup{}.to_string() == "0");
}

TEST_CASE("subquotient basics") {
    // full lattice over zero image
    auto sq = subquotient(IntMatrix::identity(3), IntMatrix(3, 0));
    CHECK(sq.group() == AbelianGroup{3, {}});

    // chain Z --0--> Z --2--> Z: middle homology trivial, right cokernel Z/2
    IntMatrix d1{{0}}, d2{{2}};
    auto middle = subquotient(kernel_basis(d2), d1);
    CHECK(middle.group().is_trivial());
    auto right = subquotient(IntMatrix::identity(1), d2);
    CHECK(right.group() == AbelianGroup{0, {2}});
    CHECK(right.coordinates({Int(3)}) == std::vector<Int>{1});
    CHECK(right.is_zero_class({Int(4)}));
}

TEST_CASE("subquotient rejects an image outside the kernel") {
    try {
        subquotient(IntMatrix{{1}, {0}}, IntMatrix{{0}, {1}});
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == "image not contained in kernel");
    }
}

TEST_CASE("subquotient lifts generate the quotient with the right orders") {
    IntMatrix k = IntMatrix::identity(2);
    IntMatrix i{{2, 0}, {0, 0}};
    auto sq = subquotient(k, i);
    REQUIRE(sq.group() == AbelianGroup{1, {2}});
    REQUIRE(sq.lifts().size() == 2);
    // torsion lift has order 2: twice it is a boundary, itself is not
    auto t = sq.lifts()[0];
    CHECK_FALSE(sq.is_zero_class(t));
    std::vector<Int> twice{2 * t[0], 2 * t[1]};
    CHECK(sq.is_zero_class(twice));
    CHECK(sq.coordinates(sq.lifts()[1]) == std::vector<Int>{0, 1});
}

TEST_CASE("subquotient matches the brute-force homology oracle on random complexes") {
    std::mt19937 rng(4242);
    std::uniform_int_distribution<int> dim(1, 4);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t b = dim(rng), c = dim(rng), a = dim(rng);
        auto outgoing = oracle::random_matrix(rng, c, b, -3, 3);
        auto kb = kernel_basis(outgoing);
        auto incoming = kb * oracle::random_matrix(rng, kb.cols(), a, -3, 3);
        REQUIRE((outgoing * incoming).is_zero());

        auto h = subquotient(kb, incoming).group();

        const std::size_t rank_in = oracle::rank(incoming);
        CHECK(h.free_rank == (b - oracle::rank(outgoing)) - rank_in);
        std::vector<Int> tors;
        for (const auto& f : oracle::invariant_factors(incoming))
            if (f > 1) tors.push_back(f);
        CHECK(h.torsion == tors);

        // count classes of coker(incoming) (x) Z/m by enumerating the box [0, m)^a
        for (int m = 2; m <= 9; ++m) {
            std::size_t total = 1;
            for (std::size_t i = 0; i < b; ++i) total *= static_cast<std::size_t>(m);
            const std::size_t counted = total / oracle::image_size_mod(incoming, m);
            std::size_t predicted = 1;
            for (std::size_t i = 0; i < b - rank_in; ++i) predicted *= static_cast<std::size_t>(m);
            for (const auto& t : h.torsion) predicted *= static_cast<std::size_t>(boost::multiprecision::gcd(Int(m), t));
            CHECK(counted == predicted);
        }
    }
}

TEST_CASE("saturation and lattice bases") {
    IntMatrix m{{2}, {4}};
    auto lb = lattice_basis(m);
    REQUIRE(lb.cols() == 1);
    CHECK(abs(lb(0, 0)) == 2);
    auto sb = saturation_basis(m);
    REQUIRE(sb.cols() == 1);
    CHECK(abs(sb(0, 0)) == 1);
    CHECK(abs(sb(1, 0)) == 2);
}
