#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "loophom/graded_algebra.hpp"

#include <random>

using namespace loophom;

namespace {

AlgebraPresentation exterior_on(const std::string& name, Bidegree b) {
    AlgebraPresentation p;
    p.add_generator(name, b, GeneratorKind::exterior);
    return p;
}

AlgebraPresentation polynomial_on(const std::string& name, Bidegree b, bool strict = false) {
    AlgebraPresentation p;
    p.add_generator(name, b, GeneratorKind::polynomial);
    if (strict) p.set_commutation_sign(name, name, 1);
    return p;
}

// E(x) (x) Z[y] with |x| = -n on the base axis and |y| = n-1 on the fiber axis.
AlgebraPresentation sphere_page(int n, bool strict_y) {
    return tensor(exterior_on("x", {-n, 0}), polynomial_on("y", {0, n - 1}, strict_y));
}

std::vector<Monomial> window_monomials(const AlgebraPresentation& p, const Window& w) {
    std::vector<Monomial> all;
    for (const auto& [b, v] : p.monomial_basis(w)) all.insert(all.end(), v.begin(), v.end());
    return all;
}

}  // namespace

TEST_CASE("exterior basis on the base axis") {
    const int n = 3;
    auto p = exterior_on("x", {-n, 0});
    auto basis = p.monomial_basis(Window{-n, 0, 0, 0});
    REQUIRE(basis.size() == 2);
    CHECK(p.format(basis.at({0, 0}).at(0)) == "1");
    CHECK(p.format(basis.at({-n, 0}).at(0)) == "x");
}

TEST_CASE("odd sphere lattice: x*y^j and y^j") {
    const int n = 5;
    auto p = sphere_page(n, false);
    auto basis = p.monomial_basis(Window{-n, 0, 0, 4 * (n - 1)});
    CHECK(basis.size() == 10);
    for (int j = 0; j <= 4; ++j) {
        REQUIRE(basis.count({0, j * (n - 1)}) == 1);
        REQUIRE(basis.count({-n, j * (n - 1)}) == 1);
        CHECK(basis.at({0, j * (n - 1)}).size() == 1);
        CHECK(p.format(basis.at({-n, j * (n - 1)})[0]) == (j == 0 ? "x" : j == 1 ? "x*y" : "x*y^" + std::to_string(j)));
    }
}

TEST_CASE("laurent units give an infinite component") {
    AlgebraPresentation p;
    p.add_generator("t", {0, 0}, GeneratorKind::laurent);
    try {
        p.monomial_basis(Window{-1, 1, -1, 1});
        FAIL("expected infinite basis error");
    } catch (const Error& e) {
        CHECK(e.kind() == "infinite basis in bidegree");
    }
}

TEST_CASE("basic products") {
    auto e = exterior_on("x", {-3, 0});
    auto x = e.generator("x");
    CHECK(e.multiply(x, x).is_zero());

    AlgebraPresentation g;
    g.add_generator("g", {0, 2}, GeneratorKind::divided_power);
    auto g1 = g.generator("g");
    CHECK(g.multiply(g1, g1) == g.parse("2*g_2"));

    AlgebraPresentation l;
    l.add_generator("t", {0, 0}, GeneratorKind::laurent);
    CHECK(l.multiply(l.parse("t"), l.parse("t^-1")) == l.one());
}

TEST_CASE("tensor products") {
    auto p = sphere_page(3, false);
    CHECK(p.generator_count() == 2);
    // x odd, y even: they commute
    CHECK(p.multiply(p.generator("y"), p.generator("x")) == p.parse("x*y"));

    AlgebraPresentation trivial;
    auto q = tensor(p, trivial);
    CHECK(q.to_literal() == p.to_literal());

    // truncated polynomial base (x) exterior (x) polynomial fiber: the complex projective lattice
    AlgebraPresentation base;
    base.add_generator("x", {-2, 0}, GeneratorKind::polynomial);
    base.add_relation(base.parse("x^3"));
    auto cp = tensor(base, tensor(exterior_on("z", {0, 1}), polynomial_on("y", {0, 4})));
    auto basis = cp.monomial_basis(Window{-4, 0, 0, 5});
    for (int a = 0; a <= 2; ++a) {
        CHECK(basis.at({-2 * a, 0}).size() == 1);
        CHECK(basis.at({-2 * a, 1}).size() == 1);
        CHECK(basis.at({-2 * a, 4}).size() == 1);
        CHECK(basis.at({-2 * a, 5}).size() == 1);
    }
    CHECK(basis.size() == 12);

    // colliding names are renamed
    auto twice = tensor(exterior_on("x", {3, 0}), exterior_on("x", {3, 0}));
    CHECK(twice.generators()[1].name == "x'");
}

TEST_CASE("odd polynomial generator declared strictly commutative keeps y^2") {
    const int n = 4;
    auto p = sphere_page(n, true);
    auto y = p.generator("y");
    auto y2 = p.multiply(y, y);
    CHECK_FALSE(y2.is_zero());
    auto [ok, witness] = check_graded_commutative(p, Window{-n, 0, 0, 3 * (n - 1)});
    CHECK_FALSE(ok);
    REQUIRE(witness);
    CHECK(p.format(witness->left) == "y");
    CHECK(p.format(witness->right) == "y");
}

TEST_CASE("graded commutativity holds for honest graded-commutative algebras") {
    auto p = polynomial_on("y", {0, 2});
    CHECK(check_graded_commutative(p, Window{0, 0, 0, 10}).first);
    auto e = exterior_on("x", {-3, 0});
    CHECK(check_graded_commutative(e, Window{-3, 0, 0, 0}).first);
    // odd exterior times even polynomial
    CHECK(check_graded_commutative(sphere_page(5, false), Window{-5, 0, 0, 12}).first);
}

TEST_CASE("associativity, unit and bidegree additivity on window monomials") {
    AlgebraPresentation base;
    base.add_generator("x", {-2, 0}, GeneratorKind::polynomial);
    base.add_relation(base.parse("x^3"));
    AlgebraPresentation fib;
    fib.add_generator("z", {0, 1}, GeneratorKind::exterior);
    fib.add_generator("g", {0, 2}, GeneratorKind::divided_power);
    fib.add_generator("w", {0, 3}, GeneratorKind::polynomial);
    auto p = tensor(base, fib);
    auto ms = window_monomials(p, Window{-4, 0, 0, 6});
    REQUIRE(ms.size() > 10);
    for (const auto& a : ms) {
        CHECK(p.multiply(p.one(), p.element(a)) == p.element(a));
        CHECK(p.multiply(p.element(a), p.one()) == p.element(a));
        for (const auto& b : ms) {
            auto ab = p.multiply(p.element(a), p.element(b));
            if (!ab.is_zero()) CHECK(*p.bidegree(ab) == p.bidegree(a) + p.bidegree(b));
            for (const auto& c : ms) {
                auto left = p.multiply(ab, p.element(c));
                auto right = p.multiply(p.element(a), p.multiply(p.element(b), p.element(c)));
                REQUIRE(left == right);
            }
        }
    }
}

TEST_CASE("divided powers reproduce multinomial coefficients") {
    AlgebraPresentation g;
    g.add_generator("g", {0, 2}, GeneratorKind::divided_power);
    for (int i = 1; i <= 4; ++i)
        for (int j = 1; j <= 4; ++j)
            for (int k = 1; k <= 4; ++k) {
                auto gi = g.element(g.generator_power(0, i));
                auto gj = g.element(g.generator_power(0, j));
                auto gk = g.element(g.generator_power(0, k));
                auto prod = g.multiply(g.multiply(gi, gj), gk);
                // (i+j+k)! / (i! j! k!)
                Int multinomial = binomial(i + j + k, i) * binomial(j + k, j);
                CHECK(prod == g.element(g.generator_power(0, i + j + k), multinomial));
                CHECK(prod == g.multiply(gi, g.multiply(gj, gk)));
            }
}

TEST_CASE("normal form is idempotent") {
    AlgebraPresentation p;
    p.add_generator("x", {-2, 0}, GeneratorKind::polynomial);
    p.add_generator("y", {0, 4}, GeneratorKind::polynomial);
    p.add_relation(p.parse("x^2"));
    AlgebraElement raw;
    raw.add_term(Monomial{{3, 1}}, 5);
    raw.add_term(Monomial{{1, 1}}, 2);
    auto once = p.normal_form(raw);
    CHECK(once == p.parse("2*x*y"));
    CHECK(p.normal_form(once) == once);
}

TEST_CASE("quotient components with non-monic relations") {
    AlgebraPresentation p;
    p.add_generator("x", {-2, 0}, GeneratorKind::polynomial);
    p.add_generator("y", {0, 2}, GeneratorKind::polynomial);
    p.add_relation(p.parse("x^2"));
    p.add_relation(p.parse("2*x*y"));
    CHECK(p.component_group({-2, 0}) == AbelianGroup{1, {}});
    CHECK(p.component_group({-2, 2}) == AbelianGroup{0, {2}});
    CHECK(p.component_group({-2, 4}) == AbelianGroup{0, {2}});
    CHECK(p.component_group({0, 4}) == AbelianGroup{1, {}});
    CHECK(p.is_zero_in_quotient(p.parse("4*x*y^3")));
    CHECK_FALSE(p.is_zero_in_quotient(p.parse("x*y^3")));

    p.set_coefficients(Coefficients::rationals);
    CHECK(p.component_group({-2, 2}).is_trivial());
}

TEST_CASE("presentation literal round trip") {
    const std::string text =
        "# complex projective plane fiber page\n"
        "x (-2,0) polynomial\n"
        "z (0,1) exterior\n"
        "y (0,4) polynomial\n"
        "g (0,6) divided-power\n"
        "sign y y +1\n"
        "relation x^3\n"
        "relation 3*x^2*y\n";
    auto p = AlgebraPresentation::parse_literal(text);
    CHECK(p.generator_count() == 4);
    CHECK(p.relations().size() == 2);
    CHECK(p.ideal_relations().size() == 1);
    auto again = AlgebraPresentation::parse_literal(p.to_literal());
    CHECK(again.to_literal() == p.to_literal());
    CHECK(p.parse("2*x*z - g_2 + 3") == p.parse("3 - g_2 + 2 * x*z"));
    CHECK(p.format(p.parse("g^2")) == "2*g_2");
}

TEST_CASE("parse errors are reported") {
    auto p = sphere_page(3, false);
    CHECK_THROWS_AS(p.parse("q*y"), Error);
    CHECK_THROWS_AS(p.parse("x y"), Error);
    CHECK_THROWS_AS(AlgebraPresentation::parse_literal("x (1) exterior\n"), Error);
    CHECK_THROWS_AS(AlgebraPresentation::parse_literal("x (1,0) banana\n"), Error);
}

TEST_CASE("inhomogeneous relations are rejected") {
    auto p = sphere_page(3, false);
    CHECK_THROWS_AS(p.add_relation(p.parse("x + y")), Error);
}
