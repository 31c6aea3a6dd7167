#pragma once

#include "loophom/exact_linalg.hpp"

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace loophom {

struct Bidegree {
    int p = 0;
    int q = 0;

    int total() const noexcept { return p + q; }
    friend Bidegree operator+(Bidegree a, Bidegree b) { return {a.p + b.p, a.q + b.q}; }
    friend Bidegree operator-(Bidegree a, Bidegree b) { return {a.p - b.p, a.q - b.q}; }
    friend Bidegree operator*(int k, Bidegree a) { return {k * a.p, k * a.q}; }
    friend auto operator<=>(const Bidegree&, const Bidegree&) = default;
    std::string to_string() const;
};

/// Closed bidegree rectangle p in [p_min, p_max], q in [q_min, q_max]. Empty when a bound is inverted.
struct Window {
    int p_min = 0, p_max = -1;
    int q_min = 0, q_max = -1;

    bool empty() const noexcept { return p_min > p_max || q_min > q_max; }
    bool contains(Bidegree b) const noexcept {
        return b.p >= p_min && b.p <= p_max && b.q >= q_min && b.q <= q_max;
    }
    /// All cells, ordered by q then p.
    std::vector<Bidegree> cells() const;
    friend bool operator==(const Window&, const Window&) = default;
};

enum class GeneratorKind { exterior, polynomial, divided_power, laurent };
enum class Coefficients { integers, rationals };

std::string to_string(GeneratorKind k);
GeneratorKind parse_generator_kind(const std::string& s);

struct Generator {
    std::string name;
    Bidegree bidegree;
    GeneratorKind kind = GeneratorKind::polynomial;
};

/// Exponent vector indexed by generator declaration order. Divided-power
/// families store the index i of gamma_i; laurent exponents may be negative.
struct Monomial {
    std::vector<int> exponents;

    bool is_unit() const;
    friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

/// Finite integer combination of normal-form monomials; zero coefficients never stored.
struct AlgebraElement {
    std::map<Monomial, Int> terms;

    bool is_zero() const noexcept { return terms.empty(); }
    void add_term(const Monomial& m, const Int& c);
    AlgebraElement& operator+=(const AlgebraElement& o);
    AlgebraElement& operator-=(const AlgebraElement& o);
    friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
    friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
    friend AlgebraElement operator*(const Int& k, const AlgebraElement& a);
    AlgebraElement operator-() const;
    friend bool operator==(const AlgebraElement&, const AlgebraElement&) = default;
};

class AlgebraPresentation {
public:
    AlgebraPresentation() = default;

    std::size_t add_generator(const std::string& name, Bidegree b, GeneratorKind kind);
    /// Declare g_a g_b = sign * g_b g_a, replacing the Koszul default (-1)^{|a||b|}.
    void set_commutation_sign(const std::string& a, const std::string& b, int sign);
    void add_relation(const AlgebraElement& r);
    void set_coefficients(Coefficients c) noexcept { coefficients_ = c; }

    const std::vector<Generator>& generators() const noexcept { return generators_; }
    std::size_t generator_count() const noexcept { return generators_.size(); }
    const std::vector<AlgebraElement>& relations() const noexcept { return relations_; }
    Coefficients coefficients() const noexcept { return coefficients_; }
    const std::map<std::pair<std::size_t, std::size_t>, int>& sign_overrides() const noexcept {
        return sign_overrides_;
    }

    std::optional<std::size_t> find(const std::string& name) const;
    std::size_t index_of(const std::string& name) const;

    /// g_i g_j = commutation_sign(i, j) g_j g_i.
    int commutation_sign(std::size_t i, std::size_t j) const;

    Monomial unit() const;
    /// gamma_k for a divided-power family, g^k otherwise.
    Monomial generator_power(std::size_t i, int k = 1) const;
    AlgebraElement one() const;
    AlgebraElement element(const Monomial& m, const Int& c = 1) const;
    AlgebraElement generator(const std::string& name) const;

    Bidegree bidegree(const Monomial& m) const;
    /// Single bidegree of a nonzero homogeneous element; throws "inhomogeneous element" otherwise.
    std::optional<Bidegree> bidegree(const AlgebraElement& e) const;

    /// Zero when m lies in the ideal of a monomial (unit-coefficient, single-term) relation
    /// or violates an exterior square.
    bool is_normal(const Monomial& m) const;
    AlgebraElement normal_form(const AlgebraElement& e) const;

    AlgebraElement multiply(const Monomial& a, const Monomial& b) const;
    AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b) const;
    AlgebraElement power(const AlgebraElement& a, int k) const;

    /// Normal-form monomials of bidegree b, sorted.
    std::vector<Monomial> basis_at(Bidegree b) const;
    /// Per-bidegree bases over a finite window; only nonempty cells are listed.
    std::map<Bidegree, std::vector<Monomial>> monomial_basis(const Window& w) const;

    /// Relations that are not monomial truncations; they enter as per-cell quotients.
    std::vector<AlgebraElement> ideal_relations() const;
    /// Spanning vectors (in basis_at(b) coordinates) of the relation ideal in bidegree b.
    IntMatrix ideal_span(Bidegree b) const;
    /// Component of the quotient algebra in bidegree b.
    AbelianGroup component_group(Bidegree b) const;
    /// True if the element vanishes in the quotient algebra.
    bool is_zero_in_quotient(const AlgebraElement& e) const;

    /// Coordinates of a homogeneous element in `basis` (element must be in normal form).
    std::vector<Int> coordinates(const AlgebraElement& e, const std::vector<Monomial>& basis) const;
    AlgebraElement from_coordinates(const std::vector<Int>& c, const std::vector<Monomial>& basis) const;

    std::string format(const Monomial& m) const;
    std::string format(const AlgebraElement& e) const;
    /// Parses integer combinations of monomials in `2*x^2*y - z` syntax; `g_3` names gamma_3 of family g.
    AlgebraElement parse(const std::string& text) const;

    /// Text literal: one generator per line `name (p,q) kind`, plus `relation <expr>`,
    /// `sign <a> <b> <+1|-1>` and `coeff z|q` lines; `#` starts a comment.
    static AlgebraPresentation parse_literal(const std::string& text);
    std::string to_literal() const;

private:
    std::vector<Generator> generators_;
    std::map<std::pair<std::size_t, std::size_t>, int> sign_overrides_;
    std::vector<AlgebraElement> relations_;
    std::vector<Monomial> monomial_relations_;
    Coefficients coefficients_ = Coefficients::integers;
};

AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b, const AlgebraPresentation& p);

/// Presentation of P1 (x) P2; colliding generator names of P2 get a trailing `'`.
AlgebraPresentation tensor(const AlgebraPresentation& a, const AlgebraPresentation& b);

/// Embeds an element of a tensor factor into the tensor product (offset = index of its first generator).
AlgebraElement embed(const AlgebraElement& e, std::size_t offset, std::size_t total_generators);

struct CommutativityWitness {
    Monomial left, right;
};

/// Checks a b = (-1)^{|a||b|} b a (total degrees) for all pairs of window basis monomials.
std::pair<bool, std::optional<CommutativityWitness>> check_graded_commutative(const AlgebraPresentation& p,
                                                                              const Window& w);

Int binomial(int n, int k);

}  // namespace loophom
