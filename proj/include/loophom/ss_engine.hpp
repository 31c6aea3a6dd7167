#pragma once

#include "loophom/exact_linalg.hpp"
#include "loophom/graded_algebra.hpp"

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace loophom {

/// Homological: d_r : (p,q) -> (p-r, q+r-1). Cohomological: d_r : (p,q) -> (p+r, q-r+1).
enum class Variance { homological, cohomological };

std::string to_string(Variance v);
Bidegree differential_shift(Variance v, int r);

/// One bidegree of a page: E_r = Z_r / B_r with Z_r, B_r sublattices of the free E_2 cell.
struct Cell {
    Bidegree at;
    std::vector<Monomial> basis;  // E_2 basis
    IntMatrix cycles;             // columns span Z_r
    IntMatrix boundaries;         // columns span B_r
    Subquotient quotient;
    bool reliable = true;

    const AbelianGroup& group() const noexcept { return quotient.group(); }
};

class Page {
public:
    int index = 2;
    Window window;
    Variance variance = Variance::homological;
    std::shared_ptr<const AlgebraPresentation> algebra;
    std::map<Bidegree, Cell> cells;  // window cells with a nonempty E_2 basis

    const Cell* cell(Bidegree b) const;
    /// E_2 basis at any bidegree (window cells are cached).
    std::vector<Monomial> basis_at(Bidegree b) const;
    /// Outside the window and with empty E_2 basis: zero on every page.
    bool known_zero(Bidegree b) const;
    /// Group at b; zero for known-zero cells. Throws "uncertified cell" for unknown or unreliable cells.
    AbelianGroup group_at(Bidegree b) const;
    bool certified(Bidegree b) const;

    AlgebraElement lift(Bidegree b, std::size_t generator) const;
    /// Per-bidegree canonical coordinates of e in this page; every component must be a cycle.
    std::map<Bidegree, std::vector<Int>> classify(const AlgebraElement& e) const;
    bool is_zero_class(const AlgebraElement& e) const;
    bool is_cycle(const AlgebraElement& e) const;

    /// Cells whose stabilization is certified.
    std::vector<Bidegree> certified_cells() const;
};

class Differential {
public:
    Differential() = default;
    Differential(int page_index, Variance variance, std::shared_ptr<const AlgebraPresentation> algebra);

    int page_index() const noexcept { return page_index_; }
    Variance variance() const noexcept { return variance_; }
    Bidegree shift() const { return differential_shift(variance_, page_index_); }
    const AlgebraPresentation& algebra() const { return *algebra_; }
    const std::map<std::size_t, AlgebraElement>& images() const noexcept { return images_; }
    const std::set<std::size_t>& permanent_cycles() const noexcept { return permanent_cycles_; }

    /// Image of a generator (gamma_1 for divided-power families).
    void set_image(std::size_t generator, const AlgebraElement& image);
    void add_permanent_cycle(std::size_t generator);
    bool has_nonzero_images() const;

    /// Leibniz extension to monomials and elements.
    AlgebraElement apply(const Monomial& m) const;
    AlgebraElement apply(const AlgebraElement& e) const;
    /// Matrix from the E_2 cell at `source` to the cell at source + shift, in basis_at coordinates.
    IntMatrix matrix(const Page& page, Bidegree source) const;

private:
    AlgebraElement apply_factor(std::size_t generator, int exponent) const;

    int page_index_ = 2;
    Variance variance_ = Variance::homological;
    std::shared_ptr<const AlgebraPresentation> algebra_;
    std::map<std::size_t, AlgebraElement> images_;
    std::set<std::size_t> permanent_cycles_;
};

/// Pages without an entry carry the zero differential.
using Schedule = std::map<int, Differential>;

Page build_page(const AlgebraPresentation& p, const Window& w, Variance variance);
Page build_page(std::shared_ptr<const AlgebraPresentation> p, const Window& w, Variance variance);

/// Builds and verifies d_r from generator images (by name): bidegrees, permanent cycles and d o d = 0
/// on the window. Throws "wrong target bidegree", "permanent cycle moved" or "d-squared nonzero".
Differential extend_differential(const std::map<std::string, AlgebraElement>& images, const Page& page,
                                 const std::set<std::string>& permanent_cycles = {});

/// Parallel over cells.
Page turn_page(const Page& page, const Differential& d);
/// Serial reference of turn_page; identical results.
Page turn_page_serial(const Page& page, const Differential& d);

struct StabilizationReport {
    std::vector<int> nonzero_pages;
    int last_page = 2;  // index of the returned page
    int placement_bound = 0;
    std::size_t certified_cells = 0;
    std::vector<Bidegree> uncertified;
    std::string summary() const;
};

struct RunResult {
    Page einf;
    StabilizationReport report;
};

/// Hull [lo, hi] of the p-degrees of nonzero monomials, from exponent bounds of the generators with p != 0.
/// Throws "window too small" when such a generator is unbounded.
std::pair<int, int> p_support_hull(const AlgebraPresentation& a);

/// Turns pages r = page2.index .. r_max (r_max raised to the placement bound and the last scheduled page).
RunResult run(const Page& page2, const Schedule& schedule, int r_max = 0, bool parallel = true);

/// Direct sum along p + q = i for i in [lo, hi]. Throws "uncertified cell in range".
std::map<int, AbelianGroup> total_degree_groups(const Page& einf, int lo, int hi);

struct ExtensionReport {
    bool splits = true;
    std::vector<std::pair<Bidegree, AbelianGroup>> filtration;  // lowest filtration first
    std::string message;
};

/// Splitting criterion: every filtration quotient except the lowest is free.
ExtensionReport extension_split_check(const Page& einf, int total_degree);

struct PresentationCheck {
    bool ok = true;
    std::vector<std::string> mismatches;
};

/// Compares a candidate algebra with E_inf: groups per window bidegree, relations (and generator
/// commutation) on representatives, generation of every window cell.
PresentationCheck verify_presentation(const Page& einf, const AlgebraPresentation& candidate,
                                      const std::map<std::string, AlgebraElement>& assignment, const Window& w);

/// Candidate relations, commutation rules and exterior squares evaluated on representatives; lists every
/// certified window component that is not a zero class.
std::vector<std::string> relation_failures(const Page& einf, const AlgebraPresentation& candidate,
                                           const std::map<std::string, AlgebraElement>& assignment, const Window& w);

/// Evaluates a candidate element on E_2 representatives of its generators.
AlgebraElement evaluate(const AlgebraElement& e, const AlgebraPresentation& candidate,
                        const std::map<std::string, AlgebraElement>& assignment, const AlgebraPresentation& target);

struct PageCommutativity {
    bool ok = true;
    std::optional<std::pair<AlgebraElement, AlgebraElement>> witness;
};

/// a b = (-1)^{|a||b|} b a on canonical generators of certified cells, multiplied through E_2 lifts.
PageCommutativity check_graded_commutative(const Page& page);

struct LeibnizCheck {
    bool ok = true;
    std::size_t pairs_checked = 0;
    std::optional<std::pair<Monomial, Monomial>> witness;
};

/// d(ab) = d(a) b + (-1)^{|a|} a d(b) for all window monomial pairs with product in the window.
LeibnizCheck check_leibniz(const Differential& d, const Page& page);

/// d o d = 0 on every window monomial; returns the first failing monomial.
std::optional<Monomial> find_d_squared_failure(const Differential& d, const Page& page);

/// Alternating sum (by total degree) of ranks over the given cells.
long long euler_characteristic(const Page& page, const std::vector<Bidegree>& cells);

/// Certified cells whose whole d_r-chain (page r) is certified or known zero; page turns by d_r
/// conserve the Euler characteristic over this set.
std::vector<Bidegree> closed_certified_cells(const Page& page, int r);

}  // namespace loophom
