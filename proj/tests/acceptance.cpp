// Acceptance run: one PASS/FAIL line per criterion. All comparisons are exact (zero tolerance).

#include "loophom/naturality.hpp"
#include "loophom/space_models.hpp"
#include "oracles.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

using namespace loophom;

namespace {

struct Outcome {
    bool pass = true;
    std::string note;
    void fail(const std::string& why) {
        if (pass) note = why;
        pass = false;
    }
};

Page loop_einf(const SpaceTag& s, int max_total, Coefficients k = Coefficients::integers, int sign = 1,
               bool with_schedule = true) {
    const Page e2 = loop_homology_E2(s, loop_window(s, max_total), k);
    return run(e2, with_schedule ? install_known_differentials(s, e2, sign) : Schedule{}).einf;
}

std::vector<SpaceTag> presets() {
    return {SpaceTag::odd_sphere(3),        SpaceTag::odd_sphere(5),        SpaceTag::odd_sphere(7),
            SpaceTag::even_sphere(2),       SpaceTag::even_sphere(4),       SpaceTag::even_sphere(6),
            SpaceTag::complex_projective(1), SpaceTag::complex_projective(2), SpaceTag::complex_projective(3),
            SpaceTag::complex_projective(4)};
}

// Z[y] (x) E(x), |x| = -n, |y| = n - 1, expanded monomial by monomial.
AbelianGroup odd_sphere_expansion(int n, int i) {
    std::size_t rank = 0;
    for (int e = 0; e <= 1; ++e)
        for (int c = 0; c <= 64; ++c)
            if (c * (n - 1) - e * n == i) ++rank;
    return {rank, {}};
}

AbelianGroup even_sphere_formula(int n, int i) {
    std::size_t free = 0;
    std::vector<Int> tors;
    if (i == -n) ++free;
    for (int m = 0; m <= 64; ++m) {
        if (i == 2 * m * (n - 1)) ++free;
        if (i == -1 + 2 * m * (n - 1)) ++free;
        if (m >= 1 && i == -n + 2 * m * (n - 1)) tors.push_back(2);
    }
    return AbelianGroup::from_cyclic_orders(free, tors);
}

AbelianGroup cp_formula(int n, int i) {
    if (i < -2 * n) return {};
    if (i >= 0 && i % (2 * n) == 0) return AbelianGroup::from_cyclic_orders(1, {Int(n + 1)});
    return {1, {}};
}

Outcome compare_groups(const SpaceTag& s, int lo, int hi, const std::function<AbelianGroup(int)>& expect) {
    Outcome o;
    const auto groups = total_degree_groups(loop_einf(s, hi), lo, hi);
    for (int i = lo; i <= hi; ++i)
        if (groups.at(i) != expect(i))
            o.fail(s.display_name() + " degree " + std::to_string(i) + ": engine " + groups.at(i).to_string() +
                   ", expected " + expect(i).to_string());
    return o;
}

Outcome presentation_confirmed(const SpaceTag& s, int max_total) {
    Outcome o;
    const Page einf = loop_einf(s, max_total);
    const auto rep = verify_presentation(einf, closed_form_presentation(s), closed_form_assignment(s, *einf.algebra),
                                         Window{-s.dimension(), 0, 0, max_total});
    if (!rep.ok) o.fail(s.display_name() + ": " + rep.mismatches.front());
    return o;
}

void merge(Outcome& into, const Outcome& o) {
    if (!o.pass) into.fail(o.note);
}

// ---------------------------------------------------------------------------

Outcome criterion1() {
    Outcome o;
    for (int n : {3, 5, 7})
        merge(o, compare_groups(SpaceTag::odd_sphere(n), -n, 30, [n](int i) { return odd_sphere_expansion(n, i); }));
    return o;
}

Outcome criterion2() {
    Outcome o;
    for (int n : {2, 4, 6}) {
        merge(o, compare_groups(SpaceTag::even_sphere(n), -n, 30, [n](int i) { return even_sphere_formula(n, i); }));
        merge(o, presentation_confirmed(SpaceTag::even_sphere(n), 30));
        const auto p = closed_form_presentation(SpaceTag::even_sphere(n));
        if (p.generator("z").terms.size() != 1 || p.generators()[p.index_of("z")].bidegree.total() != -1 ||
            p.generators()[p.index_of("x")].bidegree.total() != -n ||
            p.generators()[p.index_of("y")].bidegree.total() != 2 * n - 2)
            o.fail("generator degrees");
    }
    return o;
}

Outcome criterion3() {
    Outcome o;
    for (int n = 1; n <= 4; ++n) {
        merge(o, compare_groups(SpaceTag::complex_projective(n), -2 * n, 30, [n](int i) { return cp_formula(n, i); }));
        merge(o, presentation_confirmed(SpaceTag::complex_projective(n), 30));
    }
    return o;
}

Outcome criterion4() {
    Outcome o;
    const auto a = total_degree_groups(loop_einf(SpaceTag::complex_projective(1), 30), -2, 30);
    const auto b = total_degree_groups(loop_einf(SpaceTag::even_sphere(2), 30), -2, 30);
    if (a != b) o.fail("CP^1 and S^2 groups differ");
    return o;
}

Outcome criterion5() {
    Outcome o;
    for (int n : {2, 4}) {
        const auto s = SpaceTag::even_sphere(n);
        const auto up_tag = FibrationTag::path_over_diagonal(s);
        const Page up = serre_E2(up_tag, serre_window(up_tag, 30 + n));
        const auto& ua = *up.algebra;
        AbutmentConstraint c;
        c.groups = {{0, AbelianGroup{1, {}}}, {n, AbelianGroup{1, {}}}};
        c.boundary_classes = {ua.parse("a - b")};
        const auto search = solve_by_abutment(up, n, c, 2);
        std::set<std::string> z_images;
        for (const auto& sol : search.solutions) {
            z_images.insert(ua.format(sol.images.at("z")));
            const auto g = sol.images.at("g");
            const auto z = sol.images.at("z");
            if (g != ua.parse("a*z + b*z") && g != ua.parse("-a*z - b*z")) o.fail("d(gamma_1) not +-(a+b)z");
            if (z != ua.parse("a - b") && z != ua.parse("b - a")) o.fail("d(z) not +-(a-b)");
        }
        if (search.solutions.size() != 4 || z_images.size() != 2) o.fail("expected the sign pair for d(z)");

        const auto d = derive_even_sphere_differential(n);
        if (!d.consistent) o.fail("derivation inconsistent for n = " + std::to_string(n));
        const auto down_tag = FibrationTag::evaluation(s);
        const Page down = serre_E2(down_tag, serre_window(down_tag, 30 + n));
        if (d.evaluation_image != down.algebra->parse("2*x*z") && d.evaluation_image != down.algebra->parse("-2*x*z"))
            o.fail("naturality image " + down.algebra->format(d.evaluation_image));

        Page serre = down;
        serre.index = n;
        Page loop = loop_homology_E2(s, loop_window(s, 30));
        loop.index = n;
        const auto rep = compare_dualized(s, serre, install_serre_differentials(s, serre).at(n), loop,
                                          install_known_differentials(s, loop).at(n));
        if (!rep.ok) o.fail("dualization: " + rep.mismatches.front());
        if (d.loop_schedule.at(n).apply(loop.algebra->generator("y")) !=
            install_known_differentials(s, loop).at(n).apply(loop.algebra->generator("y")))
            o.fail("dualized schedule differs from the installed one");
    }
    return o;
}

Outcome criterion6() {
    Outcome o;
    for (int k = 1; k <= 3; ++k) {
        const auto s = SpaceTag::even_sphere(2 * k);
        const Page e2 = loop_homology_E2(s, loop_window(s, 30));
        const auto d = install_known_differentials(s, e2, -1).at(2 * k);
        const auto& a = *e2.algebra;
        for (int j = 0; j <= 8; ++j) {
            const Int alternation = j % 2 ? -2 : 0;
            if (brown_shih_differential(k, j) != alternation) o.fail("Brown-Shih k=" + std::to_string(k));
            const AlgebraElement dj = d.apply(a.generator_power(a.index_of("y"), j));
            AlgebraElement expect;
            if (alternation != 0) expect.add_term(a.parse("x*y^" + std::to_string(j + 1)).terms.begin()->first, alternation);
            if (dj != expect) o.fail("Leibniz on y^" + std::to_string(j) + ": " + a.format(dj));
        }
    }
    return o;
}

Outcome criterion7() {
    Outcome o;
    for (int n : {2, 4, 6}) {
        const auto s = SpaceTag::even_sphere(n);
        const auto zero = check_graded_commutative(loop_einf(s, 30, Coefficients::integers, 1, false));
        const Page einf = loop_einf(s, 30);
        if (zero.ok || !zero.witness) {
            o.fail("all-zero schedule passed for n = " + std::to_string(n));
            continue;
        }
        if (einf.algebra->format(zero.witness->first) != "y") o.fail("witness " + einf.algebra->format(zero.witness->first));
        if (!check_graded_commutative(einf).ok) o.fail("installed schedule fails for n = " + std::to_string(n));
    }
    return o;
}

bool diagonal_chain(const IntMatrix& d, std::size_t rank) {
    for (std::size_t i = 0; i < d.rows(); ++i)
        for (std::size_t j = 0; j < d.cols(); ++j)
            if (i != j && d(i, j) != 0) return false;
    for (std::size_t i = 0; i < rank; ++i) {
        if (d(i, i) <= 0) return false;
        if (i + 1 < rank && d(i + 1, i + 1) % d(i, i) != 0) return false;
    }
    for (std::size_t i = rank; i < std::min(d.rows(), d.cols()); ++i)
        if (d(i, i) != 0) return false;
    return true;
}

Outcome criterion8() {
    Outcome o;
    // d o d = 0 and Leibniz on every preset page, loop homology and evaluation Serre pages
    for (const auto& s : presets()) {
        const Page e2 = loop_homology_E2(s, loop_window(s, 30));
        const auto f = FibrationTag::evaluation(s);
        const Page se2 = serre_E2(f, serre_window(f, 30));
        for (const auto& [page, schedule] : {std::pair{e2, install_known_differentials(s, e2)},
                                             std::pair{se2, install_serre_differentials(s, se2)}}) {
            for (int r = 2; r <= std::max(2, known_differential_page(s)); ++r) {
                Page shell = page;
                shell.index = r;
                auto it = schedule.find(r);
                const Differential d = it != schedule.end() ? it->second : Differential(r, page.variance, page.algebra);
                if (find_d_squared_failure(d, shell)) o.fail("d o d on " + s.display_name());
                if (!check_leibniz(d, shell).ok) o.fail("Leibniz on " + s.display_name());
            }
            // Euler characteristic across every page turn
            Page p = page;
            const int last = std::max(2, known_differential_page(s));
            while (p.index <= last) {
                auto it = schedule.find(p.index);
                if (it == schedule.end()) {
                    ++p.index;
                    continue;
                }
                const auto cells = closed_certified_cells(p, p.index);
                const Page next = turn_page(p, it->second);
                if (euler_characteristic(p, cells) != euler_characteristic(next, cells))
                    o.fail("Euler characteristic on " + s.display_name());
                p = next;
            }
        }
        // Q ranks equal Z free ranks
        const int lo = -s.dimension();
        const auto z = total_degree_groups(loop_einf(s, 30), lo, 30);
        const auto q = total_degree_groups(loop_einf(s, 30, Coefficients::rationals), lo, 30);
        for (int i = lo; i <= 30; ++i)
            if (q.at(i).free_rank != z.at(i).free_rank || !q.at(i).torsion.empty())
                o.fail("Q rank on " + s.display_name() + " degree " + std::to_string(i));
    }

    std::mt19937 rng(20261018);
    std::uniform_int_distribution<int> dim(1, 6);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto m = oracle::random_matrix(rng, dim(rng), dim(rng), -9, 9);
        const auto s = smith_normal_form(m);
        if (s.U * s.D * s.V != m) o.fail("U D V != M");
        if (abs(oracle::determinant(s.U)) != 1 || abs(oracle::determinant(s.V)) != 1) o.fail("not unimodular");
        if (!diagonal_chain(s.D, s.rank)) o.fail("divisibility chain");
        if (s.invariant_factors() != oracle::invariant_factors(m)) o.fail("invariant factors");
    }

    std::mt19937 crng(4242);
    std::uniform_int_distribution<int> cdim(1, 4);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t b = cdim(crng), c = cdim(crng), a = cdim(crng);
        const auto outgoing = oracle::random_matrix(crng, c, b, -3, 3);
        const auto kb = kernel_basis(outgoing);
        const auto incoming = kb * oracle::random_matrix(crng, kb.cols(), a, -3, 3);
        const auto h = subquotient(kb, incoming).group();
        const std::size_t rank_in = oracle::rank(incoming);
        if (h.free_rank != (b - oracle::rank(outgoing)) - rank_in) o.fail("homology free rank");
        for (int mod = 2; mod <= 9; ++mod) {
            std::size_t total = 1, predicted = 1;
            for (std::size_t i = 0; i < b; ++i) total *= static_cast<std::size_t>(mod);
            for (std::size_t i = 0; i < b - rank_in; ++i) predicted *= static_cast<std::size_t>(mod);
            for (const auto& t : h.torsion)
                predicted *= static_cast<std::size_t>(boost::multiprecision::gcd(Int(mod), t));
            if (total / oracle::image_size_mod(incoming, mod) != predicted) o.fail("homology torsion count");
        }
    }
    return o;
}

Outcome criterion9() {
    Outcome o;
    for (const auto& s : presets()) {
        const Page einf = loop_einf(s, 30);
        for (int i = -s.dimension(); i <= 30; ++i) {
            const auto rep = extension_split_check(einf, i);
            if (!rep.splits) o.fail(s.display_name() + " degree " + std::to_string(i) + ": " + rep.message);
        }
    }
    const auto n2 = n2_extension_check();
    if (!n2.ok || n2.choices.size() != 5) o.fail("n = 2 extension choices");
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"odd spheres n = 3,5,7 match Z[y] (x) E(x) on [-n, 30]", criterion1},
        {"even spheres n = 2,4,6 match the formula on [-n, 30]; presentation verified", criterion2},
        {"CP^n n = 1..4 match the formula on [-2n, 30]; presentation verified", criterion3},
        {"CP^1 and S^2 agree on [-2, 30]", criterion4},
        {"universal example: abutment, naturality and dualization, B = 2", criterion5},
        {"Brown-Shih alternation for k = 1,2,3, j = 0..8 matches Leibniz", criterion6},
        {"zero schedule breaks graded commutativity at y; installed schedule does not", criterion7},
        {"property suites: d o d, Leibniz, SNF x1000, complexes x200, Euler, Q ranks", criterion8},
        {"additive extensions split on every preset; n = 2 choices c in [-2, 2]", criterion9},
    };
    bool all = true;
    const auto start = std::chrono::steady_clock::now();
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        Outcome o;
        try {
            o = criteria[k].second();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        all = all && o.pass;
        std::cout << "criterion " << k + 1 << ": " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[k].first
                  << " (exact, tolerance 0)";
        if (!o.pass) std::cout << "  [" << o.note << "]";
        std::cout << std::endl;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cerr << "acceptance wall time " << secs << " s\n";
    return all ? 0 : 1;
}
