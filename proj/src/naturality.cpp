#include "loophom/naturality.hpp"

#include <algorithm>
#include <exception>
#include <sstream>

namespace loophom {

namespace {

Int factorial(int k) {
    Int f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

Page with_index(const Page& page, int r) {
    Page shell = page;
    shell.index = r;
    return shell;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? sep : "") + parts[i];
    return s;
}

}  // namespace

// ---------------------------------------------------------------------------
// Morphisms

PageMorphism::PageMorphism(const Page& source, const Page& target, std::map<std::size_t, AlgebraElement> images)
    : source_(source), target_(target), images_(std::move(images)) {
    for (const auto& [b, c] : source_.cells) matrices_.emplace(b, matrix(b));
}

AlgebraElement PageMorphism::apply_generator_power(std::size_t i, int k) const {
    const AlgebraPresentation& t = *target_.algebra;
    if (k == 0) return t.one();
    auto it = images_.find(i);
    if (it == images_.end()) return {};
    AlgebraElement p = t.power(it->second, k);
    if (source_.algebra->generators()[i].kind != GeneratorKind::divided_power) return p;
    // gamma_k maps to image^k / k!
    const Int f = factorial(k);
    AlgebraElement q;
    for (const auto& [m, c] : p.terms) {
        if (c % f != 0)
            throw Error("relation not respected", "divided power " + source_.algebra->generators()[i].name + "_" +
                                                      std::to_string(k) + " has no integral image");
        q.add_term(m, c / f);
    }
    return q;
}

AlgebraElement PageMorphism::apply(const Monomial& m) const {
    const AlgebraPresentation& t = *target_.algebra;
    AlgebraElement out = t.one();
    for (std::size_t i = 0; i < m.exponents.size() && !out.is_zero(); ++i)
        if (m.exponents[i] != 0) out = t.multiply(out, apply_generator_power(i, m.exponents[i]));
    return out;
}

AlgebraElement PageMorphism::apply(const AlgebraElement& e) const {
    AlgebraElement out;
    for (const auto& [m, c] : e.terms) out += c * apply(m);
    return out;
}

IntMatrix PageMorphism::matrix(Bidegree b) const {
    if (auto it = matrices_.find(b); it != matrices_.end()) return it->second;
    const auto src = source_.basis_at(b);
    const auto tgt = target_.basis_at(b);
    IntMatrix m(tgt.size(), src.size());
    for (std::size_t j = 0; j < src.size(); ++j) {
        auto image = apply(src[j]);
        if (image.is_zero()) continue;
        auto col = target_.algebra->coordinates(image, tgt);
        for (std::size_t i = 0; i < tgt.size(); ++i) m(i, j) = col[i];
    }
    return m;
}

PageMorphism induced_map(const std::map<std::string, AlgebraElement>& images, const Page& source, const Page& target) {
    const AlgebraPresentation& s = *source.algebra;
    const AlgebraPresentation& t = *target.algebra;
    std::map<std::size_t, AlgebraElement> by_index;
    for (const auto& [name, img] : images) {
        const std::size_t i = s.index_of(name);
        auto nf = t.normal_form(img);
        if (nf.is_zero()) continue;
        if (*t.bidegree(nf) != s.generators()[i].bidegree)
            throw Error("morphism not homogeneous", name + " |-> " + t.format(nf));
        by_index[i] = nf;
    }
    PageMorphism m(source, target, by_index);

    for (const auto& r : s.relations()) {
        AlgebraElement v;
        for (const auto& [mono, c] : r.terms) v += c * m.apply(mono);
        if (!t.is_zero_in_quotient(v)) throw Error("relation not respected", s.format(r) + " |-> " + t.format(v));
    }
    for (std::size_t i = 0; i < s.generator_count(); ++i) {
        if (s.generators()[i].kind != GeneratorKind::exterior) continue;
        auto sq = m.apply(s.element(s.generator_power(i, 1)));
        if (!t.multiply(sq, sq).is_zero())
            throw Error("relation not respected", s.generators()[i].name + "^2 |-> " + t.format(t.multiply(sq, sq)));
    }
    // multiplicativity on window monomials
    std::vector<Monomial> ms;
    for (const auto& [b, c] : source.cells) ms.insert(ms.end(), c.basis.begin(), c.basis.end());
    for (const auto& a : ms)
        for (const auto& b : ms) {
            if (!source.window.contains(s.bidegree(a) + s.bidegree(b))) continue;
            if (m.apply(s.multiply(s.element(a), s.element(b))) != t.multiply(m.apply(a), m.apply(b)))
                throw Error("relation not respected", "product " + s.format(a) + " * " + s.format(b));
        }
    return m;
}

NaturalityReport check_naturality(const PageMorphism& m, const Differential& d_src, const Differential& d_tgt) {
    if (d_src.page_index() != d_tgt.page_index()) throw Error("page index mismatch", "check_naturality");
    NaturalityReport rep;
    const Page& src = m.source();
    const AlgebraPresentation& t = *m.target().algebra;
    for (const auto& [b, c] : src.cells) {
        if (!m.target().window.contains(b + d_tgt.shift())) continue;
        ++rep.cells_checked;
        for (const auto& u : c.basis) {
            const AlgebraElement lhs = d_tgt.apply(m.apply(u));
            const AlgebraElement rhs = m.apply(d_src.apply(u));
            if (lhs != rhs) {
                rep.ok = false;
                rep.violations.push_back("at " + b.to_string() + ": " + src.algebra->format(u) + ": d(m(u)) = " +
                                         t.format(lhs) + ", m(d(u)) = " + t.format(rhs));
            }
        }
    }
    return rep;
}

std::pair<std::string, AlgebraElement> solve_by_naturality(const PageMorphism& m, const Differential& d_src,
                                                           const std::string& g) {
    const AlgebraPresentation& s = *m.source().algebra;
    const AlgebraPresentation& t = *m.target().algebra;
    const AlgebraElement mg = m.apply(s.generator(g));
    if (mg.is_zero()) throw Error("underdetermined", "m(" + g + ") = 0, so d(m(" + g + ")) is unconstrained");
    const auto& [mono, coeff] = *mg.terms.begin();
    std::optional<std::size_t> which;
    if (mg.terms.size() == 1 && (coeff == 1 || coeff == -1)) {
        for (std::size_t i = 0; i < t.generator_count(); ++i)
            if (mono == t.generator_power(i, 1)) which = i;
    }
    if (!which)
        throw Error("underdetermined", "m(" + g + ") = " + t.format(mg) +
                                           " is not a generator; only the coset d(m(g)) = m(d(g)) is fixed");
    AlgebraElement image = m.apply(d_src.apply(s.generator(g)));
    if (coeff == -1) image = -image;
    return {t.generators()[*which].name, image};
}

// ---------------------------------------------------------------------------
// Abutment search

namespace {

struct Unknown {
    std::size_t generator;
    std::vector<Monomial> targets;
};

/// Total degrees whose anti-diagonal cells, with their d_r neighbours, all lie in the window or vanish.
std::pair<int, int> certifiable_range(const Page& page, int r) {
    const Window& w = page.window;
    const Bidegree sh = differential_shift(page.variance, r);
    auto good = [&](Bidegree b) { return w.contains(b) || page.known_zero(b); };
    const int lo = w.p_min + w.q_min;
    int hi = lo - 1;
    for (int i = lo; i <= w.p_max + w.q_max; ++i) {
        bool ok = true;
        for (int p = w.p_min; p <= w.p_max && ok; ++p) {
            const Bidegree b{p, i - p};
            if (!good(b)) ok = false;
            else if (page.cell(b) && (!good(b + sh) || !good(b - sh)))
                ok = false;
        }
        if (!ok) break;
        hi = i;
    }
    return {lo, hi};
}

bool survives(const Page& einf, const AlgebraElement& v) {
    const AlgebraPresentation& a = *einf.algebra;
    auto b = a.bidegree(v);
    if (!b) return false;
    const Cell* c = einf.cell(*b);
    if (!c || !c->reliable) return false;
    auto coords = a.coordinates(v, c->basis);
    if (!c->quotient.contains(coords)) return false;
    // no multiple of v is a boundary
    IntMatrix col = IntMatrix::from_columns(coords.size(), {coords});
    return smith_normal_form(c->boundaries.hconcat(col)).rank == smith_normal_form(c->boundaries).rank + 1;
}

}  // namespace

AbutmentSearch solve_by_abutment(const Page& page, int r, const AbutmentConstraint& constraint, int bound,
                                 const std::set<std::string>& permanent_cycles, bool parallel) {
    const AlgebraPresentation& a = *page.algebra;
    const Page shell = with_index(page, r);
    const Bidegree sh = differential_shift(page.variance, r);
    AbutmentSearch out;

    std::vector<Unknown> unknowns;
    std::size_t total = 1;
    const std::size_t base = static_cast<std::size_t>(2 * bound + 1);
    for (std::size_t i = 0; i < a.generator_count(); ++i) {
        const auto& g = a.generators()[i];
        if (permanent_cycles.count(g.name)) continue;
        auto targets = shell.basis_at(g.bidegree + sh);
        if (targets.empty()) continue;
        for (std::size_t k = 0; k < targets.size(); ++k) total *= base;
        out.unknowns.push_back(g.name);
        unknowns.push_back({i, std::move(targets)});
    }
    out.candidates = total;
    std::tie(out.checked_lo, out.checked_hi) = certifiable_range(shell, r);

    std::vector<std::optional<AbutmentSolution>> found(total);
    std::vector<char> rejected(total, 0);
    std::exception_ptr failure;

    auto examine = [&](std::size_t idx) {
        Differential d(r, page.variance, page.algebra);
        AbutmentSolution sol;
        std::size_t rest = idx;
        for (const auto& u : unknowns) {
            AlgebraElement img;
            std::vector<int> coeffs;
            for (const auto& m : u.targets) {
                const int c = static_cast<int>(rest % base) - bound;
                rest /= base;
                coeffs.push_back(c);
                if (c != 0) img.add_term(m, c);
            }
            d.set_image(u.generator, img);
            sol.images[a.generators()[u.generator].name] = img;
            sol.coefficients.push_back(coeffs);
        }
        for (const auto& name : permanent_cycles) d.add_permanent_cycle(a.index_of(name));
        if (find_d_squared_failure(d, shell)) {
            rejected[idx] = 1;
            return;
        }
        Schedule s;
        s.emplace(r, d);
        const Page einf = run(page, s, 0, false).einf;
        for (int i = out.checked_lo; i <= out.checked_hi; ++i) {
            auto it = constraint.groups.find(i);
            const AbelianGroup want = it == constraint.groups.end() ? AbelianGroup{} : it->second;
            if (total_degree_groups(einf, i, i).at(i) != want) return;
        }
        for (const auto& v : constraint.surviving_classes)
            if (!survives(einf, v)) return;
        for (const auto& v : constraint.boundary_classes)
            if (!einf.is_zero_class(v)) return;
        found[idx] = std::move(sol);
    };

    const long n = static_cast<long>(total);
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (long idx = 0; idx < n; ++idx) {
        try {
            examine(static_cast<std::size_t>(idx));
        } catch (...) {
#pragma omp critical(loophom_abutment_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);

    for (std::size_t i = 0; i < total; ++i) {
        out.d_squared_rejected += rejected[i];
        if (found[i]) out.solutions.push_back(std::move(*found[i]));
    }
    std::sort(out.solutions.begin(), out.solutions.end(),
              [](const AbutmentSolution& x, const AbutmentSolution& y) { return x.coefficients < y.coefficients; });
    if (out.solutions.empty())
        throw Error("no admissible assignment", std::to_string(total) + " candidates with coefficients in [-" +
                                                    std::to_string(bound) + "," + std::to_string(bound) + "]");
    return out;
}

// ---------------------------------------------------------------------------
// Closed forms and duality

Int brown_shih_differential(int k, int j) {
    if (k < 1 || j < 0) throw Error("invalid argument", "brown_shih_differential needs k >= 1, j >= 0");
    AlgebraPresentation p;
    p.add_generator("b", {0, 2 * k - 1}, GeneratorKind::polynomial);
    p.set_commutation_sign("b", "b", 1);
    const AlgebraElement t = p.generator("b");
    const AlgebraElement bj = p.power(t, j);
    const int tdeg = 2 * k - 1;
    const Int sign = (j * tdeg) % 2 ? -1 : 1;
    const AlgebraElement value = sign * p.multiply(bj, t) - p.multiply(t, bj);
    auto it = value.terms.find(p.generator_power(0, j + 1));
    return it == value.terms.end() ? Int(0) : it->second;
}

IntMatrix dualize_differential(const IntMatrix& d) { return d.transpose(); }

IntMatrix dual_matrix(const SpaceTag& s, const Page& serre, const Differential& d_serre, const Page& loop, int q) {
    const int r = d_serre.page_index();
    const AlgebraPresentation& sa = *serre.algebra;
    const AlgebraPresentation& la = *loop.algebra;
    const Bidegree serre_src{0, q + r - 1}, serre_tgt{r, q};
    const Bidegree loop_src{0, q}, loop_tgt{-r, q + r - 1};
    const auto fs = serre.basis_at(serre_src), ft = serre.basis_at(serre_tgt);
    const auto ls = loop.basis_at(loop_src), lt = loop.basis_at(loop_tgt);
    const IntMatrix sm = d_serre.matrix(serre, serre_src);  // ft x fs
    const std::size_t x = la.index_of("x");

    auto position = [&](const std::vector<Monomial>& basis, const Monomial& m, Bidegree where) {
        auto it = std::find(basis.begin(), basis.end(), m);
        if (it == basis.end()) throw Error("duality mismatch", la.format(m) + " not in the basis at " + where.to_string());
        return static_cast<std::size_t>(it - basis.begin());
    };

    IntMatrix out(lt.size(), ls.size());
    if (ft.size() != ls.size()) throw Error("duality mismatch", "rank differs at " + loop_src.to_string());
    for (std::size_t i = 0; i < ft.size(); ++i) {
        Monomial src = dual_monomial(s, sa, ft[i], la);
        const int base = src.exponents[x];
        src.exponents[x] = 0;
        const std::size_t col = position(ls, src, loop_src);
        for (std::size_t j = 0; j < fs.size(); ++j) {
            if (sm(i, j) == 0) continue;
            Monomial tgt = dual_monomial(s, sa, fs[j], la);
            tgt.exponents[x] = base;
            out(position(lt, tgt, loop_tgt), col) = sm(i, j);
        }
    }
    return out;
}

std::map<std::string, AlgebraElement> dual_loop_images(const SpaceTag& s, const Page& serre, const Differential& d_serre,
                                                       const Page& loop) {
    const AlgebraPresentation& la = *loop.algebra;
    const int r = d_serre.page_index();
    std::map<std::string, AlgebraElement> out;
    for (std::size_t i = 0; i < la.generator_count(); ++i) {
        const auto& g = la.generators()[i];
        if (g.bidegree.p != 0) continue;
        const auto ls = loop.basis_at(g.bidegree);
        const auto lt = loop.basis_at(g.bidegree + differential_shift(Variance::homological, r));
        const IntMatrix m = dual_matrix(s, serre, d_serre, loop, g.bidegree.q);
        const std::size_t col = static_cast<std::size_t>(
            std::find(ls.begin(), ls.end(), la.generator_power(i, 1)) - ls.begin());
        std::vector<Int> coords(lt.size());
        for (std::size_t k = 0; k < lt.size(); ++k) coords[k] = m(k, col);
        out[g.name] = la.from_coordinates(coords, lt);
    }
    return out;
}

DualizationReport compare_dualized(const SpaceTag& s, const Page& serre, const Differential& d_serre, const Page& loop,
                                   const Differential& d_loop) {
    DualizationReport rep;
    const int r = d_serre.page_index();
    if (d_loop.page_index() != r) throw Error("page index mismatch", "compare_dualized");
    for (int q = loop.window.q_min; q <= loop.window.q_max; ++q) {
        if (q + r - 1 > serre.window.q_max || q + r - 1 > loop.window.q_max) break;
        const IntMatrix dual = dual_matrix(s, serre, d_serre, loop, q);
        const IntMatrix direct = d_loop.matrix(loop, {0, q});
        ++rep.cells_compared;
        if (dual != direct) {
            rep.ok = false;
            rep.mismatches.push_back("at (0," + std::to_string(q) + "): dualized " + dual.to_string() + ", loop page " +
                                     direct.to_string());
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// The even-sphere derivation

std::string UniversalDerivation::render() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < steps.size(); ++i)
        os << "step " << i + 1 << " [" << steps[i].constraint << "] " << steps[i].statement << '\n';
    os << (consistent ? "consistent" : "INCONSISTENT") << '\n';
    return os.str();
}

UniversalDerivation derive_even_sphere_differential(int n, int bound, int max_total) {
    const SpaceTag sn = SpaceTag::even_sphere(n);
    const std::string N = std::to_string(n);
    UniversalDerivation out;
    out.n = n;
    auto check = [&](bool ok) { out.consistent = out.consistent && ok; };

    // 1. path over the diagonal: the total space is S^n
    const auto up_tag = FibrationTag::path_over_diagonal(sn);
    const Page up = serre_E2(up_tag, serre_window(up_tag, max_total + n));
    const AlgebraPresentation& ua = *up.algebra;
    AbutmentConstraint target;
    target.groups = {{0, AbelianGroup{1, {}}}, {n, AbelianGroup{1, {}}}};
    // the edge map is the diagonal, which identifies a and b
    target.boundary_classes = {ua.parse("a - b")};
    out.search = solve_by_abutment(up, n, target, bound);
    std::vector<std::string> z_images, g_images;
    for (const auto& sol : out.search.solutions) {
        const std::string zi = ua.format(sol.images.at("z")), gi = ua.format(sol.images.at("g"));
        if (std::find(z_images.begin(), z_images.end(), zi) == z_images.end()) z_images.push_back(zi);
        if (std::find(g_images.begin(), g_images.end(), gi) == g_images.end()) g_images.push_back(gi);
    }
    const AlgebraElement a_minus_b = ua.parse("a - b"), a_plus_b_z = ua.parse("a*z + b*z");
    bool z_ok = out.search.solutions.size() == 4;
    for (const auto& sol : out.search.solutions) {
        const auto& zi = sol.images.at("z");
        const auto& gi = sol.images.at("g");
        z_ok = z_ok && (zi == a_minus_b || zi == -a_minus_b) && (gi == a_plus_b_z || gi == -a_plus_b_z);
    }
    check(z_ok);
    out.steps.push_back({"abutment", "total space of Omega S^" + N + " -> (S^" + N + ")^I -> S^" + N + " x S^" + N +
                                         " is S^" + N + " and a - b dies under the diagonal; of " +
                                         std::to_string(out.search.candidates) + " assignments with coefficients in [-" +
                                         std::to_string(bound) + "," + std::to_string(bound) + "], " +
                                         std::to_string(out.search.solutions.size()) + " survive: d^" + N + "(z) in {" +
                                         join(z_images, ", ") + "}"});

    // 2. kernel at (n, n-1)
    const AbutmentSolution* chosen = nullptr;
    for (const auto& sol : out.search.solutions)
        if (sol.images.at("z") == a_minus_b && sol.images.at("g") == a_plus_b_z) chosen = &sol;
    check(chosen != nullptr);
    if (!chosen) return out;
    Page upn = with_index(up, n);
    Differential d_up(n, Variance::cohomological, up.algebra);
    for (const auto& [name, img] : chosen->images) d_up.set_image(ua.index_of(name), img);
    const Bidegree kernel_cell{n, n - 1};
    const IntMatrix k = kernel_basis(d_up.matrix(upn, kernel_cell));
    std::string kernel_text;
    if (k.cols() == 1) {
        kernel_text = ua.format(ua.from_coordinates(k.column(0), upn.basis_at(kernel_cell)));
        check(ua.from_coordinates(k.column(0), upn.basis_at(kernel_cell)) == a_plus_b_z ||
              ua.from_coordinates(k.column(0), upn.basis_at(kernel_cell)) == -a_plus_b_z);
    } else {
        check(false);
    }
    out.steps.push_back({"Leibniz", "ker d^" + N + " on " + kernel_cell.to_string() + " is spanned by " + kernel_text +
                                        "; d^" + N + "(g_1) in {" + join(g_images, ", ") + "}"});

    // 3. naturality along the diagonal
    const auto down_tag = FibrationTag::evaluation(sn);
    const Page down = serre_E2(down_tag, serre_window(down_tag, max_total + n));
    const AlgebraPresentation& da = *down.algebra;
    const PageMorphism phi = induced_map(
        {{"a", da.parse("x")}, {"b", da.parse("x")}, {"z", da.parse("z")}, {"g", da.parse("g")}}, up, down);
    const auto [gname, gimage] = solve_by_naturality(phi, d_up, "g");
    const auto [zname, zimage] = solve_by_naturality(phi, d_up, "z");
    out.evaluation_image = gimage;
    Page downn = with_index(down, n);
    const Differential d_down = extend_differential({{gname, gimage}, {zname, zimage}}, downn,
                                                    cross_section_cycles(down_tag));
    check(gimage == da.parse("2*x*z") && zimage.is_zero());
    check(check_naturality(phi, d_up, d_down).ok);
    out.steps.push_back({"naturality", "phi(a) = phi(b) = x gives d^" + N + "(g_1) = +-" + da.format(gimage) +
                                           " and d^" + N + "(z) = " + da.format(zimage) +
                                           " on Omega S^" + N + " -> Lambda S^" + N + " -> S^" + N});

    // 4. dualization to the loop-homology page
    const Page loop = loop_homology_E2(sn, loop_window(sn, max_total));
    Page loopn = with_index(loop, n);
    const auto images = dual_loop_images(sn, downn, d_down, loopn);
    const Differential d_loop = extend_differential(images, loopn, cross_section_cycles(FibrationTag::loop_homology(sn)));
    out.loop_schedule.emplace(n, d_loop);
    const auto installed = install_known_differentials(sn, loop);
    check(compare_dualized(sn, downn, d_down, loopn, d_loop).ok);
    check(compare_dualized(sn, downn, d_down, loopn, installed.at(n)).ok);
    out.steps.push_back({"duality", "d_" + N + "(y) = +-" + loop.algebra->format(images.at("y")) +
                                        " in the loop homology page"});

    // 5. Brown-Shih cross-check against the Leibniz extension of d(y) = -2 x y^2
    const auto minus = install_known_differentials(sn, loop, -1).at(n);
    const AlgebraPresentation& la = *loop.algebra;
    bool bs_ok = true;
    std::vector<std::string> coeffs;
    for (int j = 0; j <= 8; ++j) {
        const Int c = brown_shih_differential(n / 2, j);
        coeffs.push_back(to_string(c));
        const AlgebraElement dj = minus.apply(la.generator_power(la.index_of("y"), j));
        const AlgebraElement expect = c == 0 ? AlgebraElement{} : la.element(la.parse("x*y^" + std::to_string(j + 1)).terms.begin()->first, c);
        bs_ok = bs_ok && dj == expect;
    }
    check(bs_ok);
    out.steps.push_back({"Leibniz", "Brown-Shih (-1)^{j|b|} b^j b - b b^j on Z[b], |b| = " + std::to_string(n - 1) +
                                        ": coefficients " + join(coeffs, ", ") + " for j = 0..8, " +
                                        (bs_ok ? "consistent" : "inconsistent") + " with d_" + N +
                                        "(y^j) for d_" + N + "(y) = -2*x*y^2"});
    return out;
}

}  // namespace loophom
