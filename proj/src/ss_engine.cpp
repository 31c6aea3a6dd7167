#include "loophom/ss_engine.hpp"

#include <algorithm>
#include <exception>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace loophom {

namespace {

int parity(int degree) { return ((degree % 2) + 2) % 2; }
int sign_of_degree(int degree) { return parity(degree) == 0 ? 1 : -1; }

IntMatrix negate(IntMatrix m) {
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = -m(r, c);
    return m;
}

bool inside(const IntMatrix& lattice, const IntMatrix& vectors) {
    if (vectors.cols() == 0 || vectors.is_zero()) return true;
    IntMatrix unused;
    return solve_in_lattice(lattice, vectors, unused);
}

int weight(const Monomial& m) {
    int w = 0;
    for (int e : m.exponents) w += std::abs(e);
    return w;
}

/// Splits e into homogeneous components.
std::map<Bidegree, AlgebraElement> components(const AlgebraElement& e, const AlgebraPresentation& a) {
    std::map<Bidegree, AlgebraElement> out;
    for (const auto& [m, c] : e.terms) out[a.bidegree(m)].add_term(m, c);
    return out;
}

}  // namespace

std::pair<int, int> p_support_hull(const AlgebraPresentation& a) {
    const auto& gens = a.generators();
    std::vector<int> bound(gens.size(), -1);
    for (std::size_t i = 0; i < gens.size(); ++i)
        if (gens[i].kind == GeneratorKind::exterior) bound[i] = 1;
    for (const auto& r : a.relations()) {
        if (r.terms.size() != 1 || r.terms.begin()->second != 1) continue;
        const Monomial& m = r.terms.begin()->first;
        std::size_t nonzero = 0, which = 0;
        for (std::size_t i = 0; i < m.exponents.size(); ++i)
            if (m.exponents[i] != 0) ++nonzero, which = i;
        if (nonzero != 1 || gens[which].kind != GeneratorKind::polynomial) continue;
        const int e = m.exponents[which] - 1;
        bound[which] = bound[which] < 0 ? e : std::min(bound[which], e);
    }
    int lo = 0, hi = 0;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        const int p = gens[i].bidegree.p;
        if (p == 0) continue;
        if (bound[i] < 0) throw Error("window too small", "generator '" + gens[i].name + "' has unbounded p-support");
        (p < 0 ? lo : hi) += p * bound[i];
    }
    return {lo, hi};
}

std::string to_string(Variance v) { return v == Variance::homological ? "homological" : "cohomological"; }

Bidegree differential_shift(Variance v, int r) {
    return v == Variance::homological ? Bidegree{-r, r - 1} : Bidegree{r, -r + 1};
}

// ---------------------------------------------------------------------------
// Page

const Cell* Page::cell(Bidegree b) const {
    auto it = cells.find(b);
    return it == cells.end() ? nullptr : &it->second;
}

std::vector<Monomial> Page::basis_at(Bidegree b) const {
    if (const Cell* c = cell(b)) return c->basis;
    if (window.contains(b) || !algebra) return {};
    return algebra->basis_at(b);
}

bool Page::known_zero(Bidegree b) const {
    if (cell(b)) return false;
    return basis_at(b).empty();
}

bool Page::certified(Bidegree b) const {
    if (const Cell* c = cell(b)) return c->reliable;
    return window.contains(b) || known_zero(b);
}

AbelianGroup Page::group_at(Bidegree b) const {
    if (!certified(b)) throw Error("uncertified cell", b.to_string());
    if (const Cell* c = cell(b)) return c->group();
    return {};
}

AlgebraElement Page::lift(Bidegree b, std::size_t generator) const {
    const Cell* c = cell(b);
    if (!c || generator >= c->quotient.lifts().size()) throw Error("no such class", b.to_string());
    return algebra->from_coordinates(c->quotient.lifts()[generator], c->basis);
}

std::map<Bidegree, std::vector<Int>> Page::classify(const AlgebraElement& e) const {
    std::map<Bidegree, std::vector<Int>> out;
    for (const auto& [b, part] : components(e, *algebra)) {
        if (!certified(b)) throw Error("uncertified cell", b.to_string());
        const Cell* c = cell(b);
        if (!c) continue;
        out[b] = c->quotient.coordinates(algebra->coordinates(part, c->basis));
    }
    return out;
}

bool Page::is_cycle(const AlgebraElement& e) const {
    for (const auto& [b, part] : components(e, *algebra)) {
        const Cell* c = cell(b);
        if (!c) {
            if (!certified(b)) throw Error("uncertified cell", b.to_string());
            continue;
        }
        if (!c->quotient.contains(algebra->coordinates(part, c->basis))) return false;
    }
    return true;
}

bool Page::is_zero_class(const AlgebraElement& e) const {
    for (const auto& [b, part] : components(e, *algebra)) {
        const Cell* c = cell(b);
        if (!c) {
            if (!certified(b)) throw Error("uncertified cell", b.to_string());
            continue;
        }
        if (!c->quotient.is_zero_class(algebra->coordinates(part, c->basis))) return false;
    }
    return true;
}

std::vector<Bidegree> Page::certified_cells() const {
    std::vector<Bidegree> out;
    for (const auto& [b, c] : cells)
        if (c.reliable) out.push_back(b);
    return out;
}

// ---------------------------------------------------------------------------
// Differential

Differential::Differential(int page_index, Variance variance, std::shared_ptr<const AlgebraPresentation> algebra)
    : page_index_(page_index), variance_(variance), algebra_(std::move(algebra)) {}

void Differential::set_image(std::size_t generator, const AlgebraElement& image) {
    if (generator >= algebra_->generator_count()) throw Error("unknown generator", std::to_string(generator));
    auto nf = algebra_->normal_form(image);
    if (nf.is_zero()) {
        images_.erase(generator);
        return;
    }
    if (algebra_->generators()[generator].kind == GeneratorKind::laurent)
        throw Error("unsupported", "differentials on laurent generators");
    images_[generator] = nf;
}

void Differential::add_permanent_cycle(std::size_t generator) { permanent_cycles_.insert(generator); }

bool Differential::has_nonzero_images() const { return !images_.empty(); }

AlgebraElement Differential::apply_factor(std::size_t i, int exponent) const {
    auto it = images_.find(i);
    if (it == images_.end() || exponent == 0) return {};
    const AlgebraPresentation& a = *algebra_;
    const Generator& g = a.generators()[i];
    const AlgebraElement& dg = it->second;
    switch (g.kind) {
        case GeneratorKind::exterior:
            return dg;
        case GeneratorKind::divided_power:
            // d(gamma_k) = d(gamma_1) gamma_{k-1}
            return a.multiply(dg, a.element(a.generator_power(i, exponent - 1)));
        case GeneratorKind::polynomial: {
            // d(g^k) = d(g) g^{k-1} + (-1)^{|g|} g d(g^{k-1})
            const int s = sign_of_degree(g.bidegree.total());
            const AlgebraElement gen = a.element(a.generator_power(i, 1));
            AlgebraElement acc = dg;
            for (int k = 2; k <= exponent; ++k) {
                AlgebraElement next = a.multiply(dg, a.element(a.generator_power(i, k - 1)));
                next += Int(s) * a.multiply(gen, acc);
                acc = std::move(next);
            }
            return acc;
        }
        case GeneratorKind::laurent:
            break;
    }
    throw Error("unsupported", "differentials on laurent generators");
}

AlgebraElement Differential::apply(const Monomial& m) const {
    const AlgebraPresentation& a = *algebra_;
    AlgebraElement out;
    if (images_.empty()) return out;
    const std::size_t n = a.generator_count();
    int prefix_degree = 0;
    for (std::size_t j = 0; j < n; ++j) {
        const int e = m.exponents[j];
        if (e == 0) continue;
        AlgebraElement df = apply_factor(j, e);
        if (!df.is_zero()) {
            Monomial prefix = a.unit(), suffix = a.unit();
            for (std::size_t k = 0; k < j; ++k) prefix.exponents[k] = m.exponents[k];
            for (std::size_t k = j + 1; k < n; ++k) suffix.exponents[k] = m.exponents[k];
            AlgebraElement term = a.multiply(a.element(prefix), a.multiply(df, a.element(suffix)));
            out += Int(sign_of_degree(prefix_degree)) * term;
        }
        prefix_degree += a.bidegree(a.generator_power(j, e)).total();
    }
    return out;
}

AlgebraElement Differential::apply(const AlgebraElement& e) const {
    AlgebraElement out;
    for (const auto& [m, c] : e.terms) out += c * apply(m);
    return out;
}

IntMatrix Differential::matrix(const Page& page, Bidegree source) const {
    const auto src = page.basis_at(source);
    const auto tgt = page.basis_at(source + shift());
    IntMatrix m(tgt.size(), src.size());
    if (images_.empty() || tgt.empty()) return m;
    for (std::size_t j = 0; j < src.size(); ++j) {
        auto image = apply(src[j]);
        if (image.is_zero()) continue;
        auto col = algebra_->coordinates(image, tgt);
        for (std::size_t i = 0; i < tgt.size(); ++i) m(i, j) = col[i];
    }
    return m;
}

// ---------------------------------------------------------------------------
// Pages

Page build_page(const AlgebraPresentation& p, const Window& w, Variance variance) {
    return build_page(std::make_shared<const AlgebraPresentation>(p), w, variance);
}

Page build_page(std::shared_ptr<const AlgebraPresentation> p, const Window& w, Variance variance) {
    if (!p->ideal_relations().empty())
        throw Error("unsupported", "E2 presentations may only carry monomial truncations");
    Page page;
    page.index = 2;
    page.window = w;
    page.variance = variance;
    page.algebra = p;
    if (w.empty()) return page;
    for (auto& [b, basis] : p->monomial_basis(w)) {
        Cell c;
        c.at = b;
        const std::size_t k = basis.size();
        c.basis = std::move(basis);
        c.cycles = IntMatrix::identity(k);
        c.boundaries = IntMatrix(k, 0);
        c.quotient = Subquotient(c.cycles, c.boundaries);
        page.cells.emplace(b, std::move(c));
    }
    return page;
}

std::optional<Monomial> find_d_squared_failure(const Differential& d, const Page& page) {
    for (const auto& [b, c] : page.cells)
        for (const auto& m : c.basis)
            if (!d.apply(d.apply(m)).is_zero()) return m;
    return std::nullopt;
}

Differential extend_differential(const std::map<std::string, AlgebraElement>& images, const Page& page,
                                 const std::set<std::string>& permanent_cycles) {
    const AlgebraPresentation& a = *page.algebra;
    Differential d(page.index, page.variance, page.algebra);
    for (const auto& [name, image] : images) {
        const std::size_t i = a.index_of(name);
        auto nf = a.normal_form(image);
        if (!nf.is_zero()) {
            const Bidegree want = a.generators()[i].bidegree + d.shift();
            const auto got = a.bidegree(nf);
            if (*got != want)
                throw Error("wrong target bidegree", "d_" + std::to_string(page.index) + "(" + name + ") = " +
                                                         a.format(nf) + " sits in " + got->to_string() +
                                                         ", expected " + want.to_string());
        }
        d.set_image(i, nf);
    }
    for (const auto& name : permanent_cycles) {
        const std::size_t i = a.index_of(name);
        if (d.images().count(i)) throw Error("permanent cycle moved", name);
        d.add_permanent_cycle(i);
    }
    if (auto m = find_d_squared_failure(d, page)) throw Error("d-squared nonzero", a.format(*m));
    return d;
}

namespace {

Cell turn_cell(const Page& page, const Differential& d, const Cell& c) {
    const bool rational = page.algebra->coefficients() == Coefficients::rationals;
    const Bidegree sh = d.shift();
    Cell out;
    out.at = c.at;
    out.basis = c.basis;
    out.reliable = c.reliable;
    IntMatrix z = c.cycles;
    IntMatrix b = c.boundaries;

    // outgoing: Z_{r+1} = { z in Z_r : d z in B_r(target) }
    const Bidegree t = c.at + sh;
    const auto tb = page.basis_at(t);
    if (!tb.empty() && z.cols() > 0) {
        const IntMatrix dz = d.matrix(page, c.at) * z;
        if (!dz.is_zero()) {
            const Cell* tc = page.cell(t);
            IntMatrix bt = tc ? tc->boundaries : IntMatrix(tb.size(), 0);
            if (!tc || !tc->reliable) out.reliable = false;
            if (tc && (!inside(tc->cycles, dz) || !inside(bt, d.matrix(page, c.at) * c.boundaries)))
                throw Error("differential not defined on page",
                            "d_" + std::to_string(d.page_index()) + " at " + c.at.to_string());
            const IntMatrix k = kernel_basis(dz.hconcat(negate(bt)));
            z = lattice_basis(z * k.row_block(0, z.cols()));
            if (rational) z = saturation_basis(z);
        }
    }

    // incoming: B_{r+1} = B_r + d Z_r(source)
    const Bidegree s = c.at - sh;
    const auto sb = page.basis_at(s);
    if (!sb.empty()) {
        const Cell* sc = page.cell(s);
        const IntMatrix zs = sc ? sc->cycles : IntMatrix::identity(sb.size());
        const IntMatrix dzs = d.matrix(page, s) * zs;
        if (!dzs.is_zero()) {
            if (!sc || !sc->reliable) out.reliable = false;
            b = rational ? saturation_basis(b.hconcat(dzs)) : lattice_basis(b.hconcat(dzs));
        }
    }

    out.cycles = std::move(z);
    out.boundaries = std::move(b);
    out.quotient = Subquotient(out.cycles, out.boundaries);
    return out;
}

Page next_page_shell(const Page& page, const Differential& d) {
    if (d.page_index() != page.index)
        throw Error("page index mismatch", "d_" + std::to_string(d.page_index()) + " on E_" + std::to_string(page.index));
    if (d.variance() != page.variance) throw Error("variance mismatch", "");
    Page next;
    next.index = page.index + 1;
    next.window = page.window;
    next.variance = page.variance;
    next.algebra = page.algebra;
    return next;
}

}  // namespace

Page turn_page_serial(const Page& page, const Differential& d) {
    Page next = next_page_shell(page, d);
    for (const auto& [b, c] : page.cells) next.cells.emplace(b, turn_cell(page, d, c));
    return next;
}

Page turn_page(const Page& page, const Differential& d) {
    Page next = next_page_shell(page, d);
    std::vector<const Cell*> work;
    work.reserve(page.cells.size());
    for (const auto& [b, c] : page.cells) work.push_back(&c);
    std::vector<Cell> done(work.size());
    std::exception_ptr failure;
    const long n = static_cast<long>(work.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) {
        try {
            done[i] = turn_cell(page, d, *work[i]);
        } catch (...) {
#pragma omp critical(loophom_turn_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    for (auto& c : done) {
        const Bidegree at = c.at;
        next.cells.emplace(at, std::move(c));
    }
    return next;
}

// ---------------------------------------------------------------------------
// Running to E_inf

std::string StabilizationReport::summary() const {
    std::ostringstream os;
    os << "nonzero differentials on pages {";
    for (std::size_t i = 0; i < nonzero_pages.size(); ++i) os << (i ? "," : "") << nonzero_pages[i];
    os << "}; E_" << last_page << " = E_inf by placement (p-width " << placement_bound << "); " << certified_cells
       << " certified cells, " << uncertified.size() << " uncertified";
    return os.str();
}

RunResult run(const Page& page2, const Schedule& schedule, int r_max, bool parallel) {
    RunResult result;
    StabilizationReport& report = result.report;

    // Differentials longer than the p-width of the support leave it; the support is bounded by the
    // generators' p-degrees times their exponent bounds, and the window must contain that hull.
    int width = 0;
    if (page2.algebra && !page2.window.empty()) {
        const auto [p_lo, p_hi] = p_support_hull(*page2.algebra);
        const Window& w = page2.window;
        if (p_lo < w.p_min || p_hi > w.p_max)
            throw Error("window too small", "E2 support spans p in [" + std::to_string(p_lo) + "," +
                                                std::to_string(p_hi) + "], window p in [" + std::to_string(w.p_min) +
                                                "," + std::to_string(w.p_max) + "]");
        width = p_hi - p_lo;
    }
    report.placement_bound = width;

    int last = std::max(r_max, width);
    if (!schedule.empty()) {
        if (schedule.begin()->first < page2.index)
            throw Error("page index mismatch", "differential scheduled before E_" + std::to_string(page2.index));
        last = std::max(last, schedule.rbegin()->first);
    }

    Page cur = page2;
    for (int r = page2.index; r <= last; ++r) {
        auto it = schedule.find(r);
        if (it == schedule.end() || !it->second.has_nonzero_images()) {
            cur.index = r + 1;
            continue;
        }
        report.nonzero_pages.push_back(r);
        cur = parallel ? turn_page(cur, it->second) : turn_page_serial(cur, it->second);
    }
    report.last_page = cur.index;
    for (const auto& [b, c] : cur.cells) {
        if (c.reliable)
            ++report.certified_cells;
        else
            report.uncertified.push_back(b);
    }
    result.einf = std::move(cur);
    return result;
}

std::map<int, AbelianGroup> total_degree_groups(const Page& einf, int lo, int hi) {
    std::map<int, AbelianGroup> out;
    const Window& w = einf.window;
    for (int i = lo; i <= hi; ++i) {
        AbelianGroup sum;
        for (int p = w.p_min; p <= w.p_max; ++p) {
            const Bidegree b{p, i - p};
            if (!einf.certified(b))
                throw Error("uncertified cell in range", b.to_string() + " in total degree " + std::to_string(i));
            if (const Cell* c = einf.cell(b)) sum = direct_sum(sum, c->group());
        }
        out[i] = sum;
    }
    return out;
}

ExtensionReport extension_split_check(const Page& einf, int total_degree) {
    ExtensionReport rep;
    const Window& w = einf.window;
    for (int p = w.p_min; p <= w.p_max; ++p) {
        const Bidegree b{p, total_degree - p};
        if (!einf.certified(b)) {
            rep.splits = false;
            rep.message = "uncertified cell " + b.to_string();
            return rep;
        }
        if (const Cell* c = einf.cell(b); c && !c->group().is_trivial()) rep.filtration.emplace_back(b, c->group());
    }
    // homological filtrations grow with p; cohomological ones shrink, so the smallest piece has the largest p
    if (einf.variance == Variance::cohomological) std::reverse(rep.filtration.begin(), rep.filtration.end());
    for (std::size_t k = 1; k < rep.filtration.size(); ++k) {
        if (!rep.filtration[k].second.is_free()) {
            rep.splits = false;
            rep.message = "torsion quotient " + rep.filtration[k].second.to_string() + " at " +
                          rep.filtration[k].first.to_string() + " above filtration " +
                          rep.filtration[0].first.to_string();
            return rep;
        }
    }
    rep.message = rep.filtration.size() <= 1 ? "at most one nonzero cell" : "all quotients above the lowest are free";
    return rep;
}

// ---------------------------------------------------------------------------
// Presentations and products

AlgebraElement evaluate(const AlgebraElement& e, const AlgebraPresentation& candidate,
                        const std::map<std::string, AlgebraElement>& assignment, const AlgebraPresentation& target) {
    std::vector<AlgebraElement> reps;
    for (const auto& g : candidate.generators()) {
        if (g.kind == GeneratorKind::divided_power || g.kind == GeneratorKind::laurent)
            throw Error("unsupported", "evaluating " + to_string(g.kind) + " generator '" + g.name + "'");
        auto it = assignment.find(g.name);
        if (it == assignment.end()) throw Error("unassigned generator", g.name);
        reps.push_back(target.normal_form(it->second));
    }
    AlgebraElement out;
    for (const auto& [m, c] : e.terms) {
        AlgebraElement term = target.one();
        for (std::size_t i = 0; i < reps.size(); ++i)
            if (m.exponents[i] > 0) term = target.multiply(term, target.power(reps[i], m.exponents[i]));
        out += c * term;
    }
    return out;
}

std::vector<std::string> relation_failures(const Page& einf, const AlgebraPresentation& candidate,
                                           const std::map<std::string, AlgebraElement>& assignment, const Window& w) {
    const AlgebraPresentation& a = *einf.algebra;
    std::vector<std::string> out;
    auto vanishes = [&](const AlgebraElement& value, const std::string& label) {
        for (const auto& [b, part] : components(value, a)) {
            if (!w.contains(b) || !einf.certified(b)) continue;
            if (!einf.is_zero_class(part))
                out.push_back("relation fails: " + label + " at " + b.to_string() + " (total degree " +
                              std::to_string(b.total()) + ")");
        }
    };
    for (const auto& r : candidate.relations()) vanishes(evaluate(r, candidate, assignment, a), candidate.format(r));
    const auto& gens = candidate.generators();
    for (std::size_t i = 0; i < gens.size(); ++i) {
        const AlgebraElement gi = evaluate(candidate.generator(gens[i].name), candidate, assignment, a);
        for (std::size_t j = i; j < gens.size(); ++j) {
            const AlgebraElement gj = evaluate(candidate.generator(gens[j].name), candidate, assignment, a);
            if (i == j && gens[i].kind == GeneratorKind::exterior) {
                vanishes(a.multiply(gi, gi), gens[i].name + "^2");
                continue;
            }
            vanishes(a.multiply(gi, gj) - Int(candidate.commutation_sign(i, j)) * a.multiply(gj, gi),
                     "[" + gens[i].name + "," + gens[j].name + "]");
        }
    }
    return out;
}

PresentationCheck verify_presentation(const Page& einf, const AlgebraPresentation& candidate,
                                      const std::map<std::string, AlgebraElement>& assignment, const Window& w) {
    PresentationCheck res;
    const AlgebraPresentation& a = *einf.algebra;
    auto fail = [&](const std::string& s) {
        res.ok = false;
        res.mismatches.push_back(s);
    };
    auto where = [](Bidegree b) { return b.to_string() + " (total degree " + std::to_string(b.total()) + ")"; };

    // generators map to cycles of the right bidegree
    for (const auto& g : candidate.generators()) {
        auto it = assignment.find(g.name);
        if (it == assignment.end()) {
            fail("not generated: generator '" + g.name + "' has no representative");
            continue;
        }
        auto rep = a.normal_form(it->second);
        if (rep.is_zero()) continue;
        auto b = a.bidegree(rep);
        if (!b || *b != g.bidegree) {
            fail("rank mismatch: representative of '" + g.name + "' sits in " + (b ? b->to_string() : "?") +
                 ", expected " + g.bidegree.to_string());
            continue;
        }
        if (einf.certified(*b) && !einf.is_cycle(rep)) fail("relation fails: '" + g.name + "' is not a cycle");
    }
    if (!res.ok) return res;

    // groups cell by cell
    for (const Bidegree b : w.cells()) {
        if (!einf.certified(b)) continue;
        const AbelianGroup have = einf.group_at(b);
        const AbelianGroup want = candidate.component_group(b);
        if (have != want)
            fail("rank mismatch at " + where(b) + ": candidate " + want.to_string() + ", E_inf " + have.to_string());
    }

    for (auto& f : relation_failures(einf, candidate, assignment, w)) fail(f);

    // generation: images of candidate monomials span each certified cell
    for (const auto& [b, cell] : einf.cells) {
        if (!w.contains(b) || !cell.reliable || cell.group().is_trivial()) continue;
        const auto& group = cell.group();
        std::vector<std::vector<Int>> columns;
        bool cycles = true;
        for (const auto& m : candidate.basis_at(b)) {
            auto value = evaluate(candidate.element(m), candidate, assignment, a);
            if (value.is_zero()) continue;
            if (!einf.is_cycle(value)) {
                cycles = false;
                fail("relation fails: " + candidate.format(m) + " is not a cycle at " + where(b));
                break;
            }
            auto coords = einf.classify(value);
            if (auto it = coords.find(b); it != coords.end()) columns.push_back(it->second);
        }
        if (!cycles) continue;
        const std::size_t k = group.generator_count();
        for (std::size_t t = 0; t < group.torsion.size(); ++t) {
            std::vector<Int> col(k, 0);
            col[t] = group.torsion[t];
            columns.push_back(col);
        }
        if (!cokernel(IntMatrix::from_columns(k, columns)).is_trivial())
            fail("not generated at " + where(b) + ": E_inf " + group.to_string());
    }
    return res;
}

PageCommutativity check_graded_commutative(const Page& page) {
    const AlgebraPresentation& a = *page.algebra;
    struct Lift {
        AlgebraElement value;
        Bidegree at;
        int weight;
    };
    std::vector<Lift> lifts;
    for (const auto& [b, c] : page.cells) {
        if (!c.reliable) continue;
        for (std::size_t k = 0; k < c.quotient.lifts().size(); ++k) {
            auto v = page.lift(b, k);
            lifts.push_back({v, b, weight(v.terms.begin()->first)});
        }
    }
    std::stable_sort(lifts.begin(), lifts.end(), [](const Lift& x, const Lift& y) { return x.weight < y.weight; });

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < lifts.size(); ++i)
        for (std::size_t j = i; j < lifts.size(); ++j) pairs.emplace_back(i, j);
    std::stable_sort(pairs.begin(), pairs.end(), [&](const auto& x, const auto& y) {
        return lifts[x.first].weight + lifts[x.second].weight < lifts[y.first].weight + lifts[y.second].weight;
    });

    PageCommutativity res;
    for (const auto& [i, j] : pairs) {
        const Bidegree target = lifts[i].at + lifts[j].at;
        if (!page.certified(target) || !page.cell(target)) continue;
        const int s = sign_of_degree(lifts[i].at.total() * lifts[j].at.total());
        const AlgebraElement ab = a.multiply(lifts[i].value, lifts[j].value);
        const AlgebraElement ba = a.multiply(lifts[j].value, lifts[i].value);
        const AlgebraElement defect = ab - Int(s) * ba;
        if (defect.is_zero()) continue;
        if (page.is_cycle(defect) && page.is_zero_class(defect)) continue;
        res.ok = false;
        res.witness = std::make_pair(lifts[i].value, lifts[j].value);
        return res;
    }
    return res;
}

LeibnizCheck check_leibniz(const Differential& d, const Page& page) {
    const AlgebraPresentation& a = *page.algebra;
    std::vector<Monomial> ms;
    for (const auto& [b, c] : page.cells) ms.insert(ms.end(), c.basis.begin(), c.basis.end());
    LeibnizCheck res;
    for (const auto& x : ms) {
        const Bidegree bx = a.bidegree(x);
        const AlgebraElement ex = a.element(x), dx = d.apply(x);
        for (const auto& y : ms) {
            if (!page.window.contains(bx + a.bidegree(y))) continue;
            ++res.pairs_checked;
            const AlgebraElement ey = a.element(y);
            const AlgebraElement lhs = d.apply(a.multiply(ex, ey));
            const AlgebraElement rhs =
                a.multiply(dx, ey) + Int(sign_of_degree(bx.total())) * a.multiply(ex, d.apply(y));
            if (lhs != rhs) {
                res.ok = false;
                res.witness = std::make_pair(x, y);
                return res;
            }
        }
    }
    return res;
}

long long euler_characteristic(const Page& page, const std::vector<Bidegree>& cells) {
    long long chi = 0;
    for (const Bidegree b : cells)
        if (const Cell* c = page.cell(b))
            chi += sign_of_degree(b.total()) * static_cast<long long>(c->group().free_rank);
    return chi;
}

std::vector<Bidegree> closed_certified_cells(const Page& page, int r) {
    const Bidegree sh = differential_shift(page.variance, r);
    const Window& w = page.window;
    std::vector<Bidegree> out;
    for (const auto& [b, c] : page.cells) {
        if (!c.reliable) continue;
        bool closed = true;
        for (int dir : {-1, 1}) {
            for (Bidegree x = b + dir * sh; closed && x.p >= w.p_min && x.p <= w.p_max; x = x + dir * sh) {
                if (w.contains(x)) {
                    if (!page.certified(x)) closed = false;
                } else if (!page.known_zero(x)) {
                    closed = false;
                }
            }
        }
        if (closed) out.push_back(b);
    }
    return out;
}

}  // namespace loophom
