#include "loophom/space_models.hpp"

#include <regex>

namespace loophom {

namespace {

std::string str(int v) { return std::to_string(v); }

AlgebraPresentation flip_to_homological(const AlgebraPresentation& base) {
    AlgebraPresentation out;
    for (const auto& g : base.generators()) out.add_generator(g.name, {-g.bidegree.p, g.bidegree.q}, g.kind);
    for (const auto& r : base.relations()) out.add_relation(r);
    for (const auto& [ij, s] : base.sign_overrides())
        out.set_commutation_sign(base.generators()[ij.first].name, base.generators()[ij.second].name, s);
    return out;
}

Differential differential_on(const Page& e2, int r, const std::map<std::string, AlgebraElement>& images,
                             const std::set<std::string>& permanent) {
    Page shell;
    shell.index = r;
    shell.window = e2.window;
    shell.variance = e2.variance;
    shell.algebra = e2.algebra;
    shell.cells = e2.cells;
    return extend_differential(images, shell, permanent);
}

void require_engine_space(const SpaceTag& s) {
    if (s.family == SpaceFamily::circle) throw Error("unsupported", "the circle is answered in closed form");
    if (s.family == SpaceFamily::sphere_product) throw Error("unsupported", "no loop-homology preset for S^n x S^n");
}

}  // namespace

// ---------------------------------------------------------------------------
// Tags

SpaceTag SpaceTag::odd_sphere(int n) {
    if (n <= 1 || n % 2 == 0) throw Error("invalid space", "odd sphere needs odd n > 1, got " + str(n));
    return {SpaceFamily::odd_sphere, n};
}

SpaceTag SpaceTag::even_sphere(int n) {
    if (n < 2 || n % 2 != 0) throw Error("invalid space", "even sphere needs even n >= 2, got " + str(n));
    return {SpaceFamily::even_sphere, n};
}

SpaceTag SpaceTag::complex_projective(int n) {
    if (n < 1) throw Error("invalid space", "complex projective space needs n >= 1, got " + str(n));
    return {SpaceFamily::complex_projective, n};
}

SpaceTag SpaceTag::sphere_product(int n) {
    if (n < 1) throw Error("invalid space", "sphere product needs n >= 1");
    return {SpaceFamily::sphere_product, n};
}

SpaceTag SpaceTag::parse(const std::string& text) {
    static const std::regex sphere(R"(s\^n:(odd|even):(\d+))"), cp(R"(cp\^n:(\d+))");
    std::smatch m;
    if (text == "s1") return circle();
    if (std::regex_match(text, m, sphere)) {
        const int n = std::stoi(m[2]);
        return m[1] == "odd" ? odd_sphere(n) : even_sphere(n);
    }
    if (std::regex_match(text, m, cp)) return complex_projective(std::stoi(m[1]));
    throw Error("invalid space", "expected s1, s^n:odd:<n>, s^n:even:<n> or cp^n:<n>, got '" + text + "'");
}

std::string SpaceTag::to_string() const {
    switch (family) {
        case SpaceFamily::circle: return "s1";
        case SpaceFamily::odd_sphere: return "s^n:odd:" + str(n);
        case SpaceFamily::even_sphere: return "s^n:even:" + str(n);
        case SpaceFamily::complex_projective: return "cp^n:" + str(n);
        case SpaceFamily::sphere_product: return "s^n*s^n:" + str(n);
    }
    return "?";
}

std::string SpaceTag::display_name() const {
    switch (family) {
        case SpaceFamily::circle: return "S^1";
        case SpaceFamily::odd_sphere:
        case SpaceFamily::even_sphere: return "S^" + str(n);
        case SpaceFamily::complex_projective: return "CP^" + str(n);
        case SpaceFamily::sphere_product: return "S^" + str(n) + " x S^" + str(n);
    }
    return "?";
}

int SpaceTag::dimension() const {
    switch (family) {
        case SpaceFamily::circle: return 1;
        case SpaceFamily::odd_sphere:
        case SpaceFamily::even_sphere: return n;
        case SpaceFamily::complex_projective: return 2 * n;
        case SpaceFamily::sphere_product: return 2 * n;
    }
    return 0;
}

// ---------------------------------------------------------------------------
// Models

AlgebraPresentation cohomology_model(const SpaceTag& s) {
    AlgebraPresentation p;
    switch (s.family) {
        case SpaceFamily::circle:
            p.add_generator("x", {1, 0}, GeneratorKind::exterior);
            break;
        case SpaceFamily::odd_sphere:
        case SpaceFamily::even_sphere:
            p.add_generator("x", {s.n, 0}, GeneratorKind::exterior);
            break;
        case SpaceFamily::complex_projective:
            p.add_generator("x", {2, 0}, GeneratorKind::polynomial);
            p.add_relation(p.parse("x^" + str(s.n + 1)));
            break;
        case SpaceFamily::sphere_product:
            // a = x (x) 1, b = 1 (x) x
            p.add_generator("a", {s.n, 0}, GeneratorKind::exterior);
            p.add_generator("b", {s.n, 0}, GeneratorKind::exterior);
            break;
    }
    return p;
}

LoopSpaceModel loop_space_model(const SpaceTag& s) {
    LoopSpaceModel m;
    switch (s.family) {
        case SpaceFamily::circle:
            m.homology.add_generator("t", {0, 0}, GeneratorKind::laurent);
            break;
        case SpaceFamily::odd_sphere:
            m.homology.add_generator("y", {0, s.n - 1}, GeneratorKind::polynomial);
            m.cohomology.add_generator("g", {0, s.n - 1}, GeneratorKind::divided_power);
            break;
        case SpaceFamily::even_sphere:
            m.homology.add_generator("y", {0, s.n - 1}, GeneratorKind::polynomial);
            m.homology.set_commutation_sign("y", "y", 1);
            m.cohomology.add_generator("z", {0, s.n - 1}, GeneratorKind::exterior);
            m.cohomology.add_generator("g", {0, 2 * s.n - 2}, GeneratorKind::divided_power);
            break;
        case SpaceFamily::complex_projective:
            m.homology.add_generator("z", {0, 1}, GeneratorKind::exterior);
            m.homology.add_generator("y", {0, 2 * s.n}, GeneratorKind::polynomial);
            m.cohomology.add_generator("z", {0, 1}, GeneratorKind::exterior);
            m.cohomology.add_generator("g", {0, 2 * s.n}, GeneratorKind::divided_power);
            break;
        case SpaceFamily::sphere_product: {
            const SpaceTag one = s.n % 2 ? SpaceTag::odd_sphere(s.n) : SpaceTag::even_sphere(s.n);
            auto f = loop_space_model(one);
            m.homology = tensor(f.homology, f.homology);
            m.cohomology = tensor(f.cohomology, f.cohomology);
            break;
        }
    }
    return m;
}

Window loop_window(const SpaceTag& s, int max_total) {
    const int dim = s.dimension();
    return Window{-dim, 0, 0, max_total + 2 * dim};
}

Window serre_window(const FibrationTag& f, int q_max) {
    const int dim = f.kind == FibrationKind::path_over_diagonal ? 2 * f.base.dimension() : f.base.dimension();
    return Window{0, dim, 0, q_max};
}

Page loop_homology_E2(const SpaceTag& s, const Window& w, Coefficients k) {
    require_engine_space(s);
    auto algebra = tensor(flip_to_homological(cohomology_model(s)), loop_space_model(s).homology);
    algebra.set_coefficients(k);
    return build_page(algebra, w, Variance::homological);
}

Page serre_E2(const FibrationTag& f, const Window& w) {
    if (f.kind == FibrationKind::loop_homology) return loop_homology_E2(f.base, w);
    require_engine_space(f.base);
    if (f.kind == FibrationKind::path_over_diagonal && f.base.family == SpaceFamily::complex_projective)
        throw Error("unsupported", "path-over-diagonal presets exist for spheres only");
    const AlgebraPresentation base = f.kind == FibrationKind::path_over_diagonal
                                         ? cohomology_model(SpaceTag::sphere_product(f.base.n))
                                         : cohomology_model(f.base);
    return build_page(tensor(base, loop_space_model(f.base).cohomology), w, Variance::cohomological);
}

std::set<std::string> cross_section_cycles(const FibrationTag& f) {
    if (!f.has_cross_section) return {};
    std::set<std::string> out;
    const AlgebraPresentation base = cohomology_model(f.base);
    for (const auto& g : base.generators()) out.insert(g.name);
    return out;
}

int known_differential_page(const SpaceTag& s) {
    switch (s.family) {
        case SpaceFamily::even_sphere: return s.n;
        case SpaceFamily::complex_projective: return 2 * s.n;
        default: return 0;
    }
}

Schedule install_known_differentials(const SpaceTag& s, const Page& e2, int sign) {
    require_engine_space(s);
    const AlgebraPresentation& a = *e2.algebra;
    const auto permanent = cross_section_cycles(FibrationTag::loop_homology(s));
    const std::string k = sign < 0 ? "-" : "";
    Schedule out;
    if (s.family == SpaceFamily::even_sphere) {
        out.emplace(s.n, differential_on(e2, s.n, {{"y", a.parse(k + "2*x*y^2")}}, permanent));
    } else if (s.family == SpaceFamily::complex_projective) {
        out.emplace(2 * s.n, differential_on(e2, 2 * s.n, {{"z", a.parse(k + str(s.n + 1) + "*x^" + str(s.n) + "*y")}},
                                             permanent));
    }
    return out;
}

Schedule install_serre_differentials(const SpaceTag& s, const Page& e2, int sign) {
    require_engine_space(s);
    const AlgebraPresentation& a = *e2.algebra;
    const auto permanent = cross_section_cycles(FibrationTag::evaluation(s));
    const std::string k = sign < 0 ? "-" : "";
    Schedule out;
    if (s.family == SpaceFamily::even_sphere) {
        out.emplace(s.n, differential_on(e2, s.n, {{"g", a.parse(k + "2*x*z")}}, permanent));
    } else if (s.family == SpaceFamily::complex_projective) {
        out.emplace(2 * s.n, differential_on(e2, 2 * s.n, {{"g", a.parse(k + str(s.n + 1) + "*x^" + str(s.n) + "*z")}},
                                             permanent));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Closed forms

std::string ClosedFormGroup::to_string() const {
    if (group_algebra_rank == 0) return group.to_string();
    std::string s = group_algebra_rank == 1 ? tag : tag + "^" + std::to_string(group_algebra_rank);
    return group.is_trivial() ? s : s + " + " + group.to_string();
}

ClosedFormGroup closed_form_groups(const SpaceTag& s, int i) {
    ClosedFormGroup out;
    const int n = s.n;
    switch (s.family) {
        case SpaceFamily::circle:
            // Z[t,t^-1] (x) E(x), |x| = -1
            if (i == 0 || i == -1) {
                out.group_algebra_rank = 1;
                out.tag = "Z[t,t^-1]";
            }
            return out;
        case SpaceFamily::odd_sphere: {
            // Z[y] (x) E(x): y^m in degree m(n-1), x y^m in degree m(n-1) - n
            std::size_t rank = 0;
            if (i >= 0 && i % (n - 1) == 0) ++rank;
            if (i + n >= 0 && (i + n) % (n - 1) == 0) ++rank;
            out.group = {rank, {}};
            return out;
        }
        case SpaceFamily::even_sphere: {
            const int step = 2 * (n - 1);
            std::size_t rank = 0;
            std::vector<Int> tors;
            if (i == -n) ++rank;
            if (i >= 0 && i % step == 0) ++rank;
            if (i + 1 >= 0 && (i + 1) % step == 0) ++rank;
            if (i + n >= step && (i + n) % step == 0) tors.push_back(2);
            out.group = AbelianGroup::from_cyclic_orders(rank, tors);
            return out;
        }
        case SpaceFamily::complex_projective:
            if (i < -2 * n) return out;
            if (i >= 0 && i % (2 * n) == 0)
                out.group = AbelianGroup::from_cyclic_orders(1, {Int(n + 1)});
            else
                out.group = {1, {}};
            return out;
        case SpaceFamily::sphere_product:
            break;
    }
    throw Error("unsupported", "no closed form for " + s.display_name());
}

AlgebraPresentation closed_form_presentation(const SpaceTag& s) {
    const int n = s.n;
    AlgebraPresentation p;
    switch (s.family) {
        case SpaceFamily::circle:
            p.add_generator("t", {0, 0}, GeneratorKind::laurent);
            p.add_generator("x", {-1, 0}, GeneratorKind::exterior);
            return p;
        case SpaceFamily::odd_sphere:
            p.add_generator("x", {-n, 0}, GeneratorKind::exterior);
            p.add_generator("y", {0, n - 1}, GeneratorKind::polynomial);
            return p;
        case SpaceFamily::even_sphere:
            p.add_generator("z", {-n, n - 1}, GeneratorKind::exterior);
            p.add_generator("x", {-n, 0}, GeneratorKind::polynomial);
            p.add_generator("y", {0, 2 * n - 2}, GeneratorKind::polynomial);
            p.add_relation(p.parse("x^2"));
            p.add_relation(p.parse("x*z"));
            p.add_relation(p.parse("2*x*y"));
            return p;
        case SpaceFamily::complex_projective:
            p.add_generator("w", {-2, 1}, GeneratorKind::exterior);
            p.add_generator("x", {-2, 0}, GeneratorKind::polynomial);
            p.add_generator("y", {0, 2 * n}, GeneratorKind::polynomial);
            p.add_relation(p.parse("x^" + str(n + 1)));
            p.add_relation(p.parse(str(n + 1) + "*x^" + str(n) + "*y"));
            p.add_relation(p.parse("w*x^" + str(n)));
            return p;
        case SpaceFamily::sphere_product:
            break;
    }
    throw Error("unsupported", "no closed form for " + s.display_name());
}

std::map<std::string, AlgebraElement> closed_form_assignment(const SpaceTag& s, const AlgebraPresentation& e2) {
    require_engine_space(s);
    switch (s.family) {
        case SpaceFamily::odd_sphere: return {{"x", e2.parse("x")}, {"y", e2.parse("y")}};
        case SpaceFamily::even_sphere: return {{"z", e2.parse("x*y")}, {"x", e2.parse("x")}, {"y", e2.parse("y^2")}};
        case SpaceFamily::complex_projective: return {{"w", e2.parse("x*z")}, {"x", e2.parse("x")}, {"y", e2.parse("y")}};
        default: break;
    }
    throw Error("unsupported", s.display_name());
}

// ---------------------------------------------------------------------------
// Multiplicative extensions

namespace {

ChoiceCheck check_choice(const Page& einf, const AlgebraPresentation& candidate,
                         std::map<std::string, AlgebraElement> assignment,
                         const std::map<std::string, AlgebraElement>& corrections, int c) {
    ChoiceCheck out;
    out.c = c;
    for (const auto& [name, delta] : corrections) assignment[name] += Int(c) * delta;
    out.failures = relation_failures(einf, candidate, assignment, einf.window);
    out.ok = out.failures.empty();
    return out;
}

}  // namespace

MultiplicativeExtension multiplicative_extension_check(const SpaceTag& s, const Page& einf) {
    MultiplicativeExtension out;
    const auto candidate = closed_form_presentation(s);
    const auto assignment = closed_form_assignment(s, *einf.algebra);
    const AlgebraPresentation& a = *einf.algebra;

    // classes of lower filtration in the total degree of each generator
    std::map<std::string, AlgebraElement> corrections;
    for (const auto& g : candidate.generators()) {
        const Bidegree b = g.bidegree;
        AlgebraElement below;
        for (int p = einf.window.p_min; p < b.p; ++p) {
            const Bidegree at{p, b.total() - p};
            if (!einf.certified(at)) throw Error("uncertified cell", at.to_string());
            const Cell* c = einf.cell(at);
            if (!c) continue;
            for (std::size_t k = 0; k < c->quotient.lifts().size(); ++k) {
                below += einf.lift(at, k);
                out.details.push_back(g.name + " may be moved by " + a.format(einf.lift(at, k)) + " (" +
                                      c->group().to_string() + " at " + at.to_string() + ")");
            }
        }
        if (!below.is_zero()) corrections[g.name] = below;
    }
    if (corrections.empty()) {
        out.verified = true;
        out.argument = "dimension";
        out.details.push_back("no classes of lower filtration in the degrees of the generators");
        return out;
    }
    out.verified = true;
    for (int c = -2; c <= 2; ++c) {
        out.choices.push_back(check_choice(einf, candidate, assignment, corrections, c));
        out.verified = out.verified && out.choices.back().ok;
    }
    out.argument = out.verified ? "choice independence" : "unverified multiplicative extension";
    return out;
}

N2Report n2_extension_check() {
    const SpaceTag s2 = SpaceTag::even_sphere(2);
    const Page e2 = loop_homology_E2(s2, loop_window(s2, 30));
    const Page einf = run(e2, install_known_differentials(s2, e2)).einf;
    const AlgebraPresentation& a = *einf.algebra;
    N2Report out;
    for (int c = -2; c <= 2; ++c) {
        out.choices.push_back(check_choice(einf, closed_form_presentation(s2), closed_form_assignment(s2, a),
                                           {{"y", a.parse("x*y^4")}}, c));
        out.ok = out.ok && out.choices.back().ok;
    }
    return out;
}

Monomial dual_monomial(const SpaceTag& s, const AlgebraPresentation& serre, const Monomial& m,
                       const AlgebraPresentation& loop) {
    Monomial out = loop.unit();
    auto exp = [&](const char* name) {
        auto i = serre.find(name);
        return i ? m.exponents[*i] : 0;
    };
    if (auto x = loop.find("x")) out.exponents[*x] = exp("x");
    const int g = exp("g"), z = exp("z");
    switch (s.family) {
        case SpaceFamily::even_sphere:
            out.exponents[loop.index_of("y")] = 2 * g + z;
            break;
        case SpaceFamily::complex_projective:
            out.exponents[loop.index_of("y")] = g;
            out.exponents[loop.index_of("z")] = z;
            break;
        case SpaceFamily::odd_sphere:
            out.exponents[loop.index_of("y")] = g;
            break;
        default:
            throw Error("unsupported", "no fiber duality for " + s.display_name());
    }
    return out;
}

}  // namespace loophom
