#include "cli.hpp"

#include "loophom/naturality.hpp"
#include "loophom/page_io.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace loophom::cli {

namespace {

std::string ring_letter(Coefficients k) { return k == Coefficients::rationals ? "Q" : "Z"; }

std::string group_text(const AbelianGroup& g, Coefficients k) {
    if (k == Coefficients::rationals) {
        if (g.free_rank == 0) return "0";
        return g.free_rank == 1 ? "Q" : "Q^" + std::to_string(g.free_rank);
    }
    return g.to_string();
}

/// Closed form reduced to the coefficient field.
AbelianGroup expected_group(const SpaceTag& s, int i, Coefficients k) {
    AbelianGroup g = closed_form_groups(s, i).group;
    if (k == Coefficients::rationals) g.torsion.clear();
    return g;
}

/// E(z) (x) Z[x,y] / (x^2, ...).
std::string presentation_summary(const AlgebraPresentation& p, Coefficients k) {
    std::vector<std::string> ext, poly, laurent;
    for (const auto& g : p.generators()) {
        if (g.kind == GeneratorKind::exterior) ext.push_back(g.name);
        else if (g.kind == GeneratorKind::laurent) laurent.push_back(g.name);
        else poly.push_back(g.name);
    }
    auto join = [](const std::vector<std::string>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
        return s;
    };
    std::vector<std::string> parts;
    if (!laurent.empty()) parts.push_back(ring_letter(k) + "[" + laurent[0] + "," + laurent[0] + "^-1]");
    if (!ext.empty()) parts.push_back("E(" + join(ext) + ")");
    if (!poly.empty()) parts.push_back(ring_letter(k) + "[" + join(poly) + "]");
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? " (x) " : "") + parts[i];
    if (!p.relations().empty()) {
        std::vector<std::string> rels;
        for (const auto& r : p.relations()) rels.push_back(p.format(r));
        s += " / (";
        for (std::size_t i = 0; i < rels.size(); ++i) s += (i ? ", " : "") + rels[i];
        s += ")";
    }
    return s;
}

std::vector<std::string> differential_lines(const Schedule& schedule, const AlgebraPresentation& a) {
    std::vector<std::string> out;
    for (const auto& [r, d] : schedule) {
        for (std::size_t i = 0; i < a.generator_count(); ++i) {
            const AlgebraElement img = d.apply(a.generator_power(i, 1));
            if (!img.is_zero())
                out.push_back("d_" + std::to_string(r) + "(" + a.generators()[i].name + ") = " + a.format(img));
        }
    }
    return out;
}

Json group_json(int degree, const AbelianGroup& g) {
    Json j = to_json(g);
    return Json{{"degree", degree}, {"free_rank", j["free_rank"]}, {"torsion", j["torsion"]}};
}

Json checks_json(const std::vector<CheckResult>& checks) {
    Json out = Json::array();
    for (const auto& c : checks) out.push_back(Json{{"name", c.name}, {"pass", c.pass}});
    return out;
}

void print_checks(std::ostream& os, const std::vector<CheckResult>& checks) {
    os << "checks:\n";
    for (const auto& c : checks) {
        os << "  [" << (c.pass ? "pass" : "FAIL") << "] " << c.name;
        if (!c.detail.empty()) os << ": " << c.detail;
        os << '\n';
    }
}

struct Computation {
    Page e2;
    Schedule schedule;
    RunResult result;
    std::map<int, AbelianGroup> groups;
};

Computation compute(const RunConfig& cfg) {
    if (cfg.max_total_degree < -cfg.space.dimension())
        throw Error("invalid config", "--max must be at least " + std::to_string(-cfg.space.dimension()));
    Computation c{preset_E2(cfg), {}, {}, {}};
    c.schedule = preset_schedule(cfg, c.e2);
    c.result = run(c.e2, c.schedule);
    c.groups = total_degree_groups(c.result.einf, -cfg.space.dimension(), cfg.max_total_degree);
    return c;
}

CheckResult groups_check(const RunConfig& cfg, const std::map<int, AbelianGroup>& groups) {
    CheckResult c{"groups match closed form", true, ""};
    for (const auto& [i, g] : groups) {
        const AbelianGroup want = expected_group(cfg.space, i, cfg.coefficients);
        if (g != want) {
            c.pass = false;
            c.detail = "degree " + std::to_string(i) + ": engine " + group_text(g, cfg.coefficients) + ", closed form " +
                       group_text(want, cfg.coefficients);
            break;
        }
    }
    return c;
}

Window verify_window(const RunConfig& cfg) {
    return Window{-cfg.space.dimension(), 0, 0, cfg.max_total_degree};
}

CheckResult presentation_check(const RunConfig& cfg, const Page& einf, const AlgebraPresentation& candidate,
                               const std::map<std::string, AlgebraElement>& assignment, const std::string& name) {
    const auto rep = verify_presentation(einf, candidate, assignment, verify_window(cfg));
    CheckResult c{name, rep.ok, ""};
    if (!rep.ok) c.detail = rep.mismatches.front();
    return c;
}

std::vector<CheckResult> compute_checks(const RunConfig& cfg, const Computation& c) {
    std::vector<CheckResult> out;
    out.push_back(groups_check(cfg, c.groups));
    if (cfg.coefficients == Coefficients::integers) {
        out.push_back(presentation_check(cfg, c.result.einf, closed_form_presentation(cfg.space),
                                         closed_form_assignment(cfg.space, *c.e2.algebra), "presentation verified"));
        const auto ext = multiplicative_extension_check(cfg.space, c.result.einf);
        out.push_back({"multiplicative extension", ext.verified, ext.argument});
    }
    return out;
}

std::string circle_report(const RunConfig& cfg, std::vector<CheckResult>& checks, bool verify) {
    const SpaceTag s = cfg.space;
    const auto p = closed_form_presentation(s);
    checks.push_back({"closed form", true, "group-algebra summands are reported by tag"});
    if (verify) {
        bool ok = true;
        for (int i = -1; i <= cfg.max_total_degree; ++i)
            ok = ok && (closed_form_groups(s, i).group_algebra_rank == ((i == 0 || i == -1) ? 1u : 0u));
        checks.push_back({"group-algebra summands in degrees -1 and 0", ok, ""});
    }
    if (cfg.format == "json") {
        Json groups = Json::array();
        for (int i = -1; i <= cfg.max_total_degree; ++i) {
            const auto g = closed_form_groups(s, i);
            Json rec = group_json(i, g.group);
            if (g.group_algebra_rank) rec["group_algebra"] = g.tag;
            groups.push_back(rec);
        }
        Json gens = Json::array();
        for (const auto& g : p.generators())
            gens.push_back(Json{{"name", g.name},
                                {"bidegree", Json::array({g.bidegree.p, g.bidegree.q})},
                                {"degree", g.bidegree.total()},
                                {"kind", to_string(g.kind)}});
        Json out{{"space", s.to_string()},
                 {"max_total_degree", cfg.max_total_degree},
                 {"groups", groups},
                 {"presentation", Json{{"generators", gens}, {"relations", Json::array()}}},
                 {"checks", checks_json(checks)}};
        return out.dump(2) + "\n";
    }
    std::ostringstream os;
    os << "space: " << s.display_name() << " (" << s.to_string() << ")\n";
    os << "closed form: Z[t,t^{-1}] (x) E(x), |t| = 0, |x| = -1\n";
    os << "degree  group\n";
    for (int i = -1; i <= cfg.max_total_degree; ++i) {
        const auto g = closed_form_groups(s, i);
        os << std::setw(6) << i << "  " << (g.group_algebra_rank ? g.tag : g.group.to_string()) << '\n';
    }
    print_checks(os, checks);
    return os.str();
}

std::string render_compute(const RunConfig& cfg, const Computation& c, const std::vector<CheckResult>& checks) {
    const AlgebraPresentation cand = closed_form_presentation(cfg.space);
    const auto assignment = closed_form_assignment(cfg.space, *c.e2.algebra);
    const AlgebraPresentation& a = *c.e2.algebra;
    if (cfg.format == "json") {
        Json groups = Json::array();
        for (const auto& [i, g] : c.groups) groups.push_back(group_json(i, g));
        Json gens = Json::array();
        for (const auto& g : cand.generators())
            gens.push_back(Json{{"name", g.name},
                                {"bidegree", Json::array({g.bidegree.p, g.bidegree.q})},
                                {"degree", g.bidegree.total()},
                                {"kind", to_string(g.kind)},
                                {"representative", a.format(assignment.at(g.name))}});
        Json rels = Json::array();
        for (const auto& r : cand.relations()) rels.push_back(cand.format(r));
        Json diffs = Json::array();
        for (const auto& line : differential_lines(c.schedule, a)) diffs.push_back(line);
        Json out{{"space", cfg.space.to_string()},
                 {"max_total_degree", cfg.max_total_degree},
                 {"coefficients", ring_letter(cfg.coefficients)},
                 {"sign", cfg.sign > 0 ? "+" : "-"},
                 {"differentials", diffs},
                 {"groups", groups},
                 {"presentation", Json{{"generators", gens}, {"relations", rels}}},
                 {"checks", checks_json(checks)},
                 {"einf", page_to_json(c.result.einf)}};
        return out.dump(2) + "\n";
    }
    std::ostringstream os;
    os << "space: " << cfg.space.display_name() << " (" << cfg.space.to_string() << ")\n";
    os << "coefficients: " << ring_letter(cfg.coefficients) << ", sign: " << (cfg.sign > 0 ? "+" : "-") << '\n';
    const auto diffs = differential_lines(c.schedule, a);
    os << "differentials:" << (diffs.empty() ? " none" : "") << '\n';
    for (const auto& d : diffs) os << "  " << d << '\n';
    os << c.result.report.summary() << '\n';
    if (cfg.format == "diagram") os << render_diagram(c.result.einf);
    os << "degree  group\n";
    for (const auto& [i, g] : c.groups) os << std::setw(6) << i << "  " << group_text(g, cfg.coefficients) << '\n';
    os << "presentation: " << presentation_summary(cand, cfg.coefficients) << '\n';
    for (const auto& g : cand.generators())
        os << "  " << g.name << " at " << g.bidegree.to_string() << ", degree " << g.bidegree.total() << ", "
           << to_string(g.kind) << ", represented by " << a.format(assignment.at(g.name)) << '\n';
    print_checks(os, checks);
    return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------

Page preset_E2(const RunConfig& cfg) {
    return loop_homology_E2(cfg.space, loop_window(cfg.space, cfg.max_total_degree), cfg.coefficients);
}

Schedule preset_schedule(const RunConfig& cfg, const Page& e2) {
    return install_known_differentials(cfg.space, e2, cfg.sign);
}

Page page_at(const Page& e2, const Schedule& schedule, int r) {
    if (r < e2.index) throw Error("invalid config", "page index must be at least " + std::to_string(e2.index));
    Page p = e2;
    while (p.index < r) {
        auto it = schedule.find(p.index);
        if (it != schedule.end() && it->second.has_nonzero_images()) p = turn_page(p, it->second);
        else ++p.index;
    }
    return p;
}

std::pair<AlgebraPresentation, std::map<std::string, AlgebraElement>> read_candidate(const std::string& text,
                                                                                    const AlgebraPresentation& e2) {
    std::istringstream in(text);
    std::string line, literal;
    std::vector<std::pair<std::string, std::string>> assigns;
    while (std::getline(in, line)) {
        std::istringstream words(line);
        std::string head, name;
        words >> head;
        if (head == "assign") {
            words >> name;
            std::string expr;
            std::getline(words, expr);
            assigns.emplace_back(name, expr);
        } else {
            literal += line + "\n";
        }
    }
    auto candidate = AlgebraPresentation::parse_literal(literal);
    std::map<std::string, AlgebraElement> assignment;
    for (const auto& [name, expr] : assigns) assignment[name] = e2.parse(expr);
    for (const auto& g : candidate.generators())
        if (!assignment.count(g.name)) throw Error("parse error", "no `assign` line for generator " + g.name);
    return {candidate, assignment};
}

std::string cmd_compute(const RunConfig& cfg, std::vector<CheckResult>& checks) {
    if (cfg.space.family == SpaceFamily::circle) return circle_report(cfg, checks, false);
    const Computation c = compute(cfg);
    checks = compute_checks(cfg, c);
    return render_compute(cfg, c, checks);
}

std::string cmd_verify(const RunConfig& cfg, std::vector<CheckResult>& checks) {
    if (cfg.space.family == SpaceFamily::circle) return circle_report(cfg, checks, true);
    const Computation c = compute(cfg);
    checks = compute_checks(cfg, c);
    const Page& einf = c.result.einf;
    const int lo = -cfg.space.dimension(), hi = cfg.max_total_degree;

    {
        CheckResult ck{"d o d = 0 and Leibniz", true, ""};
        for (const auto& [r, d] : c.schedule) {
            Page shell = c.e2;
            shell.index = r;
            if (auto m = find_d_squared_failure(d, shell)) {
                ck = {ck.name, false, "d o d nonzero on " + c.e2.algebra->format(*m)};
                break;
            }
            const auto lz = check_leibniz(d, shell);
            if (!lz.ok) {
                ck = {ck.name, false,
                      "Leibniz fails on " + c.e2.algebra->format(lz.witness->first) + ", " +
                          c.e2.algebra->format(lz.witness->second)};
                break;
            }
        }
        checks.push_back(ck);
    }
    {
        const auto gc = check_graded_commutative(einf);
        CheckResult ck{"E_inf graded commutative", gc.ok, ""};
        if (!gc.ok)
            ck.detail = "witness " + einf.algebra->format(gc.witness->first) + ", " +
                        einf.algebra->format(gc.witness->second);
        checks.push_back(ck);
    }
    if (cfg.coefficients == Coefficients::integers) {
        CheckResult ck{"additive extensions split", true, ""};
        for (int i = lo; i <= hi && ck.pass; ++i) {
            const auto rep = extension_split_check(einf, i);
            if (!rep.splits) ck = {ck.name, false, "degree " + std::to_string(i) + ": " + rep.message};
        }
        checks.push_back(ck);
    }
    {
        RunConfig other = cfg;
        other.sign = -cfg.sign;
        const Computation o = compute(other);
        CheckResult ck{"sign independence", o.groups == c.groups, ""};
        if (!ck.pass) ck.detail = "groups differ for sign " + std::string(other.sign > 0 ? "+" : "-");
        checks.push_back(ck);
    }
    if (cfg.coefficients == Coefficients::integers) {
        RunConfig q = cfg;
        q.coefficients = Coefficients::rationals;
        const Computation o = compute(q);
        CheckResult ck{"rational ranks equal free ranks", true, ""};
        for (const auto& [i, g] : c.groups)
            if (o.groups.at(i).free_rank != g.free_rank || !o.groups.at(i).torsion.empty()) {
                ck = {ck.name, false, "degree " + std::to_string(i)};
                break;
            }
        checks.push_back(ck);
    }
    if (!cfg.presentation_file.empty()) {
        std::ifstream in(cfg.presentation_file);
        if (!in) throw Error("io error", "cannot read " + cfg.presentation_file);
        std::stringstream buf;
        buf << in.rdbuf();
        const auto [cand, assignment] = read_candidate(buf.str(), *c.e2.algebra);
        checks.push_back(presentation_check(cfg, einf, cand, assignment, "candidate " + cfg.presentation_file));
    }
    if (cfg.format == "json") return render_compute(cfg, c, checks);
    std::ostringstream os;
    os << "verify " << cfg.space.display_name() << " (" << cfg.space.to_string() << "), degrees " << lo << ".." << hi
       << ", coefficients " << ring_letter(cfg.coefficients) << ", sign " << (cfg.sign > 0 ? "+" : "-") << '\n';
    print_checks(os, checks);
    bool all = true;
    for (const auto& ck : checks) all = all && ck.pass;
    os << (all ? "pass" : "FAIL") << '\n';
    return os.str();
}

std::string cmd_pages(const RunConfig& cfg) {
    if (cfg.page < 2) throw Error("invalid config", "--page must be at least 2");
    const Page e2 = preset_E2(cfg);
    const Schedule schedule = preset_schedule(cfg, e2);
    const Page p = page_at(e2, schedule, cfg.page);
    auto it = schedule.find(cfg.page);
    const Differential* d = it == schedule.end() ? nullptr : &it->second;
    if (cfg.format == "json") return page_to_json(p, d).dump(2) + "\n";
    if (cfg.format == "diagram") return render_diagram(p, d);
    std::ostringstream os;
    os << "E_" << p.index << " of " << cfg.space.display_name() << '\n';
    for (const Bidegree b : p.window.cells()) {
        const Cell* c = p.cell(b);
        if (!c || c->group().is_trivial()) continue;
        os << "  " << b.to_string() << "  " << group_text(c->group(), cfg.coefficients) << (c->reliable ? "" : "  (uncertified)")
           << '\n';
    }
    return os.str();
}

std::string cmd_universal(int n, const std::string& format, bool& consistent) {
    if (n < 2 || n % 2) throw Error("invalid config", "universal needs an even n >= 2");
    const auto d = derive_even_sphere_differential(n);
    consistent = d.consistent;
    if (format == "json") {
        Json steps = Json::array();
        for (const auto& s : d.steps) steps.push_back(Json{{"constraint", s.constraint}, {"statement", s.statement}});
        Json out{{"n", n},
                 {"candidates", d.search.candidates},
                 {"solutions", d.search.solutions.size()},
                 {"steps", steps},
                 {"consistent", d.consistent}};
        return out.dump(2) + "\n";
    }
    return "universal example for S^" + std::to_string(n) + "\n" + d.render();
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact spectral sequences for the loop homology of spheres and projective spaces", "loop-cli"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::string space_text, coeff = "z", sign = "+", out_path;
    int universal_n = 0;

    auto common = [&](CLI::App* sub, bool with_space) {
        if (with_space) {
            sub->add_option("space,--space", space_text, "s1, s^n:odd:<n>, s^n:even:<n> or cp^n:<n>");
            sub->add_option("--max", cfg.max_total_degree, "largest total degree")->capture_default_str();
            sub->add_option("--coeff", coeff, "coefficients")->check(CLI::IsMember({"z", "q"}))->capture_default_str();
            sub->add_option("--sign", sign, "sign of the installed differential")
                ->check(CLI::IsMember({"+", "-"}))
                ->capture_default_str();
        }
        sub->add_option("--format", cfg.format, "output format")
            ->check(CLI::IsMember({"table", "json", "diagram"}))
            ->capture_default_str();
        sub->add_option("--out", out_path, "write the output to a file");
    };
    auto* compute_cmd = app.add_subcommand("compute", "groups and presentation of the loop homology");
    auto* verify_cmd = app.add_subcommand("verify", "run every check for a space");
    auto* pages_cmd = app.add_subcommand("pages", "render a page of the spectral sequence");
    auto* universal_cmd = app.add_subcommand("universal", "derive the even-sphere differential");
    for (auto* s : {compute_cmd, verify_cmd, pages_cmd}) common(s, true);
    common(universal_cmd, false);
    verify_cmd->add_option("--presentation", cfg.presentation_file, "candidate presentation literal to verify");
    pages_cmd->add_option("--page", cfg.page, "page index r >= 2")->capture_default_str();
    universal_cmd->add_option("n", universal_n, "even sphere dimension")->required();

    try {
        std::vector<std::string> args;
        for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        std::string text;
        int status = 0;
        if (*universal_cmd) {
            bool consistent = false;
            text = cmd_universal(universal_n, cfg.format, consistent);
            status = consistent ? 0 : 1;
        } else {
            if (space_text.empty()) throw Error("invalid config", "no space given");
            cfg.space = SpaceTag::parse(space_text);
            cfg.coefficients = coeff == "q" ? Coefficients::rationals : Coefficients::integers;
            cfg.sign = sign == "-" ? -1 : 1;
            std::vector<CheckResult> checks;
            if (*compute_cmd) text = cmd_compute(cfg, checks);
            else if (*verify_cmd) text = cmd_verify(cfg, checks);
            else text = cmd_pages(cfg);
            for (const auto& c : checks)
                if (!c.pass) status = 1;
        }
        if (out_path.empty()) {
            out << text;
        } else {
            std::ofstream f(out_path);
            if (!f) throw Error("io error", "cannot write " + out_path);
            f << text;
        }
        return status;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace loophom::cli
