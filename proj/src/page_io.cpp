#include "loophom/page_io.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace loophom {

namespace {

bool untouched(const Cell& c) {
    return c.boundaries.cols() == 0 && c.cycles == IntMatrix::identity(c.basis.size());
}

std::string cell_label(const Page& page, const Cell& c) {
    const AlgebraPresentation& a = *page.algebra;
    std::string s;
    if (untouched(c)) {
        for (std::size_t i = 0; i < c.basis.size(); ++i) s += (i ? "," : "") + a.format(c.basis[i]);
        return s;
    }
    if (c.group().is_trivial()) return "0";
    s = c.group().to_string() + "{";
    for (std::size_t i = 0; i < c.quotient.lifts().size(); ++i) s += (i ? "," : "") + a.format(page.lift(c.at, i));
    return s + "}";
}

std::string matrix_literal(const IntMatrix& m) {
    std::string s = "[";
    for (std::size_t r = 0; r < m.rows(); ++r) {
        s += r ? ",[" : "[";
        for (std::size_t c = 0; c < m.cols(); ++c) s += (c ? "," : "") + to_string(m(r, c));
        s += "]";
    }
    return s + "]";
}

}  // namespace

Json to_json(const Int& v) {
    if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
        return Json(static_cast<long long>(v));
    return Json(to_string(v));
}

Json to_json(const AbelianGroup& g) {
    Json t = Json::array();
    for (const auto& x : g.torsion) t.push_back(to_json(x));
    Json out;
    out["free_rank"] = g.free_rank;
    out["torsion"] = t;
    return out;
}

Json page_to_json(const Page& page, const Differential* d) {
    Json out;
    out["page_index"] = page.index;
    out["variance"] = to_string(page.variance);
    out["window"] = Json{{"p_min", page.window.p_min},
                         {"p_max", page.window.p_max},
                         {"q_min", page.window.q_min},
                         {"q_max", page.window.q_max}};
    Json cells = Json::array();
    for (const Bidegree b : page.window.cells()) {
        const Cell* c = page.cell(b);
        if (!c) continue;
        Json rec;
        rec["p"] = b.p;
        rec["q"] = b.q;
        Json g = to_json(c->group());
        rec["free_rank"] = g["free_rank"];
        rec["torsion"] = g["torsion"];
        Json basis = Json::array();
        for (const auto& m : c->basis) basis.push_back(page.algebra->format(m));
        rec["basis"] = basis;
        rec["reliable"] = c->reliable;
        cells.push_back(rec);
    }
    out["cells"] = cells;
    Json diffs = Json::array();
    if (d) {
        for (const Bidegree b : page.window.cells()) {
            if (!page.cell(b)) continue;
            const IntMatrix m = d->matrix(page, b);
            if (m.rows() == 0 || m.is_zero()) continue;
            const Bidegree t = b + d->shift();
            Json entries = Json::array();
            for (std::size_t r = 0; r < m.rows(); ++r) {
                Json row = Json::array();
                for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
                entries.push_back(row);
            }
            diffs.push_back(Json{{"source", Json::array({b.p, b.q})},
                                 {"target", Json::array({t.p, t.q})},
                                 {"entries", entries}});
        }
    }
    out["differentials"] = diffs;
    return out;
}

std::string render_diagram(const Page& page, const Differential* d) {
    const Window& w = page.window;
    std::ostringstream os;
    os << "E_" << page.index << " (" << to_string(page.variance) << "), p in [" << w.p_min << "," << w.p_max
       << "], q in [" << w.q_min << "," << w.q_max << "]\n";
    if (w.empty()) return os.str();

    std::map<Bidegree, std::string> labels;
    std::size_t width = 1;
    for (const auto& [b, c] : page.cells) {
        labels[b] = cell_label(page, c) + (c.reliable ? "" : "?");
        width = std::max(width, labels[b].size());
    }
    const std::size_t qwidth = std::max(std::to_string(w.q_max).size(), std::to_string(w.q_min).size());
    auto pad = [](const std::string& s, std::size_t n) { return std::string(n - std::min(n, s.size()), ' ') + s; };

    for (int q = w.q_max; q >= w.q_min; --q) {
        bool any = false;
        for (int p = w.p_min; p <= w.p_max; ++p) any = any || labels.count({p, q});
        if (!any) continue;
        os << pad(std::to_string(q), qwidth) << " |";
        for (int p = w.p_min; p <= w.p_max; ++p) {
            auto it = labels.find({p, q});
            os << ' ' << pad(it == labels.end() ? "." : it->second, width);
        }
        os << '\n';
    }
    os << std::string(qwidth, ' ') << " +";
    for (int p = w.p_min; p <= w.p_max; ++p) os << ' ' << std::string(width, '-');
    os << '\n' << std::string(qwidth + 2, ' ');
    for (int p = w.p_min; p <= w.p_max; ++p) os << ' ' << pad(std::to_string(p), width);
    os << "   (p)\n";

    if (d) {
        os << "d_" << d->page_index() << ":\n";
        bool any = false;
        for (const Bidegree b : w.cells()) {
            const Cell* c = page.cell(b);
            if (!c) continue;
            const IntMatrix m = d->matrix(page, b);
            // zero arrows between nonempty cells are shown only beside nonzero ones
            if (m.rows() == 0 || (m.is_zero() && !d->has_nonzero_images())) continue;
            any = true;
            const Bidegree t = b + d->shift();
            os << "  " << b.to_string() << " -> " << t.to_string() << "  " << matrix_literal(m);
            os << "  ";
            for (std::size_t i = 0; i < c->basis.size(); ++i)
                os << (i ? "; " : "") << page.algebra->format(c->basis[i]) << " |-> "
                   << page.algebra->format(d->apply(c->basis[i]));
            os << '\n';
        }
        if (!any) os << "  (zero on the window)\n";
    }
    return os.str();
}

}  // namespace loophom
