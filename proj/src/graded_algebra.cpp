#include "loophom/graded_algebra.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <sstream>

namespace loophom {

std::string Bidegree::to_string() const { return "(" + std::to_string(p) + "," + std::to_string(q) + ")"; }

std::vector<Bidegree> Window::cells() const {
    std::vector<Bidegree> out;
    if (empty()) return out;
    for (int q = q_min; q <= q_max; ++q)
        for (int p = p_min; p <= p_max; ++p) out.push_back({p, q});
    return out;
}

std::string to_string(GeneratorKind k) {
    switch (k) {
        case GeneratorKind::exterior: return "exterior";
        case GeneratorKind::polynomial: return "polynomial";
        case GeneratorKind::divided_power: return "divided-power";
        case GeneratorKind::laurent: return "laurent";
    }
    return "?";
}

GeneratorKind parse_generator_kind(const std::string& s) {
    if (s == "exterior") return GeneratorKind::exterior;
    if (s == "polynomial") return GeneratorKind::polynomial;
    if (s == "divided-power" || s == "divided") return GeneratorKind::divided_power;
    if (s == "laurent") return GeneratorKind::laurent;
    throw Error("parse error", "unknown generator kind '" + s + "'");
}

Int binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    Int r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

bool Monomial::is_unit() const {
    return std::all_of(exponents.begin(), exponents.end(), [](int e) { return e == 0; });
}

// ---------------------------------------------------------------------------
// AlgebraElement

void AlgebraElement::add_term(const Monomial& m, const Int& c) {
    if (c == 0) return;
    auto [it, inserted] = terms.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms.erase(it);
    }
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
    for (const auto& [m, c] : o.terms) add_term(m, c);
    return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
    for (const auto& [m, c] : o.terms) add_term(m, -c);
    return *this;
}

AlgebraElement operator*(const Int& k, const AlgebraElement& a) {
    AlgebraElement out;
    if (k == 0) return out;
    for (const auto& [m, c] : a.terms) out.terms.emplace(m, k * c);
    return out;
}

AlgebraElement AlgebraElement::operator-() const { return Int(-1) * *this; }

// ---------------------------------------------------------------------------
// AlgebraPresentation: structure

std::size_t AlgebraPresentation::add_generator(const std::string& name, Bidegree b, GeneratorKind kind) {
    if (name.empty()) throw Error("invalid generator", "empty name");
    if (find(name)) throw Error("invalid generator", "duplicate name '" + name + "'");
    if (kind == GeneratorKind::laurent && (b.p != 0 || b.q != 0))
        throw Error("unsupported", "laurent generators must sit in bidegree (0,0)");
    generators_.push_back({name, b, kind});
    for (auto& r : relations_) {
        AlgebraElement widened;
        for (const auto& [m, c] : r.terms) {
            Monomial w = m;
            w.exponents.push_back(0);
            widened.terms.emplace(w, c);
        }
        r = widened;
    }
    for (auto& m : monomial_relations_) m.exponents.push_back(0);
    return generators_.size() - 1;
}

void AlgebraPresentation::set_commutation_sign(const std::string& a, const std::string& b, int sign) {
    if (sign != 1 && sign != -1) throw Error("invalid sign", std::to_string(sign));
    auto i = index_of(a), j = index_of(b);
    sign_overrides_[{std::min(i, j), std::max(i, j)}] = sign;
}

void AlgebraPresentation::add_relation(const AlgebraElement& r) {
    if (r.is_zero()) return;
    if (!bidegree(r)) throw Error("inhomogeneous relation", format(r));
    relations_.push_back(r);
    if (r.terms.size() == 1) {
        const auto& [m, c] = *r.terms.begin();
        bool plain = true;
        for (std::size_t i = 0; i < generators_.size(); ++i)
            if (m.exponents[i] != 0 && (generators_[i].kind == GeneratorKind::divided_power ||
                                        generators_[i].kind == GeneratorKind::laurent))
                plain = false;
        if (plain && (c == 1 || c == -1)) monomial_relations_.push_back(m);
    }
}

std::optional<std::size_t> AlgebraPresentation::find(const std::string& name) const {
    for (std::size_t i = 0; i < generators_.size(); ++i)
        if (generators_[i].name == name) return i;
    return std::nullopt;
}

std::size_t AlgebraPresentation::index_of(const std::string& name) const {
    auto i = find(name);
    if (!i) throw Error("unknown generator", name);
    return *i;
}

int AlgebraPresentation::commutation_sign(std::size_t i, std::size_t j) const {
    auto it = sign_overrides_.find({std::min(i, j), std::max(i, j)});
    if (it != sign_overrides_.end()) return it->second;
    const long long t = static_cast<long long>(generators_[i].bidegree.total()) * generators_[j].bidegree.total();
    return (t % 2 == 0) ? 1 : -1;
}

Monomial AlgebraPresentation::unit() const { return Monomial{std::vector<int>(generators_.size(), 0)}; }

Monomial AlgebraPresentation::generator_power(std::size_t i, int k) const {
    Monomial m = unit();
    m.exponents.at(i) = k;
    return m;
}

AlgebraElement AlgebraPresentation::one() const { return element(unit()); }

AlgebraElement AlgebraPresentation::element(const Monomial& m, const Int& c) const {
    AlgebraElement e;
    if (m.exponents.size() != generators_.size()) throw Error("monomial size mismatch", "");
    if (is_normal(m)) e.add_term(m, c);
    return e;
}

AlgebraElement AlgebraPresentation::generator(const std::string& name) const {
    return element(generator_power(index_of(name)));
}

Bidegree AlgebraPresentation::bidegree(const Monomial& m) const {
    Bidegree b;
    for (std::size_t i = 0; i < generators_.size(); ++i) b = b + m.exponents[i] * generators_[i].bidegree;
    return b;
}

std::optional<Bidegree> AlgebraPresentation::bidegree(const AlgebraElement& e) const {
    if (e.is_zero()) return std::nullopt;
    Bidegree b = bidegree(e.terms.begin()->first);
    for (const auto& [m, c] : e.terms)
        if (bidegree(m) != b) return std::nullopt;
    return b;
}

bool AlgebraPresentation::is_normal(const Monomial& m) const {
    for (std::size_t i = 0; i < generators_.size(); ++i) {
        const int e = m.exponents[i];
        switch (generators_[i].kind) {
            case GeneratorKind::exterior:
                if (e < 0 || e > 1) return false;
                break;
            case GeneratorKind::polynomial:
            case GeneratorKind::divided_power:
                if (e < 0) return false;
                break;
            case GeneratorKind::laurent: break;
        }
    }
    for (const auto& r : monomial_relations_) {
        bool divides = true;
        for (std::size_t i = 0; i < generators_.size() && divides; ++i)
            if (m.exponents[i] < r.exponents[i]) divides = false;
        if (divides) return false;
    }
    return true;
}

AlgebraElement AlgebraPresentation::normal_form(const AlgebraElement& e) const {
    AlgebraElement out;
    for (const auto& [m, c] : e.terms)
        if (is_normal(m)) out.add_term(m, c);
    return out;
}

// ---------------------------------------------------------------------------
// Multiplication

AlgebraElement AlgebraPresentation::multiply(const Monomial& a, const Monomial& b) const {
    const std::size_t n = generators_.size();
    Int coeff = 1;
    // reorder: every factor of b passes the factors of a with larger index
    bool negative = false;
    for (std::size_t j = 0; j < n; ++j) {
        if (b.exponents[j] == 0) continue;
        for (std::size_t i = j + 1; i < n; ++i) {
            if (a.exponents[i] == 0) continue;
            if (commutation_sign(i, j) == -1 && ((static_cast<long long>(a.exponents[i]) * b.exponents[j]) & 1))
                negative = !negative;
        }
    }
    Monomial out = unit();
    for (std::size_t i = 0; i < n; ++i) {
        const int ea = a.exponents[i], eb = b.exponents[i];
        switch (generators_[i].kind) {
            case GeneratorKind::exterior:
                if (ea + eb > 1) return {};
                out.exponents[i] = ea + eb;
                break;
            case GeneratorKind::divided_power:
                coeff *= binomial(ea + eb, ea);
                out.exponents[i] = ea + eb;
                break;
            case GeneratorKind::polynomial:
            case GeneratorKind::laurent: out.exponents[i] = ea + eb; break;
        }
    }
    if (negative) coeff = -coeff;
    return element(out, coeff);
}

AlgebraElement AlgebraPresentation::multiply(const AlgebraElement& a, const AlgebraElement& b) const {
    AlgebraElement out;
    for (const auto& [ma, ca] : a.terms)
        for (const auto& [mb, cb] : b.terms) {
            AlgebraElement t = multiply(ma, mb);
            for (const auto& [m, c] : t.terms) out.add_term(m, c * ca * cb);
        }
    return out;
}

AlgebraElement AlgebraPresentation::power(const AlgebraElement& a, int k) const {
    if (k < 0) throw Error("invalid exponent", std::to_string(k));
    AlgebraElement r = one();
    for (int i = 0; i < k; ++i) r = multiply(r, a);
    return r;
}

AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b, const AlgebraPresentation& p) {
    return p.multiply(a, b);
}

// ---------------------------------------------------------------------------
// Bases

namespace {

long long dot(Bidegree b, int alpha, int beta) { return static_cast<long long>(alpha) * b.p + static_cast<long long>(beta) * b.q; }

}  // namespace

std::map<Bidegree, std::vector<Monomial>> AlgebraPresentation::monomial_basis(const Window& w) const {
    std::map<Bidegree, std::vector<Monomial>> out;
    if (w.empty()) return out;
    const std::size_t n = generators_.size();

    for (const auto& g : generators_) {
        const bool zero = g.bidegree.p == 0 && g.bidegree.q == 0;
        if (zero && g.kind != GeneratorKind::exterior)
            throw Error("infinite basis in bidegree", "generator '" + g.name + "' sits in bidegree (0,0)");
    }

    // functional positive on every unbounded generator
    int alpha = 0, beta = 0;
    bool found = false;
    for (int s = 1; s <= 4 && !found; ++s)
        for (int a = -s; a <= s && !found; ++a)
            for (int b = -s; b <= s && !found; ++b) {
                if (a == 0 && b == 0) continue;
                bool ok = true;
                for (const auto& g : generators_)
                    if (g.kind != GeneratorKind::exterior && dot(g.bidegree, a, b) <= 0) ok = false;
                if (ok) {
                    alpha = a;
                    beta = b;
                    found = true;
                }
            }
    if (!found && n > 0) {
        bool unbounded = std::any_of(generators_.begin(), generators_.end(),
                                     [](const Generator& g) { return g.kind != GeneratorKind::exterior; });
        if (unbounded) throw Error("infinite basis in bidegree", "no grading functional bounds the generators");
    }

    long long bound = std::max({dot({w.p_min, w.q_min}, alpha, beta), dot({w.p_min, w.q_max}, alpha, beta),
                                dot({w.p_max, w.q_min}, alpha, beta), dot({w.p_max, w.q_max}, alpha, beta)});
    for (const auto& g : generators_)
        if (g.kind == GeneratorKind::exterior) bound += std::max(0LL, -dot(g.bidegree, alpha, beta));

    Monomial cur = unit();
    auto rec = [&](auto&& self, std::size_t i, long long used, Bidegree bd) -> void {
        if (i == n) {
            if (w.contains(bd) && is_normal(cur)) out[bd].push_back(cur);
            return;
        }
        const Generator& g = generators_[i];
        if (g.kind == GeneratorKind::exterior) {
            cur.exponents[i] = 0;
            self(self, i + 1, used, bd);
            cur.exponents[i] = 1;
            self(self, i + 1, used, bd + g.bidegree);
            cur.exponents[i] = 0;
            return;
        }
        const long long step = dot(g.bidegree, alpha, beta);
        for (int k = 0; used + k * step <= bound; ++k) {
            cur.exponents[i] = k;
            self(self, i + 1, used + k * step, bd + k * g.bidegree);
        }
        cur.exponents[i] = 0;
    };
    rec(rec, 0, 0, Bidegree{});
    for (auto& [b, v] : out) std::sort(v.begin(), v.end());
    return out;
}

std::vector<Monomial> AlgebraPresentation::basis_at(Bidegree b) const {
    auto m = monomial_basis(Window{b.p, b.p, b.q, b.q});
    auto it = m.find(b);
    return it == m.end() ? std::vector<Monomial>{} : it->second;
}

std::vector<AlgebraElement> AlgebraPresentation::ideal_relations() const {
    std::vector<AlgebraElement> out;
    for (const auto& r : relations_) {
        bool monomial = false;
        if (r.terms.size() == 1)
            for (const auto& m : monomial_relations_)
                if (m == r.terms.begin()->first) monomial = true;
        if (!monomial) out.push_back(normal_form(r));
    }
    return out;
}

std::vector<Int> AlgebraPresentation::coordinates(const AlgebraElement& e, const std::vector<Monomial>& basis) const {
    std::vector<Int> v(basis.size());
    for (const auto& [m, c] : e.terms) {
        auto it = std::lower_bound(basis.begin(), basis.end(), m);
        if (it == basis.end() || *it != m) throw Error("monomial outside basis", format(m));
        v[static_cast<std::size_t>(it - basis.begin())] = c;
    }
    return v;
}

AlgebraElement AlgebraPresentation::from_coordinates(const std::vector<Int>& c,
                                                     const std::vector<Monomial>& basis) const {
    AlgebraElement e;
    for (std::size_t i = 0; i < basis.size(); ++i) e.add_term(basis[i], c[i]);
    return e;
}

IntMatrix AlgebraPresentation::ideal_span(Bidegree b) const {
    const auto basis = basis_at(b);
    std::vector<std::vector<Int>> cols;
    for (const auto& r : ideal_relations()) {
        auto rb = bidegree(r);
        if (!rb) continue;
        for (const auto& m : basis_at(b - *rb)) {
            for (const auto& prod : {multiply(element(m), r), multiply(r, element(m))}) {
                if (prod.is_zero()) continue;
                cols.push_back(coordinates(prod, basis));
            }
        }
    }
    return IntMatrix::from_columns(basis.size(), cols);
}

AbelianGroup AlgebraPresentation::component_group(Bidegree b) const {
    IntMatrix span = ideal_span(b);
    if (coefficients_ == Coefficients::rationals) {
        auto snf = smith_normal_form(span);
        return AbelianGroup{span.rows() - snf.rank, {}};
    }
    return cokernel(span);
}

bool AlgebraPresentation::is_zero_in_quotient(const AlgebraElement& e) const {
    AlgebraElement nf = normal_form(e);
    std::map<Bidegree, AlgebraElement> parts;
    for (const auto& [m, c] : nf.terms) parts[bidegree(m)].add_term(m, c);
    for (const auto& [b, part] : parts) {
        IntMatrix span = ideal_span(b);
        if (span.cols() == 0) return false;
        IntMatrix lattice = coefficients_ == Coefficients::rationals ? saturation_basis(span) : lattice_basis(span);
        if (lattice.cols() == 0) return false;
        IntMatrix sol;
        if (!solve_in_lattice(lattice, IntMatrix::from_columns(span.rows(), {coordinates(part, basis_at(b))}), sol))
            return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Formatting and parsing

std::string AlgebraPresentation::format(const Monomial& m) const {
    std::string s;
    for (std::size_t i = 0; i < generators_.size(); ++i) {
        const int e = m.exponents[i];
        if (e == 0) continue;
        if (!s.empty()) s += "*";
        const auto& g = generators_[i];
        if (g.kind == GeneratorKind::divided_power)
            s += g.name + "_" + std::to_string(e);
        else if (e == 1)
            s += g.name;
        else
            s += g.name + "^" + std::to_string(e);
    }
    return s.empty() ? "1" : s;
}

std::string AlgebraPresentation::format(const AlgebraElement& e) const {
    if (e.is_zero()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [m, c] : e.terms) {
        Int a = abs(c);
        if (first)
            s += c < 0 ? "-" : "";
        else
            s += c < 0 ? " - " : " + ";
        first = false;
        const std::string ms = format(m);
        if (ms == "1")
            s += a.str();
        else if (a == 1)
            s += ms;
        else
            s += a.str() + "*" + ms;
    }
    return s;
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

}  // namespace

AlgebraElement AlgebraPresentation::parse(const std::string& text) const {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw Error("parse error", "empty expression");
    if (s == "0") return {};

    std::size_t pos = 0;
    auto fail = [&](const std::string& why) { throw Error("parse error", why + " in '" + text + "'"); };
    auto read_int = [&]() -> Int {
        std::size_t b = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (b == pos) fail("expected integer");
        return Int(s.substr(b, pos - b));
    };

    AlgebraElement result;
    bool first = true;
    while (pos < s.size()) {
        int sign = 1;
        if (s[pos] == '+' || s[pos] == '-') {
            sign = s[pos] == '-' ? -1 : 1;
            ++pos;
        } else if (!first) {
            fail("expected '+' or '-'");
        }
        first = false;
        AlgebraElement term = one();
        Int coeff = sign;
        bool need_factor = true;
        if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            coeff *= read_int();
            need_factor = false;
            if (pos < s.size() && s[pos] == '*') {
                ++pos;
                need_factor = true;
            }
        }
        while (need_factor) {
            std::size_t b = pos;
            while (pos < s.size() && is_ident_char(s[pos])) ++pos;
            std::string ident = s.substr(b, pos - b);
            if (ident.empty()) fail("expected generator name");
            int exponent = 1;
            if (pos < s.size() && s[pos] == '^') {
                ++pos;
                bool neg = false;
                if (pos < s.size() && s[pos] == '-') {
                    neg = true;
                    ++pos;
                }
                exponent = static_cast<int>(read_int());
                if (neg) exponent = -exponent;
            }
            AlgebraElement factor;
            if (auto i = find(ident)) {
                const auto kind = generators_[*i].kind;
                if (kind == GeneratorKind::laurent || (kind == GeneratorKind::polynomial && exponent >= 0))
                    factor = element(generator_power(*i, exponent));
                else if (exponent < 0)
                    fail("negative exponent on non-laurent generator '" + ident + "'");
                else
                    factor = power(element(generator_power(*i, 1)), exponent);
            } else {
                auto us = ident.rfind('_');
                std::optional<std::size_t> fam;
                if (us != std::string::npos) fam = find(ident.substr(0, us));
                if (!fam || generators_[*fam].kind != GeneratorKind::divided_power)
                    fail("unknown generator '" + ident + "'");
                const std::string idx = ident.substr(us + 1);
                if (idx.empty() || !std::all_of(idx.begin(), idx.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
                    fail("bad divided-power index in '" + ident + "'");
                if (exponent < 0) fail("negative exponent on divided power");
                factor = power(element(generator_power(*fam, std::stoi(idx))), exponent);
            }
            term = multiply(term, factor);
            need_factor = pos < s.size() && s[pos] == '*';
            if (need_factor) ++pos;
        }
        result += coeff * term;
    }
    return result;
}

AlgebraPresentation AlgebraPresentation::parse_literal(const std::string& text) {
    AlgebraPresentation p;
    std::vector<std::string> relation_lines;
    std::vector<std::tuple<std::string, std::string, int>> signs;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        auto hash = raw.find('#');
        std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        auto where = [&] { return "line " + std::to_string(lineno) + ": '" + line + "'"; };
        if (line.rfind("relation", 0) == 0 && line.size() > 8 && std::isspace(static_cast<unsigned char>(line[8]))) {
            relation_lines.push_back(trim(line.substr(8)));
            continue;
        }
        std::istringstream ls(line);
        std::string head;
        ls >> head;
        if (head == "coeff") {
            std::string c;
            ls >> c;
            if (c == "z" || c == "Z")
                p.coefficients_ = Coefficients::integers;
            else if (c == "q" || c == "Q")
                p.coefficients_ = Coefficients::rationals;
            else
                throw Error("parse error", where());
            continue;
        }
        if (head == "sign") {
            std::string a, b;
            int s = 0;
            if (!(ls >> a >> b >> s)) throw Error("parse error", where());
            signs.emplace_back(a, b, s);
            continue;
        }
        // generator line: name (p,q) kind
        auto open = line.find('('), close = line.find(')');
        if (open == std::string::npos || close == std::string::npos || close < open)
            throw Error("parse error", where());
        std::string name = trim(line.substr(0, open));
        std::string deg = line.substr(open + 1, close - open - 1);
        std::string kind = trim(line.substr(close + 1));
        auto comma = deg.find(',');
        if (comma == std::string::npos || name.empty()) throw Error("parse error", where());
        int pp = 0, qq = 0;
        try {
            pp = std::stoi(trim(deg.substr(0, comma)));
            qq = std::stoi(trim(deg.substr(comma + 1)));
        } catch (const std::exception&) {
            throw Error("parse error", where());
        }
        p.add_generator(name, {pp, qq}, parse_generator_kind(kind));
    }
    for (const auto& [a, b, s] : signs) p.set_commutation_sign(a, b, s);
    for (const auto& r : relation_lines) p.add_relation(p.parse(r));
    return p;
}

std::string AlgebraPresentation::to_literal() const {
    std::ostringstream os;
    for (const auto& g : generators_)
        os << g.name << " (" << g.bidegree.p << "," << g.bidegree.q << ") " << to_string(g.kind) << "\n";
    for (const auto& [k, s] : sign_overrides_)
        os << "sign " << generators_[k.first].name << " " << generators_[k.second].name << " " << (s > 0 ? "+1" : "-1")
           << "\n";
    for (const auto& r : relations_) os << "relation " << format(r) << "\n";
    if (coefficients_ == Coefficients::rationals) os << "coeff q\n";
    return os.str();
}

// ---------------------------------------------------------------------------

AlgebraElement embed(const AlgebraElement& e, std::size_t offset, std::size_t total_generators) {
    AlgebraElement out;
    for (const auto& [m, c] : e.terms) {
        Monomial w{std::vector<int>(total_generators, 0)};
        for (std::size_t i = 0; i < m.exponents.size(); ++i) w.exponents.at(offset + i) = m.exponents[i];
        out.terms.emplace(w, c);
    }
    return out;
}

AlgebraPresentation tensor(const AlgebraPresentation& a, const AlgebraPresentation& b) {
    AlgebraPresentation out;
    for (const auto& g : a.generators()) out.add_generator(g.name, g.bidegree, g.kind);
    for (const auto& g : b.generators()) {
        std::string name = g.name;
        while (out.find(name)) name += "'";
        out.add_generator(name, g.bidegree, g.kind);
    }
    const std::size_t na = a.generator_count(), total = out.generator_count();
    for (const auto& [k, s] : a.sign_overrides())
        out.set_commutation_sign(out.generators()[k.first].name, out.generators()[k.second].name, s);
    for (const auto& [k, s] : b.sign_overrides())
        out.set_commutation_sign(out.generators()[na + k.first].name, out.generators()[na + k.second].name, s);
    for (const auto& r : a.relations()) out.add_relation(embed(r, 0, total));
    for (const auto& r : b.relations()) out.add_relation(embed(r, na, total));
    if (a.coefficients() == Coefficients::rationals || b.coefficients() == Coefficients::rationals)
        out.set_coefficients(Coefficients::rationals);
    return out;
}

std::pair<bool, std::optional<CommutativityWitness>> check_graded_commutative(const AlgebraPresentation& p,
                                                                              const Window& w) {
    std::vector<Monomial> all;
    for (const auto& [b, v] : p.monomial_basis(w)) all.insert(all.end(), v.begin(), v.end());
    auto weight = [](const Monomial& m) { return std::accumulate(m.exponents.begin(), m.exponents.end(), 0, [](int s, int e) { return s + std::abs(e); }); };
    std::stable_sort(all.begin(), all.end(), [&](const Monomial& x, const Monomial& y) { return weight(x) < weight(y); });

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i; j < all.size(); ++j) pairs.emplace_back(i, j);
    std::stable_sort(pairs.begin(), pairs.end(), [&](auto x, auto y) {
        return weight(all[x.first]) + weight(all[x.second]) < weight(all[y.first]) + weight(all[y.second]);
    });
    for (auto [i, j] : pairs) {
        const auto& a = all[i];
        const auto& b = all[j];
        const long long t = static_cast<long long>(p.bidegree(a).total()) * p.bidegree(b).total();
        const Int sign = (t % 2 == 0) ? 1 : -1;
        AlgebraElement diff = p.multiply(p.element(a), p.element(b)) - sign * p.multiply(p.element(b), p.element(a));
        if (!p.is_zero_in_quotient(diff)) return {false, CommutativityWitness{a, b}};
    }
    return {true, std::nullopt};
}

}  // namespace loophom
