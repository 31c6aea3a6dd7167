#include "loophom/exact_linalg.hpp"

#include <algorithm>
#include <sstream>

namespace loophom {

std::string to_string(const Int& v) { return v.str(); }

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw Error("ragged matrix literal", "");
        for (long long v : r) data_.emplace_back(v);
    }
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_columns(std::size_t rows, const std::vector<std::vector<Int>>& cols) {
    IntMatrix m(rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        if (cols[c].size() != rows) throw Error("column length mismatch", "");
        for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
    }
    return m;
}

std::vector<Int> IntMatrix::column(std::size_t c) const {
    std::vector<Int> v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

bool IntMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Int& v) { return v == 0; });
}

IntMatrix IntMatrix::hconcat(const IntMatrix& rhs) const {
    if (rows_ != rhs.rows_) throw Error("row count mismatch", "hconcat");
    IntMatrix m(rows_, cols_ + rhs.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) m(r, c) = (*this)(r, c);
        for (std::size_t c = 0; c < rhs.cols_; ++c) m(r, cols_ + c) = rhs(r, c);
    }
    return m;
}

IntMatrix IntMatrix::column_block(std::size_t first, std::size_t count) const {
    IntMatrix m(rows_, count);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < count; ++c) m(r, c) = (*this)(r, first + c);
    return m;
}

IntMatrix IntMatrix::row_block(std::size_t first, std::size_t count) const {
    IntMatrix m(count, cols_);
    for (std::size_t r = 0; r < count; ++r)
        for (std::size_t c = 0; c < cols_; ++c) m(r, c) = (*this)(first + r, c);
    return m;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw Error("dimension mismatch", "matrix product");
    IntMatrix m(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Int& aik = a(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) m(i, j) += aik * b(k, j);
        }
    return m;
}

std::vector<Int> operator*(const IntMatrix& a, const std::vector<Int>& v) {
    if (a.cols_ != v.size()) throw Error("dimension mismatch", "matrix-vector product");
    std::vector<Int> out(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) out[i] += a(i, k) * v[k];
    return out;
}

std::string IntMatrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t r = 0; r < rows_; ++r) {
        os << (r ? ", [" : "[");
        for (std::size_t c = 0; c < cols_; ++c) os << (c ? ", " : "") << (*this)(r, c);
        os << "]";
    }
    os << "]";
    return os.str();
}

// ---------------------------------------------------------------------------
// Smith normal form

namespace {

// Working state: left * M * right = a, U = left^-1, V = right^-1.
struct SnfState {
    IntMatrix a, left, right, U, V;

    void swap_rows(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(i, c), a(j, c));
        for (std::size_t c = 0; c < left.cols(); ++c) std::swap(left(i, c), left(j, c));
        for (std::size_t r = 0; r < U.rows(); ++r) std::swap(U(r, i), U(r, j));
    }
    void swap_cols(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t r = 0; r < a.rows(); ++r) std::swap(a(r, i), a(r, j));
        for (std::size_t r = 0; r < right.rows(); ++r) std::swap(right(r, i), right(r, j));
        for (std::size_t c = 0; c < V.cols(); ++c) std::swap(V(i, c), V(j, c));
    }
    // row_i += k * row_j
    void add_row(std::size_t i, std::size_t j, const Int& k) {
        if (k == 0) return;
        for (std::size_t c = 0; c < a.cols(); ++c) a(i, c) += k * a(j, c);
        for (std::size_t c = 0; c < left.cols(); ++c) left(i, c) += k * left(j, c);
        for (std::size_t r = 0; r < U.rows(); ++r) U(r, j) -= k * U(r, i);
    }
    // col_j += k * col_i
    void add_col(std::size_t j, std::size_t i, const Int& k) {
        if (k == 0) return;
        for (std::size_t r = 0; r < a.rows(); ++r) a(r, j) += k * a(r, i);
        for (std::size_t r = 0; r < right.rows(); ++r) right(r, j) += k * right(r, i);
        for (std::size_t c = 0; c < V.cols(); ++c) V(i, c) -= k * V(j, c);
    }
    void negate_row(std::size_t i) {
        for (std::size_t c = 0; c < a.cols(); ++c) a(i, c) = -a(i, c);
        for (std::size_t c = 0; c < left.cols(); ++c) left(i, c) = -left(i, c);
        for (std::size_t r = 0; r < U.rows(); ++r) U(r, i) = -U(r, i);
    }
};

Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;  // truncates toward zero
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

}  // namespace

SmithDecomposition smith_normal_form(const IntMatrix& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    SnfState s{m, IntMatrix::identity(rows), IntMatrix::identity(cols), IntMatrix::identity(rows),
               IntMatrix::identity(cols)};
    const std::size_t diag = std::min(rows, cols);
    std::size_t rank = 0;

    for (std::size_t t = 0; t < diag; ++t) {
        for (;;) {
            // minimal-absolute-value pivot in the trailing block
            bool found = false;
            std::size_t pr = t, pc = t;
            Int best;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j) {
                    const Int& v = s.a(i, j);
                    if (v == 0) continue;
                    Int av = abs(v);
                    if (!found || av < best) {
                        found = true;
                        best = av;
                        pr = i;
                        pc = j;
                    }
                }
            if (!found) goto done;
            s.swap_rows(t, pr);
            s.swap_cols(t, pc);

            bool clean = true;
            const Int pivot = s.a(t, t);
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (s.a(i, t) == 0) continue;
                s.add_row(i, t, -floor_div(s.a(i, t), pivot));
                if (s.a(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (s.a(t, j) == 0) continue;
                s.add_col(j, t, -floor_div(s.a(t, j), pivot));
                if (s.a(t, j) != 0) clean = false;
            }
            if (!clean) continue;

            // divisibility of the trailing block by the pivot
            bool divisible = true;
            for (std::size_t i = t + 1; i < rows && divisible; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (s.a(i, j) % pivot != 0) {
                        s.add_row(t, i, 1);
                        divisible = false;
                        break;
                    }
            if (divisible) break;
        }
        if (s.a(t, t) < 0) s.negate_row(t);
        ++rank;
    }
done:
    SmithDecomposition out;
    out.D = std::move(s.a);
    out.U = std::move(s.U);
    out.V = std::move(s.V);
    out.left = std::move(s.left);
    out.right = std::move(s.right);
    out.rank = rank;
    return out;
}

std::vector<Int> SmithDecomposition::invariant_factors() const {
    std::vector<Int> f;
    for (std::size_t i = 0; i < rank; ++i) f.push_back(D(i, i));
    return f;
}

IntMatrix kernel_basis(const IntMatrix& m) {
    auto snf = smith_normal_form(m);
    return snf.right.column_block(snf.rank, m.cols() - snf.rank);
}

AbelianGroup cokernel(const IntMatrix& m) {
    auto snf = smith_normal_form(m);
    return AbelianGroup::from_cyclic_orders(m.rows() - snf.rank, snf.invariant_factors());
}

IntMatrix lattice_basis(const IntMatrix& m) {
    if (m.cols() == 0) return IntMatrix(m.rows(), 0);
    auto snf = smith_normal_form(m);
    IntMatrix b(m.rows(), snf.rank);
    for (std::size_t c = 0; c < snf.rank; ++c)
        for (std::size_t r = 0; r < m.rows(); ++r) b(r, c) = snf.U(r, c) * snf.D(c, c);
    return b;
}

IntMatrix saturation_basis(const IntMatrix& m) {
    if (m.cols() == 0) return IntMatrix(m.rows(), 0);
    auto snf = smith_normal_form(m);
    return snf.U.column_block(0, snf.rank);
}

bool solve_in_lattice(const IntMatrix& basis, const IntMatrix& targets, IntMatrix& solution) {
    const std::size_t k = basis.cols();
    if (targets.rows() != basis.rows()) throw Error("dimension mismatch", "solve_in_lattice");
    auto snf = smith_normal_form(basis);
    if (snf.rank != k) throw Error("dependent lattice basis", "solve_in_lattice");
    IntMatrix lt = snf.left * targets;
    IntMatrix y(k, targets.cols());
    for (std::size_t c = 0; c < targets.cols(); ++c) {
        for (std::size_t r = k; r < lt.rows(); ++r)
            if (lt(r, c) != 0) return false;
        for (std::size_t r = 0; r < k; ++r) {
            const Int& d = snf.D(r, r);
            if (lt(r, c) % d != 0) return false;
            y(r, c) = lt(r, c) / d;
        }
    }
    solution = snf.right * y;
    return true;
}

// ---------------------------------------------------------------------------
// AbelianGroup

AbelianGroup AbelianGroup::from_cyclic_orders(std::size_t free_rank, const std::vector<Int>& orders) {
    AbelianGroup g;
    g.free_rank = free_rank;
    std::vector<Int> finite;
    for (const Int& o : orders) {
        Int a = abs(o);
        if (a == 0)
            ++g.free_rank;
        else if (a > 1)
            finite.push_back(a);
    }
    if (finite.empty()) return g;
    // invariant factors of diag(finite)
    IntMatrix d(finite.size(), finite.size());
    for (std::size_t i = 0; i < finite.size(); ++i) d(i, i) = finite[i];
    auto snf = smith_normal_form(d);
    for (const Int& f : snf.invariant_factors())
        if (f > 1) g.torsion.push_back(f);
    return g;
}

AbelianGroup direct_sum(const AbelianGroup& a, const AbelianGroup& b) {
    std::vector<Int> orders = a.torsion;
    orders.insert(orders.end(), b.torsion.begin(), b.torsion.end());
    return AbelianGroup::from_cyclic_orders(a.free_rank + b.free_rank, orders);
}

std::string AbelianGroup::to_string() const {
    if (is_trivial()) return "0";
    std::ostringstream os;
    bool first = true;
    if (free_rank > 0) {
        os << "Z";
        if (free_rank > 1) os << "^" << free_rank;
        first = false;
    }
    for (const Int& t : torsion) {
        os << (first ? "" : " + ") << "Z/" << t;
        first = false;
    }
    return os.str();
}

std::string AbelianGroup::to_primary_string() const {
    std::vector<Int> parts;
    for (Int t : torsion) {
        for (Int p = 2; p * p <= t; ++p) {
            if (t % p != 0) continue;
            Int q = 1;
            while (t % p == 0) {
                t /= p;
                q *= p;
            }
            parts.push_back(q);
        }
        if (t > 1) parts.push_back(t);
    }
    std::sort(parts.begin(), parts.end());
    AbelianGroup shown;
    std::ostringstream os;
    bool first = true;
    if (free_rank > 0) {
        os << "Z";
        if (free_rank > 1) os << "^" << free_rank;
        first = false;
    }
    for (const Int& q : parts) {
        os << (first ? "" : " + ") << "Z/" << q;
        first = false;
    }
    return first ? "0" : os.str();
}

// ---------------------------------------------------------------------------
// Subquotient

Subquotient::Subquotient(const IntMatrix& kernel, const IntMatrix& image) {
    ambient_ = kernel.rows();
    if (image.rows() != ambient_) throw Error("dimension mismatch", "subquotient");
    kernel_basis_ = lattice_basis(kernel);
    const std::size_t k = kernel_basis_.cols();

    IntMatrix rel(k, 0);
    if (image.cols() > 0 && !image.is_zero()) {
        if (!solve_in_lattice(kernel_basis_, image, rel))
            throw Error("image not contained in kernel", "subquotient");
    } else {
        rel = IntMatrix(k, image.cols());
    }

    auto snf = smith_normal_form(rel);
    coord_change_ = snf.left;
    factors_.assign(k, Int(0));
    for (std::size_t i = 0; i < snf.rank; ++i) factors_[i] = snf.D(i, i);

    std::vector<Int> orders;
    for (std::size_t i = 0; i < k; ++i)
        if (factors_[i] > 1) canonical_index_.push_back(i);
    for (std::size_t i = 0; i < k; ++i)
        if (factors_[i] == 0) canonical_index_.push_back(i);

    group_.free_rank = 0;
    for (std::size_t i : canonical_index_) {
        if (factors_[i] == 0)
            ++group_.free_rank;
        else
            group_.torsion.push_back(factors_[i]);
        // lift of the SNF coordinate vector e_i: kernel_basis * U e_i
        std::vector<Int> ucol = snf.U.column(i);
        lifts_.push_back(kernel_basis_ * ucol);
    }
}

bool Subquotient::contains(const std::vector<Int>& v) const {
    if (v.size() != ambient_) throw Error("dimension mismatch", "subquotient membership");
    if (std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; })) return true;
    if (kernel_basis_.cols() == 0) return false;
    IntMatrix sol;
    return solve_in_lattice(kernel_basis_, IntMatrix::from_columns(ambient_, {v}), sol);
}

std::vector<Int> Subquotient::coordinates(const std::vector<Int>& v) const {
    if (v.size() != ambient_) throw Error("dimension mismatch", "subquotient coordinates");
    std::vector<Int> out(canonical_index_.size());
    if (std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; })) return out;
    IntMatrix sol;
    if (kernel_basis_.cols() == 0 ||
        !solve_in_lattice(kernel_basis_, IntMatrix::from_columns(ambient_, {v}), sol))
        throw Error("not a cycle", "vector outside the kernel lattice");
    std::vector<Int> y = coord_change_ * sol.column(0);
    for (std::size_t g = 0; g < canonical_index_.size(); ++g) {
        const std::size_t i = canonical_index_[g];
        Int c = y[i];
        if (factors_[i] > 1) {
            c %= factors_[i];
            if (c < 0) c += factors_[i];
        }
        out[g] = c;
    }
    return out;
}

bool Subquotient::is_zero_class(const std::vector<Int>& v) const {
    auto c = coordinates(v);
    return std::all_of(c.begin(), c.end(), [](const Int& x) { return x == 0; });
}

Subquotient subquotient(const IntMatrix& kernel, const IntMatrix& image) { return Subquotient(kernel, image); }

}  // namespace loophom
