#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "unipoly.hpp"

namespace alexmod {

using QVec = std::vector<Rat>;

// Dense matrix over Q, row major.
class QMat {
  public:
    QMat() = default;
    QMat(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), d_(rows * cols, Rat(0)) {}

    static QMat identity(std::size_t n) {
        QMat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Rat(1);
        return m;
    }

    static QMat from_rows(const std::vector<QVec>& rows) {
        std::size_t c = rows.empty() ? 0 : rows.front().size();
        QMat m(rows.size(), c);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != c) throw Error("ragged rows in matrix literal");
            for (std::size_t j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
        }
        return m;
    }

    // Columns given as vectors in an ambient of `rows` coordinates.
    static QMat from_cols(std::size_t rows, const std::vector<QVec>& cols) {
        QMat m(rows, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (cols[j].size() != rows) throw Error("column has wrong length");
            for (std::size_t i = 0; i < rows; ++i) m.at(i, j) = cols[j][i];
        }
        return m;
    }

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }

    Rat& at(std::size_t i, std::size_t j) { return d_[i * c_ + j]; }
    const Rat& at(std::size_t i, std::size_t j) const { return d_[i * c_ + j]; }

    bool operator==(const QMat& o) const { return r_ == o.r_ && c_ == o.c_ && d_ == o.d_; }
    bool operator!=(const QMat& o) const { return !(*this == o); }

    bool is_zero() const {
        for (const auto& x : d_)
            if (!alexmod::is_zero(x)) return false;
        return true;
    }

    QMat operator+(const QMat& o) const {
        check_shape(o);
        QMat m(*this);
        for (std::size_t k = 0; k < d_.size(); ++k) m.d_[k] += o.d_[k];
        return m;
    }

    QMat operator-(const QMat& o) const {
        check_shape(o);
        QMat m(*this);
        for (std::size_t k = 0; k < d_.size(); ++k) m.d_[k] -= o.d_[k];
        return m;
    }

    QMat operator-() const {
        QMat m(*this);
        for (auto& x : m.d_) x = -x;
        return m;
    }

    QMat operator*(const QMat& o) const {
        if (c_ != o.r_) throw Error("matrix product shape mismatch");
        QMat m(r_, o.c_);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t k = 0; k < c_; ++k) {
                const Rat& a = at(i, k);
                if (alexmod::is_zero(a)) continue;
                for (std::size_t j = 0; j < o.c_; ++j) m.at(i, j) += a * o.at(k, j);
            }
        return m;
    }

    QMat operator*(const Rat& s) const {
        QMat m(*this);
        for (auto& x : m.d_) x *= s;
        return m;
    }

    QVec apply(const QVec& v) const {
        if (v.size() != c_) throw Error("matrix-vector shape mismatch");
        QVec out(r_, Rat(0));
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < c_; ++j)
                if (!alexmod::is_zero(at(i, j))) out[i] += at(i, j) * v[j];
        return out;
    }

    QMat transpose() const {
        QMat m(c_, r_);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < c_; ++j) m.at(j, i) = at(i, j);
        return m;
    }

    QMat pow(std::size_t e) const {
        if (r_ != c_) throw Error("power of a non-square matrix");
        QMat acc = identity(r_), b = *this;
        while (e) {
            if (e & 1u) acc = acc * b;
            b = b * b;
            e >>= 1;
        }
        return acc;
    }

    Rat trace() const {
        if (r_ != c_) throw Error("trace of a non-square matrix");
        Rat t(0);
        for (std::size_t i = 0; i < r_; ++i) t += at(i, i);
        return t;
    }

    QVec col(std::size_t j) const {
        QVec v(r_);
        for (std::size_t i = 0; i < r_; ++i) v[i] = at(i, j);
        return v;
    }

    QVec row(std::size_t i) const {
        QVec v(c_);
        for (std::size_t j = 0; j < c_; ++j) v[j] = at(i, j);
        return v;
    }

  private:
    void check_shape(const QMat& o) const {
        if (r_ != o.r_ || c_ != o.c_) throw Error("matrix shape mismatch");
    }

    std::size_t r_ = 0, c_ = 0;
    std::vector<Rat> d_;
};

inline QMat hstack(const QMat& a, const QMat& b) {
    if (a.rows() != b.rows()) throw Error("hstack row mismatch");
    QMat m(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) m.at(i, a.cols() + j) = b.at(i, j);
    }
    return m;
}

struct RrefResult {
    QMat mat;
    std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

inline RrefResult rref(QMat m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t p = row;
        while (p < m.rows() && is_zero(m.at(p, col))) ++p;
        if (p == m.rows()) continue;
        if (p != row)
            for (std::size_t j = col; j < m.cols(); ++j) std::swap(m.at(p, j), m.at(row, j));
        Rat inv = rat_inv(m.at(row, col));
        for (std::size_t j = col; j < m.cols(); ++j) m.at(row, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || is_zero(m.at(i, col))) continue;
            Rat f = m.at(i, col);
            for (std::size_t j = col; j < m.cols(); ++j) m.at(i, j) -= f * m.at(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return {std::move(m), std::move(pivots)};
}

inline std::size_t rank(const QMat& m) { return rref(m).pivots.size(); }

// Columns form a basis of the null space.
inline QMat kernel_basis(const QMat& m) {
    RrefResult r = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t p : r.pivots) is_pivot[p] = true;
    std::vector<QVec> cols;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        QVec v(m.cols(), Rat(0));
        v[free] = Rat(1);
        for (std::size_t i = 0; i < r.pivots.size(); ++i) v[r.pivots[i]] = -r.mat.at(i, free);
        cols.push_back(std::move(v));
    }
    return QMat::from_cols(m.cols(), cols);
}

// One exact solution of A x = b, free coordinates set to zero.
inline std::optional<QVec> solve(const QMat& a, const QVec& b) {
    if (b.size() != a.rows()) throw Error("solve: right-hand side has wrong length");
    QMat aug(a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, a.cols()) = b[i];
    }
    RrefResult r = rref(std::move(aug));
    for (std::size_t p : r.pivots)
        if (p == a.cols()) return std::nullopt;
    QVec x(a.cols(), Rat(0));
    for (std::size_t i = 0; i < r.pivots.size(); ++i) x[r.pivots[i]] = r.mat.at(i, a.cols());
    return x;
}

inline QMat inverse(const QMat& a) {
    if (a.rows() != a.cols()) throw Error("inverse of a non-square matrix");
    std::size_t n = a.rows();
    RrefResult r = rref(hstack(a, QMat::identity(n)));
    if (r.pivots.size() < n || (n > 0 && r.pivots[n - 1] >= n))
        throw Error("matrix not invertible");
    QMat inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = r.mat.at(i, n + j);
    return inv;
}

// Incremental row-echelon span of a growing set of vectors. insert() reduces
// the vector against the rows seen so far and keeps it only if independent.
class SpanTracker {
  public:
    explicit SpanTracker(std::size_t ambient) : n_(ambient) {}

    std::size_t dim() const { return rows_.size(); }
    std::size_t ambient() const { return n_; }

    bool contains(QVec v) const { return reduce(v); }

    bool insert(QVec v) {
        if (reduce(v)) return false;
        std::size_t lead = 0;
        while (is_zero(v[lead])) ++lead;
        Rat inv = rat_inv(v[lead]);
        for (auto& x : v) x *= inv;
        rows_.push_back({lead, std::move(v)});
        return true;
    }

    bool insert_all(const QMat& cols) {
        bool any = false;
        for (std::size_t j = 0; j < cols.cols(); ++j) any = insert(cols.col(j)) || any;
        return any;
    }

  private:
    // Reduces v in place; true iff it lands on zero (v was in the span).
    bool reduce(QVec& v) const {
        if (v.size() != n_) throw Error("span tracker ambient mismatch");
        for (const auto& [lead, row] : rows_) {
            if (is_zero(v[lead])) continue;
            Rat f = v[lead];
            for (std::size_t j = lead; j < n_; ++j) v[j] -= f * row[j];
        }
        for (const auto& x : v)
            if (!is_zero(x)) return false;
        return true;
    }

    std::size_t n_;
    std::vector<std::pair<std::size_t, QVec>> rows_;
};

// Two column spans describe the same subspace.
inline bool same_subspace(const QMat& a, const QMat& b) {
    if (a.rows() != b.rows()) return false;
    SpanTracker sa(a.rows()), sb(b.rows());
    sa.insert_all(a);
    sb.insert_all(b);
    if (sa.dim() != sb.dim()) return false;
    for (std::size_t j = 0; j < b.cols(); ++j)
        if (!sa.contains(b.col(j))) return false;
    return true;
}

// p evaluated at a square matrix, by Horner.
inline QMat poly_of_matrix(const UniPoly& p, const QMat& a) {
    if (a.rows() != a.cols()) throw Error("polynomial of a non-square matrix");
    std::size_t n = a.rows();
    QMat acc(n, n);
    if (p.is_zero()) return acc;
    for (std::size_t i = p.deg() + 1; i-- > 0;) {
        acc = acc * a;
        Rat c = p.coeff(i);
        if (!is_zero(c))
            for (std::size_t k = 0; k < n; ++k) acc.at(k, k) += c;
    }
    return acc;
}

// Matrix of the action on an invariant subspace, in the given basis.
inline QMat restrict_to_invariant(const QMat& action, const QMat& basis) {
    QMat m(basis.cols(), basis.cols());
    for (std::size_t j = 0; j < basis.cols(); ++j) {
        auto x = solve(basis, action.apply(basis.col(j)));
        if (!x) throw Error("subspace is not invariant under the action");
        for (std::size_t i = 0; i < basis.cols(); ++i) m.at(i, j) = (*x)[i];
    }
    return m;
}

inline UniPoly char_poly(const QMat& a) {
    if (a.rows() != a.cols()) throw Error("characteristic polynomial of a non-square matrix");
    // Faddeev-LeVerrier: M_1 = A, c_k = -tr(A M_k)/k with M_{k+1} = A M_k + c_k I.
    std::size_t n = a.rows();
    std::vector<Rat> c(n + 1, Rat(0));
    c[n] = Rat(1);
    QMat m = QMat::identity(n);
    for (std::size_t k = 1; k <= n; ++k) {
        m = a * m;
        Rat ck = -m.trace() / Rat(static_cast<long>(k));
        c[n - k] = ck;
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) += ck;
    }
    return UniPoly(std::move(c));
}

// Minimal polynomial by cyclic subspaces: for each seed vector outside the
// span accumulated so far, the relation closing its Krylov sequence gives a
// local minimal polynomial; the answer is the lcm. Seeds already inside the
// accumulated span are killed by the lcm so far and can be skipped.
inline UniPoly minimal_polynomial(const QMat& a) {
    if (a.rows() != a.cols()) throw Error("minimal polynomial of a non-square matrix");
    std::size_t n = a.rows();
    if (n == 0) return UniPoly::one();
    SpanTracker seen(n);
    UniPoly result = UniPoly::one();
    for (std::size_t seed = 0; seed < n && seen.dim() < n; ++seed) {
        QVec v(n, Rat(0));
        v[seed] = Rat(1);
        if (seen.contains(v)) continue;
        std::vector<QVec> krylov;
        QMat kmat(n, 0);
        QVec cur = v;
        UniPoly local;
        while (true) {
            auto rel = solve(kmat, cur);
            if (rel) {
                // cur = A^k v depends on the earlier powers: x^k - sum rel_j x^j.
                std::vector<Rat> coeffs(krylov.size() + 1, Rat(0));
                for (std::size_t j = 0; j < rel->size(); ++j) coeffs[j] = -(*rel)[j];
                coeffs[krylov.size()] = Rat(1);
                local = UniPoly(std::move(coeffs));
                break;
            }
            krylov.push_back(cur);
            kmat = hstack(kmat, QMat::from_cols(n, {cur}));
            cur = a.apply(cur);
        }
        for (const auto& k : krylov) seen.insert(k);
        UniPoly g = poly_gcd(result, local);
        result = exact_div(result * local, g).monic();
    }
    return result;
}

// Sizes of the Jordan blocks of a nilpotent map, largest first, from the
// rank sequence of its powers.
inline std::vector<std::size_t> nilpotent_block_sizes(const QMat& b) {
    if (b.rows() != b.cols()) throw Error("Jordan profile of a non-square matrix");
    std::size_t n = b.rows();
    std::vector<std::size_t> ranks;  // ranks[k] = rank(b^k)
    ranks.push_back(n);
    QMat p = b;
    std::size_t k = 1;
    while (ranks.back() > 0) {
        ranks.push_back(rank(p));
        if (k > n) throw Error("matrix is not nilpotent");
        p = p * b;
        ++k;
    }
    std::vector<std::size_t> blocks;
    // Blocks of size >= k number rank(b^{k-1}) - rank(b^k).
    for (std::size_t size = ranks.size() - 1; size >= 1; --size) {
        std::size_t at_least = ranks[size - 1] - ranks[size];
        std::size_t at_least_next = size < ranks.size() - 1 ? ranks[size] - ranks[size + 1] : 0;
        for (std::size_t cnt = at_least_next; cnt < at_least; ++cnt) blocks.push_back(size);
    }
    return blocks;
}

// The quotient of two nested column spans: V = span(Z) / span(B). Coordinates
// are taken against a basis extension [basis of B | chosen columns of Z].
class QuotientSpace {
  public:
    QuotientSpace(const QMat& z, const QMat& b) : n_(z.rows()) {
        if (b.rows() != n_) throw Error("quotient: ambient mismatch");
        SpanTracker span(n_);
        std::vector<QVec> chosen;
        for (std::size_t j = 0; j < b.cols(); ++j)
            if (span.insert(b.col(j))) chosen.push_back(b.col(j));
        sub_dim_ = chosen.size();
        SpanTracker zspan(n_);
        for (std::size_t j = 0; j < z.cols(); ++j) zspan.insert(z.col(j));
        for (std::size_t j = 0; j < b.cols(); ++j)
            if (!zspan.contains(b.col(j))) throw Error("quotient: denominator not inside numerator");
        for (std::size_t j = 0; j < z.cols(); ++j)
            if (span.insert(z.col(j))) chosen.push_back(z.col(j));
        basis_ = QMat::from_cols(n_, chosen);
    }

    std::size_t dim() const { return basis_.cols() - sub_dim_; }
    std::size_t ambient() const { return n_; }

    // Representative of the k-th quotient basis class, as an ambient vector.
    QVec rep(std::size_t k) const { return basis_.col(sub_dim_ + k); }

    // Coordinates of the class of v in the quotient basis.
    QVec coords(const QVec& v) const {
        auto x = solve(basis_, v);
        if (!x) throw Error("quotient: vector outside the numerator span");
        return QVec(x->begin() + static_cast<std::ptrdiff_t>(sub_dim_), x->end());
    }

    // Matrix of the map induced on quotients by an ambient-level map.
    static QMat induced(const QMat& f, const QuotientSpace& from, const QuotientSpace& to) {
        QMat m(to.dim(), from.dim());
        for (std::size_t k = 0; k < from.dim(); ++k) {
            QVec img = to.coords(f.apply(from.rep(k)));
            for (std::size_t i = 0; i < to.dim(); ++i) m.at(i, k) = img[i];
        }
        return m;
    }

  private:
    std::size_t n_;
    std::size_t sub_dim_ = 0;
    QMat basis_;  // independent columns of B, then completion from Z
};

}  // namespace alexmod
