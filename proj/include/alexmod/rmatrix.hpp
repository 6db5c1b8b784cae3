#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "laurent.hpp"

namespace alexmod {

// Dense matrix over R = Q[t, t^-1], row major.
class RMatrix {
  public:
    RMatrix() = default;
    RMatrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), e_(rows * cols) {}

    static RMatrix identity(std::size_t n) {
        RMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = LaurentPoly::one();
        return m;
    }

    static RMatrix from_rows(const std::vector<std::vector<LaurentPoly>>& rows) {
        std::size_t c = rows.empty() ? 0 : rows.front().size();
        RMatrix m(rows.size(), c);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != c) throw Error("ragged rows in matrix literal");
            for (std::size_t j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }

    LaurentPoly& at(std::size_t i, std::size_t j) { return e_[i * c_ + j]; }
    const LaurentPoly& at(std::size_t i, std::size_t j) const { return e_[i * c_ + j]; }

    bool operator==(const RMatrix& o) const { return r_ == o.r_ && c_ == o.c_ && e_ == o.e_; }
    bool operator!=(const RMatrix& o) const { return !(*this == o); }

    bool is_zero() const {
        for (const auto& x : e_)
            if (!x.is_zero()) return false;
        return true;
    }

    RMatrix operator*(const RMatrix& o) const {
        if (c_ != o.r_) throw Error("matrix product shape mismatch");
        RMatrix m(r_, o.c_);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t k = 0; k < c_; ++k) {
                const LaurentPoly& a = at(i, k);
                if (a.is_zero()) continue;
                for (std::size_t j = 0; j < o.c_; ++j) {
                    if (o.at(k, j).is_zero()) continue;
                    m.at(i, j) = m.at(i, j) + a * o.at(k, j);
                }
            }
        return m;
    }

    RMatrix transpose() const {
        RMatrix m(c_, r_);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < c_; ++j) m.at(j, i) = at(i, j);
        return m;
    }

    RMatrix submatrix(const std::vector<std::size_t>& rows,
                      const std::vector<std::size_t>& cols) const {
        RMatrix m(rows.size(), cols.size());
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < cols.size(); ++j) m.at(i, j) = at(rows[i], cols[j]);
        return m;
    }

  private:
    std::size_t r_ = 0, c_ = 0;
    std::vector<LaurentPoly> e_;
};

// left * A * right = diagonal(diag), with all four transforms kept so that
// kernels and relation rows can be read off. diag has min(rows, cols)
// entries: the invariant factors first (normalized: monic, valuation 0,
// each dividing the next), then zeros.
struct SNFResult {
    RMatrix left, left_inv;
    RMatrix right, right_inv;
    std::vector<LaurentPoly> diag;
    std::size_t rank = 0;
};

namespace detail {

// The elimination state: the working matrix plus the four transforms, kept
// consistent under every elementary operation.
//   left * original * right == work,  left * left_inv == id,  right * right_inv == id.
struct SnfState {
    RMatrix work, left, left_inv, right, right_inv;

    explicit SnfState(const RMatrix& a)
        : work(a),
          left(RMatrix::identity(a.rows())),
          left_inv(RMatrix::identity(a.rows())),
          right(RMatrix::identity(a.cols())),
          right_inv(RMatrix::identity(a.cols())) {}

    void row_swap(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t c = 0; c < work.cols(); ++c) std::swap(work.at(i, c), work.at(j, c));
        for (std::size_t c = 0; c < left.cols(); ++c) std::swap(left.at(i, c), left.at(j, c));
        for (std::size_t r = 0; r < left_inv.rows(); ++r)
            std::swap(left_inv.at(r, i), left_inv.at(r, j));
    }

    // row i += f * row k
    void row_addmul(std::size_t i, std::size_t k, const LaurentPoly& f) {
        if (f.is_zero()) return;
        for (std::size_t c = 0; c < work.cols(); ++c)
            work.at(i, c) = work.at(i, c) + f * work.at(k, c);
        for (std::size_t c = 0; c < left.cols(); ++c)
            left.at(i, c) = left.at(i, c) + f * left.at(k, c);
        for (std::size_t r = 0; r < left_inv.rows(); ++r)
            left_inv.at(r, k) = left_inv.at(r, k) - f * left_inv.at(r, i);
    }

    // row i *= u, u a unit of R
    void row_scale(std::size_t i, const LaurentPoly& u) {
        LaurentPoly u_inv = exact_div(LaurentPoly::one(), u);
        for (std::size_t c = 0; c < work.cols(); ++c) work.at(i, c) = work.at(i, c) * u;
        for (std::size_t c = 0; c < left.cols(); ++c) left.at(i, c) = left.at(i, c) * u;
        for (std::size_t r = 0; r < left_inv.rows(); ++r)
            left_inv.at(r, i) = left_inv.at(r, i) * u_inv;
    }

    void col_swap(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t r = 0; r < work.rows(); ++r) std::swap(work.at(r, i), work.at(r, j));
        for (std::size_t r = 0; r < right.rows(); ++r) std::swap(right.at(r, i), right.at(r, j));
        for (std::size_t c = 0; c < right_inv.cols(); ++c)
            std::swap(right_inv.at(i, c), right_inv.at(j, c));
    }

    // col j += f * col k
    void col_addmul(std::size_t j, std::size_t k, const LaurentPoly& f) {
        if (f.is_zero()) return;
        for (std::size_t r = 0; r < work.rows(); ++r)
            work.at(r, j) = work.at(r, j) + f * work.at(r, k);
        for (std::size_t r = 0; r < right.rows(); ++r)
            right.at(r, j) = right.at(r, j) + f * right.at(r, k);
        for (std::size_t c = 0; c < right_inv.cols(); ++c)
            right_inv.at(k, c) = right_inv.at(k, c) - f * right_inv.at(j, c);
    }

    void col_scale(std::size_t j, const LaurentPoly& u) {
        LaurentPoly u_inv = exact_div(LaurentPoly::one(), u);
        for (std::size_t r = 0; r < work.rows(); ++r) work.at(r, j) = work.at(r, j) * u;
        for (std::size_t r = 0; r < right.rows(); ++r) right.at(r, j) = right.at(r, j) * u;
        for (std::size_t c = 0; c < right_inv.cols(); ++c)
            right_inv.at(j, c) = right_inv.at(j, c) * u_inv;
    }

    // Rational content of the coefficients of one row of work, for growth
    // control; 0 for a zero row.
    Rat row_content(std::size_t i) const {
        BigInt num_gcd(0), den_lcm(1);
        for (std::size_t c = 0; c < work.cols(); ++c) {
            const LaurentPoly& p = work.at(i, c);
            if (p.is_zero()) continue;
            for (const Rat& co : p.body().coeffs()) {
                if (is_zero(co)) continue;
                num_gcd = gcd(num_gcd, BigInt(abs(rat_num(co))));
                den_lcm = lcm(den_lcm, rat_den(co));
            }
        }
        if (num_gcd.is_zero()) return Rat(0);
        return Rat(num_gcd, den_lcm);
    }
};

}  // namespace detail

// Smith normal form over R by minimal-body-degree pivoting. The pivot loop
// reduces the pivot row and column with division-with-remainder steps; once
// they are clear it folds any entry the pivot fails to divide into the
// pivot row, which forces the next remainder strictly below the pivot's
// degree. Row contents are divided out each round to keep coefficients
// small. Termination: the minimal body degree in the remaining block never
// increases and strictly decreases on every re-pivot.
inline SNFResult smith_normal_form(const RMatrix& a, const CancelToken* cancel = nullptr) {
    detail::SnfState st(a);
    const std::size_t n = std::min(a.rows(), a.cols());
    std::size_t k = 0;
    while (k < n) {
        check_cancel(cancel);
        for (std::size_t i = k; i < a.rows(); ++i) {
            Rat content = st.row_content(i);
            if (!is_zero(content) && !is_one(content))
                st.row_scale(i, LaurentPoly(rat_inv(content)));
        }

        std::size_t pi = 0, pj = 0;
        bool found = false;
        std::size_t best = 0;
        for (std::size_t i = k; i < a.rows(); ++i)
            for (std::size_t j = k; j < a.cols(); ++j) {
                const LaurentPoly& e = st.work.at(i, j);
                if (e.is_zero()) continue;
                std::size_t d = e.body().deg();
                if (!found || d < best) {
                    found = true;
                    best = d;
                    pi = i;
                    pj = j;
                }
            }
        if (!found) break;
        st.row_swap(k, pi);
        st.col_swap(k, pj);

        bool clean = true;
        for (std::size_t i = k + 1; i < a.rows(); ++i) {
            if (st.work.at(i, k).is_zero()) continue;
            auto [q, r] = laurent_divmod(st.work.at(i, k), st.work.at(k, k));
            st.row_addmul(i, k, -q);
            if (!r.is_zero()) clean = false;
        }
        for (std::size_t j = k + 1; j < a.cols(); ++j) {
            if (st.work.at(k, j).is_zero()) continue;
            auto [q, r] = laurent_divmod(st.work.at(k, j), st.work.at(k, k));
            st.col_addmul(j, k, -q);
            if (!r.is_zero()) clean = false;
        }
        if (!clean) continue;

        bool fixed = false;
        for (std::size_t i = k + 1; i < a.rows() && !fixed; ++i)
            for (std::size_t j = k + 1; j < a.cols() && !fixed; ++j) {
                if (divides(st.work.at(k, k), st.work.at(i, j))) continue;
                st.row_addmul(k, i, LaurentPoly::one());
                fixed = true;
            }
        if (fixed) continue;
        ++k;
    }

    SNFResult out;
    out.rank = k;
    for (std::size_t i = 0; i < k; ++i) {
        const LaurentPoly& d = st.work.at(i, i);
        LaurentPoly unit = LaurentPoly::monomial(rat_inv(d.body().lead()), -d.valuation());
        st.row_scale(i, unit);
    }
    out.diag.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.diag.push_back(st.work.at(i, i));
    out.left = std::move(st.left);
    out.left_inv = std::move(st.left_inv);
    out.right = std::move(st.right);
    out.right_inv = std::move(st.right_inv);
    return out;
}

inline RMatrix diagonal_matrix(std::size_t rows, std::size_t cols,
                               const std::vector<LaurentPoly>& diag) {
    RMatrix m(rows, cols);
    for (std::size_t i = 0; i < diag.size() && i < std::min(rows, cols); ++i)
        m.at(i, i) = diag[i];
    return m;
}

namespace detail {

// Rows scaled by units so every entry is an honest polynomial; row scaling
// does not change rank, and changes determinants only by units.
inline std::vector<std::vector<UniPoly>> unit_scaled_bodies(const RMatrix& a) {
    std::vector<std::vector<UniPoly>> m(a.rows(), std::vector<UniPoly>(a.cols()));
    for (std::size_t i = 0; i < a.rows(); ++i) {
        long long shift = 0;
        bool any = false;
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const LaurentPoly& e = a.at(i, j);
            if (e.is_zero()) continue;
            if (!any || e.valuation() < shift) shift = e.valuation();
            any = true;
        }
        if (!any) continue;
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const LaurentPoly& e = a.at(i, j);
            if (e.is_zero()) continue;
            m[i][j] = e.body().shifted(static_cast<std::size_t>(e.valuation() - shift));
        }
    }
    return m;
}

struct BareissResult {
    std::size_t rank = 0;
    UniPoly last_pivot;  // determinant up to sign when rank is full
    std::vector<std::size_t> pivot_rows, pivot_cols;
};

// Fraction-free elimination with free pivot choice; the division by the
// previous pivot is exact by the Sylvester determinant identity.
inline BareissResult bareiss(std::vector<std::vector<UniPoly>> m, std::size_t rows,
                             std::size_t cols, const CancelToken* cancel = nullptr) {
    BareissResult res;
    std::vector<bool> row_used(rows, false), col_used(cols, false);
    UniPoly prev = UniPoly::one();
    while (true) {
        check_cancel(cancel);
        bool found = false;
        std::size_t pi = 0, pj = 0, best = 0;
        for (std::size_t i = 0; i < rows; ++i) {
            if (row_used[i]) continue;
            for (std::size_t j = 0; j < cols; ++j) {
                if (col_used[j] || m[i][j].is_zero()) continue;
                std::size_t d = m[i][j].deg();
                if (!found || d < best) {
                    found = true;
                    best = d;
                    pi = i;
                    pj = j;
                }
            }
        }
        if (!found) break;
        const UniPoly piv = m[pi][pj];
        for (std::size_t i = 0; i < rows; ++i) {
            if (row_used[i] || i == pi) continue;
            for (std::size_t j = 0; j < cols; ++j) {
                if (col_used[j] || j == pj) continue;
                m[i][j] = exact_div(m[i][j] * piv - m[i][pj] * m[pi][j], prev);
            }
            m[i][pj] = UniPoly();
        }
        row_used[pi] = true;
        col_used[pj] = true;
        res.pivot_rows.push_back(pi);
        res.pivot_cols.push_back(pj);
        prev = piv;
        ++res.rank;
    }
    res.last_pivot = prev;
    return res;
}

}  // namespace detail

// Rank over the fraction field Q(t).
inline std::size_t rank_over_fraction_field(const RMatrix& a,
                                            const CancelToken* cancel = nullptr) {
    return detail::bareiss(detail::unit_scaled_bodies(a), a.rows(), a.cols(), cancel).rank;
}

// Determinant of a square matrix, as the normalized representative (monic,
// valuation 0) of its unit class; zero for singular input. The empty matrix
// has determinant 1.
inline LaurentPoly det_up_to_unit(const RMatrix& a, const CancelToken* cancel = nullptr) {
    if (a.rows() != a.cols()) throw Error("determinant of a non-square matrix");
    auto res = detail::bareiss(detail::unit_scaled_bodies(a), a.rows(), a.cols(), cancel);
    if (res.rank < a.rows()) return LaurentPoly();
    return LaurentPoly::from_poly(res.last_pivot).normalized();
}

inline bool has_unit_determinant(const RMatrix& a) { return det_up_to_unit(a).is_one(); }

}  // namespace alexmod
