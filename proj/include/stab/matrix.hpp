#pragma once

#include "stab/error.hpp"
#include "stab/scalar.hpp"

#include <optional>
#include <vector>

namespace stab {

inline Scalar zero_like(const Scalar&) { return Scalar(0); }
inline Scalar one_like(const Scalar&) { return Scalar(1); }

// Dense matrix over an exact field element type K.  K must provide field
// arithmetic, is_zero(), ==, and zero_like/one_like overloads.  An exemplar
// element travels with the matrix so element types carrying runtime field
// descriptors (finite fields) can mint constants.
template <class K>
class Mat {
public:
    Mat() = default;
    Mat(size_t rows, size_t cols, const K& exemplar)
        : rows_(rows), cols_(cols), a_(rows * cols, zero_like(exemplar)), ex_(zero_like(exemplar)) {}

    static Mat identity(size_t n, const K& exemplar) {
        Mat out(n, n, exemplar);
        for (size_t i = 0; i < n; ++i) out.at(i, i) = one_like(exemplar);
        return out;
    }

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    const K& exemplar() const { return ex_; }
    K& at(size_t r, size_t c) { return a_[r * cols_ + c]; }
    const K& at(size_t r, size_t c) const { return a_[r * cols_ + c]; }

    std::vector<K> row(size_t r) const {
        return std::vector<K>(a_.begin() + r * cols_, a_.begin() + (r + 1) * cols_);
    }
    void set_row(size_t r, const std::vector<K>& v) {
        for (size_t c = 0; c < cols_; ++c) at(r, c) = v[c];
    }

    friend bool operator==(const Mat& x, const Mat& y) {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
    }
    friend bool operator!=(const Mat& x, const Mat& y) { return !(x == y); }

    Mat transpose() const {
        Mat out(cols_, rows_, ex_);
        for (size_t r = 0; r < rows_; ++r)
            for (size_t c = 0; c < cols_; ++c) out.at(c, r) = at(r, c);
        return out;
    }

    friend Mat operator*(const Mat& x, const Mat& y) {
        if (x.cols_ != y.rows_) throw error("matrix product shape mismatch");
        Mat out(x.rows_, y.cols_, x.ex_);
        for (size_t i = 0; i < x.rows_; ++i)
            for (size_t k = 0; k < x.cols_; ++k) {
                const K& v = x.at(i, k);
                if (v.is_zero()) continue;
                for (size_t j = 0; j < y.cols_; ++j) out.at(i, j) += v * y.at(k, j);
            }
        return out;
    }

    std::vector<K> apply(const std::vector<K>& x) const { // column-vector action
        if (x.size() != cols_) throw error("matrix apply shape mismatch");
        std::vector<K> out(rows_, zero_like(ex_));
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j)
                if (!at(i, j).is_zero()) out[i] += at(i, j) * x[j];
        return out;
    }

    // In-place reduced row echelon form; returns pivot column indices.
    std::vector<size_t> rref() {
        std::vector<size_t> pivots;
        size_t r = 0;
        for (size_t c = 0; c < cols_ && r < rows_; ++c) {
            size_t sel = r;
            while (sel < rows_ && at(sel, c).is_zero()) ++sel;
            if (sel == rows_) continue;
            if (sel != r)
                for (size_t j = 0; j < cols_; ++j) std::swap(at(sel, j), at(r, j));
            K inv = one_like(ex_) / at(r, c);
            for (size_t j = c; j < cols_; ++j) at(r, j) = at(r, j) * inv;
            for (size_t i = 0; i < rows_; ++i) {
                if (i == r || at(i, c).is_zero()) continue;
                K f = at(i, c);
                for (size_t j = c; j < cols_; ++j) at(i, j) = at(i, j) - f * at(r, j);
            }
            pivots.push_back(c);
            ++r;
        }
        return pivots;
    }

    size_t rank() const {
        Mat tmp = *this;
        return tmp.rref().size();
    }

    K det() const {
        if (rows_ != cols_) throw error("determinant of non-square matrix");
        Mat tmp = *this;
        K out = one_like(ex_);
        for (size_t c = 0; c < cols_; ++c) {
            size_t sel = c;
            while (sel < rows_ && tmp.at(sel, c).is_zero()) ++sel;
            if (sel == rows_) return zero_like(ex_);
            if (sel != c) {
                for (size_t j = 0; j < cols_; ++j) std::swap(tmp.at(sel, j), tmp.at(c, j));
                out = zero_like(ex_) - out;
            }
            out = out * tmp.at(c, c);
            K inv = one_like(ex_) / tmp.at(c, c);
            for (size_t i = c + 1; i < rows_; ++i) {
                if (tmp.at(i, c).is_zero()) continue;
                K f = tmp.at(i, c) * inv;
                for (size_t j = c; j < cols_; ++j) tmp.at(i, j) = tmp.at(i, j) - f * tmp.at(c, j);
            }
        }
        return out;
    }

    // Rows span the solution space of A x = 0.
    Mat kernel() const {
        Mat red = *this;
        std::vector<size_t> pivots = red.rref();
        std::vector<bool> is_pivot(cols_, false);
        for (size_t p : pivots) is_pivot[p] = true;
        Mat out(cols_ - pivots.size(), cols_, ex_);
        size_t k = 0;
        for (size_t f = 0; f < cols_; ++f) {
            if (is_pivot[f]) continue;
            out.at(k, f) = one_like(ex_);
            for (size_t i = 0; i < pivots.size(); ++i)
                out.at(k, pivots[i]) = zero_like(ex_) - red.at(i, f);
            ++k;
        }
        return out;
    }

    // Particular solution of A x = b (free variables set to zero).
    std::optional<std::vector<K>> solve(const std::vector<K>& b) const {
        if (b.size() != rows_) throw error("solve shape mismatch");
        Mat aug(rows_, cols_ + 1, ex_);
        for (size_t i = 0; i < rows_; ++i) {
            for (size_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
            aug.at(i, cols_) = b[i];
        }
        std::vector<size_t> pivots = aug.rref();
        if (!pivots.empty() && pivots.back() == cols_) return std::nullopt;
        std::vector<K> x(cols_, zero_like(ex_));
        for (size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug.at(i, cols_);
        return x;
    }

private:
    size_t rows_ = 0, cols_ = 0;
    std::vector<K> a_;
    K ex_;
};

// ---- Subspaces of K^n, represented as canonical RREF row-basis matrices ----

template <class K>
Mat<K> zero_space(size_t n, const K& ex) { return Mat<K>(0, n, ex); }

template <class K>
Mat<K> full_space(size_t n, const K& ex) { return Mat<K>::identity(n, ex); }

// Canonicalize arbitrary spanning rows to RREF with zero rows dropped.
template <class K>
Mat<K> row_span(Mat<K> m) {
    std::vector<size_t> pivots = m.rref();
    Mat<K> out(pivots.size(), m.cols(), m.exemplar());
    for (size_t i = 0; i < pivots.size(); ++i)
        for (size_t c = 0; c < m.cols(); ++c) out.at(i, c) = m.at(i, c);
    return out;
}

template <class K>
Mat<K> stack_rows(const Mat<K>& a, const Mat<K>& b) {
    if (a.cols() != b.cols()) throw error("stack shape mismatch");
    Mat<K> out(a.rows() + b.rows(), a.cols(), a.exemplar());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t c = 0; c < a.cols(); ++c) out.at(i, c) = a.at(i, c);
    for (size_t i = 0; i < b.rows(); ++i)
        for (size_t c = 0; c < a.cols(); ++c) out.at(a.rows() + i, c) = b.at(i, c);
    return out;
}

template <class K>
Mat<K> span_sum(const Mat<K>& a, const Mat<K>& b) { return row_span(stack_rows(a, b)); }

// Reduce v against an RREF basis; returns the residual.
template <class K>
std::vector<K> reduce_by(const Mat<K>& rref_basis, std::vector<K> v) {
    for (size_t i = 0; i < rref_basis.rows(); ++i) {
        size_t p = 0;
        while (p < rref_basis.cols() && rref_basis.at(i, p).is_zero()) ++p;
        if (p == rref_basis.cols()) continue;
        if (v[p].is_zero()) continue;
        K f = v[p];
        for (size_t c = p; c < rref_basis.cols(); ++c) v[c] = v[c] - f * rref_basis.at(i, c);
    }
    return v;
}

template <class K>
bool in_row_span(const Mat<K>& rref_basis, const std::vector<K>& v) {
    for (const K& x : reduce_by(rref_basis, v))
        if (!x.is_zero()) return false;
    return true;
}

template <class K>
bool span_contains(const Mat<K>& outer_rref, const Mat<K>& inner) {
    for (size_t i = 0; i < inner.rows(); ++i)
        if (!in_row_span(outer_rref, inner.row(i))) return false;
    return true;
}

// Coordinates of v in the rows of an RREF basis; throws if v is outside.
template <class K>
std::vector<K> coords_in_basis(const Mat<K>& rref_basis, const std::vector<K>& v) {
    std::vector<K> coords(rref_basis.rows(), zero_like(rref_basis.exemplar()));
    std::vector<K> cur = v;
    for (size_t i = 0; i < rref_basis.rows(); ++i) {
        size_t p = 0;
        while (p < rref_basis.cols() && rref_basis.at(i, p).is_zero()) ++p;
        coords[i] = cur[p];
        if (!cur[p].is_zero()) {
            K f = cur[p];
            for (size_t c = p; c < rref_basis.cols(); ++c) cur[c] = cur[c] - f * rref_basis.at(i, c);
        }
    }
    for (const K& x : cur)
        if (!x.is_zero()) throw error("vector outside subspace in coords_in_basis");
    return coords;
}

// Image of a subspace under the linear map x -> A x.
template <class K>
Mat<K> image_of(const Mat<K>& a, const Mat<K>& subspace) {
    Mat<K> rows(subspace.rows(), a.rows(), a.exemplar());
    for (size_t i = 0; i < subspace.rows(); ++i) {
        std::vector<K> img = a.apply(subspace.row(i));
        rows.set_row(i, img);
    }
    return row_span(rows);
}

// Preimage {x : A x in rowspace(target)}.
template <class K>
Mat<K> preimage_of(const Mat<K>& a, const Mat<K>& target) {
    // kernel of [A | -T^t] projected onto the x block
    size_t n = a.cols(), t = target.rows();
    Mat<K> big(a.rows(), n + t, a.exemplar());
    for (size_t i = 0; i < a.rows(); ++i) {
        for (size_t j = 0; j < n; ++j) big.at(i, j) = a.at(i, j);
        for (size_t j = 0; j < t; ++j) big.at(i, n + j) = zero_like(a.exemplar()) - target.at(j, i);
    }
    Mat<K> ker = big.kernel();
    Mat<K> proj(ker.rows(), n, a.exemplar());
    for (size_t i = 0; i < ker.rows(); ++i)
        for (size_t j = 0; j < n; ++j) proj.at(i, j) = ker.at(i, j);
    return row_span(proj);
}

// Zassenhaus: intersection of two row spaces.
template <class K>
Mat<K> span_intersect(const Mat<K>& a, const Mat<K>& b) {
    size_t n = a.cols();
    Mat<K> big(a.rows() + b.rows(), 2 * n, a.exemplar());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t c = 0; c < n; ++c) {
            big.at(i, c) = a.at(i, c);
            big.at(i, n + c) = a.at(i, c);
        }
    for (size_t i = 0; i < b.rows(); ++i)
        for (size_t c = 0; c < n; ++c) big.at(a.rows() + i, c) = b.at(i, c);
    big.rref();
    // rows whose left block vanished carry the intersection in the right block
    Mat<K> rows(big.rows(), n, a.exemplar());
    size_t k = 0;
    for (size_t i = 0; i < big.rows(); ++i) {
        bool left_zero = true;
        for (size_t c = 0; c < n && left_zero; ++c) left_zero = big.at(i, c).is_zero();
        bool right_zero = true;
        for (size_t c = 0; c < n && right_zero; ++c) right_zero = big.at(i, n + c).is_zero();
        if (left_zero && !right_zero) {
            for (size_t c = 0; c < n; ++c) rows.at(k, c) = big.at(i, n + c);
            ++k;
        }
    }
    Mat<K> out(k, n, a.exemplar());
    for (size_t i = 0; i < k; ++i)
        for (size_t c = 0; c < n; ++c) out.at(i, c) = rows.at(i, c);
    return row_span(out);
}

} // namespace stab
