// Dense exact matrices over any Ring. Values are immutable once built (all
// operations return fresh matrices); the determinant uses cofactor expansion
// up to 4x4 and fraction-free Bareiss elimination above that, so no
// fractions ever appear over an integral domain. Inverses go through the
// adjugate and are gated on the determinant being a unit of the ring.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tconj/error.hpp"
#include "tconj/rings.hpp"

namespace tconj {

template <Ring R>
class Matrix {
public:
    using Element = typename R::Element;

    Matrix(R ring, size_t rows, size_t cols)
        : ring_(std::move(ring)), rows_(rows), cols_(cols), e_(rows * cols, ring_.zero()) {
        if (rows == 0 || cols == 0) raise(errc::dimension_mismatch, "empty matrix");
    }

    static Matrix identity(const R& ring, size_t n) {
        Matrix m(ring, n, n);
        for (size_t i = 0; i < n; ++i) m.at(i, i) = ring.one();
        return m;
    }

    static Matrix zero(const R& ring, size_t rows, size_t cols) { return Matrix(ring, rows, cols); }

    static Matrix scalar(const R& ring, size_t n, const Element& z) {
        Matrix m(ring, n, n);
        for (size_t i = 0; i < n; ++i) m.at(i, i) = z;
        return m;
    }

    static Matrix from_rows(const R& ring, const std::vector<std::vector<Element>>& rows) {
        if (rows.empty() || rows[0].empty()) raise(errc::dimension_mismatch, "empty matrix literal");
        Matrix m(ring, rows.size(), rows[0].size());
        for (size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != rows[0].size())
                raise(errc::dimension_mismatch, "ragged matrix literal");
            for (size_t j = 0; j < rows[i].size(); ++j) m.at(i, j) = rows[i][j];
        }
        return m;
    }

    // integer-entried convenience constructor (tests, witnesses)
    static Matrix from_ints(const R& ring, const std::vector<std::vector<long long>>& rows) {
        std::vector<std::vector<Element>> conv;
        conv.reserve(rows.size());
        for (const auto& row : rows) {
            std::vector<Element> r;
            r.reserve(row.size());
            for (long long v : row) r.push_back(ring.from_int(v));
            conv.push_back(std::move(r));
        }
        return from_rows(ring, conv);
    }

    const R& ring() const { return ring_; }
    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    size_t n() const {
        if (!is_square()) raise(errc::dimension_mismatch, "matrix is not square");
        return rows_;
    }

    Element& at(size_t i, size_t j) { return e_[i * cols_ + j]; }
    const Element& at(size_t i, size_t j) const { return e_[i * cols_ + j]; }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        if (!a.ring_.same_ring(b.ring_) || a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
        for (size_t k = 0; k < a.e_.size(); ++k)
            if (!a.ring_.equal(a.e_[k], b.e_[k])) return false;
        return true;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        a.require_same_shape(b);
        Matrix r = a;
        for (size_t k = 0; k < r.e_.size(); ++k) r.e_[k] = a.ring_.add(a.e_[k], b.e_[k]);
        return r;
    }

    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        a.require_same_shape(b);
        Matrix r = a;
        for (size_t k = 0; k < r.e_.size(); ++k) r.e_[k] = a.ring_.sub(a.e_[k], b.e_[k]);
        return r;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        a.require_same_ring(b);
        if (a.cols_ != b.rows_)
            raise(errc::dimension_mismatch, "matrix product shape mismatch");
        Matrix r(a.ring_, a.rows_, b.cols_);
        for (size_t i = 0; i < a.rows_; ++i)
            for (size_t k = 0; k < a.cols_; ++k) {
                const Element& aik = a.at(i, k);
                if (a.ring_.is_zero(aik)) continue;
                for (size_t j = 0; j < b.cols_; ++j)
                    r.at(i, j) = a.ring_.add(r.at(i, j), a.ring_.mul(aik, b.at(k, j)));
            }
        return r;
    }

    Matrix scalar_mul(const Element& z) const {
        Matrix r = *this;
        for (auto& x : r.e_) x = ring_.mul(z, x);
        return r;
    }

    Matrix negate() const {
        Matrix r = *this;
        for (auto& x : r.e_) x = ring_.neg(x);
        return r;
    }

    Matrix transpose() const {
        Matrix r(ring_, cols_, rows_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    Element trace() const {
        size_t m = n();
        Element t = ring_.zero();
        for (size_t i = 0; i < m; ++i) t = ring_.add(t, at(i, i));
        return t;
    }

    // atr([[a,b],[c,d]]) = b - c; defined for 2x2 only
    Element antitrace() const {
        if (rows_ != 2 || cols_ != 2)
            raise(errc::dimension_mismatch, "antitrace requires a 2x2 matrix");
        return ring_.sub(at(0, 1), at(1, 0));
    }

    Element det() const {
        size_t m = n();
        if (m <= 4) return det_cofactor(*this);
        return det_bareiss(*this);
    }

    bool is_symmetric() const {
        if (!is_square()) return false;
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = i + 1; j < cols_; ++j)
                if (!ring_.equal(at(i, j), at(j, i))) return false;
        return true;
    }

    std::optional<Element> as_scalar() const {
        if (!is_square()) return std::nullopt;
        const Element& z = at(0, 0);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j) {
                if (i == j ? !ring_.equal(at(i, j), z) : !ring_.is_zero(at(i, j)))
                    return std::nullopt;
            }
        return z;
    }

    // adjugate / det; requires det to be a unit of the ring
    Matrix inverse() const {
        size_t m = n();
        Element d = det();
        if (!ring_.is_unit(d))
            raise(errc::not_invertible,
                  "determinant " + ring_.to_string(d) + " is not a unit in " + ring_.spec());
        Element dinv = ring_.unit_inverse(d);
        if (m == 1) {
            Matrix r(ring_, 1, 1);
            r.at(0, 0) = dinv;
            return r;
        }
        Matrix adj(ring_, m, m);
        for (size_t i = 0; i < m; ++i)
            for (size_t j = 0; j < m; ++j) {
                Element c = minor_iter(i, j).det();
                if ((i + j) % 2 == 1) c = ring_.neg(c);
                adj.at(j, i) = c;
            }
        return adj.scalar_mul(dinv);
    }

    Matrix pow(unsigned long long e) const {
        Matrix acc = identity(ring_, n());
        Matrix sq = *this;
        while (e != 0) {
            if (e & 1ULL) acc = acc * sq;
            e >>= 1;
            if (e != 0) sq = sq * sq;
        }
        return acc;
    }

    Matrix minor_iter(size_t row, size_t col) const {
        Matrix r(ring_, rows_ - 1, cols_ - 1);
        for (size_t i = 0, ri = 0; i < rows_; ++i) {
            if (i == row) continue;
            for (size_t j = 0, rj = 0; j < cols_; ++j) {
                if (j == col) continue;
                r.at(ri, rj) = at(i, j);
                ++rj;
            }
            ++ri;
        }
        return r;
    }

    void require_same_ring(const Matrix& o) const {
        if (!ring_.same_ring(o.ring_))
            raise(errc::ring_mismatch, ring_.spec() + " vs " + o.ring_.spec());
    }

private:
    void require_same_shape(const Matrix& o) const {
        require_same_ring(o);
        if (rows_ != o.rows_ || cols_ != o.cols_)
            raise(errc::dimension_mismatch, "matrix shape mismatch");
    }

    static Element det_cofactor(const Matrix& m) {
        size_t k = m.rows_;
        const R& ring = m.ring_;
        if (k == 1) return m.at(0, 0);
        if (k == 2)
            return ring.sub(ring.mul(m.at(0, 0), m.at(1, 1)), ring.mul(m.at(0, 1), m.at(1, 0)));
        Element acc = ring.zero();
        for (size_t j = 0; j < k; ++j) {
            if (ring.is_zero(m.at(0, j))) continue;
            Element term = ring.mul(m.at(0, j), det_cofactor(m.minor_iter(0, j)));
            acc = (j % 2 == 0) ? ring.add(acc, term) : ring.sub(acc, term);
        }
        return acc;
    }

    // Fraction-free single-step Bareiss elimination with row pivoting; the
    // division by the previous pivot is exact over an integral domain.
    static Element det_bareiss(const Matrix& m) {
        const R& ring = m.ring_;
        size_t k = m.rows_;
        std::vector<Element> a = m.e_;
        auto idx = [k](size_t i, size_t j) { return i * k + j; };
        bool negate = false;
        Element prev = ring.one();
        for (size_t col = 0; col + 1 < k; ++col) {
            size_t pivot = col;
            while (pivot < k && ring.is_zero(a[idx(pivot, col)])) ++pivot;
            if (pivot == k) return ring.zero();
            if (pivot != col) {
                for (size_t j = 0; j < k; ++j) std::swap(a[idx(pivot, j)], a[idx(col, j)]);
                negate = !negate;
            }
            const Element piv = a[idx(col, col)];
            for (size_t i = col + 1; i < k; ++i) {
                for (size_t j = col + 1; j < k; ++j) {
                    Element num = ring.sub(ring.mul(a[idx(i, j)], piv),
                                           ring.mul(a[idx(i, col)], a[idx(col, j)]));
                    a[idx(i, j)] = ring.divexact(num, prev);
                }
                a[idx(i, col)] = ring.zero();
            }
            prev = piv;
        }
        Element d = a[idx(k - 1, k - 1)];
        return negate ? ring.neg(d) : d;
    }

    R ring_;
    size_t rows_, cols_;
    std::vector<Element> e_;
};

// Lambda: A -> (A^T)^{-1}; an involutive automorphism of GL_n.
template <Ring R>
Matrix<R> contragredient(const Matrix<R>& m) {
    return m.transpose().inverse();
}

// Entrywise application of a ring automorphism.
template <Ring R>
Matrix<R> entrywise(const RingAutomorphism<R>& delta, const Matrix<R>& m) {
    Matrix<R> r = m;
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) r.at(i, j) = delta(m.at(i, j));
    return r;
}

// atr(X A X^T), which equals atr(A) * det(X): a congruence by X scales the
// antitrace by the determinant.
template <Ring R>
typename R::Element congruence_antitrace(const Matrix<R>& x, const Matrix<R>& a) {
    x.require_same_ring(a);
    if (x.rows() != 2 || x.cols() != 2 || a.rows() != 2 || a.cols() != 2)
        raise(errc::dimension_mismatch, "congruence antitrace requires 2x2 matrices");
    return (x * a * x.transpose()).antitrace();
}

// diag(X, x): the (n+1)x(n+1) matrix extending X by one corner entry.
template <Ring R>
Matrix<R> corner_extend(const Matrix<R>& x, const typename R::Element& corner) {
    size_t m = x.n();
    Matrix<R> r(x.ring(), m + 1, m + 1);
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j) r.at(i, j) = x.at(i, j);
    r.at(m, m) = corner;
    return r;
}

// 2x2 block partition with a k x k bottom-right block. Field names avoid
// the greek letters of the source derivation, which clash with the central
// map gamma and the ring automorphism delta.
template <Ring R>
struct BlockPartition {
    Matrix<R> tl, tr, bl, br;
};

template <Ring R>
BlockPartition<R> block_split(const Matrix<R>& m, size_t k) {
    size_t dim = m.n();
    if (k < 1 || k >= dim)
        raise(errc::dimension_mismatch, "block split index out of range");
    size_t top = dim - k;
    BlockPartition<R> p{Matrix<R>(m.ring(), top, top), Matrix<R>(m.ring(), top, k),
                        Matrix<R>(m.ring(), k, top), Matrix<R>(m.ring(), k, k)};
    for (size_t i = 0; i < dim; ++i)
        for (size_t j = 0; j < dim; ++j) {
            if (i < top && j < top)
                p.tl.at(i, j) = m.at(i, j);
            else if (i < top)
                p.tr.at(i, j - top) = m.at(i, j);
            else if (j < top)
                p.bl.at(i - top, j) = m.at(i, j);
            else
                p.br.at(i - top, j - top) = m.at(i, j);
        }
    return p;
}

template <Ring R>
Matrix<R> block_recompose(const BlockPartition<R>& p) {
    size_t top = p.tl.rows(), k = p.br.rows();
    Matrix<R> m(p.tl.ring(), top + k, top + k);
    for (size_t i = 0; i < top + k; ++i)
        for (size_t j = 0; j < top + k; ++j) {
            if (i < top && j < top)
                m.at(i, j) = p.tl.at(i, j);
            else if (i < top)
                m.at(i, j) = p.tr.at(i, j - top);
            else if (j < top)
                m.at(i, j) = p.bl.at(i - top, j);
            else
                m.at(i, j) = p.br.at(i - top, j - top);
        }
    return m;
}

// Entrywise transport into another ring through fn (e.g. reduction of an
// integer matrix mod p).
template <Ring R1, Ring R2, typename Fn>
Matrix<R2> map_matrix(const Matrix<R1>& m, const R2& target, Fn&& fn) {
    Matrix<R2> r(target, m.rows(), m.cols());
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) r.at(i, j) = fn(m.at(i, j));
    return r;
}

// Matrix literals: rows separated by ';', entries by ',', each entry in the
// ring's element grammar, e.g. "1,1;0,1".
template <Ring R>
Matrix<R> parse_matrix(const R& ring, std::string_view s) {
    std::vector<std::vector<typename R::Element>> rows;
    size_t start = 0;
    auto parse_row = [&](std::string_view row) {
        std::vector<typename R::Element> out;
        size_t p = 0;
        while (true) {
            size_t comma = row.find(',', p);
            std::string_view entry = row.substr(p, comma == std::string_view::npos ? comma : comma - p);
            size_t a = entry.find_first_not_of(" \t");
            if (a == std::string_view::npos) raise(errc::parse_error, "empty matrix entry");
            size_t b = entry.find_last_not_of(" \t");
            out.push_back(ring.parse(entry.substr(a, b - a + 1)));
            if (comma == std::string_view::npos) break;
            p = comma + 1;
        }
        return out;
    };
    while (true) {
        size_t semi = s.find(';', start);
        rows.push_back(parse_row(s.substr(start, semi == std::string_view::npos ? semi : semi - start)));
        if (semi == std::string_view::npos) break;
        start = semi + 1;
    }
    return Matrix<R>::from_rows(ring, rows);
}

template <Ring R>
std::string matrix_literal(const Matrix<R>& m) {
    std::string out;
    for (size_t i = 0; i < m.rows(); ++i) {
        if (i) out += ';';
        for (size_t j = 0; j < m.cols(); ++j) {
            if (j) out += ',';
            out += m.ring().to_string(m.at(i, j));
        }
    }
    return out;
}

} // namespace tconj
