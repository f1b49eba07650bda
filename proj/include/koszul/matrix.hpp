#pragma once

#include <cassert>
#include <vector>

#include "koszul/common.hpp"

namespace koszul {

// Dense row-major matrix.  Entries are backend scalars; the backend context
// travels separately (see scalar.hpp).  Zero-row / zero-column shapes are
// legal and show up constantly as boundary terms of bounded complexes.
template <class E>
struct Mat {
    int rows = 0;
    int cols = 0;
    std::vector<E> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}

    E& operator()(int r, int c) {
        assert(r >= 0 && r < rows && c >= 0 && c < cols);
        return a[static_cast<std::size_t>(r) * cols + c];
    }
    const E& operator()(int r, int c) const {
        assert(r >= 0 && r < rows && c >= 0 && c < cols);
        return a[static_cast<std::size_t>(r) * cols + c];
    }

    bool same_shape(const Mat& o) const { return rows == o.rows && cols == o.cols; }
    bool operator==(const Mat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

template <class E>
Mat<E> transpose(const Mat<E>& m) {
    Mat<E> t(m.cols, m.rows);
    for (int r = 0; r < m.rows; ++r)
        for (int c = 0; c < m.cols; ++c) t(c, r) = m(r, c);
    return t;
}

template <class E>
void set_block(Mat<E>& dst, int r0, int c0, const Mat<E>& src) {
    assert(r0 + src.rows <= dst.rows && c0 + src.cols <= dst.cols);
    for (int r = 0; r < src.rows; ++r)
        for (int c = 0; c < src.cols; ++c) dst(r0 + r, c0 + c) = src(r, c);
}

template <class E>
Mat<E> get_block(const Mat<E>& m, int r0, int c0, int nr, int nc) {
    Mat<E> b(nr, nc);
    for (int r = 0; r < nr; ++r)
        for (int c = 0; c < nc; ++c) b(r, c) = m(r0 + r, c0 + c);
    return b;
}

template <class E>
Mat<E> column(const Mat<E>& m, int c) {
    return get_block(m, 0, c, m.rows, 1);
}

// Sparse triplet form, used for basis elements of Hom-spaces.
template <class E>
struct SparseMat {
    int rows = 0;
    int cols = 0;
    struct Entry {
        int r, c;
        E v;
    };
    std::vector<Entry> entries;

    Mat<E> dense() const {
        Mat<E> m(rows, cols);
        for (const auto& e : entries) m(e.r, e.c) = e.v;
        return m;
    }
};

} // namespace koszul
