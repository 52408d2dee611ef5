// Sparse exact linear algebra over the rationals: rank, kernel, image,
// quotient dimensions and linear solving. Everything is deterministic:
// elimination always pivots on the leftmost available column and the
// lowest-index row, so identical inputs give identical bases.
#pragma once

#include "ncp/rational.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace ncp {

using SparseVec = std::map<int, Rational>; // index -> nonzero coefficient

inline void vec_add_scaled(SparseVec &a, const Rational &c, const SparseVec &b)
{
    if (c.is_zero())
        return;
    for (auto &[i, x] : b) {
        auto it = a.find(i);
        if (it == a.end()) {
            a.emplace(i, c * x);
        } else {
            it->second += c * x;
            if (it->second.is_zero())
                a.erase(it);
        }
    }
}

struct SubspaceNotContained : std::runtime_error {
    SubspaceNotContained() : std::runtime_error("subspace vector not contained in ambient span") {}
};

class SparseMatrix {
public:
    SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols)
    {
        if (rows < 0 || cols < 0)
            throw std::invalid_argument("SparseMatrix: negative shape");
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    void add(int r, int c, const Rational &v)
    {
        if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
            throw std::out_of_range("SparseMatrix: index out of range");
        if (v.is_zero())
            return;
        auto it = entries_.find({r, c});
        if (it == entries_.end()) {
            entries_.emplace(std::make_pair(r, c), v);
        } else {
            it->second += v;
            if (it->second.is_zero())
                entries_.erase(it);
        }
    }

    Rational get(int r, int c) const
    {
        auto it = entries_.find({r, c});
        return it == entries_.end() ? Rational(0) : it->second;
    }

    const std::map<std::pair<int, int>, Rational> &entries() const { return entries_; }

    SparseVec apply(const SparseVec &v) const
    {
        SparseVec out;
        for (auto &[rc, x] : entries_) {
            auto it = v.find(rc.second);
            if (it == v.end())
                continue;
            Rational t = x * it->second;
            auto o = out.find(rc.first);
            if (o == out.end()) {
                out.emplace(rc.first, t);
            } else {
                o->second += t;
                if (o->second.is_zero())
                    out.erase(o);
            }
        }
        return out;
    }

private:
    int rows_, cols_;
    std::map<std::pair<int, int>, Rational> entries_;
};

struct SubspaceBasis {
    int ambient_dim = 0;
    std::vector<SparseVec> vectors; // linearly independent, nonzero

    int dim() const { return (int)vectors.size(); }
};

namespace detail {

// Row echelon form of a list of sparse row vectors, normalized so each
// pivot is 1 and is the only nonzero entry in its column (reduced form).
// Rows are consumed in order; pivot of each surviving row is its leftmost
// nonzero index, strictly increasing down the list.
struct Echelon {
    std::vector<SparseVec> rows;  // nonzero rows in reduced echelon form
    std::vector<int> pivot_cols;  // pivot column of rows[i]

    // reduce v against the current rows; returns the residue
    SparseVec residue(SparseVec v) const
    {
        for (size_t i = 0; i < rows.size(); ++i) {
            auto it = v.find(pivot_cols[i]);
            if (it != v.end())
                vec_add_scaled(v, -it->second, rows[i]);
        }
        return v;
    }

    // returns true if v enlarged the span
    bool insert(SparseVec v)
    {
        v = residue(std::move(v));
        if (v.empty())
            return false;
        int p = v.begin()->first;
        Rational inv = Rational(1) / v.begin()->second;
        for (auto &[i, x] : v)
            x *= inv;
        // back-substitute into earlier rows, keep pivot order sorted
        for (size_t i = 0; i < rows.size(); ++i) {
            auto it = rows[i].find(p);
            if (it != rows[i].end())
                vec_add_scaled(rows[i], -it->second, v);
        }
        size_t pos = 0;
        while (pos < rows.size() && pivot_cols[pos] < p)
            ++pos;
        rows.insert(rows.begin() + pos, std::move(v));
        pivot_cols.insert(pivot_cols.begin() + pos, p);
        return true;
    }

    bool contains(SparseVec v) const { return residue(std::move(v)).empty(); }
};

} // namespace detail

struct RankKernelImage {
    int rank = 0;
    SubspaceBasis kernel; // basis of {v : m v = 0}, ambient = cols
    SubspaceBasis image;  // basis of the column space, ambient = rows
};

inline RankKernelImage rank_kernel_image(const SparseMatrix &m)
{
    // Gather columns, eliminate left to right. Augment each column with its
    // coordinate index so kernel combinations fall out of the elimination.
    int n = m.cols();
    std::vector<SparseVec> cols(n);
    for (auto &[rc, x] : m.entries())
        cols[rc.second][rc.first] = x;

    RankKernelImage out;
    out.kernel.ambient_dim = n;
    out.image.ambient_dim = m.rows();

    // Reduce each column against prior pivot columns, recording the
    // coefficients used; a column that reduces to zero yields a kernel vector.
    std::vector<SparseVec> pivot_cols_orig; // reduced pivot columns
    std::vector<SparseVec> pivot_coords;    // their coordinates in terms of input columns
    for (int j = 0; j < n; ++j) {
        SparseVec v = cols[j];
        SparseVec coord;
        coord[j] = Rational(1);
        for (size_t i = 0; i < pivot_cols_orig.size(); ++i) {
            if (v.empty())
                break;
            int p = pivot_cols_orig[i].begin()->first;
            auto it = v.find(p);
            if (it == v.end())
                continue;
            Rational c = -(it->second / pivot_cols_orig[i].begin()->second);
            vec_add_scaled(v, c, pivot_cols_orig[i]);
            vec_add_scaled(coord, c, pivot_coords[i]);
        }
        if (v.empty()) {
            out.kernel.vectors.push_back(std::move(coord));
        } else {
            pivot_cols_orig.push_back(std::move(v));
            pivot_coords.push_back(std::move(coord));
            out.image.vectors.push_back(cols[j]); // original column spans image
            ++out.rank;
        }
    }
    return out;
}

// Solve m x = b; returns a particular solution or nullopt.
inline std::optional<SparseVec> solve(const SparseMatrix &m, const SparseVec &b)
{
    int n = m.cols();
    std::vector<SparseVec> cols(n);
    for (auto &[rc, x] : m.entries())
        cols[rc.second][rc.first] = x;

    std::vector<SparseVec> pivots;
    std::vector<SparseVec> coords;
    for (int j = 0; j < n; ++j) {
        SparseVec v = cols[j];
        SparseVec coord;
        coord[j] = Rational(1);
        for (size_t i = 0; i < pivots.size(); ++i) {
            auto it = v.find(pivots[i].begin()->first);
            if (it == v.end())
                continue;
            Rational c = -(it->second / pivots[i].begin()->second);
            vec_add_scaled(v, c, pivots[i]);
            vec_add_scaled(coord, c, coords[i]);
        }
        if (!v.empty()) {
            pivots.push_back(std::move(v));
            coords.push_back(std::move(coord));
        }
    }
    SparseVec r = b, x;
    for (size_t i = 0; i < pivots.size(); ++i) {
        auto it = r.find(pivots[i].begin()->first);
        if (it == r.end())
            continue;
        Rational c = it->second / pivots[i].begin()->second;
        vec_add_scaled(r, -c, pivots[i]);
        vec_add_scaled(x, c, coords[i]);
    }
    if (!r.empty())
        return std::nullopt;
    return x;
}

inline int subspace_rank(const SubspaceBasis &s)
{
    detail::Echelon ech;
    for (auto &v : s.vectors)
        ech.insert(v);
    return (int)ech.rows.size();
}

// dim(span(ambient)) - dim(span(sub)); throws if sub is not contained.
inline int quotient_dim(const SubspaceBasis &ambient, const SubspaceBasis &sub)
{
    detail::Echelon amb;
    for (auto &v : ambient.vectors)
        amb.insert(v);
    detail::Echelon s;
    for (auto &v : sub.vectors) {
        if (!amb.contains(v))
            throw SubspaceNotContained();
        s.insert(v);
    }
    return (int)amb.rows.size() - (int)s.rows.size();
}

// Ambient vectors completing sub to a basis of span(ambient).
inline std::vector<SparseVec> quotient_complement(const SubspaceBasis &ambient,
                                                  const SubspaceBasis &sub)
{
    detail::Echelon amb;
    for (auto &v : ambient.vectors)
        amb.insert(v);
    detail::Echelon s;
    for (auto &v : sub.vectors) {
        if (!amb.contains(v))
            throw SubspaceNotContained();
        s.insert(v);
    }
    std::vector<SparseVec> comp;
    for (auto &v : ambient.vectors)
        if (s.insert(v))
            comp.push_back(v);
    return comp;
}

} // namespace ncp
