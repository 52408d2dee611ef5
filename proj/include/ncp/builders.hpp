// Constructors for the example coalgebras: exterior coalgebras with the
// shuffle coproduct, duals of 3d/4d Sklyanin algebras and of Yang-Mills
// algebras (built from their printed relation lists via exact quotient
// algebra), and the quadratic Koszul dual of an arbitrary relation subspace.
#pragma once

#include "ncp/coalgebra.hpp"
#include "ncp/linalg.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ncp {

struct BadParameters : std::invalid_argument {
    explicit BadParameters(const std::string &m) : std::invalid_argument(m) {}
};
struct CutoffRequired : std::invalid_argument {
    CutoffRequired() : std::invalid_argument("quadratic_koszul_dual requires a weight cutoff") {}
};

namespace qdetail {

inline long ipow(long b, int e)
{
    long r = 1;
    while (e-- > 0)
        r *= b;
    return r;
}

// words over {0..nvars-1} of length k <-> flat indices in V^{(x)k}
inline long flatten(const std::vector<int> &w, int nvars)
{
    long idx = 0;
    for (int c : w)
        idx = idx * nvars + c;
    return idx;
}
inline std::vector<int> unflatten(long idx, int nvars, int k)
{
    std::vector<int> w(k);
    for (int i = k - 1; i >= 0; --i) {
        w[i] = (int)(idx % nvars);
        idx /= nvars;
    }
    return w;
}

inline SparseVec tensor_concat(const SparseVec &a, const SparseVec &b, int kb, int nvars)
{
    SparseVec out;
    long shift = ipow(nvars, kb);
    for (auto &[ia, ca] : a)
        for (auto &[ib, cb] : b) {
            Rational v = ca * cb;
            if (!v.is_zero())
                out[ia * shift + ib] = v;
        }
    return out;
}

} // namespace qdetail

// T(V) / <rels> for homogeneous relations of degree N, tracked through a
// fixed top degree, with user-chosen (verified) quotient bases per degree.
class GradedQuotientAlgebra {
public:
    GradedQuotientAlgebra(int nvars, int reldeg, std::vector<SparseVec> rels, int maxdeg)
        : nvars_(nvars), reldeg_(reldeg), rels_(std::move(rels)), blocks_(maxdeg + 1)
    {
        for (int k = 0; k <= maxdeg; ++k)
            build_ideal(k);
    }

    int nvars() const { return nvars_; }
    int maxdeg() const { return (int)blocks_.size() - 1; }

    int quotient_dim(int k) const
    {
        return (int)(qdetail::ipow(nvars_, k) - ideal_rank(k));
    }

    // declare the quotient basis in degree k; vectors live in V^{(x)k}
    void set_basis(int k, std::vector<SparseVec> basis)
    {
        auto &blk = blocks_.at(k);
        if ((int)basis.size() != quotient_dim(k))
            throw BadParameters("quotient basis in degree " + std::to_string(k) +
                                " has wrong size (expected " +
                                std::to_string(quotient_dim(k)) + ", got " +
                                std::to_string(basis.size()) + ")");
        detail::Echelon ech = blk.ideal_ech;
        for (auto &v : basis)
            if (!ech.insert(v))
                throw BadParameters("quotient basis in degree " + std::to_string(k) +
                                    " is not independent modulo the relation ideal");
        blk.basis = std::move(basis);
    }
    void set_monomial_basis(int k, const std::vector<std::vector<int>> &monos)
    {
        std::vector<SparseVec> basis;
        for (auto &m : monos) {
            if ((int)m.size() != k)
                throw BadParameters("monomial length mismatch");
            basis.push_back(SparseVec{{(int)qdetail::flatten(m, nvars_), Rational(1)}});
        }
        set_basis(k, std::move(basis));
    }

    const std::vector<SparseVec> &basis(int k) const { return blocks_.at(k).basis; }

    // quotient coordinates of a vector in V^{(x)k}
    SparseVec reduce(int k, const SparseVec &v) const
    {
        const auto &blk = blocks_.at(k);
        int nb = (int)blk.basis.size();
        if (v.empty())
            return {};
        long dim = qdetail::ipow(nvars_, k);
        SparseMatrix m((int)dim, nb + (int)blk.ideal.size());
        for (int j = 0; j < nb; ++j)
            for (auto &[i, c] : blk.basis[j])
                m.add(i, j, c);
        for (size_t j = 0; j < blk.ideal.size(); ++j)
            for (auto &[i, c] : blk.ideal[j])
                m.add(i, nb + (int)j, c);
        auto sol = solve(m, v);
        if (!sol)
            throw std::logic_error("GradedQuotientAlgebra: reduce failed (basis incomplete?)");
        SparseVec out;
        for (auto &[j, c] : *sol)
            if (j < nb && !c.is_zero())
                out[j] = c;
        return out;
    }

    // product of two quotient basis elements, as quotient coordinates
    SparseVec multiply(int p, int i, int q, int j) const
    {
        if (p + q > maxdeg())
            throw std::out_of_range("GradedQuotientAlgebra: product beyond tracked degree");
        SparseVec t = qdetail::tensor_concat(blocks_[p].basis.at(i), blocks_[q].basis.at(j), q,
                                             nvars_);
        return reduce(p + q, t);
    }

private:
    struct Block {
        std::vector<SparseVec> ideal; // spanning set of the ideal's degree-k slice
        detail::Echelon ideal_ech;
        std::vector<SparseVec> basis;
    };

    int nvars_, reldeg_;
    std::vector<SparseVec> rels_;
    std::vector<Block> blocks_;

    void build_ideal(int k)
    {
        auto &blk = blocks_[k];
        if (k < reldeg_)
            return;
        for (int i = 0; i + reldeg_ <= k; ++i) {
            int j = k - reldeg_ - i;
            long ni = qdetail::ipow(nvars_, i), nj = qdetail::ipow(nvars_, j);
            for (long u = 0; u < ni; ++u)
                for (auto &r : rels_)
                    for (long w = 0; w < nj; ++w) {
                        SparseVec left{{(int)u, Rational(1)}};
                        SparseVec right{{(int)w, Rational(1)}};
                        SparseVec v = qdetail::tensor_concat(left, r, reldeg_, nvars_);
                        v = qdetail::tensor_concat(v, right, j, nvars_);
                        if (blk.ideal_ech.insert(v))
                            blk.ideal.push_back(std::move(v));
                    }
        }
    }

    int ideal_rank(int k) const { return (int)blocks_.at(k).ideal_ech.rows.size(); }
};

// ---------------------------------------------------------------------------
// exterior coalgebra on m generators (shuffle coproduct, Delta_n = 0 for n!=2)

inline std::string subset_id(const std::vector<int> &s)
{
    if (s.empty())
        return "e";
    std::string id = "m(";
    for (size_t i = 0; i < s.size(); ++i) {
        if (i)
            id += ",";
        id += "v" + std::to_string(s[i] + 1);
    }
    return id + ")";
}

inline AInfCoalgebra exterior_coalgebra(int m)
{
    if (m < 1)
        throw BadParameters("exterior_coalgebra: m must be >= 1");
    AInfCoalgebra c;
    // subsets ordered by size, then lexicographically
    std::vector<std::vector<int>> subsets;
    for (int size = 0; size <= m; ++size) {
        std::function<void(std::vector<int> &, int)> rec = [&](std::vector<int> &cur, int from) {
            if ((int)cur.size() == size) {
                subsets.push_back(cur);
                return;
            }
            for (int i = from; i < m; ++i) {
                cur.push_back(i);
                rec(cur, i + 1);
                cur.pop_back();
            }
        };
        std::vector<int> cur;
        rec(cur, 0);
    }
    std::map<std::vector<int>, int> idx;
    for (auto &s : subsets)
        idx[s] = c.add_generator(subset_id(s), (int)s.size(), (int)s.size());
    c.set_coaugmentation(idx[{}]);
    c.set_counit(idx[{}], Rational(1));

    // shuffle coproduct: Delta(mu(v_S)) = sum over splittings S = P u Q of
    // sgn(P,Q) mu(v_P) (x) mu(v_Q), sign of the (p, n-p)-shuffle
    for (auto &s : subsets) {
        int n = (int)s.size();
        for (long mask = 0; mask < (1L << n); ++mask) {
            std::vector<int> pset, qset;
            for (int i = 0; i < n; ++i)
                ((mask >> i) & 1 ? pset : qset).push_back(s[i]);
            // sign of the permutation sorting (P, Q) back to S; both parts are
            // increasing, so count inversions between blocks
            long inv = 0;
            for (int p : pset)
                for (int q : qset)
                    if (q < p)
                        ++inv;
            c.add_coproduct_term(2, idx[s], c.word({idx[pset], idx[qset]}),
                                 Rational((inv & 1) ? -1 : 1));
        }
    }

    CyclicPairing pairing;
    pairing.d = m;
    for (auto &s : subsets) {
        for (auto &t : subsets) {
            if ((int)(s.size() + t.size()) != m)
                continue;
            // nonzero only if s and t are disjoint (then they unite to V)
            std::vector<int> merged = s;
            merged.insert(merged.end(), t.begin(), t.end());
            long inv = 0;
            bool dup = false;
            for (size_t i = 0; i < merged.size(); ++i)
                for (size_t j = i + 1; j < merged.size(); ++j) {
                    if (merged[i] == merged[j])
                        dup = true;
                    if (merged[i] > merged[j])
                        ++inv;
                }
            if (dup)
                continue;
            pairing.set(idx[s], idx[t], Rational((inv & 1) ? -1 : 1));
        }
    }
    c.attach_pairing(std::move(pairing));
    return c;
}

// ---------------------------------------------------------------------------
// signed transpose: coalgebra whose dualize() gives back the algebra

inline AInfCoalgebra transpose_algebra(const AInfAlgebra &a)
{
    AInfCoalgebra c;
    for (auto &g : a.basis)
        c.add_generator(g.id, g.degree, g.weight);
    c.set_coaugmentation(a.unit);
    for (size_t i = 0; i < a.basis.size(); ++i)
        c.set_counit((int)i, a.augmentation[i]);
    for (auto &[n, table] : a.products) {
        for (auto &[w, out] : table) {
            long e = 0;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    e += (long)(w.letters[j].degree & 1) * (w.letters[i].degree & 1);
            Rational sign((e & 1) ? -1 : 1);
            for (auto &[ow, oc] : out.terms())
                c.add_coproduct_term(n, ow.letters[0].ord, w, oc * sign);
        }
    }
    if (a.pairing)
        c.attach_pairing(dual_pairing(a.basis, *a.pairing));
    return c;
}

// ---------------------------------------------------------------------------
// Sklyanin duals: quotient algebra from the printed relations, then the
// signed transpose with the "scalar of uv with respect to the top element"
// pairing.

namespace qdetail {

// assemble the dual coalgebra of a finite graded algebra presented by a
// quotient with chosen bases; names[k][i] labels basis(k)[i]
inline AInfCoalgebra dual_of_quotient(const GradedQuotientAlgebra &quot, int topdeg,
                                      const std::vector<std::vector<std::string>> &names,
                                      const std::vector<int> &weight_of_degree)
{
    AInfAlgebra a;
    std::vector<std::vector<int>> ord(topdeg + 1); // (degree, index) -> basis ord
    int count = 0;
    for (int k = 0; k <= topdeg; ++k) {
        ord[k].resize(quot.basis(k).size());
        for (size_t i = 0; i < quot.basis(k).size(); ++i) {
            a.basis.push_back(Generator{names[k][i], k, weight_of_degree[k], count});
            ord[k][i] = count++;
        }
    }
    a.unit = ord[0][0];
    a.augmentation.assign(count, Rational(0));
    a.augmentation[a.unit] = Rational(1);

    for (int p = 0; p <= topdeg; ++p)
        for (int q = 0; p + q <= topdeg; ++q)
            for (size_t i = 0; i < quot.basis(p).size(); ++i)
                for (size_t j = 0; j < quot.basis(q).size(); ++j) {
                    SparseVec prod = quot.multiply(p, (int)i, q, (int)j);
                    if (prod.empty())
                        continue;
                    TensorWord in({a.basis[ord[p][i]], a.basis[ord[q][j]]});
                    FreeElement out;
                    for (auto &[l, coeff] : prod)
                        out.add(TensorWord({a.basis[ord[p + q][l]]}), coeff);
                    a.products[2][in] = out;
                }

    // pairing: scalar of uv with respect to the (1-dimensional) top component
    if ((int)quot.basis(topdeg).size() != 1)
        throw BadParameters("top degree component is not one-dimensional");
    CyclicPairing pairing;
    pairing.d = topdeg;
    for (int p = 0; p <= topdeg; ++p) {
        int q = topdeg - p;
        for (size_t i = 0; i < quot.basis(p).size(); ++i)
            for (size_t j = 0; j < quot.basis(q).size(); ++j) {
                SparseVec prod = quot.multiply(p, (int)i, q, (int)j);
                auto it = prod.find(0);
                if (it != prod.end())
                    pairing.set(ord[p][i], ord[q][j], it->second);
            }
    }
    a.pairing = pairing;
    return transpose_algebra(a);
}

inline SparseVec word_vec(std::initializer_list<int> letters, int nvars)
{
    return SparseVec{{(int)flatten(std::vector<int>(letters), nvars), Rational(1)}};
}

} // namespace qdetail

inline AInfCoalgebra sklyanin3_dual(const Rational &a, const Rational &b, const Rational &c)
{
    using qdetail::word_vec;
    int n = 3;
    // relations of A^! in the letters xi1, xi2, xi3 (0-indexed)
    auto rel = [&](std::initializer_list<int> w1, const Rational &c1,
                   std::initializer_list<int> w2, const Rational &c2) {
        SparseVec v;
        vec_add_scaled(v, c1, word_vec(w1, n));
        vec_add_scaled(v, c2, word_vec(w2, n));
        return v;
    };
    std::vector<SparseVec> rels = {
        rel({1, 2}, c, {2, 1}, -b), rel({0, 0}, b, {1, 2}, -a),
        rel({2, 0}, c, {0, 2}, -b), rel({1, 1}, b, {2, 0}, -a),
        rel({0, 1}, c, {1, 0}, -b), rel({2, 2}, b, {0, 1}, -a),
    };
    GradedQuotientAlgebra quot(n, 2, rels, 3);
    if (quot.quotient_dim(1) != 3 || quot.quotient_dim(2) != 3 || quot.quotient_dim(3) != 1)
        throw BadParameters("sklyanin3: parameters give degenerate component dimensions");
    quot.set_monomial_basis(0, {{}});
    quot.set_monomial_basis(1, {{0}, {1}, {2}});
    quot.set_monomial_basis(2, {{0, 0}, {1, 1}, {2, 2}});
    quot.set_monomial_basis(3, {{0, 1, 2}});
    std::vector<std::vector<std::string>> names = {
        {"e"},
        {"xi1", "xi2", "xi3"},
        {"xi1xi1", "xi2xi2", "xi3xi3"},
        {"xi1xi2xi3"},
    };
    return qdetail::dual_of_quotient(quot, 3, names, {0, 1, 2, 3});
}

inline AInfCoalgebra sklyanin4_dual(const Rational &al, const Rational &be, const Rational &ga)
{
    using qdetail::word_vec;
    if (al + be + ga + al * be * ga != Rational(0))
        throw BadParameters("sklyanin4: alpha+beta+gamma+alpha*beta*gamma must vanish");
    for (const Rational &t : {al, be, ga})
        if (t == Rational(0) || t == Rational(1) || t == Rational(-1))
            throw BadParameters("sklyanin4: parameters must avoid 0 and +-1");
    int n = 4;
    auto rel3 = [&](std::initializer_list<int> w1, const Rational &c1,
                    std::initializer_list<int> w2, const Rational &c2,
                    std::initializer_list<int> w3, const Rational &c3) {
        SparseVec v;
        vec_add_scaled(v, c1, word_vec(w1, n));
        vec_add_scaled(v, c2, word_vec(w2, n));
        vec_add_scaled(v, c3, word_vec(w3, n));
        return v;
    };
    Rational one(1);
    std::vector<SparseVec> rels = {
        word_vec({0, 0}, n),
        word_vec({1, 1}, n),
        word_vec({2, 2}, n),
        word_vec({3, 3}, n),
        rel3({2, 3}, Rational(2), {0, 1}, al + one, {1, 0}, -(al - one)),
        rel3({3, 2}, Rational(2), {0, 1}, al - one, {1, 0}, -(al + one)),
        rel3({3, 1}, Rational(2), {0, 2}, be + one, {2, 0}, -(be - one)),
        rel3({1, 3}, Rational(2), {0, 2}, be - one, {2, 0}, -(be + one)),
        rel3({1, 2}, Rational(2), {0, 3}, ga + one, {3, 0}, -(ga - one)),
        rel3({2, 1}, Rational(2), {0, 3}, ga - one, {3, 0}, -(ga + one)),
    };
    GradedQuotientAlgebra quot(n, 2, rels, 4);
    if (quot.quotient_dim(1) != 4 || quot.quotient_dim(2) != 6 || quot.quotient_dim(3) != 4 ||
        quot.quotient_dim(4) != 1)
        throw BadParameters("sklyanin4: parameters give degenerate component dimensions");
    quot.set_monomial_basis(0, {{}});
    quot.set_monomial_basis(1, {{0}, {1}, {2}, {3}});
    quot.set_monomial_basis(2, {{0, 1}, {0, 2}, {0, 3}, {1, 0}, {2, 0}, {3, 0}});
    quot.set_monomial_basis(3, {{0, 1, 0}, {0, 2, 0}, {0, 3, 0}, {1, 0, 1}});
    quot.set_monomial_basis(4, {{0, 1, 0, 1}});
    std::vector<std::vector<std::string>> names = {
        {"e"},
        {"xi0", "xi1", "xi2", "xi3"},
        {"xi0xi1", "xi0xi2", "xi0xi3", "xi1xi0", "xi2xi0", "xi3xi0"},
        {"xi0xi1xi0", "xi0xi2xi0", "xi0xi3xi0", "xi1xi0xi1"},
        {"xi0xi1xi0xi1"},
    };
    return qdetail::dual_of_quotient(quot, 4, names, {0, 1, 2, 3, 4});
}

// ---------------------------------------------------------------------------
// Yang-Mills dual: 3-Koszul, operators mu_2 and mu_3 through the homogeneous
// dual algebra YM(n)^v = T(V*)/<S-perp>, components (0,1,3,4) relabelled to
// degrees (0,1,2,3); metric is the identity.

inline AInfCoalgebra yang_mills_dual(int n)
{
    if (n < 2)
        throw BadParameters("yang_mills: n must be >= 2");
    using qdetail::flatten;
    // S spanned by sum_i (x_i x_i x_j - 2 x_i x_j x_i + x_j x_i x_i); the
    // relations of the homogeneous dual are its orthogonal complement
    SparseMatrix smat(n, (int)qdetail::ipow(n, 3));
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            smat.add(j, (int)flatten({i, i, j}, n), Rational(1));
            smat.add(j, (int)flatten({i, j, i}, n), Rational(-2));
            smat.add(j, (int)flatten({j, i, i}, n), Rational(1));
        }
    auto sperp = rank_kernel_image(smat).kernel.vectors;

    GradedQuotientAlgebra quot(n, 3, sperp, 4);
    quot.set_monomial_basis(0, {{}});
    {
        std::vector<std::vector<int>> degree1, degree2;
        for (int i = 0; i < n; ++i)
            degree1.push_back({i});
        quot.set_monomial_basis(1, degree1);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                degree2.push_back({i, j});
        quot.set_monomial_basis(2, degree2);
    }
    // degree 3 basis x_i z, degree 4 basis z^2, with z = sum_i x_i x_i
    {
        std::vector<SparseVec> b3;
        for (int i = 0; i < n; ++i) {
            SparseVec v;
            for (int j = 0; j < n; ++j)
                v[(int)flatten({i, j, j}, n)] = Rational(1);
            b3.push_back(std::move(v));
        }
        quot.set_basis(3, std::move(b3));
        SparseVec z2;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                z2[(int)flatten({i, i, j, j}, n)] = Rational(1);
        quot.set_basis(4, {z2});
    }

    AInfAlgebra a;
    // YM(n)! components: degree 0,1,2,3 <-> YM^v degrees 0,1,3,4
    std::vector<int> vdeg = {0, 1, 3, 4};
    std::vector<std::vector<int>> ord(4);
    int count = 0;
    for (int k = 0; k < 4; ++k) {
        ord[k].resize(quot.basis(vdeg[k]).size());
        for (size_t i = 0; i < ord[k].size(); ++i) {
            std::string id = k == 0 ? "e"
                           : k == 1 ? "x" + std::to_string(i + 1)
                           : k == 2 ? "x" + std::to_string(i + 1) + "z"
                                    : "zz";
            a.basis.push_back(Generator{id, k, vdeg[k], count});
            ord[k][i] = count++;
        }
    }
    a.unit = ord[0][0];
    a.augmentation.assign(count, Rational(0));
    a.augmentation[a.unit] = Rational(1);

    auto emit = [&](int karity, const TensorWord &in, int outdeg, const SparseVec &coords) {
        if (coords.empty())
            return;
        FreeElement out;
        for (auto &[l, coeff] : coords)
            out.add(TensorWord({a.basis[ord[outdeg][l]]}), coeff);
        a.products[karity][in] = out;
    };
    // mu_2: products through YM^v whenever the result lands in a retained
    // component (reduced inputs of v-degrees (1,3) and (3,1); unit separately)
    for (int k = 0; k < 4; ++k)
        for (size_t i = 0; i < ord[k].size(); ++i) {
            emit(2, TensorWord({a.basis[a.unit], a.basis[ord[k][i]]}), k,
                 SparseVec{{(int)i, Rational(1)}});
            if (k > 0)
                emit(2, TensorWord({a.basis[ord[k][i]], a.basis[a.unit]}), k,
                     SparseVec{{(int)i, Rational(1)}});
        }
    for (size_t i = 0; i < ord[1].size(); ++i)
        for (size_t j = 0; j < ord[2].size(); ++j) {
            emit(2, TensorWord({a.basis[ord[1][i]], a.basis[ord[2][j]]}), 3,
                 quot.multiply(1, (int)i, 3, (int)j));
            emit(2, TensorWord({a.basis[ord[2][j]], a.basis[ord[1][i]]}), 3,
                 quot.multiply(3, (int)j, 1, (int)i));
        }
    // mu_3 on triples of degree-1 elements (zero whenever a unit is present)
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int l = 0; l < n; ++l) {
                SparseVec t = qdetail::tensor_concat(
                    qdetail::tensor_concat(quot.basis(1)[i], quot.basis(1)[j], 1, n),
                    quot.basis(1)[l], 1, n);
                emit(3, TensorWord({a.basis[ord[1][i]], a.basis[ord[1][j]], a.basis[ord[1][l]]}),
                     2, quot.reduce(3, t));
            }

    CyclicPairing pairing;
    pairing.d = 3;
    for (int p = 0; p < 4; ++p) {
        int q = 3 - p;
        for (size_t i = 0; i < ord[p].size(); ++i)
            for (size_t j = 0; j < ord[q].size(); ++j) {
                SparseVec prod = quot.reduce(
                    4, qdetail::tensor_concat(quot.basis(vdeg[p])[i], quot.basis(vdeg[q])[j],
                                              vdeg[q], n));
                auto it = prod.find(0);
                if (it != prod.end())
                    pairing.set(ord[p][i], ord[q][j], it->second);
            }
    }
    a.pairing = pairing;
    return transpose_algebra(a);
}

inline AInfCoalgebra builtin_coalgebra(const std::string &name,
                                       const std::vector<Rational> &params)
{
    if (name == "exterior") {
        if (params.size() != 1 || params[0].den() != 1)
            throw BadParameters("exterior takes an integer parameter m");
        return exterior_coalgebra((int)params[0].num().convert_to<long>());
    }
    if (name == "sklyanin3") {
        if (params.size() != 3)
            throw BadParameters("sklyanin3 takes parameters a,b,c");
        return sklyanin3_dual(params[0], params[1], params[2]);
    }
    if (name == "sklyanin4") {
        if (params.size() != 3)
            throw BadParameters("sklyanin4 takes parameters alpha,beta,gamma");
        return sklyanin4_dual(params[0], params[1], params[2]);
    }
    if (name == "yang_mills") {
        if (params.size() != 1 || params[0].den() != 1)
            throw BadParameters("yang_mills takes an integer parameter n");
        return yang_mills_dual((int)params[0].num().convert_to<long>());
    }
    throw BadParameters("unknown builtin coalgebra: " + name);
}

// ---------------------------------------------------------------------------
// quadratic Koszul dual: degree-n component is the intersection of the
// shifted relation spaces inside V^{(x)n}, with deconcatenation coproduct.
// No pairing is attached.

inline AInfCoalgebra quadratic_koszul_dual(int v_dim, const SubspaceBasis &relations,
                                           std::optional<int> cutoff)
{
    if (!cutoff)
        throw CutoffRequired();
    if (relations.ambient_dim != v_dim * v_dim)
        throw BadParameters("quadratic_koszul_dual: relations must live in V (x) V");
    int maxw = *cutoff;

    // components[n]: basis vectors of C_n inside V^{(x)n}
    std::vector<std::vector<SparseVec>> comp(maxw + 1);
    comp[0].push_back(SparseVec{{0, Rational(1)}});
    if (maxw >= 1)
        for (int i = 0; i < v_dim; ++i)
            comp[1].push_back(SparseVec{{i, Rational(1)}});
    for (int k = 2; k <= maxw; ++k) {
        // C_k = (C_{k-1} (x) V) intersect (V^{(x)k-2} (x) S)
        std::vector<SparseVec> left;
        for (auto &b : comp[k - 1])
            for (int i = 0; i < v_dim; ++i)
                left.push_back(qdetail::tensor_concat(b, SparseVec{{i, Rational(1)}}, 1, v_dim));
        std::vector<SparseVec> right;
        long prefix = qdetail::ipow(v_dim, k - 2);
        for (long u = 0; u < prefix; ++u)
            for (auto &r : relations.vectors)
                right.push_back(
                    qdetail::tensor_concat(SparseVec{{(int)u, Rational(1)}}, r, 2, v_dim));
        // intersection via the kernel of [L | -R]
        SparseMatrix m((int)qdetail::ipow(v_dim, k), (int)(left.size() + right.size()));
        for (size_t j = 0; j < left.size(); ++j)
            for (auto &[i, c] : left[j])
                m.add(i, (int)j, c);
        for (size_t j = 0; j < right.size(); ++j)
            for (auto &[i, c] : right[j])
                m.add(i, (int)(left.size() + j), -c);
        detail::Echelon seen;
        for (auto &kv : rank_kernel_image(m).kernel.vectors) {
            SparseVec v;
            for (auto &[j, c] : kv)
                if (j < (int)left.size())
                    vec_add_scaled(v, c, left[j]);
            if (!v.empty() && seen.insert(v))
                comp[k].push_back(std::move(v));
        }
    }

    AInfCoalgebra c;
    std::vector<std::vector<int>> ord(maxw + 1);
    for (int k = 0; k <= maxw; ++k)
        for (size_t i = 0; i < comp[k].size(); ++i) {
            std::string id = k == 0 ? "e" : "w" + std::to_string(k) + "_" + std::to_string(i);
            ord[k].push_back(c.add_generator(id, k, k));
        }
    c.set_coaugmentation(ord[0][0]);
    c.set_counit(ord[0][0], Rational(1));

    // deconcatenation: Delta_2 of a C_k vector splits as sum over p+q=k of its
    // expression in the basis of C_p (x) C_q (solvable by construction)
    for (int k = 0; k <= maxw; ++k)
        for (size_t i = 0; i < comp[k].size(); ++i) {
            for (int p = 0; p <= k; ++p) {
                int q = k - p;
                // columns: b_r (x) b_s over bases of C_p, C_q
                SparseMatrix m((int)qdetail::ipow(v_dim, k),
                               (int)(comp[p].size() * comp[q].size()));
                int col = 0;
                for (auto &br : comp[p])
                    for (auto &bs : comp[q]) {
                        for (auto &[l, cc] : qdetail::tensor_concat(br, bs, q, v_dim))
                            m.add((int)l, col, cc);
                        ++col;
                    }
                auto sol = solve(m, comp[k][i]);
                if (!sol)
                    throw std::logic_error("quadratic_koszul_dual: deconcatenation failed");
                for (auto &[j, cc] : *sol) {
                    int r = j / (int)comp[q].size(), s = j % (int)comp[q].size();
                    c.add_coproduct_term(2, ord[k][i], c.word({ord[p][r], ord[q][s]}), cc);
                }
            }
        }
    return c;
}

} // namespace ncp
