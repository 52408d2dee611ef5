// Finite-dimensional A-infinity coalgebras: graded basis, sparse coproducts
// Delta_n of degree n-2, counit, coaugmentation and an optional cyclic
// pairing of degree -d, together with the relation checkers and the
// dualization to a finite-dimensional A-infinity algebra.
//
// Conventions. Degrees are homological and the coalgebra basis carries its
// internal (unshifted) degree; the cobar module shifts by -1. The defining
// relation is
//
//   sum_{r+s+t=n} (-1)^{r+st} (id^r (x) Delta_s (x) id^t) Delta_{r+1+t} = 0,
//
// evaluated with the Koszul rule: moving Delta_s (parity s) past the first r
// tensor factors costs (-1)^{s * (their total degree)}. The cyclic pairing
// satisfies <v,w> = (-1)^{|v||w|} <w,v>, vanishes unless |v|+|w| = d, and
//
//   <a, b^1> b^2...b^r  =  (-1)^{r + |b^1|(|a|+r)} <b, a^r> a^1...a^{r-1}
//
// for every r with Delta_r != 0 (Sweedler notation; |b^1| = d - |a| on all
// surviving terms).
#pragma once

#include "ncp/linalg.hpp"
#include "ncp/tensor.hpp"

#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ncp {

struct NoPairing : std::runtime_error {
    NoPairing() : std::runtime_error("coalgebra has no cyclic pairing attached") {}
};

struct CyclicPairing {
    int d = 0; // pairing degree is -d
    std::map<std::pair<int, int>, Rational> entries;

    Rational eval(int i, int j) const
    {
        auto it = entries.find({i, j});
        return it == entries.end() ? Rational(0) : it->second;
    }
    void set(int i, int j, const Rational &v)
    {
        if (v.is_zero())
            entries.erase({i, j});
        else
            entries[{i, j}] = v;
    }
};

struct CheckReport {
    std::vector<std::string> violations;

    bool pass() const { return violations.empty(); }
    std::string str() const
    {
        if (pass())
            return "pass";
        std::string s;
        for (auto &v : violations)
            s += v + "\n";
        return s;
    }
};

class AInfCoalgebra {
public:
    AInfCoalgebra() = default;

    int add_generator(const std::string &id, int degree, int weight)
    {
        if (index_.count(id))
            throw std::invalid_argument("AInfCoalgebra: duplicate id " + id);
        int ord = (int)basis_.size();
        basis_.push_back(Generator{id, degree, weight, ord});
        index_[id] = ord;
        counit_.push_back(Rational(0));
        return ord;
    }

    int dim() const { return (int)basis_.size(); }
    const std::vector<Generator> &basis() const { return basis_; }
    const Generator &gen(int i) const { return basis_.at(i); }
    int index_of(const std::string &id) const
    {
        auto it = index_.find(id);
        if (it == index_.end())
            throw std::out_of_range("AInfCoalgebra: unknown id " + id);
        return it->second;
    }

    void set_counit(int i, const Rational &v) { counit_.at(i) = v; }
    const Rational &counit(int i) const { return counit_.at(i); }
    void set_coaugmentation(int i) { coaug_ = i; }
    int coaugmentation() const { return coaug_; }

    void set_coproduct(int n, int src, FreeElement value)
    {
        if (n < 1)
            throw std::invalid_argument("AInfCoalgebra: coproduct arity must be >= 1");
        auto &table = coproducts_[n];
        table.resize(dim());
        table.at(src) = std::move(value);
    }
    void add_coproduct_term(int n, int src, const TensorWord &dst, const Rational &coeff)
    {
        auto &table = coproducts_[n];
        table.resize(dim());
        table.at(src).add(dst, coeff);
    }

    // Delta_n on a basis element, as words of length n over the basis
    const FreeElement &delta(int n, int src) const
    {
        static const FreeElement empty;
        auto it = coproducts_.find(n);
        if (it == coproducts_.end() || src >= (int)it->second.size())
            return empty;
        return it->second[src];
    }
    // Delta_n with every term containing the coaugmentation dropped
    FreeElement delta_reduced(int n, int src) const
    {
        FreeElement out;
        for (auto &[w, c] : delta(n, src).terms()) {
            bool keep = true;
            for (auto &g : w.letters)
                if (g.ord == coaug_)
                    keep = false;
            if (keep)
                out.add(w, c);
        }
        return out;
    }
    std::vector<int> coproduct_arities() const
    {
        std::vector<int> out;
        for (auto &[n, table] : coproducts_) {
            for (auto &e : table)
                if (!e.is_zero()) {
                    out.push_back(n);
                    break;
                }
        }
        return out;
    }
    int max_arity() const
    {
        auto a = coproduct_arities();
        return a.empty() ? 0 : a.back();
    }

    // Apply Delta_s to letter p of a word over the basis (Koszul sign for
    // moving the arity-s operator past the first p letters).
    FreeElement apply_delta_at(int s, const TensorWord &w, int p) const
    {
        FreeElement out;
        int passed = 0;
        for (int i = 0; i < p; ++i)
            passed += w.letters[i].degree;
        int sign = (s & 1) && (passed & 1) ? -1 : 1;
        for (auto &[dw, dc] : delta(s, w.letters[p].ord).terms()) {
            TensorWord nw;
            nw.letters.insert(nw.letters.end(), w.letters.begin(), w.letters.begin() + p);
            nw.letters.insert(nw.letters.end(), dw.letters.begin(), dw.letters.end());
            nw.letters.insert(nw.letters.end(), w.letters.begin() + p + 1, w.letters.end());
            out.add(nw, dc * Rational(sign));
        }
        return out;
    }

    void attach_pairing(CyclicPairing p) { pairing_ = std::move(p); }
    bool has_pairing() const { return pairing_.has_value(); }
    const CyclicPairing &pairing() const
    {
        if (!pairing_)
            throw NoPairing();
        return *pairing_;
    }
    int cy_dim() const { return pairing().d; }

    TensorWord word(std::initializer_list<int> idx) const
    {
        TensorWord w;
        for (int i : idx)
            w.letters.push_back(gen(i));
        return w;
    }

private:
    std::vector<Generator> basis_;
    std::map<std::string, int> index_;
    std::map<int, std::vector<FreeElement>> coproducts_;
    std::vector<Rational> counit_;
    int coaug_ = 0;
    std::optional<CyclicPairing> pairing_;
};

// Transport a nondegenerate pairing across dualization. Under a ->
// <a,-> the pairing on the dual space is the blockwise inverse-transpose,
// with the graded-symmetry sign; applying it twice returns the original.
// This is what turns the trace form of a Frobenius algebra into the cyclic
// pairing of its dual coalgebra, and back.
inline CyclicPairing dual_pairing(const std::vector<Generator> &basis, const CyclicPairing &p)
{
    int d = p.d;
    CyclicPairing out;
    out.d = d;
    for (int k = 0; k <= d; ++k) {
        std::vector<int> rows, cols; // rows of degree k, columns of degree d-k
        for (size_t i = 0; i < basis.size(); ++i) {
            if (basis[i].degree == k)
                rows.push_back((int)i);
            if (basis[i].degree == d - k)
                cols.push_back((int)i);
        }
        if (rows.empty() || rows.size() != cols.size())
            continue;
        int n = (int)rows.size();
        SparseMatrix block(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                block.add(i, j, p.eval(rows[i], cols[j]));
        std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n, Rational(0)));
        for (int j = 0; j < n; ++j) {
            SparseVec e{{j, Rational(1)}};
            auto x = solve(block, e);
            if (!x)
                throw std::invalid_argument("dual_pairing: degenerate block at degree " +
                                            std::to_string(k));
            for (auto &[i, v] : *x)
                inv[i][j] = v;
        }
        int sign = (k & 1) && ((d - k) & 1) ? -1 : 1;
        for (int t = 0; t < n; ++t)
            for (int s = 0; s < n; ++s)
                if (!inv[t][s].is_zero())
                    out.set(rows[s], cols[t], inv[t][s] * Rational(sign));
    }
    return out;
}

// <x, y> for elements of C, bilinear in both slots
inline Rational pairing_eval(const AInfCoalgebra &c, const FreeElement &x, const FreeElement &y)
{
    const auto &p = c.pairing();
    Rational out(0);
    for (auto &[wx, cx] : x.terms())
        for (auto &[wy, cy] : y.terms()) {
            if (wx.length() != 1 || wy.length() != 1)
                throw std::invalid_argument("pairing_eval: arguments must lie in C");
            out += cx * cy * p.eval(wx.letters[0].ord, wy.letters[0].ord);
        }
    return out;
}

inline CheckReport check_ainf_coalgebra(const AInfCoalgebra &c)
{
    CheckReport rep;
    int maxn = c.max_arity();
    for (int src = 0; src < c.dim(); ++src) {
        for (int n = 1; n <= 2 * maxn - 1 && maxn > 0; ++n) {
            FreeElement acc;
            for (int s = 1; s <= n; ++s) {
                for (int r = 0; r + s <= n; ++r) {
                    int t = n - r - s;
                    FreeElement inner = c.delta(r + 1 + t, src);
                    if (inner.is_zero())
                        continue;
                    int outer_sign = ((r + s * t) & 1) ? -1 : 1;
                    for (auto &[w, coeff] : inner.terms()) {
                        FreeElement piece = c.apply_delta_at(s, w, r);
                        piece *= coeff * Rational(outer_sign);
                        acc += piece;
                    }
                }
            }
            if (!acc.is_zero())
                rep.violations.push_back("A-infinity relation fails at n=" + std::to_string(n) +
                                         " on " + c.gen(src).id + ": " + acc.str());
        }
        // counit axioms
        {
            Rational e1(0);
            for (auto &[w, coeff] : c.delta(1, src).terms())
                e1 += coeff * c.counit(w.letters[0].ord);
            if (!e1.is_zero())
                rep.violations.push_back("counit on Delta_1 fails on " + c.gen(src).id);

            // (eta (x) id) Delta_2(c) = c and (id (x) eta) Delta_2(c) = c
            FreeElement left, right, self(c.word({src}));
            for (auto &[w, coeff] : c.delta(2, src).terms()) {
                left.add(w.subword(1, 2), coeff * c.counit(w.letters[0].ord));
                right.add(w.subword(0, 1), coeff * c.counit(w.letters[1].ord));
            }
            if (left != self || right != self)
                rep.violations.push_back("counit on Delta_2 fails on " + c.gen(src).id);

            for (int n = 3; n <= maxn; ++n) {
                FreeElement acc;
                for (auto &[w, coeff] : c.delta(n, src).terms()) {
                    for (int p = 0; p < n; ++p) {
                        Rational e = c.counit(w.letters[p].ord);
                        if (e.is_zero())
                            continue;
                        TensorWord nw;
                        for (int q = 0; q < n; ++q)
                            if (q != p)
                                nw.letters.push_back(w.letters[q]);
                        acc.add(nw, coeff * e);
                    }
                }
                if (!acc.is_zero())
                    rep.violations.push_back("counit on Delta_" + std::to_string(n) +
                                             " fails on " + c.gen(src).id);
            }
        }
    }
    // coaugmentation: eta(e) = 1
    if (c.counit(c.coaugmentation()) != Rational(1))
        rep.violations.push_back("counit does not split the coaugmentation");
    return rep;
}

inline CheckReport check_cyclic_pairing(const AInfCoalgebra &c)
{
    CheckReport rep;
    const auto &p = c.pairing();
    int d = p.d;

    // graded symmetry and degree -d support
    for (auto &[ij, v] : p.entries) {
        auto [i, j] = ij;
        const Generator &gi = c.gen(i), &gj = c.gen(j);
        if (gi.degree + gj.degree != d)
            rep.violations.push_back("pairing entry <" + gi.id + "," + gj.id +
                                     "> off the degree-" + std::to_string(d) + " diagonal");
        int sign = (gi.degree & 1) && (gj.degree & 1) ? -1 : 1;
        if (p.eval(j, i) != v * Rational(sign))
            rep.violations.push_back("pairing not graded symmetric at <" + gi.id + "," + gj.id +
                                     ">");
    }

    // nondegeneracy per degree block
    for (int deg = 0; deg <= d; ++deg) {
        std::vector<int> rowsv, colsv;
        for (int i = 0; i < c.dim(); ++i) {
            if (c.gen(i).degree == deg)
                rowsv.push_back(i);
            if (c.gen(i).degree == d - deg)
                colsv.push_back(i);
        }
        if (rowsv.size() != colsv.size()) {
            rep.violations.push_back("pairing blocks at degree " + std::to_string(deg) +
                                     " have mismatched dimensions");
            continue;
        }
        if (rowsv.empty())
            continue;
        SparseMatrix m((int)rowsv.size(), (int)colsv.size());
        for (size_t a = 0; a < rowsv.size(); ++a)
            for (size_t b = 0; b < colsv.size(); ++b)
                m.add((int)a, (int)b, p.eval(rowsv[a], colsv[b]));
        if (rank_kernel_image(m).rank != (int)rowsv.size())
            rep.violations.push_back("pairing degenerate on degree-" + std::to_string(deg) +
                                     " block");
    }

    // cyclic identity, exhaustively over basis pairs and coproduct arities
    for (int r : c.coproduct_arities()) {
        for (int a = 0; a < c.dim(); ++a)
            for (int b = 0; b < c.dim(); ++b) {
                FreeElement lhs;
                for (auto &[w, coeff] : c.delta(r, b).terms()) {
                    Rational pr = p.eval(a, w.letters[0].ord);
                    if (pr.is_zero())
                        continue;
                    lhs.add(w.subword(1, r), coeff * pr);
                }
                FreeElement rhs;
                int b1deg = d - c.gen(a).degree;
                int e = r + b1deg * (c.gen(a).degree + r);
                int sign = (e & 1) ? -1 : 1;
                for (auto &[w, coeff] : c.delta(r, a).terms()) {
                    Rational pr = p.eval(b, w.letters[r - 1].ord);
                    if (pr.is_zero())
                        continue;
                    rhs.add(w.subword(0, r - 1), coeff * pr * Rational(sign));
                }
                if (lhs != rhs)
                    rep.violations.push_back("cyclic identity fails at r=" + std::to_string(r) +
                                             ", a=" + c.gen(a).id + ", b=" + c.gen(b).id);
            }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// dual A-infinity algebra

class AInfAlgebra {
public:
    // basis mirrors the coalgebra basis (a_i = dual of c_i, same degree/weight)
    std::vector<Generator> basis;
    int unit = 0;
    std::vector<Rational> augmentation;
    // products[n][flat dst tuple...]: mu_n on basis tuples; stored sparsely as
    // (input word) -> output element of A (words of length 1)
    std::map<int, std::map<TensorWord, FreeElement>> products;
    std::optional<CyclicPairing> pairing;

    FreeElement mu(int n, const TensorWord &in) const
    {
        auto it = products.find(n);
        if (it == products.end())
            return FreeElement();
        auto jt = it->second.find(in);
        return jt == it->second.end() ? FreeElement() : jt->second;
    }
};

// A = C^*, with mu_n dual to Delta_n via the Koszul evaluation
//   (f_1 (x) ... (x) f_n)(c_1 (x) ... (x) c_n)
//     = (-1)^{sum_{i<j} |f_j||c_i|} f_1(c_1)...f_n(c_n).
inline AInfAlgebra dualize(const AInfCoalgebra &c)
{
    AInfAlgebra a;
    a.basis = c.basis();
    a.unit = c.coaugmentation();
    a.augmentation.resize(c.dim());
    for (int i = 0; i < c.dim(); ++i)
        a.augmentation[i] = c.counit(i);
    if (c.has_pairing())
        a.pairing = dual_pairing(c.basis(), c.pairing());

    for (int n : c.coproduct_arities()) {
        for (int src = 0; src < c.dim(); ++src) {
            for (auto &[w, coeff] : c.delta(n, src).terms()) {
                // mu_n(w*) hits src* with the Koszul sign: f_i = w_i*, c_i = w_i
                long e = 0;
                for (int i = 0; i < n; ++i)
                    for (int j = i + 1; j < n; ++j)
                        e += (long)(w.letters[j].degree & 1) * (w.letters[i].degree & 1);
                Rational v = coeff * Rational((e & 1) ? -1 : 1);
                a.products[n][w].add(c.word({src}), v);
            }
        }
    }
    return a;
}

// evaluate mu_n on a sum of length-n words
inline FreeElement algebra_mu(const AInfAlgebra &a, int n, const FreeElement &x)
{
    FreeElement out;
    for (auto &[w, c] : x.terms()) {
        FreeElement v = a.mu(n, w);
        v *= c;
        out += v;
    }
    return out;
}

inline CheckReport check_ainf_algebra(const AInfAlgebra &a)
{
    CheckReport rep;
    std::vector<int> arities;
    for (auto &[n, t] : a.products)
        if (!t.empty())
            arities.push_back(n);
    int maxn = arities.empty() ? 0 : arities.back();
    int dimension = (int)a.basis.size();

    // relation sum_{r+s+t=n} (-1)^{r+st} mu_{r+1+t}(id^r (x) mu_s (x) id^t) = 0
    // checked on all basis tuples of length n that can contribute
    std::vector<TensorWord> tuples{TensorWord{}};
    for (int n = 1; n <= 2 * maxn - 1 && maxn > 0; ++n) {
        std::vector<TensorWord> next;
        for (auto &w : tuples)
            for (int i = 0; i < dimension; ++i) {
                TensorWord nw = w;
                nw.letters.push_back(a.basis[i]);
                next.push_back(nw);
            }
        tuples = next;
        if ((long)tuples.size() > 200000)
            break; // guarded by the small example sizes in practice
        for (auto &w : tuples) {
            FreeElement acc;
            for (int s = 1; s <= n; ++s)
                for (int r = 0; r + s <= n; ++r) {
                    int t = n - r - s;
                    // inner mu_s applied at position r, Koszul sign past the
                    // first r inputs
                    int passed = 0;
                    for (int i = 0; i < r; ++i)
                        passed += w.letters[i].degree;
                    int sign = ((r + s * t) & 1) ? -1 : 1;
                    if ((s & 1) && (passed & 1))
                        sign = -sign;
                    FreeElement inner = a.mu(s, w.subword(r, r + s));
                    if (inner.is_zero())
                        continue;
                    for (auto &[iw, ic] : inner.terms()) {
                        TensorWord outer = w.subword(0, r) * iw * w.subword(r + s, n);
                        FreeElement res = a.mu(r + 1 + t, outer);
                        res *= ic * Rational(sign);
                        acc += res;
                    }
                }
            if (!acc.is_zero()) {
                rep.violations.push_back("A-infinity algebra relation fails at n=" +
                                         std::to_string(n) + " on " + w.str());
                if (rep.violations.size() > 20)
                    return rep;
            }
        }
    }

    // unitality
    for (int i = 0; i < dimension; ++i) {
        TensorWord u1 = TensorWord({a.basis[a.unit], a.basis[i]});
        TensorWord u2 = TensorWord({a.basis[i], a.basis[a.unit]});
        FreeElement xi(TensorWord({a.basis[i]}));
        if (a.mu(2, u1) != xi || a.mu(2, u2) != xi)
            rep.violations.push_back("mu_2 not unital on " + a.basis[i].id);
    }
    if (!a.mu(1, TensorWord({a.basis[a.unit]})).is_zero())
        rep.violations.push_back("mu_1(1) != 0");

    // cyclicity when a pairing is present:
    // <mu_n(a_1,...,a_n), a_{n+1}> =
    //   (-1)^{n + |a_{n+1}|(|a_1|+...+|a_n|)} <mu_n(a_{n+1},a_1,...,a_{n-1}), a_n>
    if (a.pairing) {
        auto pair_with = [&](const FreeElement &x, int j) {
            Rational v(0);
            for (auto &[w, c] : x.terms())
                v += c * a.pairing->eval(w.letters[0].ord, j);
            return v;
        };
        for (int n : arities) {
            std::vector<TensorWord> tup{TensorWord{}};
            for (int k = 0; k < n + 1; ++k) {
                std::vector<TensorWord> next;
                for (auto &w : tup)
                    for (int i = 0; i < dimension; ++i) {
                        TensorWord nw = w;
                        nw.letters.push_back(a.basis[i]);
                        next.push_back(nw);
                    }
                tup = next;
            }
            for (auto &w : tup) {
                Rational lhs = pair_with(a.mu(n, w.subword(0, n)), w.letters[n].ord);
                TensorWord rot;
                rot.letters.push_back(w.letters[n]);
                for (int i = 0; i < n - 1; ++i)
                    rot.letters.push_back(w.letters[i]);
                Rational rhs = pair_with(a.mu(n, rot), w.letters[n - 1].ord);
                int sum = 0;
                for (int i = 0; i < n; ++i)
                    sum += w.letters[i].degree;
                int e = n + w.letters[n].degree * sum;
                if (e & 1)
                    rhs = -rhs;
                if (lhs != rhs) {
                    rep.violations.push_back("algebra cyclicity fails at n=" + std::to_string(n) +
                                             " on " + w.str());
                    if (rep.violations.size() > 20)
                        return rep;
                }
            }
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// JSON ingestion / emission
//
// {basis: [{id, degree, weight}], coproducts: {"n": [{src, dst: [ids],
//  coeff: "p/q"}]}, counit: {id: "p/q"}, coaugmentation: id,
//  pairing: {degree, entries: [{a, b, value: "p/q"}]}}

inline AInfCoalgebra coalgebra_from_json(const nlohmann::json &j)
{
    AInfCoalgebra c;
    for (auto &b : j.at("basis"))
        c.add_generator(b.at("id").get<std::string>(), b.at("degree").get<int>(),
                        b.at("weight").get<int>());
    for (auto &[nstr, terms] : j.at("coproducts").items()) {
        int n = std::stoi(nstr);
        for (auto &t : terms) {
            TensorWord w;
            for (auto &id : t.at("dst"))
                w.letters.push_back(c.gen(c.index_of(id.get<std::string>())));
            if (w.length() != n)
                throw std::invalid_argument("coalgebra json: dst arity mismatch");
            c.add_coproduct_term(n, c.index_of(t.at("src").get<std::string>()), w,
                                 Rational::parse(t.at("coeff").get<std::string>()));
        }
    }
    for (auto &[id, v] : j.at("counit").items())
        c.set_counit(c.index_of(id), Rational::parse(v.get<std::string>()));
    c.set_coaugmentation(c.index_of(j.at("coaugmentation").get<std::string>()));
    if (j.contains("pairing")) {
        CyclicPairing p;
        p.d = j.at("pairing").at("degree").get<int>();
        for (auto &e : j.at("pairing").at("entries"))
            p.set(c.index_of(e.at("a").get<std::string>()),
                  c.index_of(e.at("b").get<std::string>()),
                  Rational::parse(e.at("value").get<std::string>()));
        c.attach_pairing(std::move(p));
    }
    return c;
}

inline nlohmann::json coalgebra_to_json(const AInfCoalgebra &c)
{
    nlohmann::json j;
    j["basis"] = nlohmann::json::array();
    for (auto &g : c.basis())
        j["basis"].push_back({{"id", g.id}, {"degree", g.degree}, {"weight", g.weight}});
    j["coproducts"] = nlohmann::json::object();
    for (int n : c.coproduct_arities()) {
        auto arr = nlohmann::json::array();
        for (int src = 0; src < c.dim(); ++src)
            for (auto &[w, coeff] : c.delta(n, src).terms()) {
                auto dst = nlohmann::json::array();
                for (auto &g : w.letters)
                    dst.push_back(g.id);
                arr.push_back({{"src", c.gen(src).id}, {"dst", dst}, {"coeff", coeff.str()}});
            }
        j["coproducts"][std::to_string(n)] = arr;
    }
    j["counit"] = nlohmann::json::object();
    for (int i = 0; i < c.dim(); ++i)
        if (!c.counit(i).is_zero())
            j["counit"][c.gen(i).id] = c.counit(i).str();
    j["coaugmentation"] = c.gen(c.coaugmentation()).id;
    if (c.has_pairing()) {
        auto &p = c.pairing();
        auto entries = nlohmann::json::array();
        for (auto &[ij, v] : p.entries)
            entries.push_back({{"a", c.gen(ij.first).id}, {"b", c.gen(ij.second).id},
                               {"value", v.str()}});
        j["pairing"] = {{"degree", p.d}, {"entries", entries}};
    }
    return j;
}

} // namespace ncp
