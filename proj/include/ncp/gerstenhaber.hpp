#pragma once

// Hochschild cochain structure on the finite-dimensional graded dual A = C^*
// of a cyclic A-infinity coalgebra C: cochain differential, cup product,
// Gerstenhaber bracket (two routes), cap product, the duality carrying
// normalized Hochschild chains of C to cochains of A, and the homology-level
// bracket in the polynomial model.
//
// A cochain in Hom(A^{(x)n}, A) is stored through the isomorphism
// Hom(A^{(x)n}, A) = C^{(x)n} (x) A as a rational combination of
// decomposables (x_1,...,x_n) (x) abar_j; the inputs are kept as a word of
// s^-1 letters (the cobar alphabet) and the output as a dual basis ordinal.

#include "ncp/cobar.hpp"
#include "ncp/double_bracket.hpp"
#include "ncp/hkr.hpp"
#include "ncp/linalg.hpp"

#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace ncp {

struct FundamentalClassMissing : std::runtime_error {
    explicit FundamentalClassMissing(const std::string &m) : std::runtime_error(m) {}
};

struct Cochain {
    // key: (input word in s^-1 letters, dual algebra basis ordinal)
    std::map<std::pair<TensorWord, int>, Rational> terms;

    void add(const TensorWord &w, int dual, const Rational &c)
    {
        if (c.is_zero())
            return;
        auto key = std::make_pair(w, dual);
        auto it = terms.find(key);
        if (it == terms.end()) {
            terms.emplace(std::move(key), c);
        } else {
            it->second += c;
            if (it->second.is_zero())
                terms.erase(it);
        }
    }
    bool is_zero() const { return terms.empty(); }
    friend bool operator==(const Cochain &a, const Cochain &b) { return a.terms == b.terms; }
    Cochain &operator+=(const Cochain &o)
    {
        for (const auto &[k, c] : o.terms)
            add(k.first, k.second, c);
        return *this;
    }
    Cochain &operator-=(const Cochain &o)
    {
        for (const auto &[k, c] : o.terms)
            add(k.first, k.second, -c);
        return *this;
    }
    Cochain &operator*=(const Rational &c)
    {
        if (c.is_zero()) {
            terms.clear();
            return *this;
        }
        for (auto &[k, v] : terms)
            v *= c;
        return *this;
    }
};

// ---------------------------------------------------------------------------
// duality between normalized chains of C and cochains of A

// (c0; w) |-> (w) (x) <c0, ->, the module slot read off against the pairing
inline Cochain chain_to_cochain(const CobarAlgebra &Rt, const HochschildChain &h)
{
    const AInfCoalgebra &C = Rt.coalgebra();
    const CyclicPairing &P = C.pairing(); // throws NoPairing when absent
    Cochain out;
    for (const auto &[k, c] : h.terms)
        for (int j = 0; j < C.dim(); ++j) {
            Rational pe = P.eval(k.first, j);
            if (!pe.is_zero())
                out.add(k.second, j, c * pe);
        }
    return out;
}

namespace gdetail {

// rows[j] = coordinates of the pairing preimage of the j-th dual basis
// element: sum_i rows[j][i] <c_i, c_q> = delta_{jq}
inline std::vector<std::vector<Rational>> pairing_preimage_rows(const AInfCoalgebra &C)
{
    int n = C.dim();
    const CyclicPairing &P = C.pairing();
    SparseMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Rational v = P.eval(i, j);
            if (!v.is_zero())
                m.add(j, i, v);
        }
    std::vector<std::vector<Rational>> rows(n, std::vector<Rational>(n, Rational(0)));
    for (int j = 0; j < n; ++j) {
        SparseVec b;
        b[j] = Rational(1);
        auto x = solve(m, b);
        if (!x)
            throw std::invalid_argument("chain/cochain duality: pairing is degenerate");
        for (const auto &[i, c] : *x)
            rows[j][i] = c;
    }
    return rows;
}

} // namespace gdetail

inline HochschildChain cochain_to_chain(const CobarAlgebra &Rt, const Cochain &f)
{
    const AInfCoalgebra &C = Rt.coalgebra();
    auto rows = gdetail::pairing_preimage_rows(C);
    HochschildChain out;
    for (const auto &[k, c] : f.terms)
        for (int i = 0; i < C.dim(); ++i)
            if (!rows[k.second][i].is_zero())
                out.add(i, k.first, c * rows[k.second][i]);
    return out;
}

// the duality applied to the cyclic symmetrization of a cobar element: every
// rotation contributes its leading letter to the output slot. This is the
// composite that carries a class of the commutator quotient to a cochain.
inline Cochain connes_cochain(const CobarAlgebra &Rt, const FreeElement &r)
{
    return chain_to_cochain(Rt, normalize_chain(Rt, hochschild_N(r)));
}

// ---------------------------------------------------------------------------
// cochain differential
//
// The decomposable (y; abar_j) is handled as the word (j^, y_1, ..., y_n)
// where j^ is a virtual front letter of desuspended degree d - |c_j| - 1 (the
// output slot sits in C[-d] through the pairing). delta applies the cobar
// letter-splitting rule to every slot; when the virtual letter splits, its
// leading group either stays in front or rotates to the far end of the word,
// and the freed letter is read back into the output slot by the pairing.
// Words that acquire the counit letter are degenerate and dropped.

inline Cochain cochain_delta(const CobarAlgebra &Rt, const Cochain &f)
{
    if (!Rt.unit_adjoined())
        throw std::invalid_argument("cochain_delta: need the unit-adjoined cobar algebra");
    const AInfCoalgebra &C = Rt.coalgebra();
    const CyclicPairing &P = C.pairing();
    int d = C.cy_dim();
    int e = Rt.counit_letter();
    auto rows = gdetail::pairing_preimage_rows(C);

    auto degenerate = [&](const TensorWord &w) {
        for (const auto &g : w.letters)
            if (g.ord == e)
                return true;
        return false;
    };
    auto pair_out = [&](Cochain &out, const TensorWord &w, int mod_ord, const Rational &c) {
        for (int q = 0; q < C.dim(); ++q) {
            Rational pe = P.eval(mod_ord, q);
            if (!pe.is_zero())
                out.add(w, q, c * pe);
        }
    };

    Cochain out;
    for (const auto &[key, coeff] : f.terms) {
        const TensorWord &y = key.first;
        int j = key.second;
        int dj = C.gen(j).degree;
        int virt = d - dj - 1; // desuspended degree of the virtual letter

        // splits inside the input word: the cobar differential shifted past
        // the virtual letter, with the global minus of the chain convention
        {
            FreeElement dy = Rt.d(FreeElement(y));
            bool flip = ((virt & 1) == 0); // -(-1)^{virt}
            for (const auto &[w, c] : dy.terms()) {
                if (degenerate(w))
                    continue;
                out.add(w, j, flip ? -coeff * c : coeff * c);
            }
        }

        // splits of the virtual letter
        for (int i = 0; i < C.dim(); ++i) {
            const Rational &a = rows[j][i];
            if (a.is_zero())
                continue;
            FreeElement du = Rt.d_gen(i);
            for (const auto &[u, cu] : du.terms()) {
                int m = u.length();
                Rational base = -(coeff * a * cu);
                // leading group stays in front: output slot u_1, letters
                // u_2..u_m prepended to the word
                {
                    TensorWord w = u.subword(1, m) * y;
                    if (!degenerate(w))
                        pair_out(out, w, u.letters[0].ord, base);
                }
                // a leading group of k letters rotates to the end
                for (int k = 1; k < m; ++k) {
                    TensorWord pre = u.subword(0, k), suf = u.subword(k, m);
                    int dp = pre.degree();
                    int drest = suf.degree() + y.degree();
                    TensorWord w = suf.subword(1, m - k) * y * pre;
                    if (degenerate(w))
                        continue;
                    Rational c2 = base;
                    if ((dp & 1) && (drest & 1))
                        c2 = -c2;
                    pair_out(out, w, suf.letters[0].ord, c2);
                }
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// cup product

// mu_2 of the dual algebra: mu_2(abar_p, abar_q) = sum_m lambda abar_m where
// Delta_2(c_m) contains lambda (c_p (x) c_q), with the Koszul sign of
// evaluating the two functionals against the two coproduct legs
inline std::map<int, Rational> dual_mu2(const AInfCoalgebra &C, int p, int q)
{
    std::map<int, Rational> out;
    int dp = C.gen(p).degree, dq = C.gen(q).degree;
    for (int m = 0; m < C.dim(); ++m) {
        Rational acc(0);
        for (const auto &[w, lam] : C.delta(2, m).terms())
            if (w.length() == 2 && w.letters[0].ord == p && w.letters[1].ord == q)
                acc += lam;
        if (!acc.is_zero()) {
            if ((dq & 1) && (dp & 1))
                acc = -acc;
            out[m] = acc;
        }
    }
    return out;
}

inline Cochain cup(const CobarAlgebra &Rt, const Cochain &f, const Cochain &g)
{
    const AInfCoalgebra &C = Rt.coalgebra();
    Cochain out;
    for (const auto &[kf, cf] : f.terms)
        for (const auto &[kg, cg] : g.terms) {
            const TensorWord &y = kf.first;
            const TensorWord &z = kg.first;
            int p = kf.second, q = kg.second;
            int dq = C.gen(q).degree;
            // the second output slot moves past the first block of inputs;
            // with this sign the differential is a strict derivation of cup
            int E = dq * y.degree();
            Rational c = cf * cg;
            if (E & 1)
                c = -c;
            for (const auto &[m, mu] : dual_mu2(C, p, q))
                out.add(y * z, m, c * mu);
        }
    return out;
}

// ---------------------------------------------------------------------------
// Gerstenhaber bracket, decomposable route: insert g's inputs into every slot
// of f that matches g's output (keeping f's output), minus the mirror

inline Cochain gerstenhaber_bracket(const CobarAlgebra &Rt, const Cochain &f, const Cochain &g)
{
    const AInfCoalgebra &C = Rt.coalgebra();
    Cochain out;
    for (const auto &[kf, cf] : f.terms)
        for (const auto &[kg, cg] : g.terms) {
            const TensorWord &y = kf.first;
            const TensorWord &z = kg.first;
            int p = kf.second, q = kg.second;
            int dp = C.gen(p).degree, dq = C.gen(q).degree;
            int n = y.length(), m = z.length();
            int Z = z.degree(), Y = y.degree();
            for (int i = 0; i < n; ++i) {
                if (y.letters[i].ord != q)
                    continue;
                int b = y.letters[i].degree;
                int S = y.subword(i + 1, n).degree();
                int E = 1 + b + S + S * (Z + dq);
                Rational c = cf * cg;
                if (E & 1)
                    c = -c;
                out.add(y.subword(0, i) * z * y.subword(i + 1, n), p, c);
            }
            for (int jj = 0; jj < m; ++jj) {
                if (z.letters[jj].ord != p)
                    continue;
                int P2 = z.subword(0, jj).degree();
                int b = z.letters[jj].degree;
                int E = P2 + b + Y + dq + P2 * Y + b * Y + P2 * dp + Y * dq + dq * dp;
                Rational c = cf * cg;
                if (E & 1)
                    c = -c;
                out.add(z.subword(0, jj) * y * z.subword(jj + 1, m), q, c);
            }
        }
    return out;
}

// shifted total degree parity of a homogeneous cochain (word degree plus
// output degree); throws when terms disagree mod 2
inline int cochain_parity(const AInfCoalgebra &C, const Cochain &f)
{
    int par = -1;
    for (const auto &[k, c] : f.terms) {
        int p = (k.first.degree() + C.gen(k.second).degree) & 1;
        if (par < 0)
            par = p;
        else if (par != p)
            throw std::invalid_argument("cochain_parity: mixed total degree");
    }
    return par < 0 ? 0 : par;
}

// ---------------------------------------------------------------------------
// insertion route: cochains as multilinear maps

using DualElement = std::map<int, Rational>;

// evaluate a cochain on a tuple of dual basis ordinals; the Koszul sign moves
// each slot functional past the inputs consumed before it
inline DualElement evaluate_cochain(const AInfCoalgebra &C, const Cochain &f,
                                    const std::vector<int> &inputs)
{
    DualElement out;
    for (const auto &[k, c] : f.terms) {
        const TensorWord &y = k.first;
        if (y.length() != (int)inputs.size())
            continue;
        int kappa = 0, pre = 0;
        bool ok = true;
        for (int i = 0; i < y.length(); ++i) {
            if (y.letters[i].ord != inputs[i]) {
                ok = false;
                break;
            }
            kappa += ((y.letters[i].degree + 1) & 1) * pre;
            pre = (pre + (C.gen(inputs[i]).degree & 1)) & 1;
        }
        if (!ok)
            continue;
        Rational v = (kappa & 1) ? -c : c;
        auto it = out.find(k.second);
        if (it == out.end())
            out.emplace(k.second, v);
        else {
            it->second += v;
            if (it->second.is_zero())
                out.erase(it);
        }
    }
    return out;
}

namespace gdetail {

inline std::vector<int> word_alphabet(const Cochain &f, const Cochain &g)
{
    std::set<int> s;
    for (const auto &[k, c] : f.terms)
        for (const auto &l : k.first.letters)
            s.insert(l.ord);
    for (const auto &[k, c] : g.terms)
        for (const auto &l : k.first.letters)
            s.insert(l.ord);
    return std::vector<int>(s.begin(), s.end());
}

// circle product f o g computed slot by slot on all input tuples over the
// given alphabet, then converted back to decomposable form through the
// evaluation convention
inline Cochain circle_map(const CobarAlgebra &Rt, const Cochain &f, const Cochain &g, int n,
                          int m, const std::vector<int> &alphabet)
{
    const AInfCoalgebra &C = Rt.coalgebra();
    Cochain out;
    if (n == 0)
        return out;
    int k = n + m - 1;
    std::vector<int> tuple(k, 0);
    std::function<void(int)> rec = [&](int pos) {
        if (pos == k) {
            DualElement acc;
            for (int i = 0; i < n; ++i) {
                std::vector<int> gin(tuple.begin() + i, tuple.begin() + i + m);
                DualElement gout = evaluate_cochain(C, g, gin);
                if (gout.empty())
                    continue;
                int P2 = -i; // shifted degree of the inputs in front
                for (int r = 0; r < i; ++r)
                    P2 += C.gen(tuple[r]).degree;
                int S2 = -(k - i - m);
                for (int r = i + m; r < k; ++r)
                    S2 += C.gen(tuple[r]).degree;
                int Z2 = -m;
                for (int r = i; r < i + m; ++r)
                    Z2 += C.gen(tuple[r]).degree;
                for (const auto &[gb, gc] : gout) {
                    std::vector<int> fin;
                    fin.reserve(n);
                    for (int r = 0; r < i; ++r)
                        fin.push_back(tuple[r]);
                    fin.push_back(gb);
                    for (int r = i + m; r < k; ++r)
                        fin.push_back(tuple[r]);
                    DualElement fout = evaluate_cochain(C, f, fin);
                    if (fout.empty())
                        continue;
                    int dq = C.gen(gb).degree;
                    // positional sign of grafting g into this slot
                    int E = m + Z2 + S2 + P2 * (m + Z2 + dq) + S2 * m + n * (m + Z2 + dq);
                    for (const auto &[fb, fc] : fout) {
                        Rational v = gc * fc;
                        if (E & 1)
                            v = -v;
                        auto it = acc.find(fb);
                        if (it == acc.end())
                            acc.emplace(fb, v);
                        else {
                            it->second += v;
                            if (it->second.is_zero())
                                acc.erase(it);
                        }
                    }
                }
            }
            if (!acc.empty()) {
                // read the value on this tuple back into decomposable form
                int kappa = 0, pre = 0;
                TensorWord w;
                for (int r = 0; r < k; ++r) {
                    kappa += (C.gen(tuple[r]).degree & 1) * pre;
                    pre = (pre + (C.gen(tuple[r]).degree & 1)) & 1;
                    w.letters.push_back(Rt.gen(tuple[r]));
                }
                for (const auto &[b, c] : acc)
                    out.add(w, b, (kappa & 1) ? -c : c);
            }
            return;
        }
        for (int x : alphabet) {
            tuple[pos] = x;
            rec(pos + 1);
        }
    };
    rec(0);
    return out;
}

} // namespace gdetail

// Gerstenhaber bracket through map-level circle products,
// f o g - (-1)^{(|f|+1)(|g|+1)} g o f; agrees with the decomposable route.
// Arguments must be homogeneous in arity and total degree.
inline Cochain gerstenhaber_bracket_insertion(const CobarAlgebra &Rt, const Cochain &f,
                                              const Cochain &g)
{
    const AInfCoalgebra &C = Rt.coalgebra();
    if (f.is_zero() || g.is_zero())
        return Cochain{};
    auto arity_of = [](const Cochain &x) {
        int a = x.terms.begin()->first.first.length();
        for (const auto &[k, c] : x.terms)
            if (k.first.length() != a)
                throw std::invalid_argument("bracket insertion route: mixed arities");
        return a;
    };
    int n = arity_of(f), m = arity_of(g);
    auto alphabet = gdetail::word_alphabet(f, g);
    Cochain out = gdetail::circle_map(Rt, f, g, n, m, alphabet);
    Cochain gf = gdetail::circle_map(Rt, g, f, m, n, alphabet);
    int X = (cochain_parity(C, f) + 1) * (cochain_parity(C, g) + 1);
    gf *= (X & 1) ? Rational(1) : Rational(-1);
    out += gf;
    return out;
}

// ---------------------------------------------------------------------------
// cap product: contract the leading inputs of a chain with a cochain and
// multiply the value into the module slot; zero when the chain is shorter

namespace gdetail {

// module slot times a dual basis element: carry the slot into the dual basis
// with the pairing, multiply with mu_2 there, carry the result back
inline std::map<int, Rational> module_times_dual(const AInfCoalgebra &C,
                                                 const std::vector<std::vector<Rational>> &rows,
                                                 int a0, int b)
{
    const CyclicPairing &P = C.pairing();
    std::map<int, Rational> out;
    for (int q = 0; q < C.dim(); ++q) {
        Rational pq = P.eval(a0, q);
        if (pq.is_zero())
            continue;
        for (const auto &[m, mu] : dual_mu2(C, q, b)) {
            Rational c = pq * mu;
            for (int i = 0; i < C.dim(); ++i)
                if (!rows[m][i].is_zero()) {
                    Rational v = c * rows[m][i];
                    auto it = out.find(i);
                    if (it == out.end())
                        out.emplace(i, v);
                    else {
                        it->second += v;
                        if (it->second.is_zero())
                            out.erase(it);
                    }
                }
        }
    }
    return out;
}

} // namespace gdetail

inline HochschildChain cap(const CobarAlgebra &Rt, const HochschildChain &alpha, const Cochain &f)
{
    const AInfCoalgebra &C = Rt.coalgebra();
    auto rows = gdetail::pairing_preimage_rows(C);
    HochschildChain out;
    for (const auto &[ka, ca] : alpha.terms) {
        int a0 = ka.first;
        const TensorWord &w = ka.second;
        for (const auto &[kf, cf] : f.terms) {
            int n = kf.first.length();
            if (w.length() < n)
                continue; // zero when the chain is shorter than the cochain
            std::vector<int> inputs;
            inputs.reserve(n);
            for (int i = 0; i < n; ++i)
                inputs.push_back(w.letters[i].ord);
            Cochain single;
            single.add(kf.first, kf.second, cf);
            DualElement val = evaluate_cochain(C, single, inputs);
            for (const auto &[b, c] : val)
                for (const auto &[m2, mu] : gdetail::module_times_dual(C, rows, a0, b))
                    out.add(m2, w.subword(n, w.length()), ca * c * mu);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// transport check: the duality composed with the cyclic symmetrization sends
// the chain-level bracket of two words to the Gerstenhaber bracket of their
// images

struct TransportReport {
    bool equal = false;
    std::size_t lhs_terms = 0;
    std::size_t rhs_terms = 0;
};

inline TransportReport check_bracket_transport(const CobarAlgebra &Rt, const FreeElement &u,
                                               const FreeElement &v)
{
    Cochain lhs = connes_cochain(Rt, loday_bracket(Rt, u, v));
    Cochain rhs = gerstenhaber_bracket(Rt, connes_cochain(Rt, u), connes_cochain(Rt, v));
    TransportReport rep;
    rep.equal = (lhs == rhs);
    rep.lhs_terms = lhs.terms.size();
    rep.rhs_terms = rhs.terms.size();
    return rep;
}

// ---------------------------------------------------------------------------
// homology classes: coordinates of a cycle in the deterministic homology
// basis of one (degree, weight) block

struct HomologyClass {
    ComplexKind kind = ComplexKind::hochschild;
    int degree = 0;
    int weight = 0;
    std::vector<Rational> coords;

    friend bool operator==(const HomologyClass &a, const HomologyClass &b)
    {
        return a.kind == b.kind && a.degree == b.degree && a.weight == b.weight &&
               a.coords == b.coords;
    }
    bool is_zero() const
    {
        for (const auto &c : coords)
            if (!c.is_zero())
                return false;
        return true;
    }
};

// homology basis of a block of the word complex (hochschild) or its cyclic
// invariant subcomplex (cyclic): boundary span first, then cycle
// representatives picked greedily from the kernel in basis order
struct HomologyBlockBasis {
    ComplexKind kind = ComplexKind::hochschild;
    int degree = 0, weight = 0;
    std::vector<TensorWord> words; // ambient monomial basis
    std::vector<SparseVec> reps;   // homology representatives (cycles)
    detail::Echelon boundaries;

    int dim() const { return (int)reps.size(); }

    FreeElement representative(int i) const
    {
        FreeElement x;
        for (const auto &[j, c] : reps[i])
            x.add(words[j], c);
        return x;
    }

    // coordinates of a cycle of the block in the homology basis
    HomologyClass coordinates(const CobarAlgebra &R, const FreeElement &x) const
    {
        auto index = cobdetail::word_index(words);
        SparseVec v = cobdetail::to_vec(x, index);
        if (!hochschild_b(R, x).terms().empty())
            throw std::invalid_argument("homology coordinates: element is not a cycle");
        int rows_n = (int)words.size();
        int nr = (int)reps.size(), nb = (int)boundaries.rows.size();
        SparseMatrix m(rows_n, nr + nb);
        for (int j = 0; j < nr; ++j)
            for (const auto &[r, c] : reps[j])
                m.add(r, j, c);
        for (int j = 0; j < nb; ++j)
            for (const auto &[r, c] : boundaries.rows[j])
                m.add(r, nr + j, c);
        auto sol = solve(m, v);
        if (!sol)
            throw std::invalid_argument("homology coordinates: cycle outside the block basis");
        HomologyClass cls{kind, degree, weight, std::vector<Rational>(nr, Rational(0))};
        for (const auto &[j, c] : *sol)
            if (j < nr)
                cls.coords[j] = c;
        return cls;
    }
};

inline HomologyBlockBasis homology_block_basis(const CobarAlgebra &R, ComplexKind kind,
                                               int degree, int weight,
                                               std::size_t max_words = 500000)
{
    if (kind != ComplexKind::hochschild && kind != ComplexKind::cyclic)
        throw std::invalid_argument("homology_block_basis: word-complex kinds only");
    using namespace cobdetail;
    HomologyBlockBasis out;
    out.kind = kind;
    out.degree = degree;
    out.weight = weight;
    out.words = R.block_words(degree, weight, 1, max_words);
    auto index = word_index(out.words);
    auto w1 = R.block_words(degree + 1, weight, 1, max_words);
    auto idx1 = word_index(w1);

    auto apply_b = [&](const SparseVec &v, const std::vector<TensorWord> &ws,
                       const std::map<TensorWord, int> &target) {
        FreeElement x;
        for (const auto &[j, c] : v)
            x.add(ws[j], c);
        return to_vec(hochschild_b(R, x), target);
    };

    std::vector<SparseVec> domain0, domain1;
    if (kind == ComplexKind::cyclic) {
        domain0 = cyclic_kernel(out.words, index);
        domain1 = cyclic_kernel(w1, idx1);
    } else {
        for (int i = 0; i < (int)out.words.size(); ++i) {
            SparseVec e;
            e[i] = Rational(1);
            domain0.push_back(std::move(e));
        }
        for (int i = 0; i < (int)w1.size(); ++i) {
            SparseVec e;
            e[i] = Rational(1);
            domain1.push_back(std::move(e));
        }
    }

    for (const auto &v : domain1)
        out.boundaries.insert(apply_b(v, w1, index));

    // kernel of the differential within the domain subspace
    auto idxdn = word_index(R.block_words(degree - 1, weight, 1, max_words));
    int nd = (int)domain0.size();
    SparseMatrix bm(std::max<int>(1, (int)idxdn.size()), std::max(1, nd));
    for (int j = 0; j < nd; ++j)
        for (const auto &[r, c] : apply_b(domain0[j], out.words, idxdn))
            bm.add(r, j, c);
    auto rki = rank_kernel_image(bm);
    detail::Echelon span = out.boundaries;
    for (const auto &kv : rki.kernel.vectors) {
        if (nd == 0)
            break;
        // expand kernel coordinates back to the word basis
        SparseVec v;
        for (const auto &[j, c] : kv)
            for (const auto &[r, cc] : domain0[j])
                v[r] += c * cc;
        for (auto it = v.begin(); it != v.end();)
            it = it->second.is_zero() ? v.erase(it) : std::next(it);
        SparseVec keep = v;
        if (span.insert(std::move(v)))
            out.reps.push_back(std::move(keep));
    }
    return out;
}

// ---------------------------------------------------------------------------
// homology-level bracket through the fundamental class, realized in the
// polynomial model: forms stand for their homology classes, the cyclic
// symmetrization operator becomes the de Rham differential, and the
// fundamental class is the volume form.
// {a, b} = (-1)^{d-|a|-1} (contraction of the volume-dual of da against db)

inline PolyForm fundamental_class_bracket(const PolyForm &a, const PolyForm &b)
{
    if (a.var_count() != b.var_count())
        throw std::invalid_argument("fundamental_class_bracket: variable count mismatch");
    int m = a.var_count();
    PolyForm r = contract(psi_inverse(de_rham_d(a)), de_rham_d(b));
    if ((m - a.ext_degree() - 1) & 1)
        r *= Rational(-1);
    return r;
}

// general entry point: outside the polynomial model the fundamental class is
// an input this library does not construct
inline HomologyClass fundamental_class_bracket(const CobarAlgebra &, const HomologyClass &,
                                               const HomologyClass &)
{
    throw FundamentalClassMissing(
        "homology bracket needs a fundamental class; only the polynomial model supplies one");
}

} // namespace ncp
