// Cobar construction of a coaugmented A-infinity coalgebra, the cyclic
// bicomplex operators b, b', T, N, noncommutative one-forms on the cobar
// algebra with I, del, delbar, beta, the Connes operator, and blockwise
// (degree, weight) homology of the resulting complexes.
//
// Two cobar algebras appear. CobarAlgebra(C) is T(s^-1 Cbar) with the
// reduced coproducts: the resolution of the Koszul dual algebra.
// CobarAlgebra(C, /*adjoin_unit=*/true) freely adjoins a unit to C first,
// so the old counit element becomes an honest generator of degree -1 and
// the differential uses the full (counital) coproducts. The one-form and
// commutator-quotient complexes of the latter compute Hochschild and
// cyclic homology.
//
// Grading: every generator s^-1 c carries degree |c| - 1 and the weight of
// c; all operators preserve weight and the differentials lower degree by
// one. Chains in C^{\otimes n} are represented as words over the unit-
// adjoined cobar generators, so the native degree of a chain is the sum of
// the s^-1 degrees of its letters.

#pragma once

#include "ncp/coalgebra.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace ncp {

struct CutoffExceeded : std::runtime_error {
    explicit CutoffExceeded(const std::string &what) : std::runtime_error(what) {}
};

class CobarAlgebra {
public:
    explicit CobarAlgebra(const AInfCoalgebra &c, bool adjoin_unit = false)
        : C_(c), tilde_(adjoin_unit)
    {
        gens_.resize(C_.dim());
        present_.assign(C_.dim(), false);
        for (int i = 0; i < C_.dim(); ++i) {
            if (!tilde_ && i == C_.coaugmentation())
                continue;
            const Generator &g = C_.gen(i);
            Generator sg;
            sg.id = "s^-1 " + g.id;
            sg.degree = g.degree - 1;
            sg.weight = g.weight;
            sg.ord = i; // letter ord doubles as the coalgebra basis index
            if (sg.weight <= 0 && sg.degree >= 0)
                throw std::invalid_argument("CobarAlgebra: generator " + sg.id +
                                            " has weight 0 and degree >= 0; blocks unbounded");
            gens_[i] = sg;
            present_[i] = true;
        }
    }

    const AInfCoalgebra &coalgebra() const { return C_; }
    bool unit_adjoined() const { return tilde_; }
    // index of the counit element of C among the letters (tilde mode only)
    int counit_letter() const { return C_.coaugmentation(); }
    bool has_gen(int coalg_idx) const { return present_.at(coalg_idx); }
    const Generator &gen(int coalg_idx) const
    {
        if (!present_.at(coalg_idx))
            throw std::out_of_range("CobarAlgebra: no generator for basis index " +
                                    std::to_string(coalg_idx));
        return gens_[coalg_idx];
    }
    std::vector<Generator> generators() const
    {
        std::vector<Generator> out;
        for (int i = 0; i < (int)gens_.size(); ++i)
            if (present_[i])
                out.push_back(gens_[i]);
        return out;
    }
    TensorWord word(std::initializer_list<std::string> coalg_ids) const
    {
        TensorWord w;
        for (const auto &id : coalg_ids)
            w.letters.push_back(gen(C_.index_of(id)));
        return w;
    }

    // differential on the generator s^-1 c: sum over arities of
    // (s^-1)^{tensor n} pi^{tensor n} Delta_n(c), Koszul signs from moving
    // each (odd) desuspension past the coalgebra elements in front of it.
    FreeElement d_gen(int coalg_idx) const
    {
        FreeElement out;
        for (int n : C_.coproduct_arities()) {
            FreeElement dn = tilde_ ? C_.delta(n, coalg_idx) : C_.delta_reduced(n, coalg_idx);
            for (const auto &[w, c] : dn.terms()) {
                int par = 0, seen = 0;
                std::vector<Generator> ls;
                ls.reserve(w.letters.size());
                bool ok = true;
                for (const auto &cl : w.letters) {
                    if (!present_.at(cl.ord)) {
                        ok = false;
                        break;
                    }
                    // the s^-1 landing on every later slot passes this letter
                    ls.push_back(gens_[cl.ord]);
                    ++seen;
                    par += cl.degree * ((int)w.letters.size() - seen);
                }
                if (!ok)
                    continue;
                out.add(TensorWord(std::move(ls)), (par & 1) ? -c : c);
            }
        }
        return out;
    }

    FreeElement d(const TensorWord &w) const
    {
        FreeElement out;
        int prefix_deg = 0;
        for (int i = 0; i < w.length(); ++i) {
            FreeElement di = d_gen(w.letters[i].ord);
            TensorWord pre = w.subword(0, i), suf = w.subword(i + 1, w.length());
            for (const auto &[u, c] : di.terms())
                out.add(pre * u * suf, (prefix_deg & 1) ? -c : c);
            prefix_deg += w.letters[i].degree;
        }
        return out;
    }

    FreeElement d(const FreeElement &r) const
    {
        FreeElement out;
        for (const auto &[w, c] : r.terms()) {
            FreeElement dw = d(w);
            dw *= c;
            out += dw;
        }
        return out;
    }

    // all words of the given total degree and weight (letter count >= min_len)
    std::vector<TensorWord> block_words(int degree, int weight, int min_len = 1,
                                        std::size_t max_words = 500000) const
    {
        std::vector<TensorWord> out;
        if (weight < 0)
            return out;
        int max_pos_deg = 0;
        std::vector<const Generator *> letters;
        for (int i = 0; i < (int)gens_.size(); ++i)
            if (present_[i]) {
                letters.push_back(&gens_[i]);
                if (gens_[i].weight > 0)
                    max_pos_deg = std::max(max_pos_deg, gens_[i].degree);
            }
        std::vector<Generator> cur;
        rec_words(out, cur, letters, degree, weight, min_len, max_pos_deg, max_words);
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    void rec_words(std::vector<TensorWord> &out, std::vector<Generator> &cur,
                   const std::vector<const Generator *> &letters, int dr, int wr, int min_len,
                   int max_pos_deg, std::size_t max_words) const
    {
        if (dr == 0 && wr == 0 && (int)cur.size() >= min_len) {
            if (out.size() >= max_words)
                throw CutoffExceeded("CobarAlgebra: block enumeration exceeded " +
                                     std::to_string(max_words) + " words");
            out.emplace_back(cur);
            // no return: a weight-0 letter cannot extend (it would change the
            // degree), but heavier completions of the same prefix are handled
            // by the sibling branches below, so stop here.
            return;
        }
        for (const Generator *g : letters) {
            int wr2 = wr - g->weight;
            if (wr2 < 0)
                continue;
            int dr2 = dr - g->degree;
            // positive-weight letters raise degree by at most max_pos_deg per
            // unit of weight; weight-0 letters only lower it.
            if (dr2 > wr2 * max_pos_deg)
                continue;
            if (wr2 == 0 && dr2 > 0)
                continue;
            cur.push_back(*g);
            rec_words(out, cur, letters, dr2, wr2, min_len, max_pos_deg, max_words);
            cur.pop_back();
        }
    }

    AInfCoalgebra C_;
    bool tilde_;
    std::vector<Generator> gens_;
    std::vector<bool> present_;
};

inline FreeElement cobar_d(const CobarAlgebra &R, const FreeElement &r) { return R.d(r); }

// ---------------------------------------------------------------------------
// cyclic bicomplex operators on C^{\otimes n} (words over the unit-adjoined
// cobar letters; with all letters in internal degree 0 the Koszul signs below
// reduce to the classical (-1)^{i-1}, (-1)^n, (-1)^{n-1})

inline FreeElement hochschild_T(const FreeElement &x)
{
    FreeElement out;
    for (const auto &[w, c] : x.terms()) {
        if (w.length() <= 1) {
            out.add(w, c);
            continue;
        }
        int d1 = w.letters[0].degree;
        int rest = w.degree() - d1;
        TensorWord r = w.subword(1, w.length()) * w.subword(0, 1);
        out.add(r, ((d1 & 1) && (rest & 1)) ? -c : c);
    }
    return out;
}

inline FreeElement hochschild_N(const FreeElement &x)
{
    FreeElement out;
    for (const auto &[w, c] : x.terms()) {
        FreeElement cur(w, c);
        int n = std::max(1, w.length());
        for (int i = 0; i < n; ++i) {
            out += cur;
            cur = hochschild_T(cur);
        }
    }
    return out;
}

inline FreeElement hochschild_bprime(const CobarAlgebra &R, const FreeElement &x)
{
    return R.d(x);
}

// b = b' + the wrap-around terms: the coproduct applied to the first letter
// with a leading group of outputs rotated to the end of the word.
inline FreeElement hochschild_b(const CobarAlgebra &R, const FreeElement &x)
{
    FreeElement out = R.d(x);
    for (const auto &[w, c] : x.terms()) {
        if (w.empty())
            continue;
        FreeElement dy = R.d_gen(w.letters[0].ord);
        TensorWord tail = w.subword(1, w.length());
        for (const auto &[y, cy] : dy.terms()) {
            int m = y.length();
            for (int k = 1; k < m; ++k) {
                TensorWord pre = y.subword(0, k), suf = y.subword(k, m);
                int dp = pre.degree();
                int drest = suf.degree() + tail.degree();
                Rational coeff = c * cy;
                if ((dp & 1) && (drest & 1))
                    coeff = -coeff;
                out.add(suf * tail * pre, coeff);
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// noncommutative one-forms on the cobar algebra

// element of Omega^1_R in the coordinates R (x) s^-1 Cbar (x) R; the middle
// slot is stored as the letter's ord (= coalgebra basis index)
struct OneForm {
    std::map<std::tuple<TensorWord, int, TensorWord>, Rational> terms;

    void add(const TensorWord &l, int gen_ord, const TensorWord &r, const Rational &c)
    {
        if (c.is_zero())
            return;
        auto key = std::make_tuple(l, gen_ord, r);
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
    OneForm &operator+=(const OneForm &o)
    {
        for (const auto &[k, c] : o.terms)
            add(std::get<0>(k), std::get<1>(k), std::get<2>(k), c);
        return *this;
    }
    OneForm &operator-=(const OneForm &o)
    {
        for (const auto &[k, c] : o.terms)
            add(std::get<0>(k), std::get<1>(k), std::get<2>(k), -c);
        return *this;
    }
    friend bool operator==(const OneForm &a, const OneForm &b) { return a.terms == b.terms; }
};

// element of Omega^1_{R,natural} ~= R (x) s^-1 Cbar
struct OneFormClass {
    std::map<std::pair<TensorWord, int>, Rational> terms;

    void add(const TensorWord &w, int gen_ord, const Rational &c)
    {
        if (c.is_zero())
            return;
        auto key = std::make_pair(w, gen_ord);
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
    OneFormClass &operator+=(const OneFormClass &o)
    {
        for (const auto &[k, c] : o.terms)
            add(k.first, k.second, c);
        return *this;
    }
    OneFormClass &operator-=(const OneFormClass &o)
    {
        for (const auto &[k, c] : o.terms)
            add(k.first, k.second, -c);
        return *this;
    }
    friend bool operator==(const OneFormClass &a, const OneFormClass &b)
    {
        return a.terms == b.terms;
    }
};

// element of R (x) R, the target of I
struct TensorPair {
    std::map<std::pair<TensorWord, TensorWord>, Rational> terms;

    void add(const TensorWord &a, const TensorWord &b, const Rational &c)
    {
        if (c.is_zero())
            return;
        auto key = std::make_pair(a, b);
        auto it = terms.find(key);
        if (it == terms.end()) {
            terms.emplace(std::move(key), c);
        } else {
            it->second += c;
            if (it->second.is_zero())
                terms.erase(it);
        }
    }
};

// universal derivation del: R -> Omega^1_R (degree 0, no signs)
inline OneForm universal_d(const TensorWord &w)
{
    OneForm out;
    for (int i = 0; i < w.length(); ++i)
        out.add(w.subword(0, i), w.letters[i].ord, w.subword(i + 1, w.length()), Rational(1));
    return out;
}

inline OneForm universal_d(const FreeElement &r)
{
    OneForm out;
    for (const auto &[w, c] : r.terms())
        for (int i = 0; i < w.length(); ++i)
            out.add(w.subword(0, i), w.letters[i].ord, w.subword(i + 1, w.length()), c);
    return out;
}

// I{ l (x) v (x) r } = (l v) (x) r - l (x) (v r)
inline TensorPair map_I(const CobarAlgebra &R, const OneForm &om)
{
    TensorPair out;
    for (const auto &[k, c] : om.terms) {
        const auto &[l, go, r] = k;
        TensorWord v;
        v.letters.push_back(R.gen(go));
        out.add(l * v, r, c);
        out.add(l, v * r, -c);
    }
    return out;
}

// projection Omega^1_R -> Omega^1_{R,natural}: cycle the right factor around
inline OneFormClass natural_class(const CobarAlgebra &R, const OneForm &om)
{
    OneFormClass out;
    for (const auto &[k, c] : om.terms) {
        const auto &[l, go, r] = k;
        int dr = r.degree();
        int dl = l.degree() + R.gen(go).degree;
        out.add(r * l, go, ((dr & 1) && (dl & 1)) ? -c : c);
    }
    return out;
}

// delbar: R -> Omega^1_{R,natural}, the cyclic symmetrization of del
inline OneFormClass dbar(const FreeElement &r)
{
    OneFormClass out;
    for (const auto &[w, c] : r.terms()) {
        int m = w.length();
        for (int i = 0; i < m; ++i) {
            int pre = w.subword(0, i + 1).degree();
            int post = w.subword(i + 1, m).degree();
            Rational coeff = ((pre & 1) && (post & 1)) ? -c : c;
            out.add(w.subword(i + 1, m) * w.subword(0, i), w.letters[i].ord, coeff);
        }
    }
    return out;
}

// beta: Omega^1_{R,natural} -> R
inline FreeElement beta(const CobarAlgebra &R, const OneFormClass &om)
{
    FreeElement out;
    for (const auto &[k, c] : om.terms) {
        const auto &[w, go] = k;
        TensorWord v;
        v.letters.push_back(R.gen(go));
        out.add(w * v, c);
        int dv = R.gen(go).degree, dw = w.degree();
        out.add(v * w, ((dv & 1) && (dw & 1)) ? c : -c);
    }
    return out;
}

// differential on Omega^1_R induced by the outer bimodule structure
inline OneForm oneform_d(const CobarAlgebra &R, const OneForm &om)
{
    OneForm out;
    for (const auto &[k, c] : om.terms) {
        const auto &[l, go, r] = k;
        FreeElement dl = R.d(l), dg = R.d_gen(go), drr = R.d(r);
        for (const auto &[u, cu] : dl.terms())
            out.add(u, go, r, c * cu);
        int sl = l.degree() & 1;
        for (const auto &[y, cy] : dg.terms()) {
            Rational cc = c * cy;
            if (sl)
                cc = -cc;
            for (int j = 0; j < y.length(); ++j)
                out.add(l * y.subword(0, j), y.letters[j].ord, y.subword(j + 1, y.length()) * r,
                        cc);
        }
        int sg = (sl + (R.gen(go).degree & 1)) & 1;
        for (const auto &[u, cu] : drr.terms()) {
            Rational cc = c * cu;
            if (sg)
                cc = -cc;
            out.add(l, go, u, cc);
        }
    }
    return out;
}

// induced differential on Omega^1_{R,natural} in the R (x) V coordinates
inline OneFormClass oneform_class_d(const CobarAlgebra &R, const OneFormClass &om)
{
    OneFormClass out;
    for (const auto &[k, c] : om.terms) {
        OneForm lift;
        lift.add(k.first, k.second, TensorWord{}, c);
        out += natural_class(R, oneform_d(R, lift));
    }
    return out;
}

// identification of the one-form quotient with chains: (w (x) v) maps to
// (-1)^{|v||w|} (v, w_1, ..., w_m) (distinguished letter first, Koszul twist).
// Under it, the cyclic symmetrization acts as N and -beta acts as 1 - T.
inline FreeElement oneform_to_chain(const CobarAlgebra &R, const OneFormClass &om)
{
    FreeElement out;
    for (const auto &[k, c] : om.terms) {
        TensorWord v;
        v.letters.push_back(R.gen(k.second));
        int dv = v.degree() & 1, dw = k.first.degree() & 1;
        out.add(v * k.first, (dv && dw) ? -c : c);
    }
    return out;
}

inline OneFormClass chain_to_oneform(const CobarAlgebra &R, const FreeElement &x)
{
    OneFormClass out;
    for (const auto &[w, c] : x.terms()) {
        if (w.empty())
            throw std::invalid_argument("chain_to_oneform: empty chain word");
        int dv = w.letters[0].degree & 1, dw = (w.degree() - w.letters[0].degree) & 1;
        out.add(w.subword(1, w.length()), w.letters[0].ord, (dv && dw) ? -c : c);
    }
    return out;
}

// mu circle sigma on R (x) R (graded switch, then multiply)
inline FreeElement mu_sigma(const TensorPair &p)
{
    FreeElement out;
    for (const auto &[k, c] : p.terms) {
        int da = k.first.degree(), db = k.second.degree();
        out.add(k.second * k.first, ((da & 1) && (db & 1)) ? -c : c);
    }
    return out;
}

// ---------------------------------------------------------------------------
// normalized Hochschild chains C (x) Omega(C)

struct HochschildChain {
    // key: (coalgebra basis index of c0, word of s^-1 letters)
    std::map<std::pair<int, TensorWord>, Rational> terms;

    void add(int c0, const TensorWord &w, const Rational &c)
    {
        if (c.is_zero())
            return;
        auto key = std::make_pair(c0, w);
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
    friend bool operator==(const HochschildChain &a, const HochschildChain &b)
    {
        return a.terms == b.terms;
    }
};

// words over the unit-adjoined letters <-> normalized chains: the first
// letter becomes c0, words with the counit letter elsewhere are degenerate
inline HochschildChain normalize_chain(const CobarAlgebra &Rt, const FreeElement &x)
{
    if (!Rt.unit_adjoined())
        throw std::invalid_argument("normalize_chain: need the unit-adjoined cobar algebra");
    HochschildChain out;
    int e = Rt.counit_letter();
    for (const auto &[w, c] : x.terms()) {
        if (w.empty())
            continue;
        bool degenerate = false;
        for (int i = 1; i < w.length(); ++i)
            if (w.letters[i].ord == e)
                degenerate = true;
        if (degenerate)
            continue;
        out.add(w.letters[0].ord, w.subword(1, w.length()), c);
    }
    return out;
}

inline FreeElement chain_lift(const CobarAlgebra &Rt, const HochschildChain &h)
{
    FreeElement out;
    for (const auto &[k, c] : h.terms) {
        TensorWord v;
        v.letters.push_back(Rt.gen(k.first));
        out.add(v * k.second, c);
    }
    return out;
}

// twisted differential id (x) b' + tau_L + tau_R, computed through the
// unnormalized model. The module slot c0 is graded by its coalgebra degree,
// not the desuspended one, which costs one global sign relative to the lift;
// with it the cobar embedding below commutes with the differentials on the
// nose.
inline HochschildChain hochschild_chain_d(const CobarAlgebra &Rt, const HochschildChain &h)
{
    HochschildChain out = normalize_chain(Rt, hochschild_b(Rt, chain_lift(Rt, h)));
    for (auto &[k, c] : out.terms)
        c = -c;
    return out;
}

// embedding of the cobar construction into the normalized Hochschild complex
inline HochschildChain embed_cobar_chain(const CobarAlgebra &Rt, const FreeElement &r)
{
    HochschildChain out;
    int e = Rt.counit_letter();
    for (const auto &[w, c] : r.terms())
        out.add(e, w, c);
    return out;
}

// Connes operator: signed cyclic sum of rotations, placed in the normalized
// complex with the counit element in the module slot
inline HochschildChain connes_B_cobar(const CobarAlgebra &Rt, const TensorWord &u)
{
    if (!Rt.unit_adjoined())
        throw std::invalid_argument("connes_B_cobar: need the unit-adjoined cobar algebra");
    HochschildChain out;
    int e = Rt.counit_letter();
    int n = u.length();
    for (int i = 1; i <= n; ++i) {
        bool degenerate = false;
        for (const auto &g : u.letters)
            if (g.ord == e)
                degenerate = true;
        if (degenerate)
            break;
        int pre = u.subword(0, i).degree();
        int post = u.subword(i, n).degree();
        Rational c(((pre & 1) && (post & 1)) ? -1 : 1);
        out.add(e, u.subword(i, n) * u.subword(0, i), c);
    }
    return out;
}

inline HochschildChain connes_B_cobar(const CobarAlgebra &Rt, const FreeElement &r)
{
    HochschildChain out;
    for (const auto &[w, c] : r.terms()) {
        HochschildChain part = connes_B_cobar(Rt, w);
        for (const auto &[k, cc] : part.terms)
            out.add(k.first, k.second, cc * c);
    }
    return out;
}

// ---------------------------------------------------------------------------
// blockwise homology

enum class ComplexKind { cobar_natural, oneform_natural, hochschild, cyclic };

inline std::string complex_kind_name(ComplexKind k)
{
    switch (k) {
    case ComplexKind::cobar_natural:
        return "cobar_natural";
    case ComplexKind::oneform_natural:
        return "oneform_natural";
    case ComplexKind::hochschild:
        return "hochschild";
    case ComplexKind::cyclic:
        return "cyclic";
    }
    return "?";
}

// monomial block of Rbar together with the graded-commutator span and a
// complementary set of representatives (a basis of the natural quotient)
struct NaturalBlock {
    std::vector<TensorWord> words;
    detail::Echelon commutators;
    std::vector<int> reps;

    int dim() const { return (int)reps.size(); }
};

inline NaturalBlock natural_block(const CobarAlgebra &R, int degree, int weight,
                                  std::size_t max_words = 500000)
{
    NaturalBlock blk;
    blk.words = R.block_words(degree, weight, 1, max_words);
    std::map<TensorWord, int> index;
    for (int i = 0; i < (int)blk.words.size(); ++i)
        index[blk.words[i]] = i;
    for (const auto &w : blk.words) {
        // commutators of monomial factorizations: u v - (-1)^{|u||v|} v u.
        // Every monomial commutator landing in the block arises this way.
        for (int k = 1; k < w.length(); ++k) {
            TensorWord u = w.subword(0, k), v = w.subword(k, w.length());
            SparseVec row;
            row[index.at(w)] += Rational(1);
            int du = u.degree(), dv = v.degree();
            Rational s(((du & 1) && (dv & 1)) ? 1 : -1);
            row[index.at(v * u)] += s;
            for (auto it = row.begin(); it != row.end();)
                it = it->second.is_zero() ? row.erase(it) : std::next(it);
            if (!row.empty())
                blk.commutators.insert(std::move(row));
        }
    }
    detail::Echelon span = blk.commutators; // keep the pure commutator span
    for (int i = 0; i < (int)blk.words.size(); ++i) {
        SparseVec e;
        e[i] = Rational(1);
        if (span.insert(std::move(e)))
            blk.reps.push_back(i);
    }
    return blk;
}

inline SubspaceBasis natural_quotient_basis(const CobarAlgebra &R, int degree, int weight)
{
    NaturalBlock blk = natural_block(R, degree, weight);
    SubspaceBasis out;
    out.ambient_dim = (int)blk.words.size();
    for (int i : blk.reps) {
        SparseVec e;
        e[i] = Rational(1);
        out.vectors.push_back(std::move(e));
    }
    return out;
}

namespace cobdetail {

inline SparseVec to_vec(const FreeElement &x, const std::map<TensorWord, int> &index)
{
    SparseVec v;
    for (const auto &[w, c] : x.terms()) {
        auto it = index.find(w);
        if (it == index.end())
            throw std::logic_error("cobar homology: image word outside target block: " + w.str());
        v[it->second] += c;
    }
    return v;
}

inline std::map<TensorWord, int> word_index(const std::vector<TensorWord> &ws)
{
    std::map<TensorWord, int> index;
    for (int i = 0; i < (int)ws.size(); ++i)
        index[ws[i]] = i;
    return index;
}

// rank of the induced map span(vectors) -> target/targetsub given the images
inline int relative_rank(const std::vector<SparseVec> &images, const detail::Echelon &target_sub)
{
    detail::Echelon e = target_sub;
    int base = (int)e.rows.size();
    for (const auto &v : images)
        e.insert(v);
    return (int)e.rows.size() - base;
}

inline int plain_rank(const std::vector<SparseVec> &images)
{
    detail::Echelon e;
    for (const auto &v : images)
        e.insert(v);
    return (int)e.rows.size();
}

// kernel basis of the (1 - T) endomorphism of a word block
inline std::vector<SparseVec> cyclic_kernel(const std::vector<TensorWord> &words,
                                            const std::map<TensorWord, int> &index)
{
    int n = (int)words.size();
    SparseMatrix m(n, n);
    for (int j = 0; j < n; ++j) {
        FreeElement x(words[j]);
        FreeElement y = x;
        y -= hochschild_T(x);
        for (const auto &[w, c] : y.terms())
            m.add(index.at(w), j, c);
    }
    auto rki = rank_kernel_image(m);
    return rki.kernel.vectors;
}

} // namespace cobdetail

// dim H at the given (degree, weight) block of the named complex, in the
// native grading (sums of s^-1 letter degrees; differentials lower it by 1).
inline int homology_dim(const CobarAlgebra &R, ComplexKind kind, int degree, int weight,
                        std::size_t max_words = 500000)
{
    using namespace cobdetail;
    switch (kind) {
    case ComplexKind::cobar_natural: {
        NaturalBlock b0 = natural_block(R, degree, weight, max_words);
        NaturalBlock b1 = natural_block(R, degree + 1, weight, max_words);
        auto idx_dn = word_index(R.block_words(degree - 1, weight, 1, max_words));
        auto idx_0 = word_index(b0.words);
        NaturalBlock bdn = natural_block(R, degree - 1, weight, max_words);
        std::vector<SparseVec> im0, im1;
        for (int i : b0.reps)
            im0.push_back(to_vec(R.d(FreeElement(b0.words[i])), idx_dn));
        for (int i : b1.reps)
            im1.push_back(to_vec(R.d(FreeElement(b1.words[i])), idx_0));
        int rank_d0 = relative_rank(im0, bdn.commutators);
        int rank_d1 = relative_rank(im1, b0.commutators);
        return b0.dim() - rank_d0 - rank_d1;
    }
    case ComplexKind::hochschild: {
        auto w0 = R.block_words(degree, weight, 1, max_words);
        auto w1 = R.block_words(degree + 1, weight, 1, max_words);
        auto idx_dn = word_index(R.block_words(degree - 1, weight, 1, max_words));
        auto idx_0 = word_index(w0);
        std::vector<SparseVec> im0, im1;
        for (const auto &w : w0)
            im0.push_back(to_vec(hochschild_b(R, FreeElement(w)), idx_dn));
        for (const auto &w : w1)
            im1.push_back(to_vec(hochschild_b(R, FreeElement(w)), idx_0));
        return (int)w0.size() - plain_rank(im0) - plain_rank(im1);
    }
    case ComplexKind::cyclic: {
        auto w0 = R.block_words(degree, weight, 1, max_words);
        auto w1 = R.block_words(degree + 1, weight, 1, max_words);
        auto idx_0 = word_index(w0);
        auto idx_1 = word_index(w1);
        auto idx_dn = word_index(R.block_words(degree - 1, weight, 1, max_words));
        auto k0 = cyclic_kernel(w0, idx_0);
        auto k1 = cyclic_kernel(w1, idx_1);
        auto apply_b = [&](const SparseVec &v, const std::vector<TensorWord> &ws,
                           const std::map<TensorWord, int> &target) {
            FreeElement x;
            for (const auto &[j, c] : v)
                x.add(ws[j], c);
            return to_vec(hochschild_b(R, x), target);
        };
        std::vector<SparseVec> im0, im1;
        for (const auto &v : k0)
            im0.push_back(apply_b(v, w0, idx_dn));
        for (const auto &v : k1)
            im1.push_back(apply_b(v, w1, idx_0));
        return (int)k0.size() - plain_rank(im0) - plain_rank(im1);
    }
    case ComplexKind::oneform_natural: {
        auto enumerate = [&](int deg) {
            std::vector<std::pair<TensorWord, int>> keys;
            for (const auto &g : R.generators())
                for (const auto &w :
                     R.block_words(deg - g.degree, weight - g.weight, 0, max_words))
                    keys.emplace_back(w, g.ord);
            std::sort(keys.begin(), keys.end());
            return keys;
        };
        auto idx_of = [](const std::vector<std::pair<TensorWord, int>> &keys) {
            std::map<std::pair<TensorWord, int>, int> m;
            for (int i = 0; i < (int)keys.size(); ++i)
                m[keys[i]] = i;
            return m;
        };
        auto k0 = enumerate(degree), k1 = enumerate(degree + 1), kdn = enumerate(degree - 1);
        auto i0 = idx_of(k0), idn = idx_of(kdn);
        auto apply = [&](const std::pair<TensorWord, int> &key,
                         const std::map<std::pair<TensorWord, int>, int> &target) {
            OneFormClass om;
            om.add(key.first, key.second, Rational(1));
            OneFormClass d = oneform_class_d(R, om);
            SparseVec v;
            for (const auto &[k, c] : d.terms) {
                auto it = target.find(k);
                if (it == target.end())
                    throw std::logic_error("oneform homology: image outside target block");
                v[it->second] += c;
            }
            return v;
        };
        std::vector<SparseVec> im0, im1;
        for (const auto &k : k0)
            im0.push_back(apply(k, idn));
        for (const auto &k : k1)
            im1.push_back(apply(k, i0));
        return (int)k0.size() - plain_rank(im0) - plain_rank(im1);
    }
    }
    return 0;
}

// blockwise exactness of 0 -> CC -> Omega^1_{R,natural} -> Rbar -> CC -> 0
// (i the chain identification on Ker(1-T), then -beta, then the natural
// projection onto Coker(1-T))
inline CheckReport check_periodic_exactness(const AInfCoalgebra &C, int degree, int weight,
                                            std::size_t max_words = 500000)
{
    using namespace cobdetail;
    CheckReport rep;
    CobarAlgebra R(C, /*adjoin_unit=*/true);
    auto tag = [&](const std::string &s) {
        return "periodic exactness (deg " + std::to_string(degree) + ", wt " +
               std::to_string(weight) + "): " + s;
    };

    auto words = R.block_words(degree, weight, 1, max_words);
    auto index = word_index(words);

    // Omega^1 block basis
    std::vector<std::pair<TensorWord, int>> okeys;
    for (const auto &g : R.generators())
        for (const auto &w : R.block_words(degree - g.degree, weight - g.weight, 0, max_words))
            okeys.emplace_back(w, g.ord);
    std::sort(okeys.begin(), okeys.end());
    std::map<std::pair<TensorWord, int>, int> oindex;
    for (int i = 0; i < (int)okeys.size(); ++i)
        oindex[okeys[i]] = i;

    if (okeys.size() != words.size())
        rep.violations.push_back(tag("Omega^1 and Rbar blocks have different dimensions"));

    auto kernel = cyclic_kernel(words, index);

    auto oneform_vec = [&](const OneFormClass &om) {
        SparseVec v;
        for (const auto &[k, c] : om.terms) {
            auto it = oindex.find(k);
            if (it == oindex.end())
                throw std::logic_error("periodic exactness: one-form outside block");
            v[it->second] += c;
        }
        return v;
    };
    auto word_vec = [&](const FreeElement &x) { return to_vec(x, index); };

    // i: identify Ker(1-T) chains with one-form classes
    std::vector<SparseVec> i_images;
    for (const auto &v : kernel) {
        FreeElement x;
        for (const auto &[j, c] : v)
            x.add(words[j], c);
        i_images.push_back(oneform_vec(chain_to_oneform(R, x)));
    }
    if (plain_rank(i_images) != (int)kernel.size())
        rep.violations.push_back(tag("i is not injective"));

    // -beta on the Omega^1 block
    std::vector<SparseVec> beta_images;
    detail::Echelon beta_image_span;
    for (const auto &k : okeys) {
        OneFormClass om;
        om.add(k.first, k.second, Rational(1));
        FreeElement b = beta(R, om);
        b *= Rational(-1);
        SparseVec v = word_vec(b);
        beta_images.push_back(v);
        beta_image_span.insert(v);
    }
    int rank_beta = (int)beta_image_span.rows.size();
    int ker_beta = (int)okeys.size() - rank_beta;

    // Im(i) inside Ker(-beta): check -beta vanishes on each i image
    for (const auto &v : kernel) {
        FreeElement x;
        for (const auto &[j, c] : v)
            x.add(words[j], c);
        FreeElement b = beta(R, chain_to_oneform(R, x));
        if (!(b == FreeElement{})) {
            rep.violations.push_back(tag("beta does not vanish on the image of i"));
            break;
        }
    }
    if (ker_beta != (int)kernel.size())
        rep.violations.push_back(tag("Ker(-beta) strictly larger than Im(i): " + std::to_string(ker_beta) +
                     " vs " + std::to_string(kernel.size())));

    // pi: Rbar -> Coker(1-T); its kernel is the commutator span of the block
    NaturalBlock nb = natural_block(R, degree, weight, max_words);
    int dim_comm = (int)nb.commutators.rows.size();
    for (auto v : beta_images) {
        if (!nb.commutators.contains(v)) {
            rep.violations.push_back(tag("Im(-beta) not contained in Ker(pi)"));
            break;
        }
    }
    if (rank_beta != dim_comm)
        rep.violations.push_back(tag("Ker(pi) strictly larger than Im(-beta): " + std::to_string(dim_comm) +
                     " vs " + std::to_string(rank_beta)));

    // pi surjective: representatives exist for every quotient dimension
    if (nb.dim() + dim_comm != (int)words.size())
        rep.violations.push_back(tag("pi is not surjective onto Coker(1-T)"));

    return rep;
}

inline nlohmann::json homology_table_json(const CobarAlgebra &R, ComplexKind kind,
                                          int max_degree, int max_weight)
{
    nlohmann::json blocks = nlohmann::json::array();
    for (int w = 0; w <= max_weight; ++w) {
        for (int d = -max_degree; d <= max_degree; ++d) {
            int dim = homology_dim(R, kind, d, w);
            if (dim > 0)
                blocks.push_back({{"degree", d}, {"weight", w}, {"dim", dim}});
        }
    }
    return nlohmann::json{{"complex", complex_kind_name(kind)}, {"blocks", blocks}};
}

} // namespace ncp
