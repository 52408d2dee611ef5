// Double bracket on the cobar algebra of a cyclic coalgebra, with its
// extensions to R (x) R and to one-forms, and the induced Loday/Lie
// brackets on the natural quotients.
//
// The bracket pairs one letter of each argument through the cyclic pairing
// of degree -d and splices the remainders; it has degree n = 2 - d. All
// other brackets are derived from it.
#pragma once

#include "ncp/cobar.hpp"

#include <map>
#include <tuple>

namespace ncp {

using DoubleValue = TensorPair; // element of R (x) R

// element of (R (x) M) + (M (x) R) with M = R (x) R, the two summands kept
// apart; used for the bracket with values in the tensor square bimodule
struct TripleValue {
    std::map<std::tuple<TensorWord, TensorWord, TensorWord>, Rational> am; // R (x) M
    std::map<std::tuple<TensorWord, TensorWord, TensorWord>, Rational> ma; // M (x) R

    static void put(std::map<std::tuple<TensorWord, TensorWord, TensorWord>, Rational> &m,
                    const TensorWord &a, const TensorWord &b, const TensorWord &c,
                    const Rational &v)
    {
        if (v.is_zero())
            return;
        auto key = std::make_tuple(a, b, c);
        auto it = m.find(key);
        if (it == m.end()) {
            m.emplace(std::move(key), v);
        } else {
            it->second += v;
            if (it->second.is_zero())
                m.erase(it);
        }
    }
    void add_am(const TensorWord &a, const TensorWord &b, const TensorWord &c, const Rational &v)
    {
        put(am, a, b, c, v);
    }
    void add_ma(const TensorWord &a, const TensorWord &b, const TensorWord &c, const Rational &v)
    {
        put(ma, a, b, c, v);
    }
    bool is_zero() const { return am.empty() && ma.empty(); }
    friend bool operator==(const TripleValue &x, const TripleValue &y)
    {
        return x.am == y.am && x.ma == y.ma;
    }
};

// element of (R (x) Omega^1_R) + (Omega^1_R (x) R); one-forms in the
// l (x) generator (x) r coordinates
struct MixedDoubleValue {
    std::map<std::tuple<TensorWord, TensorWord, int, TensorWord>, Rational> am;
    std::map<std::tuple<TensorWord, int, TensorWord, TensorWord>, Rational> ma;

    void add_am(const TensorWord &a, const TensorWord &l, int g, const TensorWord &r,
                const Rational &v)
    {
        if (v.is_zero())
            return;
        auto key = std::make_tuple(a, l, g, r);
        auto it = am.find(key);
        if (it == am.end()) {
            am.emplace(std::move(key), v);
        } else {
            it->second += v;
            if (it->second.is_zero())
                am.erase(it);
        }
    }
    void add_ma(const TensorWord &l, int g, const TensorWord &r, const TensorWord &a,
                const Rational &v)
    {
        if (v.is_zero())
            return;
        auto key = std::make_tuple(l, g, r, a);
        auto it = ma.find(key);
        if (it == ma.end()) {
            ma.emplace(std::move(key), v);
        } else {
            it->second += v;
            if (it->second.is_zero())
                ma.erase(it);
        }
    }
    bool is_zero() const { return am.empty() && ma.empty(); }
    friend bool operator==(const MixedDoubleValue &x, const MixedDoubleValue &y)
    {
        return x.am == y.am && x.ma == y.ma;
    }
};

// n = 2 - d, the degree of the bracket
inline int bracket_degree(const CobarAlgebra &R) { return 2 - R.coalgebra().cy_dim(); }

// the word-level bracket: pair letter i of u with letter j of w, splice
inline DoubleValue double_bracket(const CobarAlgebra &R, const TensorWord &u,
                                  const TensorWord &w)
{
    const auto &C = R.coalgebra();
    const auto &p = C.pairing();
    int d = p.d;
    int k = u.length(), m = w.length();
    int deg_u = u.degree();
    DoubleValue out;
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < m; ++j) {
            Rational pv = p.eval(u.letters[i].ord, w.letters[j].ord);
            if (pv.is_zero())
                continue;
            // Koszul sign of the shuffle moving the paired letters to the
            // front and splicing the remainders, plus a d-dependent twist;
            // this is the unique dressing of the splice that satisfies
            // antisymmetry, the derivation rules, the double Jacobi
            // identity and d-compatibility for either parity of d
            int a = u.subword(0, i).degree(), b = u.letters[i].degree;
            int c2 = u.subword(i + 1, k).degree();
            int pr = w.subword(0, j).degree(), e = w.letters[j].degree;
            int eps = b * a + e * (a + c2 + pr) + pr * (a + c2) + a * c2 + d * (deg_u + 1);
            Rational c = (eps & 1) ? -pv : pv;
            out.add(w.subword(0, j) * u.subword(i + 1, k),
                    u.subword(0, i) * w.subword(j + 1, m), c);
        }
    return out;
}

inline DoubleValue double_bracket(const CobarAlgebra &R, const FreeElement &r,
                                  const FreeElement &q)
{
    DoubleValue out;
    for (const auto &[u, cu] : r.terms())
        for (const auto &[w, cw] : q.terms()) {
            DoubleValue part = double_bracket(R, u, w);
            for (const auto &[key, c] : part.terms)
                out.add(key.first, key.second, c * cu * cw);
        }
    return out;
}

// {-,-} = multiplication after the double bracket
inline FreeElement loday_bracket(const CobarAlgebra &R, const FreeElement &r,
                                 const FreeElement &q)
{
    FreeElement out;
    DoubleValue db = double_bracket(R, r, q);
    for (const auto &[key, c] : db.terms)
        out.add(key.first * key.second, c);
    return out;
}

// bracket with the tensor square as outer bimodule:
// <<r, p (x) q>> = <<r,p>> (x) q + (-1)^{|p|(|r|+n)} p (x) <<r,q>>
inline TripleValue double_bracket_tensor(const CobarAlgebra &R, const FreeElement &r,
                                         const DoubleValue &pq)
{
    TripleValue out;
    int n = bracket_degree(R) & 1;
    for (const auto &[ru, cu] : r.terms()) {
        int dr = ru.degree();
        for (const auto &[key, c] : pq.terms) {
            const auto &[p, q] = key;
            DoubleValue dbp = double_bracket(R, ru, p);
            for (const auto &[xy, cb] : dbp.terms)
                out.add_am(xy.first, xy.second, q, cu * c * cb);
            DoubleValue dbq = double_bracket(R, ru, q);
            int s = (p.degree() & 1) && ((dr + n) & 1);
            for (const auto &[xy, cb] : dbq.terms) {
                Rational v = cu * c * cb;
                out.add_ma(p, xy.first, xy.second, s ? -v : v);
            }
        }
    }
    return out;
}

namespace dbdetail {

// splice l (x) y (x) r with a word y in the middle slot into honest
// one-forms by expanding over the letters of y (the unsigned Leibniz rule
// of the universal derivation)
inline void expand_middle_am(MixedDoubleValue &out, const TensorWord &a, const TensorWord &l,
                             const TensorWord &y, const TensorWord &r, const Rational &c)
{
    for (int t = 0; t < y.length(); ++t)
        out.add_am(a, l * y.subword(0, t), y.letters[t].ord, y.subword(t + 1, y.length()) * r,
                   c);
}

inline void expand_middle_ma(MixedDoubleValue &out, const TensorWord &l, const TensorWord &y,
                             const TensorWord &r, const TensorWord &a, const Rational &c)
{
    for (int t = 0; t < y.length(); ++t)
        out.add_ma(l * y.subword(0, t), y.letters[t].ord, y.subword(t + 1, y.length()) * r, a,
                   c);
}

} // namespace dbdetail

// restriction of the tensor-square bracket to one-forms through I, with the
// mixed terms regrouped so that each summand is an honest one-form tensor R
inline MixedDoubleValue double_bracket_oneform(const CobarAlgebra &R, const FreeElement &r,
                                               const OneForm &om)
{
    MixedDoubleValue out;
    int n = bracket_degree(R) & 1;
    for (const auto &[ru, cr] : r.terms()) {
        int dr1 = (ru.degree() + n) & 1;
        for (const auto &[key, cw] : om.terms) {
            const auto &[b, go, cc] = key;
            Rational coeff = cr * cw;
            TensorWord vp;
            vp.letters.push_back(R.gen(go));

            // <<r,b>>' (x) ( <<r,b>>'' (x) v (x) c )
            DoubleValue dbb = double_bracket(R, ru, b);
            for (const auto &[xy, c] : dbb.terms)
                out.add_am(xy.first, xy.second, go, cc, coeff * c);

            // (b (x) v (x) <<r,c>>') (x) <<r,c>>''
            DoubleValue dbc = double_bracket(R, ru, cc);
            int s2 = ((b.degree() + vp.degree()) & 1) && dr1;
            for (const auto &[xy, c] : dbc.terms) {
                Rational v = coeff * c;
                out.add_ma(b, go, xy.first, xy.second, s2 ? -v : v);
            }

            // middle-letter terms, regrouped across the two summands
            DoubleValue dbv = double_bracket(R, ru, vp);
            int s3 = (b.degree() & 1) && dr1;
            for (const auto &[xy, c] : dbv.terms) {
                Rational v = coeff * c;
                if (s3)
                    v = -v;
                dbdetail::expand_middle_ma(out, b, xy.first, xy.second, cc, v);
                dbdetail::expand_middle_am(out, b, xy.first, xy.second, cc, v);
            }
        }
    }
    return out;
}

// collapse the one-form slots through I; lands in the tensor-square bimodule
inline TripleValue mixed_to_triple(const CobarAlgebra &R, const MixedDoubleValue &mx)
{
    TripleValue out;
    for (const auto &[key, c] : mx.am) {
        const auto &[a, l, g, r] = key;
        TensorWord v;
        v.letters.push_back(R.gen(g));
        out.add_am(a, l * v, r, c);
        out.add_am(a, l, v * r, -c);
    }
    for (const auto &[key, c] : mx.ma) {
        const auto &[l, g, r, a] = key;
        TensorWord v;
        v.letters.push_back(R.gen(g));
        out.add_ma(l * v, r, a, c);
        out.add_ma(l, v * r, a, -c);
    }
    return out;
}

// bimodule action map applied to the mixed value: Omega^1_R-valued bracket
inline OneForm mixed_action(const MixedDoubleValue &mx)
{
    OneForm out;
    for (const auto &[key, c] : mx.am) {
        const auto &[a, l, g, r] = key;
        out.add(a * l, g, r, c);
    }
    for (const auto &[key, c] : mx.ma) {
        const auto &[l, g, r, a] = key;
        out.add(l, g, r * a, c);
    }
    return out;
}

// induced bracket on the natural quotient of one-forms: for w = q (x) v,
// natural[ {r,q} v (x) 1 - {r,q} (x) v
//          + (-1)^{|q|(|r|+n)} ( q {r,v} (x) 1 - q (x) {r,v} ) ]
inline OneFormClass oneform_natural_bracket(const CobarAlgebra &R, const FreeElement &r,
                                            const OneFormClass &w)
{
    OneForm lift;
    int n = bracket_degree(R) & 1;
    for (const auto &[ru, cr] : r.terms()) {
        int dr1 = (ru.degree() + n) & 1;
        for (const auto &[key, cw] : w.terms) {
            const auto &[q, go] = key;
            Rational coeff = cr * cw;
            TensorWord vp;
            vp.letters.push_back(R.gen(go));

            FreeElement x = loday_bracket(R, FreeElement(ru), FreeElement(q));
            for (const auto &[xw, c] : x.terms())
                lift.add(xw, go, TensorWord{}, coeff * c);

            FreeElement y = loday_bracket(R, FreeElement(ru), FreeElement(vp));
            int s = (q.degree() & 1) && dr1;
            for (const auto &[yw, c] : y.terms()) {
                Rational v = coeff * c;
                if (s)
                    v = -v;
                for (int t = 0; t < yw.length(); ++t)
                    lift.add(q * yw.subword(0, t), yw.letters[t].ord,
                             yw.subword(t + 1, yw.length()), v);
            }
        }
    }
    return natural_class(R, lift);
}

// differential on R (x) R (both factors)
inline DoubleValue double_value_d(const CobarAlgebra &R, const DoubleValue &x)
{
    DoubleValue out;
    for (const auto &[key, c] : x.terms) {
        const auto &[a, b] = key;
        FreeElement da = R.d(a), db = R.d(b);
        for (const auto &[u, cu] : da.terms())
            out.add(u, b, c * cu);
        int sa = a.degree() & 1;
        for (const auto &[u, cu] : db.terms()) {
            Rational v = c * cu;
            out.add(a, u, sa ? -v : v);
        }
    }
    return out;
}

} // namespace ncp
