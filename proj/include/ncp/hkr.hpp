// Differential forms and polyvector fields with polynomial coefficients on a
// finite-dimensional space: de Rham differential, contraction, the duality
// Psi(xi) = i_xi(dx_1 ^ ... ^ dx_m), the induced BV operator and Schouten
// bracket, and the odd bracket on forms
//
//     {a, b} = (-1)^{(m-|a|-1)(m-|b|)} i_{Psi^{-1}(db)} da
//
// whose Jacobiator is exact but not zero.
#pragma once

#include "ncp/linalg.hpp"
#include "ncp/rational.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ncp {

using Mono = std::vector<int>; // exponent vector, one slot per variable

namespace hkr_detail {

// sign sorting the concatenation of two strictly increasing index sets;
// 0 if they overlap
inline int merge_sign(const std::vector<int> &a, const std::vector<int> &b,
                      std::vector<int> &out)
{
    out = a;
    out.insert(out.end(), b.begin(), b.end());
    long inv = 0;
    for (size_t i = 0; i < out.size(); ++i)
        for (size_t j = i + 1; j < out.size(); ++j) {
            if (out[i] == out[j])
                return 0;
            if (out[i] > out[j])
                ++inv;
        }
    std::sort(out.begin(), out.end());
    return inv & 1 ? -1 : 1;
}

inline std::string var_name(int i, int m)
{
    static const char *xyz[3] = {"x", "y", "z"};
    if (m <= 3)
        return xyz[i];
    return "x" + std::to_string(i + 1);
}

} // namespace hkr_detail

// Shared carrier for forms (dx factors) and polyvectors (d/dx factors):
// polynomial coefficients attached to strictly increasing index sets.
template <char Kind> class ExtPoly {
public:
    using Key = std::pair<Mono, std::vector<int>>;

    ExtPoly() : m_(0) {}
    explicit ExtPoly(int var_count) : m_(var_count) {}

    int var_count() const { return m_; }
    const std::map<Key, Rational> &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add(const Mono &mono, const std::vector<int> &idx, const Rational &c)
    {
        if (c.is_zero())
            return;
        if ((int)mono.size() != m_)
            throw std::invalid_argument("ExtPoly: monomial size mismatch");
        for (size_t i = 0; i < idx.size(); ++i) {
            if (idx[i] < 0 || idx[i] >= m_)
                throw std::out_of_range("ExtPoly: index out of range");
            if (i + 1 < idx.size() && idx[i] >= idx[i + 1])
                throw std::invalid_argument("ExtPoly: index set not increasing");
        }
        Key k{mono, idx};
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            terms_.emplace(std::move(k), c);
        } else {
            it->second += c;
            if (it->second.is_zero())
                terms_.erase(it);
        }
    }

    ExtPoly &operator+=(const ExtPoly &o)
    {
        check_dim(o);
        for (auto &[k, c] : o.terms_)
            add(k.first, k.second, c);
        return *this;
    }
    ExtPoly &operator-=(const ExtPoly &o)
    {
        check_dim(o);
        for (auto &[k, c] : o.terms_)
            add(k.first, k.second, -c);
        return *this;
    }
    ExtPoly &operator*=(const Rational &c)
    {
        if (c.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto &[k, x] : terms_)
            x *= c;
        return *this;
    }
    friend ExtPoly operator+(ExtPoly a, const ExtPoly &b) { return a += b; }
    friend ExtPoly operator-(ExtPoly a, const ExtPoly &b) { return a -= b; }
    friend ExtPoly operator*(ExtPoly a, const Rational &c) { return a *= c; }
    friend ExtPoly operator*(const Rational &c, ExtPoly a) { return a *= c; }
    friend bool operator==(const ExtPoly &a, const ExtPoly &b)
    {
        return a.m_ == b.m_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const ExtPoly &a, const ExtPoly &b) { return !(a == b); }

    // exterior product; indices anticommute, polynomial parts commute
    friend ExtPoly operator^(const ExtPoly &a, const ExtPoly &b)
    {
        a.check_dim(b);
        ExtPoly r(a.m_);
        for (auto &[ka, ca] : a.terms_)
            for (auto &[kb, cb] : b.terms_) {
                std::vector<int> merged;
                int s = hkr_detail::merge_sign(ka.second, kb.second, merged);
                if (s == 0)
                    continue;
                Mono mono = ka.first;
                for (int i = 0; i < a.m_; ++i)
                    mono[i] += kb.first[i];
                r.add(mono, merged, ca * cb * Rational(s));
            }
        return r;
    }

    // true if every term has this exterior degree
    bool homogeneous(int k) const
    {
        for (auto &[key, c] : terms_)
            if ((int)key.second.size() != k)
                return false;
        return true;
    }
    // exterior degree of the first term (elements here are kept homogeneous
    // by the operations that need it)
    int ext_degree() const { return terms_.empty() ? 0 : (int)terms_.begin()->first.second.size(); }

    std::string str() const
    {
        if (terms_.empty())
            return "0";
        std::string s;
        for (auto &[k, c] : terms_) {
            std::string t;
            if (c == Rational(-1))
                t += "-";
            else if (c != Rational(1)) {
                t += c.str();
                t += "*";
            }
            std::string mono;
            for (int i = 0; i < m_; ++i) {
                if (k.first[i] == 0)
                    continue;
                if (!mono.empty())
                    mono += "*";
                mono += hkr_detail::var_name(i, m_);
                if (k.first[i] > 1)
                    mono += "^" + std::to_string(k.first[i]);
            }
            if (mono.empty() && k.second.empty())
                mono = "1";
            t += mono;
            if (!k.second.empty()) {
                if (!mono.empty())
                    t += " ";
                for (size_t i = 0; i < k.second.size(); ++i) {
                    if (i)
                        t += "^";
                    t += Kind == 'f' ? "d" + hkr_detail::var_name(k.second[i], m_)
                                     : "d/d" + hkr_detail::var_name(k.second[i], m_);
                }
            }
            if (t.empty() || t == "-")
                t += "1";
            if (s.empty())
                s = t;
            else if (!t.empty() && t[0] == '-')
                s += " - " + t.substr(1);
            else
                s += " + " + t;
        }
        return s;
    }

private:
    int m_;
    std::map<Key, Rational> terms_;

    void check_dim(const ExtPoly &o) const
    {
        if (m_ != o.m_)
            throw std::invalid_argument("ExtPoly: variable count mismatch");
    }
};

using PolyForm = ExtPoly<'f'>;
using PolyVector = ExtPoly<'v'>;

inline PolyForm de_rham_d(const PolyForm &a)
{
    int m = a.var_count();
    PolyForm r(m);
    for (auto &[k, c] : a.terms()) {
        for (int i = 0; i < m; ++i) {
            if (k.first[i] == 0)
                continue;
            if (std::binary_search(k.second.begin(), k.second.end(), i))
                continue;
            Mono mono = k.first;
            mono[i] -= 1;
            std::vector<int> idx{i};
            std::vector<int> merged;
            int s = hkr_detail::merge_sign(idx, k.second, merged);
            r.add(mono, merged, c * Rational(s * k.first[i]));
        }
    }
    return r;
}

// contraction of a single d/dx_i against the (unique) matching dx slot
inline PolyForm contract_basis(int i, const PolyForm &a)
{
    PolyForm r(a.var_count());
    for (auto &[k, c] : a.terms()) {
        auto pos = std::find(k.second.begin(), k.second.end(), i);
        if (pos == k.second.end())
            continue;
        int before = (int)(pos - k.second.begin());
        std::vector<int> idx = k.second;
        idx.erase(idx.begin() + before);
        r.add(k.first, idx, (before & 1) ? -c : c);
    }
    return r;
}

// i_{xi ^ eta} = i_xi o i_eta, basis vectors act one at a time
inline PolyForm contract(const PolyVector &xi, const PolyForm &a)
{
    if (xi.var_count() != a.var_count())
        throw std::invalid_argument("contract: variable count mismatch");
    int m = a.var_count();
    PolyForm r(m);
    for (auto &[k, c] : xi.terms()) {
        PolyForm part = a;
        for (auto it = k.second.rbegin(); it != k.second.rend(); ++it)
            part = contract_basis(*it, part);
        for (auto &[ka, ca] : part.terms()) {
            Mono mono = ka.first;
            for (int i = 0; i < m; ++i)
                mono[i] += k.first[i];
            r.add(mono, ka.second, c * ca);
        }
    }
    return r;
}

inline PolyForm volume_form(int m)
{
    PolyForm w(m);
    std::vector<int> all(m);
    for (int i = 0; i < m; ++i)
        all[i] = i;
    w.add(Mono(m, 0), all, Rational(1));
    return w;
}

inline PolyForm psi(const PolyVector &xi)
{
    return contract(xi, volume_form(xi.var_count()));
}

inline PolyVector psi_inverse(const PolyForm &a)
{
    // Psi sends the basis polyvector d_T to (sign) dx_{T^c}; invert termwise.
    int m = a.var_count();
    PolyVector r(m);
    for (auto &[k, c] : a.terms()) {
        std::vector<int> comp;
        for (int i = 0; i < m; ++i)
            if (!std::binary_search(k.second.begin(), k.second.end(), i))
                comp.push_back(i);
        PolyVector unit(m);
        unit.add(Mono(m, 0), comp, Rational(1));
        PolyForm image = psi(unit);
        // image is a single term c' dx_{k.second}
        const Rational &coeff = image.terms().begin()->second;
        r.add(k.first, comp, c / coeff);
    }
    return r;
}

inline PolyVector bv_delta(const PolyVector &xi) { return psi_inverse(de_rham_d(psi(xi))); }

// Needs homogeneous arguments (exterior degree well defined).
inline PolyVector schouten_bracket(const PolyVector &a, const PolyVector &b)
{
    int da = a.ext_degree();
    PolyVector r = bv_delta(a ^ b) - (bv_delta(a) ^ b);
    PolyVector last = a ^ bv_delta(b);
    if (da & 1)
        r += last;
    else
        r -= last;
    if (da & 1)
        r *= Rational(-1);
    return r;
}

inline PolyForm hkr_bracket(const PolyForm &a, const PolyForm &b)
{
    if (a.var_count() != b.var_count())
        throw std::invalid_argument("hkr_bracket: variable count mismatch");
    int m = a.var_count();
    PolyVector eta = psi_inverse(de_rham_d(b));
    PolyForm r = contract(eta, de_rham_d(a));
    int e = (m - a.ext_degree() - 1) * (m - b.ext_degree());
    if (e & 1)
        r *= Rational(-1);
    return r;
}

// {{a,b},c} - {a,{b,c}} + (-1)^{(m-|a|)(m-|b|)} {b,{a,c}}, the failure of the
// graded left Jacobi identity. The bracket shifts a form of degree k to Lie
// parity m-k; with that sign the jacobiator is always an exact form, so the
// bracket is a genuine Lie bracket on forms modulo exact forms. Arguments
// must be homogeneous in form degree.
inline PolyForm jacobiator(const PolyForm &a, const PolyForm &b, const PolyForm &c)
{
    int m = a.var_count();
    PolyForm r = hkr_bracket(hkr_bracket(a, b), c) - hkr_bracket(a, hkr_bracket(b, c));
    PolyForm last = hkr_bracket(b, hkr_bracket(a, c));
    if (((m - a.ext_degree()) * (m - b.ext_degree())) & 1)
        r -= last;
    else
        r += last;
    return r;
}

// Solve d(nu) = a exactly; nullopt if a is not exact. The search space is the
// finite block of monomial forms whose differential can hit the terms of a.
inline std::optional<PolyForm> d_primitive(const PolyForm &a)
{
    if (a.is_zero())
        return PolyForm(a.var_count());
    int m = a.var_count();

    // candidate primitives: one exterior degree down, one polynomial degree up
    std::map<std::pair<int, int>, bool> blocks; // (poly degree, ext degree) of a
    for (auto &[k, c] : a.terms()) {
        int pd = 0;
        for (int e : k.first)
            pd += e;
        blocks[{pd + 1, (int)k.second.size() - 1}] = true;
        if ((int)k.second.size() == 0)
            return std::nullopt; // 0-forms are never exact here (no constants in image)
    }

    std::vector<PolyForm::Key> basis;
    // enumerate monomials of a given total degree
    std::vector<Mono> mono_buf;
    std::function<void(Mono &, int, int)> enum_monos = [&](Mono &cur, int i, int left) {
        if (i == m - 1) {
            cur[i] = left;
            mono_buf.push_back(cur);
            return;
        }
        for (int e = 0; e <= left; ++e) {
            cur[i] = e;
            enum_monos(cur, i + 1, left - e);
        }
    };
    std::vector<std::vector<int>> idx_buf;
    std::function<void(std::vector<int> &, int, int)> enum_idx = [&](std::vector<int> &cur,
                                                                     int start, int left) {
        if (left == 0) {
            idx_buf.push_back(cur);
            return;
        }
        for (int i = start; i < m; ++i) {
            cur.push_back(i);
            enum_idx(cur, i + 1, left - 1);
            cur.pop_back();
        }
    };
    for (auto &[blk, _] : blocks) {
        (void)_;
        auto [pd, ed] = blk;
        if (ed < 0)
            continue;
        mono_buf.clear();
        Mono cur(m, 0);
        enum_monos(cur, 0, pd);
        idx_buf.clear();
        std::vector<int> ic;
        enum_idx(ic, 0, ed);
        for (auto &mo : mono_buf)
            for (auto &ix : idx_buf)
                basis.emplace_back(mo, ix);
    }

    // target coordinates: index every monomial form appearing in d(basis) or a
    std::map<PolyForm::Key, int> target_index;
    auto index_of = [&](const PolyForm::Key &k) {
        auto it = target_index.find(k);
        if (it == target_index.end())
            it = target_index.emplace(k, (int)target_index.size()).first;
        return it->second;
    };
    std::vector<PolyForm> images;
    images.reserve(basis.size());
    for (auto &k : basis) {
        PolyForm f(m);
        f.add(k.first, k.second, Rational(1));
        images.push_back(de_rham_d(f));
        for (auto &[tk, tc] : images.back().terms())
            index_of(tk);
    }
    for (auto &[tk, tc] : a.terms())
        index_of(tk);

    SparseMatrix mat((int)target_index.size(), (int)basis.size());
    for (size_t j = 0; j < basis.size(); ++j)
        for (auto &[tk, tc] : images[j].terms())
            mat.add(target_index.at(tk), (int)j, tc);
    SparseVec rhs;
    for (auto &[tk, tc] : a.terms())
        rhs[target_index.at(tk)] = tc;

    auto sol = solve(mat, rhs);
    if (!sol)
        return std::nullopt;
    PolyForm nu(m);
    for (auto &[j, c] : *sol)
        nu.add(basis[j].first, basis[j].second, c);
    return nu;
}

} // namespace ncp
