// Graded generators, tensor words and rational linear combinations in a free
// (tensor) algebra, plus the Koszul sign rule used by every operator here.
//
// Degrees are homological. The desuspension is absorbed at construction time:
// a coalgebra basis element c of degree |c| shows up in the tensor algebra as
// a generator of degree |c|-1. Weight is the internal (tensor length) grading
// of the underlying coalgebra element; concatenation adds weights, so every
// operator downstream preserves the total weight.
#pragma once

#include "ncp/rational.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace ncp {

struct Generator {
    std::string id;
    int degree = 0;
    int weight = 1;
    int ord = 0; // declaration sequence, used for canonical ordering

    friend bool operator==(const Generator &a, const Generator &b) { return a.ord == b.ord; }
    friend bool operator!=(const Generator &a, const Generator &b) { return a.ord != b.ord; }
    friend bool operator<(const Generator &a, const Generator &b) { return a.ord < b.ord; }
};

struct TensorWord {
    std::vector<Generator> letters;

    TensorWord() = default;
    explicit TensorWord(std::vector<Generator> ls) : letters(std::move(ls)) {}

    int length() const { return (int)letters.size(); }
    int degree() const
    {
        int d = 0;
        for (auto &g : letters)
            d += g.degree;
        return d;
    }
    int weight() const
    {
        int w = 0;
        for (auto &g : letters)
            w += g.weight;
        return w;
    }
    bool empty() const { return letters.empty(); }

    TensorWord subword(int from, int to) const // half-open [from, to)
    {
        return TensorWord(std::vector<Generator>(letters.begin() + from, letters.begin() + to));
    }

    friend TensorWord operator*(const TensorWord &a, const TensorWord &b)
    {
        TensorWord w = a;
        w.letters.insert(w.letters.end(), b.letters.begin(), b.letters.end());
        return w;
    }

    // graded-lexicographic: weight, then degree, then length, then letter ords
    friend bool operator<(const TensorWord &a, const TensorWord &b)
    {
        int aw = a.weight(), bw = b.weight();
        if (aw != bw)
            return aw < bw;
        int ad = a.degree(), bd = b.degree();
        if (ad != bd)
            return ad < bd;
        if (a.letters.size() != b.letters.size())
            return a.letters.size() < b.letters.size();
        for (size_t i = 0; i < a.letters.size(); ++i)
            if (a.letters[i].ord != b.letters[i].ord)
                return a.letters[i].ord < b.letters[i].ord;
        return false;
    }
    friend bool operator==(const TensorWord &a, const TensorWord &b)
    {
        if (a.letters.size() != b.letters.size())
            return false;
        for (size_t i = 0; i < a.letters.size(); ++i)
            if (a.letters[i].ord != b.letters[i].ord)
                return false;
        return true;
    }

    std::string str() const
    {
        if (letters.empty())
            return "1";
        std::string s = "[";
        for (size_t i = 0; i < letters.size(); ++i) {
            if (i)
                s += "|";
            s += letters[i].id;
        }
        return s + "]";
    }
};

// Koszul sign of reordering homogeneous objects: the new sequence is
// x_{perm[0]}, x_{perm[1]}, ..., where degrees[i] is the degree of x_i.
// Each inversion of two odd-degree objects contributes a factor -1.
inline int koszul_sign(const std::vector<int> &perm, const std::vector<int> &degrees)
{
    if (perm.size() != degrees.size())
        throw std::invalid_argument("koszul_sign: length mismatch");
    long inv = 0;
    for (size_t i = 0; i < perm.size(); ++i)
        for (size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j] && (degrees[perm[i]] & 1) && (degrees[perm[j]] & 1))
                ++inv;
    return inv & 1 ? -1 : 1;
}

class FreeElement {
public:
    FreeElement() = default;
    explicit FreeElement(const TensorWord &w, const Rational &c = Rational(1))
    {
        if (!c.is_zero())
            terms_[w] = c;
    }
    static FreeElement unit(const Rational &c = Rational(1)) { return FreeElement(TensorWord{}, c); }

    const std::map<TensorWord, Rational> &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add(const TensorWord &w, const Rational &c)
    {
        if (c.is_zero())
            return;
        auto it = terms_.find(w);
        if (it == terms_.end()) {
            terms_.emplace(w, c);
        } else {
            it->second += c;
            if (it->second.is_zero())
                terms_.erase(it);
        }
    }

    FreeElement &operator+=(const FreeElement &o)
    {
        for (auto &[w, c] : o.terms_)
            add(w, c);
        return *this;
    }
    FreeElement &operator-=(const FreeElement &o)
    {
        for (auto &[w, c] : o.terms_)
            add(w, -c);
        return *this;
    }
    FreeElement &operator*=(const Rational &c)
    {
        if (c.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto &[w, x] : terms_)
            x *= c;
        return *this;
    }
    friend FreeElement operator+(FreeElement a, const FreeElement &b) { return a += b; }
    friend FreeElement operator-(FreeElement a, const FreeElement &b) { return a -= b; }
    friend FreeElement operator*(FreeElement a, const Rational &c) { return a *= c; }
    friend FreeElement operator*(const Rational &c, FreeElement a) { return a *= c; }
    friend bool operator==(const FreeElement &a, const FreeElement &b)
    {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const FreeElement &a, const FreeElement &b) { return !(a == b); }

    friend FreeElement operator*(const FreeElement &a, const FreeElement &b)
    {
        FreeElement r;
        for (auto &[wa, ca] : a.terms_)
            for (auto &[wb, cb] : b.terms_)
                r.add(wa * wb, ca * cb);
        return r;
    }

    std::string str() const
    {
        if (terms_.empty())
            return "0";
        std::string s;
        for (auto &[w, c] : terms_) {
            if (!s.empty())
                s += " + ";
            if (c == Rational(1) && !w.empty())
                s += w.str();
            else if (w.empty())
                s += c.str();
            else
                s += c.str() + "*" + w.str();
        }
        return s;
    }

private:
    std::map<TensorWord, Rational> terms_; // no zero coefficients stored
};

} // namespace ncp
