// Text grammar for the objects the command line handles: cobar words
// rendered as [g1|g2|g3] (with an optional s^-1 marker in front of each
// letter), rational linear combinations of words, and differential forms /
// polyvector fields such as
//
//     x^2*y*z dx        x*y dz^dx        x d/dx ^ d/dy
//
// Printing uses the canonical str() renderings of the underlying types;
// parse is a left inverse of print on every canonical rendering.
#pragma once

#include "ncp/coalgebra.hpp"
#include "ncp/hkr.hpp"
#include "ncp/tensor.hpp"

#include <cctype>
#include <stdexcept>
#include <string>

namespace ncp {

struct ParseError : std::runtime_error {
    std::size_t position;
    ParseError(const std::string &msg, std::size_t pos)
        : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"), position(pos)
    {
    }
};

struct UnknownGenerator : ParseError {
    UnknownGenerator(const std::string &id, std::size_t pos)
        : ParseError("unknown generator '" + id + "'", pos)
    {
    }
};

namespace parse_detail {

class Cursor {
public:
    explicit Cursor(const std::string &s) : s_(s) {}

    std::size_t pos() const { return i_; }
    bool at_end() const { return i_ >= s_.size(); }
    char peek() const { return i_ < s_.size() ? s_[i_] : '\0'; }
    char take() { return s_[i_++]; }
    void skip_ws()
    {
        while (i_ < s_.size() && std::isspace((unsigned char)s_[i_]))
            ++i_;
    }
    bool accept(char c)
    {
        if (peek() == c) {
            ++i_;
            return true;
        }
        return false;
    }
    bool accept_str(const std::string &t)
    {
        if (s_.compare(i_, t.size(), t) == 0) {
            i_ += t.size();
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string &msg) const { throw ParseError(msg, i_); }

    // "p" or "p/q", no sign (signs are handled as binary/unary operators)
    Rational rational()
    {
        std::size_t start = i_;
        while (i_ < s_.size() && std::isdigit((unsigned char)s_[i_]))
            ++i_;
        if (i_ == start)
            fail("expected a number");
        std::string tok = s_.substr(start, i_ - start);
        if (accept('/')) {
            std::size_t ds = i_;
            while (i_ < s_.size() && std::isdigit((unsigned char)s_[i_]))
                ++i_;
            if (i_ == ds)
                fail("expected a denominator");
            tok += "/" + s_.substr(ds, i_ - ds);
        }
        return Rational::parse(tok);
    }

    int integer()
    {
        std::size_t start = i_;
        while (i_ < s_.size() && std::isdigit((unsigned char)s_[i_]))
            ++i_;
        if (i_ == start)
            fail("expected an integer");
        return std::stoi(s_.substr(start, i_ - start));
    }

private:
    const std::string &s_;
    std::size_t i_ = 0;
};

inline bool id_char(char c)
{
    return std::isalnum((unsigned char)c) || c == '(' || c == ')' || c == ',' || c == '_';
}

// one [g1|g2|...] word; each slot may carry the desuspension marker s^-1
inline TensorWord word(Cursor &cur, const AInfCoalgebra &C)
{
    TensorWord w;
    if (!cur.accept('['))
        cur.fail("expected '['");
    while (true) {
        cur.skip_ws();
        if (cur.accept_str("s^-1"))
            cur.skip_ws();
        std::size_t start = cur.pos();
        std::string id;
        while (!cur.at_end() && id_char(cur.peek()))
            id += cur.take();
        if (id.empty())
            cur.fail("expected a generator in this slot");
        try {
            w.letters.push_back(C.gen(C.index_of(id)));
        } catch (const std::out_of_range &) {
            throw UnknownGenerator(id, start);
        }
        cur.skip_ws();
        if (cur.accept('|'))
            continue;
        if (cur.accept(']'))
            return w;
        cur.fail("expected '|' or ']'");
    }
}

} // namespace parse_detail

// rational linear combination of cobar words: "1", "[a|b]", "2/3*[a] - [b|c]"
inline FreeElement parse_word_element(const AInfCoalgebra &C, const std::string &text)
{
    parse_detail::Cursor cur(text);
    FreeElement out;
    bool first = true;
    while (true) {
        cur.skip_ws();
        Rational sign(1);
        if (cur.accept('-'))
            sign = Rational(-1);
        else if (cur.accept('+')) {
            if (first)
                cur.fail("unexpected '+'");
        } else if (!first)
            cur.fail("expected '+' or '-' between terms");
        cur.skip_ws();
        // the canonical rendering joins terms with " + " and keeps the sign
        // on the coefficient, so a unary minus may follow the operator
        if (cur.accept('-')) {
            sign = -sign;
            cur.skip_ws();
        }

        Rational coeff = sign;
        bool have_atom = false;
        if (std::isdigit((unsigned char)cur.peek())) {
            coeff *= cur.rational();
            cur.skip_ws();
            if (cur.accept('*'))
                cur.skip_ws();
            else
                have_atom = true; // bare scalar: a multiple of the unit word
        }
        TensorWord w;
        if (!have_atom) {
            if (cur.peek() == '[')
                w = parse_detail::word(cur, C);
            else if (cur.accept('1')) {
                // unit word
            } else
                cur.fail("expected a word, '1', or a number");
        }
        out.add(w, coeff);
        first = false;
        cur.skip_ws();
        if (cur.at_end())
            return out;
        if (cur.peek() != '+' && cur.peek() != '-')
            cur.fail("expected '+' or '-' between terms");
    }
}

namespace parse_detail {

// variable names follow the printer: x, y, z for up to three variables,
// x1, x2, ... beyond that
inline int var_at(Cursor &cur, int m)
{
    std::size_t start = cur.pos();
    for (int i = 0; i < m; ++i) {
        const std::string name = hkr_detail::var_name(i, m);
        if (cur.accept_str(name)) {
            // avoid eating "x" out of "x1" when m <= 3
            if (std::isdigit((unsigned char)cur.peek()) && m <= 3)
                cur.fail("unknown variable");
            return i;
        }
    }
    (void)start;
    cur.fail("expected a variable");
}

template <char Kind> bool at_wedge_factor(Cursor cur, int m)
{
    if (Kind == 'f') {
        if (!cur.accept('d'))
            return false;
        if (cur.peek() == '/')
            return false;
    } else {
        if (!cur.accept_str("d/d"))
            return false;
    }
    for (int i = 0; i < m; ++i)
        if (cur.accept_str(hkr_detail::var_name(i, m)))
            return true;
    return false;
}

template <char Kind> int wedge_factor(Cursor &cur, int m)
{
    if (Kind == 'f') {
        if (!cur.accept('d'))
            cur.fail("expected 'd'");
    } else {
        if (!cur.accept_str("d/d"))
            cur.fail("expected 'd/d'");
    }
    return var_at(cur, m);
}

} // namespace parse_detail

// forms (Kind 'f') and polyvectors (Kind 'v'): terms joined by + and -,
// each a product of rationals and powers of variables followed by an
// optional wedge of dx / (d/dx) factors in any order (the order only
// contributes its sign)
template <char Kind> ExtPoly<Kind> parse_ext_poly(int m, const std::string &text)
{
    using namespace parse_detail;
    Cursor cur(text);
    ExtPoly<Kind> out(m);
    bool first = true;
    while (true) {
        cur.skip_ws();
        Rational coeff(1);
        if (cur.accept('-'))
            coeff = Rational(-1);
        else if (cur.accept('+')) {
            if (first)
                cur.fail("unexpected '+'");
        } else if (!first)
            cur.fail("expected '+' or '-' between terms");
        cur.skip_ws();

        Mono mono(m, 0);
        bool saw_factor = false;
        // scalar and variable factors, separated by '*'
        while (true) {
            if (at_wedge_factor<Kind>(cur, m))
                break;
            if (std::isdigit((unsigned char)cur.peek())) {
                coeff *= cur.rational();
                saw_factor = true;
            } else if (std::isalpha((unsigned char)cur.peek())) {
                int v = var_at(cur, m);
                int e = 1;
                if (cur.accept('^'))
                    e = cur.integer();
                mono[v] += e;
                saw_factor = true;
            } else
                break;
            Cursor look = cur;
            look.skip_ws();
            if (look.peek() == '*') {
                cur.skip_ws();
                cur.take();
                cur.skip_ws();
                continue;
            }
            // a space may separate the polynomial part from the wedge part
            cur.skip_ws();
        }

        // wedge factors joined by '^'; sorting them is where the sign lives
        std::vector<int> idx;
        int sgn = 1;
        if (at_wedge_factor<Kind>(cur, m)) {
            while (true) {
                std::size_t fpos = cur.pos();
                int v = wedge_factor<Kind>(cur, m);
                int greater = 0;
                for (int u : idx) {
                    if (u == v)
                        throw ParseError("repeated wedge factor", fpos);
                    if (u > v)
                        ++greater;
                }
                if (greater & 1)
                    sgn = -sgn;
                idx.push_back(v);
                std::sort(idx.begin(), idx.end());
                Cursor look = cur;
                look.skip_ws();
                if (look.peek() == '^') {
                    cur.skip_ws();
                    cur.take();
                    cur.skip_ws();
                    continue;
                }
                break;
            }
            saw_factor = true;
        }
        if (!saw_factor)
            cur.fail("expected a term");
        out.add(mono, idx, coeff * Rational(sgn));
        first = false;
        cur.skip_ws();
        if (cur.at_end())
            return out;
        if (cur.peek() != '+' && cur.peek() != '-')
            cur.fail("expected '+' or '-' between terms");
    }
}

inline PolyForm parse_form(int m, const std::string &text) { return parse_ext_poly<'f'>(m, text); }
inline PolyVector parse_polyvector(int m, const std::string &text)
{
    return parse_ext_poly<'v'>(m, text);
}

} // namespace ncp
