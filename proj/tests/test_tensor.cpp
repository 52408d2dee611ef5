#include "ncp/tensor.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <random>

using namespace ncp;

namespace {
Generator gen(int ord, int degree, int weight = 1)
{
    return Generator{"g" + std::to_string(ord), degree, weight, ord};
}
} // namespace

TEST_CASE("koszul sign basics")
{
    CHECK(koszul_sign({0, 1, 2}, {1, 1, 2}) == 1);
    CHECK(koszul_sign({1, 0}, {1, 1}) == -1);
    CHECK(koszul_sign({1, 0}, {1, 2}) == 1);
    // cycle 0->1->2->0 applied to degrees (1,1,2): compose two adjacent swaps
    // (0,1,2) -> (1,0,2) -> (1,2,0); swaps cost (-1)^{1*1} * (-1)^{1*2} = -1
    CHECK(koszul_sign({1, 2, 0}, {1, 1, 2}) == -1);
    CHECK_THROWS(koszul_sign({0, 1}, {1}));
}

TEST_CASE("koszul sign is multiplicative over composition")
{
    std::mt19937 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        int n = 2 + rng() % 5;
        std::vector<int> degs(n);
        for (auto &d : degs)
            d = rng() % 4;
        std::vector<int> p(n), q(n);
        for (int i = 0; i < n; ++i)
            p[i] = q[i] = i;
        std::shuffle(p.begin(), p.end(), rng);
        std::shuffle(q.begin(), q.end(), rng);
        // r = p after q: position i holds x_{q[p[i]]}
        std::vector<int> r(n);
        for (int i = 0; i < n; ++i)
            r[i] = q[p[i]];
        // sign of applying q, then permuting the result by p
        std::vector<int> degs_q(n);
        for (int i = 0; i < n; ++i)
            degs_q[i] = degs[q[i]];
        CHECK(koszul_sign(r, degs) == koszul_sign(q, degs) * koszul_sign(p, degs_q));
    }
}

TEST_CASE("free element multiplication")
{
    auto v1 = gen(0, 0), v2 = gen(1, 1);
    FreeElement one = FreeElement::unit();
    FreeElement a(TensorWord({v1}));
    FreeElement b(TensorWord({v2}));

    CHECK(one * a == a);
    CHECK(a * one == a);
    CHECK((a * b).terms().begin()->first == TensorWord({v1, v2}));

    FreeElement lhs = (Rational(2) * a + b) * a;
    FreeElement expect;
    expect.add(TensorWord({v1, v1}), Rational(2));
    expect.add(TensorWord({v2, v1}), Rational(1));
    CHECK(lhs == expect);
}

TEST_CASE("multiplication is associative and canonicalization idempotent")
{
    std::mt19937 rng(11);
    std::vector<Generator> gens = {gen(0, 0), gen(1, 1), gen(2, 2, 2)};
    auto random_elt = [&]() {
        FreeElement e;
        int nterms = 1 + rng() % 3;
        for (int t = 0; t < nterms; ++t) {
            TensorWord w;
            int len = rng() % 3;
            for (int i = 0; i < len; ++i)
                w.letters.push_back(gens[rng() % gens.size()]);
            e.add(w, Rational((int)(rng() % 5) - 2));
        }
        return e;
    };
    for (int trial = 0; trial < 100; ++trial) {
        auto a = random_elt(), b = random_elt(), c = random_elt();
        CHECK((a * b) * c == a * (b * c));
        // adding zero keeps the representation canonical
        auto a2 = a;
        a2.add(TensorWord{}, Rational(0));
        CHECK(a2 == a);
    }
}

TEST_CASE("word rendering")
{
    auto v1 = gen(0, 0), v2 = gen(1, 1);
    CHECK(TensorWord({v1, v2}).str() == "[g0|g1]");
    CHECK(TensorWord{}.str() == "1");
    CHECK(TensorWord({v1, v2}).degree() == 1);
    CHECK(TensorWord({v1, v2}).weight() == 2);
}
