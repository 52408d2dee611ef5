// Command-line surface for the engine: inspect the example coalgebras,
// evaluate brackets on cobar words and on polynomial forms, tabulate
// blockwise homology, and run randomized verification suites.
//
// Exit codes: 0 on success, 1 when a verification suite reports failures,
// 2 on usage or parse errors.
#include "ncp/builders.hpp"
#include "ncp/gerstenhaber.hpp"
#include "ncp/parse.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <random>
#include <string>
#include <vector>

using namespace ncp;
using nlohmann::json;

namespace {

struct Options {
    std::string coalgebra = "exterior:2";
    int max_weight = 6;
    int max_degree = 6;
    int trials = 200;
    unsigned seed = 0;
    std::string format = "text";
};

void add_common(CLI::App *cmd, Options &opt)
{
    cmd->add_option("--coalgebra", opt.coalgebra, "builtin coalgebra as name:params");
    cmd->add_option("--max-weight", opt.max_weight, "weight cutoff");
    cmd->add_option("--max-degree", opt.max_degree, "degree cutoff");
    cmd->add_option("--trials", opt.trials, "randomized trials");
    cmd->add_option("--seed", opt.seed, "random seed");
    cmd->add_option("--format", opt.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
}

AInfCoalgebra make_coalgebra(const std::string &spec)
{
    auto colon = spec.find(':');
    std::string name = spec.substr(0, colon);
    std::vector<Rational> params;
    if (colon != std::string::npos) {
        std::string rest = spec.substr(colon + 1);
        size_t pos = 0;
        while (pos <= rest.size()) {
            size_t comma = rest.find(',', pos);
            std::string tok = rest.substr(pos, comma == std::string::npos ? std::string::npos
                                                                          : comma - pos);
            if (!tok.empty())
                params.push_back(Rational::parse(tok));
            if (comma == std::string::npos)
                break;
            pos = comma + 1;
        }
    }
    return builtin_coalgebra(name, params);
}

std::string tensor_pair_str(const TensorPair &p)
{
    if (p.terms.empty())
        return "0";
    std::string s;
    for (const auto &[k, c] : p.terms) {
        if (!s.empty())
            s += " + ";
        if (c != Rational(1))
            s += c.str() + "*";
        s += k.first.str() + " (x) " + k.second.str();
    }
    return s;
}

// ---------------------------------------------------------------------------
// verification suites: each identity yields {identity, trials, failures}

struct SuiteReport {
    json identities = json::array();
    int failures = 0;

    void record(const std::string &identity, int trials, const json &fails)
    {
        identities.push_back({{"identity", identity}, {"trials", trials}, {"failures", fails}});
        failures += (int)fails.size();
    }
};

TensorWord random_word(std::mt19937 &rng, const CobarAlgebra &R, int minlen, int maxlen)
{
    const auto &C = R.coalgebra();
    std::vector<int> letters;
    for (int i = 0; i < C.dim(); ++i)
        if (i != C.coaugmentation())
            letters.push_back(i);
    std::uniform_int_distribution<int> len(minlen, maxlen), pick(0, (int)letters.size() - 1);
    TensorWord w;
    int n = len(rng);
    for (int i = 0; i < n; ++i)
        w.letters.push_back(R.gen(letters[pick(rng)]));
    return w;
}

SuiteReport suite_pairing(const AInfCoalgebra &C, const Options &)
{
    SuiteReport rep;
    auto to_fails = [](const CheckReport &r) {
        json fails = json::array();
        for (const auto &v : r.violations)
            fails.push_back({{"inputs", v}, {"lhs", "violation"}, {"rhs", "0"}});
        return fails;
    };
    rep.record("A-infinity coalgebra relations", C.dim(), to_fails(check_ainf_coalgebra(C)));
    if (C.has_pairing())
        rep.record("cyclic pairing certificate", C.dim(), to_fails(check_cyclic_pairing(C)));
    return rep;
}

SuiteReport suite_quillen(const AInfCoalgebra &C, const Options &opt)
{
    SuiteReport rep;
    CobarAlgebra R(C, false);
    std::mt19937 rng(opt.seed);
    struct Id {
        std::string name;
        std::function<std::pair<std::string, std::string>(const FreeElement &)> eval;
    };
    std::vector<Id> ids;
    ids.push_back({"b^2 = 0", [&](const FreeElement &x) {
                       return std::make_pair(hochschild_b(R, hochschild_b(R, x)).str(),
                                             std::string("0"));
                   }});
    ids.push_back({"b'^2 = 0", [&](const FreeElement &x) {
                       return std::make_pair(hochschild_bprime(R, hochschild_bprime(R, x)).str(),
                                             std::string("0"));
                   }});
    ids.push_back({"N(1-T) = 0", [&](const FreeElement &x) {
                       return std::make_pair(hochschild_N(x - hochschild_T(x)).str(),
                                             std::string("0"));
                   }});
    ids.push_back({"(1-T)N = 0", [&](const FreeElement &x) {
                       FreeElement y = hochschild_N(x);
                       return std::make_pair((y - hochschild_T(y)).str(), std::string("0"));
                   }});
    ids.push_back({"beta dbar = 0", [&](const FreeElement &x) {
                       return std::make_pair(beta(R, dbar(x)).str(), std::string("0"));
                   }});
    ids.push_back({"dbar beta = 0", [&](const FreeElement &x) {
                       OneFormClass om = chain_to_oneform(R, x);
                       bool z = dbar(beta(R, om)).is_zero();
                       return std::make_pair(std::string(z ? "0" : "nonzero"), std::string("0"));
                   }});
    for (auto &id : ids) {
        json fails = json::array();
        for (int t = 0; t < opt.trials; ++t) {
            FreeElement x(random_word(rng, R, 1, 4));
            auto [lhs, rhs] = id.eval(x);
            if (lhs != rhs)
                fails.push_back({{"inputs", x.str()}, {"lhs", lhs}, {"rhs", rhs}});
        }
        rep.record(id.name, opt.trials, fails);
    }
    return rep;
}

SuiteReport suite_transport(const AInfCoalgebra &C, const Options &opt)
{
    SuiteReport rep;
    CobarAlgebra R(C, true);
    std::mt19937 rng(opt.seed);
    json fails = json::array();
    for (int t = 0; t < opt.trials; ++t) {
        FreeElement u(random_word(rng, R, 1, 3)), v(random_word(rng, R, 1, 3));
        auto tr = check_bracket_transport(R, u, v);
        if (!tr.equal)
            fails.push_back({{"inputs", u.str() + " ; " + v.str()},
                             {"lhs", std::to_string(tr.lhs_terms) + " terms"},
                             {"rhs", std::to_string(tr.rhs_terms) + " terms"}});
    }
    rep.record("Phi B{u,v} = {Phi B u, Phi B v}", opt.trials, fails);
    return rep;
}

SuiteReport suite_hkr_jacobiator(const Options &opt, std::ostream &out, bool text)
{
    SuiteReport rep;
    PolyForm alpha = parse_form(3, "x^2*y*z dx");
    PolyForm beta_ = parse_form(3, "x*y*z dy");
    PolyForm gamma = parse_form(3, "x*z dz");

    struct Golden {
        std::string name, expected;
        PolyForm value;
    };
    std::vector<Golden> gold = {
        {"{{a,b},c}", "x^2*y*z^2 dx - x^3*y*z dz", hkr_bracket(hkr_bracket(alpha, beta_), gamma)},
        {"{a,{b,c}}", "-x^3*z^2 dy - x^3*y*z dz", hkr_bracket(alpha, hkr_bracket(beta_, gamma))},
        {"{b,{a,c}}", "2*x^2*y*z^2 dx + 2*x^3*y*z dz",
         hkr_bracket(beta_, hkr_bracket(alpha, gamma))},
        {"jacobiator", "3*x^2*y*z^2 dx + x^3*z^2 dy + 2*x^3*y*z dz",
         jacobiator(alpha, beta_, gamma)},
    };
    json fails = json::array();
    for (auto &g : gold) {
        PolyForm want = parse_form(3, g.expected);
        if (text)
            out << g.name << " = " << g.value.str() << "\n";
        if (!(g.value == want))
            fails.push_back({{"inputs", g.name}, {"lhs", g.value.str()}, {"rhs", g.expected}});
    }
    {
        PolyForm want = parse_form(3, "x^3*y*z^2");
        auto prim = d_primitive(gold[3].value);
        bool ok = prim && de_rham_d(want) == gold[3].value;
        if (text)
            out << "jacobiator = d(" << want.str() << "): " << (ok ? "yes" : "NO") << "\n";
        if (!ok)
            fails.push_back({{"inputs", "jacobiator primitive"},
                             {"lhs", prim ? prim->str() : "none"},
                             {"rhs", "x^3*y*z^2"}});
    }
    rep.record("nested hkr bracket golden values", (int)gold.size() + 1, fails);

    // random triples: the jacobiator is always d-exact
    std::mt19937 rng(opt.seed);
    std::uniform_int_distribution<int> ex(0, 2), pick(0, 2);
    json jfails = json::array();
    int trials = std::min(opt.trials, 50);
    for (int t = 0; t < trials; ++t) {
        auto rnd = [&]() {
            PolyForm a(3);
            Mono mo{ex(rng), ex(rng), ex(rng)};
            a.add(mo, {pick(rng)}, Rational(1));
            return a;
        };
        PolyForm j = jacobiator(rnd(), rnd(), rnd());
        if (!d_primitive(j))
            jfails.push_back({{"inputs", "random triple " + std::to_string(t)},
                              {"lhs", j.str()},
                              {"rhs", "d-exact"}});
    }
    rep.record("jacobiator is d-exact", trials, jfails);
    return rep;
}

int cmd_example(const Options &opt)
{
    AInfCoalgebra C = make_coalgebra(opt.coalgebra);
    if (opt.format == "json") {
        std::cout << coalgebra_to_json(C).dump(2) << "\n";
        return 0;
    }
    std::cout << opt.coalgebra << ": dim " << C.dim() << ", pairing "
              << (C.has_pairing() ? "degree -" + std::to_string(C.cy_dim()) : "none") << "\n";
    for (const auto &g : C.basis())
        std::cout << "  " << g.id << "  degree " << g.degree << "  weight " << g.weight << "\n";
    return 0;
}

int cmd_bracket(const Options &opt, const std::string &lhs, const std::string &rhs)
{
    AInfCoalgebra C = make_coalgebra(opt.coalgebra);
    CobarAlgebra R(C, false);
    FreeElement u = parse_word_element(C, lhs), v = parse_word_element(C, rhs);
    DoubleValue dv = double_bracket(R, u, v);
    FreeElement lb = loday_bracket(R, u, v);
    if (opt.format == "json") {
        std::cout << json{{"lhs", u.str()},
                          {"rhs", v.str()},
                          {"double_bracket", tensor_pair_str(dv)},
                          {"loday_bracket", lb.str()}}
                         .dump(2)
                  << "\n";
    } else {
        std::cout << "double bracket: " << tensor_pair_str(dv) << "\n";
        std::cout << "loday bracket: " << lb.str() << "\n";
    }
    return 0;
}

int cmd_homology(const Options &opt, const std::string &complex_name)
{
    AInfCoalgebra C = make_coalgebra(opt.coalgebra);
    ComplexKind kind;
    if (complex_name == "cobar_natural")
        kind = ComplexKind::cobar_natural;
    else if (complex_name == "oneform_natural")
        kind = ComplexKind::oneform_natural;
    else if (complex_name == "hochschild")
        kind = ComplexKind::hochschild;
    else if (complex_name == "cyclic")
        kind = ComplexKind::cyclic;
    else
        throw CLI::ValidationError("--complex", "unknown complex " + complex_name);
    CobarAlgebra R(C, kind == ComplexKind::hochschild || kind == ComplexKind::cyclic);
    if (opt.format == "json") {
        std::cout << homology_table_json(R, kind, opt.max_degree, opt.max_weight).dump(2) << "\n";
        return 0;
    }
    std::cout << complex_kind_name(kind) << " homology of " << opt.coalgebra << "\n";
    std::cout << "degree  weight  dim\n";
    for (int w = 0; w <= opt.max_weight; ++w)
        for (int d = -opt.max_degree; d <= opt.max_degree; ++d) {
            int dim = homology_dim(R, kind, d, w);
            if (dim > 0)
                std::cout << d << "\t" << w << "\t" << dim << "\n";
        }
    return 0;
}

int cmd_hkr(const Options &opt, int vars, const std::string &lhs, const std::string &rhs,
            const std::string &third)
{
    PolyForm a = parse_form(vars, lhs), b = parse_form(vars, rhs);
    if (!third.empty()) {
        PolyForm c = parse_form(vars, third);
        PolyForm j = jacobiator(a, b, c);
        auto prim = d_primitive(j);
        if (opt.format == "json") {
            json out{{"jacobiator", j.str()}};
            out["primitive"] = prim ? json(prim->str()) : json(nullptr);
            std::cout << out.dump(2) << "\n";
        } else {
            std::cout << "jacobiator: " << j.str() << "\n";
            if (prim)
                std::cout << "  = d(" << prim->str() << ")\n";
        }
        return 0;
    }
    PolyForm r = hkr_bracket(a, b);
    if (opt.format == "json")
        std::cout << json{{"bracket", r.str()}}.dump(2) << "\n";
    else
        std::cout << r.str() << "\n";
    return 0;
}

int cmd_verify(const Options &opt, const std::string &suite)
{
    SuiteReport rep;
    bool text = opt.format != "json";
    if (suite == "pairing")
        rep = suite_pairing(make_coalgebra(opt.coalgebra), opt);
    else if (suite == "quillen")
        rep = suite_quillen(make_coalgebra(opt.coalgebra), opt);
    else if (suite == "transport")
        rep = suite_transport(make_coalgebra(opt.coalgebra), opt);
    else if (suite == "hkr-jacobiator")
        rep = suite_hkr_jacobiator(opt, std::cout, text);
    else
        throw CLI::ValidationError("--suite", "unknown suite " + suite);

    if (!text) {
        std::cout << rep.identities.dump(2) << "\n";
    } else {
        for (const auto &id : rep.identities)
            std::cout << id["identity"].get<std::string>() << ": "
                      << (id["failures"].empty() ? "pass" : "FAIL") << " ("
                      << id["trials"].get<int>() << " checks)\n";
    }
    return rep.failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"symbolic engine for derived Poisson structures on Koszul duals"};
    app.require_subcommand(1);

    Options opt;
    std::string lhs, rhs, third, complex_name = "hochschild", suite = "pairing";
    int vars = 3;

    auto *ex = app.add_subcommand("example", "describe a builtin coalgebra");
    add_common(ex, opt);
    auto *br = app.add_subcommand("bracket", "double/Loday bracket of two cobar elements");
    add_common(br, opt);
    br->add_option("--lhs", lhs, "left argument")->required();
    br->add_option("--rhs", rhs, "right argument")->required();
    auto *ho = app.add_subcommand("homology", "blockwise homology table");
    add_common(ho, opt);
    ho->add_option("--complex", complex_name,
                   "cobar_natural, oneform_natural, hochschild, or cyclic");
    auto *hk = app.add_subcommand("hkr", "odd bracket on polynomial forms");
    add_common(hk, opt);
    hk->add_option("--vars", vars, "number of variables");
    hk->add_option("--lhs", lhs, "left form")->required();
    hk->add_option("--rhs", rhs, "right form")->required();
    hk->add_option("--third", third, "third form: report the jacobiator instead");
    auto *ve = app.add_subcommand("verify", "randomized verification suites");
    add_common(ve, opt);
    ve->add_option("--suite", suite, "pairing, quillen, transport, or hkr-jacobiator");

    try {
        app.parse(argc, argv);
        if (ex->parsed())
            return cmd_example(opt);
        if (br->parsed())
            return cmd_bracket(opt, lhs, rhs);
        if (ho->parsed())
            return cmd_homology(opt, complex_name);
        if (hk->parsed())
            return cmd_hkr(opt, vars, lhs, rhs, third);
        if (ve->parsed())
            return cmd_verify(opt, suite);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const ParseError &e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
