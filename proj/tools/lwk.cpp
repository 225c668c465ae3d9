#include "lwk/blocks.hpp"
#include "lwk/io.hpp"
#include "lwk/qchar.hpp"
#include "lwk/resonance.hpp"
#include "lwk/sl2oracle.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace lwk;

namespace {

enum Exit { Ok = 0, Failure = 1, Undecided = 2 };

struct Session {
    std::string type = "A";
    int rank = 1;
    std::string field = "q";
    bool table = false;
    std::size_t budget = 0;
    std::vector<std::string> symbols; // empty: any symbol is accepted

    CartanData cartan() const { return parse_cartan(type, rank); }
    std::size_t search_budget() const { return budget ? budget : default_budget(); }

    void check(const std::string& text, const SpectralParam& p) const
    {
        if (symbols.empty()) return;
        for (const auto& [name, e] : p.base)
            if (std::find(symbols.begin(), symbols.end(), name) == symbols.end())
                throw Error("unknown symbol \"" + name + "\" in \"" + text + "\"");
    }
    SpectralParam param(const std::string& text, const GroundField& F) const
    {
        auto p = parse_param(text, F);
        check(text, p);
        return p;
    }
    LWeight lweight(const std::string& text, const CartanData& C, const GroundField& F) const
    {
        auto w = parse_lweight(text, C, F);
        for (const auto& [k, e] : w.terms) check(text, k.a);
        for (const auto& [k, e] : w.frob) check(text, k.a);
        return w;
    }
    std::vector<LWeight> lweights(const std::vector<std::string>& texts, const CartanData& C, const GroundField& F) const
    {
        std::vector<LWeight> out;
        for (const auto& t : texts)
            for (const auto& s : split(t, ';')) out.push_back(lweight(s, C, F));
        return out;
    }
};

void render(const json& j, const std::string& path, std::ostream& out)
{
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) render(it.value(), path.empty() ? it.key() : path + "." + it.key(), out);
    } else if (j.is_array() && !j.empty() && (j[0].is_object() || j[0].is_array())) {
        for (std::size_t k = 0; k < j.size(); ++k) render(j[k], path + "[" + std::to_string(k) + "]", out);
    } else {
        out << path << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
    }
}

WeylWord parse_word(const std::string& text, const CartanData& C)
{
    WeylWord w;
    for (long i : parse_ints(text)) {
        C.check_node(int(i));
        w.push_back(int(i));
    }
    return w;
}

Strength parse_strength(const std::string& s)
{
    if (s == "strict") return Strength::Strict;
    if (s == "weak") return Strength::Weak;
    throw Error("strength must be strict or weak");
}

json word_json(const WeylWord& w) { return json(w); }

json verdict_json(const ResonanceVerdict& v)
{
    json wit = json::array(), vio = json::array();
    for (const auto& w : v.witnesses) wit.push_back({{"first", w.first}, {"second", w.second}, {"word", word_json(w.word)}});
    for (const auto& x : v.violations)
        vio.push_back({{"cond", std::string(1, x.cond)}, {"node", x.node}, {"step", x.step}, {"first", x.first},
                       {"second", x.second}});
    json j{{"status", to_string(v.status)}, {"witnesses", wit}, {"violations", vio}};
    if (!v.permutation.empty()) j["permutation"] = v.permutation;
    return j;
}

IrreducibilityFlags parse_flags(const Session& S, const std::vector<std::string>& specs, const GroundField& F)
{
    // node@param=true|false
    IrreducibilityFlags flags;
    for (const auto& s : specs) {
        auto at = s.find('@'), eq = s.find('=');
        if (at == std::string::npos || eq == std::string::npos || eq < at)
            throw Error("flag must look like node@param=true|false, got \"" + s + "\"");
        auto node = parse_ints(s.substr(0, at));
        auto val = s.substr(eq + 1);
        if (node.size() != 1 || (val != "true" && val != "false")) throw Error("bad flag \"" + s + "\"");
        flags[LKey{int(node[0]), S.param(s.substr(at + 1, eq - at - 1), F)}] = val == "true";
    }
    return flags;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"lwk: l-weights, resonance, blocks and q-characters of quantum affine algebras"};
    app.require_subcommand(1);
    Session S;
    app.add_option("--type", S.type, "Cartan type letter A-G")->capture_default_str();
    app.add_option("--rank", S.rank, "rank")->capture_default_str();
    app.add_option("--field", S.field, "q, zeta:L or one")->capture_default_str();
    app.add_flag("--json", "print JSON (the default)");
    app.add_flag("--table", S.table, "print a key: value listing instead of JSON");
    app.add_option("--budget", S.budget, "search budget (default LWK_BUDGET or 4096)");
    app.add_option("--symbols", S.symbols, "declared base symbols; others are rejected")->delimiter(',');

    json out;
    int code = Ok;
    std::function<void()> action;
    auto sub = [&](const std::string& name, const std::string& help) { return app.add_subcommand(name, help); };

    // factor
    std::string roots, frobs;
    int fnode = 1;
    auto* c_factor = sub("factor", "xi-factorization of a root multiset");
    c_factor->add_option("--roots", roots, "comma-separated parameters")->required();
    c_factor->add_option("--frob", frobs, "comma-separated Frobenius bases");
    c_factor->add_option("--node", fnode, "node whose xi_i is used");
    c_factor->callback([&] {
        action = [&] {
            auto C = S.cartan();
            auto F = parse_field(S.field, C);
            C.check_node(fnode);
            RootMultiset rs;
            std::vector<SpectralParam> fb;
            for (const auto& r : split(roots, ',')) rs.push_back(S.param(r, F));
            for (const auto& r : split(frobs, ',')) fb.push_back(S.param(r, F));
            out = to_json(xi_factorize(F, rs, fb, C.di(fnode)));
        };
    });

    // braid
    std::string word, lw;
    bool inverse = false;
    auto* c_braid = sub("braid", "apply T_w (or its inverse) to an l-weight");
    c_braid->add_option("--word", word, "node sequence, last letter acts first")->required();
    c_braid->add_option("--lweight", lw, "l-weight")->required();
    c_braid->add_flag("--inverse", inverse, "apply T_w^{-1}");
    c_braid->callback([&] {
        action = [&] {
            auto C = S.cartan();
            auto F = parse_field(S.field, C);
            auto w = parse_word(word, C);
            auto x = S.lweight(lw, C, F);
            auto y = inverse ? braid_Tw_inv(C, w, x) : braid_Tw(C, w, x);
            out = {{"result", format_lweight(y)}, {"weight", wt(C, y)}};
        };
    });

    // alpha
    int anode = 1;
    std::string aparam = "a", nu, top;
    auto* c_alpha = sub("alpha", "simple l-root, or l-root lattice and cone membership");
    c_alpha->add_option("--node", anode, "node");
    c_alpha->add_option("--a", aparam, "parameter");
    c_alpha->add_option("--nu", nu, "test membership of this l-weight in the l-root lattice");
    c_alpha->add_option("--top", top, "with --nu: test nu <= top in the l-root cone order");
    c_alpha->callback([&] {
        action = [&] {
            auto C = S.cartan();
            auto F = parse_field(S.field, C);
            if (nu.empty()) {
                C.check_node(anode);
                out = {{"alpha", format_lweight(simple_lroot(C, F, anode, S.param(aparam, F)))}};
                return;
            }
            auto x = S.lweight(nu, C, F);
            auto r = top.empty() ? signed_lattice_member(C, x) : cone_member(C, S.lweight(top, C, F), x);
            out = {{"status", to_string(r.status)}, {"exact", r.exact}, {"certificate", to_json(r.cert)}};
            if (r.status == Membership::NoWithinWindow) code = Undecided;
        };
    });

    // resonant
    std::vector<std::string> tuple;
    std::string strength = "strict";
    auto* c_res = sub("resonant", "resonance of an ordered tuple of l-weights");
    c_res->add_option("--tuple", tuple, "l-weights separated by ';'; repeat to append")->required();
    c_res->add_option("--strength", strength, "strict or weak")->capture_default_str();
    c_res->callback([&] {
        action = [&] {
            auto C = S.cartan();
            auto F = parse_field(S.field, C);
            auto v = lw_tuple_resonant(C, S.lweights(tuple, C, F), parse_strength(strength), S.search_budget());
            out = verdict_json(v);
            if (v.status == Verdict::Unknown) code = Undecided;
        };
    });

    // regular
    auto* c_reg = sub("regular", "search for a resonant ordering of the fundamental factors");
    c_reg->add_option("--lweight", lw, "dominant l-weight")->required();
    c_reg->callback([&] {
        action = [&] {
            auto C = S.cartan();
            auto F = parse_field(S.field, C);
            auto lam = S.lweight(lw, C, F);
            auto v = lw_regular(C, lam, S.search_budget());
            out = verdict_json(v);
            if (v.status == Verdict::Proven) {
                auto fs = fundamental_factors(lam);
                json order = json::array();
                for (auto k : v.permutation) order.push_back(format_lweight(omega(F, fs[k].node, fs[k].a)));
                out["order"] = order;
            }
            if (v.status == Verdict::Unknown) code = Undecided;
        };
    });

    // hlw-check
    auto* c_hlw = sub("hlw-check", "is the tensor product of the simple modules highest-l-weight");
    c_hlw->add_option("--tuple", tuple, "l-weights separated by ';'; repeat to append")->required();
    c_hlw->callback([&] {
        action = [&] {
            auto C = S.cartan();
            auto F = parse_field(S.field, C);
            auto v = hlw_tensor_verdict(C, S.lweights(tuple, C, F), S.search_budget());
            out = {{"status", to_string(v.status)}, {"exact", v.exact}, {"resonance", verdict_json(v.resonance)}};
            if (v.status == HlwVerdict::Unknown) code = Undecided;
        };
    });

    // weyl-fund
    std::vector<std::string> flag_specs;
    bool auto_flags = false;
    auto* c_wf = sub("weyl-fund", "is the Weyl module a tensor product of fundamental Weyl modules");
    c_wf->add_option("--lweight", lw, "dominant l-weight")->required();
    c_wf->add_option("--flag", flag_specs, "irreducibility of W(omega_{i,a}): node@param=true|false");
    c_wf->add_flag("--auto-flags", auto_flags, "fill flags that are known (minuscule nodes, D_n node 2)");
    c_wf->callback([&] {
        action = [&] {
            auto C = S.cartan();
            auto F = parse_field(S.field, C);
            auto lam = S.lweight(lw, C, F);
            auto flags = parse_flags(S, flag_specs, F);
            if (auto_flags && lam.frob.empty())
                for (const auto& [k, e] : lam.terms)
                    if (!flags.count(k))
                        if (auto known = fundamental_weyl_irreducible(C, F, k.node)) flags[k] = *known;
            auto r = weyl_is_fundamental_tensor(C, lam, flags, S.search_budget());
            json fl = json::array();
            for (const auto& [k, v] : flags) fl.push_back({{"node", k.node}, {"a", format_param(k.a)}, {"irreducible", v}});
            out = {{"status", to_string(r.status)}, {"reason", r.reason}, {"regular", verdict_json(r.regular)}, {"flags", fl}};
            if (r.status == Tri::Unknown) code = Undecided;
        };
    });

    // block-eq
    std::string lhs, rhs;
    auto* c_beq = sub("block-eq", "do two l-weights lie in the same block");
    c_beq->add_option("--lhs", lhs, "l-weight")->required();
    c_beq->add_option("--rhs", rhs, "l-weight")->required();
    c_beq->callback([&] {
        action = [&] {
            auto C = S.cartan();
            auto F = parse_field(S.field, C);
            auto x = S.lweight(lhs, C, F), y = S.lweight(rhs, C, F);
            out = {{"equal", same_block(C, x, y)},
                   {"lhs_class", to_json(elliptic_char(C, x))},
                   {"rhs_class", to_json(elliptic_char(C, y))}};
        };
    });

    // block-link
    auto* c_blink = sub("block-link", "chain of tau moves between dominant l-weights of one block");
    c_blink->add_option("--lhs", lhs, "dominant l-weight supported on the distinguished nodes")->required();
    c_blink->add_option("--rhs", rhs, "dominant l-weight supported on the distinguished nodes")->required();
    c_blink->callback([&] {
        action = [&] {
            auto C = S.cartan();
            auto F = parse_field(S.field, C);
            auto seq = linking_sequence(C, S.lweight(lhs, C, F), S.lweight(rhs, C, F));
            json moves = json::array();
            for (const auto& m : seq.moves)
                moves.push_back({{"k", m.k}, {"a", format_param(m.a)}, {"eps", m.eps},
                                 {"tau", format_lweight(tau(C, F, m.k, m.a))}});
            out = {{"moves", moves}, {"dominant", seq.dominant}};
        };
    });

    // qchar-sl2
    std::string qa = "a";
    long qr = 1;
    auto* c_qsl2 = sub("qchar-sl2", "q-character of the sl2 Weyl module W(a, r)");
    c_qsl2->add_option("--a", qa, "parameter");
    c_qsl2->add_option("--r", qr, "string length")->required();
    c_qsl2->callback([&] {
        action = [&] {
            auto A1 = build_cartan('A', 1);
            auto F = parse_field(S.field, A1);
            out = to_json(sl2_weyl_qchar(F, S.param(qa, F), qr));
        };
    });

    // qchar-fund
    int qnode = 1;
    std::size_t max_steps = 10000;
    std::vector<std::string> tables;
    auto* c_qf = sub("qchar-fund", "braid-invariance lower bound for the q-character of V(omega_{i,a})");
    c_qf->add_option("--node", qnode, "node")->required();
    c_qf->add_option("--a", qa, "parameter");
    c_qf->add_option("--max-steps", max_steps, "frontier steps")->capture_default_str();
    c_qf->add_option("--char-file", tables, "node=path of a character file (weight : multiplicity lines)");
    c_qf->callback([&] {
        action = [&] {
            auto C = S.cartan();
            auto F = parse_field(S.field, C);
            auto r = bginv_lower_bound(C, F, qnode, S.param(qa, F), max_steps);
            out = to_json(r.chi);
            out["saturated"] = r.saturated;
            out["steps"] = r.steps;
            auto table = builtin_fund_table(C);
            for (const auto& t : tables) {
                auto eq = t.find('=');
                if (eq == std::string::npos) throw Error("--char-file must be node=path");
                auto node = parse_ints(t.substr(0, eq));
                if (node.size() != 1) throw Error("--char-file must be node=path");
                std::ifstream in(t.substr(eq + 1));
                if (!in) throw Error("cannot read " + t.substr(eq + 1));
                table.nodes[int(node[0])] = parse_character(in, C);
            }
            if (table.nodes.count(qnode)) {
                auto dim = char_dim(table.nodes.at(qnode));
                out["weyl_dim"] = dim.str();
                // the lower bound fills the Weyl module: it is the q-character and W is simple
                out["complete"] = Int(r.chi.dim()) == dim;
            }
        };
    });

    // qchar-dn2
    int dn = 4;
    long dl = 0;
    auto* c_dn2 = sub("qchar-dn2", "q-character of V(omega_{2,a}) in type D_n");
    c_dn2->add_option("--n", dn, "rank n >= 4")->required();
    c_dn2->add_option("--l", dl, "order of xi (overrides --field)");
    c_dn2->add_option("--a", qa, "parameter");
    c_dn2->callback([&] {
        action = [&] {
            auto C = build_cartan('D', dn);
            auto F = dl ? field_for(C, Mode::Root, int(dl)) : parse_field(S.field, C);
            auto a = S.param(qa, F);
            auto chi = dn_node2_qchar(C, a, F);
            out = to_json(chi);
            if (F.mode != Mode::Generic) {
                auto gen = dn_node2_generic(C, {a.base, a.xi});
                out["no_dominant_other"] = no_dominant_other(omega(F, 2, a), gen, F);
                out["mu1_dropped"] = (C.n - 2) % F.order() == 0;
            }
        };
    });

    // specialize
    std::string target = "zeta:3";
    auto* c_spec = sub("specialize", "push a formal l-weight to a root of unity or to 1");
    c_spec->add_option("--lweight", lw, "l-weight over q")->required();
    c_spec->add_option("--to", target, "zeta:L or one")->capture_default_str();
    c_spec->callback([&] {
        action = [&] {
            auto C = S.cartan();
            auto G = field_for(C, Mode::Generic, 0);
            auto T = parse_field(target, C);
            out = {{"result", format_lweight(specialize_lweight(S.lweight(lw, C, G), T))}, {"field", T.str()}};
        };
    });

    // oracle-sl2
    long ol = 0;
    std::string factors;
    auto* c_or = sub("oracle-sl2", "first-level generation rank of a tensor product of sl2 evaluation modules");
    c_or->add_option("--l", ol, "order of zeta; 0 for generic q")->capture_default_str();
    c_or->add_option("--factors", factors, "length@exponent list, e.g. 1@0,1@3")->required();
    c_or->callback([&] {
        action = [&] {
            if (ol != 0 && (ol < 2)) throw Error("--l must be 0 or at least 2");
            std::vector<EvalModule> fs;
            for (const auto& f : split(factors, ',')) {
                auto at = f.find('@');
                if (at == std::string::npos) throw Error("factor must be length@exponent, got \"" + f + "\"");
                auto len = parse_ints(f.substr(0, at)), ex = parse_ints(f.substr(at + 1));
                if (len.size() != 1 || ex.size() != 1) throw Error("factor must be length@exponent, got \"" + f + "\"");
                fs.push_back({len[0], ex[0]});
            }
            auto r = tensor_first_level_rank(ol, fs);
            out = {{"rank", r.rank}, {"size", r.size}, {"full", r.full()}};
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return Failure;
    }
    try {
        action();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return Failure;
    }
    if (S.table)
        render(out, "", std::cout);
    else
        std::cout << out.dump(2) << "\n";
    return code;
}
