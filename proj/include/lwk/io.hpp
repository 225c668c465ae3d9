#ifndef LWK_IO_HPP
#define LWK_IO_HPP

#include "lwk/blocks.hpp"
#include "lwk/cartan.hpp"
#include "lwk/lweight.hpp"
#include "lwk/qchar.hpp"
#include "lwk/qfactor.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <sstream>
#include <string>
#include <vector>

namespace lwk {

using json = nlohmann::json;

struct ParseError : Error {
    std::size_t pos;
    ParseError(const std::string& text, std::size_t p, const std::string& what)
        : Error("parse error at column " + std::to_string(p + 1) + " in \"" + text + "\": " + what), pos(p)
    {
    }
};

namespace detail {

class Cursor {
public:
    explicit Cursor(std::string s) : text(std::move(s)) {}

    void skip()
    {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    }
    bool done()
    {
        skip();
        return i == text.size();
    }
    char peek()
    {
        skip();
        return i < text.size() ? text[i] : '\0';
    }
    bool eat(char c)
    {
        if (peek() != c) return false;
        ++i;
        return true;
    }
    void expect(char c)
    {
        if (!eat(c)) fail(std::string("expected '") + c + "'");
    }
    long integer()
    {
        skip();
        std::size_t start = i;
        if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
        std::size_t digits = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (i == digits) {
            i = start;
            fail("expected an integer");
        }
        try {
            return std::stol(text.substr(start, i - start));
        } catch (const std::out_of_range&) {
            i = start;
            fail("integer out of range");
        }
        return 0;
    }
    std::string symbol()
    {
        skip();
        std::size_t start = i;
        if (i >= text.size() || !std::islower(static_cast<unsigned char>(text[i]))) fail("expected a symbol");
        ++i;
        while (i < text.size() && (std::islower(static_cast<unsigned char>(text[i])) ||
                                   std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '_'))
            ++i;
        return text.substr(start, i - start);
    }
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(text, i, what); }

    std::string text;
    std::size_t i = 0;
};

inline SpectralParam parse_param_at(Cursor& c, const GroundField& F)
{
    Base b;
    long xi = 0;
    do {
        if (std::isdigit(static_cast<unsigned char>(c.peek()))) {
            std::size_t at = c.i;
            if (c.integer() != 1) {
                c.i = at;
                c.fail("the only numeric factor is 1");
            }
            continue;
        }
        std::string s = c.symbol();
        long e = 1;
        if (c.eat('^')) e = c.integer();
        if (s == "x")
            xi += e;
        else
            b.emplace_back(s, e);
    } while (c.eat('*'));
    return canon(F, {normalize_base(b), xi});
}

} // namespace detail

// a, a*x^3, x^-2, a*b^-1*x^5, 1
inline SpectralParam parse_param(const std::string& text, const GroundField& F)
{
    detail::Cursor c(text);
    auto p = detail::parse_param_at(c, F);
    if (!c.done()) c.fail("unexpected trailing input");
    return p;
}

inline std::string format_param(const SpectralParam& p)
{
    std::string s;
    auto put = [&](const std::string& name, long e) {
        if (!s.empty()) s += "*";
        s += name;
        if (e != 1) s += "^" + std::to_string(e);
    };
    for (const auto& [name, e] : p.base) put(name, e);
    if (p.xi != 0) put("x", p.xi);
    return s.empty() ? "1" : s;
}

// 1, w[1](a), w[2](a*x^3)^-2 * w[1](b), B[1](b) for a Frobenius block
inline LWeight parse_lweight(const std::string& text, const CartanData& C, const GroundField& F)
{
    detail::Cursor c(text);
    LWeight w(F);
    if (std::isdigit(static_cast<unsigned char>(c.peek()))) {
        if (c.integer() != 1 || !c.done()) c.fail("expected 1 or a product of w[i](a) terms");
        return w;
    }
    do {
        std::size_t at = c.i;
        char kind = c.peek();
        if (kind != 'w' && kind != 'B') c.fail("expected w[i](a) or B[i](b)");
        ++c.i;
        c.expect('[');
        long node = c.integer();
        c.expect(']');
        if (node < 1 || node > C.n) {
            c.i = at;
            c.fail("node " + std::to_string(node) + " out of range for " + C.name());
        }
        c.expect('(');
        auto a = detail::parse_param_at(c, F);
        c.expect(')');
        long e = 1;
        if (c.eat('^')) e = c.integer();
        if (kind == 'B') {
            if (F.mode != Mode::Root) {
                c.i = at;
                c.fail("Frobenius blocks need a root-of-unity field");
            }
            add_block(w, int(node), a, e);
        } else {
            add_omega(w, int(node), a, e);
        }
    } while (c.eat('*'));
    if (!c.done()) c.fail("unexpected trailing input");
    return w;
}

inline std::string format_lweight(const LWeight& w)
{
    if (w.is_identity()) return "1";
    std::string s;
    auto put = [&](char kind, const LKey& k, long e) {
        if (!s.empty()) s += " * ";
        s += kind;
        s += "[" + std::to_string(k.node) + "](" + format_param(k.a) + ")";
        if (e != 1) s += "^" + std::to_string(e);
    };
    for (const auto& [k, e] : w.terms) put('w', k, e);
    for (const auto& [k, e] : w.frob) put('B', k, e);
    return s;
}

inline std::vector<std::string> split(const std::string& text, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur, sep)) {
        auto b = cur.find_first_not_of(" \t");
        if (b == std::string::npos) continue;
        out.push_back(cur.substr(b, cur.find_last_not_of(" \t") - b + 1));
    }
    return out;
}

inline std::vector<LWeight> parse_lweight_list(const std::string& text, const CartanData& C, const GroundField& F)
{
    std::vector<LWeight> out;
    for (const auto& s : split(text, ';')) out.push_back(parse_lweight(s, C, F));
    return out;
}

// "1 2 1" or "1,2,1"
inline std::vector<long> parse_ints(const std::string& text)
{
    std::string t = text;
    std::replace(t.begin(), t.end(), ',', ' ');
    std::istringstream in(t);
    std::vector<long> out;
    std::string tok;
    while (in >> tok) {
        std::size_t used = 0;
        long v = 0;
        try {
            v = std::stol(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != tok.size()) throw Error("not an integer: \"" + tok + "\"");
        out.push_back(v);
    }
    return out;
}

inline GroundField parse_field(const std::string& text, const CartanData& C)
{
    if (text == "q") return field_for(C, Mode::Generic, 0);
    if (text == "one") return field_for(C, Mode::One, 0);
    if (text.rfind("zeta:", 0) == 0) {
        auto v = parse_ints(text.substr(5));
        if (v.size() != 1) throw Error("field must be q, one or zeta:L");
        return field_for(C, Mode::Root, int(v[0]));
    }
    throw Error("field must be q, one or zeta:L, got \"" + text + "\"");
}

// Lines "c_1 ... c_n : m"; '#' starts a comment.
inline Character parse_character(std::istream& in, const CartanData& C)
{
    Character ch;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto colon = line.find(':');
        auto where = " on line " + std::to_string(lineno);
        if (colon == std::string::npos) throw Error("expected \"weight : multiplicity\"" + where);
        auto wv = parse_ints(line.substr(0, colon));
        auto mv = parse_ints(line.substr(colon + 1));
        if (long(wv.size()) != C.n) throw Error("weight has " + std::to_string(wv.size()) + " coordinates" + where);
        if (mv.size() != 1 || mv[0] <= 0) throw Error("multiplicity must be one positive integer" + where);
        ch[Weight(wv.begin(), wv.end())] += mv[0];
    }
    if (!is_w_invariant(C, ch)) throw Error("character is not Weyl-group invariant");
    return ch;
}

inline json to_json(const QFactorization& f)
{
    json q = json::array(), fr = json::array();
    for (const auto& s : f.quantum) q.push_back({{"a", format_param(s.a)}, {"r", s.r}});
    for (const auto& b : f.frobenius) fr.push_back(format_param(b));
    return {{"quantum", q}, {"frobenius", fr}};
}

// Terms sorted by their printed form.
inline json to_json(const QCharacter& q)
{
    std::vector<std::pair<std::string, long>> t;
    for (const auto& [w, m] : q.terms) t.emplace_back(format_lweight(w), m);
    std::sort(t.begin(), t.end());
    json arr = json::array();
    for (const auto& [s, m] : t) arr.push_back({{"lweight", s}, {"mult", m}});
    return {{"field", q.F.str()}, {"terms", arr}, {"dim", q.dim()}};
}

inline json to_json(const Character& ch)
{
    json arr = json::array();
    for (const auto& [w, m] : ch) arr.push_back({{"weight", w}, {"mult", m.str()}});
    return arr;
}

inline json to_json(const EllipticClass& e)
{
    json arr = json::array();
    for (const auto& [k, v] : e.orbits) {
        json vec = json::array();
        for (const auto& x : v) vec.push_back(x.str());
        json o{{"base", format_param({k.base, 0})}, {"residue", vec}};
        if (k.frob) o["frobenius_xi"] = k.fxi;
        arr.push_back(o);
    }
    return arr;
}

inline json to_json(const Certificate& cert)
{
    json arr = json::array();
    for (const auto& e : cert) {
        json o{{"node", e.node}, {"a", format_param(e.c)}, {"exp", e.exp}};
        if (e.root_of) {
            o["root_of"] = true;
            o["root_shift"] = e.root_shift;
        }
        arr.push_back(o);
    }
    return arr;
}

} // namespace lwk

#endif
