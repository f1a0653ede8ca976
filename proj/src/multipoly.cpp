#include "zetakit/multipoly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace zetakit {

long MultiPoly::total_degree() const {
    long d = 0;
    for (const auto& [e, c] : terms) {
        long t = 0;
        for (unsigned x : e) t += x;
        d = std::max(d, t);
    }
    return d;
}

bool MultiPoly::is_homogeneous() const {
    if (terms.empty()) return true;
    long d = -1;
    for (const auto& [e, c] : terms) {
        long t = 0;
        for (unsigned x : e) t += x;
        if (d < 0) d = t;
        if (t != d) return false;
    }
    return true;
}

void MultiPoly::add_term(const std::vector<unsigned>& exps, const ZZ& c) {
    if (c == 0) return;
    auto it = terms.find(exps);
    if (it == terms.end()) {
        terms.emplace(exps, c);
    } else {
        it->second += c;
        if (it->second == 0) terms.erase(it);
    }
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& other) {
    for (const auto& [e, c] : other.terms) add_term(e, c);
    return *this;
}

namespace {

struct Parser {
    const std::string& s;
    size_t pos = 0;
    const std::vector<std::string>& vars;

    explicit Parser(const std::string& text, const std::vector<std::string>& v) : s(text), vars(v) {}

    [[noreturn]] void fail(const std::string& msg) const {
        throw InputError("syntax error at position " + std::to_string(pos) + ": " + msg);
    }

    void skip_ws() {
        while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
    }

    bool peek(char c) {
        skip_ws();
        return pos < s.size() && s[pos] == c;
    }

    bool accept(char c) {
        if (peek(c)) {
            ++pos;
            return true;
        }
        return false;
    }

    MultiPoly zero() const { return MultiPoly{vars, {}}; }

    MultiPoly constant(const ZZ& c) const {
        MultiPoly f{vars, {}};
        f.add_term(std::vector<unsigned>(vars.size(), 0), c);
        return f;
    }

    static MultiPoly mul(const MultiPoly& f, const MultiPoly& g) {
        MultiPoly r{f.vars, {}};
        for (const auto& [e1, c1] : f.terms)
            for (const auto& [e2, c2] : g.terms) {
                std::vector<unsigned> e(e1.size());
                for (size_t i = 0; i < e.size(); ++i) e[i] = e1[i] + e2[i];
                r.add_term(e, c1 * c2);
            }
        return r;
    }

    static MultiPoly pow(const MultiPoly& f, unsigned long e) {
        MultiPoly r{f.vars, {}};
        r.add_term(std::vector<unsigned>(f.vars.size(), 0), 1);
        for (unsigned long i = 0; i < e; ++i) r = mul(r, f);
        return r;
    }

    MultiPoly parse_expression() {
        bool neg = accept('-');
        MultiPoly acc = parse_term();
        if (neg) {
            MultiPoly m{vars, {}};
            for (const auto& [e, c] : acc.terms) m.add_term(e, -c);
            acc = m;
        }
        for (;;) {
            if (accept('+')) {
                acc += parse_term();
            } else if (accept('-')) {
                MultiPoly t = parse_term();
                for (const auto& [e, c] : t.terms) acc.add_term(e, -c);
            } else {
                break;
            }
        }
        return acc;
    }

    MultiPoly parse_term() {
        MultiPoly acc = parse_power();
        while (accept('*')) acc = mul(acc, parse_power());
        return acc;
    }

    MultiPoly parse_power() {
        MultiPoly base = parse_atom();
        if (accept('^')) {
            skip_ws();
            unsigned long e = parse_uint();
            return pow(base, e);
        }
        return base;
    }

    unsigned long parse_uint() {
        skip_ws();
        if (pos >= s.size() || !std::isdigit((unsigned char)s[pos])) fail("expected exponent");
        unsigned long v = 0;
        while (pos < s.size() && std::isdigit((unsigned char)s[pos])) {
            v = v * 10 + (unsigned long)(s[pos] - '0');
            if (v > 1000000) fail("exponent too large");
            ++pos;
        }
        return v;
    }

    MultiPoly parse_atom() {
        skip_ws();
        if (pos >= s.size()) fail("unexpected end of input");
        char c = s[pos];
        if (c == '(') {
            ++pos;
            MultiPoly inner = parse_expression();
            if (!accept(')')) fail("expected ')'");
            check_no_implicit();
            return inner;
        }
        if (std::isdigit((unsigned char)c)) {
            size_t start = pos;
            while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
            ZZ v(s.substr(start, pos - start));
            check_no_implicit();
            return constant(v);
        }
        if (std::isalpha((unsigned char)c)) {
            size_t start = pos;
            ++pos;
            while (pos < s.size() && (std::isalnum((unsigned char)s[pos]) || s[pos] == '_')) ++pos;
            std::string name = s.substr(start, pos - start);
            auto it = std::find(vars.begin(), vars.end(), name);
            if (it == vars.end()) {
                pos = start;
                fail("unknown variable '" + name + "'");
            }
            check_no_implicit();
            MultiPoly f{vars, {}};
            std::vector<unsigned> e(vars.size(), 0);
            e[(size_t)(it - vars.begin())] = 1;
            f.add_term(e, 1);
            return f;
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    // implicit multiplication like "2x" or ")(" is disallowed by the grammar
    void check_no_implicit() {
        skip_ws();
        if (pos < s.size()) {
            char c = s[pos];
            if (std::isalnum((unsigned char)c) || c == '(') fail("implicit multiplication is not allowed");
        }
    }
};

}  // namespace

MultiPoly parse_polynomial(const std::string& text, const std::vector<std::string>& vars) {
    Parser p(text, vars);
    p.skip_ws();
    if (p.pos >= text.size()) throw InputError("empty polynomial expression");
    MultiPoly f = p.parse_expression();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input");
    return f;
}

std::string to_string(const MultiPoly& f) {
    if (f.terms.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    // iterate in reverse map order so higher exponents print first
    for (auto it = f.terms.rbegin(); it != f.terms.rend(); ++it) {
        const auto& [e, c] = *it;
        ZZ abs_c = c < 0 ? ZZ(-c) : c;
        if (first) {
            if (c < 0) out << "-";
            first = false;
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        bool has_var = false;
        for (unsigned x : e)
            if (x) has_var = true;
        if (abs_c != 1 || !has_var) {
            out << abs_c.get_str();
            if (has_var) out << "*";
        }
        bool printed = false;
        for (size_t i = 0; i < e.size(); ++i) {
            if (!e[i]) continue;
            if (printed) out << "*";
            out << f.vars[i];
            if (e[i] > 1) out << "^" << e[i];
            printed = true;
        }
    }
    return out.str();
}

FieldElement evaluate_polynomial(const MultiPoly& f, const std::vector<FieldElement>& point) {
    if (point.size() != f.vars.size()) throw InputError("arity mismatch in polynomial evaluation");
    Field k = point.empty() ? nullptr : point[0].owner;
    require(k != nullptr, "evaluation point requires at least one coordinate");
    const auto& K = *k;
    Coords acc = fx_zero(K);
    std::vector<long> scratch;
    Coords t, s;
    for (const auto& [e, c] : f.terms) {
        Coords prod = fx_from_int(K, c);
        for (size_t i = 0; i < e.size(); ++i) {
            if (!e[i]) continue;
            Coords pw = fx_pow(K, point[i].coords, (long)e[i]);
            fx_mul_into(K, prod, pw, t, scratch);
            prod = t;
        }
        fx_add(K, acc, prod, s);
        acc = s;
    }
    return {k, acc};
}

FieldPoly reduce_mod_field(const MultiPoly& f, const Field& k) {
    FieldPoly r{k, f.vars, {}};
    for (const auto& [e, c] : f.terms) {
        Coords cc = fx_from_int(*k, c);
        if (!fx_is_zero(cc)) r.terms[e] = cc;
    }
    return r;
}

FieldPoly partial_evaluate(const MultiPoly& f, const Field& k,
                           const std::vector<std::string>& bound_vars,
                           const std::vector<Coords>& values) {
    require(bound_vars.size() == values.size(), "bound variable/value mismatch");
    const auto& K = *k;
    std::vector<long> bound_idx(f.vars.size(), -1);
    for (size_t b = 0; b < bound_vars.size(); ++b) {
        auto it = std::find(f.vars.begin(), f.vars.end(), bound_vars[b]);
        if (it == f.vars.end()) throw InputError("unknown bound variable " + bound_vars[b]);
        bound_idx[(size_t)(it - f.vars.begin())] = (long)b;
    }
    std::vector<std::string> free_vars;
    std::vector<size_t> free_pos;
    for (size_t i = 0; i < f.vars.size(); ++i)
        if (bound_idx[i] < 0) {
            free_vars.push_back(f.vars[i]);
            free_pos.push_back(i);
        }
    FieldPoly r{k, free_vars, {}};
    std::vector<long> scratch;
    Coords t;
    for (const auto& [e, c] : f.terms) {
        Coords coeff = fx_from_int(K, c);
        for (size_t i = 0; i < e.size(); ++i) {
            if (bound_idx[i] < 0 || !e[i]) continue;
            Coords pw = fx_pow(K, values[(size_t)bound_idx[i]], (long)e[i]);
            fx_mul_into(K, coeff, pw, t, scratch);
            coeff = t;
        }
        if (fx_is_zero(coeff)) continue;
        std::vector<unsigned> fe(free_pos.size());
        for (size_t j = 0; j < free_pos.size(); ++j) fe[j] = e[free_pos[j]];
        auto it = r.terms.find(fe);
        if (it == r.terms.end()) {
            r.terms.emplace(fe, coeff);
        } else {
            Coords s;
            fx_add(K, it->second, coeff, s);
            if (fx_is_zero(s))
                r.terms.erase(it);
            else
                it->second = s;
        }
    }
    return r;
}

FieldPoly embed_poly(const FieldPoly& f, const Field& big) {
    if (f.k == big) return f;
    require(f.k->p == big->p, "embedding across characteristics");
    FieldPoly r{big, f.vars, {}};
    for (const auto& [e, c] : f.terms) r.terms[e] = embed_coords(f.k->p, f.k->a, big->a, c);
    return r;
}

MultiPoly homogenize(const MultiPoly& f, const std::string& new_var) {
    long d = f.total_degree();
    MultiPoly r;
    r.vars = f.vars;
    r.vars.push_back(new_var);
    for (const auto& [e, c] : f.terms) {
        long t = 0;
        for (unsigned x : e) t += x;
        std::vector<unsigned> e2 = e;
        e2.push_back((unsigned)(d - t));
        r.terms[e2] = c;
    }
    return r;
}

MultiPoly reorder_vars(const MultiPoly& f, const std::vector<std::string>& new_order) {
    require(new_order.size() == f.vars.size(), "variable reorder must be a permutation");
    std::vector<size_t> from(new_order.size());
    for (size_t i = 0; i < new_order.size(); ++i) {
        auto it = std::find(f.vars.begin(), f.vars.end(), new_order[i]);
        require(it != f.vars.end(), "variable reorder must be a permutation");
        from[i] = (size_t)(it - f.vars.begin());
    }
    MultiPoly r;
    r.vars = new_order;
    for (const auto& [e, c] : f.terms) {
        std::vector<unsigned> e2(e.size());
        for (size_t i = 0; i < e.size(); ++i) e2[i] = e[from[i]];
        r.terms[e2] = c;
    }
    return r;
}

FieldPoly fieldpoly_partial(const FieldPoly& f, size_t var_index) {
    const auto& K = *f.k;
    FieldPoly r{f.k, f.vars, {}};
    for (const auto& [e, c] : f.terms) {
        if (!e[var_index]) continue;
        long mult = (long)(e[var_index] % (unsigned)K.p);
        if (!mult) continue;
        Coords cc(K.a);
        for (int i = 0; i < K.a; ++i) cc[i] = c[i] * mult % K.p;
        std::vector<unsigned> e2 = e;
        e2[var_index] -= 1;
        auto it = r.terms.find(e2);
        if (it == r.terms.end()) {
            r.terms.emplace(e2, cc);
        } else {
            Coords s;
            fx_add(K, it->second, cc, s);
            if (fx_is_zero(s))
                r.terms.erase(it);
            else
                it->second = s;
        }
    }
    return r;
}

}  // namespace zetakit
