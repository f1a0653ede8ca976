#include "zetakit/variety.hpp"

#include <fstream>
#include <sstream>

namespace zetakit {

VarietyInstance instance_over_extension(const VarietyDescriptor& V, int j) {
    Field k = make_extension_field(V.base->p, V.base->a * j);
    VarietyInstance inst;
    inst.k = k;
    inst.projective = V.projective;
    inst.ncoords = V.ncoords();
    for (const auto& eq : V.equations) inst.equations.push_back(reduce_mod_field(eq, k));
    if (V.exclusion) inst.exclusion = reduce_mod_field(*V.exclusion, k);
    return inst;
}

namespace {

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (!std::isspace((unsigned char)c)) {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

std::string strip(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

struct RawVarietyFile {
    long p = 0;
    int a = 1;
    std::string ambient;
    int n = 0;
    std::vector<std::string> vars;
    std::string exclude_text;
    int exclude_line = 0;
    std::vector<std::pair<int, std::string>> poly_lines;
    bool have_p = false, have_ambient = false, have_n = false, have_vars = false;
};

RawVarietyFile scan_variety_text(const std::string& text, std::vector<Diagnostic>* diags) {
    RawVarietyFile raw;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    auto complain = [&](int ln, const std::string& msg) {
        if (diags)
            diags->push_back({ln, msg});
        else
            throw InputError("line " + std::to_string(ln) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = strip(line);
        if (t.empty() || t[0] == '#') continue;
        auto eq = t.find('=');
        std::string key = eq == std::string::npos ? "" : strip(t.substr(0, eq));
        bool is_key = eq != std::string::npos && !key.empty() && key.find_first_of(" \t+-*^()") == std::string::npos &&
                      !std::isdigit((unsigned char)key[0]);
        if (is_key) {
            std::string val = strip(t.substr(eq + 1));
            if (key == "p") {
                try {
                    raw.p = std::stol(val);
                    raw.have_p = true;
                } catch (...) {
                    complain(lineno, "invalid p value '" + val + "'");
                }
            } else if (key == "a") {
                try {
                    raw.a = std::stoi(val);
                } catch (...) {
                    complain(lineno, "invalid a value '" + val + "'");
                }
            } else if (key == "ambient") {
                raw.ambient = val;
                raw.have_ambient = true;
                if (val != "affine" && val != "projective") complain(lineno, "ambient must be affine or projective");
            } else if (key == "n") {
                try {
                    raw.n = std::stoi(val);
                    raw.have_n = true;
                } catch (...) {
                    complain(lineno, "invalid n value '" + val + "'");
                }
            } else if (key == "vars") {
                raw.vars = split_csv(val);
                raw.have_vars = true;
            } else if (key == "exclude") {
                raw.exclude_text = val;
                raw.exclude_line = lineno;
            } else {
                complain(lineno, "unknown header key '" + key + "'");
            }
        } else {
            raw.poly_lines.push_back({lineno, t});
        }
    }
    if (!raw.have_p) complain(0, "missing p= header");
    if (!raw.have_ambient) complain(0, "missing ambient= header");
    if (!raw.have_n) complain(0, "missing n= header");
    if (!raw.have_vars) complain(0, "missing vars= header");
    return raw;
}

}  // namespace

VarietyDescriptor parse_variety_text(const std::string& text, const std::string& origin) {
    RawVarietyFile raw = scan_variety_text(text, nullptr);
    if (!is_prime(raw.p)) throw InputError(origin + ": p=" + std::to_string(raw.p) + " is not prime");
    if (raw.n < 1) throw InputError(origin + ": n must be >= 1");
    bool projective = raw.ambient == "projective";
    size_t expected = projective ? (size_t)raw.n + 1 : (size_t)raw.n;
    if (raw.vars.size() != expected)
        throw InputError(origin + ": expected " + std::to_string(expected) + " variables, got " +
                         std::to_string(raw.vars.size()));

    VarietyDescriptor V;
    V.base = make_extension_field(raw.p, raw.a);
    V.projective = projective;
    V.n = raw.n;
    V.vars = raw.vars;
    for (const auto& [ln, ptext] : raw.poly_lines) {
        MultiPoly f;
        try {
            f = parse_polynomial(ptext, raw.vars);
        } catch (const InputError& e) {
            throw InputError(origin + " line " + std::to_string(ln) + ": " + e.what());
        }
        if (projective && !f.is_homogeneous())
            throw InputError(origin + " line " + std::to_string(ln) + ": inhomogeneous equation in projective ambient");
        V.equations.push_back(std::move(f));
    }
    if (!raw.exclude_text.empty()) {
        MultiPoly ex = parse_polynomial(raw.exclude_text, raw.vars);
        if (projective && !ex.is_homogeneous())
            throw InputError(origin + ": inhomogeneous exclusion in projective ambient");
        V.exclusion = std::move(ex);
    }
    return V;
}

VarietyDescriptor load_variety_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_variety_text(ss.str(), path);
}

std::vector<Diagnostic> validate_variety_text(const std::string& text) {
    std::vector<Diagnostic> diags;
    RawVarietyFile raw = scan_variety_text(text, &diags);
    if (raw.have_p && !is_prime(raw.p)) diags.push_back({0, "p=" + std::to_string(raw.p) + " is not prime"});
    if (raw.have_n && raw.n < 1) diags.push_back({0, "n must be >= 1"});
    bool projective = raw.ambient == "projective";
    if (raw.have_vars && raw.have_n) {
        size_t expected = projective ? (size_t)raw.n + 1 : (size_t)raw.n;
        if (raw.vars.size() != expected)
            diags.push_back({0, "expected " + std::to_string(expected) + " variables, got " +
                                    std::to_string(raw.vars.size())});
    }
    auto check_poly = [&](int ln, const std::string& ptext, const char* what) {
        try {
            MultiPoly f = parse_polynomial(ptext, raw.vars);
            if (projective && !f.is_homogeneous())
                diags.push_back({ln, std::string(what) + " '" + ptext + "' is not homogeneous"});
        } catch (const InputError& e) {
            diags.push_back({ln, e.what()});
        }
    };
    if (raw.have_vars) {
        for (const auto& [ln, ptext] : raw.poly_lines) check_poly(ln, ptext, "equation");
        if (!raw.exclude_text.empty()) check_poly(raw.exclude_line, raw.exclude_text, "exclusion");
    }
    // the modulus chosen for (p, a) is irreducible by construction; verify anyway
    if (raw.have_p && is_prime(raw.p) && raw.a >= 1) {
        Field k = make_extension_field(raw.p, raw.a);
        if (!is_irreducible_mod_p(k->modulus, raw.p)) diags.push_back({0, "field modulus is not irreducible"});
    }
    return diags;
}

}  // namespace zetakit
