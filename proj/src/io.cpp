#include "ohcp/io.hpp"

#include <fstream>
#include <sstream>

namespace ohcp {

namespace {

std::string strip_comment(const std::string& line) {
    size_t h = line.find('#');
    return h == std::string::npos ? line : line.substr(0, h);
}

std::vector<std::string> tokens(const std::string& line) {
    std::istringstream is(strip_comment(line));
    std::vector<std::string> out;
    std::string t;
    while (is >> t) out.push_back(t);
    return out;
}

[[noreturn]] void fail(const std::string& path, long line, const std::string& msg) {
    std::ostringstream os;
    os << path << ":" << line << ": " << msg;
    throw ParseError(os.str());
}

long parse_vertex(const std::string& path, long lineno, const std::string& tok) {
    try {
        size_t used = 0;
        long v = std::stol(tok, &used);
        if (used != tok.size() || v < 0) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        fail(path, lineno, "bad vertex label '" + tok + "'");
    }
}

// Parse one simplex from toks[from..]; returns sorted vertices and the
// orientation sign of the given order.
Simplex parse_simplex(const std::string& path, long lineno, const std::vector<std::string>& toks,
                      size_t from) {
    std::vector<long> verts;
    for (size_t i = from; i < toks.size(); ++i) verts.push_back(parse_vertex(path, lineno, toks[i]));
    try {
        return Simplex::canonical(verts);
    } catch (const ParseError& e) {
        fail(path, lineno, e.what());
    }
}

template <typename Fn>
void for_each_data_line(const std::string& path, Fn fn) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::vector<std::string> toks = tokens(line);
        if (toks.empty()) continue;
        fn(lineno, toks);
    }
}

}  // namespace

Rat parse_rational(const std::string& token) {
    size_t slash = token.find('/');
    auto check_int = [&](const std::string& s) {
        if (s.empty()) throw ParseError("bad rational '" + token + "'");
        size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) throw ParseError("bad rational '" + token + "'");
        for (; i < s.size(); ++i)
            if (!isdigit((unsigned char)s[i])) throw ParseError("bad rational '" + token + "'");
    };
    if (slash == std::string::npos) {
        check_int(token);
        return Rat(token);
    }
    std::string num = token.substr(0, slash), den = token.substr(slash + 1);
    check_int(num);
    check_int(den);
    Rat d(den);
    if (d == 0) throw ParseError("zero denominator in '" + token + "'");
    Rat r(token);
    mpq_canonicalize(r.get_mpq_t());
    return r;
}

ParsedComplex load_complex(const std::string& path) {
    ParsedComplex pc;
    for_each_data_line(path, [&](long lineno, const std::vector<std::string>& toks) {
        std::vector<long> verts;
        for (const std::string& t : toks) verts.push_back(parse_vertex(path, lineno, t));
        try {
            Simplex::canonical(verts);  // duplicate check with line context
        } catch (const ParseError& e) {
            fail(path, lineno, e.what());
        }
        pc.maximal.push_back(std::move(verts));
    });
    if (pc.maximal.empty()) throw ParseError(path + ": no simplices in file");
    pc.complex = build_complex(pc.maximal);
    return pc;
}

Chain load_chain(const std::string& path, const SimplicialComplex& kc, int p) {
    Chain chain;
    chain.dim = p;
    for_each_data_line(path, [&](long lineno, const std::vector<std::string>& toks) {
        if (int(toks.size()) != p + 2)
            fail(path, lineno, "expected coefficient followed by " + std::to_string(p + 1) +
                                   " vertex labels");
        Rat coeff;
        try {
            coeff = parse_rational(toks[0]);
        } catch (const ParseError& e) {
            fail(path, lineno, e.what());
        }
        Simplex s = parse_simplex(path, lineno, toks, 1);
        int idx = kc.index_of(p, s.vertices);
        if (idx < 0) fail(path, lineno, "simplex is not in the complex");
        Rat cur = coeff * s.sign;
        auto it = chain.coef.find(idx);
        if (it != chain.coef.end()) cur += it->second;
        chain.set(idx, cur);
    });
    return chain;
}

std::vector<Rat> load_weights(const std::string& path, const SimplicialComplex& kc, int p) {
    std::vector<Rat> w(kc.count(p), Rat(1));
    std::vector<bool> seen(kc.count(p), false);
    for_each_data_line(path, [&](long lineno, const std::vector<std::string>& toks) {
        if (int(toks.size()) != p + 2)
            fail(path, lineno, "expected weight followed by " + std::to_string(p + 1) +
                                   " vertex labels");
        Rat value;
        try {
            value = parse_rational(toks[0]);
        } catch (const ParseError& e) {
            fail(path, lineno, e.what());
        }
        if (value < 0) fail(path, lineno, "negative weight");
        Simplex s = parse_simplex(path, lineno, toks, 1);
        int idx = kc.index_of(p, s.vertices);
        if (idx < 0) fail(path, lineno, "simplex is not in the complex");
        if (seen[idx]) fail(path, lineno, "duplicate weight for one simplex");
        seen[idx] = true;
        w[idx] = value;
    });
    return w;
}

std::vector<Rat> chain_to_dense(const SimplicialComplex& kc, const Chain& chain) {
    std::vector<Rat> v(kc.count(chain.dim));
    for (const auto& [i, c] : chain.coef) {
        if (i < 0 || i >= int(v.size())) throw InternalError("chain index out of range");
        v[i] = c;
    }
    return v;
}

}  // namespace ohcp
