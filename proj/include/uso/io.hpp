#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "uso/cube.hpp"
#include "uso/matrix.hpp"

namespace uso {

// File formats. Both are line-oriented text:
//
//   USO 1                          LCP 1
//   <n>                            <n>
//   <2^n decimal outmap masks>     <n rows of n rational tokens>   (matrix M)
//                                  <n rational tokens>             (vector q)
//
// Masks are vertex-index ordered, dimension i at bit i-1. Rational tokens
// are "a" or "a/b".

namespace detail {

inline std::vector<std::string> tokens(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    std::string t;
    while (in >> t) out.push_back(t);
    return out;
}

inline std::string read_line(std::istream& in, int& lineno) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError(lineno + 1, "unexpected end of file");
    ++lineno;
    return line;
}

}  // namespace detail

inline OutMap read_uso(std::istream& in) {
    int lineno = 0;
    if (detail::read_line(in, lineno) != "USO 1") throw ParseError(1, "expected header 'USO 1'");
    const std::string nline = detail::read_line(in, lineno);
    int n = 0;
    try {
        n = std::stoi(nline);
    } catch (const std::exception&) {
        throw ParseError(2, "bad dimension '" + nline + "'");
    }
    if (n < 0) throw ParseError(2, "negative dimension");
    if (n > max_dimension())
        throw ParseError(2, "dimension " + std::to_string(n) + " exceeds cap " +
                                std::to_string(max_dimension()));
    const std::vector<std::string> toks = detail::tokens(detail::read_line(in, lineno));
    if (toks.size() != (std::size_t(1) << n))
        throw ParseError(3, "expected " + std::to_string(std::size_t(1) << n) +
                                " outmap masks, got " + std::to_string(toks.size()));
    std::vector<std::uint32_t> masks;
    masks.reserve(toks.size());
    for (const std::string& t : toks) {
        unsigned long v = 0;
        try {
            std::size_t pos = 0;
            v = std::stoul(t, &pos);
            if (pos != t.size()) throw std::invalid_argument(t);
        } catch (const std::exception&) {
            throw ParseError(3, "bad outmap mask '" + t + "'");
        }
        if (v >= (1ul << n)) throw ParseError(3, "outmap mask " + t + " out of range for n=" + std::to_string(n));
        masks.push_back(std::uint32_t(v));
    }
    return OutMap(n, std::move(masks));
}

inline OutMap read_uso_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    return read_uso(in);
}

inline std::string format_uso(const OutMap& o) {
    std::string out = "USO 1\n" + std::to_string(o.dimension()) + "\n";
    for (std::uint32_t v = 0; v < o.vertex_count(); ++v) {
        if (v) out += ' ';
        out += std::to_string(o.mask_at(v));
    }
    out += '\n';
    return out;
}

inline void write_uso_file(const std::string& path, const OutMap& o) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << format_uso(o);
}

struct LcpData {
    RationalMatrix m;
    RationalVector q;
};

inline LcpData read_lcp(std::istream& in) {
    int lineno = 0;
    if (detail::read_line(in, lineno) != "LCP 1") throw ParseError(1, "expected header 'LCP 1'");
    const std::string nline = detail::read_line(in, lineno);
    int n = 0;
    try {
        n = std::stoi(nline);
    } catch (const std::exception&) {
        throw ParseError(2, "bad dimension '" + nline + "'");
    }
    if (n < 0) throw ParseError(2, "negative dimension");
    LcpData d{RationalMatrix(n, n), RationalVector(n)};
    for (int r = 0; r < n; ++r) {
        const int here = lineno + 1;
        const std::vector<std::string> toks = detail::tokens(detail::read_line(in, lineno));
        if (int(toks.size()) != n)
            throw ParseError(here, "expected " + std::to_string(n) + " matrix entries");
        for (int c = 0; c < n; ++c) {
            try {
                d.m.at(r, c) = Rational::parse(toks[c]);
            } catch (const Error& e) {
                throw ParseError(here, e.what());
            }
        }
    }
    const int here = lineno + 1;
    const std::vector<std::string> toks = detail::tokens(detail::read_line(in, lineno));
    if (int(toks.size()) != n) throw ParseError(here, "expected " + std::to_string(n) + " q entries");
    for (int c = 0; c < n; ++c) {
        try {
            d.q[c] = Rational::parse(toks[c]);
        } catch (const Error& e) {
            throw ParseError(here, e.what());
        }
    }
    return d;
}

inline LcpData read_lcp_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    return read_lcp(in);
}

inline std::string format_lcp(const LcpData& d) {
    std::string out = "LCP 1\n" + std::to_string(d.m.rows()) + "\n";
    for (int r = 0; r < d.m.rows(); ++r) {
        for (int c = 0; c < d.m.cols(); ++c) {
            if (c) out += ' ';
            out += d.m.at(r, c).to_string();
        }
        out += '\n';
    }
    for (int c = 0; c < d.q.size(); ++c) {
        if (c) out += ' ';
        out += d.q[c].to_string();
    }
    out += '\n';
    return out;
}

inline void write_lcp_file(const std::string& path, const LcpData& d) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << format_lcp(d);
}

}  // namespace uso
