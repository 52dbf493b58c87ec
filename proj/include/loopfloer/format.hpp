// Aligned text tables for page sets and homology listings.

#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "loopfloer/dgalg.hpp"
#include "loopfloer/spectral.hpp"

namespace loopfloer {

// One grid per page, q descending, p ascending. Uncertified cells print as "?",
// cells without chains as ".".
inline std::string format_page(const PageSet& ps, int r) {
    int q_max = 0;
    for (const auto& c : ps.cells(r)) q_max = std::max(q_max, c.q);
    std::vector<int> ps_cols;
    for (int p = ps.min_p(); p <= ps.max_p(); ++p) ps_cols.push_back(p);
    const int width = 5;
    std::ostringstream out;
    out << "E^" << r << "\n";
    for (int q = q_max; q >= 0; --q) {
        std::string line = std::to_string(q);
        line.insert(0, static_cast<std::size_t>(std::max(0, 4 - static_cast<int>(line.size()))), ' ');
        line += " |";
        for (int p : ps_cols) {
            auto c = ps.cell(r, p, q);
            std::string s = !c->certified ? "?" : (c->dim == 0 ? "." : std::to_string(c->dim));
            line += std::string(static_cast<std::size_t>(std::max(1, width - static_cast<int>(s.size()))), ' ') + s;
        }
        out << line << "\n";
    }
    out << "   q +" << std::string(ps_cols.size() * width, '-') << "\n     p";
    for (int p : ps_cols) {
        auto s = std::to_string(p);
        out << std::string(static_cast<std::size_t>(std::max(1, width - static_cast<int>(s.size()))), ' ') << s;
    }
    out << "\n";
    return out.str();
}

// Nonzero certified differentials of page r, one per line.
inline std::vector<std::string> differential_lines(const PageSet& ps, int r) {
    std::vector<std::string> out;
    for (const auto& c : ps.cells(r)) {
        if (!c.certified || c.d_rank == 0) continue;
        out.push_back("d^" + std::to_string(r) + ": E_{" + std::to_string(c.p) + "," + std::to_string(c.q) + "} -> E_{" +
                      std::to_string(c.p - r) + "," + std::to_string(c.q + r - 1) + "}  rank " + std::to_string(c.d_rank));
    }
    return out;
}

inline std::string format_pages(const PageSet& ps) {
    std::ostringstream out;
    out << "cap " << ps.cap() << ", pages 1.." << ps.r_max() << " (\"?\" = outside the certified window p+q+1 <= cap)\n";
    for (int r = 1; r <= ps.r_max(); ++r) {
        out << "\n" << format_page(ps, r);
        for (const auto& l : differential_lines(ps, r)) out << "  " << l << "\n";
    }
    return out.str();
}

inline std::string format_homology(const std::vector<DegreeDim>& dims) {
    std::ostringstream out;
    out << "degree  dim\n";
    for (const auto& d : dims) {
        auto s = std::to_string(d.degree);
        out << std::string(static_cast<std::size_t>(std::max(0, 6 - static_cast<int>(s.size()))), ' ') << s << "  "
            << d.dim << "\n";
    }
    return out.str();
}

}  // namespace loopfloer
