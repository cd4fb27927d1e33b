#pragma once

// Direct enumeration used to cross-check the fast paths.

#include <cstdint>
#include <vector>

#include "sumprod/arith_set.hpp"
#include "sumprod/incidence.hpp"

namespace sumprod::oracle {

template <FieldValue F>
std::vector<PlanePoint<F>> grid_points(const ArithSet<F>& s) {
    std::vector<PlanePoint<F>> pts;
    pts.reserve(s.size() * s.size());
    for (const F& u : s)
        for (const F& v : s) pts.push_back({u, v});
    return pts;
}

template <FieldValue F>
std::uint64_t collinear_triples(const ArithSet<F>& x, const ArithSet<F>& y, const ArithSet<F>& z) {
    const auto px = grid_points(x), py = grid_points(y), pz = grid_points(z);
    std::uint64_t total = 0;
    for (const auto& p : px)
        for (const auto& q : py) {
            if (p == q) continue;
            for (const auto& r : pz)
                if (r != p && r != q && collinear(p, q, r)) ++total;
        }
    return total;
}

template <FieldValue F>
SextupleCount sextuple_count(const ArithSet<F>& a) {
    const auto pts = grid_points(a);
    SextupleCount out;
    for (const auto& p : pts)
        for (const auto& q : pts)
            for (const auto& r : pts) {
                if ((p.x - q.x) * (p.y - r.y) != (p.x - r.x) * (p.y - q.y)) continue;
                ++out.total;
                if (p != q && q != r && p != r) ++out.nondegenerate;
            }
    out.collinear = oracle::collinear_triples(a, a, a);
    return out;
}

}  // namespace sumprod::oracle
