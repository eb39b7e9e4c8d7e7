#ifndef MAXDEG_GENERATORS_HPP
#define MAXDEG_GENERATORS_HPP

#include <cstdint>

#include "maxdeg/graph.hpp"

namespace maxdeg {

struct ErSpec {
    std::size_t n = 0;
    double p = 0.0;  // edge probability
    std::uint64_t seed = 0;
};

/// G(n, p): each unordered pair included independently with probability p.
/// Deterministic per seed; uses geometric skips so sparse graphs stay fast.
Graph generate_er(const ErSpec& spec);

/// Principal branch of the Lambert W function on x >= 0, by Halley iteration
/// to |w e^w - x| <= 1e-12.
double lambert_w0(double x);

/// Upper bound on the expected max degree of G(n, lambda/n):
/// (log n - lambda) / W((log n - lambda) / (e lambda)).
/// Requires log(n) > lambda > 0.
double expected_max_degree_bound(std::size_t n, double lambda);

/// Solves -log(1 - g) / g = lambda for the giant-component fraction g,
/// by bisection to 1e-10. Requires lambda > 1.
double giant_component_fraction(double lambda);

/// Induced subgraph on the largest connected component (ties broken by the
/// component containing the smallest node id); ids remapped, originals kept
/// in external_ids.
Graph extract_giant_component(const Graph& g);

}  // namespace maxdeg

#endif
