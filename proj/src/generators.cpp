#include "maxdeg/generators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "maxdeg/rng.hpp"

namespace maxdeg {

Graph generate_er(const ErSpec& spec) {
    if (spec.n < 2) throw std::invalid_argument("generate_er: n must be >= 2");
    if (spec.p < 0.0 || spec.p > 1.0) throw std::invalid_argument("generate_er: p out of [0,1]");
    Graph g(spec.n);
    if (spec.p == 0.0) return g;
    Rng rng(child_seed(spec.seed, 0));
    if (spec.p == 1.0) {
        for (std::size_t u = 0; u < spec.n; ++u)
            for (std::size_t v = u + 1; v < spec.n; ++v)
                g.add_edge(static_cast<int>(u), static_cast<int>(v));
        return g;
    }
    // geometric-skip enumeration over the C(n,2) pair indices, row-major
    // over u with v in (u, n); the (row, offset) cursor advances in place
    const double log_q = std::log1p(-spec.p);
    std::uint64_t row = 0;
    std::uint64_t offset = 0;  // position within the current row, 0-based
    std::uint64_t row_len = spec.n - 1;
    bool first = true;
    while (row_len > 0) {
        double r = rng.uniform();
        auto skip = static_cast<std::uint64_t>(std::floor(std::log1p(-r) / log_q));
        std::uint64_t advance = skip + (first ? 0 : 1);
        first = false;
        offset += advance;
        while (row_len > 0 && offset >= row_len) {
            offset -= row_len;
            ++row;
            --row_len;
        }
        if (row_len == 0) break;
        g.add_edge(static_cast<int>(row), static_cast<int>(row + 1 + offset));
    }
    return g;
}

double lambert_w0(double x) {
    if (x < 0.0) throw std::domain_error("lambert_w0: negative argument not supported");
    if (x == 0.0) return 0.0;
    double w = x < M_E ? x / (1.0 + x) : std::log(x) - std::log(std::log(x) + 1e-300);
    if (!(w > 0.0)) w = 1e-6;
    for (int it = 0; it < 100; ++it) {
        double ew = std::exp(w);
        double f = w * ew - x;
        if (std::abs(f) <= 1e-12) break;
        // Halley step
        double denom = ew * (w + 1.0) - (w + 2.0) * f / (2.0 * w + 2.0);
        w -= f / denom;
    }
    return w;
}

double expected_max_degree_bound(std::size_t n, double lambda) {
    const double logn = std::log(static_cast<double>(n));
    if (!(lambda > 0.0) || !(logn > lambda))
        throw std::domain_error("expected_max_degree_bound: requires log(n) > lambda > 0");
    const double x = (logn - lambda) / (M_E * lambda);
    return (logn - lambda) / lambert_w0(x);
}

double giant_component_fraction(double lambda) {
    if (!(lambda > 1.0))
        throw std::domain_error("giant_component_fraction: requires lambda > 1");
    // -log(1-g)/g is increasing in g on (0,1), from 1 to infinity
    double lo = 1e-15, hi = 1.0 - 1e-15;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        double val = -std::log1p(-mid) / mid;
        if (val < lambda)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-12) break;
    }
    return 0.5 * (lo + hi);
}

Graph extract_giant_component(const Graph& g) {
    if (g.num_nodes() == 0) throw std::invalid_argument("extract_giant_component: empty graph");
    auto comps = g.connected_components();
    // components are discovered in order of their smallest node id, so the
    // first maximal one realizes the documented tie-break
    std::size_t best = 0;
    for (std::size_t i = 1; i < comps.size(); ++i)
        if (comps[i].size() > comps[best].size()) best = i;
    const auto& keep = comps[best];
    std::vector<int> new_id(g.num_nodes(), -1);
    std::vector<int> sorted_keep = keep;
    std::sort(sorted_keep.begin(), sorted_keep.end());
    Graph out(sorted_keep.size());
    std::vector<long long> ext(sorted_keep.size());
    for (std::size_t i = 0; i < sorted_keep.size(); ++i) {
        new_id[sorted_keep[i]] = static_cast<int>(i);
        ext[i] = g.external_ids()[sorted_keep[i]];
    }
    out.set_external_ids(ext);
    for (const auto& [a, b] : g.edges())
        if (new_id[a] != -1 && new_id[b] != -1) out.add_edge(new_id[a], new_id[b]);
    return out;
}

}  // namespace maxdeg
