#include "maxdeg/degree_stats.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace maxdeg {

int DegreeProfile::index_of(int deg) const {
    auto it = std::lower_bound(degrees.begin(), degrees.end(), deg);
    if (it == degrees.end() || *it != deg) return -1;
    return static_cast<int>(it - degrees.begin());
}

DegreeProfile degree_profile(const Graph& g) {
    if (g.num_nodes() == 0) throw std::invalid_argument("degree_profile: empty graph");
    const int n = static_cast<int>(g.num_nodes());
    DegreeProfile dp;
    dp.degree.resize(n);
    std::set<int> distinct;
    for (int v = 0; v < n; ++v) {
        dp.degree[v] = g.degree(v);
        distinct.insert(dp.degree[v]);
    }
    dp.degrees.assign(distinct.begin(), distinct.end());
    dp.d_max = dp.degrees.back();
    const std::size_t delta = dp.degrees.size();
    dp.nodes_by_degree.resize(delta);
    for (int v = 0; v < n; ++v) dp.nodes_by_degree[dp.index_of(dp.degree[v])].push_back(v);
    dp.degree_prob.resize(delta);
    for (std::size_t i = 0; i < delta; ++i)
        dp.degree_prob[i] = static_cast<double>(dp.nodes_by_degree[i].size()) / n;
    dp.neighborhood.assign(n, std::vector<int>(delta, 0));
    for (int v = 0; v < n; ++v)
        for (int u : g.neighbors(v)) dp.neighborhood[v][dp.index_of(dp.degree[u])]++;
    return dp;
}

long long JointDegreeMatrix::at(int k, int l) const {
    auto it = std::lower_bound(degrees.begin(), degrees.end(), k);
    if (it == degrees.end() || *it != k) return 0;
    auto jt = std::lower_bound(degrees.begin(), degrees.end(), l);
    if (jt == degrees.end() || *jt != l) return 0;
    return counts[it - degrees.begin()][jt - degrees.begin()];
}

JointDegreeMatrix joint_degree_matrix(const Graph& g, const DegreeProfile& dp) {
    JointDegreeMatrix j;
    j.degrees = dp.degrees;
    const std::size_t delta = dp.degrees.size();
    j.counts.assign(delta, std::vector<long long>(delta, 0));
    for (const auto& [u, v] : g.edges()) {
        int a = dp.index_of(dp.degree[u]);
        int b = dp.index_of(dp.degree[v]);
        j.counts[a][b]++;
        j.counts[b][a]++;
    }
    return j;
}

ConditionalDegreeMatrix conditional_degree_matrix(const JointDegreeMatrix& j) {
    const std::size_t delta = j.degrees.size();
    ConditionalDegreeMatrix jt;
    jt.degrees = j.degrees;
    jt.rows = Matrix(delta, delta);
    jt.support.resize(delta);
    for (std::size_t k = 0; k < delta; ++k) {
        long long row_sum = 0;
        for (std::size_t l = 0; l < delta; ++l) row_sum += j.counts[k][l];
        if (row_sum == 0)
            throw std::runtime_error("conditional_degree_matrix: isolated degree class " +
                                     std::to_string(j.degrees[k]));
        for (std::size_t l = 0; l < delta; ++l) {
            if (j.counts[k][l] > 0) {
                jt.rows(k, l) = static_cast<double>(j.counts[k][l]) / static_cast<double>(row_sum);
                jt.support[k].push_back(static_cast<int>(l));
            }
        }
    }
    return jt;
}

std::optional<double> assortativity(const Graph& g) {
    const auto& edges = g.edges();
    if (edges.empty()) return std::nullopt;
    // moments over the 2m (x, y) orientation pairs; integer sums stay exact
    long long sx = 0, sxx = 0, sxy = 0;
    for (const auto& [u, v] : edges) {
        long long du = g.degree(u), dv = g.degree(v);
        sx += du + dv;
        sxx += du * du + dv * dv;
        sxy += 2 * du * dv;
    }
    const double m2 = 2.0 * static_cast<double>(edges.size());
    double mean = static_cast<double>(sx) / m2;
    double var = static_cast<double>(sxx) / m2 - mean * mean;
    double cov = static_cast<double>(sxy) / m2 - mean * mean;
    if (var <= 1e-12 * static_cast<double>(sxx)) return std::nullopt;
    return cov / var;
}

void write_matrix_csv(std::ostream& out, const std::vector<int>& degrees,
                      const std::vector<std::vector<double>>& values) {
    out << "degree";
    for (int d : degrees) out << ',' << d;
    out << '\n';
    char buf[64];
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        out << degrees[i];
        for (std::size_t j = 0; j < degrees.size(); ++j) {
            std::snprintf(buf, sizeof buf, "%.12g", values[i][j]);
            out << ',' << buf;
        }
        out << '\n';
    }
}

std::string joint_matrix_csv(const JointDegreeMatrix& j) {
    std::vector<std::vector<double>> v(j.degrees.size(), std::vector<double>(j.degrees.size()));
    for (std::size_t a = 0; a < j.degrees.size(); ++a)
        for (std::size_t b = 0; b < j.degrees.size(); ++b)
            v[a][b] = static_cast<double>(j.counts[a][b]);
    std::ostringstream out;
    write_matrix_csv(out, j.degrees, v);
    return out.str();
}

std::string conditional_matrix_csv(const ConditionalDegreeMatrix& jt) {
    std::vector<std::vector<double>> v(jt.degrees.size(), std::vector<double>(jt.degrees.size()));
    for (std::size_t a = 0; a < jt.degrees.size(); ++a)
        for (std::size_t b = 0; b < jt.degrees.size(); ++b) v[a][b] = jt.rows(a, b);
    std::ostringstream out;
    write_matrix_csv(out, jt.degrees, v);
    return out.str();
}

}  // namespace maxdeg
