#ifndef MAXDEG_DEGREE_STATS_HPP
#define MAXDEG_DEGREE_STATS_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "maxdeg/graph.hpp"
#include "maxdeg/linalg.hpp"

namespace maxdeg {

/// Per-node degrees plus everything derived from them: the sorted set of
/// distinct degrees, the node partition by degree, the degree distribution,
/// and each node's degree neighborhood (neighbor counts by degree).
struct DegreeProfile {
    std::vector<int> degree;             // d(v)
    std::vector<int> degrees;            // sorted distinct degrees
    std::vector<std::vector<int>> nodes_by_degree;  // indexed like `degrees`
    std::vector<double> degree_prob;     // |V_k| / n
    int d_max = 0;
    // neighborhood[v][i] = number of neighbors of v with degree degrees[i]
    std::vector<std::vector<int>> neighborhood;

    std::size_t num_degrees() const { return degrees.size(); }
    int index_of(int deg) const;  // -1 if absent
};

DegreeProfile degree_profile(const Graph& g);

/// Joint degree matrix J: J(k,l) = edges with endpoint degrees {k,l},
/// diagonal entries doubled. Indexed by position in the sorted degree set.
struct JointDegreeMatrix {
    std::vector<int> degrees;
    std::vector<std::vector<long long>> counts;

    long long at(int k, int l) const;  // by degree value, 0 if absent
};

JointDegreeMatrix joint_degree_matrix(const Graph& g, const DegreeProfile& dp);

/// Row-normalized J. Row k is the average neighbor-degree distribution seen
/// from degree-k nodes.
struct ConditionalDegreeMatrix {
    std::vector<int> degrees;
    Matrix rows;                         // row-stochastic, delta x delta
    std::vector<std::vector<int>> support;  // degree indices with positive mass, per row
};

ConditionalDegreeMatrix conditional_degree_matrix(const JointDegreeMatrix& j);

/// Pearson correlation of endpoint degrees over the 2m edge orientations.
/// nullopt when the endpoint-degree variance is zero (e.g. regular graphs).
std::optional<double> assortativity(const Graph& g);

// Degree-labeled CSV dumps (header row and column of degree labels).
void write_matrix_csv(std::ostream& out, const std::vector<int>& degrees,
                      const std::vector<std::vector<double>>& values);
std::string joint_matrix_csv(const JointDegreeMatrix& j);
std::string conditional_matrix_csv(const ConditionalDegreeMatrix& jt);

}  // namespace maxdeg

#endif
