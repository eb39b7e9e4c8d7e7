#ifndef MAXDEG_GRAPH_HPP
#define MAXDEG_GRAPH_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace maxdeg {

/// Undirected simple graph. Nodes are dense ids 0..n-1; the original
/// external ids from an edge list are kept in external_ids.
class Graph {
public:
    Graph() = default;
    explicit Graph(std::size_t n) : adj_(n), external_ids_(n) {
        for (std::size_t v = 0; v < n; ++v) external_ids_[v] = static_cast<long long>(v);
    }

    std::size_t num_nodes() const { return adj_.size(); }
    std::size_t num_edges() const { return edges_.size(); }

    const std::vector<int>& neighbors(int v) const { return adj_[v]; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }

    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::vector<long long>& external_ids() const { return external_ids_; }
    void set_external_ids(std::vector<long long> ids) { external_ids_ = std::move(ids); }

    bool has_edge(int u, int v) const;

    // Adds {u, v}; returns false if it already exists. Throws on self-loop.
    bool add_edge(int u, int v);

    std::vector<std::vector<int>> connected_components() const;
    bool is_connected() const;

private:
    std::vector<std::vector<int>> adj_;
    std::vector<std::pair<int, int>> edges_;  // stored with first < second
    std::vector<long long> external_ids_;
};

/// Parses the edge-list text format: one edge per line, two whitespace
/// separated integer ids, '#' starts a comment. Duplicate edges collapse;
/// self-loops and malformed tokens are rejected with the line number.
Graph load_edge_list(std::istream& in);
Graph load_edge_list_string(const std::string& text);
Graph load_edge_list_file(const std::string& path);

void save_edge_list(const Graph& g, std::ostream& out);
void save_edge_list_file(const Graph& g, const std::string& path);

}  // namespace maxdeg

#endif
