#include "maxdeg/graph.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace maxdeg {

bool Graph::has_edge(int u, int v) const {
    const auto& a = adj_[u];
    return std::find(a.begin(), a.end(), v) != a.end();
}

bool Graph::add_edge(int u, int v) {
    if (u == v) throw std::invalid_argument("add_edge: self-loop");
    if (has_edge(u, v)) return false;
    adj_[u].push_back(v);
    adj_[v].push_back(u);
    edges_.emplace_back(std::min(u, v), std::max(u, v));
    return true;
}

std::vector<std::vector<int>> Graph::connected_components() const {
    const int n = static_cast<int>(num_nodes());
    std::vector<int> comp(n, -1);
    std::vector<std::vector<int>> out;
    for (int s = 0; s < n; ++s) {
        if (comp[s] != -1) continue;
        int id = static_cast<int>(out.size());
        out.emplace_back();
        std::deque<int> q{s};
        comp[s] = id;
        while (!q.empty()) {
            int v = q.front();
            q.pop_front();
            out[id].push_back(v);
            for (int u : adj_[v]) {
                if (comp[u] == -1) {
                    comp[u] = id;
                    q.push_back(u);
                }
            }
        }
    }
    return out;
}

bool Graph::is_connected() const {
    return num_nodes() == 0 || connected_components().size() == 1;
}

Graph load_edge_list(std::istream& in) {
    std::vector<std::pair<long long, long long>> raw;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        long long a, b;
        if (!(ls >> a)) {
            // blank or comment-only line
            std::string rest;
            ls.clear();
            if (ls >> rest)
                throw std::runtime_error("edge list line " + std::to_string(lineno) + ": unparseable token");
            continue;
        }
        if (!(ls >> b))
            throw std::runtime_error("edge list line " + std::to_string(lineno) + ": expected two node ids");
        std::string trailing;
        if (ls >> trailing)
            throw std::runtime_error("edge list line " + std::to_string(lineno) + ": unparseable token '" + trailing + "'");
        if (a == b)
            throw std::runtime_error("edge list line " + std::to_string(lineno) + ": self-loop");
        raw.emplace_back(a, b);
    }

    // compact ids in first-appearance order
    std::unordered_map<long long, int> id_of;
    std::vector<long long> ext;
    auto intern = [&](long long x) {
        auto it = id_of.find(x);
        if (it != id_of.end()) return it->second;
        int id = static_cast<int>(ext.size());
        id_of.emplace(x, id);
        ext.push_back(x);
        return id;
    };
    for (auto& [a, b] : raw) {
        intern(a);
        intern(b);
    }
    Graph g(ext.size());
    g.set_external_ids(ext);
    for (auto& [a, b] : raw) g.add_edge(id_of[a], id_of[b]);
    return g;
}

Graph load_edge_list_string(const std::string& text) {
    std::istringstream in(text);
    return load_edge_list(in);
}

Graph load_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open edge list: " + path);
    return load_edge_list(in);
}

void save_edge_list(const Graph& g, std::ostream& out) {
    const auto& ext = g.external_ids();
    for (const auto& [u, v] : g.edges()) out << ext[u] << ' ' << ext[v] << '\n';
}

void save_edge_list_file(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write edge list: " + path);
    save_edge_list(g, out);
}

}  // namespace maxdeg
