#include "maxdeg/chain.hpp"

#include <cmath>
#include <cstdio>
#include <deque>
#include <sstream>
#include <stdexcept>

namespace maxdeg {

AbsorbingChain partition_chain(const std::vector<std::string>& labels, const Matrix& p,
                               const std::function<bool(int)>& is_absorbing) {
    const std::size_t n = labels.size();
    if (p.rows() != n || p.cols() != n)
        throw std::invalid_argument("partition_chain: matrix/label size mismatch");
    AbsorbingChain c;
    c.labels = labels;
    for (int i = 0; i < static_cast<int>(n); ++i) {
        if (is_absorbing(i)) {
            if (std::abs(p(i, i) - 1.0) > 1e-12)
                throw std::runtime_error("partition_chain: absorbing state '" + labels[i] +
                                         "' has self-probability != 1");
            c.absorbing_states.push_back(i);
        } else {
            double row_sum = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (p(i, j) < -1e-15 || p(i, j) > 1.0 + 1e-12)
                    throw std::runtime_error("partition_chain: probability out of [0,1]");
                row_sum += p(i, j);
            }
            if (std::abs(row_sum - 1.0) > 1e-12)
                throw std::runtime_error("partition_chain: transient row '" + labels[i] +
                                         "' does not sum to 1");
            c.transient_states.push_back(i);
        }
    }
    const std::size_t nt = c.transient_states.size();
    const std::size_t na = c.absorbing_states.size();
    c.q = Matrix(nt, nt);
    c.r = Matrix(nt, na);
    for (std::size_t a = 0; a < nt; ++a) {
        for (std::size_t b = 0; b < nt; ++b) c.q(a, b) = p(c.transient_states[a], c.transient_states[b]);
        for (std::size_t b = 0; b < na; ++b) c.r(a, b) = p(c.transient_states[a], c.absorbing_states[b]);
    }
    return c;
}

namespace {

// Every transient state must reach some absorbing state over the support of
// [R | Q]; checked by reverse BFS from the "absorbed" super-state.
void check_absorbable(const AbsorbingChain& c) {
    const std::size_t nt = c.num_transient();
    std::vector<char> reaches(nt, 0);
    std::deque<std::size_t> q;
    for (std::size_t i = 0; i < nt; ++i) {
        for (std::size_t a = 0; a < c.num_absorbing(); ++a) {
            if (c.r(i, a) > 0.0) {
                reaches[i] = 1;
                q.push_back(i);
                break;
            }
        }
    }
    while (!q.empty()) {
        std::size_t j = q.front();
        q.pop_front();
        for (std::size_t i = 0; i < nt; ++i) {
            if (!reaches[i] && c.q(i, j) > 0.0) {
                reaches[i] = 1;
                q.push_back(i);
            }
        }
    }
    for (std::size_t i = 0; i < nt; ++i) {
        if (!reaches[i])
            throw std::runtime_error("absorption_stats: non-absorbing from state '" +
                                     c.labels[c.transient_states[i]] + "'");
    }
}

Matrix i_minus_q(const AbsorbingChain& c) {
    const std::size_t nt = c.num_transient();
    Matrix m(nt, nt);
    for (std::size_t i = 0; i < nt; ++i)
        for (std::size_t j = 0; j < nt; ++j) m(i, j) = (i == j ? 1.0 : 0.0) - c.q(i, j);
    return m;
}

}  // namespace

AbsorptionStats absorption_stats(const AbsorbingChain& c, VarianceFormula vf) {
    const std::size_t nt = c.num_transient();
    AbsorptionStats s;
    if (nt == 0) return s;
    check_absorbable(c);
    // mu = N 1 via (I - Q) mu = 1; N mu via a second solve, no explicit inverse
    std::vector<double> ones(nt, 1.0);
    s.mean = solve(i_minus_q(c), ones);
    std::vector<double> n_mu = solve(i_minus_q(c), s.mean);
    s.variance.resize(nt);
    if (vf == VarianceFormula::Standard) {
        for (std::size_t i = 0; i < nt; ++i)
            s.variance[i] = 2.0 * n_mu[i] - s.mean[i] - s.mean[i] * s.mean[i];
    } else {
        double dot = 0.0;
        for (double m : s.mean) dot += m * m;
        for (std::size_t i = 0; i < nt; ++i) s.variance[i] = 2.0 * n_mu[i] - s.mean[i] - dot;
    }
    return s;
}

AggregateResult aggregate(const AbsorptionStats& stats, const std::vector<double>& initial,
                          AggregateFormula af) {
    const std::size_t nt = stats.mean.size();
    if (initial.size() != nt) throw std::invalid_argument("aggregate: distribution size mismatch");
    double total = 0.0;
    for (double p : initial) {
        if (p < 0.0) throw std::invalid_argument("aggregate: negative probability");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw std::invalid_argument("aggregate: distribution does not sum to 1");
    AggregateResult out{0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < nt; ++i) out.mean += initial[i] * stats.mean[i];
    for (std::size_t i = 0; i < nt; ++i) {
        out.variance += initial[i] * stats.variance[i];
        if (af == AggregateFormula::Standard) {
            double d = stats.mean[i] - out.mean;
            out.variance += initial[i] * d * d;
        }
    }
    out.stddev = std::sqrt(std::max(0.0, out.variance));
    return out;
}

ChainSampler::ChainSampler(const AbsorbingChain& c) : num_absorbing_(c.num_absorbing()) {
    const std::size_t nt = c.num_transient();
    cumulative_.resize(nt);
    for (std::size_t i = 0; i < nt; ++i) {
        auto& row = cumulative_[i];
        row.resize(num_absorbing_ + nt);
        double acc = 0.0;
        for (std::size_t a = 0; a < num_absorbing_; ++a) {
            acc += c.r(i, a);
            row[a] = acc;
        }
        for (std::size_t j = 0; j < nt; ++j) {
            acc += c.q(i, j);
            row[num_absorbing_ + j] = acc;
        }
        row.back() = 1.0;  // guard against rounding shortfall
    }
}

std::uint64_t ChainSampler::run(int start, Rng& rng, std::uint64_t step_cap) const {
    std::size_t state = static_cast<std::size_t>(start);
    if (state >= cumulative_.size()) throw std::invalid_argument("ChainSampler: start not transient");
    for (std::uint64_t t = 1; t <= step_cap; ++t) {
        const auto& row = cumulative_[state];
        double u = rng.uniform();
        std::size_t k = 0;
        while (row[k] <= u) ++k;
        if (k < num_absorbing_) return t;
        state = k - num_absorbing_;
    }
    throw std::runtime_error("simulate_chain: step cap exceeded (chain may be reducible)");
}

std::uint64_t simulate_chain(const AbsorbingChain& c, int start, Rng& rng, std::uint64_t step_cap) {
    return ChainSampler(c).run(start, rng, step_cap);
}

std::string chain_csv(const AbsorbingChain& c) {
    const std::size_t n = c.labels.size();
    // rebuild the full matrix in original state order
    Matrix p(n, n);
    for (int a : c.absorbing_states) p(a, a) = 1.0;
    for (std::size_t i = 0; i < c.num_transient(); ++i) {
        for (std::size_t j = 0; j < c.num_transient(); ++j)
            p(c.transient_states[i], c.transient_states[j]) = c.q(i, j);
        for (std::size_t j = 0; j < c.num_absorbing(); ++j)
            p(c.transient_states[i], c.absorbing_states[j]) = c.r(i, j);
    }
    std::ostringstream out;
    out << "state";
    for (const auto& l : c.labels) out << ',' << l;
    out << '\n';
    char buf[64];
    for (std::size_t i = 0; i < n; ++i) {
        out << c.labels[i];
        for (std::size_t j = 0; j < n; ++j) {
            std::snprintf(buf, sizeof buf, "%.12g", p(i, j));
            out << ',' << buf;
        }
        out << '\n';
    }
    return out.str();
}

std::string stats_csv(const AbsorbingChain& c, const AbsorptionStats& s) {
    std::ostringstream out;
    out << "state,mu,var\n";
    char buf[64];
    for (std::size_t i = 0; i < s.mean.size(); ++i) {
        out << c.labels[c.transient_states[i]];
        std::snprintf(buf, sizeof buf, ",%.12g,%.12g", s.mean[i], s.variance[i]);
        out << buf << '\n';
    }
    return out.str();
}

}  // namespace maxdeg
