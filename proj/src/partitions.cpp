#include "schurtele/partitions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

namespace schurtele {

namespace {

using BigInt = boost::multiprecision::cpp_int;

std::uint64_t narrow(const BigInt& value, const char* what) {
    if (value < 0 || value > BigInt(std::numeric_limits<std::uint64_t>::max())) {
        throw OverflowError(std::string(what) + " does not fit in 64 bits");
    }
    return value.convert_to<std::uint64_t>();
}

BigInt factorial(int k) {
    BigInt r = 1;
    for (int i = 2; i <= k; ++i) r *= i;
    return r;
}

// l_i = λ_i + d − i with 1-based i.
std::vector<int> shifted_parts(const Partition& lambda) {
    const int d = lambda.d();
    std::vector<int> l(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) l[static_cast<std::size_t>(i)] = lambda[i] + d - (i + 1);
    return l;
}

BigInt vandermonde(const std::vector<int>& l) {
    BigInt r = 1;
    for (std::size_t i = 0; i < l.size(); ++i)
        for (std::size_t j = i + 1; j < l.size(); ++j) r *= (l[i] - l[j]);
    return r;
}

void enumerate_rec(int remaining, int max_part, int slots, std::vector<int>& prefix,
                   std::vector<Partition>& out, int d) {
    if (remaining == 0) {
        out.emplace_back(prefix, d);
        return;
    }
    if (slots == 0) return;
    for (int part = std::min(remaining, max_part); part >= 1; --part) {
        prefix.push_back(part);
        enumerate_rec(remaining - part, part, slots - 1, prefix, out, d);
        prefix.pop_back();
    }
}

// Murnaghan–Nakayama on beta-sets. `beads` is sorted ascending.
struct MnSolver {
    const std::vector<int>& cycles;
    std::map<std::pair<std::vector<int>, std::size_t>, std::int64_t> memo;

    std::int64_t eval(const std::vector<int>& beads, std::size_t k) {
        if (k == cycles.size()) return 1;
        auto key = std::make_pair(beads, k);
        if (auto it = memo.find(key); it != memo.end()) return it->second;

        const int r = cycles[k];
        std::int64_t total = 0;
        for (std::size_t i = 0; i < beads.size(); ++i) {
            const int from = beads[i];
            const int to = from - r;
            if (to < 0 || std::binary_search(beads.begin(), beads.end(), to)) continue;
            int between = 0;
            for (int b : beads)
                if (b > to && b < from) ++between;
            std::vector<int> next = beads;
            next[i] = to;
            std::sort(next.begin(), next.end());
            const std::int64_t sub = eval(next, k + 1);
            total += (between % 2 == 0) ? sub : -sub;
        }
        memo.emplace(std::move(key), total);
        return total;
    }
};

std::vector<int> beta_set(const Partition& lambda) {
    const int m = lambda.length();
    std::vector<int> beads(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) beads[static_cast<std::size_t>(i)] = lambda[i] + (m - 1 - i);
    std::sort(beads.begin(), beads.end());
    return beads;
}

std::vector<int> nonzero_cycles(const Partition& mu) {
    std::vector<int> cycles;
    for (int c : mu.parts())
        if (c > 0) cycles.push_back(c);
    return cycles;
}

// Sum over Gelfand–Tsetlin patterns below `row`; `level` variables remain.
double gt_sum(const std::vector<int>& row, std::span<const double> x) {
    const std::size_t level = row.size();
    const int row_sum = std::accumulate(row.begin(), row.end(), 0);
    if (level == 1) return std::pow(x[0], row_sum);

    std::vector<int> next(level - 1);
    double total = 0.0;
    // Interlacing: row[i] ≥ next[i] ≥ row[i+1].
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == next.size()) {
            const int next_sum = std::accumulate(next.begin(), next.end(), 0);
            const double w = std::pow(x[level - 1], row_sum - next_sum);
            if (w != 0.0) total += w * gt_sum(next, x);
            return;
        }
        for (int v = row[i + 1]; v <= row[i]; ++v) {
            next[i] = v;
            self(self, i + 1);
        }
    };
    rec(rec, 0);
    return total;
}

std::vector<double> complete_homogeneous(std::span<const double> x, int max_degree) {
    std::vector<double> h(static_cast<std::size_t>(max_degree + 1), 0.0);
    h[0] = 1.0;
    for (double xi : x)
        for (int k = 1; k <= max_degree; ++k)
            h[static_cast<std::size_t>(k)] += xi * h[static_cast<std::size_t>(k - 1)];
    return h;
}

}  // namespace

Partition::Partition(std::vector<int> parts, int d) : parts_(std::move(parts)) {
    if (d < 1) throw std::invalid_argument("Partition: d must be positive");
    while (static_cast<int>(parts_.size()) > d && !parts_.empty() && parts_.back() == 0) parts_.pop_back();
    if (static_cast<int>(parts_.size()) > d)
        throw std::invalid_argument("Partition: more than d nonzero parts");
    parts_.resize(static_cast<std::size_t>(d), 0);
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i] < 0) throw std::invalid_argument("Partition: negative part");
        if (i > 0 && parts_[i] > parts_[i - 1])
            throw std::invalid_argument("Partition: parts must be non-increasing");
    }
    n_ = std::accumulate(parts_.begin(), parts_.end(), 0);
    if (n_ < 1) throw std::invalid_argument("Partition: n must be positive");
}

Partition::Partition(std::vector<int> parts) : Partition(parts, static_cast<int>(parts.size())) {}

int Partition::length() const {
    return static_cast<int>(std::count_if(parts_.begin(), parts_.end(), [](int p) { return p > 0; }));
}

std::vector<double> Partition::normalized() const {
    std::vector<double> q(parts_.size());
    for (std::size_t i = 0; i < parts_.size(); ++i) q[i] = static_cast<double>(parts_[i]) / n_;
    return q;
}

std::string Partition::to_string() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < parts_.size(); ++i) os << (i ? "," : "") << parts_[i];
    os << ')';
    return os.str();
}

std::vector<Partition> enumerate_partitions(int n, int d) {
    if (n < 1 || d < 1) throw std::invalid_argument("enumerate_partitions: n and d must be positive");
    std::vector<Partition> out;
    std::vector<int> prefix;
    enumerate_rec(n, n, d, prefix, out, d);
    return out;
}

std::uint64_t dim_u(const Partition& lambda) {
    const int d = lambda.d();
    BigInt denom = 1;
    for (int i = 1; i <= d - 1; ++i) denom *= factorial(d - i);
    return narrow(vandermonde(shifted_parts(lambda)) / denom, "dim_u");
}

std::uint64_t dim_v(const Partition& lambda) {
    const auto l = shifted_parts(lambda);
    BigInt denom = 1;
    for (int li : l) denom *= factorial(li);
    return narrow(factorial(lambda.n()) * vandermonde(l) / denom, "dim_v");
}

std::uint64_t hook_length_count(const Partition& lambda) {
    BigInt hooks = 1;
    const int rows = lambda.length();
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < lambda[i]; ++j) {
            int below = 0;
            for (int k = i + 1; k < rows && lambda[k] > j; ++k) ++below;
            hooks *= (lambda[i] - j - 1) + below + 1;
        }
    }
    return narrow(factorial(lambda.n()) / hooks, "hook_length_count");
}

std::uint64_t class_size(const Partition& cycle_type) {
    std::map<int, int> multiplicity;
    for (int c : cycle_type.parts())
        if (c > 0) ++multiplicity[c];
    BigInt denom = 1;
    for (auto [len, m] : multiplicity) {
        for (int i = 0; i < m; ++i) denom *= len;
        denom *= factorial(m);
    }
    return narrow(factorial(cycle_type.n()) / denom, "class_size");
}

std::int64_t character(const Partition& lambda, const Partition& mu) {
    if (lambda.n() != mu.n()) throw std::invalid_argument("character: λ and μ must partition the same n");
    const auto cycles = nonzero_cycles(mu);
    MnSolver solver{cycles, {}};
    return solver.eval(beta_set(lambda), 0);
}

std::vector<std::vector<std::int64_t>> character_table(int n) {
    const auto parts = enumerate_partitions(n, n);
    std::vector<std::vector<std::int64_t>> table(parts.size(), std::vector<std::int64_t>(parts.size()));
    for (std::size_t c = 0; c < parts.size(); ++c) {
        const auto cycles = nonzero_cycles(parts[c]);
        MnSolver solver{cycles, {}};
        for (std::size_t r = 0; r < parts.size(); ++r) table[r][c] = solver.eval(beta_set(parts[r]), 0);
    }
    return table;
}

ProbabilityVector::ProbabilityVector(std::vector<double> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) throw std::invalid_argument("ProbabilityVector: empty");
    double sum = 0.0;
    for (double e : entries_) {
        if (!(e >= 0.0 && e <= 1.0)) throw std::invalid_argument("ProbabilityVector: entry outside [0,1]");
        sum += e;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw std::invalid_argument("ProbabilityVector: entries must sum to 1");
    std::sort(entries_.begin(), entries_.end(), std::greater<>());
}

double schur_polynomial_tableaux(const Partition& lambda, std::span<const double> x) {
    if (static_cast<int>(x.size()) != lambda.d())
        throw std::invalid_argument("schur_polynomial: argument count must equal λ.d()");
    return gt_sum(lambda.parts(), x);
}

double schur_polynomial_jacobi_trudi(const Partition& lambda, std::span<const double> x) {
    if (static_cast<int>(x.size()) != lambda.d())
        throw std::invalid_argument("schur_polynomial: argument count must equal λ.d()");
    const int rows = lambda.length();
    const auto h = complete_homogeneous(x, lambda[0] + rows);
    Eigen::MatrixXd m(rows, rows);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < rows; ++j) {
            const int k = lambda[i] - i + j;
            m(i, j) = (k < 0) ? 0.0 : h[static_cast<std::size_t>(k)];
        }
    }
    return m.fullPivLu().determinant();
}

double schur_polynomial(const Partition& lambda, const ProbabilityVector& p) {
    if (p.size() != lambda.d()) throw std::invalid_argument("schur_polynomial: p must have λ.d() entries");
    if (lambda.d() <= 3 && lambda.n() <= 14) return schur_polynomial_tableaux(lambda, p.entries());
    return schur_polynomial_jacobi_trudi(lambda, p.entries());
}

double shannon_entropy(std::span<const double> q) {
    double h = 0.0;
    for (double v : q)
        if (v > 0.0) h -= v * std::log(v);
    return h;
}

double relative_entropy(std::span<const double> q, std::span<const double> p) {
    if (q.size() != p.size()) throw std::invalid_argument("relative_entropy: size mismatch");
    double r = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (q[i] <= 0.0) continue;
        if (p[i] <= 0.0) return std::numeric_limits<double>::infinity();
        r += q[i] * std::log(q[i] / p[i]);
    }
    return r;
}

BoundCheck entropy_bound_check(const Partition& lambda) {
    const double n = lambda.n();
    const double d = lambda.d();
    const auto q = lambda.normalized();
    BoundCheck out;
    out.lhs = std::abs(std::log(static_cast<double>(dim_v(lambda))) / n - shannon_entropy(q));
    out.rhs = (d * d + 2.0 * d) / (2.0 * n) * std::log(n + d);
    out.holds = out.lhs <= out.rhs;
    return out;
}

BoundCheck dimension_rate_check(const Partition& lambda) {
    const double d = lambda.d();
    BoundCheck out;
    out.lhs = std::log(static_cast<double>(dim_u(lambda)));
    out.rhs = d * d * std::log(static_cast<double>(lambda.n()));
    out.holds = out.lhs <= out.rhs;
    return out;
}

BoundCheck large_deviation_bound(const ProbabilityVector& p, const NormalizedRegion& region, int n) {
    const int d = p.size();
    double lhs = 0.0;
    double min_div = std::numeric_limits<double>::infinity();
    for (const auto& lambda : enumerate_partitions(n, d)) {
        const auto q = lambda.normalized();
        if (!region(q)) continue;
        lhs += static_cast<double>(dim_v(lambda)) * schur_polynomial(lambda, p);
        min_div = std::min(min_div, relative_entropy(q, p.entries()));
    }
    BoundCheck out;
    out.lhs = lhs;
    const double poly = std::pow(n + 1.0, d * (d + 1) / 2.0);
    out.rhs = std::isinf(min_div) ? 0.0 : poly * std::exp(-n * min_div);
    // An empty realized region leaves both sides at zero.
    out.holds = out.lhs <= out.rhs;
    return out;
}

}  // namespace schurtele
