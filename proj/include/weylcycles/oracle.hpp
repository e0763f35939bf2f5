#pragma once

#include <weylcycles/baselocus.hpp>

#include <cstdint>
#include <numeric>
#include <set>
#include <string>
#include <vector>

namespace weylcycles {

struct resource_limit_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Linear system of degree-d hypersurfaces of P^n with assigned multiple
/// points, evaluated by exact rank computation over F_prime at a seeded
/// pseudo-random (coordinate-simplex prefixed) point set.
struct InterpolationProblem {
    int n = 2;
    int d = 0;
    std::vector<int> multiplicities;  // m_i >= 1
    std::uint64_t seed = 1;
    std::uint64_t prime = 2147483647ull;  // 2^31 - 1
    std::size_t entry_cap = std::size_t(1) << 24;

    void validate() const {
        if (n < 1) throw std::invalid_argument("oracle: n must be >= 1");
        if (d < 0) throw std::invalid_argument("oracle: d must be >= 0");
        for (int m : multiplicities)
            if (m < 1) throw std::invalid_argument("oracle: multiplicities must be >= 1");
        if (prime <= static_cast<std::uint64_t>(d))
            throw std::invalid_argument("oracle: prime must exceed the degree");
    }
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    base %= p;
    while (exp) {
        if (exp & 1) r = r * base % p;
        base = base * base % p;
        exp >>= 1;
    }
    return r;
}

/// Monomial exponent vectors of total degree d in n+1 variables, lex order.
inline std::vector<std::vector<int>> monomials(int n, int d) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(n + 1, 0);
    auto rec = [&](auto&& self, int pos, int rem) -> void {
        if (pos == n) {
            cur[pos] = rem;
            out.push_back(cur);
            return;
        }
        for (int e = rem; e >= 0; --e) {
            cur[pos] = e;
            self(self, pos + 1, rem - e);
        }
    };
    rec(rec, 0, d);
    return out;
}

/// Seeded point set in P^n over F_p: coordinate simplex, then the all-ones
/// point, then pseudo-random points with nonzero coordinates.
inline std::vector<std::vector<std::uint64_t>> oracle_points(int n, int s, std::uint64_t seed,
                                                             std::uint64_t p) {
    std::vector<std::vector<std::uint64_t>> pts;
    std::uint64_t state = seed;
    for (int i = 0; i < s; ++i) {
        std::vector<std::uint64_t> pt(n + 1, 0);
        if (i <= n) {
            pt[i] = 1;
        } else if (i == n + 1) {
            pt.assign(n + 1, 1);
        } else {
            for (int j = 0; j <= n; ++j) pt[j] = 1 + splitmix64(state) % (p - 1);
        }
        pts.push_back(std::move(pt));
    }
    return pts;
}

inline std::size_t rank_mod_p(std::vector<std::vector<std::uint64_t>>& rows, std::uint64_t p) {
    if (rows.empty()) return 0;
    const std::size_t cols = rows[0].size();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows.size(); ++col) {
        std::size_t piv = rank;
        while (piv < rows.size() && rows[piv][col] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[rank], rows[piv]);
        std::uint64_t inv = powmod(rows[rank][col], p - 2, p);
        for (std::size_t j = col; j < cols; ++j) rows[rank][j] = rows[rank][j] * inv % p;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][col] == 0) continue;
            std::uint64_t f = rows[r][col];
            for (std::size_t j = col; j < cols; ++j)
                rows[r][j] = (rows[r][j] + (p - f) * rows[rank][j]) % p;
        }
        ++rank;
    }
    return rank;
}

inline long single_seed_dimension(const InterpolationProblem& pb, std::uint64_t seed) {
    const int n = pb.n, d = pb.d;
    const std::uint64_t p = pb.prime;
    const std::vector<std::vector<int>> mons = monomials(n, d);
    std::size_t n_conditions = 0;
    for (int m : pb.multiplicities)
        n_conditions += static_cast<std::size_t>(to_long(binomial(n + m - 1, n)));
    if (mons.size() * std::max<std::size_t>(n_conditions, 1) > pb.entry_cap)
        throw resource_limit_error("oracle: condition matrix exceeds the memory cap");

    auto pts = oracle_points(n, static_cast<int>(pb.multiplicities.size()), seed, p);

    std::vector<std::vector<std::uint64_t>> rows;
    rows.reserve(n_conditions);
    for (std::size_t i = 0; i < pb.multiplicities.size(); ++i) {
        const int m = pb.multiplicities[i];
        // powers of the point coordinates up to the degree
        std::vector<std::vector<std::uint64_t>> pw(n + 1, std::vector<std::uint64_t>(d + 1, 1));
        for (int j = 0; j <= n; ++j)
            for (int e = 1; e <= d; ++e) pw[j][e] = pw[j][e - 1] * pts[i][j] % p;
        // all partial derivatives of order m-1 vanish
        for (const auto& alpha : monomials(n, m - 1)) {
            std::vector<std::uint64_t> row(mons.size(), 0);
            for (std::size_t c = 0; c < mons.size(); ++c) {
                const auto& beta = mons[c];
                std::uint64_t v = 1;
                bool nonzero = true;
                for (int j = 0; j <= n && nonzero; ++j) {
                    if (beta[j] < alpha[j]) {
                        nonzero = false;
                        break;
                    }
                    for (int f = 0; f < alpha[j]; ++f) v = v * ((beta[j] - f) % p) % p;
                    v = v * pw[j][beta[j] - alpha[j]] % p;
                }
                row[c] = nonzero ? v : 0;
            }
            rows.push_back(std::move(row));
        }
    }
    std::size_t rank = rank_mod_p(rows, p);
    return static_cast<long>(mons.size() - rank);
}

}  // namespace detail

struct OracleResult {
    long dimension = 0;  // affine dimension h^0
    bool unstable = false;
    long dim_seed_a = 0;
    long dim_seed_b = 0;
};

/// Dimension of the system, computed twice with independent seeds; on
/// disagreement the larger value is reported with the instability flag set.
inline OracleResult system_dimension(const InterpolationProblem& pb) {
    pb.validate();
    OracleResult res;
    res.dim_seed_a = detail::single_seed_dimension(pb, pb.seed);
    res.dim_seed_b = detail::single_seed_dimension(pb, pb.seed ^ 0x9E3779B97F4A7C15ull);
    res.dimension = std::max(res.dim_seed_a, res.dim_seed_b);
    res.unstable = res.dim_seed_a != res.dim_seed_b;
    return res;
}

struct DimensionRow {
    int d = 0;
    std::vector<int> multiplicities;  // nondecreasing representative
    long oracle_dim = 0;
    bool unstable = false;
    Int wdim_value;
    Int wdim_expected;
    bool match = false;
};

struct DimensionTable {
    Space space;
    std::uint64_t seed = 0;
    std::uint64_t prime = 0;
    std::vector<DimensionRow> rows;
    std::size_t mismatches = 0;
};

/// Batch oracle-vs-wdim comparison over all degrees d <= d_max and all
/// multiplicity multisets with entries in 1..m_max (one representative per
/// permutation class; both sides are symmetric in the points).
inline DimensionTable dimension_table(Space sp, int d_max, int m_max, std::uint64_t seed,
                                      std::optional<Int> degree_bound = std::nullopt) {
    DimensionTable table;
    table.space = sp;
    table.seed = seed;
    InterpolationProblem proto;
    proto.n = sp.n;
    proto.seed = seed;
    table.prime = proto.prime;

    std::vector<std::vector<int>> msets;
    std::vector<int> cur(sp.s);
    auto rec = [&](auto&& self, int pos, int lo) -> void {
        if (pos == sp.s) {
            msets.push_back(cur);
            return;
        }
        for (int v = lo; v <= m_max; ++v) {
            cur[pos] = v;
            self(self, pos + 1, v);
        }
    };
    if (sp.s == 0)
        msets.push_back({});
    else
        rec(rec, 0, 1);

    for (int d = 1; d <= d_max; ++d) {
        for (const auto& m : msets) {
            DimensionRow row;
            row.d = d;
            row.multiplicities = m;
            InterpolationProblem pb = proto;
            pb.d = d;
            pb.multiplicities = m;
            OracleResult oc = system_dimension(pb);
            row.oracle_dim = oc.dimension;
            row.unstable = oc.unstable;
            std::vector<Int> mm(m.begin(), m.end());
            WdimResult w = wdim(DivisorClass(sp, d, mm), degree_bound);
            row.wdim_value = w.wdim;
            row.wdim_expected = w.expected;
            row.match = Int(row.oracle_dim) == row.wdim_expected;
            if (!row.match) ++table.mismatches;
            table.rows.push_back(std::move(row));
        }
    }
    return table;
}

}  // namespace weylcycles
