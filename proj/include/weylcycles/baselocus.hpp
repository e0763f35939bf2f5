#pragma once

#include <weylcycles/cycles.hpp>

#include <map>
#include <mutex>
#include <optional>
#include <tuple>
#include <vector>

namespace weylcycles {

/// Multiplicity of containment of the Weyl plane W in the base locus of D:
/// k_W(D) = max(0, -w(c_I) . D).
inline Int k_w(const DivisorClass& D, const WeylPlane& W) {
    require_same_space(D.space, W.space);
    Int v = -intersect(D, W.curve);
    return v > 0 ? v : Int(0);
}

namespace detail {

/// Shared plane catalogs; wdim sweeps hit the same (space, r, bound) keys
/// thousands of times.
inline const PlaneCatalog& plane_catalog_cached(Space sp, int r, std::optional<Int> bound) {
    using Key = std::tuple<int, int, int, std::string>;
    static std::map<Key, PlaneCatalog> cache;
    static std::mutex mu;
    Key key{sp.n, sp.s, r, bound ? bound->str() : std::string("-")};
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, classify_weyl_planes(sp, r, bound)).first;
    return it->second;
}

}  // namespace detail

struct WeylBaseLocus {
    DivisorClass divisor;
    std::vector<std::pair<WeylPlane, Int>> components;  // multiplicity > 0 only
    Int catalog_bound;
    bool complete = false;
};

/// All Weyl r-planes (r = 1..n-1) contained in the base locus of D, with
/// their multiplicities of containment.
inline WeylBaseLocus weyl_base_locus(const DivisorClass& D,
                                     std::optional<Int> degree_bound = std::nullopt) {
    WeylBaseLocus out;
    out.divisor = D;
    out.complete = true;
    out.catalog_bound = 0;
    for (int r = 1; r <= D.space.n - 1; ++r) {
        const PlaneCatalog& cat = detail::plane_catalog_cached(D.space, r, degree_bound);
        out.complete = out.complete && cat.complete;
        if (cat.degree_bound > out.catalog_bound) out.catalog_bound = cat.degree_bound;
        for (const WeylPlane& W : cat.planes) {
            Int k = k_w(D, W);
            if (k > 0) out.components.emplace_back(W, k);
        }
    }
    return out;
}

// -- Weyl chamber signatures -------------------------------------------------------

struct ChamberSignature {
    DivisorClass divisor;
    Int catalog_bound;
    bool complete = false;
    // sign of D . w(c_I) for every catalog curve, keyed by (delta, mu)
    std::map<std::pair<Int, std::vector<Int>>, int> signs;
};

inline ChamberSignature chamber_signature(const DivisorClass& D,
                                          std::optional<Int> degree_bound = std::nullopt) {
    ChamberSignature sig;
    sig.divisor = D;
    sig.complete = true;
    sig.catalog_bound = 0;
    for (int r = 1; r <= D.space.n - 1; ++r) {
        const PlaneCatalog& cat = detail::plane_catalog_cached(D.space, r, degree_bound);
        sig.complete = sig.complete && cat.complete;
        if (cat.degree_bound > sig.catalog_bound) sig.catalog_bound = cat.degree_bound;
        for (const WeylPlane& W : cat.planes) {
            Int v = intersect(D, W.curve);
            sig.signs[{W.curve.delta, W.curve.mu}] = v > 0 ? 1 : (v < 0 ? -1 : 0);
        }
    }
    return sig;
}

/// Weyl equivalence: identical sign vectors over the catalog (zero entries
/// mean wall incidence and are compared literally; interior-vs-boundary
/// interpretation is the caller's).
inline bool same_chamber(const DivisorClass& D1, const DivisorClass& D2,
                         std::optional<Int> degree_bound = std::nullopt) {
    require_same_space(D1.space, D2.space);
    return chamber_signature(D1, degree_bound).signs ==
           chamber_signature(D2, degree_bound).signs;
}

// -- Euler characteristic and Weyl expected dimension -------------------------------

/// chi(X, O(D)) = C(n+d, n) - sum_i C(n+m_i-1, n), with polynomial binomials,
/// so classes with entries <= -n pick up the higher-cohomology sign.
inline Int euler_characteristic(const DivisorClass& D) {
    const int n = D.space.n;
    Int chi = binomial_poly(Int(n) + D.d, n);
    for (const Int& m : D.m) chi -= binomial_poly(Int(n) + m - 1, n);
    return chi;
}

struct WdimResult {
    Int wdim;          // signed Weyl virtual dimension
    Int expected;      // max(wdim, 0)
    WeylBaseLocus locus;
    bool complete = false;
};

/// wdim(D) = chi + sum over Weyl r-planes W of (-1)^{r+1} C(n + k_W(D) - r - 1, n).
inline WdimResult wdim(const DivisorClass& D, std::optional<Int> degree_bound = std::nullopt) {
    const int n = D.space.n;
    WdimResult res;
    res.locus = weyl_base_locus(D, degree_bound);
    res.complete = res.locus.complete;
    res.wdim = euler_characteristic(D);
    for (const auto& [W, k] : res.locus.components) {
        Int term = binomial(Int(n) + k - W.r - 1, n);
        res.wdim += (W.r % 2 == 0) ? -term : term;  // sign (-1)^{r+1}
    }
    res.expected = res.wdim > 0 ? res.wdim : Int(0);
    return res;
}

}  // namespace weylcycles
