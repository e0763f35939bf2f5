#pragma once

#include <weylcycles/lattice.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <utility>

namespace weylcycles {

/// A Weyl-group move encoded as a sorted index list (1-based):
///  - size n+1: standard Cremona transformation Cr_Gamma,
///  - size 2:   transposition of two point indices.
using Move = std::vector<int>;

struct WeylWord {
    std::vector<Move> moves;

    bool empty() const { return moves.empty(); }
    std::size_t size() const { return moves.size(); }
};

namespace detail {

inline void validate_move(const Space& sp, const Move& mv) {
    sp.require_weyl_action();
    if (mv.size() != static_cast<std::size_t>(sp.n + 1) && mv.size() != 2)
        throw std::invalid_argument("move must have n+1 indices (Cremona) or 2 (transposition)");
    for (std::size_t i = 0; i < mv.size(); ++i) {
        if (mv[i] < 1 || mv[i] > sp.s) throw std::invalid_argument("move index out of range");
        if (i > 0 && mv[i] <= mv[i - 1])
            throw std::invalid_argument("move indices must be strictly increasing");
    }
}

}  // namespace detail

inline Move cremona_index_set(const Space& sp, std::vector<int> idx) {
    std::sort(idx.begin(), idx.end());
    if (idx.size() != static_cast<std::size_t>(sp.n + 1))
        throw std::invalid_argument("Cremona index set must have n+1 indices");
    detail::validate_move(sp, idx);
    return idx;
}

// -- Cremona action ------------------------------------------------------------

/// Cr_Gamma(D) = (d-b)H - sum_{i in Gamma}(m_i-b)E_i - sum_{i notin Gamma} m_i E_i,
/// with b = sum_{i in Gamma} m_i - (n-1)d. Returns the image and b.
inline std::pair<DivisorClass, Int> cremona_divisor(const DivisorClass& D, const Move& gamma) {
    detail::validate_move(D.space, gamma);
    if (gamma.size() != static_cast<std::size_t>(D.space.n + 1))
        throw std::invalid_argument("cremona_divisor: index set must have n+1 indices");
    Int b = -Int(D.space.n - 1) * D.d;
    for (int i : gamma) b += D.m[i - 1];
    DivisorClass r = D;
    r.d -= b;
    for (int i : gamma) r.m[i - 1] -= b;
    return {std::move(r), b};
}

/// Cr_Gamma(c) = (delta-(n-1)a)h - sum_{i in Gamma}(mu_i-a)e_i - sum_{i notin Gamma} mu_i e_i,
/// with a = sum_{i in Gamma} mu_i - delta. Returns the image and a.
inline std::pair<CurveClass, Int> cremona_curve(const CurveClass& c, const Move& gamma) {
    detail::validate_move(c.space, gamma);
    if (gamma.size() != static_cast<std::size_t>(c.space.n + 1))
        throw std::invalid_argument("cremona_curve: index set must have n+1 indices");
    Int a = -c.delta;
    for (int i : gamma) a += c.mu[i - 1];
    CurveClass r = c;
    r.delta -= Int(c.space.n - 1) * a;
    for (int i : gamma) r.mu[i - 1] -= a;
    return {std::move(r), a};
}

inline DivisorClass apply_move(const DivisorClass& D, const Move& mv) {
    if (mv.size() == 2) {
        detail::validate_move(D.space, mv);
        DivisorClass r = D;
        std::swap(r.m[mv[0] - 1], r.m[mv[1] - 1]);
        return r;
    }
    return cremona_divisor(D, mv).first;
}

inline CurveClass apply_move(const CurveClass& c, const Move& mv) {
    if (mv.size() == 2) {
        detail::validate_move(c.space, mv);
        CurveClass r = c;
        std::swap(r.mu[mv[0] - 1], r.mu[mv[1] - 1]);
        return r;
    }
    return cremona_curve(c, mv).first;
}

template <class ClassT>
inline ClassT apply_word(const ClassT& x, const WeylWord& w) {
    ClassT r = x;
    for (const Move& mv : w.moves) r = apply_move(r, mv);
    return r;
}

/// Test hook: the intersection number is preserved along any word.
inline bool pairing_preserved_check(const DivisorClass& D, const CurveClass& c,
                                    const WeylWord& w) {
    return intersect(apply_word(D, w), apply_word(c, w)) == intersect(D, c);
}

/// Test hook: the Dolgachev-Mukai pairing is preserved along any word.
inline bool pairing_preserved_check(const DivisorClass& D1, const DivisorClass& D2,
                                    const WeylWord& w) {
    return dm_pairing(apply_word(D1, w), apply_word(D2, w)) == dm_pairing(D1, D2);
}

// -- Cremona reduction ----------------------------------------------------------

struct ReduceResult {
    DivisorClass divisor;
    WeylWord word;
    bool reduced = false;  // all b_Gamma <= 0 reached within the step budget
    int steps = 0;
};

namespace detail {

template <class Visit>
inline void for_each_subset(int s, int k, Visit&& visit) {
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i + 1;
    while (true) {
        visit(const_cast<const std::vector<int>&>(idx));
        int pos = k - 1;
        while (pos >= 0 && idx[pos] == s - (k - 1 - pos)) --pos;
        if (pos < 0) break;
        ++idx[pos];
        for (int j = pos + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace detail

inline Int b_gamma(const DivisorClass& D, const Move& gamma) {
    Int b = -Int(D.space.n - 1) * D.d;
    for (int i : gamma) b += D.m[i - 1];
    return b;
}

/// Repeatedly applies the Cremona move with the largest positive b_Gamma
/// (ties broken by lexicographically smallest Gamma) until the class is
/// Cremona reduced or the step budget runs out.
inline ReduceResult cremona_reduce(const DivisorClass& D, int max_steps) {
    if (max_steps < 0) throw std::invalid_argument("cremona_reduce: max_steps must be >= 0");
    D.space.require_weyl_action();
    ReduceResult res{D, {}, false, 0};
    while (true) {
        Int best_b = 0;
        std::optional<Move> best;
        detail::for_each_subset(D.space.s, D.space.n + 1, [&](const std::vector<int>& g) {
            Int b = b_gamma(res.divisor, g);
            if (b > best_b) {
                best_b = b;
                best = g;
            }
        });
        if (!best) {
            res.reduced = true;
            return res;
        }
        if (res.steps == max_steps) return res;  // budget exhausted, not reduced
        res.divisor = cremona_divisor(res.divisor, *best).first;
        res.word.moves.push_back(*best);
        ++res.steps;
    }
}

// -- effectivity filter ----------------------------------------------------------

enum class Effectivity { effective_candidate, non_effective, indeterminate };

/// Conservative sign test for effectivity of a 1-cycle class: positive degree
/// is admitted, negative degree rejected, and degree 0 is effective exactly
/// when the class is a nonnegative combination of the e_i (all mu_i <= 0,
/// not all zero). The zero class is rejected by convention.
inline Effectivity curve_effectivity_filter(const CurveClass& c) {
    if (c.delta < 0) return Effectivity::non_effective;
    if (c.delta > 0) return Effectivity::effective_candidate;
    bool all_nonpos = true, all_zero = true;
    for (const Int& mu : c.mu) {
        if (mu > 0) all_nonpos = false;
        if (mu != 0) all_zero = false;
    }
    if (all_zero) return Effectivity::non_effective;
    return all_nonpos ? Effectivity::effective_candidate : Effectivity::non_effective;
}

// -- effective Weyl orbits --------------------------------------------------------

enum class ClassKind { divisor, curve };

enum class MoveSet {
    cremona,                   // standard Cremona transformations only
    cremona_and_permutations,  // plus transpositions of point indices
};

inline const char* to_string(MoveSet m) {
    return m == MoveSet::cremona ? "cremona" : "cremona+perm";
}

/// One orbit element plus the move that produced it (parent = -1 for the seed).
struct OrbitElement {
    Int degree;
    std::vector<Int> coeffs;
    int parent = -1;
    Move via;
};

struct OrbitCatalog {
    static constexpr const char* filter_version = "delta-sign-v1";

    Space space;
    ClassKind kind = ClassKind::curve;
    Int seed_degree;
    std::vector<Int> seed_coeffs;
    Int degree_bound;
    MoveSet moves = MoveSet::cremona_and_permutations;
    bool complete = false;
    std::size_t boundary_count = 0;          // children rejected by the filter
    std::vector<OrbitElement> elements;      // sorted by (degree, lex coeffs)
    std::vector<WeylWord> explicit_witnesses;  // set when loaded from a cache file

    std::size_t size() const { return elements.size(); }

    std::optional<std::size_t> find(const Int& degree, const std::vector<Int>& coeffs) const {
        auto key = std::pair<const Int&, const std::vector<Int>&>(degree, coeffs);
        auto it = std::lower_bound(elements.begin(), elements.end(), key,
                                   [](const OrbitElement& e, const auto& k) {
                                       if (e.degree != k.first) return e.degree < k.first;
                                       return e.coeffs < k.second;
                                   });
        if (it == elements.end() || it->degree != degree || it->coeffs != coeffs)
            return std::nullopt;
        return static_cast<std::size_t>(it - elements.begin());
    }

    bool contains(const CurveClass& c) const {
        return kind == ClassKind::curve && find(c.delta, c.mu).has_value();
    }
    bool contains(const DivisorClass& D) const {
        return kind == ClassKind::divisor && find(D.d, D.m).has_value();
    }

    /// Reconstructs the witness word (seed -> element) from the parent links.
    WeylWord witness(std::size_t index) const {
        if (!explicit_witnesses.empty()) return explicit_witnesses.at(index);
        WeylWord w;
        int cur = static_cast<int>(index);
        while (cur >= 0 && elements[cur].parent != cur) {
            if (elements[cur].parent < 0) break;
            w.moves.push_back(elements[cur].via);
            cur = elements[cur].parent;
        }
        std::reverse(w.moves.begin(), w.moves.end());
        return w;
    }

    CurveClass curve_at(std::size_t index) const {
        if (kind != ClassKind::curve) throw std::logic_error("catalog holds divisor classes");
        return CurveClass(space, elements[index].degree, elements[index].coeffs);
    }
    DivisorClass divisor_at(std::size_t index) const {
        if (kind != ClassKind::divisor) throw std::logic_error("catalog holds curve classes");
        return DivisorClass(space, elements[index].degree, elements[index].coeffs);
    }
};

namespace detail {

struct OrbitSeed {
    Space space;
    ClassKind kind;
    Int degree;
    std::vector<Int> coeffs;
};

inline OrbitCatalog orbit_bfs(const OrbitSeed& seed, std::optional<Int> degree_bound,
                              MoveSet moves) {
    const Space sp = seed.space;
    sp.require_weyl_action();

    bool mds = is_mori_dream(sp).is_mds;
    bool default_bound = !degree_bound.has_value();
    if (default_bound) {
        if (!mds)
            throw std::invalid_argument(
                "effective_orbit: a degree bound is mandatory on non-Mori-dream spaces");
        degree_bound = 10 * (seed.degree + sp.n);
    }
    if (*degree_bound < seed.degree)
        throw std::invalid_argument("effective_orbit: degree bound below the seed degree");

    auto admissible = [&](const Int& deg, const std::vector<Int>& coeffs) {
        if (seed.kind == ClassKind::divisor) return deg >= 0;
        return curve_effectivity_filter(CurveClass(sp, deg, coeffs)) ==
               Effectivity::effective_candidate;
    };
    if (!admissible(seed.degree, seed.coeffs))
        throw std::invalid_argument("effective_orbit: seed fails the effectivity filter");

    std::vector<Move> all_moves;
    for_each_subset(sp.s, sp.n + 1, [&](const std::vector<int>& g) { all_moves.push_back(g); });
    if (moves == MoveSet::cremona_and_permutations)
        for_each_subset(sp.s, 2, [&](const std::vector<int>& g) { all_moves.push_back(g); });

    OrbitCatalog cat;
    cat.space = sp;
    cat.kind = seed.kind;
    cat.seed_degree = seed.degree;
    cat.seed_coeffs = seed.coeffs;
    cat.degree_bound = *degree_bound;
    cat.moves = moves;
    cat.complete = true;

    // Full vectors (degree first) keyed for dedup; the frontier is processed in
    // (degree, lex) order so witness words are deterministic.
    std::map<std::vector<Int>, int> index_of;
    std::vector<OrbitElement> store;
    std::set<std::vector<Int>> frontier;

    auto full_vec = [&](const Int& deg, const std::vector<Int>& coeffs) {
        std::vector<Int> v;
        v.reserve(coeffs.size() + 1);
        v.push_back(deg);
        v.insert(v.end(), coeffs.begin(), coeffs.end());
        return v;
    };

    std::vector<Int> seed_vec = full_vec(seed.degree, seed.coeffs);
    index_of[seed_vec] = 0;
    store.push_back(OrbitElement{seed.degree, seed.coeffs, -1, {}});
    frontier.insert(seed_vec);

    while (!frontier.empty()) {
        std::vector<Int> cur = *frontier.begin();
        frontier.erase(frontier.begin());
        int cur_idx = index_of.at(cur);
        Int cur_deg = cur[0];
        std::vector<Int> cur_coeffs(cur.begin() + 1, cur.end());

        for (const Move& mv : all_moves) {
            Int deg;
            std::vector<Int> coeffs;
            if (seed.kind == ClassKind::divisor) {
                DivisorClass img = apply_move(DivisorClass(sp, cur_deg, cur_coeffs), mv);
                deg = img.d;
                coeffs = img.m;
            } else {
                CurveClass img = apply_move(CurveClass(sp, cur_deg, cur_coeffs), mv);
                deg = img.delta;
                coeffs = img.mu;
            }
            if (!admissible(deg, coeffs)) {
                ++cat.boundary_count;
                continue;
            }
            std::vector<Int> key = full_vec(deg, coeffs);
            if (index_of.count(key)) continue;
            if (deg > *degree_bound) {
                cat.complete = false;
                continue;
            }
            int idx = static_cast<int>(store.size());
            index_of[key] = idx;
            store.push_back(OrbitElement{deg, coeffs, cur_idx, mv});
            frontier.insert(std::move(key));
        }
    }

    if (default_bound && !cat.complete)
        throw std::logic_error(
            "effective_orbit: default degree bound hit on a Mori dream space "
            "(finiteness violated; implementation bug)");

    // Sort elements by (degree, lex) and remap the parent links.
    std::vector<int> order(store.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (store[a].degree != store[b].degree) return store[a].degree < store[b].degree;
        return store[a].coeffs < store[b].coeffs;
    });
    std::vector<int> rank(store.size());
    for (std::size_t pos = 0; pos < order.size(); ++pos) rank[order[pos]] = static_cast<int>(pos);
    cat.elements.reserve(store.size());
    for (int src : order) {
        OrbitElement e = store[src];
        if (e.parent >= 0) e.parent = rank[e.parent];
        cat.elements.push_back(std::move(e));
    }
    return cat;
}

}  // namespace detail

inline OrbitCatalog effective_orbit(const CurveClass& seed,
                                    std::optional<Int> degree_bound = std::nullopt,
                                    MoveSet moves = MoveSet::cremona_and_permutations) {
    return detail::orbit_bfs({seed.space, ClassKind::curve, seed.delta, seed.mu}, degree_bound,
                             moves);
}

inline OrbitCatalog effective_orbit(const DivisorClass& seed,
                                    std::optional<Int> degree_bound = std::nullopt,
                                    MoveSet moves = MoveSet::cremona_and_permutations) {
    return detail::orbit_bfs({seed.space, ClassKind::divisor, seed.d, seed.m}, degree_bound,
                             moves);
}

// -- degree-increasing recursion certificate ---------------------------------------

struct RecursionCertificate {
    bool available = false;   // (n,s) outside the covered families
    bool satisfies = false;
    std::string case_tag;     // "s=n+4" or "s=n+5", with "strict"/"equality" branch
    CurveClass sorted;        // multiplicities sorted nondecreasing
    Move witness;             // Gamma = {1..n+1} on the sorted class
};

/// Checks the degree-increasing recursion hypothesis on the sorted class.
/// Covered: s = n+4 with n >= 5, and s = n+5 with n in {3,4}.
inline RecursionCertificate recursion_certificate(const CurveClass& c) {
    const int n = c.space.n, s = c.space.s;
    RecursionCertificate res;
    res.sorted = c;
    std::sort(res.sorted.mu.begin(), res.sorted.mu.end());
    const auto& m = res.sorted.mu;
    const Int& d = res.sorted.delta;

    bool case1 = (s == n + 4 && n >= 5);
    bool case2 = (s == n + 5 && (n == 3 || n == 4));
    if (!case1 && !case2) return res;
    res.available = true;
    for (int i = 1; i <= n + 1; ++i) res.witness.push_back(i);

    bool domain_ok = d > 0;
    for (const Int& mi : m)
        if (mi < 0) domain_ok = false;

    Int bound;
    if (case1) {
        // I = {1..s} minus {1, k, l} with k = 4, l = n+2.
        bound = 0;
        for (int i = 1; i <= s; ++i)
            if (i != 1 && i != 4 && i != n + 2) bound += m[i - 1];
        res.case_tag = "s=n+4";
    } else {
        bound = m[2] + m[3];
        for (int i = 7; i <= s; ++i) bound += m[i - 1];
        res.case_tag = "s=n+5";
    }
    if (!domain_ok) {
        res.case_tag += " (outside domain)";
        return res;
    }
    if (d > bound) {
        res.satisfies = true;
        res.case_tag += " strict";
    } else if (d == bound && m[s - 1] > m[0]) {
        res.satisfies = true;
        res.case_tag += " equality";
    }
    return res;
}

struct InfinitudeRun {
    bool ok = false;                 // every step re-satisfied with strictly larger degree
    std::vector<Int> degrees;        // degree after each step (including the start)
    CurveClass final_class;
    std::string failure;
};

/// Iterates the witness move of the recursion certificate. Each step must
/// re-satisfy the hypothesis with strictly increasing degree; this certifies
/// the infinitude of the effective Weyl orbit.
inline InfinitudeRun certify_infinite(const CurveClass& c, int steps) {
    InfinitudeRun run;
    CurveClass cur = c;
    RecursionCertificate cert = recursion_certificate(cur);
    if (!cert.available) {
        run.failure = "recursion certificate unavailable for this (n,s)";
        return run;
    }
    run.degrees.push_back(cert.sorted.delta);
    for (int i = 0; i < steps; ++i) {
        if (!cert.satisfies) {
            run.failure = "hypothesis fails at step " + std::to_string(i);
            return run;
        }
        CurveClass next = cremona_curve(cert.sorted, cert.witness).first;
        if (next.delta <= cert.sorted.delta) {
            run.failure = "degree did not increase at step " + std::to_string(i);
            return run;
        }
        run.degrees.push_back(next.delta);
        cur = next;
        cert = recursion_certificate(cur);
    }
    run.ok = cert.satisfies;
    if (!run.ok) run.failure = "hypothesis fails after the final step";
    run.final_class = cert.sorted;
    return run;
}

}  // namespace weylcycles
