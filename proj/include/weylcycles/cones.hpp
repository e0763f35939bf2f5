#pragma once

#include <weylcycles/cycles.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace weylcycles {

using Rational = boost::multiprecision::cpp_rational;

/// Finitely generated cone of integer vectors. Generators are kept primitive,
/// deduplicated and sorted; a pair {v,-v} encodes a lineality direction.
struct RationalCone {
    int ambient_dim = 0;
    std::vector<std::vector<Int>> generators;
};

inline RationalCone make_cone(int ambient_dim, std::vector<std::vector<Int>> gens) {
    RationalCone C;
    C.ambient_dim = ambient_dim;
    std::set<std::vector<Int>> seen;
    for (auto& g : gens) {
        if (static_cast<int>(g.size()) != ambient_dim)
            throw std::invalid_argument("make_cone: generator has wrong dimension");
        std::vector<Int> p = make_primitive(std::move(g));
        bool zero = std::all_of(p.begin(), p.end(), [](const Int& x) { return x == 0; });
        if (zero) continue;
        if (seen.insert(p).second) C.generators.push_back(std::move(p));
    }
    std::sort(C.generators.begin(), C.generators.end());
    return C;
}

namespace detail {

/// Rank of an integer matrix by fraction-free Gaussian elimination.
inline int int_rank(std::vector<std::vector<Int>> rows) {
    if (rows.empty()) return 0;
    const std::size_t cols = rows[0].size();
    int rank = 0;
    std::size_t col = 0;
    for (std::size_t r = 0; r < rows.size() && col < cols; ++col) {
        std::size_t piv = r;
        while (piv < rows.size() && rows[piv][col] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[r], rows[piv]);
        for (std::size_t k = r + 1; k < rows.size(); ++k) {
            if (rows[k][col] == 0) continue;
            Int f1 = rows[r][col], f2 = rows[k][col];
            Int g = boost::multiprecision::gcd(f1, f2);
            Int a = f1 / g, b = f2 / g;
            for (std::size_t j = col; j < cols; ++j) rows[k][j] = a * rows[k][j] - b * rows[r][j];
        }
        ++r;
        ++rank;
    }
    return rank;
}

/// Exact feasibility of { lambda >= 0 : G^T lambda = v } by phase-1 simplex
/// (Bland's rule). Columns of the tableau are the generators.
inline bool in_cone_span(const std::vector<std::vector<Int>>& gens, const std::vector<Int>& v) {
    const std::size_t m = v.size();
    bool v_zero = std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
    if (v_zero) return true;
    if (gens.empty()) return false;
    const std::size_t n = gens.size();

    // rows: m equations; columns: n generator variables + m artificials; rhs.
    // Flip rows so every rhs is nonnegative and start from the artificial basis.
    std::vector<std::vector<Rational>> T(m, std::vector<Rational>(n + m + 1, 0));
    for (std::size_t r = 0; r < m; ++r) {
        bool flip = v[r] < 0;
        for (std::size_t c = 0; c < n; ++c)
            T[r][c] = flip ? Rational(-gens[c][r]) : Rational(gens[c][r]);
        T[r][n + r] = 1;
        T[r][n + m] = flip ? Rational(-v[r]) : Rational(v[r]);
    }
    std::vector<std::size_t> basis(m);
    for (std::size_t r = 0; r < m; ++r) basis[r] = n + r;

    // phase-1 objective: minimize the sum of artificials
    std::vector<Rational> obj(n + m + 1, 0);
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c <= n + m; ++c) obj[c] += T[r][c];

    while (true) {
        std::size_t enter = n + m;
        for (std::size_t c = 0; c < n + m; ++c)
            if (obj[c] > 0) {
                enter = c;
                break;  // Bland: smallest improving index
            }
        if (enter == n + m) break;
        std::size_t leave = m;
        Rational best;
        for (std::size_t r = 0; r < m; ++r) {
            if (T[r][enter] <= 0) continue;
            Rational ratio = T[r][n + m] / T[r][enter];
            if (leave == m || ratio < best || (ratio == best && basis[r] < basis[leave])) {
                best = ratio;
                leave = r;
            }
        }
        if (leave == m) return false;  // unbounded phase-1 cannot happen; defensive
        Rational piv = T[leave][enter];
        for (auto& x : T[leave]) x /= piv;
        for (std::size_t r = 0; r < m; ++r) {
            if (r == leave || T[r][enter] == 0) continue;
            Rational f = T[r][enter];
            for (std::size_t c = 0; c <= n + m; ++c) T[r][c] -= f * T[leave][c];
        }
        Rational f = obj[enter];
        for (std::size_t c = 0; c <= n + m; ++c) obj[c] -= f * T[leave][c];
        basis[leave] = enter;
    }
    return obj[n + m] == 0;  // all artificials driven to zero
}

/// Double description state over the processed constraints; each ray carries
/// the bitset of constraints it is tight on.
struct DDState {
    int dim = 0;
    std::size_t n_processed = 0;
    std::vector<std::vector<Int>> lineality;
    std::vector<std::vector<Int>> rays;
    std::vector<std::vector<std::uint64_t>> tight;  // bitsets, aligned with rays

    static void set_bit(std::vector<std::uint64_t>& b, std::size_t i) {
        if (b.size() <= i / 64) b.resize(i / 64 + 1, 0);
        b[i / 64] |= std::uint64_t(1) << (i % 64);
    }
};

inline void dd_add_constraint(DDState& st, const std::vector<Int>& a) {
    const std::size_t k = st.n_processed;

    // Use up a lineality direction not orthogonal to the constraint.
    std::size_t hit = st.lineality.size();
    for (std::size_t i = 0; i < st.lineality.size(); ++i)
        if (dot(st.lineality[i], a) != 0) {
            hit = i;
            break;
        }
    if (hit < st.lineality.size()) {
        std::vector<Int> l = st.lineality[hit];
        st.lineality.erase(st.lineality.begin() + hit);
        if (dot(l, a) < 0)
            for (Int& x : l) x = -x;
        Int la = dot(l, a);
        auto project = [&](std::vector<Int>& v) {
            Int va = dot(v, a);
            if (va == 0) return;
            for (std::size_t j = 0; j < v.size(); ++j) v[j] = la * v[j] - va * l[j];
            v = make_primitive(std::move(v));
        };
        for (auto& m : st.lineality) project(m);
        for (std::size_t i = 0; i < st.rays.size(); ++i) {
            project(st.rays[i]);
            DDState::set_bit(st.tight[i], k);  // projected rays are tight on a
        }
        st.rays.push_back(make_primitive(std::move(l)));
        st.tight.emplace_back();
        ++st.n_processed;
        return;
    }

    std::vector<Int> prod(st.rays.size());
    bool any_neg = false;
    for (std::size_t i = 0; i < st.rays.size(); ++i) {
        prod[i] = dot(st.rays[i], a);
        if (prod[i] < 0) any_neg = true;
    }
    if (!any_neg) {
        for (std::size_t i = 0; i < st.rays.size(); ++i)
            if (prod[i] == 0) DDState::set_bit(st.tight[i], k);
        ++st.n_processed;
        return;
    }

    const std::size_t words = k / 64 + 1;
    auto padded = [&](std::size_t i) {
        std::vector<std::uint64_t> b = st.tight[i];
        b.resize(words, 0);
        return b;
    };
    std::vector<std::vector<std::uint64_t>> bits(st.rays.size());
    for (std::size_t i = 0; i < st.rays.size(); ++i) bits[i] = padded(i);

    auto popcount = [&](const std::vector<std::uint64_t>& b) {
        std::size_t c = 0;
        for (std::uint64_t w : b) c += std::popcount(w);
        return c;
    };
    const std::size_t min_common =
        st.dim >= 2 + static_cast<int>(st.lineality.size()) + 2
            ? static_cast<std::size_t>(st.dim - static_cast<int>(st.lineality.size()) - 2)
            : 0;

    std::vector<std::size_t> pos, neg, zero_idx;
    for (std::size_t i = 0; i < st.rays.size(); ++i) {
        if (prod[i] > 0)
            pos.push_back(i);
        else if (prod[i] < 0)
            neg.push_back(i);
        else
            zero_idx.push_back(i);
    }

    std::vector<std::vector<Int>> new_rays;
    std::vector<std::vector<std::uint64_t>> new_tight;
    std::vector<std::uint64_t> common(words);
    for (std::size_t p : pos)
        for (std::size_t q : neg) {
            for (std::size_t w = 0; w < words; ++w) common[w] = bits[p][w] & bits[q][w];
            if (popcount(common) < min_common) continue;
            bool is_adjacent = true;
            for (std::size_t w2 = 0; w2 < st.rays.size() && is_adjacent; ++w2) {
                if (w2 == p || w2 == q) continue;
                bool contains = true;
                for (std::size_t w = 0; w < words && contains; ++w)
                    if (common[w] & ~bits[w2][w]) contains = false;
                if (contains) is_adjacent = false;
            }
            if (!is_adjacent) continue;
            std::vector<Int> r(st.rays[p].size());
            for (std::size_t j = 0; j < r.size(); ++j)
                r[j] = prod[p] * st.rays[q][j] - prod[q] * st.rays[p][j];
            std::vector<std::uint64_t> t = common;
            DDState::set_bit(t, k);
            new_rays.push_back(make_primitive(std::move(r)));
            new_tight.push_back(std::move(t));
        }

    std::vector<std::vector<Int>> rays;
    std::vector<std::vector<std::uint64_t>> tight;
    std::map<std::vector<Int>, std::size_t> dedup;
    auto push = [&](std::vector<Int> r, std::vector<std::uint64_t> t) {
        auto it = dedup.find(r);
        if (it != dedup.end()) return;
        dedup[r] = rays.size();
        rays.push_back(std::move(r));
        tight.push_back(std::move(t));
    };
    for (std::size_t i : pos) push(st.rays[i], bits[i]);
    for (std::size_t i : zero_idx) {
        auto t = bits[i];
        DDState::set_bit(t, k);
        push(st.rays[i], std::move(t));
    }
    for (std::size_t i = 0; i < new_rays.size(); ++i)
        push(std::move(new_rays[i]), std::move(new_tight[i]));
    st.rays = std::move(rays);
    st.tight = std::move(tight);
    ++st.n_processed;
}

/// Extreme rays (plus lineality as +/- pairs) of {y : y.c >= 0 for all c}.
inline RationalCone dd_solve(int dim, std::vector<std::vector<Int>> constraints) {
    // Primitive, deduplicated constraints keep the tight-set bookkeeping small.
    {
        std::set<std::vector<Int>> seen;
        std::vector<std::vector<Int>> uniq;
        for (auto& c : constraints) {
            std::vector<Int> p = make_primitive(std::move(c));
            if (std::all_of(p.begin(), p.end(), [](const Int& x) { return x == 0; })) continue;
            if (seen.insert(p).second) uniq.push_back(std::move(p));
        }
        constraints = std::move(uniq);
    }
    DDState st;
    st.dim = dim;
    st.lineality.resize(dim);
    for (int i = 0; i < dim; ++i) {
        st.lineality[i].assign(dim, 0);
        st.lineality[i][i] = 1;
    }
    for (const auto& a : constraints) dd_add_constraint(st, a);
    std::vector<std::vector<Int>> gens = st.rays;
    for (const auto& l : st.lineality) {
        gens.push_back(l);
        std::vector<Int> neg = l;
        for (Int& x : neg) x = -x;
        gens.push_back(std::move(neg));
    }
    return make_cone(dim, std::move(gens));
}

}  // namespace detail

/// Exact dual {y : y.g >= 0 for every generator g}, by the double description
/// method. An empty generator list dualizes to the full space (+/- basis).
inline RationalCone dual_cone(const RationalCone& C) {
    return detail::dd_solve(C.ambient_dim, C.generators);
}

/// Exact membership of v in the cone spanned by the generators (phase-1
/// simplex; no double description involved).
inline bool cone_contains(const RationalCone& C, const std::vector<Int>& v) {
    if (static_cast<int>(v.size()) != C.ambient_dim)
        throw std::invalid_argument("cone_contains: dimension mismatch");
    return detail::in_cone_span(C.generators, v);
}

inline bool cone_equal(const RationalCone& A, const RationalCone& B) {
    if (A.ambient_dim != B.ambient_dim)
        throw std::invalid_argument("cone_equal: dimension mismatch");
    for (const auto& g : A.generators)
        if (!detail::in_cone_span(B.generators, g)) return false;
    for (const auto& g : B.generators)
        if (!detail::in_cone_span(A.generators, g)) return false;
    return true;
}

/// g spans an extreme ray iff it lies in the cone but not in the cone spanned
/// by the generators that are not parallel to it.
inline bool is_extremal(const RationalCone& C, const std::vector<Int>& g) {
    if (!cone_contains(C, g)) return false;
    std::vector<Int> gp = make_primitive(g);
    bool zero = std::all_of(gp.begin(), gp.end(), [](const Int& x) { return x == 0; });
    if (zero) return false;
    std::vector<std::vector<Int>> rest;
    for (const auto& h : C.generators)
        if (make_primitive(h) != gp) rest.push_back(h);
    return !detail::in_cone_span(rest, gp);
}

// -- curve/divisor vector embedding ----------------------------------------------

/// Curve classes embed as (delta, -mu_1, ..., -mu_s) so that the intersection
/// number D.c becomes the Euclidean dot product with (d, m_1, ..., m_s).
inline std::vector<Int> curve_vector(const CurveClass& c) {
    std::vector<Int> v;
    v.reserve(c.space.s + 1);
    v.push_back(c.delta);
    for (const Int& mu : c.mu) v.push_back(-mu);
    return v;
}

inline std::vector<Int> divisor_vector(const DivisorClass& D) {
    std::vector<Int> v;
    v.reserve(D.space.s + 1);
    v.push_back(D.d);
    v.insert(v.end(), D.m.begin(), D.m.end());
    return v;
}

inline CurveClass curve_from_vector(Space sp, const std::vector<Int>& v) {
    std::vector<Int> mu(v.begin() + 1, v.end());
    for (Int& x : mu) x = -x;
    return CurveClass(sp, v[0], std::move(mu));
}

inline DivisorClass divisor_from_vector(Space sp, const std::vector<Int>& v) {
    return DivisorClass(sp, v[0], std::vector<Int>(v.begin() + 1, v.end()));
}

// -- cones of k-moving curves -----------------------------------------------------

struct OrbitCount {
    std::string seed;      // textual class notation of the orbit representative
    std::size_t size = 0;  // raw classes contributed
};

struct ConeGeneratorReport {
    Space space;
    int k = 0;
    bool complete = true;            // false when a degree bound truncated an orbit
    Int degree_bound;                // 0 when no bound was needed
    std::vector<OrbitCount> orbits;  // pure-Cremona orbit partition of the generators
    std::vector<bool> extremal;      // aligned with cone.generators when computed
    RationalCone cone;
};

namespace detail {

struct GeneratorPool {
    std::set<std::vector<Int>> vecs;  // curve vectors, pairing-embedded
    bool complete = true;
    Int bound_used = 0;

    void absorb(const OrbitCatalog& cat) {
        for (const auto& e : cat.elements) {
            CurveClass c(cat.space, e.degree, e.coeffs);
            vecs.insert(curve_vector(c));
        }
        complete = complete && cat.complete;
        if (cat.degree_bound > bound_used) bound_used = cat.degree_bound;
    }
};

/// Pure-Cremona orbit partition of a set of curve classes (Table-1 counting).
inline std::vector<std::pair<CurveClass, std::size_t>> cremona_orbit_partition(
    Space sp, const std::set<std::vector<Int>>& vecs) {
    std::vector<std::pair<CurveClass, std::size_t>> orbits;
    std::set<std::vector<Int>> unassigned = vecs;
    std::vector<Move> gammas;
    for_each_subset(sp.s, sp.n + 1, [&](const std::vector<int>& g) { gammas.push_back(g); });
    while (!unassigned.empty()) {
        std::vector<Int> start = *unassigned.begin();
        std::set<std::vector<Int>> orbit;
        std::vector<std::vector<Int>> stack{start};
        orbit.insert(start);
        while (!stack.empty()) {
            std::vector<Int> cur = stack.back();
            stack.pop_back();
            CurveClass c = curve_from_vector(sp, cur);
            for (const Move& g : gammas) {
                std::vector<Int> img = curve_vector(cremona_curve(c, g).first);
                if (!vecs.count(img)) continue;  // outside the pool: boundary
                if (orbit.insert(img).second) stack.push_back(img);
            }
        }
        for (const auto& v : orbit) unassigned.erase(v);
        orbits.emplace_back(curve_from_vector(sp, start), orbit.size());
    }
    return orbits;
}

}  // namespace detail

/// Generators of the cone C_k of k-moving curves, assembled from effective
/// Weyl orbits:
///   k = 0:      orbits of h and h-e_i,
///   k = 1:      orbits of h-e_i and e_i,
///   2 <= k:     orbits of h-e_i, e_i and (n-k)h - sum over n-k+1 indices e_i.
/// On non-Mori-dream spaces a degree bound is mandatory and the report is
/// flagged incomplete.
inline ConeGeneratorReport ck_generators(Space sp, int k,
                                         std::optional<Int> degree_bound = std::nullopt,
                                         bool with_extremality = false) {
    if (k < 0 || k > sp.n - 1)
        throw std::invalid_argument("ck_generators: k must be in 0..n-1");
    sp.require_weyl_action();
    if (!is_mori_dream(sp).is_mds && !degree_bound)
        throw std::invalid_argument("ck_generators: non-MDS space needs a degree bound");

    detail::GeneratorPool pool;
    auto add_seed = [&](const CurveClass& c) {
        pool.absorb(effective_orbit(c, degree_bound, MoveSet::cremona));
    };

    if (k == 0) {
        add_seed(line_class(sp));
        for (int i = 1; i <= sp.s; ++i) {
            CurveClass c = line_class(sp);
            c.mu[i - 1] = 1;  // h - e_i
            add_seed(c);
        }
    } else {
        for (int i = 1; i <= sp.s; ++i) {
            CurveClass c = line_class(sp);
            c.mu[i - 1] = 1;
            add_seed(c);
            add_seed(exceptional_line(sp, i));
        }
        if (k >= 2) {
            detail::for_each_subset(sp.s, sp.n - k + 1, [&](const std::vector<int>& I) {
                add_seed(sweeping_curve(Join(sp, I, 0)));
            });
        }
    }

    ConeGeneratorReport rep;
    rep.space = sp;
    rep.k = k;
    rep.complete = pool.complete;
    rep.degree_bound = pool.bound_used;
    rep.cone =
        make_cone(sp.s + 1, std::vector<std::vector<Int>>(pool.vecs.begin(), pool.vecs.end()));
    for (auto& [c, size] : detail::cremona_orbit_partition(sp, pool.vecs))
        rep.orbits.push_back(OrbitCount{format_curve(c), size});
    if (with_extremality) {
        rep.extremal.reserve(rep.cone.generators.size());
        for (const auto& g : rep.cone.generators)
            rep.extremal.push_back(is_extremal(rep.cone, g));
    }
    return rep;
}

/// The curve classes cutting out D_k by the inequalities D.c >= 0, for k >= 1:
///   s = n+3:     (I) h, h-e_i; (II) nh - sum e + e_j;
///                (III_k) c_{I,t} with |I| = n-2t-k+1; (IV) e_i,
///   other MDS, k = 1: the full effective orbit of e_1 (Weyl divisor curves).
inline std::vector<CurveClass> dk_inequality_classes(Space sp, int k) {
    if (k < 1 || k > sp.n - 1)
        throw std::invalid_argument("dk_inequality_classes: k must be in 1..n-1");
    sp.require_weyl_action();
    if (!is_mori_dream(sp).is_mds)
        throw std::invalid_argument("dk_inequality_classes: unsupported (non-MDS) space");

    std::vector<CurveClass> out;
    if (sp.s == sp.n + 3) {
        out.push_back(line_class(sp));  // (I) h
        for (int i = 1; i <= sp.s; ++i) {
            CurveClass c = line_class(sp);
            c.mu[i - 1] = 1;
            out.push_back(std::move(c));  // (I) h - e_i
        }
        for (int j = 1; j <= sp.s; ++j) {  // (II) nh - sum_{i != j} e_i
            std::vector<Int> mu(sp.s, 1);
            mu[j - 1] = 0;
            out.emplace_back(sp, sp.n, std::move(mu));
        }
        for (int t = 0; 2 * t <= sp.n; ++t) {  // (III_k)
            int size_I = sp.n - 2 * t - k + 1;
            if (size_I < 0 || size_I > sp.s) continue;
            if (size_I == 0 && t == 0) continue;
            detail::for_each_subset(sp.s, size_I, [&](const std::vector<int>& I) {
                out.push_back(sweeping_curve(Join(sp, I, t)));
            });
        }
        for (int i = 1; i <= sp.s; ++i) out.push_back(exceptional_line(sp, i));  // (IV)
        return out;
    }
    if (k == 1) {
        OrbitCatalog weyl = effective_orbit(exceptional_line(sp, 1));
        for (const auto& e : weyl.elements) out.emplace_back(sp, e.degree, e.coeffs);
        return out;
    }
    throw std::invalid_argument(
        "dk_inequality_classes: k >= 2 is only described explicitly for s = n+3");
}

/// The divisor cone D_k in generator representation. For k = 0 the
/// pseudoeffective cone is spanned by the Weyl divisors (s >= n+2); for
/// k >= 1 it is cut out by curve inequalities and converted to generators by
/// exact double description. Both constructions are independent of the
/// ck_generators assembly they are verified against.
inline RationalCone dk_inequality_cone(Space sp, int k) {
    if (k == 0) {
        sp.require_weyl_action();
        if (!is_mori_dream(sp).is_mds)
            throw std::invalid_argument("dk_inequality_cone: unsupported (non-MDS) space");
        if (sp.s < sp.n + 2)
            throw std::invalid_argument(
                "dk_inequality_cone: k = 0 needs s >= n+2 (Weyl divisors spanning Eff)");
        OrbitCatalog weyl = effective_orbit(exceptional_divisor(sp, 1));
        std::vector<std::vector<Int>> gens;
        for (const auto& e : weyl.elements)
            gens.push_back(divisor_vector(DivisorClass(sp, e.degree, e.coeffs)));
        return make_cone(sp.s + 1, std::move(gens));
    }
    std::vector<std::vector<Int>> constraints;
    for (const CurveClass& c : dk_inequality_classes(sp, k))
        constraints.push_back(curve_vector(c));
    return detail::dd_solve(sp.s + 1, std::move(constraints));
}

struct DualityReport {
    Space space;
    int k = 0;
    bool equal = false;
    bool complete = true;
    std::size_t ck_rays = 0;
    std::size_t dk_rays = 0;
    std::vector<std::string> mismatches;  // generators failing the mutual containment
};

/// Verifies the strong duality C_k = D_k^dual: D_k is built from its
/// inequality description by double description, dualized back, and compared
/// against the orbit-assembled C_k.
inline DualityReport verify_strong_duality(Space sp, int k,
                                           std::optional<Int> degree_bound = std::nullopt) {
    DualityReport rep;
    rep.space = sp;
    rep.k = k;
    if (!is_mori_dream(sp).is_mds)
        throw std::invalid_argument("verify_strong_duality: unsupported (non-MDS) space");

    ConeGeneratorReport ck = ck_generators(sp, k, degree_bound);
    rep.complete = ck.complete;
    RationalCone dk = dk_inequality_cone(sp, k);
    RationalCone dual_dk = dual_cone(dk);
    rep.ck_rays = ck.cone.generators.size();
    rep.dk_rays = dk.generators.size();

    rep.equal = true;
    for (const auto& g : ck.cone.generators) {
        // membership in dual(D_k) is the inequality test against D_k itself
        bool inside = true;
        for (const auto& d : dk.generators)
            if (dot(g, d) < 0) {
                inside = false;
                break;
            }
        if (!inside) {
            rep.equal = false;
            rep.mismatches.push_back("C_k generator outside dual(D_k): " +
                                     format_curve(curve_from_vector(sp, g)));
        }
    }
    for (const auto& g : dual_dk.generators)
        if (!detail::in_cone_span(ck.cone.generators, g)) {
            rep.equal = false;
            rep.mismatches.push_back("dual(D_k) generator outside C_k: " +
                                     format_curve(curve_from_vector(sp, g)));
        }
    return rep;
}

}  // namespace weylcycles
