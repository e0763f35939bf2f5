#pragma once

#include <weylcycles/weyl.hpp>

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace weylcycles {

/// The join J(L_I, sigma_t): strict transform of the join of the linear span
/// of the points indexed by I with the t-secant variety of the rational
/// normal curve through n+3 points. t = 0 gives the linear cycle L_I.
struct Join {
    Space space;
    std::vector<int> I;  // sorted, 1-based
    int t = 0;

    Join() = default;
    Join(Space sp, std::vector<int> I_, int t_) : space(sp), I(std::move(I_)), t(t_) {
        std::sort(I.begin(), I.end());
        for (std::size_t k = 0; k < I.size(); ++k) {
            if (I[k] < 1 || I[k] > space.s) throw std::invalid_argument("Join: index out of range");
            if (k > 0 && I[k] == I[k - 1]) throw std::invalid_argument("Join: repeated index");
        }
        if (t < 0) throw std::invalid_argument("Join: t must be >= 0");
        if (t >= 1 && space.s != space.n + 3)
            throw std::invalid_argument(
                "Join: sigma_t requires the rational normal curve through n+3 points (s = n+3)");
        if (2 * t > space.n) throw std::invalid_argument("Join: t must satisfy t <= n/2");
        if (static_cast<int>(I.size()) > space.n - 2 * t)
            throw std::invalid_argument("Join: |I| must satisfy |I| <= n-2t");
        if (t == 0 && I.empty()) throw std::invalid_argument("Join: (t,|I|) = (0,0) is empty");
        int r = dim();
        if (r < 0 || r > space.n - 1) throw std::invalid_argument("Join: dimension out of range");
    }

    int dim() const { return static_cast<int>(I.size()) + 2 * t - 1; }

    bool contains_index(int i) const { return std::binary_search(I.begin(), I.end(), i); }

    bool operator==(const Join& o) const = default;
};

inline Join linear_cycle(Space sp, std::vector<int> I) { return Join(sp, std::move(I), 0); }

/// c_{I,t} = (|I| + (n+1)t - 1) h - sum_{i in I}(t+1) e_i - sum_{i notin I} t e_i.
inline CurveClass sweeping_curve(const Join& J) {
    const Space sp = J.space;
    Int delta = Int(J.I.size()) + Int(sp.n + 1) * J.t - 1;
    std::vector<Int> mu(sp.s, J.t);
    for (int i : J.I) mu[i - 1] = J.t + 1;
    return CurveClass(sp, delta, std::move(mu));
}

/// Chow-class degrees of an r-cycle: coefficient of H_r and of each E_{r,i}.
struct CycleDegrees {
    int r = 0;
    Int hr_degree;
    std::vector<Int> er_degrees;

    bool operator==(const CycleDegrees& o) const = default;
};

inline CycleDegrees join_cycle_degrees(const Join& J) {
    const int n = J.space.n, r = J.dim(), t = J.t;
    CycleDegrees deg;
    deg.r = r;
    deg.hr_degree = binomial(t + n - r, t);
    deg.er_degrees.assign(J.space.s, binomial(t + n - r - 1, t - 1));
    for (int i : J.I) deg.er_degrees[i - 1] = deg.hr_degree;
    return deg;
}

/// kappa_{J}(D) = -(|I|+(n+1)t-1) d + sum_{i in I}(t+1) m_i + sum_{i notin I} t m_i.
/// The multiplicity of containment of J in the base locus of D is max(0, kappa).
inline Int kappa(const Join& J, const DivisorClass& D) {
    require_same_space(J.space, D.space);
    Int k = -(Int(J.I.size()) + Int(J.space.n + 1) * J.t - 1) * D.d;
    for (int i = 1; i <= J.space.s; ++i)
        k += Int(J.contains_index(i) ? J.t + 1 : J.t) * D.m[i - 1];
    return k;
}

inline bool is_orthogonal(const Join& J, const DivisorClass& D) {
    return intersect(D, sweeping_curve(J)) == 0;
}

/// The Weyl divisor E_{I,sigma_tau} = (tau+1)H - sum_{i in I}(tau+1)E_i - sum_{i notin I} tau E_i.
/// As a join it has |I| = n - 2 tau.
inline DivisorClass weyl_divisor_class(const Join& J) {
    if (J.dim() != J.space.n - 1)
        throw std::invalid_argument("weyl_divisor_class: join is not a divisor (dim != n-1)");
    std::vector<Int> m(J.space.s, J.t);
    for (int i : J.I) m[i - 1] = J.t + 1;
    return DivisorClass(J.space, J.t + 1, std::move(m));
}

/// Components of D cap V for a Weyl divisor D = E_{calI, sigma_tau} and a join V
/// orthogonal to it:
///   union over i in I \ calI of J(L_{I minus i}, sigma_t), and for t >= 1 also
///   union over i in calI \ I of J(L_{I plus i}, sigma_{t-1}).
inline std::vector<Join> intersection_decomposition(const Join& D, const Join& V) {
    require_same_space(D.space, V.space);
    if (D.dim() != D.space.n - 1)
        throw std::invalid_argument("intersection_decomposition: D must be a Weyl divisor join");
    if (V.dim() < 1)
        throw std::invalid_argument("intersection_decomposition: V must have dimension >= 1");
    if (!is_orthogonal(V, weyl_divisor_class(D)))
        throw std::invalid_argument("intersection_decomposition: V is not orthogonal to D");

    std::vector<Join> parts;
    for (int i : V.I)
        if (!D.contains_index(i)) {
            std::vector<int> J = V.I;
            J.erase(std::find(J.begin(), J.end(), i));
            parts.emplace_back(V.space, std::move(J), V.t);
        }
    if (V.t >= 1)
        for (int i : D.I)
            if (!V.contains_index(i)) {
                std::vector<int> J = V.I;
                J.push_back(i);
                parts.emplace_back(V.space, std::move(J), V.t - 1);
            }
    return parts;
}

/// Writes c_V = c_W + (sum of (0)-Weyl lines) for W realized inside V by
/// dropping indices of I and/or absorbing indices while t decreases.
/// Returns (c_W, the list of (0)-Weyl line classes).
inline std::pair<CurveClass, std::vector<CurveClass>> curve_decomposition(const Join& V,
                                                                          const Join& W) {
    require_same_space(V.space, W.space);
    const Space sp = V.space;
    if (W.t > V.t)
        throw std::invalid_argument("curve_decomposition: W has larger secant parameter than V");
    std::vector<int> added;  // indices entering I as t decreases
    for (int i : W.I)
        if (!V.contains_index(i)) added.push_back(i);
    if (static_cast<int>(added.size()) != V.t - W.t)
        throw std::invalid_argument(
            "curve_decomposition: W is not reachable from V by the two reduction moves");
    std::vector<CurveClass> lines;
    for (int i : added) {
        std::vector<Int> mu(sp.s, 1);
        mu[i - 1] = 0;
        lines.emplace_back(sp, sp.n, std::move(mu));  // nh - sum_{j != i} e_j
    }
    for (int i : V.I)
        if (!W.contains_index(i)) {
            std::vector<Int> mu(sp.s, 0);
            mu[i - 1] = 1;
            lines.emplace_back(sp, 1, std::move(mu));  // h - e_i
        }
    CurveClass cw = sweeping_curve(W);
    CurveClass check = cw;
    for (const auto& l : lines) check = check + l;
    if (!(check == sweeping_curve(V)))
        throw std::logic_error("curve_decomposition: (0)-Weyl line sum does not close");
    return {cw, lines};
}

/// Pairwise DM-orthogonal Weyl divisors realizing V as a Weyl cycle:
/// after relabeling I to {1..a}, the divisors are E_{I_j, sigma_t} with
/// I_j = {1..n+1-2t} minus {j}, for j = a+1..n+1-2t (in relabeled indices;
/// the returned classes are mapped back to the original labels).
struct WeylCycleWitness {
    std::vector<DivisorClass> divisors;
    std::vector<int> relabeling;  // relabeling[orig-1] = new index
};

inline WeylCycleWitness weyl_cycle_witness(const Join& V) {
    const Space sp = V.space;
    const int a = static_cast<int>(V.I.size());
    const int top = sp.n + 1 - 2 * V.t;
    if (top > sp.s)
        throw std::invalid_argument("weyl_cycle_witness: needs at least n+1-2t points");

    WeylCycleWitness out;
    out.relabeling.resize(sp.s);
    {
        int next = a;
        std::vector<bool> in_I(sp.s + 1, false);
        for (int i : V.I) in_I[i] = true;
        int pos = 0;
        for (int i : V.I) out.relabeling[i - 1] = ++pos;
        for (int i = 1; i <= sp.s; ++i)
            if (!in_I[i]) out.relabeling[i - 1] = ++next;
    }
    // inverse permutation: orig index carrying new label l
    std::vector<int> orig_of(sp.s + 1, 0);
    for (int i = 1; i <= sp.s; ++i) orig_of[out.relabeling[i - 1]] = i;

    for (int j = a + 1; j <= top; ++j) {
        std::vector<int> calI;
        for (int l = 1; l <= top; ++l)
            if (l != j) calI.push_back(orig_of[l]);
        out.divisors.push_back(weyl_divisor_class(Join(sp, std::move(calI), V.t)));
    }
    return out;
}

// -- Weyl r-plane catalogs -------------------------------------------------------

enum class PlaneProvenance { closed_form, bfs };

/// A Weyl r-plane, identified by the unique curve class sweeping it out.
struct WeylPlane {
    Space space;
    CurveClass curve;
    WeylWord witness;
    int r = 0;
    PlaneProvenance provenance = PlaneProvenance::closed_form;
    std::optional<Join> join;              // set when the plane is a join J(L_I, sigma_t)
    std::optional<int> exceptional_index;  // set when the plane is E_i (r = n-1)
};

struct PlaneCatalog {
    Space space;
    int r = 0;
    bool complete = false;
    Int degree_bound;  // bound used when BFS was involved (0 for pure closed form)
    std::vector<WeylPlane> planes;

    std::size_t size() const { return planes.size(); }
};

namespace detail {

/// Joins of dimension r on X^n_{n+3} (all (I,t) with |I| + 2t - 1 = r), or the
/// linear r-planes when s <= n+2.
inline std::vector<Join> joins_of_dimension(Space sp, int r) {
    std::vector<Join> out;
    int tmax = (sp.s == sp.n + 3) ? sp.n / 2 : 0;
    for (int t = 0; t <= tmax; ++t) {
        int size_I = r + 1 - 2 * t;
        if (size_I < 0) continue;
        if (size_I > sp.s) continue;
        if (size_I > sp.n - 2 * t) continue;
        if (size_I == 0 && t == 0) continue;
        for_each_subset(sp.s, size_I, [&](const std::vector<int>& I) {
            out.emplace_back(sp, I, t);
        });
    }
    return out;
}

inline std::optional<int> exceptional_index_of(const CurveClass& c) {
    if (c.delta != 0) return std::nullopt;
    int idx = 0;
    for (int i = 0; i < c.space.s; ++i) {
        if (c.mu[i] == -1) {
            if (idx) return std::nullopt;
            idx = i + 1;
        } else if (c.mu[i] != 0)
            return std::nullopt;
    }
    return idx ? std::optional<int>(idx) : std::nullopt;
}

/// Recognize c = c_{I,t} for some join and return it.
inline std::optional<Join> join_of_curve(const CurveClass& c) {
    const Space sp = c.space;
    Int tmin = c.mu.empty() ? Int(0) : *std::min_element(c.mu.begin(), c.mu.end());
    if (tmin < 0) return std::nullopt;
    std::vector<int> I;
    for (int i = 0; i < sp.s; ++i) {
        if (c.mu[i] == tmin + 1)
            I.push_back(i + 1);
        else if (c.mu[i] != tmin)
            return std::nullopt;
    }
    // all mu equal could be t or t+1 with I empty/full; try both
    for (int shift = 0; shift <= 1; ++shift) {
        Int t = tmin - shift;
        if (t < 0) continue;
        std::vector<int> II = I;
        if (shift == 1) {
            if (!I.empty()) continue;
            for (int i = 1; i <= sp.s; ++i) II.push_back(i);
        }
        if (c.delta != Int(II.size()) + Int(sp.n + 1) * t - 1) continue;
        try {
            Join J(sp, II, static_cast<int>(to_long(t)));
            if (sweeping_curve(J) == c) return J;
        } catch (const std::invalid_argument&) {
        }
    }
    return std::nullopt;
}

}  // namespace detail

/// Catalog of all Weyl r-planes: closed form for s <= n+3 (joins of dimension
/// r, plus exceptional divisors when r = n-1), degree-bounded BFS for s >= n+4.
inline PlaneCatalog classify_weyl_planes(Space sp, int r,
                                         std::optional<Int> degree_bound = std::nullopt) {
    if (r < 1 || r > sp.n - 1)
        throw std::invalid_argument("classify_weyl_planes: r must be in 1..n-1");

    PlaneCatalog cat;
    cat.space = sp;
    cat.r = r;
    cat.degree_bound = 0;

    if (sp.s <= sp.n + 2) {
        // Linear planes through r+1 points; each forms a tiny orbit of its own
        // (a single Cremona can only exchange L_I with an exceptional divisor).
        for (const Join& J : detail::joins_of_dimension(sp, r)) {
            WeylPlane p{sp, sweeping_curve(J), {}, r, PlaneProvenance::closed_form, J, {}};
            cat.planes.push_back(std::move(p));
        }
        if (r == sp.n - 1) {
            for (int i = 1; i <= sp.s; ++i) {
                WeylPlane p{sp, exceptional_line(sp, i), {}, r, PlaneProvenance::closed_form,
                            {}, i};
                if (sp.has_weyl_action()) {
                    // witness: Cr_{I + {i}} maps c_{I,0} to e_i for any n-set I avoiding i
                    std::vector<int> gamma;
                    for (int j = 1; j <= sp.s && static_cast<int>(gamma.size()) < sp.n; ++j)
                        if (j != i) gamma.push_back(j);
                    gamma.push_back(i);
                    std::sort(gamma.begin(), gamma.end());
                    p.witness.moves.push_back(gamma);
                }
                cat.planes.push_back(std::move(p));
            }
        }
        cat.complete = true;
        return cat;
    }

    // s >= n+3: the planes correspond 1-1 to the effective orbit of c_I, |I| = r+1.
    std::vector<int> seed_I(r + 1);
    for (int i = 0; i <= r; ++i) seed_I[i] = i + 1;
    CurveClass seed = sweeping_curve(Join(sp, seed_I, 0));
    OrbitCatalog orbit = effective_orbit(seed, degree_bound);
    cat.complete = orbit.complete;
    cat.degree_bound = orbit.degree_bound;

    for (std::size_t k = 0; k < orbit.size(); ++k) {
        CurveClass c = orbit.curve_at(k);
        WeylPlane p{sp, c, orbit.witness(k), r,
                    sp.s == sp.n + 3 ? PlaneProvenance::closed_form : PlaneProvenance::bfs,
                    detail::join_of_curve(c), detail::exceptional_index_of(c)};
        cat.planes.push_back(std::move(p));
    }

    if (sp.s == sp.n + 3) {
        // Safety net: the BFS must reproduce the closed-form orbit exactly.
        std::set<std::pair<Int, std::vector<Int>>> expected;
        for (const Join& J : detail::joins_of_dimension(sp, r)) {
            CurveClass c = sweeping_curve(J);
            expected.emplace(c.delta, c.mu);
        }
        if (r == sp.n - 1)
            for (int i = 1; i <= sp.s; ++i) {
                CurveClass c = exceptional_line(sp, i);
                expected.emplace(c.delta, c.mu);
            }
        std::set<std::pair<Int, std::vector<Int>>> got;
        for (const auto& e : orbit.elements) got.emplace(e.degree, e.coeffs);
        if (expected != got)
            throw std::logic_error("classify_weyl_planes: BFS disagrees with the closed form");
    }
    return cat;
}

}  // namespace weylcycles
