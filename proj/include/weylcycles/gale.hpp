#pragma once

#include <weylcycles/weyl.hpp>

#include <mutex>
#include <string>
#include <vector>

namespace weylcycles {

/// Divisor class a*alpha + sum_i b_i*beta_i on the degree-1 del Pezzo surface
/// S = X^2_8 (alpha the line class, beta_i the exceptional classes).
struct SurfaceDivisor {
    Int a;
    std::vector<Int> b;  // length 8

    SurfaceDivisor() : a(0), b(8, 0) {}
    SurfaceDivisor(Int a_, std::vector<Int> b_) : a(std::move(a_)), b(std::move(b_)) {
        if (b.size() != 8) throw std::invalid_argument("SurfaceDivisor: b must have length 8");
    }

    bool operator==(const SurfaceDivisor& o) const = default;
};

inline Space gale_surface_space() { return Space(2, 8); }
inline Space gale_fourfold_space() { return Space(4, 8); }

inline SurfaceDivisor surface_alpha() { return SurfaceDivisor(1, std::vector<Int>(8, 0)); }

inline SurfaceDivisor surface_beta(int i) {
    if (i < 1 || i > 8) throw std::invalid_argument("surface_beta: index out of range");
    SurfaceDivisor w;
    w.b[i - 1] = 1;
    return w;
}

/// K_S = -3 alpha + sum beta_i (the surface canonical class).
inline SurfaceDivisor surface_canonical() { return SurfaceDivisor(-3, std::vector<Int>(8, 1)); }

inline SurfaceDivisor operator+(const SurfaceDivisor& x, const SurfaceDivisor& y) {
    SurfaceDivisor r = x;
    r.a += y.a;
    for (int i = 0; i < 8; ++i) r.b[i] += y.b[i];
    return r;
}

inline SurfaceDivisor operator-(const SurfaceDivisor& x, const SurfaceDivisor& y) {
    SurfaceDivisor r = x;
    r.a -= y.a;
    for (int i = 0; i < 8; ++i) r.b[i] -= y.b[i];
    return r;
}

inline SurfaceDivisor operator*(const Int& k, const SurfaceDivisor& x) {
    SurfaceDivisor r = x;
    r.a *= k;
    for (auto& v : r.b) v *= k;
    return r;
}

/// Surface intersection form: alpha^2 = 1, beta_i . beta_j = -delta_ij,
/// alpha . beta_i = 0 (distinct from the Dolgachev-Mukai pairing).
inline Int surface_intersection(const SurfaceDivisor& x, const SurfaceDivisor& y) {
    Int r = x.a * y.a;
    for (int i = 0; i < 8; ++i) r -= x.b[i] * y.b[i];
    return r;
}

/// A 1-cycle class on X^4_8 with entries in (1/2)Z, stored as the integer
/// class of twice the cycle.
struct HalfCurveClass {
    CurveClass twice;  // 2c, always integral

    bool is_integral() const {
        if (twice.delta % 2 != 0) return false;
        for (const Int& mu : twice.mu)
            if (mu % 2 != 0) return false;
        return true;
    }

    CurveClass halved() const {
        if (!is_integral()) throw std::logic_error("HalfCurveClass: not an integral class");
        CurveClass c = twice;
        c.delta /= 2;
        for (Int& mu : c.mu) mu /= 2;
        return c;
    }

    bool operator==(const HalfCurveClass& o) const = default;
};

/// rho^{-1}: Pic(S) -> N_1(X^4_8) x (1/2), determined by
/// rho^{-1}(alpha) = 3h - (1/2) sum e_i and rho^{-1}(beta_i) = (1/2)(h - e_i).
inline HalfCurveClass rho_inv(const SurfaceDivisor& w) {
    Space X = gale_fourfold_space();
    Int sum_b = 0;
    for (const Int& v : w.b) sum_b += v;
    Int delta2 = 6 * w.a + sum_b;
    std::vector<Int> mu2(8);
    for (int i = 0; i < 8; ++i) mu2[i] = w.a + w.b[i];
    return HalfCurveClass{CurveClass(X, delta2, std::move(mu2))};
}

/// eta(w) = rho^{-1}(2w - K) for the Weyl-compatible normalization
/// K = 3 alpha - sum beta_i (this is the normalization under which
/// rho^{-1}(K) = F; the result is always integral).
inline CurveClass eta(const SurfaceDivisor& w) {
    SurfaceDivisor arg = 2 * w - SurfaceDivisor(3, std::vector<Int>(8, -1));
    HalfCurveClass img = rho_inv(arg);
    if (!img.is_integral())
        throw std::logic_error("eta: non-integral image (generator images corrupted)");
    return img.halved();
}

/// Equivariance of the Gale correspondence: the surface Cremona based on
/// {p_i, p_j, p_k} matches, through rho^{-1}, the curve Cremona on X^4_8
/// based on the complementary five indices.
inline bool check_equivariance(const SurfaceDivisor& w, int i, int j, int k) {
    if (i == j || i == k || j == k) throw std::invalid_argument("check_equivariance: index clash");
    Space S = gale_surface_space();
    Space X = gale_fourfold_space();

    Move gammaS = cremona_index_set(S, {i, j, k});
    std::vector<int> comp;
    for (int l = 1; l <= 8; ++l)
        if (l != i && l != j && l != k) comp.push_back(l);
    Move gammaX = cremona_index_set(X, comp);

    // surface side: w as divisor d = a, m_i = -b_i
    std::vector<Int> m(8);
    for (int l = 0; l < 8; ++l) m[l] = -w.b[l];
    DivisorClass ws(S, w.a, std::move(m));
    DivisorClass ws_img = cremona_divisor(ws, gammaS).first;
    std::vector<Int> b_img(8);
    for (int l = 0; l < 8; ++l) b_img[l] = -ws_img.m[l];
    HalfCurveClass lhs = rho_inv(SurfaceDivisor(ws_img.d, std::move(b_img)));

    HalfCurveClass rhs = rho_inv(w);
    rhs.twice = cremona_curve(rhs.twice, gammaX).first;  // linear, so 2c transforms as c

    return lhs == rhs;
}

// -- image classification ------------------------------------------------------------

enum class SurfaceCurveKind { minus_one, zero, one };

/// (i)-curve detection on S via the surface intersection form:
/// (-1): w^2 = -1, w.K = -1;  (0): w^2 = 0, w.K = -2;  (1): w^2 = 1, w.K = -3.
inline std::optional<SurfaceCurveKind> surface_curve_kind(const SurfaceDivisor& w) {
    Int self = surface_intersection(w, w);
    Int wk = surface_intersection(w, surface_canonical());
    if (self == -1 && wk == -1) return SurfaceCurveKind::minus_one;
    if (self == 0 && wk == -2) return SurfaceCurveKind::zero;
    if (self == 1 && wk == -3) return SurfaceCurveKind::one;
    return std::nullopt;
}

enum class GaleMap { two_rho_inv, eta };

struct GaleImage {
    CurveClass image;
    SurfaceCurveKind kind;
    GaleMap map;
    std::string label;  // Weyl-orbit membership of the image
};

namespace detail {

inline const OrbitCatalog& gale_orbit(const char* which) {
    static std::map<std::string, OrbitCatalog> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(which);
    if (it != cache.end()) return it->second;
    Space X = gale_fourfold_space();
    CurveClass seed = line_class(X);
    if (std::string(which) == "zero-weyl-line") {
        seed.mu[0] = 1;  // h - e_1
    } else if (std::string(which) == "exceptional") {
        seed = exceptional_line(X, 1);
    } else if (std::string(which) == "c2") {
        seed = CurveClass(X, 2, {0, 0, 0, 0, 0, 1, 1, 1});  // 2h - e_6 - e_7 - e_8
    }  // "one-weyl-line": h itself
    return cache.emplace(which, effective_orbit(seed)).first->second;
}

}  // namespace detail

/// Maps a verified (i)-curve class of S to X^4_8 and labels the Weyl orbit of
/// the image. Valid combinations: 2rho^{-1} on (-1)-curves; eta on (1)-, (0)-
/// and (-1)-curves (the latter may land outside the effective cone).
inline GaleImage gale_image_classification(const SurfaceDivisor& w, GaleMap map) {
    auto kind = surface_curve_kind(w);
    if (!kind)
        throw std::invalid_argument(
            "gale_image_classification: class is not a (-1)/(0)/(1)-curve on S");
    GaleImage out;
    out.kind = *kind;
    out.map = map;

    if (map == GaleMap::two_rho_inv) {
        if (*kind != SurfaceCurveKind::minus_one)
            throw std::invalid_argument("2rho^{-1} classifies only (-1)-curves");
        out.image = rho_inv(w).twice;
        out.label = detail::gale_orbit("zero-weyl-line").contains(out.image)
                        ? "zero-weyl-line"
                        : "unrecognized";
        return out;
    }

    out.image = eta(w);
    switch (*kind) {
        case SurfaceCurveKind::one:
            out.label = detail::gale_orbit("one-weyl-line").contains(out.image)
                            ? "one-weyl-line"
                            : "unrecognized";
            break;
        case SurfaceCurveKind::zero:
            out.label = detail::gale_orbit("exceptional").contains(out.image)
                            ? "exceptional-weyl-line"
                            : "unrecognized";
            break;
        case SurfaceCurveKind::minus_one:
            if (curve_effectivity_filter(out.image) != Effectivity::effective_candidate)
                out.label = "non-effective";
            else
                out.label = detail::gale_orbit("c2").contains(out.image) ? "c2-orbit"
                                                                         : "unrecognized";
            break;
    }
    return out;
}

}  // namespace weylcycles
