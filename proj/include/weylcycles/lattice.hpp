#pragma once

#include <weylcycles/bigint.hpp>

#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace weylcycles {

/// Blow-up of n-dimensional projective space at s general points.
struct Space {
    int n = 2;
    int s = 0;

    Space() = default;
    Space(int n_, int s_) : n(n_), s(s_) {
        if (n < 2) throw std::invalid_argument("Space: n must be >= 2");
        if (s < 0) throw std::invalid_argument("Space: s must be >= 0");
    }

    bool operator==(const Space& o) const = default;

    /// Weyl-group operations need at least n+1 points.
    bool has_weyl_action() const { return s >= n + 1; }

    void require_weyl_action() const {
        if (!has_weyl_action())
            throw std::invalid_argument("Weyl operations require s >= n+1 (have n=" +
                                        std::to_string(n) + ", s=" + std::to_string(s) + ")");
    }
};

/// Divisor class dH - sum_i m_i E_i.
struct DivisorClass {
    Space space;
    Int d = 0;
    std::vector<Int> m;

    DivisorClass() = default;
    DivisorClass(Space sp, Int d_, std::vector<Int> m_)
        : space(sp), d(std::move(d_)), m(std::move(m_)) {
        if (m.size() != static_cast<std::size_t>(space.s))
            throw std::invalid_argument("DivisorClass: multiplicity vector length != s");
    }

    bool operator==(const DivisorClass& o) const = default;
};

/// Curve (1-cycle) class delta h - sum_i mu_i e_i.
struct CurveClass {
    Space space;
    Int delta = 0;
    std::vector<Int> mu;

    CurveClass() = default;
    CurveClass(Space sp, Int delta_, std::vector<Int> mu_)
        : space(sp), delta(std::move(delta_)), mu(std::move(mu_)) {
        if (mu.size() != static_cast<std::size_t>(space.s))
            throw std::invalid_argument("CurveClass: multiplicity vector length != s");
    }

    bool operator==(const CurveClass& o) const = default;
};

inline void require_same_space(const Space& a, const Space& b) {
    if (!(a == b))
        throw std::invalid_argument("operands live on different spaces: X^" +
                                    std::to_string(a.n) + "_" + std::to_string(a.s) + " vs X^" +
                                    std::to_string(b.n) + "_" + std::to_string(b.s));
}

// -- linear structure ---------------------------------------------------------

inline DivisorClass operator+(const DivisorClass& a, const DivisorClass& b) {
    require_same_space(a.space, b.space);
    DivisorClass r = a;
    r.d += b.d;
    for (int i = 0; i < a.space.s; ++i) r.m[i] += b.m[i];
    return r;
}

inline DivisorClass operator-(const DivisorClass& a, const DivisorClass& b) {
    require_same_space(a.space, b.space);
    DivisorClass r = a;
    r.d -= b.d;
    for (int i = 0; i < a.space.s; ++i) r.m[i] -= b.m[i];
    return r;
}

inline DivisorClass operator*(const Int& k, const DivisorClass& a) {
    DivisorClass r = a;
    r.d *= k;
    for (auto& x : r.m) x *= k;
    return r;
}

inline CurveClass operator+(const CurveClass& a, const CurveClass& b) {
    require_same_space(a.space, b.space);
    CurveClass r = a;
    r.delta += b.delta;
    for (int i = 0; i < a.space.s; ++i) r.mu[i] += b.mu[i];
    return r;
}

inline CurveClass operator-(const CurveClass& a, const CurveClass& b) {
    require_same_space(a.space, b.space);
    CurveClass r = a;
    r.delta -= b.delta;
    for (int i = 0; i < a.space.s; ++i) r.mu[i] -= b.mu[i];
    return r;
}

inline CurveClass operator*(const Int& k, const CurveClass& a) {
    CurveClass r = a;
    r.delta *= k;
    for (auto& x : r.mu) x *= k;
    return r;
}

// -- pairings -----------------------------------------------------------------

/// Intersection number D . c = d*delta - sum m_i mu_i.
inline Int intersect(const DivisorClass& D, const CurveClass& c) {
    require_same_space(D.space, c.space);
    Int r = D.d * c.delta;
    for (int i = 0; i < D.space.s; ++i) r -= D.m[i] * c.mu[i];
    return r;
}

/// Dolgachev-Mukai pairing <D1,D2> = (n-1) d1 d2 - sum m1_i m2_i.
inline Int dm_pairing(const DivisorClass& a, const DivisorClass& b) {
    require_same_space(a.space, b.space);
    Int r = Int(a.space.n - 1) * a.d * b.d;
    for (int i = 0; i < a.space.s; ++i) r -= a.m[i] * b.m[i];
    return r;
}

// -- distinguished classes ----------------------------------------------------

inline DivisorClass hyperplane_class(Space sp) {
    return DivisorClass(sp, 1, std::vector<Int>(sp.s, 0));
}

inline DivisorClass exceptional_divisor(Space sp, int i) {
    if (i < 1 || i > sp.s) throw std::invalid_argument("exceptional_divisor: index out of range");
    std::vector<Int> m(sp.s, 0);
    m[i - 1] = -1;
    return DivisorClass(sp, 0, std::move(m));
}

inline CurveClass line_class(Space sp) {
    return CurveClass(sp, 1, std::vector<Int>(sp.s, 0));
}

inline CurveClass exceptional_line(Space sp, int i) {
    if (i < 1 || i > sp.s) throw std::invalid_argument("exceptional_line: index out of range");
    std::vector<Int> mu(sp.s, 0);
    mu[i - 1] = -1;
    return CurveClass(sp, 0, std::move(mu));
}

/// -K = (n+1)H - (n-1) sum E_i.
inline DivisorClass anticanonical_divisor(Space sp) {
    return DivisorClass(sp, sp.n + 1, std::vector<Int>(sp.s, sp.n - 1));
}

/// F = (n+1)h - sum e_i, the Weyl-invariant curve class.
inline CurveClass anticanonical_curve(Space sp) {
    return CurveClass(sp, sp.n + 1, std::vector<Int>(sp.s, 1));
}

// -- Mori dream classification ------------------------------------------------

struct MoriDreamResult {
    bool is_mds = false;
    bool list_criterion = false;  // membership in the known classification list
    Int kk_pairing;               // <-K,-K>
};

/// Both the classification-list criterion and the sign of <-K,-K> are
/// evaluated; disagreement indicates an implementation bug and throws.
inline MoriDreamResult is_mori_dream(Space sp) {
    MoriDreamResult r;
    if (sp.n == 2)
        r.list_criterion = sp.s <= 8;
    else if (sp.n == 3)
        r.list_criterion = sp.s <= 7;
    else if (sp.n == 4)
        r.list_criterion = sp.s <= 8;
    else
        r.list_criterion = sp.s <= sp.n + 3;
    DivisorClass mk = anticanonical_divisor(sp);
    r.kk_pairing = dm_pairing(mk, mk);
    bool pairing_criterion = r.kk_pairing > 0;
    if (pairing_criterion != r.list_criterion)
        throw std::logic_error("is_mori_dream: list and pairing criteria disagree on X^" +
                               std::to_string(sp.n) + "_" + std::to_string(sp.s));
    r.is_mds = r.list_criterion;
    return r;
}

// -- anticanonical curve decomposition ----------------------------------------

/// Writes F as a nonnegative combination of effective curve classes where a
/// constructive witness is available: line classes pairing off 2n+2 points,
/// or F itself (the plane elliptic curve) on X^2_s with s <= 9.
inline std::optional<std::vector<CurveClass>> f_decomposition(Space sp) {
    if (sp.s == 2 * sp.n + 2) {
        std::vector<CurveClass> parts;
        for (int i = 1; i <= sp.n + 1; ++i) {
            std::vector<Int> mu(sp.s, 0);
            mu[2 * i - 2] = 1;
            mu[2 * i - 1] = 1;
            parts.emplace_back(sp, 1, std::move(mu));
        }
        return parts;
    }
    if (sp.n == 2 && sp.s <= 9) return std::vector<CurveClass>{anticanonical_curve(sp)};
    return std::nullopt;
}

// -- textual notation "d; m1,m2,...,ms" ----------------------------------------

namespace detail {

inline std::pair<Int, std::vector<Int>> parse_class_body(const std::string& text, int s) {
    auto semi = text.find(';');
    if (semi == std::string::npos)
        throw std::invalid_argument("class notation must be \"d; m1,...,ms\": " + text);
    auto trim = [](std::string t) {
        auto b = t.find_first_not_of(" \t");
        auto e = t.find_last_not_of(" \t");
        if (b == std::string::npos) return std::string();
        return t.substr(b, e - b + 1);
    };
    Int d(trim(text.substr(0, semi)));
    std::vector<Int> m;
    std::string rest = text.substr(semi + 1);
    std::stringstream ss(rest);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = trim(tok);
        if (!tok.empty()) m.emplace_back(tok);
    }
    if (m.size() != static_cast<std::size_t>(s))
        throw std::invalid_argument("class notation has " + std::to_string(m.size()) +
                                    " multiplicities, expected " + std::to_string(s));
    return {d, m};
}

inline std::string format_class_body(const Int& d, const std::vector<Int>& m) {
    std::string out = d.str() + ";";
    for (std::size_t i = 0; i < m.size(); ++i) {
        out += m[i].str();
        if (i + 1 < m.size()) out += ",";
    }
    return out;
}

}  // namespace detail

inline DivisorClass parse_divisor(Space sp, const std::string& text) {
    auto [d, m] = detail::parse_class_body(text, sp.s);
    return DivisorClass(sp, d, m);
}

inline CurveClass parse_curve(Space sp, const std::string& text) {
    auto [d, m] = detail::parse_class_body(text, sp.s);
    return CurveClass(sp, d, m);
}

inline std::string format_divisor(const DivisorClass& D) {
    return detail::format_class_body(D.d, D.m);
}

inline std::string format_curve(const CurveClass& c) {
    return detail::format_class_body(c.delta, c.mu);
}

}  // namespace weylcycles
