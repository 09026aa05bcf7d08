#pragma once

#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "steerlab/rng.hpp"
#include "steerlab/state.hpp"
#include "steerlab/steering_three.hpp"
#include "steerlab/steering_two.hpp"

namespace steerlab {

enum class StateClass {
    separable,
    entangled_unsteerable2_uncertified3,
    entangled_unsteerable2_steerable3,
    steerable2,
};

inline const char* to_string(StateClass c) {
    switch (c) {
        case StateClass::separable: return "separable";
        case StateClass::entangled_unsteerable2_uncertified3:
            return "entangled-unsteerable2-uncertified3";
        case StateClass::entangled_unsteerable2_steerable3:
            return "entangled-unsteerable2-steerable3";
        case StateClass::steerable2: return "steerable2";
    }
    return "?";
}

inline StateClass classify(const BellDiagonalState& s) {
    if (is_separable(s)) return StateClass::separable;
    if (steerable_by_two(s)) return StateClass::steerable2;
    if (steerable_by_three_sufficient(s))
        return StateClass::entangled_unsteerable2_steerable3;
    return StateClass::entangled_unsteerable2_uncertified3;
}

struct SteeringReport {
    Vec3 t{};
    std::array<double, 4> probabilities{};
    double concurrence = 0.0;
    double s = 0.0;
    double chsh = 0.0;
    double normalized_s = 0.0;
    double volume = 0.0;
    double frobenius = 0.0;
    double s3_lower = 0.0;
    std::optional<double> s3_estimate;
    StateClass cls = StateClass::separable;
};

inline SteeringReport report(const BellDiagonalState& state, bool with_s3_estimate = false,
                             std::uint64_t seed = 0, int s3_restarts = 32) {
    SteeringReport r;
    r.t = state.t();
    r.probabilities = state.probabilities();
    r.concurrence = concurrence(state);
    r.s = steering_measure_S(state);
    r.chsh = chsh_max(state);
    r.normalized_s = normalized_steering(state);
    r.volume = ellipsoid_volume(state);
    r.frobenius = frobenius_norm(state);
    r.s3_lower = s3_lower_bound(state);
    if (with_s3_estimate) r.s3_estimate = s3_estimate(state, s3_restarts, seed);
    r.cls = classify(state);
    return r;
}

// One uniform draw over the Bell-state probability simplex (flat Dirichlet),
// reproducible from (seed, index) independently of batching.
inline BellDiagonalState sample_state(std::uint64_t seed, std::uint64_t index) {
    auto g = make_rng(substream_seed(seed, index));
    std::array<double, 4> e;
    double sum = 0.0;
    for (double& v : e) {
        v = -std::log(1.0 - uniform01(g));
        sum += v;
    }
    return from_probabilities(e[0] / sum, e[1] / sum, e[2] / sum, e[3] / sum);
}

inline std::vector<BellDiagonalState> sample_states(std::uint64_t n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("sample_states: n must be >= 1");
    std::vector<BellDiagonalState> out;
    out.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) out.push_back(sample_state(seed, i));
    return out;
}

// ---- inequality verification ----------------------------------------------

struct BoundCheck {
    std::string name;
    long count = 0;               // samples the bound applied to
    double max_violation = -1e300;  // signed slack of lhs - rhs for lhs <= rhs
    Vec3 worst_t{};
};

struct SaturationCheck {
    std::string name;
    double max_deviation = 0.0;
    bool pass = false;
};

struct InequalityReport {
    std::vector<BoundCheck> bounds;
    std::vector<SaturationCheck> saturations;
    double threshold = 1e-9;

    bool pass() const {
        for (const auto& b : bounds)
            if (b.max_violation > threshold) return false;
        for (const auto& s : saturations)
            if (!s.pass) return false;
        return true;
    }
};

namespace detail {

struct BoundDef {
    const char* name;
    bool entangled_only;
    // signed violation: positive means the bound is broken
    double (*violation)(double c, double s, double v, double f);
};

inline const std::array<BoundDef, 10>& bound_defs() {
    static const std::array<BoundDef, 10> defs = {{
        {"eq12_lower: (2*sqrt2/3)(1+2C) <= S", true,
         [](double c, double s, double, double) {
             return 2.0 * std::sqrt(2.0) / 3.0 * (1.0 + 2.0 * c) - s;
         }},
        {"eq12_upper: S <= 2*sqrt(1+C^2)", false,
         [](double c, double s, double, double) {
             return s - 2.0 * std::sqrt(1.0 + c * c);
         }},
        {"eq13_lower: C^2 <= V", false,
         [](double c, double, double v, double) { return c * c - v; }},
        {"eq13_upper: V <= ((1+2C)/3)^3", false,
         [](double c, double, double v, double) {
             double b = (1.0 + 2.0 * c) / 3.0;
             return v - b * b * b;
         }},
        {"eq14_lower: 2*sqrt2*V^(1/3) <= S", false,
         [](double, double s, double v, double) {
             return 2.0 * std::sqrt(2.0) * std::cbrt(v) - s;
         }},
        {"eq14_upper: S <= 2*sqrt(1+V)", false,
         [](double, double s, double v, double) {
             return s - 2.0 * std::sqrt(1.0 + v);
         }},
        {"eq19_lower: (1+2C)/sqrt3 <= ||T||F", true,
         [](double c, double, double, double f) {
             return (1.0 + 2.0 * c) / std::sqrt(3.0) - f;
         }},
        {"eq19_upper: ||T||F <= sqrt(1+2C^2)", false,
         [](double c, double, double, double f) {
             return f - std::sqrt(1.0 + 2.0 * c * c);
         }},
        {"eq20_lower: sqrt3*V^(1/3) <= ||T||F", false,
         [](double, double, double v, double f) {
             return std::sqrt(3.0) * std::cbrt(v) - f;
         }},
        {"eq20_upper: ||T||F <= sqrt(1+2V)", false,
         [](double, double, double v, double f) {
             return f - std::sqrt(1.0 + 2.0 * v);
         }},
    }};
    return defs;
}

}  // namespace detail

inline InequalityReport verify_inequalities(std::uint64_t n, std::uint64_t seed,
                                            double threshold = 1e-9) {
    if (n < 1) throw std::invalid_argument("verify_inequalities: n must be >= 1");
    InequalityReport rep;
    rep.threshold = threshold;
    const auto& defs = detail::bound_defs();
    for (const auto& d : defs) rep.bounds.push_back({d.name});

    for (std::uint64_t i = 0; i < n; ++i) {
        BellDiagonalState st = sample_state(seed, i);
        double c = concurrence(st);
        double s = steering_measure_S(st);
        double v = ellipsoid_volume(st);
        double f = frobenius_norm(st);
        for (std::size_t k = 0; k < defs.size(); ++k) {
            if (defs[k].entangled_only && c <= 0.0) continue;
            double viol = defs[k].violation(c, s, v, f);
            ++rep.bounds[k].count;
            if (viol > rep.bounds[k].max_violation) {
                rep.bounds[k].max_violation = viol;
                rep.bounds[k].worst_t = st.t();
            }
        }
    }

    // Saturating families: Werner states meet the lower bounds (12 and 19 for
    // f >= 1/2; 14 and 20 everywhere) and the upper bound of 13; edge states
    // meet the upper bounds of 12, 14, 19, 20 and the lower bound of 13.
    auto add_sat = [&](const std::string& name,
                      const std::vector<double>& params,
                      const std::function<BellDiagonalState(double)>& make,
                      const std::function<double(double c, double s, double v, double f)>& dev) {
        SaturationCheck sc{name, 0.0, false};
        for (double p : params) {
            BellDiagonalState st = make(p);
            double d = std::abs(dev(concurrence(st), steering_measure_S(st),
                                    ellipsoid_volume(st), frobenius_norm(st)));
            sc.max_deviation = std::max(sc.max_deviation, d);
        }
        sc.pass = sc.max_deviation <= 1e-10;
        rep.saturations.push_back(sc);
    };

    std::vector<double> f_ent, f_all, p_edge;
    for (int i = 0; i <= 20; ++i) {
        f_all.push_back(i / 20.0);
        p_edge.push_back(0.5 + i / 40.0);
        if (i >= 10) f_ent.push_back(i / 20.0);
    }
    auto mk_werner = [](double f) { return werner(f); };
    auto mk_edge = [](double p) { return edge(p); };

    add_sat("werner saturates eq12 lower", f_ent, mk_werner,
            [](double c, double s, double, double) {
                return s - 2.0 * std::sqrt(2.0) / 3.0 * (1.0 + 2.0 * c);
            });
    add_sat("werner saturates eq13 upper", f_ent, mk_werner,
            [](double c, double, double v, double) {
                double b = (1.0 + 2.0 * c) / 3.0;
                return v - b * b * b;
            });
    add_sat("werner saturates eq14 lower", f_all, mk_werner,
            [](double, double s, double v, double) {
                return s - 2.0 * std::sqrt(2.0) * std::cbrt(v);
            });
    add_sat("werner saturates eq19 lower", f_ent, mk_werner,
            [](double c, double, double, double f) {
                return f - (1.0 + 2.0 * c) / std::sqrt(3.0);
            });
    add_sat("werner saturates eq20 lower", f_all, mk_werner,
            [](double, double, double v, double f) {
                return f - std::sqrt(3.0) * std::cbrt(v);
            });
    add_sat("edge saturates eq12 upper", p_edge, mk_edge,
            [](double c, double s, double, double) {
                return s - 2.0 * std::sqrt(1.0 + c * c);
            });
    add_sat("edge saturates eq13 lower", p_edge, mk_edge,
            [](double c, double, double v, double) { return v - c * c; });
    add_sat("edge saturates eq14 upper", p_edge, mk_edge,
            [](double, double s, double v, double) {
                return s - 2.0 * std::sqrt(1.0 + v);
            });
    add_sat("edge saturates eq19 upper", p_edge, mk_edge,
            [](double c, double, double, double f) {
                return f - std::sqrt(1.0 + 2.0 * c * c);
            });
    add_sat("edge saturates eq20 upper", p_edge, mk_edge,
            [](double, double, double v, double f) {
                return f - std::sqrt(1.0 + 2.0 * v);
            });
    return rep;
}

// ---- families, regions, thresholds ----------------------------------------

enum class Family { werner, edge };

inline std::vector<SteeringReport> sweep_family(Family family, double from, double to,
                                                double step) {
    if (!(step > 0.0)) throw std::invalid_argument("sweep_family: step must be positive");
    if (from < 0.0 || to > 1.0 || from > to)
        throw std::invalid_argument("sweep_family: range must lie within [0, 1]");
    std::vector<SteeringReport> out;
    for (int i = 0;; ++i) {
        double p = from + i * step;
        if (p > to + 1e-12) break;
        p = std::min(p, to);
        out.push_back(report(family == Family::werner ? werner(p) : edge(p)));
    }
    return out;
}

enum class Axis { t1, t2, t3 };

struct RegionCell {
    double a = 0.0;  // first free coordinate
    double b = 0.0;  // second free coordinate
    bool valid = false;
    StateClass cls = StateClass::separable;
};

struct RegionSlice {
    Axis axis = Axis::t3;
    double value = 0.0;
    int resolution = 0;
    std::vector<RegionCell> cells;  // row-major, resolution x resolution
};

inline RegionSlice region_slice(Axis axis, double value, int resolution) {
    if (std::abs(value) > 1.0)
        throw std::invalid_argument("region_slice: |value| must be <= 1");
    if (resolution < 16)
        throw std::invalid_argument("region_slice: resolution must be >= 16");
    RegionSlice out{axis, value, resolution, {}};
    out.cells.reserve(static_cast<std::size_t>(resolution) * resolution);
    for (int i = 0; i < resolution; ++i) {
        double a = -1.0 + 2.0 * (i + 0.5) / resolution;
        for (int j = 0; j < resolution; ++j) {
            double b = -1.0 + 2.0 * (j + 0.5) / resolution;
            Vec3 t;
            switch (axis) {
                case Axis::t1: t = {value, a, b}; break;
                case Axis::t2: t = {a, value, b}; break;
                case Axis::t3: t = {a, b, value}; break;
            }
            RegionCell cell{a, b, false, StateClass::separable};
            bool ok = true;
            for (int mu = 0; mu < 2 && ok; ++mu)
                for (int nu = 0; nu < 2 && ok; ++nu)
                    ok = 1.0 + bell_vertex(mu, nu).dot(t) >= -4.0 * kTolState;
            if (ok) {
                cell.valid = true;
                cell.cls = classify(from_t(t.x, t.y, t.z));
            }
            out.cells.push_back(cell);
        }
    }
    return out;
}

// Bisection of a monotone boolean predicate on [lo, hi]; pred(lo) = false and
// pred(hi) = true are assumed.
inline double bisect(const std::function<bool(double)>& pred, double lo, double hi,
                     double tol = 1e-9, int max_iter = 200) {
    for (int i = 0; i < max_iter && hi - lo > tol; ++i) {
        double mid = 0.5 * (lo + hi);
        (pred(mid) ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

struct WernerThresholds {
    double separability = 0.0;   // C > 0 above this f
    double three_cert = 0.0;     // ||T||F > 1 above this f
    double two_steer = 0.0;      // S > 2 above this f
};

inline WernerThresholds werner_thresholds(double tol = 1e-9) {
    WernerThresholds th;
    th.separability =
        bisect([](double f) { return concurrence(werner(f)) > 0.0; }, 0.25, 1.0, tol);
    th.three_cert = bisect(
        [](double f) { return frobenius_norm(werner(f)) > 1.0; }, 0.25, 1.0, tol);
    th.two_steer = bisect(
        [](double f) { return steering_measure_S(werner(f)) > 2.0; }, 0.25, 1.0, tol);
    return th;
}

// ---- serialization ---------------------------------------------------------

inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline constexpr const char* kCsvHeader =
    "index,t1,t2,t3,p00,p01,p10,p11,C,S,chsh,normS,V,frob,s3lb,s3est,class";

inline void write_csv_row(std::ostream& os, long index, const SteeringReport& r) {
    os << index << ',' << fmt17(r.t.x) << ',' << fmt17(r.t.y) << ',' << fmt17(r.t.z);
    for (double p : r.probabilities) os << ',' << fmt17(p);
    os << ',' << fmt17(r.concurrence) << ',' << fmt17(r.s) << ',' << fmt17(r.chsh)
       << ',' << fmt17(r.normalized_s) << ',' << fmt17(r.volume) << ','
       << fmt17(r.frobenius) << ',' << fmt17(r.s3_lower) << ',';
    if (r.s3_estimate) os << fmt17(*r.s3_estimate);
    os << ',' << to_string(r.cls) << '\n';
}

inline void write_csv(std::ostream& os, const std::vector<SteeringReport>& rows) {
    os << kCsvHeader << '\n';
    for (std::size_t i = 0; i < rows.size(); ++i)
        write_csv_row(os, static_cast<long>(i), rows[i]);
}

}  // namespace steerlab
