#include "hillgap/weights.hpp"
#include "hillgap/errors.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace hillgap {

Weight::Weight(WeightKind kind, int range, std::function<double(int)> closed_form,
               std::function<double(int)> omega)
    : kind_(kind), range_(range), closed_form_(std::move(closed_form)),
      omega_fn_(std::move(omega)) {
    table_.resize(range_ + 1);
    table_[0] = 1.0;
    for (int k = 1; k <= range_; ++k) {
        double v = closed_form_(k);
        if (!(v > 0.0) || !std::isfinite(v))
            throw InvalidParams("weight: nonpositive value at k = " + std::to_string(k));
        table_[k] = v;
    }
}

double Weight::operator()(int k) const {
    int a = std::abs(k);
    if (a == 0) return 1.0;
    if (a <= range_) return table_[a];
    if (closed_form_) return closed_form_(a);
    throw InvalidParams("weight: index beyond memoized range");
}

double Weight::omega(int k) const {
    if (!omega_fn_) return 0.0;
    return omega_fn_(std::abs(k));
}

Weight make_weight_power(double a, int range) {
    if (a < -1.0) throw InvalidParams("power weight: exponent must be >= -1");
    return Weight(WeightKind::Power, range,
                  [a](int k) { return std::pow((double)k, a); });
}

Weight make_weight_gevrey(double s, double c, double b, int range) {
    if (!(b > 0.0 && b < 1.0)) throw InvalidParams("gevrey weight: b must be in (0,1)");
    if (!(c > 0.0)) throw InvalidParams("gevrey weight: c must be > 0");
    return Weight(WeightKind::Gevrey, range, [s, c, b](int k) {
        return std::pow((double)k, s) * std::exp(c * std::pow((double)k, b));
    });
}

Weight make_weight_ratio(std::function<double(int)> omega, int range) {
    if (!omega) throw InvalidParams("ratio_form weight: omega required");
    if (!submultiplicative_on_range(omega, std::min(range, 64)))
        throw InvalidParams("ratio_form weight: omega fails the submultiplicativity check");
    auto om = omega;
    return Weight(WeightKind::RatioForm, range,
                  [om](int k) { return om(k) / (double)k; }, om);
}

double weighted_seq_norm(const std::map<int, cx>& x, const Weight& w) {
    double s = 0;
    for (const auto& [k, v] : x) s += std::norm(v) * w(k) * w(k);
    return std::sqrt(s);
}

double weighted_seq_norm(const std::vector<cx>& x, const Weight& w) {
    double s = 0;
    for (int k = 1; k <= (int)x.size(); ++k) s += std::norm(x[k - 1]) * w(k) * w(k);
    return std::sqrt(s);
}

bool submultiplicative_on_range(const std::function<double(int)>& omega, int range, double tol) {
    for (int m = 0; m <= range; ++m)
        for (int n = 0; n <= range; ++n)
            if (omega(m + n) > omega(m) * omega(n) * (1.0 + tol)) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Oscillating weight (concave sandwich construction)
// ---------------------------------------------------------------------------

OscillatingWeight construct_oscillating_weight(const std::function<double(double)>& a_fn,
                                               const std::function<double(double)>& b_fn,
                                               int range) {
    if (range < 8) throw InvalidParams("oscillating weight: range too small");
    const double grid = 0.01;
    const double xmax = (double)range;
    auto d1 = [&](const std::function<double(double)>& f, double x) {
        double h = 1e-5 * (1.0 + x);
        return (f(x + h) - f(x - h)) / (2 * h);
    };

    // hypothesis sampling: monotone increasing, concave, a < b beyond 0
    for (int k = 1; k <= range; ++k) {
        double x = (double)k;
        if (!(a_fn(x) <= b_fn(x) + 1e-12))
            throw HypothesisViolation("oscillating weight: a > b at x = " + std::to_string(k));
        if (d1(a_fn, x) < -1e-12 || d1(b_fn, x) < -1e-12)
            throw HypothesisViolation("oscillating weight: decreasing bound at x = " + std::to_string(k));
        if (k >= 2) {
            double ca = a_fn(x) - 2 * a_fn(x - 1) + a_fn(x - 2);
            double cb = b_fn(x) - 2 * b_fn(x - 1) + b_fn(x - 2);
            if (ca > 1e-9 || cb > 1e-9)
                throw HypothesisViolation("oscillating weight: convex bound near x = " + std::to_string(k));
        }
    }

    // degenerate sandwich: a == b forces g = a, no breakpoints
    double gapmax = 0;
    for (int k = 0; k <= range; ++k)
        gapmax = std::max(gapmax, std::abs(b_fn((double)k) - a_fn((double)k)));
    if (gapmax < 1e-12) {
        auto g = [a_fn](double x) { return a_fn(x); };
        Weight w(WeightKind::Oscillating, range,
                 [g](int k) { return std::exp(g((double)k)) / (double)k; });
        return {std::move(w), {}, g};
    }

    // c1: first grid point where both slopes <= 1/2 and b - a >= 1
    double c1 = -1;
    for (double x = grid; x <= xmax; x += grid) {
        if (d1(a_fn, x) <= 0.5 && d1(b_fn, x) <= 0.5 && b_fn(x) - a_fn(x) >= 1.0) {
            c1 = x;
            break;
        }
    }
    if (c1 < 0)
        throw HypothesisViolation("oscillating weight: no admissible c1 within range");

    struct Piece { double x0, x1, slope, g0; };
    std::vector<Piece> pieces;
    std::vector<double> breaks{c1};
    double c = c1, gc = b_fn(c1);

    while (true) {
        // slope m_p by bisection: smallest slope keeping the line above a on [c, xmax]
        auto line_ok = [&](double m) {
            for (double x = c; x <= xmax; x += grid)
                if (gc + m * (x - c) < a_fn(x) - 1e-13) return false;
            return true;
        };
        double lo = 0.0, hi = 1.0;
        while (!line_ok(hi)) hi *= 2;
        while (hi - lo > 1e-10) {
            double mid = 0.5 * (lo + hi);
            if (line_ok(mid)) hi = mid; else lo = mid;
        }
        double m = hi;

        // tangency point c_{2p} = argmin(line - a), then crossing with b
        double c2 = c, best = 1e300;
        double c3 = -1;
        for (double x = c; x <= xmax; x += grid) {
            double diff = gc + m * (x - c) - a_fn(x);
            if (diff < best) { best = diff; c2 = x; }
        }
        for (double x = c2; x <= xmax; x += grid) {
            if (gc + m * (x - c) >= b_fn(x)) { c3 = x; break; }
        }
        if (c3 < 0) {
            breaks.push_back(c2);
            pieces.push_back({c, xmax, m, gc});
            break;
        }
        breaks.push_back(c2);
        breaks.push_back(c3);
        pieces.push_back({c, c3, m, gc});
        gc = gc + m * (c3 - c);
        c = c3;
    }

    auto pieces_cp = pieces;
    auto g = [a_fn, b_fn, c1, pieces_cp](double x) {
        if (x <= c1) return b_fn(x);
        for (const auto& p : pieces_cp)
            if (x <= p.x1) return p.g0 + p.slope * (x - p.x0);
        const auto& last = pieces_cp.back();
        return last.g0 + last.slope * (x - last.x0);
    };

    // verify the sandwich on the integer grid before handing the weight out
    for (int k = 1; k <= range; ++k) {
        double gv = g((double)k);
        if (gv < a_fn((double)k) - 1e-9 || gv > b_fn((double)k) + 1e-9)
            throw HypothesisViolation("oscillating weight: sandwich failed at k = " + std::to_string(k));
    }

    Weight w(WeightKind::Oscillating, range,
             [g](int k) { return std::exp(g((double)k)) / (double)k; });
    return {std::move(w), std::move(breaks), g};
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

Weight weight_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("weight config: ") + e.what());
    }
    std::string kind = j.at("kind").get<std::string>();
    int range = j.value("range", 512);
    if (kind == "power") return make_weight_power(j.value("a", 0.0), range);
    if (kind == "gevrey")
        return make_weight_gevrey(j.value("s", 0.0), j.value("c", 1.0), j.value("b", 0.5), range);
    if (kind == "ratio_form") {
        std::string om = j.value("omega", "one");
        if (om == "one") return make_weight_ratio([](int) { return 1.0; }, range);
        if (om == "exp_sqrt") {
            double cc = j.value("c", 1.0);
            return make_weight_ratio(
                [cc](int k) { return std::exp(cc * std::sqrt((double)k)); }, range);
        }
        throw ConfigError("weight config: unknown omega preset " + om);
    }
    if (kind == "oscillating") {
        std::string preset = j.value("preset", "example1");
        const double e = std::exp(1.0);
        if (preset == "example1") {
            double alpha = j.value("alpha", 0.0), beta = j.value("beta", 1.0);
            auto a = [alpha, e](double x) { return (alpha + 1) * std::log(x + e); };
            auto b = [beta, e](double x) { return (beta + 1) * std::log(x + e); };
            return construct_oscillating_weight(a, b, range).weight;
        }
        if (preset == "example2") {
            auto a = [e](double x) { return std::log(std::log(x + e)); };
            auto b = [e](double x) { return x / std::log(x + e); };
            return construct_oscillating_weight(a, b, range).weight;
        }
        throw ConfigError("weight config: unknown oscillating preset " + preset);
    }
    throw ConfigError("weight config: unknown kind " + kind);
}

Weight weight_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open weight config: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return weight_from_json(ss.str());
}

} // namespace hillgap
