#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "coteach/errors.hpp"
#include "coteach/scenario.hpp"

namespace coteach {

inline constexpr double kProbTol = 1e-9;

// Probability vector over concepts. Everything the engine produces is uniform
// over its support: beliefs start uniform and conditioning preserves that.
struct BeliefVector {
    std::vector<double> p;

    int size() const { return int(p.size()); }
    double operator[](int i) const { return p[i]; }

    int support_size() const {
        int n = 0;
        for (double x : p)
            if (x > 0.0) ++n;
        return n;
    }
};

inline BeliefVector uniform_belief(int n) {
    if (n < 1) throw std::invalid_argument("uniform_belief: n must be >= 1");
    return BeliefVector{std::vector<double>(n, 1.0 / n)};
}

inline bool is_valid(const BeliefVector& b) {
    if (b.p.empty()) return false;
    double sum = 0.0;
    bool any = false;
    for (double x : b.p) {
        if (x < 0.0) return false;
        if (x > 0.0) any = true;
        sum += x;
    }
    return any && std::abs(sum - 1.0) <= kProbTol;
}

// H(p) in nats, with the 0*ln 0 := 0 convention.
inline double entropy(const BeliefVector& b) {
    double h = 0.0;
    for (double x : b.p)
        if (x > 0.0) h -= x * std::log(x);
    return h < 0.0 ? 0.0 : h;
}

// Zero out entries inconsistent with feature = v, renormalize. Returns the
// input unchanged when nothing is zeroed, so conditioning is idempotent.
inline BeliefVector condition(const BeliefVector& b, int feature, int v, const Scenario& s) {
    double kept = 0.0, removed = 0.0;
    for (int y = 0; y < b.size(); ++y) {
        if (s.value(feature, y) == v)
            kept += b.p[y];
        else
            removed += b.p[y];
    }
    if (kept <= 0.0)
        throw inconsistent_answer("condition: answer " + s.features[feature] + "=" +
                                  std::to_string(v) + " empties the belief support");
    if (removed == 0.0) return b;
    BeliefVector out{std::vector<double>(b.p.size(), 0.0)};
    for (int y = 0; y < b.size(); ++y)
        if (s.value(feature, y) == v) out.p[y] = b.p[y] / kept;
    return out;
}

// True iff the support is exactly the target (mass within tolerance of 1).
inline bool is_learned(const BeliefVector& b, int target) {
    return b.p[target] >= 1.0 - kProbTol;
}

// Realized gain for a teacher who knows the target: H(p) - H(p | feature = its
// true value). Non-negative on uniform-over-support beliefs.
inline double teacher_information_gain(const BeliefVector& b, int feature, int target,
                                       const Scenario& s) {
    return entropy(b) - entropy(condition(b, feature, s.value(feature, target), s));
}

// Expected gain from the asking student's perspective; exactly 0 for features
// the student's type cannot observe.
inline double student_expected_information_gain(const BeliefVector& b, int feature, int type_index,
                                                const Scenario& s) {
    if (!s.observes(type_index, feature)) return 0.0;
    double mass[2] = {0.0, 0.0};
    for (int y = 0; y < b.size(); ++y) mass[s.value(feature, y)] += b.p[y];
    double expected = 0.0;
    for (int v = 0; v < 2; ++v) {
        if (mass[v] <= 0.0) continue;
        double h = 0.0;
        for (int y = 0; y < b.size(); ++y) {
            if (s.value(feature, y) != v || b.p[y] <= 0.0) continue;
            const double q = b.p[y] / mass[v];
            h -= q * std::log(q);
        }
        expected += mass[v] * h;
    }
    const double gain = entropy(b) - expected;
    return gain > 0.0 ? gain : 0.0;
}

}  // namespace coteach
