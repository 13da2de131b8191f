#pragma once

#include <ostream>
#include <vector>

#include "coteach/rng.hpp"
#include "coteach/scenario.hpp"

namespace coteach {

struct ObservabilityReport {
    int feature = 0;
    bool observed = false;
};

// Per (group, feature) Beta(alpha, beta) posterior over the probability that a
// student of the group observes the feature. Counts only ever accumulate onto
// the Beta(1,1) prior, so alpha + beta - 2 equals the number of reports.
struct ObservabilityBelief {
    int num_groups = 0;
    int num_features = 0;
    std::vector<double> alpha;
    std::vector<double> beta;

    double a(int g, int f) const { return alpha[g * num_features + f]; }
    double b(int g, int f) const { return beta[g * num_features + f]; }
};

inline ObservabilityBelief init_observability_beliefs(const Scenario& s) {
    ObservabilityBelief ob;
    ob.num_groups = s.num_groups();
    ob.num_features = s.num_features();
    ob.alpha.assign(std::size_t(ob.num_groups) * ob.num_features, 1.0);
    ob.beta.assign(std::size_t(ob.num_groups) * ob.num_features, 1.0);
    return ob;
}

// One independent Beta draw per feature; the engine calls this once per
// episode and holds the vector fixed throughout.
inline std::vector<double> thompson_sample(const ObservabilityBelief& ob, int g, Rng& rng) {
    std::vector<double> theta(ob.num_features);
    for (int f = 0; f < ob.num_features; ++f) theta[f] = rng.beta(ob.a(g, f), ob.b(g, f));
    return theta;
}

inline ObservabilityBelief record_reports(ObservabilityBelief ob, int g,
                                          const std::vector<ObservabilityReport>& reports) {
    for (const auto& r : reports) {
        if (r.observed)
            ob.alpha[g * ob.num_features + r.feature] += 1.0;
        else
            ob.beta[g * ob.num_features + r.feature] += 1.0;
    }
    return ob;
}

inline double posterior_mean(const ObservabilityBelief& ob, int g, int f) {
    return ob.a(g, f) / (ob.a(g, f) + ob.b(g, f));
}

inline std::vector<double> posterior_means(const ObservabilityBelief& ob, int g) {
    std::vector<double> theta(ob.num_features);
    for (int f = 0; f < ob.num_features; ++f) theta[f] = posterior_mean(ob, g, f);
    return theta;
}

// Diagnostic dump: group,feature,alpha,beta,posterior_mean.
inline void dump_observability_csv(const ObservabilityBelief& ob, const Scenario& s,
                                   std::ostream& out) {
    out << "group,feature,alpha,beta,posterior_mean\n";
    for (int g = 0; g < ob.num_groups; ++g)
        for (int f = 0; f < ob.num_features; ++f)
            out << (g + 1) << ',' << s.features[f] << ',' << ob.a(g, f) << ',' << ob.b(g, f) << ','
                << posterior_mean(ob, g, f) << '\n';
}

}  // namespace coteach
