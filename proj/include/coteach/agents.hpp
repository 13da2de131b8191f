#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "coteach/beliefs.hpp"
#include "coteach/errors.hpp"
#include "coteach/scenario.hpp"

namespace coteach {

struct StudentState {
    std::string id;
    int type_index = 0;
    BeliefVector belief;
};

// Per-episode teacher state: proxy belief for the group, the set O of features
// reported unobserved, and the shared asked-set A (student questions plus
// teacher suggestions).
struct TeacherEpisodeState {
    BeliefVector belief;
    std::set<int> unobserved;
    std::set<int> asked;
};

// Argmax of expected information gain over the unasked features; ties and the
// all-zero-gain case resolve to the lowest feature index.
inline int student_select_question(const StudentState& st, const std::set<int>& asked,
                                   const Scenario& s) {
    int best = -1;
    double best_gain = 0.0;
    for (int f = 0; f < s.num_features(); ++f) {
        if (asked.count(f)) continue;
        const double gain = student_expected_information_gain(st.belief, f, st.type_index, s);
        if (best < 0 || gain > best_gain) {
            best = f;
            best_gain = gain;
        }
    }
    if (best < 0) throw no_candidate("student_select_question: every feature already asked");
    return best;
}

inline StudentState student_incorporate(StudentState st, int feature, int v, const Scenario& s) {
    if (s.observes(st.type_index, feature)) st.belief = condition(st.belief, feature, v, s);
    return st;
}

// The teacher is truthful and has perfect knowledge.
inline int teacher_answer(int target, int feature, const Scenario& s) {
    return s.value(feature, target);
}

// Argmax of (optionally observability-weighted) realized information gain over
// features not reported unobserved. Returns nullopt when no candidate remains
// or every candidate scores <= 0 (stall signal; never selects a useless
// feature).
inline std::optional<int> teacher_select_suggestion(const TeacherEpisodeState& ts, int target,
                                                    const Scenario& s,
                                                    const std::vector<double>* weights = nullptr) {
    int best = -1;
    double best_score = 0.0;
    for (int f = 0; f < s.num_features(); ++f) {
        if (ts.unobserved.count(f)) continue;
        double score = teacher_information_gain(ts.belief, f, target, s);
        if (weights) score *= (*weights)[f];
        if (best < 0 || score > best_score) {
            best = f;
            best_score = score;
        }
    }
    if (best < 0 || best_score <= 0.0) return std::nullopt;
    return best;
}

// Applies the target student's observability disclosure: condition on the true
// value when observed, otherwise remember the feature as unobserved.
inline TeacherEpisodeState teacher_observe_report(TeacherEpisodeState ts, int feature,
                                                  bool observed, int target, const Scenario& s) {
    if (observed)
        ts.belief = condition(ts.belief, feature, s.value(feature, target), s);
    else
        ts.unobserved.insert(feature);
    return ts;
}

}  // namespace coteach
