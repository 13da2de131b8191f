#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <utility>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "coteach/errors.hpp"
#include "coteach/rng.hpp"

namespace coteach {

struct StudentType {
    std::string name;
    std::vector<std::uint8_t> observes;  // per feature, 1 = identifiable for this type
};

struct StudentRec {
    std::string id;
    int type_index = 0;
};

// The concept-learning world: concepts Y, binary features, typed students in
// three groups. Immutable after construction; safe to share across threads.
struct Scenario {
    std::vector<std::string> concepts;
    std::vector<std::string> features;
    std::vector<std::vector<std::uint8_t>> feature_table;  // [feature][concept]
    std::vector<StudentType> types;
    std::vector<std::vector<StudentRec>> groups;

    int num_concepts() const { return int(concepts.size()); }
    int num_features() const { return int(features.size()); }
    int num_groups() const { return int(groups.size()); }
    int value(int feature, int concept_idx) const { return feature_table[feature][concept_idx]; }
    bool observes(int type_index, int feature) const { return types[type_index].observes[feature] != 0; }
};

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
    std::string to_string() const {
        if (ok()) return "ok";
        std::string out;
        for (const auto& v : violations) {
            out += v;
            out += '\n';
        }
        return out;
    }
};

inline std::string student_id_for(int group, int index) {
    return "g" + std::to_string(group + 1) + "s" + std::to_string(index + 1);
}

inline ValidationReport validate_scenario(const Scenario& s) {
    ValidationReport rep;
    auto add = [&rep](std::string msg) { rep.violations.push_back(std::move(msg)); };

    const int ny = s.num_concepts();
    const int nf = s.num_features();
    if (ny < 2) add("concepts: expected at least 2, found " + std::to_string(ny));
    if (nf < 1) add("features: expected at least 1, found " + std::to_string(nf));

    {
        std::set<std::string> seen;
        for (const auto& c : s.concepts)
            if (!seen.insert(c).second) add("concepts: duplicate identifier '" + c + "'");
        seen.clear();
        for (const auto& f : s.features)
            if (!seen.insert(f).second) add("features: duplicate identifier '" + f + "'");
    }

    if (int(s.feature_table.size()) != nf) {
        add("feature_table: expected " + std::to_string(nf) + " rows, found " +
            std::to_string(s.feature_table.size()));
        return rep;  // shape is broken; later checks would index out of range
    }
    for (int f = 0; f < nf; ++f) {
        if (int(s.feature_table[f].size()) != ny) {
            add("feature_table[" + std::to_string(f) + "]: expected " + std::to_string(ny) +
                " entries, found " + std::to_string(s.feature_table[f].size()));
            return rep;
        }
        for (int y = 0; y < ny; ++y)
            if (s.feature_table[f][y] > 1)
                add("feature_table[" + std::to_string(f) + "][" + std::to_string(y) +
                    "]: expected 0 or 1, got " + std::to_string(int(s.feature_table[f][y])));
    }

    for (std::size_t t = 0; t < s.types.size(); ++t) {
        if (int(s.types[t].observes.size()) != nf) {
            add("types[" + std::to_string(t) + "]: mask has " +
                std::to_string(s.types[t].observes.size()) + " entries, expected " +
                std::to_string(nf));
            return rep;
        }
        for (int f = 0; f < nf; ++f)
            if (s.types[t].observes[f] > 1)
                add("types[" + std::to_string(t) + "] mask[" + std::to_string(f) +
                    "]: expected 0 or 1, got " + std::to_string(int(s.types[t].observes[f])));
    }
    if (s.types.empty()) add("types: expected at least 1, found 0");

    // Learnability: every pair of concepts distinguishable through every
    // type's observable features.
    for (int a = 0; a < ny; ++a) {
        for (int b = a + 1; b < ny; ++b) {
            std::vector<std::size_t> blind_types;
            for (std::size_t t = 0; t < s.types.size(); ++t) {
                bool distinguishable = false;
                for (int f = 0; f < nf && !distinguishable; ++f)
                    if (s.types[t].observes[f] && s.feature_table[f][a] != s.feature_table[f][b])
                        distinguishable = true;
                if (!distinguishable) blind_types.push_back(t);
            }
            if (blind_types.size() == s.types.size() && !s.types.empty()) {
                add("learnability: concepts " + s.concepts[a] + "," + s.concepts[b] +
                    " indistinguishable for every type");
            } else {
                for (std::size_t t : blind_types)
                    add("learnability: concepts " + s.concepts[a] + "," + s.concepts[b] +
                        " indistinguishable for type " + s.types[t].name);
            }
        }
    }

    if (s.num_groups() != 3)
        add("groups: expected 3, found " + std::to_string(s.num_groups()));
    for (int g = 0; g < s.num_groups(); ++g) {
        if (s.groups[g].empty()) add("groups: group " + std::to_string(g + 1) + " is empty");
        for (std::size_t i = 0; i < s.groups[g].size(); ++i) {
            int t = s.groups[g][i].type_index;
            if (t < 0 || t >= int(s.types.size()))
                add("groups: group " + std::to_string(g + 1) + " student " + std::to_string(i + 1) +
                    " has invalid type index " + std::to_string(t));
        }
    }
    return rep;
}

// The three-character toy world of the paper's illustration. Only Alex's
// traits are pinned there; Mary and John are fixed so the validator passes.
inline Scenario builtin_guesswho() {
    Scenario s;
    s.concepts = {"Alex", "Mary", "John"};
    s.features = {"Glasses", "BrownHair", "Hat"};
    //                      Alex Mary John
    s.feature_table = {{0, 1, 0},    // Glasses
                       {1, 0, 0},    // BrownHair
                       {0, 0, 1}};   // Hat
    s.types = {{"blue", {1, 0, 1}},     // cannot identify BrownHair
               {"orange", {1, 1, 0}}};  // cannot identify Hat
    const std::vector<std::vector<int>> comp = {
        {0, 0, 0, 1, 1}, {0, 0, 1, 1, 1}, {0, 1, 0, 1, 0}};
    s.groups.resize(3);
    for (int g = 0; g < 3; ++g)
        for (std::size_t i = 0; i < comp[g].size(); ++i)
            s.groups[g].push_back({student_id_for(g, int(i)), comp[g][i]});
    return s;
}

struct GenerationParams {
    int num_concepts = 0;
    int num_features = 0;
    int num_types = 0;
    int blind_features_per_type = 0;
    std::array<int, 3> group_sizes{};
    std::vector<std::vector<double>> group_type_mix;  // [group][type], sums to 1
    std::uint64_t seed = 0;
};

inline void check_generation_params(const GenerationParams& p) {
    if (p.num_concepts < 2) throw config_error("num_concepts: must be >= 2");
    if (p.num_features < 1) throw config_error("num_features: must be >= 1");
    if (p.num_types < 1) throw config_error("num_types: must be >= 1");
    if (p.blind_features_per_type < 0 || p.blind_features_per_type >= p.num_features)
        throw config_error("blind_features_per_type: must satisfy 0 <= b < num_features");
    for (int g = 0; g < 3; ++g)
        if (p.group_sizes[g] < 1) throw config_error("group_sizes: must be positive");
    if (int(p.group_type_mix.size()) != 3)
        throw config_error("group_type_mix: expected 3 entries");
    for (const auto& mix : p.group_type_mix) {
        if (int(mix.size()) != p.num_types)
            throw config_error("group_type_mix: each mix needs one fraction per type");
        double sum = 0.0;
        for (double x : mix) {
            if (x < 0.0) throw config_error("group_type_mix: fractions must be non-negative");
            sum += x;
        }
        if (std::abs(sum - 1.0) > 1e-9)
            throw config_error("group_type_mix: fractions must sum to 1");
    }
}

namespace detail {

// Largest-remainder rounding of size*frac per type; remainders tie-break on
// lowest type index.
inline std::vector<int> mix_counts(int size, const std::vector<double>& mix) {
    const int nt = int(mix.size());
    std::vector<int> counts(nt);
    std::vector<std::pair<double, int>> rem(nt);
    int assigned = 0;
    for (int t = 0; t < nt; ++t) {
        double exact = size * mix[t];
        counts[t] = int(std::floor(exact + 1e-12));
        rem[t] = {exact - counts[t], t};
        assigned += counts[t];
    }
    std::stable_sort(rem.begin(), rem.end(), [](const auto& a, const auto& b) {
        return a.first > b.first;
    });
    for (int k = 0; k < size - assigned; ++k) counts[rem[k % nt].second] += 1;
    return counts;
}

inline std::string padded_name(char prefix, int i, int width) {
    std::string digits = std::to_string(i);
    while (int(digits.size()) < width) digits.insert(digits.begin(), '0');
    return std::string(1, prefix) + digits;
}

}  // namespace detail

// Deterministic in the params (seed included). Rejection-samples the feature
// table until columns are pairwise distinct and every type can learn.
inline Scenario generate_scenario(const GenerationParams& p) {
    check_generation_params(p);
    constexpr int kRetryBudget = 10000;

    Rng rng(p.seed);
    Scenario s;
    const int ny = p.num_concepts;
    const int nf = p.num_features;
    const int name_w = int(std::to_string(std::max(ny, nf) - 1).size());
    for (int y = 0; y < ny; ++y) s.concepts.push_back(detail::padded_name('y', y, name_w));
    for (int f = 0; f < nf; ++f) s.features.push_back(detail::padded_name('f', f, name_w));

    // Blind sets: disjoint chunks of one shuffle when they fit, independent
    // draws otherwise.
    s.types.resize(p.num_types);
    const bool disjoint = p.num_types * p.blind_features_per_type <= nf;
    std::vector<int> pool(nf);
    for (int f = 0; f < nf; ++f) pool[f] = f;
    if (disjoint)
        for (int f = nf - 1; f > 0; --f) std::swap(pool[f], pool[rng.bounded(f + 1)]);
    for (int t = 0; t < p.num_types; ++t) {
        s.types[t].name = "t" + std::to_string(t);
        s.types[t].observes.assign(nf, 1);
        if (p.blind_features_per_type == 0) continue;
        if (disjoint) {
            for (int k = 0; k < p.blind_features_per_type; ++k)
                s.types[t].observes[pool[t * p.blind_features_per_type + k]] = 0;
        } else {
            std::vector<int> local = pool;
            for (int k = 0; k < p.blind_features_per_type; ++k) {
                int j = int(rng.bounded(local.size() - k)) + k;
                std::swap(local[k], local[j]);
                s.types[t].observes[local[k]] = 0;
            }
        }
    }

    auto table_ok = [&](const std::vector<std::vector<std::uint8_t>>& table) {
        for (int a = 0; a < ny; ++a) {
            for (int b = a + 1; b < ny; ++b) {
                bool full_distinct = false;
                for (int f = 0; f < nf && !full_distinct; ++f)
                    if (table[f][a] != table[f][b]) full_distinct = true;
                if (!full_distinct) return false;
                for (const auto& type : s.types) {
                    bool distinct = false;
                    for (int f = 0; f < nf && !distinct; ++f)
                        if (type.observes[f] && table[f][a] != table[f][b]) distinct = true;
                    if (!distinct) return false;
                }
            }
        }
        return true;
    };

    bool found = false;
    std::vector<std::vector<std::uint8_t>> table(nf, std::vector<std::uint8_t>(ny));
    for (int attempt = 0; attempt < kRetryBudget && !found; ++attempt) {
        for (int f = 0; f < nf; ++f)
            for (int y = 0; y < ny; ++y) table[f][y] = std::uint8_t(rng.bounded(2));
        found = table_ok(table);
    }
    if (!found)
        throw generation_exhausted(
            "generate_scenario: no learnable feature table within " +
            std::to_string(kRetryBudget) + " attempts (parameters likely infeasible)");
    s.feature_table = std::move(table);

    s.groups.resize(3);
    for (int g = 0; g < 3; ++g) {
        const auto counts = detail::mix_counts(p.group_sizes[g], p.group_type_mix[g]);
        int i = 0;
        for (int t = 0; t < p.num_types; ++t)
            for (int k = 0; k < counts[t]; ++k, ++i)
                s.groups[g].push_back({student_id_for(g, i), t});
    }
    return s;
}

// --- file format ------------------------------------------------------------

namespace detail {

inline void require_keys(const nlohmann::json& obj, std::initializer_list<const char*> required,
                         const std::string& where) {
    for (const char* key : required)
        if (!obj.contains(key)) throw parse_error(where + key + ": required");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* key : required)
            if (it.key() == key) known = true;
        if (!known) throw parse_error(where + "unknown key '" + it.key() + "'");
    }
}

}  // namespace detail

inline nlohmann::json scenario_to_json(const Scenario& s) {
    nlohmann::json j;
    j["concepts"] = s.concepts;
    j["features"] = s.features;
    nlohmann::json table = nlohmann::json::array();
    for (const auto& row : s.feature_table) {
        nlohmann::json r = nlohmann::json::array();
        for (auto v : row) r.push_back(int(v));
        table.push_back(std::move(r));
    }
    j["feature_table"] = std::move(table);
    nlohmann::json types = nlohmann::json::array();
    for (const auto& t : s.types) {
        nlohmann::json jt;
        jt["name"] = t.name;
        nlohmann::json blind = nlohmann::json::array();
        for (std::size_t f = 0; f < t.observes.size(); ++f)
            if (!t.observes[f]) blind.push_back(s.features[f]);
        jt["blind_features"] = std::move(blind);
        types.push_back(std::move(jt));
    }
    j["types"] = std::move(types);
    nlohmann::json groups = nlohmann::json::array();
    for (const auto& g : s.groups) {
        nlohmann::json jg = nlohmann::json::array();
        for (const auto& st : g) jg.push_back(s.types[st.type_index].name);
        groups.push_back(std::move(jg));
    }
    j["groups"] = std::move(groups);
    return j;
}

// Parses the documented schema; throws parse_error on syntax/schema problems.
// Does not validate invariants; see load_scenario.
inline Scenario scenario_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw parse_error("scenario: expected an object");
    detail::require_keys(j, {"concepts", "features", "feature_table", "types", "groups"}, "");

    Scenario s;
    if (!j["concepts"].is_array()) throw parse_error("concepts: expected array of strings");
    for (const auto& c : j["concepts"]) {
        if (!c.is_string()) throw parse_error("concepts: expected array of strings");
        s.concepts.push_back(c.get<std::string>());
    }
    if (!j["features"].is_array()) throw parse_error("features: expected array of strings");
    for (const auto& f : j["features"]) {
        if (!f.is_string()) throw parse_error("features: expected array of strings");
        s.features.push_back(f.get<std::string>());
    }

    const auto& table = j["feature_table"];
    if (!table.is_array()) throw parse_error("feature_table: expected array of arrays");
    for (std::size_t f = 0; f < table.size(); ++f) {
        if (!table[f].is_array())
            throw parse_error("feature_table[" + std::to_string(f) + "]: expected array");
        std::vector<std::uint8_t> row;
        for (std::size_t y = 0; y < table[f].size(); ++y) {
            const auto& cell = table[f][y];
            long long v = cell.is_number_integer() ? cell.get<long long>() : -1;
            if (v != 0 && v != 1)
                throw parse_error("feature_table[" + std::to_string(f) + "][" +
                                  std::to_string(y) + "]: expected 0 or 1, got " + cell.dump());
            row.push_back(std::uint8_t(v));
        }
        s.feature_table.push_back(std::move(row));
    }

    if (!j["types"].is_array()) throw parse_error("types: expected array of objects");
    for (std::size_t t = 0; t < j["types"].size(); ++t) {
        const auto& jt = j["types"][t];
        const std::string where = "types[" + std::to_string(t) + "].";
        if (!jt.is_object()) throw parse_error("types[" + std::to_string(t) + "]: expected object");
        detail::require_keys(jt, {"name", "blind_features"}, where);
        StudentType type;
        if (!jt["name"].is_string()) throw parse_error(where + "name: expected string");
        type.name = jt["name"].get<std::string>();
        type.observes.assign(s.features.size(), 1);
        if (!jt["blind_features"].is_array())
            throw parse_error(where + "blind_features: expected array of feature names");
        for (const auto& bf : jt["blind_features"]) {
            if (!bf.is_string())
                throw parse_error(where + "blind_features: expected array of feature names");
            auto it = std::find(s.features.begin(), s.features.end(), bf.get<std::string>());
            if (it == s.features.end())
                throw parse_error(where + "blind_features: unknown feature '" +
                                  bf.get<std::string>() + "'");
            type.observes[it - s.features.begin()] = 0;
        }
        s.types.push_back(std::move(type));
    }

    if (!j["groups"].is_array()) throw parse_error("groups: expected array of arrays");
    for (std::size_t g = 0; g < j["groups"].size(); ++g) {
        const auto& jg = j["groups"][g];
        if (!jg.is_array())
            throw parse_error("groups[" + std::to_string(g) + "]: expected array of type names");
        std::vector<StudentRec> group;
        for (std::size_t i = 0; i < jg.size(); ++i) {
            if (!jg[i].is_string())
                throw parse_error("groups[" + std::to_string(g) + "][" + std::to_string(i) +
                                  "]: expected type name");
            const std::string name = jg[i].get<std::string>();
            int idx = -1;
            for (std::size_t t = 0; t < s.types.size(); ++t)
                if (s.types[t].name == name) idx = int(t);
            if (idx < 0)
                throw parse_error("groups[" + std::to_string(g) + "][" + std::to_string(i) +
                                  "]: unknown type '" + name + "'");
            group.push_back({student_id_for(int(g), int(i)), idx});
        }
        s.groups.push_back(std::move(group));
    }
    return s;
}

inline void save_scenario(const Scenario& s, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw sim_error("cannot write " + path.string());
    out << scenario_to_json(s).dump(2) << '\n';
}

// Parse + schema-check only; invariants are the caller's business.
inline Scenario parse_scenario_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot read " + path.string());
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error(path.string() + ": " + e.what());
    }
    return scenario_from_json(j);
}

// Full load: parse, then reject scenarios violating invariants.
inline Scenario load_scenario(const std::filesystem::path& path) {
    Scenario s = parse_scenario_file(path);
    ValidationReport rep = validate_scenario(s);
    if (!rep.ok())
        throw validation_error(path.string() + ": scenario violates invariants:\n" + rep.to_string(),
                               rep.violations);
    return s;
}

inline bool scenario_equal(const Scenario& a, const Scenario& b) {
    if (a.concepts != b.concepts || a.features != b.features ||
        a.feature_table != b.feature_table)
        return false;
    if (a.types.size() != b.types.size()) return false;
    for (std::size_t t = 0; t < a.types.size(); ++t)
        if (a.types[t].name != b.types[t].name || a.types[t].observes != b.types[t].observes)
            return false;
    if (a.groups.size() != b.groups.size()) return false;
    for (std::size_t g = 0; g < a.groups.size(); ++g) {
        if (a.groups[g].size() != b.groups[g].size()) return false;
        for (std::size_t i = 0; i < a.groups[g].size(); ++i)
            if (a.groups[g][i].id != b.groups[g][i].id ||
                a.groups[g][i].type_index != b.groups[g][i].type_index)
                return false;
    }
    return true;
}

}  // namespace coteach
