#pragma once

#include <string>

#include <json.hpp>

#include "atspfw/solver.hpp"

namespace atspfw::cli {

using Json = nlohmann::ordered_json;

inline const char *mode_name(AssignmentMode m) { return m == AssignmentMode::paper ? "paper" : "guaranteed"; }

inline std::string cycles_string(const std::vector<Cycle> &cs) {
    std::string out;
    for (const Cycle &c : cs) out += c.to_string();
    return out;
}

inline Json steps_json(const std::vector<AppliedStep> &steps) {
    Json out = Json::array();
    for (const AppliedStep &s : steps)
        out.push_back({{"applied_cycle", cycles_string(s.cycles)},
                       {"delta", s.delta},
                       {"value_after", s.value_after},
                       {"origin", s.origin}});
    return out;
}

inline Json found_json(const std::vector<FoundCycle> &cycles) {
    Json out = Json::array();
    for (const FoundCycle &f : cycles) out.push_back({{"cycle", f.cycle.to_string()}, {"value", f.value}});
    return out;
}

/// Report tree with a fixed field order. Timings are left out unless asked
/// for, so identical inputs give identical bytes.
inline Json report_json(const SolveReport &r, bool with_timings) {
    Json j;
    j["n"] = r.n;
    j["mode"] = mode_name(r.mode);
    j["seed"] = r.seed;
    j["initial"] = {{"tour", tour_sequence(r.initial).to_string()}, {"value", r.initial_value}};
    j["phase1"] = steps_json(r.phase1);
    j["phase2"] = {{"applied", steps_json(r.phase2)},
                   {"search_misses", r.phase2_misses},
                   {"sweep_cap_hit", r.phase2_sweep_cap_hit}};
    j["sigma_ap"] = {{"permutation", r.sigma_ap.to_string()}, {"value", r.sigma_ap_value}};

    const TourSearchState &p3 = r.phase3;
    Json patches = Json::array();
    for (const PatchStep &p : p3.karp.patches)
        patches.push_back({{"pair", Cycle({p.a, p.b}).to_string()}, {"delta", p.delta}});
    j["karp"] = {{"tour", tour_sequence(p3.karp.tour).to_string()}, {"value", p3.karp.value}, {"patches", patches}};
    j["upper_bound"] = {{"tour", tour_sequence(p3.upper_bound.tour).to_string()},
                        {"value", p3.upper_bound.value},
                        {"source", p3.upper_bound.source}};
    j["m0"] = p3.m0;

    Json rounds = Json::array();
    for (const EnumerationRound &rd : p3.rounds)
        rounds.push_back({{"bound", rd.bound},
                          {"cycles", found_json(rd.cycles)},
                          {"complete", rd.complete},
                          {"improvement", cycles_string(rd.improvement)},
                          {"value_after", rd.value_after}});
    j["step3a"] = {{"cycle_count", p3.found_cycles().size()}, {"cycles", found_json(p3.found_cycles())},
                   {"rounds", rounds}};
    j["final_tour"] = tour_sequence(p3.tour).to_string();
    j["final_value"] = p3.value;
    j["certificate"] = p3.certificate;

    if (r.oracle) {
        Json o;
        o["assignment_opt"] = r.oracle->assignment_opt;
        o["assignment_gap"] = r.oracle->assignment_gap;
        if (r.oracle->tsp_opt) {
            o["tsp_opt"] = *r.oracle->tsp_opt;
            o["tsp_gap"] = *r.oracle->tsp_gap;
        }
        j["oracle_comparison"] = o;
    }
    if (with_timings)
        j["timings_ms"] = {{"phase1", r.timings.phase1_ms},
                           {"phase2", r.timings.phase2_ms},
                           {"phase3", r.timings.phase3_ms}};
    return j;
}

namespace detail {

inline std::string scalar(const Json &v) {
    if (!v.is_string()) return v.dump();
    const auto &s = v.get_ref<const std::string &>();
    return s.empty() ? "\"\"" : s;
}

inline bool is_flat(const Json &v) { return !v.is_object() && !v.is_array(); }

inline void emit(const Json &node, const std::string &indent, std::string &out) {
    if (node.is_object()) {
        for (const auto &[key, value] : node.items()) {
            if (is_flat(value)) {
                out += indent + key + ": " + scalar(value) + "\n";
            } else if (value.empty()) {
                out += indent + key + (value.is_array() ? ": []\n" : ": {}\n");
            } else {
                out += indent + key + ":\n";
                emit(value, indent + "  ", out);
            }
        }
        return;
    }
    for (const Json &item : node) {
        if (is_flat(item)) {
            out += indent + "- " + scalar(item) + "\n";
            continue;
        }
        // first key shares the dash line
        std::string nested;
        emit(item, indent + "  ", nested);
        nested.replace(indent.size(), 2, "- ");
        out += nested;
    }
}

} // namespace detail

/// Indented key/value text, one field per line.
inline std::string to_text(const Json &tree) {
    std::string out;
    detail::emit(tree, "", out);
    return out;
}

} // namespace atspfw::cli
