#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "plumbcalc/families/tables.hpp"
#include "plumbcalc/plumbing/seifert.hpp"
#include "plumbcalc/rational.hpp"

namespace plumbcalc {

inline constexpr std::string_view kReportSchema = "plumbcalc.report/1";

struct Clause {
    std::string name;
    bool passed = false;
    bool conjecture = false;  // informational, never a failure
    std::string detail;
};

struct VerificationReport {
    std::string check;
    std::optional<FamilyId> family;
    std::int64_t n = 0;
    std::optional<BrieskornTriple> triple;
    std::optional<Rational> mubar_value;
    std::string e8_status;
    std::optional<Rational> d_value;
    std::string d_method;
    std::optional<Rational> bound_value;
    std::optional<std::int64_t> witness_i;
    std::optional<Rational> witness_contribution;
    std::optional<Rational> predicted_value;
    nlohmann::ordered_json extra = nlohmann::ordered_json::object();
    std::vector<Clause> clauses;

    Clause& add(std::string name, bool passed, std::string detail = {}) {
        clauses.push_back({std::move(name), passed, false, std::move(detail)});
        return clauses.back();
    }

    Clause& add_conjecture(std::string name, bool agrees, std::string detail = {}) {
        clauses.push_back({std::move(name), agrees, true, std::move(detail)});
        return clauses.back();
    }

    /// True when every clause that is not conjecture-tagged passed.
    bool passed() const {
        for (const auto& c : clauses) {
            if (!c.conjecture && !c.passed) {
                return false;
            }
        }
        return true;
    }

    std::vector<std::string> failed_clauses() const {
        std::vector<std::string> out;
        for (const auto& c : clauses) {
            if (!c.conjecture && !c.passed) {
                out.push_back(c.name);
            }
        }
        return out;
    }
};

inline nlohmann::ordered_json to_json(const VerificationReport& r) {
    using nlohmann::ordered_json;
    auto opt_rational = [](const std::optional<Rational>& v) -> ordered_json {
        return v ? ordered_json(to_string(*v)) : ordered_json(nullptr);
    };
    ordered_json j;
    j["schema"] = kReportSchema;
    j["check"] = r.check;
    j["family"] = r.family ? ordered_json(std::string(to_string(*r.family))) : ordered_json(nullptr);
    j["n"] = r.n;
    if (r.triple) {
        const auto v = r.triple->values();
        j["triple"] = {v[0], v[1], v[2]};
    } else {
        j["triple"] = nullptr;
    }
    j["mubar"] = opt_rational(r.mubar_value);
    j["e8_status"] = r.e8_status.empty() ? ordered_json(nullptr) : ordered_json(r.e8_status);
    j["d"] = opt_rational(r.d_value);
    j["d_method"] = r.d_method.empty() ? ordered_json(nullptr) : ordered_json(r.d_method);
    j["bound"] = opt_rational(r.bound_value);
    j["witness_i"] = r.witness_i ? ordered_json(*r.witness_i) : ordered_json(nullptr);
    j["witness_contribution"] = opt_rational(r.witness_contribution);
    j["predicted"] = opt_rational(r.predicted_value);
    j["extra"] = r.extra;
    ordered_json clauses = ordered_json::array();
    for (const auto& c : r.clauses) {
        clauses.push_back({{"name", c.name}, {"passed", c.passed}, {"conjecture", c.conjecture}, {"detail", c.detail}});
    }
    j["clauses"] = std::move(clauses);
    j["passed"] = r.passed();
    return j;
}

/// One report per line.
inline std::string to_jsonl(const std::vector<VerificationReport>& reports) {
    std::string out;
    for (const auto& r : reports) {
        out += to_json(r).dump();
        out += '\n';
    }
    return out;
}

}  // namespace plumbcalc
