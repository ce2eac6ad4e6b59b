#include "quasibell/problem_json.hpp"

#include <algorithm>

#include <json.hpp>

namespace quasibell {

using nlohmann::json;

namespace {

[[noreturn]] void schema_fail(const std::string& what) { throw SchemaError(what); }

const json& member(const json& obj, const char* key, const std::string& where) {
    const auto it = obj.find(key);
    if (it == obj.end()) schema_fail(where + ": missing \"" + key + "\"");
    return *it;
}

Rational parse_probability(const json& value, const std::string& where) {
    if (value.is_string()) {
        try {
            return Rational::parse(value.get<std::string>());
        } catch (const std::invalid_argument& e) {
            schema_fail(where + ": " + e.what());
        }
    }
    if (value.is_number_integer()) return Rational(value.get<long>());
    schema_fail(where + ": probabilities must be decimal or \"p/q\" strings");
}

}  // namespace

MarginalProblem parse_problem_document(std::string_view text, std::size_t joint_cap) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        schema_fail(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) schema_fail("document must be a JSON object");

    for (const auto& [key, _] : doc.items()) {
        if (key != "schema" && key != "observables" && key != "marginals" && key != "description") {
            schema_fail("unknown top-level key \"" + key + "\"");
        }
    }
    const json& schema = member(doc, "schema", "document");
    if (!schema.is_number_integer() || schema.get<long>() != kProblemSchemaVersion) {
        schema_fail("unsupported \"schema\" (expected " + std::to_string(kProblemSchemaVersion) + ")");
    }

    const json& obs = member(doc, "observables", "document");
    if (!obs.is_array() || obs.empty()) schema_fail("\"observables\" must be a non-empty array");
    std::vector<Observable> observables;
    for (std::size_t i = 0; i < obs.size(); ++i) {
        const std::string where = "observables[" + std::to_string(i) + "]";
        if (!obs[i].is_object()) schema_fail(where + " must be an object");
        const json& name = member(obs[i], "name", where);
        const json& card = member(obs[i], "cardinality", where);
        if (!name.is_string()) schema_fail(where + ".name must be a string");
        if (!card.is_number_integer() || card.get<long>() < 2) {
            schema_fail(where + ".cardinality must be an integer >= 2");
        }
        observables.push_back({name.get<std::string>(), card.get<std::size_t>()});
    }

    const json& marg = member(doc, "marginals", "document");
    if (!marg.is_array()) schema_fail("\"marginals\" must be an array");
    std::vector<MarginalTable> tables;
    for (std::size_t k = 0; k < marg.size(); ++k) {
        const std::string where = "marginals[" + std::to_string(k) + "]";
        if (!marg[k].is_object()) schema_fail(where + " must be an object");
        const json& over = member(marg[k], "over", where);
        const json& table = member(marg[k], "table", where);
        if (!over.is_array() || over.empty()) schema_fail(where + ".over must be a non-empty array of names");
        if (!table.is_array()) schema_fail(where + ".table must be an array");

        MarginalTable t;
        for (const auto& name : over) {
            if (!name.is_string()) schema_fail(where + ".over must contain names");
            const auto n = name.get<std::string>();
            const auto it = std::find_if(observables.begin(), observables.end(),
                                         [&](const Observable& o) { return o.name == n; });
            if (it == observables.end()) schema_fail(where + ": unknown observable \"" + n + "\"");
            t.over.push_back(static_cast<std::size_t>(it - observables.begin()));
        }
        for (std::size_t e = 0; e < table.size(); ++e) {
            t.table.push_back(parse_probability(table[e], where + ".table[" + std::to_string(e) + "]"));
        }
        tables.push_back(std::move(t));
    }

    try {
        return MarginalProblem(std::move(observables), std::move(tables), joint_cap);
    } catch (const JointSizeError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        schema_fail(e.what());
    }
}

std::string problem_document(const MarginalProblem& problem, std::string_view description) {
    json doc;
    doc["schema"] = kProblemSchemaVersion;
    if (!description.empty()) doc["description"] = std::string(description);
    doc["observables"] = json::array();
    for (const auto& o : problem.observables()) {
        doc["observables"].push_back({{"name", o.name}, {"cardinality", o.cardinality}});
    }
    doc["marginals"] = json::array();
    for (const auto& m : problem.marginals()) {
        json over = json::array();
        for (auto i : m.over) over.push_back(problem.observables()[i].name);
        json table = json::array();
        for (const auto& p : m.table) table.push_back(p.to_string());
        doc["marginals"].push_back({{"over", over}, {"table", table}});
    }
    return doc.dump(2);
}

std::string solution_document(const MarginalProblem& problem, const FeasibilityResult& result) {
    json doc;
    doc["status"] = std::string(verdict_name(result.status));
    doc["homogeneous_dim"] = result.homogeneous_dim;
    doc["joint_size"] = problem.joint_size();
    json names = json::array();
    for (const auto& o : problem.observables()) names.push_back(o.name);
    doc["observables"] = names;
    if (result.witness) {
        const auto cards = problem.cardinalities();
        json witness = json::array();
        for (std::size_t j = 0; j < result.witness->size(); ++j) {
            witness.push_back({{"outcome", joint_outcome(j, cards)}, {"probability", (*result.witness)[j].to_string()}});
        }
        doc["witness"] = witness;
    } else {
        doc["witness"] = nullptr;
    }
    return doc.dump(2);
}

}  // namespace quasibell
