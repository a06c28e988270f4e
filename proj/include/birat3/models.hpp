#pragma once

#include "birat3/expr.hpp"
#include "birat3/poly.hpp"
#include "birat3/qlattice.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace birat3 {

inline const std::vector<std::string> kKnownClasses = {"smooth", "quotient", "cA/r",  "cAx/4", "cAx/2",     "cD",
                                                       "cD/3",   "cD/2",     "cE",    "cE/2",  "cDV-other"};

struct SingularityModel {
    QuotientAction ambient;
    std::vector<std::string> vars;
    std::vector<Poly> equations;
    std::string declared_class = "smooth";
    std::map<std::string, Rat> params;

    std::size_t n() const { return vars.size(); }
    bool is_quotient_point() const { return equations.empty(); }
    // byte-stable description used for memo keys and golden output
    std::string key() const;
    std::string str() const;
    bool operator==(const SingularityModel& o) const { return key() == o.key() && declared_class == o.declared_class; }
};

SingularityModel make_model(const QuotientAction& g, std::vector<std::string> vars, const std::vector<std::string>& eqs,
                            std::string cls, std::map<std::string, Rat> params = {});

// index of K near the distinguished point
std::int64_t cartier_index(const SingularityModel& m);

// Input errors located by a JSON pointer into the offending document.
struct SchemaError : std::invalid_argument {
    std::string pointer;
    SchemaError(const std::string& ptr, const std::string& msg)
        : std::invalid_argument(ptr + ": " + msg), pointer(ptr) {}
};

// integers as numbers, other rationals as "p/q"
nlohmann::json rat_json(const Rat& v);
nlohmann::json model_to_json(const SingularityModel& m);
SingularityModel model_from_json(const nlohmann::json& j, const std::string& pointer = "");

struct ValidationReport {
    bool valid = true;
    std::vector<std::string> failures;
    std::vector<std::string> notes;

    void fail(const std::string& why) {
        valid = false;
        failures.push_back(why);
    }
};

struct UnknownClass : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

ValidationReport validate_normal_form(const SingularityModel& m);

// ---------------------------------------------------------------------------
// Classification registry

struct ParamSpec {
    std::string name;
    std::string lo, hi;  // sweep range, inclusive
    std::string value;   // derived parameter when nonempty
};

struct SlotSpec {
    std::string name;
    std::size_t equation = 0;
    std::string kind;    // "geq" (every term of weight >= w) or "homog" (weight exactly w)
    std::string weight;  // expression
    std::vector<std::string> vars;
    std::string multiplier = "1";  // template; empty for slots spliced into the equation text as [name]
    std::string sample;            // template used by the sweep; empty means pick a monomial
};

struct TableEntry {
    std::string id;
    int table = 0;
    std::string type;
    std::vector<std::string> vars;
    std::string action_r = "1";
    std::vector<std::string> action_a;
    std::string weight_r = "1";
    std::vector<std::string> weight_b;
    std::string discrepancy;
    std::vector<std::string> equations;
    std::vector<SlotSpec> slots;
    std::vector<std::string> conditions;  // "attest: text" is recorded, not evaluated
    std::vector<std::string> domain;      // well-formedness of a sweep binding
    std::vector<ParamSpec> sweep;

    bool operator==(const TableEntry& o) const;
};

const std::vector<TableEntry>& table_registry();
const TableEntry& table_lookup(const std::string& id);  // std::out_of_range when absent
// Table 1 class of the singular point a row contracts to
std::string entry_class(const TableEntry& e);

nlohmann::json entry_to_json(const TableEntry& e);
TableEntry entry_from_json(const nlohmann::json& j);

struct Bindings {
    std::map<std::string, Rat> params;
    std::map<std::string, std::string> slots;
};

enum class CondStatus { Holds, Fails, Attested };

struct ConditionResult {
    std::string text;
    CondStatus status = CondStatus::Holds;
};

struct TableCheckReport {
    bool passed = true;
    std::vector<std::string> failures;
    std::vector<ConditionResult> conditions;
    std::map<std::string, Rat> params;
    std::map<std::string, Poly> slots;
    std::optional<Rat> computed_discrepancy;
    std::optional<Rat> expected_discrepancy;

    void fail(const std::string& why) {
        passed = false;
        failures.push_back(why);
    }
};

TableCheckReport validate_table_entry(const SingularityModel& m, const TableEntry& e, const WeightVector& w,
                                      const Bindings& b);

struct Instance {
    std::map<std::string, Rat> params;
    std::map<std::string, Poly> slots;
    SingularityModel model;
    WeightVector weight;
};

using ParamMap = std::map<std::string, Rat>;

// Parameter bindings of the sweep passing the domain and the parameter-only conditions.
// overrides replace the range of the named parameters by an explicit list.
std::vector<ParamMap> sweep_bindings(const TableEntry& e, const std::map<std::string, std::vector<Rat>>& overrides = {});

// All sweep bindings with sample slot contents.
std::vector<Instance> instantiate_sweep(const TableEntry& e);
Instance instantiate(const TableEntry& e, const std::map<std::string, Rat>& params);

struct ReplaySummary {
    std::string id;
    int instances = 0;
    int passed = 0;
    std::vector<std::string> failures;
};

ReplaySummary replay_row(const TableEntry& e);

}  // namespace birat3
