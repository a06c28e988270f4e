#pragma once

#include "birat3/depth.hpp"
#include "birat3/models.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace birat3 {

inline constexpr int kJobVersion = 1;

inline const std::vector<std::string> kCommands = {"classify", "blowup",      "wmorphisms",   "resolve",
                                                   "depth",    "link",        "flop-charts", "verify-tables"};

struct JobOptions {
    std::vector<WeightVector> weights;
    std::string format = "json";
    std::optional<std::int64_t> budget;
    std::vector<std::string> rows;  // verify-tables only, empty means all
};

struct JobSpec {
    int version = kJobVersion;
    std::string command;
    std::optional<SingularityModel> model;
    JobOptions options;
};

// "1/3:4,2,1,3" or "1,1,1,1"
WeightVector parse_weight(const std::string& text);

// strict schema; SchemaError carries a JSON pointer
JobSpec parse_job(const nlohmann::json& j);

struct RunSettings {
    std::optional<std::int64_t> budget_flag;
    std::optional<std::string> budget_env;  // value of BIRAT3_BUDGET
    std::optional<std::string> format_flag;
    unsigned threads = 1;
};

// flag, then environment, then the job, then the default
std::int64_t effective_budget(const JobSpec& job, const RunSettings& s);

struct RunOutput {
    int exit_code = 0;  // 0 ok, 2 validation failure, 3 search budget exhausted
    std::string text;   // LF terminated
};

RunOutput run(const JobSpec& job, const RunSettings& s = {});
// parses and runs, mapping schema errors to exit code 2
RunOutput run_text(const std::string& json_text, const RunSettings& s = {});

std::string emit_dot(const ResolutionTree& tree);
nlohmann::json tree_to_json(const ResolutionTree& tree);
std::string dump_json(const nlohmann::json& j);

}  // namespace birat3
