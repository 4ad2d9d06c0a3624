#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "lhl/rational.hpp"

namespace lhl {

struct RunConfig {
    std::string type;                // empty: the command's default
    std::vector<Rational> coweight;  // empty: all ones
    bool allow_nondominant = false;
    std::string word;
    std::string x;
    std::string s;
    std::string gamma;
    std::string w = "su";
    std::string nu = "2,3,2";
    std::string format = "json";
    int max_length = -1;
};

struct CommandResult {
    nlohmann::json report;  // carries "schema": "v1"
    int exit_code = 0;      // 0 pass, 1 expectation failure, 2 internal error
};

CommandResult cmd_em_table(const RunConfig& cfg);
CommandResult cmd_local_form(const RunConfig& cfg);
CommandResult cmd_verify_hodge(const RunConfig& cfg);
CommandResult cmd_p1(const RunConfig& cfg);
CommandResult cmd_jantzen(const RunConfig& cfg);

// Dispatches by subcommand name and turns lhl::Error into exit code 2.
CommandResult run_command(const std::string& name, const RunConfig& cfg);

// "json" (sorted keys, two-space indent) or "tsv".
std::string render(const nlohmann::json& report, const std::string& format);

std::vector<Rational> parse_rational_list(const std::string& text);

}  // namespace lhl
