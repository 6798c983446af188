#pragma once

#include "piforge/report.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace piforge {

/// Bad selector, range or flag combination; maps to exit code 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string command;           // identities, series, congruences, seq
    std::vector<std::string> ids;  // selectors; empty with `all` or `suite`
    bool all = false;
    std::string suite;             // proved, conjecture, all
    long n_max = 300;              // identities: largest n; seq: count of terms after n
    long n = -1;                   // seq: single index
    long p_min = 3;
    long p_max = 300;
    long digits = 30;
    long max_terms = 2000;
    std::vector<std::string> m;    // L3.2 moduli
    std::map<std::string, std::string> params;  // seq: x, b, c
    unsigned workers = 1;
    Format format = Format::Text;
    std::string cache_path;
    bool strict_conjectures = false;
};

/// The parts of the config that shape results; workers and cache are excluded.
nlohmann::ordered_json config_echo(const RunConfig& c);

/// Throws UsageError before any computation when selectors or ranges are invalid.
void validate_config(const RunConfig& c);

Report cmd_identities(const RunConfig& c);
Report cmd_series(const RunConfig& c);
Report cmd_congruences(const RunConfig& c);
Report cmd_seq(const RunConfig& c);

/// Validates, loads/saves the cache, dispatches and fills the envelope.
Report run_command(const RunConfig& c);

}  // namespace piforge
