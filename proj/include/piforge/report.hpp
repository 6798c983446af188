#pragma once

#include "piforge/series.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace piforge {

enum class Format { Json, Csv, Text };
std::optional<Format> format_from_name(const std::string& name);

/// One verdict record. `detail` keeps insertion order so output is stable.
struct ReportItem {
    std::string id;
    long index = 0;
    std::string kind;  // identity, recurrence, series, congruence, sequence, diagnostic
    Status status = Status::Proved;
    std::string result;  // pass, fail, excluded, inconclusive, value, diagnostic
    nlohmann::ordered_json detail = nlohmann::ordered_json::object();
};

struct Report {
    static constexpr int kVersion = 1;
    nlohmann::ordered_json config = nlohmann::ordered_json::object();
    std::vector<ReportItem> items;
    // Envelope: varies between runs and is kept out of the body.
    std::string timestamp;
    double wall_ms = 0;
    unsigned workers = 1;
    std::string cache;
    std::vector<std::string> warnings;
    int exit_code = 0;

    /// Sorts items by (id, index); stable for equal keys.
    void sort_items();
};

/// {version, config, items}: identical for identical config and code.
nlohmann::ordered_json report_body(const Report& r);
/// Body plus the "timings" envelope.
nlohmann::ordered_json report_json(const Report& r, bool with_timings = true);

/// Columns: id,index,kind,status,result,detail (detail as compact JSON).
std::string render_csv(const Report& r);
/// One line per item; integers past 60 digits are shortened.
std::string render_text(const Report& r);
std::string render(const Report& r, Format f, bool with_timings = true);

/// "1234...(k digits)" for integers (or each side of a fraction) longer than
/// `limit` digits; other text is returned unchanged.
std::string truncate_digits(const std::string& text, std::size_t limit = 60);

/// ISO-8601 UTC time of now.
std::string utc_timestamp();

}  // namespace piforge
