#include "piforge/report.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <sstream>

namespace piforge {

using nlohmann::ordered_json;

std::optional<Format> format_from_name(const std::string& name) {
    if (name == "json") return Format::Json;
    if (name == "csv") return Format::Csv;
    if (name == "text") return Format::Text;
    return std::nullopt;
}

void Report::sort_items() {
    std::stable_sort(items.begin(), items.end(), [](const ReportItem& a, const ReportItem& b) {
        if (a.id != b.id) return a.id < b.id;
        return a.index < b.index;
    });
}

namespace {

ordered_json item_json(const ReportItem& it) {
    ordered_json j;
    j["id"] = it.id;
    j["index"] = it.index;
    j["kind"] = it.kind;
    j["status"] = status_name(it.status);
    j["result"] = it.result;
    j["detail"] = it.detail;
    return j;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

bool all_digits(const std::string& s, std::size_t from, std::size_t to) {
    if (from >= to) return false;
    for (std::size_t i = from; i < to; ++i) {
        if (s[i] < '0' || s[i] > '9') return false;
    }
    return true;
}

std::string shorten_int(const std::string& s, std::size_t limit) {
    const std::size_t sign = (!s.empty() && s[0] == '-') ? 1 : 0;
    const std::size_t digits = s.size() - sign;
    if (digits <= limit || !all_digits(s, sign, s.size())) return s;
    return s.substr(0, sign + limit) + "\xE2\x80\xA6(" + std::to_string(digits) + " digits)";
}

std::string text_value(const ordered_json& v) {
    if (v.is_string()) return truncate_digits(v.get<std::string>());
    if (v.is_array()) {
        std::string out = "[";
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) out += ",";
            out += text_value(v[i]);
        }
        return out + "]";
    }
    return v.dump();
}

}  // namespace

std::string truncate_digits(const std::string& text, std::size_t limit) {
    const auto slash = text.find('/');
    if (slash != std::string::npos && text.find('/', slash + 1) == std::string::npos) {
        const std::string num = text.substr(0, slash);
        const std::string den = text.substr(slash + 1);
        const std::size_t sign = (!num.empty() && num[0] == '-') ? 1 : 0;
        if (all_digits(num, sign, num.size()) && all_digits(den, 0, den.size())) {
            return shorten_int(num, limit) + "/" + shorten_int(den, limit);
        }
        return text;
    }
    return shorten_int(text, limit);
}

ordered_json report_body(const Report& r) {
    ordered_json j;
    j["version"] = Report::kVersion;
    j["config"] = r.config;
    j["items"] = ordered_json::array();
    for (const auto& it : r.items) j["items"].push_back(item_json(it));
    return j;
}

ordered_json report_json(const Report& r, bool with_timings) {
    ordered_json j = report_body(r);
    if (with_timings) {
        ordered_json t;
        t["timestamp"] = r.timestamp;
        t["wall_ms"] = r.wall_ms;
        t["workers"] = r.workers;
        if (!r.cache.empty()) t["cache"] = r.cache;
        j["timings"] = t;
    }
    return j;
}

std::string render_csv(const Report& r) {
    std::ostringstream os;
    os << "id,index,kind,status,result,detail\n";
    for (const auto& it : r.items) {
        os << csv_field(it.id) << ',' << it.index << ',' << it.kind << ',' << status_name(it.status) << ','
           << it.result << ',' << csv_field(it.detail.dump()) << '\n';
    }
    return os.str();
}

std::string render_text(const Report& r) {
    std::ostringstream os;
    std::size_t w = 2;
    for (const auto& it : r.items) w = std::max(w, it.id.size());
    for (const auto& it : r.items) {
        std::string result = it.result;
        std::transform(result.begin(), result.end(), result.begin(), [](unsigned char c) { return std::toupper(c); });
        if (it.detail.contains("flag")) result = it.detail["flag"].get<std::string>();
        os << it.id << std::string(w - it.id.size() + 1, ' ') << it.index << ' ' << it.kind << ' '
           << status_name(it.status) << ' ' << result;
        for (const auto& [k, v] : it.detail.items()) {
            if (k == "flag") continue;
            os << ' ' << k << '=' << text_value(v);
        }
        os << '\n';
    }
    return os.str();
}

std::string render(const Report& r, Format f, bool with_timings) {
    switch (f) {
        case Format::Json: return report_json(r, with_timings).dump(2) + "\n";
        case Format::Csv: return render_csv(r);
        case Format::Text: return render_text(r);
    }
    return {};
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace piforge
