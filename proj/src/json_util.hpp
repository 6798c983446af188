#pragma once

// Registry parsing helpers shared by the series and congruence loaders.

#include "json.hpp"
#include "piforge/exact.hpp"
#include "piforge/series.hpp"

#include <string>

namespace piforge::detail {

inline ExactRat json_rat(const nlohmann::json& v) {
    if (v.is_string()) return parse_rat(v.get<std::string>());
    if (v.is_number_integer()) return ExactRat(ExactInt(std::to_string(v.get<long long>())));
    throw DomainError("expected an integer or a rational string, got " + v.dump());
}

inline ExactInt json_int(const nlohmann::json& v) {
    const ExactRat r = json_rat(v);
    if (!is_integer(r)) throw DomainError("expected an integer, got " + v.dump());
    return r.get_num();
}

inline SeriesFactor json_factor(const nlohmann::json& f) {
    SeriesFactor sf;
    const auto tag = tag_from_name(f.at("seq").get<std::string>());
    if (!tag) throw DomainError("unknown sequence " + f.at("seq").dump());
    sf.seq.tag = *tag;
    if (f.contains("params")) {
        for (const auto& p : f.at("params")) sf.seq.params.push_back(json_rat(p));
    }
    sf.power = f.value("power", 1);
    if (sf.power < 1) throw DomainError("factor power must be >= 1");
    validate(sf.seq);
    return sf;
}

}  // namespace piforge::detail
