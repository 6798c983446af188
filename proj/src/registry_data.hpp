#pragma once

// Registry documents compiled in from data/*.json at build time.

namespace piforge::data {

const char* series_json();
const char* congruences_json();

}  // namespace piforge::data
