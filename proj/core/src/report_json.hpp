#pragma once

// Internal: nlohmann converters shared by io.cpp and runconfig.cpp. Not
// installed; public headers stay free of vendored includes.

#include <json.hpp>

#include "outerspace/experiments.hpp"

namespace outerspace::detail {

nlohmann::json to_json(const SubArea& area);
nlohmann::json to_json(const CongestionReport& report);
nlohmann::json to_json(const EnergyReport& report);
nlohmann::json to_json(const LifetimeReport& report);
nlohmann::json to_json(const LifetimePair& pair);
nlohmann::json to_json(const StretchReport& report);
nlohmann::json to_json(const SymmetryReport& report);

}  // namespace outerspace::detail
