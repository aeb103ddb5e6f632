#include "rseri/chargers.hpp"

#include <algorithm>
#include <cctype>

namespace rseri {

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

} // namespace

std::string to_string(Status s) {
    switch (s) {
    case Status::Active:
        return "active";
    case Status::Inactive:
        return "inactive";
    case Status::Unknown:
        return "unknown";
    }
    return "unknown";
}

std::string to_string(RiskLevel level) {
    switch (level) {
    case RiskLevel::Low:
        return "Low";
    case RiskLevel::Moderate:
        return "Moderate";
    case RiskLevel::High:
        return "High";
    }
    return "Low";
}

std::string to_string(LulcCategory c) {
    switch (c) {
    case LulcCategory::Urban:
        return "urban";
    case LulcCategory::Vegetation:
        return "vegetation";
    case LulcCategory::Coastal:
        return "coastal";
    case LulcCategory::Water:
        return "water";
    case LulcCategory::Other:
        return "other";
    }
    return "other";
}

Status parse_status(std::string_view raw) {
    const std::string s = lower(raw);
    if (s == "operational" || s == "active" || s == "true" || s == "1") {
        return Status::Active;
    }
    if (s == "inactive" || s == "false" || s == "0" || s == "offline" || s == "closed" ||
        s == "decommissioned" || s == "out of service") {
        return Status::Inactive;
    }
    return Status::Unknown;
}

bool RiskVector::composite_complete() const {
    return flood.has_value() && lst.has_value() && grid.has_value() && road.has_value() &&
           vegetation.has_value();
}

std::vector<std::string> RiskVector::missing_composite() const {
    std::vector<std::string> out;
    if (!flood) out.emplace_back("flood");
    if (!lst) out.emplace_back("lst");
    if (!grid) out.emplace_back("grid");
    if (!road) out.emplace_back("road");
    if (!vegetation) out.emplace_back("vegetation");
    return out;
}

std::array<int, 5> RiskVector::composite_bits() const {
    return {*flood ? 1 : 0, *lst ? 1 : 0, *grid ? 1 : 0, *road ? 1 : 0, *vegetation ? 1 : 0};
}

} // namespace rseri
