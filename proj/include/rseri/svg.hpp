#pragma once

#include "rseri/analytics.hpp"

#include <array>
#include <string>
#include <vector>

namespace rseri {

/// Static map of hexbin cells colored by mean-score class.
std::string render_hexbin_svg(const std::vector<HexCell>& cells, double cell_size_m,
                              double class_low_max, double class_moderate_max);

/// Bar chart of the concurrent-risk-count distribution (bins 0..5).
std::string render_risk_count_svg(const std::array<std::size_t, 6>& bins);

/// Score histogram with the KDE curve and class boundaries overlaid.
std::string render_score_distribution_svg(const ScoreDistribution& dist);

} // namespace rseri
