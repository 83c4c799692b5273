#pragma once

#include <string>

#include <json.hpp>

#include "orbicensus/census.hpp"
#include "orbicensus/groups.hpp"

namespace orbi {

/// Integers that fit in 64 bits become JSON numbers, larger ones strings.
nlohmann::json to_json(const Integer& z);
/// {"order": n | "infinite", "invariant_factors": [...], "free_rank": k}
nlohmann::json to_json(const GroupStructure& g);
nlohmann::json to_json(const ErrataEntry& e);
nlohmann::json to_json(const ErrataReport& r);
nlohmann::json to_json(const CensusRow& row);

/// Sub-orbifold vector over the canonical order with the target row,
/// e.g. "[1,3,3,3]{14}"; falls back to the lifted signature.
std::string render_covering(const CensusEdge& edge);

enum class CensusFormat { Json, Csv, Markdown };

/// Deterministic text for a census. `errata` may be null.
std::string format_census(const Census& census, CensusFormat format, DeltaConvention convention,
                          const ErrataReport* errata = nullptr);

std::string format_errata(const ErrataReport& report);

}  // namespace orbi
