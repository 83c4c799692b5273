#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "orbicensus/census.hpp"

namespace orbi {

struct GoldenCovering {
  std::string sub;  // as printed, e.g. "[1,3,3,3]" or "[m,m,m]"
  std::optional<int> target_row;
};

struct GoldenRow {
  int row = 0;
  std::string signature;  // as printed, possibly malformed
  std::optional<std::int64_t> degree;
  std::optional<Integer> e;
  std::optional<std::string> pi1;  // decimal or "infinite"
  std::optional<Integer> delta;
  std::vector<GoldenCovering> coverings;
};

struct GoldenTable {
  std::string id;
  int dim = 0;
  bool complete = true;      // false: the printed list is only a sample
  bool linear_only = false;
  std::vector<GoldenRow> rows;
};

/// Throws Error(Io) / Error(Schema).
GoldenTable load_golden(const std::filesystem::path& path);
GoldenTable parse_golden(std::string_view json_text, const std::string& source = "<memory>");

/// Field-by-field diff of a census against a printed table. Rows are matched
/// by canonical signature; printed cross-references are followed through
/// the table's own row numbers. Includes the census' propagation conflicts.
ErrataReport compare_to_golden(const Census& census, const GoldenTable& golden,
                               DeltaConvention convention = DeltaConvention::Moduli);

/// A printed value known to be wrong, with the value that replaces it.
struct KnownErratum {
  std::string_view table_id;
  int row_id;
  std::string_view field;
  std::string_view printed_value;
  std::string_view computed_value;
};

std::span<const KnownErratum> known_errata();
bool is_known(const ErrataEntry& entry);

/// Entries not accounted for by the built-in ledger.
std::vector<ErrataEntry> unexplained(const ErrataReport& report);

/// Marks census rows with "erratum:<field>" flags for each entry.
void annotate(Census& census, const GoldenTable& golden, const ErrataReport& report);

}  // namespace orbi
