#include "orbicensus/format.hpp"

#include <sstream>

#include "orbicensus/golden.hpp"

namespace orbi {

using nlohmann::json;

json to_json(const Integer& z) {
  if (auto v = to_int64(z)) return *v;
  return to_string(z);
}

json to_json(const GroupStructure& g) {
  json factors = json::array();
  for (const auto& f : g.invariant_factors) factors.push_back(to_json(f));
  auto order = g.order();
  return {{"order", order ? to_json(*order) : json("infinite")}, {"invariant_factors", factors}, {"free_rank", g.free_rank}};
}

json to_json(const ErrataEntry& e) {
  return {{"table", e.table_id},       {"row", e.row_id},
          {"field", e.field},          {"printed", e.printed_value},
          {"computed", e.computed_value}, {"justification", e.justification},
          {"known", is_known(e)}};
}

json to_json(const ErrataReport& r) {
  json entries = json::array();
  for (const auto& e : r.entries) entries.push_back(to_json(e));
  json unverified = json::array();
  for (const auto& e : r.unverified) {
    json j = to_json(e);
    j.erase("known");
    unverified.push_back(j);
  }
  return {{"entries", entries}, {"unverified", unverified}, {"unexplained", unexplained(r).size()}};
}

std::string render_covering(const CensusEdge& ce) {
  std::string out = "[";
  for (std::size_t i = 0; i < ce.edge.suborbifold.size(); ++i)
    out += (i ? "," : "") + std::to_string(ce.edge.suborbifold[i]);
  out += "]";
  if (ce.target_row) return out + "{" + std::to_string(*ce.target_row) + "}";
  return out + "->" + (ce.edge.target ? render(*ce.edge.target) : std::string("?"));
}

json to_json(const CensusRow& row) {
  json coverings = json::array();
  for (const auto& ce : row.coverings) {
    json branch = json::array();
    for (int i : ce.edge.branch) branch.push_back(i + 1);
    coverings.push_back({{"suborbifold", ce.edge.suborbifold},
                         {"branch", branch},
                         {"kummer_exponent", ce.edge.kummer_exponent},
                         {"deck_order", to_json(ce.edge.deck_order)},
                         {"target", ce.edge.target ? json(render(*ce.edge.target)) : json(nullptr)},
                         {"target_row", ce.target_row ? json(*ce.target_row) : json(nullptr)}});
  }
  auto order = row.group_order();
  return {{"row", row.row},
          {"signature", render(row.signature)},
          {"degree", row.degree},
          {"fixture", row.fixture},
          {"group_order", order ? to_json(*order) : json("infinite")},
          {"group", row.group ? to_json(*row.group) : json(nullptr)},
          {"e_orb", row.e_orb ? json(row.e_orb->str()) : json(nullptr)},
          {"e_universal", row.e_universal ? to_json(*row.e_universal) : json(nullptr)},
          {"e_provenance", std::string(to_string(row.provenance))},
          {"e_source_row", row.e_source_row ? json(*row.e_source_row) : json(nullptr)},
          {"delta_moduli", to_json(row.delta_moduli)},
          {"delta_linear_system", to_json(row.delta_linear_system)},
          {"coverings", coverings},
          {"flags", row.flags}};
}

namespace {

std::string_view convention_name(DeltaConvention c) {
  return c == DeltaConvention::Moduli ? "moduli" : "linear-system";
}

const Integer& delta_of(const CensusRow& r, DeltaConvention c) {
  return c == DeltaConvention::Moduli ? r.delta_moduli : r.delta_linear_system;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string csv(const Census& census, DeltaConvention convention) {
  std::ostringstream out;
  out << "row,signature,degree,group_order,invariant_factors,e_orb,e_universal,e_provenance,delta,"
         "delta_moduli,delta_linear_system,coverings,flags\n";
  for (const auto& r : census.rows) {
    auto order = r.group_order();
    std::vector<std::string> factors;
    if (r.group)
      for (const auto& f : r.group->invariant_factors) factors.push_back(to_string(f));
    std::vector<std::string> covs;
    for (const auto& ce : r.coverings) covs.push_back(render_covering(ce));
    out << r.row << ',' << csv_field(render(r.signature)) << ',' << r.degree << ','
        << (order ? to_string(*order) : "infinite") << ',' << csv_field(join(factors, " ")) << ','
        << (r.e_orb ? r.e_orb->str() : "") << ',' << (r.e_universal ? to_string(*r.e_universal) : "") << ','
        << to_string(r.provenance) << ',' << to_string(delta_of(r, convention)) << ',' << to_string(r.delta_moduli)
        << ',' << to_string(r.delta_linear_system) << ',' << csv_field(join(covs, " ")) << ','
        << csv_field(join(r.flags, " ")) << '\n';
  }
  return out.str();
}

std::string markdown(const Census& census, DeltaConvention convention) {
  std::ostringstream out;
  out << "|  | d | signature | e | \\|π₁^orb\\| | δ | sub-orbifolds and coverings |\n";
  out << "|---:|---:|:---|---:|---:|---:|:---|\n";
  for (const auto& r : census.rows) {
    auto order = r.group_order();
    std::vector<std::string> covs;
    for (const auto& ce : r.coverings) covs.push_back(render_covering(ce));
    std::string e = r.e_universal ? to_string(*r.e_universal) : "";
    if (r.provenance == EulerProvenance::Propagated) e += "*";
    out << "| **" << r.row << "** | " << r.degree << " | " << render(r.signature, RenderStyle::Human) << " | " << e
        << " | " << (order ? to_string(*order) : "∞") << " | " << to_string(delta_of(r, convention)) << " | "
        << join(covs, " ") << " |\n";
  }
  out << "\nδ: " << convention_name(convention) << " convention. *: Euler number carried along covering edges.\n";
  return out.str();
}

}  // namespace

std::string format_census(const Census& census, CensusFormat format, DeltaConvention convention,
                          const ErrataReport* errata) {
  switch (format) {
    case CensusFormat::Csv: return csv(census, convention);
    case CensusFormat::Markdown: {
      std::string out = markdown(census, convention);
      if (errata) out += "\n" + format_errata(*errata);
      return out;
    }
    case CensusFormat::Json: break;
  }
  json rows = json::array();
  for (const auto& r : census.rows) rows.push_back(to_json(r));
  json j = {{"dim", census.dim},
            {"linear_only", census.linear_only},
            {"delta_convention", std::string(convention_name(convention))},
            {"rows", rows}};
  if (errata) j["errata"] = to_json(*errata);
  return j.dump(2) + "\n";
}

std::string format_errata(const ErrataReport& report) {
  std::ostringstream out;
  out << "errata: " << report.entries.size() << " (" << unexplained(report).size() << " unexplained)\n";
  for (const auto& e : report.entries) {
    out << (is_known(e) ? "  known  " : "  NEW    ") << e.table_id << " row " << e.row_id << " " << e.field
        << ": printed " << e.printed_value << ", computed " << e.computed_value << "\n           " << e.justification
        << "\n";
  }
  if (!report.unverified.empty()) {
    out << "unverified: " << report.unverified.size() << "\n";
    for (const auto& e : report.unverified)
      out << "  " << e.table_id << " row " << e.row_id << " " << e.field << " = " << e.printed_value << ": "
          << e.justification << "\n";
  }
  return out.str();
}

}  // namespace orbi
