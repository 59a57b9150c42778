#pragma once
/// @file catalog.hpp
/// @brief Machine-readable catalogs: lossless JSON/CSV serialization of
///        component lists and exact point tuples.
///
/// Every rational is serialized as the decimal string "p" or "p/q" — never a
/// float — so documents round-trip exactly.  A point tuple is the object
/// {"n": int, "q": int, "blocks": [...]} with blocks[α−1][i−1][j−1] holding
/// the entry (x_α)ⁱ_j.  A catalog document carries the tool stamp, the echoed
/// run configuration, a per-kind summary, and one record per component; the
/// CSV flattening keeps one row per component with the columns
/// kind,label,dim,dim_oracle.

#include <cstddef>
#include <fstream>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "immgeo/errors.hpp"
#include "immgeo/mat_tuple.hpp"
#include "immgeo/rational.hpp"

namespace immgeo {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "immgeo";
inline constexpr const char* kToolVersion = "1.0.0";

[[nodiscard]] inline Json tool_stamp() {
  return Json{{"name", kToolName}, {"version", kToolVersion}};
}

[[nodiscard]] inline Json tuple_to_json(const RationalTuple& x) {
  Json blocks = Json::array();
  for (int alpha = 1; alpha <= x.n(); ++alpha) {
    Json rows = Json::array();
    for (int i = 1; i <= x.q(); ++i) {
      Json row = Json::array();
      for (int j = 1; j <= x.q(); ++j) row.push_back(to_string(x.entry({alpha, i, j})));
      rows.push_back(std::move(row));
    }
    blocks.push_back(std::move(rows));
  }
  return Json{{"n", x.n()}, {"q", x.q()}, {"blocks", std::move(blocks)}};
}

/// Parses {"n", "q", "blocks"} with entries "p/q" (strings) or plain JSON
/// integers.  Every defect is reported with the JSON path of the offending
/// field, 0-based as it appears in the file.
[[nodiscard]] inline RationalTuple tuple_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("point: top level must be an object");
  for (const char* field : {"n", "q"}) {
    if (!j.contains(field) || !j[field].is_number_integer()) {
      throw InputError(std::string("point: field '") + field + "' must be an integer");
    }
    if (j[field].get<long long>() < 1) {
      throw InputError(std::string("point: field '") + field + "' must be positive");
    }
  }
  const int n = j["n"].get<int>();
  const int q = j["q"].get<int>();
  if (!j.contains("blocks") || !j["blocks"].is_array()) {
    throw InputError("point: field 'blocks' must be an array");
  }
  const Json& blocks = j["blocks"];
  if (blocks.size() != static_cast<std::size_t>(n)) {
    throw InputError("point: 'blocks' must hold n = " + std::to_string(n) + " blocks, got " +
                     std::to_string(blocks.size()));
  }
  RationalTuple x(n, q);
  for (int a = 0; a < n; ++a) {
    const Json& block = blocks[static_cast<std::size_t>(a)];
    const std::string at = "blocks[" + std::to_string(a) + "]";
    if (!block.is_array() || block.size() != static_cast<std::size_t>(q)) {
      throw InputError("point: " + at + " must be an array of q = " + std::to_string(q) + " rows");
    }
    for (int i = 0; i < q; ++i) {
      const Json& row = block[static_cast<std::size_t>(i)];
      const std::string at_row = at + "[" + std::to_string(i) + "]";
      if (!row.is_array() || row.size() != static_cast<std::size_t>(q)) {
        throw InputError("point: " + at_row + " must be an array of q = " + std::to_string(q) +
                         " entries");
      }
      for (int jj = 0; jj < q; ++jj) {
        const Json& cell = row[static_cast<std::size_t>(jj)];
        const std::string at_cell = at_row + "[" + std::to_string(jj) + "]";
        Rational value;
        if (cell.is_string()) {
          try {
            value = parse_rational(cell.get<std::string>());
          } catch (const InputError& e) {
            throw InputError("point: " + at_cell + ": " + e.what());
          }
        } else if (cell.is_number_integer()) {
          value = Rational(cell.get<long long>());
        } else {
          throw InputError("point: " + at_cell + " must be a rational string or an integer");
        }
        x.entry({a + 1, i + 1, jj + 1}) = std::move(value);
      }
    }
  }
  return x;
}

/// One component row of a catalog: the kind tags which locus it belongs to,
/// the defining data is kind-specific, and the representative is an exact
/// point of the component.
struct CatalogRecord {
  std::string kind;  ///< "sing" | "jacobian"
  std::string label;
  std::size_t dim = 0;
  std::size_t dim_oracle = 0;
  Json defining;
  RationalTuple representative;
};

struct CatalogDocument {
  Json config;   ///< echo of the run parameters
  Json summary;  ///< kind-level totals (component count, locus dimension, …)
  std::vector<CatalogRecord> records;
};

[[nodiscard]] inline Json catalog_to_json(const CatalogDocument& doc) {
  Json components = Json::array();
  for (const CatalogRecord& rec : doc.records) {
    components.push_back(Json{{"kind", rec.kind},
                              {"label", rec.label},
                              {"dim", rec.dim},
                              {"dim_oracle", rec.dim_oracle},
                              {"defining", rec.defining},
                              {"representative", tuple_to_json(rec.representative)}});
  }
  return Json{{"tool", tool_stamp()},
              {"config", doc.config},
              {"summary", doc.summary},
              {"components", std::move(components)}};
}

namespace detail {

[[nodiscard]] inline std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += "\"\"";
    out += c;
  }
  out += "\"";
  return out;
}

}  // namespace detail

/// One row per component; the label is quoted because it may contain commas.
[[nodiscard]] inline std::string catalog_to_csv(const CatalogDocument& doc) {
  std::string out = "kind,label,dim,dim_oracle\n";
  for (const CatalogRecord& rec : doc.records) {
    out += rec.kind + "," + detail::csv_quote(rec.label) + "," + std::to_string(rec.dim) + "," +
           std::to_string(rec.dim_oracle) + "\n";
  }
  return out;
}

/// Writes the payload to the configured destination: the given stream, or the
/// named file when one was requested.
inline void write_payload(const std::string& out_path, const std::string& payload,
                          std::ostream& fallback) {
  if (out_path.empty()) {
    fallback << payload;
    return;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) throw InputError("cannot open output file '" + out_path + "'");
  file << payload;
  if (!file) throw InputError("failed writing output file '" + out_path + "'");
}

}  // namespace immgeo
