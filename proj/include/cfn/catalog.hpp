#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cfn/rootsys.hpp"

namespace cfn {

enum class Realization { NONE, SL2_NCC, SL2_RIEMANNIAN, SP4_NCC };

Realization realization_from_string(const std::string& s);
std::string to_string(Realization r);

// One data-file record. Root coordinates are fully determined by
// (cartan_type, rank, x0), so files only store these fields; the exact
// line grammar is documented in the README.
struct CatalogEntry {
  std::string name;
  CartanType cartan_type = CartanType::A;
  int rank = 0;
  Multiplicities mult;
  Eigen::VectorXd x0;
  Realization realization = Realization::NONE;
  std::optional<int> dim_total;
  std::string notes;
};

struct LoadedEntry {
  CatalogEntry meta;
  RootSystem system;
  ValidationReport report;
};

// Resolution order: CFN_DATA_DIR environment variable, then the directory
// configured at build time.
std::string default_data_dir();

// Sorted entry names found in the directory (files named <name>.entry).
std::vector<std::string> list_entries(const std::string& dir = default_data_dir());

// Errors: ParseError on bad syntax, unknown or duplicate keys, missing
// required fields.
CatalogEntry parse_entry(const std::string& text);

// Canonical key = value form; parse_entry(serialize_entry(e)) reproduces e.
std::string serialize_entry(const CatalogEntry& e);

// Errors: UnknownEntry (no such file), ParseError, ValidationFailure (the
// root system cannot be built, a hard structural check fails, or a declared
// total dimension is inconsistent with rank + sum of multiplicities).
LoadedEntry load_entry(const std::string& name,
                       const std::string& dir = default_data_dir());

}  // namespace cfn
