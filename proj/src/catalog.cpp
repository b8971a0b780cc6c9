#include "cfn/catalog.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace cfn {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& s) {
  size_t pos = 0;
  double v;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw ParseError("bad number '" + s + "'");
  }
  if (trim(s.substr(pos)) != "") throw ParseError("bad number '" + s + "'");
  return v;
}

int parse_int(const std::string& s) {
  double v = parse_double(s);
  int i = int(v);
  if (double(i) != v) throw ParseError("expected integer, got '" + s + "'");
  return i;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  // trim to the shortest representation that round-trips
  for (int prec = 1; prec < 17; ++prec) {
    char shorter[40];
    std::snprintf(shorter, sizeof(shorter), "%.*g", prec, v);
    if (std::strtod(shorter, nullptr) == v) return shorter;
  }
  return buf;
}

const char* kKnownKeys[] = {"name",     "cartan_type", "rank",
                            "mult.long", "mult.short", "x0",
                            "realization", "dim_total", "notes"};

}  // namespace

Realization realization_from_string(const std::string& s) {
  if (s == "NONE") return Realization::NONE;
  if (s == "SL2_NCC") return Realization::SL2_NCC;
  if (s == "SL2_RIEMANNIAN") return Realization::SL2_RIEMANNIAN;
  if (s == "SP4_NCC") return Realization::SP4_NCC;
  throw ParseError("unknown realization '" + s + "'");
}

std::string to_string(Realization r) {
  switch (r) {
    case Realization::NONE: return "NONE";
    case Realization::SL2_NCC: return "SL2_NCC";
    case Realization::SL2_RIEMANNIAN: return "SL2_RIEMANNIAN";
    case Realization::SP4_NCC: return "SP4_NCC";
  }
  return "NONE";
}

std::string default_data_dir() {
  if (const char* env = std::getenv("CFN_DATA_DIR")) return env;
#ifdef CFN_DEFAULT_DATA_DIR
  return CFN_DEFAULT_DATA_DIR;
#else
  return "data";
#endif
}

std::vector<std::string> list_entries(const std::string& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir))
    throw Error("catalog directory not found: " + dir);
  std::vector<std::string> names;
  for (const auto& de : fs::directory_iterator(dir)) {
    if (de.path().extension() == ".entry")
      names.push_back(de.path().stem().string());
  }
  std::sort(names.begin(), names.end());
  return names;
}

CatalogEntry parse_entry(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw ParseError("line " + std::to_string(lineno) + ": expected 'key = value'");
    std::string key = trim(t.substr(0, eq));
    std::string val = trim(t.substr(eq + 1));
    bool known = false;
    for (const char* k : kKnownKeys)
      if (key == k) known = true;
    if (!known)
      throw ParseError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    if (kv.count(key))
      throw ParseError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    kv[key] = val;
  }
  for (const char* req : {"name", "cartan_type", "rank", "mult.long", "x0"})
    if (!kv.count(req))
      throw ParseError(std::string("missing required key '") + req + "'");

  CatalogEntry e;
  e.name = kv["name"];
  if (e.name.empty()) throw ParseError("empty name");
  e.cartan_type = cartan_type_from_string(kv["cartan_type"]);
  e.rank = parse_int(kv["rank"]);
  if (e.rank < 1) throw ParseError("rank must be positive");
  e.mult.long_mult = parse_int(kv["mult.long"]);
  if (kv.count("mult.short")) e.mult.short_mult = parse_int(kv["mult.short"]);

  std::vector<double> xs;
  std::string x0s = kv["x0"];
  std::replace(x0s.begin(), x0s.end(), ',', ' ');
  std::istringstream xin(x0s);
  std::string tok;
  while (xin >> tok) xs.push_back(parse_double(tok));
  if (int(xs.size()) != e.rank)
    throw ParseError("x0 has " + std::to_string(xs.size()) +
                     " coordinates, rank is " + std::to_string(e.rank));
  e.x0 = Eigen::Map<Eigen::VectorXd>(xs.data(), xs.size());

  if (kv.count("realization"))
    e.realization = realization_from_string(kv["realization"]);
  if (kv.count("dim_total")) e.dim_total = parse_int(kv["dim_total"]);
  if (kv.count("notes")) e.notes = kv["notes"];
  return e;
}

std::string serialize_entry(const CatalogEntry& e) {
  std::ostringstream out;
  out << "name = " << e.name << "\n";
  out << "cartan_type = " << to_string(e.cartan_type) << "\n";
  out << "rank = " << e.rank << "\n";
  out << "mult.long = " << e.mult.long_mult << "\n";
  if (e.mult.short_mult) out << "mult.short = " << *e.mult.short_mult << "\n";
  out << "x0 = ";
  for (int i = 0; i < e.x0.size(); ++i) {
    if (i) out << ", ";
    out << format_double(e.x0[i]);
  }
  out << "\n";
  out << "realization = " << to_string(e.realization) << "\n";
  if (e.dim_total) out << "dim_total = " << *e.dim_total << "\n";
  if (!e.notes.empty()) out << "notes = " << e.notes << "\n";
  return out.str();
}

LoadedEntry load_entry(const std::string& name, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::path p = fs::path(dir) / (name + ".entry");
  std::ifstream in(p);
  if (!in) throw UnknownEntry("no catalog entry '" + name + "' in " + dir);
  std::stringstream buf;
  buf << in.rdbuf();
  CatalogEntry meta = parse_entry(buf.str());
  if (meta.name != name)
    throw ParseError("entry file " + p.string() + " declares name '" +
                     meta.name + "'");

  RootSystem system = [&] {
    try {
      return build_root_system(meta.cartan_type, meta.rank, meta.mult, meta.x0);
    } catch (const Error& err) {
      throw ValidationFailure("entry '" + name + "': " + err.what());
    }
  }();
  ValidationReport report = validate_structure(system);
  if (report.hard_failures()) {
    std::string which;
    for (const auto& c : report.checks)
      if (c.hard && !c.passed) which += (which.empty() ? "" : ", ") + c.name;
    throw ValidationFailure("entry '" + name +
                            "' fails structural checks: " + which);
  }
  if (meta.dim_total) {
    int dim = meta.rank;
    for (const auto& r : system.roots()) dim += r.multiplicity;
    if (dim != *meta.dim_total)
      throw ValidationFailure(
          "entry '" + name + "': dim_total = " + std::to_string(*meta.dim_total) +
          " but rank + sum of multiplicities = " + std::to_string(dim));
  }
  return LoadedEntry{std::move(meta), std::move(system), std::move(report)};
}

}  // namespace cfn
