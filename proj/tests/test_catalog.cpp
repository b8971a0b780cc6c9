#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cfn/catalog.hpp"
#include "doctest.h"

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

const char* kMinimal =
    "name = t\ncartan_type = A\nrank = 1\nmult.long = 1\nx0 = 0.5\n";

}  // namespace

TEST_CASE("bundled entries list and load") {
  std::vector<std::string> names = cfn::list_entries();
  CHECK(names == std::vector<std::string>{"sl2r-riemannian", "sl2r-so11",
                                          "sp4r-gl2r"});

  cfn::LoadedEntry sl2 = cfn::load_entry("sl2r-so11");
  CHECK(sl2.meta.rank == 1);
  CHECK(sl2.meta.realization == cfn::Realization::SL2_NCC);
  CHECK(sl2.meta.dim_total.value() == 3);
  CHECK(sl2.system.size() == 2);
  CHECK_FALSE(sl2.report.hard_failures());
  CHECK(sl2.report.is_ncc());

  cfn::LoadedEntry rie = cfn::load_entry("sl2r-riemannian");
  CHECK(rie.meta.dim_total.value() == 3);
  CHECK_FALSE(rie.report.hard_failures());
  CHECK_FALSE(rie.report.is_ncc());
  CHECK(rie.system.noncompact_positive().empty());

  cfn::LoadedEntry sp4 = cfn::load_entry("sp4r-gl2r");
  CHECK(sp4.meta.dim_total.value() == 10);
  CHECK(sp4.system.size() == 8);
  CHECK(sp4.system.gamma().size() == 2);
  CHECK(sp4.report.is_ncc());

  CHECK_THROWS_AS(cfn::load_entry("nope"), cfn::UnknownEntry);
}

TEST_CASE("entry files are in canonical serialized form") {
  for (const std::string& name : cfn::list_entries()) {
    cfn::LoadedEntry e = cfn::load_entry(name);
    std::string canonical = cfn::serialize_entry(e.meta);
    CHECK(canonical ==
          read_file(fs::path(cfn::default_data_dir()) / (name + ".entry")));
    // parse -> serialize round-trips byte for byte
    CHECK(cfn::serialize_entry(cfn::parse_entry(canonical)) == canonical);
  }
}

TEST_CASE("entry grammar") {
  cfn::CatalogEntry e = cfn::parse_entry(kMinimal);
  CHECK(e.name == "t");
  CHECK(e.rank == 1);
  CHECK(e.realization == cfn::Realization::NONE);
  CHECK_FALSE(e.dim_total.has_value());

  // comments and blank lines are fine
  CHECK_NOTHROW(cfn::parse_entry(std::string("# header\n\n") + kMinimal));

  CHECK_THROWS_AS(cfn::parse_entry(std::string(kMinimal) + "junk line\n"),
                  cfn::ParseError);
  CHECK_THROWS_AS(cfn::parse_entry(std::string(kMinimal) + "mystery = 1\n"),
                  cfn::ParseError);
  CHECK_THROWS_AS(cfn::parse_entry(std::string(kMinimal) + "rank = 2\n"),
                  cfn::ParseError);  // duplicate
  CHECK_THROWS_AS(
      cfn::parse_entry("name = t\ncartan_type = A\nrank = 1\nmult.long = 1\n"),
      cfn::ParseError);  // missing x0
  CHECK_THROWS_AS(
      cfn::parse_entry(
          "name = t\ncartan_type = A\nrank = 1.5\nmult.long = 1\nx0 = 0.5\n"),
      cfn::ParseError);
  CHECK_THROWS_AS(
      cfn::parse_entry(
          "name = t\ncartan_type = A\nrank = 1\nmult.long = 1\nx0 = a\n"),
      cfn::ParseError);
  CHECK_THROWS_AS(
      cfn::parse_entry(
          "name = t\ncartan_type = A\nrank = 2\nmult.long = 1\nx0 = 0.5\n"),
      cfn::ParseError);  // x0 arity
  CHECK_THROWS_AS(
      cfn::parse_entry(
          "name = t\ncartan_type = E\nrank = 1\nmult.long = 1\nx0 = 0.5\n"),
      cfn::ParseError);
  CHECK_THROWS_AS(cfn::parse_entry(std::string(kMinimal) +
                                   "realization = WHAT\n"),
                  cfn::ParseError);
}

TEST_CASE("loading validates structure and dimension bookkeeping") {
  fs::path dir = fs::temp_directory_path() / "cfn_catalog_test";
  fs::create_directories(dir);

  write_file(dir / "bad-dim.entry",
             "name = bad-dim\ncartan_type = A\nrank = 1\nmult.long = 1\n"
             "x0 = 0.5\ndim_total = 4\n");
  CHECK_THROWS_AS(cfn::load_entry("bad-dim", dir.string()),
                  cfn::ValidationFailure);

  write_file(dir / "bad-x0.entry",
             "name = bad-x0\ncartan_type = A\nrank = 1\nmult.long = 1\n"
             "x0 = 0.3\n");
  CHECK_THROWS_AS(cfn::load_entry("bad-x0", dir.string()),
                  cfn::ValidationFailure);

  write_file(dir / "misnamed.entry", kMinimal);  // declares name = t
  CHECK_THROWS_AS(cfn::load_entry("misnamed", dir.string()), cfn::ParseError);

  write_file(dir / "good.entry",
             "name = good\ncartan_type = A\nrank = 1\nmult.long = 1\n"
             "x0 = 0.5\ndim_total = 3\n");
  CHECK_NOTHROW(cfn::load_entry("good", dir.string()));

  fs::remove_all(dir);
}

TEST_CASE("environment variable overrides the data directory") {
  fs::path dir = fs::temp_directory_path() / "cfn_catalog_env_test";
  fs::create_directories(dir);
  write_file(dir / "only.entry",
             "name = only\ncartan_type = A\nrank = 1\nmult.long = 1\n"
             "x0 = 0.5\n");

  REQUIRE(setenv("CFN_DATA_DIR", dir.c_str(), 1) == 0);
  CHECK(cfn::default_data_dir() == dir.string());
  CHECK(cfn::list_entries() == std::vector<std::string>{"only"});
  REQUIRE(unsetenv("CFN_DATA_DIR") == 0);

  CHECK(cfn::list_entries().size() == 3);
  fs::remove_all(dir);
}
