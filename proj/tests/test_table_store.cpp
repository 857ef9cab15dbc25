#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "qait/table_store.hpp"

using namespace qait;

namespace {

std::filesystem::path scratch_dir(const char* tag) {
  auto dir = std::filesystem::temp_directory_path() / ("qait-test-" + std::string(tag));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("hex sentinel codec") {
  CHECK(to_hex("") == "8");
  CHECK(to_hex("0") == "4");
  CHECK(to_hex("1") == "c");
  for (const Bits b : {"", "0", "1", "0110", "10101", "111111111"}) CHECK(from_hex(to_hex(b)) == b);
}

TEST_CASE("table text form round-trips") {
  const EnumerationTable t = enumerate("101", MachineBudget{6, 64});
  std::stringstream s;
  write_table(t, s);
  CHECK(read_table(s) == t);
}

TEST_CASE("malformed cache text is rejected") {
  std::stringstream bad("qait-enum v1 machine=other L=3 maxout=64 aux=8\n");
  CHECK_THROWS_AS(read_table(bad), CacheFormatError);
  std::stringstream junk("not a header\n");
  CHECK_THROWS_AS(read_table(junk), CacheFormatError);
}

TEST_CASE("cache file reload equals a fresh enumeration") {
  const auto dir = scratch_dir("store");
  const MachineBudget b{7, 64};
  {
    TableStore store(b, dir);
    (void)store.get("10");
  }
  const auto file = dir / cache_file_name("10", b);
  REQUIRE(std::filesystem::exists(file));
  CHECK(load_table(file) == enumerate("10", b));
  TableStore again(b, dir);
  CHECK(again.get("10") == enumerate("10", b));
  std::filesystem::remove_all(dir);
}

TEST_CASE("a stale cache file is ignored and rewritten") {
  const auto dir = scratch_dir("stale");
  const MachineBudget b{5, 64};
  save_table(enumerate("", MachineBudget{3, 64}), dir / cache_file_name("", b));
  TableStore store(b, dir);
  CHECK(store.get("") == enumerate("", b));
  CHECK(load_table(dir / cache_file_name("", b)) == enumerate("", b));
  std::filesystem::remove_all(dir);
}

TEST_CASE("for_qubits conditions on the binary numeral") {
  TableStore store(MachineBudget{4, 64});
  CHECK(store.for_qubits(2).aux() == "10");
  CHECK(&store.for_qubits(2) == &store.get("10"));
}
