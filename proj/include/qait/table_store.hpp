#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>

#include "qait/toy_machine.hpp"

namespace qait {

class CacheFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Text cache format:
//   qait-enum v1 machine=<id> L=<int> maxout=<int> aux=<hex>
//   output_hex,k_bits,m_num,m_log2_den      (one row per output, sorted)
void write_table(const EnumerationTable& table, std::ostream& out);
EnumerationTable read_table(std::istream& in);

void save_table(const EnumerationTable& table, const std::filesystem::path& file);
EnumerationTable load_table(const std::filesystem::path& file);

std::string cache_file_name(std::string_view aux, const MachineBudget& budget);

// Memoized enumeration per auxiliary tape, optionally backed by a cache
// directory. A cached file whose header does not match the requested machine
// and budget is ignored and rewritten. Safe for concurrent use.
class TableStore {
 public:
  explicit TableStore(MachineBudget budget, std::optional<std::filesystem::path> cache_dir = std::nullopt);

  const MachineBudget& budget() const { return budget_; }
  const EnumerationTable& get(std::string_view aux);
  // Table conditioned on the qubit count, aux = binary(n).
  const EnumerationTable& for_qubits(int n) { return get(binary(static_cast<std::uint64_t>(n))); }

 private:
  MachineBudget budget_;
  std::optional<std::filesystem::path> cache_dir_;
  std::mutex mutex_;
  std::map<Bits, std::unique_ptr<EnumerationTable>, std::less<>> tables_;
};

// QAIT_CACHE_DIR, when set and non-empty.
std::optional<std::filesystem::path> cache_dir_from_env();

}  // namespace qait
