#include "qait/table_store.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

namespace qait {

void write_table(const EnumerationTable& table, std::ostream& out) {
  out << "qait-enum v1 machine=" << table.machine_id() << " L=" << table.budget().max_opcodes
      << " maxout=" << table.budget().max_output_bits << " aux=" << to_hex(table.aux()) << '\n';
  for (const auto& e : table.entries()) {
    out << to_hex(e.output.to_string()) << ',' << e.k_bits << ',' << e.m.num() << ',' << e.m.log2_den() << '\n';
  }
}

namespace {

std::string field(const std::string& token, std::string_view key) {
  if (token.size() <= key.size() || token.compare(0, key.size(), key) != 0 || token[key.size()] != '=') {
    throw CacheFormatError("cache header: expected " + std::string(key) + "=..., got '" + token + "'");
  }
  return token.substr(key.size() + 1);
}

int parse_int(const std::string& s, const char* what) {
  std::size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(s, &pos);
  } catch (const std::exception&) {
    pos = std::string::npos;
  }
  if (pos != s.size()) throw CacheFormatError(std::string("cache: bad integer for ") + what + ": '" + s + "'");
  return v;
}

}  // namespace

EnumerationTable read_table(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw CacheFormatError("cache: empty file");
  std::istringstream hs(header);
  std::string magic, version, machine, l, maxout, aux;
  hs >> magic >> version >> machine >> l >> maxout >> aux;
  if (magic != "qait-enum" || version != "v1") throw CacheFormatError("cache: unknown header '" + header + "'");
  if (field(machine, "machine") != kMachineId) throw CacheFormatError("cache: written by another machine");
  MachineBudget budget{parse_int(field(l, "L"), "L"), parse_int(field(maxout, "maxout"), "maxout")};
  budget.validate();
  const Bits aux_bits = from_hex(field(aux, "aux"));

  std::vector<TableEntry> entries;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string hex, k, num, den;
    if (!std::getline(ls, hex, ',') || !std::getline(ls, k, ',') || !std::getline(ls, num, ',') ||
        !std::getline(ls, den)) {
      throw CacheFormatError("cache: malformed row '" + line + "'");
    }
    TableEntry e;
    e.output = PackedBits::from_string(from_hex(hex));
    e.k_bits = parse_int(k, "k_bits");
    std::uint64_t m_num = 0;
    try {
      m_num = std::stoull(num);
    } catch (const std::exception&) {
      throw CacheFormatError("cache: bad numerator '" + num + "'");
    }
    e.m = Dyadic(m_num, parse_int(den, "m_log2_den"));
    entries.push_back(e);
  }
  return EnumerationTable(aux_bits, budget, std::move(entries));
}

void save_table(const EnumerationTable& table, const std::filesystem::path& file) {
  if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
  // write-then-rename so concurrent readers never see a partial file
  const std::filesystem::path tmp = file.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    write_table(table, out);
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, file);
}

EnumerationTable load_table(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + file.string());
  return read_table(in);
}

std::string cache_file_name(std::string_view aux, const MachineBudget& budget) {
  return "enum-" + std::string(kMachineId) + "-L" + std::to_string(budget.max_opcodes) + "-o" +
         std::to_string(budget.max_output_bits) + "-" + to_hex(aux) + ".csv";
}

TableStore::TableStore(MachineBudget budget, std::optional<std::filesystem::path> cache_dir)
    : budget_(budget), cache_dir_(std::move(cache_dir)) {
  budget_.validate();
}

const EnumerationTable& TableStore::get(std::string_view aux) {
  require_bitstring(aux, "TableStore::get");
  std::lock_guard lock(mutex_);
  if (auto it = tables_.find(aux); it != tables_.end()) return *it->second;

  std::unique_ptr<EnumerationTable> table;
  std::filesystem::path file;
  if (cache_dir_) {
    file = *cache_dir_ / cache_file_name(aux, budget_);
    if (std::filesystem::exists(file)) {
      try {
        auto loaded = load_table(file);
        if (loaded.aux() == aux && loaded.budget() == budget_) table = std::make_unique<EnumerationTable>(std::move(loaded));
      } catch (const CacheFormatError&) {
        // stale or foreign file; recompute below
      }
    }
  }
  if (!table) {
    table = std::make_unique<EnumerationTable>(enumerate(aux, budget_));
    if (cache_dir_) save_table(*table, file);
  }
  auto [it, inserted] = tables_.emplace(Bits(aux), std::move(table));
  return *it->second;
}

std::optional<std::filesystem::path> cache_dir_from_env() {
  const char* v = std::getenv("QAIT_CACHE_DIR");
  if (v == nullptr || *v == '\0') return std::nullopt;
  return std::filesystem::path(v);
}

}  // namespace qait
