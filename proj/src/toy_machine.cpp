#include "qait/toy_machine.hpp"

#include <algorithm>

namespace qait {

Program Program::from_opcodes(std::span<const Opcode> ops) {
  Program p;
  p.bits.reserve(ops.size() * kOpcodeBits);
  for (Opcode op : ops) p.bits += from_uint(static_cast<std::uint64_t>(op), kOpcodeBits);
  return p;
}

Program Program::literal(std::string_view x) {
  std::vector<Opcode> ops;
  ops.reserve(x.size() + 1);
  for (char c : x) ops.push_back(c == '1' ? Opcode::Emit1 : Opcode::Emit0);
  ops.push_back(Opcode::Halt);
  return from_opcodes(ops);
}

void MachineBudget::validate() const {
  if (max_opcodes < 1 || max_opcodes > kMaxOpcodes) {
    throw std::invalid_argument("MachineBudget: max_opcodes must be in [1, " + std::to_string(kMaxOpcodes) + "]");
  }
  if (max_output_bits < 1 || max_output_bits > 64) {
    throw std::invalid_argument("MachineBudget: max_output_bits must be in [1, 64]");
  }
}

Outcome run(const Program& program, std::string_view aux, const MachineBudget& budget) {
  budget.validate();
  require_bitstring(program.bits, "run(program)");
  require_bitstring(aux, "run(aux)");

  const Outcome invalid{Outcome::Kind::Invalid, {}};
  const Outcome exhausted{Outcome::Kind::Exhausted, {}};
  if (program.bits.empty() || program.bits.size() % kOpcodeBits != 0) return invalid;

  const std::size_t n_ops = program.opcode_count();
  auto opcode_at = [&](std::size_t i) {
    return static_cast<Opcode>(to_uint(std::string_view(program.bits).substr(i * kOpcodeBits, kOpcodeBits)));
  };
  for (std::size_t i = 0; i + 1 < n_ops; ++i) {
    if (opcode_at(i) == Opcode::Halt) return invalid;
  }
  if (opcode_at(n_ops - 1) != Opcode::Halt) return invalid;
  if (n_ops > static_cast<std::size_t>(budget.max_opcodes)) return exhausted;

  Bits out;
  std::size_t aux_pos = 0;
  const auto max_out = static_cast<std::size_t>(budget.max_output_bits);
  for (std::size_t i = 0; i + 1 < n_ops; ++i) {
    switch (opcode_at(i)) {
      case Opcode::Emit0: out.push_back('0'); break;
      case Opcode::Emit1: out.push_back('1'); break;
      case Opcode::Dup: out += out; break;
      case Opcode::AuxBit:
        if (aux_pos >= aux.size()) return exhausted;
        out.push_back(aux[aux_pos++]);
        break;
      case Opcode::AuxRest:
        out += aux.substr(aux_pos);
        aux_pos = aux.size();
        break;
      case Opcode::Delete:
        if (out.empty()) return invalid;
        out.pop_back();
        break;
      case Opcode::Repeat:
        if (out.empty()) return invalid;
        out.push_back(out.back());
        break;
      case Opcode::Halt: return invalid;
    }
    if (out.size() > max_out) return exhausted;
  }
  return Outcome{Outcome::Kind::Output, std::move(out)};
}

BudgetTooSmall::BudgetTooSmall(std::size_t length, int max_opcodes)
    : std::runtime_error("budget too small: no program with <= " + std::to_string(max_opcodes) +
                         " opcodes outputs the requested string of length " + std::to_string(length)),
      length_(length) {}

bool operator==(const TableEntry& a, const TableEntry& b) {
  return a.output == b.output && a.k_bits == b.k_bits && a.m == b.m;
}

EnumerationTable::EnumerationTable(Bits aux, MachineBudget budget, std::vector<TableEntry> entries)
    : aux_(std::move(aux)), budget_(budget), entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end(),
            [](const TableEntry& a, const TableEntry& b) { return a.output < b.output; });
}

const TableEntry* EnumerationTable::find(std::string_view x) const {
  if (x.size() > 64) return nullptr;
  const PackedBits key = PackedBits::from_string(x);
  auto it = std::lower_bound(entries_.begin(), entries_.end(), key,
                             [](const TableEntry& e, const PackedBits& k) { return e.output < k; });
  if (it == entries_.end() || it->output != key) return nullptr;
  return &*it;
}

Dyadic EnumerationTable::kraft_sum() const {
  Dyadic total;
  for (const auto& e : entries_) total += e.m;
  return total;
}

bool operator==(const EnumerationTable& a, const EnumerationTable& b) {
  return a.aux_ == b.aux_ && a.budget_ == b.budget_ && a.entries_ == b.entries_;
}

namespace reference {

EnumerationTable enumerate(std::string_view aux, const MachineBudget& budget) {
  budget.validate();
  std::vector<std::pair<Bits, TableEntry>> found;
  std::vector<Opcode> ops;
  for (int body = 0; body < budget.max_opcodes; ++body) {
    std::vector<int> digits(static_cast<std::size_t>(body), 0);
    while (true) {
      ops.clear();
      for (int d : digits) ops.push_back(static_cast<Opcode>(d));
      ops.push_back(Opcode::Halt);
      const Program p = Program::from_opcodes(ops);
      const Outcome out = run(p, aux, budget);
      if (out.halted()) {
        TableEntry e;
        e.output = PackedBits::from_string(out.output);
        e.k_bits = static_cast<int>(p.bits.size());
        e.m = Dyadic::pow2_neg(e.k_bits);
        found.emplace_back(out.output, e);
      }
      // base-7 odometer over the opcode body
      std::size_t i = 0;
      while (i < digits.size() && ++digits[i] == kNonHaltOpcodes) digits[i++] = 0;
      if (i == digits.size()) break;
    }
  }
  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<TableEntry> merged;
  for (std::size_t i = 0; i < found.size();) {
    TableEntry e = found[i].second;
    std::size_t j = i + 1;
    for (; j < found.size() && found[j].first == found[i].first; ++j) {
      e.k_bits = std::min(e.k_bits, found[j].second.k_bits);
      e.m += found[j].second.m;
    }
    merged.push_back(e);
    i = j;
  }
  return EnumerationTable(Bits(aux), budget, std::move(merged));
}

}  // namespace reference

int k_budgeted(std::string_view x, const EnumerationTable& table) {
  if (const TableEntry* e = table.find(x)) return e->k_bits;
  throw BudgetTooSmall(x.size(), table.budget().max_opcodes);
}

int k_upper(std::string_view x, const EnumerationTable& table) {
  const int literal = static_cast<int>(kOpcodeBits * (x.size() + 1));
  if (const TableEntry* e = table.find(x)) return std::min(e->k_bits, literal);
  return literal;
}

Dyadic m_budgeted(std::string_view x, const EnumerationTable& table) {
  if (const TableEntry* e = table.find(x)) return e->m;
  return {};
}

namespace {
std::size_t zigzag(std::ptrdiff_t d) {
  return d >= 0 ? static_cast<std::size_t>(2 * d) : static_cast<std::size_t>(-2 * d - 1);
}
}  // namespace

Bits pair_encode(std::string_view x, std::string_view y) {
  Bits out;
  const std::size_t z = zigzag(static_cast<std::ptrdiff_t>(x.size()) - static_cast<std::ptrdiff_t>(y.size()));
  out.reserve(x.size() + y.size() + 1 + z);
  out += x;
  out += y;
  out.push_back('1');
  out.append(z, '0');
  return out;
}

std::optional<std::pair<Bits, Bits>> pair_decode(std::string_view code) {
  const auto last_one = code.find_last_of('1');
  if (last_one == std::string_view::npos) return std::nullopt;
  const std::size_t z = code.size() - last_one - 1;
  const auto diff = (z % 2 == 0) ? static_cast<std::ptrdiff_t>(z / 2) : -static_cast<std::ptrdiff_t>((z + 1) / 2);
  const auto body = static_cast<std::ptrdiff_t>(last_one);
  if ((body + diff) % 2 != 0) return std::nullopt;
  const std::ptrdiff_t x_len = (body + diff) / 2;
  if (x_len < 0 || x_len > body) return std::nullopt;
  return std::make_pair(Bits(code.substr(0, static_cast<std::size_t>(x_len))),
                        Bits(code.substr(static_cast<std::size_t>(x_len), static_cast<std::size_t>(body - x_len))));
}

double info_classical(std::string_view x, std::string_view y, const EnumerationTable& table) {
  const int kx = k_budgeted(x, table);
  const int ky = k_budgeted(y, table);
  const int kxy = k_budgeted(pair_encode(x, y), table);
  return static_cast<double>(kx + ky - kxy);
}

}  // namespace qait
