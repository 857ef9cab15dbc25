#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qait/bits.hpp"
#include "qait/dyadic.hpp"

namespace qait {

// Reference prefix-free machine. Every complexity in the project is relative
// to this machine; its identity is written into caches and reports.
inline constexpr std::string_view kMachineId = "op8-v1";

// Three-bit opcodes. The numeric value is the opcode's bit pattern.
enum class Opcode : std::uint8_t {
  Emit0 = 0,    // 000 append 0
  Emit1 = 1,    // 001 append 1
  Dup = 2,      // 010 x -> xx
  AuxBit = 3,   // 011 append next auxiliary bit
  AuxRest = 4,  // 100 append the rest of the auxiliary tape
  Delete = 5,   // 101 drop last output bit
  Repeat = 6,   // 110 append a copy of the last output bit
  Halt = 7,     // 111
};

inline constexpr int kOpcodeBits = 3;
inline constexpr int kNonHaltOpcodes = 7;

struct Program {
  Bits bits;

  static Program from_opcodes(std::span<const Opcode> ops);
  // One emit opcode per bit of x, then HALT.
  static Program literal(std::string_view x);

  std::size_t opcode_count() const { return bits.size() / kOpcodeBits; }
};

struct MachineBudget {
  int max_opcodes = 1;
  int max_output_bits = 64;

  // Outputs are packed into one machine word, so max_output_bits <= 64;
  // exact Kraft arithmetic needs 3 * max_opcodes <= 63.
  void validate() const;
  friend bool operator==(const MachineBudget&, const MachineBudget&) = default;
};

inline constexpr int kMaxOpcodes = 21;

struct Outcome {
  enum class Kind { Output, Exhausted, Invalid };
  Kind kind = Kind::Invalid;
  Bits output;

  bool halted() const { return kind == Kind::Output; }
};

Outcome run(const Program& program, std::string_view aux, const MachineBudget& budget);

class BudgetTooSmall : public std::runtime_error {
 public:
  BudgetTooSmall(std::size_t length, int max_opcodes);
  std::size_t length() const { return length_; }

 private:
  std::size_t length_;
};

struct TableEntry {
  PackedBits output;
  int k_bits = 0;  // length of the shortest producing program
  Dyadic m;        // sum of 2^-|p| over producing programs
};

// Budgeted K_L / m_L for one auxiliary tape. Immutable after construction.
class EnumerationTable {
 public:
  EnumerationTable(Bits aux, MachineBudget budget, std::vector<TableEntry> entries);

  const Bits& aux() const { return aux_; }
  const MachineBudget& budget() const { return budget_; }
  std::string_view machine_id() const { return kMachineId; }

  // Sorted lexicographically by output.
  std::span<const TableEntry> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  const TableEntry* find(std::string_view x) const;
  Dyadic kraft_sum() const;

  friend bool operator==(const EnumerationTable& a, const EnumerationTable& b);

 private:
  Bits aux_;
  MachineBudget budget_;
  std::vector<TableEntry> entries_;
};

bool operator==(const TableEntry& a, const TableEntry& b);

// Exhaustive enumeration over all valid programs with <= max_opcodes opcodes.
// Depth-first with prefix sharing; subtrees are distributed over OpenMP threads.
EnumerationTable enumerate(std::string_view aux, const MachineBudget& budget);

namespace reference {
// Brute force through run() one program at a time. Kept as the oracle for
// the enumeration kernel.
EnumerationTable enumerate(std::string_view aux, const MachineBudget& budget);
}  // namespace reference

// K_L(x|aux): throws BudgetTooSmall when x has no program within the budget.
int k_budgeted(std::string_view x, const EnumerationTable& table);

// min(K_L(x|aux), literal program length). Always defined; an upper bound on
// the machine's unbudgeted K.
int k_upper(std::string_view x, const EnumerationTable& table);

// m_L(x|aux), zero when absent.
Dyadic m_budgeted(std::string_view x, const EnumerationTable& table);

// Self-delimiting pair code: x ++ y ++ "1" ++ 0^z where z is the zigzag code
// of |x| - |y|. Equal-length pairs cost one trailing bit, so enc(x, x) is
// produced by any program for x followed by Dup and Emit1.
Bits pair_encode(std::string_view x, std::string_view y);
std::optional<std::pair<Bits, Bits>> pair_decode(std::string_view code);

// I_L(x:y|aux) = K_L(x) + K_L(y) - K_L(enc(x,y)). May be negative.
double info_classical(std::string_view x, std::string_view y, const EnumerationTable& table);

}  // namespace qait
