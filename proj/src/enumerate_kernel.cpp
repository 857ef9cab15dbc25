#include <algorithm>
#include <unordered_map>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qait/toy_machine.hpp"

namespace qait {
namespace {

struct Accumulator {
  int min_ops = 0;
  std::uint64_t weight = 0;  // in units of 2^-(3L)
};

using LocalMap = std::unordered_map<PackedBits, Accumulator, PackedBitsHash>;

struct Register {
  std::uint64_t word = 0;
  int len = 0;
  std::size_t aux_pos = 0;
};

enum class Step { Ok, Stop };

struct Walker {
  const Bits& aux;
  int max_ops;
  int max_out;
  LocalMap& map;

  // Applies one non-halt opcode. Stop covers both exhausted and invalid:
  // neither the program nor any extension of it halts.
  Step apply(Register& r, Opcode op) const {
    auto push = [&](std::uint64_t bit) {
      if (r.len + 1 > max_out) return false;
      r.word |= bit << (63 - r.len);
      ++r.len;
      return true;
    };
    switch (op) {
      case Opcode::Emit0: return push(0) ? Step::Ok : Step::Stop;
      case Opcode::Emit1: return push(1) ? Step::Ok : Step::Stop;
      case Opcode::Dup:
        if (2 * r.len > max_out) return Step::Stop;
        if (r.len > 0) r.word |= r.word >> r.len;
        r.len *= 2;
        return Step::Ok;
      case Opcode::AuxBit:
        if (r.aux_pos >= aux.size()) return Step::Stop;
        return push(aux[r.aux_pos++] == '1' ? 1 : 0) ? Step::Ok : Step::Stop;
      case Opcode::AuxRest: {
        if (r.len + static_cast<int>(aux.size() - r.aux_pos) > max_out) return Step::Stop;
        while (r.aux_pos < aux.size()) push(aux[r.aux_pos++] == '1' ? 1 : 0);
        return Step::Ok;
      }
      case Opcode::Delete:
        if (r.len == 0) return Step::Stop;
        --r.len;
        r.word &= ~(std::uint64_t{1} << (63 - r.len));
        return Step::Ok;
      case Opcode::Repeat:
        if (r.len == 0) return Step::Stop;
        return push((r.word >> (64 - r.len)) & 1U) ? Step::Ok : Step::Stop;
      case Opcode::Halt: return Step::Stop;
    }
    return Step::Stop;
  }

  void record(const Register& r, int body_ops) const {
    const int ops = body_ops + 1;
    const PackedBits key{r.word, static_cast<std::uint8_t>(r.len)};
    const std::uint64_t w = std::uint64_t{1} << (kOpcodeBits * (max_ops - ops));
    auto [it, inserted] = map.try_emplace(key, Accumulator{ops, w});
    if (!inserted) {
      it->second.min_ops = std::min(it->second.min_ops, ops);
      it->second.weight += w;
    }
  }

  // Records the halting program at this node, then extends the body.
  void walk(const Register& r, int body_ops) const {
    record(r, body_ops);
    if (body_ops + 1 >= max_ops) return;
    for (int op = 0; op < kNonHaltOpcodes; ++op) {
      Register next = r;
      if (apply(next, static_cast<Opcode>(op)) == Step::Ok) walk(next, body_ops + 1);
    }
  }
};

}  // namespace

EnumerationTable enumerate(std::string_view aux_view, const MachineBudget& budget) {
  budget.validate();
  require_bitstring(aux_view, "enumerate(aux)");
  const Bits aux(aux_view);
  const int max_ops = budget.max_opcodes;

  // Split the program tree at depth 2 (49 subtrees) so dynamic scheduling
  // has something to balance. Nodes above the split are walked serially.
  const int split = std::min(2, max_ops - 1);
  LocalMap top;
  Walker top_walker{aux, max_ops, budget.max_output_bits, top};
  std::vector<std::pair<Register, int>> frontier{{Register{}, 0}};
  for (int depth = 0; depth < split; ++depth) {
    std::vector<std::pair<Register, int>> next;
    for (const auto& [r, d] : frontier) {
      top_walker.record(r, d);
      for (int op = 0; op < kNonHaltOpcodes; ++op) {
        Register child = r;
        if (top_walker.apply(child, static_cast<Opcode>(op)) == Step::Ok) next.emplace_back(child, d + 1);
      }
    }
    frontier = std::move(next);
  }

  int n_threads = 1;
#ifdef _OPENMP
  n_threads = omp_get_max_threads();
#endif
  std::vector<LocalMap> locals(static_cast<std::size_t>(n_threads));
  const auto n_frontier = static_cast<std::ptrdiff_t>(frontier.size());

#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < n_frontier; ++i) {
    int tid = 0;
#ifdef _OPENMP
    tid = omp_get_thread_num();
#endif
    Walker w{aux, max_ops, budget.max_output_bits, locals[static_cast<std::size_t>(tid)]};
    const auto& [r, d] = frontier[static_cast<std::size_t>(i)];
    w.walk(r, d);
  }

  // Merge is min/sum over integers, so the result does not depend on how
  // subtrees were assigned to threads.
  LocalMap& merged = top;
  for (auto& local : locals) {
    for (const auto& [key, acc] : local) {
      auto [it, inserted] = merged.try_emplace(key, acc);
      if (!inserted) {
        it->second.min_ops = std::min(it->second.min_ops, acc.min_ops);
        it->second.weight += acc.weight;
      }
    }
    LocalMap().swap(local);
  }

  std::vector<TableEntry> entries;
  entries.reserve(merged.size());
  const int den = kOpcodeBits * max_ops;
  for (const auto& [key, acc] : merged) {
    entries.push_back(TableEntry{key, kOpcodeBits * acc.min_ops, Dyadic(acc.weight, den)});
  }
  return EnumerationTable(aux, budget, std::move(entries));
}

}  // namespace qait
