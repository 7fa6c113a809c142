#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rdel/rng.hpp"

namespace rdel {

using Bit = std::uint8_t;  // 0 or 1

// A classical original/copy pair. `first` is the original, `second` the
// copy slot.
struct BitPair {
  Bit first = 0;
  Bit second = 0;
  bool operator==(const BitPair&) const = default;
};

// Sequence of pairs plus the "empty" label bit. The flag is set only by a
// randomized deletion pass: a conventional all-zero blank is self-evidencing,
// a randomized one needs the label.
struct LabeledRegister {
  std::vector<BitPair> pairs;
  Bit empty_flag = 0;
  bool operator==(const LabeledRegister&) const = default;
};

// Controlled-not on a pair: (first, second XOR first). Involution.
BitPair cnot_pair(BitPair p);

// Imprint each first component onto its blank copy slot.
// PreconditionError unless every second component is 0. Clears empty_flag.
LabeledRegister clone_sequence(const LabeledRegister& reg);

// Reverse of clone_sequence: zero every copy slot of an identical-pair
// register. PreconditionError unless second == first everywhere.
// Leaves empty_flag untouched.
LabeledRegister cnot_delete_sequence(const LabeledRegister& reg);

// Randomized deletion: replace each copy slot with an independent fair bit
// and set empty_flag. PreconditionError unless second == first everywhere.
LabeledRegister r_delete_classical(const LabeledRegister& reg, RngStream& rng);

// Replace the copy slot with the original regardless of its content.
BitPair r_clone_classical(BitPair p);

// Text format: header line "empty_flag: 0|1", then one pair per line as
// "b1 b2". ConfigError on malformed input.
std::string register_to_text(const LabeledRegister& reg);
LabeledRegister register_from_text(const std::string& text);

}  // namespace rdel
