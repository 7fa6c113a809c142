#include "rdel/classical.hpp"

#include <sstream>

#include "rdel/errors.hpp"

namespace rdel {

namespace {

void require_identical(const LabeledRegister& reg, const char* op) {
  for (const auto& p : reg.pairs) {
    if (p.first != p.second)
      throw PreconditionError(std::string(op) +
                              ": register pairs are not identical copies");
  }
}

Bit parse_bit(const std::string& token, const char* what) {
  if (token == "0") return 0;
  if (token == "1") return 1;
  throw ConfigError(std::string("register: bad ") + what + " '" + token + "'");
}

}  // namespace

BitPair cnot_pair(BitPair p) {
  return BitPair{p.first, static_cast<Bit>(p.second ^ p.first)};
}

LabeledRegister clone_sequence(const LabeledRegister& reg) {
  for (const auto& p : reg.pairs) {
    if (p.second != 0)
      throw PreconditionError("clone_sequence: register is not blank");
  }
  LabeledRegister out;
  out.pairs.reserve(reg.pairs.size());
  for (const auto& p : reg.pairs) out.pairs.push_back(cnot_pair(p));
  out.empty_flag = 0;
  return out;
}

LabeledRegister cnot_delete_sequence(const LabeledRegister& reg) {
  require_identical(reg, "cnot_delete_sequence");
  LabeledRegister out;
  out.pairs.reserve(reg.pairs.size());
  for (const auto& p : reg.pairs) out.pairs.push_back(cnot_pair(p));
  out.empty_flag = reg.empty_flag;
  return out;
}

LabeledRegister r_delete_classical(const LabeledRegister& reg,
                                   RngStream& rng) {
  require_identical(reg, "r_delete_classical");
  LabeledRegister out;
  out.pairs.reserve(reg.pairs.size());
  for (const auto& p : reg.pairs)
    out.pairs.push_back(BitPair{p.first, static_cast<Bit>(rng.next_bit())});
  out.empty_flag = 1;
  return out;
}

BitPair r_clone_classical(BitPair p) { return BitPair{p.first, p.first}; }

std::string register_to_text(const LabeledRegister& reg) {
  std::ostringstream out;
  out << "empty_flag: " << static_cast<int>(reg.empty_flag) << "\n";
  for (const auto& p : reg.pairs)
    out << static_cast<int>(p.first) << " " << static_cast<int>(p.second)
        << "\n";
  return out.str();
}

LabeledRegister register_from_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line))
    throw ConfigError("register: missing empty_flag header");
  const std::string prefix = "empty_flag: ";
  if (line.rfind(prefix, 0) != 0)
    throw ConfigError("register: first line must be 'empty_flag: 0|1'");
  LabeledRegister reg;
  reg.empty_flag = parse_bit(line.substr(prefix.size()), "empty_flag");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string a, b, extra;
    if (!(row >> a >> b) || (row >> extra))
      throw ConfigError("register: expected 'b1 b2' per line, got '" + line +
                        "'");
    reg.pairs.push_back(BitPair{parse_bit(a, "bit"), parse_bit(b, "bit")});
  }
  return reg;
}

}  // namespace rdel
