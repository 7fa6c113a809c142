#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "rdel/classical.hpp"
#include "rdel/errors.hpp"
#include "rdel/rng.hpp"

using rdel::BitPair;
using rdel::LabeledRegister;
using rdel::RngStream;

namespace {

LabeledRegister make_register(std::vector<BitPair> pairs, rdel::Bit flag = 0) {
  LabeledRegister reg;
  reg.pairs = std::move(pairs);
  reg.empty_flag = flag;
  return reg;
}

}  // namespace

TEST_CASE("controlled-not truth table") {
  CHECK(rdel::cnot_pair({0, 0}) == BitPair{0, 0});
  CHECK(rdel::cnot_pair({0, 1}) == BitPair{0, 1});
  CHECK(rdel::cnot_pair({1, 0}) == BitPair{1, 1});
  CHECK(rdel::cnot_pair({1, 1}) == BitPair{1, 0});
}

TEST_CASE("controlled-not is an involution on all four inputs") {
  for (rdel::Bit a : {0, 1})
    for (rdel::Bit b : {0, 1}) {
      const BitPair p{a, b};
      CHECK(rdel::cnot_pair(rdel::cnot_pair(p)) == p);
    }
}

TEST_CASE("cloning imprints first components onto a blank sequence") {
  const auto out =
      rdel::clone_sequence(make_register({{0, 0}, {1, 0}, {1, 0}}));
  CHECK(out.pairs == std::vector<BitPair>{{0, 0}, {1, 1}, {1, 1}});
  CHECK(out.empty_flag == 0);

  CHECK(rdel::clone_sequence(make_register({})).pairs.empty());
  CHECK(rdel::clone_sequence(make_register({{0, 0}})).pairs ==
        std::vector<BitPair>{{0, 0}});
}

TEST_CASE("cloning clears the empty flag and rejects non-blank input") {
  const auto out = rdel::clone_sequence(make_register({{1, 0}}, 1));
  CHECK(out.empty_flag == 0);
  CHECK_THROWS_AS(rdel::clone_sequence(make_register({{1, 1}})),
                  rdel::PreconditionError);
}

TEST_CASE("deletion zeroes the copies of an identical-pair sequence") {
  const auto out =
      rdel::cnot_delete_sequence(make_register({{1, 1}, {0, 0}, {1, 1}}));
  CHECK(out.pairs == std::vector<BitPair>{{1, 0}, {0, 0}, {1, 0}});

  CHECK(rdel::cnot_delete_sequence(make_register({})).pairs.empty());
  CHECK(rdel::cnot_delete_sequence(make_register({{0, 0}})).pairs ==
        std::vector<BitPair>{{0, 0}});
}

TEST_CASE("deletion leaves the empty flag untouched and checks its input") {
  CHECK(rdel::cnot_delete_sequence(make_register({{1, 1}}, 1)).empty_flag == 1);
  CHECK(rdel::cnot_delete_sequence(make_register({{1, 1}}, 0)).empty_flag == 0);
  CHECK_THROWS_AS(rdel::cnot_delete_sequence(make_register({{1, 0}})),
                  rdel::PreconditionError);
}

TEST_CASE("clone then delete is the identity on blank registers") {
  RngStream rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    LabeledRegister reg;
    const std::size_t len = rng.next_index(65);
    for (std::size_t i = 0; i < len; ++i)
      reg.pairs.push_back({static_cast<rdel::Bit>(rng.next_bit()), 0});
    CHECK(rdel::cnot_delete_sequence(rdel::clone_sequence(reg)) == reg);
  }
}

TEST_CASE("randomized deletion replaces copies with fair bits") {
  const std::size_t n = 10000;
  LabeledRegister reg;
  RngStream bits(7);
  for (std::size_t i = 0; i < n; ++i) {
    const rdel::Bit b = static_cast<rdel::Bit>(bits.next_bit());
    reg.pairs.push_back({b, b});
  }
  RngStream rng(42);
  const auto out = rdel::r_delete_classical(reg, rng);

  CHECK(out.empty_flag == 1);
  std::size_t ones = 0;
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(out.pairs[i].first == reg.pairs[i].first);
    ones += out.pairs[i].second;
  }
  const double freq = static_cast<double>(ones) / static_cast<double>(n);
  CHECK(freq >= 0.47);
  CHECK(freq <= 0.53);

  RngStream rng2(42);
  CHECK(rdel::r_delete_classical(reg, rng2) == out);

  CHECK_THROWS_AS(
      [&] {
        RngStream r(1);
        return rdel::r_delete_classical(make_register({{1, 0}}), r);
      }(),
      rdel::PreconditionError);
}

TEST_CASE("randomized copy-slot bits pass a chi-square uniformity test") {
  const std::size_t n = 100000;
  LabeledRegister reg;
  reg.pairs.assign(n, {1, 1});
  RngStream rng(2024);
  const auto out = rdel::r_delete_classical(reg, rng);
  double ones = 0;
  for (const auto& p : out.pairs) ones += p.second;
  const double expected = static_cast<double>(n) / 2.0;
  const double chi2 = (ones - expected) * (ones - expected) / expected +
                      ((n - ones) - expected) * ((n - ones) - expected) /
                          expected;
  // df = 1, significance 0.001
  CHECK(chi2 < 10.828);
}

TEST_CASE("r-cloning replaces the copy slot with the original") {
  CHECK(rdel::r_clone_classical({1, 0}) == BitPair{1, 1});
  CHECK(rdel::r_clone_classical({1, 1}) == BitPair{1, 1});
  CHECK(rdel::r_clone_classical({0, 1}) == BitPair{0, 0});
}

TEST_CASE("r-cloning undoes randomized deletion for every draw") {
  RngStream rng(55);
  for (int trial = 0; trial < 50; ++trial) {
    LabeledRegister reg;
    const std::size_t len = 1 + rng.next_index(64);
    for (std::size_t i = 0; i < len; ++i) {
      const rdel::Bit b = static_cast<rdel::Bit>(rng.next_bit());
      reg.pairs.push_back({b, b});
    }
    RngStream sub = rng.split(trial);
    auto deleted = rdel::r_delete_classical(reg, sub);
    for (auto& p : deleted.pairs) p = rdel::r_clone_classical(p);
    CHECK(deleted.pairs == reg.pairs);
  }
}

TEST_CASE("r-cloning contains the blank-slot cloning action") {
  for (rdel::Bit a : {0, 1}) {
    const BitPair blank{a, 0};
    CHECK(rdel::r_clone_classical(blank) == rdel::cnot_pair(blank));
  }
}

TEST_CASE("register text round trip") {
  const LabeledRegister reg = make_register({{1, 1}, {0, 1}, {1, 0}}, 1);
  const std::string text = rdel::register_to_text(reg);
  CHECK(text == "empty_flag: 1\n1 1\n0 1\n1 0\n");
  CHECK(rdel::register_from_text(text) == reg);

  const LabeledRegister empty = make_register({});
  CHECK(rdel::register_from_text(rdel::register_to_text(empty)) == empty);
}

TEST_CASE("register text parser rejects malformed input") {
  CHECK_THROWS_AS(rdel::register_from_text(""), rdel::ConfigError);
  CHECK_THROWS_AS(rdel::register_from_text("flags: 0\n"), rdel::ConfigError);
  CHECK_THROWS_AS(rdel::register_from_text("empty_flag: 2\n"),
                  rdel::ConfigError);
  CHECK_THROWS_AS(rdel::register_from_text("empty_flag: 0\n1\n"),
                  rdel::ConfigError);
  CHECK_THROWS_AS(rdel::register_from_text("empty_flag: 0\n1 0 1\n"),
                  rdel::ConfigError);
  CHECK_THROWS_AS(rdel::register_from_text("empty_flag: 0\n1 x\n"),
                  rdel::ConfigError);
}
