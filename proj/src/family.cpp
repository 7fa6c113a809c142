#include "rdel/family.hpp"

#include <cmath>
#include <cstdio>

#include "rdel/errors.hpp"

namespace rdel {

namespace {

constexpr double kProbTol = 1e-12;

std::string haar_label(const StateVector& s) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "haar(%+.6f%+.6fi;%+.6f%+.6fi)",
                s.amp(0).real(), s.amp(0).imag(), s.amp(1).real(),
                s.amp(1).imag());
  return buf;
}

complex_t amp_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ConfigError("family: amplitude must be a [re, im] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

StateVector ket_h() { return StateVector({2}, {1.0, 0.0}); }
StateVector ket_v() { return StateVector({2}, {0.0, 1.0}); }

StateFamily StateFamily::discrete(std::vector<FamilyMember> members) {
  if (members.empty())
    throw ParameterError("StateFamily: discrete family needs >= 1 member");
  double total = 0.0;
  for (const auto& m : members) {
    if (m.state.dim() != 2)
      throw ShapeError("StateFamily: members must be single qubits");
    if (!m.state.is_normalized())
      throw DomainError("StateFamily: member '" + m.label +
                        "' is not normalized");
    if (m.prob < 0.0)
      throw ParameterError("StateFamily: negative probability for '" +
                           m.label + "'");
    total += m.prob;
  }
  if (std::abs(total - 1.0) > kProbTol)
    throw ParameterError("StateFamily: probabilities do not sum to 1");
  StateFamily f;
  f.members_ = std::move(members);
  return f;
}

StateFamily StateFamily::uniform(
    std::vector<std::pair<std::string, StateVector>> members) {
  if (members.empty())
    throw ParameterError("StateFamily: uniform family needs >= 1 member");
  const double p = 1.0 / static_cast<double>(members.size());
  std::vector<FamilyMember> out;
  out.reserve(members.size());
  for (auto& [label, state] : members)
    out.push_back(FamilyMember{std::move(label), std::move(state), p});
  return discrete(std::move(out));
}

StateFamily StateFamily::singleton(std::string label, StateVector state) {
  return discrete({FamilyMember{std::move(label), std::move(state), 1.0}});
}

StateFamily StateFamily::haar() {
  StateFamily f;
  f.haar_ = true;
  return f;
}

StateFamily StateFamily::hv() {
  return uniform({{"H", ket_h()}, {"V", ket_v()}});
}

std::pair<std::string, StateVector> StateFamily::sample(RngStream& rng) const {
  if (haar_) {
    // Two independent standard complex Gaussians, normalized: Haar on pure
    // qubit states.
    const double re0 = rng.next_gaussian();
    const double im0 = rng.next_gaussian();
    const double re1 = rng.next_gaussian();
    const double im1 = rng.next_gaussian();
    StateVector s({2}, {{re0, im0}, {re1, im1}});
    s = s.normalized();
    return {haar_label(s), s};
  }
  const double u = rng.next_canonical();
  double cdf = 0.0;
  for (const auto& m : members_) {
    cdf += m.prob;
    if (u < cdf) return {m.label, m.state};
  }
  const auto& last = members_.back();  // guard against rounding in the cdf
  return {last.label, last.state};
}

DensityMatrix StateFamily::average() const {
  if (haar_) return DensityMatrix::maximally_mixed({2});
  std::vector<std::pair<double, StateVector>> parts;
  parts.reserve(members_.size());
  for (const auto& m : members_) parts.emplace_back(m.prob, m.state);
  return mixture(parts);
}

std::string StateFamily::describe() const {
  if (haar_) return "haar";
  std::string out = "discrete{";
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (i > 0) out += ";";
    char buf[32];
    std::snprintf(buf, sizeof(buf), ":%g", members_[i].prob);
    out += members_[i].label + buf;
  }
  out += "}";
  return out;
}

nlohmann::json StateFamily::to_json() const {
  if (haar_) return {{"kind", "haar"}};
  nlohmann::json members = nlohmann::json::array();
  for (const auto& m : members_) {
    members.push_back(
        {{"label", m.label},
         {"amps",
          {{m.state.amp(0).real(), m.state.amp(0).imag()},
           {m.state.amp(1).real(), m.state.amp(1).imag()}}},
         {"prob", m.prob}});
  }
  return {{"kind", "discrete"}, {"members", members}};
}

StateFamily StateFamily::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw ConfigError("family: expected an object with a 'kind' field");
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "haar") return haar();
  if (kind != "discrete")
    throw ConfigError("family: unknown kind '" + kind + "'");
  if (!j.contains("members") || !j["members"].is_array() ||
      j["members"].empty())
    throw ConfigError("family: discrete family needs a 'members' array");

  std::vector<FamilyMember> members;
  bool any_prob = false, all_prob = true;
  for (const auto& mj : j["members"]) {
    if (!mj.is_object() || !mj.contains("label") || !mj["label"].is_string() ||
        !mj.contains("amps") || !mj["amps"].is_array() || mj["amps"].size() != 2)
      throw ConfigError("family: each member needs 'label' and two 'amps'");
    FamilyMember m;
    m.label = mj["label"].get<std::string>();
    StateVector state({2}, {amp_from_json(mj["amps"][0]),
                            amp_from_json(mj["amps"][1])});
    if (!state.is_normalized(1e-9))
      throw ConfigError("family: member '" + m.label + "' is not normalized");
    m.state = state.normalized();
    if (mj.contains("prob")) {
      if (!mj["prob"].is_number())
        throw ConfigError("family: 'prob' must be a number");
      m.prob = mj["prob"].get<double>();
      any_prob = true;
    } else {
      all_prob = false;
    }
    members.push_back(std::move(m));
  }
  if (any_prob && !all_prob)
    throw ConfigError("family: give 'prob' for every member or for none");
  if (!any_prob) {
    const double p = 1.0 / static_cast<double>(members.size());
    for (auto& m : members) m.prob = p;
  }
  try {
    return discrete(std::move(members));
  } catch (const Error& e) {
    throw ConfigError(std::string("family: ") + e.what());
  }
}

}  // namespace rdel
