#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "rdel/deletion.hpp"
#include "rdel/errors.hpp"
#include "rdel/family.hpp"
#include "rdel/linalg.hpp"
#include "rdel/rng.hpp"

using rdel::complex_t;
using rdel::DeletionIsometry;
using rdel::DensityMatrix;
using rdel::Matrix;
using rdel::QuantumChannel;
using rdel::RngStream;
using rdel::StateFamily;
using rdel::StateVector;

namespace {

// Explicit 12x4 matrix-product check, independent of the library's
// matrix routines: max |(V^dagger V - I)_{ij}|.
double isometry_defect(const DeletionIsometry& iso) {
  double defect = 0.0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      complex_t acc{0.0, 0.0};
      for (std::size_t a = 0; a < 12; ++a)
        acc += std::conj(iso.matrix()(a, i)) * iso.matrix()(a, j);
      const complex_t expect = (i == j) ? complex_t{1.0, 0.0}
                                        : complex_t{0.0, 0.0};
      defect = std::max(defect, std::abs(acc - expect));
    }
  return defect;
}

StateVector random_qubit(RngStream& rng) {
  return StateFamily::haar().sample(rng).second;
}

StateVector psi_pair(complex_t alpha, complex_t beta) {
  const StateVector psi({2}, {alpha, beta});
  return rdel::tensor(psi, psi);
}

}  // namespace

TEST_CASE("ancilla basis is orthonormal") {
  const StateVector states[3] = {rdel::ancilla_ready(), rdel::ancilla_h(),
                                 rdel::ancilla_v()};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(std::abs(rdel::inner(states[i], states[j]) -
                     (i == j ? complex_t{1.0, 0.0} : complex_t{0.0, 0.0})) <
            1e-15);
}

TEST_CASE("quantum controlled-not entangles a superposition with a blank") {
  const complex_t alpha{0.6, 0.0}, beta{-0.48, 0.64};
  const StateVector in =
      rdel::tensor(StateVector({2}, {alpha, beta}), rdel::ket_h());
  const StateVector out = rdel::cnot_quantum(in);
  CHECK(std::abs(out.amp(0) - alpha) < 1e-15);  // |00>
  CHECK(std::abs(out.amp(1)) < 1e-15);
  CHECK(std::abs(out.amp(2)) < 1e-15);
  CHECK(std::abs(out.amp(3) - beta) < 1e-15);  // |11>
}

TEST_CASE("quantum controlled-not basis action and unitarity") {
  CHECK((rdel::cnot_quantum(StateVector::basis({2, 2}, 0)) -
         StateVector::basis({2, 2}, 0))
            .norm() == 0.0);
  CHECK((rdel::cnot_quantum(StateVector::basis({2, 2}, 3)) -
         StateVector::basis({2, 2}, 2))
            .norm() == 0.0);

  RngStream rng(61);
  for (int i = 0; i < 20; ++i) {
    const StateVector s = rdel::tensor(random_qubit(rng), random_qubit(rng));
    CHECK(rdel::cnot_quantum(s).norm() == doctest::Approx(1.0).epsilon(1e-12));
    // involution
    CHECK((rdel::cnot_quantum(rdel::cnot_quantum(s)) - s).norm() < 1e-14);
  }
  CHECK_THROWS_AS(rdel::cnot_quantum(rdel::ket_h()), rdel::ShapeError);
}

TEST_CASE("basis inputs map to their drawn standard state and remnant") {
  RngStream rng(62);
  const DeletionIsometry iso = rdel::build_r_deletion(StateFamily::haar(), rng);
  const auto& d = iso.draw();

  const StateVector hh = iso.apply(rdel::tensor(rdel::ket_h(), rdel::ket_h()));
  const StateVector expect_hh = rdel::tensor(
      rdel::tensor(rdel::ket_h(), d.sigma2.state), rdel::ancilla_h());
  CHECK((hh - StateVector({2, 2, 3}, expect_hh.amps())).norm() < 1e-14);

  const StateVector vv = iso.apply(rdel::tensor(rdel::ket_v(), rdel::ket_v()));
  const StateVector expect_vv = rdel::tensor(
      rdel::tensor(rdel::ket_v(), d.sigma3.state), rdel::ancilla_v());
  CHECK((vv - StateVector({2, 2, 3}, expect_vv.amps())).norm() < 1e-14);
}

TEST_CASE("superposition input expands with the squared amplitudes") {
  RngStream rng(63);
  const DeletionIsometry iso = rdel::build_r_deletion(StateFamily::haar(), rng);
  const complex_t alpha{0.48, 0.36}, beta{0.64, -0.48};

  const StateVector actual = iso.apply(psi_pair(alpha, beta));
  const StateVector expected =
      iso.basis_image(0).scaled(alpha * alpha) +
      iso.basis_image(3).scaled(beta * beta) +
      (iso.basis_image(1) + iso.basis_image(2)).scaled(alpha * beta);
  CHECK((actual - expected).norm() < 1e-13);

  // Same expansion through |Phi>.
  const StateVector via_phi =
      iso.basis_image(0).scaled(alpha * alpha) +
      iso.basis_image(3).scaled(beta * beta) +
      rdel::phi_state(iso).scaled(std::sqrt(2.0) * alpha * beta);
  CHECK((actual - via_phi).norm() < 1e-13);
}

TEST_CASE("every draw yields an exact isometry") {
  RngStream rng(64);
  // 100 Haar draws with the explicit matrix-product oracle.
  for (int i = 0; i < 100; ++i) {
    RngStream sub = rng.split(i);
    CHECK(isometry_defect(rdel::build_r_deletion(StateFamily::haar(), sub)) <
          1e-12);
  }
  // 200 draws across singleton, two-member, and Haar families.
  const StateFamily families[3] = {
      StateFamily::singleton("s", random_qubit(rng)), StateFamily::hv(),
      StateFamily::haar()};
  for (int i = 0; i < 200; ++i) {
    RngStream sub = rng.split(1000 + i);
    const DeletionIsometry iso =
        rdel::build_r_deletion(families[i % 3], sub);
    CHECK(isometry_defect(iso) < 1e-12);
  }
}

TEST_CASE("the map is linear and norm preserving") {
  RngStream rng(65);
  const DeletionIsometry iso = rdel::build_r_deletion(StateFamily::haar(), rng);
  for (int i = 0; i < 100; ++i) {
    const StateVector x = rdel::tensor(random_qubit(rng), random_qubit(rng));
    const StateVector y = rdel::tensor(random_qubit(rng), random_qubit(rng));
    const complex_t a{rng.next_gaussian(), rng.next_gaussian()};
    const complex_t b{rng.next_gaussian(), rng.next_gaussian()};

    const StateVector lhs = iso.apply(x.scaled(a) + y.scaled(b));
    const StateVector rhs = iso.apply(x).scaled(a) + iso.apply(y).scaled(b);
    CHECK((lhs - rhs).norm() < 1e-12);
    CHECK(iso.apply(x).norm() == doctest::Approx(x.norm()).epsilon(1e-12));
  }
}

TEST_CASE("phi state: symmetric entangled input, deleted and recorded") {
  RngStream rng(66);
  const StateVector sigma = random_qubit(rng);
  const DeletionIsometry single = rdel::ordinary_deletion(sigma);
  const StateVector phi = rdel::phi_state(single);
  const double r = 1.0 / std::sqrt(2.0);
  const StateVector expect =
      (rdel::tensor(rdel::tensor(rdel::ket_h(), sigma), rdel::ancilla_v()) +
       rdel::tensor(rdel::tensor(rdel::ket_v(), sigma), rdel::ancilla_h()))
          .scaled(r);
  CHECK((phi - StateVector({2, 2, 3}, expect.amps())).norm() < 1e-14);

  for (int i = 0; i < 20; ++i) {
    RngStream sub = rng.split(i);
    const DeletionIsometry iso =
        rdel::build_r_deletion(StateFamily::haar(), sub);
    const StateVector p = rdel::phi_state(iso);
    CHECK(p.norm() == doctest::Approx(1.0).epsilon(1e-12));
    // Orthogonal to the image of |HH>|A>: remnants differ in the first
    // branch, kept qubits differ in the second.
    CHECK(std::abs(rdel::inner(p, iso.basis_image(0))) < 1e-13);
    // phi is the image of the symmetric entangled state.
    const StateVector sym({2, 2}, {0.0, r, r, 0.0});
    CHECK((p - iso.apply(sym)).norm() < 1e-13);
  }
}

TEST_CASE("ordinary deletion is the singleton special case") {
  RngStream rng(67);
  const StateVector sigma = random_qubit(rng);
  const DeletionIsometry fixed = rdel::ordinary_deletion(sigma);

  const StateVector hh = fixed.apply(rdel::tensor(rdel::ket_h(), rdel::ket_h()));
  const StateVector expect_hh = rdel::tensor(
      rdel::tensor(rdel::ket_h(), sigma), rdel::ancilla_h());
  CHECK((hh - StateVector({2, 2, 3}, expect_hh.amps())).norm() < 1e-14);

  // Sigma = |H>, input |VV>: kept |V>, slot freshly |H>, remnant A_V.
  const DeletionIsometry blank_h = rdel::ordinary_deletion(rdel::ket_h());
  const StateVector vv =
      blank_h.apply(rdel::tensor(rdel::ket_v(), rdel::ket_v()));
  const StateVector expect_vv = rdel::tensor(
      rdel::tensor(rdel::ket_v(), rdel::ket_h()), rdel::ancilla_v());
  CHECK((vv - StateVector({2, 2, 3}, expect_vv.amps())).norm() < 1e-15);

  // build_r_deletion over the singleton family matches entrywise.
  RngStream sub(5);
  const DeletionIsometry via_family =
      rdel::build_r_deletion(StateFamily::singleton("s", sigma), sub);
  CHECK(Matrix::max_abs_diff(fixed.matrix(), via_family.matrix()) == 0.0);
}

TEST_CASE("exact averaged channel over {H, V} is CPTP") {
  const QuantumChannel channel = rdel::averaged_channel_exact(StateFamily::hv());
  CHECK(channel.min_choi_eigenvalue() >= -1e-10);
  CHECK(channel.tp_defect() < 1e-10);

  // Oracle for the TP check: explicit partial trace over the output block.
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      complex_t acc{0.0, 0.0};
      for (std::size_t a = 0; a < 12; ++a)
        acc += channel.choi()(i * 12 + a, j * 12 + a);
      CHECK(std::abs(acc - (i == j ? complex_t{1.0, 0.0}
                                   : complex_t{0.0, 0.0})) < 1e-12);
    }
}

TEST_CASE("deleted-slot marginal of the averaged channel is the family average") {
  const StateFamily family = StateFamily::hv();
  const QuantumChannel channel = rdel::averaged_channel_exact(family);
  const DensityMatrix rho_bar = family.average();

  const StateVector hh = rdel::tensor(rdel::ket_h(), rdel::ket_h());
  const DensityMatrix out_hh = channel.apply(rdel::pure_density(hh));
  CHECK(rdel::trace_distance(rdel::partial_trace(out_hh, {1}), rho_bar) <
        1e-10);

  const double r = 1.0 / std::sqrt(2.0);
  const DensityMatrix out_plus =
      channel.apply(rdel::pure_density(psi_pair(r, r)));
  CHECK(rdel::trace_distance(rdel::partial_trace(out_plus, {1}), rho_bar) <
        1e-10);

  RngStream rng(68);
  for (int i = 0; i < 50; ++i) {
    const StateVector psi = random_qubit(rng);
    const DensityMatrix out =
        channel.apply(rdel::pure_density(rdel::tensor(psi, psi)));
    CHECK(rdel::trace_distance(rdel::partial_trace(out, {1}), rho_bar) <
          1e-10);
  }
}

TEST_CASE("channel output conserves trace and positivity per input") {
  const QuantumChannel channel = rdel::averaged_channel_exact(StateFamily::hv());
  RngStream rng(69);
  for (int i = 0; i < 10; ++i) {
    const StateVector in = rdel::tensor(random_qubit(rng), random_qubit(rng));
    const DensityMatrix out = channel.apply(rdel::pure_density(in));
    CHECK(std::abs(out.entries().trace() - complex_t{1.0, 0.0}) < 1e-12);
    CHECK(out.min_eigenvalue() >= -1e-10);
  }
}

TEST_CASE("monte carlo averaging approaches the exact channel") {
  const StateFamily family = StateFamily::hv();
  const QuantumChannel exact = rdel::averaged_channel_exact(family);
  RngStream rng(70);
  const QuantumChannel sampled =
      rdel::averaged_channel_sampled(family, 4000, rng);
  CHECK(Matrix::max_abs_diff(exact.choi(), sampled.choi()) < 0.05);
  CHECK(sampled.tp_defect() < 1e-10);

  RngStream rng2(71);
  CHECK_THROWS_AS(rdel::averaged_channel_sampled(family, 0, rng2),
                  rdel::ParameterError);
}

TEST_CASE("exact averaging restrictions") {
  CHECK_THROWS_AS(rdel::averaged_channel_exact(StateFamily::haar()),
                  rdel::DomainError);
  RngStream rng(72);
  std::vector<std::pair<std::string, StateVector>> many;
  for (int i = 0; i < 9; ++i)
    many.emplace_back("m" + std::to_string(i), random_qubit(rng));
  CHECK_THROWS_AS(rdel::averaged_channel_exact(StateFamily::uniform(many)),
                  rdel::CapacityError);
}

TEST_CASE("quantum r-cloning overwrites any second slot with a basis first") {
  RngStream rng(73);
  const StateVector sigma = random_qubit(rng);
  const StateVector hh = rdel::r_clone_quantum(rdel::ket_h(), sigma);
  CHECK((hh - rdel::tensor(rdel::ket_h(), rdel::ket_h())).norm() == 0.0);

  const StateVector vv = rdel::r_clone_quantum(rdel::ket_v(), rdel::ket_v());
  CHECK((vv - rdel::tensor(rdel::ket_v(), rdel::ket_v())).norm() == 0.0);

  const StateVector hv = rdel::r_clone_quantum(rdel::ket_h(), rdel::ket_v());
  CHECK((hv - rdel::tensor(rdel::ket_h(), rdel::ket_h())).norm() == 0.0);

  try {
    rdel::r_clone_quantum(StateVector({2}, {0.6, 0.8}), sigma);
    FAIL("expected DomainError");
  } catch (const rdel::DomainError& e) {
    CHECK(std::string(e.what()).find("no-cloning") != std::string::npos);
  }
}

TEST_CASE("reuse preparation returns the dominant eigenvector") {
  RngStream rng(74);
  const StateVector sigma = random_qubit(rng);
  const StateVector reuse = rdel::reuse_prepare(rdel::pure_density(sigma));
  CHECK(std::abs(rdel::inner(reuse, sigma)) ==
        doctest::Approx(1.0).epsilon(1e-12));

  const StateVector from_mixed =
      rdel::reuse_prepare(DensityMatrix::maximally_mixed({2}));
  CHECK((from_mixed - rdel::ket_h()).norm() < 1e-12);

  Matrix diag(2, 2);
  diag(0, 0) = 0.75;
  diag(1, 1) = 0.25;
  const StateVector dominant = rdel::reuse_prepare(DensityMatrix({2}, diag));
  CHECK((dominant - rdel::ket_h()).norm() < 1e-12);
}

TEST_CASE("isometry json dump carries the draw record and the 12x4 matrix") {
  RngStream rng(75);
  const DeletionIsometry iso = rdel::build_r_deletion(StateFamily::hv(), rng);
  const nlohmann::json j = iso.to_json();
  CHECK(j["draw"].contains("sigma2"));
  CHECK(j["draw"].contains("sigma5"));
  REQUIRE(j["matrix"].size() == 12);
  REQUIRE(j["matrix"][0].size() == 4);
  CHECK(j["matrix"][0][0].size() == 2);
  // Entry (0,0) is the first amplitude of sigma2.
  CHECK(j["matrix"][0][0][0].get<double>() ==
        doctest::Approx(iso.draw().sigma2.state.amp(0).real()));
}
