// Copyright 2026 The chanmet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "chanmet/channels.hpp"
#include "chanmet/families.hpp"
#include "chanmet/qubit.hpp"
#include "support/generators.hpp"

using namespace chanmet;
namespace tg = chanmet::testing;

namespace {

DensityMatrix ket_state(int i, int dim) {
  const Vector v = ket(i, dim);
  return DensityMatrix(Hermitian(Matrix(v * v.adjoint())));
}

}  // namespace

TEST_CASE("apply: identity, bitflip, trace preservation") {
  const Channel id = Channel::identity(2);
  std::mt19937_64 rng(2);
  const DensityMatrix rho = tg::random_density(2, rng);
  CHECK((apply(id, rho).mat() - rho.mat()).norm() < 1e-14);

  const Channel bf = make_bitflip().at(0.1);
  const DensityMatrix out = apply(bf, ket_state(0, 2));
  Matrix expected(2, 2);
  expected << 0.9, 0, 0, 0.1;
  CHECK((out.mat() - expected).norm() < 1e-12);

  const Channel rnd = tg::random_interior_channel(3, 2, rng);
  const DensityMatrix mixed(
      Hermitian(Matrix(Matrix::Identity(3, 3) / 3.0)));
  CHECK(apply(rnd, mixed).herm().trace_real() == doctest::Approx(1.0));
}

TEST_CASE("apply_adjoint: unitality and duality") {
  std::mt19937_64 rng(4);
  const Channel rnd = tg::random_interior_channel(2, 3, rng);
  const Hermitian img = apply_adjoint(rnd, Hermitian(Matrix(Matrix::Identity(3, 3))));
  CHECK((img.mat() - Matrix::Identity(2, 2)).norm() < 1e-10);

  const Channel id = Channel::identity(2);
  const Hermitian a = tg::random_hermitian(2, rng);
  CHECK((apply_adjoint(id, a).mat() - a.mat()).norm() < 1e-14);

  for (int trial = 0; trial < 20; ++trial) {
    const Channel phi = tg::random_interior_channel(2, 2, rng);
    const DensityMatrix rho = tg::random_density(2, rng);
    const Hermitian obs = tg::random_hermitian(2, rng);
    const double lhs = (apply(phi, rho).mat() * obs.mat()).trace().real();
    const double rhs = (rho.mat() * apply_adjoint(phi, obs).mat()).trace().real();
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-11));
  }
}

TEST_CASE("compose and tensor basics") {
  std::mt19937_64 rng(6);
  const Channel phi = tg::random_interior_channel(2, 2, rng);
  const Channel id = Channel::identity(2);

  CHECK((compose(phi, id).choi_mat() - phi.choi_mat()).norm() < 1e-12);
  CHECK((compose(id, phi).choi_mat() - phi.choi_mat()).norm() < 1e-12);
  CHECK((tensor(id, id).choi_mat() - Channel::identity(4).choi_mat()).norm() <
        1e-12);
}

TEST_CASE("tensor factorizes on product inputs") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    const Channel phi = tg::random_interior_channel(2, 2, rng);
    const Channel psi = tg::random_interior_channel(2, 3, rng);
    const DensityMatrix rho = tg::random_density(2, rng);
    const DensityMatrix sig = tg::random_density(2, rng);
    const DensityMatrix joint(
        Hermitian(kron(rho.mat(), sig.mat())));
    const Matrix lhs = apply(tensor(phi, psi), joint).mat();
    const Matrix rhs = kron(apply(phi, rho).mat(), apply(psi, sig).mat());
    CHECK((lhs - rhs).norm() < 1e-10);
  }
}

TEST_CASE("compose/tensor associativity") {
  std::mt19937_64 rng(10);
  const Channel a = tg::random_interior_channel(2, 2, rng);
  const Channel b = tg::random_interior_channel(2, 2, rng);
  const Channel c = tg::random_interior_channel(2, 2, rng);
  CHECK((compose(compose(a, b), c).choi_mat() -
         compose(a, compose(b, c)).choi_mat())
            .norm() < 1e-10);
  CHECK((tensor(tensor(a, b), c).choi_mat() -
         tensor(a, tensor(b, c)).choi_mat())
            .norm() < 1e-10);
}

TEST_CASE("n_copy matches the finite-difference oracle at n = 2") {
  const ChannelFamily bf = make_bitflip();
  const double theta = 0.2;
  const auto [phi2, dphi2] = n_copy(bf.at(theta), bf.tangent_at(theta), 2);

  const double h = 1e-5;
  auto squared = [&bf](double t) {
    const Channel c = bf.at(t);
    return tensor(c, c).choi_mat();
  };
  const Matrix fd = (squared(theta + h) - squared(theta - h)) / (2.0 * h);
  CHECK((dphi2.choi_mat() - fd).norm() < 1e-8);

  // n = 1 returns the inputs unchanged.
  const auto [phi1, dphi1] = n_copy(bf.at(theta), bf.tangent_at(theta), 1);
  CHECK((phi1.choi_mat() - bf.at(theta).choi_mat()).norm() == 0.0);
  CHECK((dphi1.choi_mat() - bf.tangent_at(theta).choi_mat()).norm() == 0.0);

  // Output partial trace of the tangent vanishes as typed.
  CHECK(partial_trace(dphi2.choi_mat(), 0, 4, 4).norm() < 1e-9);
}

TEST_CASE("n_copy enforces the memory budget") {
  const ChannelFamily bf = make_bitflip();
  CHECK_THROWS_AS(n_copy(bf.at(0.1), bf.tangent_at(0.1), 9), budget_error);
}

TEST_CASE("catalog families: basic values") {
  const Channel bf0 = make_bitflip().at(0.0);
  CHECK((bf0.choi_mat() - Channel::identity(2).choi_mat()).norm() < 1e-12);

  const Channel sym = make_pauli({0.25, 0.25, 0.25}, {0, 0, 0}).at(0.0);
  const DensityMatrix mixed(Hermitian(Matrix(0.5 * Matrix::Identity(2, 2))));
  CHECK((apply(sym, mixed).mat() - 0.5 * Matrix::Identity(2, 2)).norm() < 1e-12);

  // Depolarized rotation is CPTP and has full-rank Choi.
  const Channel dp = make_depolarized_phase(0.1).at(0.3);
  const EigSystem es = eig_hermitian(dp.choi());
  int rank = 0;
  for (Eigen::Index i = 0; i < es.values.size(); ++i)
    if (es.values(i) > 1e-9) ++rank;
  CHECK(rank == 4);

  CHECK_THROWS_AS(make_pauli({0.6, 0.6, 0.0}, {0, 0, 0}).at(0.0), config_error);
  CHECK_THROWS_AS(family_catalog("bogus", {}), config_error);
}

TEST_CASE("catalog families stay CPTP across their range") {
  std::mt19937_64 rng(12);
  std::vector<ChannelFamily> fams;
  fams.push_back(make_bitflip());
  fams.push_back(make_phase_unitary());
  fams.push_back(make_depolarized_phase(0.2));
  fams.push_back(make_pauli({0.1, 0.05, 0.05}, {0.3, 0.1, -0.05}));
  {
    RealMatrix base(2, 2), rate(2, 2);
    base << 1, 0, 0, 1;
    rate << -1, 1, 1, -1;
    fams.push_back(make_classical_finite(base, rate));
  }
  for (const auto& fam : fams) {
    const double lo = std::max(fam.theta_lo(), -1.0);
    const double hi = std::min(fam.theta_hi(), 1.0);
    std::uniform_real_distribution<double> unif(lo, hi);
    for (int i = 0; i < 100; ++i) {
      const Channel c = fam.at(unif(rng));
      const CpReport rep = cp_check(c.choi(), c.d_in(), c.d_out());
      CHECK(rep.is_cptp);
    }
  }
}

TEST_CASE("analytic derivatives match central differences") {
  std::vector<std::pair<ChannelFamily, double>> cases;
  cases.emplace_back(make_bitflip(), 0.3);
  cases.emplace_back(make_phase_unitary(), 0.7);
  cases.emplace_back(make_depolarized_phase(0.15), 0.4);
  cases.emplace_back(make_pauli({0.1, 0.05, 0.05}, {0.3, 0.1, -0.05}), 0.5);
  {
    RealMatrix base(2, 2), rate(2, 2);
    base << 1, 0, 0, 1;
    rate << -1, 1, 1, -1;
    cases.emplace_back(make_classical_finite(base, rate), 0.25);
  }
  std::mt19937_64 rng(99);
  {
    const DensityMatrix rho = tg::random_density(2, rng);
    const StateTangent del = tg::random_tangent(2, rng);
    cases.emplace_back(make_constant_state(rho, del), 0.0);
  }
  for (const auto& [fam, theta] : cases) {
    const Matrix analytic = fam.tangent_at(theta).choi_mat();
    const Matrix fd = tg::fd_choi_derivative(fam, theta);
    CHECK((analytic - fd).norm() <= 1e-6 * std::max(1.0, analytic.norm()));
  }
}

TEST_CASE("cp_check report values") {
  const Channel id = Channel::identity(2);
  const CpReport ok = cp_check(id.choi(), 2, 2);
  CHECK(ok.is_cptp);
  CHECK(ok.min_eig == doctest::Approx(0.0).epsilon(1e-12));

  const ChannelFamily bf = make_bitflip();
  const Matrix pushed =
      bf.at(0.1).choi_mat() - 0.2 * bf.tangent_at(0.1).choi_mat();
  const CpReport bad = cp_check(Hermitian(pushed), 2, 2);
  CHECK_FALSE(bad.is_cptp);
  CHECK(bad.min_eig == doctest::Approx(-0.2).epsilon(1e-9));

  // Transpose map: Choi is the swap operator, eigenvalues ±1.
  Matrix swap = Matrix::Zero(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) swap(i * 2 + j, j * 2 + i) = 1.0;
  const CpReport tr = cp_check(Hermitian(swap), 2, 2);
  CHECK_FALSE(tr.is_cptp);
  CHECK(tr.min_eig == doctest::Approx(-1.0));
  CHECK(tr.tp_residual < 1e-12);
}

TEST_CASE("channel specs round-trip through JSON") {
  std::mt19937_64 rng(14);
  const Channel phi = tg::random_interior_channel(2, 2, rng);
  const nlohmann::json j = channel_to_json(phi);
  const Channel back = channel_from_json(j);
  CHECK((back.choi_mat() - phi.choi_mat()).norm() == 0.0);

  // Serialized text re-parses to the identical matrix (bit-exact doubles).
  const std::string text = j.dump();
  const Channel again = channel_from_json(nlohmann::json::parse(text));
  CHECK((again.choi_mat() - phi.choi_mat()).norm() == 0.0);

  const auto spec = family_from_json(
      nlohmann::json{{"name", "bitflip"}, {"params", nlohmann::json::object()},
                     {"theta", 0.1}});
  CHECK(spec.theta == 0.1);
  CHECK((spec.family.at(0.1).choi_mat() - make_bitflip().at(0.1).choi_mat())
            .norm() == 0.0);
}
