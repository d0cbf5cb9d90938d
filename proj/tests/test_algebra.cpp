#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "nrl/algebra/system.hpp"
#include "test_util.hpp"

using namespace nrl;
using C = std::complex<double>;
using M = SystemMatrix<double>;
using V = SymbolVector<double>;
using X = Wavevector<double>;

namespace {
X random_xi(std::mt19937_64& rng, int d, double r = 10.0) {
  std::uniform_real_distribution<double> u(-r, r);
  X xi(d);
  for (int a = 0; a < d; ++a) xi(a) = u(rng);
  return xi;
}
V vec(std::initializer_list<C> l) {
  V v(static_cast<Eigen::Index>(l.size()));
  int i = 0;
  for (auto c : l) v(i++) = c;
  return v;
}
}  // namespace

TEST_CASE("basis vectors") {
  auto [ep, em] = basis_vectors<double>(3);
  CHECK(ep.isApprox(vec({0, 0, 0, C(0, 1), 1})));
  CHECK(ep.conjugate() == em);
  CHECK(ep.squaredNorm() == 2.0);
  CHECK(em.squaredNorm() == 2.0);
}

TEST_CASE("A0 is skew, projectors") {
  for (int d = 1; d <= 3; ++d) {
    M a0 = a0_matrix<double>(d);
    CHECK((a0 + a0.transpose()).cwiseAbs().maxCoeff() == 0.0);
    for (int p = -9; p <= 9; ++p) {
      M pp = projector<double>(d, p);
      CHECK((pp * pp - pp).cwiseAbs().maxCoeff() <= 1e-15);
      CHECK((pp.adjoint() - pp).cwiseAbs().maxCoeff() <= 1e-15);
      // projector spans ker L_p
      CHECK((l_matrix<double>(d, p) * pp).cwiseAbs().maxCoeff() <= 1e-15);
    }
  }
  M p0 = projector<double>(2, 0);
  CHECK((p0 * vec({1, 2, 3, 4})).isApprox(vec({1, 2, 0, 0})));
  auto [ep, em] = basis_vectors<double>(2);
  CHECK((projector<double>(2, 1) * ep - ep).cwiseAbs().maxCoeff() == 0.0);
  CHECK((projector<double>(2, -1) * em - em).cwiseAbs().maxCoeff() == 0.0);
  CHECK((projector<double>(2, 1) * em).cwiseAbs().maxCoeff() == 0.0);
  CHECK(projector<double>(2, 2).cwiseAbs().maxCoeff() == 0.0);
  // rank-one form (1/2)(V, e+) e+
  V x = vec({C(0.3, 1), C(-2, 0.5), C(1, 1), C(0.2, -0.7)});
  CHECK((projector<double>(2, 1) * x - 0.5 * ep.dot(x) * ep).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("partial inverses") {
  for (int d = 1; d <= 3; ++d) {
    M id = M::Identity(d + 2, d + 2);
    for (int p = -9; p <= 9; ++p) {
      M lp = l_matrix<double>(d, p);
      M li = partial_inverse<double>(d, p);
      M pp = projector<double>(d, p);
      CHECK((lp * li - (id - pp)).cwiseAbs().maxCoeff() <= 1e-14);
      CHECK((li * pp).cwiseAbs().maxCoeff() <= 1e-14);
      CHECK((pp * li).cwiseAbs().maxCoeff() <= 1e-14);
    }
  }
  const int d = 2;
  V r = partial_inverse<double>(d, 3) * vec({0, 0, -1, 0});
  CHECK((r - vec({0, 0, C(0, 3.0 / 8), 1.0 / 8})).cwiseAbs().maxCoeff() < 1e-15);
  V in = vec({0, 0, -1, 0});
  CHECK((l_matrix<double>(d, 3) * r - (M::Identity(4, 4) - projector<double>(d, 3)) * in).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((partial_inverse<double>(d, 0) * vec({0, 0, 0, 1}) - vec({0, 0, -1, 0})).cwiseAbs().maxCoeff() == 0.0);
  CHECK((partial_inverse<double>(d, 1) * basis_vectors<double>(d).first).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("symbol of A") {
  X z = X::Zero(3);
  CHECK(symbol_a<double>(z).cwiseAbs().maxCoeff() == 0.0);
  X one(1);
  one << 1.0;
  // hand expansion, d=1: rows (w, v, u) = [[0, i, 0], [i, 0, 0], [0, 0, 0]]
  M a = symbol_a<double>(one);
  M hand(3, 3);
  hand << C(0), C(0, 1), C(0), C(0, 1), C(0), C(0), C(0), C(0), C(0);
  CHECK(a == hand);
  CHECK((a * vec({0, 1, 0}) - vec({C(0, 1), 0, 0})).cwiseAbs().maxCoeff() == 0.0);
  std::mt19937_64 rng(1);
  X xi = random_xi(rng, 3);
  CHECK((symbol_a<double>(X(2 * xi)) - 2.0 * symbol_a<double>(xi)).cwiseAbs().maxCoeff() == 0.0);
  // i times real symmetric
  M s = symbol_a<double>(xi) * C(0, -1);
  CHECK(s.imag().cwiseAbs().maxCoeff() == 0.0);
  CHECK((s - s.transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("weak transparency, second algebraic identity, Pi_1 identities") {
  std::mt19937_64 rng(7);
  X xi123(3);
  xi123 << 1, 2, 3;
  CHECK(check_weak_transparency<double>(1, xi123) <= 1e-15);
  CHECK(check_weak_transparency<double>(5, xi123) == 0.0);
  X e1 = X::Zero(3);
  e1(0) = 1;
  CHECK(check_second_algebraic<double>(e1) <= 1e-15);
  CHECK(check_second_algebraic<double>(X(X::Zero(2))) == 0.0);
  for (int d = 1; d <= 3; ++d)
    for (int t = 0; t < 100; ++t) {
      X xi = random_xi(rng, d);
      for (int p : {-1, 0, 1}) CHECK(check_weak_transparency<double>(p, xi) <= 1e-13);
      CHECK(check_second_algebraic<double>(xi) <= 1e-13);
      C g(std::normal_distribution<double>()(rng), 0.4), h(-0.3, std::normal_distribution<double>()(rng));
      CHECK(pi1_identities_defect<double>(g, h, xi) <= 1e-13);
    }
  CHECK(pi1_identities_defect<double>(C(0), C(1), xi123) == 0.0);
  CHECK(pi1_identities_defect<double>(C(2.0), C(0), X(X::Zero(3))) == 0.0);
}

TEST_CASE("field mode matches symbol mode") {
  GridSpec g;
  g.dim = 2;
  g.n = 8;
  g.length = 3.0;
  std::mt19937_64 rng(9);
  auto s = SystemVector<double>::zero(g);
  for (int c = 0; c < 4; ++c) s.component(c) = test::random_field(g, rng, true, 3);
  // A(grad) in field mode against derivative operators
  auto as = apply_a(s);
  CHECK(max_abs_diff(as.w[0], derivative(s.v, 0)) < 1e-14);
  CHECK(max_abs_diff(as.w[1], derivative(s.v, 1)) < 1e-14);
  CHECK(max_abs_diff(as.v, divergence(s.w)) < 1e-14);
  CHECK(as.u.coeffs().abs().maxCoeff() == 0.0);
  auto a0s = apply_matrix(a0_matrix<double>(2), s);
  CHECK(max_abs_diff(a0s.v, s.u) == 0.0);
  CHECK(max_abs_diff(a0s.u, -s.v) == 0.0);
  auto zero = SystemVector<double>::zero(g);
  CHECK(sobolev_norm(apply_a(zero), 1.0) == 0.0);
}
