#include "doctest.h"
#include "mqg/algebra.hpp"
#include "mqg/double.hpp"

using namespace mqg;

TEST_CASE("basis product examples") {
  const auto c3 = make_cyclic(3);
  const auto* p = c3.get();
  const auto x = parse_element(*c3, "[1;2]");
  CHECK(x * x == parse_element(*c3, "[2;2]"));
  CHECK(x * parse_element(*c3, "[0;2]") == x);
  CHECK((x * parse_element(*c3, "[0;1]")).is_zero());
  CHECK(format_element(parse_element(*c3, "3/2*[1;2] - [0;0]")) == "-1*[0;0] + 3/2*[1;2]");
  CHECK(parse_element(*c3, "0").is_zero());
  (void)p;
}

TEST_CASE("product is associative and non-degenerate on S3") {
  const auto s3 = make_symmetric(3);
  const auto basis = full_basis(*s3);
  for (const auto& a : basis)
    for (const auto& b : basis)
      for (const auto& c : {basis[3], basis[17], basis[35]}) {
        const auto x = basis_element(s3.get(), a), y = basis_element(s3.get(), b), z = basis_element(s3.get(), c);
        CHECK((x * y) * z == x * (y * z));
      }
  for (const auto& a : basis) {
    bool nonzero = false;
    for (const auto& b : basis) nonzero = nonzero || !(basis_element(s3.get(), a) * basis_element(s3.get(), b)).is_zero();
    CHECK(nonzero);
  }
}

TEST_CASE("multiplier basics") {
  const auto s3 = make_symmetric(3);
  const auto basis = full_basis(*s3);
  CHECK(is_central(mult_identity(*s3), basis));
  const auto t = s3->parse("(1 2)");
  CHECK_FALSE(is_central(mult_from_element(basis_element(s3.get(), s3->identity(), t)), basis));
  const auto k = mult_group(*s3, s3->parse("(1 2 3)"));
  CHECK_FALSE(compatibility_witness(k, basis));
  CHECK(to_element(mult_compose(k, mult_group(*s3, s3->parse("(1 3 2)")))) == unit_element(*s3));
}

TEST_CASE("state sum propagation agrees with brute force") {
  const auto s3 = make_symmetric(3);
  const auto* p = s3.get();
  const auto basis = full_basis(*s3);
  // Σ_{j,k} (j δ_k ... ) on two legs with interlocked indices.
  const std::vector<Letter> leg0{Letter::group(0, -1), Letter::delta(1), Letter::group(1)};
  const std::vector<Letter> leg1{Letter::delta(0), Letter::group(1, -1), Letter::delta(0, -1)};
  for (auto dir : {Leg::Direction::OnLeftOf, Leg::Direction::OnRightOf}) {
    for (std::size_t i = 0; i < basis.size(); i += 5) {
      for (std::size_t j = 0; j < basis.size(); j += 7) {
        StateSum prob{p, {"j", "k"}, {Leg{leg0, basis_element(p, basis[i]), dir}, Leg{leg1, basis_element(p, basis[j]), dir}}};
        CHECK(sum_states2(prob, EvalMode::Propagate) == sum_states2(prob, EvalMode::BruteForce));
      }
    }
  }
}

TEST_CASE("unbounded index on an infinite group is reported by name") {
  const auto z = make_integers();
  StateSum prob{z.get(), {"k"}, {Leg{{Letter::group(0)}, basis_element(z.get(), z->identity(), z->identity()), Leg::Direction::OnLeftOf}}};
  CHECK_THROWS_WITH_AS(sum_states1(prob), doctest::Contains("'k'"), UnlocalizedSum);
}
