#include <doctest.h>

#include "lcmv/eisenstein.hpp"
#include "lcmv/error.hpp"

using namespace lcmv;

namespace {

const LocalModel M2 = LocalModel::unramified(2, 2);

EisensteinPoly poly(const LocalModel& model, std::vector<std::string> coeffs) {
  std::vector<CoefficientDescriptor> cs;
  for (const auto& c : coeffs) cs.push_back(CoefficientDescriptor::term(model, c));
  return EisensteinPoly(cs.size(), cs);
}

std::vector<std::string_view> tags(const EisensteinVerdict& v) {
  std::vector<std::string_view> out;
  for (const auto& e : v.violations) out.push_back(tag(e.kind));
  return out;
}

// Schoolbook reduction of sum_k c_k X^k modulo the monic f = X^l + a_1 X^{l-1} + ... + a_l.
std::vector<SymPoly> reduce_mod(std::vector<SymPoly> c, const std::vector<SymPoly>& a) {
  const std::size_t l = a.size();
  for (std::size_t k = c.size(); k-- > l;) {
    if (c[k].is_zero()) continue;
    const SymPoly lead = c[k];
    c[k] = SymPoly();
    for (std::size_t i = 1; i <= l; ++i) c[k - i] = c[k - i] - lead * a[i - 1];
  }
  c.resize(l);
  return c;
}

}  // namespace

TEST_CASE("textbook Eisenstein polynomial") {
  auto f = poly(M2, {"0", "-p"});
  CHECK(f.to_string(M2) == "X^2 - p");
  CHECK(validate_eisenstein(f).valid);
}

TEST_CASE("violations carry their tags") {
  auto v = validate_eisenstein(poly(M2, {"0", "-p^2"}));
  CHECK_FALSE(v.valid);
  CHECK(tags(v) == std::vector<std::string_view>{"CONSTANT_IN_M_SQUARED"});
  CHECK(v.violations[0].message == "a_l ∈ m²");

  auto w = validate_eisenstein(poly(M2, {"1", "p"}));
  CHECK_FALSE(w.valid);
  CHECK(tags(w) == std::vector<std::string_view>{"NOT_IN_M"});
  CHECK(w.violations[0].index == 1);
  CHECK(w.violations[0].message == "a_1 ∉ m");
}

TEST_CASE("zero constant term is in every power of m") {
  auto v = validate_eisenstein(EisensteinPoly(2, {CoefficientDescriptor::with_order(1), CoefficientDescriptor::zero()}));
  CHECK(tags(v) == std::vector<std::string_view>{"CONSTANT_IN_M_SQUARED"});
}

TEST_CASE("validity ignores the exact order of the middle coefficients") {
  for (unsigned o1 = 1; o1 <= 5; ++o1) {
    for (unsigned o2 = 1; o2 <= 5; ++o2) {
      for (unsigned last : {1U, 2U}) {
        EisensteinPoly f(3, {CoefficientDescriptor::with_order(o1), CoefficientDescriptor::with_order(o2),
                             CoefficientDescriptor::with_order(last)});
        CHECK(validate_eisenstein(f).valid == (last == 1));
      }
    }
  }
}

TEST_CASE("ramification certificate for X^2 - p") {
  auto ext = make_extension(M2, poly(M2, {"0", "-p"}));
  CHECK(ext.maximal_ideal_gens == std::vector<std::string>{"p", "x1", "X"});
  auto r = ramification_witness(ext);
  REQUIRE(r.certified);
  CHECK(r.certificate->text == "p = X^2");
  CHECK(r.certificate->identity_verified);
  REQUIRE(r.certificate->summands.size() == 1);
  CHECK(r.certificate->summands[0].membership.find("∈ n²") != std::string::npos);
}

TEST_CASE("ramification certificate for a cubic") {
  const LocalModel m = LocalModel::unramified(3, 2);
  auto ext = make_extension(m, poly(m, {"0", "p*x1", "p"}));
  auto r = ramification_witness(ext);
  REQUIRE(r.certified);
  CHECK(r.certificate->text == "p = -(X^3 + p*x1*X)");
  CHECK(r.certificate->identity_verified);
  CHECK(r.certificate->summands.size() == 2);
  // Substituting back: f = X^3 + p x1 X + p vanishes when p is replaced by the right-hand side.
  SymPoly X = SymPoly::symbol("X"), x1 = SymPoly::symbol("x1");
  SymPoly p_rhs = -(X * X * X + SymPoly::symbol("p") * x1 * X);
  CHECK((X * X * X + SymPoly::symbol("p") * x1 * X + p_rhs).is_zero());
}

TEST_CASE("units and order-only constants") {
  std::vector<CoefficientDescriptor> cs{CoefficientDescriptor::with_order(1), CoefficientDescriptor::term(M2, "p", "u")};
  auto r = ramification_witness(make_extension(M2, EisensteinPoly(2, cs)));
  REQUIRE(r.certified);
  CHECK(r.certificate->identity_verified);
  CHECK(r.certificate->text == "p = -u^-1*(X^2 + a1*X)");

  std::vector<CoefficientDescriptor> by_order{CoefficientDescriptor::zero(), CoefficientDescriptor::with_order(1)};
  auto s = ramification_witness(make_extension(M2, EisensteinPoly(2, by_order)));
  CHECK(s.certificate->constant_term_assumed);
}

TEST_CASE("degree one declines to certify") {
  auto r = ramification_witness(make_extension(M2, poly(M2, {"-p"})));
  CHECK_FALSE(r.certified);
  CHECK(r.flag == kNoRamificationFlag);
}

TEST_CASE("constant term must be p times a unit") {
  auto ext = make_extension(M2, poly(M2, {"0", "x1"}));
  CHECK_THROWS_WITH_AS(ramification_witness(ext), doctest::Contains("PRECONDITION"), Error);
  CHECK_THROWS_AS(make_extension(M2, poly(M2, {"0", "p^2"})), Error);
}

TEST_CASE("extended ideals") {
  auto ext = make_extension(M2, poly(M2, {"0", "-p"}));
  auto e = extend_ideal(CoordinateIdeal::of(RingDescriptor(2), {1, 2}), ext);
  CHECK(to_string(e.ideal) == "(x1,x2)");
  CHECK(ring_of(e.ideal).n_vars() == 3);
  CHECK_FALSE(e.provenance.empty());
  CHECK(height(extend_ideal(CoordinateIdeal(RingDescriptor(2), VarSet()), ext).ideal) == 0);
  CHECK_THROWS_WITH_AS(extend_ideal(CoordinateIdeal::of(RingDescriptor(3), {1, 3}), ext),
                       doctest::Contains("NOT_EXTENDED"), Error);
  Matrix with_x = Matrix::from_rows({{0, 1, 1}}, 3);
  CHECK_THROWS_AS(extend_ideal(LinearIdeal(RingDescriptor(3), with_x), ext), Error);
}

TEST_CASE("flat transfer is the identity on supports") {
  for (std::set<int> s : {std::set<int>{2}, std::set<int>{}, std::set<int>{2, 3}}) {
    auto t = flat_transfer(s);
    CHECK(t.support == s);
    CHECK(t.ass_finite_over_extension);
    bool cites_flatness = false;
    for (const auto& line : t.provenance) cites_flatness = cites_flatness || line.find("faithfully flat") != std::string::npos;
    CHECK(cites_flatness);
  }
}

TEST_CASE("multiplication table of X^2 - p") {
  auto table = s_module_basis(make_extension(M2, poly(M2, {"0", "-p"})));
  CHECK(table.basis == std::vector<std::string>{"1", "X"});
  const SymPoly p = SymPoly::symbol("p");
  CHECK(table.products[1][1] == std::vector<SymPoly>{p, SymPoly()});
  SymPoly c0 = SymPoly::symbol("c0"), c1 = SymPoly::symbol("c1"), d0 = SymPoly::symbol("d0"), d1 = SymPoly::symbol("d1");
  auto prod = table.multiply({c0, c1}, {d0, d1});
  CHECK(prod[0] == c0 * d0 + p * c1 * d1);
  CHECK(prod[1] == c0 * d1 + c1 * d0);

  auto trivial = s_module_basis(make_extension(M2, poly(M2, {"-p"})));
  CHECK(trivial.rank == 1);
  CHECK(trivial.products[0][0] == std::vector<SymPoly>{SymPoly(1)});
}

TEST_CASE("multiplication tables agree with polynomial reduction and are associative") {
  const LocalModel m = LocalModel::unramified(5, 3);
  const std::vector<std::vector<std::string>> polys = {
      {"-p"}, {"0", "-p"}, {"x1", "p"}, {"p*x2", "0", "p"}, {"x1", "p*x1", "x2^2", "-p"}, {"0", "0", "0", "p"}};
  for (const auto& cs : polys) {
    auto f = poly(m, cs);
    auto table = s_module_basis(make_extension(m, f));
    const std::size_t l = table.rank;
    std::vector<SymPoly> a;
    for (std::size_t i = 0; i < l; ++i) a.push_back(f.coeffs[i].symbolic(m, i + 1));
    std::vector<std::vector<SymPoly>> unit(l, std::vector<SymPoly>(l));
    for (std::size_t i = 0; i < l; ++i) unit[i][i] = 1;
    for (std::size_t i = 0; i < l; ++i) {
      for (std::size_t j = 0; j < l; ++j) {
        std::vector<SymPoly> raw(2 * l);
        raw[i + j] = 1;
        CHECK(table.products[i][j] == reduce_mod(raw, a));
        CHECK(table.multiply(unit[i], unit[j]) == table.multiply(unit[j], unit[i]));
        for (std::size_t k = 0; k < l; ++k) {
          CHECK(table.multiply(table.multiply(unit[i], unit[j]), unit[k]) ==
                table.multiply(unit[i], table.multiply(unit[j], unit[k])));
        }
      }
    }
  }
}
