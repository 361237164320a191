#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gbc/double_forms.hpp"
#include "gbc/json_io.hpp"

using namespace gbc;

namespace {

DoubleForm<Rational> random_form(std::mt19937& rng, int n, int k, int l, int terms = 4) {
  DoubleForm<Rational> f(n, k, l);
  std::uniform_int_distribution<int> ix(1, n), cf(-5, 5);
  for (int t = 0; t < terms; ++t) {
    Indices left(k), right(l);
    for (int& v : left) v = ix(rng);
    for (int& v : right) v = ix(rng);
    int c = cf(rng);
    f.add_term(left, right, Rational(c == 0 ? 1 : c));
  }
  return f;
}

}  // namespace

TEST_CASE("metric form and canonical storage") {
  auto g = make_metric_form<Rational>(2);
  CHECK(g.coeff({1}, {1}) == Rational(1));
  CHECK(g.coeff({2}, {2}) == Rational(1));
  CHECK(g.coeff({1}, {2}) == Rational(0));

  auto g3 = make_metric_form<Rational>(3);
  CHECK(full_contract(g3) == Rational(3));

  // antisymmetry applied at insertion
  DoubleForm<Rational> f(3, 2, 1);
  f.add_term({2, 1}, {3}, Rational(1));
  CHECK(f.coeff({1, 2}, {3}) == Rational(-1));
  f.add_term({1, 1}, {2}, Rational(5));  // repeated index stores nothing
  CHECK(f.coeff({1, 1}, {2}) == Rational(0));
  CHECK_THROWS_AS(f.add_term({1}, {2}, Rational(1)), std::invalid_argument);
  CHECK_THROWS_AS(f.add_term({1, 4}, {2}, Rational(1)), std::out_of_range);
}

TEST_CASE("Kulkarni-Nomizu expansion of g owedge g") {
  auto g = make_metric_form<Rational>(2);
  auto gg = owedge(g, g);
  // 4-term expansion evaluated on (e1,e2;e1,e2)
  CHECK(gg.evaluate({1, 2}, {1, 2}) == Rational(2));
  CHECK(gg.evaluate({2, 1}, {1, 2}) == Rational(-2));

  auto g4 = make_metric_form<Rational>(4);
  CHECK(owedge(g4, g4).coeff({1, 2}, {1, 2}) == Rational(2));

  // bilinearity: sum of the basis dyad products reassembles g owedge g
  DoubleForm<Rational> acc(2, 2, 2);
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j) {
      DoubleForm<Rational> hi(2, 1, 1), hj(2, 1, 1);
      hi.add_term({i}, {i}, Rational(1));
      hj.add_term({j}, {j}, Rational(1));
      acc = acc + owedge(hi, hj);
    }
  CHECK(acc == gg);
}

TEST_CASE("owedge degree overflow gives the zero form") {
  auto g = make_metric_form<Rational>(2);
  auto g2 = df_power(g, 2);
  CHECK(df_power(g, 3).is_zero());
  CHECK(owedge(g2, g).is_zero());
  // g^2 at n=2 is 2 theta^12 (x) theta^12
  DoubleForm<Rational> expected(2, 2, 2);
  expected.add_term({1, 2}, {1, 2}, Rational(2));
  CHECK(g2 == expected);
}

TEST_CASE("owedge dims mismatch is an error") {
  auto a = make_metric_form<Rational>(2);
  auto b = make_metric_form<Rational>(3);
  CHECK_THROWS_AS(owedge(a, b), std::invalid_argument);
}

TEST_CASE("supercommutativity") {
  std::mt19937 rng(4321);
  auto sign_of = [](int e) { return e % 2 == 0 ? Rational(1) : Rational(-1); };
  for (int rep = 0; rep < 100; ++rep) {
    int n = 2 + static_cast<int>(rng() % 4);
    int p = rng() % 3, q = rng() % 3, r = rng() % 3, s = rng() % 3;
    auto f1 = random_form(rng, n, p, q);
    auto f2 = random_form(rng, n, r, s);
    auto lhs = owedge(f1, f2);
    auto rhs = sign_of(p * r + q * s) * owedge(f2, f1);
    CHECK(lhs == rhs);
  }
  // a (1,2) form anticommutes with itself, so its square vanishes
  auto f = random_form(rng, 4, 1, 2);
  CHECK(owedge(f, f).is_zero());
}

TEST_CASE("associativity and bilinearity on random triples") {
  std::mt19937 rng(777);
  for (int rep = 0; rep < 50; ++rep) {
    int n = 3 + static_cast<int>(rng() % 2);
    auto a = random_form(rng, n, 1, 1);
    auto b = random_form(rng, n, 1, 0);
    auto c = random_form(rng, n, 0, 1);
    CHECK(owedge(owedge(a, b), c) == owedge(a, owedge(b, c)));
    auto d = random_form(rng, n, 1, 0);
    CHECK(owedge(a, b + d) == owedge(a, b) + owedge(a, d));
  }
}

TEST_CASE("transpose") {
  DoubleForm<Rational> f(3, 2, 1);
  f.add_term({1, 2}, {3}, Rational(1));
  auto ft = transpose(f);
  CHECK(ft.coeff({3}, {1, 2}) == Rational(1));

  std::mt19937 rng(11);
  for (int rep = 0; rep < 30; ++rep) {
    auto a = random_form(rng, 4, 2, 1);
    auto b = random_form(rng, 4, 1, 2);
    CHECK(transpose(transpose(a)) == a);
    CHECK(transpose(owedge(a, b)) == owedge(transpose(a), transpose(b)));
  }

  // curvature-shaped forms are symmetric
  auto g = make_metric_form<Rational>(3);
  auto r = Rational(1, 2) * owedge(g, g);
  CHECK(is_symmetric(r));
}

TEST_CASE("contraction basics") {
  auto g5 = make_metric_form<Rational>(5);
  CHECK(contract(g5, 1).coeff({}, {}) == Rational(5));

  auto g4 = make_metric_form<Rational>(4);
  CHECK(full_contract(df_power(g4, 2)) == Rational(24));  // n! q! / (n-q)! at (4,2)

  CHECK_THROWS_AS(contract(g4, 2), std::domain_error);
  CHECK_THROWS_AS(contract(g4, -1), std::domain_error);

  DoubleForm<Rational> basis(3, 2, 2);
  basis.add_term({1, 2}, {1, 2}, Rational(1));
  CHECK(full_contract(basis) == Rational(2));  // p! for matching index sets
  DoubleForm<Rational> off(3, 2, 2);
  off.add_term({1, 2}, {1, 3}, Rational(1));
  CHECK(full_contract(off) == Rational(0));

  DoubleForm<Rational> rect(3, 2, 1);
  rect.add_term({1, 2}, {1}, Rational(1));
  CHECK_THROWS_AS(full_contract(rect), std::domain_error);
}

TEST_CASE("contraction product rule against g powers") {
  std::mt19937 rng(2024);
  for (int rep = 0; rep < 40; ++rep) {
    int n = 3 + static_cast<int>(rng() % 3);
    int p = rng() % 2;
    auto psi = random_form(rng, n, p, p);
    auto g = make_metric_form<Rational>(n);
    Rational base = full_contract(psi);
    for (int q = 1; q <= 3 && p + q <= n; ++q) {
      Rational factor = 1;
      for (int j = 1; j <= q; ++j) factor *= Rational((p + j) * (n - p + 1 - j));
      CHECK(full_contract(owedge(psi, df_power(g, q))) == factor * base);
    }
  }
}

TEST_CASE("single contraction step against the literal definition") {
  // C^1(psi)(A'; B') = sum_i psi((A', i); (B', i)) on arbitrary bidegrees,
  // including non-square ones.
  std::mt19937 rng(2718);
  for (int rep = 0; rep < 60; ++rep) {
    int n = 2 + static_cast<int>(rng() % 4);
    int k = 1 + static_cast<int>(rng() % std::min(n, 3));
    int l = 1 + static_cast<int>(rng() % std::min(n, 3));
    auto f = random_form(rng, n, k, l, 5);
    auto c1 = contract(f, 1);

    // enumerate canonical (A', B') pairs and compare coefficients
    std::vector<Indices> lefts, rights;
    Indices cur;
    std::function<void(int, int, std::vector<Indices>&)> subsets =
        [&](int start, int need, std::vector<Indices>& out) {
          if (need == 0) {
            out.push_back(cur);
            return;
          }
          for (int v = start; v <= n; ++v) {
            cur.push_back(v);
            subsets(v + 1, need - 1, out);
            cur.pop_back();
          }
        };
    subsets(1, k - 1, lefts);
    subsets(1, l - 1, rights);
    for (const auto& a : lefts)
      for (const auto& b : rights) {
        Rational direct = 0;
        for (int i = 1; i <= n; ++i) {
          Indices la = a, rb = b;
          la.push_back(i);
          rb.push_back(i);
          direct += f.evaluate(la, rb);
        }
        CHECK(c1.coeff(a, b) == direct);
      }
  }
}

TEST_CASE("brute-force contraction oracle") {
  std::mt19937 rng(31415);
  for (int rep = 0; rep < 80; ++rep) {
    int n = 1 + static_cast<int>(rng() % 5);
    int p = rng() % (n + 1);
    auto f = random_form(rng, n, p, p);
    CHECK(full_contract(f) == brute_force_contract(f));
  }
  CHECK(brute_force_contract(DoubleForm<Rational>(4, 2, 2)) == Rational(0));

  // round 2-sphere: R = 1/2 g owedge g has C^2(R) = 2, density 1
  auto g = make_metric_form<Rational>(2);
  auto r = Rational(1, 2) * owedge(g, g);
  CHECK(brute_force_contract(r) == Rational(2));

  DoubleForm<Rational> big(7, 1, 1);
  big.add_term({1}, {1}, Rational(1));
  CHECK_THROWS_AS(brute_force_contract(big), std::domain_error);  // cost guard
}

TEST_CASE("df_power conventions") {
  auto g = make_metric_form<Rational>(3);
  auto one = df_power(g, 0);
  CHECK(one.coeff({}, {}) == Rational(1));
  CHECK(owedge(one, g) == g);
  CHECK_THROWS_AS(df_power(g, -1), std::domain_error);

  // (1/2 g owedge g)^{m/2} fully contracted at n = m = 2
  auto r = Rational(1, 2) * owedge(make_metric_form<Rational>(2), make_metric_form<Rational>(2));
  CHECK(full_contract(df_power(r, 1)) == Rational(2));
}

TEST_CASE("inner product of p-forms") {
  FormVector<Rational> a(3, 2), b(3, 2), c(3, 2);
  a.add_term({1, 2}, Rational(1));
  b.add_term({1, 2}, Rational(1));
  c.add_term({1, 3}, Rational(1));
  CHECK(inner_product_forms(a, b) == Rational(1));
  CHECK(inner_product_forms(a, c) == Rational(0));
  CHECK_THROWS_AS(inner_product_forms(a, FormVector<Rational>(3, 1)), std::invalid_argument);
}

TEST_CASE("inner product equals the Gram determinant") {
  // alpha = u1 ^ ... ^ up, beta = v1 ^ ... ^ vp with random integer vectors:
  // <alpha, beta> must equal det(<u_i, v_j>).
  std::mt19937 rng(555);
  std::uniform_int_distribution<int> cf(-3, 3);
  for (int rep = 0; rep < 40; ++rep) {
    int n = 3 + static_cast<int>(rng() % 2);
    int p = 1 + static_cast<int>(rng() % 3);
    std::vector<std::vector<Rational>> us(p, std::vector<Rational>(n)),
        vs(p, std::vector<Rational>(n));
    for (auto& u : us)
      for (auto& x : u) x = Rational(cf(rng));
    for (auto& v : vs)
      for (auto& x : v) x = Rational(cf(rng));

    auto wedge_of = [&](const std::vector<std::vector<Rational>>& vecs) {
      FormVector<Rational> acc(n, 1);
      for (int i = 1; i <= n; ++i)
        if (!(vecs[0][i - 1] == Rational(0))) acc.add_term({i}, vecs[0][i - 1]);
      FormVector<Rational> out = acc;
      for (int j = 1; j < static_cast<int>(vecs.size()); ++j) {
        FormVector<Rational> next(n, 1);
        for (int i = 1; i <= n; ++i)
          if (!(vecs[j][i - 1] == Rational(0))) next.add_term({i}, vecs[j][i - 1]);
        out = wedge(out, next);
      }
      return out;
    };
    auto alpha = wedge_of(us), beta = wedge_of(vs);

    SquareMatrix<Rational> gram(p);
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < p; ++j) {
        Rational dot = 0;
        for (int t = 0; t < n; ++t) dot += us[i][t] * vs[j][t];
        gram(i, j) = dot;
      }
    CHECK(inner_product_forms(alpha, beta) == determinant(gram));
  }
}

TEST_CASE("hodge varpi") {
  auto w2 = hodge_varpi<Rational>({Rational(0), Rational(1)});  // X = e2, n = 2
  CHECK(w2.coeff({1}) == Rational(-1));

  auto w3 = hodge_varpi<Rational>({Rational(0), Rational(0), Rational(1)});  // X = e3
  CHECK(w3.coeff({1, 2}) == Rational(1));

  // defining identity X-flat ^ varpi_X = |X|^2 Theta
  std::mt19937 rng(8);
  std::uniform_int_distribution<int> cf(-4, 4);
  for (int rep = 0; rep < 30; ++rep) {
    int n = 2 + static_cast<int>(rng() % 4);
    std::vector<Rational> x(n);
    Rational norm2 = 0;
    for (auto& c : x) {
      c = Rational(cf(rng));
      norm2 += c * c;
    }
    auto lhs = wedge(musical_flat(x), hodge_varpi(x));
    FormVector<Rational> rhs(n, n);
    Indices all(n);
    for (int i = 0; i < n; ++i) all[i] = i + 1;
    rhs.add_term(all, norm2);
    if (norm2 == Rational(0)) {
      CHECK(lhs.is_zero());
    } else {
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("first Bianchi identity for products of symmetric forms") {
  std::mt19937 rng(909);
  std::uniform_int_distribution<int> cf(-4, 4);
  for (int rep = 0; rep < 25; ++rep) {
    int n = 2 + static_cast<int>(rng() % 3);
    DoubleForm<Rational> h1(n, 1, 1), h2(n, 1, 1);
    for (int i = 1; i <= n; ++i)
      for (int j = i; j <= n; ++j) {
        Rational v1(cf(rng)), v2(cf(rng));
        h1.add_term({i}, {j}, v1);
        if (i != j) h1.add_term({j}, {i}, v1);
        h2.add_term({i}, {j}, v2);
        if (i != j) h2.add_term({j}, {i}, v2);
      }
    auto a = owedge(h1, h2);
    CHECK(first_bianchi_residual(a) == 0.0);
  }
}

TEST_CASE("restriction to a lower-dimensional frame") {
  auto g = make_metric_form<Rational>(4);
  auto r = Rational(1, 2) * owedge(g, g);
  auto restricted = restrict_dims(r, 3);
  auto g3 = make_metric_form<Rational>(3);
  CHECK(restricted == Rational(1, 2) * owedge(g3, g3));
  CHECK_THROWS_AS(restrict_dims(r, 5), std::domain_error);
}

TEST_CASE("JSON serialization of double forms") {
  auto g = make_metric_form<Rational>(2);
  auto r = Rational(1, 2) * owedge(g, g);
  Json j = to_json(r);
  CHECK(j["dims"] == 2);
  CHECK(j["bidegree"][0] == 2);
  CHECK(j["bidegree"][1] == 2);
  REQUIRE(j["entries"].size() == 1);
  CHECK(j["entries"][0]["left"] == Json::array({1, 2}));
  CHECK(j["entries"][0]["right"] == Json::array({1, 2}));
  CHECK(j["entries"][0]["value"] == "1");

  DoubleForm<double> fd(2, 1, 1);
  fd.add_term({1}, {2}, 0.5);
  Json jf = to_json(fd);
  CHECK(jf["entries"][0]["value"] == 0.5);
}

TEST_CASE("frame conjugation preserves full contractions") {
  std::mt19937 rng(3141);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int rep = 0; rep < 10; ++rep) {
    int n = 3;
    DoubleForm<double> h(n, 1, 1);
    for (int i = 1; i <= n; ++i)
      for (int j = i; j <= n; ++j) {
        double v = u(rng);
        h.add_term({i}, {j}, v);
        if (i != j) h.add_term({j}, {i}, v);
      }
    auto r = 0.5 * owedge(h, h);
    Matd raw(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) raw(i, j) = u(rng);
    Matd q = orthonormalize_euclidean(raw);
    SquareMatrix<double> qs(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) qs(i, j) = q(i, j);
    auto rotated = conjugate_by_frame(r, qs);
    CHECK(full_contract(contract(rotated, 1)) ==
          doctest::Approx(full_contract(contract(r, 1))).epsilon(1e-10));
  }
}
