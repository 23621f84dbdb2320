#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "optibound/dataset.hpp"
#include "optibound/errors.hpp"
#include "support/synthetic.hpp"

using namespace optibound;

TEST_CASE("parse_libsvm reads labels, indices and values") {
  Dataset ds = parse_libsvm("+1 1:0.5 3:-2\n-1 2:1e-3\n");
  CHECK(ds.rows() == 2);
  CHECK(ds.dim() == 3);
  CHECK(ds.y()[0] == 1.0);
  CHECK(ds.y()[1] == -1.0);
  Eigen::VectorXd r0 = ds.row_dense(0);
  CHECK(r0[0] == 0.5);
  CHECK(r0[1] == 0.0);
  CHECK(r0[2] == -2.0);
  CHECK(ds.row_dense(1)[1] == 1e-3);
}

TEST_CASE("parse_libsvm skips blank lines and handles CRLF") {
  Dataset ds = parse_libsvm("1 1:1\r\n\r\n  \n-1 1:-1\r\n");
  CHECK(ds.rows() == 2);
  CHECK(ds.y()[1] == -1.0);
  CHECK(ds.row_dense(1)[0] == -1.0);
}

TEST_CASE("parse_libsvm reports 1-based line numbers on malformed input") {
  CHECK_THROWS_AS(parse_libsvm("x7 1:1\n"), parse_error);
  CHECK_THROWS_AS(parse_libsvm("1 nocolon\n"), parse_error);
  CHECK_THROWS_AS(parse_libsvm("1 0:1\n"), parse_error);       // indices start at 1
  CHECK_THROWS_AS(parse_libsvm("1 2:1 2:2\n"), parse_error);   // not ascending
  CHECK_THROWS_AS(parse_libsvm("1 3:1 2:2\n"), parse_error);   // descending
  CHECK_THROWS_AS(parse_libsvm("1 1:zz\n"), parse_error);
  try {
    parse_libsvm("1 1:1\n-1 1:bad\n");
    FAIL("expected parse_error");
  } catch (const parse_error& e) {
    CHECK(e.line == 2);
  }
}

TEST_CASE("label policy: binary rejects non +-1, real accepts anything") {
  CHECK_THROWS_AS(parse_libsvm("2 1:1\n"), parse_error);
  Dataset ds = parse_libsvm("2.5 1:1\n-0.25 1:-1\n", LabelPolicy::real);
  CHECK(ds.y()[0] == 2.5);
  CHECK(ds.y()[1] == -0.25);
}

TEST_CASE("format_libsvm round trips through parse_libsvm") {
  testsupport::Rng rng(7);
  Dataset ds = testsupport::random_classification(rng, 12, 5);
  Dataset back = parse_libsvm(format_libsvm(ds));
  REQUIRE(back.rows() == ds.rows());
  REQUIRE(back.dim() == ds.dim());
  CHECK((back.y() - ds.y()).norm() == 0.0);
  for (int i = 0; i < ds.rows(); ++i)
    CHECK((back.row_dense(i) - ds.row_dense(i)).norm() == 0.0);
}

TEST_CASE("load_libsvm rejects missing files") {
  CHECK_THROWS_AS(load_libsvm("/nonexistent/path.libsvm"), std::runtime_error);
}

TEST_CASE("split is a deterministic seeded partition") {
  testsupport::Rng rng(3);
  Dataset ds = testsupport::random_classification(rng, 25, 4);
  auto [a1, b1] = split(ds, 0.8, 42);
  auto [a2, b2] = split(ds, 0.8, 42);
  CHECK(a1.rows() == 20);
  CHECK(b1.rows() == 5);
  CHECK(format_libsvm(a1) == format_libsvm(a2));
  CHECK(format_libsvm(b1) == format_libsvm(b2));

  // every original row appears exactly once across the two parts
  auto lines = [](const Dataset& d) {
    std::vector<std::string> out;
    for (int i = 0; i < d.rows(); ++i) {
      Dataset one = d.subset({i});
      out.push_back(format_libsvm(one));
    }
    return out;
  };
  std::vector<std::string> got = lines(a1), rest = lines(b1), want = lines(ds);
  got.insert(got.end(), rest.begin(), rest.end());
  std::sort(got.begin(), got.end());
  std::sort(want.begin(), want.end());
  CHECK(got == want);

  auto [a3, b3] = split(ds, 0.8, 43);
  CHECK(format_libsvm(a3) != format_libsvm(a1));  // different seed, different shuffle
  CHECK_THROWS_AS(split(ds, 0.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(split(ds, 1.0, 1), std::invalid_argument);
}

TEST_CASE("kernel values match their closed forms") {
  testsupport::Rng rng(11);
  Dataset ds = testsupport::random_classification(rng, 8, 6);
  KernelSpec lin = KernelSpec::linear();
  KernelSpec rbf = KernelSpec::rbf(0.3);
  for (int i = 0; i < ds.rows(); ++i)
    for (int j = 0; j < ds.rows(); ++j) {
      Eigen::VectorXd a = ds.row_dense(i), b = ds.row_dense(j);
      CHECK(kernel_value(lin, ds, i, ds, j) == doctest::Approx(a.dot(b)).epsilon(1e-14));
      CHECK(kernel_value(rbf, ds, i, ds, j) ==
            doctest::Approx(std::exp(-0.3 * (a - b).squaredNorm())).epsilon(1e-12));
    }
  CHECK(kernel_value(rbf, ds, 2, ds, 2) == 1.0);  // unit diagonal
}

TEST_CASE("gram is exactly symmetric and cross_gram matches kernel_value") {
  testsupport::Rng rng(13);
  Dataset a = testsupport::random_classification(rng, 7, 4);
  Dataset b = testsupport::random_classification(rng, 5, 4);
  KernelSpec k = KernelSpec::rbf(0.7);
  Eigen::MatrixXd g = gram(a, k);
  CHECK((g - g.transpose()).norm() == 0.0);
  Eigen::MatrixXd cg = cross_gram(a, b, k);
  REQUIRE(cg.rows() == 7);
  REQUIRE(cg.cols() == 5);
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 5; ++j) CHECK(cg(i, j) == kernel_value(k, a, i, b, j));
}

TEST_CASE("row operations: without_row, subset, row_dot") {
  testsupport::Rng rng(17);
  Dataset ds = testsupport::random_classification(rng, 6, 3);
  Dataset drop = ds.without_row(2);
  REQUIRE(drop.rows() == 5);
  CHECK((drop.row_dense(2) - ds.row_dense(3)).norm() == 0.0);
  CHECK(drop.y()[4] == ds.y()[5]);

  Dataset sub = ds.subset({4, 0});
  CHECK((sub.row_dense(0) - ds.row_dense(4)).norm() == 0.0);
  CHECK((sub.row_dense(1) - ds.row_dense(0)).norm() == 0.0);
  CHECK_THROWS_AS(ds.subset({6}), std::out_of_range);

  CHECK(ds.row_dot(1, sub, 0) ==
        doctest::Approx(ds.row_dense(1).dot(ds.row_dense(4))).epsilon(1e-14));
  CHECK(ds.same_storage(ds));
  CHECK(!ds.same_storage(sub));
}
