#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "collinear/dataset.hpp"
#include "collinear/error.hpp"
#include "collinear/fixtures.hpp"
#include "collinear/ols.hpp"
#include "doctest.h"

using namespace collinear;

TEST_CASE("parse_csv basics") {
  std::istringstream in("a,y,b\n1,2,3\n4,5,6.5\n");
  const Dataset d = parse_csv(in, "y");
  CHECK(d.n() == 2);
  CHECK(d.k() == 2);
  CHECK(d.predictor_names() == std::vector<std::string>{"a", "b"});
  CHECK(d.response_name() == "y");
  CHECK(d.x()(1, 1) == 6.5);
  CHECK(d.y() == Vector{2, 5});
  CHECK(d.index_of("b") == 1);
  CHECK_THROWS_AS(d.index_of("c"), MissingColumn);
}

TEST_CASE("parse_csv round-trips a two-row file exactly") {
  std::istringstream in("x,y\n0.1,-3.25e-7\n123456.789,1e300\n");
  const Dataset d = parse_csv(in, "y");
  CHECK(d.x()(0, 0) == 0.1);
  CHECK(d.x()(1, 0) == 123456.789);
  CHECK(d.y()[0] == -3.25e-7);
  CHECK(d.y()[1] == 1e300);
}

TEST_CASE("parse_csv errors") {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return parse_csv(in, "y");
  };
  SUBCASE("blank cell") {
    try {
      parse("x,y\n1,2\n3,\n");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.row() == 3);
      CHECK(e.col() == 2);
    }
  }
  CHECK_THROWS_AS(parse("x,y\n1,abc\n"), ParseError);
  CHECK_THROWS_AS(parse("x,y\n1,2,3\n"), ParseError);
  CHECK_THROWS_AS(parse("x,z\n1,2\n"), MissingColumn);
  CHECK_THROWS_AS(parse("x,x,y\n1,2,3\n"), DuplicateName);
  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse("x,y\n1,nan\n"), ParseError);
}

TEST_CASE("load_csv reads files") {
  const auto path = std::filesystem::temp_directory_path() / "collinear_dataset_test.csv";
  {
    std::ofstream out(path);
    out << "y,x1,x2\r\n1,2,3\r\n4,5,7\r\n9,1,1\r\n";
  }
  const Dataset d = load_csv(path, "y");
  CHECK(d.n() == 3);
  CHECK(d.predictor_names() == std::vector<std::string>{"x1", "x2"});
  CHECK(d.y() == Vector{1, 4, 9});
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_csv(path, "y"), Error);
}

TEST_CASE("Dataset validation") {
  CHECK_THROWS_AS(Dataset({"a"}, Matrix(2, 2), Vector(2)), DimensionMismatch);
  CHECK_THROWS_AS(Dataset({"a"}, Matrix(2, 1), Vector(3)), DimensionMismatch);
  CHECK_THROWS_AS(Dataset({"y"}, Matrix(2, 1), Vector(2), "y"), DuplicateName);
  CHECK_THROWS_AS(Dataset({"a"}, Matrix(2, 1, NAN), Vector(2)), ValidationError);
}

TEST_CASE("scaling matches a two-pass computation") {
  const Dataset d = fixtures::hald_renamed();
  const ScalingInfo s = scaling_of(d);
  for (std::size_t j = 0; j < d.k(); ++j) {
    double mean = 0.0;
    for (std::size_t i = 0; i < d.n(); ++i) mean += d.x()(i, j);
    mean /= d.n();
    double ss = 0.0;
    for (std::size_t i = 0; i < d.n(); ++i) ss += (d.x()(i, j) - mean) * (d.x()(i, j) - mean);
    CHECK(s.means[j] == doctest::Approx(mean).epsilon(1e-14));
    CHECK(s.scales[j] == doctest::Approx(std::sqrt(ss)).epsilon(1e-14));
  }
  double ybar = 0.0;
  for (double v : d.y()) ybar += v;
  CHECK(s.response_mean == doctest::Approx(ybar / d.n()).epsilon(1e-14));
}

TEST_CASE("standardize produces centered unit-length columns") {
  for (const Dataset& d : {fixtures::hald_renamed(), fixtures::hald_augmented(), fixtures::sim_xd(3)}) {
    const StandardizedData sd = standardize(d);
    for (std::size_t j = 0; j < d.k(); ++j) {
      double sum = 0.0, ss = 0.0;
      for (std::size_t i = 0; i < d.n(); ++i) {
        sum += sd.data.x()(i, j);
        ss += sd.data.x()(i, j) * sd.data.x()(i, j);
      }
      CHECK(std::abs(sum / d.n()) <= 1e-12);
      CHECK(std::abs(std::sqrt(ss) - 1.0) <= 1e-12);
    }
    double ysum = 0.0;
    for (double v : sd.data.y()) ysum += v;
    CHECK(std::abs(ysum) < 1e-10);
    CHECK(sd.data.predictor_names() == d.predictor_names());
  }
}

TEST_CASE("standardize hand case and fixed point") {
  const Dataset d({"x"}, Matrix{{1}, {2}, {3}}, Vector{0, 1, 5});
  const StandardizedData sd = standardize(d);
  CHECK(sd.scaling.means[0] == 2.0);
  CHECK(sd.scaling.scales[0] == doctest::Approx(std::sqrt(2.0)));
  CHECK(sd.data.x()(0, 0) == doctest::Approx(-1 / std::sqrt(2.0)));
  CHECK(sd.data.x()(1, 0) == doctest::Approx(0.0));
  CHECK(sd.data.x()(2, 0) == doctest::Approx(1 / std::sqrt(2.0)));

  const StandardizedData twice = standardize(sd.data);
  CHECK(twice.scaling.scales[0] == doctest::Approx(1.0));
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(twice.data.x()(i, 0) == doctest::Approx(sd.data.x()(i, 0)));

  CHECK_THROWS_AS(standardize(Dataset({"x"}, Matrix{{1}, {1}, {1}}, Vector{0, 1, 2})), ZeroVariance);
}

TEST_CASE("back_transform") {
  ScalingInfo unit{{0, 0}, {1, 1}, 0.0};
  const Vector b = back_transform(Vector{2.5, -1.0}, unit);
  CHECK(b == Vector{0.0, 2.5, -1.0});
  CHECK_THROWS_AS(back_transform(Vector{1.0}, unit), DimensionMismatch);
}

TEST_CASE("standardized fit back-transforms to the direct fit") {
  for (const Dataset& d : {fixtures::hald_renamed(), fixtures::hald_augmented(), fixtures::sim_xd(1)}) {
    const FitResult direct = fit(d);
    const StandardizedData sd = standardize(d);
    const FitResult sf = fit(sd.data, all_columns(sd.data), false);
    const Vector b = back_transform(sf.coefficients, sd.scaling);
    for (std::size_t i = 0; i < b.size(); ++i)
      CHECK(std::abs(b[i] - direct.coefficients[i]) <= 1e-8 * std::max(1.0, std::abs(b[i])));
    for (std::size_t i = 0; i < d.n(); ++i)
      CHECK(std::abs(sf.residuals[i] - direct.residuals[i]) < 1e-8);
  }
}

TEST_CASE("standardize_point") {
  const Dataset d = fixtures::hald_renamed();
  const ScalingInfo s = scaling_of(d);
  const Vector at_mean = standardize_point(s.means, s);
  for (double v : at_mean) CHECK(std::abs(v) < 1e-14);

  const auto pts = fixtures::hald_prediction_points();
  const Vector x2 = standardize_point(pts[1], s);
  const Vector expected{-0.21, -0.19, 0.31, 0.33};
  for (std::size_t j = 0; j < 4; ++j) CHECK(std::abs(x2[j] - expected[j]) <= 0.005);

  const Matrix xd = fixtures::sim_design();
  const ScalingInfo ss = scaling_of(Dataset({"a", "b", "c", "d", "e", "f"}, xd, Vector(12)));
  const Vector x3 = standardize_point(fixtures::sim_prediction_points()[2], ss);
  const Vector e3{0.30, 0.10, 0.20, 0.50};
  for (std::size_t j = 0; j < 4; ++j) CHECK(std::abs(x3[j] - e3[j]) <= 0.005);

  CHECK_THROWS_AS(standardize_point(Vector{1.0}, s), DimensionMismatch);
}

TEST_CASE("training rows standardize inside the unit box") {
  for (const Dataset& d : {fixtures::hald_renamed(), fixtures::sim_xd(5)}) {
    const ScalingInfo s = scaling_of(d);
    for (std::size_t i = 0; i < d.n(); ++i)
      for (double v : standardize_point(d.x().row(i), s)) CHECK(std::abs(v) <= 1.0);
  }
}

TEST_CASE("fixtures") {
  const Dataset a = fixtures::hald_augmented();
  CHECK(a.n() == 13);
  CHECK(a.k() == 5);
  const Dataset r = fixtures::hald_renamed();
  CHECK(r.k() == 4);
  // Renamed columns are sign flips and a swap of the original ones.
  for (std::size_t i = 0; i < 13; ++i) {
    CHECK(r.x()(i, 0) == a.x()(i, 0));
    CHECK(r.x()(i, 1) == doctest::Approx(-a.x()(i, 2)));
    CHECK(r.x()(i, 2) == a.x()(i, 1));
    CHECK(r.x()(i, 3) == doctest::Approx(-a.x()(i, 3)));
    CHECK(r.y()[i] == a.y()[i]);
  }
  CHECK(fixtures::sim_design().rows() == 12);
  CHECK(fixtures::sim_xd(4).y() == fixtures::sim_xd(4).y());
  CHECK(fixtures::sim_xd(4).y() != fixtures::sim_xd(5).y());
}
