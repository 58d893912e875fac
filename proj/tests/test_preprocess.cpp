#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gridbench/preprocess.hpp"

using namespace gridbench;

TEST_CASE("minmax maps training data into [0,1] with exact extremes") {
    Eigen::MatrixXd X(4, 3);
    X << 2.0, -1.0, 5.0,
         4.0,  0.0, 5.0,
         6.0,  3.0, 5.0,
         3.0,  1.0, 5.0;
    Normalizer norm = fit_minmax(X);
    CHECK(norm.col_min[0] == 2.0);
    CHECK(norm.col_max[0] == 6.0);

    Eigen::MatrixXd T = transform_minmax(norm, X);
    // Hand-computed column 0: (x - 2) / 4.
    CHECK(T(0, 0) == doctest::Approx(0.0));
    CHECK(T(1, 0) == doctest::Approx(0.5));
    CHECK(T(2, 0) == doctest::Approx(1.0));
    CHECK(T(3, 0) == doctest::Approx(0.25));
    // Column 1: (x + 1) / 4.
    CHECK(T(1, 1) == doctest::Approx(0.25));
    CHECK(T.minCoeff() >= 0.0);
    CHECK(T.maxCoeff() <= 1.0);
}

TEST_CASE("constant columns map to zero") {
    Eigen::MatrixXd X = Eigen::MatrixXd::Constant(5, 2, 7.0);
    Normalizer norm = fit_minmax(X);
    Eigen::MatrixXd T = transform_minmax(norm, X);
    CHECK(T.isZero(0.0));
}

TEST_CASE("unseen rows are not clamped") {
    Eigen::MatrixXd X(2, 1);
    X << 0.0, 10.0;
    Normalizer norm = fit_minmax(X);
    Eigen::MatrixXd Q(2, 1);
    Q << -5.0, 20.0;
    Eigen::MatrixXd T = transform_minmax(norm, Q);
    CHECK(T(0, 0) == doctest::Approx(-0.5));
    CHECK(T(1, 0) == doctest::Approx(2.0));
}

TEST_CASE("shape and emptiness errors") {
    CHECK_THROWS_AS(fit_minmax(Eigen::MatrixXd(0, 3)), std::invalid_argument);
    Eigen::MatrixXd X(2, 2);
    X << 0, 1, 2, 3;
    Normalizer norm = fit_minmax(X);
    CHECK_THROWS_AS(transform_minmax(norm, Eigen::MatrixXd(2, 3)), std::invalid_argument);
}
