#pragma once

#include <cmath>
#include <initializer_list>
#include <numbers>

#include <gtest/gtest.h>

#include "cartan/error.hpp"
#include "cartan/matcore.hpp"

namespace cartan::test {

inline constexpr double kPi = std::numbers::pi;

inline Mat rot2(double t) {
  Mat r(2, 2);
  r << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
  return r;
}

inline Mat pi2(double t) {
  Mat w(2, 2);
  w << 0.0, -t, t, 0.0;
  return w;
}

inline Vec vec(std::initializer_list<double> xs) {
  Vec v(static_cast<long>(xs.size()));
  long i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

inline Mat blockdiag(const Mat& a, const Mat& b) {
  Mat m = Mat::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  m.topLeftCorner(a.rows(), a.cols()) = a;
  m.bottomRightCorner(b.rows(), b.cols()) = b;
  return m;
}

inline double maxabs(const Mat& a, const Mat& b) { return (a - b).cwiseAbs().maxCoeff(); }

} // namespace cartan::test

#define EXPECT_CARTAN_ERROR(stmt, expected_code)                                                            \
  do {                                                                                                        \
    try {                                                                                                     \
      stmt;                                                                                                   \
      ADD_FAILURE() << "expected cartan::Error from " #stmt;                                                  \
    } catch (const ::cartan::Error& e) {                                                                      \
      EXPECT_EQ(e.code(), expected_code) << e.what();                                                         \
    }                                                                                                         \
  } while (0)
