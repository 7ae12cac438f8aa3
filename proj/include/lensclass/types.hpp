#pragma once

#include <cstdint>
#include <iterator>
#include <stdexcept>
#include <string>
#include <type_traits>

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>

// Boost 1.74 probes argument types for a byte-container const_iterator and
// hard-errors when its value_type is missing, which is the case for every
// Eigen 3.4 dense expression. Make the probe SFINAE-friendly.
namespace boost::multiprecision::detail {
template <class It, class = void>
struct byte_iterator : std::false_type {};
template <class It>
struct byte_iterator<It, std::void_t<typename std::iterator_traits<It>::value_type>>
    : std::bool_constant<std::is_integral_v<std::remove_cv_t<typename std::iterator_traits<It>::value_type>> &&
                         sizeof(typename std::iterator_traits<It>::value_type) == 1> {};
template <class C>
struct is_byte_container_imp<C, true> {
  static const bool value = byte_iterator<typename C::const_iterator>::value;
};
}  // namespace boost::multiprecision::detail

#include <boost/multiprecision/eigen.hpp>

namespace lensclass {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = DenseMatrix<BigInt>;
using IntVector = DenseVector<BigInt>;
using Index = Eigen::Index;

enum class ErrorCode {
  NonUnit,
  BadModulus,
  OrderMismatch,
  LevelOrder,
  DivisibilityError,
  BadCase,
  PatternError,
  ShapeMismatch,
  InvalidParams,
  Overflow,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Entry-wise conversion; handy for tests and literals.
template <typename Scalar, typename Derived>
DenseMatrix<Scalar> cast_matrix(const Eigen::MatrixBase<Derived>& m) {
  DenseMatrix<Scalar> out(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) out(i, j) = Scalar(m(i, j));
  return out;
}

inline IntMatrix int_matrix(std::initializer_list<std::initializer_list<long long>> rows) {
  const Index n = static_cast<Index>(rows.size());
  const Index m = n ? static_cast<Index>(rows.begin()->size()) : 0;
  IntMatrix out(n, m);
  Index i = 0;
  for (const auto& row : rows) {
    if (static_cast<Index>(row.size()) != m) throw Error(ErrorCode::ShapeMismatch, "ragged literal");
    Index j = 0;
    for (long long v : row) out(i, j++) = v;
    ++i;
  }
  return out;
}

}  // namespace lensclass
