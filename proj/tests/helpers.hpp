#pragma once

#include <string>
#include <vector>

#include "drazinkit/matrix.hpp"

namespace testutil {

inline drazinkit::Matrix q(const std::vector<std::vector<std::string>>& rows) {
  return drazinkit::Matrix::from_strings(drazinkit::FieldDescriptor::rationals(), rows);
}

inline drazinkit::Matrix fp(std::uint64_t p, const std::vector<std::vector<std::string>>& rows) {
  return drazinkit::Matrix::from_strings(drazinkit::FieldDescriptor::prime(p), rows);
}

inline drazinkit::Matrix qdiag(std::initializer_list<long long> d) {
  return drazinkit::Matrix::diagonal(drazinkit::FieldDescriptor::rationals(), d);
}

inline drazinkit::Scalar qs(const std::string& text) {
  return drazinkit::Scalar::parse(drazinkit::FieldDescriptor::rationals(), text);
}

}  // namespace testutil
