#pragma once

// Shared helpers for JSON rendering of exact numbers. Integers that fit in
// int64 are emitted as JSON numbers, larger ones as decimal strings.

#include <gmpxx.h>
#include <json.hpp>

#include <stdexcept>
#include <string>

namespace wres::detail {

inline nlohmann::json integer_to_json(const mpz_class& z) {
  if (z.fits_slong_p()) return static_cast<long>(z.get_si());
  return z.get_str();
}

inline mpz_class integer_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return mpz_class(j.get<long>());
  if (j.is_number_unsigned()) return mpz_class(j.get<unsigned long>());
  if (j.is_string()) {
    mpz_class z;
    if (z.set_str(j.get<std::string>(), 10) != 0) throw std::invalid_argument("malformed integer string: " + j.dump());
    return z;
  }
  throw std::invalid_argument("expected an integer, got " + j.dump());
}

}  // namespace wres::detail
