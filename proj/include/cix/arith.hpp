#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace cix {

using Int = mpz_class;
using Rat = mpq_class;

// Error with a machine-readable kind; the CLI maps it to {"error":{kind,detail}}.
struct Error : std::runtime_error {
  std::string kind;
  Error(std::string k, const std::string& detail) : std::runtime_error(detail), kind(std::move(k)) {}
};

Rat parse_rat(const std::string& s);
std::string to_string(const Rat& r);
std::string to_string(const Int& z);

// representative in [0,1)
Rat mod_one(const Rat& r);
bool is_integer(const Rat& r);
Int factorial(long n);

}  // namespace cix
