#pragma once

#include <stdexcept>
#include <string>

namespace shakhov {

// Cell whose density fell below the vacuum guard.
class VacuumError : public std::runtime_error {
 public:
  VacuumError(std::size_t cell, double rho)
      : std::runtime_error("vacuum state at cell " + std::to_string(cell) +
                           " (rho = " + std::to_string(rho) + ")"),
        cell_(cell),
        rho_(rho) {}

  std::size_t cell() const { return cell_; }
  double rho() const { return rho_; }

 private:
  std::size_t cell_;
  double rho_;
};

// Time step violates the CFL or relaxation stability bound.
class StabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace shakhov
