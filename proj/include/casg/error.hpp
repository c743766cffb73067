#pragma once

#include <stdexcept>
#include <string>

namespace casg {

enum class Status {
  ok = 0,
  invalid_argument,
  domain_error,
  zero_frequency_singular,
  grazing_pole,
  near_defective,
  conditioning,
  convergence_failure,
  io_error,
  unsupported,
};

const char* status_name(Status s);

class Error : public std::runtime_error {
 public:
  Error(Status status, const std::string& what)
      : std::runtime_error(what), status_(status) {}
  Status status() const { return status_; }

 private:
  Status status_;
};

[[noreturn]] inline void fail(Status s, const std::string& msg) {
  throw Error(s, msg);
}

}  // namespace casg
