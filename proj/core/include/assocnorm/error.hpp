#pragma once

#include <stdexcept>
#include <string>

namespace assocnorm {

enum class ErrorKind {
  invalid_argument,
  divergent_integral,
  integration_failed,
  window_unsolvable,
  derivative_required,
  block_budget_exceeded,
  no_witness_segment,
  segment_rejected,
  domain,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Which end of an integration interval misbehaves.
enum class Side { lower, upper };

class DivergentIntegral : public Error {
 public:
  DivergentIntegral(Side side, const std::string& what)
      : Error(ErrorKind::divergent_integral, what), side_(side) {}
  Side side() const noexcept { return side_; }

 private:
  Side side_;
};

/// The boundary pair (a(t), b(t)) cannot be found at `t`: the available
/// v1-mass on the `limiting` side runs out before the normalization holds.
class WindowUnsolvable : public Error {
 public:
  WindowUnsolvable(double t, Side limiting, const std::string& what)
      : Error(ErrorKind::window_unsolvable, what), t_(t), limiting_(limiting) {}
  double t() const noexcept { return t_; }
  Side limiting() const noexcept { return limiting_; }

 private:
  double t_;
  Side limiting_;
};

class SegmentRejected : public Error {
 public:
  SegmentRejected(std::size_t index, const std::string& what)
      : Error(ErrorKind::segment_rejected, what), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline void require(bool condition, const std::string& what) {
  if (!condition) throw Error(ErrorKind::invalid_argument, what);
}

}  // namespace assocnorm
