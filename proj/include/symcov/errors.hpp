#ifndef SYMCOV_ERRORS_HPP
#define SYMCOV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace symcov {

// Error categories used across the library. The CLI maps these onto
// process exit codes (validation = 2, I/O = 3, numerical = 4).
enum class Errc {
    invalid_interval,
    non_finite,
    mode_out_of_range,
    empty_sample,
    invalid_params,
    parse_error,
    config_error,
    ragged_rows,
    io_error,
    zero_variance,
    out_of_support,
    degenerate_theta,
    not_symmetric,
    no_convergence,
    too_many_vertices,
};

class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    Errc code() const noexcept { return code_; }

  private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
    throw Error(code, message);
}

const char* errc_name(Errc code) noexcept;

} // namespace symcov

#endif // SYMCOV_ERRORS_HPP
