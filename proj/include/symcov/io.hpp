#ifndef SYMCOV_IO_HPP
#define SYMCOV_IO_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "symcov/pca.hpp"
#include "symcov/simulator.hpp"

namespace symcov {

inline constexpr const char* kVersion = "0.1.0";

/// Parsed interval table in the frozen interchange format: a header row
/// with two columns `V_lo,V_hi` (and optional `V_mode`) per variable,
/// UTF-8, '.' decimal separator.
struct IntervalTable {
    std::vector<std::string> variables;
    std::vector<std::vector<Interval>> rows;
    std::vector<std::vector<std::optional<double>>> modes;

    std::size_t dim() const noexcept { return variables.size(); }
    std::size_t size() const noexcept { return rows.size(); }
};

IntervalTable parse_interval_csv(std::istream& in, const std::string& source_name);
IntervalTable read_interval_csv(const std::string& path);
void write_interval_csv(std::ostream& out, const IntervalTable& table);

/// Requires exactly 2 variables; the first is x, the second y.
BivariateIntervalSample to_bivariate(const IntervalTable& table);
MultivariateIntervalSample to_multivariate(const IntervalTable& table);

/// Shortest double formatting that parses back to the same bits
/// (17 significant digits are kept when needed).
std::string format_double(double value);

/// Flat key=value study configuration ('#' comments allowed). Keys:
/// mu_x, mu_y, sigma2_x, sigma2_y, rho or sigma_xy, gamma1, gamma2,
/// gamma3, nu, sample_sizes, replications, seed, level (theta|interval).
StudyConfig parse_study_config(std::istream& in, const std::string& source_name);
StudyConfig read_study_config(const std::string& path);
void write_study_config(std::ostream& out, const StudyConfig& config);

void write_study_csv(std::ostream& out, const StudyReport& report);
std::string study_report_json(const StudyReport& report, const StudyConfig& config,
                              const std::string& input_digest);

/// FNV-1a 64-bit content digest used for report provenance.
std::uint64_t fnv1a64(std::string_view bytes);
std::string digest_hex(std::string_view bytes);
std::string file_digest_hex(const std::string& path);

/// The four embedded example data sets (indices 1..4); set 4 is
/// classical point data.
BivariateIntervalSample builtin_dataset(int index);
int builtin_dataset_count() noexcept;

} // namespace symcov

#endif // SYMCOV_IO_HPP
