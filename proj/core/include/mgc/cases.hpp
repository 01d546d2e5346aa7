#ifndef MGC_CASES_HPP
#define MGC_CASES_HPP

#include <mgc/multivector.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace mgc {

/// Where an expected value comes from: a published value, a value derived here by
/// an independent oracle, or a trivial consistency check. `info` marks a measured
/// quantity that is reported but does not decide the case.
enum class Provenance { published, derived, trivial, info };
std::string_view to_string(Provenance p);

struct Measurement {
  std::string name;
  std::string measured;
  std::string expected;
  Provenance provenance = Provenance::info;
  bool ok = true;
};

struct CaseReport {
  std::string name;
  bool passed = false;
  std::vector<Measurement> measurements;
  std::vector<std::string> notes;
  double seconds = 0;
};

struct CaseOptions {
  int jobs = 0;  ///< 0 = all hardware threads
  SchoutenSign sign = SchoutenSign::standard;
  /// Velocity data for the shortcut case; required by "shortcut-3d" only.
  std::string velocities_path;
};

/// Names accepted by run_case, in a fixed order.
const std::vector<std::string_view>& case_names();

/// Runs one named reproduction case. Throws std::invalid_argument for an unknown
/// name and std::runtime_error when required input data is missing.
CaseReport run_case(std::string_view name, const CaseOptions& options = {});

std::string to_text(const CaseReport& r);
std::string to_json(const CaseReport& r);
std::string to_json(const std::vector<CaseReport>& reports);

}  // namespace mgc

#endif  // MGC_CASES_HPP
