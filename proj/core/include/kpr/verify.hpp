#ifndef KPR_VERIFY_HPP
#define KPR_VERIFY_HPP

#include <string>
#include <vector>

namespace kpr {

struct AcceptanceCheck {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;   // measured values, one line
  double seconds = 0.0;
};

/// Run the full acceptance suite (figure reproduction, oracle agreement,
/// theorem verification, structural invariants).  Every check captures
/// failures in `detail` instead of throwing.
std::vector<AcceptanceCheck> run_acceptance(int workers = 0);

/// Render one "PASS/FAIL  [id] name: detail" line.
std::string format_check(const AcceptanceCheck& c);

}  // namespace kpr

#endif
