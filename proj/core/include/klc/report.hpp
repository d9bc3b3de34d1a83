#pragma once

// Pass/fail results of exhaustive verifications, with a bounded list of
// counterexample witnesses per check.

#include <cstddef>
#include <deque>
#include <string>
#include <vector>

namespace klc {

class CoxeterGroup;

struct Check {
  static constexpr std::size_t kMaxWitnesses = 8;

  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::vector<std::string> witnesses;

  bool passed() const { return failures == 0; }
  /// Records one examined case; returns `ok` so callers can chain.
  bool expect(bool ok, const std::string& witness);
  template <typename F>
  bool expect_lazy(bool ok, F&& witness) {
    ++cases;
    if (ok) return true;
    if (witnesses.size() < kMaxWitnesses) witnesses.push_back(witness());
    ++failures;
    return false;
  }
};

class Report {
 public:
  /// The returned reference stays valid while the report lives.
  Check& add(std::string name);
  const std::deque<Check>& checks() const { return checks_; }
  /// nullptr when absent.
  const Check* find(const std::string& name) const;
  bool passed() const;
  /// Appends the checks of `other`, prefixing their names.
  void merge(const Report& other, const std::string& prefix = "");
  /// One "PASS name (n cases)" / "FAIL name: witness" line per check.
  std::string summary() const;

 private:
  std::deque<Check> checks_;  // stable references for add()
};

/// Label word of w, "1" for the identity.
std::string show(const CoxeterGroup& group, std::size_t w);

}  // namespace klc
