#include "klc/report.hpp"

#include "klc/coxeter.hpp"

namespace klc {

bool Check::expect(bool ok, const std::string& witness) {
  return expect_lazy(ok, [&] { return witness; });
}

Check& Report::add(std::string name) {
  Check c;
  c.name = std::move(name);
  checks_.push_back(std::move(c));
  return checks_.back();
}

const Check* Report::find(const std::string& name) const {
  for (const auto& c : checks_)
    if (c.name == name) return &c;
  return nullptr;
}

bool Report::passed() const {
  for (const auto& c : checks_)
    if (!c.passed()) return false;
  return true;
}

void Report::merge(const Report& other, const std::string& prefix) {
  for (Check c : other.checks_) {
    c.name = prefix + c.name;
    checks_.push_back(std::move(c));
  }
}

std::string Report::summary() const {
  std::string out;
  for (const auto& c : checks_) {
    if (c.passed()) {
      out += "PASS " + c.name + " (" + std::to_string(c.cases) + " cases)\n";
    } else {
      out += "FAIL " + c.name + " (" + std::to_string(c.failures) + " of " + std::to_string(c.cases) + ")";
      if (!c.witnesses.empty()) out += ": " + c.witnesses.front();
      out += "\n";
    }
  }
  return out;
}

std::string show(const CoxeterGroup& group, std::size_t w) {
  return w == 0 ? "1" : group.render(static_cast<Elem>(w));
}

}  // namespace klc
