#include "vctl/core/grid.hpp"

#include <cmath>
#include <sstream>

#include "vctl/core/error.hpp"

namespace vctl {

std::vector<std::string> PhaseGrid::violations() const {
  std::vector<std::string> out;
  auto positive = [&](const char* name, double v) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      std::ostringstream os;
      os << name << " must be positive and finite (got " << v << ")";
      out.push_back(os.str());
    }
  };
  positive("x_extent", x_extent);
  positive("p_extent", p_extent);
  positive("dt", dt);
  if (nx < 4) out.push_back("nx must be at least 4 (got " + std::to_string(nx) + ")");
  if (np < 4) out.push_back("np must be at least 4 (got " + std::to_string(np) + ")");
  if (nt < 1) out.push_back("nt must be at least 1 (got " + std::to_string(nt) + ")");
  if (out.empty() && dt > dx()) {
    std::ostringstream os;
    os << "dt = " << dt << " exceeds the light-speed bound dt <= dx = " << dx();
    out.push_back(os.str());
  }
  return out;
}

void PhaseGrid::validate() const {
  auto v = violations();
  if (!v.empty()) throw ConfigError(std::move(v));
}

double maxwell_cfl_limit(const PhaseGrid& grid) { return grid.dx() / std::sqrt(2.0); }

}  // namespace vctl
