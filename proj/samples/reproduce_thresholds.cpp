// Reproduces the detection thresholds of the bound entangled 2x4 family and
// the 2x3 isotropic family for a handful of criteria.

#include <cmath>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include "sepdetect/sepdetect.hpp"

int main() {
  using namespace sepdetect;

  const double w = 1.0 / (2.0 * std::sqrt(3.0));
  const auto family_2x4 = bound_2x4_family(0.9);
  const auto family_iso = isotropic_family(2, 3);

  struct Row {
    const StateFamily* family;
    const char* criterion;
    double from, to;
  };
  std::ostringstream t1_spec;
  t1_spec << std::setprecision(17) << "theorem1:alpha=[" << w << ',' << w << "],beta=[1,0]";
  const std::string t1 = t1_spec.str();
  const Row rows[] = {
      {&family_2x4, t1.c_str(), 0.0, 1.0},
      {&family_2x4, "theorem3:a=0.40824829046386302,b=1,alpha=[1,3],beta=[1,-2]", 0.0, 1.0},
      {&family_iso, "corollary2:a=1.4142135623730951,b=2.4494897427831779", 0.3, 0.5},
      {&family_iso, "devicente", 0.3, 0.5},
      {&family_iso, "realignment", 0.3, 0.5},
      {&family_iso, "ppt", 0.0, 1.0},
  };

  std::cout << std::setprecision(8);
  for (const auto& row : rows) {
    const auto t = threshold(*row.family, parse_criterion(row.criterion), row.from, row.to, 1e-8);
    std::cout << std::left << std::setw(22) << row.family->name << std::setw(72) << row.criterion
              << t.parameter << " >= " << t.value << '\n';
  }
}
