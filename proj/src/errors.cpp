#include "affgrav/errors.hpp"

#include <sstream>

namespace affgrav {

MissingAssignment::MissingAssignment(std::vector<int> orders)
    : std::invalid_argument([&] {
        std::ostringstream os;
        os << "no value assigned for derivative order(s):";
        for (int o : orders) os << ' ' << o;
        return os.str();
      }()),
      orders_(std::move(orders)) {}

DegenerateCurve::DegenerateCurve(double u)
    : std::domain_error("degenerate curve: [c_u, c_uu] <= 0 at u = " + std::to_string(u)), u_(u) {}

NoBracket::NoBracket(double delta, const std::string& side)
    : std::runtime_error("no chord bracket for delta = " + std::to_string(delta) + " on the " + side +
                         " side of the base point"),
      delta_(delta) {}

}  // namespace affgrav
