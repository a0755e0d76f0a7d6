#include "k3c/rat.hpp"

#include <ostream>

namespace k3c {
std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }
}  // namespace k3c
