#include "sysalg/algebra.hpp"

namespace sysalg {

std::string to_string(const LabelPair& p) {
  return p.first.name() + "," + p.second.name();
}

}  // namespace sysalg
