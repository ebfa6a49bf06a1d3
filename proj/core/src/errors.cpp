#include "uset/errors.hpp"

namespace uset {

void ensure(bool cond, const std::string& what) {
  if (!cond) throw IntegrityError(what);
}

}  // namespace uset
