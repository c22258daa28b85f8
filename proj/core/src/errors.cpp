#include "lsi/errors.hpp"

namespace lsi {

std::string_view error_kind_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::usage: return "usage";
    case ErrorKind::config: return "config";
    case ErrorKind::training: return "training";
    case ErrorKind::load: return "load";
    case ErrorKind::generation: return "generation";
    case ErrorKind::sizing: return "sizing";
    case ErrorKind::selection: return "selection";
    case ErrorKind::parse: return "parse";
    case ErrorKind::internal: return "internal";
  }
  return "unknown";
}

}  // namespace lsi
