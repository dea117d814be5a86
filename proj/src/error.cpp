#include "featsel/error.hpp"

namespace featsel {

const char* errc_name(errc code) {
  switch (code) {
    case errc::io: return "E_IO";
    case errc::parse: return "E_PARSE";
    case errc::label: return "E_LABEL";
    case errc::schema: return "E_SCHEMA";
    case errc::align: return "E_ALIGN";
    case errc::index: return "E_INDEX";
    case errc::numeric: return "E_NUMERIC";
    case errc::contract: return "E_CONTRACT";
    case errc::empty: return "E_EMPTY";
    case errc::model: return "E_MODEL";
    case errc::config: return "E_CONFIG";
  }
  return "E_UNKNOWN";
}

}  // namespace featsel
