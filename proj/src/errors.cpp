#include "anosov/errors.hpp"

namespace anosov {

const char* error_name(errc c) {
  switch (c) {
    case errc::ok: return "Ok";
    case errc::invalid_params: return "InvalidParams";
    case errc::dimension_mismatch: return "DimensionMismatch";
    case errc::rank_mismatch: return "RankMismatch";
    case errc::unsupported_rank: return "UnsupportedRank";
    case errc::unsupported_family: return "UnsupportedFamily";
    case errc::kind_mismatch: return "KindMismatch";
    case errc::malformed_flag: return "MalformedFlag";
    case errc::parse_error: return "ParseError";
    case errc::io_error: return "IoError";
    case errc::singular_input: return "SingularInput";
    case errc::nonconvergent_eigen: return "NonconvergentEigen";
    case errc::degenerate_form: return "DegenerateForm";
    case errc::ping_pong_failed: return "PingPongFailed";
    case errc::not_proximal: return "NotProximal";
    case errc::empty_sample: return "EmptySample";
    case errc::no_pairs: return "NoPairs";
    case errc::divergence_fail: return "DivergenceFail";
    case errc::too_large: return "TooLarge";
  }
  return "Unknown";
}

}  // namespace anosov
