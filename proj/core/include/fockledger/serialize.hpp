#pragma once

#include <string>

#include "fockledger/fock.hpp"
#include "fockledger/genfun.hpp"
#include "fockledger/statistics.hpp"

namespace fockledger {

/// "n,p_n" rows, probabilities with 17 significant digits.
std::string to_csv(const PhotonDistribution& dist);

/// Same layout as the distribution dump; the coefficients are the
/// probabilities.
std::string to_csv(const GenFun& g);

/// "n,re_c,im_c" rows, 17 significant digits.
std::string to_csv(const FockState& state);

/// {"mean":..,"variance":..,"factorial_moments":[..],"mandel_q":..,"g2":..,
///  "klass":".."}; undefined entries serialize as null.
std::string to_json(const StatsReport& report);

/// {"n_minus":..,"n_plus":..,"q_minus":..,"n_tilde_minus":..,
///  "n_tilde_plus":..,"q_tilde":..}
std::string to_json(const PredictionReport& report);

} // namespace fockledger
