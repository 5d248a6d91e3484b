#include "kzosc/drive.hpp"

#include <cmath>

#include "kzosc/errors.hpp"

namespace kzosc {

void DriveParams::validate() const {
  if (!(omega > 0.0) || !std::isfinite(omega)) throw DomainError("DriveParams: omega must be > 0");
  if (!std::isfinite(delta) || !std::isfinite(eps) || !std::isfinite(eta) || !std::isfinite(b_amp))
    throw DomainError("DriveParams: non-finite parameter");
}

DriveParams DriveParams::from_amplitudes(double delta, double eps, double a_amp, double b_amp, double omega) {
  DriveParams p{delta, eps, 0.0, b_amp, omega};
  p.validate();
  p.eta = a_amp / omega;
  return p;
}

}  // namespace kzosc
