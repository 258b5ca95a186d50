#ifndef QUTRIT_QUTRIT_HPP
#define QUTRIT_QUTRIT_HPP

#include "qutrit/critical.hpp"
#include "qutrit/emit.hpp"
#include "qutrit/entanglement.hpp"
#include "qutrit/errors.hpp"
#include "qutrit/format.hpp"
#include "qutrit/matkernel.hpp"
#include "qutrit/model.hpp"
#include "qutrit/presets.hpp"
#include "qutrit/sweep.hpp"
#include "qutrit/thermal.hpp"
#include "qutrit/validate.hpp"

#endif  // QUTRIT_QUTRIT_HPP
