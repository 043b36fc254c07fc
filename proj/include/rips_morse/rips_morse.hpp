#ifndef RIPS_MORSE_RIPS_MORSE_HPP
#define RIPS_MORSE_RIPS_MORSE_HPP

#include "campaign.hpp"
#include "canonical.hpp"
#include "complex.hpp"
#include "covering.hpp"
#include "errors.hpp"
#include "homology.hpp"
#include "lp.hpp"
#include "metric.hpp"
#include "morse.hpp"
#include "rational.hpp"

#endif // RIPS_MORSE_RIPS_MORSE_HPP
