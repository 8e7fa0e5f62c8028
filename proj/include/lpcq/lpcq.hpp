#pragma once

#include "lpcq/corpus.hpp"
#include "lpcq/exponents.hpp"
#include "lpcq/forms.hpp"
#include "lpcq/gelfand.hpp"
#include "lpcq/gns.hpp"
#include "lpcq/interval.hpp"
#include "lpcq/json.hpp"
#include "lpcq/multipliers.hpp"
#include "lpcq/partialmul.hpp"
#include "lpcq/quadrature.hpp"
#include "lpcq/random.hpp"
#include "lpcq/report.hpp"
#include "lpcq/sampling.hpp"
#include "lpcq/seminorms.hpp"
#include "lpcq/spaces.hpp"
