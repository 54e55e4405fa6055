#pragma once

#include "kaleido/errors.hpp"
#include "kaleido/fock.hpp"
#include "kaleido/gates.hpp"
#include "kaleido/kaleidoscope.hpp"
#include "kaleido/matrix.hpp"
#include "kaleido/modexp.hpp"
#include "kaleido/roots.hpp"
