#pragma once

#include "loopfloer/comparison.hpp"
#include "loopfloer/dgalg.hpp"
#include "loopfloer/errors.hpp"
#include "loopfloer/examples.hpp"
#include "loopfloer/extended_complex.hpp"
#include "loopfloer/filtered_complex.hpp"
#include "loopfloer/format.hpp"
#include "loopfloer/gf2.hpp"
#include "loopfloer/io.hpp"
#include "loopfloer/report.hpp"
#include "loopfloer/serre.hpp"
#include "loopfloer/spectral.hpp"
