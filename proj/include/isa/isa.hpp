#pragma once

#include "isa/datagen.hpp"
#include "isa/error.hpp"
#include "isa/experiment.hpp"
#include "isa/fcov.hpp"
#include "isa/glyphs.hpp"
#include "isa/ica.hpp"
#include "isa/matrix_io.hpp"
#include "isa/metrics.hpp"
#include "isa/model.hpp"
#include "isa/permsearch.hpp"
#include "isa/rng.hpp"
#include "isa/types.hpp"
