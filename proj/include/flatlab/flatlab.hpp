#pragma once

#include "flatlab/barker.hpp"
#include "flatlab/correspondence.hpp"
#include "flatlab/dft.hpp"
#include "flatlab/fraction.hpp"
#include "flatlab/morse.hpp"
#include "flatlab/numtheory.hpp"
#include "flatlab/parallel.hpp"
#include "flatlab/poly_core.hpp"
#include "flatlab/report.hpp"
#include "flatlab/seq_stats.hpp"
#include "flatlab/sequences.hpp"
#include "flatlab/spectral.hpp"
#include "flatlab/version.hpp"
