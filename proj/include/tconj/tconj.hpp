#pragma once

#include "tconj/automorphism.hpp"
#include "tconj/error.hpp"
#include "tconj/integer.hpp"
#include "tconj/matrix.hpp"
#include "tconj/polynomial.hpp"
#include "tconj/ring_dispatch.hpp"
#include "tconj/rings.hpp"
#include "tconj/rng.hpp"
#include "tconj/sampler.hpp"
#include "tconj/sampling.hpp"
#include "tconj/twisted.hpp"
#include "tconj/witnesses.hpp"
